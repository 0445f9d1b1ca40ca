//! Enumeration guard.
//!
//! Every enumeration of a derived set first predicts its cardinality and
//! refuses to proceed above the configured limit. The limit defaults to
//! 10^6 and can be overridden by the `BARRLAB_BLOWUP_GUARD` environment
//! variable or programmatically via [`set_limit`].

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DEFAULT_LIMIT: u64 = 1_000_000;
pub const ENV_VAR: &str = "BARRLAB_BLOWUP_GUARD";

static OVERRIDE: AtomicU64 = AtomicU64::new(0);
static FROM_ENV: OnceLock<u64> = OnceLock::new();

pub fn limit() -> u64 {
    let o = OVERRIDE.load(Ordering::Relaxed);
    if o != 0 {
        return o;
    }
    *FROM_ENV.get_or_init(|| {
        std::env::var(ENV_VAR)
            .ok()
            .and_then(|s| s.trim().replace('_', "").parse::<u64>().ok())
            .filter(|&n| n > 0)
            .unwrap_or(DEFAULT_LIMIT)
    })
}

/// Overrides the limit for the whole process. Passing 0 restores the
/// environment/default value.
pub fn set_limit(n: u64) {
    OVERRIDE.store(n, Ordering::Relaxed);
}

/// Fails with [`Error::BlowUpGuard`] when `size` (None = overflowed) exceeds
/// the limit.
pub fn check(what: impl FnOnce() -> String, size: Option<u128>) -> Result<usize> {
    let lim = limit() as u128;
    match size {
        Some(n) if n <= lim => Ok(n as usize),
        Some(n) => Err(Error::BlowUpGuard {
            what: what(),
            size: n.to_string(),
            limit: lim,
        }),
        None => Err(Error::BlowUpGuard {
            what: what(),
            size: "more than 2^128".into(),
            limit: lim,
        }),
    }
}

/// `base^exp` with overflow reported as `None`.
pub fn pow(base: u128, exp: u128) -> Option<u128> {
    if exp > u32::MAX as u128 {
        return match base {
            0 => Some(0),
            1 => Some(1),
            _ => None,
        };
    }
    base.checked_pow(exp as u32)
}
