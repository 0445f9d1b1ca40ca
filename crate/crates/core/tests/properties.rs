use barrlab::builtin;
use barrlab::chains::{anamorphism, build_initial_chain, build_terminal_chain, distance, DyadicDist, LimitPoint, TerminalChain};
use barrlab::compair::nearest_free_element;
use barrlab::series::{behavior, series_distance, words_below, MooreAutomaton, TruncatedSeries};
use barrlab::{FinSet, Semiring};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BOUND: usize = 5;

fn z2() -> Semiring {
    Semiring::from_name("z2").unwrap()
}

fn series(k: usize, coeffs: &[u64]) -> TruncatedSeries {
    let a = builtin::alphabet(k).unwrap();
    let n = words_below(k, BOUND).unwrap().len();
    TruncatedSeries::new(&z2(), &a, BOUND, coeffs[..n].to_vec()).unwrap()
}

/// Three coefficient vectors long enough for two letters; `y` and `z` copy a
/// prefix of `x` so that close pairs actually occur.
fn triples() -> impl Strategy<Value = (usize, Vec<u64>, Vec<u64>, Vec<u64>)> {
    let n = words_below(2, BOUND).unwrap().len();
    (
        1usize..=2,
        prop::collection::vec(0u64..2, n),
        prop::collection::vec(0u64..2, n),
        prop::collection::vec(0u64..2, n),
        0..=n,
        0..=n,
    )
        .prop_map(|(k, x, mut y, mut z, cy, cz)| {
            y[..cy].copy_from_slice(&x[..cy]);
            z[..cz].copy_from_slice(&x[..cz]);
            (k, x, y, z)
        })
}

fn exponent(d: DyadicDist) -> usize {
    d.exponent_bound()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_distance_is_an_ultrametric((k, x, y, z) in triples()) {
        let (x, y, z) = (series(k, &x), series(k, &y), series(k, &z));
        let dxy = series_distance(&x, &y).unwrap();
        prop_assert_eq!(dxy, series_distance(&y, &x).unwrap());
        prop_assert_eq!(series_distance(&x, &x).unwrap(), DyadicDist::GtProbe(BOUND - 1));
        prop_assert_eq!(dxy.is_exact(), x != y);
        let dxz = exponent(series_distance(&x, &z).unwrap());
        let dyz = exponent(series_distance(&y, &z).unwrap());
        prop_assert!(dxz >= exponent(dxy).min(dyz));
    }

    #[test]
    fn limit_distance_is_an_ultrametric_and_matches_series((k, x, y, z) in triples()) {
        let law = builtin::em_law(&format!("moore:z2:{k}letter")).unwrap();
        let h = law.functor();
        let point = |s: &TruncatedSeries| LimitPoint::from_top(h, s.encode(), BOUND);
        let (sx, sy, sz) = (series(k, &x), series(k, &y), series(k, &z));
        let (px, py, pz) = (point(&sx), point(&sy), point(&sz));
        let dxy = distance(&px, &py, BOUND).unwrap();
        prop_assert_eq!(dxy, distance(&py, &px, BOUND).unwrap());
        prop_assert_eq!(distance(&px, &px, BOUND).unwrap(), DyadicDist::GtProbe(BOUND));
        let dxz = exponent(distance(&px, &pz, BOUND).unwrap());
        let dyz = exponent(distance(&py, &pz, BOUND).unwrap());
        prop_assert!(dxz >= exponent(dxy).min(dyz));
        // Level n holds the words of length < n, so chain distances sit one
        // step above series distances.
        if let DyadicDist::AgreeDepth(d) = series_distance(&sx, &sy).unwrap() {
            prop_assert_eq!(dxy, DyadicDist::AgreeDepth(d + 1));
        }
    }

    #[test]
    fn behavior_is_a_compatible_cone(seed in any::<u64>(), k in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = Semiring::from_name("bool").unwrap();
        let a = builtin::alphabet(k).unwrap();
        let aut = MooreAutomaton::random(&ring, &a, 4, &mut rng).unwrap();
        let (h, xi) = aut.coalgebra().unwrap();
        let chain = build_terminal_chain(&h, 4).unwrap();
        let alpha: Vec<_> = (0..=4).map(|n| anamorphism(aut.states(), &xi, n, &chain).unwrap()).collect();
        for s in aut.states().elements() {
            let i = aut.states().index_of(s).unwrap();
            for n in 0..4 {
                prop_assert_eq!(chain.truncate(&alpha[n + 1].eval(s).unwrap(), n).unwrap(), alpha[n].eval(s).unwrap());
            }
            let top = TruncatedSeries::decode(&ring, &a, 4, &alpha[4].eval(s).unwrap()).unwrap();
            prop_assert_eq!(top, behavior(&aut, i, 4).unwrap());
        }
    }

    #[test]
    fn homomorphisms_preserve_behavior(seed in any::<u64>(), k in 1usize..=2, lifts in prop::collection::vec(any::<bool>(), 16)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = Semiring::from_name("bool").unwrap();
        let a = builtin::alphabet(k).unwrap();
        let base = MooreAutomaton::random(&ring, &a, 4, &mut rng).unwrap();
        let n = base.states().len();
        // Two copies of every state, with each transition landing in either copy.
        let output = (0..2 * n).map(|s| base.output(s % n)).collect();
        let delta = (0..2 * n)
            .map(|s| (0..k).map(|c| base.next(s % n, c) + if lifts[(s * k + c) % lifts.len()] { n } else { 0 }).collect())
            .collect();
        let cover = MooreAutomaton::new(&ring, &a, &FinSet::canonical(2 * n), output, delta).unwrap();
        let phi: Vec<usize> = (0..2 * n).map(|s| s % n).collect();
        prop_assert!(cover.is_homomorphism(&base, &phi));
        for s in 0..2 * n {
            prop_assert_eq!(behavior(&cover, s, 5).unwrap(), behavior(&base, phi[s], 5).unwrap());
        }
    }

    #[test]
    fn polynomials_are_dense((k, x, _, _) in triples(), n in 0usize..=BOUND) {
        let x = series(k, &x);
        let (p, embedded) = nearest_free_element(&x, n).unwrap();
        prop_assert!(p.terms().iter().all(|(w, c)| w.len() < n && *c != 0));
        prop_assert!(series_distance(&x, &embedded).unwrap().within(n));
        prop_assert_eq!(embedded.truncate(n).unwrap(), x.truncate(n).unwrap());
    }

    #[test]
    fn density_maps_are_split_retractions(seed in any::<u64>(), k in 1usize..=2, n in 0usize..=4) {
        let law = builtin::em_law(&format!("moore:z2:{k}letter")).unwrap();
        let chain = TerminalChain::lazy(law.functor().clone(), 5);
        let initial = build_initial_chain(&law, &chain).unwrap();
        // Splitting enumerates level n + 1, which has 2^31 elements at n = 4
        // over two letters.
        let upto = if k == 1 { n } else { n.min(2) };
        prop_assert!(initial.check_splitting(upto).unwrap().passed());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = LimitPoint::random(law.functor(), 4, &mut rng).unwrap();
        let y = initial.density_map(&x, n).unwrap();
        prop_assert_eq!(y.rep(n).unwrap(), x.rep(n).unwrap());
        let yy = initial.density_map(&y, n).unwrap();
        prop_assert_eq!(distance(&yy, &y, 4).unwrap(), DyadicDist::GtProbe(4));
    }

    #[test]
    fn commuting_pairs_have_equal_cardinalities(n in 0usize..=3, k in 1usize..=2) {
        for name in [format!("moore-pair:z2:{k}letter"), "swap:s3".into(), format!("streams:semimodule:z2:{k}")] {
            let (c, _) = builtin::candidate(&name).unwrap();
            let (hm, mt) = c.cardinalities(n);
            prop_assert_eq!(hm, mt, "{}", name);
            let m = &c.monad;
            let x = FinSet::canonical(n);
            let enumerated = c.h.eval(&m.obj(&x).unwrap()).unwrap().len() as u128;
            prop_assert_eq!(hm, Some(enumerated));
        }
    }
}
