use clap::Parser;

use barrlab_cli::{run, RunConfig};

fn main() {
    let config = RunConfig::parse();
    let report = run(&config);
    print!("{}", report.render(config.format));
    std::process::exit(report.exit_code());
}
