//! Structural checks on the default configuration.

use woclct::config::Check;
use woclct::report::run_properties;
use woclct::RunConfig;

fn main() -> woclct::Result<()> {
    let config = RunConfig::default();
    for r in run_properties(&config, &Check::PROPERTIES)? {
        let tag = if r.passed { "ok  " } else { "FAIL" };
        println!(
            "{tag} {:20} residual {:.3e} (tol {:.0e})",
            r.name,
            r.residual.unwrap_or(f64::NAN),
            r.tolerance
        );
    }
    // real constants commute with every octonion, so linearity holds for them
    let mut real = config.clone();
    real.linearity.eta = woclct::Octonion::real(0.7);
    real.linearity.lambda = woclct::Octonion::real(-1.3);
    let r = &run_properties(&real, &[Check::Linearity])?[0];
    println!("linearity with real constants: {:.3e}", r.residual.unwrap());
    Ok(())
}
