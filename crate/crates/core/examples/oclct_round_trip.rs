//! Forward and inverse OCLCT of a Gaussian, and the error under refinement.

use woclct::grid::relative_l2;
use woclct::transform::{oclct_forward, oclct_inverse};
use woclct::{generate_signal, Grid3D, LctParams, SignalSpec};

fn main() -> woclct::Result<()> {
    let p = LctParams::new(1.0, 0.5, -1.0, 0.5)?;
    let spread = (p.a().powi(2) + p.b().powi(2)).sqrt();
    for (n, k) in [(12usize, 1.0), (16, 1.0), (24, 1.2247), (32, 2f64.sqrt())] {
        let t = Grid3D::cube(n, 6.0 * k / n as f64)?;
        let omega = Grid3D::cube(n, 6.0 * spread * k / n as f64)?;
        let f = generate_signal(&SignalSpec::gaussian(1.0), &t)?;
        let spectrum = oclct_forward(&f, &[p; 3], &omega)?;
        let back = oclct_inverse(&spectrum, &[p; 3], &t)?;
        println!(
            "n={n:2} relative error {:.3e}",
            relative_l2(&back.values, &f.values)
        );
    }
    Ok(())
}
