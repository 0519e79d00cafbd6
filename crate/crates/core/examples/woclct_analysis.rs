//! Windowed transform of a chirped Gaussian: energy per window position and
//! reconstruction.

use woclct::config::window_grid_for;
use woclct::grid::relative_l2;
use woclct::suite::{omega_grid_for, standard_triples};
use woclct::transform::{woclct_forward, woclct_inverse};
use woclct::{generate_signal, Grid3D, SignalSpec, WindowSpec};

fn main() -> woclct::Result<()> {
    let t = Grid3D::cube(8, 0.75)?;
    let mu = t;
    let params = standard_triples()[2].1;
    let omega = omega_grid_for(&params, &t, &mu, std::f64::consts::FRAC_1_SQRT_2)?;
    let spec = SignalSpec::ChirpedGaussian {
        center: [0.4, 0.0, -0.4],
        widths: [1.0; 3],
        chirp: [0.3, -0.2, 0.1],
        amplitude: 1.0,
    };
    let f = generate_signal(&spec, &t)?.normalized()?;
    let w = WindowSpec::new(generate_signal(
        &SignalSpec::gaussian(1.0),
        &window_grid_for(&t, &mu)?,
    )?)?
    .normalized();

    let g = woclct_forward(&f, &w, &params, &omega, &mu)?;
    println!("sum |G|^2 = {:.4} (|f|^2 |psi|^2 = 1)", g.l2_norm_sqr());
    let mid = mu.shape()[1] / 2;
    for i in 0..mu.shape()[0] {
        let m = mu.flat([i, mid, mid]);
        let e: f64 = g.mu_slice(m).iter().map(|v| v.norm_sqr()).sum::<f64>() * omega.cell_volume();
        println!(
            "mu = {:?}  energy {e:.4}",
            mu.point(m).map(|x| (x * 100.0).round() / 100.0)
        );
    }
    let back = woclct_inverse(&g, &w, &params, &t)?;
    println!(
        "reconstruction error {:.3e}",
        relative_l2(&back.values, &f.values)
    );
    Ok(())
}
