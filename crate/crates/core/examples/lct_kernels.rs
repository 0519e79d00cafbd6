//! Kernel phases and the per-axis exponentials.

use woclct::kernel::{kernel_eval, kernel_inverse_eval, kernel_phase};
use woclct::{Axis, LctParams};

fn main() -> woclct::Result<()> {
    let fresnel = LctParams::new(0.5, 2.0, -0.375, 0.5)?;
    for p in [LctParams::fourier(), fresnel] {
        println!("{p:?} amplitude {:.6}", p.amplitude()?);
        for (t, w) in [(0.0, 0.0), (1.0, 0.5), (-0.75, 2.0)] {
            let theta = kernel_phase(&p, t, w)?.theta;
            let k = kernel_eval(&p, Axis::E2, t, w)?;
            let ki = kernel_inverse_eval(&p, Axis::E2, t, w)?;
            println!(
                "  t={t:5.2} w={w:5.2} theta={theta:8.4} K={:?} K Kinv / amp^2 = {:.6}",
                k.0,
                (k * ki).re() / p.amplitude()?.powi(2)
            );
        }
    }
    // b = 0 has no sampled kernel
    let degenerate = LctParams::new(2.0, 0.0, 1.0, 0.5)?;
    println!(
        "degenerate: {:?}",
        kernel_phase(&degenerate, 0.0, 0.0).err()
    );
    Ok(())
}
