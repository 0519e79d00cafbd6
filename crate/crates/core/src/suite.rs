//! The standard inequality suite: Gaussian-family signals, unit Gaussian
//! windows and three parameter triples, on grids sized for each triple.

use crate::config::window_grid_for;
use crate::error::Result;
use crate::grid::{Grid3D, GridAxis, Grids, SampledField3D, WindowSpec};
use crate::kernel::LctParams;
use crate::signal::{generate_signal, SignalSpec};
use crate::transform::ParamTriple;

/// Signal and window-shift grid: `n` points per axis over `[−3, 3]`.
pub const SIGNAL_HALF_EXTENT: f64 = 3.0;

pub fn standard_triples() -> Vec<(&'static str, ParamTriple)> {
    let p = |a, b, c, d| LctParams::new(a, b, c, d).expect("unimodular");
    vec![
        ("fourier", [LctParams::fourier(); 3]),
        ("fresnel-like", [p(0.5, 2.0, -0.375, 0.5); 3]),
        (
            "mixed",
            [
                p(0.6, 1.25, -0.32, 1.0),
                p(0.5, 2.0, -0.375, 0.5),
                LctParams::fourier(),
            ],
        ),
    ]
}

/// Ten unit-scale members of the Gaussian family.
pub fn standard_signals() -> Vec<SignalSpec> {
    let g = |center, widths| SignalSpec::Gaussian {
        center,
        widths,
        amplitude: 1.0,
    };
    let c = |center, widths, chirp| SignalSpec::ChirpedGaussian {
        center,
        widths,
        chirp,
        amplitude: 1.0,
    };
    vec![
        g([0.0; 3], [1.0; 3]),
        g([0.0; 3], [0.8; 3]),
        g([0.0; 3], [1.2; 3]),
        g([0.3, -0.2, 0.1], [0.9, 1.0, 1.1]),
        g([0.0; 3], [0.7, 1.0, 1.3]),
        g([-0.4, 0.0, 0.4], [1.0, 0.8, 1.0]),
        c([0.0; 3], [1.0; 3], [0.2, -0.1, 0.15]),
        c([0.1, 0.0, -0.1], [0.9; 3], [-0.25, 0.2, 0.1]),
        c([0.0; 3], [1.1, 0.9, 1.0], [0.1, 0.1, -0.3]),
        g([0.2, 0.2, -0.2], [1.1, 1.0, 0.9]),
    ]
}

/// ω grid for a Gaussian product `f Ψ(· − μ)` of width `sigma_h`.
///
/// Each axis covers the drift `|a| μ/2` of the spectral centre plus three
/// spectral widths `√((b/σ)² + (aσ)²)`, but never more than one period
/// `2π|b|/Δt` of the sampled transform, where aliased copies would be
/// counted twice. The spacing is at most `0.9 π|b| / t_half` so the
/// kernel's `tω/b` phase is resolved across the signal grid.
pub fn omega_grid_for(
    params: &ParamTriple,
    t: &Grid3D,
    mu: &Grid3D,
    sigma_h: f64,
) -> Result<Grid3D> {
    use std::f64::consts::PI;
    let mut axes = [GridAxis {
        count: 1,
        spacing: 1.0,
        origin: 0.0,
    }; 3];
    for (k, slot) in axes.iter_mut().enumerate() {
        let (a, b) = (params[k].a(), params[k].b().abs());
        let t_half = t.axes[k]
            .coords()
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        let mu_max = mu.axes[k]
            .coords()
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        let spread = ((b / sigma_h).powi(2) + (a * sigma_h).powi(2)).sqrt();
        let ext = (a.abs() * mu_max / 2.0 + 3.0 * spread).min(PI * b / t.axes[k].spacing);
        let max_step = 0.9 * PI * b / t_half;
        let n = (2.0 * ext / max_step).ceil().max(2.0) as usize;
        *slot = GridAxis::symmetric(n, 2.0 * ext / n as f64)?;
    }
    Ok(Grid3D::new(axes))
}

#[derive(Clone, Debug)]
pub struct SuiteCase {
    pub triple: &'static str,
    pub signal: SignalSpec,
    pub params: ParamTriple,
    pub f: SampledField3D,
    pub w: WindowSpec,
    pub grids: Grids,
}

/// Every signal × triple pair with unit-norm signal and window, `n` points
/// per signal axis.
pub fn standard_suite(n: usize) -> Result<Vec<SuiteCase>> {
    let t = Grid3D::cube(n, 2.0 * SIGNAL_HALF_EXTENT / n as f64)?;
    let mu = t;
    let w = WindowSpec::new(generate_signal(
        &SignalSpec::gaussian(1.0),
        &window_grid_for(&t, &mu)?,
    )?)?
    .normalized();
    let mut out = Vec::new();
    for (name, params) in standard_triples() {
        let grids = Grids {
            omega: omega_grid_for(&params, &t, &mu, std::f64::consts::FRAC_1_SQRT_2)?,
            mu,
        };
        for spec in standard_signals() {
            let f = generate_signal(&spec, &t)?.normalized()?;
            out.push(SuiteCase {
                triple: name,
                signal: spec,
                params,
                f,
                w: w.clone(),
                grids,
            });
        }
    }
    Ok(out)
}
