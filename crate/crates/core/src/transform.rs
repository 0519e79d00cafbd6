//! Discrete OFT, OCLCT and WOCLCT on uniform grids.
//!
//! Every transform is a midpoint sum whose integrand multiplies kernels on the
//! right, one axis at a time: `((f·κ1)·κ2)·κ3`. Because each factor depends on
//! a single coordinate pair, the triple sum factors into three passes, each a
//! right multiplication summed along one axis. Right distributivity makes this
//! exact for octonions even though the product is not associative.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::grid::{Grid3D, GridAxis, SampledField3D, WindowSpec, WoclctResult};
use crate::kernel::{forward_resampling, inverse_resampling, LctParams, Resampling};
use crate::octonion::{Axis, Octonion};

/// One LCT matrix per axis, in axis order.
pub type ParamTriple = [LctParams; 3];

/// Work for one pass along one axis.
enum Stage {
    /// `out[o] = Σ_i x[i]·(c[i,o] + s[i,o]·axis)`.
    Kernel {
        axis: Axis,
        n_out: usize,
        c: Vec<f64>,
        s: Vec<f64>,
    },
    /// `out[o] = Σ_i w[i,o]·x[i]`.
    Real { n_out: usize, w: Vec<f64> },
    /// `out[o] = x[src[o]]·chirp[o]`.
    Resample(Resampling),
}

impl Stage {
    fn n_out(&self) -> usize {
        match self {
            Stage::Kernel { n_out, .. } | Stage::Real { n_out, .. } => *n_out,
            Stage::Resample(r) => r.src.len(),
        }
    }

    fn apply(&self, x: &[Octonion], shape: [usize; 3], dim: usize) -> (Vec<Octonion>, [usize; 3]) {
        let outer: usize = shape[..dim].iter().product();
        let inner: usize = shape[dim + 1..].iter().product();
        let n_in = shape[dim];
        let n_out = self.n_out();
        let mut out_shape = shape;
        out_shape[dim] = n_out;
        let mut out = vec![Octonion::ZERO; outer * n_out * inner];

        match self {
            Stage::Kernel { axis, c, s, .. } => {
                let unit = axis.unit();
                let xe: Vec<Octonion> = x.iter().map(|&v| v * unit).collect();
                for a in 0..outer {
                    for i in 0..n_in {
                        let src = (a * n_in + i) * inner;
                        for o in 0..n_out {
                            let (ci, si) = (c[i * n_out + o], s[i * n_out + o]);
                            let dst = (a * n_out + o) * inner;
                            for b in 0..inner {
                                let acc = &mut out[dst + b];
                                acc.add_scaled(x[src + b], ci);
                                acc.add_scaled(xe[src + b], si);
                            }
                        }
                    }
                }
            }
            Stage::Real { w, .. } => {
                for a in 0..outer {
                    for i in 0..n_in {
                        let src = (a * n_in + i) * inner;
                        for o in 0..n_out {
                            let wi = w[i * n_out + o];
                            let dst = (a * n_out + o) * inner;
                            for b in 0..inner {
                                out[dst + b].add_scaled(x[src + b], wi);
                            }
                        }
                    }
                }
            }
            Stage::Resample(r) => {
                for a in 0..outer {
                    for (o, (&i, &k)) in r.src.iter().zip(&r.chirp).enumerate() {
                        let src = (a * n_in + i) * inner;
                        let dst = (a * n_out + o) * inner;
                        for b in 0..inner {
                            out[dst + b] = x[src + b] * k;
                        }
                    }
                }
            }
        }
        (out, out_shape)
    }
}

/// Pass for `Σ_t x(t)·κ(t, ω) Δt` along one axis.
fn forward_stage(p: &LctParams, axis: Axis, t: &GridAxis, omega: &[f64]) -> Result<Stage> {
    if p.is_degenerate() {
        return Ok(Stage::Resample(forward_resampling(p, axis, t, omega)?));
    }
    let amp = p.amplitude()? * t.spacing;
    let n_out = omega.len();
    let mut c = vec![0.0; t.count * n_out];
    let mut s = vec![0.0; t.count * n_out];
    for i in 0..t.count {
        let ti = t.coord(i);
        for (o, &w) in omega.iter().enumerate() {
            let (sn, cs) = p.theta_unchecked(ti, w).sin_cos();
            c[i * n_out + o] = amp * cs;
            s[i * n_out + o] = amp * sn;
        }
    }
    Ok(Stage::Kernel { axis, n_out, c, s })
}

/// Pass for `Σ_ω X(ω)·κ⁻¹(t, ω) Δω` along one axis.
fn inverse_stage(p: &LctParams, axis: Axis, omega: &GridAxis, t: &[f64]) -> Result<Stage> {
    if p.is_degenerate() {
        return Ok(Stage::Resample(inverse_resampling(p, axis, omega, t)?));
    }
    let amp = p.amplitude()? * omega.spacing;
    let n_out = t.len();
    let mut c = vec![0.0; omega.count * n_out];
    let mut s = vec![0.0; omega.count * n_out];
    for i in 0..omega.count {
        let wi = omega.coord(i);
        for (o, &tt) in t.iter().enumerate() {
            let (sn, cs) = p.theta_unchecked(tt, wi).sin_cos();
            c[i * n_out + o] = amp * cs;
            s[i * n_out + o] = -amp * sn;
        }
    }
    Ok(Stage::Kernel { axis, n_out, c, s })
}

fn forward_stages(params: &ParamTriple, t: &Grid3D, omega: &Grid3D) -> Result<[Stage; 3]> {
    Ok([
        forward_stage(&params[0], Axis::E1, &t.axes[0], &omega.axes[0].coords())?,
        forward_stage(&params[1], Axis::E2, &t.axes[1], &omega.axes[1].coords())?,
        forward_stage(&params[2], Axis::E4, &t.axes[2], &omega.axes[2].coords())?,
    ])
}

fn run_forward(stages: &[Stage; 3], x: &[Octonion], shape: [usize; 3]) -> Vec<Octonion> {
    let (x, shape) = stages[0].apply(x, shape, 0);
    let (x, shape) = stages[1].apply(&x, shape, 1);
    stages[2].apply(&x, shape, 2).0
}

/// Octonion Fourier transform with the full dot product in every exponent:
/// `Σ ((f(t)·e^{−e1 2π t·ω})·e^{−e2 2π t·ω})·e^{−e4 2π t·ω} Δt³`.
///
/// This kernel does not factor over axes, so the sum is evaluated directly
/// in `O(N_t N_ω)`.
pub fn oft_forward(f: &SampledField3D, omega_grid: &Grid3D) -> SampledField3D {
    let nu = omega_grid.axes.map(|a| a.coords());
    SampledField3D {
        grid: *omega_grid,
        values: oft_dot_at(f, &nu),
    }
}

/// [`oft_forward`] at the tensor product of arbitrary frequency lists.
pub fn oft_dot_at(f: &SampledField3D, nu: &[Vec<f64>; 3]) -> Vec<Octonion> {
    let dv = f.grid.cell_volume();
    let pts: Vec<[f64; 3]> = f.grid.points().collect();
    let (e1, e2, e4) = (Octonion::basis(1), Octonion::basis(2), Octonion::basis(4));
    let mut out = Vec::with_capacity(nu.iter().map(Vec::len).product());
    for &w0 in &nu[0] {
        for &w1 in &nu[1] {
            for &w2 in &nu[2] {
                let mut acc = Octonion::ZERO;
                for (t, &v) in pts.iter().zip(&f.values) {
                    if v == Octonion::ZERO {
                        continue;
                    }
                    let phi = -2.0 * PI * (t[0] * w0 + t[1] * w1 + t[2] * w2);
                    let (s, c) = phi.sin_cos();
                    let x = v * c + (v * e1) * s;
                    let x = x * c + (x * e2) * s;
                    acc += x * c + (x * e4) * s;
                }
                out.push(acc.scale(dv));
            }
        }
    }
    out
}

/// Octonion Fourier transform with one coordinate per exponent,
/// `Σ ((f(t)·e^{−e1 2π t1ν1})·e^{−e2 2π t2ν2})·e^{−e4 2π t3ν3} Δt³`,
/// evaluated at the tensor product of the given frequency lists.
pub fn oft_separable_at(f: &SampledField3D, nu: &[Vec<f64>; 3]) -> Vec<Octonion> {
    let stages: [Stage; 3] = std::array::from_fn(|k| {
        let t = &f.grid.axes[k];
        let n_out = nu[k].len();
        let mut c = vec![0.0; t.count * n_out];
        let mut s = vec![0.0; t.count * n_out];
        for i in 0..t.count {
            for (o, &v) in nu[k].iter().enumerate() {
                let (sn, cs) = (-2.0 * PI * t.coord(i) * v).sin_cos();
                c[i * n_out + o] = t.spacing * cs;
                s[i * n_out + o] = t.spacing * sn;
            }
        }
        Stage::Kernel {
            axis: Axis::BY_DIMENSION[k],
            n_out,
            c,
            s,
        }
    });
    run_forward(&stages, &f.values, f.grid.shape())
}

/// [`oft_separable_at`] on the points of a grid.
pub fn oft_forward_separable(f: &SampledField3D, omega_grid: &Grid3D) -> SampledField3D {
    let nu = omega_grid.axes.map(|a| a.coords());
    SampledField3D {
        grid: *omega_grid,
        values: oft_separable_at(f, &nu),
    }
}

/// `Σ ((f(t)·κ1(t1,ω1))·κ2(t2,ω2))·κ3(t3,ω3) Δt³` for each ω.
///
/// Axes with `b = 0` use the resampling rule instead of a sum; their ω points
/// must then map onto the t grid.
pub fn oclct_forward(
    f: &SampledField3D,
    params: &ParamTriple,
    omega_grid: &Grid3D,
) -> Result<SampledField3D> {
    let stages = forward_stages(params, &f.grid, omega_grid)?;
    let values = run_forward(&stages, &f.values, f.grid.shape());
    SampledField3D::new(*omega_grid, values)
}

/// Inverse OCLCT, `Σ ((F(ω)·κ3⁻¹)·κ2⁻¹)·κ1⁻¹ Δω³`.
///
/// The inverse kernels are applied last axis first, mirroring the forward
/// order. Applying them first axis first returns `−f` instead of `f` for
/// generic inputs.
pub fn oclct_inverse(
    spectrum: &SampledField3D,
    params: &ParamTriple,
    t_grid: &Grid3D,
) -> Result<SampledField3D> {
    let omega = &spectrum.grid;
    let s3 = inverse_stage(
        &params[2],
        Axis::E4,
        &omega.axes[2],
        &t_grid.axes[2].coords(),
    )?;
    let s2 = inverse_stage(
        &params[1],
        Axis::E2,
        &omega.axes[1],
        &t_grid.axes[1].coords(),
    )?;
    let s1 = inverse_stage(
        &params[0],
        Axis::E1,
        &omega.axes[0],
        &t_grid.axes[0].coords(),
    )?;
    let (x, shape) = s3.apply(&spectrum.values, omega.shape(), 2);
    let (x, shape) = s2.apply(&x, shape, 1);
    let (x, _) = s1.apply(&x, shape, 0);
    SampledField3D::new(*t_grid, x)
}

/// Per-axis real passes `Σ_t x(t)·amp·cos θ Δt` and `Σ_t x(t)·amp·sin θ Δt`.
pub(crate) struct TrigStages([[Stage; 2]; 3]);

impl TrigStages {
    pub(crate) fn new(params: &ParamTriple, t: &Grid3D, omega: &Grid3D) -> Result<Self> {
        let mut out = Vec::with_capacity(3);
        for (k, p) in params.iter().enumerate() {
            let ta = &t.axes[k];
            let om = omega.axes[k].coords();
            let amp = p.amplitude()? * ta.spacing;
            let n_out = om.len();
            let mut wc = vec![0.0; ta.count * n_out];
            let mut ws = vec![0.0; ta.count * n_out];
            for i in 0..ta.count {
                for (o, &w) in om.iter().enumerate() {
                    let (sn, cs) = p.theta_unchecked(ta.coord(i), w).sin_cos();
                    wc[i * n_out + o] = amp * cs;
                    ws[i * n_out + o] = amp * sn;
                }
            }
            out.push([Stage::Real { n_out, w: wc }, Stage::Real { n_out, w: ws }]);
        }
        let [a, b, c]: [[Stage; 2]; 3] = out.try_into().ok().expect("three axes");
        Ok(Self([a, b, c]))
    }

    /// Applies cos or sin per axis as selected by bit `k` of `pattern`.
    pub(crate) fn apply(&self, pattern: usize, x: &[Octonion], shape: [usize; 3]) -> Vec<Octonion> {
        let (x, shape) = self.0[0][pattern & 1].apply(x, shape, 0);
        let (x, shape) = self.0[1][(pattern >> 1) & 1].apply(&x, shape, 1);
        self.0[2][(pattern >> 2) & 1].apply(&x, shape, 2).0
    }
}

/// Index offsets placing `Ψ(t − μ)` on the window grid for one μ.
///
/// Window index along axis `k` is `i + offset[k]` for signal index `i`.
pub(crate) fn window_offsets(t: &Grid3D, window: &Grid3D, mu: [f64; 3]) -> Result<[i64; 3]> {
    let mut off = [0i64; 3];
    for k in 0..3 {
        let (ta, wa) = (&t.axes[k], &window.axes[k]);
        if (ta.spacing - wa.spacing).abs() > 1e-9 * ta.spacing {
            return Err(Error::GridMismatch(format!(
                "window spacing {} differs from signal spacing {} on axis {k}",
                wa.spacing, ta.spacing
            )));
        }
        off[k] = wa
            .step_offset(ta.origin - mu[k])
            .ok_or(Error::MuOffGrid { axis: k, mu: mu[k] })?;
    }
    Ok(off)
}

/// Calls `visit(t_index, window_index)` for each t point whose shifted window
/// sample lies inside the window grid.
pub(crate) fn for_each_window_pair(
    t: &Grid3D,
    window: &Grid3D,
    off: [i64; 3],
    mut visit: impl FnMut(usize, usize),
) {
    let range = |k: usize| {
        let lo = (-off[k]).max(0) as usize;
        let hi = (window.axes[k].count as i64 - off[k]).clamp(0, t.axes[k].count as i64) as usize;
        lo..hi.max(lo)
    };
    for i0 in range(0) {
        for i1 in range(1) {
            for i2 in range(2) {
                let j = [
                    (i0 as i64 + off[0]) as usize,
                    (i1 as i64 + off[1]) as usize,
                    (i2 as i64 + off[2]) as usize,
                ];
                visit(t.flat([i0, i1, i2]), window.flat(j));
            }
        }
    }
}

/// `f(t)·conj(Ψ(t − μ))` on the signal grid, zero where the window has no sample.
pub fn windowed_signal(f: &SampledField3D, w: &WindowSpec, mu: [f64; 3]) -> Result<SampledField3D> {
    let off = window_offsets(&f.grid, &w.window.grid, mu)?;
    let mut out = SampledField3D::zeros(f.grid);
    for_each_window_pair(&f.grid, &w.window.grid, off, |k, j| {
        out.values[k] = f.values[k] * w.window.values[j].conj();
    });
    Ok(out)
}

/// WOCLCT: for each `(ω, μ)`,
/// `Σ (((f(t)·conj(Ψ(t − μ)))·κ1)·κ2)·κ3 Δt³`.
pub fn woclct_forward(
    f: &SampledField3D,
    w: &WindowSpec,
    params: &ParamTriple,
    omega_grid: &Grid3D,
    mu_grid: &Grid3D,
) -> Result<WoclctResult> {
    let stages = forward_stages(params, &f.grid, omega_grid)?;
    let n_omega = omega_grid.len();
    let mut values = Vec::with_capacity(n_omega * mu_grid.len());
    for mu in mu_grid.points() {
        let h = windowed_signal(f, w, mu)?;
        values.extend(run_forward(&stages, &h.values, f.grid.shape()));
    }
    WoclctResult::new(*omega_grid, *mu_grid, values)
}

/// Inverse WOCLCT,
/// `‖Ψ‖⁻² Σ_μ [Σ_ω ((G(ω,μ)·κ3⁻¹)·κ2⁻¹)·κ1⁻¹ Δω³]·Ψ(t − μ) Δμ³`.
///
/// The bracket undoes the forward kernels one axis at a time and recovers
/// `f(t)·conj(Ψ(t − μ))`; multiplying by `Ψ(t − μ)` on the right then gives
/// `f(t)|Ψ(t − μ)|²` for any octonion `f` and `Ψ`, since `(x·conj(a))·a = x|a|²`
/// in an alternative algebra.
pub fn woclct_inverse(
    g: &WoclctResult,
    w: &WindowSpec,
    params: &ParamTriple,
    t_grid: &Grid3D,
) -> Result<SampledField3D> {
    let psi_norm = w.norm_sqr();
    if psi_norm == 0.0 {
        return Err(Error::ZeroWindow);
    }
    let om = &g.omega_grid;
    let s3 = inverse_stage(&params[2], Axis::E4, &om.axes[2], &t_grid.axes[2].coords())?;
    let s2 = inverse_stage(&params[1], Axis::E2, &om.axes[1], &t_grid.axes[1].coords())?;
    let s1 = inverse_stage(&params[0], Axis::E1, &om.axes[0], &t_grid.axes[0].coords())?;
    let psi = &w.window;
    let mut out = vec![Octonion::ZERO; t_grid.len()];
    for (m, mu) in g.mu_grid.points().enumerate() {
        let off = window_offsets(t_grid, &psi.grid, mu)?;
        let (x, shape) = s3.apply(g.mu_slice(m), om.shape(), 2);
        let (x, shape) = s2.apply(&x, shape, 1);
        let (h, _) = s1.apply(&x, shape, 0);
        for_each_window_pair(t_grid, &psi.grid, off, |ti, j| {
            out[ti] += h[ti] * psi.values[j];
        });
    }
    let scale = g.mu_grid.cell_volume() / psi_norm;
    SampledField3D::new(*t_grid, out.into_iter().map(|v| v.scale(scale)).collect())
}

/// The inversion sum with the window atom bracketed as written in the
/// literature,
/// `‖Ψ‖⁻² Σ_{ω,μ} G(ω,μ)·(((κ1⁻¹·κ2⁻¹)·κ3⁻¹)·Ψ(t − μ)) Δω³ Δμ³`.
///
/// For real windowed signals `h = f·conj(Ψ(· − μ))` the products
/// `e_p·e_p` with two sine factors come out with the wrong sign, which mixes
/// `h(t)` with its reflections. The result is close to `f` only when those
/// reflections coincide, as for centred even inputs and `μ = 0`. Kept for
/// comparison with [`woclct_inverse`].
///
/// The kernel product expands as `Σ_p w_p(t,ω) e_p` with real weights, so the
/// ω sum splits into eight real-weighted separable sums `Q_p(t, μ)` and the
/// result is `Σ_μ Σ_p Q_p·(e_p·Ψ(t − μ))`. Requires `b ≠ 0` on every axis.
pub fn woclct_inverse_as_printed(
    g: &WoclctResult,
    w: &WindowSpec,
    params: &ParamTriple,
    t_grid: &Grid3D,
) -> Result<SampledField3D> {
    let psi_norm = w.norm_sqr();
    if psi_norm == 0.0 {
        return Err(Error::ZeroWindow);
    }
    // cos and sin weights per axis: index 0 for cos(−θ), 1 for sin(−θ)
    let mut weights: Vec<[Stage; 2]> = Vec::with_capacity(3);
    for (k, p) in params.iter().enumerate() {
        let om = &g.omega_grid.axes[k];
        let t = t_grid.axes[k].coords();
        let amp = p.amplitude()? * om.spacing;
        let n_out = t.len();
        let mut wc = vec![0.0; om.count * n_out];
        let mut ws = vec![0.0; om.count * n_out];
        for i in 0..om.count {
            for (o, &tt) in t.iter().enumerate() {
                let (sn, cs) = p.theta_unchecked(tt, om.coord(i)).sin_cos();
                wc[i * n_out + o] = amp * cs;
                ws[i * n_out + o] = -amp * sn;
            }
        }
        weights.push([Stage::Real { n_out, w: wc }, Stage::Real { n_out, w: ws }]);
    }

    let psi = &w.window;
    let e_psi: Vec<Vec<Octonion>> = (0..8)
        .map(|p| psi.values.iter().map(|&v| Octonion::basis(p) * v).collect())
        .collect();

    let mut out = vec![Octonion::ZERO; t_grid.len()];
    for (m, mu) in g.mu_grid.points().enumerate() {
        let off = window_offsets(t_grid, &psi.grid, mu)?;
        let slice = g.mu_slice(m);
        let shape = g.omega_grid.shape();
        let mut level: Vec<(Vec<Octonion>, [usize; 3])> = vec![(slice.to_vec(), shape)];
        for (k, pair) in weights.iter().enumerate() {
            // children of pattern p are p (cos) and p | 1 << k (sin)
            let mut next = vec![(Vec::new(), shape); level.len() * 2];
            for (p, (x, sh)) in level.iter().enumerate() {
                next[p] = pair[0].apply(x, *sh, k);
                next[p | (1 << k)] = pair[1].apply(x, *sh, k);
            }
            level = next;
        }
        for_each_window_pair(t_grid, &psi.grid, off, |ti, j| {
            let mut acc = Octonion::ZERO;
            for (p, (q, _)) in level.iter().enumerate() {
                acc += q[ti] * e_psi[p][j];
            }
            out[ti] += acc;
        });
    }
    let scale = g.mu_grid.cell_volume() / psi_norm;
    SampledField3D::new(*t_grid, out.into_iter().map(|v| v.scale(scale)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::relative_l2;
    use crate::kernel::{kernel_eval, kernel_inverse_eval};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_field(grid: Grid3D, seed: u64, real: bool) -> SampledField3D {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        SampledField3D::from_fn(grid, |_| {
            let mut c = [0.0; 8];
            let n = if real { 1 } else { 8 };
            for v in c.iter_mut().take(n) {
                *v = rng.gen_range(-1.0..1.0);
            }
            Octonion(c)
        })
    }

    fn gaussian(grid: Grid3D, sigma: f64) -> SampledField3D {
        SampledField3D::from_fn(grid, |x| {
            Octonion::real(
                (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / (2.0 * sigma * sigma)).exp(),
            )
        })
    }

    fn general_params() -> ParamTriple {
        [
            LctParams::new(1.0, 0.5, -1.0, 0.5).unwrap(),
            LctParams::new(0.5, 2.0, -0.375, 0.5).unwrap(),
            LctParams::new(0.3, -1.2, 1.0 / 1.2, 0.0).unwrap(),
        ]
    }

    /// Direct triple sum with explicit left-to-right bracketing.
    fn brute_oclct(f: &SampledField3D, p: &ParamTriple, omega: &Grid3D) -> Vec<Octonion> {
        let dv = f.grid.cell_volume();
        omega
            .points()
            .map(|w| {
                let mut acc = Octonion::ZERO;
                for (t, &v) in f.grid.points().zip(&f.values) {
                    let k1 = kernel_eval(&p[0], Axis::E1, t[0], w[0]).unwrap();
                    let k2 = kernel_eval(&p[1], Axis::E2, t[1], w[1]).unwrap();
                    let k3 = kernel_eval(&p[2], Axis::E4, t[2], w[2]).unwrap();
                    acc += ((v * k1) * k2) * k3;
                }
                acc.scale(dv)
            })
            .collect()
    }

    fn brute_oclct_inverse(
        spec: &SampledField3D,
        p: &ParamTriple,
        t_grid: &Grid3D,
        reverse: bool,
    ) -> Vec<Octonion> {
        let dv = spec.grid.cell_volume();
        t_grid
            .points()
            .map(|t| {
                let mut acc = Octonion::ZERO;
                for (w, &v) in spec.grid.points().zip(&spec.values) {
                    let k1 = kernel_inverse_eval(&p[0], Axis::E1, t[0], w[0]).unwrap();
                    let k2 = kernel_inverse_eval(&p[1], Axis::E2, t[1], w[1]).unwrap();
                    let k3 = kernel_inverse_eval(&p[2], Axis::E4, t[2], w[2]).unwrap();
                    acc += if reverse {
                        ((v * k3) * k2) * k1
                    } else {
                        ((v * k1) * k2) * k3
                    };
                }
                acc.scale(dv)
            })
            .collect()
    }

    #[test]
    fn separable_oclct_matches_direct_sum() {
        let t = Grid3D::symmetric([4, 5, 3], [0.6, 0.5, 0.7]).unwrap();
        let om = Grid3D::symmetric([3, 4, 5], [0.8, 0.9, 0.4]).unwrap();
        let f = random_field(t, 1, false);
        let p = general_params();
        let fast = oclct_forward(&f, &p, &om).unwrap();
        assert!(relative_l2(&fast.values, &brute_oclct(&f, &p, &om)) < 1e-13);
    }

    #[test]
    fn separable_inverse_matches_direct_sum() {
        let om = Grid3D::symmetric([4, 3, 5], [0.6, 0.5, 0.7]).unwrap();
        let t = Grid3D::symmetric([3, 4, 4], [0.8, 0.9, 0.4]).unwrap();
        let spec = random_field(om, 2, false);
        let p = general_params();
        let fast = oclct_inverse(&spec, &p, &t).unwrap();
        assert!(relative_l2(&fast.values, &brute_oclct_inverse(&spec, &p, &t, true)) < 1e-13);
    }

    #[test]
    fn right_association_differs() {
        // f = e5 constant: ((f·κ1)·κ2)·κ3 and f·((κ1·κ2)·κ3) disagree
        let t = Grid3D::cube(3, 0.7).unwrap();
        let om = Grid3D::cube(3, 0.9).unwrap();
        let f = SampledField3D::from_fn(t, |_| Octonion::basis(5));
        let p = general_params();
        let left = oclct_forward(&f, &p, &om).unwrap();
        let dv = t.cell_volume();
        let right: Vec<Octonion> = om
            .points()
            .map(|w| {
                let mut acc = Octonion::ZERO;
                for x in t.points() {
                    let k1 = kernel_eval(&p[0], Axis::E1, x[0], w[0]).unwrap();
                    let k2 = kernel_eval(&p[1], Axis::E2, x[1], w[1]).unwrap();
                    let k3 = kernel_eval(&p[2], Axis::E4, x[2], w[2]).unwrap();
                    acc += Octonion::basis(5) * ((k1 * k2) * k3);
                }
                acc.scale(dv)
            })
            .collect();
        assert!(relative_l2(&left.values, &right) > 0.1);
    }

    #[test]
    fn first_axis_first_inverse_negates() {
        let t = Grid3D::cube(10, 0.55).unwrap();
        let om = Grid3D::cube(10, 0.55).unwrap();
        let p = [LctParams::fourier(); 3];
        for f in [
            gaussian(t, 0.9),
            gaussian(t, 0.9).map(|v| v * Octonion([1.0, 0.3, -0.2, 0.5, 0.1, 0.0, 0.4, -0.6])),
        ] {
            let spec = oclct_forward(&f, &p, &om).unwrap();
            let good = oclct_inverse(&spec, &p, &t).unwrap();
            let printed = brute_oclct_inverse(&spec, &p, &t, false);
            let neg: Vec<Octonion> = f.values.iter().map(|&v| -v).collect();
            assert!(relative_l2(&good.values, &f.values) < 0.05);
            assert!(relative_l2(&printed, &neg) < 0.05);
        }
    }

    #[test]
    fn zero_in_zero_out() {
        let t = Grid3D::cube(4, 0.5).unwrap();
        let f = SampledField3D::zeros(t);
        let p = general_params();
        assert!(oclct_forward(&f, &p, &t)
            .unwrap()
            .values
            .iter()
            .all(|v| *v == Octonion::ZERO));
        assert!(oclct_inverse(&f, &p, &t)
            .unwrap()
            .values
            .iter()
            .all(|v| *v == Octonion::ZERO));
        assert!(oft_forward(&f, &t)
            .values
            .iter()
            .all(|v| *v == Octonion::ZERO));
        let w = WindowSpec::new(gaussian(t, 1.0)).unwrap();
        let mu = Grid3D::cube(3, 0.5).unwrap();
        let g = woclct_forward(&f, &w, &p, &t, &mu).unwrap();
        assert!(g.values.iter().all(|v| *v == Octonion::ZERO));
        let back = woclct_inverse(&g, &w, &p, &t).unwrap();
        assert!(back.values.iter().all(|v| *v == Octonion::ZERO));
    }

    #[test]
    fn oft_at_zero_frequency_is_plain_sum() {
        let t = Grid3D::cube(6, 0.5).unwrap();
        let f = gaussian(t, 1.0);
        let om = Grid3D::new([GridAxis::new(1, 1.0, 0.0).unwrap(); 3]);
        let v = oft_forward(&f, &om).values[0];
        let sum: f64 = f.values.iter().map(|v| v.re()).sum::<f64>() * t.cell_volume();
        assert!((v - Octonion::real(sum)).norm() < 1e-14);
        let v = oft_forward_separable(&f, &om).values[0];
        assert!((v - Octonion::real(sum)).norm() < 1e-14);
    }

    #[test]
    fn oft_matches_sequential_scalar_oracle() {
        // real separable input: component oracle from the three exponentials
        let t = Grid3D::cube(16, 0.4).unwrap();
        let om = Grid3D::cube(3, 0.2).unwrap();
        let f = gaussian(t, 1.0);
        let fast = oft_forward(&f, &om);
        let dv = t.cell_volume();
        for (k, w) in om.points().enumerate() {
            let mut c = [0.0; 8];
            for (x, v) in t.points().zip(&f.values) {
                let phi = -2.0 * PI * (x[0] * w[0] + x[1] * w[1] + x[2] * w[2]);
                let (s, co) = phi.sin_cos();
                // (co + s e1)(co + s e2)(co + s e4) expanded by pattern
                for (p, slot) in c.iter_mut().enumerate() {
                    let term: f64 = (0..3)
                        .map(|b| if p >> b & 1 == 1 { s } else { co })
                        .product();
                    *slot += v.re() * term * dv;
                }
            }
            assert!((fast.values[k] - Octonion(c)).norm() < 1e-12);
        }
    }

    #[test]
    fn degenerate_axes_resample() {
        let t = Grid3D::cube(6, 0.5).unwrap();
        let f = random_field(t, 3, false);
        let id = [LctParams::identity(); 3];
        let out = oclct_forward(&f, &id, &t).unwrap();
        assert_eq!(out.values, f.values);
        let back = oclct_inverse(&out, &id, &t).unwrap();
        assert_eq!(back.values, f.values);

        // shear on all axes, then undo
        let shear = LctParams::new(1.0, 0.0, 0.7, 1.0).unwrap();
        let p = [shear; 3];
        let out = oclct_forward(&f, &p, &t).unwrap();
        let back = oclct_inverse(&out, &p, &t).unwrap();
        assert!(relative_l2(&back.values, &f.values) < 1e-14);
    }

    #[test]
    fn mixed_degenerate_axis_matches_one_dimensional_transform() {
        // identity on axes 2 and 3 leaves a 1D LCT along axis 1
        let t = Grid3D::symmetric([24, 2, 2], [0.4, 1.0, 1.0]).unwrap();
        let om = Grid3D::symmetric([24, 2, 2], [0.4, 1.0, 1.0]).unwrap();
        let p1 = LctParams::new(1.0, 0.5, -1.0, 0.5).unwrap();
        let params = [p1, LctParams::identity(), LctParams::identity()];
        let f = SampledField3D::from_fn(t, |x| {
            Octonion::real((-x[0] * x[0]).exp() * (1.0 + x[1] + 2.0 * x[2]))
        });
        let out = oclct_forward(&f, &params, &om).unwrap();
        let a = &t.axes[0];
        for (k, w) in om.points().enumerate() {
            let [_, j, l] = om.unflat(k);
            let mut acc = Octonion::ZERO;
            for n in 0..a.count {
                let v = f.values[t.flat([n, j, l])];
                acc += v * kernel_eval(&p1, Axis::E1, a.coord(n), w[0]).unwrap() * a.spacing;
            }
            assert!((out.values[k] - acc).norm() < 1e-13);
        }
        let back = oclct_inverse(&out, &params, &t).unwrap();
        assert!(relative_l2(&back.values, &f.values) < 1e-2);
    }

    #[test]
    fn woclct_with_flat_window_is_oclct() {
        let t = Grid3D::cube(5, 0.5).unwrap();
        let om = Grid3D::cube(4, 0.7).unwrap();
        let mu = Grid3D::new([GridAxis::new(1, 1.0, 0.0).unwrap(); 3]);
        let f = random_field(t, 4, false);
        let w = WindowSpec::new(SampledField3D::from_fn(t, |_| Octonion::ONE)).unwrap();
        let p = general_params();
        let g = woclct_forward(&f, &w, &p, &om, &mu).unwrap();
        let o = oclct_forward(&f, &p, &om).unwrap();
        assert!(relative_l2(&g.values, &o.values) < 1e-15);
    }

    #[test]
    fn woclct_real_inputs_equal_oclct_of_product() {
        let t = Grid3D::cube(6, 0.5).unwrap();
        let wg = Grid3D::cube(5, 0.5).unwrap();
        let om = Grid3D::cube(4, 0.7).unwrap();
        let mu = Grid3D::cube(2, 0.5).unwrap();
        let f = random_field(t, 5, true);
        let psi = gaussian(wg, 0.8);
        let w = WindowSpec::new(psi.clone()).unwrap();
        let p = general_params();
        let g = woclct_forward(&f, &w, &p, &om, &mu).unwrap();
        for (m, muv) in mu.points().enumerate() {
            let prod = SampledField3D::from_fn(t, |x| {
                let y = [x[0] - muv[0], x[1] - muv[1], x[2] - muv[2]];
                let ind = [0, 1, 2].map(|k| wg.axes[k].index_of(y[k]));
                let psi_v = match ind {
                    [Some(a), Some(b), Some(c)] => psi.values[wg.flat([a, b, c])],
                    _ => Octonion::ZERO,
                };
                f.values[t.flat([0, 1, 2].map(|k| t.axes[k].index_of(x[k]).unwrap()))] * psi_v
            });
            let o = oclct_forward(&prod, &p, &om).unwrap();
            assert!(relative_l2(g.mu_slice(m), &o.values) < 1e-14);
        }
    }

    #[test]
    fn mu_off_grid_is_rejected() {
        let t = Grid3D::cube(4, 0.5).unwrap();
        let w = WindowSpec::new(gaussian(t, 1.0)).unwrap();
        let f = gaussian(t, 1.0);
        let mu = Grid3D::cube(2, 0.3).unwrap();
        let err = woclct_forward(&f, &w, &general_params(), &t, &mu).unwrap_err();
        assert!(matches!(err, Error::MuOffGrid { .. }));
    }

    #[test]
    fn woclct_inverse_as_printed_matches_direct_sum() {
        let t = Grid3D::cube(4, 0.6).unwrap();
        let wg = Grid3D::cube(3, 0.6).unwrap();
        let om = Grid3D::symmetric([3, 4, 2], [0.7, 0.5, 0.9]).unwrap();
        let mu = Grid3D::symmetric([2, 2, 2], [0.6; 3]).unwrap();
        let psi = random_field(wg, 6, false);
        let w = WindowSpec::new(psi.clone()).unwrap();
        let p = general_params();
        let g =
            WoclctResult::new(om, mu, random_field(om, 7, false).values.repeat(mu.len())).unwrap();
        let fast = woclct_inverse_as_printed(&g, &w, &p, &t).unwrap();
        let scale = om.cell_volume() * mu.cell_volume() / w.norm_sqr();
        let brute: Vec<Octonion> = t
            .points()
            .map(|x| {
                let mut acc = Octonion::ZERO;
                for (m, muv) in mu.points().enumerate() {
                    let y = [0, 1, 2].map(|k| wg.axes[k].index_of(x[k] - muv[k]));
                    let psi_v = match y {
                        [Some(a), Some(b), Some(c)] => psi.values[wg.flat([a, b, c])],
                        _ => continue,
                    };
                    for (k, wv) in om.points().enumerate() {
                        let k1 = kernel_inverse_eval(&p[0], Axis::E1, x[0], wv[0]).unwrap();
                        let k2 = kernel_inverse_eval(&p[1], Axis::E2, x[1], wv[1]).unwrap();
                        let k3 = kernel_inverse_eval(&p[2], Axis::E4, x[2], wv[2]).unwrap();
                        acc += g.at(k, m) * (((k1 * k2) * k3) * psi_v);
                    }
                }
                acc.scale(scale)
            })
            .collect();
        assert!(relative_l2(&fast.values, &brute) < 1e-13);
    }

    #[test]
    fn woclct_inverse_matches_direct_sum() {
        let t = Grid3D::cube(4, 0.6).unwrap();
        let wg = Grid3D::cube(3, 0.6).unwrap();
        let om = Grid3D::symmetric([3, 4, 2], [0.7, 0.5, 0.9]).unwrap();
        let mu = Grid3D::symmetric([2, 2, 2], [0.6; 3]).unwrap();
        let psi = random_field(wg, 8, false);
        let w = WindowSpec::new(psi.clone()).unwrap();
        let p = general_params();
        let g =
            WoclctResult::new(om, mu, random_field(om, 9, false).values.repeat(mu.len())).unwrap();
        let fast = woclct_inverse(&g, &w, &p, &t).unwrap();
        let scale = mu.cell_volume() / w.norm_sqr();
        let mut brute = vec![Octonion::ZERO; t.len()];
        for (m, muv) in mu.points().enumerate() {
            let spec = SampledField3D::new(om, g.mu_slice(m).to_vec()).unwrap();
            let h = brute_oclct_inverse(&spec, &p, &t, true);
            for (k, x) in t.points().enumerate() {
                let y = [0, 1, 2].map(|a| wg.axes[a].index_of(x[a] - muv[a]));
                if let [Some(a), Some(b), Some(c)] = y {
                    brute[k] += (h[k] * psi.values[wg.flat([a, b, c])]).scale(scale);
                }
            }
        }
        assert!(relative_l2(&fast.values, &brute) < 1e-13);
    }

    #[test]
    fn woclct_inverse_with_flat_window_is_scaled_oclct_inverse() {
        let t = Grid3D::cube(5, 0.5).unwrap();
        let om = Grid3D::cube(6, 0.8).unwrap();
        let mu = Grid3D::new([GridAxis::new(1, 0.5, 0.0).unwrap(); 3]);
        let w = WindowSpec::new(SampledField3D::from_fn(t, |_| Octonion::ONE)).unwrap();
        let spec = random_field(om, 10, false);
        let g = WoclctResult::new(om, mu, spec.values.clone()).unwrap();
        let p = general_params();
        let a = woclct_inverse(&g, &w, &p, &t).unwrap();
        let b = oclct_inverse(&spec, &p, &t).unwrap();
        let k = mu.cell_volume() / w.norm_sqr();
        let b: Vec<Octonion> = b.values.iter().map(|v| v.scale(k)).collect();
        assert!(relative_l2(&a.values, &b) < 1e-14);
    }

    #[test]
    fn woclct_round_trip_octonion_signal_and_window() {
        let t = Grid3D::cube(8, 0.75).unwrap();
        let wg = Grid3D::cube(17, 0.75).unwrap();
        let om = Grid3D::cube(10, 0.9).unwrap();
        let mu = Grid3D::cube(10, 0.75).unwrap();
        let amp = Octonion([0.5, 0.1, -0.3, 0.2, 0.6, -0.1, 0.3, 0.4]);
        let f = gaussian(t, 1.0).map(|v| v * amp);
        let w = WindowSpec::new(
            gaussian(wg, 1.0).map(|v| v * Octonion([1.0, 0.0, 0.5, 0.0, 0.0, 0.5, 0.0, 0.0])),
        )
        .unwrap();
        let p = [LctParams::fourier(); 3];
        let g = woclct_forward(&f, &w, &p, &om, &mu).unwrap();
        let back = woclct_inverse(&g, &w, &p, &t).unwrap();
        assert!(relative_l2(&back.values, &f.values) < 0.1);
        let printed = woclct_inverse_as_printed(&g, &w, &p, &t).unwrap();
        assert!(relative_l2(&printed.values, &f.values) > 0.2);
    }
}
