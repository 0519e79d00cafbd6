//! Executable checks of the transform identities.
//!
//! Each check returns a [`PropertyResidual`]: the relative L² mismatch
//! between two independently computed sides, over every evaluated point.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{relative_l2, Grid3D, GridAxis, Grids, SampledField3D, WindowSpec, WoclctResult};
use crate::kernel::LctParams;
use crate::octonion::Octonion;
use crate::transform::{
    oclct_forward, oft_dot_at, oft_separable_at, window_offsets, woclct_forward, ParamTriple,
    TrigStages,
};

pub const REASSEMBLY_TOL: f64 = 1e-10;
pub const PARITY_TOL: f64 = 1e-12;
pub const SHIFT_TOL: f64 = 1e-10;
pub const RELATION_TOL: f64 = 1e-12;
pub const LINEARITY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trig {
    Cos,
    Sin,
}

/// Choice of cos or sin of the kernel phase on each axis.
///
/// Named with `e` for cos and `o` for sin, axis 1 first, so `oee` is
/// `sin θ1 cos θ2 cos θ3`. The pattern's index (sin on axis `k` sets bit `k`)
/// is also the basis unit it multiplies in the kernel product expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TrigPattern(pub [Trig; 3]);

impl TrigPattern {
    pub fn from_index(p: usize) -> Self {
        assert!(p < 8, "pattern index {p} out of range");
        Self(std::array::from_fn(|k| {
            if p >> k & 1 == 1 {
                Trig::Sin
            } else {
                Trig::Cos
            }
        }))
    }

    pub fn index(self) -> usize {
        self.0
            .iter()
            .enumerate()
            .map(|(k, t)| (*t == Trig::Sin) as usize * (1 << k))
            .sum()
    }

    pub fn all() -> [Self; 8] {
        std::array::from_fn(Self::from_index)
    }

    pub fn name(self) -> String {
        self.0
            .iter()
            .map(|t| if *t == Trig::Cos { 'e' } else { 'o' })
            .collect()
    }

    pub fn parse(name: &str) -> Option<Self> {
        let c: Vec<char> = name.chars().collect();
        if c.len() != 3 {
            return None;
        }
        let mut out = [Trig::Cos; 3];
        for (slot, ch) in out.iter_mut().zip(c) {
            *slot = match ch {
                'e' => Trig::Cos,
                'o' => Trig::Sin,
                _ => return None,
            };
        }
        Some(Self(out))
    }
}

impl fmt::Display for TrigPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyResidual {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl PropertyResidual {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            tolerance,
            passed: residual <= tolerance,
        }
    }
}

fn require_real(f: &SampledField3D, what: &str) -> Result<()> {
    if f.is_real(0.0) {
        Ok(())
    } else {
        Err(Error::RealInputRequired(what.into()))
    }
}

/// One real component transform:
/// `(2π)^{-3/2}|b1b2b3|^{-1/2} Σ f(t)Ψ(t − μ) Π_k trig_k(θ_k) Δt³`.
///
/// Inputs must be real. The result is stored in the real part of each value.
pub fn component_transform(
    f: &SampledField3D,
    w: &WindowSpec,
    params: &ParamTriple,
    pattern: TrigPattern,
    grids: &Grids,
) -> Result<WoclctResult> {
    Ok(component_transforms(f, w, params, &[pattern], grids)?.remove(0))
}

fn component_transforms(
    f: &SampledField3D,
    w: &WindowSpec,
    params: &ParamTriple,
    patterns: &[TrigPattern],
    grids: &Grids,
) -> Result<Vec<WoclctResult>> {
    require_real(f, "signal")?;
    require_real(&w.window, "window")?;
    let stages = TrigStages::new(params, &f.grid, &grids.omega)?;
    let mut out: Vec<Vec<Octonion>> = vec![Vec::new(); patterns.len()];
    for mu in grids.mu.points() {
        let off = window_offsets(&f.grid, &w.window.grid, mu)?;
        let mut h = vec![Octonion::ZERO; f.grid.len()];
        crate::transform::for_each_window_pair(&f.grid, &w.window.grid, off, |k, j| {
            h[k] = Octonion::real(f.values[k].re() * w.window.values[j].re());
        });
        for (slot, p) in out.iter_mut().zip(patterns) {
            slot.extend(stages.apply(p.index(), &h, f.grid.shape()));
        }
    }
    out.into_iter()
        .map(|v| WoclctResult::new(grids.omega, grids.mu, v))
        .collect()
}

/// Rebuilds the transform as `Σ_p G_p e_p` from the eight component
/// transforms and compares with the direct octonion evaluation.
pub fn verify_reassembly(
    f: &SampledField3D,
    w: &WindowSpec,
    params: &ParamTriple,
    grids: &Grids,
) -> Result<PropertyResidual> {
    let comps = component_transforms(f, w, params, &TrigPattern::all(), grids)?;
    let direct = woclct_forward(f, w, params, &grids.omega, &grids.mu)?;
    let mut sum = vec![Octonion::ZERO; direct.values.len()];
    for (p, c) in comps.iter().enumerate() {
        for (acc, v) in sum.iter_mut().zip(&c.values) {
            acc.0[p] += v.re();
        }
    }
    Ok(PropertyResidual::new(
        "reassembly",
        relative_l2(&sum, &direct.values),
        REASSEMBLY_TOL,
    ))
}

fn reflect(f: &SampledField3D) -> SampledField3D {
    let values = (0..f.grid.len())
        .map(|k| f.values[f.grid.negated(k)])
        .collect();
    SampledField3D {
        grid: f.grid,
        values,
    }
}

/// Relative residuals of `G(Pf, PΨ)(ω, μ)` against `+G(f, Ψ)(−ω, −μ)` and
/// against `−G(f, Ψ)(−ω, −μ)`, where `Pf(t) = f(−t)`.
///
/// Reflecting `t` turns `θ(−t, ω)` into `θ(t, −ω)` and `Ψ(−t + μ)` into
/// `Ψ(t − (−μ))` with no sign change, so the `+` form is the exact one.
pub fn parity_residuals(
    f: &SampledField3D,
    w: &WindowSpec,
    params: &ParamTriple,
    grids: &Grids,
) -> Result<(f64, f64)> {
    for g in [&f.grid, &w.window.grid, &grids.omega, &grids.mu] {
        g.require_symmetric()?;
    }
    let pw = WindowSpec::new(reflect(&w.window))?;
    let lhs = woclct_forward(&reflect(f), &pw, params, &grids.omega, &grids.mu)?;
    let g = woclct_forward(f, w, params, &grids.omega, &grids.mu)?;
    let n = grids.omega.len();
    let mirrored: Vec<Octonion> = (0..lhs.values.len())
        .map(|k| {
            let (m, o) = (k / n, k % n);
            g.at(grids.omega.negated(o), grids.mu.negated(m))
        })
        .collect();
    let negated: Vec<Octonion> = mirrored.iter().map(|&v| -v).collect();
    Ok((
        relative_l2(&lhs.values, &mirrored),
        relative_l2(&lhs.values, &negated),
    ))
}

/// Parity check `G(Pf, PΨ)(ω, μ) = G(f, Ψ)(−ω, −μ)`; every grid must be
/// closed under negation.
pub fn verify_parity(
    f: &SampledField3D,
    w: &WindowSpec,
    params: &ParamTriple,
    grids: &Grids,
) -> Result<PropertyResidual> {
    let (plus, _) = parity_residuals(f, w, params, grids)?;
    Ok(PropertyResidual::new("parity", plus, PARITY_TOL))
}

/// Shift check along `axis` by `shift`, a whole number of signal steps.
///
/// With `φ = s ω c − a c s²/2` for that axis's matrix,
///
/// ```text
/// G^s(ω, μ) = cos φ · G(ω − s a, μ − s) − sin φ · Δ(ω − s a, μ − s)
/// ```
///
/// where only the shifted axis's coordinates move, and component `i` of `Δ`
/// is `+G_{i ^ b}` when bit `b` (the axis bit) of `i` is clear and `−G_{i ^ b}`
/// when it is set, `G_q` being the component transform of pattern `q`.
///
/// The shifted signal lives on the input grid extended by the shift, so no
/// sample is lost. The right side is evaluated on ω and μ grids whose origins
/// are moved by `−s a` and `−s`.
pub fn verify_shift(
    f: &SampledField3D,
    w: &WindowSpec,
    params: &ParamTriple,
    grids: &Grids,
    axis: usize,
    shift: f64,
) -> Result<PropertyResidual> {
    require_real(f, "signal")?;
    require_real(&w.window, "window")?;
    if axis > 2 {
        return Err(Error::OffGridShift { axis, shift });
    }
    let ta = f.grid.axes[axis];
    let steps = shift / ta.spacing;
    if (steps - steps.round()).abs() > 1e-9 {
        return Err(Error::OffGridShift { axis, shift });
    }
    let steps = steps.round() as i64;
    let p = params[axis];

    // f^s(t) = f(t − s) on the grid covering both supports
    let mut ext = f.grid;
    ext.axes[axis] = GridAxis::new(
        ta.count + steps.unsigned_abs() as usize,
        ta.spacing,
        ta.origin + shift.min(0.0),
    )?;
    let shifted = SampledField3D::from_fn(ext, |x| {
        let idx: Option<Vec<usize>> = (0..3)
            .map(|k| f.grid.axes[k].index_of(if k == axis { x[k] - shift } else { x[k] }))
            .collect();
        match idx {
            Some(i) => f.values[f.grid.flat([i[0], i[1], i[2]])],
            None => Octonion::ZERO,
        }
    });
    let lhs = woclct_forward(&shifted, w, params, &grids.omega, &grids.mu)?;

    let mut moved = *grids;
    moved.omega.axes[axis].origin -= shift * p.a();
    moved.mu.axes[axis].origin -= shift;
    let g = woclct_forward(f, w, params, &moved.omega, &moved.mu)?;
    let comps = component_transforms(f, w, params, &TrigPattern::all(), &moved)?;

    let bit = 1usize << axis;
    let n = grids.omega.len();
    let mut rhs = Vec::with_capacity(lhs.values.len());
    for k in 0..lhs.values.len() {
        let omega = grids.omega.point(k % n)[axis];
        let phi = shift * omega * p.c() - p.a() * p.c() * shift * shift / 2.0;
        let (s, c) = phi.sin_cos();
        let mut delta = [0.0; 8];
        for (i, d) in delta.iter_mut().enumerate() {
            let v = comps[i ^ bit].values[k].re();
            *d = if i & bit == 0 { v } else { -v };
        }
        rhs.push(g.values[k].scale(c) - Octonion(delta).scale(s));
    }
    Ok(PropertyResidual::new(
        format!("shift-axis{}", axis + 1),
        relative_l2(&lhs.values, &rhs),
        SHIFT_TOL,
    ))
}

/// Residuals of the OCLCT with `(0 1; −1 0)` on every axis against two
/// Fourier-transform forms, for real `f`:
///
/// * `corrected`: `−(2π)^{-3/2} OFT_sep(−ω1/2π, ω2/2π, −ω3/2π)·e7`, with one
///   coordinate per exponent;
/// * `as_printed`: `(2π)^{-3/2} OFT(ω1/2π, −ω2/2π, −ω3/2π)·e7`, with the
///   dot-product transform.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelationResiduals {
    pub corrected: f64,
    pub as_printed: f64,
}

pub fn oclct_oft_residuals(f: &SampledField3D, omega_grid: &Grid3D) -> Result<RelationResiduals> {
    require_real(f, "signal")?;
    let lhs = oclct_forward(f, &[LctParams::fourier(); 3], omega_grid)?;
    let e7 = Octonion::basis(7);
    let amp = (2.0 * PI).powf(-1.5);
    let scaled = |signs: [f64; 3]| -> [Vec<f64>; 3] {
        std::array::from_fn(|k| {
            omega_grid.axes[k]
                .coords()
                .iter()
                .map(|w| signs[k] * w / (2.0 * PI))
                .collect()
        })
    };
    let sep: Vec<Octonion> = oft_separable_at(f, &scaled([-1.0, 1.0, -1.0]))
        .into_iter()
        .map(|v| -(v * e7).scale(amp))
        .collect();
    let dot: Vec<Octonion> = oft_dot_at(f, &scaled([1.0, -1.0, -1.0]))
        .into_iter()
        .map(|v| (v * e7).scale(amp))
        .collect();
    Ok(RelationResiduals {
        corrected: relative_l2(&lhs.values, &sep),
        as_printed: relative_l2(&lhs.values, &dot),
    })
}

/// OCLCT against the Fourier transform, corrected form (see [`oclct_oft_residuals`]).
pub fn verify_oclct_oft_relation(
    f: &SampledField3D,
    omega_grid: &Grid3D,
) -> Result<PropertyResidual> {
    let r = oclct_oft_residuals(f, omega_grid)?;
    Ok(PropertyResidual::new(
        "oclct-oft-relation",
        r.corrected,
        RELATION_TOL,
    ))
}

/// `G(ηf + λg, Ψ)` against `ηG(f, Ψ) + λG(g, Ψ)` with constants on the left.
///
/// Exact for real constants. A non-real constant does not in general pass
/// through the left-associated kernel product: `(ηx)κ3` and `η(xκ3)` differ
/// in their `e4` half by `ηx` against `xη`.
#[allow(clippy::too_many_arguments)]
pub fn verify_linearity(
    f: &SampledField3D,
    g: &SampledField3D,
    eta: Octonion,
    lambda: Octonion,
    w: &WindowSpec,
    params: &ParamTriple,
    grids: &Grids,
) -> Result<PropertyResidual> {
    let mix = f.zip_with(g, |a, b| eta * a + lambda * b)?;
    let lhs = woclct_forward(&mix, w, params, &grids.omega, &grids.mu)?;
    let gf = woclct_forward(f, w, params, &grids.omega, &grids.mu)?;
    let gg = woclct_forward(g, w, params, &grids.omega, &grids.mu)?;
    let rhs: Vec<Octonion> = gf
        .values
        .iter()
        .zip(&gg.values)
        .map(|(&a, &b)| eta * a + lambda * b)
        .collect();
    Ok(PropertyResidual::new(
        "linearity",
        relative_l2(&lhs.values, &rhs),
        LINEARITY_TOL,
    ))
}
