//! Per-axis LCT kernels.
//!
//! For a unimodular matrix `(a b; c d)` with `b != 0` the kernel on axis `e` is
//!
//! ```text
//! κ(t, ω) = (2π|b|)^{-1/2} exp(e·θ),   θ = a t²/(2b) − tω/b + d ω²/(2b) − π/2
//! ```
//!
//! and the inverse kernel flips the sign of `θ`. When `b = 0` the kernel is a
//! delta, so it is never sampled; [`degenerate_resample`] applies the scaling
//! and chirp it stands for.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridAxis;
use crate::octonion::{Axis, Octonion};

const UNIMODULAR_TOL: f64 = 1e-12;

/// Entries of one 2×2 real matrix with unit determinant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct LctParams {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

#[derive(Deserialize)]
struct RawParams {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl TryFrom<RawParams> for LctParams {
    type Error = Error;
    fn try_from(r: RawParams) -> Result<Self> {
        LctParams::new(r.a, r.b, r.c, r.d)
    }
}

impl LctParams {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !det.is_finite() || (det - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::NotUnimodular { det });
        }
        Ok(Self { a, b, c, d })
    }

    /// `(0 1; −1 0)`, the Fourier-type matrix.
    pub fn fourier() -> Self {
        Self {
            a: 0.0,
            b: 1.0,
            c: -1.0,
            d: 0.0,
        }
    }

    pub fn identity() -> Self {
        Self {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn is_degenerate(&self) -> bool {
        self.b == 0.0
    }

    /// The inverse matrix `(d −b; −c a)`.
    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `(2π|b|)^{-1/2}`.
    pub fn amplitude(&self) -> Result<f64> {
        self.require_nondegenerate()?;
        Ok(1.0 / (2.0 * PI * self.b.abs()).sqrt())
    }

    pub(crate) fn require_nondegenerate(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::DegenerateParams(
                "b = 0 has no sampled kernel".into(),
            ))
        } else {
            Ok(())
        }
    }

    /// Phase without the error check, for inner loops that validated once.
    #[inline]
    pub(crate) fn theta_unchecked(&self, t: f64, w: f64) -> f64 {
        (self.a * t * t - 2.0 * t * w + self.d * w * w) / (2.0 * self.b) - FRAC_PI_2
    }
}

/// Scalar kernel phase θ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelPhase {
    pub theta: f64,
}

pub fn kernel_phase(p: &LctParams, t: f64, w: f64) -> Result<KernelPhase> {
    p.require_nondegenerate()?;
    Ok(KernelPhase {
        theta: p.theta_unchecked(t, w),
    })
}

pub fn kernel_eval(p: &LctParams, axis: Axis, t: f64, w: f64) -> Result<Octonion> {
    let theta = kernel_phase(p, t, w)?.theta;
    Ok(Octonion::exp_axis(axis, theta).scale(p.amplitude()?))
}

pub fn kernel_inverse_eval(p: &LctParams, axis: Axis, t: f64, w: f64) -> Result<Octonion> {
    let theta = kernel_phase(p, t, w)?.theta;
    Ok(Octonion::exp_axis(axis, -theta).scale(p.amplitude()?))
}

/// Index map and chirp for a `b = 0` axis.
///
/// `out[o] = input[src[o]] · chirp[o]`, where the chirp already carries the
/// `√|d|` (forward) or `√|a|` (inverse) factor.
#[derive(Clone, Debug)]
pub(crate) struct Resampling {
    pub src: Vec<usize>,
    pub chirp: Vec<Octonion>,
}

/// Forward b = 0 rule: `out(ω) = f(dω) · √|d| exp(axis · (cd/2) ω²)`.
pub(crate) fn forward_resampling(
    p: &LctParams,
    axis: Axis,
    input: &GridAxis,
    output: &[f64],
) -> Result<Resampling> {
    if !p.is_degenerate() {
        return Err(Error::DegenerateParams("resampling requires b = 0".into()));
    }
    build_resampling(p.d, p.c * p.d / 2.0, axis, input, output)
}

/// Inverse b = 0 rule: `f(t) = F(at) · √|a| exp(−axis · (ca/2) t²)`.
pub(crate) fn inverse_resampling(
    p: &LctParams,
    axis: Axis,
    input: &GridAxis,
    output: &[f64],
) -> Result<Resampling> {
    if !p.is_degenerate() {
        return Err(Error::DegenerateParams("resampling requires b = 0".into()));
    }
    build_resampling(p.a, -p.c * p.a / 2.0, axis, input, output)
}

fn build_resampling(
    scale: f64,
    chirp_rate: f64,
    axis: Axis,
    input: &GridAxis,
    output: &[f64],
) -> Result<Resampling> {
    if scale == 0.0 {
        return Err(Error::DegenerateParams(
            "b = 0 with zero scale entry".into(),
        ));
    }
    let amp = scale.abs().sqrt();
    let mut src = Vec::with_capacity(output.len());
    let mut chirp = Vec::with_capacity(output.len());
    for &w in output {
        let x = scale * w;
        let i = input.index_of(x).ok_or_else(|| {
            Error::GridIncompatible(format!("resampled point {x} is not on the input grid"))
        })?;
        src.push(i);
        chirp.push(Octonion::exp_axis(axis, chirp_rate * w * w).scale(amp));
    }
    Ok(Resampling { src, chirp })
}

/// One sampled line of octonion values.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldSlice1D {
    pub axis: GridAxis,
    pub values: Vec<Octonion>,
}

/// Applies the `b = 0` forward rule along one line, producing values on `output`.
pub fn degenerate_resample(
    p: &LctParams,
    slice: &FieldSlice1D,
    axis: Axis,
    output: &GridAxis,
) -> Result<FieldSlice1D> {
    if slice.values.len() != slice.axis.count {
        return Err(Error::ShapeMismatch(format!(
            "{} values on a {}-point axis",
            slice.values.len(),
            slice.axis.count
        )));
    }
    let r = forward_resampling(p, axis, &slice.axis, &output.coords())?;
    let values = r
        .src
        .iter()
        .zip(&r.chirp)
        .map(|(&i, &k)| slice.values[i] * k)
        .collect();
    Ok(FieldSlice1D {
        axis: *output,
        values,
    })
}
