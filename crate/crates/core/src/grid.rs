//! Uniform grids and sampled octonion fields.
//!
//! All quadratures are midpoint sums: every sample carries the weight of its
//! cell, `Δ1 Δ2 Δ3`. Flat indices run axis 3 fastest.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::octonion::Octonion;

/// Below this reference norm, relative residuals fall back to absolute ones.
pub const RELATIVE_FLOOR: f64 = 1e-14;

/// One uniformly sampled axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridAxis {
    pub count: usize,
    pub spacing: f64,
    pub origin: f64,
}

impl GridAxis {
    pub fn new(count: usize, spacing: f64, origin: f64) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidGrid("axis needs at least one point".into()));
        }
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "spacing must be positive, got {spacing}"
            )));
        }
        if !origin.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "origin must be finite, got {origin}"
            )));
        }
        Ok(Self {
            count,
            spacing,
            origin,
        })
    }

    /// Cell-centred axis closed under negation: `origin = −spacing (count − 1) / 2`.
    pub fn symmetric(count: usize, spacing: f64) -> Result<Self> {
        Self::new(count, spacing, -spacing * (count as f64 - 1.0) / 2.0)
    }

    #[inline]
    pub fn coord(&self, i: usize) -> f64 {
        self.origin + self.spacing * i as f64
    }

    pub fn coords(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.coord(i)).collect()
    }

    /// Index of the grid point at `x`, within `1e-9 · spacing`.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let r = (x - self.origin) / self.spacing;
        let k = r.round();
        if (r - k).abs() > 1e-9 || k < 0.0 || k >= self.count as f64 {
            None
        } else {
            Some(k as usize)
        }
    }

    /// Whether `x` is a whole number of steps away from the grid points,
    /// returning that (possibly out-of-range) step offset.
    pub fn step_offset(&self, x: f64) -> Option<i64> {
        let r = (x - self.origin) / self.spacing;
        let k = r.round();
        ((r - k).abs() <= 1e-9).then_some(k as i64)
    }

    pub fn is_symmetric(&self) -> bool {
        let mirror = self.origin + self.coord(self.count - 1);
        mirror.abs() <= 1e-9 * self.spacing
    }

    pub fn extent(&self) -> f64 {
        self.spacing * self.count as f64
    }
}

/// Tensor-product grid of three [`GridAxis`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid3D {
    pub axes: [GridAxis; 3],
}

impl Grid3D {
    pub fn new(axes: [GridAxis; 3]) -> Self {
        Self { axes }
    }

    pub fn symmetric(counts: [usize; 3], spacings: [f64; 3]) -> Result<Self> {
        Ok(Self {
            axes: [
                GridAxis::symmetric(counts[0], spacings[0])?,
                GridAxis::symmetric(counts[1], spacings[1])?,
                GridAxis::symmetric(counts[2], spacings[2])?,
            ],
        })
    }

    /// Symmetric `n × n × n` grid with equal spacing.
    pub fn cube(n: usize, spacing: f64) -> Result<Self> {
        Self::symmetric([n; 3], [spacing; 3])
    }

    pub fn shape(&self) -> [usize; 3] {
        self.axes.map(|a| a.count)
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cell_volume(&self) -> f64 {
        self.axes.iter().map(|a| a.spacing).product()
    }

    #[inline]
    pub fn flat(&self, i: [usize; 3]) -> usize {
        (i[0] * self.axes[1].count + i[1]) * self.axes[2].count + i[2]
    }

    #[inline]
    pub fn unflat(&self, k: usize) -> [usize; 3] {
        let n2 = self.axes[1].count;
        let n3 = self.axes[2].count;
        [k / (n2 * n3), (k / n3) % n2, k % n3]
    }

    pub fn point(&self, k: usize) -> [f64; 3] {
        let i = self.unflat(k);
        [
            self.axes[0].coord(i[0]),
            self.axes[1].coord(i[1]),
            self.axes[2].coord(i[2]),
        ]
    }

    pub fn points(&self) -> impl Iterator<Item = [f64; 3]> + '_ {
        (0..self.len()).map(|k| self.point(k))
    }

    pub fn is_symmetric(&self) -> bool {
        self.axes.iter().all(GridAxis::is_symmetric)
    }

    pub fn require_symmetric(&self) -> Result<()> {
        match self.axes.iter().position(|a| !a.is_symmetric()) {
            Some(i) => Err(Error::AsymmetricGrid(i)),
            None => Ok(()),
        }
    }

    /// Flat index of the mirrored point `−x` on a symmetric grid.
    pub fn negated(&self, k: usize) -> usize {
        let i = self.unflat(k);
        self.flat([
            self.axes[0].count - 1 - i[0],
            self.axes[1].count - 1 - i[1],
            self.axes[2].count - 1 - i[2],
        ])
    }
}

/// Octonion samples on a [`Grid3D`].
#[derive(Clone, Debug, PartialEq)]
pub struct SampledField3D {
    pub grid: Grid3D,
    pub values: Vec<Octonion>,
}

impl SampledField3D {
    pub fn new(grid: Grid3D, values: Vec<Octonion>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid3D) -> Self {
        Self {
            values: vec![Octonion::ZERO; grid.len()],
            grid,
        }
    }

    pub fn from_fn(grid: Grid3D, mut f: impl FnMut([f64; 3]) -> Octonion) -> Self {
        let values = grid.points().map(&mut f).collect();
        Self { grid, values }
    }

    pub fn map(&self, f: impl Fn(Octonion) -> Octonion) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Pointwise combination on the same grid.
    pub fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Octonion, Octonion) -> Octonion,
    ) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch("fields live on different grids".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self {
            grid: self.grid,
            values,
        })
    }

    /// `√(Σ |f|² Δ³)`.
    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sqr().sqrt()
    }

    pub fn l2_norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.cell_volume()
    }

    /// Discrete `L^p` norm; `p = ∞` gives the max norm.
    pub fn lp_norm(&self, p: f64) -> f64 {
        lp_norm(&self.values, p, self.grid.cell_volume())
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.values.iter().all(|v| v.is_real(tol))
    }

    /// Component `k` of every sample.
    pub fn component(&self, k: usize) -> Vec<f64> {
        self.values.iter().map(|v| v.0[k]).collect()
    }

    /// Same samples scaled to unit L² norm.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.l2_norm();
        if n == 0.0 {
            return Err(Error::ZeroSignal);
        }
        Ok(self.map(|v| v.scale(1.0 / n)))
    }

    /// `Σ w(|x|) |f(x)|² Δ³`.
    pub fn weighted_energy(&self, weight: impl Fn(f64) -> f64) -> f64 {
        let dv = self.grid.cell_volume();
        self.grid
            .points()
            .zip(&self.values)
            .map(|(x, v)| weight(radius(x)) * v.norm_sqr())
            .sum::<f64>()
            * dv
    }
}

pub(crate) fn radius(x: [f64; 3]) -> f64 {
    (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
}

pub(crate) fn lp_norm(values: &[Octonion], p: f64, dv: f64) -> f64 {
    if p.is_infinite() {
        values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    } else {
        (values.iter().map(|v| v.norm().powf(p)).sum::<f64>() * dv).powf(1.0 / p)
    }
}

/// Relative L² distance `‖a − b‖ / ‖b‖`; absolute when `‖b‖ < 1e-14`.
pub fn relative_l2(a: &[Octonion], b: &[Octonion]) -> f64 {
    assert_eq!(a.len(), b.len(), "relative_l2 on different lengths");
    let diff: f64 = a
        .iter()
        .zip(b)
        .map(|(&x, &y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let refn: f64 = b.iter().map(|y| y.norm_sqr()).sum::<f64>().sqrt();
    if refn < RELATIVE_FLOOR {
        diff
    } else {
        diff / refn
    }
}

/// Signal window `Ψ`, sampled with the same spacing as the signal.
#[derive(Clone, Debug, PartialEq)]
pub struct WindowSpec {
    pub window: SampledField3D,
}

impl WindowSpec {
    pub fn new(window: SampledField3D) -> Result<Self> {
        if window.l2_norm_sqr() == 0.0 {
            return Err(Error::ZeroWindow);
        }
        Ok(Self { window })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.window.l2_norm_sqr()
    }

    /// Same window scaled to unit L² norm.
    pub fn normalized(&self) -> Self {
        Self {
            window: self.window.map(|v| v.scale(1.0 / self.window.l2_norm())),
        }
    }
}

/// Frequency and window-shift grids of a windowed transform.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grids {
    pub omega: Grid3D,
    pub mu: Grid3D,
}

/// Transform values over `(ω, μ)`, stored μ-outer:
/// `values[mu_index * omega_points + omega_index]`.
#[derive(Clone, Debug, PartialEq)]
pub struct WoclctResult {
    pub omega_grid: Grid3D,
    pub mu_grid: Grid3D,
    pub values: Vec<Octonion>,
}

impl WoclctResult {
    pub fn new(omega_grid: Grid3D, mu_grid: Grid3D, values: Vec<Octonion>) -> Result<Self> {
        if values.len() != omega_grid.len() * mu_grid.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} values for {} x {} points",
                values.len(),
                omega_grid.len(),
                mu_grid.len()
            )));
        }
        Ok(Self {
            omega_grid,
            mu_grid,
            values,
        })
    }

    pub fn zeros(omega_grid: Grid3D, mu_grid: Grid3D) -> Self {
        Self {
            values: vec![Octonion::ZERO; omega_grid.len() * mu_grid.len()],
            omega_grid,
            mu_grid,
        }
    }

    #[inline]
    pub fn at(&self, omega: usize, mu: usize) -> Octonion {
        self.values[mu * self.omega_grid.len() + omega]
    }

    /// All ω values for one μ point.
    pub fn mu_slice(&self, mu: usize) -> &[Octonion] {
        let n = self.omega_grid.len();
        &self.values[mu * n..(mu + 1) * n]
    }

    /// `Δω³ Δμ³`.
    pub fn cell_volume(&self) -> f64 {
        self.omega_grid.cell_volume() * self.mu_grid.cell_volume()
    }

    pub fn l2_norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.cell_volume()
    }

    pub fn lp_norm(&self, p: f64) -> f64 {
        lp_norm(&self.values, p, self.cell_volume())
    }

    /// `Σ w(|ω|) |G|² Δω³ Δμ³`.
    pub fn weighted_energy(&self, weight: impl Fn(f64) -> f64) -> f64 {
        let n = self.omega_grid.len();
        let w: Vec<f64> = self
            .omega_grid
            .points()
            .map(|x| weight(radius(x)))
            .collect();
        self.values
            .iter()
            .enumerate()
            .map(|(k, v)| w[k % n] * v.norm_sqr())
            .sum::<f64>()
            * self.cell_volume()
    }
}
