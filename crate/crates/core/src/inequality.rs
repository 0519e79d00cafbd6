//! Both sides of the uncertainty inequalities for the windowed transform,
//! evaluated with the same quadrature as the transforms themselves.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{radius, Grid3D, Grids, SampledField3D, WindowSpec, WoclctResult};
use crate::special::{digamma_fn, ln_gamma_fn};
use crate::transform::{woclct_forward, ParamTriple};

/// Relative slack applied to every inequality comparison.
pub const SLACK: f64 = 1e-9;
/// Step of the central difference used for `K₀′`.
pub const K0_STEP: f64 = 1e-5;
/// Required agreement between the two `K₀′` evaluations.
pub const K0_TOL: f64 = 1e-6;

fn m_beta_unchecked(beta: f64) -> f64 {
    let l = ln_gamma_fn((3.0 - beta) / 4.0).expect("beta < 3")
        - ln_gamma_fn((3.0 + beta) / 4.0).expect("beta > -3");
    (2.0 * l).exp()
}

fn require_beta(beta: f64) -> Result<()> {
    if (0.0..3.0).contains(&beta) {
        Ok(())
    } else {
        Err(Error::OutOfRange("beta", beta))
    }
}

/// `M_β = (Γ((3−β)/4)/Γ((3+β)/4))²` together with `E_β = M_β/|b1b2|^β`
/// and its β-derivative.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PittConstant {
    pub beta: f64,
    pub m_beta: f64,
    pub e_beta: f64,
    pub e_beta_prime: f64,
}

impl PittConstant {
    /// Constants for `|b1 b2| = b12`.
    pub fn with_scale(beta: f64, b12: f64) -> Result<Self> {
        require_beta(beta)?;
        if !(b12 > 0.0 && b12.is_finite()) {
            return Err(Error::OutOfRange("|b1 b2|", b12));
        }
        let m = m_beta_unchecked(beta);
        let m_prime = m * m_log_slope(beta)?;
        let s = b12.powf(-beta);
        Ok(Self {
            beta,
            m_beta: m,
            e_beta: m * s,
            e_beta_prime: (m_prime - b12.ln() * m) * s,
        })
    }
}

/// Constants with `|b1 b2| = 1`.
pub fn pitt_constant(beta: f64) -> Result<PittConstant> {
    PittConstant::with_scale(beta, 1.0)
}

/// `d ln M_β / dβ = −(ψ((3−β)/4) + ψ((3+β)/4))/2`.
fn m_log_slope(beta: f64) -> Result<f64> {
    Ok(-0.5 * (digamma_fn((3.0 - beta) / 4.0)? + digamma_fn((3.0 + beta) / 4.0)?))
}

/// `M′_β` in the form `(Γ₊Γ₋Γ′₋ + Γ₋²Γ′₊)/Γ₊³`, with `Γ±` at `(3±β)/4`.
/// At β = 0 this is `2ψ(3/4)`, not the slope of `M_β` (`−ψ(3/4)`).
pub fn m_prime_as_printed(beta: f64) -> Result<f64> {
    require_beta(beta)?;
    let (xm, xp) = ((3.0 - beta) / 4.0, (3.0 + beta) / 4.0);
    let (gm, gp) = (crate::special::gamma_fn(xm)?, crate::special::gamma_fn(xp)?);
    let (dm, dp) = (gm * digamma_fn(xm)?, gp * digamma_fn(xp)?);
    Ok((gp * gm * dm + gm * gm * dp) / gp.powi(3))
}

/// `K₀′ = d/dβ (−M_β/|b1b2|^β)` at β = 0, analytic and by central difference.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct K0Prime {
    pub analytic: f64,
    pub finite_difference: f64,
}

impl K0Prime {
    pub fn new(b12: f64) -> Result<Self> {
        if !(b12 > 0.0 && b12.is_finite()) {
            return Err(Error::OutOfRange("|b1 b2|", b12));
        }
        let analytic = digamma_fn(0.75)? + b12.ln();
        let g = |beta: f64| -m_beta_unchecked(beta) * b12.powf(-beta);
        let finite_difference = (g(K0_STEP) - g(-K0_STEP)) / (2.0 * K0_STEP);
        Ok(Self {
            analytic,
            finite_difference,
        })
    }

    /// The analytic value once both evaluations agree.
    pub fn checked(self) -> Result<f64> {
        if (self.analytic - self.finite_difference).abs() <= K0_TOL {
            Ok(self.analytic)
        } else {
            Err(Error::K0Mismatch {
                analytic: self.analytic,
                finite_difference: self.finite_difference,
            })
        }
    }
}

fn holds(lhs: f64, rhs: f64, direction: Direction, slack: f64) -> bool {
    let slack = slack * rhs.abs();
    match direction {
        Direction::AtMost => lhs <= rhs + slack,
        Direction::AtLeast => lhs >= rhs - slack,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `lhs ≤ rhs`
    AtMost,
    /// `lhs ≥ rhs`
    AtLeast,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs/rhs`; absent when `rhs` is zero.
    pub ratio: Option<f64>,
    pub direction: Direction,
    pub satisfied: bool,
    /// Intermediate constants and measured quantities.
    pub details: BTreeMap<String, f64>,
    pub signal: Option<String>,
    pub window: Option<String>,
    pub params: ParamTriple,
}

impl InequalityReport {
    fn new(name: String, lhs: f64, rhs: f64, direction: Direction, params: ParamTriple) -> Self {
        let ratio = (rhs != 0.0).then(|| lhs / rhs);
        Self {
            name,
            lhs,
            rhs,
            ratio,
            direction,
            satisfied: holds(lhs, rhs, direction, SLACK),
            details: BTreeMap::new(),
            signal: None,
            window: None,
            params,
        }
    }

    /// Re-decide `satisfied` with a different relative slack.
    pub fn with_slack(mut self, slack: f64) -> Self {
        self.satisfied = holds(self.lhs, self.rhs, self.direction, slack);
        self
    }

    fn detail(mut self, key: &str, value: f64) -> Self {
        self.details.insert(key.into(), value);
        self
    }

    pub fn labelled(mut self, signal: impl Into<String>, window: impl Into<String>) -> Self {
        self.signal = Some(signal.into());
        self.window = Some(window.into());
        self
    }
}

/// Set of grid points, used as the support of an ε-concentration.
#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    pub grid: Grid3D,
    pub mask: Vec<bool>,
}

impl Region {
    pub fn from_fn(grid: Grid3D, inside: impl Fn([f64; 3]) -> bool) -> Self {
        Self {
            mask: grid.points().map(inside).collect(),
            grid,
        }
    }

    pub fn full(grid: Grid3D) -> Self {
        Self {
            grid,
            mask: vec![true; grid.len()],
        }
    }

    pub fn empty(grid: Grid3D) -> Self {
        Self {
            grid,
            mask: vec![false; grid.len()],
        }
    }

    /// Points with `|x_k − center_k| ≤ half_width_k` on every axis.
    pub fn boxed(grid: Grid3D, center: [f64; 3], half_width: [f64; 3]) -> Self {
        Self::from_fn(grid, |x| {
            (0..3).all(|k| (x[k] - center[k]).abs() <= half_width[k])
        })
    }

    pub fn count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// Point count times cell volume.
    pub fn measure(&self) -> f64 {
        self.count() as f64 * self.grid.cell_volume()
    }

    pub fn is_subset(&self, other: &Region) -> bool {
        self.grid == other.grid && self.mask.iter().zip(&other.mask).all(|(a, b)| !a || *b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormKind {
    L1,
    L2,
}

/// Sampled data whose mass outside a region can be measured.
pub trait Concentration {
    /// Grid the region must live on, and for each value the index of its
    /// point in that grid.
    fn region_grid(&self) -> Grid3D;
    fn point_of(&self, k: usize) -> usize;
    fn magnitudes(&self) -> Vec<f64>;
}

impl Concentration for SampledField3D {
    fn region_grid(&self) -> Grid3D {
        self.grid
    }
    fn point_of(&self, k: usize) -> usize {
        k
    }
    fn magnitudes(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm()).collect()
    }
}

/// Regions on a transform select ω points and apply to every μ.
impl Concentration for WoclctResult {
    fn region_grid(&self) -> Grid3D {
        self.omega_grid
    }
    fn point_of(&self, k: usize) -> usize {
        k % self.omega_grid.len()
    }
    fn magnitudes(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm()).collect()
    }
}

/// `‖f − fχ‖/‖f‖` in the chosen norm; the common cell volume cancels.
pub fn concentration<F: Concentration>(f: &F, region: &Region, norm: NormKind) -> Result<f64> {
    if region.grid != f.region_grid() {
        return Err(Error::GridMismatch(
            "region grid differs from the data grid".into(),
        ));
    }
    let pow = |m: f64| match norm {
        NormKind::L1 => m,
        NormKind::L2 => m * m,
    };
    let (mut total, mut outside) = (0.0, 0.0);
    for (k, m) in f.magnitudes().into_iter().enumerate() {
        total += pow(m);
        if !region.mask[f.point_of(k)] {
            outside += pow(m);
        }
    }
    if total == 0.0 {
        return Err(Error::ZeroSignal);
    }
    Ok(match norm {
        NormKind::L1 => outside / total,
        NormKind::L2 => (outside / total).sqrt(),
    })
}

fn b_abs(params: &ParamTriple) -> [f64; 3] {
    std::array::from_fn(|k| params[k].b().abs())
}

/// A signal, window and parameter triple with the transform evaluated once,
/// so several inequalities can share it.
#[derive(Clone, Debug)]
pub struct Evaluated<'a> {
    pub f: &'a SampledField3D,
    pub w: &'a WindowSpec,
    pub params: ParamTriple,
    pub g: WoclctResult,
}

impl<'a> Evaluated<'a> {
    pub fn new(
        f: &'a SampledField3D,
        w: &'a WindowSpec,
        params: &ParamTriple,
        grids: &Grids,
    ) -> Result<Self> {
        let g = woclct_forward(f, w, params, &grids.omega, &grids.mu)?;
        Ok(Self {
            f,
            w,
            params: *params,
            g,
        })
    }

    /// `Σ|ω|^{−β}|G|² ≤ M_β‖Ψ‖²/(2π|b3||b1b2|^β) · Σ|t|^β|f|²`.
    /// The point ω = 0, if present, is dropped for β > 0.
    pub fn pitt(&self, beta: f64) -> Result<InequalityReport> {
        let [b1, b2, b3] = b_abs(&self.params);
        let c = PittConstant::with_scale(beta, b1 * b2)?;
        let lhs = self.g.weighted_energy(|r| {
            if beta == 0.0 {
                1.0
            } else if r == 0.0 {
                0.0
            } else {
                r.powf(-beta)
            }
        });
        let moment = self
            .f
            .weighted_energy(|r| if beta == 0.0 { 1.0 } else { r.powf(beta) });
        let rhs = c.e_beta * self.w.norm_sqr() / (2.0 * PI * b3) * moment;
        Ok(InequalityReport::new(
            format!("pitt(beta={beta})"),
            lhs,
            rhs,
            Direction::AtMost,
            self.params,
        )
        .detail("beta", beta)
        .detail("m_beta", c.m_beta)
        .detail("e_beta", c.e_beta))
    }

    /// Pitt's bound with Beckner's sharp constant for the unitary Fourier
    /// transform, carried through the per-axis scaling `ω_k = b_k ξ_k`:
    /// `Σ|ω|^{−β}|G|² ≤ 2^{−β} M_β ‖Ψ‖² / min|b_k|^β · Σ|t|^β|f|²`.
    pub fn pitt_sharp(&self, beta: f64) -> Result<InequalityReport> {
        let b_min = b_abs(&self.params)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        let c = PittConstant::with_scale(beta, 1.0)?;
        let lhs = self.g.weighted_energy(|r| {
            if beta == 0.0 {
                1.0
            } else if r == 0.0 {
                0.0
            } else {
                r.powf(-beta)
            }
        });
        let moment = self
            .f
            .weighted_energy(|r| if beta == 0.0 { 1.0 } else { r.powf(beta) });
        let rhs = c.m_beta * 2f64.powf(-beta) * b_min.powf(-beta) * self.w.norm_sqr() * moment;
        Ok(InequalityReport::new(
            format!("pitt-sharp(beta={beta})"),
            lhs,
            rhs,
            Direction::AtMost,
            self.params,
        )
        .detail("beta", beta)
        .detail("m_beta", c.m_beta)
        .detail("b_min", b_min))
    }

    /// `2π|b3| Σ ln|ω||G|² + ‖Ψ‖² Σ ln|t||f|² ≥ K₀′‖Ψ‖²‖f‖²`.
    pub fn log_uncertainty(&self) -> Result<InequalityReport> {
        let [b1, b2, b3] = b_abs(&self.params);
        let k0 = K0Prime::new(b1 * b2)?;
        let k = k0.checked()?;
        let ln0 = |r: f64| if r == 0.0 { 0.0 } else { r.ln() };
        let psi2 = self.w.norm_sqr();
        let lhs = 2.0 * PI * b3 * self.g.weighted_energy(ln0) + psi2 * self.f.weighted_energy(ln0);
        let rhs = k * psi2 * self.f.l2_norm_sqr();
        Ok(InequalityReport::new(
            "logarithmic".into(),
            lhs,
            rhs,
            Direction::AtLeast,
            self.params,
        )
        .detail("k0_analytic", k0.analytic)
        .detail("k0_finite_difference", k0.finite_difference))
    }

    /// `‖G‖_q ≤ A‖f‖₁‖Ψ‖_p` with `q = p/(p−1)`, `q = ∞` at `p = 1`.
    pub fn young_hausdorff(&self, p: f64) -> Result<InequalityReport> {
        if !(1.0..2.0).contains(&p) {
            return Err(Error::OutOfRange("p", p));
        }
        let a = young_hausdorff_constant(&self.params, p);
        let q = if p == 1.0 {
            f64::INFINITY
        } else {
            p / (p - 1.0)
        };
        let lhs = self.g.lp_norm(q);
        let rhs = a * self.f.lp_norm(1.0) * self.w.window.lp_norm(p);
        Ok(InequalityReport::new(
            format!("young-hausdorff(p={p})"),
            lhs,
            rhs,
            Direction::AtMost,
            self.params,
        )
        .detail("p", p)
        .detail("q", q)
        .detail("a", a))
    }

    /// `(Σ|t|²|f|²)(Σ|ω|²|G|²) ≥ (2/(π|b3|)) b1²b2² ‖f‖²`, with the window
    /// rescaled to unit norm first.
    pub fn heisenberg(&self) -> Result<InequalityReport> {
        let [b1, b2, b3] = b_abs(&self.params);
        let scale = 1.0 / self.w.norm_sqr();
        let lhs = self.f.weighted_energy(|r| r * r) * self.g.weighted_energy(|r| r * r) * scale;
        let rhs = 2.0 / (PI * b3) * (b1 * b2).powi(2) * self.f.l2_norm_sqr();
        Ok(InequalityReport::new(
            "heisenberg".into(),
            lhs,
            rhs,
            Direction::AtLeast,
            self.params,
        )
        .detail("window_norm_sqr", self.w.norm_sqr()))
    }

    /// `Σ|G|² ≤ |σ||τ|‖Ψ‖²‖f‖² / (8π³|b1b2b3|[(1−ε_σ)(1−ε_τ)]²)`, with
    /// `ε_σ` the L¹ concentration of `f` to `σ` and `ε_τ` the L²
    /// concentration of `G` to `τ` (a set of ω points, all μ).
    pub fn donoho_stark(&self, sigma: &Region, tau: &Region) -> Result<InequalityReport> {
        let [b1, b2, b3] = b_abs(&self.params);
        let eps_sigma = concentration(self.f, sigma, NormKind::L1)?;
        let eps_tau = concentration(&self.g, tau, NormKind::L2)?;
        if eps_sigma >= 1.0 || eps_tau >= 1.0 {
            return Err(Error::DegenerateConcentration { eps_sigma, eps_tau });
        }
        let lhs = self.g.l2_norm_sqr();
        let den = 8.0 * PI.powi(3) * b1 * b2 * b3 * ((1.0 - eps_sigma) * (1.0 - eps_tau)).powi(2);
        let rhs = sigma.measure() * tau.measure() * self.w.norm_sqr() * self.f.l2_norm_sqr() / den;
        Ok(InequalityReport::new(
            "donoho-stark".into(),
            lhs,
            rhs,
            Direction::AtMost,
            self.params,
        )
        .detail("eps_sigma", eps_sigma)
        .detail("eps_tau", eps_tau)
        .detail("sigma_measure", sigma.measure())
        .detail("tau_measure", tau.measure()))
    }
}

/// `A = (2π)^{1/q−1/p−1/2}|b3|^{−1/2}|b1b2|^{1/q−1/2} p^{1/p}/q^{1/q}`.
pub fn young_hausdorff_constant(params: &ParamTriple, p: f64) -> f64 {
    let [b1, b2, b3] = b_abs(params);
    let inv_q = 1.0 - 1.0 / p;
    let q_term = if inv_q == 0.0 {
        1.0
    } else {
        (1.0 / inv_q).powf(inv_q)
    };
    (2.0 * PI).powf(inv_q - 1.0 / p - 0.5)
        * b3.powf(-0.5)
        * (b1 * b2).powf(inv_q - 0.5)
        * p.powf(1.0 / p)
        / q_term
}

pub fn check_pitt(
    f: &SampledField3D,
    w: &WindowSpec,
    params: &ParamTriple,
    grids: &Grids,
    beta: f64,
) -> Result<InequalityReport> {
    require_beta(beta)?;
    Evaluated::new(f, w, params, grids)?.pitt(beta)
}

pub fn check_log_uncertainty(
    f: &SampledField3D,
    w: &WindowSpec,
    params: &ParamTriple,
    grids: &Grids,
) -> Result<InequalityReport> {
    Evaluated::new(f, w, params, grids)?.log_uncertainty()
}

pub fn check_young_hausdorff(
    f: &SampledField3D,
    w: &WindowSpec,
    params: &ParamTriple,
    grids: &Grids,
    p: f64,
) -> Result<InequalityReport> {
    if !(1.0..2.0).contains(&p) {
        return Err(Error::OutOfRange("p", p));
    }
    Evaluated::new(f, w, params, grids)?.young_hausdorff(p)
}

pub fn check_heisenberg(
    f: &SampledField3D,
    w: &WindowSpec,
    params: &ParamTriple,
    grids: &Grids,
) -> Result<InequalityReport> {
    Evaluated::new(f, w, params, grids)?.heisenberg()
}

pub fn check_donoho_stark(
    f: &SampledField3D,
    w: &WindowSpec,
    params: &ParamTriple,
    grids: &Grids,
    sigma: &Region,
    tau: &Region,
) -> Result<InequalityReport> {
    Evaluated::new(f, w, params, grids)?.donoho_stark(sigma, tau)
}

/// Largest `|x|` on a grid, handy for sizing regions.
pub fn max_radius(grid: &Grid3D) -> f64 {
    grid.points().map(radius).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::LctParams;
    use crate::octonion::Octonion;

    fn gaussian(grid: Grid3D, s: f64) -> SampledField3D {
        SampledField3D::from_fn(grid, |x| {
            Octonion::real((-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / (2.0 * s * s)).exp())
        })
    }

    fn setup() -> (SampledField3D, WindowSpec, Grids) {
        let t = Grid3D::cube(8, 0.75).unwrap();
        let f = gaussian(t, 1.0).normalized().unwrap();
        let w = WindowSpec::new(gaussian(Grid3D::cube(17, 0.75).unwrap(), 1.0))
            .unwrap()
            .normalized();
        let grids = Grids {
            omega: Grid3D::cube(8, 0.9).unwrap(),
            mu: Grid3D::cube(8, 0.75).unwrap(),
        };
        (f, w, grids)
    }

    #[test]
    fn m_beta_closed_forms() {
        assert_eq!(pitt_constant(0.0).unwrap().m_beta, 1.0);
        assert!((pitt_constant(1.0).unwrap().m_beta - PI).abs() < 1e-12);
        assert!((pitt_constant(2.0).unwrap().m_beta - 16.0).abs() < 1e-11);
    }

    #[test]
    fn m_beta_is_increasing() {
        let ms: Vec<f64> = (0..20)
            .map(|i| pitt_constant(i as f64 * 2.95 / 19.0).unwrap().m_beta)
            .collect();
        assert!(ms.windows(2).all(|w| w[0] < w[1]), "{ms:?}");
    }

    #[test]
    fn beta_out_of_range() {
        for beta in [-0.1, 3.0, 4.0, f64::NAN] {
            assert!(matches!(
                pitt_constant(beta),
                Err(Error::OutOfRange("beta", _))
            ));
        }
    }

    #[test]
    fn e_beta_prime_matches_central_difference() {
        for b12 in [0.25, 1.0, 4.0] {
            for beta in [0.3, 1.0, 2.2] {
                let h = 1e-5;
                let e = |x| PittConstant::with_scale(x, b12).unwrap().e_beta;
                let fd = (e(beta + h) - e(beta - h)) / (2.0 * h);
                let c = PittConstant::with_scale(beta, b12).unwrap();
                assert!((c.e_beta_prime - fd).abs() < 1e-7 * fd.abs().max(1.0));
            }
        }
    }

    #[test]
    fn k0_prime_two_ways() {
        for b12 in [0.25, 1.0, 4.0] {
            let k = K0Prime::new(b12).unwrap();
            assert!((k.analytic - k.finite_difference).abs() <= K0_TOL, "{k:?}");
        }
        let k = K0Prime::new(1.0).unwrap().checked().unwrap();
        assert!((k + 1.085_860_879_786_472_5).abs() < 1e-12);
    }

    #[test]
    fn printed_m_prime_is_twice_digamma() {
        let printed = m_prime_as_printed(0.0).unwrap();
        assert!((printed - 2.0 * digamma_fn(0.75).unwrap()).abs() < 1e-12);
        let slope = m_log_slope(0.0).unwrap();
        assert!((printed - slope).abs() > 3.0);
    }

    #[test]
    fn young_hausdorff_constant_at_p1() {
        let p = [
            LctParams::new(1.0, 0.5, -1.0, 0.5).unwrap(),
            LctParams::new(0.5, 2.0, -0.375, 0.5).unwrap(),
            LctParams::fourier(),
        ];
        let a = young_hausdorff_constant(&p, 1.0);
        assert!((a - (2.0 * PI).powf(-1.5)).abs() < 1e-15);
        assert!(young_hausdorff_constant(&p, 1.5).is_finite());
    }

    #[test]
    fn zero_signal_is_satisfied_everywhere() {
        let (f, w, grids) = setup();
        let z = SampledField3D::zeros(f.grid);
        let p = [LctParams::fourier(); 3];
        let e = Evaluated::new(&z, &w, &p, &grids).unwrap();
        for r in [
            e.pitt(0.0).unwrap(),
            e.pitt(1.5).unwrap(),
            e.log_uncertainty().unwrap(),
            e.heisenberg().unwrap(),
        ] {
            assert!(
                r.satisfied && r.lhs == 0.0 && r.rhs == 0.0 && r.ratio.is_none(),
                "{r:?}"
            );
        }
        assert!(e.young_hausdorff(1.25).unwrap().satisfied);
        let full = Region::full(z.grid);
        assert!(matches!(
            concentration(&z, &full, NormKind::L1),
            Err(Error::ZeroSignal)
        ));
    }

    #[test]
    fn pitt_at_zero_is_plancherel_over_2pi_b3() {
        let (f, w, grids) = setup();
        let p = [LctParams::fourier(); 3];
        let r = check_pitt(&f, &w, &p, &grids, 0.0).unwrap();
        // Σ|G|² ≈ ‖f‖²‖Ψ‖² = 1, rhs = 1/(2π)
        assert!((r.lhs - 1.0).abs() < 2e-2, "{r:?}");
        assert!((r.rhs - 1.0 / (2.0 * PI)).abs() < 1e-9);
        assert!(!r.satisfied);
        for beta in [0.0, 0.5, 1.0, 2.0] {
            let r = Evaluated::new(&f, &w, &p, &grids)
                .unwrap()
                .pitt_sharp(beta)
                .unwrap();
            assert!(r.ratio.unwrap() < 1.0, "{r:?}");
        }
    }

    #[test]
    fn heisenberg_is_not_scale_invariant() {
        let (f, w, grids) = setup();
        let p = [LctParams::fourier(); 3];
        assert!(check_heisenberg(&f, &w, &p, &grids).unwrap().satisfied);
        let small = f.map(|v| v.scale(1e-3));
        let r = check_heisenberg(&small, &w, &p, &grids).unwrap();
        assert!(!r.satisfied, "{r:?}");
    }

    #[test]
    fn regions_and_concentration() {
        let (f, ..) = setup();
        let g = f.grid;
        let full = Region::full(g);
        let empty = Region::empty(g);
        assert_eq!(concentration(&f, &full, NormKind::L2).unwrap(), 0.0);
        assert_eq!(concentration(&f, &empty, NormKind::L1).unwrap(), 1.0);
        let small = Region::boxed(g, [0.0; 3], [1.0; 3]);
        let large = Region::boxed(g, [0.0; 3], [2.0; 3]);
        assert!(small.is_subset(&large));
        assert_eq!(small.count(), 8);
        assert!((small.measure() - 8.0 * 0.75f64.powi(3)).abs() < 1e-15);
        for norm in [NormKind::L1, NormKind::L2] {
            assert!(
                concentration(&f, &small, norm).unwrap()
                    >= concentration(&f, &large, norm).unwrap()
            );
        }
        let other = Region::full(Grid3D::cube(4, 1.0).unwrap());
        assert!(matches!(
            concentration(&f, &other, NormKind::L1),
            Err(Error::GridMismatch(_))
        ));
    }

    #[test]
    fn gaussian_tail_outside_boxes() {
        let t = Grid3D::cube(64, 0.25).unwrap();
        let f = gaussian(t, 1.0);
        // |f|² = e^{−|x|²}, so the squared L² fraction inside ±a per axis is erf(a)³
        let oracle = (1.0 - statrs::function::erf::erf(3.0).powi(3)).sqrt();
        let e = concentration(&f, &Region::boxed(t, [0.0; 3], [3.0; 3]), NormKind::L2).unwrap();
        assert!((e - oracle).abs() < 0.05 * oracle, "{e} vs {oracle}");
        let e6 = concentration(&f, &Region::boxed(t, [0.0; 3], [6.0; 3]), NormKind::L2).unwrap();
        assert!(e6 < 1e-6, "{e6}");
    }

    #[test]
    fn donoho_stark_reports_and_scales_with_tau() {
        let (f, w, grids) = setup();
        let p = [LctParams::fourier(); 3];
        let e = Evaluated::new(&f, &w, &p, &grids).unwrap();
        let sigma = Region::full(f.grid);
        let tau = Region::boxed(grids.omega, [0.0; 3], [3.0; 3]);
        let r = e.donoho_stark(&sigma, &tau).unwrap();
        assert!(r.ratio.unwrap().is_finite());
        let tau_small = Region::boxed(grids.omega, [0.0; 3], [1.0; 3]);
        let r2 = e.donoho_stark(&sigma, &tau_small).unwrap();
        assert!(r2.details["eps_tau"] > r.details["eps_tau"]);
        let empty = Region::empty(f.grid);
        assert!(matches!(
            e.donoho_stark(&empty, &tau),
            Err(Error::DegenerateConcentration { .. })
        ));
    }
}
