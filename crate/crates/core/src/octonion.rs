//! Quaternion and octonion arithmetic.
//!
//! Octonions are built from pairs of quaternions by Cayley–Dickson doubling,
//! `z = γ + δ·e4`, with the product
//!
//! ```text
//! (γ1 + δ1 e4)(γ2 + δ2 e4) = (γ1 γ2 − conj(δ2) δ1) + (δ2 γ1 + δ1 conj(γ2)) e4
//! ```
//!
//! and the basis convention `e1 e2 = e3`, `e5 = e1 e4`, `e6 = e2 e4`,
//! `e7 = e3 e4`. The product is not associative, so every call site that
//! multiplies three or more octonions has to pick a bracketing explicitly.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// Real quaternion `w + x e1 + y e2 + z e3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(self.w * k, self.x * k, self.y * k, self.z * k)
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

/// One of the three imaginary units that carry the per-axis kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    E1,
    E2,
    E4,
}

impl Axis {
    /// Kernel unit used for spatial dimension `dim` (0, 1, 2).
    pub const BY_DIMENSION: [Axis; 3] = [Axis::E1, Axis::E2, Axis::E4];

    /// Basis index of the unit (1, 2 or 4).
    pub fn basis_index(self) -> usize {
        match self {
            Axis::E1 => 1,
            Axis::E2 => 2,
            Axis::E4 => 4,
        }
    }

    pub fn unit(self) -> Octonion {
        Octonion::basis(self.basis_index())
    }
}

/// Octonion `c0 + c1 e1 + ... + c7 e7`.
#[derive(Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Octonion(pub [f64; 8]);

impl Octonion {
    pub const ZERO: Self = Self([0.0; 8]);
    pub const ONE: Self = Self([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);

    pub const fn new(c: [f64; 8]) -> Self {
        Self(c)
    }

    pub fn real(re: f64) -> Self {
        let mut c = [0.0; 8];
        c[0] = re;
        Self(c)
    }

    /// Basis element `e_i`, `e_0 = 1`.
    ///
    /// # Panics
    ///
    /// Panics if `i > 7`.
    pub fn basis(i: usize) -> Self {
        assert!(i < 8, "octonion basis index {i} out of range");
        let mut c = [0.0; 8];
        c[i] = 1.0;
        Self(c)
    }

    /// `γ + δ e4`.
    pub fn from_halves(gamma: Quaternion, delta: Quaternion) -> Self {
        Self([
            gamma.w, gamma.x, gamma.y, gamma.z, delta.w, delta.x, delta.y, delta.z,
        ])
    }

    /// Splits into `(γ, δ)` with `self = γ + δ e4`.
    pub fn halves(self) -> (Quaternion, Quaternion) {
        let c = self.0;
        (
            Quaternion::new(c[0], c[1], c[2], c[3]),
            Quaternion::new(c[4], c[5], c[6], c[7]),
        )
    }

    pub fn re(self) -> f64 {
        self.0[0]
    }

    pub fn conj(self) -> Self {
        let c = self.0;
        Self([c[0], -c[1], -c[2], -c[3], -c[4], -c[5], -c[6], -c[7]])
    }

    pub fn norm_sqr(self) -> f64 {
        self.0.iter().map(|v| v * v).sum()
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, k: f64) -> Self {
        Self(self.0.map(|v| v * k))
    }

    /// True when all imaginary components are at most `tol` in magnitude.
    pub fn is_real(self, tol: f64) -> bool {
        self.0[1..].iter().all(|v| v.abs() <= tol)
    }

    /// `cos(angle) + axis·sin(angle)`.
    pub fn exp_axis(axis: Axis, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let mut out = [0.0; 8];
        out[0] = c;
        out[axis.basis_index()] = s;
        Self(out)
    }

    /// `self += k * other`.
    #[inline]
    pub fn add_scaled(&mut self, other: Self, k: f64) {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a += k * b;
        }
    }
}

impl fmt::Debug for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Octonion{:?}", self.0)
    }
}

impl Add for Octonion {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        self += o;
        self
    }
}

impl AddAssign for Octonion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        for (a, b) in self.0.iter_mut().zip(o.0) {
            *a += b;
        }
    }
}

impl Sub for Octonion {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        self -= o;
        self
    }
}

impl SubAssign for Octonion {
    fn sub_assign(&mut self, o: Self) {
        for (a, b) in self.0.iter_mut().zip(o.0) {
            *a -= b;
        }
    }
}

impl Neg for Octonion {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|v| -v))
    }
}

impl Mul<f64> for Octonion {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        self.scale(k)
    }
}

impl Mul<Octonion> for f64 {
    type Output = Octonion;
    fn mul(self, z: Octonion) -> Octonion {
        z.scale(self)
    }
}

impl Mul for Octonion {
    type Output = Self;

    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let (g1, d1) = self.halves();
        let (g2, d2) = rhs.halves();
        Self::from_halves(g1 * g2 - d2.conj() * d1, d2 * g1 + d1 * g2.conj())
    }
}

impl MulAssign for Octonion {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

/// Residual norms of the six quaternion/`e4` identities
///
/// 1. `e4 γ = conj(γ) e4`
/// 2. `e4 (γ e4) = −conj(γ)`
/// 3. `(γ e4) e4 = −γ`
/// 4. `γ (δ e4) = (δ γ) e4`
/// 5. `(γ e4) δ = (γ conj(δ)) e4`
/// 6. `(γ e4)(δ e4) = −conj(δ) γ`
///
/// All six vanish (up to rounding) under the Cayley–Dickson product used here.
pub fn split_identity_residuals(gamma: Quaternion, delta: Quaternion) -> [f64; 6] {
    let e4 = Octonion::basis(4);
    let g = Octonion::from_halves(gamma, Quaternion::ZERO);
    let gc = Octonion::from_halves(gamma.conj(), Quaternion::ZERO);
    let d = Octonion::from_halves(delta, Quaternion::ZERO);
    let dc = Octonion::from_halves(delta.conj(), Quaternion::ZERO);
    let q = |h: Quaternion| Octonion::from_halves(h, Quaternion::ZERO);

    [
        (e4 * g - gc * e4).norm(),
        (e4 * (g * e4) + gc).norm(),
        ((g * e4) * e4 + g).norm(),
        (g * (d * e4) - q(delta * gamma) * e4).norm(),
        ((g * e4) * d - q(gamma * delta.conj()) * e4).norm(),
        ((g * e4) * (d * e4) + dc * g).norm(),
    ]
}
