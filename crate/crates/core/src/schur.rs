//! Discrete (Schur) stability of real monic cubics.
//!
//! A monic cubic `P(l) = l^3 + a2 l^2 + a1 l + a0` is *stable* when all
//! three roots lie strictly inside the complex unit circle. The criterion
//! implemented here decides stability from the coefficients alone:
//!
//! `|a0| < 1  and  max{-P(1), P(-1)} < 0 < alpha_hat`,
//!
//! with `alpha_hat = -a0^2 + a2 a0 - a1 + 1`. For the one-parameter family
//! `P_beta(l) = l^3 + a2 l^2 + (a1 + beta) l + a0` the set of stable `beta`
//! is a single open interval whose endpoints are bifurcation values: a root
//! crosses at +1 or -1 at the lower endpoint, and a complex-conjugate pair
//! crosses the unit circle at the upper endpoint.
//!
//! [`cubic_roots`] is an independent oracle (companion-matrix eigenvalues)
//! used to cross-validate the criterion; it performs no coefficient
//! inequality tests, and the criterion performs no root finding.

use nalgebra::{Matrix3, RealField};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::num::Real;

/// Coefficients of the monic cubic `l^3 + a2 l^2 + a1 l + a0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonicCubic<T> {
    pub a2: T,
    pub a1: T,
    pub a0: T,
}

impl<T: Real> MonicCubic<T> {
    #[inline]
    pub fn new(a2: T, a1: T, a0: T) -> Self {
        Self { a2, a1, a0 }
    }

    /// Horner evaluation.
    #[inline]
    pub fn eval(&self, l: T) -> T {
        ((l + self.a2) * l + self.a1) * l + self.a0
    }

    #[inline]
    pub fn eval_complex(&self, z: Complex<T>) -> Complex<T> {
        ((z + self.a2) * z + self.a1) * z + self.a0
    }

    /// Derivative `3 l^2 + 2 a2 l + a1`.
    #[inline]
    pub fn eval_deriv(&self, l: T) -> T {
        (T::of(3) * l + T::of(2) * self.a2) * l + self.a1
    }

    /// `alpha_hat = -a0^2 + a2 a0 - a1 + 1`; positive exactly when no
    /// complex pair with unit product obstructs stability.
    #[inline]
    pub fn alpha_hat(&self) -> T {
        -self.a0 * self.a0 + self.a2 * self.a0 - self.a1 + T::one()
    }

    /// Coefficient criterion for all roots strictly inside the unit circle.
    /// No root finding is performed.
    pub fn is_stable(&self) -> bool {
        let one = T::one();
        if self.a0.abs() >= one {
            return false;
        }
        let p_plus = self.eval(one);
        let p_minus = self.eval(-one);
        (-p_plus).max(p_minus) < T::zero() && T::zero() < self.alpha_hat()
    }

    /// Companion matrix whose eigenvalues are the roots.
    pub fn companion(&self) -> Matrix3<T> {
        let z = T::zero();
        let one = T::one();
        Matrix3::new(z, z, -self.a0, one, z, -self.a1, z, one, -self.a2)
    }
}

/// Open interval `(lo, hi)` of stable `beta` for the family
/// `l^3 + a2 l^2 + (a1 + beta) l + a0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StableInterval<T> {
    pub lo: T,
    pub hi: T,
}

/// How a family member loses stability at a bifurcation value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BifurcationKind {
    /// A real root crosses through +1.
    RootAtPlusOne,
    /// A real root crosses through -1.
    RootAtMinusOne,
    /// A complex-conjugate pair crosses the unit circle away from +-1.
    UnitComplexPair,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BifurcationValue<T> {
    pub beta: T,
    pub kind: BifurcationKind,
}

/// Stable interval of the family `P_beta(l) = l^3 + a2 l^2 + (a1+beta) l + a0`
/// where `q` is the `beta = 0` member. Exists if and only if `|a0| < 1` and
/// `|a2 - a0| < 2`; it is then `(max{-P_0(1), P_0(-1)}, alpha_hat_0)`.
pub fn stable_interval<T: Real>(q: &MonicCubic<T>) -> Option<StableInterval<T>> {
    let one = T::one();
    if q.a0.abs() >= one || (q.a2 - q.a0).abs() >= T::of(2) {
        return None;
    }
    let lo = (-q.eval(one)).max(q.eval(-one));
    let hi = q.alpha_hat();
    // Nonemptiness follows from the existence condition:
    // hi + P0(1) = (a0+1)(2+a2-a0) > 0 and hi - P0(-1) = (1-a0)(2-a2+a0) > 0.
    debug_assert!(lo < hi);
    Some(StableInterval { lo, hi })
}

/// The three bifurcation values of the family `P_beta`, with the root
/// behaviour each one produces. At `beta = -P_0(1)` the member has a root
/// at +1, at `beta = P_0(-1)` a root at -1, and at `beta = alpha_hat_0`
/// (when it exceeds the other two and `|a0| < 1`) a complex-conjugate pair
/// on the unit circle away from +-1.
pub fn bifurcation_values<T: Real>(q: &MonicCubic<T>) -> [BifurcationValue<T>; 3] {
    let one = T::one();
    [
        BifurcationValue {
            beta: -q.eval(one),
            kind: BifurcationKind::RootAtPlusOne,
        },
        BifurcationValue {
            beta: q.eval(-one),
            kind: BifurcationKind::RootAtMinusOne,
        },
        BifurcationValue {
            beta: q.alpha_hat(),
            kind: BifurcationKind::UnitComplexPair,
        },
    ]
}

/// Shift a family member: the cubic at parameter `beta`.
#[inline]
pub fn family_member<T: Real>(q: &MonicCubic<T>, beta: T) -> MonicCubic<T> {
    MonicCubic::new(q.a2, q.a1 + beta, q.a0)
}

/// Root oracle: eigenvalues of the companion matrix. Independent of the
/// coefficient criterion; used to cross-validate it.
///
/// The QR iteration runs with a bounded iteration count; on the rare
/// degenerate inputs where it stalls (e.g. the nilpotent companion of
/// `l^3`), the closed-form solver takes over.
pub fn cubic_roots<T: Real + RealField>(q: &MonicCubic<T>) -> [Complex<T>; 3] {
    let schur = nalgebra::linalg::Schur::try_new(
        q.companion(),
        <T as nalgebra::ComplexField>::RealField::default_epsilon(),
        500,
    );
    match schur {
        Some(s) => {
            let ev = s.complex_eigenvalues();
            [ev[0], ev[1], ev[2]]
        }
        None => cubic_roots_closed_form(q),
    }
}

/// Largest root modulus.
pub fn max_root_modulus<T: Real>(roots: &[Complex<T>; 3]) -> T {
    roots
        .iter()
        .map(|r| r.norm_sqr().sqrt())
        .fold(T::zero(), |m, v| m.max(v))
}

/// Closed-form roots (Cardano / trigonometric branches). Retained as a
/// secondary check of the companion-matrix oracle; the eigenvalue route is
/// preferred near multiple roots.
pub fn cubic_roots_closed_form<T: Real>(q: &MonicCubic<T>) -> [Complex<T>; 3] {
    let zero = T::zero();
    let one = T::one();
    let two = T::of(2);
    let three = T::of(3);
    let shift = q.a2 / three;
    // Depressed cubic t^3 + p t + r with l = t - shift.
    let p = q.a1 - q.a2 * q.a2 / three;
    let r = two * q.a2 * q.a2 * q.a2 / T::of(27) - q.a2 * q.a1 / three + q.a0;
    let half_r = r / two;
    let disc = half_r * half_r + (p / three).powi(3);

    let t_roots: [Complex<T>; 3] = if disc > zero {
        // One real root, one conjugate pair.
        let sq = disc.sqrt();
        let u = (-half_r + sq).cbrt();
        let v = (-half_r - sq).cbrt();
        let real = u + v;
        let im = (u - v) * three.sqrt() / two;
        [
            Complex::new(real, zero),
            Complex::new(-real / two, im),
            Complex::new(-real / two, -im),
        ]
    } else if p == zero {
        // Triple real root.
        let t = (-r).cbrt();
        [Complex::new(t, zero); 3]
    } else {
        // Three real roots (trigonometric branch).
        let m = two * (-p / three).sqrt();
        let arg = (three * r / (p * m)).max(-one).min(one);
        let theta = arg.acos() / three;
        let two_pi_3 = T::lit(2.0943951023931953);
        [
            Complex::new(m * theta.cos(), zero),
            Complex::new(m * (theta - two_pi_3).cos(), zero),
            Complex::new(m * (theta + two_pi_3).cos(), zero),
        ]
    };
    t_roots.map(|t| t - Complex::new(shift, zero))
}

/// Expand `(l - r0)(l - r1)(l - r2)` back into monic-cubic coefficients.
/// Imaginary parts are dropped; for a conjugate-closed multiset they cancel.
pub fn reconstruct_from_roots<T: Real>(roots: &[Complex<T>; 3]) -> MonicCubic<T> {
    let sum = roots[0] + roots[1] + roots[2];
    let pair = roots[0] * roots[1] + roots[0] * roots[2] + roots[1] * roots[2];
    let prod = roots[0] * roots[1] * roots[2];
    MonicCubic::new(-sum.re, pair.re, -prod.re)
}
