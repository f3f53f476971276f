//! The ACT map family
//!
//! `F(x, y, z) = (a x - b (y - z), b x + a (y - z), c x - d x^k + e z)`
//!
//! with real parameters `a, b, c, d, e`, `b d != 0`, and integer exponent
//! `k >= 2`. This module provides evaluation, the explicit inverse (for
//! `e != 0`), the Jacobian and its characteristic polynomial, orbit
//! iteration with escape detection, and the explicit box bounding the
//! nonwandering set.

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::Real;
use crate::schur::MonicCubic;

/// Largest exponent accepted; bounds overflow surprises from `x^k`.
pub const MAX_EXPONENT: u32 = 16;

/// Parameters `(a, b, c, d, e, k)` of the family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapParams<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub e: T,
    pub k: u32,
}

impl<T: Real> MapParams<T> {
    /// Validates `b != 0`, `d != 0`, `2 <= k <= 16` and finiteness.
    pub fn new(a: T, b: T, c: T, d: T, e: T, k: u32) -> Result<Self> {
        let p = Self { a, b, c, d, e, k };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("d", self.d),
            ("e", self.e),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} is not finite")));
            }
        }
        if self.b == T::zero() || self.d == T::zero() {
            return Err(Error::InvalidParams("b and d must be nonzero".into()));
        }
        if self.k < 2 || self.k > MAX_EXPONENT {
            return Err(Error::InvalidParams(format!(
                "k = {} outside supported range 2..={MAX_EXPONENT}",
                self.k
            )));
        }
        Ok(())
    }

    /// `a^2 + b^2`, the squared modulus of the rotation block.
    #[inline]
    pub fn r2(&self) -> T {
        self.a * self.a + self.b * self.b
    }

    /// Constant Jacobian determinant `(a^2 + b^2) e`.
    #[inline]
    pub fn det_jacobian(&self) -> T {
        self.r2() * self.e
    }

    /// The map is a diffeomorphism exactly when `e != 0`.
    #[inline]
    pub fn is_invertible(&self) -> bool {
        self.e != T::zero()
    }
}

/// A point of phase space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct State3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> State3<T> {
    #[inline]
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn origin() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Componentwise maximum absolute difference.
    #[inline]
    pub fn dist_inf(&self, other: &Self) -> T {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }

    #[inline]
    pub fn norm_inf(&self) -> T {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    #[inline]
    pub fn neg(&self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

/// Coordinate box `{ |x| <= x_max, |y| <= y_max, |z| <= z_max }` centered at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Box3<T> {
    pub x_max: T,
    pub y_max: T,
    pub z_max: T,
}

impl<T: Real> Box3<T> {
    /// Half-widths must be positive and finite.
    pub fn new(x_max: T, y_max: T, z_max: T) -> Result<Self> {
        if !(x_max > T::zero() && y_max > T::zero() && z_max > T::zero())
            || !(x_max.is_finite() && y_max.is_finite() && z_max.is_finite())
        {
            return Err(Error::InvalidParams(
                "box half-widths must be positive and finite".into(),
            ));
        }
        Ok(Self { x_max, y_max, z_max })
    }

    /// NaN-safe containment test: non-finite states are never contained.
    #[inline]
    pub fn contains(&self, s: &State3<T>) -> bool {
        s.x.abs() <= self.x_max && s.y.abs() <= self.y_max && s.z.abs() <= self.z_max
    }

    #[inline]
    pub fn inflate(&self, factor: T) -> Self {
        Self {
            x_max: self.x_max * factor,
            y_max: self.y_max * factor,
            z_max: self.z_max * factor,
        }
    }
}

/// Orbit segment produced by [`iterate`].
#[derive(Clone, Debug, Serialize)]
pub struct OrbitResult<T> {
    /// Visited states, starting with the seed. If `escaped`, the last entry
    /// (at `escape_index`) is the first state outside the effective box.
    pub states: Vec<State3<T>>,
    pub escaped: bool,
    pub escape_index: Option<usize>,
}

/// One application of the map. Non-finite results are returned as an error.
pub fn evaluate<T: Real>(p: &MapParams<T>, s: &State3<T>) -> Result<State3<T>> {
    let next = step(p, s);
    if next.is_finite() {
        Ok(next)
    } else {
        Err(Error::NonFinite)
    }
}

/// One application of the map without the finiteness check.
#[inline]
pub fn step<T: Real>(p: &MapParams<T>, s: &State3<T>) -> State3<T> {
    let w = s.y - s.z;
    State3::new(
        p.a * s.x - p.b * w,
        p.b * s.x + p.a * w,
        p.c * s.x - p.d * s.x.powi(p.k as i32) + p.e * s.z,
    )
}

/// The explicit inverse, defined for `e != 0`:
/// with `xh = (a x + b y)/(a^2+b^2)` and `zh = (z - c xh + d xh^k)/e`,
/// `F^{-1}(x, y, z) = (xh, (-b x + a y)/(a^2+b^2) + zh, zh)`.
pub fn inverse<T: Real>(p: &MapParams<T>, s: &State3<T>) -> Result<State3<T>> {
    if !p.is_invertible() {
        return Err(Error::NonInvertible);
    }
    let r2 = p.r2();
    let xh = (p.a * s.x + p.b * s.y) / r2;
    let zh = (s.z - p.c * xh + p.d * xh.powi(p.k as i32)) / p.e;
    let prev = State3::new(xh, (p.a * s.y - p.b * s.x) / r2 + zh, zh);
    if prev.is_finite() {
        Ok(prev)
    } else {
        Err(Error::NonFinite)
    }
}

/// Jacobian matrix at a point with first coordinate `x` (it depends on x only):
///
/// ```text
/// [ a            -b   b ]
/// [ b             a  -a ]
/// [ c - k d x^(k-1)  0   e ]
/// ```
pub fn jacobian<T: Real>(p: &MapParams<T>, x: T) -> Matrix3<T> {
    let kd = T::from_u32(p.k).unwrap() * p.d;
    Matrix3::new(
        p.a,
        -p.b,
        p.b,
        p.b,
        p.a,
        -p.a,
        p.c - kd * x.powi(p.k as i32 - 1),
        T::zero(),
        p.e,
    )
}

/// Characteristic polynomial of the Jacobian at first coordinate `x`:
/// `P(l) = l^3 - (2a+e) l^2 + [a^2+b^2+2ae-bc+kbd x^(k-1)] l - (a^2+b^2) e`.
pub fn char_poly<T: Real>(p: &MapParams<T>, x: T) -> MonicCubic<T> {
    let two = T::of(2);
    let kbd = T::from_u32(p.k).unwrap() * p.b * p.d;
    MonicCubic::new(
        -(two * p.a + p.e),
        p.r2() + two * p.a * p.e - p.b * p.c + kbd * x.powi(p.k as i32 - 1),
        -p.r2() * p.e,
    )
}

/// Iterates the map up to `n` steps, stopping early when a state leaves the
/// escape box inflated by `inflation`. Non-finite states fail the
/// containment test and therefore register as escapes, never as panics.
pub fn iterate<T: Real>(
    p: &MapParams<T>,
    s0: &State3<T>,
    n: usize,
    escape: &Box3<T>,
    inflation: T,
) -> OrbitResult<T> {
    let eff = escape.inflate(inflation);
    let mut states = Vec::with_capacity(n + 1);
    states.push(*s0);
    if !eff.contains(s0) {
        return OrbitResult {
            states,
            escaped: true,
            escape_index: Some(0),
        };
    }
    let mut s = *s0;
    for i in 1..=n {
        s = step(p, &s);
        states.push(s);
        if !eff.contains(&s) {
            return OrbitResult {
                states,
                escaped: true,
                escape_index: Some(i),
            };
        }
    }
    OrbitResult {
        states,
        escaped: false,
        escape_index: None,
    }
}

/// Default inflation factor used by escape detection.
pub fn default_escape_inflation<T: Real>() -> T {
    T::of(10)
}

/// Explicit box containing the nonwandering set (and every bounded orbit):
/// `|x| <= M` with
/// `M = ((|a^2 e + b^2 e| + |a^2+b^2-bc+2ae| + |2a+e| + 1)/|bd|)^(1/(k-1))`,
/// and the y/z bounds obtained from the orbit reconstruction identities
/// `y_{n+1} = ((a^2+b^2) x_n - a x_{n+1})/b` and
/// `z_{n+1} = ((a^2+b^2) x_n - 2a x_{n+1} + x_{n+2})/b`,
/// so `|y| <= (a^2+b^2+|a|)/|b| M` and `|z| <= (a^2+b^2+2|a|+1)/|b| M`.
pub fn nonwandering_box<T: Real>(p: &MapParams<T>) -> Box3<T> {
    let one = T::one();
    let two = T::of(2);
    let r2 = p.r2();
    let num = (r2 * p.e).abs()
        + (r2 - p.b * p.c + two * p.a * p.e).abs()
        + (two * p.a + p.e).abs()
        + one;
    let m = (num / (p.b * p.d).abs()).powf(one / T::from_u32(p.k - 1).unwrap());
    let abs_a = p.a.abs();
    let abs_b = p.b.abs();
    Box3 {
        x_max: m,
        y_max: (r2 + abs_a) / abs_b * m,
        z_max: (r2 + two * abs_a + one) / abs_b * m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn params(a: f64, b: f64, c: f64, d: f64, e: f64, k: u32) -> MapParams<f64> {
        MapParams::new(a, b, c, d, e, k).unwrap()
    }

    #[test]
    fn origin_is_always_fixed() {
        let p = params(0.6, 0.5, 1.0, 1.0, 1.0, 3);
        let s = evaluate(&p, &State3::origin()).unwrap();
        assert_eq!(s, State3::origin());
    }

    #[test]
    fn nontrivial_fixed_point_residual() {
        // At (a,b,c,d,e,k) = (0.6, 0.5, 1, 1, 1, 3) the point (1, 0.02, 0.82)
        // is fixed; residual must vanish to roundoff.
        let p = params(0.6, 0.5, 1.0, 1.0, 1.0, 3);
        let q = State3::new(1.0, 0.02, 0.82);
        let fq = evaluate(&p, &q).unwrap();
        assert!(fq.dist_inf(&q) < 1e-12, "residual {}", fq.dist_inf(&q));
    }

    #[test]
    fn hand_evaluation() {
        let p = params(0.0, 1.0, 0.0, 1.0, 0.0, 2);
        let s = evaluate(&p, &State3::new(1.0, 1.0, 0.0)).unwrap();
        assert_eq!(s, State3::new(-1.0, 1.0, -1.0));
    }

    #[test]
    fn evaluate_overflow_is_an_error() {
        let p = params(0.0, 1.0, 0.0, 1e300, 0.0, 16);
        let r = evaluate(&p, &State3::new(1e300, 0.0, 0.0));
        assert!(matches!(r, Err(Error::NonFinite)));
    }

    #[test]
    fn inverse_formula_hand_case() {
        // (a,b,c,d,e,k) = (0, 1, 0, 1, 1, 2): the preimage of (0, 1, 0) is
        // (1, 1, 1); checked by forward evaluation.
        let p = params(0.0, 1.0, 0.0, 1.0, 1.0, 2);
        let s = State3::new(0.0, 1.0, 0.0);
        let prev = inverse(&p, &s).unwrap();
        assert!(prev.dist_inf(&State3::new(1.0, 1.0, 1.0)) < 1e-14);
        assert!(evaluate(&p, &prev).unwrap().dist_inf(&s) < 1e-14);
    }

    #[test]
    fn inverse_requires_nonzero_e() {
        let p = params(0.0, 1.0, 0.0, 1.0, 0.0, 2);
        assert!(matches!(
            inverse(&p, &State3::origin()),
            Err(Error::NonInvertible)
        ));
    }

    #[test]
    fn inverse_round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let p = params(
                rng.gen_range(-1.5..1.5),
                rng.gen_range(0.2..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
                rng.gen_range(-3.0..3.0),
                rng.gen_range(0.2..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
                rng.gen_range(0.1..1.5) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
                rng.gen_range(2..=5),
            );
            let s = State3::new(
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            );
            let fwd = evaluate(&p, &s).unwrap();
            let back = inverse(&p, &fwd).unwrap();
            assert!(back.dist_inf(&s) < 1e-11, "F^-1(F(s)) != s: {:?}", p);
            let pre = inverse(&p, &s).unwrap();
            let again = evaluate(&p, &pre).unwrap();
            assert!(again.dist_inf(&s) < 1e-11, "F(F^-1(s)) != s: {:?}", p);
        }
    }

    #[test]
    fn jacobian_third_row_at_origin() {
        let p = params(0.3, -0.7, 2.0, 1.5, 0.4, 4);
        let j = jacobian(&p, 0.0);
        assert_eq!(j[(2, 0)], p.c);
        assert_eq!(j[(2, 1)], 0.0);
        assert_eq!(j[(2, 2)], p.e);
    }

    #[test]
    fn jacobian_determinant_is_constant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let p = params(
                rng.gen_range(-2.0..2.0),
                rng.gen_range(0.1..2.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(0.1..2.0),
                rng.gen_range(-1.5..1.5),
                rng.gen_range(2..=6),
            );
            let x: f64 = rng.gen_range(-2.0..2.0);
            let det = jacobian(&p, x).determinant();
            let expect = p.det_jacobian();
            assert!(
                (det - expect).abs() <= 1e-12 * expect.abs().max(1.0),
                "det {det} vs {expect}"
            );
        }
    }

    #[test]
    fn jacobian_determinant_specific() {
        let p = params(0.0, 2.0, 1.0, 1.0, 0.7, 3);
        assert!((jacobian(&p, 1.234).determinant() - 4.0 * 0.7).abs() < 1e-12);
    }

    #[test]
    fn char_poly_example() {
        let p = params(0.0, 2.0, 1.5, 1.0, 0.0, 2);
        let q = char_poly(&p, 0.0);
        assert_eq!((q.a2, q.a1, q.a0), (0.0, 1.0, 0.0));
    }

    #[test]
    fn char_poly_matches_trace_minors_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let p = params(
                rng.gen_range(-2.0..2.0),
                rng.gen_range(0.1..2.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(0.1..2.0),
                rng.gen_range(-1.5..1.5),
                rng.gen_range(2..=6),
            );
            let x: f64 = rng.gen_range(-1.5..1.5);
            let j = jacobian(&p, x);
            let q = char_poly(&p, x);
            let trace = j.trace();
            let minors = (j[(0, 0)] * j[(1, 1)] - j[(0, 1)] * j[(1, 0)])
                + (j[(0, 0)] * j[(2, 2)] - j[(0, 2)] * j[(2, 0)])
                + (j[(1, 1)] * j[(2, 2)] - j[(1, 2)] * j[(2, 1)]);
            let det = j.determinant();
            let scale = 1.0 + trace.abs() + minors.abs() + det.abs();
            assert!((q.a2 + trace).abs() < 1e-12 * scale);
            assert!((q.a1 - minors).abs() < 1e-12 * scale);
            assert!((q.a0 + det).abs() < 1e-12 * scale);
        }
    }

    #[test]
    fn char_poly_constant_term_vanishes_with_e() {
        let p = params(0.9, -1.1, 2.2, 0.4, 0.0, 5);
        assert_eq!(char_poly(&p, 0.77).a0, 0.0);
    }

    #[test]
    fn iterate_fixed_point_stays() {
        let p = params(0.6, 0.5, 1.0, 1.0, 1.0, 3);
        let bx = nonwandering_box(&p);
        let r = iterate(&p, &State3::origin(), 50, &bx, 10.0);
        assert!(!r.escaped);
        assert_eq!(r.states.len(), 51);
        assert!(r.states.iter().all(|s| *s == State3::origin()));

        // A *stable* nontrivial fixed point (c inside its stability window)
        // absorbs the roundoff of its own float representation.
        let ps = params(0.6, 0.5, 0.1, 1.0, 1.0, 3);
        let x1 = (0.1f64).sqrt();
        let p1 = State3::new(x1, 0.02 * x1, 0.82 * x1);
        let r = iterate(&ps, &p1, 500, &nonwandering_box(&ps), 10.0);
        assert!(!r.escaped);
        assert!(r.states.iter().all(|s| s.dist_inf(&p1) < 1e-9));
    }

    #[test]
    fn iterate_escape_detection() {
        let p = params(0.0, 2.0, 5.0, 1.0, 0.0, 2);
        let bx = nonwandering_box(&p);
        let far = State3::new(100.0 * bx.x_max, 0.0, 0.0);
        let r = iterate(&p, &far, 100, &bx, 10.0);
        assert!(r.escaped);
        assert_eq!(r.escape_index, Some(0));

        // Slightly outside the slab structure: grows and escapes quickly.
        let s0 = State3::new(2.0 * bx.x_max, 0.0, 0.0);
        let r = iterate(&p, &s0, 1000, &bx, 10.0);
        assert!(r.escaped);
        let idx = r.escape_index.unwrap();
        assert_eq!(idx, r.states.len() - 1);
        assert!(!bx.inflate(10.0).contains(&r.states[idx]));
        for s in &r.states[..idx] {
            assert!(bx.inflate(10.0).contains(s));
        }
    }

    #[test]
    fn nonwandering_box_formula() {
        // a=e=0, b=2, c=5, d=1, k=2: M = (|4-10|+1)/2 = 3.5,
        // y bound (4+0)/2 * M = 7, z bound (4+0+1)/2 * M = 8.75.
        let p = params(0.0, 2.0, 5.0, 1.0, 0.0, 2);
        let bx = nonwandering_box(&p);
        assert!((bx.x_max - 3.5).abs() < 1e-14);
        assert!((bx.y_max - 7.0).abs() < 1e-14);
        assert!((bx.z_max - 8.75).abs() < 1e-14);
    }

    #[test]
    fn box_shrinks_with_growing_bd() {
        let mut prev = f64::INFINITY;
        for bd in [1.0, 2.0, 4.0, 8.0, 16.0] {
            let p = params(0.0, 2.0, 5.0, bd / 2.0, 0.0, 2);
            let m = nonwandering_box(&p).x_max;
            assert!(m < prev);
            prev = m;
        }
    }
}
