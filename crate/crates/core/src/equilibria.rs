//! Closed-form equilibria and their stability regions in the (e, c) plane.
//!
//! For fixed `(a, b, d, k)` the family has three distinguished orbit
//! families as `c` and `e` vary: the origin, the nontrivial fixed point(s)
//! `p1` (a single point for even `k`, a symmetric pair for odd `k` with
//! positive radicand), and the symmetric period-2 pair `+-p2` (odd `k`
//! only). Each family's linear stability is decided by the same monic
//! cubic in the shifted parameter `beta`, so all three regions are cut out
//! by the boundary functions
//!
//! ```text
//! c1(e)  = (1-e) [(a-1)^2 + b^2]
//! c-1(e) = -(1+e) [(a+1)^2 + b^2]
//! chat(e) = -(a^2+b^2-1) [(a e - 1)^2 + b^2 e^2]
//! ```
//!
//! evaluated against the combination `-bc`. All membership tests work in
//! the `-bc` variable exactly as the inequalities are stated; division by
//! `b` happens only when reporting boundary positions in `c`-space, so no
//! sign juggling depends on the sign of `b`.

use nalgebra::RealField;
use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::{char_poly, MapParams, State3};
use crate::num::{real_root, Real};
use crate::schur::cubic_roots;

/// Radicands smaller than this are reported as degenerate (the orbit has
/// merged with the origin) instead of producing a duplicated origin.
pub const DEGENERATE_RADICAND_TOL: f64 = 1e-12;

/// Default tolerance for eigenvalue-based boundary classification.
pub const BOUNDARY_CLASSIFY_TOL: f64 = 1e-8;

/// Which orbit family a stability region refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionKind {
    /// The origin.
    Trivial,
    /// The nontrivial fixed point(s) `p1` (or the pair for odd `k`).
    Nontrivial,
    /// The symmetric period-2 pair `+-p2`.
    Symmetric,
}

/// The three boundary functions for fixed `(a, b)`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RegionCurves<T> {
    pub a: T,
    pub b: T,
}

impl<T: Real> RegionCurves<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if b == T::zero() {
            return Err(Error::InvalidParams("b must be nonzero".into()));
        }
        Ok(Self { a, b })
    }

    /// `(1-e) [(a-1)^2 + b^2]`.
    #[inline]
    pub fn c1(&self, e: T) -> T {
        let one = T::one();
        (one - e) * ((self.a - one).powi(2) + self.b * self.b)
    }

    /// `-(1+e) [(a+1)^2 + b^2]`.
    #[inline]
    pub fn c_minus1(&self, e: T) -> T {
        let one = T::one();
        -(one + e) * ((self.a + one).powi(2) + self.b * self.b)
    }

    /// `-(a^2+b^2-1) [(a e - 1)^2 + b^2 e^2]`.
    #[inline]
    pub fn c_hat(&self, e: T) -> T {
        let one = T::one();
        let r2 = self.a * self.a + self.b * self.b;
        -(r2 - one) * ((self.a * e - one).powi(2) + (self.b * e).powi(2))
    }
}

/// Fixed points of the map: the origin plus the closed-form nontrivial
/// point(s) with `x1^(k-1) = (bc - c1(e))/(bd)`.
#[derive(Clone, Debug, Serialize)]
pub struct EquilibriumSet<T> {
    pub origin: State3<T>,
    /// Empty, `{p1}` (even k) or `{p1, -p1}` (odd k, positive radicand).
    pub nontrivial: Vec<State3<T>>,
    /// The expression under the (k-1)-th root.
    pub radicand: T,
    /// Radicand within [`DEGENERATE_RADICAND_TOL`] of zero: the nontrivial
    /// orbit has merged with the origin.
    pub degenerate: bool,
}

/// Symmetric period-2 pair, present only for odd `k` with positive radicand
/// `x2^(k-1) = (bc + c-1(e))/(bd)`.
#[derive(Clone, Debug, Serialize)]
pub struct Period2Set<T> {
    pub points: Option<[State3<T>; 2]>,
    pub radicand: T,
    pub degenerate: bool,
}

fn p1_from_x<T: Real>(p: &MapParams<T>, x1: T) -> State3<T> {
    let one = T::one();
    let r2 = p.r2();
    State3::new(
        x1,
        (r2 - p.a) / p.b * x1,
        ((p.a - one).powi(2) + p.b * p.b) / p.b * x1,
    )
}

fn p2_from_x<T: Real>(p: &MapParams<T>, x2: T) -> State3<T> {
    let one = T::one();
    let r2 = p.r2();
    State3::new(
        x2,
        (-r2 - p.a) / p.b * x2,
        (-(p.a + one).powi(2) - p.b * p.b) / p.b * x2,
    )
}

/// Radicand of the nontrivial fixed point(s).
#[inline]
pub fn nontrivial_radicand<T: Real>(p: &MapParams<T>) -> T {
    let curves = RegionCurves { a: p.a, b: p.b };
    (p.b * p.c - curves.c1(p.e)) / (p.b * p.d)
}

/// Radicand of the symmetric period-2 points.
#[inline]
pub fn period2_radicand<T: Real>(p: &MapParams<T>) -> T {
    let curves = RegionCurves { a: p.a, b: p.b };
    (p.b * p.c + curves.c_minus1(p.e)) / (p.b * p.d)
}

/// x-coordinate of the nontrivial fixed point, when it exists and is not
/// degenerate. For even `k` the real root of either sign is taken; for odd
/// `k` a positive radicand is required (the positive representative is
/// returned, the pair being `+-p1`).
pub fn nontrivial_x<T: Real>(p: &MapParams<T>) -> Option<T> {
    let radicand = nontrivial_radicand(p);
    if radicand.abs() <= T::lit(DEGENERATE_RADICAND_TOL) {
        return None;
    }
    real_root(radicand, p.k - 1)
}

/// x-coordinate of the symmetric period-2 point (positive representative).
pub fn period2_x<T: Real>(p: &MapParams<T>) -> Option<T> {
    if p.k % 2 == 0 {
        return None;
    }
    let radicand = period2_radicand(p);
    if radicand.abs() <= T::lit(DEGENERATE_RADICAND_TOL) || radicand < T::zero() {
        return None;
    }
    real_root(radicand, p.k - 1)
}

/// All fixed points of the map.
pub fn equilibria<T: Real>(p: &MapParams<T>) -> EquilibriumSet<T> {
    let radicand = nontrivial_radicand(p);
    let degenerate = radicand.abs() <= T::lit(DEGENERATE_RADICAND_TOL);
    let mut nontrivial = Vec::new();
    if !degenerate {
        if p.k % 2 == 0 {
            if let Some(x1) = real_root(radicand, p.k - 1) {
                nontrivial.push(p1_from_x(p, x1));
            }
        } else if radicand > T::zero() {
            let x1 = real_root(radicand, p.k - 1).unwrap();
            nontrivial.push(p1_from_x(p, x1));
            nontrivial.push(p1_from_x(p, -x1));
        }
    }
    EquilibriumSet {
        origin: State3::origin(),
        nontrivial,
        radicand,
        degenerate,
    }
}

/// The symmetric period-2 pair `F(p2) = -p2`, odd `k` only.
pub fn symmetric_period2<T: Real>(p: &MapParams<T>) -> Period2Set<T> {
    let radicand = period2_radicand(p);
    if p.k % 2 == 0 {
        return Period2Set {
            points: None,
            radicand,
            degenerate: false,
        };
    }
    let degenerate = radicand.abs() <= T::lit(DEGENERATE_RADICAND_TOL);
    let points = if !degenerate && radicand > T::zero() {
        let x2 = real_root(radicand, p.k - 1).unwrap();
        Some([p2_from_x(p, x2), p2_from_x(p, -x2)])
    } else {
        None
    };
    Period2Set {
        points,
        radicand,
        degenerate,
    }
}

/// Interval of admissible `e` witnessing a nonempty region.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EWindow<T> {
    pub lo: T,
    pub hi: T,
}

/// Nonemptiness of a stability region over the whole (e, c) plane, with the
/// witness window in `e` when nonempty.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RegionNonempty<T> {
    pub nonempty: bool,
    pub e_window: Option<EWindow<T>>,
}

/// Decides whether the stability region for the given orbit family is
/// nonempty for some (e, c), returning the admissible window in `e`.
///
/// The nontrivial and symmetric regions reduce to the trivial one with sign
/// conditions: odd `k` with `bd < 0` empties the nontrivial region, and the
/// symmetric region requires odd `k` and `bd > 0`.
pub fn region_nonempty<T: Real>(
    a: T,
    b: T,
    d: T,
    k: u32,
    kind: RegionKind,
) -> Result<RegionNonempty<T>> {
    if b == T::zero() {
        return Err(Error::InvalidParams("b must be nonzero".into()));
    }
    let empty = RegionNonempty {
        nonempty: false,
        e_window: None,
    };
    match kind {
        RegionKind::Trivial => {}
        RegionKind::Nontrivial => {
            if k % 2 == 1 && b * d < T::zero() {
                return Ok(empty);
            }
        }
        RegionKind::Symmetric => {
            if k % 2 == 0 || b * d < T::zero() {
                return Ok(empty);
            }
        }
    }

    let one = T::one();
    let two = T::of(2);
    let r2 = a * a + b * b;
    // Strip |e (a^2+b^2)| < 1.
    let (mut lo, mut hi) = (-one / r2, one / r2);
    // 2a-2 < (a^2+b^2-1) e < 2a+2.
    let s = r2 - one;
    if s > T::zero() {
        lo = lo.max((two * a - two) / s);
        hi = hi.min((two * a + two) / s);
    } else if s < T::zero() {
        lo = lo.max((two * a + two) / s);
        hi = hi.min((two * a - two) / s);
    }
    if lo < hi {
        Ok(RegionNonempty {
            nonempty: true,
            e_window: Some(EWindow { lo, hi }),
        })
    } else {
        Ok(empty)
    }
}

/// Bounds of a region slice at fixed `e`, in the `-bc` variable, together
/// with which curve attains each bound.
struct SliceBounds<T> {
    lo: T,
    lo_kinds: Vec<(T, BoundaryKind)>,
    hi: T,
    hi_kinds: Vec<(T, BoundaryKind)>,
}

fn slice_bounds<T: Real>(p_a: T, p_b: T, k: u32, e: T, kind: RegionKind) -> SliceBounds<T> {
    let curves = RegionCurves { a: p_a, b: p_b };
    let c1 = curves.c1(e);
    let cm1 = curves.c_minus1(e);
    let ch = curves.c_hat(e);
    let kk = T::from_u32(k).unwrap();
    let km1 = T::from_u32(k - 1).unwrap();
    // Candidates are (value in -bc, eigenvalue signature).
    let (lo_cand, hi_cand): (Vec<(T, BoundaryKind)>, Vec<(T, BoundaryKind)>) = match kind {
        RegionKind::Trivial => (
            vec![
                (-c1, BoundaryKind::EigenPlusOne),
                (cm1, BoundaryKind::EigenMinusOne),
            ],
            vec![(ch, BoundaryKind::HopfPair)],
        ),
        RegionKind::Nontrivial => (
            vec![(-(kk * c1 + ch) / km1, BoundaryKind::HopfPair)],
            vec![
                (-c1, BoundaryKind::EigenPlusOne),
                (-(kk * c1 + cm1) / km1, BoundaryKind::EigenMinusOne),
            ],
        ),
        RegionKind::Symmetric => (
            vec![((kk * cm1 - ch) / km1, BoundaryKind::HopfPair)],
            vec![
                ((kk * cm1 + c1) / km1, BoundaryKind::EigenPlusOne),
                (cm1, BoundaryKind::EigenMinusOne),
            ],
        ),
    };
    let lo = lo_cand
        .iter()
        .map(|(v, _)| *v)
        .fold(T::neg_infinity(), |m, v| m.max(v));
    let hi = hi_cand
        .iter()
        .map(|(v, _)| *v)
        .fold(T::infinity(), |m, v| m.min(v));
    SliceBounds {
        lo,
        lo_kinds: lo_cand,
        hi,
        hi_kinds: hi_cand,
    }
}

/// Strict membership of the parameter point in the stability region of the
/// given orbit family, evaluated through the printed inequalities in `-bc`.
pub fn region_member<T: Real>(p: &MapParams<T>, kind: RegionKind) -> bool {
    let one = T::one();
    if (p.e * p.r2()).abs() >= one {
        return false; // |a0| < 1 is necessary
    }
    match kind {
        RegionKind::Trivial => {}
        RegionKind::Nontrivial => {
            if p.k % 2 == 1 && nontrivial_radicand(p) <= T::zero() {
                return false;
            }
        }
        RegionKind::Symmetric => {
            if p.k % 2 == 0 || period2_radicand(p) <= T::zero() {
                return false;
            }
        }
    }
    let u = -p.b * p.c;
    let bounds = slice_bounds(p.a, p.b, p.k, p.e, kind);
    bounds.lo < u && u < bounds.hi
}

/// Stability decided directly from the eigenvalues of the Jacobian at the
/// orbit (via the characteristic cubic); `false` when the orbit is absent.
/// This is the cross-validation route for [`region_member`].
pub fn direct_stability<T: Real>(p: &MapParams<T>, kind: RegionKind) -> bool {
    let x = match kind {
        RegionKind::Trivial => Some(T::zero()),
        RegionKind::Nontrivial => {
            let radicand = nontrivial_radicand(p);
            if p.k % 2 == 0 {
                real_root(radicand, p.k - 1)
            } else if radicand > T::zero() {
                real_root(radicand, p.k - 1)
            } else {
                None
            }
        }
        RegionKind::Symmetric => period2_x(p),
    };
    match x {
        Some(x) => char_poly(p, x).is_stable(),
        None => false,
    }
}

/// Eigenvalue signature of a classified boundary point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryKind {
    /// A complex-conjugate pair of unit modulus (discrete Hopf).
    HopfPair,
    /// A real eigenvalue at -1 (period doubling).
    EigenMinusOne,
    /// A real eigenvalue at +1 (fold / branch exchange).
    EigenPlusOne,
}

/// A classified point of a region boundary at fixed `e`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundaryPoint<T> {
    pub e: T,
    pub c: T,
    pub kind: BoundaryKind,
    pub eigenvalues: [Complex<T>; 3],
}

/// The (c, e)-family context: everything but the two scanned parameters.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct FamilyParams<T> {
    pub a: T,
    pub b: T,
    pub d: T,
    pub k: u32,
}

impl<T: Real> FamilyParams<T> {
    pub fn params(&self, c: T, e: T) -> MapParams<T> {
        MapParams {
            a: self.a,
            b: self.b,
            c,
            d: self.d,
            e,
            k: self.k,
        }
    }
}

fn orbit_x_at_boundary<T: Real>(p: &MapParams<T>, kind: RegionKind) -> Result<T> {
    match kind {
        RegionKind::Trivial => Ok(T::zero()),
        RegionKind::Nontrivial => {
            let radicand = nontrivial_radicand(p);
            if p.k % 2 == 0 {
                return real_root(radicand, p.k - 1)
                    .ok_or_else(|| Error::OrbitMissing("nontrivial fixed point".into()));
            }
            // On the boundary the radicand may round to a tiny negative value.
            let clamped = radicand.max(T::zero());
            real_root(clamped, p.k - 1)
                .ok_or_else(|| Error::OrbitMissing("nontrivial fixed point".into()))
        }
        RegionKind::Symmetric => {
            let radicand = period2_radicand(p).max(T::zero());
            if p.k % 2 == 0 {
                return Err(Error::OrbitMissing(
                    "symmetric period-2 points require odd k".into(),
                ));
            }
            real_root(radicand, p.k - 1)
                .ok_or_else(|| Error::OrbitMissing("symmetric period-2 points".into()))
        }
    }
}

fn verify_kind<T: Real>(roots: &[Complex<T>; 3], kind: BoundaryKind, tol: T) -> bool {
    let one = T::one();
    match kind {
        BoundaryKind::EigenPlusOne => roots
            .iter()
            .any(|r| (r - Complex::new(one, T::zero())).norm_sqr().sqrt() < tol),
        BoundaryKind::EigenMinusOne => roots
            .iter()
            .any(|r| (r + Complex::new(one, T::zero())).norm_sqr().sqrt() < tol),
        BoundaryKind::HopfPair => {
            let on_circle_nonreal = roots
                .iter()
                .filter(|r| {
                    (r.norm_sqr().sqrt() - one).abs() < tol && r.im.abs() > tol
                })
                .count();
            on_circle_nonreal == 2
        }
    }
}

/// Active boundary values of a region slice at fixed `e`, in the `-bc`
/// variable, with the eigenvalue signature each side must show.
fn active_boundaries<T: Real>(
    fam: &FamilyParams<T>,
    e: T,
    kind: RegionKind,
) -> Result<Vec<(T, BoundaryKind)>> {
    let one = T::one();
    let r2 = fam.a * fam.a + fam.b * fam.b;
    if (e * r2).abs() >= one {
        return Err(Error::StripViolation);
    }
    match kind {
        RegionKind::Nontrivial if fam.k % 2 == 1 && fam.b * fam.d < T::zero() => {
            return Err(Error::EmptyRegion("odd k with bd < 0".into()))
        }
        RegionKind::Symmetric if fam.k % 2 == 0 || fam.b * fam.d < T::zero() => {
            return Err(Error::EmptyRegion("requires odd k and bd > 0".into()))
        }
        _ => {}
    }
    let bounds = slice_bounds(fam.a, fam.b, fam.k, e, kind);
    if !(bounds.lo < bounds.hi) {
        return Err(Error::EmptyRegion(format!("slice at e = {e} is empty")));
    }

    // A bound is active when it attains the max (lower side) or min (upper
    // side); ties contribute one point per attaining curve.
    let tie = T::lit(1e-13) * (one + bounds.lo.abs() + bounds.hi.abs());
    let mut actives: Vec<(T, BoundaryKind)> = Vec::new();
    for (v, bk) in &bounds.lo_kinds {
        if (*v - bounds.lo).abs() <= tie {
            actives.push((*v, *bk));
        }
    }
    for (v, bk) in &bounds.hi_kinds {
        if (*v - bounds.hi).abs() <= tie {
            actives.push((*v, *bk));
        }
    }
    Ok(actives)
}

/// Classifies the active boundaries of a region slice at fixed `e`.
///
/// Each returned point carries the boundary `c`-value (converted from the
/// `-bc` variable only here, at the reporting layer), the expected
/// eigenvalue signature, and the actual eigenvalues of the Jacobian at the
/// orbit, verified against the signature at tolerance `tol`.
pub fn boundary_classify<T: Real + RealField>(
    fam: &FamilyParams<T>,
    e: T,
    kind: RegionKind,
    tol: T,
) -> Result<Vec<BoundaryPoint<T>>> {
    let actives = active_boundaries(fam, e, kind)?;
    let mut out = Vec::with_capacity(actives.len());
    for (u, bk) in actives {
        let c = u / (-fam.b);
        let p = fam.params(c, e);
        let x = orbit_x_at_boundary(&p, kind)?;
        let roots = cubic_roots(&char_poly(&p, x));
        if !verify_kind(&roots, bk, tol) {
            return Err(Error::EigenvalueMismatch {
                expected: format!("{bk:?}"),
                at: format!("e = {e}, c = {c}"),
            });
        }
        out.push(BoundaryPoint {
            e,
            c,
            kind: bk,
            eigenvalues: roots,
        });
    }
    Ok(out)
}

/// A corner of the region picture with its eigenvalue data.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CornerPoint<T> {
    pub e: T,
    pub c: T,
    pub eigenvalues: [Complex<T>; 3],
}

/// A pair of boundary-curve intersections; merged when `a^2 + b^2 = 1`.
#[derive(Clone, Debug, Serialize)]
pub enum CornerPair<T> {
    /// Single intersection at `(e, c) = (+-1/(a^2+b^2), 0)`.
    Merged(CornerPoint<T>),
    Distinct {
        prime: CornerPoint<T>,
        double_prime: CornerPoint<T>,
    },
}

/// The intersections of the upper (Hopf) boundary with the two straight
/// boundaries of the trivial region: M' and M'' on the `c1` side, N' and
/// N'' on the `c-1` side.
#[derive(Clone, Debug, Serialize)]
pub struct CornerPoints<T> {
    pub m: CornerPair<T>,
    pub n: CornerPair<T>,
}

fn origin_eigenvalues<T: Real + RealField>(a: T, b: T, c: T, e: T) -> [Complex<T>; 3] {
    // Characteristic cubic of the Jacobian at the origin; d and k are
    // irrelevant because x = 0 kills the monomial term for k >= 2.
    let two = T::of(2);
    let r2 = a * a + b * b;
    let q = crate::schur::MonicCubic::new(-(two * a + e), r2 + two * a * e - b * c, -r2 * e);
    cubic_roots(&q)
}

/// (e, c) coordinates of the corners; `None` marks the merged case.
fn corner_coordinates<T: Real>(a: T, b: T) -> Result<Option<[(T, T); 4]>> {
    if b == T::zero() {
        return Err(Error::InvalidParams("b must be nonzero".into()));
    }
    let one = T::one();
    let two = T::of(2);
    let r2 = a * a + b * b;
    let curves = RegionCurves { a, b };
    let s = r2 - one;
    if s.abs() < T::lit(1e-12) {
        return Ok(None);
    }
    let m_p = one / r2;
    let m_pp = (two * a - two) / s;
    let n_p = -one / r2;
    let n_pp = (two * a + two) / s;
    Ok(Some([
        (m_p, curves.c1(m_p) / b),
        (m_pp, curves.c1(m_pp) / b),
        (n_p, curves.c_minus1(n_p) / (-b)),
        (n_pp, curves.c_minus1(n_pp) / (-b)),
    ]))
}

/// Corner points of the trivial-region picture for fixed `(a, b)`.
pub fn corner_points<T: Real + RealField>(a: T, b: T) -> Result<CornerPoints<T>> {
    let corner = |e: T, c: T| -> CornerPoint<T> {
        CornerPoint {
            e,
            c,
            eigenvalues: origin_eigenvalues(a, b, c, e),
        }
    };
    match corner_coordinates(a, b)? {
        None => {
            let r2 = a * a + b * b;
            Ok(CornerPoints {
                m: CornerPair::Merged(corner(T::one() / r2, T::zero())),
                n: CornerPair::Merged(corner(-T::one() / r2, T::zero())),
            })
        }
        Some([m_p, m_pp, n_p, n_pp]) => Ok(CornerPoints {
            m: CornerPair::Distinct {
                prime: corner(m_p.0, m_p.1),
                double_prime: corner(m_pp.0, m_pp.1),
            },
            n: CornerPair::Distinct {
                prime: corner(n_p.0, n_p.1),
                double_prime: corner(n_pp.0, n_pp.1),
            },
        }),
    }
}

/// The two resonance values of `e` on the Hopf boundary: the crossing pair
/// equals `exp(+-2 pi i/4)` at `e = 2a/(a^2+b^2-1)` and `exp(+-2 pi i/3)`
/// at `e = (2a+1)/(a^2+b^2-1)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ResonanceParams<T> {
    pub e_1to4: T,
    pub e_1to3: T,
}

pub fn resonance_parameters<T: Real>(a: T, b: T) -> Result<ResonanceParams<T>> {
    let one = T::one();
    let two = T::of(2);
    let s = a * a + b * b - one;
    if s.abs() < T::lit(1e-12) {
        return Err(Error::UnitCircleDegenerate(
            "resonance parameters undefined".into(),
        ));
    }
    Ok(ResonanceParams {
        e_1to4: two * a / s,
        e_1to3: (two * a + one) / s,
    })
}

/// One cell of a rasterized stability region.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RasterCell<T> {
    pub e: T,
    pub c: T,
    pub member: bool,
}

/// Rasterizes region membership over an (e, c) grid. Cells are evaluated
/// independently in parallel and returned in row-major (e-outer) order.
pub fn raster<T: Real>(
    fam: &FamilyParams<T>,
    kind: RegionKind,
    e_range: (T, T),
    c_range: (T, T),
    ne: usize,
    nc: usize,
) -> Vec<RasterCell<T>> {
    let grid: Vec<(usize, usize)> = (0..ne)
        .flat_map(|i| (0..nc).map(move |j| (i, j)))
        .collect();
    grid.into_par_iter()
        .map(|(i, j)| {
            let fi = T::from_usize(i).unwrap() / T::from_usize(ne.max(2) - 1).unwrap();
            let fj = T::from_usize(j).unwrap() / T::from_usize(nc.max(2) - 1).unwrap();
            let e = e_range.0 + fi * (e_range.1 - e_range.0);
            let c = c_range.0 + fj * (c_range.1 - c_range.0);
            let p = fam.params(c, e);
            RasterCell {
                e,
                c,
                member: region_member(&p, kind),
            }
        })
        .collect()
}
