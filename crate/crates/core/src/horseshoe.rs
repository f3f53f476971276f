//! Full-shift (horseshoe) verification at and near the decoupled limit
//! `a = e = 0`.
//!
//! With `a = e = 0` the third iterate of the x-coordinate decouples:
//! writing `f(x) = d x^k + (b - c) x`, every orbit satisfies
//! `x_{n+2} = g(x_n)` with `g = -b f`, so the three-dimensional dynamics is
//! two interleaved copies of the scalar map `g`. The inequality conditions
//! checked by [`classify_case`] guarantee a hyperbolic invariant set on
//! which the map is conjugate to the full shift on two symbols (even `k`)
//! or three symbols (odd `k`).
//!
//! Two slab systems appear:
//!
//! - the *strip construction* of [`strip_geometry`]: the image surface
//!   `T = {z = (c/b) y - (d/b^k) y^k}`, its extreme line at `y_star`, the
//!   plane intersection at `r_star`, and the roots of `f(x) = 0` and
//!   `f(x) = r_star` (reported in `slab_roots`);
//! - the *bounded-orbit slabs* (`slabs`): on any bounded orbit the
//!   difference equation forces `|f(x_n)| <= M/|b|` with `M` the
//!   nonwandering bound, so the components of
//!   `{ |x| <= M : |b f(x)| <= M }` contain every bounded x-coordinate.
//!   There are exactly 2 (even `k`) or 3 (odd `k`) such components when
//!   the full shift is present; they drive itineraries and Newton seeding.
//!
//! Periodic-orbit enumeration is the operational witness of the conjugacy:
//! for each of the `s^n` symbol words a multiple-shooting Newton solve must
//! converge to a distinct period-n orbit.

use nalgebra::{DMatrix, DVector, RealField};
use num_traits::Float;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::anti_integrable::lift_window_unchecked;
use crate::error::{Error, Result};
use crate::map::{jacobian, step, MapParams, State3};
use crate::num::{real_root, Real};

/// Which inequality set of the full-shift conditions holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    /// even k, `bc > k b^2/(k-1)`
    Ii1,
    /// even k, `bc < k b^2/(k-1) (1 - k^(1/(k-1)))`
    Ii2,
    /// odd k, `bd > 0`, `bc > k b^2/(k-1) (1 + k^(1/(k-1)))`
    Ii3,
    /// odd k, `bd < 0`, `bc < k b^2/(k-1) (1 - k^(1/(k-1)))`
    Ii4,
}

/// Outcome of checking the full-shift conditions.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct HorseshoeCase {
    /// `|b| > 1` and `|b - c| > 1`.
    pub condition_i: bool,
    pub case: Option<CaseTag>,
    /// 2 for even k, 3 for odd k.
    pub symbol_count: u8,
}

impl HorseshoeCase {
    /// All hypotheses hold.
    pub fn holds(&self) -> bool {
        self.condition_i && self.case.is_some()
    }
}

/// Evaluates the full-shift conditions at face value; `a` and `e` are
/// ignored (the statement concerns parameters near the decoupled limit).
pub fn classify_case<T: Real>(p: &MapParams<T>) -> HorseshoeCase {
    let one = T::one();
    let condition_i = p.b.abs() > one && (p.b - p.c).abs() > one;
    let kk = T::from_u32(p.k).unwrap();
    let km1 = T::from_u32(p.k - 1).unwrap();
    let base = kk * p.b * p.b / km1;
    let root_k = kk.powf(one / km1);
    let bc = p.b * p.c;
    let bd = p.b * p.d;
    let case = if p.k % 2 == 0 {
        if bc > base {
            Some(CaseTag::Ii1)
        } else if bc < base * (one - root_k) {
            Some(CaseTag::Ii2)
        } else {
            None
        }
    } else if bd > T::zero() && bc > base * (one + root_k) {
        Some(CaseTag::Ii3)
    } else if bd < T::zero() && bc < base * (one - root_k) {
        Some(CaseTag::Ii4)
    } else {
        None
    };
    HorseshoeCase {
        condition_i,
        case,
        symbol_count: if p.k % 2 == 0 { 2 } else { 3 },
    }
}

/// The scalar polynomial `f(x) = d x^k + w x` with `w = b - c`, together
/// with root solving on its monotone pieces.
#[derive(Clone, Copy, Debug)]
struct SlabPoly<T> {
    d: T,
    w: T,
    k: u32,
}

impl<T: Real> SlabPoly<T> {
    fn new(p: &MapParams<T>) -> Self {
        Self {
            d: p.d,
            w: p.b - p.c,
            k: p.k,
        }
    }

    #[inline]
    fn eval(&self, x: T) -> T {
        self.d * x.powi(self.k as i32) + self.w * x
    }

    /// `f'(x) = k d x^(k-1) + w`.
    #[inline]
    fn deriv(&self, x: T) -> T {
        T::from_u32(self.k).unwrap() * self.d * x.powi(self.k as i32 - 1) + self.w
    }

    /// Real zeros of `f'`, sorted ascending.
    fn critical_points(&self) -> Vec<T> {
        let kd = T::from_u32(self.k).unwrap() * self.d;
        let m = self.k - 1;
        let target = -self.w / kd;
        let mut out = Vec::new();
        if m % 2 == 1 {
            out.push(real_root(target, m).unwrap());
        } else if target > T::zero() {
            let r = real_root(target, m).unwrap();
            out.push(-r);
            out.push(r);
        } else if target == T::zero() {
            out.push(T::zero());
        }
        out
    }

    /// All real solutions of `f(x) = t`, sorted ascending. `f` is monotone
    /// between consecutive critical points, so each piece holds at most one
    /// root, found by bisection and polished by Newton.
    fn roots_of(&self, t: T) -> Vec<T> {
        let crit = self.critical_points();
        let big = self.bracket_radius(t);
        let mut cuts = Vec::with_capacity(crit.len() + 2);
        cuts.push(-big);
        for c in &crit {
            if c.abs() < big {
                cuts.push(*c);
            }
        }
        cuts.push(big);
        let mut roots = Vec::new();
        for pair in cuts.windows(2) {
            let (lo, hi) = (pair[0], pair[1]);
            let (flo, fhi) = (self.eval(lo) - t, self.eval(hi) - t);
            if flo == T::zero() {
                roots.push(lo);
                continue;
            }
            if flo * fhi > T::zero() {
                continue;
            }
            roots.push(self.bisect(lo, hi, t));
        }
        if self.eval(big) - t == T::zero() {
            roots.push(big);
        }
        roots.sort_by(|u, v| u.partial_cmp(v).unwrap());
        roots.dedup_by(|u, v| (*u - *v).abs() <= T::lit(1e-13) * (T::one() + u.abs()));
        roots
    }

    /// Radius beyond which `f(x) - t` cannot vanish.
    fn bracket_radius(&self, t: T) -> T {
        // |d| R^k > |w| R + |t| once R exceeds ((|w| + |t| + 1)/|d|)^(1/(k-1)).
        let m = (self.w.abs() + t.abs() + T::one()) / self.d.abs();
        let r = m.powf(T::one() / T::from_u32(self.k - 1).unwrap());
        (r + T::one()) * T::of(2)
    }

    fn bisect(&self, mut lo: T, mut hi: T, t: T) -> T {
        let flo = self.eval(lo) - t;
        for _ in 0..200 {
            let mid = (lo + hi) / T::of(2);
            if mid == lo || mid == hi {
                break;
            }
            let fmid = self.eval(mid) - t;
            if fmid == T::zero() {
                return mid;
            }
            if (fmid > T::zero()) == (flo > T::zero()) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // One guarded Newton polish.
        let mut x = (lo + hi) / T::of(2);
        let dfx = self.deriv(x);
        if dfx != T::zero() {
            let xn = x - (self.eval(x) - t) / dfx;
            if xn >= lo.min(hi) && xn <= lo.max(hi) {
                x = xn;
            }
        }
        x
    }
}

/// Strip construction data and the slab systems derived from it.
#[derive(Clone, Debug, Serialize)]
pub struct StripGeometry<T> {
    /// y-coordinate of the extreme line of the image surface.
    pub y_star: T,
    /// z-coordinate of the extreme line.
    pub z_star: T,
    /// Nonzero y-intersection of the image surface with the plane z = 0.
    pub r_star: T,
    /// Sorted real roots of `f(x) = 0` and `f(x) = r_star` (4 for two
    /// symbols, 6 for three).
    pub slab_roots: Vec<T>,
    /// Bounded-orbit slabs: components of `{|x| <= M : |b f(x)| <= M}`,
    /// sorted; every bounded x-coordinate at the decoupled limit lies in
    /// one of them. Used by itineraries and Newton seeding.
    pub slabs: Vec<(T, T)>,
    /// The x-bound M of the nonwandering box at the decoupled limit.
    pub bound: T,
    pub symbol_count: u8,
}

impl<T: Real> StripGeometry<T> {
    /// Index of the bounded-orbit slab containing `x`, allowing `slack`
    /// beyond each slab edge.
    pub fn slab_of(&self, x: T, slack: T) -> Option<usize> {
        self.slabs
            .iter()
            .position(|(lo, hi)| x >= *lo - slack && x <= *hi + slack)
    }

    /// Width of the full slab span.
    pub fn span(&self) -> T {
        match (self.slabs.first(), self.slabs.last()) {
            (Some(first), Some(last)) => last.1 - first.0,
            _ => T::zero(),
        }
    }
}

/// Computes the strip construction for the decoupled limit; only
/// `b, c, d, k` enter (any `a`, `e` carried by `p` are ignored here).
pub fn strip_geometry<T: Real>(p: &MapParams<T>) -> Result<StripGeometry<T>> {
    let case = classify_case(p);
    let symbol_count = case.symbol_count;
    let kk = T::from_u32(p.k).unwrap();
    let km1 = p.k - 1;
    let one = T::one();

    // Extreme line of T = {z = (c/b) y - (d/b^k) y^k} and its z = 0 crossing.
    let bpow = p.b.powi(km1 as i32);
    let y_star = real_root(bpow * p.c / (kk * p.d), km1).ok_or_else(|| {
        Error::DegenerateSlabs("extreme line has no real y for these signs".into())
    })?;
    let z_star = (kk - one) * p.c / (kk * p.b) * y_star;
    let r_star = real_root(bpow * p.c / p.d, km1)
        .ok_or_else(|| Error::DegenerateSlabs("surface does not recross z = 0".into()))?;

    let f = SlabPoly::new(p);
    let mut slab_roots = f.roots_of(T::zero());
    slab_roots.extend(f.roots_of(r_star));
    slab_roots.sort_by(|u, v| u.partial_cmp(v).unwrap());
    let expected_roots = 2 * symbol_count as usize;
    if slab_roots.len() != expected_roots {
        return Err(Error::DegenerateSlabs(format!(
            "expected {} distinct slab-equation roots, found {}",
            expected_roots,
            slab_roots.len()
        )));
    }
    for pair in slab_roots.windows(2) {
        if pair[1] - pair[0] <= T::lit(1e-10) * (one + pair[0].abs()) {
            return Err(Error::DegenerateSlabs(
                "slab-equation roots are not distinct".into(),
            ));
        }
    }

    // Bounded-orbit slabs. At the decoupled limit every bounded orbit has
    // |x_n| <= M and f(x_{n+1}) = -x_{n+3}/b, hence |b f(x)| <= M.
    let m = {
        let num = (p.r2() - p.b * p.c).abs() + one;
        (num / (p.b * p.d).abs()).powf(one / T::from_u32(km1).unwrap())
    };
    let wlo = -m / p.b.abs();
    let whi = m / p.b.abs();
    let mut cuts: Vec<T> = Vec::new();
    for t in [wlo, whi] {
        for r in f.roots_of(t) {
            if r.abs() <= m {
                cuts.push(r);
            }
        }
    }
    cuts.push(-m);
    cuts.push(m);
    cuts.sort_by(|u, v| u.partial_cmp(v).unwrap());
    let mut slabs: Vec<(T, T)> = Vec::new();
    for pair in cuts.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        if hi - lo <= T::lit(1e-12) * (one + lo.abs()) {
            continue;
        }
        let mid = (lo + hi) / T::of(2);
        let fm = f.eval(mid);
        if fm >= wlo && fm <= whi {
            match slabs.last_mut() {
                Some(prev) if (lo - prev.1).abs() <= T::lit(1e-10) * (one + lo.abs()) => {
                    prev.1 = hi;
                }
                _ => slabs.push((lo, hi)),
            }
        }
    }
    if slabs.len() != symbol_count as usize {
        return Err(Error::DegenerateSlabs(format!(
            "expected {} bounded-orbit slabs, found {}",
            symbol_count,
            slabs.len()
        )));
    }

    Ok(StripGeometry {
        y_star,
        z_star,
        r_star,
        slab_roots,
        slabs,
        bound: m,
        symbol_count,
    })
}

/// Sup-norms of the block quantities entering the hyperbolicity conditions,
/// evaluated over the (inflated) slab systems.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct HyperbolicityReport<T> {
    /// `min |b - c + k d x^(k-1)|` over the inflated strip-construction slabs.
    pub margin: T,
    /// Same minimum over the bounded-orbit slabs.
    pub dynamical_margin: T,
    /// `sup || (dG/dx)^-1 || = max(1/margin, 1/|b|)`.
    pub inv_g_norm: T,
    /// `sup || dH/dv ||`; identically zero for this family.
    pub h_v_norm: T,
    /// `sup || dG/dv ||`; identically zero for this family.
    pub g_v_norm: T,
    /// `sup || dH/dx (dG/dx)^-1 ||`.
    pub hx_inv_g_norm: T,
    pub condition6: bool,
    pub condition7: bool,
    pub condition8: bool,
    pub condition9: bool,
}

impl<T: Real> HyperbolicityReport<T> {
    pub fn all_conditions(&self) -> bool {
        self.condition6 && self.condition7 && self.condition8 && self.condition9
    }
}

/// Evaluates the hyperbolicity conditions in the sheared coordinates
/// `(x, y - z, y + z)`, where the decoupled map is
/// `(x, u, v) -> (-b u, (b - c) x + d x^k, (b + c) x - d x^k)`.
/// Since the v-derivatives vanish identically, everything reduces to
/// `min |f'| > 1` over the slabs and `|b| > 1`.
///
/// `slab_inflation` widens every slab by that fraction of the total root
/// span, standing in for the neighbourhood on which the sup-norms are taken.
pub fn hyperbolicity_margins<T: Real>(
    p: &MapParams<T>,
    geo: &StripGeometry<T>,
    slab_inflation: T,
) -> HyperbolicityReport<T> {
    let f = SlabPoly::new(p);
    let one = T::one();

    let span = geo
        .slab_roots
        .last()
        .map(|hi| *hi - geo.slab_roots[0])
        .unwrap_or_else(T::zero);
    let pad = slab_inflation * span;

    let printed_slabs: Vec<(T, T)> = geo
        .slab_roots
        .chunks(2)
        .map(|ch| (ch[0] - pad, ch[1] + pad))
        .collect();
    let dyn_pad = slab_inflation * geo.span();
    let dynamical_slabs: Vec<(T, T)> = geo
        .slabs
        .iter()
        .map(|(lo, hi)| (*lo - dyn_pad, *hi + dyn_pad))
        .collect();

    let min_abs_deriv = |slabs: &[(T, T)]| -> T {
        let mut m = T::infinity();
        for (lo, hi) in slabs {
            let mut candidates = vec![*lo, *hi];
            if *lo < T::zero() && *hi > T::zero() {
                candidates.push(T::zero());
            }
            for c in f.critical_points() {
                if c >= *lo && c <= *hi {
                    candidates.push(c);
                }
            }
            for x in candidates {
                m = m.min(f.deriv(x).abs());
            }
        }
        m
    };
    let margin = min_abs_deriv(&printed_slabs);
    let dynamical_margin = min_abs_deriv(&dynamical_slabs);

    // Sampled sup of |(b + c - k d x^(k-1)) / f'(x)| over the printed slabs.
    let kk = T::from_u32(p.k).unwrap();
    let mut hx_inv_g_norm = T::zero();
    for (lo, hi) in &printed_slabs {
        let steps = 2000usize;
        for i in 0..=steps {
            let x = *lo + (*hi - *lo) * T::from_usize(i).unwrap() / T::from_usize(steps).unwrap();
            let num = (p.b + p.c - kk * p.d * x.powi(p.k as i32 - 1)).abs();
            let den = f.deriv(x).abs();
            let v = if den == T::zero() {
                T::infinity()
            } else {
                num / den
            };
            hx_inv_g_norm = hx_inv_g_norm.max(v);
        }
    }

    let inv_g_norm = (one / margin).max(one / p.b.abs());
    let h_v_norm = T::zero();
    let g_v_norm = T::zero();
    let condition6 = inv_g_norm < one;
    let condition7 = h_v_norm < one;
    let condition8 =
        one - inv_g_norm * h_v_norm > T::of(2) * (hx_inv_g_norm * g_v_norm * inv_g_norm).sqrt();
    let condition9 = (one - inv_g_norm) * (one - h_v_norm) > hx_inv_g_norm * g_v_norm;

    HyperbolicityReport {
        margin,
        dynamical_margin,
        inv_g_norm,
        h_v_norm,
        g_v_norm,
        hx_inv_g_norm,
        condition6,
        condition7,
        condition8,
        condition9,
    }
}

/// Symbol sequence of an orbit: the index of the bounded-orbit slab holding
/// each state's x-coordinate. States outside every slab reject the orbit.
pub fn itinerary<T: Real>(geo: &StripGeometry<T>, orbit: &[State3<T>], slack: T) -> Result<Vec<u8>> {
    orbit
        .iter()
        .enumerate()
        .map(|(index, s)| {
            geo.slab_of(s.x, slack)
                .map(|i| i as u8)
                .ok_or(Error::OutOfSlab { index })
        })
        .collect()
}

/// A converged period-n orbit labelled by its symbol word.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodicOrbit<T> {
    pub word: Vec<u8>,
    pub states: Vec<State3<T>>,
}

/// Per-word failure in an enumeration run.
#[derive(Clone, Debug, Serialize)]
pub struct WordFailure {
    pub word: Vec<u8>,
    pub reason: String,
}

/// Result of enumerating all `s^n` words of one period.
#[derive(Clone, Debug, Serialize)]
pub struct Enumeration<T> {
    pub period: usize,
    pub expected: usize,
    pub orbits: Vec<PeriodicOrbit<T>>,
    pub failures: Vec<WordFailure>,
}

impl<T> Enumeration<T> {
    /// Every word converged to a distinct orbit.
    pub fn complete(&self) -> bool {
        self.failures.is_empty() && self.orbits.len() == self.expected
    }
}

/// Options for the multiple-shooting Newton enumeration.
#[derive(Clone, Copy, Debug)]
pub struct NewtonOptions<T> {
    pub max_iter: usize,
    /// Convergence threshold on the residual sup-norm.
    pub tol: T,
    /// Divergence threshold on the state sup-norm.
    pub divergence: T,
    /// Two orbits closer than this (pointwise sup over the cycle) collide.
    pub dedup_tol: T,
    /// Itinerary slack as a fraction of the slab span.
    pub itinerary_slack: T,
}

impl<T: Real> Default for NewtonOptions<T> {
    fn default() -> Self {
        Self {
            max_iter: 50,
            tol: T::lit(1e-12),
            divergence: T::lit(1e6),
            dedup_tol: T::lit(1e-8),
            itinerary_slack: T::lit(0.02),
        }
    }
}

/// Multiple-shooting Newton for a period-n orbit: unknowns are all n states,
/// residuals `F(s_i) - s_{i+1 mod n}`.
pub fn newton_periodic<T: Real + RealField>(
    p: &MapParams<T>,
    mut states: Vec<State3<T>>,
    opts: &NewtonOptions<T>,
) -> Result<Vec<State3<T>>> {
    let n = states.len();
    let dim = 3 * n;
    for _ in 0..opts.max_iter {
        let mut res = DVector::<T>::zeros(dim);
        let mut worst = T::zero();
        for i in 0..n {
            let next = step(p, &states[i]);
            let target = states[(i + 1) % n];
            let r = [next.x - target.x, next.y - target.y, next.z - target.z];
            for (j, v) in r.iter().enumerate() {
                res[3 * i + j] = *v;
                worst = Float::max(worst, Float::abs(*v));
            }
        }
        if !worst.is_finite() {
            return Err(Error::NewtonFailed("non-finite residual".into()));
        }
        if worst < opts.tol {
            return Ok(states);
        }
        let mut jac = DMatrix::<T>::zeros(dim, dim);
        for i in 0..n {
            let df = jacobian(p, states[i].x);
            for r in 0..3 {
                for c in 0..3 {
                    jac[(3 * i + r, 3 * i + c)] += df[(r, c)];
                }
            }
            let j = (i + 1) % n;
            for r in 0..3 {
                jac[(3 * i + r, 3 * j + r)] -= T::one();
            }
        }
        let delta = jac
            .lu()
            .solve(&(-res))
            .ok_or_else(|| Error::NewtonFailed("singular shooting Jacobian".into()))?;
        for i in 0..n {
            states[i].x += delta[3 * i];
            states[i].y += delta[3 * i + 1];
            states[i].z += delta[3 * i + 2];
            if Float::abs(states[i].x) > opts.divergence
                || Float::abs(states[i].y) > opts.divergence
                || Float::abs(states[i].z) > opts.divergence
            {
                return Err(Error::NewtonFailed("iterates diverged".into()));
            }
        }
    }
    Err(Error::NewtonFailed(format!(
        "no convergence in {} iterations",
        opts.max_iter
    )))
}

/// Solves `g(xi) = target` for `xi` in the given slab (`g = -b f` is
/// monotone there); the target is clamped into the attainable range.
fn branch_inverse<T: Real>(f: &SlabPoly<T>, b: T, slab: (T, T), target: T) -> T {
    let g = |x: T| -b * f.eval(x);
    let (mut lo, mut hi) = slab;
    if g(lo) > g(hi) {
        std::mem::swap(&mut lo, &mut hi);
    }
    let t = target.max(g(lo)).min(g(hi));
    for _ in 0..120 {
        let mid = (lo + hi) / T::of(2);
        if mid == lo || mid == hi {
            break;
        }
        if g(mid) < t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / T::of(2)
}

/// Seed x-window for a symbol word: slab representatives refined by
/// pulling back along the branch inverses of the decoupled scalar map
/// (`x_i` solves `g(x_i) = x_{i+2}` within slab `word[i]`).
fn seed_window<T: Real>(p: &MapParams<T>, geo: &StripGeometry<T>, word: &[u8]) -> Vec<T> {
    let f = SlabPoly::new(p);
    let n = word.len();
    let mut xs: Vec<T> = word
        .iter()
        .map(|&s| {
            let (lo, hi) = geo.slabs[s as usize];
            (lo + hi) / T::of(2)
        })
        .collect();
    for _ in 0..80 {
        let prev = xs.clone();
        for i in 0..n {
            let target = prev[(i + 2) % n];
            xs[i] = branch_inverse(&f, p.b, geo.slabs[word[i] as usize], target);
        }
        let delta = xs
            .iter()
            .zip(&prev)
            .map(|(u, v)| (*u - *v).abs())
            .fold(T::zero(), T::max);
        if delta < T::lit(1e-13) {
            break;
        }
    }
    xs
}

/// Enumerates period-n orbits for every symbol word of length `n`.
///
/// Each word is seeded from the decoupled scalar dynamics, lifted to phase
/// space, and polished by multiple-shooting Newton with the actual
/// parameters (which may carry small nonzero `a`, `e`). A converged orbit
/// must reproduce its word as itinerary; colliding orbits are reported as
/// failures.
pub fn enumerate_periodic<T: Real + RealField>(
    p: &MapParams<T>,
    geo: &StripGeometry<T>,
    n: usize,
    opts: &NewtonOptions<T>,
) -> Enumeration<T> {
    let s = geo.symbol_count as usize;
    let expected = s.pow(n as u32);
    let words: Vec<Vec<u8>> = (0..expected)
        .map(|mut idx| {
            let mut w = vec![0u8; n];
            for slot in w.iter_mut().rev() {
                *slot = (idx % s) as u8;
                idx /= s;
            }
            w
        })
        .collect();

    let slack = opts.itinerary_slack * geo.span();
    let results: Vec<std::result::Result<PeriodicOrbit<T>, WordFailure>> = words
        .par_iter()
        .map(|word| {
            let xs = seed_window(p, geo, word);
            let states = lift_window_unchecked(&xs, p);
            match newton_periodic(p, states, opts) {
                Ok(states) => match itinerary(geo, &states, slack) {
                    Ok(itin) if itin == *word => Ok(PeriodicOrbit {
                        word: word.clone(),
                        states,
                    }),
                    Ok(itin) => Err(WordFailure {
                        word: word.clone(),
                        reason: format!("converged onto itinerary {itin:?}"),
                    }),
                    Err(err) => Err(WordFailure {
                        word: word.clone(),
                        reason: err.to_string(),
                    }),
                },
                Err(err) => Err(WordFailure {
                    word: word.clone(),
                    reason: err.to_string(),
                }),
            }
        })
        .collect();

    let mut orbits = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(orbit) => orbits.push(orbit),
            Err(f) => failures.push(f),
        }
    }

    // Pairwise distinctness of the converged orbits.
    for i in 0..orbits.len() {
        for j in (i + 1)..orbits.len() {
            let dist = orbits[i]
                .states
                .iter()
                .zip(&orbits[j].states)
                .map(|(u, v)| u.dist_inf(v))
                .fold(T::zero(), Float::max);
            if dist < opts.dedup_tol {
                failures.push(WordFailure {
                    word: orbits[j].word.clone(),
                    reason: format!(
                        "collides with orbit of word {:?} (distance {:e})",
                        orbits[i].word,
                        dist.to_f64().unwrap_or(f64::NAN)
                    ),
                });
            }
        }
    }

    Enumeration {
        period: n,
        expected,
        orbits,
        failures,
    }
}
