//! Orbits as solutions of a scalar difference equation, and continuation of
//! symbolic orbits from the decoupled (anti-integrable) limit.
//!
//! Eliminating y and z from the map turns a full orbit into an x-sequence
//! satisfying, for every n,
//!
//! ```text
//! d x_{n+1}^k - (e(a^2+b^2)/b) x_n + ((a^2+b^2-bc+2ae)/b) x_{n+1}
//!             - ((2a+e)/b) x_{n+2} + (1/b) x_{n+3} = 0,
//! ```
//!
//! with the phase-space orbit recovered from
//! `y_{n+1} = ((a^2+b^2) x_n - a x_{n+1})/b` and
//! `z_{n+1} = ((a^2+b^2) x_n - 2a x_{n+1} + x_{n+2})/b`.
//!
//! Dividing the difference equation by `d` and sending the routed
//! parameters to infinity leaves the one-variable limit function
//! `psi(x) = x (x^(k-1) - A)`: its simple zeros (two for even `k`, three
//! for odd `k` and `A > 0`) seed symbol-wise Newton continuation of
//! periodic windows for small values of the route parameter `lambda`.
//!
//! Two routes are supported. On the [`Route::C`] route `c` and `d` blow up
//! with `A = c/d` fixed and `lambda = 1/c`; the scaled equation is exactly
//! `psi(x_{n+1}) + (1/d) (linear terms) = 0`. On the [`Route::B`] route
//! `b` and `d` blow up with `B = b/d` fixed, `lambda = 1/d`, and `e` kept
//! as an explicit small parameter; the same scaling yields the limit
//! function `x (x^(k-1) + B)`, i.e. `A = -B`, which has the full zero set
//! for even `k` (any nonzero `B`) and for odd `k` only when `B < 0`.

use nalgebra::{DMatrix, DVector, RealField};
use num_traits::Float;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::{nonwandering_box, MapParams, State3};
use crate::num::{real_root, Real};

/// Periodic window of x-coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XWindow<T> {
    pub values: Vec<T>,
}

impl<T: Real> XWindow<T> {
    pub fn new(values: Vec<T>) -> Self {
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Componentwise sup-distance at fixed alignment.
    pub fn dist_inf(&self, other: &Self) -> T {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(u, v)| (*u - *v).abs())
            .fold(T::zero(), T::max)
    }
}

/// One residual per window index; all residuals vanish exactly when the
/// lifted sequence is an orbit of the map.
pub fn residual<T: Real>(p: &MapParams<T>, w: &XWindow<T>) -> Vec<T> {
    let n = w.len();
    let xs = &w.values;
    let two = T::of(2);
    let r2 = p.r2();
    let c0 = -p.e * r2 / p.b;
    let c1 = (r2 - p.b * p.c + two * p.a * p.e) / p.b;
    let c2 = -(two * p.a + p.e) / p.b;
    let c3 = T::one() / p.b;
    (0..n)
        .map(|m| {
            let x1 = xs[(m + 1) % n];
            p.d * x1.powi(p.k as i32) + c0 * xs[m] + c1 * x1 + c2 * xs[(m + 2) % n]
                + c3 * xs[(m + 3) % n]
        })
        .collect()
}

/// Sup-norm of the residual vector.
pub fn residual_inf_norm<T: Real>(p: &MapParams<T>, w: &XWindow<T>) -> T {
    residual(p, w)
        .into_iter()
        .map(|r| r.abs())
        .fold(T::zero(), T::max)
}

/// Reconstructs the phase-space window from x-coordinates without checking
/// that the window solves the difference equation.
pub fn lift_window_unchecked<T: Real>(xs: &[T], p: &MapParams<T>) -> Vec<State3<T>> {
    let n = xs.len();
    let r2 = p.r2();
    let two = T::of(2);
    (0..n)
        .map(|i| {
            let prev = xs[(i + n - 1) % n];
            let next = xs[(i + 1) % n];
            State3::new(
                xs[i],
                (r2 * prev - p.a * xs[i]) / p.b,
                (r2 * prev - two * p.a * xs[i] + next) / p.b,
            )
        })
        .collect()
}

/// Lifts a verified window to a genuine periodic orbit of the map. The
/// residual sup-norm must not exceed `tol`; the lift's orbit defect equals
/// the residual (index-shifted), so the lifted sequence satisfies
/// `F(s_i) = s_{i+1}` to the same accuracy.
pub fn lift_orbit<T: Real>(
    w: &XWindow<T>,
    p: &MapParams<T>,
    tol: T,
) -> Result<Vec<State3<T>>> {
    let norm = residual_inf_norm(p, w);
    if norm > tol {
        return Err(Error::ResidualTooLarge {
            norm: norm.to_f64().unwrap_or(f64::NAN),
            tol: tol.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(lift_window_unchecked(&w.values, p))
}

/// x-coordinates of a phase-space orbit.
pub fn project_orbit<T: Real>(orbit: &[State3<T>]) -> XWindow<T> {
    XWindow::new(orbit.iter().map(|s| s.x).collect())
}

/// Which pair of parameters is driven to infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    /// `c, d -> infinity` with `c/d` fixed; `lambda = 1/c`.
    C,
    /// `b, d -> infinity` with `b/d` fixed and small `e`; `lambda = 1/d`.
    B,
}

/// A continuation route with its ratio, small parameter, and the fixed
/// (unscaled) map parameters.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub enum RouteSpec<T> {
    CRoute {
        /// `A = c/d > 0` (odd k) or any nonzero value (even k).
        ratio: T,
        /// `1/c`; nonzero and below the continuation ceiling.
        lambda: T,
        a: T,
        b: T,
        e: T,
    },
    BRoute {
        /// `B = b/d`; the limit function is `x (x^(k-1) + B)`.
        ratio: T,
        /// `1/d`.
        lambda: T,
        a: T,
        c: T,
        /// Explicit small parameter of this route.
        e: T,
    },
}

impl<T: Real> RouteSpec<T> {
    pub fn route(&self) -> Route {
        match self {
            RouteSpec::CRoute { .. } => Route::C,
            RouteSpec::BRoute { .. } => Route::B,
        }
    }

    pub fn lambda(&self) -> T {
        match self {
            RouteSpec::CRoute { lambda, .. } | RouteSpec::BRoute { lambda, .. } => *lambda,
        }
    }

    /// Coefficient `A` of the limit function `psi(x) = x (x^(k-1) - A)`.
    pub fn psi_coeff(&self) -> T {
        match self {
            RouteSpec::CRoute { ratio, .. } => *ratio,
            RouteSpec::BRoute { ratio, .. } => -*ratio,
        }
    }

    /// The finite-parameter map this route value corresponds to.
    pub fn map_params(&self, k: u32) -> Result<MapParams<T>> {
        let lambda = self.lambda();
        if lambda == T::zero() {
            return Err(Error::LambdaRejected {
                lambda: 0.0,
                reason: "no real map corresponds to the limit value".into(),
            });
        }
        match *self {
            RouteSpec::CRoute { ratio, a, b, e, .. } => {
                if ratio == T::zero() {
                    return Err(Error::InvalidParams("route ratio must be nonzero".into()));
                }
                MapParams::new(a, b, T::one() / lambda, T::one() / (ratio * lambda), e, k)
            }
            RouteSpec::BRoute { ratio, a, c, e, .. } => {
                if ratio == T::zero() {
                    return Err(Error::InvalidParams("route ratio must be nonzero".into()));
                }
                MapParams::new(a, ratio / lambda, c, T::one() / lambda, e, k)
            }
        }
    }
}

/// Alphabet size induced by the exponent: 2 for even `k`, 3 for odd `k`.
pub fn alphabet_size(k: u32) -> u8 {
    if k % 2 == 0 {
        2
    } else {
        3
    }
}

/// Zeros of the limit function indexed by symbol: 0 maps to the origin,
/// 1 to the positive branch root, 2 (odd `k` only) to the negative one.
fn symbol_targets<T: Real>(psi_coeff: T, k: u32) -> Result<Vec<T>> {
    let zero = T::zero();
    if k % 2 == 0 {
        if psi_coeff == zero {
            return Err(Error::SeedUnavailable(
                "limit function x^k has no second simple zero".into(),
            ));
        }
        let root = real_root(psi_coeff, k - 1).unwrap();
        Ok(vec![zero, root])
    } else {
        if psi_coeff <= zero {
            return Err(Error::SeedUnavailable(format!(
                "odd k needs a positive limit coefficient, got {}",
                psi_coeff.to_f64().unwrap_or(f64::NAN)
            )));
        }
        let root = real_root(psi_coeff, k - 1).unwrap();
        Ok(vec![zero, root, -root])
    }
}

fn validate_word(word: &[u8], alphabet: u8) -> Result<()> {
    if word.is_empty() {
        return Err(Error::InvalidWord("empty word".into()));
    }
    if let Some(sym) = word.iter().find(|s| **s >= alphabet) {
        return Err(Error::InvalidWord(format!(
            "symbol {sym} outside alphabet 0..{alphabet}"
        )));
    }
    Ok(())
}

/// Anti-integrable seed: each symbol is replaced by the corresponding
/// simple zero of the limit function.
pub fn seed<T: Real>(word: &[u8], route: &RouteSpec<T>, k: u32) -> Result<XWindow<T>> {
    validate_word(word, alphabet_size(k))?;
    let targets = symbol_targets(route.psi_coeff(), k)?;
    Ok(XWindow::new(
        word.iter().map(|&s| targets[s as usize]).collect(),
    ))
}

/// Newton options for window continuation.
#[derive(Clone, Copy, Debug)]
pub struct ContinuationOptions<T> {
    pub max_iter: usize,
    /// Convergence threshold on the scaled residual sup-norm.
    pub tol: T,
    /// Divergence threshold on the window sup-norm.
    pub divergence: T,
    /// Largest admissible |lambda|.
    pub lambda_ceiling: T,
    /// Windows closer than this (sup-distance) count as colliding.
    pub distinct_tol: T,
    /// Tolerance for lifting continued windows to orbits.
    pub lift_tol: T,
}

impl<T: Real> Default for ContinuationOptions<T> {
    fn default() -> Self {
        Self {
            max_iter: 50,
            tol: T::lit(1e-12),
            divergence: T::lit(1e6),
            lambda_ceiling: T::lit(0.05),
            distinct_tol: T::lit(1e-6),
            lift_tol: T::lit(1e-9),
        }
    }
}

/// Continues the periodic window for one symbol word from its seed down to
/// the finite parameters of the route, by Newton iteration on the
/// `1/d`-scaled difference equation.
pub fn continue_orbit<T: Real + RealField>(
    word: &[u8],
    route: &RouteSpec<T>,
    k: u32,
    opts: &ContinuationOptions<T>,
) -> Result<XWindow<T>> {
    let lambda = route.lambda();
    if Float::abs(lambda) > opts.lambda_ceiling {
        return Err(Error::LambdaRejected {
            lambda: lambda.to_f64().unwrap_or(f64::NAN),
            reason: format!(
                "above the continuation ceiling {}",
                opts.lambda_ceiling.to_f64().unwrap_or(f64::NAN)
            ),
        });
    }
    let p = route.map_params(k)?;
    let mut w = seed(word, route, k)?;
    newton_window(&p, &mut w, opts)?;
    Ok(w)
}

/// Newton iteration on the scaled residual of a periodic window, for the
/// given finite parameters. The Jacobian is cyclic-banded with bandwidth 3
/// (assembled dense; windows here are short).
fn newton_window<T: Real + RealField>(
    p: &MapParams<T>,
    w: &mut XWindow<T>,
    opts: &ContinuationOptions<T>,
) -> Result<()> {
    let n = w.len();
    let scale = T::one() / p.d;
    let two = T::of(2);
    let r2 = p.r2();
    let c0 = -p.e * r2 / p.b * scale;
    let c1_lin = (r2 - p.b * p.c + two * p.a * p.e) / p.b * scale;
    let c2 = -(two * p.a + p.e) / p.b * scale;
    let c3 = T::one() / p.b * scale;
    let kk = T::from_u32(p.k).unwrap();

    for _ in 0..opts.max_iter {
        let res_raw = residual(p, w);
        let mut worst = T::zero();
        let mut res = DVector::<T>::zeros(n);
        for (m, r) in res_raw.iter().enumerate() {
            let scaled = *r * scale;
            res[m] = scaled;
            worst = Float::max(worst, Float::abs(scaled));
        }
        if !worst.is_finite() {
            return Err(Error::NewtonFailed("non-finite residual".into()));
        }
        if worst < opts.tol {
            return Ok(());
        }
        let mut jac = DMatrix::<T>::zeros(n, n);
        for m in 0..n {
            let x1 = w.values[(m + 1) % n];
            jac[(m, m)] += c0;
            jac[(m, (m + 1) % n)] +=
                kk * p.d * Float::powi(x1, p.k as i32 - 1) * scale + c1_lin;
            jac[(m, (m + 2) % n)] += c2;
            jac[(m, (m + 3) % n)] += c3;
        }
        let delta = jac
            .lu()
            .solve(&(-res))
            .ok_or_else(|| Error::NewtonFailed("singular window Jacobian".into()))?;
        for i in 0..n {
            w.values[i] += delta[i];
            if Float::abs(w.values[i]) > opts.divergence {
                return Err(Error::NewtonFailed("window diverged".into()));
            }
        }
    }
    Err(Error::NewtonFailed(format!(
        "no convergence in {} iterations",
        opts.max_iter
    )))
}

/// Counts for one period of the shift-conjugacy witness.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PeriodCount {
    pub period: usize,
    pub expected: usize,
    pub converged_distinct: usize,
}

/// Per-word failure record.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessFailure {
    pub word: Vec<u8>,
    pub reason: String,
}

/// Outcome of running the continuation over every word up to a period.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport<T> {
    pub counts: Vec<PeriodCount>,
    pub failures: Vec<WitnessFailure>,
    /// All words of all periods converged, stayed distinct, lifted to
    /// genuine orbits, and remained inside the nonwandering box.
    pub ok: bool,
    #[serde(skip)]
    pub windows: Vec<(Vec<u8>, XWindow<T>)>,
}

/// Runs [`continue_orbit`] on every word of period `1..=n_max` and checks
/// the full-shift count `s^n`: all words must converge to pairwise distinct
/// windows whose lifts are genuine periodic orbits inside the nonwandering
/// box.
pub fn conjugacy_witness<T: Real + RealField>(
    route: &RouteSpec<T>,
    k: u32,
    n_max: usize,
    opts: &ContinuationOptions<T>,
) -> Result<WitnessReport<T>> {
    let s = alphabet_size(k) as usize;
    let p = route.map_params(k)?;
    // Extremal orbits can saturate the box bound exactly (equality is part
    // of the bound); a few ulps of slack keep the containment check honest.
    let bx = nonwandering_box(&p).inflate(T::one() + T::lit(1e-12));
    let mut counts = Vec::new();
    let mut failures = Vec::new();
    let mut windows = Vec::new();

    for n in 1..=n_max {
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
        let outcomes: Vec<(Vec<u8>, Result<XWindow<T>>)> = words
            .par_iter()
            .map(|word| (word.clone(), continue_orbit(word, route, k, opts)))
            .collect();

        let mut converged: Vec<(Vec<u8>, XWindow<T>)> = Vec::new();
        for (word, outcome) in outcomes {
            match outcome {
                Ok(window) => match lift_orbit(&window, &p, opts.lift_tol) {
                    Ok(states) => {
                        if let Some(bad) = states.iter().find(|s| !bx.contains(s)) {
                            failures.push(WitnessFailure {
                                word,
                                reason: format!("orbit leaves nonwandering box at {bad:?}"),
                            });
                        } else {
                            converged.push((word, window));
                        }
                    }
                    Err(err) => failures.push(WitnessFailure {
                        word,
                        reason: err.to_string(),
                    }),
                },
                Err(err) => failures.push(WitnessFailure {
                    word,
                    reason: err.to_string(),
                }),
            }
        }

        let mut distinct = converged.len();
        for i in 0..converged.len() {
            for j in (i + 1)..converged.len() {
                if converged[i].1.dist_inf(&converged[j].1) < opts.distinct_tol {
                    failures.push(WitnessFailure {
                        word: converged[j].0.clone(),
                        reason: format!("window collides with word {:?}", converged[i].0),
                    });
                    distinct -= 1;
                }
            }
        }

        counts.push(PeriodCount {
            period: n,
            expected,
            converged_distinct: distinct,
        });
        windows.extend(converged);
    }

    let ok = failures.is_empty()
        && counts
            .iter()
            .all(|c| c.converged_distinct == c.expected);
    Ok(WitnessReport {
        counts,
        failures,
        ok,
        windows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibria::{equilibria, symmetric_period2};
    use crate::map::{evaluate, iterate, nonwandering_box};

    fn params(a: f64, b: f64, c: f64, d: f64, e: f64, k: u32) -> MapParams<f64> {
        MapParams::new(a, b, c, d, e, k).unwrap()
    }

    #[test]
    fn residual_vanishes_on_fixed_point_window() {
        let p = params(0.6, 0.5, 1.0, 1.0, 1.0, 3);
        let set = equilibria(&p);
        let x1 = set.nontrivial[0].x;
        let w = XWindow::new(vec![x1; 5]);
        assert!(residual_inf_norm(&p, &w) < 1e-10);
        let w = XWindow::new(vec![0.0; 4]);
        assert_eq!(residual_inf_norm(&p, &w), 0.0);
    }

    #[test]
    fn residual_vanishes_on_period2_window() {
        let p = params(0.3, 0.8, 9.0, 1.0, 0.25, 3);
        let set = symmetric_period2(&p);
        let x2 = set.points.expect("period-2 pair exists")[0].x;
        let w = XWindow::new(vec![x2, -x2]);
        assert!(residual_inf_norm(&p, &w) < 1e-10);
    }

    #[test]
    fn lift_constant_window_is_fixed_point() {
        let p = params(0.6, 0.5, 1.0, 1.0, 1.0, 3);
        let set = equilibria(&p);
        let p1 = set.nontrivial[0];
        let w = XWindow::new(vec![p1.x; 3]);
        let orbit = lift_orbit(&w, &p, 1e-9).unwrap();
        for s in &orbit {
            assert!(s.dist_inf(&p1) < 1e-12);
        }
    }

    #[test]
    fn lift_refuses_non_orbit_window() {
        let p = params(0.6, 0.5, 1.0, 1.0, 1.0, 3);
        let w = XWindow::new(vec![0.3, -0.7, 1.1]);
        assert!(matches!(
            lift_orbit(&w, &p, 1e-9),
            Err(Error::ResidualTooLarge { .. })
        ));
    }

    #[test]
    fn project_then_lift_round_trip() {
        // A genuine periodic orbit: the period-2 pair.
        let p = params(0.3, 0.8, 9.0, 1.0, 0.25, 3);
        let [p2, m2] = symmetric_period2(&p).points.unwrap();
        let orbit = vec![p2, m2];
        let w = project_orbit(&orbit);
        let lifted = lift_orbit(&w, &p, 1e-9).unwrap();
        for (u, v) in orbit.iter().zip(&lifted) {
            assert!(u.dist_inf(v) < 1e-10);
        }
        // Lifted states really map onto each other.
        for i in 0..2 {
            let next = evaluate(&p, &lifted[i]).unwrap();
            assert!(next.dist_inf(&lifted[(i + 1) % 2]) < 1e-9);
        }
    }

    #[test]
    fn seeds_match_limit_zeros() {
        let route = RouteSpec::CRoute {
            ratio: 1.0,
            lambda: 0.01,
            a: 0.0,
            b: 1.0,
            e: 0.0,
        };
        let w = seed(&[0], &route, 3).unwrap();
        assert_eq!(w.values, vec![0.0]);
        let w = seed(&[1, 2], &route, 3).unwrap();
        assert_eq!(w.values, vec![1.0, -1.0]);

        let route4 = RouteSpec::CRoute {
            ratio: 4.0,
            lambda: 0.01,
            a: 0.0,
            b: 1.0,
            e: 0.0,
        };
        let w = seed(&[1], &route4, 2).unwrap();
        assert_eq!(w.values, vec![4.0]);
    }

    #[test]
    fn seed_rejects_bad_alphabet_and_coefficients() {
        let route = RouteSpec::CRoute {
            ratio: 1.0,
            lambda: 0.01,
            a: 0.0,
            b: 1.0,
            e: 0.0,
        };
        assert!(matches!(
            seed(&[2], &route, 2),
            Err(Error::InvalidWord(_))
        ));
        let bad = RouteSpec::CRoute {
            ratio: -1.0,
            lambda: 0.01,
            a: 0.0,
            b: 1.0,
            e: 0.0,
        };
        assert!(matches!(
            seed(&[1], &bad, 3),
            Err(Error::SeedUnavailable(_))
        ));
    }

    fn acceptance_route(lambda: f64) -> RouteSpec<f64> {
        RouteSpec::CRoute {
            ratio: 1.0,
            lambda,
            a: 0.0,
            b: 1.0,
            e: 0.0,
        }
    }

    #[test]
    fn constant_word_matches_closed_form() {
        // k=3, A=1, lambda=0.01: the fixed-point window solves
        // x (x^2 - 1) + 2 lambda x = 0, i.e. x = sqrt(1 - 2 lambda).
        let opts = ContinuationOptions::default();
        let w = continue_orbit(&[1], &acceptance_route(0.01), 3, &opts).unwrap();
        let expect = (1.0f64 - 0.02).sqrt();
        assert!(
            (w.values[0] - expect).abs() < 1e-9,
            "got {} expected {}",
            w.values[0],
            expect
        );
        // Symbol 0 stays at the origin for every lambda.
        let w = continue_orbit(&[0], &acceptance_route(0.01), 3, &opts).unwrap();
        assert!(w.values[0].abs() < 1e-12);
    }

    #[test]
    fn lambda_validation() {
        let opts = ContinuationOptions::default();
        assert!(matches!(
            continue_orbit(&[1], &acceptance_route(0.0), 3, &opts),
            Err(Error::LambdaRejected { .. })
        ));
        assert!(matches!(
            continue_orbit(&[1], &acceptance_route(0.2), 3, &opts),
            Err(Error::LambdaRejected { .. })
        ));
    }

    #[test]
    fn continued_orbits_are_genuine_and_boxed() {
        let route = acceptance_route(0.01);
        let opts = ContinuationOptions::default();
        let p = route.map_params(3).unwrap();
        let bx = nonwandering_box(&p);
        for word in [&[1u8][..], &[1, 2], &[0, 1, 2], &[2, 2, 1, 0]] {
            let w = continue_orbit(word, &route, 3, &opts).unwrap();
            let orbit = lift_orbit(&w, &p, 1e-9).unwrap();
            let n = orbit.len();
            for i in 0..n {
                let next = evaluate(&p, &orbit[i]).unwrap();
                assert!(next.dist_inf(&orbit[(i + 1) % n]) < 1e-9);
                assert!(bx.contains(&orbit[i]));
            }
        }
    }

    #[test]
    fn shift_equivariance() {
        let route = acceptance_route(0.01);
        let opts = ContinuationOptions::default();
        let word = [1u8, 0, 2, 1];
        let w = continue_orbit(&word, &route, 3, &opts).unwrap();
        let mut rotated_word = word.to_vec();
        rotated_word.rotate_left(1);
        let w_rot = continue_orbit(&rotated_word, &route, 3, &opts).unwrap();
        let mut expect = w.values.clone();
        expect.rotate_left(1);
        for (u, v) in expect.iter().zip(&w_rot.values) {
            assert!((u - v).abs() < 1e-9);
        }
    }

    #[test]
    fn windows_converge_to_seed_as_lambda_vanishes() {
        let opts = ContinuationOptions::default();
        let word = [1u8, 2, 0, 1];
        let mut prev_dist = f64::INFINITY;
        for lambda in [1e-2, 1e-3, 1e-4] {
            let route = acceptance_route(lambda);
            let w = continue_orbit(&word, &route, 3, &opts).unwrap();
            let sd = seed(&word, &route, 3).unwrap();
            let dist = w.dist_inf(&sd);
            assert!(dist < prev_dist, "distance not shrinking at {lambda}");
            prev_dist = dist;
        }
        assert!(prev_dist < 1e-3);
    }

    #[test]
    fn witness_counts_small_periods() {
        let route = acceptance_route(0.01);
        let report = conjugacy_witness(&route, 3, 2, &ContinuationOptions::default()).unwrap();
        assert!(report.ok, "failures: {:?}", report.failures);
        assert_eq!(report.counts[0].converged_distinct, 3);
        assert_eq!(report.counts[1].converged_distinct, 9);
    }

    #[test]
    fn even_k_witness_counts() {
        let route = RouteSpec::CRoute {
            ratio: 1.0,
            lambda: 0.01,
            a: 0.0,
            b: 1.0,
            e: 0.0,
        };
        let report = conjugacy_witness(&route, 2, 3, &ContinuationOptions::default()).unwrap();
        assert!(report.ok, "failures: {:?}", report.failures);
        let expect = [2usize, 4, 8];
        for (count, e) in report.counts.iter().zip(expect) {
            assert_eq!(count.converged_distinct, e);
        }
    }

    #[test]
    fn b_route_produces_genuine_orbits() {
        // Even k with B = b/d = 1: b = 100, d = 100, c and a fixed, small e.
        let route = RouteSpec::BRoute {
            ratio: 1.0,
            lambda: 0.01,
            a: 0.1,
            c: 0.3,
            e: 0.005,
        };
        let opts = ContinuationOptions::default();
        let p = route.map_params(2).unwrap();
        assert_eq!(p.b, 100.0);
        assert_eq!(p.d, 100.0);
        for word in [&[0u8][..], &[1], &[0, 1], &[1, 1, 0]] {
            let w = continue_orbit(word, &route, 2, &opts).unwrap();
            let orbit = lift_orbit(&w, &p, 1e-9).unwrap();
            let n = orbit.len();
            for i in 0..n {
                let next = evaluate(&p, &orbit[i]).unwrap();
                assert!(
                    next.dist_inf(&orbit[(i + 1) % n]) < 1e-9,
                    "word {word:?} lift defect too large"
                );
            }
        }
        let report = conjugacy_witness(&route, 2, 3, &opts).unwrap();
        assert!(report.ok, "failures: {:?}", report.failures);
    }

    #[test]
    fn b_route_odd_k_needs_negative_ratio() {
        let bad = RouteSpec::BRoute {
            ratio: 1.0,
            lambda: 0.01,
            a: 0.0,
            c: 0.3,
            e: 0.0,
        };
        assert!(matches!(
            seed(&[1], &bad, 3),
            Err(Error::SeedUnavailable(_))
        ));
        // B < 0 restores the three zeros; continuation works.
        let route = RouteSpec::BRoute {
            ratio: -1.0,
            lambda: 0.01,
            a: 0.0,
            c: 0.3,
            e: 0.0,
        };
        let opts = ContinuationOptions::default();
        let report = conjugacy_witness(&route, 3, 2, &opts).unwrap();
        assert!(report.ok, "failures: {:?}", report.failures);
        assert_eq!(report.counts[1].converged_distinct, 9);
    }

    #[test]
    fn continued_windows_track_bounded_orbits() {
        // Project a bounded orbit, re-lift, compare.
        let p = params(0.6, 0.5, 1.0, 1.0, 1.0, 3);
        let set = equilibria(&p);
        let p1 = set.nontrivial[0];
        let bx = nonwandering_box(&p);
        let r = iterate(&p, &p1, 64, &bx, 10.0);
        assert!(!r.escaped);
        let w = project_orbit(&r.states[..64]);
        // This window is periodic only because the orbit is a fixed point;
        // the residual must vanish accordingly.
        assert!(residual_inf_norm(&p, &w) < 1e-9);
    }
}
