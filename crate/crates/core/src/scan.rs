//! Numerical phenomenology: bifurcation diagrams, Lyapunov exponents,
//! Poincare sections, period detection and attractor sampling.
//!
//! Everything here is plain forward iteration with explicit, configurable
//! transients and escape handling; sweep points are independent and run in
//! parallel, with results returned in sweep order.

use nalgebra::{Matrix3, RealField};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::equilibria::{equilibria, nontrivial_x};
use crate::error::{Error, Result};
use crate::map::{jacobian, nonwandering_box, step, MapParams, State3};
use crate::num::Real;

/// Which parameter a sweep varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepParam {
    C,
    E,
}

/// How the per-point seed state is chosen.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub enum SeedSpec<T> {
    /// A fixed explicit state.
    Explicit(State3<T>),
    /// The nontrivial fixed point when it exists, otherwise the origin,
    /// offset by the given amount in every coordinate.
    NearEquilibrium { offset: T },
}

impl<T: Real> SeedSpec<T> {
    /// Resolves the seed for a concrete parameter point.
    pub fn resolve(&self, p: &MapParams<T>) -> State3<T> {
        match self {
            SeedSpec::Explicit(s) => *s,
            SeedSpec::NearEquilibrium { offset } => {
                let base = match nontrivial_x(p) {
                    Some(_) => equilibria(p).nontrivial[0],
                    None => State3::origin(),
                };
                State3::new(base.x + *offset, base.y + *offset, base.z + *offset)
            }
        }
    }
}

/// Sweep configuration for bifurcation diagrams.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ScanConfig<T> {
    pub sweep: SweepParam,
    pub from: T,
    pub to: T,
    pub steps: usize,
    /// Iterations discarded before sampling.
    pub transient: usize,
    /// Number of post-transient samples recorded.
    pub samples: usize,
    pub seed: SeedSpec<T>,
    /// Escape box inflation factor applied to the nonwandering box.
    pub escape_inflation: T,
}

impl<T: Real> ScanConfig<T> {
    pub fn new(sweep: SweepParam, from: T, to: T, steps: usize) -> Self {
        Self {
            sweep,
            from,
            to,
            steps,
            transient: 10_000,
            samples: 1_000,
            seed: SeedSpec::NearEquilibrium { offset: T::lit(1e-8) },
            escape_inflation: T::of(10),
        }
    }

    pub fn value_at(&self, i: usize) -> T {
        if self.steps <= 1 {
            return self.from;
        }
        let f = T::from_usize(i).unwrap() / T::from_usize(self.steps - 1).unwrap();
        self.from + f * (self.to - self.from)
    }

    pub fn params_at(&self, base: &MapParams<T>, i: usize) -> MapParams<T> {
        let v = self.value_at(i);
        let mut p = *base;
        match self.sweep {
            SweepParam::C => p.c = v,
            SweepParam::E => p.e = v,
        }
        p
    }
}

/// One sweep point of a bifurcation diagram: the post-transient x-samples.
#[derive(Clone, Debug, Serialize)]
pub struct SweepPoint<T> {
    pub value: T,
    pub escaped: bool,
    pub samples: Vec<T>,
}

/// Runs the sweep; escapes are recorded per point, never fatal.
pub fn bifurcation_diagram<T: Real>(
    base: &MapParams<T>,
    cfg: &ScanConfig<T>,
) -> Vec<SweepPoint<T>> {
    (0..cfg.steps)
        .into_par_iter()
        .map(|i| {
            let p = cfg.params_at(base, i);
            let bx = nonwandering_box(&p).inflate(cfg.escape_inflation);
            let mut s = cfg.seed.resolve(&p);
            let mut escaped = !bx.contains(&s);
            let mut samples = Vec::with_capacity(cfg.samples);
            if !escaped {
                for _ in 0..cfg.transient {
                    s = step(&p, &s);
                    if !bx.contains(&s) {
                        escaped = true;
                        break;
                    }
                }
            }
            if !escaped {
                for _ in 0..cfg.samples {
                    s = step(&p, &s);
                    if !bx.contains(&s) {
                        escaped = true;
                        break;
                    }
                    samples.push(s.x);
                }
            }
            SweepPoint {
                value: cfg.value_at(i),
                escaped,
                samples,
            }
        })
        .collect()
}

/// The three Lyapunov exponents, sorted descending.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LyapunovTriple<T> {
    pub exponents: [T; 3],
}

impl<T: Real> LyapunovTriple<T> {
    pub fn sum(&self) -> T {
        self.exponents[0] + self.exponents[1] + self.exponents[2]
    }

    pub fn top(&self) -> T {
        self.exponents[0]
    }
}

/// Lyapunov exponents by QR-reorthonormalized tangent iteration.
///
/// The orbit must stay inside the inflated nonwandering box for the whole
/// run. The sum of the exponents equals `log |(a^2+b^2) e|` exactly (the
/// constant Jacobian determinant); finite-time error shows up directly in
/// that identity, making it a built-in health check for callers.
pub fn lyapunov<T: Real + RealField>(
    p: &MapParams<T>,
    s0: &State3<T>,
    n: usize,
    transient: usize,
    escape_inflation: T,
) -> Result<LyapunovTriple<T>> {
    let bx = nonwandering_box(p).inflate(escape_inflation);
    let mut s = *s0;
    for i in 0..transient {
        s = step(p, &s);
        if !bx.contains(&s) {
            return Err(Error::Escaped { step: i });
        }
    }
    let mut q = Matrix3::<T>::identity();
    let mut sums = [T::zero(); 3];
    for i in 0..n {
        let m = jacobian(p, s.x) * q;
        let qr = m.qr();
        q = qr.q();
        let r = qr.r();
        // Fix signs so the diagonal of R is positive. A zero diagonal entry
        // (the map is non-invertible for e = 0) contributes ln 0 = -inf,
        // the correct value for that exponent.
        for j in 0..3 {
            let rjj = r[(j, j)];
            let mag = ComplexField::abs(rjj);
            sums[j] = sums[j] + Float::ln(mag);
            if rjj < T::zero() {
                for rr in 0..3 {
                    q[(rr, j)] = -q[(rr, j)];
                }
            }
        }
        s = step(p, &s);
        if !bx.contains(&s) {
            return Err(Error::Escaped { step: transient + i });
        }
    }
    let inv_n = T::one() / T::from_usize(n).unwrap();
    let mut exps = [sums[0] * inv_n, sums[1] * inv_n, sums[2] * inv_n];
    exps.sort_by(|u, v| v.partial_cmp(u).unwrap());
    Ok(LyapunovTriple { exponents: exps })
}

use nalgebra::ComplexField;
use num_traits::Float;

/// Coordinate axis selecting a section plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    fn get<T: Real>(&self, s: &State3<T>) -> T {
        match self {
            Axis::X => s.x,
            Axis::Y => s.y,
            Axis::Z => s.z,
        }
    }

    /// The two coordinates spanning the section plane.
    fn others<T: Real>(&self, s: &State3<T>) -> (T, T) {
        match self {
            Axis::X => (s.y, s.z),
            Axis::Y => (s.x, s.z),
            Axis::Z => (s.x, s.y),
        }
    }

    pub fn plane_labels(&self) -> (&'static str, &'static str) {
        match self {
            Axis::X => ("y", "z"),
            Axis::Y => ("x", "z"),
            Axis::Z => ("x", "y"),
        }
    }
}

/// Crossing direction filter for sections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CrossingDirection {
    /// Only crossings with increasing plane coordinate.
    Positive,
    /// Only crossings with decreasing plane coordinate.
    Negative,
    Both,
}

/// Poincare section configuration.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SectionConfig<T> {
    pub axis: Axis,
    pub value: T,
    pub direction: CrossingDirection,
    pub transient: usize,
    pub iterations: usize,
    pub escape_inflation: T,
    /// Minimum number of crossings demanded from the run.
    pub min_crossings: usize,
}

/// Records plane crossings of the orbit, linearly interpolated between
/// consecutive iterates. Returns the in-plane coordinate pairs.
pub fn poincare_section<T: Real>(
    p: &MapParams<T>,
    s0: &State3<T>,
    cfg: &SectionConfig<T>,
) -> Result<Vec<(T, T)>> {
    let bx = nonwandering_box(p).inflate(cfg.escape_inflation);
    let mut s = *s0;
    for i in 0..cfg.transient {
        s = step(p, &s);
        if !bx.contains(&s) {
            return Err(Error::Escaped { step: i });
        }
    }
    let mut points = Vec::new();
    let mut prev = s;
    let mut fprev = cfg.axis.get(&prev) - cfg.value;
    for i in 0..cfg.iterations {
        let next = step(p, &prev);
        if !bx.contains(&next) {
            return Err(Error::Escaped {
                step: cfg.transient + i,
            });
        }
        let fnext = cfg.axis.get(&next) - cfg.value;
        let crosses = fprev * fnext < T::zero();
        let wanted = match cfg.direction {
            CrossingDirection::Positive => crosses && fnext > T::zero(),
            CrossingDirection::Negative => crosses && fnext < T::zero(),
            CrossingDirection::Both => crosses,
        };
        if wanted {
            let t = fprev / (fprev - fnext);
            let interp = State3::new(
                prev.x + t * (next.x - prev.x),
                prev.y + t * (next.y - prev.y),
                prev.z + t * (next.z - prev.z),
            );
            points.push(cfg.axis.others(&interp));
        }
        prev = next;
        fprev = fnext;
    }
    if points.len() < cfg.min_crossings {
        return Err(Error::TooFewCrossings {
            got: points.len(),
            want: cfg.min_crossings,
        });
    }
    Ok(points)
}

/// Smallest period q such that the orbit equals its q-shift within `tol`
/// in sup-norm, or `None`. The candidate q is accepted only if at least
/// one full period of overlapping pairs confirms it.
pub fn detect_period<T: Real>(orbit: &[State3<T>], tol: T) -> Option<usize> {
    let n = orbit.len();
    if n < 2 {
        return None;
    }
    'candidate: for q in 1..=(n / 2) {
        for i in 0..(n - q) {
            if orbit[i].dist_inf(&orbit[i + q]) >= tol {
                continue 'candidate;
            }
        }
        return Some(q);
    }
    None
}

/// Attractor sampling configuration.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AttractorConfig<T> {
    pub transient: usize,
    pub samples: usize,
    /// Keep every thin-th sample.
    pub thin: usize,
    pub escape_inflation: T,
    /// Explicit seeds. When empty, a deterministic spread of eight seeds
    /// around the reference equilibrium is used.
    pub seeds: Vec<State3<T>>,
    /// Offset scale of the default seed spread.
    pub spread: T,
}

impl<T: Real> Default for AttractorConfig<T> {
    fn default() -> Self {
        Self {
            transient: 10_000,
            samples: 1_000,
            thin: 1,
            escape_inflation: T::of(10),
            seeds: Vec::new(),
            spread: T::lit(1e-3),
        }
    }
}

/// Post-transient states gathered from one seed.
#[derive(Clone, Debug, Serialize)]
pub struct SeedSample<T> {
    pub seed: State3<T>,
    pub escaped: bool,
    pub points: Vec<State3<T>>,
}

/// Deterministic spread of eight seeds around the reference equilibrium
/// (the nontrivial fixed point when present, else the origin).
pub fn default_seed_spread<T: Real>(p: &MapParams<T>, spread: T) -> Vec<State3<T>> {
    let base = match nontrivial_x(p) {
        Some(_) => equilibria(p).nontrivial[0],
        None => State3::origin(),
    };
    let mut seeds = Vec::with_capacity(8);
    let signs = [T::one(), -T::one()];
    for sx in signs {
        for sy in signs {
            for sz in signs {
                seeds.push(State3::new(
                    base.x + sx * spread,
                    base.y + sy * spread * T::of(2),
                    base.z + sz * spread * T::of(3),
                ));
            }
        }
    }
    seeds
}

/// Samples the attractor(s) from several seeds; thinned post-transient
/// states are returned per seed so coexisting limit sets stay separated.
pub fn attractor_sample<T: Real>(p: &MapParams<T>, cfg: &AttractorConfig<T>) -> Vec<SeedSample<T>> {
    let seeds = if cfg.seeds.is_empty() {
        default_seed_spread(p, cfg.spread)
    } else {
        cfg.seeds.clone()
    };
    let bx = nonwandering_box(p).inflate(cfg.escape_inflation);
    seeds
        .into_par_iter()
        .map(|seed| {
            let mut s = seed;
            let mut escaped = !bx.contains(&s);
            let mut points = Vec::new();
            if !escaped {
                for _ in 0..cfg.transient {
                    s = step(p, &s);
                    if !bx.contains(&s) {
                        escaped = true;
                        break;
                    }
                }
            }
            if !escaped {
                let thin = cfg.thin.max(1);
                for i in 0..cfg.samples {
                    s = step(p, &s);
                    if !bx.contains(&s) {
                        escaped = true;
                        break;
                    }
                    if i % thin == 0 {
                        points.push(s);
                    }
                }
            }
            SeedSample {
                seed,
                escaped,
                points,
            }
        })
        .collect()
}

/// True when every seed escaped (no attractor found in the box).
pub fn all_escaped<T>(samples: &[SeedSample<T>]) -> bool {
    samples.iter().all(|s| s.escaped)
}

/// Rotation-number estimate of a (quasi-)circular orbit sample: the mean
/// angular advance per iterate around the sample centroid, measured in the
/// plane of the cloud's two dominant principal axes, in units of turns.
///
/// Wind-doubling sweeps emit these so doublings show up as halvings of the
/// estimate; the quantity is descriptive data, not a rigorous invariant.
pub fn rotation_number_estimate<T: Real>(points: &[State3<T>]) -> Option<T> {
    if points.len() < 8 {
        return None;
    }
    let n = T::from_usize(points.len()).unwrap();
    let cx = points.iter().fold(T::zero(), |s, p| s + p.x) / n;
    let cy = points.iter().fold(T::zero(), |s, p| s + p.y) / n;
    let cz = points.iter().fold(T::zero(), |s, p| s + p.z) / n;

    // 3x3 covariance of the centered cloud.
    let mut cov = [[T::zero(); 3]; 3];
    for p in points {
        let d = [p.x - cx, p.y - cy, p.z - cz];
        for i in 0..3 {
            for j in 0..3 {
                cov[i][j] = cov[i][j] + d[i] * d[j];
            }
        }
    }
    // Dominant axis by power iteration; second axis by deflated iteration.
    let matvec = |m: &[[T; 3]; 3], v: [T; 3]| -> [T; 3] {
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    };
    let normalize = |v: [T; 3]| -> Option<[T; 3]> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm <= T::zero() {
            return None;
        }
        Some([v[0] / norm, v[1] / norm, v[2] / norm])
    };
    let mut u = normalize([T::one(), T::lit(0.7), T::lit(0.3)])?;
    for _ in 0..60 {
        u = normalize(matvec(&cov, u))?;
    }
    let mut w = [T::lit(-0.4), T::one(), T::lit(0.2)];
    for _ in 0..60 {
        let mut v = matvec(&cov, w);
        let dot = v[0] * u[0] + v[1] * u[1] + v[2] * u[2];
        for i in 0..3 {
            v[i] = v[i] - dot * u[i];
        }
        w = normalize(v)?;
    }

    let two_pi = T::lit(std::f64::consts::TAU);
    let angle = |p: &State3<T>| -> T {
        let d = [p.x - cx, p.y - cy, p.z - cz];
        let a = d[0] * u[0] + d[1] * u[1] + d[2] * u[2];
        let b = d[0] * w[0] + d[1] * w[1] + d[2] * w[2];
        b.atan2(a)
    };
    let mut total = T::zero();
    for pair in points.windows(2) {
        let mut delta = angle(&pair[1]) - angle(&pair[0]);
        let pi = two_pi / T::of(2);
        while delta > pi {
            delta = delta - two_pi;
        }
        while delta < -pi {
            delta = delta + two_pi;
        }
        total = total + delta;
    }
    Some(total / (T::from_usize(points.len() - 1).unwrap() * two_pi))
}

/// Post-transient orbit capture helper used by tests and the CLI.
pub fn capture_orbit<T: Real>(
    p: &MapParams<T>,
    s0: &State3<T>,
    transient: usize,
    n: usize,
    escape_inflation: T,
) -> Result<Vec<State3<T>>> {
    let bx = nonwandering_box(p).inflate(escape_inflation);
    let mut s = *s0;
    for i in 0..transient {
        s = step(p, &s);
        if !bx.contains(&s) {
            return Err(Error::Escaped { step: i });
        }
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        s = step(p, &s);
        if !bx.contains(&s) {
            return Err(Error::Escaped {
                step: transient + i,
            });
        }
        out.push(s);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibria::{symmetric_period2, RegionKind};

    fn params(a: f64, b: f64, c: f64, d: f64, e: f64, k: u32) -> MapParams<f64> {
        MapParams::new(a, b, c, d, e, k).unwrap()
    }

    #[test]
    fn diagram_collapses_inside_stable_region() {
        // a=0.6, b=-0.8, e=0: origin stable for c in (-1, 0).
        let base = params(0.6, -0.8, -0.5, 1.0, 0.0, 3);
        let mut cfg = ScanConfig::new(SweepParam::C, -0.5, -0.4, 3);
        cfg.transient = 2000;
        cfg.samples = 50;
        cfg.seed = SeedSpec::Explicit(State3::new(1e-4, 1e-4, 1e-4));
        let rows = bifurcation_diagram(&base, &cfg);
        for row in rows {
            assert!(!row.escaped);
            assert!(
                row.samples.iter().all(|x| x.abs() < 1e-6),
                "samples did not collapse to the origin at c = {}",
                row.value
            );
            assert!(crate::equilibria::region_member(
                &{
                    let mut p = base;
                    p.c = row.value;
                    p
                },
                RegionKind::Trivial
            ));
        }
    }

    #[test]
    fn lyapunov_negative_at_stable_fixed_point() {
        let p = params(0.6, -0.8, -0.5, 1.0, 0.0, 3);
        let l = lyapunov(&p, &State3::new(1e-4, 1e-4, 1e-4), 4000, 1000, 10.0).unwrap();
        assert!(l.top() < 0.0, "exponents {:?}", l.exponents);
    }

    #[test]
    fn lyapunov_sum_matches_determinant() {
        // Bounded orbit with e != 0: sum of exponents = log |(a^2+b^2) e|.
        // c = 0.1 puts the orbit in the basin of the stable point p1.
        let p = params(0.6, 0.5, 0.1, 1.0, 1.0, 3);
        assert!(crate::equilibria::region_member(&p, RegionKind::Nontrivial));
        let set = crate::equilibria::equilibria(&p);
        let p1 = set.nontrivial[0];
        let seed = State3::new(p1.x + 1e-6, p1.y, p1.z);
        let l = lyapunov(&p, &seed, 20_000, 1000, 10.0).unwrap();
        let expect = (p.det_jacobian()).abs().ln();
        assert!(
            (l.sum() - expect).abs() < 1e-3,
            "sum {} vs {}",
            l.sum(),
            expect
        );
    }

    #[test]
    fn detect_period_basics() {
        let p = params(0.3, 0.8, 9.0, 1.0, 0.25, 3);
        let origin_orbit = vec![State3::origin(); 40];
        assert_eq!(detect_period(&origin_orbit, 1e-10), Some(1));

        let [p2, m2] = symmetric_period2(&p).points.unwrap();
        let orbit: Vec<_> = (0..40).map(|i| if i % 2 == 0 { p2 } else { m2 }).collect();
        assert_eq!(detect_period(&orbit, 1e-10), Some(2));

        // A slowly rotating non-repeating sequence has no period at 1e-8.
        let quasi: Vec<_> = (0..200)
            .map(|i| {
                let t = i as f64 * 0.61803398875;
                State3::new(t.cos(), t.sin(), 0.0)
            })
            .collect();
        assert_eq!(detect_period(&quasi, 1e-8), None);
    }

    #[test]
    fn poincare_section_interpolates_crossings() {
        // Conservative parameters; an orbit in the bounded blob around the
        // origin crosses the plane x = 0 repeatedly. (A pure x-offset from
        // p1 leaves along its weakly unstable plane, so seed diagonally.)
        let p = params(0.2, -1.4, -0.94, -1.0, 0.5, 3);
        assert!((p.det_jacobian().abs() - 1.0).abs() < 1e-12);
        let p1 = crate::equilibria::equilibria(&p).nontrivial[0];
        let seed = State3::new(p1.x + 1e-3, p1.y + 1e-3, p1.z + 1e-3);
        let cfg = SectionConfig {
            axis: Axis::X,
            value: 0.0,
            direction: CrossingDirection::Positive,
            transient: 1000,
            iterations: 200_000,
            escape_inflation: 4.0,
            min_crossings: 100,
        };
        let pts = poincare_section(&p, &seed, &cfg).unwrap();
        assert!(pts.len() >= 100);
        for (u, v) in &pts {
            assert!(u.is_finite() && v.is_finite());
        }
        // Demanding more crossings than the run can produce is an error.
        let strict = SectionConfig {
            iterations: 50,
            transient: 0,
            min_crossings: 40,
            ..cfg
        };
        assert!(matches!(
            poincare_section(&p, &seed, &strict),
            Err(Error::TooFewCrossings { .. })
        ));
    }

    #[test]
    fn attractor_collapses_to_p1_inside_its_region() {
        // Inside the nontrivial stability region samples end on p1.
        let p = params(0.6, 0.5, 0.1, 1.0, 1.0, 3);
        assert!(crate::equilibria::region_member(&p, RegionKind::Nontrivial));
        let cfg = AttractorConfig {
            transient: 20_000,
            samples: 64,
            thin: 1,
            escape_inflation: 10.0,
            seeds: Vec::new(),
            spread: 1e-4,
        };
        let samples = attractor_sample(&p, &cfg);
        assert!(!all_escaped(&samples));
        let p1 = crate::equilibria::equilibria(&p).nontrivial[0];
        let m1 = p1.neg();
        for s in samples.iter().filter(|s| !s.escaped) {
            for pt in &s.points {
                let d = pt.dist_inf(&p1).min(pt.dist_inf(&m1));
                assert!(d < 1e-6, "point {:?} away from +-p1", pt);
            }
        }
    }

    #[test]
    fn rotation_number_of_synthetic_circle() {
        // A planar circle traversed at 0.18 turns per step, embedded at an
        // angle in 3-space.
        let omega = 0.18 * std::f64::consts::TAU;
        let pts: Vec<State3<f64>> = (0..400)
            .map(|i| {
                let t = omega * i as f64;
                let (u, v) = (t.cos(), t.sin());
                State3::new(2.0 * u + 0.3 * v, 0.5 * u - 1.5 * v, 0.8 * v + 0.2 * u)
            })
            .collect();
        let rot = rotation_number_estimate(&pts).unwrap();
        assert!(
            (rot.abs() - 0.18).abs() < 1e-10,
            "rotation estimate {rot} vs 0.18"
        );
    }

    #[test]
    fn samples_collapse_to_period2_pair_past_the_doubling_boundary() {
        // At e = -1 the origin period-doubles at c = 0 into the symmetric
        // pair; just past the boundary the samples cluster on +-p2.
        let p = params(0.6, 0.5, 0.05, 1.0, -1.0, 3);
        assert!(crate::equilibria::region_member(
            &p,
            RegionKind::Symmetric
        ));
        let [p2, m2] = symmetric_period2(&p).points.unwrap();
        let orbit = capture_orbit(&p, &State3::new(1e-6, 1e-6, 1e-6), 200_000, 64, 10.0).unwrap();
        assert_eq!(detect_period(&orbit, 1e-6), Some(2));
        for s in &orbit {
            let d = s.dist_inf(&p2).min(s.dist_inf(&m2));
            assert!(d < 1e-6, "sample {:?} away from +-p2", s);
        }
    }

    #[test]
    fn recurrent_states_of_bounded_orbits_lie_in_the_box() {
        // Orbits that never escape the 10x-inflated box have their
        // recurrences (revisits within 1e-6) inside the uninflated box.
        let p = params(0.2, -1.4, -0.94, -1.0, 0.5, 3);
        let bx = nonwandering_box(&p);
        let r = crate::map::iterate(&p, &State3::new(0.05, 0.0, 0.0), 100_000, &bx, 10.0);
        assert!(!r.escaped);
        let states = &r.states;
        let mut recurrences = 0usize;
        for i in (0..states.len() - 1000).step_by(97) {
            for j in (i + 1)..(i + 1000) {
                if states[i].dist_inf(&states[j]) < 1e-6 {
                    recurrences += 1;
                    assert!(bx.contains(&states[i]));
                    assert!(bx.contains(&states[j]));
                }
            }
        }
        assert!(recurrences > 0, "expected recurrences in a bounded orbit");
    }

    #[test]
    fn scan_values_are_deterministic_and_ordered() {
        let base = params(0.6, 0.5, 0.0, 1.0, 1.0, 3);
        let cfg = ScanConfig::new(SweepParam::C, 0.0, 1.0, 11);
        let rows = bifurcation_diagram(&base, &cfg);
        assert_eq!(rows.len(), 11);
        for (i, row) in rows.iter().enumerate() {
            assert!((row.value - i as f64 * 0.1).abs() < 1e-12);
        }
        let rows2 = bifurcation_diagram(&base, &cfg);
        for (u, v) in rows.iter().zip(&rows2) {
            assert_eq!(u.samples, v.samples);
        }
    }
}
