//! Seeded randomized and grid checks of the geometric facts behind the
//! length bounds.
//!
//! * Horoball chains: a path alternating between horospherical geodesics of
//!   length > 2.5 and orthogonal connecting geodesics never closes up. The
//!   checks follow the inductive shadow argument: every later ideal point
//!   projects into the radius-1/2 disk around the exit point of the first
//!   horospherical arc.
//! * Shadow and crossing facts for single horoballs.
//! * The minimal area `2√3 r²` of flat tori with injectivity radius `r`.
//! * Area equals boundary length for a cusp of a hyperbolic surface.
//!
//! All randomness flows from a master seed through [`derive_seed`], so
//! reports are pure functions of their inputs regardless of thread count.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cusp::CuspShape;
use crate::error::{Error, Result};
use crate::h3::{
    geodesic_meets_horosphere, horo_distance, horo_project, horoballs_disjoint, normalize_to_plane,
    shadow, HPoint, Horosphere, IdealPoint, Isometric, Isometry, Point3,
};

/// Lower bound on horospherical arc lengths in a chain.
pub const ALPHA_THRESHOLD: f64 = 2.5;
pub const SHADOW_RADIUS_BOUND: f64 = 0.5;
pub const CHECK_TOL: f64 = 1e-9;
/// Endpoint separation below which a chain counts as closed.
pub const LOOP_SEPARATION: f64 = 1e-6;
pub const MAX_REJECTIONS: usize = 1000;
/// Horizontal spread of the first entry point.
const ENTRY_BOX: f64 = 5.0;
/// Arc lengths are drawn from `(min_alpha, min_alpha + ALPHA_SPREAD)`.
const ALPHA_SPREAD: f64 = 5.0;
const DIAMETER_RANGE: (f64, f64) = (0.05, 1.0);
pub const MAX_SEGMENTS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialReport {
    pub trials: u64,
    pub failures: u64,
    pub worst_margin: f64,
    pub seed: u64,
    pub wall_ms: Option<u64>,
}

impl TrialReport {
    fn single(ok: bool, margin: f64, seed: u64) -> Self {
        Self {
            trials: 1,
            failures: u64::from(!ok),
            worst_margin: margin,
            seed,
            wall_ms: None,
        }
    }

    fn empty(seed: u64) -> Self {
        Self {
            trials: 0,
            failures: 0,
            worst_margin: f64::INFINITY,
            seed,
            wall_ms: None,
        }
    }

    /// Sum of counts, minimum of margins. Order-independent.
    pub fn merge(self, other: TrialReport) -> TrialReport {
        TrialReport {
            trials: self.trials + other.trials,
            failures: self.failures + other.failures,
            worst_margin: self.worst_margin.min(other.worst_margin),
            seed: self.seed,
            wall_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// SplitMix64 finalizer applied to `master + (index + 1)·φ64`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn rng_for(master: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, index))
}

/// One horospherical arc `α_i`, in the chart where `H_i = {t = 1}` and
/// `p_i = ∞`, together with the next horosphere `H_{i+1}`, which is tangent
/// to `ℂ` below the exit point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainStep {
    pub entry: Complex64,
    pub exit: Complex64,
    pub next_diameter: f64,
}

impl ChainStep {
    pub fn alpha_length(&self) -> f64 {
        (self.exit - self.entry).norm()
    }
}

/// A concatenation `α_0 ⋆ β_0 ⋆ … ⋆ α_{m−1} ⋆ β_{m−1}` through horospheres
/// `H_0, …, H_m`. Chart 0 is the global frame with `H_0 = {t = 1}`.
///
/// `transitions[i]` maps chart `i + 1` into chart `i`. In chart `i + 1` the
/// previous ideal point `p_i` sits at the origin, so every entry point after
/// the first is `0`. Deep horoballs are tiny in global coordinates; the
/// checks run in local charts.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainConfig {
    steps: Vec<ChainStep>,
    transitions: Vec<Isometry>,
    seed: u64,
}

/// Arc data for building a chain directly: length, direction, and the
/// diameter of the next horosphere in the current chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepSpec {
    pub alpha_length: f64,
    pub direction: f64,
    pub next_diameter: f64,
}

impl ChainConfig {
    /// Builds a chain from explicit step data without enforcing the arc
    /// threshold, so that sub-threshold chains can be probed.
    pub fn from_steps(first_entry: Complex64, specs: &[StepSpec]) -> Result<Self> {
        if specs.is_empty() {
            return Err(Error::InvalidParameter(
                "a chain needs at least one segment".into(),
            ));
        }
        let mut steps = Vec::with_capacity(specs.len());
        let mut transitions = Vec::with_capacity(specs.len());
        let mut entry = first_entry;
        for spec in specs {
            let step = ChainStep {
                entry,
                exit: entry + Complex64::from_polar(spec.alpha_length, spec.direction),
                next_diameter: spec.next_diameter,
            };
            let next = Horosphere::tangent_at(step.exit, step.next_diameter)?;
            transitions.push(normalize_to_plane(&next).inverse());
            steps.push(step);
            entry = Complex64::new(0.0, 0.0);
        }
        Ok(Self {
            steps,
            transitions,
            seed: 0,
        })
    }

    pub fn segments(&self) -> usize {
        self.steps.len()
    }

    pub fn steps(&self) -> &[ChainStep] {
        &self.steps
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Maps an object from chart `from` down to chart `to <= from`, one
    /// transition at a time.
    pub fn to_chart<T: Isometric>(&self, from: usize, to: usize, x: T) -> T {
        assert!(to <= from && from <= self.steps.len());
        (to..from)
            .rev()
            .fold(x, |acc, i| acc.transformed(&self.transitions[i]))
    }

    /// `p_k` in chart `j`.
    pub fn ideal_point_in_chart(&self, k: usize, j: usize) -> IdealPoint {
        match k.cmp(&j) {
            std::cmp::Ordering::Equal => IdealPoint::Infinity,
            std::cmp::Ordering::Greater => {
                self.to_chart(k - 1, j, IdealPoint::Finite(self.steps[k - 1].exit))
            }
            std::cmp::Ordering::Less => {
                assert_eq!(k + 1, j, "only the previous ideal point is tracked upward");
                IdealPoint::Finite(Complex64::new(0.0, 0.0))
            }
        }
    }

    /// `H_i` in chart `i - 1` (for `i >= 1`).
    fn horosphere_in_parent_chart(&self, i: usize) -> Horosphere {
        let s = &self.steps[i - 1];
        Horosphere::tangent_at(s.exit, s.next_diameter).expect("validated at construction")
    }

    /// Global `H_0, …, H_m`.
    pub fn horospheres(&self) -> Vec<Horosphere> {
        let plane = Horosphere::plane(1.0).expect("unit plane");
        (0..=self.steps.len())
            .map(|i| self.to_chart(i, 0, plane))
            .collect()
    }

    /// Global `p_0 = ∞, p_1, …, p_m`.
    pub fn ideal_points(&self) -> Vec<IdealPoint> {
        (0..=self.steps.len())
            .map(|k| self.ideal_point_in_chart(k, 0))
            .collect()
    }

    /// Global entry points `x_0, …, x_m`; `x_m` is where the path ends.
    pub fn entries(&self) -> Vec<Point3> {
        (0..=self.steps.len())
            .map(|i| self.to_chart(i, 0, self.entry_in_own_chart(i)))
            .collect()
    }

    /// Global exit points `y_0, …, y_{m−1}`.
    pub fn exits(&self) -> Vec<Point3> {
        (0..self.steps.len())
            .map(|i| self.to_chart(i, 0, on_unit_plane(self.steps[i].exit)))
            .collect()
    }

    fn entry_in_own_chart(&self, i: usize) -> Point3 {
        match self.steps.get(i) {
            Some(s) => on_unit_plane(s.entry),
            None => on_unit_plane(Complex64::new(0.0, 0.0)),
        }
    }

    /// Re-checks the structural invariants with kernel predicates: arcs
    /// longer than `min_alpha`, consecutive horoballs disjoint, and each
    /// connecting geodesic entering `H_i` at `y_i` and `H_{i+1}` at `x_{i+1}`.
    pub fn validate(&self, min_alpha: f64) -> Result<()> {
        let plane = Horosphere::plane(1.0)?;
        for (i, step) in self.steps.iter().enumerate() {
            let (x, y) = (on_unit_plane(step.entry), on_unit_plane(step.exit));
            let len = horo_distance(&plane, &x, &y)?;
            if !(len > min_alpha) {
                return Err(Error::InvalidParameter(format!(
                    "arc {i} has length {len} <= {min_alpha}"
                )));
            }
            let next = self.horosphere_in_parent_chart(i + 1);
            if !horoballs_disjoint(&plane, &next) {
                return Err(Error::NotDisjoint);
            }
            let y_proj = horo_project(self.ideal_point_in_chart(i + 1, i), &plane)?;
            if (y_proj.z() - step.exit).norm() > CHECK_TOL {
                return Err(Error::InvalidParameter(format!(
                    "connecting geodesic {i} misses y_{i}"
                )));
            }
            let x_next = horo_project(self.ideal_point_in_chart(i, i + 1), &plane)?;
            if x_next.z().norm() > CHECK_TOL {
                return Err(Error::InvalidParameter(format!(
                    "connecting geodesic {i} misses x_{}",
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

fn on_unit_plane(z: Complex64) -> Point3 {
    Point3::new(z, 1.0).expect("finite chart coordinate")
}

/// Samples a chain with `segments` arcs whose lengths are drawn from
/// `(min_alpha, min_alpha + 5)` and whose next-horosphere diameters are
/// drawn from `(0.05, 1)`, each step built in the chart of the current
/// horosphere.
pub fn sample_chain(segments: usize, min_alpha: f64, seed: u64) -> Result<ChainConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chain = sample_chain_with(&mut rng, segments, min_alpha)?;
    chain.seed = seed;
    Ok(chain)
}

pub fn sample_chain_with<R: Rng>(
    rng: &mut R,
    segments: usize,
    min_alpha: f64,
) -> Result<ChainConfig> {
    if segments < 1 {
        return Err(Error::InvalidParameter(
            "segments must be at least 1".into(),
        ));
    }
    if !(min_alpha >= ALPHA_THRESHOLD) || !min_alpha.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "min_alpha {min_alpha} is below {ALPHA_THRESHOLD}"
        )));
    }
    let plane = Horosphere::plane(1.0)?;
    let first = Complex64::new(
        rng.random_range(-ENTRY_BOX..ENTRY_BOX),
        rng.random_range(-ENTRY_BOX..ENTRY_BOX),
    );
    let mut chain = ChainConfig {
        steps: Vec::new(),
        transitions: Vec::new(),
        seed: 0,
    };

    for i in 0..segments {
        let entry = if i == 0 {
            first
        } else {
            Complex64::new(0.0, 0.0)
        };
        // H_{i−1} as seen from chart i.
        let previous = (i > 0).then(|| plane.transformed(&chain.transitions[i - 1].inverse()));
        let mut rejections = 0;
        loop {
            let len = rng.random_range(min_alpha..min_alpha + ALPHA_SPREAD);
            let direction = rng.random_range(0.0..2.0 * PI);
            let diameter = rng.random_range(DIAMETER_RANGE.0..DIAMETER_RANGE.1);
            let exit = entry + Complex64::from_polar(len, direction);
            let next = Horosphere::tangent_at(exit, diameter)?;

            let accept = len > min_alpha
                && len > ALPHA_THRESHOLD
                && diameter > DIAMETER_RANGE.0
                && diameter < DIAMETER_RANGE.1
                && horoballs_disjoint(&plane, &next)
                && previous.is_none_or(|h| horoballs_disjoint(&h, &next))
                && {
                    // The new ideal point must stay finite and distinct from
                    // p_0 in the global frame.
                    let global = chain.to_chart(i, 0, IdealPoint::Finite(exit));
                    global.as_finite().is_some_and(|p| p.is_finite())
                };
            if accept {
                chain.steps.push(ChainStep {
                    entry,
                    exit,
                    next_diameter: diameter,
                });
                chain.transitions.push(normalize_to_plane(&next).inverse());
                break;
            }
            rejections += 1;
            if rejections >= MAX_REJECTIONS {
                return Err(Error::SamplingExhausted(rejections));
            }
        }
    }
    Ok(chain)
}

/// Detailed outcome of [`check_chain`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainCheck {
    /// Largest `d_{H_j}(π_j(p_k), y_j)` over all levels `j` and `k > j`.
    pub max_shadow_distance: f64,
    /// Largest `d_{H_j}(π_j(p_{j+1}), y_j)`; zero in exact arithmetic.
    pub max_base_case_error: f64,
    /// Smallest `d_{H_{j+1}}(π_{j+1}(p_j), π_{j+1}(p_k))` for `k >= j + 2`.
    pub min_inductive_distance: f64,
    /// Geodesic from `p_j` to `p_k` met `H_{j+1}` in every inductive step.
    pub crossings_ok: bool,
    /// Hyperbolic distance between the start `x_0` and end `x_m` of the path.
    pub endpoint_separation: f64,
    pub errors: usize,
}

impl ChainCheck {
    pub fn passed(&self) -> bool {
        self.errors == 0
            && self.max_shadow_distance <= SHADOW_RADIUS_BOUND + CHECK_TOL
            && self.max_base_case_error <= CHECK_TOL
            && self.min_inductive_distance >= 2.0 - CHECK_TOL
            && self.crossings_ok
            && self.endpoint_separation > LOOP_SEPARATION
    }

    /// Smallest slack over the shadow and inductive checks.
    pub fn margin(&self) -> f64 {
        (SHADOW_RADIUS_BOUND - self.max_shadow_distance).min(self.min_inductive_distance - 2.0)
    }
}

pub fn inspect_chain(chain: &ChainConfig) -> ChainCheck {
    let plane = Horosphere::plane(1.0).expect("unit plane");
    let m = chain.segments();
    let mut out = ChainCheck {
        max_shadow_distance: 0.0,
        max_base_case_error: 0.0,
        min_inductive_distance: f64::INFINITY,
        crossings_ok: true,
        endpoint_separation: 0.0,
        errors: 0,
    };

    for j in 0..m {
        let y = on_unit_plane(chain.steps[j].exit);
        for k in j + 1..=m {
            let projected = horo_project(chain.ideal_point_in_chart(k, j), &plane)
                .and_then(|p| horo_distance(&plane, &p, &y));
            match projected {
                Ok(d) => {
                    out.max_shadow_distance = out.max_shadow_distance.max(d);
                    if k == j + 1 {
                        out.max_base_case_error = out.max_base_case_error.max(d);
                    }
                }
                Err(_) => out.errors += 1,
            }
            if k >= j + 2 {
                // In chart j + 1: π(p_j) = x_{j+1} and the crossing fact.
                let p_prev = chain.ideal_point_in_chart(j, j + 1);
                let p_k = chain.ideal_point_in_chart(k, j + 1);
                let distance = horo_project(p_prev, &plane).and_then(|a| {
                    let b = horo_project(p_k, &plane)?;
                    horo_distance(&plane, &a, &b)
                });
                match distance {
                    Ok(d) => out.min_inductive_distance = out.min_inductive_distance.min(d),
                    Err(_) => out.errors += 1,
                }
                match geodesic_meets_horosphere(p_prev, p_k, &plane) {
                    Ok(hit) => out.crossings_ok &= hit,
                    Err(_) => out.errors += 1,
                }
            }
        }
    }

    let start = on_unit_plane(chain.steps[0].entry);
    let end = chain.to_chart(m, 0, on_unit_plane(Complex64::new(0.0, 0.0)));
    out.endpoint_separation = crate::h3::hyp_distance(&start, &end);
    out
}

/// Runs the shadow, base-case, inductive-crossing and loop checks on a chain.
/// `failures` is 1 if any check fails.
pub fn check_chain(chain: &ChainConfig) -> TrialReport {
    let c = inspect_chain(chain);
    TrialReport::single(c.passed(), c.margin(), chain.seed)
}

fn random_horosphere<R: Rng>(rng: &mut R) -> Horosphere {
    if rng.random_bool(0.5) {
        Horosphere::plane(rng.random_range(0.2..5.0)).expect("positive height")
    } else {
        let p = Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        Horosphere::tangent_at(p, rng.random_range(0.1..3.0)).expect("positive diameter")
    }
}

/// Points of a horosphere: random ones plus the equator of its image in the
/// chart of `reference`, which projects onto the shadow boundary.
fn sample_points_on<R: Rng>(
    rng: &mut R,
    b: &Horosphere,
    reference: &Horosphere,
    count: usize,
) -> Vec<Point3> {
    let mut pts = Vec::with_capacity(count + 16);
    for _ in 0..count {
        let p = match b.ideal_point() {
            IdealPoint::Infinity => Point3::from_parts(
                rng.random_range(-4.0..4.0),
                rng.random_range(-4.0..4.0),
                b.size(),
            ),
            IdealPoint::Finite(q) => {
                let r = 0.5 * b.size();
                let theta: f64 = rng.random_range(0.05..PI);
                let phi: f64 = rng.random_range(0.0..2.0 * PI);
                Point3::new(
                    q + Complex64::from_polar(r * theta.sin(), phi),
                    r - r * theta.cos(),
                )
            }
        };
        pts.extend(p.ok());
    }
    let m = normalize_to_plane(reference);
    let image = b.transformed(&m);
    if let IdealPoint::Finite(foot) = image.ideal_point() {
        let r = 0.5 * image.size();
        let inv = m.inverse();
        for i in 0..16 {
            let phi = 2.0 * PI * i as f64 / 16.0;
            if let Ok(p) = Point3::new(foot + Complex64::from_polar(r, phi), r) {
                pts.push(inv.apply(&p));
            }
        }
    }
    pts
}

/// Outcome of one shadow trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShadowTrial {
    pub radius: f64,
    /// Largest overshoot of a sampled projection past the reported radius.
    pub max_excess: f64,
    /// Gap between the radius and the farthest sampled projection.
    pub tightness_gap: f64,
}

impl ShadowTrial {
    pub fn passed(&self) -> bool {
        self.radius <= SHADOW_RADIUS_BOUND + CHECK_TOL
            && self.max_excess <= CHECK_TOL
            && self.tightness_gap <= 1e-6
    }
}

/// Draws a random disjoint pair `(H, B)` and compares sampled projections of
/// `B` with `shadow(H, B)`.
pub fn shadow_trial<R: Rng>(rng: &mut R) -> Result<ShadowTrial> {
    let h = random_horosphere(rng);
    let b = loop {
        let b = if h.ideal_point().is_infinity() || rng.random_bool(0.8) {
            let q = Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            Horosphere::tangent_at(q, rng.random_range(0.01..3.0))?
        } else {
            Horosphere::plane(rng.random_range(0.2..5.0))?
        };
        if horoballs_disjoint(&h, &b) && b.ideal_point() != h.ideal_point() {
            break b;
        }
    };
    let s = shadow(&h, &b)?;
    let mut max_d: f64 = 0.0;
    for p in sample_points_on(rng, &b, &h, 48) {
        let proj = horo_project(p, &h)?;
        max_d = max_d.max(horo_distance(&h, &proj, &s.center)?);
    }
    Ok(ShadowTrial {
        radius: s.radius,
        max_excess: max_d - s.radius,
        tightness_gap: s.radius - max_d,
    })
}

/// Draws `x`, `y` outside a random horosphere `H` whose projections are at
/// least 2 apart on `H`, and reports whether the geodesic meets `H` along
/// with the projected distance.
pub fn crossing_trial<R: Rng>(rng: &mut R) -> Result<(bool, f64)> {
    let h = random_horosphere(rng);
    let inv = normalize_to_plane(&h).inverse();
    loop {
        let base = Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let other = base
            + Complex64::from_polar(rng.random_range(2.0..6.0), rng.random_range(0.0..2.0 * PI));
        let mut chart_point = |z: Complex64| -> Result<HPoint> {
            Ok(match rng.random_range(0..4) {
                0 => HPoint::Ideal(IdealPoint::Finite(z)),
                1 => HPoint::Interior(Point3::new(z, 1.0)?),
                _ => HPoint::Interior(Point3::new(z, rng.random_range(0.01..1.0))?),
            })
        };
        let (x, y) = (
            chart_point(base)?.transformed(&inv),
            chart_point(other)?.transformed(&inv),
        );
        if matches!(x, HPoint::Ideal(p) if p == h.ideal_point())
            || matches!(y, HPoint::Ideal(p) if p == h.ideal_point())
        {
            continue;
        }
        let d = horo_distance(&h, &horo_project(x, &h)?, &horo_project(y, &h)?)?;
        if d < 2.0 {
            continue;
        }
        return Ok((geodesic_meets_horosphere(x, y, &h)?, d));
    }
}

/// Runs `trials` independent items in parallel, each with its own derived
/// RNG, and folds the outcomes.
fn parallel_trials<F>(trials: u64, seed: u64, f: F) -> TrialReport
where
    F: Fn(&mut ChaCha8Rng) -> TrialReport + Sync,
{
    let report = (0..trials)
        .into_par_iter()
        .map(|i| f(&mut rng_for(seed, i)))
        .reduce(|| TrialReport::empty(seed), TrialReport::merge);
    TrialReport { seed, ..report }
}

fn lemma_item(rng: &mut ChaCha8Rng) -> TrialReport {
    let segments = rng.random_range(1..=MAX_SEGMENTS);
    match sample_chain_with(rng, segments, ALPHA_THRESHOLD) {
        Ok(chain) => check_chain(&chain),
        Err(_) => TrialReport::single(false, f64::NEG_INFINITY, 0),
    }
}

fn shadow_item(rng: &mut ChaCha8Rng) -> TrialReport {
    match shadow_trial(rng) {
        Ok(t) => TrialReport::single(t.passed(), SHADOW_RADIUS_BOUND - t.radius, 0),
        Err(_) => TrialReport::single(false, f64::NEG_INFINITY, 0),
    }
}

fn crossing_item(rng: &mut ChaCha8Rng) -> TrialReport {
    match crossing_trial(rng) {
        Ok((hit, d)) => TrialReport::single(hit, d - 2.0, 0),
        Err(_) => TrialReport::single(false, f64::NEG_INFINITY, 0),
    }
}

/// Sampled chains with segment counts uniform in `1..=10`.
pub fn lemma_campaign(trials: u64, seed: u64) -> TrialReport {
    parallel_trials(trials, seed, lemma_item)
}

/// Random disjoint horoball pairs; margin is `1/2 − radius`.
pub fn shadow_sweep(trials: u64, seed: u64) -> TrialReport {
    parallel_trials(trials, seed, shadow_item)
}

/// Random point pairs with projected distance at least 2; margin is
/// `distance − 2`.
pub fn crossing_sweep(trials: u64, seed: u64) -> TrialReport {
    parallel_trials(trials, seed, crossing_item)
}

/// Each trial samples one chain, one shadow pair and one crossing pair from
/// the same per-trial RNG. `failures` counts failed checks.
pub fn run_campaign(trials: u64, seed: u64) -> TrialReport {
    let report = parallel_trials(trials, seed, |rng| {
        let a = lemma_item(rng);
        let b = shadow_item(rng);
        let c = crossing_item(rng);
        TrialReport {
            trials: 1,
            ..a.merge(b).merge(c)
        }
    });
    TrialReport { trials, ..report }
}

/// Like [`run_campaign`] with `wall_ms` filled in.
pub fn run_campaign_timed(trials: u64, seed: u64) -> TrialReport {
    timed(|| run_campaign(trials, seed))
}

pub fn timed(f: impl FnOnce() -> TrialReport) -> TrialReport {
    let start = Instant::now();
    let report = f();
    TrialReport {
        wall_ms: Some(start.elapsed().as_millis() as u64),
        ..report
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusScan {
    pub min_area: f64,
    /// `τβ/τα` at the minimum.
    pub argmin: Complex64,
    /// `2√3 r²`.
    pub floor: f64,
}

/// Height of the scanned strip above the unit circle in the reduced domain.
const SCAN_HEIGHT: f64 = 1.0;

/// Grid scan over reduced bases `τα = 2r`, `τβ = 2r·w` with
/// `Re w ∈ [−1/2, 1/2]` and `|w| >= 1`, each rescaled to injectivity
/// radius exactly `r`. The grid includes the hexagonal corner `w = e^{iπ/3}`.
pub fn min_torus_area_scan(r: f64, grid: usize) -> Result<TorusScan> {
    if !(r > 0.0) {
        return Err(Error::NonPositiveInput("r"));
    }
    if grid < 100 {
        return Err(Error::InvalidParameter(format!("grid {grid} is below 100")));
    }
    let step = 1.0 / (grid - 1) as f64;
    let mut best = TorusScan {
        min_area: f64::INFINITY,
        argmin: Complex64::new(0.0, 0.0),
        floor: 2.0 * 3f64.sqrt() * r * r,
    };
    for i in 0..grid {
        let x = -0.5 + i as f64 * step;
        let y_min = (1.0 - x * x).sqrt();
        for j in 0..grid {
            let w = Complex64::new(x, y_min + SCAN_HEIGHT * j as f64 * step);
            let tau_alpha = Complex64::new(2.0 * r, 0.0);
            let shape = CuspShape::new(tau_alpha, tau_alpha * w, 1.0)?;
            let lambda = r / shape.injectivity_radius();
            let area =
                CuspShape::new(tau_alpha * lambda, tau_alpha * w * lambda, 1.0)?.torus_area();
            if area < best.min_area {
                best.min_area = area;
                best.argmin = w;
            }
        }
    }
    Ok(best)
}

pub const TORUS_RADII: [f64; 3] = [0.25, 0.5, 1.0];

/// Scans each radius in [`TORUS_RADII`]. Margin is `min_area/(2√3 r²) − 1`;
/// a radius fails if the minimum dips more than `1e−6` below the floor or
/// misses it by more than `1e−4`.
pub fn torus_area_suite(grid: usize) -> Result<(TrialReport, Vec<(f64, TorusScan)>)> {
    let mut report = TrialReport::empty(0);
    let mut scans = Vec::with_capacity(TORUS_RADII.len());
    for r in TORUS_RADII {
        let scan = min_torus_area_scan(r, grid)?;
        let ok = scan.min_area >= scan.floor - 1e-6 && (scan.min_area - scan.floor).abs() <= 1e-4;
        report = report.merge(TrialReport::single(ok, scan.min_area / scan.floor - 1.0, 0));
        scans.push((r, scan));
    }
    Ok((report, scans))
}

/// Area and horocyclic boundary length of the surface cusp
/// `{Im w >= h} / (w ↦ w + c)`.
///
/// The area `∫₀^c ∫_h^∞ dy dx / y²` is evaluated with the substitution
/// `u = h/y` and composite Simpson quadrature; the boundary length is
/// `∫₀^c dx / h`.
pub fn surface_cusp_area_and_length(c: f64, h: f64) -> Result<(f64, f64)> {
    if !(c > 0.0) {
        return Err(Error::NonPositiveInput("translation length"));
    }
    if !(h > 0.0) {
        return Err(Error::NonPositiveInput("horocycle height"));
    }
    const PANELS: usize = 64;
    // dy/y² = du/h on u ∈ (0, 1].
    let inner = |_u: f64| 1.0 / h;
    let du = 1.0 / PANELS as f64;
    let mut sum = inner(0.0) + inner(1.0);
    for k in 1..PANELS {
        sum += if k % 2 == 1 { 4.0 } else { 2.0 } * inner(k as f64 * du);
    }
    let area = c * sum * du / 3.0;
    let length = c / h;
    Ok((area, length))
}

/// `(area, length)` for a cusp with the given boundary length.
pub fn surface_cusp_check(boundary_length: f64) -> Result<(f64, f64)> {
    surface_cusp_area_and_length(boundary_length, 1.0)
}

/// Random boundary lengths in `(0, 100)`; margin is `1e−12 − |area − length|`.
pub fn cusp_area_suite(trials: u64, seed: u64) -> TrialReport {
    parallel_trials(trials, seed, |rng| {
        let len = loop {
            let l: f64 = rng.random_range(0.0..100.0);
            if l > 0.0 {
                break l;
            }
        };
        match surface_cusp_check(len) {
            Ok((area, length)) => {
                let gap = (area - length).abs();
                TrialReport::single(gap <= 1e-12, 1e-12 - gap, 0)
            }
            Err(_) => TrialReport::single(false, f64::NEG_INFINITY, 0),
        }
    })
}
