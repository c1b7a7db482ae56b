//! Length bounds for the core curve after Dehn filling along `μ_n = nα + β`.
//!
//! The chain is: a Margulis constant fixes the injectivity-radius floor
//! `r_eps` of the cusp torus; the flat lengths of `α` and `β` are capped by
//! `2π(g − 1)` and `5`; these give a window for `L(μ_n)²`; the universal
//! filling window turns `L²` into a geodesic-length interval.
//!
//! Values are computed in round-to-nearest double arithmetic and are not
//! certified. [`Rounding::Outward`] widens each reported endpoint by
//! [`OUTWARD_ULPS`] ulps.

use std::f64::consts::PI;

use serde::Serialize;

use crate::cusp::{sandwich_eq2, twist_slope, CuspShape};
use crate::error::{Error, Result};

/// Minimal normalized length for the filling window to apply.
pub const FILLING_GATE: f64 = 7.823;
/// Shift in the lower end of the filling window, `2π/(L² + 16.17)`.
pub const WINDOW_LOWER_SHIFT: f64 = 16.17;
/// Shift in the upper end of the filling window, `2π/(L² − 28.78)`.
pub const WINDOW_UPPER_SHIFT: f64 = 28.78;
pub const SIMPLIFIED_LOWER: f64 = 0.7;
pub const SIMPLIFIED_UPPER: f64 = 34.3;
/// Cap on the flat length of `β`.
pub const BETA_CAP: f64 = 5.0;
/// Smallest twist power for which the worst-case `L²` is increasing.
pub const TWIST_SEARCH_START: i64 = 5;
pub const OUTWARD_ULPS: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MargulisChoice {
    pub genus: i64,
    pub epsilon: f64,
    pub r_eps: f64,
}

/// `ε = ln 3` for genus at least 3, `ε = 2 asinh(2^{1/4}/4)` for genus 2;
/// `r_eps = 2 sinh(ε/2)`.
pub fn margulis(genus: i64) -> Result<MargulisChoice> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let epsilon = if genus == 2 {
        2.0 * (2f64.powf(0.25) / 4.0).asinh()
    } else {
        3f64.ln()
    };
    Ok(MargulisChoice {
        genus,
        epsilon,
        r_eps: 2.0 * (epsilon / 2.0).sinh(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundInterval {
    pub lo: f64,
    pub hi: f64,
}

impl BoundInterval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Strict containment of `self` in `other`.
    pub fn strictly_inside(&self, other: &BoundInterval) -> bool {
        other.lo < self.lo && self.hi < other.hi
    }

    pub fn widened(&self, ulps: u32) -> BoundInterval {
        let (mut lo, mut hi) = (self.lo, self.hi);
        for _ in 0..ulps {
            lo = lo.next_down();
            hi = hi.next_up();
        }
        BoundInterval { lo, hi }
    }

    fn rounded(self, rounding: Rounding) -> BoundInterval {
        match rounding {
            Rounding::Nearest => self,
            Rounding::Outward => self.widened(OUTWARD_ULPS),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Rounding {
    #[default]
    Nearest,
    Outward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoremInput {
    pub genus: i64,
    pub twist_power: i64,
}

impl TheoremInput {
    pub fn new(genus: i64, twist_power: i64) -> Result<Self> {
        if genus < 2 {
            return Err(Error::GenusTooSmall(genus));
        }
        Ok(Self { genus, twist_power })
    }
}

/// Geodesic-length window after filling a slope of normalized length `l`.
pub fn hk_window(l: f64) -> Result<BoundInterval> {
    if !(l >= FILLING_GATE) {
        return Err(Error::NormalizedLengthTooShort(l));
    }
    Ok(window_from_squares(l * l, l * l))
}

/// Window from separate lower and upper estimates of `L²`.
fn window_from_squares(l2_lo: f64, l2_hi: f64) -> BoundInterval {
    BoundInterval {
        lo: 2.0 * PI / (l2_hi + WINDOW_LOWER_SHIFT),
        hi: 2.0 * PI / (l2_lo - WINDOW_UPPER_SHIFT),
    }
}

/// Worst-case lower bound on `L(μ_n)²` once `a/b >= r_eps/2.5`:
/// `n² r_eps/2.5 − 2n + 2.5/r_eps`.
pub fn worst_case_l_squared_lo(n: i64, r_eps: f64) -> f64 {
    let n = n as f64;
    n * n * r_eps / 2.5 - 2.0 * n + 2.5 / r_eps
}

/// Worst-case upper bound on `L(μ_n)²` with `a < 2π(g − 1)`, `b <= 5`.
pub fn worst_case_l_squared_hi(genus: i64, n: i64, r_eps: f64) -> f64 {
    let top = 2.0 * PI * n as f64 * (genus - 1) as f64 + BETA_CAP;
    top * top / (2.0 * 3f64.sqrt() * r_eps * r_eps)
}

/// Least `n >= 5` whose worst-case `L²` clears `7.823²`.
pub fn min_admissible_twist(genus: i64) -> Result<i64> {
    let r_eps = margulis(genus)?.r_eps;
    let gate = FILLING_GATE * FILLING_GATE;
    Ok((TWIST_SEARCH_START..)
        .find(|&n| worst_case_l_squared_lo(n, r_eps) > gate)
        .expect("worst-case L² grows without bound"))
}

/// Length interval for the core curve, valid for `n >= min_admissible_twist(g)`.
pub fn theorem_bounds(input: TheoremInput) -> Result<BoundInterval> {
    let m = margulis(input.genus)?;
    let min_n = min_admissible_twist(input.genus)?;
    if input.twist_power < min_n {
        return Err(Error::TwistPowerTooSmall {
            n: input.twist_power,
            min_n,
        });
    }
    let n = input.twist_power;
    Ok(window_from_squares(
        worst_case_l_squared_lo(n, m.r_eps),
        worst_case_l_squared_hi(input.genus, n, m.r_eps),
    ))
}

/// The simplified interval `(0.7/(g²n²), 34.3/n²)` for `g >= 3`, `n >= 14`.
pub fn intro_bounds(input: TheoremInput) -> Result<BoundInterval> {
    let (g, n) = (input.genus, input.twist_power);
    if g < 3 || n < 14 {
        return Err(Error::OutOfSimplifiedRange { genus: g, n });
    }
    let (g, n) = (g as f64, n as f64);
    Ok(BoundInterval {
        lo: SIMPLIFIED_LOWER / (g * g * n * n),
        hi: SIMPLIFIED_UPPER / (n * n),
    })
}

/// Caps on the flat lengths of `α` and `β`: `(2π(g − 1), 5)`.
pub fn proposition_caps(genus: i64) -> Result<(f64, f64)> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    Ok((2.0 * PI * (genus - 1) as f64, BETA_CAP))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    #[serde(rename = "worst-case")]
    WorstCase,
    #[serde(rename = "shape")]
    Shape,
}

/// Why a report is or is not admissible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Status {
    Admissible,
    TwistPowerTooSmall,
    LengthBelowGate { l: f64 },
    ThinCusp { inj: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineReport {
    pub genus: i64,
    pub n: i64,
    pub epsilon: f64,
    pub r_eps: f64,
    pub mode: Mode,
    #[serde(rename = "L_squared_lo")]
    pub l_squared_lo: f64,
    #[serde(rename = "L_squared_hi")]
    pub l_squared_hi: f64,
    pub length_lo: Option<f64>,
    pub length_hi: Option<f64>,
    pub admissible: bool,
    pub min_n: i64,
    #[serde(skip)]
    pub status: Status,
}

impl PipelineReport {
    pub fn interval(&self) -> Option<BoundInterval> {
        Some(BoundInterval {
            lo: self.length_lo?,
            hi: self.length_hi?,
        })
    }
}

/// Runs the bound pipeline and always returns a report; gate failures show
/// up as `admissible = false` with null lengths.
///
/// Without a shape, the worst case over all cusps allowed by the caps and the
/// injectivity floor is used. With a shape, `L(μ_n)` is computed exactly; the
/// shape must satisfy the thick-part condition `injectivity_radius >= r_eps`.
pub fn evaluate(
    input: TheoremInput,
    shape: Option<&CuspShape>,
    rounding: Rounding,
) -> Result<PipelineReport> {
    let m = margulis(input.genus)?;
    let min_n = min_admissible_twist(input.genus)?;
    let n = input.twist_power;

    let (mode, l2_lo, l2_hi, status) = match shape {
        None => {
            let status = if n >= min_n {
                Status::Admissible
            } else {
                Status::TwistPowerTooSmall
            };
            (
                Mode::WorstCase,
                worst_case_l_squared_lo(n, m.r_eps),
                worst_case_l_squared_hi(input.genus, n, m.r_eps),
                status,
            )
        }
        Some(shape) => {
            let l = shape.normalized_length(twist_slope(n));
            let inj = shape.injectivity_radius();
            let status = if inj < m.r_eps {
                Status::ThinCusp { inj }
            } else if !(l >= FILLING_GATE) {
                Status::LengthBelowGate { l }
            } else {
                Status::Admissible
            };
            (Mode::Shape, l * l, l * l, status)
        }
    };

    let window =
        (status == Status::Admissible).then(|| window_from_squares(l2_lo, l2_hi).rounded(rounding));
    Ok(PipelineReport {
        genus: input.genus,
        n,
        epsilon: m.epsilon,
        r_eps: m.r_eps,
        mode,
        l_squared_lo: l2_lo,
        l_squared_hi: l2_hi,
        length_lo: window.map(|w| w.lo),
        length_hi: window.map(|w| w.hi),
        admissible: window.is_some(),
        min_n,
        status,
    })
}

/// Like [`evaluate`], but gate failures become errors.
pub fn pipeline(input: TheoremInput, shape: Option<&CuspShape>) -> Result<PipelineReport> {
    let report = evaluate(input, shape, Rounding::Nearest)?;
    match report.status {
        Status::Admissible => Ok(report),
        Status::TwistPowerTooSmall => Err(Error::TwistPowerTooSmall {
            n: report.n,
            min_n: report.min_n,
        }),
        Status::LengthBelowGate { l } => Err(Error::NormalizedLengthTooShort(l)),
        Status::ThinCusp { inj } => Err(Error::InvalidShape {
            inj,
            r_eps: report.r_eps,
        }),
    }
}

/// Bounds on `L(μ_n)²` for a concrete shape, from its flat lengths alone.
pub fn shape_sandwich(
    shape: &CuspShape,
    n: i64,
    r_eps: f64,
) -> Result<crate::cusp::SandwichInterval> {
    let (a, b) = shape.flat_lengths();
    sandwich_eq2(a, b, r_eps, n)
}
