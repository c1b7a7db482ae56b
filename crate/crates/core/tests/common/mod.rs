//! Independent oracles and frozen reference values shared by the
//! integration tests.

#![allow(dead_code)]

use std::f64::consts::PI;

use cuspfill::Complex64;

/// Frozen worst-case values; recomputed independently in high precision.
pub mod frozen {
    pub const G3_N14_LO: f64 = 0.0008845089646110548;
    pub const G3_N14_HI: f64 = 0.174_952_881_520_862_2;
    pub const G2_N21_LO: f64 = 0.0004098857130644302;
    pub const G2_N21_HI: f64 = 0.1639980990453378;
    pub const WINDOW_AT_GATE: (f64, f64) = (0.08121028563113927, 0.19380985051169895);
    pub const L2_LO_G3_N14: f64 = 64.69358571839442;
    pub const L2_LO_G3_N13: f64 = 54.2228199038985;
    pub const GATE_SQUARED: f64 = 61.199329;
    pub const HEX_NORMALIZED_LENGTH: f64 = 1.074569931823542;
}

/// Shortest nonzero `|p·τα + q·τβ| / height` over `|p|, |q| <= bound`.
pub fn brute_systole(tau_alpha: Complex64, tau_beta: Complex64, height: f64, bound: i64) -> f64 {
    let mut best = f64::INFINITY;
    for p in -bound..=bound {
        for q in -bound..=bound {
            if p == 0 && q == 0 {
                continue;
            }
            best = best.min((tau_alpha * p as f64 + tau_beta * q as f64).norm() / height);
        }
    }
    best
}

/// Torus area from side lengths and the angle between the translations.
pub fn area_by_angle(tau_alpha: Complex64, tau_beta: Complex64, height: f64) -> f64 {
    let theta = tau_beta.arg() - tau_alpha.arg();
    tau_alpha.norm() * tau_beta.norm() * theta.sin().abs() / (height * height)
}

/// Normalized length of `p·α + q·β` from the angle-based area.
pub fn normalized_length(
    tau_alpha: Complex64,
    tau_beta: Complex64,
    height: f64,
    p: i64,
    q: i64,
) -> f64 {
    let v = (tau_alpha * p as f64 + tau_beta * q as f64) / height;
    v.norm() / area_by_angle(tau_alpha, tau_beta, height).sqrt()
}

/// `2π/(L² + 16.17)`, `2π/(L² − 28.78)`.
pub fn window(l: f64) -> (f64, f64) {
    (2.0 * PI / (l * l + 16.17), 2.0 * PI / (l * l - 28.78))
}

/// `2 sinh(ε/2)` for the genus-dependent Margulis constant.
pub fn r_eps(genus: i64) -> f64 {
    let eps = if genus >= 3 {
        3f64.ln()
    } else {
        2.0 * (2f64.powf(0.25) / 4.0).asinh()
    };
    2.0 * (eps / 2.0).sinh()
}

/// Worst-case `L²` interval: lower bound from `a >= 2r`, `b <= 5`, area
/// `<= a·b` minimized over `a`; upper bound from the caps.
pub fn worst_case_l2(genus: i64, n: i64) -> (f64, f64) {
    let r = r_eps(genus);
    let (n, cap_a, cap_b) = (n as f64, 2.0 * PI * (genus - 1) as f64, 5.0);
    let lo = (n * r * 2.0 - cap_b).powi(2) / (2.0 * r * cap_b);
    let hi = (cap_a * n + cap_b).powi(2) / (2.0 * 3f64.sqrt() * r * r);
    (lo, hi)
}

/// Hyperbolic distance from `cosh d = 1 + |Δ|²/(2 t₁ t₂)`.
pub fn hyp_distance(z1: Complex64, t1: f64, z2: Complex64, t2: f64) -> f64 {
    let chord2 = (z1 - z2).norm_sqr() + (t1 - t2).powi(2);
    (1.0 + chord2 / (2.0 * t1 * t2)).acosh()
}

/// Relative-or-absolute closeness.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}
