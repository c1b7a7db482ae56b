//! Flat geometry of a cusp cross-section torus.
//!
//! A cusp is described by the translations `τ(α)`, `τ(β)` of its peripheral
//! group and the height `T` of the horosphere `ℂ × {T}`. The torus is
//! `ℂ / (τ(α)ℤ + τ(β)ℤ)` with the flat metric scaled by `1/T`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative threshold on `|Im(conj(τα)·τβ)| / (|τα||τβ|)` below which the
/// translations are treated as collinear.
const COLLINEAR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuspShape {
    tau_alpha: Complex64,
    tau_beta: Complex64,
    height: f64,
}

impl CuspShape {
    pub fn new(tau_alpha: Complex64, tau_beta: Complex64, height: f64) -> Result<Self> {
        if !(height > 0.0) || !height.is_finite() {
            return Err(Error::NonPositiveInput("height"));
        }
        if !tau_alpha.is_finite() || !tau_beta.is_finite() {
            return Err(Error::DegenerateLattice);
        }
        let cross = (tau_alpha.conj() * tau_beta).im;
        let scale = tau_alpha.norm() * tau_beta.norm();
        if scale == 0.0 || cross.abs() <= COLLINEAR_TOL * scale {
            return Err(Error::DegenerateLattice);
        }
        Ok(Self {
            tau_alpha,
            tau_beta,
            height,
        })
    }

    pub fn tau_alpha(&self) -> Complex64 {
        self.tau_alpha
    }

    pub fn tau_beta(&self) -> Complex64 {
        self.tau_beta
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    /// Angle between `τ(α)` and `τ(β)`, in `(0, π)`.
    pub fn angle(&self) -> f64 {
        (self.tau_beta / self.tau_alpha).arg().abs()
    }

    /// Same torus, basis replaced by `(m00 α + m01 β, m10 α + m11 β)`.
    pub fn change_basis(&self, m: [[i64; 2]; 2]) -> Result<Self> {
        let combine = |p: i64, q: i64| self.tau_alpha * p as f64 + self.tau_beta * q as f64;
        Self::new(
            combine(m[0][0], m[0][1]),
            combine(m[1][0], m[1][1]),
            self.height,
        )
    }

    /// `(a, b)`: flat lengths of `α` and `β`.
    pub fn flat_lengths(&self) -> (f64, f64) {
        (
            self.tau_alpha.norm() / self.height,
            self.tau_beta.norm() / self.height,
        )
    }

    /// Translation vector of the slope, in intrinsic units.
    pub fn slope_vector(&self, s: Slope) -> Complex64 {
        (self.tau_alpha * s.p as f64 + self.tau_beta * s.q as f64) / self.height
    }

    /// Length of the flat geodesic representative of `s`.
    pub fn flat_length(&self, s: Slope) -> f64 {
        self.slope_vector(s).norm()
    }

    pub fn torus_area(&self) -> f64 {
        (self.tau_alpha.conj() * self.tau_beta).im.abs() / (self.height * self.height)
    }

    /// Shortest nonzero lattice vector, in intrinsic units.
    pub fn systole(&self) -> f64 {
        let (u, _) = gauss_reduce(self.tau_alpha / self.height, self.tau_beta / self.height);
        u.norm()
    }

    pub fn injectivity_radius(&self) -> f64 {
        0.5 * self.systole()
    }

    /// `Length(s) / sqrt(Area)`; invariant under rescaling the whole cusp.
    pub fn normalized_length(&self, s: Slope) -> f64 {
        self.flat_length(s) / self.torus_area().sqrt()
    }
}

/// Lagrange–Gauss reduction of a 2-D lattice basis. Returns `(u, v)` with
/// `|u| <= |v|` and `|Re(v·conj(u))| <= |u|²/2`, so `u` is a shortest
/// nonzero vector.
pub fn gauss_reduce(mut u: Complex64, mut v: Complex64) -> (Complex64, Complex64) {
    if u.norm_sqr() > v.norm_sqr() {
        std::mem::swap(&mut u, &mut v);
    }
    loop {
        let mu = ((v * u.conj()).re / u.norm_sqr()).round();
        v -= u * mu;
        if v.norm_sqr() >= u.norm_sqr() {
            return (u, v);
        }
        std::mem::swap(&mut u, &mut v);
    }
}

/// Primitive homology class `pα + qβ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
            return Err(Error::NonPrimitiveSlope(p, q));
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    /// Parses `"p,q"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("slope {s:?} is not of the form p,q"));
        let (p, q) = s.split_once(',').ok_or_else(bad)?;
        let p = p.parse::<i64>().map_err(|_| bad())?;
        let q = q.parse::<i64>().map_err(|_| bad())?;
        Slope::new(p, q)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The filling slope `μ_n = nα + β` of the `n`-th twist.
pub fn twist_slope(n: i64) -> Slope {
    Slope { p: n, q: 1 }
}

/// Closed interval bounding `L(μ_n)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SandwichInterval {
    pub lo: f64,
    pub hi: f64,
}

impl SandwichInterval {
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Two-sided bound on the squared normalized length of `μ_n` from the flat
/// lengths `a = |τ(α)|/T`, `b = |τ(β)|/T` and the injectivity-radius floor
/// `r_eps`:
///
/// `(na − b)²/(ab) <= L(μ_n)² <= (na + b)²/(2√3 r_eps²)`.
///
/// The lower bound needs `Area <= ab` (always true); the upper bound needs
/// `Area >= 2√3 r_eps²`, which holds once the injectivity radius is at least
/// `r_eps`. The lower bound is left unclamped since `|nτα + τβ| >= |na − b|`
/// holds for either sign of `na − b`.
pub fn sandwich_eq2(a: f64, b: f64, r_eps: f64, n: i64) -> Result<SandwichInterval> {
    if !(a > 0.0) {
        return Err(Error::NonPositiveInput("a"));
    }
    if !(b > 0.0) {
        return Err(Error::NonPositiveInput("b"));
    }
    if !(r_eps > 0.0) {
        return Err(Error::NonPositiveInput("r_eps"));
    }
    if n < 1 {
        return Err(Error::NonPositiveInput("n"));
    }
    let n = n as f64;
    let lo = (n * a - b).powi(2) / (a * b);
    let hi = (n * a + b).powi(2) / (2.0 * 3f64.sqrt() * r_eps * r_eps);
    Ok(SandwichInterval { lo, hi })
}

/// Parses `<real>[+|-]<real>i`, e.g. `1.5-0.25i` or `-2e-3+1E2i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::ComplexLiteral(s.to_string());
    let body = s.strip_suffix('i').ok_or_else(bad)?;
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
        .ok_or_else(bad)?;
    let (re, im) = (&body[..split], &body[split..]);
    let parse = |t: &str| -> Result<f64> {
        if t.is_empty()
            || !t
                .bytes()
                .all(|c| c.is_ascii_digit() || b"+-.eE".contains(&c))
        {
            return Err(bad());
        }
        t.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(bad)
    };
    Ok(Complex64::new(parse(re)?, parse(im)?))
}
