//! Upper half-space model of hyperbolic 3-space, `ℂ × (0, ∞)`.
//!
//! Horospheres are stored as an ideal point plus a size: the height when the
//! ideal point is `∞`, otherwise the Euclidean diameter of the tangent sphere.
//! Every horosphere computation goes through [`normalize_to_plane`], which
//! moves the horosphere to `{t = 1}` where projections and intrinsic
//! distances are plain Euclidean operations on `ℂ`.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance for geometric equality tests, measured in a chart
/// where the relevant horosphere sits at height 1.
pub const GEOM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3 {
    z: Complex64,
    t: f64,
}

impl Point3 {
    pub fn new(z: Complex64, t: f64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::InvalidPoint(format!(
                "height {t} must be positive and finite"
            )));
        }
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::InvalidPoint(format!(
                "horizontal coordinate {z} is not finite"
            )));
        }
        Ok(Self { z, t })
    }

    pub fn from_parts(x: f64, y: f64, t: f64) -> Result<Self> {
        Self::new(Complex64::new(x, y), t)
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn t(&self) -> f64 {
        self.t
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.z, self.t)
    }
}

/// A point of the sphere at infinity `ℂ ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IdealPoint {
    Finite(Complex64),
    Infinity,
}

impl IdealPoint {
    pub fn finite(re: f64, im: f64) -> Self {
        IdealPoint::Finite(Complex64::new(re, im))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, IdealPoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match *self {
            IdealPoint::Finite(p) => Some(p),
            IdealPoint::Infinity => None,
        }
    }
}

impl From<Complex64> for IdealPoint {
    fn from(p: Complex64) -> Self {
        IdealPoint::Finite(p)
    }
}

/// Either an interior point or an ideal point. Projection and the geodesic
/// crossing test accept both.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HPoint {
    Interior(Point3),
    Ideal(IdealPoint),
}

impl From<Point3> for HPoint {
    fn from(p: Point3) -> Self {
        HPoint::Interior(p)
    }
}

impl From<IdealPoint> for HPoint {
    fn from(p: IdealPoint) -> Self {
        HPoint::Ideal(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Horosphere {
    ideal_point: IdealPoint,
    size: f64,
}

impl Horosphere {
    pub fn new(ideal_point: IdealPoint, size: f64) -> Result<Self> {
        if !(size > 0.0) || !size.is_finite() {
            return Err(Error::InvalidHorosphere(size));
        }
        if let IdealPoint::Finite(p) = ideal_point {
            if !p.re.is_finite() || !p.im.is_finite() {
                return Err(Error::InvalidPoint(format!(
                    "ideal point {p} is not finite"
                )));
            }
        }
        Ok(Self { ideal_point, size })
    }

    /// The horizontal plane `{t = height}`.
    pub fn plane(height: f64) -> Result<Self> {
        Self::new(IdealPoint::Infinity, height)
    }

    /// The Euclidean sphere of the given diameter tangent to `ℂ` at `p`.
    pub fn tangent_at(p: Complex64, diameter: f64) -> Result<Self> {
        Self::new(IdealPoint::Finite(p), diameter)
    }

    pub fn ideal_point(&self) -> IdealPoint {
        self.ideal_point
    }

    /// Height of the plane, or diameter of the sphere.
    pub fn size(&self) -> f64 {
        self.size
    }

    /// The point of the horosphere farthest from its ideal point in the
    /// Euclidean picture: the top of the sphere, or `(0, T)` for a plane.
    pub fn top(&self) -> Point3 {
        match self.ideal_point {
            IdealPoint::Finite(p) => Point3 { z: p, t: self.size },
            IdealPoint::Infinity => Point3 {
                z: Complex64::new(0.0, 0.0),
                t: self.size,
            },
        }
    }
}

/// Closed-horoball disjointness straight from the Euclidean picture. Tangent
/// horoballs are not disjoint.
pub fn horoballs_disjoint(a: &Horosphere, b: &Horosphere) -> bool {
    match (a.ideal_point, b.ideal_point) {
        (IdealPoint::Infinity, IdealPoint::Infinity) => false,
        (IdealPoint::Infinity, IdealPoint::Finite(_)) => b.size < a.size,
        (IdealPoint::Finite(_), IdealPoint::Infinity) => a.size < b.size,
        (IdealPoint::Finite(p), IdealPoint::Finite(q)) => (p - q).norm_sqr() > a.size * b.size,
    }
}

/// Complete geodesic, stored by its endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geodesic {
    start: IdealPoint,
    end: IdealPoint,
}

/// Euclidean shape of a geodesic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeodesicShape {
    Vertical { foot: Complex64 },
    Semicircle { center: Complex64, radius: f64 },
}

impl Geodesic {
    pub fn endpoints(&self) -> (IdealPoint, IdealPoint) {
        (self.start, self.end)
    }

    pub fn shape(&self) -> GeodesicShape {
        match (self.start, self.end) {
            (IdealPoint::Finite(p), IdealPoint::Infinity)
            | (IdealPoint::Infinity, IdealPoint::Finite(p)) => GeodesicShape::Vertical { foot: p },
            (IdealPoint::Finite(p), IdealPoint::Finite(q)) => GeodesicShape::Semicircle {
                center: (p + q) * 0.5,
                radius: (p - q).norm() * 0.5,
            },
            (IdealPoint::Infinity, IdealPoint::Infinity) => unreachable!("endpoints are distinct"),
        }
    }

    /// Maximal Euclidean height; infinite for vertical geodesics.
    pub fn apex_height(&self) -> f64 {
        match self.shape() {
            GeodesicShape::Vertical { .. } => f64::INFINITY,
            GeodesicShape::Semicircle { radius, .. } => radius,
        }
    }
}

pub fn geodesic_between(a: IdealPoint, b: IdealPoint) -> Result<Geodesic> {
    if a == b {
        return Err(Error::CoincidentEndpoints);
    }
    Ok(Geodesic { start: a, end: b })
}

/// Orientation-preserving isometry `[[a, b], [c, d]] ∈ SL(2, ℂ)` acting by
/// the Poincaré extension of the Möbius map `z ↦ (az + b)/(cz + d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl Isometry {
    /// Builds the isometry and rescales the matrix to determinant 1.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        let scale = a.norm() * d.norm() + b.norm() * c.norm();
        if !det.is_finite() || det.norm() <= 1e-14 * scale || det.norm() == 0.0 {
            return Err(Error::SingularIsometry);
        }
        let k = det.sqrt().inv();
        Ok(Self {
            a: a * k,
            b: b * k,
            c: c * k,
            d: d * k,
        })
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            a: one,
            b: zero,
            c: zero,
            d: one,
        }
    }

    /// Parabolic `(z, t) ↦ (z + tau, t)`.
    pub fn translation(tau: Complex64) -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self {
            a: one,
            b: tau,
            c: Complex64::new(0.0, 0.0),
            d: one,
        }
    }

    /// Homothety `(z, t) ↦ (λz, λt)` for `λ > 0`.
    pub fn scaling(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::NonPositiveInput("scaling factor"));
        }
        let s = lambda.sqrt();
        Ok(Self {
            a: Complex64::new(s, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0 / s, 0.0),
        })
    }

    /// `z ↦ −1/z`.
    pub fn inversion() -> Self {
        Self {
            a: Complex64::new(0.0, 0.0),
            b: Complex64::new(-1.0, 0.0),
            c: Complex64::new(1.0, 0.0),
            d: Complex64::new(0.0, 0.0),
        }
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn determinant(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `self ∘ other`, renormalized to determinant 1.
    pub fn compose(&self, other: &Isometry) -> Self {
        let (u, v) = (self, other);
        let a = u.a * v.a + u.b * v.c;
        let b = u.a * v.b + u.b * v.d;
        let c = u.c * v.a + u.d * v.c;
        let d = u.c * v.b + u.d * v.d;
        let k = (a * d - b * c).sqrt().inv();
        Self {
            a: a * k,
            b: b * k,
            c: c * k,
            d: d * k,
        }
    }

    pub fn apply<T: Isometric>(&self, x: &T) -> T {
        x.transformed(self)
    }

    fn denominator_vanishes(&self, z: Complex64) -> bool {
        let den = self.c * z + self.d;
        den.norm() <= 1e-15 * (self.c.norm() * z.norm() + self.d.norm())
    }
}

impl Mul for Isometry {
    type Output = Isometry;

    fn mul(self, rhs: Isometry) -> Isometry {
        self.compose(&rhs)
    }
}

/// Objects that an [`Isometry`] moves around.
pub trait Isometric: Sized {
    fn transformed(&self, m: &Isometry) -> Self;
}

impl Isometric for Point3 {
    fn transformed(&self, m: &Isometry) -> Self {
        let (z, t) = (self.z, self.t);
        let w = m.c * z + m.d;
        let den = w.norm_sqr() + m.c.norm_sqr() * t * t;
        let num = (m.a * z + m.b) * w.conj() + m.a * m.c.conj() * (t * t);
        Point3 {
            z: num / den,
            t: t / den,
        }
    }
}

impl Isometric for IdealPoint {
    fn transformed(&self, m: &Isometry) -> Self {
        match *self {
            IdealPoint::Infinity => {
                if m.c == Complex64::new(0.0, 0.0) {
                    IdealPoint::Infinity
                } else {
                    IdealPoint::Finite(m.a / m.c)
                }
            }
            IdealPoint::Finite(z) => {
                if m.denominator_vanishes(z) {
                    IdealPoint::Infinity
                } else {
                    IdealPoint::Finite((m.a * z + m.b) / (m.c * z + m.d))
                }
            }
        }
    }
}

impl Isometric for HPoint {
    fn transformed(&self, m: &Isometry) -> Self {
        match self {
            HPoint::Interior(p) => HPoint::Interior(p.transformed(m)),
            HPoint::Ideal(p) => HPoint::Ideal(p.transformed(m)),
        }
    }
}

impl Isometric for Horosphere {
    fn transformed(&self, m: &Isometry) -> Self {
        let image = self.ideal_point.transformed(m);
        // Sizes scale with |m'(p)| = 1/|cp + d|^2 at a finite base point.
        let size = match (self.ideal_point, image) {
            (IdealPoint::Infinity, IdealPoint::Infinity) => self.size / m.d.norm_sqr(),
            (IdealPoint::Infinity, IdealPoint::Finite(_)) => 1.0 / (m.c.norm_sqr() * self.size),
            (IdealPoint::Finite(_), IdealPoint::Infinity) => 1.0 / (m.c.norm_sqr() * self.size),
            (IdealPoint::Finite(p), IdealPoint::Finite(_)) => {
                self.size / (m.c * p + m.d).norm_sqr()
            }
        };
        Horosphere {
            ideal_point: image,
            size,
        }
    }
}

impl Isometric for Geodesic {
    fn transformed(&self, m: &Isometry) -> Self {
        Geodesic {
            start: self.start.transformed(m),
            end: self.end.transformed(m),
        }
    }
}

pub fn apply_isometry<T: Isometric>(m: &Isometry, x: &T) -> T {
    x.transformed(m)
}

pub fn hyp_distance(x: &Point3, y: &Point3) -> f64 {
    let chord2 = (x.z - y.z).norm_sqr() + (x.t - y.t).powi(2);
    2.0 * (chord2.sqrt() / (2.0 * (x.t * y.t).sqrt())).asinh()
}

/// An isometry taking `h` to the plane `{t = 1}`.
pub fn normalize_to_plane(h: &Horosphere) -> Isometry {
    match h.ideal_point {
        IdealPoint::Infinity => {
            let s = h.size.sqrt();
            Isometry {
                a: Complex64::new(1.0 / s, 0.0),
                b: Complex64::new(0.0, 0.0),
                c: Complex64::new(0.0, 0.0),
                d: Complex64::new(s, 0.0),
            }
        }
        IdealPoint::Finite(p) => {
            // z ↦ −D/(z − p)
            let s = h.size.sqrt();
            Isometry {
                a: Complex64::new(0.0, 0.0),
                b: Complex64::new(-s, 0.0),
                c: Complex64::new(1.0 / s, 0.0),
                d: -p / s,
            }
        }
    }
}

/// Entrance point into `h` of the geodesic from `x` to the ideal point of `h`.
pub fn horo_project(x: impl Into<HPoint>, h: &Horosphere) -> Result<Point3> {
    let m = normalize_to_plane(h);
    let chart = chart_point(&m, x.into())?;
    Ok(Point3 { z: chart.z, t: 1.0 }.transformed(&m.inverse()))
}

/// Chart image of a point that must lie outside the open horoball.
struct ChartPoint {
    z: Complex64,
    t: f64,
}

fn chart_point(m: &Isometry, x: HPoint) -> Result<ChartPoint> {
    match x.transformed(m) {
        HPoint::Ideal(IdealPoint::Infinity) => Err(Error::CoincidesWithCenter),
        HPoint::Ideal(IdealPoint::Finite(z)) => Ok(ChartPoint { z, t: 0.0 }),
        HPoint::Interior(p) => {
            if p.t > 1.0 + GEOM_TOL {
                Err(Error::InsideHoroball)
            } else {
                Ok(ChartPoint { z: p.z, t: p.t })
            }
        }
    }
}

/// Intrinsic (flat) distance between two points of `h`.
pub fn horo_distance(h: &Horosphere, u: &Point3, v: &Point3) -> Result<f64> {
    let m = normalize_to_plane(h);
    let (cu, cv) = (u.transformed(&m), v.transformed(&m));
    for c in [cu, cv] {
        if (c.t - 1.0).abs() > GEOM_TOL {
            return Err(Error::NotOnHorosphere(c.t - 1.0));
        }
    }
    Ok((cu.z - cv.z).norm())
}

/// Projection of a horoball onto a horosphere, as an intrinsic disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shadow {
    pub center: Point3,
    pub radius: f64,
}

/// The set `π_H(B)`. In the chart where `H = {t = 1}` this is the vertical
/// projection of a sphere of diameter at most 1, so the radius is at most 1/2.
/// Tangency is accepted here; overlap is `NotDisjoint`.
pub fn shadow(h: &Horosphere, b: &Horosphere) -> Result<Shadow> {
    let m = normalize_to_plane(h);
    let image = b.transformed(&m);
    let foot = match image.ideal_point {
        IdealPoint::Infinity => return Err(Error::CoincidesWithCenter),
        IdealPoint::Finite(p) => p,
    };
    if image.size > 1.0 {
        return Err(Error::NotDisjoint);
    }
    let center = Point3 { z: foot, t: 1.0 }.transformed(&m.inverse());
    Ok(Shadow {
        center,
        radius: image.size * 0.5,
    })
}

/// Whether the geodesic segment from `x` to `y` meets `h`. Endpoints may be
/// ideal; an endpoint at the ideal point of `h` always gives `true`.
pub fn geodesic_meets_horosphere(
    x: impl Into<HPoint>,
    y: impl Into<HPoint>,
    h: &Horosphere,
) -> Result<bool> {
    let m = normalize_to_plane(h);
    let (x, y) = (x.into(), y.into());
    let cx = match chart_point(&m, x) {
        Err(Error::CoincidesWithCenter) => return Ok(true),
        other => other?,
    };
    let cy = match chart_point(&m, y) {
        Err(Error::CoincidesWithCenter) => return Ok(true),
        other => other?,
    };
    Ok(segment_max_height(&cx, &cy) >= 1.0 - GEOM_TOL)
}

/// Highest point on the geodesic arc between two chart points.
fn segment_max_height(x: &ChartPoint, y: &ChartPoint) -> f64 {
    let d = (y.z - x.z).norm();
    let endpoint_max = x.t.max(y.t);
    if d == 0.0 {
        return endpoint_max;
    }
    // Centre of the supporting half-circle sits at signed offset s along x→y.
    let s = (d * d + y.t * y.t - x.t * x.t) / (2.0 * d);
    if (0.0..=d).contains(&s) {
        (s * s + x.t * x.t).sqrt()
    } else {
        endpoint_max
    }
}
