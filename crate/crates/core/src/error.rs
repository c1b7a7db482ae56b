use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("geodesic endpoints coincide")]
    CoincidentEndpoints,
    #[error("point lies inside the open horoball")]
    InsideHoroball,
    #[error("point coincides with the horosphere's ideal point")]
    CoincidesWithCenter,
    #[error("point is not on the horosphere (chart height off by {0:e})")]
    NotOnHorosphere(f64),
    #[error("horoballs are not disjoint")]
    NotDisjoint,
    #[error("singular matrix cannot define an isometry")]
    SingularIsometry,
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid horosphere size {0}")]
    InvalidHorosphere(f64),

    #[error("degenerate lattice")]
    DegenerateLattice,
    #[error("slope must be primitive (gcd({0},{1}) != 1)")]
    NonPrimitiveSlope(i64, i64),
    #[error("non-positive input: {0}")]
    NonPositiveInput(&'static str),
    #[error("cannot parse complex literal {0:?}")]
    ComplexLiteral(String),

    #[error("genus {0} is below 2")]
    GenusTooSmall(i64),
    #[error("normalized length {0} is below 7.823; the filling theorem does not apply")]
    NormalizedLengthTooShort(f64),
    #[error("twist power {n} is below the admissible minimum {min_n}")]
    TwistPowerTooSmall { n: i64, min_n: i64 },
    #[error("simplified bounds need genus >= 3 and n >= 14 (got g={genus}, n={n})")]
    OutOfSimplifiedRange { genus: i64, n: i64 },
    #[error(
        "cusp shape violates the thick-part constraint: injectivity radius {inj} < r_eps {r_eps}"
    )]
    InvalidShape { inj: f64, r_eps: f64 },

    #[error("invalid sampler parameter: {0}")]
    InvalidParameter(String),
    #[error("sampling exhausted after {0} rejections")]
    SamplingExhausted(usize),
}
