use crate::Point;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("word must be cyclically reduced and hyperbolic")]
    NotAlgebraicallyStable,
    #[error("word has odd length, so it is not in the even subgroup")]
    OddLengthWord,
    #[error("matrix is not in Γ(2)")]
    NotInGamma2,
    #[error("elimination degenerated: {0}")]
    SolverDegenerate(String),
    #[error("chart denominator {0:e} is below 1e-12 in modulus")]
    ChartDegenerate(f64),
    #[error("orbit escaped past the cutoff at step {step}")]
    Overflow { step: usize, partial: Point },
    #[error("point is not fixed by the word (displacement {0:e})")]
    NotFixedPoint(f64),
    #[error("point is a singular point of the surface")]
    SingularPoint,
    #[error("orbit drifted off its fiber by {drift:e} at iterate {step}")]
    EscapedTube { step: i64, drift: f64 },
    #[error("radius {radius} must exceed {min}")]
    RadiusTooSmall { radius: f64, min: f64 },
    #[error("no root of modulus greater than 2")]
    NoEscapeRoot,
    #[error("no sign change found on the bracket [{lo}, {hi}]")]
    BracketFailure { lo: f64, hi: f64 },
    #[error("hypothesis violated: 4·{max_deviation:e} + τ ≥ {epsilon}")]
    HypothesisViolated { max_deviation: f64, epsilon: f64 },
    #[error("no near-return found below k = {cap}")]
    NoReturnFound { cap: u64 },
    #[error("seed {word} deviates by {deviation:e}, budget is {budget:e}")]
    SeedTooLoose { word: String, deviation: f64, budget: f64 },
    #[error("no coordinate dominates the others")]
    NotNearVertex,
    #[error("contraction failed at level {level}")]
    ContractionFailure { level: usize },
    #[error("torus coordinate is zero")]
    ZeroCoordinate,
    #[error("fixed point outside the expected region: {0:?}")]
    OutlierFound(Point),
    #[error("records do not share one grid: {0}")]
    MixedGrids(String),
    #[error("empty input")]
    EmptyInput,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
