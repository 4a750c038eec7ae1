use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("modulus {0} exceeds the supported ceiling {1}")]
    ModulusTooLarge(u64, u64),

    #[error("{f} does not divide {q}")]
    NotADivisor { f: u64, q: u64 },

    #[error("gcd({n}, {q}) > 1")]
    NotCoprime { n: i64, q: u64 },

    #[error("coefficient data missing at prime {0}")]
    MissingPrime(u64),

    #[error("argument {n} exceeds coefficient ceiling {ceiling}")]
    CeilingExceeded { n: u64, ceiling: u64 },

    #[error("Ramanujan bound violated: |lambda({p})| = {value} > {bound}")]
    GrcViolation { p: u64, value: f64, bound: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("window ordering fails: P1 = {p1} > P2 = {p2} (X = {x} too small)")]
    WindowOrdering { p1: f64, p2: f64, x: f64 },

    #[error("pole of the gamma factor at s = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("gamma factor violates Re(mu_j) >= -1 + theta: {0}")]
    SpecInvariant(String),

    #[error("contour abscissa {c} lies in the forbidden strip (needs c > {bound})")]
    ForbiddenAbscissa { c: f64, bound: f64 },

    #[error("zero dataset is not flagged as lying on the critical line")]
    NotCriticalLine,

    #[error("height {t} exceeds dataset height {t_max}")]
    HeightExceeded { t: f64, t_max: f64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
