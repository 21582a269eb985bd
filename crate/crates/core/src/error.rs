use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite input")]
    NonFinite,
    #[error("velocity constraint violated by {0:e}")]
    ConstraintViolated(f64),
    #[error("negative thermodynamic input {0}")]
    NegativeInput(f64),
    #[error("a1 = {0:e} is not bounded away from zero; r is too large for this velocity")]
    DegenerateA1(f64),
    #[error("level shift to {to} from {from} goes down")]
    LevelShiftBelowCurrent { from: u32, to: u32 },
    #[error("power must be positive")]
    NonPositivePower,
    #[error("grid too coarse: {0}")]
    ResolutionTooLow(String),
    #[error("field of the wrong kind for this operator: {0}")]
    WrongFieldKind(String),
    #[error("operator needs a two-dimensional grid")]
    GridDimTooLow,
    #[error("higher sources only available for k in {{0, 1}}, got {0}")]
    UnsupportedK(u32),
    #[error("family has {got} members, need at least {need}")]
    FamilyTooSmall { got: usize, need: usize },
    #[error("series has {got} samples, need at least {need}")]
    SeriesTooShort { got: usize, need: usize },
    #[error("need at least {need} refinement levels, got {got}")]
    LevelsTooFew { got: usize, need: usize },
    #[error("time step {dt} exceeds the CFL limit {limit}")]
    CflViolated { dt: f64, limit: f64 },
    #[error("background velocity nonzero on the fixed boundary: {0:e}")]
    BoundaryVelocityNonzero(f64),
    #[error("missing time derivative: {0}")]
    MissingTimeDerivative(String),
    #[error("energy needs D_t powers up to {0}")]
    MissingConvectivePowers(u32),
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
