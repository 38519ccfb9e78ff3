use thiserror::Error;

/// Broad failure category, used by front-ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    InvalidInput,
    Numerical,
    InfiniteIsotropy,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("triple contains a repeated point")]
    DegenerateTriple,
    #[error("cross-ratio undefined: fewer than three distinct points")]
    UndefinedCrossRatio,
    #[error("matrix is singular (ad - bc = 0)")]
    SingularMobius,
    #[error("non-finite complex value")]
    NonFinite,

    #[error("root finder did not converge (relative residual {residual:e})")]
    ConvergenceFailure { residual: f64 },

    #[error("poles {first} and {second} coincide")]
    RepeatedPole { first: usize, second: usize },
    #[error("residue at term {index} is zero")]
    ZeroResidue { index: usize },
    #[error("residues sum to {sum_re}{sum_im:+}i, violating the residue theorem")]
    ResidueTheoremViolation { sum_re: f64, sum_im: f64 },
    #[error("numerator and denominator share a root")]
    CommonZeroPole,
    #[error("denominator has a repeated root")]
    MultiplePole,
    #[error("chart index {chart} is not admissible")]
    BadChart { chart: usize },
    #[error("malformed form: {0}")]
    Shape(String),
    #[error("evaluation point is a pole")]
    EvaluationAtPole,

    #[error("isotropy group is infinite (s = 2)")]
    InfiniteIsotropy,
    #[error("{count} candidate maps exceed the budget of {budget}")]
    TooManyPermutations { count: u128, budget: u128 },
    #[error("element set is not a finite group: {0}")]
    NotAGroup(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid quotient point: {0}")]
    InvalidMPoint(String),
    #[error("form is not isochronous")]
    NotIsochronous,
    #[error("a residue has vanishing imaginary part")]
    ZeroImaginaryPart,
    #[error("|lambda| = {modulus} is not 1")]
    NotUnitModulus { modulus: f64 },
    #[error("forms have different numbers of poles ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::ConvergenceFailure { .. } | Error::TooManyPermutations { .. } => {
                ErrorClass::Numerical
            }
            Error::InvalidMPoint(_) | Error::NotAGroup(_) => ErrorClass::Numerical,
            Error::InfiniteIsotropy => ErrorClass::InfiniteIsotropy,
            _ => ErrorClass::InvalidInput,
        }
    }

    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DegenerateTriple => "DegenerateTriple",
            Error::UndefinedCrossRatio => "UndefinedCrossRatio",
            Error::SingularMobius => "SingularMobius",
            Error::NonFinite => "NonFinite",
            Error::ConvergenceFailure { .. } => "ConvergenceFailure",
            Error::RepeatedPole { .. } => "RepeatedPole",
            Error::ZeroResidue { .. } => "ZeroResidue",
            Error::ResidueTheoremViolation { .. } => "ResidueTheoremViolation",
            Error::CommonZeroPole => "CommonZeroPole",
            Error::MultiplePole => "MultiplePole",
            Error::BadChart { .. } => "BadChart",
            Error::Shape(_) => "Shape",
            Error::EvaluationAtPole => "EvaluationAtPole",
            Error::InfiniteIsotropy => "InfiniteIsotropy",
            Error::TooManyPermutations { .. } => "TooManyPermutations",
            Error::NotAGroup(_) => "NotAGroup",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::InvalidMPoint(_) => "InvalidMPoint",
            Error::NotIsochronous => "NotIsochronous",
            Error::ZeroImaginaryPart => "ZeroImaginaryPart",
            Error::NotUnitModulus { .. } => "NotUnitModulus",
            Error::SizeMismatch { .. } => "SizeMismatch",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
