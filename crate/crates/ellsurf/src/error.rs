use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Polynomial text did not conform to the input grammar.
    Syntax { offset: usize, message: String },
    /// Exponent in polynomial text exceeded 10^6.
    ExponentOverflow { offset: usize },
    /// An operation that requires a nonzero polynomial received zero.
    ZeroPolynomial,
    /// Valuations are taken at monic moduli of degree >= 1.
    InvalidModulus,
    /// `reverse_pad` window smaller than the polynomial degree.
    WindowTooSmall { degree: usize, window: usize },
    /// Declared degree bound violated at pair construction.
    DegreeBound { which: char, degree: usize, bound: u32 },
    /// Frame bounds m, n must be positive.
    InvalidFrame,
    /// 4A^3 + 27B^2 = 0: the pair does not define an elliptic surface.
    NotAnEllipticSurface,
    /// A valuation triple that no Kodaira type matches (impossible for
    /// genuine Weierstrass data; reported rather than defaulted).
    InconsistentLocalData { v_c4: String, v_c6: String, v_disc: u32 },
    /// Configuration Euler number does not match 12k.
    EulerMismatch { euler: u32, expected: u32 },
    /// Euler number of a configuration is not a multiple of 12.
    EulerNotMultipleOf12 { euler: u32 },
    /// chi derived from the configuration disagrees with the frame k of a
    /// U-member.
    ChiMismatch { chi: u32, k: u32 },
    /// Shioda-Tate does not apply to trivial elliptic surfaces.
    ShiodaTateInapplicable,
    /// Lattice bookkeeping would produce a negative rank bound.
    RankBookkeeping { chi: u32, lattice_rank: u32 },
    /// Section coordinates do not satisfy y^2 = x^3 + Ax + B.
    NotOnCurve,
    /// Section has an odd-order pole or other data impossible for a genuine
    /// section of the Weierstrass model.
    InconsistentSection,
    /// Specialization point lies on the discriminant.
    BadSpecialization,
    /// torsion_bound accepts odd primes only.
    NotAnOddPrime { p: u64 },
    /// Point counting is exhaustive; primes are capped at 10^4.
    PrimeTooLarge { p: u64 },
    /// Every supplied prime divides the specialized discriminant.
    NoUsablePrime,
    /// Twisting by d = 0 is undefined.
    ZeroTwist,
    /// Squarefree-class canonicalization gave up: a cofactor above the
    /// trial-division limit could not be resolved.
    FactorLimitExceeded,
    /// tw_probe requires a U-member.
    NotInU,
    /// Exhaustive enumeration requires an integer bound.
    NonIntegerBound,
    /// Exhaustive box exceeds the 10^9 tuple cap.
    BoxTooLarge { size: u128 },
    /// Root finder hit the iteration cap before meeting the tolerance.
    RootFindingDidNotConverge { residual: f64 },
    /// A coefficient does not fit in f64 for root finding.
    CoefficientOverflow,
    /// Tolerance must be positive.
    InvalidTolerance,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Syntax { offset, message } => {
                write!(f, "syntax error at byte {offset}: {message}")
            }
            Error::ExponentOverflow { offset } => {
                write!(f, "exponent overflow at byte {offset} (limit 10^6)")
            }
            Error::ZeroPolynomial => write!(f, "zero polynomial rejected"),
            Error::InvalidModulus => write!(f, "modulus must be monic of degree >= 1"),
            Error::WindowTooSmall { degree, window } => {
                write!(f, "degree {degree} exceeds reversal window {window}")
            }
            Error::DegreeBound { which, degree, bound } => {
                write!(f, "deg {which} = {degree} exceeds declared bound {bound}")
            }
            Error::InvalidFrame => write!(f, "frame bounds m, n must be >= 1"),
            Error::NotAnEllipticSurface => write!(f, "not_in_S: 4A^3 + 27B^2 = 0"),
            Error::InconsistentLocalData { v_c4, v_c6, v_disc } => {
                write!(f, "inconsistent local data (v_c4, v_c6, v_disc) = ({v_c4}, {v_c6}, {v_disc})")
            }
            Error::EulerMismatch { euler, expected } => {
                write!(f, "euler number {euler} does not match expected {expected}")
            }
            Error::EulerNotMultipleOf12 { euler } => {
                write!(f, "euler number {euler} is not a multiple of 12")
            }
            Error::ChiMismatch { chi, k } => {
                write!(f, "chi = {chi} from configuration disagrees with frame k = {k}")
            }
            Error::ShiodaTateInapplicable => {
                write!(f, "Shioda-Tate inapplicable: trivial elliptic surface")
            }
            Error::RankBookkeeping { chi, lattice_rank } => {
                write!(f, "rank bookkeeping failure: 10*{chi} - 2 < root lattice rank {lattice_rank}")
            }
            Error::NotOnCurve => write!(f, "section does not lie on the curve"),
            Error::InconsistentSection => write!(f, "inconsistent section data"),
            Error::BadSpecialization => write!(f, "bad specialization: discriminant vanishes"),
            Error::NotAnOddPrime { p } => write!(f, "{p} is not an odd prime"),
            Error::PrimeTooLarge { p } => write!(f, "prime {p} exceeds the 10^4 cap"),
            Error::NoUsablePrime => write!(f, "no usable prime of good reduction"),
            Error::ZeroTwist => write!(f, "twist by 0 is undefined"),
            Error::FactorLimitExceeded => {
                write!(f, "could not canonicalize twist class: factor above trial-division limit")
            }
            Error::NotInU => write!(f, "operation requires a U-member"),
            Error::NonIntegerBound => write!(f, "exhaustive enumeration requires an integer bound"),
            Error::BoxTooLarge { size } => {
                write!(f, "box of {size} tuples exceeds the 10^9 cap")
            }
            Error::RootFindingDidNotConverge { residual } => {
                write!(f, "root finder did not converge (residual {residual:.3e})")
            }
            Error::CoefficientOverflow => write!(f, "coefficient does not fit in f64"),
            Error::InvalidTolerance => write!(f, "tolerance must be positive"),
        }
    }
}

impl std::error::Error for Error {}
