//! Error type shared by every module of the crate.
//!
//! All fallible operations return [`AhError`] through the crate-wide
//! [`Result`] alias. Variants are deliberately fine grained so callers can
//! match on the exact failure instead of parsing messages.

use std::error::Error;
use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, AhError>;

/// Every failure the library can report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AhError {
    /// Division or inversion of zero (scalars, polynomials, residues).
    DivisionByZero,
    /// Two operands live over different field or algebra contexts.
    MixedContexts,
    /// The operation needs positive characteristic but the field has char 0.
    CharacteristicZero,
    /// The operation needs characteristic zero but the field has char p > 0.
    CharPositive,
    /// The modulus of a prime field is not prime.
    NotPrime(u64),
    /// The modulus of a prime field exceeds the supported 2^31 bound.
    PrimeTooLarge(u64),
    /// An extension modulus is unusable (wrong base, not monic, constant,
    /// or not certified irreducible).
    BadModulus(String),
    /// A polynomial that must be constant-free (degree >= 1) was constant.
    ConstantPolynomial,
    /// Complete factorization is outside the supported desk scale.
    FactorizationOutOfScope,
    /// An input exceeds a documented size guard; the message names the bound.
    SizeGuard(String),
    /// `raise_part` asked to raise a part the partition does not have.
    MissingPart,
    /// The weight-module constructors need h(lambda) = 0.
    LambdaNotRootOfH,
    /// `l_module_factor` needs f to be a monic prime factor of h.
    FNotFactorOfH,
    /// A polynomial required to be prime is not certified prime.
    /// Carries a human-readable description of the offender.
    PolynomialNotPrime(String),
    /// The quotient polynomial g is not prime over D/m; carries a proper
    /// factor when the reducibility search produced one.
    GNotPrime(Option<String>),
    /// `l_z_beta` needs h(lambda) != 0.
    HVanishesAtLambda,
    /// `weyl_restrict` input does not satisfy YX - XY = I.
    NotAWeylModule,
    /// `n_quotient_hom` needs the ideal (f) to be delta-invariant.
    NotDeltaInvariant,
    /// The operation rejects the zero element.
    ZeroElement,
    /// `induced_reduce` needs f to not divide h.
    FDividesH,
    /// An exhaustive enumeration over the field would exceed its guard.
    FieldTooLarge,
    /// Exhaustive submodule enumeration is only defined over finite fields.
    CharZeroUnsupported,
    /// An exact division promised by the theory left a remainder.
    DivisibilityViolated,
    /// The ordered product defining z_p disagrees with its closed form.
    CenterIdentityViolated,
    /// The matrices handed to a module constructor violate YX - XY = h(X).
    RelationViolated,
    /// Matrix inputs with incompatible or non-square shapes.
    ShapeMismatch(String),
    /// The char-p constructors only accept parameters from the prime field.
    PrimeFieldOnly,
    /// h = 0 is excluded throughout.
    ZeroH,
    /// Malformed textual or JSON input; carries a description.
    ParseError(String),
}

impl fmt::Display for AhError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AhError::DivisionByZero => write!(f, "division by zero"),
            AhError::MixedContexts => write!(f, "operands belong to different contexts"),
            AhError::CharacteristicZero => {
                write!(f, "operation requires positive characteristic")
            }
            AhError::CharPositive => write!(f, "operation requires characteristic zero"),
            AhError::NotPrime(p) => write!(f, "{p} is not prime"),
            AhError::PrimeTooLarge(p) => {
                write!(f, "prime modulus {p} exceeds the 2^31 bound")
            }
            AhError::BadModulus(msg) => write!(f, "bad extension modulus: {msg}"),
            AhError::ConstantPolynomial => {
                write!(f, "polynomial must have degree at least 1")
            }
            AhError::FactorizationOutOfScope => {
                write!(f, "complete factorization is out of scope for this input")
            }
            AhError::SizeGuard(msg) => write!(f, "size guard exceeded: {msg}"),
            AhError::MissingPart => write!(f, "partition has no part of the requested size"),
            AhError::LambdaNotRootOfH => write!(f, "lambda is not a root of h"),
            AhError::FNotFactorOfH => write!(f, "f is not a monic factor of h"),
            AhError::PolynomialNotPrime(what) => {
                write!(f, "polynomial is not certified prime: {what}")
            }
            AhError::GNotPrime(Some(w)) => {
                write!(f, "g is not prime over D/m; proper factor {w}")
            }
            AhError::GNotPrime(None) => {
                write!(f, "g could not be certified prime over D/m")
            }
            AhError::HVanishesAtLambda => write!(f, "h vanishes at lambda"),
            AhError::NotAWeylModule => write!(f, "matrices do not satisfy YX - XY = I"),
            AhError::NotDeltaInvariant => write!(f, "ideal (f) is not delta-invariant"),
            AhError::ZeroElement => write!(f, "zero element not allowed here"),
            AhError::FDividesH => write!(f, "f divides h"),
            AhError::FieldTooLarge => {
                write!(f, "field too large for exhaustive enumeration")
            }
            AhError::CharZeroUnsupported => {
                write!(f, "exhaustive enumeration needs a finite field")
            }
            AhError::DivisibilityViolated => {
                write!(f, "exact division failed where the theory promises divisibility")
            }
            AhError::CenterIdentityViolated => {
                write!(f, "ordered product for z_p disagrees with its closed form")
            }
            AhError::RelationViolated => {
                write!(f, "matrices do not satisfy YX - XY = h(X)")
            }
            AhError::ShapeMismatch(msg) => write!(f, "shape mismatch: {msg}"),
            AhError::PrimeFieldOnly => {
                write!(f, "parameters must come from the prime field")
            }
            AhError::ZeroH => write!(f, "h must be nonzero"),
            AhError::ParseError(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl Error for AhError {}
