use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("p must be odd (got {0})")]
    EvenPrime(u64),
    #[error("m must be positive")]
    ZeroDegree,
    #[error("q = {p}^{m} exceeds the size bound {bound}")]
    FieldTooLarge { p: u64, m: u32, bound: u64 },
    #[error("discrete logarithm of zero")]
    ZeroLog,
    #[error("character order k = {0} must be odd")]
    EvenOrder(u64),
    #[error("character order k = {0} must be at least 3")]
    OrderTooSmall(u64),
    #[error("k = {k} does not divide q - 1 = {q_minus_1}")]
    OrderNotDividing { k: u64, q_minus_1: u64 },
    #[error("cyclotomic orders differ: {0} vs {1}")]
    MismatchedOrder(u64, u64),
    #[error("gcd of two zero polynomials")]
    ZeroGcd,
    #[error("cannot factor a constant polynomial")]
    ConstantPolynomial,
    #[error("sequence is identically zero")]
    ZeroSequence,
    #[error("character index {j} is out of range for order {n}")]
    BadCharacter { n: u64, j: u64 },
    #[error("(K + 1)/2 is not integral: coefficient {index} is odd")]
    NonIntegralHalf { index: usize },
    #[error("gcd(p, k) != 1 for p = {p}, k = {k}")]
    NotCoprime { p: u64, k: u64 },
    #[error("l = {0} must be a prime congruent to 3 mod 4 and greater than 3")]
    BadDiscriminant(u64),
    #[error("parameters outside the pure regime: {0}")]
    NotPure(String),
    #[error("parameters outside the index-2 regime: {0}")]
    NotIndexTwo(String),
    #[error("no representation 4p^h = a^2 + l b^2 found for p = {p}, l = {l}, h = {h}")]
    NoRepresentation { p: u64, l: u64, h: u64 },
    #[error("class number h = {0} is even, (1 - h)s/2 is not an integer")]
    EvenClassNumber(u64),
    #[error("no closed form in scope: {0}")]
    NoClosedForm(String),
    #[error("q = {q} exceeds the direct-verification bound {bound} (use --predict-only)")]
    DirectBoundExceeded { q: String, bound: u64 },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}
