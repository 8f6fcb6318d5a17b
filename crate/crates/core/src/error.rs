use thiserror::Error;

/// Everything that can go wrong in this crate. Variants carry the offending
/// value so that property suites can print an actionable counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter {name} must be at least 1")]
    ZeroParameter { name: &'static str },

    #[error("{first} and {second} are not coprime")]
    NotCoprime { first: u64, second: u64 },

    #[error("invalid Dyck path: {0}")]
    InvalidPath(String),

    #[error("series has nonzero constant term; exp is undefined")]
    NonzeroConstantTerm,

    #[error("expected {expected} generators, found {found}")]
    WrongGeneratorCount { expected: usize, found: usize },

    #[error("generator {value} at residue {residue} is not congruent to it modulo {modulus}")]
    ResidueMismatch {
        residue: usize,
        value: i64,
        modulus: i64,
    },

    #[error("subset is not 0-normalized: smallest generator is {min}")]
    NotNormalized { min: i64 },

    #[error(
        "not md-invariant: generator {generator} (residue {residue}) + md = {witness} is missing"
    )]
    NotInvariant {
        residue: usize,
        generator: i64,
        witness: i64,
    },

    #[error("suspicion is only defined for positive shifts")]
    ZeroShift,

    #[error("residue {residue} is out of range 0..{modulus}")]
    ResidueOutOfRange { residue: usize, modulus: usize },

    #[error("enumeration bound {bound} is below the minimum {min}")]
    BoundTooSmall { bound: i64, min: i64 },

    #[error("enumeration not bound-stable: {count} subsets at bound {bound}, {doubled_count} at bound {doubled}")]
    BoundUnstable {
        bound: i64,
        count: usize,
        doubled: i64,
        doubled_count: usize,
    },

    #[error("skeletons of components {i} and {j} intersect")]
    SkeletonsIntersect { i: usize, j: usize },

    #[error("disjoint skeletons of components {i} and {j} but neither containment holds")]
    NoContainment { i: usize, j: usize },

    #[error("invalid bicolored digraph: {0}")]
    InvalidDigraph(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("subset is not {s}-admissible: {s} is {residue}-suspicious")]
    NotAdmissible { s: u64, residue: usize },

    #[error("invalid pattern path: {0}")]
    InvalidPattern(String),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("evaluation point hits a pole")]
    Pole,

    #[error("{what} exceeds the supported size {limit}")]
    TooLarge { what: &'static str, limit: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
