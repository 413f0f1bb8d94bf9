use thiserror::Error;

/// Errors surfaced by validation and by the complex builders.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    InvalidTable(String),

    #[error("unit law violated: identity {identity} + {x} gave {got}, expected {x}")]
    UnitLawViolation { identity: usize, x: usize, got: usize },

    #[error("not commutative: {x} + {y} = {xy} but {y} + {x} = {yx}")]
    NotCommutative { x: usize, y: usize, xy: usize, yx: usize },

    #[error("not associative at ({x}, {y}, {z}): ({x}+{y})+{z} = {left} but {x}+({y}+{z}) = {right}")]
    NotAssociative { x: usize, y: usize, z: usize, left: usize, right: usize },

    #[error("module action is not functorial: {0}")]
    FunctorialityViolation(String),

    #[error("projective modules over a free monoid have infinite rank")]
    InfiniteRank,

    #[error("divided powers require even word length, got {0}")]
    OddLength(usize),

    #[error("not a complex: d.d has a nonzero entry at row {row}, col {col} (dimension {n})")]
    NotAComplex { n: usize, row: usize, col: usize },

    #[error("closure failure: the differential leaves the constrained subspace at dimension {n} (entry {row},{col})")]
    ClosureViolation { n: usize, row: usize, col: usize },

    #[error("an internal degree is required for an infinite grading monoid")]
    DegreeRequired,

    #[error("slice budget exceeded: total cochain rank {got} > budget {budget}")]
    BudgetExceeded { got: usize, budget: usize },

    #[error("derivation space and ker d^1 disagree: {der} vs {kernel}")]
    MismatchReport { der: usize, kernel: usize },

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
