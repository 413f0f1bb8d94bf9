//! Exact computation of Hochschild, Harrison and Barr cohomology of
//! commutative monoids, with Beck-module coefficients, over Z, Q and
//! prime fields.
//!
//! The grading monoid `X` turns into the graded monoid algebra with one
//! copy of the coefficient ring in each degree; Beck modules over `X`
//! are exactly graded modules over that algebra, so the classical
//! cochain machinery applies degree by degree. Everything here is exact
//! arithmetic: big integers, big rationals, or a prime field.

pub mod beck;
pub mod complexes;
pub mod derivations;
pub mod error;
pub mod linalg;
pub mod monoid;
pub mod perms;
pub mod words;

pub use beck::{BeckModule, RightBeckModule};
pub use complexes::{CochainSlice, DegreeSelection, SliceOptions, SymmetryMode, Theory};
pub use error::Error;
pub use linalg::{AbelianGroup, Integers, LinAlg, PrimeField, Rationals, Ring, SparseMat};
pub use monoid::{Elt, FiniteCommutativeMonoid, FreeMonoid, LeechHomSet, Monoid};
pub use perms::Permutation;
pub use words::{BarWord, WordSum};
