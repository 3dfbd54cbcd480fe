//! Exact computation with two-term projective presentations over a
//! finite-dimensional bound quiver algebra.
//!
//! The crate builds the algebra A = kQ/I from a quiver with admissible
//! relations, computes quiver representations with their Hom spaces,
//! projective covers, minimal presentations and the Auslander-Reiten
//! translate, evaluates the E-invariant of two-term presentations, tests
//! rigidity and silting, converts between presentations, decorated
//! representations and support tau-tilting pairs, mutates silting objects
//! along exchange triangles and enumerates the exchange graph.
//!
//! Composition convention, stated once and used everywhere: paths compose
//! left to right (for a: i -> j and b: j -> k the product a*b runs i -> k),
//! modules are right modules, P_v = e_v A, and Hom(P_v, P_w) = e_w A e_v
//! acts by left multiplication.
//!
//! All arithmetic is exact, over a prime field (default p = 32003) or the
//! rationals. Every randomized search is seeded deterministically, so equal
//! inputs produce byte-equal outputs.

pub mod algebra;
pub mod error;
pub mod field;
pub mod linalg;
pub mod decomp;
pub mod io;
pub mod poly;
pub mod tilting;
pub mod pres;
pub mod rep;

pub use error::{Error, Result};
pub use field::{Field, FieldDesc, PrimeField, Rationals, DEFAULT_PRIME};
