//! Intrinsic linking of simplicial complexes in even-dimensional Euclidean space.
//!
//! The crate builds the complexes `M^(n)`, `σ_{2n}^{n-1} * {a,b,c}` and their
//! relatives, computes mod-2 van Kampen obstructions through the quotient
//! deleted product and GF(2) elimination, realises complexes with exact
//! rational coordinates, and checks the resulting linking statements on
//! explicit embeddings.

pub mod complex;
pub mod deleted_product;
pub mod geometry;
pub mod links;
pub mod obstruction;
pub mod z2linalg;
