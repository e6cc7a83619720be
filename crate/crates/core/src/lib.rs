//! Exact independence polynomials of graphs, certified largest real roots,
//! the root-interval order between graphs, dominance and convertibility of
//! integer sequences, and exhaustive scans over small trees.

pub mod canon;
pub mod error;
pub mod family;
pub mod graph;
pub mod indpoly;
pub mod order;
pub mod poly;
pub mod roots;
pub mod scan;
pub mod seq;
pub mod trees;

pub use canon::canonical_form;
pub use error::{Error, Result};
pub use family::{parse_graph, FamilySpec};
pub use graph::Graph;
pub use indpoly::{
    brute_force_polynomial, independence_polynomial, independence_polynomial_tree,
    IndependenceCalculator,
};
pub use order::{compare, dominates, OrderVerdict};
pub use poly::IntPolynomial;
pub use roots::{largest_real_root, sign_at_root, xi, AlgebraicRoot};
pub use seq::{ConversionStep, IntSequence};
pub use trees::{all_trees, TreeCorpus};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
