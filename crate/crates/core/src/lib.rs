//! Construction and counting of binary de Bruijn sequences by the cycle
//! joining method, for linear registers whose characteristic polynomial is
//! the product of two distinct irreducible polynomials over GF(2).
//!
//! Pipeline: classify the factors ([`poly2`]), build field tables
//! ([`field`]), decompose the register's state space into cycles
//! ([`cycles`]) with a component state representation ([`staterep`]), find
//! all conjugate pairs between cycles ([`pairs`]), assemble the adjacency
//! graph and count its spanning trees exactly ([`graph`]), then join cycles
//! along spanning trees into full-period de Bruijn sequences ([`joiner`]).
//! [`golden`] pins the reference values the pipeline must reproduce and
//! [`cli`] wires everything into commands.

pub mod arith;
pub mod bitmat;
pub mod cli;
pub mod cycles;
pub mod error;
pub mod field;
pub mod golden;
pub mod graph;
pub mod joiner;
pub mod pairs;
pub mod poly2;
pub mod staterep;

pub use cycles::{decompose_irreducible, decompose_product, CycleId, LfsrSpec, ProductStructure};
pub use error::{Error, Result};
pub use field::{cyclotomic_number, cyclotomic_t3_even, FactorField, FieldTable};
pub use graph::{best_count, build_adjacency, AdjacencyGraph, TreeCount};
pub use joiner::{enumerate_trees, feedback_anf, join, sample_trees, verify_debruijn};
pub use pairs::{find_conjugate_pairs, ConjugatePair, PairCountReport, PairEngine};
pub use poly2::{classify, is_irreducible, is_primitive, poly_order, Poly2, PolyClass};
pub use staterep::{build_basis, locate_special, SpecialLocation, StateBasis};
