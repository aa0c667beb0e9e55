//! Numerical invariant synthesis for linear integer transition systems.
//!
//! A learner proposes candidate invariants as decision trees over linear
//! attributes; a teacher checks them and answers with counterexamples. The
//! attributes come from separators: sets of convex abstract elements
//! (intervals, octagons or polyhedra) that cover the positive states of the
//! sample while excluding the negative ones.

pub mod bench;
pub mod domains;
pub mod driver;
pub mod frontend;
pub mod learner;
pub mod model;
pub mod separator;
pub mod teacher;
