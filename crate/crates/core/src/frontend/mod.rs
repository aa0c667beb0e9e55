//! Input files and the SMT-LIB text exchange.
//!
//! Transition systems are written as S-expressions:
//!
//! ```text
//! (declare-var x Int)
//! (init (= x 0))
//! (trans (and (< x 10) (= x' (+ x 1))))
//! (good (<= x 10))
//! ```

pub mod sexp;
pub mod smt2;
pub mod system;

pub use sexp::{Sexp, SourceSpan};
pub use smt2::{parse_assignments, parse_model, print_smt2, ModelParseError};
pub use system::{parse_formula, parse_system, ParseError, ParseErrorKind};
