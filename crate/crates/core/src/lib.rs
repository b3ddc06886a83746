//! Deciding equations in the free dagger compact closed category.
//!
//! Terms over a [`Signature`] are closed, translated to a star-free traced
//! signature, and compiled to string diagrams. Two terms are equal exactly
//! when their diagrams are isomorphic, which [`decide_equal`] checks by
//! search. The [`semantics`] module evaluates diagrams in finite-dimensional
//! interpretations, counts isomorphisms through a polynomial coefficient, and
//! looks for separating interpretations.
//!
//! ```
//! use daggereq::{decide_equal, parse_term, Signature, Verdict};
//!
//! let sig = Signature::parse("object A\nmorphism h : A -> A\nmorphism k : A -> A\n").unwrap();
//! let l = parse_term("tr[A](h ; k)", &sig).unwrap();
//! let r = parse_term("tr[A](k ; h)", &sig).unwrap();
//! assert_eq!(decide_equal(&l, &r, &sig).unwrap().verdict, Verdict::Equal);
//! ```

mod decide;
pub mod diagram;
pub mod lex;
pub mod scalars;
pub mod semantics;
pub mod signature;
pub mod term;

pub use decide::{
    compile_equation, decide_equal, DecideError, Decision, Evidence, Verdict, WitnessRequest,
};
pub use diagram::{compile, find_isos, iso_count, Diagram, DiagramIso};
pub use signature::{MorId, ObjId, Signature, SignatureKind, Sort};
pub use term::{close_term, parse_term, type_check, Term};
