//! Equality of terms in the free dagger compact closed category.

use crate::diagram::{compile, find_isos, iso_count, CompileError, Diagram, DiagramIso};
use crate::signature::Signature;
use crate::term::{close_term, type_check_equation, Term, TypeError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    NotEqual,
}

/// What a not-equal verdict leaves for the semantics layer to produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessRequest {
    /// The trivial cycles differ, so a dimension argument separates the
    /// terms without search.
    pub trivial_cycles_differ: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Isomorphism(DiagramIso),
    WitnessRequest(WitnessRequest),
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub verdict: Verdict,
    /// Number of isomorphisms between the two diagrams.
    pub iso_count: u64,
    pub evidence: Evidence,
    pub left: Diagram,
    pub right: Diagram,
    /// The closed, translated signature both diagrams are labeled over.
    pub signature: Signature,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DecideError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Compile(#[from] CompileError),
}

/// Closes both terms with the same fresh variables, translates the
/// signature to a star-free one, and compiles both sides to diagrams.
pub fn compile_equation(
    t1: &Term,
    t2: &Term,
    sig: &Signature,
) -> Result<(Diagram, Diagram, Signature), DecideError> {
    type_check_equation(t1, t2, sig)?;
    let closure = close_term(t1, sig)?;
    let closed2 = closure.wrap(t2.clone());
    let tr = closure.signature.int_translate();
    let left = compile(&closure.term, &closure.signature, &tr)?;
    let right = compile(&closed2, &closure.signature, &tr)?;
    Ok((left, right, tr.signature))
}

/// Decides `t1 = t2`: equal exactly when the compiled diagrams are
/// isomorphic, which includes having the same trivial cycles.
pub fn decide_equal(t1: &Term, t2: &Term, sig: &Signature) -> Result<Decision, DecideError> {
    let (left, right, signature) = compile_equation(t1, t2, sig)?;
    let count = iso_count(&left, &right);
    let evidence = if count > 0 {
        let iso = find_isos(&left, &right, Some(1))
            .pop()
            .expect("an isomorphism exists");
        Evidence::Isomorphism(iso)
    } else {
        Evidence::WitnessRequest(WitnessRequest {
            trivial_cycles_differ: left.trivial_cycles != right.trivial_cycles,
        })
    };
    Ok(Decision {
        verdict: if count > 0 {
            Verdict::Equal
        } else {
            Verdict::NotEqual
        },
        iso_count: count,
        evidence,
        left,
        right,
        signature,
    })
}
