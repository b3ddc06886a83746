//! The symbolic interpretation built from a reference diagram `M`.
//!
//! The space of `A` has one basis vector per `A`-labeled wire of `M`. Each
//! box `b : g` of `M` contributes `ξ_b` to the tensor of `g` at the position
//! of its own wires, and `ξ̄_b` to the tensor of `g†` at the mirrored
//! position. Evaluating another diagram `N` in this interpretation gives a
//! polynomial whose coefficient at `Π_b ξ_b` counts the isomorphisms `N -> M`.

use num_bigint::BigInt;

use super::{denote, Interpretation, SemanticsError};
use crate::diagram::Diagram;
use crate::scalars::{ConjPolynomial, Monomial, PolyVar};
use crate::signature::Signature;

/// Objects that label no wire of `m` get dimension 0.
pub fn m_interpretation(
    m: &Diagram,
    sig: &Signature,
) -> Result<Interpretation<ConjPolynomial>, SemanticsError> {
    if !m.is_simple() {
        return Err(SemanticsError::NotSimple);
    }
    let mut pos = vec![0usize; m.wire_count()];
    let mut dims = vec![0usize; sig.object_count()];
    let mut bases: Vec<Vec<String>> = vec![Vec::new(); sig.object_count()];
    for (w, &o) in m.wires.iter().enumerate() {
        pos[w] = dims[o.index()];
        dims[o.index()] += 1;
        bases[o.index()].push(format!("{}{}", sig.object_name(o), w + 1));
    }
    let mut interp = Interpretation::zeros(sig, &dims);
    for o in sig.objects() {
        interp.set_basis(o, std::mem::take(&mut bases[o.index()]));
    }
    for (b, node) in m.boxes.iter().enumerate() {
        let outs = node.outputs.iter().map(|&w| pos[w]);
        let ins = node.inputs.iter().map(|&w| pos[w]);
        let idx: Vec<usize> = outs.clone().chain(ins.clone()).collect();
        let mirrored: Vec<usize> = ins.chain(outs).collect();
        interp
            .matrix_mut(node.label)
            .add_at(&idx, &ConjPolynomial::var(PolyVar::xi(b)));
        interp
            .matrix_mut(sig.dagger(node.label))
            .add_at(&mirrored, &ConjPolynomial::var(PolyVar::xibar(b)));
    }
    Ok(interp)
}

/// The coefficient of `Π_{b ∈ B(m)} ξ_b` in the value of `n` under the
/// interpretation built from `m`.
pub fn iso_count_semantic(
    n: &Diagram,
    m: &Diagram,
    sig: &Signature,
) -> Result<BigInt, SemanticsError> {
    if !n.is_simple() || !m.is_simple() {
        return Err(SemanticsError::NotSimple);
    }
    let interp = m_interpretation(m, sig)?;
    let p = denote(n, &interp)?;
    Ok(p.coefficient_of(&Monomial::product_of_boxes(0..m.box_count())))
}
