//! Finite-dimensional interpretations of diagrams.
//!
//! An interpretation assigns each object variable a dimension and each
//! morphism variable `f : A1 x .. x An -> B1 x .. x Bm` a tensor with axes
//! `B1..Bm, A1..An` (outputs first), such that the tensor of `f†` is the
//! conjugate transpose of the tensor of `f`. Interpretations are always over
//! a star-free signature, the one diagrams are labeled with.

mod basis;
mod denote;
mod minterp;
mod witness;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::lex::{self, ParseError, Tok};
use crate::scalars::{ParseScalar, Scalar};
use crate::signature::{MorId, ObjId, Signature};

pub use basis::{change_basis, random_unitary};
pub use denote::{denote, indexing_count, naive_denote};
pub use minterp::{iso_count_semantic, m_interpretation};
pub use witness::{
    find_witness, random_interpretation, trivial_cycle_witness, Witness, WitnessConfig,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Shape(String),
    #[error("diagram has trivial cycles; only simple diagrams are allowed here")]
    NotSimple,
    #[error("interpretation violates the dagger condition at `{0}`")]
    Dagger(String),
    #[error("witness failed re-verification: {0}")]
    Verification(String),
}

/// A sparse tensor. Axis `k < n_out` is the `k`-th output; the rest are
/// inputs. Entries equal to zero are not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<R> {
    shape: Vec<usize>,
    n_out: usize,
    entries: BTreeMap<usize, R>,
}

impl<R: Scalar> Tensor<R> {
    pub fn zeros(shape: Vec<usize>, n_out: usize) -> Self {
        assert!(n_out <= shape.len());
        Tensor {
            shape,
            n_out,
            entries: BTreeMap::new(),
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    /// Number of index tuples, stored or not.
    pub fn size(&self) -> usize {
        self.shape.iter().product()
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.shape.len(), "index has wrong rank");
        idx.iter().zip(&self.shape).fold(0, |acc, (&i, &d)| {
            assert!(i < d, "index out of range");
            acc * d + i
        })
    }

    fn unravel(&self, mut off: usize) -> Vec<usize> {
        let mut idx = vec![0; self.shape.len()];
        for k in (0..self.shape.len()).rev() {
            idx[k] = off % self.shape[k];
            off /= self.shape[k];
        }
        idx
    }

    pub fn get(&self, idx: &[usize]) -> R {
        self.entries
            .get(&self.offset(idx))
            .cloned()
            .unwrap_or_else(R::zero)
    }

    pub fn set(&mut self, idx: &[usize], v: R) {
        let off = self.offset(idx);
        if v.is_zero() {
            self.entries.remove(&off);
        } else {
            self.entries.insert(off, v);
        }
    }

    pub fn add_at(&mut self, idx: &[usize], v: &R) {
        let cur = self.get(idx);
        self.set(idx, cur.add(v));
    }

    /// Nonzero entries in row-major index order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &R)> + '_ {
        self.entries.iter().map(|(&o, v)| (self.unravel(o), v))
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.len()
    }

    /// Conjugate transpose: outputs and inputs swap, entries are conjugated.
    pub fn dagger(&self) -> Tensor<R> {
        let n_in = self.shape.len() - self.n_out;
        let mut shape = self.shape[self.n_out..].to_vec();
        shape.extend_from_slice(&self.shape[..self.n_out]);
        let mut t = Tensor::zeros(shape, n_in);
        for (idx, v) in self.entries() {
            let mut j = idx[self.n_out..].to_vec();
            j.extend_from_slice(&idx[..self.n_out]);
            t.set(&j, v.conj());
        }
        t
    }

    pub fn approx_eq(&self, other: &Tensor<R>, rel_tol: f64) -> bool {
        if self.shape != other.shape || self.n_out != other.n_out {
            return false;
        }
        let keys: std::collections::BTreeSet<usize> = self
            .entries
            .keys()
            .chain(other.entries.keys())
            .copied()
            .collect();
        keys.into_iter().all(|k| {
            let z = R::zero();
            let a = self.entries.get(&k).unwrap_or(&z);
            let b = other.entries.get(&k).unwrap_or(&z);
            a.approx_eq(b, rel_tol)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    pub dim: usize,
    /// One label per basis vector.
    pub basis: Vec<String>,
}

impl Space {
    fn standard(name: &str, dim: usize) -> Self {
        Space {
            dim,
            basis: (1..=dim).map(|k| format!("{name}{k}")).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Interpretation<R> {
    spaces: Vec<Space>,
    matrices: Vec<Tensor<R>>,
}

impl<R: Scalar> Interpretation<R> {
    /// The zero interpretation with the given dimension per object
    /// (indexed by object id) and standard basis labels `A1, A2, ...`.
    pub fn zeros(sig: &Signature, dims: &[usize]) -> Self {
        assert_eq!(dims.len(), sig.object_count(), "one dimension per object");
        let spaces: Vec<Space> = sig
            .objects()
            .map(|o| Space::standard(sig.object_name(o), dims[o.index()]))
            .collect();
        let matrices = sig
            .morphisms()
            .map(|f| {
                let m = sig.morphism(f);
                assert!(
                    !m.dom.has_star() && !m.cod.has_star(),
                    "interpretations need a star-free signature"
                );
                let shape: Vec<usize> = m
                    .cod
                    .factors()
                    .iter()
                    .chain(m.dom.factors())
                    .map(|o| dims[o.base.index()])
                    .collect();
                Tensor::zeros(shape, m.cod.len())
            })
            .collect();
        Interpretation { spaces, matrices }
    }

    pub fn dim(&self, o: ObjId) -> usize {
        self.spaces[o.index()].dim
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim).collect()
    }

    pub fn space(&self, o: ObjId) -> &Space {
        &self.spaces[o.index()]
    }

    pub fn set_basis(&mut self, o: ObjId, labels: Vec<String>) {
        assert_eq!(labels.len(), self.spaces[o.index()].dim);
        self.spaces[o.index()].basis = labels;
    }

    pub fn matrix(&self, f: MorId) -> &Tensor<R> {
        &self.matrices[f.index()]
    }

    pub fn object_count(&self) -> usize {
        self.spaces.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.matrices.len()
    }

    /// Sets the tensor of `f` and the conjugate transpose for `f†`.
    pub fn set_matrix(&mut self, sig: &Signature, f: MorId, t: Tensor<R>) {
        assert_eq!(t.shape, self.matrices[f.index()].shape, "tensor shape");
        let g = sig.dagger(f);
        self.matrices[g.index()] = t.dagger();
        self.matrices[f.index()] = t;
    }

    /// Overwrites one tensor without touching its partner. Callers must
    /// restore the dagger condition themselves.
    pub(crate) fn matrix_mut(&mut self, f: MorId) -> &mut Tensor<R> {
        &mut self.matrices[f.index()]
    }

    /// Checks shapes against `sig` and that every `f†` is the conjugate
    /// transpose of `f` (within `rel_tol` for inexact rings).
    pub fn check(&self, sig: &Signature, rel_tol: f64) -> Result<(), SemanticsError> {
        if self.spaces.len() != sig.object_count() || self.matrices.len() != sig.morphism_count() {
            return Err(SemanticsError::Shape(
                "interpretation does not match the signature".into(),
            ));
        }
        for f in sig.morphisms() {
            let m = sig.morphism(f);
            let shape: Vec<usize> = m
                .cod
                .factors()
                .iter()
                .chain(m.dom.factors())
                .map(|o| self.dim(o.base))
                .collect();
            let t = self.matrix(f);
            if t.shape != shape || t.n_out != m.cod.len() {
                return Err(SemanticsError::Shape(format!(
                    "tensor of `{}` has shape {:?}, expected {:?}",
                    sig.morphism_name(f),
                    t.shape,
                    shape
                )));
            }
        }
        for f in sig.declared_morphisms() {
            let g = sig.dagger(f);
            if !self.matrix(f).dagger().approx_eq(self.matrix(g), rel_tol) {
                return Err(SemanticsError::Dagger(sig.morphism_name(f)));
            }
        }
        Ok(())
    }

    /// Text form: dimensions, non-standard bases, and the nonzero entries
    /// of each declared morphism. Partners are implied.
    ///
    /// ```text
    /// dim A = 2
    /// basis A = A1 A4
    /// f[1,2 | 1] = 3-i
    /// ```
    pub fn to_text(&self, sig: &Signature) -> String {
        let mut out = String::new();
        for o in sig.objects() {
            let name = sig.object_name(o);
            let s = self.space(o);
            let _ = writeln!(out, "dim {name} = {}", s.dim);
            if s.basis != Space::standard(name, s.dim).basis && s.dim > 0 {
                let _ = writeln!(out, "basis {name} = {}", s.basis.join(" "));
            }
        }
        for f in sig.declared_morphisms() {
            let t = self.matrix(f);
            for (idx, v) in t.entries() {
                let list = |xs: &[usize]| {
                    xs.iter()
                        .map(|i| (i + 1).to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                };
                let _ = writeln!(
                    out,
                    "{}[{} | {}] = {}",
                    sig.morphism_name(f),
                    list(&idx[..t.n_out]),
                    list(&idx[t.n_out..]),
                    v
                );
            }
        }
        out
    }
}

impl<R: ParseScalar> Interpretation<R> {
    /// Parses the format written by [`Interpretation::to_text`]. Entries may
    /// also be given for `f†`; they are conjugate-transposed onto `f`.
    /// Conflicting entries for the same position are an error.
    pub fn parse(src: &str, sig: &Signature) -> Result<Self, SemanticsError> {
        let mut dims: Vec<Option<usize>> = vec![None; sig.object_count()];
        let mut bases: Vec<(ObjId, Vec<String>, lex::Pos)> = Vec::new();
        let mut entries: Vec<(MorId, Vec<usize>, R, lex::Pos)> = Vec::new();
        for (i, line) in src.lines().enumerate() {
            let line_no = i + 1;
            let code = line.split('#').next().unwrap_or("");
            if code.trim().is_empty() {
                continue;
            }
            let (lhs, rhs) = code.split_once('=').ok_or_else(|| {
                ParseError::new(
                    lex::Pos {
                        line: line_no,
                        col: 1,
                    },
                    "expected `=`",
                )
            })?;
            let rhs_pos = lex::Pos {
                line: line_no,
                col: lhs.chars().count() + 2,
            };
            let mut cur = lex::cursor(lhs, line_no)?;
            let (word, pos) = cur.expect_ident()?;
            match word.as_str() {
                "dim" => {
                    let (name, npos) = cur.expect_ident()?;
                    cur.expect_end()?;
                    let o = sig.object(&name).ok_or_else(|| {
                        ParseError::new(npos, format!("undeclared object variable `{name}`"))
                    })?;
                    let d = rhs.trim().parse::<usize>().map_err(|_| {
                        ParseError::new(rhs_pos, format!("`{}` is not a dimension", rhs.trim()))
                    })?;
                    if dims[o.index()].replace(d).is_some() {
                        return Err(ParseError::new(
                            npos,
                            format!("dimension of `{name}` given twice"),
                        )
                        .into());
                    }
                }
                "basis" => {
                    let (name, npos) = cur.expect_ident()?;
                    cur.expect_end()?;
                    let o = sig.object(&name).ok_or_else(|| {
                        ParseError::new(npos, format!("undeclared object variable `{name}`"))
                    })?;
                    let labels = rhs.split_whitespace().map(str::to_string).collect();
                    bases.push((o, labels, npos));
                }
                _ => {
                    let daggered = cur.eat_tok(&Tok::Dag);
                    let f = sig.lookup_morphism(&word, daggered).ok_or_else(|| {
                        ParseError::new(pos, format!("unknown morphism variable `{word}`"))
                    })?;
                    cur.expect_punct('[')?;
                    let outs = positions(&mut cur)?;
                    cur.expect_punct('|')?;
                    let ins = positions(&mut cur)?;
                    cur.expect_punct(']')?;
                    cur.expect_end()?;
                    let v = R::parse_scalar(rhs).map_err(|e| ParseError::new(rhs_pos, e))?;
                    let m = sig.morphism(f);
                    if outs.len() != m.cod.len() || ins.len() != m.dom.len() {
                        return Err(ParseError::new(
                            pos,
                            format!(
                                "`{}` takes {} output and {} input positions",
                                sig.morphism_name(f),
                                m.cod.len(),
                                m.dom.len()
                            ),
                        )
                        .into());
                    }
                    let mut idx = outs;
                    idx.extend(ins);
                    entries.push((f, idx, v, pos));
                }
            }
        }
        let mut resolved = Vec::with_capacity(dims.len());
        for o in sig.objects() {
            resolved.push(dims[o.index()].ok_or_else(|| {
                ParseError::new(
                    lex::end_pos(src, 1),
                    format!("missing `dim {} = ...`", sig.object_name(o)),
                )
            })?);
        }
        let mut interp = Interpretation::zeros(sig, &resolved);
        for (o, labels, pos) in bases {
            if labels.len() != resolved[o.index()] {
                return Err(ParseError::new(pos, "basis length differs from dimension").into());
            }
            interp.set_basis(o, labels);
        }
        let mut seen: BTreeMap<(MorId, Vec<usize>), R> = BTreeMap::new();
        for (f, idx, v, pos) in entries {
            let m = sig.morphism(f);
            let (f, idx, v) = if m.daggered {
                let n_out = m.cod.len();
                let mut j = idx[n_out..].to_vec();
                j.extend_from_slice(&idx[..n_out]);
                (m.partner, j, v.conj())
            } else {
                (f, idx, v)
            };
            let shape = interp.matrix(f).shape().to_vec();
            if idx.iter().zip(&shape).any(|(&i, &d)| i >= d) {
                return Err(ParseError::new(pos, "position exceeds dimension").into());
            }
            if let Some(prev) = seen.get(&(f, idx.clone())) {
                if *prev != v {
                    return Err(
                        ParseError::new(pos, "conflicting entries for the same position").into(),
                    );
                }
                continue;
            }
            seen.insert((f, idx.clone()), v.clone());
            interp.matrix_mut(f).set(&idx, v);
        }
        for f in sig.declared_morphisms() {
            let t = interp.matrix(f).clone();
            interp.set_matrix(sig, f, t);
        }
        Ok(interp)
    }
}

/// A possibly empty comma-separated list of 1-based positions.
fn positions(cur: &mut lex::Cursor) -> Result<Vec<usize>, ParseError> {
    let mut out = Vec::new();
    if !matches!(cur.peek(), Some(Tok::Int(_))) {
        return Ok(out);
    }
    loop {
        let p = cur.pos();
        let k = cur.expect_int()? as usize;
        if k == 0 {
            return Err(ParseError::new(p, "positions are 1-based"));
        }
        out.push(k - 1);
        if !cur.eat_punct(',') {
            return Ok(out);
        }
    }
}

/// The same dimension for every object.
pub fn uniform_dims(sig: &Signature, d: usize) -> Vec<usize> {
    vec![d; sig.object_count()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::GaussianInt;

    fn sig() -> Signature {
        Signature::parse("object A B\nmorphism f : B -> A x A\nmorphism s : I -> I\n").unwrap()
    }

    #[test]
    fn dagger_transposes_and_conjugates() {
        let mut t: Tensor<GaussianInt> = Tensor::zeros(vec![2, 3, 4], 2);
        t.set(&[1, 2, 3], GaussianInt::new(1, 5));
        let d = t.dagger();
        assert_eq!(d.shape(), &[4, 2, 3]);
        assert_eq!(d.n_out(), 1);
        assert_eq!(d.get(&[3, 1, 2]), GaussianInt::new(1, -5));
        assert_eq!(d.dagger(), t);
    }

    #[test]
    fn text_round_trip() {
        let sig = sig();
        let mut i: Interpretation<GaussianInt> = Interpretation::zeros(&sig, &[2, 1]);
        let f = sig.lookup_morphism("f", false).unwrap();
        let s = sig.lookup_morphism("s", false).unwrap();
        let mut t = i.matrix(f).clone();
        t.set(&[1, 0, 0], GaussianInt::new(3, -1));
        i.set_matrix(&sig, f, t);
        let mut t = i.matrix(s).clone();
        t.set(&[], GaussianInt::new(0, 2));
        i.set_matrix(&sig, s, t);
        i.set_basis(sig.object("A").unwrap(), vec!["A1".into(), "A4".into()]);
        let text = i.to_text(&sig);
        assert_eq!(
            text,
            "dim A = 2\nbasis A = A1 A4\ndim B = 1\nf[2,1 | 1] = 3-i\ns[ | ] = 2i\n"
        );
        let back = Interpretation::<GaussianInt>::parse(&text, &sig).unwrap();
        assert_eq!(back, i);
        back.check(&sig, 0.0).unwrap();
    }

    #[test]
    fn dagger_entries_and_conflicts() {
        let sig = sig();
        let src = "dim A = 1\ndim B = 1\nf†[1 | 1,1] = 2+i\n";
        let i = Interpretation::<GaussianInt>::parse(src, &sig).unwrap();
        let f = sig.lookup_morphism("f", false).unwrap();
        assert_eq!(i.matrix(f).get(&[0, 0, 0]), GaussianInt::new(2, -1));
        let bad = "dim A = 1\ndim B = 1\nf[1,1 | 1] = 1\nf†[1 | 1,1] = 2\n";
        assert!(Interpretation::<GaussianInt>::parse(bad, &sig).is_err());
        let missing = "dim A = 1\n";
        assert!(Interpretation::<GaussianInt>::parse(missing, &sig).is_err());
        let arity = "dim A = 1\ndim B = 1\nf[1 | 1] = 1\n";
        let e = Interpretation::<GaussianInt>::parse(arity, &sig).unwrap_err();
        assert!(e.to_string().starts_with("3:1"), "{e}");
    }
}
