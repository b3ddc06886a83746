//! Term to diagram compilation.
//!
//! Each boundary factor of a subterm is a point in a union-find structure.
//! Points are merged by composition and trace; box ports are attached to
//! points when a variable is compiled. After the whole term is processed
//! every class is one wire, or a trivial cycle when no port touches it.
//! Units and counits are a single point seen from two boundary positions,
//! so they never produce boxes.

use std::collections::BTreeMap;

use super::{BoxNode, Diagram};
use crate::signature::{ObjId, Side, Signature, Translation};
use crate::term::{type_check, Term, TypeError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CompileError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("term has type {dom} -> {cod}; only closed terms I -> I denote diagrams")]
    NotClosed { dom: String, cod: String },
    #[error("internal compiler error: {0}")]
    Internal(String),
}

struct Uf {
    parent: Vec<usize>,
    obj: Vec<ObjId>,
}

impl Uf {
    fn point(&mut self, o: ObjId) -> usize {
        let p = self.parent.len();
        self.parent.push(p);
        self.obj.push(o);
        p
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[b] = a;
        }
    }
}

/// Boundary of a compiled subterm: points for each domain and codomain factor.
struct Ends {
    dom: Vec<usize>,
    cod: Vec<usize>,
}

struct Builder<'a> {
    tr: &'a Translation,
    uf: Uf,
    /// Boxes with ports given as points.
    boxes: Vec<BoxNode>,
}

impl Builder<'_> {
    fn run(&mut self, t: &Term) -> Ends {
        match t {
            Term::Var(f) => {
                let m = self.tr.signature.morphism(*f);
                let inputs: Vec<usize> = m
                    .dom
                    .factors()
                    .iter()
                    .map(|o| self.uf.point(o.base))
                    .collect();
                let outputs: Vec<usize> = m
                    .cod
                    .factors()
                    .iter()
                    .map(|o| self.uf.point(o.base))
                    .collect();
                let table = self.tr.ports(*f);
                let pick = |p: &crate::signature::Port| match p.side {
                    Side::In => inputs[p.index],
                    Side::Out => outputs[p.index],
                };
                let ends = Ends {
                    dom: table.dom.iter().map(pick).collect(),
                    cod: table.cod.iter().map(pick).collect(),
                };
                self.boxes.push(BoxNode {
                    label: *f,
                    inputs,
                    outputs,
                });
                ends
            }
            Term::Id(s) => {
                let ps: Vec<usize> = s.factors().iter().map(|o| self.uf.point(o.base)).collect();
                Ends {
                    dom: ps.clone(),
                    cod: ps,
                }
            }
            Term::Symmetry(a, b) => {
                let pa: Vec<usize> = a.factors().iter().map(|o| self.uf.point(o.base)).collect();
                let pb: Vec<usize> = b.factors().iter().map(|o| self.uf.point(o.base)).collect();
                Ends {
                    dom: pa.iter().chain(&pb).copied().collect(),
                    cod: pb.iter().chain(&pa).copied().collect(),
                }
            }
            Term::Compose(a, b) => {
                let ea = self.run(a);
                let eb = self.run(b);
                for (&x, &y) in ea.cod.iter().zip(&eb.dom) {
                    self.uf.union(x, y);
                }
                Ends {
                    dom: ea.dom,
                    cod: eb.cod,
                }
            }
            Term::Tensor(a, b) => {
                let mut ea = self.run(a);
                let eb = self.run(b);
                ea.dom.extend(eb.dom);
                ea.cod.extend(eb.cod);
                ea
            }
            Term::Trace(x, body) => {
                let mut e = self.run(body);
                let n = x.len();
                let dom_x = e.dom.split_off(e.dom.len() - n);
                let cod_x = e.cod.split_off(e.cod.len() - n);
                for (a, b) in dom_x.into_iter().zip(cod_x) {
                    self.uf.union(a, b);
                }
                e
            }
            Term::Dagger(body) => {
                let start = self.boxes.len();
                let e = self.run(body);
                let sig = &self.tr.signature;
                for b in &mut self.boxes[start..] {
                    b.label = sig.dagger(b.label);
                    std::mem::swap(&mut b.inputs, &mut b.outputs);
                }
                Ends {
                    dom: e.cod,
                    cod: e.dom,
                }
            }
            Term::Unit(a) => {
                let p = self.uf.point(a.base);
                Ends {
                    dom: Vec::new(),
                    cod: vec![p, p],
                }
            }
            Term::Counit(a) => {
                let p = self.uf.point(a.base);
                Ends {
                    dom: vec![p, p],
                    cod: Vec::new(),
                }
            }
        }
    }
}

/// Compiles a closed term `t : I -> I` of `sig` into its string diagram over
/// the translated signature `tr` (from `sig.int_translate()`).
///
/// Boxes are numbered in the order their variables occur in `t`, and wires
/// in the order of box outputs.
pub fn compile(t: &Term, sig: &Signature, tr: &Translation) -> Result<Diagram, CompileError> {
    let (dom, cod) = type_check(t, sig)?;
    if !dom.is_unit() || !cod.is_unit() {
        return Err(CompileError::NotClosed {
            dom: sig.sort_string(&dom),
            cod: sig.sort_string(&cod),
        });
    }
    let mut b = Builder {
        tr,
        uf: Uf {
            parent: Vec::new(),
            obj: Vec::new(),
        },
        boxes: Vec::new(),
    };
    b.run(t);

    let n = b.uf.parent.len();
    let mut producers = vec![0usize; n];
    let mut consumers = vec![0usize; n];
    for node in &b.boxes {
        for &p in &node.outputs {
            let r = b.uf.find(p);
            producers[r] += 1;
        }
        for &p in &node.inputs {
            let r = b.uf.find(p);
            consumers[r] += 1;
        }
    }

    let mut diagram = Diagram::empty();
    let mut wire_of = vec![usize::MAX; n];
    let mut boxes = Vec::with_capacity(b.boxes.len());
    for node in &b.boxes {
        let mut outputs = Vec::with_capacity(node.outputs.len());
        for &p in &node.outputs {
            let r = b.uf.find(p);
            if producers[r] != 1 || consumers[r] != 1 {
                return Err(CompileError::Internal(format!(
                    "wire class with {} producers and {} consumers",
                    producers[r], consumers[r]
                )));
            }
            if b.uf.obj[r] != b.uf.obj[p] {
                return Err(CompileError::Internal("wire joins distinct objects".into()));
            }
            wire_of[r] = diagram.wires.len();
            diagram.wires.push(b.uf.obj[p]);
            outputs.push(wire_of[r]);
        }
        boxes.push(outputs);
    }
    for (node, outputs) in b.boxes.iter().zip(boxes) {
        let mut inputs = Vec::with_capacity(node.inputs.len());
        for &p in &node.inputs {
            let r = b.uf.find(p);
            if wire_of[r] == usize::MAX {
                return Err(CompileError::Internal("input without producer".into()));
            }
            inputs.push(wire_of[r]);
        }
        diagram.boxes.push(BoxNode {
            label: node.label,
            inputs,
            outputs,
        });
    }

    let mut trivial: BTreeMap<ObjId, usize> = BTreeMap::new();
    for p in 0..n {
        if b.uf.find(p) == p && producers[p] == 0 && consumers[p] == 0 {
            *trivial.entry(b.uf.obj[p]).or_insert(0) += 1;
        }
    }
    diagram.trivial_cycles = trivial;
    Ok(diagram)
}
