//! Generators and independent reference implementations shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use daggereq::diagram::{BoxNode, Diagram};
use daggereq::scalars::Scalar;
use daggereq::semantics::Interpretation;
use daggereq::signature::{MorId, Signature, SignatureKind, SignedObject, Sort};
use daggereq::term::{type_check, Term};
use rand::seq::SliceRandom;
use rand::Rng;

pub const DIAGRAM_SIG: &str = "\
kind traced-monoidal
object A B
morphism h : A -> A
morphism k : A -> A
morphism g : A x B -> B x A
morphism f : B -> A x A
morphism c : A -> B
morphism u : I -> A
";

pub const TERM_SIG: &str = "\
object A B
morphism h : A -> A
morphism g : A x B -> B x A
morphism f : B -> A x A
morphism p : A* x B -> A
morphism u : I -> A*
";

pub const WORDS_SIG: &str = "\
kind traced-monoidal
object A
morphism h : A -> A
morphism k : A -> A
";

/// Composition is written in diagrammatic order, so `k ; h ; k ; k ; h ; h`
/// is the matrix product `h h k k h k`: the word AABBAB with A = h, B = k.
pub const WORDS_LEFT: &str = "tr[A](k ; h ; k ; k ; h ; h)";
pub const WORDS_RIGHT: &str = "tr[A](k ; k ; h ; k ; h ; h)";

// ---------------------------------------------------------------------------
// Random diagrams

/// A random simple closed diagram over `sig` with between 1 and `max_boxes`
/// boxes and at most `max_wires` wires, found by rejection sampling on box
/// labels followed by a random matching of outputs to inputs per object.
pub fn random_diagram<R: Rng>(
    sig: &Signature,
    rng: &mut R,
    max_boxes: usize,
    max_wires: usize,
) -> Diagram {
    let labels: Vec<MorId> = sig.morphisms().collect();
    loop {
        let k = rng.gen_range(1..=max_boxes);
        let chosen: Vec<MorId> = (0..k).map(|_| *labels.choose(rng).unwrap()).collect();
        let mut balance: BTreeMap<u32, i64> = BTreeMap::new();
        let mut wires = 0;
        for &f in &chosen {
            let m = sig.morphism(f);
            for o in m.cod.factors() {
                *balance.entry(o.base.0).or_insert(0) += 1;
                wires += 1;
            }
            for o in m.dom.factors() {
                *balance.entry(o.base.0).or_insert(0) -= 1;
            }
        }
        if wires == 0 || wires > max_wires || balance.values().any(|&b| b != 0) {
            continue;
        }
        return wire_up(sig, &chosen, rng);
    }
}

/// Connects the ports of boxes labeled `chosen` by a random per-object
/// matching, with wire ids in random order.
pub fn wire_up<R: Rng>(sig: &Signature, chosen: &[MorId], rng: &mut R) -> Diagram {
    let mut outs: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    let mut ins: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (b, &f) in chosen.iter().enumerate() {
        let m = sig.morphism(f);
        for (j, o) in m.cod.factors().iter().enumerate() {
            outs.entry(o.base.0).or_default().push((b, j));
        }
        for (i, o) in m.dom.factors().iter().enumerate() {
            ins.entry(o.base.0).or_default().push((b, i));
        }
    }
    let mut boxes: Vec<BoxNode> = chosen
        .iter()
        .map(|&f| {
            let m = sig.morphism(f);
            BoxNode {
                label: f,
                inputs: vec![usize::MAX; m.dom.len()],
                outputs: vec![usize::MAX; m.cod.len()],
            }
        })
        .collect();
    let mut pairs = Vec::new();
    for (o, os) in &outs {
        let mut is = ins[o].clone();
        is.shuffle(rng);
        for (&p, c) in os.iter().zip(is) {
            pairs.push((*o, p, c));
        }
    }
    pairs.shuffle(rng);
    let mut wires = Vec::new();
    for (w, (o, (pb, pj), (cb, ci))) in pairs.into_iter().enumerate() {
        wires.push(daggereq::ObjId(o));
        boxes[pb].outputs[pj] = w;
        boxes[cb].inputs[ci] = w;
    }
    Diagram {
        wires,
        boxes,
        trivial_cycles: BTreeMap::new(),
    }
}

pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// An isomorphic copy of `d` with boxes and wires renumbered at random.
pub fn permuted_copy<R: Rng>(d: &Diagram, rng: &mut R) -> Diagram {
    let pb = random_permutation(d.box_count(), rng);
    let pw = random_permutation(d.wire_count(), rng);
    d.permuted(&pb, &pw)
}

/// A pair for isomorphism counting: a relabeled copy, a rewiring of the
/// same boxes, or an unrelated diagram, chosen at random.
pub fn random_pair<R: Rng>(
    sig: &Signature,
    rng: &mut R,
    max_boxes: usize,
    max_wires: usize,
) -> (Diagram, Diagram) {
    let n = random_diagram(sig, rng, max_boxes, max_wires);
    let m = match rng.gen_range(0..3) {
        0 => permuted_copy(&n, rng),
        1 => {
            let labels: Vec<MorId> = n.boxes.iter().map(|b| b.label).collect();
            wire_up(sig, &labels, rng)
        }
        _ => random_diagram(sig, rng, max_boxes, max_wires),
    };
    (n, m)
}

// ---------------------------------------------------------------------------
// Brute-force isomorphism counting

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Label-preserving bijections `from -> to` (as maps on indices), by
/// enumerating every permutation of each label class.
fn labeled_bijections<L: Ord + Copy>(from: &[L], to: &[L]) -> Vec<Vec<usize>> {
    let mut classes: BTreeMap<L, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, &l) in from.iter().enumerate() {
        classes.entry(l).or_default().0.push(i);
    }
    for (i, &l) in to.iter().enumerate() {
        classes.entry(l).or_default().1.push(i);
    }
    let mut maps = vec![vec![usize::MAX; from.len()]];
    for (_, (src, dst)) in classes {
        if src.len() != dst.len() {
            return Vec::new();
        }
        let perms = permutations(src.len());
        let mut next = Vec::with_capacity(maps.len() * perms.len());
        for m in &maps {
            for p in &perms {
                let mut m = m.clone();
                for (k, &s) in src.iter().enumerate() {
                    m[s] = dst[p[k]];
                }
                next.push(m);
            }
        }
        maps = next;
    }
    maps
}

/// Counts pairs of bijections `(psi_w, psi_b)` satisfying the definition,
/// enumerating every label-preserving candidate for both maps.
pub fn brute_force_iso_count(n: &Diagram, m: &Diagram) -> u64 {
    if n.wires.len() != m.wires.len()
        || n.boxes.len() != m.boxes.len()
        || n.trivial_cycles != m.trivial_cycles
    {
        return 0;
    }
    let nl: Vec<MorId> = n.boxes.iter().map(|b| b.label).collect();
    let ml: Vec<MorId> = m.boxes.iter().map(|b| b.label).collect();
    let box_maps = labeled_bijections(&nl, &ml);
    if box_maps.is_empty() {
        return 0;
    }
    let wire_maps = labeled_bijections(&n.wires, &m.wires);
    let mut count = 0;
    for pb in &box_maps {
        for pw in &wire_maps {
            let ok = n.boxes.iter().enumerate().all(|(b, nb)| {
                let mb = &m.boxes[pb[b]];
                nb.inputs.iter().zip(&mb.inputs).all(|(&w, &v)| pw[w] == v)
                    && nb
                        .outputs
                        .iter()
                        .zip(&mb.outputs)
                        .all(|(&w, &v)| pw[w] == v)
            });
            if ok {
                count += 1;
            }
        }
    }
    count
}

// ---------------------------------------------------------------------------
// Matrices

pub type Matrix<R> = Vec<Vec<R>>;

/// The tensor of an endomorphism `f : A -> A` as a square matrix `[out][in]`.
pub fn endo_matrix<R: Scalar>(interp: &Interpretation<R>, f: MorId, d: usize) -> Matrix<R> {
    (0..d)
        .map(|o| (0..d).map(|i| interp.matrix(f).get(&[o, i])).collect())
        .collect()
}

pub fn mat_mul<R: Scalar>(a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(R::zero(), |acc, k| acc.add(&a[i][k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

pub fn mat_trace<R: Scalar>(a: &Matrix<R>) -> R {
    (0..a.len()).fold(R::zero(), |acc, i| acc.add(&a[i][i]))
}

/// Trace of the product `w[0] w[1] ... w[n-1]`.
pub fn trace_of_word<R: Scalar>(word: &[&Matrix<R>]) -> R {
    let mut acc = word[0].clone();
    for w in &word[1..] {
        acc = mat_mul(&acc, w);
    }
    mat_trace(&acc)
}

// ---------------------------------------------------------------------------
// Random terms

pub struct TermGen<'a, R> {
    pub sig: &'a Signature,
    pub rng: &'a mut R,
}

impl<R: Rng> TermGen<'_, R> {
    fn random_object(&mut self) -> SignedObject {
        let objs: Vec<_> = self.sig.objects().collect();
        let base = *objs.choose(self.rng).unwrap();
        if self.sig.kind() == SignatureKind::CompactClosed && self.rng.gen_bool(0.3) {
            SignedObject::star(base)
        } else {
            SignedObject::plain(base)
        }
    }

    pub fn random_sort(&mut self, max_len: usize) -> Sort {
        let n = self.rng.gen_range(0..=max_len);
        Sort((0..n).map(|_| self.random_object()).collect())
    }

    /// A well-typed term with domain `dom`; returns it with its codomain.
    pub fn gen(&mut self, dom: &Sort, depth: u32) -> (Term, Sort) {
        let compact = self.sig.kind() == SignatureKind::CompactClosed;
        for _ in 0..20 {
            let choice = if depth == 0 {
                self.rng.gen_range(0..3)
            } else {
                self.rng.gen_range(0..11)
            };
            match choice {
                0 => {
                    let fits: Vec<MorId> = self
                        .sig
                        .morphisms()
                        .filter(|&f| self.sig.morphism(f).dom == *dom)
                        .collect();
                    if let Some(&f) = fits.choose(self.rng) {
                        return (Term::Var(f), self.sig.morphism(f).cod.clone());
                    }
                }
                1 => return (Term::Id(dom.clone()), dom.clone()),
                2 => {
                    let k = self.rng.gen_range(0..=dom.len());
                    let a = Sort(dom.0[..k].to_vec());
                    let b = Sort(dom.0[k..].to_vec());
                    let cod = b.concat(&a);
                    return (Term::Symmetry(a, b), cod);
                }
                3 | 4 => {
                    let (a, mid) = self.gen(dom, depth - 1);
                    let (b, cod) = self.gen(&mid, depth - 1);
                    return (Term::compose(a, b), cod);
                }
                5 | 6 => {
                    let k = self.rng.gen_range(0..=dom.len());
                    let (a, ca) = self.gen(&Sort(dom.0[..k].to_vec()), depth - 1);
                    let (b, cb) = self.gen(&Sort(dom.0[k..].to_vec()), depth - 1);
                    return (Term::tensor(a, b), ca.concat(&cb));
                }
                7 => {
                    // Feed output `p` of `t` back through `g`.
                    let (t, y) = self.gen(dom, depth - 1);
                    if y.is_empty() {
                        continue;
                    }
                    let p = self.rng.gen_range(0..y.len());
                    let x = Sort(vec![y.0[p]]);
                    let (g, gx) = self.gen(&x, depth - 1);
                    if gx != x {
                        continue;
                    }
                    let before = Sort(y.0[..p].to_vec());
                    let after = Sort(y.0[p + 1..].to_vec());
                    let swap = Term::tensor(
                        Term::Id(before.clone()),
                        Term::Symmetry(x.clone(), after.concat(&x)),
                    );
                    let body = Term::compose(Term::tensor(t, g), swap);
                    let cod = before.concat(&after).concat(&x);
                    return (Term::trace(x, body), cod);
                }
                8 => {
                    // A whole subterm followed by its mirror image.
                    let (t, _) = self.gen(dom, depth - 1);
                    return (Term::compose(t.clone(), Term::dagger(t)), dom.clone());
                }
                9 => {
                    let (t, cod) = self.gen(dom, depth - 1);
                    return (Term::dagger(Term::dagger(t)), cod);
                }
                _ => {
                    if !compact {
                        continue;
                    }
                    let n = dom.len();
                    if n >= 2 && dom.0[n - 1] == dom.0[n - 2].dual() && self.rng.gen_bool(0.5) {
                        let a = dom.0[n - 2];
                        let rest = Sort(dom.0[..n - 2].to_vec());
                        return (Term::tensor(Term::Id(rest.clone()), Term::Counit(a)), rest);
                    }
                    let a = self.random_object();
                    let cod = dom.concat(&Sort(vec![a.dual(), a]));
                    return (Term::tensor(Term::Id(dom.clone()), Term::Unit(a)), cod);
                }
            }
        }
        (Term::Id(dom.clone()), dom.clone())
    }

    /// Randomly re-brackets compositions and tensors and inserts or removes
    /// identities; the result denotes the same morphism.
    pub fn perturb(&mut self, t: &Term) -> Term {
        let sig = self.sig;
        let t = match t {
            Term::Compose(a, b) => {
                let (a, b) = (self.perturb(a), self.perturb(b));
                match (&a, &b) {
                    (Term::Compose(x, y), _) if self.rng.gen_bool(0.5) => {
                        Term::compose((**x).clone(), Term::compose((**y).clone(), b.clone()))
                    }
                    (_, Term::Compose(x, y)) if self.rng.gen_bool(0.5) => {
                        Term::compose(Term::compose(a.clone(), (**x).clone()), (**y).clone())
                    }
                    (Term::Id(_), _) if self.rng.gen_bool(0.5) => b,
                    (_, Term::Id(_)) if self.rng.gen_bool(0.5) => a,
                    _ => Term::compose(a, b),
                }
            }
            Term::Tensor(a, b) => {
                let (a, b) = (self.perturb(a), self.perturb(b));
                match (&a, &b) {
                    (Term::Tensor(x, y), _) if self.rng.gen_bool(0.5) => {
                        Term::tensor((**x).clone(), Term::tensor((**y).clone(), b.clone()))
                    }
                    (_, Term::Tensor(x, y)) if self.rng.gen_bool(0.5) => {
                        Term::tensor(Term::tensor(a.clone(), (**x).clone()), (**y).clone())
                    }
                    _ => Term::tensor(a, b),
                }
            }
            Term::Trace(x, body) => Term::trace(x.clone(), self.perturb(body)),
            Term::Dagger(body) => Term::dagger(self.perturb(body)),
            other => other.clone(),
        };
        let (dom, cod) = type_check(&t, sig).expect("perturbation keeps types");
        match self.rng.gen_range(0..6) {
            0 => Term::compose(Term::Id(dom), t),
            1 => Term::compose(t, Term::Id(cod)),
            2 => Term::tensor(t, Term::Id(Sort::unit())),
            _ => t,
        }
    }
}
