//! Isomorphism search between diagrams.
//!
//! Boxes of both diagrams are coloured jointly by iterated refinement over
//! (label, neighbour colours at each port). The search then assigns boxes of
//! `n` in a fixed order, trying only same-colour boxes of `m`. The wire map
//! is read off the box map through the unique producer of each wire, and
//! each assignment is checked against the wiring of already-assigned
//! neighbours.

use std::collections::BTreeMap;

use super::Diagram;

/// A pair of bijections `wires: W(N) -> W(M)` and `boxes: B(N) -> B(M)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiagramIso {
    pub boxes: Vec<usize>,
    pub wires: Vec<usize>,
}

/// Checks the definition directly: both maps are bijections, labels are
/// preserved, and the input/output wiring of every box is carried over.
pub fn is_isomorphism(n: &Diagram, m: &Diagram, iso: &DiagramIso) -> bool {
    if n.trivial_cycles != m.trivial_cycles
        || iso.boxes.len() != n.box_count()
        || iso.wires.len() != n.wire_count()
        || n.box_count() != m.box_count()
        || n.wire_count() != m.wire_count()
        || !is_bijection(&iso.boxes, m.box_count())
        || !is_bijection(&iso.wires, m.wire_count())
    {
        return false;
    }
    if (0..n.wire_count()).any(|w| n.wires[w] != m.wires[iso.wires[w]]) {
        return false;
    }
    n.boxes.iter().enumerate().all(|(b, nb)| {
        let mb = &m.boxes[iso.boxes[b]];
        nb.label == mb.label
            && nb.inputs.len() == mb.inputs.len()
            && nb.outputs.len() == mb.outputs.len()
            && nb
                .inputs
                .iter()
                .zip(&mb.inputs)
                .all(|(&w, &v)| iso.wires[w] == v)
            && nb
                .outputs
                .iter()
                .zip(&mb.outputs)
                .all(|(&w, &v)| iso.wires[w] == v)
    })
}

fn is_bijection(map: &[usize], size: usize) -> bool {
    let mut seen = vec![false; size];
    for &x in map {
        if x >= size || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    map.len() == size
}

/// All isomorphisms `n -> m`, at most `limit` of them, sorted by box map.
pub fn find_isos(n: &Diagram, m: &Diagram, limit: Option<usize>) -> Vec<DiagramIso> {
    let mut out = Vec::new();
    search(n, m, &mut |psi_b| {
        out.push(DiagramIso {
            boxes: psi_b.to_vec(),
            wires: wire_map(n, m, psi_b),
        });
        !limit.is_some_and(|l| out.len() >= l)
    });
    out.sort();
    for iso in &out {
        assert!(
            is_bijection(&iso.wires, m.wire_count()),
            "wire map of an isomorphism is not a bijection"
        );
    }
    out
}

/// Number of isomorphisms `n -> m`.
pub fn iso_count(n: &Diagram, m: &Diagram) -> u64 {
    let mut count = 0u64;
    search(n, m, &mut |_| {
        count += 1;
        true
    });
    count
}

fn wire_map(n: &Diagram, m: &Diagram, psi_b: &[usize]) -> Vec<usize> {
    let mut psi_w = vec![usize::MAX; n.wire_count()];
    for (b, node) in n.boxes.iter().enumerate() {
        for (j, &w) in node.outputs.iter().enumerate() {
            psi_w[w] = m.boxes[psi_b[b]].outputs[j];
        }
    }
    psi_w
}

/// Producer `(box, port)` of each input port and consumer of each output port.
struct Adjacency {
    inputs_from: Vec<Vec<(usize, usize)>>,
    outputs_to: Vec<Vec<(usize, usize)>>,
}

impl Adjacency {
    fn of(d: &Diagram) -> Self {
        let ends = d.wire_ends();
        Adjacency {
            inputs_from: d
                .boxes
                .iter()
                .map(|b| b.inputs.iter().map(|&w| ends[w].producer).collect())
                .collect(),
            outputs_to: d
                .boxes
                .iter()
                .map(|b| b.outputs.iter().map(|&w| ends[w].consumer).collect())
                .collect(),
        }
    }
}

/// Joint colour refinement; returns the colours of `n`'s boxes and `m`'s
/// boxes, or `None` if the colour histograms differ.
fn refine(
    n: &Diagram,
    m: &Diagram,
    an: &Adjacency,
    am: &Adjacency,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut cn: Vec<usize> = n.boxes.iter().map(|b| b.label.index()).collect();
    let mut cm: Vec<usize> = m.boxes.iter().map(|b| b.label.index()).collect();
    let mut classes = usize::MAX;
    loop {
        type Sig = (usize, Vec<(usize, usize)>, Vec<(usize, usize)>);
        let sig_of = |c: &[usize], a: &Adjacency, b: usize| -> Sig {
            (
                c[b],
                a.inputs_from[b].iter().map(|&(p, j)| (c[p], j)).collect(),
                a.outputs_to[b].iter().map(|&(q, k)| (c[q], k)).collect(),
            )
        };
        let sn: Vec<Sig> = (0..cn.len()).map(|b| sig_of(&cn, an, b)).collect();
        let sm: Vec<Sig> = (0..cm.len()).map(|b| sig_of(&cm, am, b)).collect();
        let mut ids: BTreeMap<&Sig, usize> = BTreeMap::new();
        for s in sn.iter().chain(&sm) {
            let k = ids.len();
            ids.entry(s).or_insert(k);
        }
        let new_n: Vec<usize> = sn.iter().map(|s| ids[s]).collect();
        let new_m: Vec<usize> = sm.iter().map(|s| ids[s]).collect();
        let mut hist = vec![0i64; ids.len()];
        for &c in &new_n {
            hist[c] += 1;
        }
        for &c in &new_m {
            hist[c] -= 1;
        }
        if hist.iter().any(|&h| h != 0) {
            return None;
        }
        let stable = ids.len() == classes;
        classes = ids.len();
        cn = new_n;
        cm = new_m;
        if stable {
            return Some((cn, cm));
        }
    }
}

/// Assignment order for `n`'s boxes: at each step, prefer boxes adjacent to
/// already-ordered ones, then the smallest colour class, then lowest id.
fn search_order(an: &Adjacency, colours: &[usize]) -> Vec<usize> {
    let k = colours.len();
    let mut class_size: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in colours {
        *class_size.entry(c).or_insert(0) += 1;
    }
    let mut placed = vec![false; k];
    let mut adjacent = vec![false; k];
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let b = (0..k)
            .filter(|&b| !placed[b])
            .min_by_key(|&b| (!adjacent[b], class_size[&colours[b]], b))
            .unwrap();
        placed[b] = true;
        order.push(b);
        for &(p, _) in an.inputs_from[b].iter().chain(&an.outputs_to[b]) {
            adjacent[p] = true;
        }
    }
    order
}

/// Calls `visit` with every isomorphism's box map; stops early when
/// `visit` returns false.
fn search(n: &Diagram, m: &Diagram, visit: &mut dyn FnMut(&[usize]) -> bool) {
    if n.box_count() != m.box_count()
        || n.wire_count() != m.wire_count()
        || n.trivial_cycles != m.trivial_cycles
    {
        return;
    }
    let mut ln: Vec<_> = n.boxes.iter().map(|b| b.label).collect();
    let mut lm: Vec<_> = m.boxes.iter().map(|b| b.label).collect();
    ln.sort();
    lm.sort();
    if ln != lm {
        return;
    }
    let an = Adjacency::of(n);
    let am = Adjacency::of(m);
    let Some((cn, cm)) = refine(n, m, &an, &am) else {
        return;
    };
    let order = search_order(&an, &cn);
    let mut s = Search {
        m,
        an: &an,
        cn: &cn,
        cm: &cm,
        order: &order,
        psi_b: vec![usize::MAX; n.box_count()],
        used: vec![false; m.box_count()],
    };
    s.go(0, visit);
}

struct Search<'a> {
    m: &'a Diagram,
    an: &'a Adjacency,
    cn: &'a [usize],
    cm: &'a [usize],
    order: &'a [usize],
    psi_b: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn go(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.psi_b);
        }
        let b = self.order[depth];
        for c in 0..self.m.box_count() {
            if self.used[c] || self.cm[c] != self.cn[b] {
                continue;
            }
            self.psi_b[b] = c;
            if self.consistent(b) {
                self.used[c] = true;
                let more = self.go(depth + 1, visit);
                self.used[c] = false;
                if !more {
                    self.psi_b[b] = usize::MAX;
                    return false;
                }
            }
            self.psi_b[b] = usize::MAX;
        }
        true
    }

    /// With `b` just assigned, checks every wire between `b` and an
    /// assigned box (including `b` itself) lands on the matching wire of `m`.
    fn consistent(&self, b: usize) -> bool {
        let mb = &self.m.boxes[self.psi_b[b]];
        for (i, &(p, j)) in self.an.inputs_from[b].iter().enumerate() {
            let pm = self.psi_b[p];
            if pm != usize::MAX && self.m.boxes[pm].outputs[j] != mb.inputs[i] {
                return false;
            }
        }
        for (j, &(q, k)) in self.an.outputs_to[b].iter().enumerate() {
            let qm = self.psi_b[q];
            if qm != usize::MAX && self.m.boxes[qm].inputs[k] != mb.outputs[j] {
                return false;
            }
        }
        true
    }
}
