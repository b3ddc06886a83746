//! Evaluation of closed diagrams: the sum over all indexings of the wires of
//! the product of the box entries, times `dim A` per trivial cycle on `A`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{Interpretation, SemanticsError};
use crate::diagram::Diagram;
use crate::scalars::Scalar;

fn check_shapes<R: Scalar>(
    d: &Diagram,
    interp: &Interpretation<R>,
) -> Result<Vec<usize>, SemanticsError> {
    for &o in d.wires.iter().chain(d.trivial_cycles.keys()) {
        if o.index() >= interp.object_count() {
            return Err(SemanticsError::Shape(format!(
                "no space for object id {}",
                o.0
            )));
        }
    }
    let dims: Vec<usize> = d.wires.iter().map(|&o| interp.dim(o)).collect();
    for (b, node) in d.boxes.iter().enumerate() {
        if node.label.index() >= interp.morphism_count() {
            return Err(SemanticsError::Shape(format!(
                "no tensor for the label of box b{}",
                b + 1
            )));
        }
        let t = interp.matrix(node.label);
        let expect: Vec<usize> = node
            .outputs
            .iter()
            .chain(&node.inputs)
            .map(|&w| dims[w])
            .collect();
        if t.shape() != expect.as_slice() || t.n_out() != node.outputs.len() {
            return Err(SemanticsError::Shape(format!(
                "tensor for box b{} has shape {:?}, wires need {:?}",
                b + 1,
                t.shape(),
                expect
            )));
        }
    }
    Ok(dims)
}

fn trivial_factor<R: Scalar>(d: &Diagram, interp: &Interpretation<R>) -> R {
    let mut acc = R::one();
    for (&o, &n) in &d.trivial_cycles {
        let dim = R::from_u64(interp.dim(o) as u64);
        for _ in 0..n {
            acc = acc.mul(&dim);
        }
    }
    acc
}

/// Number of indexings of `d`'s wires, saturating at `u128::MAX`.
pub fn indexing_count<R: Scalar>(d: &Diagram, interp: &Interpretation<R>) -> u128 {
    d.wires
        .iter()
        .fold(1u128, |acc, &o| acc.saturating_mul(interp.dim(o) as u128))
}

/// Direct summation over every indexing. Exponential in the number of
/// wires; used as a reference for [`denote`].
pub fn naive_denote<R: Scalar>(
    d: &Diagram,
    interp: &Interpretation<R>,
) -> Result<R, SemanticsError> {
    let dims = check_shapes(d, interp)?;
    let mut total = R::zero();
    if dims.iter().all(|&k| k > 0) {
        let mut idx = vec![0usize; dims.len()];
        let mut key = Vec::new();
        'outer: loop {
            let mut prod = R::one();
            for node in &d.boxes {
                key.clear();
                key.extend(node.outputs.iter().chain(&node.inputs).map(|&w| idx[w]));
                let v = interp.matrix(node.label).get(&key);
                if v.is_zero() {
                    prod = R::zero();
                    break;
                }
                prod = prod.mul(&v);
            }
            if !prod.is_zero() {
                total.add_assign(&prod);
            }
            for k in 0..idx.len() {
                idx[k] += 1;
                if idx[k] < dims[k] {
                    continue 'outer;
                }
                idx[k] = 0;
            }
            break;
        }
    }
    Ok(total.mul(&trivial_factor(d, interp)))
}

/// A sparse factor over distinct wires.
struct Factor<R> {
    vars: Vec<usize>,
    entries: BTreeMap<Vec<usize>, R>,
}

impl<R: Scalar> Factor<R> {
    fn of_box(node: &crate::diagram::BoxNode, interp: &Interpretation<R>) -> Factor<R> {
        let wires: Vec<usize> = node.outputs.iter().chain(&node.inputs).copied().collect();
        let mut vars: Vec<usize> = Vec::new();
        let mut slot = Vec::with_capacity(wires.len());
        for &w in &wires {
            match vars.iter().position(|&v| v == w) {
                Some(p) => slot.push(p),
                None => {
                    slot.push(vars.len());
                    vars.push(w);
                }
            }
        }
        let mut entries = BTreeMap::new();
        'entry: for (idx, v) in interp.matrix(node.label).entries() {
            // A wire attached to two ports of the box: keep the diagonal.
            let mut key = vec![usize::MAX; vars.len()];
            for (k, &s) in slot.iter().enumerate() {
                if key[s] == usize::MAX {
                    key[s] = idx[k];
                } else if key[s] != idx[k] {
                    continue 'entry;
                }
            }
            entries.insert(key, v.clone());
        }
        Factor { vars, entries }
    }

    /// Product of two factors over the union of their variables.
    fn join(&self, other: &Factor<R>) -> Factor<R> {
        let shared: Vec<(usize, usize)> = self
            .vars
            .iter()
            .enumerate()
            .filter_map(|(i, v)| other.vars.iter().position(|u| u == v).map(|j| (i, j)))
            .collect();
        let extra: Vec<usize> = (0..other.vars.len())
            .filter(|j| !shared.iter().any(|&(_, s)| s == *j))
            .collect();
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().map(|&j| other.vars[j]));
        let mut index: HashMap<Vec<usize>, Vec<(&Vec<usize>, &R)>> = HashMap::new();
        for (k, v) in &other.entries {
            let s: Vec<usize> = shared.iter().map(|&(_, j)| k[j]).collect();
            index.entry(s).or_default().push((k, v));
        }
        let mut entries = BTreeMap::new();
        for (ka, va) in &self.entries {
            let s: Vec<usize> = shared.iter().map(|&(i, _)| ka[i]).collect();
            if let Some(matches) = index.get(&s) {
                for &(kb, vb) in matches {
                    let mut key = ka.clone();
                    key.extend(extra.iter().map(|&j| kb[j]));
                    let p = va.mul(vb);
                    if !p.is_zero() {
                        entries.insert(key, p);
                    }
                }
            }
        }
        Factor { vars, entries }
    }

    fn sum_out(&self, w: usize) -> Factor<R> {
        let p = self
            .vars
            .iter()
            .position(|&v| v == w)
            .expect("variable present");
        let mut vars = self.vars.clone();
        vars.remove(p);
        let mut entries: BTreeMap<Vec<usize>, R> = BTreeMap::new();
        for (k, v) in &self.entries {
            let mut key = k.clone();
            key.remove(p);
            match entries.get_mut(&key) {
                Some(acc) => acc.add_assign(v),
                None => {
                    entries.insert(key, v.clone());
                }
            }
        }
        entries.retain(|_, v| !v.is_zero());
        Factor { vars, entries }
    }
}

/// Evaluates `d` by eliminating wires one at a time. At each step the wire
/// whose elimination touches the smallest index space is chosen, lowest id
/// first on ties; the factors mentioning it are multiplied and the wire is
/// summed out. Equal to [`naive_denote`] in every ring.
pub fn denote<R: Scalar>(d: &Diagram, interp: &Interpretation<R>) -> Result<R, SemanticsError> {
    let dims = check_shapes(d, interp)?;
    let mut factors: Vec<Factor<R>> = d.boxes.iter().map(|b| Factor::of_box(b, interp)).collect();
    let mut remaining: BTreeSet<usize> = (0..d.wires.len()).collect();
    while let Some(w) = remaining.iter().copied().min_by_key(|&w| {
        let mut vars: BTreeSet<usize> = BTreeSet::new();
        for f in factors.iter().filter(|f| f.vars.contains(&w)) {
            vars.extend(&f.vars);
        }
        let size = vars
            .iter()
            .fold(1u128, |acc, &v| acc.saturating_mul(dims[v] as u128));
        (size, w)
    }) {
        remaining.remove(&w);
        let (touching, rest): (Vec<Factor<R>>, Vec<Factor<R>>) =
            factors.into_iter().partition(|f| f.vars.contains(&w));
        factors = rest;
        let mut it = touching.into_iter();
        let first = it.next().expect("every wire touches a box");
        let joined = it.fold(first, |acc, f| acc.join(&f));
        let reduced = joined.sum_out(w);
        if reduced.entries.is_empty() {
            return Ok(R::zero());
        }
        factors.push(reduced);
    }
    let mut total = R::one();
    for f in &factors {
        debug_assert!(f.vars.is_empty());
        match f.entries.get(&Vec::new()) {
            Some(v) => total = total.mul(v),
            None => return Ok(R::zero()),
        }
    }
    Ok(total.mul(&trivial_factor(d, interp)))
}
