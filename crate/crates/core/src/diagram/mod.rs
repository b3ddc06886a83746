//! Closed string diagrams over a traced monoidal signature.
//!
//! A diagram has wires labeled by object variables and boxes labeled by
//! morphism variables. Box `b` lists the wire attached to each of its inputs
//! and outputs; every wire is attached to exactly one input and exactly one
//! output. Boxless loops are not wires: they are counted per object in
//! `trivial_cycles`.
//!
//! Wire and box ids are dense and 0-based in memory. The text format and the
//! dot export number them from 1 (`w1`, `b1`, `in1`, `out1`).

mod compile;
mod dot;
mod iso;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::lex::{self, ParseError, Tok};
use crate::signature::{MorId, ObjId, Signature};

pub use compile::{compile, CompileError};
pub use dot::export_dot;
pub use iso::{find_isos, is_isomorphism, iso_count, DiagramIso};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoxNode {
    pub label: MorId,
    /// `inputs[i]` is the wire at input `i` (θ_in).
    pub inputs: Vec<usize>,
    /// `outputs[j]` is the wire at output `j` (θ_out).
    pub outputs: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagram {
    /// Label of each wire.
    pub wires: Vec<ObjId>,
    pub boxes: Vec<BoxNode>,
    /// Number of boxless loops per object variable; zero counts are not stored.
    pub trivial_cycles: BTreeMap<ObjId, usize>,
}

/// The two ends of a wire: `(box, output index)` and `(box, input index)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WireEnds {
    pub producer: (usize, usize),
    pub consumer: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid diagram: {0}")]
    Invalid(String),
}

impl Diagram {
    pub fn empty() -> Self {
        Diagram::default()
    }

    pub fn wire_count(&self) -> usize {
        self.wires.len()
    }

    pub fn box_count(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_simple(&self) -> bool {
        self.trivial_cycles.is_empty()
    }

    pub fn trivial_cycle_count(&self) -> usize {
        self.trivial_cycles.values().sum()
    }

    /// The same diagram with its trivial cycles removed.
    pub fn simple_part(&self) -> Diagram {
        Diagram {
            wires: self.wires.clone(),
            boxes: self.boxes.clone(),
            trivial_cycles: BTreeMap::new(),
        }
    }

    pub fn add_trivial_cycles(&mut self, obj: ObjId, count: usize) {
        if count > 0 {
            *self.trivial_cycles.entry(obj).or_insert(0) += count;
        }
    }

    /// Producer and consumer of every wire. Panics if the diagram is not a
    /// valid diagram; use [`Diagram::validate`] on untrusted input.
    pub fn wire_ends(&self) -> Vec<WireEnds> {
        let mut prod = vec![None; self.wires.len()];
        let mut cons = vec![None; self.wires.len()];
        for (b, node) in self.boxes.iter().enumerate() {
            for (j, &w) in node.outputs.iter().enumerate() {
                prod[w] = Some((b, j));
            }
            for (i, &w) in node.inputs.iter().enumerate() {
                cons[w] = Some((b, i));
            }
        }
        prod.into_iter()
            .zip(cons)
            .map(|(p, c)| WireEnds {
                producer: p.expect("wire without producer"),
                consumer: c.expect("wire without consumer"),
            })
            .collect()
    }

    /// Checks that θ_in and θ_out are bijections onto the wires and that the
    /// typing conditions hold against `sig`.
    pub fn validate(&self, sig: &Signature) -> Result<(), DiagramError> {
        let invalid = |m: String| Err(DiagramError::Invalid(m));
        let mut produced = vec![0usize; self.wires.len()];
        let mut consumed = vec![0usize; self.wires.len()];
        for &o in &self.wires {
            if o.index() >= sig.object_count() {
                return invalid(format!("unknown object id {}", o.0));
            }
        }
        for (b, node) in self.boxes.iter().enumerate() {
            if node.label.index() >= sig.morphism_count() {
                return invalid(format!("box b{} has unknown label", b + 1));
            }
            let m = sig.morphism(node.label);
            if m.dom.len() != node.inputs.len() || m.cod.len() != node.outputs.len() {
                return invalid(format!(
                    "box b{} labeled {} has {} inputs and {} outputs",
                    b + 1,
                    sig.morphism_name(node.label),
                    node.inputs.len(),
                    node.outputs.len()
                ));
            }
            for (ports, sort, counts, kind) in [
                (&node.inputs, &m.dom, &mut consumed, "in"),
                (&node.outputs, &m.cod, &mut produced, "out"),
            ] {
                for (k, (&w, o)) in ports.iter().zip(sort.factors()).enumerate() {
                    if w >= self.wires.len() {
                        return invalid(format!(
                            "b{}.{kind}{} refers to missing wire",
                            b + 1,
                            k + 1
                        ));
                    }
                    if o.starred || self.wires[w] != o.base {
                        return invalid(format!(
                            "wire w{} labeled {} is attached to b{}.{kind}{} of sort {}",
                            w + 1,
                            sig.object_name(self.wires[w]),
                            b + 1,
                            k + 1,
                            sig.signed_name(*o)
                        ));
                    }
                    counts[w] += 1;
                }
            }
        }
        for w in 0..self.wires.len() {
            if produced[w] != 1 || consumed[w] != 1 {
                return invalid(format!(
                    "wire w{} has {} producers and {} consumers",
                    w + 1,
                    produced[w],
                    consumed[w]
                ));
            }
        }
        Ok(())
    }

    /// Reverses every box: `f` becomes `f†` with inputs and outputs swapped.
    pub fn mirror(&self, sig: &Signature) -> Diagram {
        Diagram {
            wires: self.wires.clone(),
            boxes: self
                .boxes
                .iter()
                .map(|b| BoxNode {
                    label: sig.dagger(b.label),
                    inputs: b.outputs.clone(),
                    outputs: b.inputs.clone(),
                })
                .collect(),
            trivial_cycles: self.trivial_cycles.clone(),
        }
    }

    /// Renumbers boxes and wires: box `b` becomes `box_perm[b]` and wire `w`
    /// becomes `wire_perm[w]`. The result is isomorphic to `self`.
    pub fn permuted(&self, box_perm: &[usize], wire_perm: &[usize]) -> Diagram {
        let mut wires = vec![ObjId(0); self.wires.len()];
        for (w, &o) in self.wires.iter().enumerate() {
            wires[wire_perm[w]] = o;
        }
        let mut boxes = vec![
            BoxNode {
                label: MorId(0),
                inputs: Vec::new(),
                outputs: Vec::new()
            };
            self.boxes.len()
        ];
        for (b, node) in self.boxes.iter().enumerate() {
            boxes[box_perm[b]] = BoxNode {
                label: node.label,
                inputs: node.inputs.iter().map(|&w| wire_perm[w]).collect(),
                outputs: node.outputs.iter().map(|&w| wire_perm[w]).collect(),
            };
        }
        Diagram {
            wires,
            boxes,
            trivial_cycles: self.trivial_cycles.clone(),
        }
    }

    /// Wires labeled `obj`, in id order.
    pub fn wires_labeled(&self, obj: ObjId) -> Vec<usize> {
        (0..self.wires.len())
            .filter(|&w| self.wires[w] == obj)
            .collect()
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> DiagramDisplay<'a> {
        DiagramDisplay { diagram: self, sig }
    }

    /// Parses the text format produced by [`Diagram::display`]:
    ///
    /// ```text
    /// box b1 : f
    /// box b2 : f†
    /// wire w1 : A from b1.out1 to b2.in1
    /// trivial A 2
    /// ```
    ///
    /// Box and wire names are arbitrary identifiers; ids are assigned in
    /// order of declaration. Boxes must be declared before the wires that
    /// reference them.
    pub fn parse(src: &str, sig: &Signature) -> Result<Diagram, DiagramError> {
        let mut d = Diagram::empty();
        let mut box_names: HashMap<String, usize> = HashMap::new();
        let mut wire_names: HashMap<String, usize> = HashMap::new();
        let mut inputs: Vec<Vec<Option<usize>>> = Vec::new();
        let mut outputs: Vec<Vec<Option<usize>>> = Vec::new();
        for (i, line) in src.lines().enumerate() {
            let mut cur = lex::cursor(line, i + 1)?;
            if cur.at_end() {
                continue;
            }
            let (kw, kw_pos) = cur.expect_ident()?;
            match kw.as_str() {
                "box" => {
                    let (name, pos) = cur.expect_ident()?;
                    cur.expect_punct(':')?;
                    let (f, fpos) = cur.expect_ident()?;
                    let daggered = cur.eat_tok(&Tok::Dag);
                    cur.expect_end()?;
                    let label = sig.lookup_morphism(&f, daggered).ok_or_else(|| {
                        ParseError::new(fpos, format!("unknown morphism variable `{f}`"))
                    })?;
                    if box_names.insert(name.clone(), d.boxes.len()).is_some() {
                        return Err(ParseError::new(pos, format!("duplicate box `{name}`")).into());
                    }
                    let m = sig.morphism(label);
                    inputs.push(vec![None; m.dom.len()]);
                    outputs.push(vec![None; m.cod.len()]);
                    d.boxes.push(BoxNode {
                        label,
                        inputs: Vec::new(),
                        outputs: Vec::new(),
                    });
                }
                "wire" => {
                    let (name, pos) = cur.expect_ident()?;
                    cur.expect_punct(':')?;
                    let (obj, opos) = cur.expect_ident()?;
                    let obj = sig.object(&obj).ok_or_else(|| {
                        ParseError::new(opos, format!("undeclared object variable `{obj}`"))
                    })?;
                    let w = d.wires.len();
                    if wire_names.insert(name.clone(), w).is_some() {
                        return Err(ParseError::new(pos, format!("duplicate wire `{name}`")).into());
                    }
                    d.wires.push(obj);
                    cur.expect_keyword("from")?;
                    let (b, j) = parse_port(&mut cur, &box_names, "out")?;
                    cur.expect_keyword("to")?;
                    let (c, k) = parse_port(&mut cur, &box_names, "in")?;
                    cur.expect_end()?;
                    let slot = outputs[b].get_mut(j).ok_or_else(|| {
                        ParseError::new(pos, format!("box has no output {}", j + 1))
                    })?;
                    if slot.replace(w).is_some() {
                        return Err(ParseError::new(pos, "output port used twice").into());
                    }
                    let slot = inputs[c].get_mut(k).ok_or_else(|| {
                        ParseError::new(pos, format!("box has no input {}", k + 1))
                    })?;
                    if slot.replace(w).is_some() {
                        return Err(ParseError::new(pos, "input port used twice").into());
                    }
                }
                "trivial" => {
                    let (obj, opos) = cur.expect_ident()?;
                    let obj = sig.object(&obj).ok_or_else(|| {
                        ParseError::new(opos, format!("undeclared object variable `{obj}`"))
                    })?;
                    let n = cur.expect_int()? as usize;
                    cur.expect_end()?;
                    d.add_trivial_cycles(obj, n);
                }
                other => {
                    return Err(ParseError::new(
                        kw_pos,
                        format!("expected `box`, `wire` or `trivial`, found `{other}`"),
                    )
                    .into())
                }
            }
        }
        for (b, node) in d.boxes.iter_mut().enumerate() {
            let take = |ports: &[Option<usize>], kind: &str| -> Result<Vec<usize>, DiagramError> {
                ports
                    .iter()
                    .enumerate()
                    .map(|(k, p)| {
                        p.ok_or_else(|| {
                            DiagramError::Invalid(format!(
                                "port b{}.{kind}{} is unconnected",
                                b + 1,
                                k + 1
                            ))
                        })
                    })
                    .collect()
            };
            node.inputs = take(&inputs[b], "in")?;
            node.outputs = take(&outputs[b], "out")?;
        }
        d.validate(sig)?;
        Ok(d)
    }
}

fn parse_port(
    cur: &mut lex::Cursor,
    boxes: &HashMap<String, usize>,
    kind: &str,
) -> Result<(usize, usize), ParseError> {
    let (b, pos) = cur.expect_ident()?;
    let b = *boxes
        .get(&b)
        .ok_or_else(|| ParseError::new(pos, format!("unknown box `{b}`")))?;
    cur.expect_punct('.')?;
    let (port, ppos) = cur.expect_ident()?;
    let k = port
        .strip_prefix(kind)
        .and_then(|n| n.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| ParseError::new(ppos, format!("expected `{kind}<n>`, found `{port}`")))?;
    Ok((b, k - 1))
}

pub struct DiagramDisplay<'a> {
    diagram: &'a Diagram,
    sig: &'a Signature,
}

impl fmt::Display for DiagramDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.diagram;
        let sig = self.sig;
        for (b, node) in d.boxes.iter().enumerate() {
            writeln!(f, "box b{} : {}", b + 1, sig.morphism_name(node.label))?;
        }
        if !d.wires.is_empty() {
            for (w, ends) in d.wire_ends().iter().enumerate() {
                writeln!(
                    f,
                    "wire w{} : {} from b{}.out{} to b{}.in{}",
                    w + 1,
                    sig.object_name(d.wires[w]),
                    ends.producer.0 + 1,
                    ends.producer.1 + 1,
                    ends.consumer.0 + 1,
                    ends.consumer.1 + 1
                )?;
            }
        }
        for (&o, &n) in &d.trivial_cycles {
            writeln!(f, "trivial {} {}", sig.object_name(o), n)?;
        }
        Ok(())
    }
}
