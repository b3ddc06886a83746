use std::fmt::Write;

use super::Diagram;
use crate::signature::Signature;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering: one node per box, one edge per wire from its
/// producer to its consumer, and one annotated self-loop per object with
/// trivial cycles.
pub fn export_dot(d: &Diagram, sig: &Signature) -> String {
    let mut out = String::from("digraph diagram {\n");
    for (b, node) in d.boxes.iter().enumerate() {
        let _ = writeln!(
            out,
            "  b{} [shape=box, label=\"{}\"];",
            b + 1,
            escape(&sig.morphism_name(node.label))
        );
    }
    if !d.wires.is_empty() {
        for (w, ends) in d.wire_ends().iter().enumerate() {
            let _ = writeln!(
                out,
                "  b{} -> b{} [label=\"w{}: {}\", taillabel=\"out{}\", headlabel=\"in{}\"];",
                ends.producer.0 + 1,
                ends.consumer.0 + 1,
                w + 1,
                escape(sig.object_name(d.wires[w])),
                ends.producer.1 + 1,
                ends.consumer.1 + 1
            );
        }
    }
    for (k, (&o, &n)) in d.trivial_cycles.iter().enumerate() {
        let name = escape(sig.object_name(o));
        let _ = writeln!(out, "  t{} [shape=point];", k + 1);
        let _ = writeln!(
            out,
            "  t{} -> t{} [label=\"trivial_cycle {} ×{}\"];",
            k + 1,
            k + 1,
            name,
            n
        );
    }
    out.push_str("}\n");
    out
}
