use std::fmt::{Display, Write as _};
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use daggereq::diagram::export_dot;
use daggereq::scalars::{
    Complex64, ConjPolynomial, GaussianInt, Monomial, ParseScalar, RandomScalar, Scalar,
};
use daggereq::semantics::{
    denote, find_witness, indexing_count, iso_count_semantic, m_interpretation, naive_denote,
    trivial_cycle_witness, Interpretation, Witness, WitnessConfig,
};
use daggereq::signature::Signature;
use daggereq::{compile_equation, decide_equal, Diagram, DiagramIso, Verdict};
use serde_json::{json, Value};

use crate::input::{load, parse_dims};
use crate::{CheckArgs, EvalArgs, ExportArgs, ExportFormat, Format, PairArgs, Ring};

const NAIVE_LIMIT: u128 = 1_000_000;

fn plural(n: u64, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}s")
    }
}

/// The semantic route to the isomorphism count: the coefficient of the
/// product of box variables, computed on the simple parts. Diagrams whose
/// trivial cycles differ have no isomorphisms on either route.
fn semantic_count(n: &Diagram, m: &Diagram, sig: &Signature) -> Result<u64> {
    if n.trivial_cycles != m.trivial_cycles {
        return Ok(0);
    }
    let c = iso_count_semantic(&n.simple_part(), &m.simple_part(), sig)?;
    u64::try_from(c).map_err(|c| anyhow!("semantic count {c} out of range"))
}

fn cycles_text(d: &Diagram, sig: &Signature) -> String {
    if d.trivial_cycles.is_empty() {
        return "none".into();
    }
    d.trivial_cycles
        .iter()
        .map(|(o, k)| format!("{} x{k}", sig.object_name(*o)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn iso_text(iso: &DiagramIso, n: &Diagram, sig: &Signature) -> String {
    let mut out = String::new();
    for (b, &c) in iso.boxes.iter().enumerate() {
        let label = sig.morphism_name(n.boxes[b].label);
        let _ = writeln!(out, "  box b{} -> b{} ({label})", b + 1, c + 1);
    }
    for (w, &v) in iso.wires.iter().enumerate() {
        let label = sig.object_name(n.wires[w]);
        let _ = writeln!(out, "  wire w{} -> w{} ({label})", w + 1, v + 1);
    }
    out
}

fn dims_text(dims: &[usize], sig: &Signature) -> String {
    sig.objects()
        .map(|o| format!("{}={}", sig.object_name(o), dims[o.index()]))
        .collect::<Vec<_>>()
        .join(",")
}

/// A separating interpretation, already rendered.
struct Found {
    ring: &'static str,
    dims: Vec<usize>,
    trial: Option<u64>,
    left: String,
    right: String,
    verified: bool,
    text: String,
}

impl Found {
    fn new<R: Scalar>(ring: &'static str, w: &Witness<R>, sig: &Signature) -> Self {
        Found {
            ring,
            dims: w.interp.dims(),
            trial: w.trial,
            left: w.left.to_string(),
            right: w.right.to_string(),
            verified: w.verified,
            text: w.interp.to_text(sig),
        }
    }
}

struct Search {
    /// Outcome of the dimension-2 pass, when one was run.
    probe: Option<Option<u64>>,
    found: Option<Found>,
    note: Option<String>,
}

fn random_search<R: RandomScalar>(
    ring: &'static str,
    n: &Diagram,
    m: &Diagram,
    sig: &Signature,
    a: &CheckArgs,
) -> Result<Search> {
    let config = |dims: Vec<usize>| {
        let mut cfg = WitnessConfig::new(dims);
        cfg.trials = a.trials;
        cfg.seed = a.seed;
        cfg.verify_tol = a.tolerance;
        cfg.naive_limit = NAIVE_LIMIT;
        cfg
    };
    let probe = if a.dims.is_none() {
        let w = find_witness::<R>(n, m, sig, &config(vec![2; sig.object_count()]))?;
        Some(w.and_then(|w| w.trial))
    } else {
        None
    };
    let cfg = config(parse_dims(a.dims.as_deref(), sig, 3)?);
    let found = find_witness::<R>(n, m, sig, &cfg)?.map(|w| Found::new(ring, &w, sig));
    Ok(Search {
        probe,
        found,
        note: None,
    })
}

/// The interpretation built from the right-hand diagram separates the
/// simple parts: its box-product coefficient is zero on the left and
/// positive on the right.
fn poly_search(n: &Diagram, m: &Diagram, sig: &Signature) -> Result<Search> {
    let (n, m) = (n.simple_part(), m.simple_part());
    let interp = m_interpretation(&m, sig)?;
    let left = denote(&n, &interp)?;
    let right = denote(&m, &interp)?;
    let mut verified = false;
    if indexing_count(&n, &interp) <= NAIVE_LIMIT && indexing_count(&m, &interp) <= NAIVE_LIMIT {
        if naive_denote(&n, &interp)? != left || naive_denote(&m, &interp)? != right {
            bail!("contraction and direct summation disagree on the symbolic interpretation");
        }
        verified = true;
    }
    let w = Witness {
        interp,
        left,
        right,
        trial: None,
        verified,
    };
    Ok(Search {
        probe: None,
        found: (w.left != w.right).then(|| Found::new("poly", &w, sig)),
        note: Some(
            "symbolic interpretation built from the right-hand diagram, trivial cycles removed"
                .into(),
        ),
    })
}

pub fn check(a: &CheckArgs) -> Result<u8> {
    let (sig, terms) = load(a.sig.sig.as_deref(), &[&a.left, &a.right])?;
    let d = decide_equal(&terms[0], &terms[1], &sig)?;
    let tsig = &d.signature;
    let semantic = semantic_count(&d.left, &d.right, tsig)?;
    if semantic != d.iso_count {
        bail!(
            "internal inconsistency: {} structurally but semantic coefficient = {semantic}",
            plural(d.iso_count, "isomorphism")
        );
    }
    let mut record = json!({
        "verdict": if d.verdict == Verdict::Equal { "equal" } else { "not-equal" },
        "iso_count": d.iso_count,
        "semantic_count": semantic,
        "boxes": [d.left.box_count(), d.right.box_count()],
        "wires": [d.left.wire_count(), d.right.wire_count()],
        "witness": Value::Null,
    });
    let mut text = String::new();
    if d.verdict == Verdict::Equal {
        let _ = writeln!(
            text,
            "isomorphic ({}); semantic coefficient = {semantic}",
            plural(d.iso_count, "isomorphism")
        );
        if let daggereq::Evidence::Isomorphism(iso) = &d.evidence {
            text.push_str(&iso_text(iso, &d.left, tsig));
        }
        return finish(a, record, text, 0);
    }

    let _ = writeln!(
        text,
        "not isomorphic (0 isomorphisms); semantic coefficient = 0"
    );
    let search = if d.left.trivial_cycles != d.right.trivial_cycles {
        let _ = writeln!(
            text,
            "trivial cycles differ: {} vs {}",
            cycles_text(&d.left, tsig),
            cycles_text(&d.right, tsig)
        );
        let w = trivial_cycle_witness(&d.left, &d.right, tsig)?
            .ok_or_else(|| anyhow!("no trivial-cycle witness"))?;
        Search {
            probe: None,
            found: Some(Found::new("gauss", &w, tsig)),
            note: Some("dimension argument on trivial cycles".into()),
        }
    } else {
        match a.ring {
            Ring::Gauss => random_search::<GaussianInt>("gauss", &d.left, &d.right, tsig, a)?,
            Ring::Float => random_search::<Complex64>("float", &d.left, &d.right, tsig, a)?,
            Ring::Poly => poly_search(&d.left, &d.right, tsig)?,
        }
    };
    if let Some(probe) = search.probe {
        match probe {
            Some(t) => {
                let _ = writeln!(text, "dimension 2: separated in trial {t}");
            }
            None => {
                let _ = writeln!(
                    text,
                    "dimension 2: no separating interpretation in {}",
                    plural(a.trials, "trial")
                );
            }
        }
        record["dim2_separated"] = json!(probe.is_some());
    }
    match &search.found {
        None => {
            let _ = writeln!(
                text,
                "no separating interpretation found in {}",
                plural(a.trials, "trial")
            );
        }
        Some(f) => {
            let mut head = format!(
                "witness: ring {}, dims {}",
                f.ring,
                dims_text(&f.dims, tsig)
            );
            if let Some(t) = f.trial {
                let _ = write!(head, ", trial {t}");
            }
            if let Some(note) = &search.note {
                let _ = write!(head, " ({note})");
            }
            let _ = writeln!(text, "{head}");
            let _ = writeln!(text, "  left  = {}", f.left);
            let _ = writeln!(text, "  right = {}", f.right);
            let _ = writeln!(
                text,
                "  {}",
                if f.verified {
                    "both values re-checked by direct summation"
                } else {
                    "too large to re-check by direct summation"
                }
            );
            let dims: serde_json::Map<String, Value> = tsig
                .objects()
                .map(|o| (tsig.object_name(o).to_string(), json!(f.dims[o.index()])))
                .collect();
            let mut w = json!({
                "ring": f.ring,
                "dims": dims,
                "trial": f.trial,
                "left": f.left,
                "right": f.right,
                "verified": f.verified,
                "path": Value::Null,
            });
            if let Some(path) = &a.witness_out {
                fs::write(path, &f.text)
                    .with_context(|| format!("cannot write {}", path.display()))?;
                let _ = writeln!(text, "witness interpretation written to {}", path.display());
                w["path"] = json!(path.display().to_string());
            } else {
                text.push_str(&f.text);
            }
            record["witness"] = w;
        }
    }
    finish(a, record, text, 1)
}

fn finish(a: &CheckArgs, record: Value, text: String, code: u8) -> Result<u8> {
    match a.format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{record}"),
    }
    Ok(code)
}

pub fn poly(a: &PairArgs) -> Result<u8> {
    let (sig, terms) = load(a.sig.sig.as_deref(), &[&a.left, &a.right])?;
    let (n, m, tsig) = compile_equation(&terms[0], &terms[1], &sig)?;
    let m = m.simple_part();
    let interp = m_interpretation(&m, &tsig)?;
    let p: ConjPolynomial = denote(&n, &interp)?;
    let product = Monomial::product_of_boxes(0..m.box_count());
    println!("{p}");
    println!("coefficient of {product} = {}", p.coefficient_of(&product));
    Ok(0)
}

pub fn iso_count(a: &PairArgs) -> Result<u8> {
    let (sig, terms) = load(a.sig.sig.as_deref(), &[&a.left, &a.right])?;
    let (n, m, tsig) = compile_equation(&terms[0], &terms[1], &sig)?;
    let structural = daggereq::iso_count(&n, &m);
    let semantic = semantic_count(&n, &m, &tsig)?;
    println!("structural={structural} semantic={semantic}");
    if structural != semantic {
        eprintln!("error: the two counts disagree");
        return Ok(2);
    }
    Ok(0)
}

pub fn export(a: &ExportArgs) -> Result<u8> {
    let (sig, terms) = load(a.sig.sig.as_deref(), &[&a.term])?;
    let (d, _, tsig) = compile_equation(&terms[0], &terms[0], &sig)?;
    match a.format {
        ExportFormat::Diag => print!("{}", d.display(&tsig)),
        ExportFormat::Dot => print!("{}", export_dot(&d, &tsig)),
    }
    Ok(0)
}

fn eval_in<R: ParseScalar + Display>(
    src: &str,
    path: &Path,
    d: &Diagram,
    sig: &Signature,
) -> Result<()> {
    let interp: Interpretation<R> =
        Interpretation::parse(src, sig).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    println!("{}", denote(d, &interp)?);
    Ok(())
}

pub fn eval(a: &EvalArgs) -> Result<u8> {
    let (sig, terms) = load(a.sig.sig.as_deref(), &[&a.term])?;
    let (d, _, tsig) = compile_equation(&terms[0], &terms[0], &sig)?;
    let src = fs::read_to_string(&a.interp)
        .with_context(|| format!("cannot read {}", a.interp.display()))?;
    match a.ring {
        Ring::Gauss => eval_in::<GaussianInt>(&src, &a.interp, &d, &tsig)?,
        Ring::Float => eval_in::<Complex64>(&src, &a.interp, &d, &tsig)?,
        Ring::Poly => bail!("interpretation files hold numbers; use --ring gauss or --ring float"),
    }
    Ok(0)
}
