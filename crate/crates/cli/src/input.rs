use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use daggereq::signature::Signature;
use daggereq::term::{parse_term_file, split_term_file, Term};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// The signature named by `--sig`, or else by the `use` line of the first
/// term file, resolved against that file's directory.
fn signature_path(sig: Option<&Path>, first: &Path, src: &str) -> Result<PathBuf> {
    if let Some(p) = sig {
        return Ok(p.to_path_buf());
    }
    match split_term_file(src).0 {
        Some(p) => Ok(first.parent().unwrap_or(Path::new(".")).join(p)),
        None => bail!(
            "no signature: pass --sig or start {} with a `use <file>` line",
            first.display()
        ),
    }
}

pub fn load_signature(path: &Path) -> Result<Signature> {
    let src = read(path)?;
    Signature::parse(&src).map_err(|e| anyhow!("{}:{e}", path.display()))
}

/// Reads a signature and the given term files.
pub fn load(sig: Option<&Path>, terms: &[&Path]) -> Result<(Signature, Vec<Term>)> {
    let sources: Vec<String> = terms.iter().map(|p| read(p)).collect::<Result<_>>()?;
    let sig_path = signature_path(sig, terms[0], &sources[0])?;
    if sig.is_none() {
        for (p, src) in terms.iter().zip(&sources).skip(1) {
            if let Ok(other) = signature_path(None, p, src) {
                if fs::canonicalize(&other).ok() != fs::canonicalize(&sig_path).ok() {
                    bail!(
                        "{} and {} use different signatures",
                        terms[0].display(),
                        p.display()
                    );
                }
            }
        }
    }
    let signature = load_signature(&sig_path)?;
    let parsed = terms
        .iter()
        .zip(&sources)
        .map(|(p, src)| {
            parse_term_file(src, &signature).map_err(|e| anyhow!("{}:{e}", p.display()))
        })
        .collect::<Result<_>>()?;
    Ok((signature, parsed))
}

/// Parses `A=3,B=2` into per-object dimensions, defaulting to `default`.
pub fn parse_dims(spec: Option<&str>, sig: &Signature, default: usize) -> Result<Vec<usize>> {
    let mut dims = vec![default; sig.object_count()];
    let Some(spec) = spec else {
        return Ok(dims);
    };
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("expected NAME=DIM in --dims, found `{part}`"))?;
        let obj = sig
            .object(name.trim())
            .ok_or_else(|| anyhow!("--dims names unknown object `{}`", name.trim()))?;
        dims[obj.index()] = value
            .trim()
            .parse()
            .with_context(|| format!("bad dimension in `{part}`"))?;
    }
    Ok(dims)
}
