//! Terms of the dagger compact closed (and dagger traced monoidal) language.
//!
//! Concrete syntax, lowest precedence first:
//!
//! ```text
//! term   := tensor (';' tensor)*            -- diagrammatic composition
//! tensor := atom ('x' atom)*                -- `⊗` is accepted for `x`
//! atom   := '(' term ')'
//!         | 'id' '[' sort ']'
//!         | 'sym' '[' sort ',' sort ']'
//!         | 'tr' '[' sort ']' '(' term ')'
//!         | 'dagger' '(' term ')'
//!         | 'eta' '[' obj ']' | 'eps' '[' obj ']'
//!         | name ('^' | '†')?
//! ```
//!
//! Both binary operators associate to the left.

use std::fmt;

use crate::lex::{self, ParseError, Tok};
use crate::signature::{
    parse_signed_object, parse_sort, validate_name, MorId, Signature, SignatureKind, SignedObject,
    Sort,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(MorId),
    Id(Sort),
    /// `Compose(a, b)` is `a ; b`: first `a`, then `b`.
    Compose(Box<Term>, Box<Term>),
    Tensor(Box<Term>, Box<Term>),
    /// `sym[a, b] : a ⊗ b -> b ⊗ a`
    Symmetry(Sort, Sort),
    /// `tr[x](t)` for `t : u ⊗ x -> v ⊗ x` has type `u -> v`.
    Trace(Sort, Box<Term>),
    Dagger(Box<Term>),
    /// `eta[a] : I -> a* ⊗ a`
    Unit(SignedObject),
    /// `eps[a] : a ⊗ a* -> I`
    Counit(SignedObject),
}

impl Term {
    pub fn compose(a: Term, b: Term) -> Term {
        Term::Compose(Box::new(a), Box::new(b))
    }

    pub fn tensor(a: Term, b: Term) -> Term {
        Term::Tensor(Box::new(a), Box::new(b))
    }

    pub fn trace(x: Sort, t: Term) -> Term {
        Term::Trace(x, Box::new(t))
    }

    pub fn dagger(t: Term) -> Term {
        Term::Dagger(Box::new(t))
    }

    /// Left-nested composition of a nonempty sequence.
    pub fn compose_all(terms: impl IntoIterator<Item = Term>) -> Option<Term> {
        terms.into_iter().reduce(Term::compose)
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> TermDisplay<'a> {
        TermDisplay { term: self, sig }
    }

    /// Every morphism variable occurrence, left to right.
    pub fn variables(&self) -> Vec<MorId> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<MorId>) {
        match self {
            Term::Var(f) => out.push(*f),
            Term::Compose(a, b) | Term::Tensor(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Trace(_, t) | Term::Dagger(t) => t.collect_vars(out),
            Term::Id(_) | Term::Symmetry(..) | Term::Unit(_) | Term::Counit(_) => {}
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error(
        "sort mismatch in composition: `{left}` has codomain {cod} but `{right}` has domain {dom}"
    )]
    Compose {
        left: String,
        right: String,
        cod: String,
        dom: String,
    },
    #[error("trace sort {sort} is not a suffix of both domain {dom} and codomain {cod}")]
    Trace {
        sort: String,
        dom: String,
        cod: String,
    },
    #[error("`{0}` requires a compact closed signature")]
    CompactOnly(String),
    #[error("dual object in `{0}` is not allowed in a traced monoidal signature")]
    StarInTraced(String),
    #[error("equation is ill-posed: {left} vs {right}")]
    Equation { left: String, right: String },
}

fn arrow(sig: &Signature, dom: &Sort, cod: &Sort) -> String {
    format!("{} -> {}", sig.sort_string(dom), sig.sort_string(cod))
}

/// Infers `(dom, cod)` of a term.
pub fn type_check(t: &Term, sig: &Signature) -> Result<(Sort, Sort), TypeError> {
    let traced = sig.kind() == SignatureKind::TracedMonoidal;
    let check_stars = |s: &Sort| {
        if traced && s.has_star() {
            Err(TypeError::StarInTraced(t.display(sig).to_string()))
        } else {
            Ok(())
        }
    };
    match t {
        Term::Var(f) => {
            let m = sig.morphism(*f);
            Ok((m.dom.clone(), m.cod.clone()))
        }
        Term::Id(s) => {
            check_stars(s)?;
            Ok((s.clone(), s.clone()))
        }
        Term::Compose(a, b) => {
            let (d1, c1) = type_check(a, sig)?;
            let (d2, c2) = type_check(b, sig)?;
            if c1 != d2 {
                return Err(TypeError::Compose {
                    left: a.display(sig).to_string(),
                    right: b.display(sig).to_string(),
                    cod: sig.sort_string(&c1),
                    dom: sig.sort_string(&d2),
                });
            }
            Ok((d1, c2))
        }
        Term::Tensor(a, b) => {
            let (d1, c1) = type_check(a, sig)?;
            let (d2, c2) = type_check(b, sig)?;
            Ok((d1.concat(&d2), c1.concat(&c2)))
        }
        Term::Symmetry(a, b) => {
            check_stars(a)?;
            check_stars(b)?;
            Ok((a.concat(b), b.concat(a)))
        }
        Term::Trace(x, body) => {
            check_stars(x)?;
            let (d, c) = type_check(body, sig)?;
            match (d.strip_suffix(x), c.strip_suffix(x)) {
                (Some(u), Some(v)) => Ok((u, v)),
                _ => Err(TypeError::Trace {
                    sort: sig.sort_string(x),
                    dom: sig.sort_string(&d),
                    cod: sig.sort_string(&c),
                }),
            }
        }
        Term::Dagger(body) => {
            let (d, c) = type_check(body, sig)?;
            Ok((c, d))
        }
        Term::Unit(a) => {
            if traced {
                return Err(TypeError::CompactOnly(t.display(sig).to_string()));
            }
            Ok((Sort::unit(), Sort(vec![a.dual(), *a])))
        }
        Term::Counit(a) => {
            if traced {
                return Err(TypeError::CompactOnly(t.display(sig).to_string()));
            }
            Ok((Sort(vec![*a, a.dual()]), Sort::unit()))
        }
    }
}

/// Checks that `t1` and `t2` have the same type and returns it.
pub fn type_check_equation(
    t1: &Term,
    t2: &Term,
    sig: &Signature,
) -> Result<(Sort, Sort), TypeError> {
    let (d1, c1) = type_check(t1, sig)?;
    let (d2, c2) = type_check(t2, sig)?;
    if d1 != d2 || c1 != c2 {
        return Err(TypeError::Equation {
            left: arrow(sig, &d1, &c1),
            right: arrow(sig, &d2, &c2),
        });
    }
    Ok((d1, c1))
}

/// A term wrapped between fresh closing variables, `in ; m ; out`.
#[derive(Clone, Debug)]
pub struct Closure {
    pub term: Term,
    /// The input signature extended with the closing variables.
    pub signature: Signature,
    /// `__close_in : I -> dom`, when the domain is not `I`.
    pub input: Option<MorId>,
    /// `__close_out : cod -> I`, when the codomain is not `I`.
    pub output: Option<MorId>,
}

impl Closure {
    /// Applies the same closing variables to another term of the same type.
    pub fn wrap(&self, t: Term) -> Term {
        let mut t = t;
        if let Some(i) = self.input {
            t = Term::compose(Term::Var(i), t);
        }
        if let Some(o) = self.output {
            t = Term::compose(t, Term::Var(o));
        }
        t
    }
}

fn fresh_name(sig: &Signature, base: &str) -> String {
    if sig.is_name_free(base) {
        return base.to_string();
    }
    (1..)
        .map(|k| format!("{base}{k}"))
        .find(|n| sig.is_name_free(n))
        .unwrap()
}

/// Closes `m : A -> B` into `__close_in ; m ; __close_out : I -> I`.
/// Sides that are already `I` get no closing variable.
pub fn close_term(m: &Term, sig: &Signature) -> Result<Closure, TypeError> {
    let (dom, cod) = type_check(m, sig)?;
    let mut signature = sig.clone();
    let mut input = None;
    let mut output = None;
    if !dom.is_unit() {
        let name = fresh_name(&signature, "__close_in");
        debug_assert!(validate_name(&name).is_ok());
        input = Some(
            signature
                .declare_morphism(&name, Sort::unit(), dom)
                .expect("fresh name"),
        );
    }
    if !cod.is_unit() {
        let name = fresh_name(&signature, "__close_out");
        output = Some(
            signature
                .declare_morphism(&name, cod, Sort::unit())
                .expect("fresh name"),
        );
    }
    let mut closure = Closure {
        term: Term::Id(Sort::unit()),
        signature,
        input,
        output,
    };
    closure.term = closure.wrap(m.clone());
    Ok(closure)
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    sig: &'a Signature,
}

impl TermDisplay<'_> {
    fn write(&self, t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = self.sig;
        let paren = |t: &Term, f: &mut fmt::Formatter<'_>| -> fmt::Result {
            f.write_str("(")?;
            self.write(t, f)?;
            f.write_str(")")
        };
        match t {
            Term::Var(m) => f.write_str(&sig.morphism_name(*m)),
            Term::Id(s) => write!(f, "id[{}]", sig.sort_string(s)),
            Term::Symmetry(a, b) => {
                write!(f, "sym[{}, {}]", sig.sort_string(a), sig.sort_string(b))
            }
            Term::Trace(x, body) => {
                write!(f, "tr[{}]", sig.sort_string(x))?;
                paren(body, f)
            }
            Term::Dagger(body) => {
                f.write_str("dagger")?;
                paren(body, f)
            }
            Term::Unit(a) => write!(f, "eta[{}]", sig.signed_name(*a)),
            Term::Counit(a) => write!(f, "eps[{}]", sig.signed_name(*a)),
            Term::Compose(a, b) => {
                self.write(a, f)?;
                f.write_str(" ; ")?;
                if matches!(**b, Term::Compose(..)) {
                    paren(b, f)
                } else {
                    self.write(b, f)
                }
            }
            Term::Tensor(a, b) => {
                if matches!(**a, Term::Compose(..)) {
                    paren(a, f)?;
                } else {
                    self.write(a, f)?;
                }
                f.write_str(" x ")?;
                if matches!(**b, Term::Compose(..) | Term::Tensor(..)) {
                    paren(b, f)
                } else {
                    self.write(b, f)
                }
            }
        }
    }
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.term, f)
    }
}

struct Parser<'a> {
    cur: lex::Cursor,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn term(&mut self) -> Result<Term, ParseError> {
        let mut t = self.tensor()?;
        while self.cur.eat_punct(';') {
            let r = self.tensor()?;
            t = Term::compose(t, r);
        }
        Ok(t)
    }

    fn tensor(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while self.cur.eat_keyword("x") || self.cur.eat_tok(&Tok::Otimes) {
            let r = self.atom()?;
            t = Term::tensor(t, r);
        }
        Ok(t)
    }

    fn bracketed_sort(&mut self) -> Result<Sort, ParseError> {
        self.cur.expect_punct('[')?;
        let s = parse_sort(&mut self.cur, self.sig)?;
        self.cur.expect_punct(']')?;
        Ok(s)
    }

    fn parenthesized(&mut self) -> Result<Term, ParseError> {
        self.cur.expect_punct('(')?;
        let t = self.term()?;
        self.cur.expect_punct(')')?;
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        if self.cur.peek() == Some(&Tok::Punct('(')) {
            return self.parenthesized();
        }
        let pos = self.cur.pos();
        let (word, _) = self.cur.expect_ident()?;
        let compact_only = |p: &Parser<'_>| {
            if p.sig.kind() == SignatureKind::TracedMonoidal {
                Err(ParseError::new(
                    pos,
                    format!("`{word}` requires a compact closed signature"),
                ))
            } else {
                Ok(())
            }
        };
        match word.as_str() {
            "id" => Ok(Term::Id(self.bracketed_sort()?)),
            "sym" => {
                self.cur.expect_punct('[')?;
                let a = parse_sort(&mut self.cur, self.sig)?;
                self.cur.expect_punct(',')?;
                let b = parse_sort(&mut self.cur, self.sig)?;
                self.cur.expect_punct(']')?;
                Ok(Term::Symmetry(a, b))
            }
            "tr" => {
                let x = self.bracketed_sort()?;
                let body = self.parenthesized()?;
                Ok(Term::trace(x, body))
            }
            "dagger" => Ok(Term::dagger(self.parenthesized()?)),
            "eta" | "eps" => {
                compact_only(self)?;
                self.cur.expect_punct('[')?;
                let a = parse_signed_object(&mut self.cur, self.sig)?;
                self.cur.expect_punct(']')?;
                Ok(if word == "eta" {
                    Term::Unit(a)
                } else {
                    Term::Counit(a)
                })
            }
            "x" | "I" => Err(ParseError::new(pos, format!("unexpected `{word}`"))),
            _ => {
                let daggered = self.cur.eat_tok(&Tok::Dag);
                self.sig
                    .lookup_morphism(&word, daggered)
                    .map(Term::Var)
                    .ok_or_else(|| {
                        ParseError::new(pos, format!("unknown morphism variable `{word}`"))
                    })
            }
        }
    }
}

/// Parses a term over `sig`. Only syntax and names are checked; use
/// [`type_check`] for typing.
pub fn parse_term(src: &str, sig: &Signature) -> Result<Term, ParseError> {
    parse_term_at(src, 1, sig)
}

fn parse_term_at(src: &str, first_line: usize, sig: &Signature) -> Result<Term, ParseError> {
    let cur = lex::cursor(src, first_line)?;
    let mut p = Parser { cur, sig };
    let t = p.term()?;
    p.cur.expect_end()?;
    Ok(t)
}

/// Splits a term file into its optional `use <path>` directive and body.
/// The directive must be the first non-blank, non-comment line.
/// Returns `(path, first line number of body, body)`.
pub fn split_term_file(src: &str) -> (Option<String>, usize, &str) {
    let mut offset = 0;
    for (i, line) in src.split_inclusive('\n').enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            offset += line.len();
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("use ") {
            let path = rest.split('#').next().unwrap_or("").trim().to_string();
            return (Some(path), i + 2, &src[offset + line.len()..]);
        }
        break;
    }
    (None, 1, src)
}

/// Parses a term file: an optional `use <signature-file>` line followed by one term.
pub fn parse_term_file(src: &str, sig: &Signature) -> Result<Term, ParseError> {
    let (_, first_line, body) = split_term_file(src);
    if first_line == 1 {
        parse_term_at(src, 1, sig)
    } else {
        parse_term_at(body, first_line, sig)
    }
}
