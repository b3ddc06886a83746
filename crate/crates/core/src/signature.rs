//! Signatures of dagger monoidal and dagger compact closed categories.
//!
//! A signature holds object variables and morphism variables. Every declared
//! morphism variable `f : S -> T` comes with a distinct partner `f† : T -> S`,
//! so the dagger is a fixed-point-free involution on morphism variables.
//!
//! In a compact closed signature, sorts may mention duals `A*`.
//! [`Signature::int_translate`] removes them by moving starred factors to the
//! opposite side, yielding a traced monoidal signature with the same morphism
//! variables.

use std::collections::HashMap;
use std::fmt;

use crate::lex::{self, ParseError, Tok};

/// Words that cannot be used as object or morphism names.
pub const RESERVED: &[&str] = &["x", "I", "id", "sym", "tr", "dagger", "eta", "eps"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(pub u32);

impl ObjId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl MorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An object variable or its dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedObject {
    pub base: ObjId,
    pub starred: bool,
}

impl SignedObject {
    pub fn plain(base: ObjId) -> Self {
        SignedObject {
            base,
            starred: false,
        }
    }

    pub fn star(base: ObjId) -> Self {
        SignedObject {
            base,
            starred: true,
        }
    }

    pub fn dual(self) -> Self {
        SignedObject {
            base: self.base,
            starred: !self.starred,
        }
    }
}

/// A finite tensor sequence of signed objects; the empty sort is the unit `I`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sort(pub Vec<SignedObject>);

impl Sort {
    pub fn unit() -> Self {
        Sort(Vec::new())
    }

    pub fn of(factors: impl IntoIterator<Item = SignedObject>) -> Self {
        Sort(factors.into_iter().collect())
    }

    pub fn plain(objs: impl IntoIterator<Item = ObjId>) -> Self {
        Sort(objs.into_iter().map(SignedObject::plain).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[SignedObject] {
        &self.0
    }

    pub fn concat(&self, other: &Sort) -> Sort {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Sort(v)
    }

    pub fn has_star(&self) -> bool {
        self.0.iter().any(|o| o.starred)
    }

    /// If `suffix` is a suffix of `self`, returns the remaining prefix.
    pub fn strip_suffix(&self, suffix: &Sort) -> Option<Sort> {
        let n = self.0.len();
        let k = suffix.0.len();
        if k > n || self.0[n - k..] != suffix.0[..] {
            return None;
        }
        Some(Sort(self.0[..n - k].to_vec()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    In,
    Out,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::In => Side::Out,
            Side::Out => Side::In,
        }
    }
}

/// A port of a box: input or output side, 0-based position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Port {
    pub side: Side,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismVar {
    /// Base name; the partner of `f` shares the base name and has `daggered` set.
    pub name: String,
    pub dom: Sort,
    pub cod: Sort,
    pub daggered: bool,
    pub partner: MorId,
}

impl MorphismVar {
    pub fn arity(&self) -> usize {
        self.dom.len() + self.cod.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignatureKind {
    CompactClosed,
    TracedMonoidal,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("name `{0}` is already declared")]
    Duplicate(String),
    #[error("`{0}` is not a valid identifier")]
    InvalidName(String),
    #[error("`{0}` is a reserved word")]
    Reserved(String),
    #[error("undeclared object variable `{0}`")]
    UndeclaredObject(String),
    #[error("dual objects are not allowed in a traced monoidal signature (morphism `{0}`)")]
    StarInTraced(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    kind: SignatureKind,
    objects: Vec<String>,
    morphisms: Vec<MorphismVar>,
    object_index: HashMap<String, ObjId>,
    morphism_index: HashMap<String, MorId>,
}

/// Where each port of a compact closed morphism variable lands in its
/// translated, star-free counterpart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PortTable {
    /// For each domain factor of the original morphism.
    pub dom: Vec<Port>,
    /// For each codomain factor of the original morphism.
    pub cod: Vec<Port>,
}

/// The result of [`Signature::int_translate`]. Morphism and object ids are
/// shared between the source and the translated signature.
#[derive(Clone, Debug)]
pub struct Translation {
    pub signature: Signature,
    pub table: Vec<PortTable>,
}

impl Translation {
    pub fn ports(&self, f: MorId) -> &PortTable {
        &self.table[f.index()]
    }
}

pub fn validate_name(name: &str) -> Result<(), SignatureError> {
    let mut chars = name.chars();
    let ok =
        matches!(chars.next(), Some(c) if lex::is_ident_start(c)) && chars.all(lex::is_ident_char);
    if !ok {
        return Err(SignatureError::InvalidName(name.to_string()));
    }
    if RESERVED.contains(&name) {
        return Err(SignatureError::Reserved(name.to_string()));
    }
    Ok(())
}

impl Signature {
    pub fn new(kind: SignatureKind) -> Self {
        Signature {
            kind,
            objects: Vec::new(),
            morphisms: Vec::new(),
            object_index: HashMap::new(),
            morphism_index: HashMap::new(),
        }
    }

    pub fn compact_closed() -> Self {
        Self::new(SignatureKind::CompactClosed)
    }

    pub fn traced_monoidal() -> Self {
        Self::new(SignatureKind::TracedMonoidal)
    }

    pub fn kind(&self) -> SignatureKind {
        self.kind
    }

    pub fn declare_object(&mut self, name: &str) -> Result<ObjId, SignatureError> {
        validate_name(name)?;
        if self.object_index.contains_key(name) {
            return Err(SignatureError::Duplicate(name.to_string()));
        }
        let id = ObjId(self.objects.len() as u32);
        self.objects.push(name.to_string());
        self.object_index.insert(name.to_string(), id);
        Ok(id)
    }

    /// Declares `name : dom -> cod` together with its partner `name† : cod -> dom`.
    /// Returns the id of `name`; the partner is `MorId(id + 1)`.
    pub fn declare_morphism(
        &mut self,
        name: &str,
        dom: Sort,
        cod: Sort,
    ) -> Result<MorId, SignatureError> {
        validate_name(name)?;
        if self.morphism_index.contains_key(name) {
            return Err(SignatureError::Duplicate(name.to_string()));
        }
        for o in dom.factors().iter().chain(cod.factors()) {
            if o.base.index() >= self.objects.len() {
                return Err(SignatureError::UndeclaredObject(format!("#{}", o.base.0)));
            }
        }
        if self.kind == SignatureKind::TracedMonoidal && (dom.has_star() || cod.has_star()) {
            return Err(SignatureError::StarInTraced(name.to_string()));
        }
        let id = MorId(self.morphisms.len() as u32);
        let partner = MorId(id.0 + 1);
        self.morphisms.push(MorphismVar {
            name: name.to_string(),
            dom: dom.clone(),
            cod: cod.clone(),
            daggered: false,
            partner,
        });
        self.morphisms.push(MorphismVar {
            name: name.to_string(),
            dom: cod,
            cod: dom,
            daggered: true,
            partner: id,
        });
        self.morphism_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len() as u32).map(ObjId)
    }

    pub fn object_name(&self, id: ObjId) -> &str {
        &self.objects[id.index()]
    }

    pub fn object(&self, name: &str) -> Option<ObjId> {
        self.object_index.get(name).copied()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len() as u32).map(MorId)
    }

    /// Morphism variables declared directly (one per dagger pair).
    pub fn declared_morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        self.morphisms().filter(|&f| !self.morphism(f).daggered)
    }

    pub fn morphism(&self, id: MorId) -> &MorphismVar {
        &self.morphisms[id.index()]
    }

    pub fn dagger(&self, id: MorId) -> MorId {
        self.morphisms[id.index()].partner
    }

    /// Looks up `f`, or the partner of `f` when `daggered` is set.
    pub fn lookup_morphism(&self, base: &str, daggered: bool) -> Option<MorId> {
        let id = *self.morphism_index.get(base)?;
        Some(if daggered { self.dagger(id) } else { id })
    }

    /// Looks up a morphism by display name (`f`, `f†` or `f^`).
    pub fn morphism_by_name(&self, name: &str) -> Option<MorId> {
        if let Some(base) = name.strip_suffix('†').or_else(|| name.strip_suffix('^')) {
            self.lookup_morphism(base, true)
        } else {
            self.lookup_morphism(name, false)
        }
    }

    /// Display name; the partner of `f` renders as `f†`.
    pub fn morphism_name(&self, id: MorId) -> String {
        let m = self.morphism(id);
        if m.daggered {
            format!("{}†", m.name)
        } else {
            m.name.clone()
        }
    }

    pub fn is_name_free(&self, name: &str) -> bool {
        !self.morphism_index.contains_key(name) && !self.object_index.contains_key(name)
    }

    pub fn signed_name(&self, o: SignedObject) -> String {
        if o.starred {
            format!("{}*", self.object_name(o.base))
        } else {
            self.object_name(o.base).to_string()
        }
    }

    /// Renders a sort in the file syntax (`I`, `A x B*`).
    pub fn sort_string(&self, s: &Sort) -> String {
        if s.is_unit() {
            return "I".to_string();
        }
        s.factors()
            .iter()
            .map(|&o| self.signed_name(o))
            .collect::<Vec<_>>()
            .join(" x ")
    }

    /// The declaration line of a morphism, e.g. `morphism f : A* x B -> C`.
    pub fn morphism_decl(&self, id: MorId) -> String {
        let m = self.morphism(id);
        format!(
            "morphism {} : {} -> {}",
            self.morphism_name(id),
            self.sort_string(&m.dom),
            self.sort_string(&m.cod)
        )
    }

    /// Eliminates duals by moving each starred domain factor to the codomain
    /// and each starred codomain factor to the domain.
    ///
    /// For a declared `f : S -> T`, the new domain is the unstarred factors of
    /// `S` followed by the starred factors of `T`, and the new codomain is the
    /// starred factors of `S` followed by the unstarred factors of `T`. Moved
    /// factors keep their relative order. The partner `f†` is translated to
    /// the dagger of the translated `f`, so the result is again closed under
    /// the involution. Star-free morphisms are unchanged.
    pub fn int_translate(&self) -> Translation {
        let mut signature = self.clone();
        signature.kind = SignatureKind::TracedMonoidal;
        let mut table = vec![
            PortTable {
                dom: Vec::new(),
                cod: Vec::new()
            };
            self.morphisms.len()
        ];
        for f in self.declared_morphisms() {
            let m = self.morphism(f);
            let mut new_dom = Vec::new();
            let mut new_cod = Vec::new();
            let mut dom_ports = vec![
                Port {
                    side: Side::In,
                    index: 0
                };
                m.dom.len()
            ];
            let mut cod_ports = vec![
                Port {
                    side: Side::In,
                    index: 0
                };
                m.cod.len()
            ];
            for (k, o) in m.dom.factors().iter().enumerate() {
                if !o.starred {
                    dom_ports[k] = Port {
                        side: Side::In,
                        index: new_dom.len(),
                    };
                    new_dom.push(*o);
                }
            }
            for (k, o) in m.cod.factors().iter().enumerate() {
                if o.starred {
                    cod_ports[k] = Port {
                        side: Side::In,
                        index: new_dom.len(),
                    };
                    new_dom.push(o.dual());
                }
            }
            for (k, o) in m.dom.factors().iter().enumerate() {
                if o.starred {
                    dom_ports[k] = Port {
                        side: Side::Out,
                        index: new_cod.len(),
                    };
                    new_cod.push(o.dual());
                }
            }
            for (k, o) in m.cod.factors().iter().enumerate() {
                if !o.starred {
                    cod_ports[k] = Port {
                        side: Side::Out,
                        index: new_cod.len(),
                    };
                    new_cod.push(*o);
                }
            }
            let partner = m.partner;
            let flip = |ps: &[Port]| -> Vec<Port> {
                ps.iter()
                    .map(|p| Port {
                        side: p.side.flip(),
                        index: p.index,
                    })
                    .collect()
            };
            table[partner.index()] = PortTable {
                dom: flip(&cod_ports),
                cod: flip(&dom_ports),
            };
            table[f.index()] = PortTable {
                dom: dom_ports,
                cod: cod_ports,
            };
            let new_dom = Sort(new_dom);
            let new_cod = Sort(new_cod);
            signature.morphisms[f.index()].dom = new_dom.clone();
            signature.morphisms[f.index()].cod = new_cod.clone();
            signature.morphisms[partner.index()].dom = new_cod;
            signature.morphisms[partner.index()].cod = new_dom;
        }
        Translation { signature, table }
    }

    /// Parses the line-oriented signature format:
    ///
    /// ```text
    /// # comment
    /// kind compact-closed        # optional; or traced-monoidal
    /// object A B
    /// morphism f : A* x B -> C
    /// ```
    pub fn parse(src: &str) -> Result<Signature, ParseError> {
        let mut sig = Signature::compact_closed();
        let mut seen_decl = false;
        for (i, line) in src.lines().enumerate() {
            let lineno = i + 1;
            let mut cur = lex::cursor(line, lineno)?;
            if cur.at_end() {
                continue;
            }
            let (kw, kw_pos) = cur.expect_ident()?;
            match kw.as_str() {
                "kind" => {
                    if seen_decl {
                        return Err(ParseError::new(
                            kw_pos,
                            "`kind` must precede all declarations",
                        ));
                    }
                    let (k, pos) = cur.expect_ident()?;
                    // `compact-closed` lexes as `compact` `-` `closed`
                    cur.expect_punct('-')?;
                    let (k2, _) = cur.expect_ident()?;
                    sig.kind = match (k.as_str(), k2.as_str()) {
                        ("compact", "closed") => SignatureKind::CompactClosed,
                        ("traced", "monoidal") => SignatureKind::TracedMonoidal,
                        _ => {
                            return Err(ParseError::new(
                                pos,
                                "expected `compact-closed` or `traced-monoidal`",
                            ))
                        }
                    };
                    cur.expect_end()?;
                }
                "object" => {
                    seen_decl = true;
                    if cur.at_end() {
                        return Err(cur.error("expected object name"));
                    }
                    while !cur.at_end() {
                        let (name, pos) = cur.expect_ident()?;
                        sig.declare_object(&name)
                            .map_err(|e| ParseError::new(pos, e.to_string()))?;
                        cur.eat_punct(',');
                    }
                }
                "morphism" => {
                    seen_decl = true;
                    let (name, pos) = cur.expect_ident()?;
                    cur.expect_punct(':')?;
                    let dom = parse_sort(&mut cur, &sig)?;
                    cur.expect_tok(&Tok::Arrow)?;
                    let cod = parse_sort(&mut cur, &sig)?;
                    cur.expect_end()?;
                    sig.declare_morphism(&name, dom, cod)
                        .map_err(|e| ParseError::new(pos, e.to_string()))?;
                }
                other => {
                    return Err(ParseError::new(
                        kw_pos,
                        format!("expected `object`, `morphism` or `kind`, found `{other}`"),
                    ))
                }
            }
        }
        Ok(sig)
    }
}

/// Parses `I` or `A x B* x ...` (also accepting `⊗`).
pub fn parse_sort(cur: &mut lex::Cursor, sig: &Signature) -> Result<Sort, ParseError> {
    if cur.eat_keyword("I") {
        return Ok(Sort::unit());
    }
    let mut factors = vec![parse_signed_object(cur, sig)?];
    while cur.eat_keyword("x") || cur.eat_tok(&Tok::Otimes) {
        factors.push(parse_signed_object(cur, sig)?);
    }
    Ok(Sort(factors))
}

pub fn parse_signed_object(
    cur: &mut lex::Cursor,
    sig: &Signature,
) -> Result<SignedObject, ParseError> {
    let (name, pos) = cur.expect_ident()?;
    let base = sig
        .object(&name)
        .ok_or_else(|| ParseError::new(pos, format!("undeclared object variable `{name}`")))?;
    let starred = cur.eat_punct('*');
    if starred && sig.kind() == SignatureKind::TracedMonoidal {
        return Err(ParseError::new(
            pos,
            "dual objects are not allowed in a traced monoidal signature",
        ));
    }
    Ok(SignedObject { base, starred })
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind == SignatureKind::TracedMonoidal {
            writeln!(f, "kind traced-monoidal")?;
        }
        if !self.objects.is_empty() {
            writeln!(f, "object {}", self.objects.join(" "))?;
        }
        for m in self.declared_morphisms() {
            writeln!(f, "{}", self.morphism_decl(m))?;
        }
        Ok(())
    }
}

/// Parses a sort from a string against `sig`; mostly for tests and the CLI.
pub fn sort_from_str(src: &str, sig: &Signature) -> Result<Sort, ParseError> {
    let mut cur = lex::cursor(src, 1)?;
    let s = parse_sort(&mut cur, sig)?;
    cur.expect_end()?;
    Ok(s)
}
