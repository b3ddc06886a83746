use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Scalar;

/// The variable `ξ_b` or its conjugate `ξ̄_b` for box `b` of a reference diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolyVar {
    pub box_id: usize,
    pub conjugated: bool,
}

impl PolyVar {
    pub fn xi(box_id: usize) -> Self {
        PolyVar {
            box_id,
            conjugated: false,
        }
    }

    pub fn xibar(box_id: usize) -> Self {
        PolyVar {
            box_id,
            conjugated: true,
        }
    }

    pub fn conj(self) -> Self {
        PolyVar {
            box_id: self.box_id,
            conjugated: !self.conjugated,
        }
    }
}

impl fmt::Display for PolyVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.conjugated { "xibar" } else { "xi" };
        write!(f, "{name}[b{}]", self.box_id + 1)
    }
}

/// A product of variables with positive exponents, sorted by variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(PolyVar, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: PolyVar) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs.
    pub fn from_powers(powers: impl IntoIterator<Item = (PolyVar, u32)>) -> Self {
        let mut map: BTreeMap<PolyVar, u32> = BTreeMap::new();
        for (v, e) in powers {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    /// `Π_{b ∈ boxes} ξ_b`.
    pub fn product_of_boxes(boxes: impl IntoIterator<Item = usize>) -> Self {
        Monomial::from_powers(boxes.into_iter().map(|b| (PolyVar::xi(b), 1)))
    }

    pub fn powers(&self) -> &[(PolyVar, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn conj(&self) -> Monomial {
        Monomial::from_powers(self.0.iter().map(|&(v, e)| (v.conj(), e)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Integer polynomials in the variables `ξ_b`, `ξ̄_b`. Conjugation swaps
/// `ξ_b` and `ξ̄_b` and fixes coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConjPolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl ConjPolynomial {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = ConjPolynomial::default();
        p.add_term(Monomial::one(), c.into());
        p
    }

    pub fn var(v: PolyVar) -> Self {
        let mut p = ConjPolynomial::default();
        p.add_term(Monomial::var(v), BigInt::one());
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut p = ConjPolynomial::default();
        p.add_term(m, BigInt::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Terms in monomial order; coefficients are nonzero.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient_of(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The common total degree of all terms, or `None` if the degrees differ.
    /// The zero polynomial is homogeneous of every degree and returns `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl Scalar for ConjPolynomial {
    const EXACT: bool = true;

    fn zero() -> Self {
        ConjPolynomial::default()
    }

    fn one() -> Self {
        ConjPolynomial::constant(1)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = ConjPolynomial::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    fn neg(&self) -> Self {
        ConjPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn conj(&self) -> Self {
        ConjPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.conj(), c.clone()))
                .collect(),
        }
    }

    fn from_u64(n: u64) -> Self {
        ConjPolynomial::constant(n)
    }
}

impl fmt::Display for ConjPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            if m.powers().is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}
