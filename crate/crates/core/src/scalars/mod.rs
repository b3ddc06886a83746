//! Commutative rings with an involution, used as matrix entries.

mod float;
mod gaussian;
mod poly;

use std::fmt::{Debug, Display};

use rand::Rng;

pub use gaussian::GaussianInt;
pub use num_complex::Complex64;
pub use poly::{ConjPolynomial, Monomial, PolyVar};

pub trait Scalar: Clone + Debug + Display + PartialEq {
    /// Whether equality is exact. Inexact rings compare with
    /// [`Scalar::approx_eq`].
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// The involution; a ring automorphism of order two.
    fn conj(&self) -> Self;
    fn from_u64(n: u64) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact equality for exact rings; otherwise `|a - b| <= rel_tol * max(|a|, |b|)`.
    fn approx_eq(&self, other: &Self, rel_tol: f64) -> bool {
        let _ = rel_tol;
        self == other
    }

    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }
}

/// Rings that random interpretations can be drawn from.
pub trait RandomScalar: Scalar {
    /// A random element. `magnitude` bounds integer parts for exact rings
    /// and is ignored by floating rings, which sample the unit square.
    fn random<R: Rng + ?Sized>(rng: &mut R, magnitude: i64) -> Self;
}

/// Rings whose elements can be read back from their printed form.
pub trait ParseScalar: Scalar {
    fn parse_scalar(s: &str) -> Result<Self, String>;
}

/// Splits `a+bi`, `a-bi`, `a`, `bi`, `i`, `-i` into real and imaginary
/// strings. The imaginary part is returned without its `i`; a bare sign
/// stands for one.
pub(crate) fn split_complex(s: &str) -> Result<(String, String), String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty scalar".into());
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok((s, "0".into()));
    };
    // Find the sign that starts the imaginary part: the last + or - that is
    // not at the start and does not follow an exponent marker.
    let bytes = body.as_bytes();
    let mut cut = 0;
    for k in (1..bytes.len()).rev() {
        if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            cut = k;
            break;
        }
    }
    let (re, im) = body.split_at(cut);
    let re = if re.is_empty() {
        "0".to_string()
    } else {
        re.to_string()
    };
    let im = match im {
        "" | "+" => "1".to_string(),
        "-" => "-1".to_string(),
        other => other.trim_start_matches('+').to_string(),
    };
    Ok((re, im))
}
