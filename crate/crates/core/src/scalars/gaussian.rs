use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{split_complex, ParseScalar, RandomScalar, Scalar};

/// `re + im·i` with arbitrary-precision integer parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn norm_sqr(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl From<i64> for GaussianInt {
    fn from(n: i64) -> Self {
        GaussianInt::new(n, 0)
    }
}

impl Scalar for GaussianInt {
    const EXACT: bool = true;

    fn zero() -> Self {
        GaussianInt::default()
    }

    fn one() -> Self {
        GaussianInt::new(BigInt::one(), BigInt::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        GaussianInt {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }

    fn mul(&self, other: &Self) -> Self {
        GaussianInt {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    fn neg(&self) -> Self {
        GaussianInt {
            re: -&self.re,
            im: -&self.im,
        }
    }

    fn conj(&self) -> Self {
        GaussianInt {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    fn from_u64(n: u64) -> Self {
        GaussianInt::new(n, 0)
    }

    fn add_assign(&mut self, other: &Self) {
        self.re += &other.re;
        self.im += &other.im;
    }
}

impl RandomScalar for GaussianInt {
    fn random<R: Rng + ?Sized>(rng: &mut R, magnitude: i64) -> Self {
        GaussianInt::new(
            rng.gen_range(-magnitude..=magnitude),
            rng.gen_range(-magnitude..=magnitude),
        )
    }
}

impl ParseScalar for GaussianInt {
    fn parse_scalar(s: &str) -> Result<Self, String> {
        let (re, im) = split_complex(s)?;
        let parse = |t: &str| {
            t.trim_start_matches('+')
                .parse::<BigInt>()
                .map_err(|_| format!("`{s}` is not a Gaussian integer"))
        };
        Ok(GaussianInt {
            re: parse(&re)?,
            im: parse(&im)?,
        })
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |f: &mut fmt::Formatter<'_>, im: &BigInt| {
            if im.abs().is_one() {
                f.write_str("i")
            } else {
                write!(f, "{}i", im.abs())
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_negative() {
                    f.write_str("-")?;
                }
                imag(f, &self.im)
            }
            (false, false) => {
                write!(f, "{}", self.re)?;
                f.write_str(if self.im.is_negative() { "-" } else { "+" })?;
                imag(f, &self.im)
            }
        }
    }
}
