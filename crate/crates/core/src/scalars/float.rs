use num_complex::Complex64;
use rand::Rng;

use super::{split_complex, ParseScalar, RandomScalar, Scalar};

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn from_u64(n: u64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn approx_eq(&self, other: &Self, rel_tol: f64) -> bool {
        let scale = self.norm().max(other.norm());
        (self - other).norm() <= rel_tol * scale
    }
}

impl RandomScalar for Complex64 {
    fn random<R: Rng + ?Sized>(rng: &mut R, _magnitude: i64) -> Self {
        Complex64::new(rng.gen::<f64>(), rng.gen::<f64>())
    }
}

impl ParseScalar for Complex64 {
    fn parse_scalar(s: &str) -> Result<Self, String> {
        let (re, im) = split_complex(s)?;
        let parse = |t: &str| {
            t.trim_start_matches('+')
                .parse::<f64>()
                .map_err(|_| format!("`{s}` is not a complex number"))
        };
        Ok(Complex64::new(parse(&re)?, parse(&im)?))
    }
}
