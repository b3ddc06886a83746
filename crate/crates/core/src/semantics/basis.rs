use num_complex::Complex64;
use rand::Rng;

use super::{Interpretation, Tensor};
use crate::scalars::Scalar;
use crate::signature::Signature;

/// A random `d x d` unitary, `u[row][col]`: uniform entries in the square
/// `[-1, 1]^2`, with columns orthonormalized in order.
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<Vec<Complex64>> {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v: Vec<Complex64> = (0..d)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        for c in &cols {
            let dot: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(c) {
                *x -= dot * y;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        for x in &mut v {
            *x /= norm;
        }
        cols.push(v);
    }
    (0..d)
        .map(|r| (0..d).map(|c| cols[c][r]).collect())
        .collect()
}

fn mode_product<R: Scalar>(t: &Tensor<R>, axis: usize, m: &[Vec<R>]) -> Tensor<R> {
    let mut out = Tensor::zeros(t.shape().to_vec(), t.n_out());
    for (idx, v) in t.entries() {
        let x = idx[axis];
        let mut j = idx.clone();
        for (y, row) in m.iter().enumerate() {
            let c = row[x].mul(v);
            if !c.is_zero() {
                j[axis] = y;
                out.add_at(&j, &c);
            }
        }
    }
    out
}

/// Re-expresses `interp` in new bases: `u[o]` is the change of basis on the
/// space of object `o`. Output axes are multiplied by `u`, input axes by its
/// conjugate, so `f` becomes `U f U†` and the dagger condition is kept.
pub fn change_basis<R: Scalar>(
    interp: &Interpretation<R>,
    sig: &Signature,
    u: &[Vec<Vec<R>>],
) -> Interpretation<R> {
    let conj: Vec<Vec<Vec<R>>> = u
        .iter()
        .map(|m| {
            m.iter()
                .map(|row| row.iter().map(Scalar::conj).collect())
                .collect()
        })
        .collect();
    let mut out = interp.clone();
    for f in sig.morphisms() {
        let m = sig.morphism(f);
        let mut t = interp.matrix(f).clone();
        let axes = m
            .cod
            .factors()
            .iter()
            .map(|o| &u[o.base.index()])
            .chain(m.dom.factors().iter().map(|o| &conj[o.base.index()]));
        for (axis, mat) in axes.enumerate() {
            t = mode_product(&t, axis, mat);
        }
        *out.matrix_mut(f) = t;
    }
    out
}
