//! Random interpretations and the search for one that separates two diagrams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{denote, indexing_count, naive_denote, Interpretation, SemanticsError, Tensor};
use crate::diagram::Diagram;
use crate::scalars::{GaussianInt, RandomScalar, Scalar};
use crate::signature::Signature;

/// A random interpretation with the given dimension per object. Tensors are
/// drawn for declared morphisms in id order, and partners get the conjugate
/// transpose. The result depends only on `(seed, trial)`: each trial reads
/// its own stream of the seeded generator.
pub fn random_interpretation<R: RandomScalar>(
    sig: &Signature,
    dims: &[usize],
    seed: u64,
    trial: u64,
    magnitude: i64,
) -> Interpretation<R> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut interp = Interpretation::zeros(sig, dims);
    for f in sig.declared_morphisms() {
        let mut t: Tensor<R> = interp.matrix(f).clone();
        let shape = t.shape().to_vec();
        let mut idx = vec![0usize; shape.len()];
        if shape.iter().all(|&d| d > 0) {
            'fill: loop {
                t.set(&idx, R::random(&mut rng, magnitude));
                for k in (0..idx.len()).rev() {
                    idx[k] += 1;
                    if idx[k] < shape[k] {
                        continue 'fill;
                    }
                    idx[k] = 0;
                }
                break;
            }
        }
        interp.set_matrix(sig, f, t);
    }
    interp
}

#[derive(Clone, Debug)]
pub struct WitnessConfig {
    /// Dimension per object id.
    pub dims: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    /// Bound on integer parts for exact rings.
    pub magnitude: i64,
    /// Relative difference above which inexact values count as different.
    pub threshold: f64,
    /// Relative tolerance when re-checking inexact values against the naive sum.
    pub verify_tol: f64,
    /// Largest number of indexings for which the naive sum is re-run.
    pub naive_limit: u128,
}

impl WitnessConfig {
    pub fn new(dims: Vec<usize>) -> Self {
        WitnessConfig {
            dims,
            trials: 100,
            seed: 0,
            magnitude: 10,
            threshold: 1e-6,
            verify_tol: 1e-9,
            naive_limit: 1_000_000,
        }
    }
}

/// An interpretation under which two diagrams take different values.
#[derive(Clone, Debug)]
pub struct Witness<R> {
    pub interp: Interpretation<R>,
    pub left: R,
    pub right: R,
    /// The trial that produced it, for random searches.
    pub trial: Option<u64>,
    /// Whether both values were recomputed by direct summation.
    pub verified: bool,
}

fn differ<R: Scalar>(a: &R, b: &R, threshold: f64) -> bool {
    if R::EXACT {
        a != b
    } else {
        !a.approx_eq(b, threshold)
    }
}

fn verify<R: Scalar>(
    n: &Diagram,
    m: &Diagram,
    interp: &Interpretation<R>,
    left: &R,
    right: &R,
    cfg_tol: f64,
    limit: u128,
) -> Result<bool, SemanticsError> {
    if indexing_count(n, interp) > limit || indexing_count(m, interp) > limit {
        return Ok(false);
    }
    let same = |a: &R, b: &R| {
        if R::EXACT {
            a == b
        } else {
            a.approx_eq(b, cfg_tol)
        }
    };
    let nl = naive_denote(n, interp)?;
    let nr = naive_denote(m, interp)?;
    if !same(&nl, left) || !same(&nr, right) {
        return Err(SemanticsError::Verification(format!(
            "contraction gave {left} and {right}, direct summation gave {nl} and {nr}"
        )));
    }
    Ok(true)
}

/// Tries `cfg.trials` random interpretations and returns the first under
/// which `n` and `m` differ, or `None`.
pub fn find_witness<R: RandomScalar>(
    n: &Diagram,
    m: &Diagram,
    sig: &Signature,
    cfg: &WitnessConfig,
) -> Result<Option<Witness<R>>, SemanticsError> {
    for trial in 0..cfg.trials {
        let interp: Interpretation<R> =
            random_interpretation(sig, &cfg.dims, cfg.seed, trial, cfg.magnitude);
        let left = denote(n, &interp)?;
        let right = denote(m, &interp)?;
        if differ(&left, &right, cfg.threshold) {
            let verified = verify(
                n,
                m,
                &interp,
                &left,
                &right,
                cfg.verify_tol,
                cfg.naive_limit,
            )?;
            return Ok(Some(Witness {
                interp,
                left,
                right,
                trial: Some(trial),
                verified,
            }));
        }
    }
    Ok(None)
}

/// When `n` and `m` have different trivial cycles: the first object `A`
/// whose counts differ gets dimension 2, every other object dimension 1,
/// and every tensor is 1 at its first entry and 0 elsewhere. Only the
/// all-first indexing contributes, so the values are `2^k` and `2^l` for
/// the two counts `k != l`.
pub fn trivial_cycle_witness(
    n: &Diagram,
    m: &Diagram,
    sig: &Signature,
) -> Result<Option<Witness<GaussianInt>>, SemanticsError> {
    let objs = n.trivial_cycles.keys().chain(m.trivial_cycles.keys());
    let Some(a) = objs
        .copied()
        .filter(|o| n.trivial_cycles.get(o) != m.trivial_cycles.get(o))
        .min()
    else {
        return Ok(None);
    };
    let mut dims = vec![1usize; sig.object_count()];
    dims[a.index()] = 2;
    let mut interp: Interpretation<GaussianInt> = Interpretation::zeros(sig, &dims);
    for f in sig.declared_morphisms() {
        let mut t = interp.matrix(f).clone();
        let first = vec![0usize; t.shape().len()];
        t.set(&first, GaussianInt::one());
        interp.set_matrix(sig, f, t);
    }
    let left = denote(n, &interp)?;
    let right = denote(m, &interp)?;
    debug_assert!(left != right);
    let verified = verify(n, m, &interp, &left, &right, 0.0, 1_000_000)?;
    Ok(Some(Witness {
        interp,
        left,
        right,
        trial: None,
        verified,
    }))
}
