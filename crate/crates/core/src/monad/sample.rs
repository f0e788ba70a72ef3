//! Random points of the monad space.
//!
//! A point is drawn by choosing `a` at random, solving the linear system
//! `μ(a, ·) = 0` for `b`, and taking a random vector of the solution space.
//! The result is accepted once `a` is fibrewise injective and `b` fibrewise
//! surjective.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::fiber::{fibre_rank_certificate, RankStatus};
use super::{composite_matrix_in_b, shape, MonadPoint, MonadShape};
use crate::cox::PolyMatrix;
use crate::error::{HblError, Result};
use crate::field::Field;
use crate::linalg::{kernel, rank};

pub const SAMPLE_ATTEMPTS: usize = 16;

/// Seed offset for the random compressions used by [`is_monad`].
const CHECK_STREAM: u64 = 0x6d6f_6e61_6463_6b31;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonadCheck {
    pub composite_zero: bool,
    /// `a` has rank `e` at every point.
    pub a: RankStatus,
    /// `b` has rank 2 at every point.
    pub b: RankStatus,
}

impl MonadCheck {
    pub fn is_valid(&self) -> bool {
        self.composite_zero && self.a.is_certified() && self.b.is_certified()
    }

    fn reason(&self) -> String {
        if !self.composite_zero {
            return "b a is not zero".into();
        }
        for (name, st) in [("a", &self.a), ("b", &self.b)] {
            match st {
                RankStatus::Certified { .. } => {}
                RankStatus::Witness(w) => {
                    return format!("{name} drops rank at {:?} mod {}", w.point, w.prime)
                }
                RankStatus::Uncertified { reason } => return format!("{name}: {reason}"),
            }
        }
        String::new()
    }
}

fn check_with<F: Field, R: Rng + ?Sized>(m: &MonadPoint<F>, rng: &mut R) -> Result<MonadCheck> {
    let composite = m.composite()?;
    Ok(MonadCheck {
        composite_zero: composite.iter().flatten().all(|p| p.is_zero()),
        a: fibre_rank_certificate(&m.field, &m.a_matrix(), rng),
        b: fibre_rank_certificate(&m.field, &m.b_matrix(), rng),
    })
}

/// Checks `b a = 0`, fibrewise injectivity of `a` and surjectivity of `b`.
/// Deterministic for a given point.
pub fn is_monad<F: Field>(m: &MonadPoint<F>) -> Result<MonadCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(m.seed.unwrap_or(0) ^ CHECK_STREAM);
    check_with(m, &mut rng)
}

/// Draws a monad over `field` with twist `e` from `seed`.
pub fn sample_monad<F: Field>(field: F, e: u32, seed: u64) -> Result<MonadPoint<F>> {
    let sh = shape(e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (d1, _, _) = sh.space_dims();
    let mut reason = String::from("no attempt made");
    for _ in 0..SAMPLE_ATTEMPTS {
        let mut m = MonadPoint::zero(field.clone(), sh.clone());
        m.seed = Some(seed);
        let a: Vec<F::Elem> = (0..d1).map(|_| field.sample(&mut rng)).collect();
        m.set_a_coords(&a);
        let ker = kernel(&field, &composite_matrix_in_b(&field, &sh, &m.a1, &m.a2));
        if ker.is_empty() {
            reason = "no nonzero b with b a = 0".into();
            continue;
        }
        let mut b = vec![field.zero(); ker[0].len()];
        for v in &ker {
            let c = field.sample(&mut rng);
            for (x, y) in b.iter_mut().zip(v) {
                field.add_mul_assign(x, &c, y);
            }
        }
        m.set_b_coords(&b);
        let check = check_with(&m, &mut rng)?;
        if check.is_valid() {
            return Ok(m);
        }
        reason = check.reason();
    }
    Err(HblError::SamplingExhausted {
        attempts: SAMPLE_ATTEMPTS,
        reason,
    })
}

/// `dim {b : μ(a, b) = 0}` for fixed `a`.
pub fn fiber_solution_dim<F: Field>(
    f: &F,
    shape: &MonadShape,
    a1: &PolyMatrix<F::Elem>,
    a2: &PolyMatrix<F::Elem>,
) -> usize {
    let l = composite_matrix_in_b(f, shape, a1, a2);
    l.cols() - rank(f, &l)
}
