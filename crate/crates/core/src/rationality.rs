//! Dimension arithmetic around the monad space: sizes of the block spaces,
//! the kernel of the bilinear product map `M1 ⊗ M2 -> M3`, and the
//! automorphism group acting on monads.
//!
//! Dimensions `m_i` follow the projective convention: `m_i + 1` is the
//! dimension of the vector space.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::check::Check;
use crate::cohomology::hom_and_ext_dims;
use crate::error::{HblError, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::{inverse, rref, Matrix};
use crate::monad::{block_coords, fiber_solution_dim, composite_matrix_in_b, shape, MonadPoint};

/// Primes used for the kernel computation.
pub const KERNEL_PRIMES: [u64; 2] = [10007, 10009];
/// Largest `e` for which the bilinear map is built explicitly.
pub const KERNEL_MAX_E: u32 = 3;

/// `(p1, p2, p3)`, checked against the block sizes.
pub fn projective_block_dims(e: u32) -> Result<(i64, i64, i64)> {
    let sh = shape(e)?;
    let ei = e as i64;
    let closed = (4 * ei * ei + 8 * ei - 1, 2 * ei * ei + 8 * ei + 15, 2 * ei * ei + 8 * ei - 1);
    let (d1, d2, d3) = sh.space_dims();
    let direct = (d1 as i64 - 1, d2 as i64 - 1, d3 as i64 - 1);
    if closed != direct {
        return Err(HblError::FormulaMismatch(format!(
            "e = {e}: closed forms {closed:?}, block sums {direct:?}"
        )));
    }
    Ok(closed)
}

/// `dim M1 + dim M2 - dim M3`.
pub fn parameter_space_dim(e: u32) -> Result<i64> {
    let (p1, p2, p3) = projective_block_dims(e)?;
    Ok((p1 + 1) + (p2 + 1) - (p3 + 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BilinearKernel {
    pub e: u32,
    pub characteristic: u64,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub surjective: bool,
    /// Every basis vector of `M3` was hit by an explicit preimage,
    /// recomputed through polynomial products.
    pub preimages_verified: bool,
}

/// Rank of `M1 ⊗ M2 -> M3`, `a ⊗ b ↦ b1 a1 + b2 a2`, and `dim K`.
pub fn bilinear_kernel<F: Field>(e: u32, f: &F) -> Result<BilinearKernel> {
    if e > KERNEL_MAX_E {
        return Err(HblError::TooLarge(e));
    }
    let sh = shape(e)?;
    let s = sh.surface();
    let (d1, d2, d3) = sh.space_dims();
    let unit = |n: usize, i: usize| {
        let mut v = vec![f.zero(); n];
        v[i] = f.one();
        v
    };
    let points: Vec<MonadPoint<F>> = (0..d1)
        .map(|i| {
            let mut m = MonadPoint::zero(f.clone(), sh.clone());
            m.set_a_coords(&unit(d1, i));
            m
        })
        .collect();
    // column i * d2 + j is the image of a_i ⊗ b_j
    let mut columns = Vec::with_capacity(d1 * d2);
    for m in &points {
        let l = composite_matrix_in_b(f, &sh, &m.a1, &m.a2);
        columns.extend((0..d2).map(|j| l.column(j)));
    }
    let big = Matrix::from_columns(&columns, d3, f.zero());
    let mut reduced = big.clone();
    let pivots = rref(f, &mut reduced);
    let rank = pivots.len();
    let surjective = rank == d3;

    let mut preimages_verified = false;
    if surjective {
        let cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let square = Matrix::from_columns(
            &cols.iter().map(|&c| big.column(c)).collect::<Vec<_>>(),
            d3,
            f.zero(),
        );
        if let Some(inv) = inverse(f, &square) {
            let target = sh.product_block();
            preimages_verified = (0..d3).all(|k| {
                let mut acc = vec![f.zero(); d3];
                for (pos, &c) in cols.iter().enumerate() {
                    let x = &inv[(pos, k)];
                    if f.is_zero(x) {
                        continue;
                    }
                    let mut m = points[c / d2].clone();
                    m.set_b_coords(&unit(d2, c % d2));
                    let Ok(prod) = m.composite() else { return false };
                    let Ok(coords) = block_coords(f, &s, &target, &prod) else {
                        return false;
                    };
                    for (a, y) in acc.iter_mut().zip(&coords) {
                        f.add_mul_assign(a, x, y);
                    }
                }
                acc == unit(d3, k)
            });
        }
    }
    Ok(BilinearKernel {
        e,
        characteristic: f.characteristic(),
        rows: d3,
        cols: d1 * d2,
        rank,
        kernel_dim: d1 * d2 - rank,
        surjective,
        preimages_verified,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub e: u32,
    pub p1: i64,
    pub p2: i64,
    pub p3: i64,
    pub parameter_space_dim: i64,
    pub kernel_dim: i64,
    /// `computed` from the bilinear map, or `closed_form` beyond desk scale.
    pub kernel_dim_source: String,
    pub checks: Vec<Check>,
}

impl DimensionReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn inequality_audit(e: u32) -> Result<DimensionReport> {
    let (p1, p2, p3) = projective_block_dims(e)?;
    let ei = e as i64;
    let dz = parameter_space_dim(e)?;
    let closed_k = (p1 + 1) * (p2 + 1) - (p3 + 1);
    let mut checks = vec![
        Check::equal("p2 - p3", 16, p2 - p3),
        Check::equal("dim Z = 4(e^2+2e+4)", 4 * (ei * ei + 2 * ei + 4), dz),
    ];
    let (kernel_dim, source) = if e <= KERNEL_MAX_E {
        let k = bilinear_kernel(e, &PrimeField::new(KERNEL_PRIMES[0])?)?;
        checks.push(Check::equal("dim K = (p1+1)(p2+1) - (p3+1)", closed_k, k.kernel_dim as i64));
        (k.kernel_dim as i64, "computed")
    } else {
        (closed_k, "closed_form")
    };
    let m = kernel_dim - 1;
    checks.push(Check::holds(
        "m + p2 >= p1 p2 + p1 + p2",
        "lhs >= rhs",
        [m + p2, p1 * p2 + p1 + p2],
        m + p2 >= p1 * p2 + p1 + p2,
    ));
    let excess = m - p1 * p2 - p1;
    checks.push(Check::holds("m - p1 p2 - p1 >= 15", ">= 15", excess, excess >= 15));
    Ok(DimensionReport {
        e,
        p1,
        p2,
        p3,
        parameter_space_dim: dz,
        kernel_dim,
        kernel_dim_source: source.into(),
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSurvey {
    pub e: u32,
    pub samples: usize,
    pub min: usize,
    pub max: usize,
    /// Samples with exactly `dim M2 - dim M3` solutions.
    pub generic: usize,
    pub expected: usize,
}

/// `dim {b : μ(a, b) = 0}` for random `a`.
pub fn fiber_survey<F: Field, R: Rng + ?Sized>(f: &F, e: u32, samples: usize, rng: &mut R) -> Result<FiberSurvey> {
    let sh = shape(e)?;
    let (d1, d2, d3) = sh.space_dims();
    let mut dims = Vec::with_capacity(samples);
    for _ in 0..samples {
        let mut m = MonadPoint::zero(f.clone(), sh.clone());
        let a: Vec<F::Elem> = (0..d1).map(|_| f.sample(rng)).collect();
        m.set_a_coords(&a);
        dims.push(fiber_solution_dim(f, &sh, &m.a1, &m.a2));
    }
    let expected = d2 - d3;
    Ok(FiberSurvey {
        e,
        samples,
        min: dims.iter().copied().min().unwrap_or(0),
        max: dims.iter().copied().max().unwrap_or(0),
        generic: dims.iter().filter(|&&d| d == expected).count(),
        expected,
    })
}

/// Dimensions of the groups acting on monads. Only reported; the
/// block-diagonal and full counts differ and neither is preferred.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDimAudit {
    pub e: u32,
    pub dim_end_a: i64,
    pub dim_end_b_diag: i64,
    pub dim_end_b_full: i64,
    pub dim_end_c: i64,
    pub dim_g_block_diagonal: i64,
    pub dim_g_full: i64,
    /// `dim Z - (2e^2 + 4e + 4)`.
    pub dim_g_implied: i64,
    pub dim_quotient: i64,
}

pub fn group_dim_audit(e: u32) -> Result<GroupDimAudit> {
    let sh = shape(e)?;
    let s = sh.surface();
    let ei = e as i64;
    let end = |x: &[crate::pic::DivisorClass]| hom_and_ext_dims(&s, x, x).hom;
    let (b_f, b_c0) = sh.b.summands.split_at(2);
    let dim_end_a = end(&sh.a.summands);
    let dim_end_b_diag = end(b_f) + end(b_c0);
    let dim_end_b_full = end(&sh.b.summands);
    let dim_end_c = end(&sh.c.summands);
    let quotient = 2 * ei * ei + 4 * ei + 4;
    Ok(GroupDimAudit {
        e,
        dim_end_a,
        dim_end_b_diag,
        dim_end_b_full,
        dim_end_c,
        dim_g_block_diagonal: dim_end_a + dim_end_b_diag + dim_end_c,
        dim_g_full: dim_end_a + dim_end_b_full + dim_end_c,
        dim_g_implied: parameter_space_dim(e)? - quotient,
        dim_quotient: quotient,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cox::CoxPolynomial;
    use crate::field::Rationals;
    use rand::SeedableRng;

    #[test]
    fn block_space_dimensions() {
        assert_eq!(projective_block_dims(1).unwrap(), (11, 25, 9));
        assert_eq!(projective_block_dims(2).unwrap(), (31, 39, 23));
        for e in 1..=10 {
            let ei = e as i64;
            assert_eq!(parameter_space_dim(e).unwrap(), 4 * (ei * ei + 2 * ei + 4));
        }
        assert!(matches!(projective_block_dims(0), Err(HblError::ZeroTwist(0))));
    }

    #[test]
    fn bilinear_map_is_surjective() {
        let k = bilinear_kernel(1, &PrimeField::new(10007).unwrap()).unwrap();
        assert_eq!((k.rank, k.kernel_dim), (10, 302));
        assert!(k.surjective && k.preimages_verified);
        let k = bilinear_kernel(2, &PrimeField::new(10009).unwrap()).unwrap();
        assert_eq!(k.rank, 24);
        assert!(k.preimages_verified);
        let k = bilinear_kernel(1, &Rationals::default()).unwrap();
        assert_eq!(k.kernel_dim, 302);
        assert!(matches!(
            bilinear_kernel(4, &PrimeField::new(10007).unwrap()),
            Err(HblError::TooLarge(4))
        ));
    }

    #[test]
    fn inequality_chain() {
        let r = inequality_audit(1).unwrap();
        assert_eq!(r.kernel_dim, 302);
        assert!(r.pass(), "{:?}", r.checks);
        assert!(inequality_audit(2).unwrap().pass());
        let r = inequality_audit(5).unwrap();
        assert_eq!(r.kernel_dim_source, "closed_form");
        assert!(r.pass());
    }

    #[test]
    fn fiber_dimensions() {
        let f = PrimeField::new(10007).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let s = fiber_survey(&f, 1, 10, &mut rng).unwrap();
        assert_eq!((s.min, s.generic), (16, 10));

        let sh = shape(1).unwrap();
        let zero = MonadPoint::zero(f, sh.clone());
        assert_eq!(fiber_solution_dim(&f, &sh, &zero.a1, &zero.a2), 26);

        // a1 of rank one, a2 = 0
        let mut m = MonadPoint::zero(f, sh.clone());
        let surface = sh.surface();
        m.a1[0][0] = CoxPolynomial::monomial(&f, &surface, crate::cox::CoxMonomial::new(1, 0, 1, 0), 1);
        assert!(fiber_solution_dim(&f, &sh, &m.a1, &m.a2) > 16);
    }

    #[test]
    fn group_dimensions() {
        let g = group_dim_audit(1).unwrap();
        assert_eq!(g.dim_end_b_full, 19);
        assert_eq!(g.dim_g_full, 24);
        assert_eq!(g.dim_g_implied, 18);
        assert_eq!(g.dim_end_c, 4);
        for e in 1..6 {
            let g = group_dim_audit(e).unwrap();
            let ei = e as i64;
            assert_eq!(g.dim_end_a, ei * ei);
            assert_eq!(g.dim_end_b_diag, 4 + (ei + 2) * (ei + 2));
            assert_eq!(g.dim_end_b_full, 4 + (ei + 2) * (ei + 2) + 2 * ei * (ei + 2));
            assert_eq!(g.dim_g_full, 4 * ei * ei + 8 * ei + 12);
            assert_eq!(g.dim_g_block_diagonal, g.dim_g_implied);
        }
    }
}
