//! Numerical invariants of the cohomology bundle of a monad: the generic
//! splitting type on fibres, the normalisation `r`, and the length of the
//! zero-dimensional scheme in the canonical extension.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{chern_from_terms, MonadPoint};
use crate::cech::{hypercohomology_with, BeilinsonPage, LiftOrder, Model, PatternTable};
use crate::cohomology::h0_dim;
use crate::error::{HblError, Result};
use crate::field::Field;
use crate::pic::{ChernData, DivisorClass, Surface};

pub const DEFAULT_FIBERS: usize = 7;
/// Fibres allowed to disagree with the minimum (jumping fibres).
pub const FIBER_DISAGREEMENT_BUDGET: usize = 2;
const R_SCAN_TOP: i64 = 10;
const R_SCAN_FLOOR: i64 = -50;
const DR_STREAM: u64 = 0x6472_5f66_6962_7273;

/// Position of the cohomology bundle in [`MonadPoint::complex`].
const V_POS: i32 = -1;

/// `(d, r)` with fibres drawn from a generator seeded by the point's seed.
pub fn invariants_dr<F: Field>(m: &MonadPoint<F>) -> Result<(i64, i64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(m.seed.unwrap_or(0) ^ DR_STREAM);
    invariants_dr_with(m, DEFAULT_FIBERS, &mut rng)
}

pub fn invariants_dr_with<F: Field, R: Rng + ?Sized>(
    m: &MonadPoint<F>,
    fibers: usize,
    rng: &mut R,
) -> Result<(i64, i64)> {
    let d = generic_splitting(m, fibers, rng)?;
    let r = normalisation(m, d)?;
    Ok((d, r))
}

fn generic_splitting<F: Field, R: Rng + ?Sized>(
    m: &MonadPoint<F>,
    fibers: usize,
    rng: &mut R,
) -> Result<i64> {
    let f = &m.field;
    let table = PatternTable::new(f, Model::Fibre, LiftOrder::Forward);
    let complex = m.complex();
    let top = 2 * m.shape.e as i64 + 4;
    let mut found = Vec::with_capacity(fibers);
    for _ in 0..fibers {
        let t = f.sample(rng);
        let restricted = complex.restrict_to_fibre(f, &f.one(), &t);
        let mut k = top;
        loop {
            if k < -top {
                return Err(HblError::ScanExhausted { upper: top, lower: -top });
            }
            let h = hypercohomology_with(f, &table, &restricted, DivisorClass::new(-k, 0))?;
            if h.sheaf_h(V_POS)[0] != 0 {
                break;
            }
            k -= 1;
        }
        found.push(k);
    }
    let d = found.iter().copied().min().unwrap_or(0);
    let disagreeing = found.iter().filter(|&&k| k != d).count();
    if disagreeing > FIBER_DISAGREEMENT_BUDGET {
        return Err(HblError::FiberDisagreement { fibers, disagreeing });
    }
    Ok(d)
}

fn normalisation<F: Field>(m: &MonadPoint<F>, d: i64) -> Result<i64> {
    let f = &m.field;
    let s = m.surface();
    let c = chern_from_terms(&s, &m.shape.a, &m.shape.b, &m.shape.c);
    let table = PatternTable::new(f, Model::Surface(s), LiftOrder::Forward);
    let complex = m.complex();
    let h0 = |l: i64| -> Result<usize> {
        Ok(hypercohomology_with(f, &table, &complex, DivisorClass::new(-d, -l))?.sheaf_h(V_POS)[0])
    };
    if h0(R_SCAN_TOP)? != 0 {
        return Err(HblError::ScanExhausted {
            upper: R_SCAN_TOP,
            lower: R_SCAN_TOP,
        });
    }
    let mut l = R_SCAN_TOP - 1;
    while l >= R_SCAN_FLOOR && s.zero_scheme_length(&c, d, l)? >= 0 {
        if h0(l)? != 0 {
            return Ok(l);
        }
        l -= 1;
    }
    Err(HblError::ScanExhausted {
        upper: R_SCAN_TOP,
        lower: l + 1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prioritary {
    pub prioritary: bool,
    /// `(2d-α-2) C0 + (2r-β-e-1) F`.
    pub witness_divisor: DivisorClass,
    pub witness_h0: i64,
    /// The witness decides the criterion (`2d >= α`).
    pub witness_applies: bool,
}

/// `d = floor((α+1)/2)` or `2r < β+e+1`, for `c1 = αC0 + βF`.
pub fn is_prioritary(s: &Surface, c: &ChernData, d: i64, r: i64) -> Result<Prioritary> {
    if c.rank != 2 {
        return Err(HblError::RankNotTwo(c.rank));
    }
    let (alpha, beta, e) = (c.c1.a, c.c1.b, s.e as i64);
    let prioritary = d == (alpha + 1).div_euclid(2) || 2 * r < beta + e + 1;
    let witness_divisor = DivisorClass::new(2 * d - alpha - 2, 2 * r - beta - e - 1);
    let witness_h0 = h0_dim(s, witness_divisor);
    let witness_applies = 2 * d >= alpha;
    Ok(Prioritary {
        prioritary,
        witness_divisor,
        witness_h0,
        witness_applies,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRow {
    pub twist: DivisorClass,
    pub h: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleInvariants {
    pub c1: DivisorClass,
    pub c2: i64,
    /// Twists `0, -F, -C0, -C0-F, C0+F`.
    pub h_table: Vec<TwistRow>,
    pub d: i64,
    pub r: i64,
    pub zero_scheme_length: i64,
    pub prioritary: bool,
    pub prioritary_witness_h0: i64,
    /// `h^0(V(C0+F)) = 0`.
    pub vanishing: bool,
    pub beilinson: BeilinsonPage,
}

impl BundleInvariants {
    pub fn h(&self, twist: DivisorClass) -> Option<[usize; 3]> {
        self.h_table.iter().find(|row| row.twist == twist).map(|row| row.h)
    }
}

pub const TABLE_TWISTS: [DivisorClass; 5] = [
    DivisorClass::ZERO,
    DivisorClass::new(0, -1),
    DivisorClass::new(-1, 0),
    DivisorClass::new(-1, -1),
    DivisorClass::new(1, 1),
];

pub fn classify<F: Field>(m: &MonadPoint<F>) -> Result<BundleInvariants> {
    classify_with(m, DEFAULT_FIBERS)
}

/// [`classify`] with `fibers` sampled fibres for the splitting type.
pub fn classify_with<F: Field>(m: &MonadPoint<F>, fibers: usize) -> Result<BundleInvariants> {
    let f = &m.field;
    let s = m.surface();
    let c = chern_from_terms(&s, &m.shape.a, &m.shape.b, &m.shape.c);
    let table = PatternTable::new(f, Model::Surface(s), LiftOrder::Forward);
    let complex = m.complex();
    let h_table = TABLE_TWISTS
        .iter()
        .map(|&twist| {
            Ok(TwistRow {
                twist,
                h: hypercohomology_with(f, &table, &complex, twist)?.sheaf_h(V_POS),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let h = |i: usize| h_table[i].h;
    let beilinson = BeilinsonPage::from_cohomology(&s, h(0), h(1), h(2), h(3));
    let mut rng = ChaCha8Rng::seed_from_u64(m.seed.unwrap_or(0) ^ DR_STREAM);
    let (d, r) = invariants_dr_with(m, fibers, &mut rng)?;
    let p = is_prioritary(&s, &c, d, r)?;
    Ok(BundleInvariants {
        c1: c.c1,
        c2: c.c2,
        vanishing: h(4)[0] == 0,
        h_table,
        d,
        r,
        zero_scheme_length: s.zero_scheme_length(&c, d, r)?,
        prioritary: p.prioritary,
        prioritary_witness_h0: p.witness_h0,
        beilinson,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::monad::sample_monad;

    fn kx(s: &Surface) -> ChernData {
        ChernData {
            rank: 2,
            c1: s.canonical_class(),
            c2: 4,
        }
    }

    #[test]
    fn prioritary_examples() {
        let s = Surface::new(1);
        let c = kx(&s);
        let p = is_prioritary(&s, &c, -1, 5).unwrap();
        assert!(p.prioritary);
        let p = is_prioritary(&s, &c, 0, 0).unwrap();
        assert!(!p.prioritary);
        assert_eq!(p.witness_divisor, DivisorClass::F);
        assert_eq!(p.witness_h0, 2);
        let p = is_prioritary(&s, &c, 0, -1).unwrap();
        assert!(p.prioritary);
        assert_eq!(p.witness_divisor, DivisorClass::new(0, -1));
        assert_eq!(p.witness_h0, 0);
    }

    #[test]
    fn canonical_case_reduces_to_simple_rule() {
        for e in 0..6 {
            let s = Surface::new(e);
            let c = kx(&s);
            for d in -5..=5 {
                for r in -5..=5 {
                    let p = is_prioritary(&s, &c, d, r).unwrap();
                    assert_eq!(p.prioritary, d == -1 || r <= -1, "e={e} d={d} r={r}");
                    if p.witness_applies {
                        assert_eq!(p.prioritary, p.witness_h0 == 0, "e={e} d={d} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn sampled_bundle_invariants() {
        let f = PrimeField::new(10007).unwrap();
        for e in 1..3u32 {
            let m = sample_monad(f, e, 42).unwrap();
            let inv = classify(&m).unwrap();
            let n = e as usize;
            assert_eq!(inv.h(DivisorClass::ZERO), Some([0, 2, 0]));
            assert_eq!(inv.h(DivisorClass::new(0, -1)), Some([0, 2, 0]));
            assert_eq!(inv.h(DivisorClass::new(-1, 0)), Some([0, n + 2, 0]));
            assert_eq!(inv.h(DivisorClass::new(-1, -1)), Some([0, n, 0]));
            assert!(inv.vanishing);
            assert!(inv.prioritary);
            assert!(inv.d == -1 || inv.r <= -1);
            assert!(inv.r <= -2, "e={e} r={}", inv.r);
            assert!(inv.zero_scheme_length >= 0);
            assert!(2 * inv.d >= -2);
            assert_eq!(inv.prioritary_witness_h0, 0);
            assert!(inv.beilinson.row_vanishes(0) && inv.beilinson.row_vanishes(2));
        }
    }
}
