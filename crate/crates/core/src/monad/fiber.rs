//! Exact certificates that a polynomial matrix has full rank at every point
//! of `Σ_e` (over an algebraic closure).
//!
//! On each of the four affine charts the matrix becomes a polynomial matrix
//! in two coordinates `(s, t)`. Its rank drops at a point only if every
//! maximal minor vanishes there, in particular the determinants `g_i` of a
//! few random square compressions `P M Q`. After a random shear
//! `t = u + c s` each `g_i` has constant leading coefficient in `s`, so two
//! resultants in `s` give polynomials in `u` vanishing exactly where the
//! `g_i` have a common zero; if their gcd is a nonzero constant, the chart
//! has no rank-drop point. Rational matrices are
//! reduced modulo a prime first, which is sound because a rank drop over
//! `Q̄` persists modulo every prime where the reduction is defined.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cox::PolyMatrix;
use crate::field::{Field, PrimeField};
use crate::linalg::{det, mat_mul, rank, Matrix};
use crate::univariate::{sylvester_resultant, UPoly};

/// A point in Cox coordinates `(S0, S1, T0, T1)` over `F_p` where the rank
/// drops.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibreWitness {
    pub prime: u64,
    pub point: [u64; 4],
    pub rank: usize,
    pub expected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RankStatus {
    /// Full rank everywhere, proved modulo `prime`.
    Certified { prime: u64 },
    /// Rank drops at an explicit point.
    Witness(FibreWitness),
    /// Neither a proof nor a point was found.
    Uncertified { reason: String },
}

impl RankStatus {
    pub fn is_certified(&self) -> bool {
        matches!(self, RankStatus::Certified { .. })
    }
}

const ATTEMPTS: usize = 3;
/// Largest prime for which roots are searched by exhaustion.
const SEARCH_LIMIT: u64 = 200_000;
/// Random lines used to meet a common curve of the minors.
const LINES: usize = 8;

pub fn fibre_rank_certificate<F: Field, R: Rng + ?Sized>(
    f: &F,
    m: &PolyMatrix<F::Elem>,
    rng: &mut R,
) -> RankStatus {
    let mut last = RankStatus::Uncertified {
        reason: "no prime reduces the coefficients".into(),
    };
    for p in f.certificate_primes() {
        let Ok(fp) = PrimeField::new(p) else { continue };
        let mut reduced = Vec::with_capacity(m.len());
        let mut ok = true;
        for row in m {
            let mut out = Vec::with_capacity(row.len());
            for poly in row {
                if poly.terms().values().any(|c| f.reduce_into(&fp, c).is_none()) {
                    ok = false;
                }
                out.push(poly.map_coeffs(&fp, |c| f.reduce_into(&fp, c).unwrap_or(0)));
            }
            reduced.push(out);
        }
        if !ok {
            continue;
        }
        match certify_mod_p(&fp, &reduced, rng) {
            RankStatus::Certified { prime } => return RankStatus::Certified { prime },
            RankStatus::Witness(w) if f.characteristic() == p => return RankStatus::Witness(w),
            RankStatus::Witness(w) => {
                last = RankStatus::Uncertified {
                    reason: format!("rank drops modulo {} at {:?}", w.prime, w.point),
                }
            }
            other => last = other,
        }
    }
    last
}

fn chart_point(chart: usize, s: u64, t: u64) -> [u64; 4] {
    let (s0, s1) = if chart & 2 == 0 { (1, s) } else { (s, 1) };
    let (t0, t1) = if chart & 1 == 0 { (1, t) } else { (t, 1) };
    [s0, s1, t0, t1]
}

fn evaluate(fp: &PrimeField, m: &PolyMatrix<u64>, point: &[u64; 4]) -> Matrix<u64> {
    let cols = m.first().map_or(0, |r| r.len());
    Matrix::from_rows(
        m.iter()
            .map(|row| row.iter().map(|p| p.eval(fp, point)).collect())
            .collect(),
        cols,
    )
}

/// A polynomial in `s` whose coefficients are polynomials in `u`.
type Bivariate = Vec<UPoly<u64>>;

fn trim(mut g: Bivariate) -> Bivariate {
    while g.last().is_some_and(|c| c.is_zero()) {
        g.pop();
    }
    g
}

fn u_degree(g: &Bivariate) -> usize {
    g.iter().filter_map(|c| c.degree()).max().unwrap_or(0)
}

fn random_matrix<R: Rng + ?Sized>(fp: &PrimeField, rows: usize, cols: usize, rng: &mut R) -> Matrix<u64> {
    Matrix::from_rows(
        (0..rows).map(|_| (0..cols).map(|_| fp.sample(rng)).collect()).collect(),
        cols,
    )
}

/// `Res_s(g, h)` as a polynomial in `u`, using the true `s`-degrees as
/// formal degrees.
fn resultant_in_s(fp: &PrimeField, g: &Bivariate, h: &Bivariate) -> Option<UPoly<u64>> {
    if g.is_empty() || h.is_empty() {
        return Some(UPoly::zero());
    }
    let (m, n) = (g.len() - 1, h.len() - 1);
    if m == 0 && n == 0 {
        return Some(UPoly::gcd(fp, &g[0], &h[0]));
    }
    let bound = n * u_degree(g) + m * u_degree(h);
    if bound as u64 >= fp.p() {
        return None;
    }
    let xs: Vec<u64> = (0..=bound as u64).collect();
    let ys: Vec<u64> = xs
        .iter()
        .map(|t| {
            let gc: Vec<u64> = g.iter().map(|c| c.eval(fp, t)).collect();
            let hc: Vec<u64> = h.iter().map(|c| c.eval(fp, t)).collect();
            sylvester_resultant(fp, &gc, &hc)
        })
        .collect();
    Some(UPoly::interpolate(fp, &xs, &ys))
}

fn certify_mod_p<R: Rng + ?Sized>(fp: &PrimeField, m: &PolyMatrix<u64>, rng: &mut R) -> RankStatus {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let r = rows.min(cols);
    if r == 0 {
        return RankStatus::Certified { prime: fp.p() };
    }
    let mut unresolved = None;
    for chart in 0..4 {
        let mut top = 0usize;
        for p in m.iter().flatten() {
            for mono in p.terms().keys() {
                let [i, j, k, l] = mono.exps;
                let sd = if chart & 2 == 0 { j } else { i };
                let td = if chart & 1 == 0 { l } else { k };
                top = top.max((sd + td) as usize);
            }
        }
        let n = r * top;
        if n as u64 >= fp.p() {
            return RankStatus::Uncertified {
                reason: format!("prime {} too small for interpolation", fp.p()),
            };
        }
        let nodes: Vec<u64> = (0..=n as u64).collect();
        let mut common = UPoly::zero();
        let mut shear = 0;
        let mut gens: Vec<Bivariate> = Vec::new();
        let mut certified = false;
        for _ in 0..ATTEMPTS {
            // t = u + c s makes every s-leading coefficient a constant
            shear = fp.sample(rng);
            let projections: Vec<(Matrix<u64>, Matrix<u64>)> = (0..3)
                .map(|_| (random_matrix(fp, r, rows, rng), random_matrix(fp, cols, r, rng)))
                .collect();
            // values[i][u][s]
            let mut values = vec![vec![vec![0u64; n + 1]; n + 1]; 3];
            for u in 0..=n as u64 {
                for sv in 0..=n as u64 {
                    let t = fp.add(&u, &fp.mul(&shear, &sv));
                    let mv = evaluate(fp, m, &chart_point(chart, sv, t));
                    for (i, (pl, pr)) in projections.iter().enumerate() {
                        let sq = mat_mul(fp, &mat_mul(fp, pl, &mv), pr);
                        values[i][u as usize][sv as usize] = det(fp, &sq);
                    }
                }
            }
            gens = values
                .iter()
                .map(|vals| {
                    let in_s: Vec<UPoly<u64>> =
                        vals.iter().map(|row| UPoly::interpolate(fp, &nodes, row)).collect();
                    let coeff = |k: usize, p: &UPoly<u64>| p.coeffs().get(k).copied().unwrap_or(0);
                    trim(
                        (0..=n)
                            .map(|k| {
                                let ys: Vec<u64> = in_s.iter().map(|p| coeff(k, p)).collect();
                                UPoly::interpolate(fp, &nodes, &ys)
                            })
                            .collect(),
                    )
                })
                .collect();
            if gens.iter().any(|g| g.last().is_some_and(|c| c.degree() != Some(0))) {
                common = UPoly::zero();
                continue;
            }
            common = UPoly::zero();
            for h in &gens[1..] {
                let Some(res) = resultant_in_s(fp, &gens[0], h) else {
                    return RankStatus::Uncertified {
                        reason: format!("prime {} too small for resultant interpolation", fp.p()),
                    };
                };
                common = UPoly::gcd(fp, &common, &res);
            }
            if common.degree() == Some(0) {
                certified = true;
                break;
            }
        }
        if !certified {
            match search_witness(fp, m, chart, shear, r, &common, &gens, rng) {
                w @ RankStatus::Witness(_) => return w,
                other => unresolved = Some(other),
            }
        }
    }
    unresolved.unwrap_or(RankStatus::Certified { prime: fp.p() })
}

/// `g(s, u0)` as a polynomial in `s`.
fn at_u(fp: &PrimeField, g: &Bivariate, u0: u64) -> UPoly<u64> {
    UPoly::from_coeffs(fp, g.iter().map(|c| c.eval(fp, &u0)).collect())
}

/// `g(s0, u)` as a polynomial in `u`.
fn at_s(fp: &PrimeField, g: &Bivariate, s0: u64) -> UPoly<u64> {
    let len = g.iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
    let mut out = vec![0u64; len];
    let mut pow = 1u64;
    for c in g {
        for (o, x) in out.iter_mut().zip(c.coeffs()) {
            fp.add_mul_assign(o, &pow, x);
        }
        pow = fp.mul(&pow, &s0);
    }
    UPoly::from_coeffs(fp, out)
}

fn common_roots(fp: &PrimeField, polys: impl Iterator<Item = UPoly<u64>>) -> Vec<u64> {
    let g = polys.fold(UPoly::zero(), |acc, p| UPoly::gcd(fp, &acc, &p));
    if g.is_zero() {
        return (0..fp.p()).collect();
    }
    if g.degree() == Some(0) {
        return Vec::new();
    }
    (0..fp.p()).filter(|x| fp.is_zero(&g.eval(fp, x))).collect()
}

#[allow(clippy::too_many_arguments)]
fn search_witness<R: Rng + ?Sized>(
    fp: &PrimeField,
    m: &PolyMatrix<u64>,
    chart: usize,
    shear: u64,
    r: usize,
    common: &UPoly<u64>,
    gens: &[Bivariate],
    rng: &mut R,
) -> RankStatus {
    let check = |s: u64, u: u64| {
        let point = chart_point(chart, s, fp.add(&u, &fp.mul(&shear, &s)));
        let k = rank(fp, &evaluate(fp, m, &point));
        (k < r).then_some(FibreWitness {
            prime: fp.p(),
            point,
            rank: k,
            expected: r,
        })
    };
    if fp.p() > SEARCH_LIMIT {
        return RankStatus::Uncertified {
            reason: "possible rank drop; prime too large to search for a point".into(),
        };
    }
    let on_u_line = |u0: u64| {
        common_roots(fp, gens.iter().map(|g| at_u(fp, g, u0)))
            .into_iter()
            .find_map(|s| check(s, u0))
    };
    if common.is_zero() {
        // the minors share a curve; meet it with random lines
        for _ in 0..LINES {
            let s0 = fp.sample(rng);
            let hit = common_roots(fp, gens.iter().map(|g| at_s(fp, g, s0)))
                .into_iter()
                .find_map(|u| check(s0, u));
            if let Some(w) = hit.or_else(|| on_u_line(fp.sample(rng))) {
                return RankStatus::Witness(w);
            }
        }
        return RankStatus::Uncertified {
            reason: format!("rank may drop along a curve in chart {chart} without points found over F_{}", fp.p()),
        };
    }
    for u in 0..fp.p() {
        if !fp.is_zero(&common.eval(fp, &u)) {
            continue;
        }
        if let Some(w) = on_u_line(u) {
            return RankStatus::Witness(w);
        }
    }
    RankStatus::Uncertified {
        reason: format!(
            "possible rank drop in chart {chart} not defined over F_{}",
            fp.p()
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cox::{CoxMonomial, CoxPolynomial};
    use crate::field::Rationals;
    use crate::pic::{DivisorClass, Surface};
    use rand::SeedableRng;

    fn rng() -> rand_chacha::ChaCha8Rng {
        rand_chacha::ChaCha8Rng::seed_from_u64(3)
    }

    #[test]
    fn base_coordinates_never_vanish_together() {
        let f = PrimeField::new(10007).unwrap();
        let s = Surface::new(2);
        let t = |m| CoxPolynomial::monomial(&f, &s, m, 1);
        let m = vec![vec![t(CoxMonomial::T0), t(CoxMonomial::T1)]];
        assert!(fibre_rank_certificate(&f, &m, &mut rng()).is_certified());
    }

    #[test]
    fn single_section_vanishes_somewhere() {
        let f = PrimeField::new(10007).unwrap();
        let s = Surface::new(1);
        // (T0, T0 + 0) drops rank along T0 = 0
        let t0 = CoxPolynomial::monomial(&f, &s, CoxMonomial::T0, 1);
        let m = vec![vec![t0.clone(), t0.scale(&f, &5)]];
        match fibre_rank_certificate(&f, &m, &mut rng()) {
            RankStatus::Witness(w) => {
                assert_eq!(w.point[2], 0);
                assert_eq!(w.rank, 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn conic_without_rational_points() {
        // T0^2 + T1^2 has no zeros over F_p for p = 3 mod 4, such as 10007.
        let f = PrimeField::new(10007).unwrap();
        let s = Surface::new(1);
        let q = CoxPolynomial::from_terms(
            &f,
            &s,
            DivisorClass::new(0, 2),
            [(CoxMonomial::new(0, 0, 2, 0), 1), (CoxMonomial::new(0, 0, 0, 2), 1)],
        )
        .unwrap();
        let s0 = CoxPolynomial::monomial(&f, &s, CoxMonomial::S0, 1);
        let m = vec![vec![q, CoxPolynomial::zero(DivisorClass::C0)], vec![CoxPolynomial::zero(DivisorClass::new(0, 2)), s0]];
        match fibre_rank_certificate(&f, &m, &mut rng()) {
            RankStatus::Witness(w) => assert_eq!(w.point[0], 0),
            other => panic!("{other:?}"),
        }
        let m = vec![vec![
            CoxPolynomial::from_terms(
                &f,
                &s,
                DivisorClass::new(0, 2),
                [(CoxMonomial::new(0, 0, 2, 0), 1), (CoxMonomial::new(0, 0, 0, 2), 1)],
            )
            .unwrap(),
        ]];
        assert!(matches!(
            fibre_rank_certificate(&f, &m, &mut rng()),
            RankStatus::Uncertified { .. }
        ));
    }

    #[test]
    fn rationals_reduce_modulo_primes() {
        let q = Rationals::default();
        let s = Surface::new(1);
        let t = |m, c: i64| CoxPolynomial::monomial(&q, &s, m, q.from_i64(c));
        let m = vec![vec![t(CoxMonomial::T0, 3), t(CoxMonomial::T1, -7)]];
        assert_eq!(
            fibre_rank_certificate(&q, &m, &mut rng()),
            RankStatus::Certified { prime: 10007 }
        );
    }
}
