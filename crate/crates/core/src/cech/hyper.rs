use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{lift_coboundary, LiftOrder, Model, PatternTable, SumBasis};
use crate::cox::{poly_mat_mul, PolyMatrix};
use crate::error::{HblError, Result};
use crate::field::Field;
use crate::linalg::{kernel, mat_vec, rank, Matrix};
use crate::pic::{DivisorClass, Surface};

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LineBundleSum {
    pub summands: Vec<DivisorClass>,
}

impl LineBundleSum {
    pub fn new(summands: Vec<DivisorClass>) -> Self {
        LineBundleSum { summands }
    }

    /// `d` repeated `n` times.
    pub fn repeated(d: DivisorClass, n: usize) -> Self {
        LineBundleSum {
            summands: vec![d; n],
        }
    }

    pub fn concat(parts: &[LineBundleSum]) -> Self {
        LineBundleSum {
            summands: parts.iter().flat_map(|p| p.summands.iter().copied()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn twisted(&self, d: DivisorClass) -> Vec<DivisorClass> {
        self.summands.iter().map(|&x| x + d).collect()
    }
}

/// A complex `terms[0] -> terms[1] -> ...` placed at positions
/// `start, start + 1, ...`. `maps[i]` has one row per summand of
/// `terms[i + 1]` and one column per summand of `terms[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexOfSums<E> {
    pub start: i32,
    pub terms: Vec<LineBundleSum>,
    pub maps: Vec<PolyMatrix<E>>,
}

impl<E: Clone> ComplexOfSums<E> {
    pub fn single(position: i32, term: LineBundleSum) -> Self {
        ComplexOfSums {
            start: position,
            terms: vec![term],
            maps: Vec::new(),
        }
    }

    /// Checks sizes, entry degrees on `model`, and that consecutive maps
    /// compose to zero.
    pub fn validate<F: Field<Elem = E>>(&self, f: &F, model: &Model) -> Result<()> {
        let bad = |msg: String| Err(HblError::MalformedComplex(msg));
        if self.terms.is_empty() || self.terms.len() > 3 {
            return bad(format!("{} terms; between 1 and 3 are supported", self.terms.len()));
        }
        if self.maps.len() + 1 != self.terms.len() {
            return bad("need exactly one map between consecutive terms".into());
        }
        for (i, map) in self.maps.iter().enumerate() {
            let (src, tgt) = (&self.terms[i], &self.terms[i + 1]);
            if map.len() != tgt.len() || map.iter().any(|r| r.len() != src.len()) {
                return bad(format!("map {i} is not {} x {}", tgt.len(), src.len()));
            }
            for (t, row) in map.iter().enumerate() {
                for (s, p) in row.iter().enumerate() {
                    let want = tgt.summands[t] - src.summands[s];
                    let want = match model {
                        Model::Surface(_) => want,
                        Model::Fibre => DivisorClass::new(want.a, 0),
                    };
                    if p.degree() != want {
                        return Err(HblError::DegreeMismatch {
                            expected: want,
                            found: p.degree(),
                        });
                    }
                    if p.terms().keys().any(|m| model.degree(m) != want) {
                        return bad(format!("entry ({t}, {s}) of map {i} is not homogeneous"));
                    }
                }
            }
        }
        for i in 1..self.maps.len() {
            let comp = poly_mat_mul(f, &self.maps[i], &self.maps[i - 1])?;
            if comp.iter().flatten().any(|p| !p.is_zero()) {
                return bad(format!("maps {} and {} do not compose to zero", i - 1, i));
            }
        }
        Ok(())
    }

    /// Restriction to the fibre over `[t0 : t1]`.
    pub fn restrict_to_fibre<F: Field<Elem = E>>(&self, f: &F, t0: &E, t1: &E) -> Self {
        ComplexOfSums {
            start: self.start,
            terms: self
                .terms
                .iter()
                .map(|t| LineBundleSum::new(t.summands.iter().map(|d| DivisorClass::new(d.a, 0)).collect()))
                .collect(),
            maps: self
                .maps
                .iter()
                .map(|m| {
                    m.iter()
                        .map(|row| row.iter().map(|p| p.restrict_to_fibre(f, t0, t1)).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

/// Spectral-sequence bookkeeping and the resulting hypercohomology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperDims {
    pub start: i32,
    /// `e1[i][q] = h^q(term_i ⊗ twist)`.
    pub e1: Vec<[usize; 3]>,
    /// `d1_rank[i][q]`: rank of `E1^{i,q} -> E1^{i+1,q}`.
    pub d1_rank: Vec<[usize; 3]>,
    /// `d2_rank[q]`: rank of `E2^{0,q} -> E2^{2,q-1}` (three-term complexes).
    pub d2_rank: [usize; 3],
    pub einf: Vec<[usize; 3]>,
    /// `dim ℍ^n`, for every `n` that can be nonzero.
    pub total: BTreeMap<i32, usize>,
}

impl HyperDims {
    pub fn dim(&self, n: i32) -> usize {
        self.total.get(&n).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.total
            .iter()
            .map(|(&n, &d)| if n.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// `h^q` of a sheaf sitting alone at position `pos`:
    /// `H^q = ℍ^{q + pos}`.
    pub fn sheaf_h(&self, pos: i32) -> [usize; 3] {
        [self.dim(pos), self.dim(pos + 1), self.dim(pos + 2)]
    }
}

fn span_rank<F: Field>(f: &F, cols: &[Vec<F::Elem>], rows: usize) -> usize {
    if cols.is_empty() || rows == 0 {
        return 0;
    }
    rank(f, &Matrix::from_columns(cols, rows, f.zero()))
}

/// Hypercohomology of `complex ⊗ O(twist)` on `Σ_e`.
pub fn hypercohomology<F: Field>(
    f: &F,
    s: &Surface,
    complex: &ComplexOfSums<F::Elem>,
    twist: DivisorClass,
) -> Result<HyperDims> {
    let table = PatternTable::new(f, Model::Surface(*s), LiftOrder::Forward);
    hypercohomology_with(f, &table, complex, twist)
}

/// Same as [`hypercohomology`] on any model, reusing a pattern table.
pub fn hypercohomology_with<F: Field>(
    f: &F,
    table: &PatternTable<F::Elem>,
    complex: &ComplexOfSums<F::Elem>,
    twist: DivisorClass,
) -> Result<HyperDims> {
    complex.validate(f, &table.model)?;
    let n = complex.terms.len();
    let bases: Vec<Vec<SumBasis>> = complex
        .terms
        .iter()
        .map(|t| {
            (0..3)
                .map(|q| SumBasis::new(table, &t.twisted(twist), q))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let e1: Vec<[usize; 3]> = bases
        .iter()
        .map(|b| [b[0].dim(), b[1].dim(), b[2].dim()])
        .collect();

    // d1 as lists of image columns.
    let mut d1_cols: Vec<Vec<Vec<Vec<F::Elem>>>> = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut per_q = Vec::new();
        for q in 0..3 {
            let (src, tgt) = (&bases[i][q], &bases[i + 1][q]);
            let cols = (0..src.dim())
                .map(|c| {
                    let mut unit = vec![f.zero(); src.dim()];
                    unit[c] = f.one();
                    let image = src.cocycle(f, table, &unit).apply(f, &complex.maps[i]);
                    tgt.project(f, table, &image)
                })
                .collect::<Vec<_>>();
            per_q.push(cols);
        }
        d1_cols.push(per_q);
    }
    let d1_rank: Vec<[usize; 3]> = d1_cols
        .iter()
        .enumerate()
        .map(|(i, per_q)| {
            let mut r = [0; 3];
            for q in 0..3 {
                r[q] = span_rank(f, &per_q[q], e1[i + 1][q]);
            }
            r
        })
        .collect();

    let mut d2_rank = [0; 3];
    if n == 3 {
        for q in 1..3 {
            let src = &bases[0][q];
            let d1 = Matrix::from_columns(&d1_cols[0][q], e1[1][q], f.zero());
            let ker = if src.dim() == 0 {
                Vec::new()
            } else if e1[1][q] == 0 {
                (0..src.dim())
                    .map(|c| {
                        let mut unit = vec![f.zero(); src.dim()];
                        unit[c] = f.one();
                        unit
                    })
                    .collect()
            } else {
                kernel(f, &d1)
            };
            let mut cols = d1_cols[1][q - 1].clone();
            let base_rank = d1_rank[1][q - 1];
            for x in &ker {
                let c = src.cocycle(f, table, x);
                let y0 = c.apply(f, &complex.maps[0]);
                debug_assert!(
                    mat_vec(f, &d1, x).iter().all(|v| f.is_zero(v)),
                    "kernel vector of d1"
                );
                let z = lift_coboundary(f, table, &y0);
                debug_assert_eq!(z.coboundary(f, &table.model), y0, "zig-zag lift");
                let w = z.apply(f, &complex.maps[1]);
                cols.push(bases[2][q - 1].project(f, table, &w));
            }
            d2_rank[q] = span_rank(f, &cols, e1[2][q - 1]) - base_rank;
        }
    }

    let mut einf = vec![[0usize; 3]; n];
    for i in 0..n {
        for q in 0..3 {
            let out_rank = if i + 1 < n { d1_rank[i][q] } else { 0 };
            let in_rank = if i > 0 { d1_rank[i - 1][q] } else { 0 };
            let mut v = e1[i][q] - out_rank - in_rank;
            if n == 3 && i == 0 {
                v -= d2_rank[q];
            }
            if n == 3 && i == 2 && q < 2 {
                v -= d2_rank[q + 1];
            }
            einf[i][q] = v;
        }
    }
    let mut total = BTreeMap::new();
    for (i, row) in einf.iter().enumerate() {
        for (q, &v) in row.iter().enumerate() {
            *total.entry(complex.start + i as i32 + q as i32).or_insert(0) += v;
        }
    }
    Ok(HyperDims {
        start: complex.start,
        e1,
        d1_rank,
        d2_rank,
        einf,
        total,
    })
}

/// One column `E1^{-1,q}` of the Beilinson page: built from
/// `H^q(V(-F)) ⊗ O(-F)` and `H^q(V(-C0)) ⊗ O(-C0-eF)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MiddleTerm {
    pub mult_minus_f: usize,
    pub mult_minus_c0: usize,
    /// The three-term sequence is short exact: `H^{q-1}(V(-C0)) = 0` and
    /// `H^{q+1}(V(-F)) = 0`.
    pub short_exact: bool,
    /// Short exact and the extension class vanishes.
    pub split: bool,
}

impl MiddleTerm {
    /// Rank of `E1^{-1,q}` when it is determined: the sequence is short
    /// exact, or both outer terms vanish.
    pub fn rank(&self) -> Option<usize> {
        let n = self.mult_minus_f + self.mult_minus_c0;
        (self.short_exact || n == 0).then_some(n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeilinsonPage {
    pub e: u32,
    /// `h^q(V)`: multiplicity of `O` in `E1^{0,q}`.
    pub h_v: [usize; 3],
    /// `h^q(V(-C0-F))`: multiplicity of `O(-C0-(e+1)F)` in `E1^{-2,q}`.
    pub h_minus_c0_f: [usize; 3],
    pub middle: [MiddleTerm; 3],
}

impl BeilinsonPage {
    /// Rank of `E1^{p,q}` as a bundle, when determined.
    pub fn rank(&self, p: i32, q: usize) -> Option<usize> {
        match (p, q) {
            (_, q) if q > 2 => Some(0),
            (0, q) => Some(self.h_v[q]),
            (-2, q) => Some(self.h_minus_c0_f[q]),
            (-1, q) => self.middle[q].rank(),
            _ => Some(0),
        }
    }

    pub fn row_vanishes(&self, q: usize) -> bool {
        (-2..=0).all(|p| self.rank(p, q) == Some(0))
    }
}

/// E1 page of the Beilinson-type spectral sequence for the bundle at
/// position `pos` of `complex` (the only cohomology sheaf there).
pub fn beilinson_page<F: Field>(
    f: &F,
    s: &Surface,
    complex: &ComplexOfSums<F::Elem>,
    pos: i32,
) -> Result<BeilinsonPage> {
    let table = PatternTable::new(f, Model::Surface(*s), LiftOrder::Forward);
    let h = |tw: DivisorClass| -> Result<[usize; 3]> {
        Ok(hypercohomology_with(f, &table, complex, tw)?.sheaf_h(pos))
    };
    Ok(BeilinsonPage::from_cohomology(
        s,
        h(DivisorClass::ZERO)?,
        h(DivisorClass::new(0, -1))?,
        h(DivisorClass::new(-1, 0))?,
        h(DivisorClass::new(-1, -1))?,
    ))
}

impl BeilinsonPage {
    /// Page from `h^q` of `V`, `V(-F)`, `V(-C0)` and `V(-C0-F)`.
    pub fn from_cohomology(
        s: &Surface,
        h_v: [usize; 3],
        h_f: [usize; 3],
        h_c0: [usize; 3],
        h_c0_f: [usize; 3],
    ) -> Self {
        // Ext^1(O(-C0-eF), O(-F)) = H^1(O(C0+(e-1)F)).
        let ext = crate::cohomology::h1_dim(s, DivisorClass::new(1, s.e as i64 - 1));
        let middle = std::array::from_fn(|q| {
            let below = if q == 0 { 0 } else { h_c0[q - 1] };
            let above = if q == 2 { 0 } else { h_f[q + 1] };
            let short_exact = below == 0 && above == 0;
            MiddleTerm {
                mult_minus_f: h_f[q],
                mult_minus_c0: h_c0[q],
                short_exact,
                split: short_exact && (ext == 0 || h_f[q] == 0 || h_c0[q] == 0),
            }
        });
        BeilinsonPage {
            e: s.e,
            h_v,
            h_minus_c0_f: h_c0_f,
            middle,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub chi_hyper: i64,
    pub chi_terms: i64,
    /// Every `E∞` entry is bounded by its `E1` entry and every rank by the
    /// dimensions it maps between.
    pub bookkeeping: bool,
    /// Dimensions do not change when lifts are chosen in reverse order.
    pub lift_independent: bool,
    pub pass: bool,
}

pub fn verify_connecting_consistency<F: Field>(
    f: &F,
    s: &Surface,
    complex: &ComplexOfSums<F::Elem>,
    twist: DivisorClass,
) -> Result<ConsistencyReport> {
    let model = Model::Surface(*s);
    let forward = PatternTable::new(f, model, LiftOrder::Forward);
    let reverse = PatternTable::new(f, model, LiftOrder::Reverse);
    let h = hypercohomology_with(f, &forward, complex, twist)?;
    let h_rev = hypercohomology_with(f, &reverse, complex, twist)?;
    let chi_terms = complex
        .terms
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let chi: i64 = t.twisted(twist).iter().map(|&d| model.euler_char(d)).sum();
            if (complex.start + i as i32).rem_euclid(2) == 0 {
                chi
            } else {
                -chi
            }
        })
        .sum();
    let n = complex.terms.len();
    let mut bookkeeping = true;
    for i in 0..n {
        for q in 0..3 {
            bookkeeping &= h.einf[i][q] <= h.e1[i][q];
            if i + 1 < n {
                bookkeeping &= h.d1_rank[i][q] <= h.e1[i][q].min(h.e1[i + 1][q]);
            }
        }
    }
    let chi_hyper = h.euler_characteristic();
    let lift_independent = h == h_rev;
    Ok(ConsistencyReport {
        chi_hyper,
        chi_terms,
        bookkeeping,
        lift_independent,
        pass: chi_hyper == chi_terms && bookkeeping && lift_independent,
    })
}
