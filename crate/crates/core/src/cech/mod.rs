//! Čech cohomology of line bundles on the toric charts of `Σ_e` (and of the
//! projective line, for restrictions to fibres).
//!
//! The Čech complex of `O(D)` splits as a direct sum over Laurent monomials
//! of degree `D`. The summand of a monomial `m` only depends on the set `N`
//! of variables with negative exponent: it is the complex of chart subsets
//! `I` on whose intersection `m` is regular, i.e. no variable of `N` lies in
//! every cone of `I`. These finite "pattern" complexes are computed once per
//! field, and all cocycles, lifts and projections are done pattern by
//! pattern.

mod hyper;

pub use hyper::{
    beilinson_page, hypercohomology, hypercohomology_with, verify_connecting_consistency,
    BeilinsonPage, ComplexOfSums, ConsistencyReport, HyperDims, LineBundleSum, MiddleTerm,
};

use std::collections::BTreeMap;

use crate::cox::{CoxMonomial, CoxPolynomial};
use crate::error::{HblError, Result};
use crate::field::Field;
use crate::linalg::{inverse, kernel, rank, rref_with_order, Matrix};
use crate::pic::{ChernData, DivisorClass, Surface};

/// Which toric variety the Čech model lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// `Σ_e` with Cox variables `S0, S1, T0, T1`.
    Surface(Surface),
    /// A fibre `P^1` with Cox variables `S0, S1`; degrees are `(a, 0)`.
    Fibre,
}

/// Variable masks of the maximal cones of `Σ_e`, for rays
/// `T0 = (1,0)`, `S0 = (0,1)`, `T1 = (-1,e)`, `S1 = (0,-1)`.
const SURFACE_CHARTS: [u8; 4] = [0b0101, 0b1001, 0b1010, 0b0110];
const FIBRE_CHARTS: [u8; 2] = [0b01, 0b10];

impl Model {
    pub fn charts(&self) -> &'static [u8] {
        match self {
            Model::Surface(_) => &SURFACE_CHARTS,
            Model::Fibre => &FIBRE_CHARTS,
        }
    }

    pub fn num_vars(&self) -> usize {
        match self {
            Model::Surface(_) => 4,
            Model::Fibre => 2,
        }
    }

    pub fn degree(&self, m: &CoxMonomial) -> DivisorClass {
        match self {
            Model::Surface(s) => m.degree(s),
            Model::Fibre => DivisorClass::new(m.exps[0] + m.exps[1], 0),
        }
    }

    /// Euler characteristic of a line bundle.
    pub fn euler_char(&self, d: DivisorClass) -> i64 {
        match self {
            Model::Surface(s) => s
                .euler_char(&ChernData::line(d))
                .expect("line bundles have integral Chern data"),
            Model::Fibre => d.a + 1,
        }
    }

    /// All monomials of degree `d` whose negative-exponent mask is exactly
    /// `mask`. Fails when that set is infinite.
    pub fn monomials_with_mask(&self, d: DivisorClass, mask: u8) -> Result<Vec<CoxMonomial>> {
        let s_bits = mask & 0b11;
        let t_bits = (mask >> 2) & 0b11;
        let mixed = |bits: u8| bits == 0b01 || bits == 0b10;
        if mixed(s_bits) || mixed(t_bits) {
            return Err(HblError::UnboundedPattern(mask));
        }
        let js = if s_bits == 0 { 0..=d.a } else { d.a + 1..=-1 };
        let mut out = Vec::new();
        match self {
            Model::Surface(s) => {
                let e = s.e as i64;
                for j in js {
                    let n = d.b - e * j;
                    let ks = if t_bits == 0 { 0..=n } else { n + 1..=-1 };
                    for k in ks {
                        out.push(CoxMonomial::new(d.a - j, j, k, n - k));
                    }
                }
            }
            Model::Fibre => {
                if t_bits != 0 {
                    return Ok(out);
                }
                for j in js {
                    out.push(CoxMonomial::new(d.a - j, j, 0, 0));
                }
            }
        }
        out.sort_by(|x, y| y.cmp(x));
        Ok(out)
    }
}

/// How pivots are chosen when lifting coboundaries; any two choices differ
/// by a coboundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LiftOrder {
    #[default]
    Forward,
    Reverse,
}

/// Cohomology of one pattern complex in one degree.
#[derive(Debug, Clone)]
pub struct PatternDegree<E> {
    /// Cocycles whose classes form a basis of the cohomology.
    pub reps: Vec<Vec<E>>,
    /// `h × |C^q|`; sends a cocycle to its class coordinates.
    pub projection: Matrix<E>,
    /// `|C^{q-1}| × |C^q|`; sends a coboundary `y` to some `z` with `δz = y`.
    pub lift: Matrix<E>,
}

#[derive(Debug, Clone)]
pub struct Pattern<E> {
    pub mask: u8,
    /// Allowed chart subsets (as bitmasks over charts) of size `q + 1`,
    /// ascending, for each `q`.
    pub cells: Vec<Vec<u8>>,
    pub degrees: Vec<PatternDegree<E>>,
}

impl<E> Pattern<E> {
    pub fn h(&self, q: usize) -> usize {
        self.degrees.get(q).map_or(0, |d| d.reps.len())
    }

    pub fn cell_index(&self, q: usize, subset: u8) -> Option<usize> {
        self.cells.get(q)?.binary_search(&subset).ok()
    }

    pub fn is_acyclic(&self) -> bool {
        (0..self.degrees.len()).all(|q| self.h(q) == 0)
    }
}

fn allowed(charts: &[u8], subset: u8, mask: u8) -> bool {
    let common = charts
        .iter()
        .enumerate()
        .filter(|(c, _)| subset & (1 << c) != 0)
        .fold(0xff, |acc, (_, &v)| acc & v);
    common & mask == 0
}

fn subset_elements(subset: u8) -> Vec<usize> {
    (0..8).filter(|c| subset & (1 << c) != 0).collect()
}

/// Čech coboundary `C^q -> C^{q+1}` of a pattern, rows indexed by
/// `cells[q+1]`, columns by `cells[q]`.
fn coboundary_matrix<F: Field>(f: &F, cells: &[Vec<u8>], q: usize) -> Matrix<F::Elem> {
    let src = &cells[q];
    let empty = Vec::new();
    let tgt = cells.get(q + 1).unwrap_or(&empty);
    let mut m = Matrix::zeros(f, tgt.len(), src.len());
    for (row, &big) in tgt.iter().enumerate() {
        for (t, c) in subset_elements(big).into_iter().enumerate() {
            let face = big & !(1 << c);
            if let Ok(col) = src.binary_search(&face) {
                m[(row, col)] = if t % 2 == 0 { f.one() } else { f.neg(&f.one()) };
            }
        }
    }
    m
}

fn pattern_degree<F: Field>(
    f: &F,
    cells: &[Vec<u8>],
    q: usize,
    order: LiftOrder,
) -> PatternDegree<F::Elem> {
    let n = cells[q].len();
    let prev_n = if q == 0 { 0 } else { cells[q - 1].len() };
    let dnext = coboundary_matrix(f, cells, q);
    let dprev = if q == 0 {
        Matrix::zeros(f, n, 0)
    } else {
        coboundary_matrix(f, cells, q - 1)
    };

    let mut col_order: Vec<usize> = (0..prev_n).collect();
    if order == LiftOrder::Reverse {
        col_order.reverse();
    }
    let mut reduced = dprev.clone();
    let pivot_cols: Vec<usize> = rref_with_order(f, &mut reduced, &col_order)
        .into_iter()
        .map(|(_, c)| c)
        .collect();

    let mut columns: Vec<Vec<F::Elem>> = pivot_cols.iter().map(|&c| dprev.column(c)).collect();
    let nb = columns.len();
    let span_rank = |cols: &[Vec<F::Elem>]| rank(f, &Matrix::from_columns(cols, n, f.zero()));
    let mut reps = Vec::new();
    for z in kernel(f, &dnext) {
        columns.push(z.clone());
        if span_rank(&columns) == columns.len() {
            reps.push(z);
        } else {
            columns.pop();
        }
    }
    for i in 0..n {
        if columns.len() == n {
            break;
        }
        let mut unit = vec![f.zero(); n];
        unit[i] = f.one();
        columns.push(unit);
        if span_rank(&columns) < columns.len() {
            columns.pop();
        }
    }
    let w = Matrix::from_columns(&columns, n, f.zero());
    let winv = inverse(f, &w).expect("completed basis is invertible");

    let h = reps.len();
    let mut projection = Matrix::zeros(f, h, n);
    for r in 0..h {
        for c in 0..n {
            projection[(r, c)] = winv[(nb + r, c)].clone();
        }
    }
    let mut lift = Matrix::zeros(f, prev_n, n);
    for (r, &pc) in pivot_cols.iter().enumerate() {
        for c in 0..n {
            lift[(pc, c)] = winv[(r, c)].clone();
        }
    }
    PatternDegree {
        reps,
        projection,
        lift,
    }
}

/// Pattern complexes for every negative mask of a model.
#[derive(Debug, Clone)]
pub struct PatternTable<E> {
    pub model: Model,
    pub patterns: Vec<Pattern<E>>,
}

impl<E: Clone> PatternTable<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, model: Model, order: LiftOrder) -> Self {
        let charts = model.charts();
        let nc = charts.len();
        let patterns = (0u8..1 << model.num_vars())
            .map(|mask| {
                let mut cells = vec![Vec::new(); nc];
                for subset in 1u8..1 << nc {
                    if allowed(charts, subset, mask) {
                        cells[subset.count_ones() as usize - 1].push(subset);
                    }
                }
                let degrees = (0..nc).map(|q| pattern_degree(f, &cells, q, order)).collect();
                Pattern {
                    mask,
                    cells,
                    degrees,
                }
            })
            .collect();
        PatternTable { model, patterns }
    }

    pub fn pattern(&self, m: &CoxMonomial) -> &Pattern<E> {
        &self.patterns[m.negative_mask() as usize]
    }

    /// Ordered basis `(monomial, class index)` of `H^q(O(d))`.
    pub fn line_basis(&self, d: DivisorClass, q: usize) -> Result<Vec<(CoxMonomial, usize)>> {
        let mut out = Vec::new();
        for p in &self.patterns {
            let h = p.h(q);
            if h == 0 {
                continue;
            }
            for m in self.model.monomials_with_mask(d, p.mask)? {
                out.extend((0..h).map(|c| (m, c)));
            }
        }
        out.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        Ok(out)
    }
}

/// A Čech cochain of a direct sum of line bundles: entries keyed by
/// `(summand, monomial, chart subset)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CechCochain<E> {
    pub q: usize,
    pub entries: BTreeMap<(usize, CoxMonomial, u8), E>,
}

impl<E: Clone> CechCochain<E> {
    pub fn zero(q: usize) -> Self {
        CechCochain {
            q,
            entries: BTreeMap::new(),
        }
    }

    pub fn add<F: Field<Elem = E>>(&mut self, f: &F, key: (usize, CoxMonomial, u8), x: E) {
        if f.is_zero(&x) {
            return;
        }
        let slot = self.entries.entry(key).or_insert_with(|| f.zero());
        f.add_assign(slot, &x);
        if f.is_zero(slot) {
            self.entries.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every monomial is regular on the intersection of its charts.
    pub fn is_regular(&self, model: &Model) -> bool {
        self.entries
            .keys()
            .all(|(_, m, subset)| subset.count_ones() as usize == self.q + 1 && allowed(model.charts(), *subset, m.negative_mask()))
    }

    pub fn coboundary<F: Field<Elem = E>>(&self, f: &F, model: &Model) -> Self {
        let nc = model.charts().len();
        let mut out = Self::zero(self.q + 1);
        for ((s, m, subset), x) in &self.entries {
            for c in 0..nc {
                if subset & (1 << c) != 0 {
                    continue;
                }
                let big = subset | (1 << c);
                if !allowed(model.charts(), big, m.negative_mask()) {
                    continue;
                }
                let position = subset_elements(big).iter().position(|&y| y == c).unwrap();
                let v = if position % 2 == 0 { x.clone() } else { f.neg(x) };
                out.add(f, (*s, *m, big), v);
            }
        }
        out
    }

    /// Applies a matrix of polynomials (rows: target summands, columns:
    /// source summands).
    pub fn apply<F: Field<Elem = E>>(&self, f: &F, map: &[Vec<CoxPolynomial<E>>]) -> Self {
        let mut out = Self::zero(self.q);
        for ((s, m, subset), x) in &self.entries {
            for (t, row) in map.iter().enumerate() {
                for (v, c) in row[*s].terms() {
                    out.add(f, (t, m.mul(v), *subset), f.mul(x, c));
                }
            }
        }
        out
    }

    /// Groups entries by `(summand, monomial)` as vectors over the pattern
    /// cells of degree `q`.
    fn groups<'a>(
        &'a self,
        f: &'a impl Field<Elem = E>,
        table: &'a PatternTable<E>,
    ) -> impl Iterator<Item = ((usize, CoxMonomial), &'a Pattern<E>, Vec<E>)> + 'a {
        let mut grouped: BTreeMap<(usize, CoxMonomial), Vec<E>> = BTreeMap::new();
        for ((s, m, subset), x) in &self.entries {
            let p = table.pattern(m);
            let v = grouped
                .entry((*s, *m))
                .or_insert_with(|| vec![f.zero(); p.cells[self.q].len()]);
            let idx = p.cell_index(self.q, *subset).expect("cochain is regular");
            v[idx] = x.clone();
        }
        grouped
            .into_iter()
            .map(move |(key, v)| (key, table.pattern(&key.1), v))
    }
}

/// Basis of `H^q` of a direct sum of line bundles, with lookup.
#[derive(Debug, Clone)]
pub struct SumBasis {
    pub q: usize,
    pub elems: Vec<(usize, CoxMonomial, usize)>,
    index: std::collections::HashMap<(usize, CoxMonomial, usize), usize>,
}

impl SumBasis {
    pub fn new<E: Clone>(table: &PatternTable<E>, summands: &[DivisorClass], q: usize) -> Result<Self> {
        let mut elems = Vec::new();
        for (s, &d) in summands.iter().enumerate() {
            elems.extend(table.line_basis(d, q)?.into_iter().map(|(m, c)| (s, m, c)));
        }
        let index = elems.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        Ok(SumBasis { q, elems, index })
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn position(&self, key: &(usize, CoxMonomial, usize)) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Cocycle representing the class with the given coordinates.
    pub fn cocycle<F: Field>(
        &self,
        f: &F,
        table: &PatternTable<F::Elem>,
        coords: &[F::Elem],
    ) -> CechCochain<F::Elem> {
        let mut out = CechCochain::zero(self.q);
        for (&(s, m, c), x) in self.elems.iter().zip(coords) {
            if f.is_zero(x) {
                continue;
            }
            let p = table.pattern(&m);
            for (idx, r) in p.degrees[self.q].reps[c].iter().enumerate() {
                out.add(f, (s, m, p.cells[self.q][idx]), f.mul(x, r));
            }
        }
        out
    }

    /// Class coordinates of a cocycle.
    pub fn project<F: Field>(
        &self,
        f: &F,
        table: &PatternTable<F::Elem>,
        z: &CechCochain<F::Elem>,
    ) -> Vec<F::Elem> {
        assert_eq!(z.q, self.q);
        let mut out = vec![f.zero(); self.dim()];
        for ((s, m), p, v) in z.groups(f, table) {
            let pd = &p.degrees[self.q];
            for c in 0..pd.reps.len() {
                let mut acc = f.zero();
                for (a, b) in pd.projection.row(c).iter().zip(&v) {
                    f.add_mul_assign(&mut acc, a, b);
                }
                if f.is_zero(&acc) {
                    continue;
                }
                let i = self
                    .position(&(s, m, c))
                    .expect("class of a cocycle of the right degree lies in the basis");
                out[i] = acc;
            }
        }
        out
    }
}

/// Some `z` with `δz = y`, for a coboundary `y` of degree `q >= 1`.
pub fn lift_coboundary<F: Field>(
    f: &F,
    table: &PatternTable<F::Elem>,
    y: &CechCochain<F::Elem>,
) -> CechCochain<F::Elem> {
    assert!(y.q >= 1, "degree-zero coboundaries are zero");
    let q = y.q;
    let mut out = CechCochain::zero(q - 1);
    for ((s, m), p, v) in y.groups(f, table) {
        let lift = &p.degrees[q].lift;
        for (row, &cell) in p.cells[q - 1].iter().enumerate() {
            let mut acc = f.zero();
            for (a, b) in lift.row(row).iter().zip(&v) {
                f.add_mul_assign(&mut acc, a, b);
            }
            out.add(f, (s, m, cell), acc);
        }
    }
    out
}

/// `(h^0, h^1, h^2)` of `O(d)` on `Σ_e`, counted from pattern cohomology.
pub fn cech_line_cohomology(s: &Surface, d: DivisorClass) -> Result<[i64; 3]> {
    let f = crate::field::PrimeField::new(crate::field::FieldSpec::DEFAULT_PRIME)?;
    let table = PatternTable::new(&f, Model::Surface(*s), LiftOrder::Forward);
    cech_line_cohomology_with(&table, d)
}

pub fn cech_line_cohomology_with<E: Clone>(table: &PatternTable<E>, d: DivisorClass) -> Result<[i64; 3]> {
    let mut out = [0; 3];
    for (q, slot) in out.iter_mut().enumerate() {
        *slot = table.line_basis(d, q)?.len() as i64;
    }
    Ok(out)
}

/// Multiplication by `mult` on `H^q`, computed on Čech cocycles and
/// projected back to classes. Bases are those of
/// [`PatternTable::line_basis`].
pub fn cech_induced_map<F: Field>(
    f: &F,
    table: &PatternTable<F::Elem>,
    q: usize,
    d_src: DivisorClass,
    d_tgt: DivisorClass,
    mult: &CoxPolynomial<F::Elem>,
) -> Result<Matrix<F::Elem>> {
    if mult.degree() != d_tgt - d_src {
        return Err(HblError::DegreeMismatch {
            expected: d_tgt - d_src,
            found: mult.degree(),
        });
    }
    let src = SumBasis::new(table, &[d_src], q)?;
    let tgt = SumBasis::new(table, &[d_tgt], q)?;
    let map = vec![vec![mult.clone()]];
    let mut m = Matrix::zeros(f, tgt.dim(), src.dim());
    for col in 0..src.dim() {
        let mut unit = vec![f.zero(); src.dim()];
        unit[col] = f.one();
        let image = src.cocycle(f, table, &unit).apply(f, &map);
        for (row, x) in tgt.project(f, table, &image).into_iter().enumerate() {
            m[(row, col)] = x;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{basis, h_vector, induced_map};
    use crate::field::PrimeField;

    #[test]
    fn pattern_cohomology_on_the_surface() {
        let f = PrimeField::new(101).unwrap();
        let table = PatternTable::new(&f, Model::Surface(Surface::new(1)), LiftOrder::Forward);
        for p in &table.patterns {
            let h: Vec<usize> = (0..4).map(|q| p.h(q)).collect();
            let expected = match p.mask {
                0 => vec![1, 0, 0, 0],
                0b0011 | 0b1100 => vec![0, 1, 0, 0],
                0b1111 => vec![0, 0, 1, 0],
                _ => vec![0, 0, 0, 0],
            };
            assert_eq!(h, expected, "mask {:04b}", p.mask);
        }
    }

    #[test]
    fn line_cohomology_matches_closed_forms() {
        for e in 0..3 {
            let s = Surface::new(e);
            for a in -4..=4 {
                for b in -4..=4 {
                    let d = DivisorClass::new(a, b);
                    assert_eq!(cech_line_cohomology(&s, d).unwrap(), h_vector(&s, d));
                }
            }
        }
    }

    #[test]
    fn fibre_model_is_projective_line() {
        let f = PrimeField::new(101).unwrap();
        let table = PatternTable::new(&f, Model::Fibre, LiftOrder::Forward);
        for a in -5..=5 {
            let h = cech_line_cohomology_with(&table, DivisorClass::new(a, 0)).unwrap();
            assert_eq!(h, [(a + 1).max(0), (-a - 1).max(0), 0]);
        }
    }

    #[test]
    fn lifts_invert_the_coboundary() {
        let f = PrimeField::new(101).unwrap();
        let model = Model::Surface(Surface::new(2));
        for order in [LiftOrder::Forward, LiftOrder::Reverse] {
            let table = PatternTable::new(&f, model, order);
            let m = CoxMonomial::new(-1, 2, -3, 1);
            let mut c = CechCochain::zero(0);
            for &cell in &table.pattern(&m).cells[0] {
                c.add(&f, (0, m, cell), 1 + cell as u64);
            }
            let y = c.coboundary(&f, &model);
            assert!(y.coboundary(&f, &model).is_zero());
            let z = lift_coboundary(&f, &table, &y);
            assert!(z.is_regular(&model));
            assert_eq!(z.coboundary(&f, &model), y);
        }
    }

    #[test]
    fn cech_maps_agree_with_monomial_rule() {
        let f = PrimeField::new(10007).unwrap();
        let s = Surface::new(2);
        let table = PatternTable::new(&f, Model::Surface(s), LiftOrder::Forward);
        let mult = CoxPolynomial::from_terms(
            &f,
            &s,
            DivisorClass::new(1, 3),
            [
                (CoxMonomial::new(1, 0, 2, 1), 3),
                (CoxMonomial::new(0, 1, 1, 0), 5),
                (CoxMonomial::new(1, 0, 0, 3), 7),
            ],
        )
        .unwrap();
        for q in 0..3 {
            for (a, b) in [(-3, -1), (-4, 2), (0, -3), (1, -5), (2, 1)] {
                let src = DivisorClass::new(a, b);
                let tgt = src + mult.degree();
                let cech = cech_induced_map(&f, &table, q, src, tgt, &mult).unwrap();
                let mono = induced_map(&f, &s, q as u8, src, tgt, &mult).unwrap();
                let sb: Vec<CoxMonomial> = table.line_basis(src, q).unwrap().iter().map(|x| x.0).collect();
                assert_eq!(sb, basis(&s, src, q as u8).basis);
                assert_eq!(cech, mono.matrix, "q={q} src={src}");
            }
        }
    }
}
