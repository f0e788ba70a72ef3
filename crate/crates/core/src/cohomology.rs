//! Cohomology of line bundles `O(aC0 + bF)` on `Σ_e`: closed-form dimensions
//! and explicit Laurent-monomial bases in the Cox ring.
//!
//! A class in `H^q(O(D))` is represented by a monomial of degree `D` in the
//! sign region for `q` (see [`Region`]). Multiplication by a section acts on
//! these bases by multiplying monomials and discarding products that leave
//! the region.

use crate::cox::{CoxMonomial, CoxPolynomial, Region};
use crate::error::{HblError, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::pic::{DivisorClass, Surface};

fn p1_h0(n: i64) -> i64 {
    (n + 1).max(0)
}

pub fn h0_dim(s: &Surface, d: DivisorClass) -> i64 {
    let e = s.e as i64;
    if d.a < 0 {
        return 0;
    }
    (0..=d.a).map(|k| p1_h0(d.b - k * e)).sum()
}

pub fn h1_dim(s: &Surface, d: DivisorClass) -> i64 {
    let e = s.e as i64;
    let (a, b) = (d.a, d.b);
    match a {
        a if a <= -2 => (1..=-a - 1).map(|k| p1_h0(k * e + b)).sum(),
        -1 => 0,
        _ => (0..=a).map(|k| p1_h0(k * e - b - 2)).sum(),
    }
}

/// By Serre duality, `h^2(D) = h^0(K - D)`.
pub fn h2_dim(s: &Surface, d: DivisorClass) -> i64 {
    h0_dim(s, s.canonical_class() - d)
}

pub fn hq_dim(s: &Surface, d: DivisorClass, q: u8) -> i64 {
    match q {
        0 => h0_dim(s, d),
        1 => h1_dim(s, d),
        2 => h2_dim(s, d),
        _ => 0,
    }
}

pub fn h_vector(s: &Surface, d: DivisorClass) -> [i64; 3] {
    [h0_dim(s, d), h1_dim(s, d), h2_dim(s, d)]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologySpace {
    pub q: u8,
    pub d: DivisorClass,
    /// Descending lexicographic order in `(i, j, k, l)`.
    pub basis: Vec<CoxMonomial>,
}

impl CohomologySpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, m: &CoxMonomial) -> Option<usize> {
        self.basis.binary_search_by(|x| m.cmp(x)).ok()
    }
}

/// Monomials `S0^{a-j} S1^j T0^k T1^{n-k}`, `n = b - e j`, for `j` and `k`
/// in the given inclusive ranges (the `k` range may depend on `n`).
fn sweep(
    s: &Surface,
    d: DivisorClass,
    js: std::ops::RangeInclusive<i64>,
    ks: impl Fn(i64) -> std::ops::RangeInclusive<i64>,
) -> Vec<CoxMonomial> {
    let e = s.e as i64;
    let mut out = Vec::new();
    for j in js {
        let n = d.b - e * j;
        for k in ks(n) {
            out.push(CoxMonomial::new(d.a - j, j, k, n - k));
        }
    }
    out
}

pub fn basis(s: &Surface, d: DivisorClass, q: u8) -> CohomologySpace {
    let a = d.a;
    let mut monos = match q {
        0 if a >= 0 => sweep(s, d, 0..=a, |n| 0..=n),
        1 if a <= -2 => sweep(s, d, a + 1..=-1, |n| 0..=n),
        1 if a >= 0 => sweep(s, d, 0..=a, |n| n + 1..=-1),
        2 if a <= -2 => sweep(s, d, a + 1..=-1, |n| n + 1..=-1),
        _ => Vec::new(),
    };
    monos.sort_by(|x, y| y.cmp(x));
    debug_assert!(monos
        .iter()
        .all(|m| m.degree(s) == d && m.region().map(|r| r.degree()) == Some(q)));
    CohomologySpace { q, d, basis: monos }
}

/// Matrix `tgt_dim × src_dim` of a linear map between cohomology spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap<E> {
    pub src_dim: usize,
    pub tgt_dim: usize,
    pub matrix: Matrix<E>,
}

/// Multiplication by `mult` as a map `H^q(D_src) -> H^q(D_tgt)` in the
/// bases of [`basis`].
pub fn induced_map<F: Field>(
    f: &F,
    s: &Surface,
    q: u8,
    d_src: DivisorClass,
    d_tgt: DivisorClass,
    mult: &CoxPolynomial<F::Elem>,
) -> Result<LinearMap<F::Elem>> {
    if mult.degree() != d_tgt - d_src {
        return Err(HblError::DegreeMismatch {
            expected: d_tgt - d_src,
            found: mult.degree(),
        });
    }
    let src = basis(s, d_src, q);
    let tgt = basis(s, d_tgt, q);
    let mut matrix = Matrix::zeros(f, tgt.dim(), src.dim());
    for (col, u) in src.basis.iter().enumerate() {
        for (v, c) in mult.terms() {
            let w = u.mul(v);
            if w.region().map(|r: Region| r.degree()) != Some(q) {
                continue;
            }
            let row = tgt.index_of(&w).expect("product stays in the target basis");
            let mut x = matrix[(row, col)].clone();
            f.add_assign(&mut x, c);
            matrix[(row, col)] = x;
        }
    }
    Ok(LinearMap {
        src_dim: src.dim(),
        tgt_dim: tgt.dim(),
        matrix,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub struct HomExtDims {
    pub hom: i64,
    pub ext1: i64,
    pub ext2: i64,
}

/// `Hom`/`Ext^1`/`Ext^2` between two direct sums of line bundles.
pub fn hom_and_ext_dims(s: &Surface, src: &[DivisorClass], tgt: &[DivisorClass]) -> HomExtDims {
    let mut out = HomExtDims::default();
    for &a in src {
        for &b in tgt {
            let [h0, h1, h2] = h_vector(s, b - a);
            out.hom += h0;
            out.ext1 += h1;
            out.ext2 += h2;
        }
    }
    out
}
