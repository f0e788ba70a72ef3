//! Laurent monomials and polynomials in the Cox ring `k[S0, S1, T0, T1]`.
//!
//! Generator degrees: `S0 ↦ C0`, `S1 ↦ C0 + eF`, `T0, T1 ↦ F`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{HblError, Result};
use crate::field::Field;
use crate::pic::{DivisorClass, Surface};

/// `S0^i S1^j T0^k T1^l`, exponents possibly negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoxMonomial {
    pub exps: [i64; 4],
}

/// Sign regions carrying nonzero cohomology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// all exponents `>= 0`
    H0,
    /// `i, j <= -1`, `k, l >= 0`
    H1SectionNegative,
    /// `i, j >= 0`, `k, l <= -1`
    H1FibreNegative,
    /// all exponents `<= -1`
    H2,
}

impl Region {
    pub fn degree(&self) -> u8 {
        match self {
            Region::H0 => 0,
            Region::H1SectionNegative | Region::H1FibreNegative => 1,
            Region::H2 => 2,
        }
    }
}

impl CoxMonomial {
    pub const ONE: CoxMonomial = CoxMonomial { exps: [0; 4] };
    pub const S0: CoxMonomial = CoxMonomial { exps: [1, 0, 0, 0] };
    pub const S1: CoxMonomial = CoxMonomial { exps: [0, 1, 0, 0] };
    pub const T0: CoxMonomial = CoxMonomial { exps: [0, 0, 1, 0] };
    pub const T1: CoxMonomial = CoxMonomial { exps: [0, 0, 0, 1] };

    pub const fn new(i: i64, j: i64, k: i64, l: i64) -> Self {
        CoxMonomial { exps: [i, j, k, l] }
    }

    pub fn degree(&self, s: &Surface) -> DivisorClass {
        let [i, j, k, l] = self.exps;
        DivisorClass::new(i + j, k + l + s.e as i64 * j)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut exps = self.exps;
        for (x, y) in exps.iter_mut().zip(o.exps) {
            *x += y;
        }
        CoxMonomial { exps }
    }

    /// Bit `v` set iff exponent `v` is negative.
    pub fn negative_mask(&self) -> u8 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &x)| x < 0)
            .fold(0, |m, (v, _)| m | (1 << v))
    }

    pub fn region(&self) -> Option<Region> {
        let [i, j, k, l] = self.exps;
        let s_pos = i >= 0 && j >= 0;
        let s_neg = i < 0 && j < 0;
        let t_pos = k >= 0 && l >= 0;
        let t_neg = k < 0 && l < 0;
        match (s_pos, s_neg, t_pos, t_neg) {
            (true, _, true, _) => Some(Region::H0),
            (_, true, true, _) => Some(Region::H1SectionNegative),
            (true, _, _, true) => Some(Region::H1FibreNegative),
            (_, true, _, true) => Some(Region::H2),
            _ => None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.exps.iter().all(|&x| x >= 0)
    }

    pub fn eval<F: Field>(&self, f: &F, point: &[F::Elem; 4]) -> F::Elem {
        let mut acc = f.one();
        for (x, &n) in point.iter().zip(&self.exps) {
            debug_assert!(n >= 0, "evaluating a Laurent monomial");
            acc = f.mul(&acc, &f.pow(x, n as u64));
        }
        acc
    }
}

impl fmt::Display for CoxMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["S0", "S1", "T0", "T1"];
        let mut wrote = false;
        for (name, &n) in NAMES.iter().zip(&self.exps) {
            match n {
                0 => continue,
                1 => write!(f, "{name}")?,
                _ => write!(f, "{name}^{n}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A homogeneous polynomial of fixed Pic-degree with exact coefficients.
///
/// Only monomials with non-negative exponents are allowed; every term has
/// the declared degree and a nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxPolynomial<E> {
    degree: DivisorClass,
    terms: BTreeMap<CoxMonomial, E>,
}

impl<E: Clone> CoxPolynomial<E> {
    pub fn zero(degree: DivisorClass) -> Self {
        CoxPolynomial {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> DivisorClass {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<CoxMonomial, E> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Builds from `(monomial, coefficient)` pairs, summing repeats and
    /// checking degrees on `s`.
    pub fn from_terms<F: Field<Elem = E>>(
        f: &F,
        s: &Surface,
        degree: DivisorClass,
        terms: impl IntoIterator<Item = (CoxMonomial, E)>,
    ) -> Result<Self> {
        let mut p = Self::zero(degree);
        for (m, c) in terms {
            if !m.is_polynomial() {
                return Err(HblError::Shape(format!("{m} is not a polynomial monomial")));
            }
            let found = m.degree(s);
            if found != degree {
                return Err(HblError::DegreeMismatch {
                    expected: degree,
                    found,
                });
            }
            p.add_term(f, m, c);
        }
        Ok(p)
    }

    /// Builds without a degree check; used for restrictions to fibres where
    /// only the `C0` coefficient of the degree is meaningful.
    pub fn from_terms_unchecked<F: Field<Elem = E>>(
        f: &F,
        degree: DivisorClass,
        terms: impl IntoIterator<Item = (CoxMonomial, E)>,
    ) -> Self {
        let mut p = Self::zero(degree);
        for (m, c) in terms {
            p.add_term(f, m, c);
        }
        p
    }

    pub fn monomial<F: Field<Elem = E>>(f: &F, s: &Surface, m: CoxMonomial, c: E) -> Self {
        let mut p = Self::zero(m.degree(s));
        p.add_term(f, m, c);
        p
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, c: E) -> Self {
        let mut p = Self::zero(DivisorClass::ZERO);
        p.add_term(f, CoxMonomial::ONE, c);
        p
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, f: &F, m: CoxMonomial, c: E) {
        if f.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = f.add(x, &c);
                if f.is_zero(x) {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Result<Self> {
        if self.degree != o.degree {
            return Err(HblError::DegreeMismatch {
                expected: self.degree,
                found: o.degree,
            });
        }
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(f, *m, c.clone());
        }
        Ok(out)
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        let mut out = Self::zero(self.degree);
        for (m, x) in &self.terms {
            out.add_term(f, *m, f.mul(x, c));
        }
        out
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        self.scale(f, &f.neg(&f.one()))
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let mut out = Self::zero(self.degree + o.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(f, m1.mul(m2), f.mul(c1, c2));
            }
        }
        out
    }

    pub fn eval<F: Field<Elem = E>>(&self, f: &F, point: &[E; 4]) -> E {
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            f.add_mul_assign(&mut acc, c, &m.eval(f, point));
        }
        acc
    }

    /// Substitutes `T0 = t0`, `T1 = t1`; the result lives on the fibre over
    /// `[t0 : t1]` and has degree `(a, 0)`.
    pub fn restrict_to_fibre<F: Field<Elem = E>>(&self, f: &F, t0: &E, t1: &E) -> Self {
        let mut out = Self::zero(DivisorClass::new(self.degree.a, 0));
        for (m, c) in &self.terms {
            let [i, j, k, l] = m.exps;
            let v = f.mul(&f.pow(t0, k as u64), &f.pow(t1, l as u64));
            out.add_term(f, CoxMonomial::new(i, j, 0, 0), f.mul(c, &v));
        }
        out
    }

    /// Coefficients in terms of a monomial basis.
    pub fn coordinates<F: Field<Elem = E>>(&self, f: &F, basis: &[CoxMonomial]) -> Result<Vec<E>> {
        let mut out = vec![f.zero(); basis.len()];
        for (m, c) in &self.terms {
            let idx = basis
                .iter()
                .position(|b| b == m)
                .ok_or_else(|| HblError::Shape(format!("{m} is not in the basis")))?;
            out[idx] = c.clone();
        }
        Ok(out)
    }

    /// Inverse of [`coordinates`](Self::coordinates).
    pub fn from_coordinates<F: Field<Elem = E>>(
        f: &F,
        degree: DivisorClass,
        basis: &[CoxMonomial],
        coords: &[E],
    ) -> Self {
        let mut p = Self::zero(degree);
        for (m, c) in basis.iter().zip(coords) {
            p.add_term(f, *m, c.clone());
        }
        p
    }

    pub fn map_coeffs<G: Field>(&self, g: &G, map: impl Fn(&E) -> G::Elem) -> CoxPolynomial<G::Elem> {
        let mut out = CoxPolynomial::zero(self.degree);
        for (m, c) in &self.terms {
            out.add_term(g, *m, map(c));
        }
        out
    }
}

/// `rows × cols` matrix of polynomials, stored row by row.
pub type PolyMatrix<E> = Vec<Vec<CoxPolynomial<E>>>;

pub fn poly_mat_mul<F: Field>(
    f: &F,
    a: &PolyMatrix<F::Elem>,
    b: &PolyMatrix<F::Elem>,
) -> Result<PolyMatrix<F::Elem>> {
    let inner = b.len();
    if a.iter().any(|r| r.len() != inner) {
        return Err(HblError::Shape("inner dimensions differ".into()));
    }
    let cols = b.first().map_or(0, |r| r.len());
    let mut out = Vec::with_capacity(a.len());
    for row in a {
        let mut out_row = Vec::with_capacity(cols);
        for j in 0..cols {
            let degree = row
                .first()
                .map(|x| x.degree() + b[0][j].degree())
                .unwrap_or(DivisorClass::ZERO);
            let mut acc = CoxPolynomial::zero(degree);
            for (k, x) in row.iter().enumerate() {
                acc = acc.add(f, &x.mul(f, &b[k][j]))?;
            }
            out_row.push(acc);
        }
        out.push(out_row);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn generator_degrees() {
        let s = Surface::new(3);
        assert_eq!(CoxMonomial::S0.degree(&s), DivisorClass::C0);
        assert_eq!(CoxMonomial::S1.degree(&s), DivisorClass::new(1, 3));
        assert_eq!(CoxMonomial::T0.degree(&s), DivisorClass::F);
        assert_eq!(CoxMonomial::new(-1, -1, -1, -1).degree(&s), s.canonical_class());
    }

    #[test]
    fn regions() {
        assert_eq!(CoxMonomial::ONE.region(), Some(Region::H0));
        assert_eq!(CoxMonomial::new(-1, -2, 0, 3).region(), Some(Region::H1SectionNegative));
        assert_eq!(CoxMonomial::new(0, 2, -1, -1).region(), Some(Region::H1FibreNegative));
        assert_eq!(CoxMonomial::new(-1, -1, -1, -1).region(), Some(Region::H2));
        assert_eq!(CoxMonomial::new(-1, 0, 0, 0).region(), None);
    }

    #[test]
    fn degree_check_and_cancellation() {
        let f = PrimeField::new(101).unwrap();
        let s = Surface::new(1);
        let bad = CoxPolynomial::from_terms(&f, &s, DivisorClass::F, [(CoxMonomial::S0, 1)]);
        assert!(matches!(bad, Err(HblError::DegreeMismatch { .. })));
        let p = CoxPolynomial::from_terms(
            &f,
            &s,
            DivisorClass::F,
            [(CoxMonomial::T0, 3), (CoxMonomial::T0, 98)],
        )
        .unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn fibre_restriction() {
        let f = PrimeField::new(101).unwrap();
        let s = Surface::new(1);
        // S0 T0 + 2 S1 restricted to [t0:t1] = [3:1] gives 3 S0 + 2 S1
        let p = CoxPolynomial::from_terms(
            &f,
            &s,
            DivisorClass::new(1, 1),
            [(CoxMonomial::new(1, 0, 1, 0), 1), (CoxMonomial::S1, 2)],
        )
        .unwrap();
        let r = p.restrict_to_fibre(&f, &3, &1);
        assert_eq!(r.degree(), DivisorClass::new(1, 0));
        assert_eq!(r.terms().get(&CoxMonomial::S0), Some(&3));
        assert_eq!(r.terms().get(&CoxMonomial::S1), Some(&2));
    }
}
