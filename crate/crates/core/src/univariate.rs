//! Dense univariate polynomials, coefficients low degree first.

use crate::field::Field;
use crate::linalg::{det, Matrix};

/// Coefficients `c[0] + c[1] x + ...`, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> UPoly<E> {
    pub fn from_coeffs<F: Field<Elem = E>>(f: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| f.is_zero(c)) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, c: E) -> Self {
        Self::from_coeffs(f, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn eval<F: Field<Elem = E>>(&self, f: &F, x: &E) -> E {
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                f.add_mul_assign(&mut out[i + j], a, b);
            }
        }
        Self::from_coeffs(f, out)
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = f.zero();
        let out = (0..n)
            .map(|i| {
                f.sub(
                    self.coeffs.get(i).unwrap_or(&z),
                    other.coeffs.get(i).unwrap_or(&z),
                )
            })
            .collect();
        Self::from_coeffs(f, out)
    }

    pub fn monic<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = f.inv(l).expect("leading coefficient is nonzero");
                Self::from_coeffs(f, self.coeffs.iter().map(|c| f.mul(c, &inv)).collect())
            }
        }
    }

    /// Remainder of division by a nonzero polynomial.
    pub fn rem<F: Field<Elem = E>>(&self, f: &F, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(divisor.leading().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = r.len() - 1;
            let q = f.mul(&r[top], &lead_inv);
            if !f.is_zero(&q) {
                let shift = top - dd;
                for (k, dc) in divisor.coeffs.iter().enumerate() {
                    let t = f.mul(&q, dc);
                    r[shift + k] = f.sub(&r[shift + k], &t);
                }
            }
            r.pop();
            while r.last().is_some_and(|c| f.is_zero(c)) {
                r.pop();
            }
        }
        Self::from_coeffs(f, r)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd<F: Field<Elem = E>>(f: &F, a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.rem(f, &y);
            x = y;
            y = r;
        }
        x.monic(f)
    }

    /// Lagrange interpolation through `(xs[i], ys[i])`, distinct `xs`.
    pub fn interpolate<F: Field<Elem = E>>(f: &F, xs: &[E], ys: &[E]) -> Self {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        // Newton divided differences.
        let mut dd: Vec<E> = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = f.sub(&dd[i], &dd[i - 1]);
                let den = f.sub(&xs[i], &xs[i - level]);
                dd[i] = f.div(&num, &den).expect("interpolation nodes are distinct");
            }
        }
        let mut acc = Self::zero();
        for i in (0..n).rev() {
            // acc = acc * (x - xs[i]) + dd[i]
            let lin = Self::from_coeffs(f, vec![f.neg(&xs[i]), f.one()]);
            acc = acc.mul(f, &lin);
            let mut c = acc.coeffs.clone();
            if c.is_empty() {
                c.push(f.zero());
            }
            c[0] = f.add(&c[0], &dd[i]);
            acc = Self::from_coeffs(f, c);
        }
        acc
    }
}

/// Sylvester resultant of two coefficient vectors with *formal* degrees
/// `a.len() - 1` and `b.len() - 1` (leading zeros are kept). Common roots of
/// the two polynomials force a zero resultant even when both leading
/// coefficients vanish.
pub fn sylvester_resultant<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    assert!(!a.is_empty() && !b.is_empty());
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return f.one();
    }
    let mut s = Matrix::zeros(f, size, size);
    for row in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            s[(row, row + k)] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            s[(n + row, row + k)] = c.clone();
        }
    }
    det(f, &s)
}
