//! Dense exact linear algebra over a [`Field`].

use crate::field::Field;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m[(i, i)] = f.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_columns(columns: &[Vec<E>], rows: usize, zero: E) -> Self {
        let mut m = Self::filled(rows, columns.len(), zero);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<E> std::ops::Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}

impl<E> std::ops::IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.data[i * self.cols + j]
    }
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols(), b.rows(), "inner dimensions differ");
    let mut out = Matrix::zeros(f, a.rows(), b.cols());
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let x = &a[(i, k)];
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols() {
                let mut acc = out[(i, j)].clone();
                f.add_mul_assign(&mut acc, x, &b[(k, j)]);
                out[(i, j)] = acc;
            }
        }
    }
    out
}

pub fn mat_vec<F: Field>(f: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols(), v.len());
    (0..a.rows())
        .map(|i| {
            let mut acc = f.zero();
            for (x, y) in a.row(i).iter().zip(v) {
                if !f.is_zero(x) && !f.is_zero(y) {
                    f.add_mul_assign(&mut acc, x, y);
                }
            }
            acc
        })
        .collect()
}

/// Reduced row echelon form in place, visiting columns in `order`.
/// Returns `(row, column)` of each pivot.
pub fn rref_with_order<F: Field>(
    f: &F,
    m: &mut Matrix<F::Elem>,
    order: &[usize],
) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == m.rows() {
            break;
        }
        let Some(p) = (r..m.rows()).find(|&i| !f.is_zero(&m[(i, c)])) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = f.inv(&m[(r, c)]).expect("pivot is nonzero");
        for j in 0..m.cols() {
            m[(r, j)] = f.mul(&m[(r, j)], &inv);
        }
        for i in 0..m.rows() {
            if i == r || f.is_zero(&m[(i, c)]) {
                continue;
            }
            let factor = m[(i, c)].clone();
            for j in 0..m.cols() {
                if f.is_zero(&m[(r, j)]) {
                    continue;
                }
                let t = f.mul(&factor, &m[(r, j)]);
                m[(i, j)] = f.sub(&m[(i, j)], &t);
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<(usize, usize)> {
    let order: Vec<usize> = (0..m.cols()).collect();
    rref_with_order(f, m, &order)
}

/// Rank by forward elimination only.
pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| !f.is_zero(&a[(i, c)])) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = f.inv(&a[(r, c)]).expect("pivot is nonzero");
        for i in r + 1..a.rows() {
            if f.is_zero(&a[(i, c)]) {
                continue;
            }
            let factor = f.mul(&a[(i, c)], &inv);
            for j in c..a.cols() {
                if f.is_zero(&a[(r, j)]) {
                    continue;
                }
                let t = f.mul(&factor, &a[(r, j)]);
                a[(i, j)] = f.sub(&a[(i, j)], &t);
            }
        }
        r += 1;
    }
    r
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn kernel<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    let mut is_pivot = vec![false; m.cols()];
    for &(_, c) in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols()).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); m.cols()];
        v[free] = f.one();
        for &(r, c) in &pivots {
            v[c] = f.neg(&a[(r, free)]);
        }
        basis.push(v);
    }
    basis
}

/// One solution of `m x = rhs` with every free variable set to zero.
/// `order` fixes which columns are preferred as pivots, and hence which
/// solution is returned.
pub fn solve_with_order<F: Field>(
    f: &F,
    m: &Matrix<F::Elem>,
    rhs: &[F::Elem],
    order: &[usize],
) -> Option<Vec<F::Elem>> {
    assert_eq!(m.rows(), rhs.len());
    let n = m.cols();
    let mut aug = Matrix::zeros(f, m.rows(), n + 1);
    for i in 0..m.rows() {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n)] = rhs[i].clone();
    }
    let pivots = rref_with_order(f, &mut aug, order);
    let used = pivots.len();
    if (used..m.rows()).any(|i| !f.is_zero(&aug[(i, n)])) {
        return None;
    }
    let mut x = vec![f.zero(); n];
    for &(r, c) in &pivots {
        x[c] = aug[(r, n)].clone();
    }
    Some(x)
}

pub fn solve<F: Field>(f: &F, m: &Matrix<F::Elem>, rhs: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let order: Vec<usize> = (0..m.cols()).collect();
    solve_with_order(f, m, rhs, &order)
}

pub fn inverse<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    assert_eq!(m.rows(), m.cols(), "inverse of a non-square matrix");
    let n = m.rows();
    let mut aug = Matrix::zeros(f, n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n + i)] = f.one();
    }
    let order: Vec<usize> = (0..n).collect();
    if rref_with_order(f, &mut aug, &order).len() < n {
        return None;
    }
    let mut out = Matrix::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = aug[(i, n + j)].clone();
        }
    }
    Some(out)
}

pub fn det<F: Field>(f: &F, m: &Matrix<F::Elem>) -> F::Elem {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut acc = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !f.is_zero(&a[(i, c)])) else {
            return f.zero();
        };
        if p != c {
            a.swap_rows(c, p);
            acc = f.neg(&acc);
        }
        let piv = a[(c, c)].clone();
        acc = f.mul(&acc, &piv);
        let inv = f.inv(&piv).expect("pivot is nonzero");
        for i in c + 1..n {
            if f.is_zero(&a[(i, c)]) {
                continue;
            }
            let factor = f.mul(&a[(i, c)], &inv);
            for j in c..n {
                let t = f.mul(&factor, &a[(c, j)]);
                a[(i, j)] = f.sub(&a[(i, j)], &t);
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q_matrix(rows: &[&[i64]]) -> Matrix<num_rational::BigRational> {
        let q = Rationals::default();
        let cols = rows[0].len();
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| q.from_i64(v)).collect())
                .collect(),
            cols,
        )
    }

    #[test]
    fn rank_and_kernel_of_small_matrix() {
        let q = Rationals::default();
        let m = q_matrix(&[&[1, 2, 1], &[2, 4, 0], &[3, 6, 0]]);
        assert_eq!(rank(&q, &m), 2);
        let k = kernel(&q, &m);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&q, &m, &k[0]).iter().all(|x| q.is_zero(x)));
    }

    #[test]
    fn solve_detects_inconsistency() {
        let q = Rationals::default();
        let m = q_matrix(&[&[1, 1], &[2, 2]]);
        assert!(solve(&q, &m, &[q.from_i64(1), q.from_i64(3)]).is_none());
        let x = solve(&q, &m, &[q.from_i64(1), q.from_i64(2)]).unwrap();
        assert_eq!(mat_vec(&q, &m, &x), vec![q.from_i64(1), q.from_i64(2)]);
    }

    #[test]
    fn reversed_pivot_order_gives_other_solution() {
        let q = Rationals::default();
        let m = q_matrix(&[&[1, 1]]);
        let a = solve_with_order(&q, &m, &[q.one()], &[0, 1]).unwrap();
        let b = solve_with_order(&q, &m, &[q.one()], &[1, 0]).unwrap();
        assert_ne!(a, b);
        assert_eq!(mat_vec(&q, &m, &b), vec![q.one()]);
    }

    #[test]
    fn inverse_round_trip() {
        let q = Rationals::default();
        let m = q_matrix(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = inverse(&q, &m).unwrap();
        assert_eq!(mat_mul(&q, &m, &inv), Matrix::identity(&q, 3));
        assert!(inverse(&q, &q_matrix(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn determinant_mod_p() {
        let f = PrimeField::new(101).unwrap();
        let m = Matrix::from_rows(vec![vec![2, 3], vec![5, 7]], 2);
        // 14 - 15 = -1
        assert_eq!(det(&f, &m), 100);
        let z = Matrix::from_rows(vec![vec![1, 2], vec![2, 4]], 2);
        assert_eq!(det(&f, &z), 0);
    }
}
