//! Small dense complex matrices.
//!
//! Sizes in this crate stay below a few hundred rows, so everything is a plain
//! row-major `Vec` with cubic-time kernels. The one nontrivial routine is a
//! cyclic Jacobi eigensolver for Hermitian matrices; rank, null spaces and
//! polar factors are all derived from it.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{real, Real, C};

#[derive(Clone, PartialEq)]
pub struct CMatrix<T: Real> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> fmt::Debug for CMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Row-major construction. Panics if `data.len() != rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<C<T>>) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major data has wrong length");
        Self { rows, cols, data }
    }

    /// Builds from nested rows. Returns `None` when rows are ragged.
    pub fn from_rows(rows: &[Vec<C<T>>]) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(Self::from_row_major(r, c, rows.concat()))
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| real(T::lit(rows[i][j])))
    }

    pub fn diag(entries: &[C<T>]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Single matrix unit `E_{ij}` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = C::one();
        m
    }

    /// `v w*`.
    pub fn outer(v: &[C<T>], w: &[C<T>]) -> Self {
        Self::from_fn(v.len(), w.len(), |i, j| v[i] * w[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C<T>] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[C<T>] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<C<T>> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<C<T>>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, z: C<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| a * z).collect() }
    }

    pub fn trace(&self) -> C<T> {
        (0..self.rows.min(self.cols)).fold(C::zero(), |acc, i| acc + self[(i, i)])
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    /// Largest entrywise distance. Panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Restriction to the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    /// `self * v` for a column vector.
    pub fn apply(&self, v: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(C::zero(), |acc, (a, b)| acc + *a * *b))
            .collect()
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)];
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
    ///
    /// Only the upper triangle's Hermitian part matters. Eigenvalues come back
    /// ascending, with eigenvectors as the matching columns of the second value.
    pub fn hermitian_eigen(&self) -> (Vec<T>, CMatrix<T>) {
        assert!(self.is_square(), "eigen-decomposition needs a square matrix");
        let n = self.rows;
        let half = T::lit(0.5);
        // symmetrize so later rotations see an exactly Hermitian matrix
        let mut a = Self::from_fn(n, n, |i, j| (self[(i, j)] + self[(j, i)].conj()) * real(half));
        let mut v = Self::identity(n);
        let scale = a.frobenius_norm();
        if scale == T::zero() {
            return (vec![T::zero(); n], v);
        }
        let eps = T::epsilon() * scale * T::lit(1e-2);

        for _sweep in 0..100 {
            let mut off = T::zero();
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off + a[(p, q)].norm_sqr();
                }
            }
            if off.sqrt() <= eps {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[(p, q)];
                    let mag = apq.norm();
                    if mag <= eps * T::lit(1e-3) {
                        continue;
                    }
                    let e = apq / real(mag);
                    let app = a[(p, p)].re;
                    let aqq = a[(q, q)].re;
                    let theta = (aqq - app) / (T::lit(2.0) * mag);
                    let t = if theta >= T::zero() {
                        T::one() / (theta + (T::one() + theta * theta).sqrt())
                    } else {
                        -T::one() / (-theta + (T::one() + theta * theta).sqrt())
                    };
                    let c = T::one() / (T::one() + t * t).sqrt();
                    let s = t * c;
                    let (cc, sc) = (real(c), real(s));
                    let ec = e.conj();
                    // J = diag(1, conj(e)) * [[c, s], [-s, c]]; A <- J* A J, V <- V J
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = cc * akp - sc * ec * akq;
                        a[(k, q)] = sc * akp + cc * ec * akq;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = cc * apk - sc * e * aqk;
                        a[(q, k)] = sc * apk + cc * e * aqk;
                    }
                    a[(p, q)] = C::zero();
                    a[(q, p)] = C::zero();
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = cc * vkp - sc * ec * vkq;
                        v[(k, q)] = sc * vkp + cc * ec * vkq;
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap_or(std::cmp::Ordering::Equal));
        let values = order.iter().map(|&i| a[(i, i)].re).collect();
        let vectors = Self::from_fn(n, n, |r, c| v[(r, order[c])]);
        (values, vectors)
    }

    /// Singular values, descending, by one-sided Jacobi on the columns.
    ///
    /// Works on the matrix itself rather than `A* A`, so singular values at
    /// roundoff level stay near `eps |A|` instead of `sqrt(eps) |A|`.
    pub fn singular_values(&self) -> Vec<T> {
        let mut u = if self.rows >= self.cols { self.clone() } else { self.adjoint() };
        let (m, n) = (u.rows, u.cols);
        let eps = T::epsilon();
        for _sweep in 0..60 {
            let mut rotated = false;
            for p in 0..n {
                for q in (p + 1)..n {
                    let (mut alpha, mut beta, mut gamma) = (T::zero(), T::zero(), C::<T>::zero());
                    for k in 0..m {
                        alpha = alpha + u[(k, p)].norm_sqr();
                        beta = beta + u[(k, q)].norm_sqr();
                        gamma = gamma + u[(k, p)].conj() * u[(k, q)];
                    }
                    let mag = gamma.norm();
                    if mag <= eps * (alpha * beta).sqrt() || mag == T::zero() {
                        continue;
                    }
                    rotated = true;
                    let ec = (gamma / real(mag)).conj();
                    let zeta = (beta - alpha) / (T::lit(2.0) * mag);
                    let t = if zeta >= T::zero() {
                        T::one() / (zeta + (T::one() + zeta * zeta).sqrt())
                    } else {
                        -T::one() / (-zeta + (T::one() + zeta * zeta).sqrt())
                    };
                    let c = T::one() / (T::one() + t * t).sqrt();
                    let (cc, sc) = (real(c), real(t * c));
                    for k in 0..m {
                        let ukp = u[(k, p)];
                        let ukq = u[(k, q)];
                        u[(k, p)] = cc * ukp - sc * ec * ukq;
                        u[(k, q)] = sc * ukp + cc * ec * ukq;
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let mut sv: Vec<T> = (0..n).map(|c| (0..m).fold(T::zero(), |a, k| a + u[(k, c)].norm_sqr()).sqrt()).collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        sv
    }

    /// Number of singular values above `rel_tol` times the largest one.
    pub fn numerical_rank(&self, rel_tol: T) -> usize {
        let sv = self.singular_values();
        let top = sv.first().copied().unwrap_or(T::zero());
        if top <= T::min_positive_value() {
            return 0;
        }
        sv.iter().filter(|&&s| s > rel_tol * top).count()
    }

    /// Unitary factor `W (W* W)^{-1/2}` of the polar decomposition.
    ///
    /// Returns `None` when the smallest singular value falls below
    /// `rel_tol` times the largest one.
    pub fn polar_unitary(&self, rel_tol: T) -> Option<Self> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let gram = &self.adjoint() * self;
        let (vals, vecs) = gram.hermitian_eigen();
        let top = vals.last().copied().unwrap_or(T::zero());
        if top <= T::zero() || vals[0] <= rel_tol * rel_tol * top {
            return None;
        }
        let inv_sqrt: Vec<C<T>> = vals.iter().map(|&l| real(T::one() / l.sqrt())).collect();
        let middle = &(&vecs * &Self::diag(&inv_sqrt)) * &vecs.adjoint();
        Some(self * &middle)
    }

    /// Unitarity defect `max |W* W - I|`.
    pub fn unitarity_defect(&self) -> T {
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.cols))
    }

    pub fn determinant(&self) -> C<T> {
        assert!(self.is_square(), "determinant needs a square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = C::one();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[(i, col)].norm().partial_cmp(&a[(j, col)].norm()).unwrap_or(std::cmp::Ordering::Equal))
                .unwrap_or(col);
            if a[(pivot, col)].norm() == T::zero() {
                return C::zero();
            }
            if pivot != col {
                for k in 0..n {
                    let tmp = a[(col, k)];
                    a[(col, k)] = a[(pivot, k)];
                    a[(pivot, k)] = tmp;
                }
                det = -det;
            }
            let d = a[(col, col)];
            det = det * d;
            for r in (col + 1)..n {
                let f = a[(r, col)] / d;
                for k in col..n {
                    let v = a[(col, k)];
                    a[(r, k)] = a[(r, k)] - f * v;
                }
            }
        }
        det
    }
}

impl<T: Real> Index<(usize, usize)> for CMatrix<T> {
    type Output = C<T>;
    fn index(&self, (r, c): (usize, usize)) -> &C<T> {
        &self.data[r * self.cols + c]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C<T> {
        &mut self.data[r * self.cols + c]
    }
}

impl<'a, T: Real> Mul<&'a CMatrix<T>> for &'a CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: &'a CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] = out.data[i * rhs.cols + j] + a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl<'a, T: Real> Add<&'a CMatrix<T>> for &'a CMatrix<T> {
    type Output = CMatrix<T>;
    fn add(self, rhs: &'a CMatrix<T>) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect(),
        }
    }
}

impl<'a, T: Real> Sub<&'a CMatrix<T>> for &'a CMatrix<T> {
    type Output = CMatrix<T>;
    fn sub(self, rhs: &'a CMatrix<T>) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect(),
        }
    }
}

impl<T: Real> Neg for CMatrix<T> {
    type Output = CMatrix<T>;
    fn neg(self) -> CMatrix<T> {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.into_iter().map(|a| -a).collect() }
    }
}

/// Orthonormal basis of a growing linear span of equally shaped matrices,
/// maintained by twice-iterated Gram-Schmidt on the flattened entries.
#[derive(Clone, Debug)]
pub struct SpanBasis<T: Real> {
    len: usize,
    basis: Vec<Vec<C<T>>>,
    rel_tol: T,
}

impl<T: Real> SpanBasis<T> {
    /// `rel_tol` is the residual-to-norm ratio below which a candidate counts
    /// as already in the span.
    pub fn new(rows: usize, cols: usize, rel_tol: T) -> Self {
        Self { len: rows * cols, basis: Vec::new(), rel_tol }
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.len
    }

    /// Adds `m` to the span. Returns `true` when the dimension grew.
    pub fn insert(&mut self, m: &CMatrix<T>) -> bool {
        assert_eq!(m.as_slice().len(), self.len, "span element has wrong shape");
        if self.is_full() {
            return false;
        }
        let norm0 = m.frobenius_norm();
        if norm0 <= T::min_positive_value() {
            return false;
        }
        let mut v: Vec<C<T>> = m.as_slice().to_vec();
        for _ in 0..2 {
            for b in &self.basis {
                let dot = b.iter().zip(&v).fold(C::<T>::zero(), |acc, (x, y)| acc + x.conj() * *y);
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = *vi - dot * *bi;
                }
            }
        }
        let norm = v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
        if norm <= self.rel_tol * norm0 {
            return false;
        }
        let inv = real(T::one() / norm);
        self.basis.push(v.into_iter().map(|z| z * inv).collect());
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    fn sample(n: usize, seed: u64) -> CMatrix<f64> {
        // tiny LCG so this module does not depend on rand
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        CMatrix::from_fn(n, n, |_, _| cplx(next(), next()))
    }

    #[test]
    fn eigen_reconstructs_hermitian() {
        for n in [1, 2, 3, 5, 8] {
            let a = sample(n, n as u64 + 7);
            let h = &a + &a.adjoint();
            let (vals, vecs) = h.hermitian_eigen();
            assert!(vecs.unitarity_defect() < 1e-12);
            let d = CMatrix::diag(&vals.iter().map(|&x| real(x)).collect::<Vec<_>>());
            let back = &(&vecs * &d) * &vecs.adjoint();
            assert!(back.max_abs_diff(&h) < 1e-12, "n={n}");
            assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn eigen_of_degenerate_projection() {
        let v = vec![cplx(0.6, 0.0), cplx(0.0, 0.8)];
        let p = CMatrix::<f64>::outer(&v, &v);
        let (vals, _) = p.hermitian_eigen();
        assert!(vals[0].abs() < 1e-15 && (vals[1] - 1.0).abs() < 1e-15);
        assert_eq!(p.numerical_rank(1e-8), 1);
        assert_eq!(CMatrix::<f64>::zeros(3, 3).numerical_rank(1e-8), 0);
    }

    #[test]
    fn singular_values_resolve_small_scales() {
        let q = sample(3, 7).polar_unitary(1e-8).unwrap();
        let d = CMatrix::diag(&[cplx(3.0, 0.0), cplx(1e-13, 0.0), cplx(0.0, 0.0)]);
        let sv = (&(&q * &d) * &q.adjoint()).singular_values();
        assert!((sv[0] - 3.0).abs() < 1e-14);
        assert!((sv[1] - 1e-13).abs() < 1e-14 && sv[2] < 1e-14);
        // rank-one projections stay rank one under a tight threshold
        let v = vec![cplx(0.48, 0.0), cplx(0.0, -0.6), cplx(0.64, 0.0)];
        assert_eq!(CMatrix::<f64>::outer(&v, &v).numerical_rank(1e-12), 1);
        let wide = CMatrix::<f64>::from_real_rows(&[&[3.0, 0.0, 0.0], &[0.0, 4.0, 0.0]]);
        assert_eq!(wide.singular_values(), vec![4.0, 3.0]);
    }

    #[test]
    fn polar_factor_is_unitary_and_fixes_unitaries() {
        let a = sample(4, 99);
        let u = a.polar_unitary(1e-10).unwrap();
        assert!(u.unitarity_defect() < 1e-12);
        let again = u.polar_unitary(1e-10).unwrap();
        assert!(again.max_abs_diff(&u) < 1e-12);
        assert!(CMatrix::<f64>::zeros(2, 2).polar_unitary(1e-10).is_none());
    }

    #[test]
    fn determinant_of_pauli_products() {
        let x = CMatrix::from_rows(&[vec![cplx(0.0, 0.0), cplx(0.0, 1.0)], vec![cplx(0.0, 1.0), cplx(0.0, 0.0)]]).unwrap();
        assert!((x.determinant() - cplx(1.0, 0.0)).norm() < 1e-15);
        assert!((CMatrix::<f64>::identity(3).determinant() - cplx(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn span_basis_counts_matrix_units() {
        let mut span = SpanBasis::<f64>::new(2, 2, 1e-10);
        assert!(span.insert(&CMatrix::unit(2, 0, 0)));
        assert!(span.insert(&CMatrix::unit(2, 1, 1)));
        assert!(!span.insert(&CMatrix::identity(2)));
        assert!(span.insert(&CMatrix::unit(2, 0, 1)));
        assert!(span.insert(&CMatrix::unit(2, 1, 0)));
        assert!(span.is_full());
    }

    #[test]
    fn works_in_single_precision() {
        let h = CMatrix::<f32>::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let (vals, _) = h.hermitian_eigen();
        assert!((vals[0] - 1.0).abs() < 1e-5 && (vals[1] - 3.0).abs() < 1e-5);
    }
}
