//! Dense matrices over a ring with involution.
//!
//! `M_n(R)` is itself a ring with involution: the conjugate-transpose
//! `dagger` reverses products. Everything here is value-semantic; dimensions
//! are desk-scale (n <= 8), so clarity wins over sparsity.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::rings::Ring;

#[derive(Clone, PartialEq)]
pub struct Matrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?} [", self.rows, self.cols, self.ring)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:?}, ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// 2x2 minor residuals of a matrix, in lexicographic `(j, k, l, m)` order
/// over row pairs `j < l` and column pairs `k < m`.
pub struct MinorResiduals<R: Ring> {
    pub residuals: Vec<((usize, usize, usize, usize), R::Elem)>,
    ring: R,
}

impl<R: Ring> MinorResiduals<R> {
    pub fn all_vanish(&self) -> bool {
        self.residuals
            .iter()
            .all(|(_, r)| self.ring.is_zero(r))
    }

    pub fn all_negligible(&self, tol: f64) -> bool {
        self.residuals
            .iter()
            .all(|(_, r)| self.ring.is_negligible(r, tol))
    }

    pub fn max_magnitude(&self) -> f64 {
        let mut m = 0.0f64;
        for (_, r) in &self.residuals {
            let v = self.ring.magnitude(r);
            if v > m {
                m = v;
            }
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoncommutativeRing;

impl fmt::Display for NoncommutativeRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "operation requires a commutative coefficient ring")
    }
}

impl<R: Ring> Matrix<R> {
    pub fn zero(ring: R, rows: usize, cols: usize) -> Self {
        let data = vec![ring.from_i64(0); rows * cols];
        Matrix {
            ring,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            let one = m.ring.one();
            m.set(i, i, one);
        }
        m
    }

    /// Matrix unit `e_{ij}` (1-based construction is not used; indices are
    /// 0-based throughout).
    pub fn unit(ring: R, n: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zero(ring, n, n);
        let one = m.ring.one();
        m.set(i, j, one);
        m
    }

    pub fn from_fn(ring: R, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            ring,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend(row);
        }
        Matrix {
            ring,
            rows: r,
            cols: c,
            data,
        }
    }

    /// Square matrix from integer entries, mostly for tests and fixtures.
    pub fn from_i64_rows(ring: R, rows: &[&[i64]]) -> Self {
        let r = ring.clone();
        Matrix::from_rows(
            ring,
            rows.iter()
                .map(|row| row.iter().map(|&v| r.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn n(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[R::Elem] {
        &self.data
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.ring, other.ring);
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| self.ring.neg(a)).collect();
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.ring, other.ring);
        debug_assert_eq!(self.cols, other.rows);
        Matrix::from_fn(self.ring.clone(), self.rows, other.cols, |i, j| {
            let mut acc = self.ring.from_i64(0);
            for k in 0..self.cols {
                acc = self
                    .ring
                    .add(&acc, &self.ring.mul(self.get(i, k), other.get(k, j)));
            }
            acc
        })
    }

    /// Left scalar multiple `s * M`.
    pub fn scale(&self, s: &R::Elem) -> Self {
        let data = self.data.iter().map(|a| self.ring.mul(s, a)).collect();
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    /// Conjugate-transpose: entrywise involution followed by transposition.
    /// This is the involution of the matrix ring: `(MN)† = N† M†`.
    pub fn dagger(&self) -> Self {
        Matrix::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| {
            self.ring.star(self.get(j, i))
        })
    }

    pub fn trace(&self) -> R::Elem {
        debug_assert!(self.is_square());
        let mut acc = self.ring.from_i64(0);
        for i in 0..self.rows {
            acc = self.ring.add(&acc, self.get(i, i));
        }
        acc
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn max_magnitude(&self) -> f64 {
        let mut m = 0.0f64;
        for a in &self.data {
            let v = self.ring.magnitude(a);
            if v > m {
                m = v;
            }
        }
        m
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.data.iter().all(|a| self.ring.is_negligible(a, tol))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| self.ring.is_zero(a))
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.sub(other).max_magnitude()
    }

    /// Transports the matrix along an entrywise map into another ring.
    pub fn map_entries<S: Ring>(&self, target: S, mut f: impl FnMut(&R::Elem) -> S::Elem) -> Matrix<S> {
        let data = self.data.iter().map(|e| f(e)).collect();
        Matrix {
            ring: target,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// All proper 2x2 minors `x[j][k] x[l][m] - x[j][l]' x[k][m]'`, i.e.
    /// determinants of the submatrices on row pair `j < l` and column pair
    /// `k < m`, in lexicographic order.
    pub fn minors2x2(&self) -> Result<MinorResiduals<R>, NoncommutativeRing> {
        if !self.ring.commutative() {
            return Err(NoncommutativeRing);
        }
        let mut residuals = Vec::new();
        for j in 0..self.rows {
            for l in (j + 1)..self.rows {
                for k in 0..self.cols {
                    for m in (k + 1)..self.cols {
                        let det = self.ring.sub(
                            &self.ring.mul(self.get(j, k), self.get(l, m)),
                            &self.ring.mul(self.get(j, m), self.get(l, k)),
                        );
                        residuals.push(((j, k, l, m), det));
                    }
                }
            }
        }
        Ok(MinorResiduals {
            residuals,
            ring: self.ring.clone(),
        })
    }

    /// `true` iff every 2x2 minor vanishes exactly.
    pub fn minors2x2_vanish(&self) -> Result<bool, NoncommutativeRing> {
        Ok(self.minors2x2()?.all_vanish())
    }

    fn strike(&self, row: usize, col: usize) -> Self {
        Matrix::from_fn(self.ring.clone(), self.rows - 1, self.cols - 1, |i, j| {
            let si = if i < row { i } else { i + 1 };
            let sj = if j < col { j } else { j + 1 };
            self.get(si, sj).clone()
        })
    }

    /// Division-free determinant by Laplace expansion; fine at desk scale.
    pub fn determinant(&self) -> Result<R::Elem, NoncommutativeRing> {
        if !self.ring.commutative() {
            return Err(NoncommutativeRing);
        }
        debug_assert!(self.is_square());
        Ok(self.det_inner())
    }

    fn det_inner(&self) -> R::Elem {
        let n = self.rows;
        if n == 0 {
            return self.ring.one();
        }
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let mut acc = self.ring.from_i64(0);
        for j in 0..n {
            let cofactor = self.strike(0, j).det_inner();
            let term = self.ring.mul(self.get(0, j), &cofactor);
            acc = if j % 2 == 0 {
                self.ring.add(&acc, &term)
            } else {
                self.ring.sub(&acc, &term)
            };
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{gaussian_q, quaternions_q, GaussElem, Ring};

    #[test]
    fn dagger_conjugates_and_transposes() {
        let g = gaussian_q();
        // [[i,0],[0,0]] -> [[-i,0],[0,0]]
        let m = Matrix::from_rows(
            g,
            vec![
                vec![GaussElem::from_i64(0, 1), GaussElem::from_i64(0, 0)],
                vec![GaussElem::from_i64(0, 0), GaussElem::from_i64(0, 0)],
            ],
        );
        let expect = Matrix::from_rows(
            g,
            vec![
                vec![GaussElem::from_i64(0, -1), GaussElem::from_i64(0, 0)],
                vec![GaussElem::from_i64(0, 0), GaussElem::from_i64(0, 0)],
            ],
        );
        assert_eq!(m.dagger(), expect);

        // [[1,1],[0,0]] -> [[1,0],[1,0]]
        let m = Matrix::from_i64_rows(g, &[&[1, 1], &[0, 0]]);
        let expect = Matrix::from_i64_rows(g, &[&[1, 0], &[1, 0]]);
        assert_eq!(m.dagger(), expect);
    }

    #[test]
    fn trace_and_commutator_basics() {
        let g = gaussian_q();
        assert_eq!(Matrix::identity(g, 3).trace(), g.from_i64(3));

        let e12 = Matrix::unit(g, 2, 0, 1);
        let e21 = Matrix::unit(g, 2, 1, 0);
        let d = Matrix::from_i64_rows(g, &[&[1, 0], &[0, -1]]);
        assert_eq!(e12.commutator(&e21), d);
    }

    #[test]
    fn minor_examples() {
        let g = gaussian_q();
        let diag = Matrix::from_i64_rows(g, &[&[1, 0], &[0, 0]]);
        assert!(diag.minors2x2_vanish().unwrap());

        let id = Matrix::identity(g, 2);
        let minors = id.minors2x2().unwrap();
        assert!(!minors.all_vanish());
        assert_eq!(minors.residuals.len(), 1);
        assert_eq!(minors.residuals[0].1, g.one());

        // rows proportional: [[1,t],[0,0]]
        let m = Matrix::from_i64_rows(g, &[&[1, 7], &[0, 0]]);
        assert!(m.minors2x2_vanish().unwrap());
    }

    #[test]
    fn minors_refused_over_quaternions() {
        let h = quaternions_q();
        let m = Matrix::identity(h, 2);
        assert!(m.minors2x2().is_err());
    }

    #[test]
    fn determinant_small_cases() {
        let g = gaussian_q();
        let m = Matrix::from_i64_rows(g, &[&[1, 2], &[3, 4]]);
        assert_eq!(m.determinant().unwrap(), g.from_i64(-2));
        let m3 = Matrix::from_i64_rows(g, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
        assert_eq!(m3.determinant().unwrap(), g.from_i64(30));
    }
}
