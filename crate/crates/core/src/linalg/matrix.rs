use std::fmt;
use std::ops::Mul;

use crate::ring::{Elem, Ring, RingKind, Scalar};

use super::{gf2::BitMatrix, LinalgError};

/// Dense row-major matrix over a [`Ring`]. Matrices act on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.ring)?;
        write!(f, "{self}")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self
                .row(i)
                .iter()
                .map(|e| self.ring.format_elem(e))
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    pub fn scalar_matrix(ring: &Ring, n: usize, c: &Elem) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_fn(
        ring: &Ring,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Elem,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(
        ring: &Ring,
        cols: usize,
        rows: Vec<Vec<Elem>>,
    ) -> Result<Matrix, LinalgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::ShapeMismatch(format!(
                    "row of length {} in a {cols}-column matrix",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Matrix {
            ring: ring.clone(),
            rows: n,
            cols,
            data,
        })
    }

    /// Integer matrix reduced into `ring`. Panics on ragged input.
    pub fn from_i64(ring: &Ring, rows: &[Vec<i64>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&v| ring.from_i64(v))
            })
            .collect();
        Matrix {
            ring: ring.clone(),
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn column(ring: &Ring, v: Vec<Elem>) -> Matrix {
        Matrix {
            ring: ring.clone(),
            rows: v.len(),
            cols: 1,
            data: v,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn scalar(&self, i: usize, j: usize) -> Scalar {
        Scalar::new(&self.ring, self.get(i, j).clone())
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Elem] {
        let c = self.cols;
        &mut self.data[i * c..(i + 1) * c]
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        self.ring.is_one(e)
                    } else {
                        self.ring.is_zero(e)
                    }
                })
            })
    }

    fn check_same_shape(&self, o: &Matrix) -> Result<(), LinalgError> {
        if self.ring != o.ring {
            return Err(LinalgError::RingMismatch(
                self.ring.to_string(),
                o.ring.to_string(),
            ));
        }
        if self.rows != o.rows || self.cols != o.cols {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_same_shape(o)?;
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn try_sub(&self, o: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_same_shape(o)?;
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Ok(Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Panicking versions for internal use on shapes known to agree.
    pub fn add(&self, o: &Matrix) -> Matrix {
        self.try_add(o).expect("matrix add")
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.try_sub(o).expect("matrix sub")
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|a| self.ring.neg(a)).collect();
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        let data = self.data.iter().map(|a| self.ring.mul(a, c)).collect();
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn try_mul(&self, o: &Matrix) -> Result<Matrix, LinalgError> {
        if self.ring != o.ring {
            return Err(LinalgError::RingMismatch(
                self.ring.to_string(),
                o.ring.to_string(),
            ));
        }
        if self.cols != o.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        if self.ring.is_gf2() && self.cols >= 16 {
            return Ok(BitMatrix::from_matrix(self)
                .mul(&BitMatrix::from_matrix(o))
                .to_matrix(&self.ring));
        }
        let (n, m, p) = (self.rows, self.cols, o.cols);
        let mut out = Matrix::zeros(&self.ring, n, p);
        match self.ring.kind() {
            RingKind::FiniteField { p: modulus, k: 1 } | RingKind::ModularInt { k: modulus } => {
                let md = modulus as u128;
                for i in 0..n {
                    for j in 0..p {
                        let mut acc: u128 = 0;
                        for t in 0..m {
                            acc += self.data[i * m + t].as_u64() as u128
                                * o.data[t * p + j].as_u64() as u128;
                            if acc >= 1 << 120 {
                                acc %= md;
                            }
                        }
                        out.data[i * p + j] = Elem::Int((acc % md) as u64);
                    }
                }
            }
            _ => {
                let r = &self.ring;
                for i in 0..n {
                    for t in 0..m {
                        let a = &self.data[i * m + t];
                        if r.is_zero(a) {
                            continue;
                        }
                        for j in 0..p {
                            let b = &o.data[t * p + j];
                            if !r.is_zero(b) {
                                let prod = r.mul(a, b);
                                out.data[i * p + j] = r.add(&out.data[i * p + j], &prod);
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols, "vector length");
        let r = &self.ring;
        (0..self.rows)
            .map(|i| {
                let mut acc = r.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !r.is_zero(a) && !r.is_zero(b) {
                        acc = r.add(&acc, &r.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.ring, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `[self | o]`
    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows);
        Matrix::from_fn(&self.ring, self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                o.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(&self.ring, idx.len(), self.cols, |i, j| {
            self.get(idx[i], j).clone()
        })
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(&self.ring, self.rows, idx.len(), |i, j| {
            self.get(i, idx[j]).clone()
        })
    }

    /// Reduce entry `(i, j)` modulo `moduli[i]`; used for Z/kZ modules whose coordinates
    /// have different orders. Each modulus must divide the ring's order.
    pub fn reduce_rows(&mut self, moduli: &[u64]) {
        assert_eq!(moduli.len(), self.rows);
        for i in 0..self.rows {
            let m = moduli[i];
            for e in self.row_mut(i) {
                *e = Elem::Int(e.as_u64() % m);
            }
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    /// Panics on ring or shape mismatch; use [`Matrix::try_mul`] for a checked product.
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_identity() {
        let f = Ring::prime_field(7).unwrap();
        let a = Matrix::from_i64(&f, &[vec![1, 2], vec![3, 4]]);
        let i = Matrix::identity(&f, 2);
        assert_eq!(&a * &i, a);
        let sq = &a * &a;
        assert_eq!(sq, Matrix::from_i64(&f, &[vec![7, 10], vec![15, 22]]));
        assert_eq!(a.pow(3), &sq * &a);
        assert!(a.try_mul(&Matrix::zeros(&f, 3, 3)).is_err());
    }

    #[test]
    fn gf2_bitpacked_product_matches_dense() {
        let f = Ring::prime_field(2).unwrap();
        let a = Matrix::from_fn(&f, 20, 20, |i, j| {
            Elem::Int(((i * 7 + j * 3) % 5 == 0) as u64)
        });
        let b = Matrix::from_fn(&f, 20, 20, |i, j| Elem::Int(((i + 2 * j) % 3 == 1) as u64));
        let bit = &a * &b;
        let dense = Matrix::from_fn(&f, 20, 20, |i, j| {
            let s: u64 = (0..20)
                .map(|t| a.get(i, t).as_u64() * b.get(t, j).as_u64())
                .sum();
            Elem::Int(s % 2)
        });
        assert_eq!(bit, dense);
    }

    #[test]
    fn rational_product() {
        let q = Ring::rational();
        let a = Matrix::from_i64(&q, &[vec![1, -1], vec![0, 2]]);
        let half = q.parse_elem("1/2").unwrap();
        let b = a.scale(&half);
        assert_eq!(format!("{}", &a * &b), "1/2 -3/2\n0/1 2/1\n");
    }
}
