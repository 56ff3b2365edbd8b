use crate::ring::{Elem, Ring};

use super::{gf2::BitMatrix, LinalgError, Matrix, Subspace};

/// Result of [`rref`]: the nonzero rows of the reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub(crate) fn require_field(ring: &Ring) -> Result<(), LinalgError> {
    if ring.is_field() {
        Ok(())
    } else {
        Err(LinalgError::NotAField(ring.to_string()))
    }
}

/// Gauss-Jordan elimination on a vector of rows; returns pivots and truncates zero rows.
fn rref_rows(ring: &Ring, rows: &mut Vec<Vec<Elem>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !ring.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(p, r);
        let inv = ring
            .inv(&rows[r][c])
            .expect("nonzero field element is a unit");
        if !ring.is_one(&inv) {
            for e in rows[r].iter_mut().skip(c) {
                *e = ring.mul(e, &inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || ring.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for j in c..cols {
                if !ring.is_zero(&pivot_row[j]) {
                    row[j] = ring.sub(&row[j], &ring.mul(&f, &pivot_row[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Reduced row echelon form by exact elimination. Zero rows are dropped.
pub fn rref(m: &Matrix) -> Result<Rref, LinalgError> {
    let ring = m.ring();
    require_field(ring)?;
    if ring.is_gf2() {
        let mut b = BitMatrix::from_matrix(m);
        let pivots = b.rref();
        return Ok(Rref {
            matrix: b.to_matrix(ring),
            rank: pivots.len(),
            pivots,
        });
    }
    let mut rows = m.to_rows();
    let pivots = rref_rows(ring, &mut rows, m.cols());
    let matrix = Matrix::from_rows(ring, m.cols(), rows)?;
    Ok(Rref {
        rank: pivots.len(),
        matrix,
        pivots,
    })
}

pub fn rank(m: &Matrix) -> Result<usize, LinalgError> {
    Ok(rref(m)?.rank)
}

/// Null space `{x : m x = 0}` as a subspace of the domain.
pub fn kernel(m: &Matrix) -> Result<Subspace, LinalgError> {
    let ring = m.ring();
    let r = rref(m)?;
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !r.pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![ring.zero(); n];
        v[f] = ring.one();
        for (i, &p) in r.pivots.iter().enumerate() {
            v[p] = ring.neg(r.matrix.get(i, f));
        }
        basis.push(v);
    }
    Subspace::from_rows(ring, n, basis)
}

/// Column space of `m` as a subspace of the codomain.
pub fn image(m: &Matrix) -> Result<Subspace, LinalgError> {
    Subspace::from_matrix_rows(&m.transpose())
}

pub fn inverse(m: &Matrix) -> Result<Matrix, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    let aug = m.hstack(&Matrix::identity(m.ring(), n));
    let r = rref(&aug)?;
    if r.rank < n || r.pivots[n - 1] != n - 1 {
        return Err(LinalgError::Singular);
    }
    let idx: Vec<usize> = (n..2 * n).collect();
    Ok(r.matrix.select_cols(&idx))
}

pub fn is_invertible(m: &Matrix) -> bool {
    m.is_square() && rank(m).map(|r| r == m.rows()).unwrap_or(false)
}

/// Some solution X of `a X = b`, or `None` when the system is inconsistent.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>, LinalgError> {
    if a.rows() != b.rows() {
        return Err(LinalgError::ShapeMismatch(format!(
            "solve: {} vs {} rows",
            a.rows(),
            b.rows()
        )));
    }
    let ring = a.ring();
    let n = a.cols();
    let r = rref(&a.hstack(b))?;
    if r.pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let mut x = Matrix::zeros(ring, n, b.cols());
    for (i, &p) in r.pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(p, j, r.matrix.get(i, n + j).clone());
        }
    }
    Ok(Some(x))
}

/// Incremental semi-echelon basis. Rows are stored in insertion order with
/// `rows[j][pivots[i]] = 0` for `i < j`, so reducing against them in order clears every pivot.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    ring: Ring,
    cols: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl EchelonBuilder {
    pub fn new(ring: &Ring, cols: usize) -> EchelonBuilder {
        EchelonBuilder {
            ring: ring.clone(),
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn reduce(&self, v: &mut [Elem]) {
        let r = &self.ring;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r.is_zero(&v[p]) {
                continue;
            }
            let f = v[p].clone();
            for j in 0..self.cols {
                if !r.is_zero(&row[j]) {
                    v[j] = r.sub(&v[j], &r.mul(&f, &row[j]));
                }
            }
        }
    }

    /// Inserts `v` if it is independent of the current rows; returns whether it was new.
    pub fn insert(&mut self, mut v: Vec<Elem>) -> bool {
        self.insert_reduced(&mut v).is_some()
    }

    /// Like [`insert`](Self::insert) but returns the stored (reduced, normalized) row.
    pub fn insert_reduced(&mut self, v: &mut [Elem]) -> Option<&[Elem]> {
        assert_eq!(v.len(), self.cols);
        self.reduce(v);
        let r = &self.ring;
        let p = v.iter().position(|e| !r.is_zero(e))?;
        let inv = r.inv(&v[p]).expect("field");
        let row: Vec<Elem> = v.iter().map(|e| r.mul(e, &inv)).collect();
        self.rows.push(row);
        self.pivots.push(p);
        self.rows.last().map(|r| r.as_slice())
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn to_subspace(&self) -> Result<Subspace, LinalgError> {
        Subspace::from_rows(&self.ring, self.cols, self.rows.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_examples() {
        let f2 = Ring::prime_field(2).unwrap();
        let r = rref(&Matrix::from_i64(&f2, &[vec![1, 1], vec![1, 1]])).unwrap();
        assert_eq!((r.rank, r.pivots), (1, vec![0]));

        let q = Ring::rational();
        let i3 = Matrix::identity(&q, 3);
        let r = rref(&i3).unwrap();
        assert_eq!((r.rank, &r.matrix), (3, &i3));

        let r = rref(&Matrix::from_i64(&q, &[vec![2, 4], vec![1, 2]])).unwrap();
        assert_eq!(r.matrix, Matrix::from_i64(&q, &[vec![1, 2]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn zmod_is_rejected() {
        let z = Ring::zmod(6).unwrap();
        assert!(matches!(
            rref(&Matrix::identity(&z, 2)),
            Err(LinalgError::NotAField(_))
        ));
    }

    #[test]
    fn kernel_of_swap_minus_identity() {
        let f5 = Ring::prime_field(5).unwrap();
        let g = Matrix::from_i64(&f5, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]);
        let ad = Matrix::identity(&f5, 3).sub(&g);
        let k = kernel(&ad).unwrap();
        let expected = Subspace::from_rows(
            &f5,
            3,
            vec![
                vec![Elem::Int(1), Elem::Int(1), Elem::Int(0)],
                vec![Elem::Int(0), Elem::Int(0), Elem::Int(1)],
            ],
        )
        .unwrap();
        assert_eq!(k, expected);
        assert_eq!(k.dim() + image(&ad).unwrap().dim(), 3);
    }

    #[test]
    fn zero_map_image() {
        let q = Ring::rational();
        assert_eq!(image(&Matrix::zeros(&q, 4, 4)).unwrap().dim(), 0);
    }

    #[test]
    fn inverse_and_solve() {
        let f7 = Ring::prime_field(7).unwrap();
        let a = Matrix::from_i64(&f7, &[vec![1, 2], vec![3, 4]]);
        let ai = inverse(&a).unwrap();
        assert!((&a * &ai).is_identity());
        let b = Matrix::from_i64(&f7, &[vec![5], vec![6]]);
        let x = solve(&a, &b).unwrap().unwrap();
        assert_eq!(&a * &x, b);
        let sing = Matrix::from_i64(&f7, &[vec![1, 2], vec![2, 4]]);
        assert!(matches!(inverse(&sing), Err(LinalgError::Singular)));
        assert!(solve(&sing, &Matrix::from_i64(&f7, &[vec![1], vec![0]]))
            .unwrap()
            .is_none());
    }
}
