use std::fmt;

use crate::ring::{Elem, Ring};

use super::echelon::{kernel, require_field, rref};
use super::{LinalgError, Matrix};

/// Subspace of `F^ambient` stored as its canonical RREF basis (rows are vectors).
/// Two subspaces are equal iff their canonical bases are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) ", self.dim(), self.ambient)?;
        f.debug_list()
            .entries(self.basis.to_rows().iter().map(|r| {
                r.iter()
                    .map(|e| self.basis.ring().format_elem(e))
                    .collect::<Vec<_>>()
                    .join(" ")
            }))
            .finish()
    }
}

impl Subspace {
    pub fn zero(ring: &Ring, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zeros(ring, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ring: &Ring, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(ring, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given row vectors.
    pub fn from_rows(
        ring: &Ring,
        ambient: usize,
        rows: Vec<Vec<Elem>>,
    ) -> Result<Subspace, LinalgError> {
        Subspace::from_matrix_rows(&Matrix::from_rows(ring, ambient, rows)?)
    }

    /// Span of the rows of `m`.
    pub fn from_matrix_rows(m: &Matrix) -> Result<Subspace, LinalgError> {
        require_field(m.ring())?;
        let r = rref(m)?;
        Ok(Subspace {
            ambient: m.cols(),
            basis: r.matrix,
            pivots: r.pivots,
        })
    }

    /// Span of the columns of `m`.
    pub fn from_columns(m: &Matrix) -> Result<Subspace, LinalgError> {
        Subspace::from_matrix_rows(&m.transpose())
    }

    pub fn ring(&self) -> &Ring {
        self.basis.ring()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Basis vectors as the rows of a `dim x ambient` matrix.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_columns(&self) -> Matrix {
        self.basis.transpose()
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Elem>> {
        self.basis.to_rows()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, o: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != o.ambient || self.ring() != o.ring() {
            return Err(LinalgError::AmbientMismatch(self.ambient, o.ambient));
        }
        Ok(())
    }

    /// Reduces `v` against the basis, clearing every pivot coordinate.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let r = self.ring();
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if r.is_zero(&w[p]) {
                continue;
            }
            let f = w[p].clone();
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !r.is_zero(b) {
                    w[j] = r.sub(&w[j], &r.mul(&f, b));
                }
            }
        }
        w
    }

    pub fn contains_vector(&self, v: &[Elem]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let r = self.ring();
        self.reduce(v).iter().all(|e| r.is_zero(e))
    }

    /// Coordinates of `v` in the canonical basis (valid only when `v` lies in the subspace).
    pub fn coordinates(&self, v: &[Elem]) -> Vec<Elem> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn is_subspace_of(&self, o: &Subspace) -> bool {
        self.ambient == o.ambient && (0..self.dim()).all(|i| o.contains_vector(self.basis.row(i)))
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(o)?;
        Subspace::from_matrix_rows(&self.basis.vstack(&o.basis))
    }

    /// `{x : b·x = 0 for all b in self}`, a subspace of the same ambient space.
    pub fn annihilator(&self) -> Result<Subspace, LinalgError> {
        if self.dim() == 0 {
            return Ok(Subspace::full(self.ring(), self.ambient));
        }
        kernel(&self.basis)
    }

    pub fn intersect(&self, o: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(o)?;
        self.annihilator()?.sum(&o.annihilator()?)?.annihilator()
    }

    /// `{m v : v in self}` where `m` has `ambient` columns.
    pub fn image_under(&self, m: &Matrix) -> Result<Subspace, LinalgError> {
        if m.cols() != self.ambient {
            return Err(LinalgError::AmbientMismatch(m.cols(), self.ambient));
        }
        if self.dim() == 0 {
            return Ok(Subspace::zero(self.ring(), m.rows()));
        }
        Subspace::from_matrix_rows(&(&self.basis * &m.transpose()))
    }

    pub fn is_invariant_under(&self, m: &Matrix) -> bool {
        (0..self.dim()).all(|i| self.contains_vector(&m.mul_vec(self.basis.row(i))))
    }

    /// Non-pivot coordinates: the standard complement used by [`quotient_map`](Self::quotient_map).
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// Surjection `F^ambient -> F^(ambient - dim)` with kernel exactly `self`: reduce against the
    /// basis, then read off the non-pivot coordinates.
    pub fn quotient_map(&self) -> Matrix {
        let ring = self.ring();
        let np = self.non_pivots();
        let mut q = Matrix::zeros(ring, np.len(), self.ambient);
        for j in 0..self.ambient {
            let mut e = vec![ring.zero(); self.ambient];
            e[j] = ring.one();
            let red = self.reduce(&e);
            for (i, &c) in np.iter().enumerate() {
                q.set(i, j, red[c].clone());
            }
        }
        q
    }

    /// Right inverse of [`quotient_map`](Self::quotient_map): quotient coordinate i goes to the
    /// standard basis vector at the i-th non-pivot column.
    pub fn quotient_section(&self) -> Matrix {
        let ring = self.ring();
        let np = self.non_pivots();
        let mut s = Matrix::zeros(ring, self.ambient, np.len());
        for (i, &c) in np.iter().enumerate() {
            s.set(c, i, ring.one());
        }
        s
    }
}

/// Free-function form of [`Subspace::quotient_map`].
pub fn quotient_map(ambient_dim: usize, w: &Subspace) -> Result<Matrix, LinalgError> {
    if w.ambient_dim() != ambient_dim {
        return Err(LinalgError::AmbientMismatch(ambient_dim, w.ambient_dim()));
    }
    Ok(w.quotient_map())
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace, LinalgError> {
    a.sum(b)
}

pub fn subspace_intersect(a: &Subspace, b: &Subspace) -> Result<Subspace, LinalgError> {
    a.intersect(b)
}
