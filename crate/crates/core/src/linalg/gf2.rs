//! Bit-packed GF(2) kernels: row reduction, products, and an exhaustive spin oracle.

use crate::ring::{Elem, Ring};

use super::{LinalgError, Matrix, Subspace};

/// GF(2) matrix with each row packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> BitMatrix {
        let words = cols.div_ceil(64).max(1);
        BitMatrix {
            rows,
            cols,
            words,
            bits: vec![0; rows * words],
        }
    }

    pub fn from_matrix(m: &Matrix) -> BitMatrix {
        assert!(m.ring().is_gf2(), "bit-packing needs GF(2)");
        let mut b = BitMatrix::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if m.get(i, j).as_u64() == 1 {
                    b.set(i, j, true);
                }
            }
        }
        b
    }

    pub fn to_matrix(&self, ring: &Ring) -> Matrix {
        Matrix::from_fn(ring, self.rows, self.cols, |i, j| {
            Elem::Int(self.get(i, j) as u64)
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.bits[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        for w in 0..self.words {
            let v = self.bits[src * self.words + w];
            self.bits[dst * self.words + w] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for w in 0..self.words {
                self.bits.swap(a * self.words + w, b * self.words + w);
            }
        }
    }

    pub fn mul(&self, o: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = BitMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                if self.get(i, t) {
                    for w in 0..o.words {
                        out.bits[i * out.words + w] ^= o.bits[t * o.words + w];
                    }
                }
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns pivot columns. Zero rows are truncated.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(p, r);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row_into(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.rows = r;
        self.bits.truncate(r * self.words);
        pivots
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(|&w| w == 0)
    }
}

/// Generators as column masks: `cols[g][j]` is column j of generator g, so `g·v` is the XOR
/// of the columns selected by the bits of v.
pub(crate) struct MaskGens {
    d: usize,
    cols: Vec<Vec<u64>>,
}

impl MaskGens {
    pub(crate) fn new(gens: &[Matrix]) -> Result<MaskGens, LinalgError> {
        let d = gens.first().map_or(0, |g| g.rows());
        if d > 64 {
            return Err(LinalgError::ShapeMismatch(format!(
                "mask spinning supports d <= 64, got {d}"
            )));
        }
        let cols = gens
            .iter()
            .map(|g| {
                (0..d)
                    .map(|j| {
                        (0..d)
                            .filter(|&i| g.get(i, j).as_u64() == 1)
                            .fold(0u64, |m, i| m | (1 << i))
                    })
                    .collect()
            })
            .collect();
        Ok(MaskGens { d, cols })
    }

    #[inline]
    fn apply(&self, g: usize, v: u64) -> u64 {
        let mut out = 0;
        let mut bits = v;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            out ^= self.cols[g][j];
            bits &= bits - 1;
        }
        out
    }

    /// Dimension of the spin of `v`, stopping early once the whole space is reached.
    pub(crate) fn spin_dim(&self, v: u64) -> (usize, Vec<u64>) {
        // pivot_rows[b] holds a basis vector whose lowest set bit is b
        let mut pivot_rows = [0u64; 64];
        let mut basis = Vec::new();
        let reduce = |mut x: u64, rows: &[u64; 64]| {
            while x != 0 {
                let b = x.trailing_zeros() as usize;
                if rows[b] == 0 {
                    break;
                }
                x ^= rows[b];
            }
            x
        };
        let r = reduce(v, &pivot_rows);
        if r == 0 {
            return (0, basis);
        }
        pivot_rows[r.trailing_zeros() as usize] = r;
        basis.push(r);
        let mut next = 0;
        while next < basis.len() && basis.len() < self.d {
            let x = basis[next];
            next += 1;
            for g in 0..self.cols.len() {
                let y = reduce(self.apply(g, x), &pivot_rows);
                if y != 0 {
                    pivot_rows[y.trailing_zeros() as usize] = y;
                    basis.push(y);
                }
            }
        }
        (basis.len(), basis)
    }
}

/// Exhaustive irreducibility oracle over GF(2): spins every nonzero vector.
/// Returns `None` when every spin is the whole space, or a proper invariant subspace.
pub fn exhaustive_spin_oracle(gens: &[Matrix]) -> Result<Option<Subspace>, LinalgError> {
    let first = gens.first().ok_or(LinalgError::EmptyGenerators)?;
    if !first.ring().is_gf2() {
        return Err(LinalgError::NotFiniteField(format!(
            "exhaustive oracle needs gf:2, got {}",
            first.ring()
        )));
    }
    let d = first.rows();
    if d == 0 {
        return Err(LinalgError::DimensionZero);
    }
    if d > 24 {
        return Err(LinalgError::ShapeMismatch(format!(
            "exhaustive oracle limited to d <= 24, got {d}"
        )));
    }
    let mg = MaskGens::new(gens)?;
    let ring = first.ring().clone();
    for v in 1u64..(1u64 << d) {
        let (dim, basis) = mg.spin_dim(v);
        if dim < d {
            let rows = basis
                .iter()
                .map(|&m| (0..d).map(|i| Elem::Int((m >> i) & 1)).collect())
                .collect();
            return Ok(Some(Subspace::from_rows(&ring, d, rows)?));
        }
    }
    Ok(None)
}
