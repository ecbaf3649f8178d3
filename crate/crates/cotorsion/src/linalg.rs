//! Dense exact linear algebra over prime fields `F_p`.
//!
//! All higher layers reduce their questions to row reduction of small dense
//! matrices, so this module keeps the representation deliberately plain: a
//! matrix is a row-major `Vec<u64>` with every entry already reduced mod `p`,
//! and `p < 2^31` so a product of two entries fits in a `u64` and long dot
//! products fit comfortably in a `u128` accumulator.
//!
//! Design points:
//!
//! * Deterministic everywhere: row reduction always picks the first nonzero
//!   pivot scanning top-down, kernel bases enumerate free columns in
//!   ascending order, and `solve` returns the particular solution with all
//!   free variables set to zero. Re-running any computation reproduces the
//!   same bytes.
//! * Shape and modulus mismatches are errors, not panics: callers combine
//!   matrices coming from user configuration, so misuse must surface as a
//!   reportable value.
//! * Vectors are columns. A linear map `k^c -> k^r` is an `r x c` matrix and
//!   composition is plain matrix multiplication.

use crate::error::LinalgError;

type Result<T> = std::result::Result<T, LinalgError>;

/// Returns true if `p` is a prime in the supported range `2 <= p < 2^31`.
pub fn is_supported_prime(p: u64) -> bool {
    if !(2..(1 << 31)).contains(&p) {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `base^exp mod p` by square-and-multiply.
fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut base = base % p;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse of `a` mod the prime `p`. `a` must be nonzero mod `p`.
fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    pow_mod(a, p - 2, p)
}

/// A dense matrix over `F_p`, row-major, entries reduced mod `p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} mod {} [", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    /// The zero `rows x cols` matrix over `F_p`.
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// The `n x n` identity over `F_p`.
    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Matrix::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from explicit rows, reducing every entry mod `p`.
    ///
    /// # Errors
    ///
    /// Rejects ragged rows. An empty row list yields a `0 x 0` matrix; use
    /// [`Matrix::zero`] when a `0 x c` shape matters.
    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(LinalgError::BadShape {
                    reason: format!("row 0 has {} entries but row {} has {}", ncols, i, row.len()),
                });
            }
            data.extend(row.iter().map(|&v| v % p));
        }
        Ok(Matrix {
            p,
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    /// Builds a single-column matrix from a vector, reducing mod `p`.
    pub fn from_col(p: u64, col: &[u64]) -> Self {
        Matrix {
            p,
            rows: col.len(),
            cols: 1,
            data: col.iter().map(|&v| v % p).collect(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    /// Raw row-major entries.
    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    /// A compact byte encoding of shape and entries, used as a cache key.
    pub fn content_key(&self) -> Vec<u8> {
        let mut key = Vec::with_capacity(16 + self.data.len() * 4);
        key.extend_from_slice(&self.p.to_le_bytes());
        key.extend_from_slice(&(self.rows as u64).to_le_bytes());
        key.extend_from_slice(&(self.cols as u64).to_le_bytes());
        for &v in &self.data {
            key.extend_from_slice(&(v as u32).to_le_bytes());
        }
        key
    }

    fn check_same_shape(&self, other: &Matrix, op: &'static str) -> Result<()> {
        if self.p != other.p {
            return Err(LinalgError::ModulusMismatch {
                op,
                lhs: self.p,
                rhs: other.p,
            });
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                op,
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: other.rows,
                rhs_cols: other.cols,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other, "add")?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        Ok(Matrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other, "sub")?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + self.p - b) % self.p)
            .collect();
        Ok(Matrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|&a| (self.p - a) % self.p).collect();
        Matrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let c = c % self.p;
        let data = self.data.iter().map(|&a| a * c % self.p).collect();
        Matrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Matrix product `self * other` (composition of column-vector maps).
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.p != other.p {
            return Err(LinalgError::ModulusMismatch {
                op: "mul",
                lhs: self.p,
                rhs: other.p,
            });
        }
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "mul",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: other.rows,
                rhs_cols: other.cols,
            });
        }
        let mut out = Matrix::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: u128 = 0;
                for k in 0..self.cols {
                    acc += u128::from(self.get(i, k)) * u128::from(other.get(k, j));
                }
                out.data[i * other.cols + j] = (acc % u128::from(self.p)) as u64;
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    /// Kronecker product: `(A ⊗ B)[(i*rB + r), (j*cB + s)] = A[i,j] * B[r,s]`.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        if self.p != other.p {
            return Err(LinalgError::ModulusMismatch {
                op: "kron",
                lhs: self.p,
                rhs: other.p,
            });
        }
        let mut out = Matrix::zero(self.p, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for r in 0..other.rows {
                    for s in 0..other.cols {
                        let v = a * other.get(r, s) % self.p;
                        out.data[(i * other.rows + r) * out.cols + (j * other.cols + s)] = v;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.p != other.p {
            return Err(LinalgError::ModulusMismatch {
                op: "hstack",
                lhs: self.p,
                rhs: other.p,
            });
        }
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "hstack",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: other.rows,
                rhs_cols: other.cols,
            });
        }
        let mut out = Matrix::zero(self.p, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * out.cols + j] = self.get(i, j);
            }
            for j in 0..other.cols {
                out.data[i * out.cols + self.cols + j] = other.get(i, j);
            }
        }
        Ok(out)
    }

    /// Vertical concatenation (`self` on top).
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.p != other.p {
            return Err(LinalgError::ModulusMismatch {
                op: "vstack",
                lhs: self.p,
                rhs: other.p,
            });
        }
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                op: "vstack",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: other.rows,
                rhs_cols: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Assembles a block matrix from a grid of blocks. Every row of blocks
    /// must have the same height and every column of blocks the same width.
    pub fn block(p: u64, grid: &[Vec<&Matrix>]) -> Result<Matrix> {
        if grid.is_empty() || grid[0].is_empty() {
            return Ok(Matrix::zero(p, 0, 0));
        }
        let mut rows_out: Option<Matrix> = None;
        for row in grid {
            let mut acc: Option<Matrix> = None;
            for &blockm in row {
                acc = Some(match acc {
                    None => blockm.clone(),
                    Some(a) => a.hstack(blockm)?,
                });
            }
            let band = acc.expect("nonempty block row");
            rows_out = Some(match rows_out {
                None => band,
                Some(r) => r.vstack(&band)?,
            });
        }
        Ok(rows_out.expect("nonempty block grid"))
    }

    /// Extracts the listed columns, in the given order.
    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zero(self.p, self.rows, idx.len());
        for (t, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                out.data[i * idx.len() + t] = self.get(i, j);
            }
        }
        out
    }

    /// Extracts the listed rows, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zero(self.p, idx.len(), self.cols);
        for (t, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out.data[t * self.cols + j] = self.get(i, j);
            }
        }
        out
    }

    /// Extracts the contiguous row band `[start, start+len)`.
    pub fn row_band(&self, start: usize, len: usize) -> Matrix {
        self.select_rows(&(start..start + len).collect::<Vec<_>>())
    }

    /// Reduced row echelon form together with the pivot column indices.
    ///
    /// Pivots are unit, pivot columns are cleared above and below, and pivot
    /// selection is deterministic (first nonzero entry scanning top-down), so
    /// the result is a canonical representative of the row space.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.p;
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(r * m.cols + j, pr * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(r, c), p);
            for j in 0..m.cols {
                let v = m.get(r, j) * inv % p;
                m.data[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = (m.get(i, j) + (p - factor) * m.get(r, j)) % p;
                    m.data[i * m.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the null space, returned as the columns of a
    /// `cols x nullity` matrix. Free columns are enumerated in ascending
    /// order, and each basis vector has a `1` in its free coordinate.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zero(p, self.cols, free.len());
        for (t, &fc) in free.iter().enumerate() {
            out.data[fc * free.len() + t] = 1 % p;
            for (pi, &pc) in pivots.iter().enumerate() {
                // Row `pi` of the rref reads x[pc] + sum(r[pi, free]) = 0.
                let v = r.get(pi, fc);
                out.data[pc * free.len() + t] = (p - v) % p;
            }
        }
        out
    }

    /// Solves `self * X = rhs` for all columns of `rhs` at once.
    ///
    /// Returns `Ok(None)` when the system is inconsistent, otherwise the
    /// particular solution with every free variable set to zero.
    ///
    /// # Errors
    ///
    /// Shape or modulus mismatch between `self` and `rhs`.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        if self.p != rhs.p {
            return Err(LinalgError::ModulusMismatch {
                op: "solve",
                lhs: self.p,
                rhs: rhs.p,
            });
        }
        if self.rows != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "solve",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: rhs.rows,
                rhs_cols: rhs.cols,
            });
        }
        let aug = self.hstack(rhs)?;
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zero(self.p, self.cols, rhs.cols);
        for (pi, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.data[pc * rhs.cols + j] = r.get(pi, self.cols + j);
            }
        }
        Ok(Some(x))
    }

    /// Solves `X * self = rhs` (useful for factoring through epimorphisms).
    pub fn solve_left(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        Ok(self
            .transpose()
            .solve(&rhs.transpose())?
            .map(|x| x.transpose()))
    }

    /// Inverse of a square matrix, or `None` when singular.
    ///
    /// # Errors
    ///
    /// The matrix must be square.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                op: "inverse",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let id = Matrix::identity(self.p, self.rows);
        let sol = self.solve(&id)?;
        match sol {
            Some(x) if self.mul(&x).expect("shape checked").is_identity() => Ok(Some(x)),
            _ => Ok(None),
        }
    }

    /// A canonical basis of the column space, as the columns of a
    /// `rows x rank` matrix (rref of the transpose, transposed back).
    pub fn column_space_basis(&self) -> Matrix {
        let (r, pivots) = self.transpose().rref();
        r.select_rows(&(0..pivots.len()).collect::<Vec<_>>()).transpose()
    }

    /// Tests whether every column of `other` lies in the column space of
    /// `self`.
    pub fn contains_columns(&self, other: &Matrix) -> Result<bool> {
        Ok(self.solve(other)?.is_some())
    }
}

/// A quotient `k^n -> k^n / S` presented by a projection and a section.
///
/// `proj` is `q x n`, `sect` is `n x q`, and `proj * sect = id`. The kernel of
/// `proj` is exactly the subspace `S` the quotient was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub proj: Matrix,
    pub sect: Matrix,
}

impl Quotient {
    /// Dimension of the quotient space.
    pub fn dim(&self) -> usize {
        self.proj.rows()
    }
}

/// Builds the quotient of `k^n` by the span of the columns of `spanning`.
///
/// The projection sends a vector to its coordinates at non-pivot positions
/// after reduction against the canonical (rref) basis of the subspace; the
/// section embeds those coordinates back at the non-pivot positions. This
/// pins one deterministic basis for the quotient.
pub fn quotient_by_columns(n: usize, spanning: &Matrix) -> Result<Quotient> {
    if spanning.rows() != n {
        return Err(LinalgError::DimensionMismatch {
            op: "quotient_by_columns",
            lhs_rows: n,
            lhs_cols: 0,
            rhs_rows: spanning.rows(),
            rhs_cols: spanning.cols(),
        });
    }
    let p = spanning.p();
    let (r, pivots) = spanning.transpose().rref();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let q = free.len();
    let mut proj = Matrix::zero(p, q, n);
    for (t, &fc) in free.iter().enumerate() {
        proj.set(t, fc, 1);
    }
    for (pi, &pc) in pivots.iter().enumerate() {
        // Reducing the unit vector at a pivot position subtracts that rref row.
        for (t, &fc) in free.iter().enumerate() {
            proj.set(t, pc, (p - r.get(pi, fc)) % p);
        }
    }
    let mut sect = Matrix::zero(p, n, q);
    for (t, &fc) in free.iter().enumerate() {
        sect.set(fc, t, 1);
    }
    Ok(Quotient { proj, sect })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(p: u64, rows: &[&[u64]]) -> Matrix {
        Matrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rref_idempotent_rank_one_over_f2() {
        let a = m(2, &[&[1, 1], &[1, 1]]);
        let (r, pivots) = a.rref();
        assert_eq!(r, m(2, &[&[1, 1], &[0, 0]]));
        assert_eq!(pivots, vec![0]);
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn rref_permutation_over_f3() {
        let a = m(3, &[&[0, 1], &[1, 0]]);
        let (r, pivots) = a.rref();
        assert_eq!(r, Matrix::identity(3, 2));
        assert_eq!(pivots, vec![0, 1]);
    }

    #[test]
    fn rref_scales_pivots_to_one() {
        let a = m(5, &[&[2, 4], &[1, 2]]);
        let (r, pivots) = a.rref();
        assert_eq!(r, m(5, &[&[1, 2], &[0, 0]]));
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn kernel_of_sum_functional_over_f2() {
        let a = m(2, &[&[1, 1]]);
        let k = a.kernel_basis();
        assert_eq!(k, m(2, &[&[1], &[1]]));
        assert!(a.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn kernel_has_unit_free_coordinates() {
        let a = m(3, &[&[1, 2, 0], &[0, 0, 1]]);
        let k = a.kernel_basis();
        // Free column is 1; x0 = -2*x1 = 1 mod 3.
        assert_eq!(k, m(3, &[&[1], &[1], &[0]]));
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = Matrix::identity(2, 2);
        let i3 = Matrix::identity(2, 3);
        assert_eq!(i2.kron(&i3).unwrap(), Matrix::identity(2, 6));
    }

    #[test]
    fn kron_indexing_convention() {
        let a = m(3, &[&[0, 1], &[2, 0]]);
        let b = m(3, &[&[1, 1], &[0, 1]]);
        let k = a.kron(&b).unwrap();
        // (A ⊗ B)[(i*2+r),(j*2+s)] = A[i,j]*B[r,s].
        assert_eq!(k.get(0, 2), 1); // i=0,r=0,j=1,s=0 -> A[0,1]*B[0,0]
        assert_eq!(k.get(3, 1), 2); // i=1,r=1,j=0,s=1 -> A[1,0]*B[1,1]
        assert_eq!(k.get(0, 0), 0);
    }

    #[test]
    fn solve_finds_particular_solution() {
        let a = m(2, &[&[1, 1, 0], &[0, 1, 1]]);
        let b = m(2, &[&[1], &[0]]);
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(a.mul(&x).unwrap(), b);
        // Free variable (column 2) pinned to zero.
        assert_eq!(x.get(2, 0), 0);
    }

    #[test]
    fn solve_reports_inconsistency() {
        let a = m(2, &[&[1, 1], &[1, 1]]);
        let b = m(2, &[&[1], &[0]]);
        assert_eq!(a.solve(&b).unwrap(), None);
    }

    #[test]
    fn solve_left_factors_through_rows() {
        let a = m(5, &[&[1, 2], &[0, 1]]);
        let b = m(5, &[&[2, 4], &[1, 3]]);
        let x = a.solve_left(&b).unwrap().unwrap();
        assert_eq!(x.mul(&a).unwrap(), b);
    }

    #[test]
    fn inverse_roundtrip_over_f7() {
        let a = m(7, &[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&a).unwrap().is_identity());
        let sing = m(7, &[&[1, 2], &[2, 4]]);
        assert_eq!(sing.inverse().unwrap(), None);
    }

    #[test]
    fn block_assembly_matches_manual_layout() {
        let a = Matrix::identity(2, 2);
        let z = Matrix::zero(2, 2, 1);
        let b = m(2, &[&[1], &[1]]);
        let g = Matrix::block(2, &[vec![&a, &b], vec![&z.transpose(), &m(2, &[&[1]])]]).unwrap();
        assert_eq!(g, m(2, &[&[1, 0, 1], &[0, 1, 1], &[0, 0, 1]]));
    }

    #[test]
    fn quotient_projection_kills_exactly_the_subspace() {
        // Quotient of F_2^3 by span{(1,1,0)}.
        let s = m(2, &[&[1], &[1], &[0]]);
        let q = quotient_by_columns(3, &s).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.proj.mul(&s).unwrap().is_zero());
        assert!(q.proj.mul(&q.sect).unwrap().is_identity());
        assert_eq!(q.proj.kernel_basis().rank(), 1);
    }

    #[test]
    fn column_space_basis_is_canonical() {
        let a = m(2, &[&[1, 1, 0], &[1, 1, 1], &[0, 0, 1]]);
        let b = a.column_space_basis();
        assert_eq!(b.cols(), 2);
        assert!(b.contains_columns(&a).unwrap());
        assert!(a.contains_columns(&b).unwrap());
    }

    #[test]
    fn modulus_mismatch_is_an_error() {
        let a = Matrix::identity(2, 2);
        let b = Matrix::identity(3, 2);
        assert!(matches!(
            a.mul(&b),
            Err(LinalgError::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn prime_check_accepts_and_rejects() {
        for p in [2u64, 3, 5, 7, 31, 2147483647] {
            assert!(is_supported_prime(p), "{p} should be accepted");
        }
        for p in [0u64, 1, 4, 9, 91, 1 << 31, (1 << 31) + 11] {
            assert!(!is_supported_prime(p), "{p} should be rejected");
        }
    }

    fn arb_matrix(p: u64, max: usize) -> impl Strategy<Value = Matrix> {
        (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(0..p, r * c).prop_map(move |data| Matrix {
                p,
                rows: r,
                cols: c,
                data,
            })
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(a in arb_matrix(5, 5)) {
            let (r, piv) = a.rref();
            let (rr, piv2) = r.rref();
            prop_assert_eq!(r, rr);
            prop_assert_eq!(piv, piv2);
        }

        #[test]
        fn kernel_vectors_are_killed(a in arb_matrix(3, 5)) {
            let k = a.kernel_basis();
            prop_assert!(a.mul(&k).unwrap().is_zero());
            prop_assert_eq!(a.rank() + k.cols(), a.cols());
        }

        #[test]
        fn solve_recovers_constructed_rhs(a in arb_matrix(7, 4), xs in proptest::collection::vec(0u64..7, 4)) {
            let x = Matrix::from_col(7, &xs[..a.cols()]);
            let b = a.mul(&x).unwrap();
            let sol = a.solve(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(a.mul(&sol).unwrap(), b);
        }

        #[test]
        fn kron_rank_is_multiplicative(a in arb_matrix(3, 3), b in arb_matrix(3, 3)) {
            let k = a.kron(&b).unwrap();
            prop_assert_eq!(k.rank(), a.rank() * b.rank());
        }

        #[test]
        fn transpose_involutive(a in arb_matrix(5, 5)) {
            prop_assert_eq!(a.transpose().transpose(), a);
        }
    }
}
