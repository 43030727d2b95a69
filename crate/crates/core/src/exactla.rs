//! Dense exact matrices over a [`FieldSpec`], reduced row echelon form and the
//! derived constructions (kernels, cokernels, solving, pullbacks, pushouts).
//!
//! Pivot choice is always the leftmost nonzero column, so every basis produced
//! here is a deterministic function of the input.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::field::{FieldSpec, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
}

fn dim_err(msg: impl Into<String>) -> LinAlgError {
    LinAlgError::DimensionMismatch(msg.into())
}

/// Row-major dense matrix. Column vectors are acted on from the left.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}]", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            write!(f, "\n  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_vec(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, LinAlgError> {
        if data.len() != rows * cols {
            return Err(dim_err(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(s) = data.iter().find(|s| s.field() != field) {
            return Err(LinAlgError::FieldMismatch(field, s.field()));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    /// Builds a matrix from integer rows; all rows must have equal length.
    pub fn from_i64_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Matrix::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged integer rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(*v));
            }
        }
        m
    }

    /// Column vector from entries.
    pub fn column(field: FieldSpec, entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        Matrix { field, rows: n, cols: 1, data: entries }
    }

    pub fn random<R: Rng + ?Sized>(field: FieldSpec, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| field.random(rng)).collect();
        Matrix { field, rows, cols, data }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col_vec(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// Largest entry height (rationals only); used to watch coefficient growth.
    pub fn max_height(&self) -> u64 {
        self.data.iter().map(Scalar::height).max().unwrap_or(0)
    }

    fn check_field(&self, other: &Matrix) -> Result<(), LinAlgError> {
        if self.field != other.field {
            return Err(LinAlgError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(dim_err(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let p = a * b;
                    out.data[i * other.cols + j] += &p;
                }
            }
        }
        Ok(out)
    }

    /// `self * other`, panicking on shape mismatch. For internal use where
    /// shapes are guaranteed by construction.
    pub fn dot(&self, other: &Matrix) -> Matrix {
        self.mul(other).expect("matrix shapes agree by construction")
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(dim_err("sum of differently shaped matrices"));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(dim_err("difference of differently shaped matrices"));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|a| -a).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// Kronecker product; row index `i * other.rows + k`, column `j * other.cols + l`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(dim_err("hstack of matrices with different row counts"));
        }
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        Ok(out)
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(dim_err("vstack of matrices with different column counts"));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn hstack_all(field: FieldSpec, rows: usize, blocks: &[Matrix]) -> Matrix {
        let mut out = Matrix::zeros(field, rows, 0);
        for b in blocks {
            out = out.hstack(b).expect("hstack_all shapes");
        }
        out
    }

    pub fn vstack_all(field: FieldSpec, cols: usize, blocks: &[Matrix]) -> Matrix {
        let mut out = Matrix::zeros(field, 0, cols);
        for b in blocks {
            out = out.vstack(b).expect("vstack_all shapes");
        }
        out
    }

    pub fn block_diag(field: FieldSpec, blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.set(r0 + r, c0 + c, b.get(r, c).clone());
            }
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                let v = b.get(r, c);
                if !v.is_zero() {
                    self.add_at(r0 + r, c0 + c, v);
                }
            }
        }
    }

    pub fn submatrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                out.set(i, c, self.get(r, c).clone());
            }
        }
        out
    }

    /// Reduced row echelon form with leftmost pivots.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(sel) = (prow..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            if sel != prow {
                for j in 0..m.cols {
                    m.data.swap(sel * m.cols + j, prow * m.cols + j);
                }
            }
            let inv = m.get(prow, c).inverse().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(prow, j) * &inv;
                m.set(prow, j, v);
            }
            for r in 0..m.rows {
                if r == prow {
                    continue;
                }
                let factor = m.get(r, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pv = m.get(prow, j);
                    if pv.is_zero() {
                        continue;
                    }
                    let delta = &factor * pv;
                    m.data[r * m.cols + j] -= &delta;
                }
            }
            pivots.push(c);
            prow += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Columns form a basis of the null space; one vector per free column.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { matrix: r, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, self.field.one());
            for (i, &p) in pivots.iter().enumerate() {
                out.set(p, k, -r.get(i, f));
            }
        }
        out
    }

    /// Columns forming a basis of the column space, taken from the original pivot columns.
    pub fn image_basis(&self) -> Matrix {
        let pivots = self.rref().pivots;
        self.select_columns(&pivots)
    }

    /// Surjection `p` with `p * self = 0` and kernel equal to the column space.
    /// Returns `(p, dim coker)`.
    pub fn cokernel_projection(&self) -> (Matrix, usize) {
        let k = self.transpose().kernel_basis();
        let d = k.cols;
        (k.transpose(), d)
    }

    /// Some `x` with `self * x = b`, or `None` if inconsistent. Free variables are zero.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>, LinAlgError> {
        self.check_field(b)?;
        if b.rows != self.rows {
            return Err(dim_err(format!("solve: {} rows vs rhs with {} rows", self.rows, b.rows)));
        }
        let aug = self.hstack(b)?;
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(i, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Some `x` with `x * self = b`.
    pub fn solve_left(&self, b: &Matrix) -> Result<Option<Matrix>, LinAlgError> {
        Ok(self.transpose().solve(&b.transpose())?.map(|x| x.transpose()))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let id = Matrix::identity(self.field, self.rows);
        if self.rank() != self.rows {
            return None;
        }
        self.solve(&id).ok().flatten()
    }

    /// Standard basis vectors complementing the column span of `self` in `k^n`:
    /// the coordinates that are not pivots of the transposed echelon form.
    pub fn complement_basis(&self) -> Matrix {
        let n = self.rows;
        let pivots = self.transpose().rref().pivots;
        let chosen: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
        let mut out = Matrix::zeros(self.field, n, chosen.len());
        for (k, &i) in chosen.iter().enumerate() {
            out.set(i, k, self.field.one());
        }
        out
    }

    /// True if the column spans agree.
    pub fn span_eq(&self, other: &Matrix) -> bool {
        let r1 = self.rank();
        let r2 = other.rank();
        if r1 != r2 {
            return false;
        }
        self.hstack(other).map(|m| m.rank() == r1).unwrap_or(false)
    }

    /// True if every column of `other` lies in the column span of `self`.
    pub fn span_contains(&self, other: &Matrix) -> bool {
        let r1 = self.rank();
        self.hstack(other).map(|m| m.rank() == r1).unwrap_or(false)
    }

    /// Column basis of the intersection of two column spans in `k^n`.
    pub fn span_intersection(&self, other: &Matrix) -> Matrix {
        let stacked = self.hstack(&other.neg()).expect("same ambient");
        let k = stacked.kernel_basis();
        let coeffs = k.submatrix(0, self.cols, 0, k.cols);
        self.dot(&coeffs).image_basis()
    }
}

/// For `f: A -> C` and `g: B -> C`, maps `p_a: P -> A`, `p_b: P -> B` with
/// `f p_a = g p_b`, where `P = {(a, b) : f a = g b}` with its kernel basis.
pub fn pullback_pair(f: &Matrix, g: &Matrix) -> Result<(Matrix, Matrix), LinAlgError> {
    if f.rows != g.rows {
        return Err(dim_err("pullback of maps with different codomains"));
    }
    let stacked = f.hstack(&g.neg())?;
    let k = stacked.kernel_basis();
    let pa = k.submatrix(0, f.cols, 0, k.cols);
    let pb = k.submatrix(f.cols, g.cols, 0, k.cols);
    Ok((pa, pb))
}

/// For `f: C -> A` and `g: C -> B`, maps `i_a: A -> P`, `i_b: B -> P` with
/// `i_a f = i_b g`, where `P = (A ⊕ B) / {(f c, -g c)}`.
pub fn pushout_pair(f: &Matrix, g: &Matrix) -> Result<(Matrix, Matrix), LinAlgError> {
    if f.cols != g.cols {
        return Err(dim_err("pushout of maps with different domains"));
    }
    let stacked = f.vstack(&g.neg())?;
    let (p, _) = stacked.cokernel_projection();
    let ia = p.submatrix(0, p.rows, 0, f.rows);
    let ib = p.submatrix(0, p.rows, f.rows, g.rows);
    Ok((ia, ib))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f7() -> FieldSpec {
        FieldSpec::Prime(7)
    }

    #[test]
    fn kernel_of_nilpotent_block() {
        let q = FieldSpec::Rationals;
        let m = Matrix::from_i64_rows(q, &[vec![0, 0], vec![1, 0]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k, Matrix::from_i64_rows(q, &[vec![0], vec![1]]));
    }

    #[test]
    fn solve_over_f7() {
        let m = Matrix::from_i64_rows(f7(), &[vec![2]]);
        let b = Matrix::from_i64_rows(f7(), &[vec![1]]);
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(x, Matrix::from_i64_rows(f7(), &[vec![4]]));
    }

    #[test]
    fn pullback_along_identity() {
        let q = FieldSpec::Rationals;
        let f = Matrix::from_i64_rows(q, &[vec![1, 0]]);
        let g = Matrix::identity(q, 1);
        let (pa, pb) = pullback_pair(&f, &g).unwrap();
        assert_eq!(pa.cols(), 2);
        assert_eq!(f.dot(&pa), g.dot(&pb));
        assert_eq!(pa.rank(), 2);
    }

    #[test]
    fn inconsistent_system() {
        let q = FieldSpec::Rationals;
        let m = Matrix::from_i64_rows(q, &[vec![1, 1], vec![2, 2]]);
        let b = Matrix::from_i64_rows(q, &[vec![1], vec![3]]);
        assert!(m.solve(&b).unwrap().is_none());
    }

    #[test]
    fn shape_errors_are_reported() {
        let q = FieldSpec::Rationals;
        let a = Matrix::zeros(q, 2, 3);
        let b = Matrix::zeros(q, 2, 3);
        assert!(matches!(a.mul(&b), Err(LinAlgError::DimensionMismatch(_))));
        let c = Matrix::zeros(f7(), 3, 1);
        assert!(matches!(a.mul(&c), Err(LinAlgError::FieldMismatch(..))));
    }

    #[test]
    fn complement_extends_to_full_rank() {
        let q = FieldSpec::Rationals;
        let s = Matrix::from_i64_rows(q, &[vec![1], vec![1], vec![0]]);
        let c = s.complement_basis();
        assert_eq!(c.cols(), 2);
        assert_eq!(s.hstack(&c).unwrap().rank(), 3);
    }

    fn arb_matrix(field: FieldSpec) -> impl Strategy<Value = Matrix> {
        (0usize..5, 0usize..5, any::<u64>()).prop_map(move |(r, c, seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Matrix::random(field, r, c, &mut rng)
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix(FieldSpec::Prime(5))) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
            prop_assert!(m.dot(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn cokernel_is_exact(m in arb_matrix(FieldSpec::Rationals)) {
            let (p, d) = m.cokernel_projection();
            prop_assert_eq!(d, m.rows() - m.rank());
            prop_assert!(p.dot(&m).is_zero());
            prop_assert_eq!(p.rank(), d);
        }

        #[test]
        fn solve_recovers_consistent_rhs(m in arb_matrix(FieldSpec::Prime(7)), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x0 = Matrix::random(FieldSpec::Prime(7), m.cols(), 2, &mut rng);
            let b = m.dot(&x0);
            let x = m.solve(&b).unwrap().unwrap();
            prop_assert_eq!(m.dot(&x), b);
        }

        #[test]
        fn rref_is_idempotent(m in arb_matrix(FieldSpec::Prime(11))) {
            let r = m.rref();
            let r2 = r.matrix.rref();
            prop_assert_eq!(r.matrix, r2.matrix);
            prop_assert_eq!(r.pivots, r2.pivots);
        }

        #[test]
        fn pushout_square_commutes(seed in any::<u64>(), a in 0usize..4, b in 0usize..4, c in 0usize..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let fld = FieldSpec::Prime(3);
            let f = Matrix::random(fld, a, c, &mut rng);
            let g = Matrix::random(fld, b, c, &mut rng);
            let (ia, ib) = pushout_pair(&f, &g).unwrap();
            prop_assert_eq!(ia.dot(&f), ib.dot(&g));
            // dim P = a + b - rank [f; -g]
            let rk = f.vstack(&g.neg()).unwrap().rank();
            prop_assert_eq!(ia.rows(), a + b - rk);
        }
    }
}
