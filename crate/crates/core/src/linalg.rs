//! Matrices over `F_q`, reduced row echelon forms, and subspaces of `F_q^l`
//! held in canonical form.
//!
//! A [`Subspace`] always stores its basis in reduced row echelon form: nonzero
//! rows, strictly increasing pivots, pivot entries 1, pivot columns zero away
//! from the pivot. Two subspaces are equal iff those bases are identical, so
//! `Eq` and `Hash` are structural.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::codes::RankMetricCode;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, FieldSpec};

/// Gauss-Jordan elimination in place. Returns the pivot columns; rows past
/// `pivots.len()` are zero afterwards.
pub(crate) fn reduce_rows(field: &FieldSpec, rows: &mut [Vec<FieldElement>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv_nonzero(rows[r][c]);
        if inv != FieldElement::ONE {
            for x in rows[r][c..].iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = field.neg(row[c]);
            for j in c..ncols {
                if !pivot_row[j].is_zero() {
                    row[j] = field.add(row[j], field.mul(factor, pivot_row[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of up to 64-column binary rows packed one per word.
#[inline]
pub(crate) fn rank_gf2_words(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for row in rows[i + 1..].iter_mut() {
            if *row & low != 0 {
                *row ^= pivot;
            }
        }
    }
    rank
}

/// Rank of a dense row-major `nrows x ncols` buffer of element indices,
/// destroying the buffer.
pub(crate) fn rank_dense(field: &FieldSpec, buf: &mut [u16], nrows: usize, ncols: usize) -> usize {
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| buf[i * ncols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in c..ncols {
                buf.swap(r * ncols + j, pr * ncols + j);
            }
        }
        let inv = field.inv_nonzero(FieldElement(buf[r * ncols + c]));
        for i in r + 1..nrows {
            let lead = buf[i * ncols + c];
            if lead == 0 {
                continue;
            }
            let factor = field.neg(field.mul(FieldElement(lead), inv));
            for j in c..ncols {
                let pj = buf[r * ncols + j];
                if pj != 0 {
                    let t = field.mul(factor, FieldElement(pj));
                    buf[i * ncols + j] = field.add(FieldElement(buf[i * ncols + j]), t).0;
                }
            }
        }
        r += 1;
    }
    r
}

/// An `nrows x ncols` matrix over a shared field, stored row-major.
#[derive(Clone)]
pub struct Matrix {
    field: Field,
    nrows: usize,
    ncols: usize,
    data: Vec<FieldElement>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.nrows == other.nrows
            && self.ncols == other.ncols
            && self.data == other.data
            && *self.field == *other.field
    }
}

impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix(F_{}, {:?})", self.field.q(), self.to_index_rows())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, nrows: usize, ncols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            nrows,
            ncols,
            data: vec![FieldElement::ZERO; nrows * ncols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = FieldElement::ONE;
        }
        m
    }

    /// `E_{i,j}` with zero-based indices.
    pub fn unit(field: &Field, nrows: usize, ncols: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zeros(field, nrows, ncols);
        m.data[i * ncols + j] = FieldElement::ONE;
        m
    }

    /// Builds a matrix from rows of element indices, validating shape and range.
    pub fn from_rows<R: AsRef<[u32]>>(field: &Field, rows: &[R]) -> Result<Matrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != ncols {
                return Err(Error::Shape("ragged matrix rows".into()));
            }
            for &x in row {
                data.push(field.element(x as usize)?);
            }
        }
        Ok(Matrix {
            field: field.clone(),
            nrows,
            ncols,
            data,
        })
    }

    pub fn from_fn(
        field: &Field,
        nrows: usize,
        ncols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Matrix {
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field: field.clone(),
            nrows,
            ncols,
            data,
        }
    }

    /// Inverse of [`Matrix::vectorize`].
    pub fn from_vector(field: &Field, nrows: usize, ncols: usize, v: &[FieldElement]) -> Result<Matrix> {
        if v.len() != nrows * ncols {
            return Err(Error::Shape(format!(
                "vector of length {} cannot fill a {nrows}x{ncols} matrix",
                v.len()
            )));
        }
        Ok(Matrix {
            field: field.clone(),
            nrows,
            ncols,
            data: v.to_vec(),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.ncols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.data[i * self.ncols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.nrows).map(|i| self.get(i, j)).collect()
    }

    /// Row-major vectorization, the identification with `F_q^{nm}` used
    /// throughout the crate.
    pub fn vectorize(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn to_index_rows(&self) -> Vec<Vec<u32>> {
        (0..self.nrows)
            .map(|i| self.row(i).iter().map(|x| x.0 as u32).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.ncols, self.nrows, |i, j| self.get(j, i))
    }

    fn check_same_field(&self, other: &Matrix) -> Result<()> {
        if *self.field != *other.field {
            return Err(Error::Shape("matrices over different fields".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Matrix {
            field: self.field.clone(),
            nrows: self.nrows,
            ncols: self.ncols,
            data,
        })
    }

    pub fn scale(&self, c: FieldElement) -> Matrix {
        let f = &self.field;
        Matrix {
            field: self.field.clone(),
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(|&a| f.mul(c, a)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.ncols != other.nrows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(&self.field, self.nrows, other.ncols);
        for i in 0..self.nrows {
            for t in 0..self.ncols {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = other.get(t, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Rank over `F_q`. Binary matrices with at most 64 columns use packed
    /// XOR elimination.
    pub fn rank(&self) -> usize {
        if self.field.q() == 2 && self.ncols <= 64 {
            let mut words: Vec<u64> = (0..self.nrows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .enumerate()
                        .fold(0u64, |w, (j, x)| w | ((x.0 as u64) << j))
                })
                .collect();
            rank_gf2_words(&mut words)
        } else {
            let mut buf: Vec<u16> = self.data.iter().map(|x| x.0).collect();
            rank_dense(&self.field, &mut buf, self.nrows, self.ncols)
        }
    }

    /// Canonical reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows: Vec<Vec<FieldElement>> = (0..self.nrows).map(|i| self.row(i).to_vec()).collect();
        let pivots = reduce_rows(&self.field, &mut rows, self.ncols);
        let data = rows.into_iter().flatten().collect();
        (
            Matrix {
                field: self.field.clone(),
                nrows: self.nrows,
                ncols: self.ncols,
                data,
            },
            pivots,
        )
    }

    pub fn is_invertible(&self) -> bool {
        self.nrows == self.ncols && self.rank() == self.nrows
    }

    /// Subspace of `F_q^ncols` spanned by the rows.
    pub fn row_space(&self) -> Subspace {
        let rows = (0..self.nrows).map(|i| self.row(i).to_vec()).collect();
        Subspace::from_rows_unchecked(&self.field, self.ncols, rows)
    }

    /// Subspace of `F_q^nrows` spanned by the columns.
    pub fn col_space(&self) -> Subspace {
        self.transpose().row_space()
    }
}

/// `Tr(M N^t)`, which is the dot product of the row-major vectorizations.
pub fn trace_pairing(a: &Matrix, b: &Matrix) -> Result<FieldElement> {
    a.check_same_field(b)?;
    if a.nrows != b.nrows || a.ncols != b.ncols {
        return Err(Error::Shape(format!(
            "trace pairing of {}x{} with {}x{}",
            a.nrows, a.ncols, b.nrows, b.ncols
        )));
    }
    Ok(dot(&a.field, &a.data, &b.data))
}

pub(crate) fn dot(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter()
        .zip(b)
        .fold(FieldElement::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// A subspace of `F_q^l` with a canonical RREF basis.
#[derive(Clone)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis && *self.field == *other.field
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.basis.hash(state);
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<u16>> = self.basis.iter().map(|r| r.iter().map(|x| x.0).collect()).collect();
        write!(f, "Subspace(F_{}^{}, {:?})", self.field.q(), self.ambient, rows)
    }
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace::coordinate(field, ambient, 0..ambient)
    }

    /// Span of the standard basis vectors with the given zero-based indices.
    pub fn coordinate(field: &Field, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Subspace {
        let rows = indices
            .into_iter()
            .map(|i| {
                let mut v = vec![FieldElement::ZERO; ambient];
                v[i] = FieldElement::ONE;
                v
            })
            .collect();
        Subspace::from_rows_unchecked(field, ambient, rows)
    }

    /// Span of the given vectors (element indices), validated.
    pub fn from_vectors<R: AsRef<[u32]>>(field: &Field, ambient: usize, vectors: &[R]) -> Result<Subspace> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            let v = v.as_ref();
            if v.len() != ambient {
                return Err(Error::Shape(format!(
                    "vector of length {} in F_q^{ambient}",
                    v.len()
                )));
            }
            rows.push(
                v.iter()
                    .map(|&x| field.element(x as usize))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(Subspace::from_rows_unchecked(field, ambient, rows))
    }

    pub fn from_elements(field: &Field, ambient: usize, rows: Vec<Vec<FieldElement>>) -> Result<Subspace> {
        if let Some(r) = rows.iter().find(|r| r.len() != ambient) {
            return Err(Error::Shape(format!("vector of length {} in F_q^{ambient}", r.len())));
        }
        Ok(Subspace::from_rows_unchecked(field, ambient, rows))
    }

    pub(crate) fn from_rows_unchecked(field: &Field, ambient: usize, mut rows: Vec<Vec<FieldElement>>) -> Subspace {
        let pivots = reduce_rows(field, &mut rows, ambient);
        rows.truncate(pivots.len());
        Subspace {
            field: field.clone(),
            ambient,
            basis: rows,
            pivots,
        }
    }

    /// Wraps rows the caller guarantees are already canonical.
    pub(crate) fn from_canonical(field: &Field, ambient: usize, basis: Vec<Vec<FieldElement>>, pivots: Vec<usize>) -> Subspace {
        debug_assert_eq!(basis.len(), pivots.len());
        Subspace {
            field: field.clone(),
            ambient,
            basis,
            pivots,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<FieldElement>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis_indices(&self) -> Vec<Vec<u32>> {
        self.basis
            .iter()
            .map(|r| r.iter().map(|x| x.0 as u32).collect())
            .collect()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Shape(format!(
                "subspaces of F_q^{} and F_q^{}",
                self.ambient, other.ambient
            )));
        }
        if *self.field != *other.field {
            return Err(Error::Shape("subspaces over different fields".into()));
        }
        Ok(())
    }

    /// Residue of `v` after clearing every pivot coordinate.
    pub(crate) fn reduce_vector(&self, v: &mut [FieldElement]) {
        let f = &self.field;
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = v[p];
            if c.is_zero() {
                continue;
            }
            let factor = f.neg(c);
            for (x, &r) in v.iter_mut().zip(row).skip(p) {
                if !r.is_zero() {
                    *x = f.add(*x, f.mul(factor, r));
                }
            }
        }
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut w = v.to_vec();
        self.reduce_vector(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Subspace::from_rows_unchecked(&self.field, self.ambient, rows))
    }

    /// Orthogonal complement for the standard dot product.
    pub fn orthogonal(&self) -> Subspace {
        let f = &self.field;
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.ambient)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![FieldElement::ZERO; self.ambient];
                v[free] = FieldElement::ONE;
                for (row, &p) in self.basis.iter().zip(&self.pivots) {
                    v[p] = f.neg(row[free]);
                }
                v
            })
            .collect();
        Subspace::from_rows_unchecked(f, self.ambient, rows)
    }

    /// `A ∩ B = (A^⊥ + B^⊥)^⊥`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if self.is_full() || other.is_zero() {
            return Ok(other.clone());
        }
        if other.is_full() || self.is_zero() {
            return Ok(self.clone());
        }
        Ok(self.orthogonal().sum(&other.orthogonal())?.orthogonal())
    }
}

/// `Mat(V)`: every `n x m` matrix whose column space lies in `V ⊆ F_q^n`.
pub fn mat_support(v: &Subspace, m: usize) -> RankMetricCode {
    let n = v.ambient_dim();
    let field = v.field();
    let mut gens = Vec::with_capacity(v.dim() * m);
    for b in v.basis() {
        for j in 0..m {
            let mut x = vec![FieldElement::ZERO; n * m];
            for i in 0..n {
                x[i * m + j] = b[i];
            }
            gens.push(x);
        }
    }
    RankMetricCode::from_space(Subspace::from_rows_unchecked(field, n * m, gens), n, m)
        .expect("shape is consistent by construction")
}

/// `Mat(U)^t`: every `n x m` matrix whose row space lies in `U ⊆ F_q^m`.
pub fn mat_support_rows(u: &Subspace, n: usize) -> RankMetricCode {
    let m = u.ambient_dim();
    let field = u.field();
    let mut gens = Vec::with_capacity(u.dim() * n);
    for b in u.basis() {
        for i in 0..n {
            let mut x = vec![FieldElement::ZERO; n * m];
            x[i * m..(i + 1) * m].copy_from_slice(b);
            gens.push(x);
        }
    }
    RankMetricCode::from_space(Subspace::from_rows_unchecked(field, n * m, gens), n, m)
        .expect("shape is consistent by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_subspaces_all;

    fn f(q: u32) -> Field {
        FieldSpec::with_order(q).unwrap().into_shared()
    }

    fn mat(field: &Field, rows: &[&[u32]]) -> Matrix {
        Matrix::from_rows(field, rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f2 = f(2);
        assert_eq!(Matrix::zeros(&f2, 3, 3).rank(), 0);
        assert_eq!(Matrix::identity(&f2, 3).rank(), 3);
        assert_eq!(mat(&f2, &[&[1, 1], &[1, 1]]).rank(), 1);
    }

    #[test]
    fn rref_examples() {
        let f2 = f(2);
        let (r, piv) = Matrix::identity(&f2, 3).rref();
        assert_eq!(r, Matrix::identity(&f2, 3));
        assert_eq!(piv, vec![0, 1, 2]);

        let (r, piv) = mat(&f2, &[&[0, 1], &[0, 1]]).rref();
        assert_eq!(r, mat(&f2, &[&[0, 1], &[0, 0]]));
        assert_eq!(piv, vec![1]);

        // det [[2,1],[1,2]] = 3 = 0 in F_3, so rank 1: scale row 0 by 2^-1 = 2
        // giving (1,2), then row 1 - row 0 = (0,0).
        let f3 = f(3);
        let (r, piv) = mat(&f3, &[&[2, 1], &[1, 2]]).rref();
        assert_eq!(r, mat(&f3, &[&[1, 2], &[0, 0]]));
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn row_and_column_spaces() {
        let f2 = f(2);
        let e11 = Matrix::unit(&f2, 2, 2, 0, 0);
        assert_eq!(e11.col_space(), Subspace::coordinate(&f2, 2, [0]));
        assert!(Matrix::zeros(&f2, 2, 3).row_space().is_zero());
        let ones = mat(&f2, &[&[1, 1], &[1, 1]]);
        assert_eq!(ones.row_space(), Subspace::from_vectors(&f2, 2, &[[1u32, 1]]).unwrap());
    }

    #[test]
    fn trace_pairing_examples() {
        let f2 = f(2);
        let e11 = Matrix::unit(&f2, 2, 2, 0, 0);
        let e22 = Matrix::unit(&f2, 2, 2, 1, 1);
        assert_eq!(trace_pairing(&e11, &e11).unwrap(), FieldElement::ONE);
        assert_eq!(trace_pairing(&e11, &e22).unwrap(), FieldElement::ZERO);
        let ones = mat(&f2, &[&[1, 1], &[1, 1]]);
        assert_eq!(trace_pairing(&ones, &ones).unwrap(), FieldElement::ZERO);
        assert!(trace_pairing(&e11, &Matrix::zeros(&f2, 2, 3)).is_err());
    }

    #[test]
    fn trace_pairing_matches_matrix_trace() {
        let f3 = f(3);
        let a = mat(&f3, &[&[1, 2, 0], &[2, 2, 1]]);
        let b = mat(&f3, &[&[2, 1, 1], &[0, 2, 2]]);
        let prod = a.mul(&b.transpose()).unwrap();
        let tr = f3.add(prod.get(0, 0), prod.get(1, 1));
        assert_eq!(trace_pairing(&a, &b).unwrap(), tr);
        assert_eq!(trace_pairing(&a, &b).unwrap(), trace_pairing(&b, &a).unwrap());
    }

    #[test]
    fn subspace_operations() {
        let f2 = f(2);
        let e1 = Subspace::coordinate(&f2, 2, [0]);
        assert_eq!(e1.orthogonal(), Subspace::coordinate(&f2, 2, [1]));
        let a = Subspace::coordinate(&f2, 3, [0, 1]);
        let b = Subspace::coordinate(&f2, 3, [1, 2]);
        assert_eq!(a.intersect(&b).unwrap(), Subspace::coordinate(&f2, 3, [1]));
        let s = Subspace::coordinate(&f2, 3, [0]).sum(&Subspace::coordinate(&f2, 3, [1])).unwrap();
        assert_eq!(s, a);
        assert!(a.intersect(&Subspace::zero(&f2, 4)).is_err());
    }

    #[test]
    fn subspace_lattice_identities_exhaustive_f2_4() {
        let f2 = f(2);
        let all: Vec<Subspace> = enumerate_subspaces_all(&f2, 4, u64::MAX).unwrap().collect();
        assert_eq!(all.len(), 67);
        for a in &all {
            assert_eq!(a.orthogonal().orthogonal(), *a);
            assert_eq!(a.orthogonal().dim(), 4 - a.dim());
        }
        for a in all.iter().step_by(3) {
            for b in &all {
                let s = a.sum(b).unwrap();
                let i = a.intersect(b).unwrap();
                assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
                assert!(i.is_subspace_of(a) && i.is_subspace_of(b));
                assert!(a.is_subspace_of(&s) && b.is_subspace_of(&s));
            }
        }
    }

    #[test]
    fn mat_supports() {
        let f2 = f(2);
        let c = mat_support(&Subspace::coordinate(&f2, 2, [0]), 2);
        assert_eq!(c.dim(), 2);
        assert!(c.contains(&Matrix::unit(&f2, 2, 2, 0, 0)));
        assert!(c.contains(&Matrix::unit(&f2, 2, 2, 0, 1)));
        assert_eq!(mat_support(&Subspace::full(&f2, 3), 2).dim(), 6);
        let r = mat_support_rows(&Subspace::coordinate(&f2, 2, [0]), 2);
        assert_eq!(r.dim(), 2);
        assert!(r.contains(&Matrix::unit(&f2, 2, 2, 0, 0)));
        assert!(r.contains(&Matrix::unit(&f2, 2, 2, 1, 0)));
    }

    #[test]
    fn rank_equals_row_and_column_space_dims_exhaustive() {
        let f2 = f(2);
        for (n, m) in [(2, 2), (2, 3), (3, 2)] {
            for code in 0..(1u32 << (n * m)) {
                let a = Matrix::from_fn(&f2, n, m, |i, j| FieldElement(((code >> (i * m + j)) & 1) as u16));
                let r = a.rank();
                assert_eq!(r, a.row_space().dim());
                assert_eq!(r, a.col_space().dim());
            }
        }
    }

    #[test]
    fn maxrank_of_support_space_is_its_dimension() {
        let f2 = f(2);
        for n in 1..=3 {
            for m in 1..=3 {
                for v in enumerate_subspaces_all(&f2, n, u64::MAX).unwrap() {
                    let code = mat_support(&v, m);
                    let mr = crate::codes::maxrk(&code, &crate::Budget::default()).unwrap();
                    assert_eq!(mr, v.dim().min(m));
                }
            }
        }
    }
}
