//! Dense matrices over a finite field.
//!
//! Rows and columns of `2n x 2n` matrices are indexed by the basis
//! `e_1..e_n, e_-1..e_-n`; matrices act on column vectors from the left, so
//! column `j` of `g` is the image of the `j`-th basis vector.

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

use crate::gf::{Embedding, FieldElem, FieldRef, GfError};
use crate::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatError {
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch")]
    ShapeMismatch,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrices over different fields")]
    MixedFields,
    #[error("subspace is not invariant: {0}")]
    NotInvariant(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] GfError),
}

#[derive(Clone)]
pub struct Mat {
    field: FieldRef,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl PartialEq for Mat {
    fn eq(&self, o: &Self) -> bool {
        self.field.id() == o.field.id()
            && self.rows == o.rows
            && self.cols == o.cols
            && self.data == o.data
    }
}
impl Eq for Mat {}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.field.format(self.get(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(field: &FieldRef, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &FieldRef, n: usize) -> Mat {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(field: &FieldRef, n: usize, c: FieldElem) -> Mat {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.raw();
        }
        m
    }

    pub(crate) fn from_raw(field: &FieldRef, rows: usize, cols: usize, data: Vec<u32>) -> Mat {
        assert_eq!(data.len(), rows * cols);
        Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_fn(
        field: &FieldRef,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElem,
    ) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j).raw());
            }
        }
        Self::from_raw(field, rows, cols, data)
    }

    pub fn from_ints(field: &FieldRef, rows: &[Vec<i64>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Self::from_fn(field, r, c, |i, j| field.from_int(rows[i][j]))
    }

    pub fn from_rows(field: &FieldRef, rows: &[Vec<FieldElem>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Self::from_fn(field, r, c, |i, j| rows[i][j])
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &FieldRef, cols: &[Vec<FieldElem>]) -> Mat {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        Self::from_fn(field, r, c, |i, j| cols[j][i])
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
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
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.field.wrap(self.data[i * self.cols + j])
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, e: FieldElem) {
        self.data[i * self.cols + j] = e.raw();
    }

    pub fn col(&self, j: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn row(&self, i: usize) -> Vec<FieldElem> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }
    pub fn columns(&self) -> Vec<Vec<FieldElem>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    /// Row-major byte serialization, used as a hash key.
    pub fn to_bytes(&self) -> Vec<u8> {
        if self.field.order() <= 256 {
            self.data.iter().map(|&x| x as u8).collect()
        } else {
            self.data.iter().flat_map(|x| x.to_le_bytes()).collect()
        }
    }

    fn check_field(&self, o: &Mat) -> Result<(), MatError> {
        if self.field.id() != o.field.id() {
            return Err(MatError::MixedFields);
        }
        Ok(())
    }

    pub fn try_mul(&self, o: &Mat) -> Result<Mat, MatError> {
        self.check_field(o)?;
        if self.cols != o.rows {
            return Err(MatError::ShapeMismatch);
        }
        let k = &self.field;
        let mut out = vec![0u32; self.rows * o.cols];
        for i in 0..self.rows {
            let dst = &mut out[i * o.cols..(i + 1) * o.cols];
            for l in 0..self.cols {
                let a = self.data[i * self.cols + l];
                k.axpy_raw(a, &o.data[l * o.cols..(l + 1) * o.cols], dst);
            }
        }
        Ok(Self::from_raw(k, self.rows, o.cols, out))
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.cols);
        let k = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0;
                for j in 0..self.cols {
                    acc = k.mul_add_raw(self.data[i * self.cols + j], v[j].raw(), acc);
                }
                k.wrap(acc)
            })
            .collect()
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert!(self.rows == o.rows && self.cols == o.cols);
        let k = &self.field;
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(&a, &b)| k.add_raw(a, b))
            .collect();
        Self::from_raw(k, self.rows, self.cols, data)
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Mat {
        let k = &self.field;
        let data = self.data.iter().map(|&a| k.neg_raw(a)).collect();
        Self::from_raw(k, self.rows, self.cols, data)
    }

    pub fn scale(&self, c: FieldElem) -> Mat {
        let k = &self.field;
        let data = self.data.iter().map(|&a| k.mul_raw(a, c.raw())).collect();
        Self::from_raw(k, self.rows, self.cols, data)
    }

    pub fn transpose(&self) -> Mat {
        let mut data = vec![0; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        Self::from_raw(&self.field, self.cols, self.rows, data)
    }

    pub fn trace(&self) -> FieldElem {
        let k = &self.field;
        let mut acc = 0;
        for i in 0..self.rows.min(self.cols) {
            acc = k.add_raw(acc, self.data[i * self.cols + i]);
        }
        k.wrap(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.data[i * self.cols + j] == u32::from(i == j)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn det(&self) -> Result<FieldElem, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare);
        }
        let k = &self.field;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = 1u32;
        for c in 0..n {
            let piv = match (c..n).find(|&r| a[r * n + c] != 0) {
                Some(r) => r,
                None => return Ok(k.zero()),
            };
            if piv != c {
                for j in 0..n {
                    a.swap(piv * n + j, c * n + j);
                }
                det = k.neg_raw(det);
            }
            let pv = a[c * n + c];
            det = k.mul_raw(det, pv);
            let inv = k.inv_raw(pv);
            let pivot_row: Vec<u32> = a[c * n..(c + 1) * n].to_vec();
            for r in c + 1..n {
                let f = a[r * n + c];
                if f != 0 {
                    let m = k.neg_raw(k.mul_raw(f, inv));
                    k.axpy_raw(m, &pivot_row, &mut a[r * n..(r + 1) * n]);
                }
            }
        }
        Ok(k.wrap(det))
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let k = &self.field;
        let (r, c) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..c {
            if row == r {
                break;
            }
            let piv = match (row..r).find(|&i| a[i * c + col] != 0) {
                Some(i) => i,
                None => continue,
            };
            if piv != row {
                for j in 0..c {
                    a.swap(piv * c + j, row * c + j);
                }
            }
            let inv = k.inv_raw(a[row * c + col]);
            for j in 0..c {
                a[row * c + j] = k.mul_raw(a[row * c + j], inv);
            }
            let pivot_row: Vec<u32> = a[row * c..(row + 1) * c].to_vec();
            for i in 0..r {
                if i != row {
                    let f = a[i * c + col];
                    if f != 0 {
                        k.axpy_raw(k.neg_raw(f), &pivot_row, &mut a[i * c..(i + 1) * c]);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (Self::from_raw(k, r, c, a), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Result<Mat, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare);
        }
        let n = self.rows;
        let k = &self.field;
        let mut aug = Self::zeros(k, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.data[i * n + j];
            }
            aug.data[i * 2 * n + n + i] = 1;
        }
        let (red, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(MatError::Singular);
        }
        Ok(red.submatrix(&(0..n).collect::<Vec<_>>(), &(n..2 * n).collect::<Vec<_>>()))
    }

    /// Basis of the null space as the columns of a matrix in reduced column
    /// echelon form, so equal subspaces give equal matrices.
    pub fn kernel(&self) -> Mat {
        let k = &self.field;
        let (red, pivots) = self.rref();
        let c = self.cols;
        let free: Vec<usize> = (0..c).filter(|j| !pivots.contains(j)).collect();
        let mut basis = Vec::with_capacity(free.len() * c);
        for &f in &free {
            let mut v = vec![0u32; c];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg_raw(red.data[i * c + f]);
            }
            basis.extend(v);
        }
        let rows = Self::from_raw(k, free.len(), c, basis);
        rows.rref().0.transpose()
    }

    /// Canonical basis (reduced column echelon) of the span of the columns.
    pub fn column_space(&self) -> Mat {
        let (red, piv) = self.transpose().rref();
        let r = piv.len();
        red.submatrix(
            &(0..r).collect::<Vec<_>>(),
            &(0..self.rows).collect::<Vec<_>>(),
        )
        .transpose()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        Self::from_fn(&self.field, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j])
        })
    }

    /// Entrywise image under a field embedding.
    pub fn lift(&self, e: &Embedding) -> Mat {
        let data = self.data.iter().map(|&r| e.apply_raw(r)).collect();
        Self::from_raw(e.target(), self.rows, self.cols, data)
    }

    /// Kernel of `M - lambda I`. If `lambda` lives in a larger field, pass the
    /// embedding of this matrix's field into it.
    pub fn eigenspace(&self, lambda: FieldElem, ext: Option<&Embedding>) -> Result<Mat, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare);
        }
        let m = match ext {
            Some(e) if lambda.field_id() == e.target().id() => self.lift(e),
            _ if lambda.field_id() == self.field.id() => self.clone(),
            _ => return Err(MatError::MixedFields),
        };
        let k = m.field().clone();
        Ok(m.sub(&Mat::scalar(&k, m.rows, lambda)).kernel())
    }

    /// `self^e` for `e >= 0`.
    pub fn pow_u128(&self, mut e: u128) -> Mat {
        assert!(self.is_square());
        let mut acc = Self::identity(&self.field, self.rows);
        let mut base = self.clone();
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

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Mat, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare);
        }
        if e >= 0 {
            Ok(self.pow_u128(e as u128))
        } else {
            Ok(self.inverse()?.pow_u128(e.unsigned_abs() as u128))
        }
    }

    /// `h^-1 self h`.
    pub fn conj(&self, h: &Mat) -> Result<Mat, MatError> {
        Ok(&(&h.inverse()? * self) * h)
    }

    /// Characteristic polynomial `det(tI - M)` via reduction to Hessenberg form.
    pub fn char_poly(&self) -> Result<Poly, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare);
        }
        let k = &self.field;
        let n = self.rows;
        let mut h = self.data.clone();
        let at = |i: usize, j: usize| i * n + j;
        for m in 1..n.saturating_sub(1) {
            let j = m - 1;
            let piv = match (m..n).find(|&i| h[at(i, j)] != 0) {
                Some(i) => i,
                None => continue,
            };
            if piv != m {
                for c in 0..n {
                    h.swap(at(piv, c), at(m, c));
                }
                for r in 0..n {
                    h.swap(at(r, piv), at(r, m));
                }
            }
            let inv = k.inv_raw(h[at(m, j)]);
            for i in m + 1..n {
                let u = k.mul_raw(h[at(i, j)], inv);
                if u == 0 {
                    continue;
                }
                // row_i -= u row_m ; col_m += u col_i
                let nu = k.neg_raw(u);
                for c in 0..n {
                    h[at(i, c)] = k.mul_add_raw(nu, h[at(m, c)], h[at(i, c)]);
                }
                for r in 0..n {
                    h[at(r, m)] = k.mul_add_raw(u, h[at(r, i)], h[at(r, m)]);
                }
            }
        }
        let t = Poly::t(k);
        let mut p: Vec<Poly> = vec![Poly::one(k)];
        for kk in 1..=n {
            let m = kk - 1;
            let mut cur = t
                .sub(&Poly::constant(k, k.wrap(h[at(m, m)])))
                .mul(&p[kk - 1]);
            let mut prod = 1u32;
            for i in 1..kk {
                prod = k.mul_raw(prod, h[at(m - i + 1, m - i)]);
                if prod == 0 {
                    break;
                }
                let c = k.mul_raw(h[at(m - i, m)], prod);
                if c != 0 {
                    cur = cur.sub(&p[kk - i - 1].scale(k.wrap(c)));
                }
            }
            p.push(cur);
        }
        Ok(p.pop().unwrap())
    }

    /// Characteristic polynomial by Berkowitz's division-free algorithm.
    pub fn char_poly_berkowitz(&self) -> Result<Poly, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare);
        }
        let k = &self.field;
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one(k));
        }
        // coefficient vectors are highest degree first
        let mut transforms: Vec<Vec<u32>> = Vec::new();
        let mut a = self.clone();
        while a.rows > 1 {
            let s = a.rows;
            let idx: Vec<usize> = (1..s).collect();
            let top = a.data[0];
            let r = a.submatrix(&[0], &idx);
            let c = a.submatrix(&idx, &[0]);
            let sub = a.submatrix(&idx, &idx);
            let mut col = vec![1, k.neg_raw(top)];
            let mut v = c;
            for i in 0..s - 1 {
                if i > 0 {
                    v = &sub * &v;
                }
                col.push(k.neg_raw((&r * &v).data[0]));
            }
            transforms.push(col);
            a = sub;
        }
        let mut poly = vec![1, k.neg_raw(a.data[0])];
        for col in transforms.iter().rev() {
            // lower-triangular Toeplitz (len+1) x len with first column `col`
            let len = poly.len();
            let mut out = vec![0u32; len + 1];
            for (i, o) in out.iter_mut().enumerate() {
                for (j, &pj) in poly.iter().enumerate() {
                    if i >= j {
                        *o = k.mul_add_raw(col[i - j], pj, *o);
                    }
                }
            }
            poly = out;
        }
        poly.reverse();
        Ok(Poly::from_raw(k, poly))
    }

    /// Invariant factors of `tI - M` other than 1, each dividing the next.
    pub fn similarity_invariants(&self) -> Result<Vec<Poly>, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare);
        }
        let k = &self.field;
        let n = self.rows;
        let t = Poly::t(k);
        let mut m: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = Poly::constant(k, k.neg(self.get(i, j)));
                        if i == j {
                            c.add(&t)
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        let mut diag = Vec::with_capacity(n);
        for s in 0..n {
            loop {
                // lowest-degree nonzero entry, first in row-major order
                let mut best: Option<(usize, usize, usize)> = None;
                for (i, row) in m.iter().enumerate().skip(s) {
                    for (j, e) in row.iter().enumerate().skip(s) {
                        if let Some(d) = e.degree() {
                            if best.is_none_or(|(bd, _, _)| d < bd) {
                                best = Some((d, i, j));
                            }
                        }
                    }
                }
                let (_, pi, pj) = match best {
                    Some(b) => b,
                    None => break,
                };
                m.swap(s, pi);
                for row in m.iter_mut() {
                    row.swap(s, pj);
                }
                let piv = m[s][s].clone();
                let mut clean = true;
                for i in s + 1..n {
                    if m[i][s].is_zero() {
                        continue;
                    }
                    let (qt, r) = m[i][s].divrem(&piv).expect("pivot nonzero");
                    for j in s..n {
                        let d = m[s][j].mul(&qt);
                        m[i][j] = m[i][j].sub(&d);
                    }
                    if !r.is_zero() {
                        clean = false;
                    }
                }
                for j in s + 1..n {
                    if m[s][j].is_zero() {
                        continue;
                    }
                    let (qt, r) = m[s][j].divrem(&piv).expect("pivot nonzero");
                    for row in m.iter_mut().skip(s) {
                        let d = row[s].mul(&qt);
                        row[j] = row[j].sub(&d);
                    }
                    if !r.is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                let bad = (s + 1..n).find(|&i| (s + 1..n).any(|j| !piv.divides(&m[i][j])));
                match bad {
                    Some(i) => {
                        for j in s..n {
                            let v = m[i][j].clone();
                            m[s][j] = m[s][j].add(&v);
                        }
                    }
                    None => break,
                }
            }
            diag.push(m[s][s].monic());
        }
        Ok(diag
            .into_iter()
            .filter(|p| p.degree().unwrap_or(0) > 0)
            .collect())
    }

    pub fn block_diag(blocks: &[&Mat]) -> Mat {
        let k = blocks[0].field.clone();
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(&k, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.data[(r0 + i) * m + c0 + j] = b.data[i * b.cols + j];
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Action on the coordinate subspace spanned by `idx` (in that order),
    /// after checking that the subspace is invariant.
    pub fn restrict(&self, idx: &[usize]) -> Result<Mat, MatError> {
        for &j in idx {
            for i in 0..self.rows {
                if !idx.contains(&i) && self.data[i * self.cols + j] != 0 {
                    return Err(MatError::NotInvariant(format!(
                        "column {j} leaks into row {i}"
                    )));
                }
            }
        }
        Ok(self.submatrix(idx, idx))
    }

    /// Action on the quotient by the coordinate subspace complementary to
    /// `idx`, after checking that complement is invariant.
    pub fn quotient_block(&self, idx: &[usize]) -> Result<Mat, MatError> {
        for j in 0..self.cols {
            if idx.contains(&j) {
                continue;
            }
            for &i in idx {
                if self.data[i * self.cols + j] != 0 {
                    return Err(MatError::NotInvariant(format!(
                        "complement column {j} reaches row {i}"
                    )));
                }
            }
        }
        Ok(self.submatrix(idx, idx))
    }

    /// Matrix of the action on the span of the columns of `basis`, in that
    /// basis. Fails if the span is not invariant.
    pub fn restrict_to_basis(&self, basis: &Mat) -> Result<Mat, MatError> {
        let img = self * basis;
        // solve basis * X = img
        let d = basis.cols;
        let mut aug = Self::zeros(&self.field, basis.rows, d + img.cols);
        for i in 0..basis.rows {
            for j in 0..d {
                aug.data[i * (d + img.cols) + j] = basis.data[i * d + j];
            }
            for j in 0..img.cols {
                aug.data[i * (d + img.cols) + d + j] = img.data[i * img.cols + j];
            }
        }
        let (red, piv) = aug.rref();
        if piv.len() != d || piv.iter().enumerate().any(|(i, &p)| p != i) {
            if piv.iter().any(|&p| p >= d) {
                return Err(MatError::NotInvariant("image leaves the span".into()));
            }
            return Err(MatError::Singular);
        }
        Ok(red.submatrix(
            &(0..d).collect::<Vec<_>>(),
            &(d..d + img.cols).collect::<Vec<_>>(),
        ))
    }

    /// Text dump: header `rows cols field-spec`, then one comma-separated row
    /// per line.
    pub fn dump(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.field.spec());
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.field.format(self.get(i, j)))
                .collect();
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }

    pub fn parse_dump(text: &str) -> Result<Mat, MatError> {
        let bad = |m: &str| MatError::Parse(m.to_string());
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("empty dump"))?;
        let mut parts = header.split_whitespace();
        let r: usize = parts
            .next()
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| bad("rows"))?;
        let c: usize = parts
            .next()
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| bad("cols"))?;
        let spec = parts.next().ok_or_else(|| bad("field spec"))?;
        let k = crate::gf::Field::parse(spec)?;
        let mut rows = Vec::with_capacity(r);
        for line in lines.take(r) {
            let row: Vec<FieldElem> = line
                .split(',')
                .map(|e| k.parse_elem(e))
                .collect::<Result<_, _>>()?;
            if row.len() != c {
                return Err(bad("row length"));
            }
            rows.push(row);
        }
        if rows.len() != r {
            return Err(bad("row count"));
        }
        Ok(Self::from_rows(&k, &rows))
    }
}

impl Mul for &Mat {
    type Output = Mat;
    /// Panics on shape or field mismatch; see [`Mat::try_mul`].
    fn mul(self, o: &Mat) -> Mat {
        self.try_mul(o).expect("matrix product")
    }
}

/// `x y^-1 x y`.
pub fn paper_commutator(x: &Mat, y: &Mat) -> Result<Mat, MatError> {
    if !x.is_square() || x.rows != y.rows || !y.is_square() {
        return Err(MatError::ShapeMismatch);
    }
    let yi = y.inverse()?;
    Ok(&(&(x * &yi) * x) * y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    #[test]
    fn inverse_and_det() {
        let k = Field::prime(7).unwrap();
        let m = Mat::from_ints(&k, &[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        // 2*(12-1) - 1*(4-0) = 18
        assert_eq!(m.det().unwrap(), k.from_int(18));
        let sing = Mat::from_ints(&k, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(sing.inverse().unwrap_err(), MatError::Singular);
        assert!(Mat::identity(&k, 4).inverse().unwrap().is_identity());
    }

    #[test]
    fn kernel_of_j_squared_plus_one() {
        let k = Field::prime(3).unwrap();
        let j = Mat::from_ints(
            &k,
            &[
                vec![0, 0, -1, 0],
                vec![0, 0, 0, -1],
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
            ],
        );
        let m = (&j * &j).add(&Mat::identity(&k, 4));
        assert_eq!(m.kernel().cols(), 4);
    }

    #[test]
    fn char_poly_routes_agree() {
        let k = Field::prime(5).unwrap();
        let m = Mat::from_ints(&k, &[vec![1, 2, 0], vec![3, 4, 1], vec![0, 1, 1]]);
        assert_eq!(m.char_poly().unwrap(), m.char_poly_berkowitz().unwrap());
        let id = Mat::identity(&k, 3);
        let t1 = Poly::from_ints(&k, &[-1, 1]);
        assert_eq!(id.char_poly().unwrap(), t1.pow(3));
    }

    #[test]
    fn invariants_of_identity_and_companion() {
        let k = Field::prime(2).unwrap();
        let t1 = Poly::from_ints(&k, &[1, 1]);
        assert_eq!(
            Mat::identity(&k, 2).similarity_invariants().unwrap(),
            vec![t1.clone(), t1]
        );
        let comp = Mat::from_ints(&k, &[vec![0, 1], vec![1, 1]]);
        assert_eq!(
            comp.similarity_invariants().unwrap(),
            vec![Poly::from_ints(&k, &[1, 1, 1])]
        );
    }

    #[test]
    fn commutator_with_identity() {
        let k = Field::prime(5).unwrap();
        let y = Mat::from_ints(&k, &[vec![0, 1], vec![-1, -1]]);
        let i = Mat::identity(&k, 2);
        assert!(paper_commutator(&i, &y).unwrap().is_identity());
    }

    #[test]
    fn dump_roundtrip() {
        let k = Field::new(3, 2, None).unwrap();
        let m = Mat::from_fn(&k, 2, 3, |i, j| k.wrap(((i * 3 + j) % 9) as u32));
        assert_eq!(Mat::parse_dump(&m.dump()).unwrap(), m);
    }

    #[test]
    fn restriction_checks_invariance() {
        let k = Field::prime(3).unwrap();
        let m = Mat::from_ints(&k, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 2]]);
        assert!(m.restrict(&[0, 1]).is_ok());
        assert!(m.restrict(&[1, 2]).is_err());
        let basis = Mat::from_ints(&k, &[vec![1], vec![0], vec![0]]);
        assert!(m.restrict_to_basis(&basis).unwrap().is_identity());
    }
}
