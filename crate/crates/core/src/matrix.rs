//! Dense exact matrices in the row-vector convention.
//!
//! A matrix with `r` rows and `c` columns represents the linear map
//! `K^r -> K^c`, `v |-> v * M`. Composition "first f, then g" is `f * g`.

use std::fmt;
use std::ops::Mul;

use crate::rational::Q;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Q::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Mat {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Mat { rows: r, cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| Q::int(x)).collect()).collect(), cols)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Q> {
        self.row(i).to_vec()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Q::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    t.set(j, i, v.clone());
                }
            }
        }
        t
    }

    pub fn scale(&self, c: &Q) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let p = a * b;
                        *out.get_mut(i, j) += &p;
                    }
                }
            }
        }
        out
    }

    /// `v * self` for a row vector `v`.
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Q::ZERO; self.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(k, j);
                if !b.is_zero() {
                    *o += &(a * b);
                }
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn block_diag(blocks: &[&Mat]) -> Mat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    let v = b.get(i, j);
                    if !v.is_zero() {
                        out.set(r0 + i, c0 + j, v.clone());
                    }
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_rows(idx.iter().map(|&i| self.row_vec(i)).collect(), self.cols)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        self.rref_tracked(None)
    }

    /// Row reduction applying every row operation to `track` as well.
    fn rref_tracked(&mut self, mut track: Option<&mut Mat>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                self.swap_rows(p, r);
                if let Some(t) = track.as_deref_mut() {
                    t.swap_rows(p, r);
                }
            }
            let inv = self.get(r, c).recip();
            if !inv.is_one() {
                self.scale_row(r, &inv);
                if let Some(t) = track.as_deref_mut() {
                    t.scale_row(r, &inv);
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                self.axpy_row(i, r, &f);
                if let Some(t) = track.as_deref_mut() {
                    t.axpy_row(i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, f: &Q) {
        for j in 0..self.cols {
            let v = self.get_mut(r, j);
            if !v.is_zero() {
                *v *= f;
            }
        }
    }

    /// row[i] -= f * row[r]
    fn axpy_row(&mut self, i: usize, r: usize, f: &Q) {
        for j in 0..self.cols {
            let b = self.get(r, j);
            if b.is_zero() {
                continue;
            }
            let p = f * b;
            *self.get_mut(i, j) -= &p;
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis (as rows) of `{ v : v * self = 0 }`.
    pub fn left_kernel(&self) -> Mat {
        let mut a = self.clone();
        let mut t = Mat::identity(self.rows);
        let piv = a.rref_tracked(Some(&mut t));
        let rows: Vec<usize> = (piv.len()..self.rows).collect();
        t.select_rows(&rows)
    }

    /// Basis in reduced echelon form of the row space.
    pub fn row_space(&self) -> Mat {
        let mut a = self.clone();
        let piv = a.rref_in_place();
        let rows: Vec<usize> = (0..piv.len()).collect();
        a.select_rows(&rows)
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let mut a = self.clone();
        let mut t = Mat::identity(self.rows);
        let piv = a.rref_tracked(Some(&mut t));
        (piv.len() == self.rows).then_some(t)
    }

    pub fn determinant(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let mut a = self.clone();
        let n = self.rows;
        let mut det = Q::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                return Q::ZERO;
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let pivot = a.get(c, c).clone();
            det *= &pivot;
            let inv = pivot.recip();
            for i in c + 1..n {
                let f = a.get(i, c) * &inv;
                if !f.is_zero() {
                    a.axpy_row(i, c, &f);
                }
            }
        }
        det
    }

    /// Entries as integers, if they all are.
    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows).map(|i| self.row(i).iter().map(Q::to_i64).collect()).collect()
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        Mat::mul(self, rhs)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let parts: Vec<String> = self.row(i).iter().map(Q::to_string).collect();
            writeln!(f, "  [{}]", parts.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A subspace of `K^n` kept in reduced echelon form, with coordinates
/// relative to the basis it was built from.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    /// Original spanning rows that turned out independent.
    basis: Mat,
    echelon: Mat,
    pivots: Vec<usize>,
    /// `transform * basis = echelon`.
    transform: Mat,
}

impl Subspace {
    /// The span of the rows of `spanning`; dependent rows are dropped,
    /// keeping the earliest independent ones.
    pub fn span(spanning: &Mat) -> Subspace {
        let mut keep = Vec::new();
        // Semi-reduced rows: row k has a 1 at its pivot and zeros at earlier pivots.
        let mut rows: Vec<(usize, Vec<Q>)> = Vec::new();
        for i in 0..spanning.rows() {
            let mut v = spanning.row_vec(i);
            for (p, r) in &rows {
                let f = v[*p].clone();
                if f.is_zero() {
                    continue;
                }
                for (j, e) in r.iter().enumerate() {
                    if !e.is_zero() {
                        v[j] -= &(&f * e);
                    }
                }
            }
            if let Some(p) = v.iter().position(|x| !x.is_zero()) {
                let inv = v[p].recip();
                for x in v.iter_mut() {
                    *x *= &inv;
                }
                rows.push((p, v));
                keep.push(i);
            }
        }
        Subspace::from_independent(spanning.select_rows(&keep))
    }

    /// Builds from rows known to be linearly independent.
    pub fn from_independent(basis: Mat) -> Subspace {
        let ambient = basis.cols();
        let mut echelon = basis.clone();
        let mut transform = Mat::identity(basis.rows());
        let pivots = echelon.rref_tracked(Some(&mut transform));
        assert_eq!(pivots.len(), basis.rows(), "rows are not independent");
        Subspace { ambient, basis, echelon, pivots, transform }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the subspace; the result vanishes on pivot columns.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut r = v.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            let f = r[p].clone();
            if f.is_zero() {
                continue;
            }
            for (j, e) in self.echelon.row(k).iter().enumerate() {
                if !e.is_zero() {
                    r[j] -= &(&f * e);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Q::is_zero)
    }

    /// Coordinates of `v` in terms of `basis()`, if `v` lies in the span.
    pub fn coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        if !self.contains(v) {
            return None;
        }
        let ech: Vec<Q> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        Some(self.transform.apply(&ech))
    }

    /// Coordinates of each row of `m`; panics if a row is outside the span.
    pub fn coords_matrix(&self, m: &Mat) -> Mat {
        let rows = (0..m.rows()).map(|i| self.coords(m.row(i)).expect("vector outside subspace")).collect();
        Mat::from_rows(rows, self.dim())
    }

    /// Columns that are not pivots: the standard basis vectors at these
    /// positions span a complement.
    pub fn complement_positions(&self) -> Vec<usize> {
        let mut is_piv = vec![false; self.ambient];
        for &p in &self.pivots {
            is_piv[p] = true;
        }
        (0..self.ambient).filter(|&j| !is_piv[j]).collect()
    }

    /// Matrix of the quotient map `K^n -> K^n / U` in complement coordinates.
    pub fn quotient_map(&self) -> Mat {
        let comp = self.complement_positions();
        let mut q = Mat::zeros(self.ambient, comp.len());
        for i in 0..self.ambient {
            let mut e = vec![Q::ZERO; self.ambient];
            e[i] = Q::ONE;
            let r = self.reduce(&e);
            for (jj, &j) in comp.iter().enumerate() {
                q.set(i, jj, r[j].clone());
            }
        }
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_mat(r: usize, c: usize) -> impl Strategy<Value = Mat> {
        proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
            Mat::from_rows(v.chunks(c).map(|ch| ch.iter().map(|&x| Q::int(x)).collect()).collect(), c)
        })
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Mat::from_i64(&[vec![2, 1], vec![7, 4]]);
        assert_eq!(m.determinant(), Q::ONE);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(2));
        assert!(Mat::from_i64(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    proptest! {
        #[test]
        fn kernel_rank_nullity(m in arb_mat(5, 3)) {
            let k = m.left_kernel();
            prop_assert_eq!(k.rows() + m.rank(), 5);
            prop_assert!((&k * &m).is_zero());
            prop_assert_eq!(k.rank(), k.rows());
        }

        #[test]
        fn subspace_coords_roundtrip(m in arb_mat(4, 5), c in proptest::collection::vec(-2i64..3, 4)) {
            let s = Subspace::span(&m);
            let v = Mat::from_rows(vec![c.iter().map(|&x| Q::int(x)).collect()], 4).mul(&m);
            let coords = s.coords(v.row(0)).unwrap();
            prop_assert_eq!(s.basis().transpose().transpose().rows(), s.dim());
            let back = Mat::from_rows(vec![coords], s.dim()).mul(s.basis());
            prop_assert_eq!(back, v);
            let q = s.quotient_map();
            prop_assert!((s.basis() * &q).is_zero());
            prop_assert_eq!(q.rank(), 5 - s.dim());
        }
    }
}
