use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Dense complex matrix. Entries are always finite.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            inner: DMatrix::zeros(rows, cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        ComplexMatrix {
            inner: DMatrix::identity(n, n),
        }
    }

    /// The matrix unit with a single 1 at `(i, j)`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.inner[(i, j)] = C64::new(1.0, 0.0);
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMatrix(format!(
                "dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for a {rows}x{cols} matrix, found {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidMatrix(format!("entry {pos} is not finite")));
        }
        Ok(ComplexMatrix {
            inner: DMatrix::from_row_iterator(rows, cols, entries),
        })
    }

    /// Build a real matrix from nested rows. Panics on ragged input; meant for
    /// literals in tests and examples.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| C64::new(x, 0.0)))
            .collect();
        Self::from_row_major(r, c, entries).expect("finite literal")
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.inner[(i, i)] = C64::new(d, 0.0);
        }
        m
    }

    pub fn from_nalgebra(inner: DMatrix<C64>) -> Self {
        ComplexMatrix { inner }
    }

    pub fn as_nalgebra(&self) -> &DMatrix<C64> {
        &self.inner
    }

    pub fn into_nalgebra(self) -> DMatrix<C64> {
        self.inner
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.inner.shape()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.inner[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: C64) {
        self.inner[(i, j)] = value;
    }

    /// Entries in row-major order.
    pub fn row_major_entries(&self) -> Vec<C64> {
        let (r, c) = self.shape();
        let mut out = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                out.push(self.inner[(i, j)]);
            }
        }
        out
    }

    /// Contiguous entries in storage order. Two matrices of the same shape
    /// share the same order, which is all the Hilbert–Schmidt routines need.
    pub(crate) fn storage(&self) -> &[C64] {
        self.inner.as_slice()
    }

    pub(crate) fn storage_mut(&mut self) -> &mut [C64] {
        self.inner.as_mut_slice()
    }

    pub fn adjoint(&self) -> Self {
        ComplexMatrix {
            inner: self.inner.adjoint(),
        }
    }

    pub fn transpose(&self) -> Self {
        ComplexMatrix {
            inner: self.inner.transpose(),
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        ComplexMatrix {
            inner: &self.inner * factor,
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    /// `self += factor * other`.
    pub fn axpy(&mut self, factor: C64, other: &ComplexMatrix) {
        assert_eq!(self.shape(), other.shape(), "axpy shape mismatch");
        for (a, b) in self.storage_mut().iter_mut().zip(other.storage()) {
            *a += factor * b;
        }
    }

    /// Hilbert–Schmidt inner product `<self, other> = trace(other* self)`.
    pub fn hs_inner(&self, other: &ComplexMatrix) -> C64 {
        debug_assert_eq!(self.shape(), other.shape());
        self.storage()
            .iter()
            .zip(other.storage())
            .map(|(a, b)| b.conj() * a)
            .sum()
    }

    pub fn hs_norm_sqr(&self) -> f64 {
        self.storage().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn hs_norm(&self) -> f64 {
        self.hs_norm_sqr().sqrt()
    }

    /// Hilbert–Schmidt distance.
    pub fn distance(&self, other: &ComplexMatrix) -> f64 {
        debug_assert_eq!(self.shape(), other.shape());
        self.storage()
            .iter()
            .zip(other.storage())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest singular value.
    pub fn op_norm(&self) -> f64 {
        if self.hs_norm_sqr() == 0.0 {
            return 0.0;
        }
        match super::svd::checked_svd(&self.inner, false, false) {
            Ok(svd) => svd.singular_values.iter().cloned().fold(0.0, f64::max),
            // Frobenius bounds the operator norm from above.
            Err(_) => self.hs_norm(),
        }
    }

    pub fn trace(&self) -> C64 {
        self.inner.trace()
    }

    /// `‖M − M*‖_HS`.
    pub fn asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.inner[(i, j)] - self.inner[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `(M + M*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale_real(0.5)
    }

    /// `(M − M*) / 2i`.
    pub fn skew_part(&self) -> Self {
        (self - &self.adjoint()).scale(C64::new(0.0, -0.5))
    }

    /// Residuals `(‖p² − p‖, ‖p − p*‖)`.
    pub fn projection_defect(&self) -> (f64, f64) {
        let sq = self * self;
        (sq.distance(self), self.asymmetry())
    }

    pub fn commutator(&self, other: &ComplexMatrix) -> Self {
        &(self * other) - &(other * self)
    }

    /// Block-diagonal direct sum of square or rectangular blocks.
    pub fn direct_sum(blocks: &[ComplexMatrix]) -> Self {
        let rows: usize = blocks.iter().map(|b| b.rows()).sum();
        let cols: usize = blocks.iter().map(|b| b.cols()).sum();
        let mut out = Self::zeros(rows.max(1), cols.max(1));
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.inner
                .view_mut((r0, c0), b.shape())
                .copy_from(&b.inner);
            r0 += b.rows();
            c0 += b.cols();
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &ComplexMatrix) -> Self {
        ComplexMatrix {
            inner: self.inner.kronecker(&other.inner),
        }
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn place(&mut self, r0: usize, c0: usize, block: &ComplexMatrix) {
        self.inner
            .view_mut((r0, c0), block.shape())
            .copy_from(&block.inner);
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            inner: self.inner.view((r0, c0), (rows, cols)).into_owned(),
        }
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        self.inner.column(j).iter().cloned().collect()
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<C64>]) -> Self {
        let mut out = Self::zeros(rows, columns.len().max(1));
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, z) in col.iter().enumerate() {
                out.inner[(i, j)] = *z;
            }
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.storage().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            write!(f, "  ")?;
            for j in 0..self.cols() {
                let z = self.inner[(i, j)];
                write!(f, "{:>9.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols(), rhs.rows(), "product shape mismatch");
        ComplexMatrix {
            inner: &self.inner * &rhs.inner,
        }
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            inner: &self.inner + &rhs.inner,
        }
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            inner: &self.inner - &rhs.inner,
        }
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        self.inner += &rhs.inner;
    }
}

impl SubAssign<&ComplexMatrix> for ComplexMatrix {
    fn sub_assign(&mut self, rhs: &ComplexMatrix) {
        self.inner -= &rhs.inner;
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix {
            inner: -&self.inner,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixWire {
            rows: self.rows(),
            cols: self.cols(),
            entries: self
                .row_major_entries()
                .into_iter()
                .map(|z| [z.re, z.im])
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = MatrixWire::deserialize(deserializer)?;
        let entries = wire
            .entries
            .into_iter()
            .map(|[re, im]| C64::new(re, im))
            .collect();
        ComplexMatrix::from_row_major(wire.rows, wire.cols, entries).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_entry_counts_and_nonfinite() {
        assert!(ComplexMatrix::from_row_major(2, 2, vec![C64::new(0.0, 0.0); 3]).is_err());
        let mut v = vec![C64::new(0.0, 0.0); 4];
        v[2] = C64::new(f64::NAN, 0.0);
        assert!(ComplexMatrix::from_row_major(2, 2, v).is_err());
        assert!(ComplexMatrix::from_row_major(0, 2, vec![]).is_err());
    }

    #[test]
    fn wire_format_is_row_major_pairs() {
        let m = ComplexMatrix::from_row_major(
            2,
            2,
            vec![
                C64::new(1.0, 0.0),
                C64::new(2.0, -1.0),
                C64::new(3.0, 0.5),
                C64::new(4.0, 0.0),
            ],
        )
        .unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(
            json,
            r#"{"rows":2,"cols":2,"entries":[[1.0,0.0],[2.0,-1.0],[3.0,0.5],[4.0,0.0]]}"#
        );
        let back: ComplexMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn hs_inner_is_trace_of_adjoint_product() {
        let x = ComplexMatrix::from_row_major(
            2,
            2,
            vec![
                C64::new(1.0, 2.0),
                C64::new(0.0, 1.0),
                C64::new(-1.0, 0.0),
                C64::new(3.0, -2.0),
            ],
        )
        .unwrap();
        let y = ComplexMatrix::from_real_rows(&[&[0.5, 1.0], &[2.0, -1.0]]);
        let direct = (&y.adjoint() * &x).trace();
        assert!((x.hs_inner(&y) - direct).norm() < 1e-14);
    }

    #[test]
    fn operator_norm_of_diagonal() {
        let d = ComplexMatrix::from_diagonal(&[3.0, -5.0, 1.0]);
        assert!((d.op_norm() - 5.0).abs() < 1e-12);
        assert_eq!(ComplexMatrix::zeros(2, 3).op_norm(), 0.0);
    }

    #[test]
    fn direct_sum_places_blocks_on_diagonal() {
        let a = ComplexMatrix::unit(1, 2, 0, 1);
        let b = ComplexMatrix::identity(2);
        let s = ComplexMatrix::direct_sum(&[a, b]);
        assert_eq!(s.shape(), (3, 4));
        assert_eq!(s.get(0, 1), C64::new(1.0, 0.0));
        assert_eq!(s.get(1, 2), C64::new(1.0, 0.0));
        assert_eq!(s.get(2, 3), C64::new(1.0, 0.0));
        assert_eq!(s.hs_norm_sqr(), 3.0);
    }
}
