//! Dense complex Hermitian operators on `C^d`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance::HERMITICITY_TOL;

pub type Complex = Complex64;
pub type Ket = DVector<Complex64>;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);
const I: Complex = Complex::new(0.0, 1.0);

/// A `d x d` complex matrix equal to its conjugate transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: DMatrix<Complex>,
}

/// Largest `|m[i][j] - conj(m[j][i])|` over all entries.
pub fn hermiticity_deviation(m: &DMatrix<Complex>) -> f64 {
    let d = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in i..d {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

impl HermitianOperator {
    pub fn new(matrix: DMatrix<Complex>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        if matrix.nrows() == 0 {
            return Err(Error::InvalidFormat("zero-dimensional operator".into()));
        }
        let deviation = hermiticity_deviation(&matrix);
        if !(deviation <= HERMITICITY_TOL) {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self { matrix })
    }

    /// Build from row-major entries.
    pub fn from_rows(rows: &[Vec<Complex>]) -> Result<Self> {
        let d = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: bad.len(),
            });
        }
        Self::new(DMatrix::from_fn(d, d, |i, j| rows[i][j]))
    }

    // Internal constructions are Hermitian by algebra; skip the check.
    pub(crate) fn from_matrix_unchecked(matrix: DMatrix<Complex>) -> Self {
        debug_assert!(hermiticity_deviation(&matrix) <= 1e-9);
        Self { matrix }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_matrix_unchecked(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_matrix_unchecked(DMatrix::identity(dim, dim))
    }

    /// Rank-one `|v><v|` (no normalization applied).
    pub fn projector(v: &Ket) -> Self {
        Self::from_matrix_unchecked(v * v.adjoint())
    }

    /// Real diagonal operator.
    pub fn diagonal(entries: &[f64]) -> Self {
        let d = entries.len();
        Self::from_matrix_unchecked(DMatrix::from_fn(d, d, |i, j| {
            if i == j {
                Complex::new(entries[i], 0.0)
            } else {
                ZERO
            }
        }))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex> {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex {
        self.matrix[(row, col)]
    }

    /// Row-major copy of the entries.
    pub fn rows(&self) -> Vec<Vec<Complex>> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|j| self.matrix[(i, j)]).collect())
            .collect()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `tr[self * other]`, real for Hermitian arguments.
    pub fn trace_product(&self, other: &Self) -> f64 {
        let d = self.dim();
        let mut acc = ZERO;
        for i in 0..d {
            for j in 0..d {
                acc += self.matrix[(i, j)] * other.matrix[(j, i)];
            }
        }
        acc.re
    }

    /// `<v|self|v>`.
    pub fn expectation(&self, v: &Ket) -> f64 {
        (v.adjoint() * &self.matrix * v)[(0, 0)].re
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::from_matrix_unchecked(self.matrix.map(|z| z * factor))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_matrix_unchecked(&self.matrix + &other.matrix)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_matrix_unchecked(&self.matrix - &other.matrix)
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: f64, other: &Self) {
        self.matrix
            .zip_apply(&other.matrix, |a, b| *a += b * factor);
    }

    /// Elementwise transpose (not the adjoint).
    pub fn transpose(&self) -> Self {
        Self::from_matrix_unchecked(self.matrix.transpose())
    }

    /// `self (x) other` in the standard Kronecker ordering.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_matrix_unchecked(self.matrix.kronecker(&other.matrix))
    }

    /// Trace out the first factor of `C^da (x) C^db`.
    pub fn partial_trace_first(&self, first_dim: usize) -> Result<Self> {
        let total = self.dim();
        if first_dim == 0 || !total.is_multiple_of(first_dim) {
            return Err(Error::DimensionMismatch {
                expected: first_dim,
                found: total,
            });
        }
        let db = total / first_dim;
        let out = DMatrix::from_fn(db, db, |i, j| {
            (0..first_dim)
                .map(|a| self.matrix[(a * db + i, a * db + j)])
                .sum::<Complex>()
        });
        Ok(Self::from_matrix_unchecked(out))
    }

    /// Max elementwise `|self - other|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.matrix.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Eigenvalues in ascending order from the general Hermitian solver.
    pub fn eigenvalues_general(&self) -> Vec<f64> {
        let eig = SymmetricEigen::new(self.matrix.clone());
        let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        values.sort_by(f64::total_cmp);
        values
    }

    /// Smallest eigenvalue; closed form for qubits, general solver otherwise.
    pub fn min_eigenvalue(&self) -> f64 {
        match self.dim() {
            1 => self.matrix[(0, 0)].re,
            2 => qubit_eigenvalues(self).0,
            _ => self.eigenvalues_general()[0],
        }
    }

    pub fn max_eigenvalue(&self) -> f64 {
        match self.dim() {
            1 => self.matrix[(0, 0)].re,
            2 => qubit_eigenvalues(self).1,
            _ => *self.eigenvalues_general().last().unwrap(),
        }
    }
}

/// Closed-form `(min, max)` eigenvalues of a 2x2 Hermitian operator.
fn qubit_eigenvalues(h: &HermitianOperator) -> (f64, f64) {
    let a = h.matrix[(0, 0)].re;
    let d = h.matrix[(1, 1)].re;
    let off = h.matrix[(0, 1)].norm();
    let half_trace = 0.5 * (a + d);
    // (tr/2)^2 - det rewritten as ((a-d)/2)^2 + |b|^2 to avoid cancellation.
    let radius = (0.5 * (a - d)).hypot(off);
    (half_trace - radius, half_trace + radius)
}

/// Checked entry point used by validation code.
pub fn min_eigenvalue(h: &HermitianOperator) -> Result<f64> {
    let deviation = hermiticity_deviation(h.matrix());
    if !(deviation <= HERMITICITY_TOL) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(h.min_eigenvalue())
}

/// Pauli matrix `sigma_{axis}` for axis 0, 1, 2 (x, y, z).
pub fn pauli(axis: usize) -> HermitianOperator {
    let m = match axis {
        0 => DMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        1 => DMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
        2 => DMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
        _ => panic!("pauli axis {axis} out of range"),
    };
    HermitianOperator::from_matrix_unchecked(m)
}

/// `v . sigma` for a real 3-vector.
pub fn pauli_combination(v: [f64; 3]) -> HermitianOperator {
    let m = DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex::new(v[2], 0.0),
            Complex::new(v[0], -v[1]),
            Complex::new(v[0], v[1]),
            Complex::new(-v[2], 0.0),
        ],
    );
    HermitianOperator::from_matrix_unchecked(m)
}

/// Standard basis vector `|index>` of `C^dim`.
pub fn basis_ket(dim: usize, index: usize) -> Ket {
    let mut v = Ket::zeros(dim);
    v[index] = ONE;
    v
}

/// `<u|v>`.
pub fn inner(u: &Ket, v: &Ket) -> Complex {
    u.dotc(v)
}
