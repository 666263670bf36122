//! Dense complex matrices: the morphisms of the skeletal matrix category.
//!
//! A morphism `f: n -> m` is an `m x n` matrix, so `compose(g, f)` is the
//! ordinary product `g * f`. Objects are positive dimensions and the
//! monoidal product is the Kronecker product, which is strictly associative
//! and unital on dimensions. Associators and unitors are therefore identity
//! matrices and the only nontrivial structural morphism is the commutation
//! matrix used for the braiding.

mod backend;
mod format;
mod gates;

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

pub use backend::{DenseSampler, MatrixBackend, PermutationSampler, TensorMutation};
pub use format::{format_matrix_text, MatrixRecord};
pub use gates::{
    affine_eval, constant_matrix, gate, rx_matrix, ry_matrix, rz_matrix, AffineError, AffineExpr, GateError, GateName,
};

/// A positive matrix dimension; the objects of the matrix category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(transparent)]
pub struct Dim(usize);

impl Dim {
    pub fn new(n: usize) -> Result<Self, MatrixError> {
        if n == 0 {
            Err(MatrixError::ZeroDimension)
        } else {
            Ok(Dim(n))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Dimension of the Kronecker product of spaces of dimension `self` and `other`.
    pub fn tensor(self, other: Dim) -> Dim {
        Dim(self.0 * other.0)
    }

    /// The monoidal unit.
    pub fn unit() -> Dim {
        Dim(1)
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("dimensions must be at least 1")]
    ZeroDimension,
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {actual}")]
    EntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        actual: usize,
    },
    #[error("matrix entry at ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("cannot compose a {g_rows}x{g_cols} matrix after a {f_rows}x{f_cols} matrix")]
    ShapeMismatch {
        g_rows: usize,
        g_cols: usize,
        f_rows: usize,
        f_cols: usize,
    },
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::ZeroDimension);
        }
        if data.len() != rows * cols {
            return Err(MatrixError::EntryCount {
                rows,
                cols,
                expected: rows * cols,
                actual: data.len(),
            });
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(MatrixError::NonFinite {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(CMatrix { rows, cols, data })
    }

    /// Builds a matrix from rows of `(re, im)` pairs. Panics on ragged or empty
    /// input; intended for constants and tests.
    pub fn from_rows(rows: &[&[(f64, f64)]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix literal");
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&(re, im)| Complex64::new(re, im)))
            .collect();
        CMatrix::new(rows.len(), cols, data).expect("invalid matrix literal")
    }

    /// Real matrix from rows. Panics on ragged or empty input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix literal");
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&re| Complex64::new(re, 0.0)))
            .collect();
        CMatrix::new(rows.len(), cols, data).expect("invalid matrix literal")
    }

    pub(crate) fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        debug_assert!(rows > 0 && cols > 0);
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn identity(n: Dim) -> Self {
        let n = n.get();
        CMatrix::from_fn(n, n, |r, c| {
            if r == c {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Domain object: the number of columns.
    pub fn dom(&self) -> Dim {
        Dim(self.cols)
    }

    /// Codomain object: the number of rows.
    pub fn cod(&self) -> Dim {
        Dim(self.rows)
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// `self * s` entrywise.
    pub fn scale(&self, s: Complex64) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Entrywise sum. Panics on shape mismatch.
    pub fn add(&self, other: &CMatrix) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in add"
        );
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        CMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn is_permutation(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        if self.data.iter().any(|&z| z != one && z != zero) {
            return false;
        }
        let row_ok = (0..self.rows).all(|r| (0..self.cols).filter(|&c| self.get(r, c) == one).count() == 1);
        let col_ok = (0..self.cols).all(|c| (0..self.rows).filter(|&r| self.get(r, c) == one).count() == 1);
        row_ok && col_ok
    }
}

/// Matrix product `g * f`, i.e. `g` after `f`.
pub fn mat_compose(g: &CMatrix, f: &CMatrix) -> Result<CMatrix, MatrixError> {
    if g.cols != f.rows {
        return Err(MatrixError::ShapeMismatch {
            g_rows: g.rows,
            g_cols: g.cols,
            f_rows: f.rows,
            f_cols: f.cols,
        });
    }
    let (n, k, m) = (g.rows, g.cols, f.cols);
    let mut data = vec![Complex64::new(0.0, 0.0); n * m];
    for r in 0..n {
        let out = &mut data[r * m..(r + 1) * m];
        for j in 0..k {
            let a = g.data[r * k + j];
            if a.re == 0.0 && a.im == 0.0 {
                continue;
            }
            let f_row = &f.data[j * m..(j + 1) * m];
            for (o, b) in out.iter_mut().zip(f_row) {
                *o += a * b;
            }
        }
    }
    Ok(CMatrix { rows: n, cols: m, data })
}

/// Kronecker product `f ⊗ g`; `f` is the left (most significant) factor.
pub fn mat_tensor(f: &CMatrix, g: &CMatrix) -> CMatrix {
    let rows = f.rows * g.rows;
    let cols = f.cols * g.cols;
    let mut data = Vec::with_capacity(rows * cols);
    for fr in 0..f.rows {
        for gr in 0..g.rows {
            for fc in 0..f.cols {
                let a = f.data[fr * f.cols + fc];
                let g_row = &g.data[gr * g.cols..(gr + 1) * g.cols];
                data.extend(g_row.iter().map(|b| a * b));
            }
        }
    }
    CMatrix { rows, cols, data }
}

pub fn mat_identity(n: Dim) -> CMatrix {
    CMatrix::identity(n)
}

/// Structural isomorphisms of the strict matrix category.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structural {
    /// `(X ⊗ Y) ⊗ Z -> X ⊗ (Y ⊗ Z)`
    Associator(Dim, Dim, Dim),
    /// `I ⊗ X -> X`
    LeftUnitor(Dim),
    /// `X ⊗ I -> X`
    RightUnitor(Dim),
}

/// All three are identities because Kronecker dimensions multiply strictly.
pub fn structural(kind: Structural) -> CMatrix {
    match kind {
        Structural::Associator(x, y, z) => CMatrix::identity(x.tensor(y).tensor(z)),
        Structural::LeftUnitor(x) | Structural::RightUnitor(x) => CMatrix::identity(x),
    }
}

/// The `nm x nm` permutation sending `e_i ⊗ e_j` to `e_j ⊗ e_i`, where
/// `e_i` ranges over the basis of the `n`-dimensional factor. As a morphism
/// it goes `n ⊗ m -> m ⊗ n`.
pub fn commutation_matrix(n: Dim, m: Dim) -> CMatrix {
    let (n, m) = (n.get(), m.get());
    let size = n * m;
    let mut data = vec![Complex64::new(0.0, 0.0); size * size];
    for i in 0..n {
        for j in 0..m {
            let src = i * m + j;
            let dst = j * n + i;
            data[dst * size + src] = Complex64::new(1.0, 0.0);
        }
    }
    CMatrix {
        rows: size,
        cols: size,
        data,
    }
}

/// Outcome of an approximate comparison.
#[derive(Debug, Clone, PartialEq)]
pub enum Closeness {
    /// Shapes agree; `deviation` is the largest entrywise modulus of `a - b`.
    Compared {
        within: bool,
        deviation: f64,
    },
    ShapeMismatch {
        a: (usize, usize),
        b: (usize, usize),
    },
}

impl Closeness {
    pub fn is_within(&self) -> bool {
        matches!(self, Closeness::Compared { within: true, .. })
    }

    pub fn deviation(&self) -> Option<f64> {
        match self {
            Closeness::Compared { deviation, .. } => Some(*deviation),
            Closeness::ShapeMismatch { .. } => None,
        }
    }
}

/// Largest entrywise modulus of `a - b`, or `None` when the shapes differ.
pub fn max_deviation(a: &CMatrix, b: &CMatrix) -> Option<f64> {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return None;
    }
    Some(
        a.data
            .iter()
            .zip(&b.data)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max),
    )
}

pub fn approx_eq(a: &CMatrix, b: &CMatrix, tol: f64) -> Closeness {
    match max_deviation(a, b) {
        Some(deviation) => Closeness::Compared {
            within: deviation <= tol,
            deviation,
        },
        None => Closeness::ShapeMismatch {
            a: (a.rows, a.cols),
            b: (b.rows, b.cols),
        },
    }
}

/// Deviation after removing a global phase from each side. The phase of each
/// matrix is taken from the first entry of `a` (row-major) whose modulus
/// exceeds `1e-12`.
pub fn phase_normalized_deviation(a: &CMatrix, b: &CMatrix) -> Option<f64> {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return None;
    }
    let Some(k) = a.data.iter().position(|z| z.norm() > 1e-12) else {
        return max_deviation(a, b);
    };
    let unphase = |z: Complex64| {
        let r = z.norm();
        if r > 1e-12 {
            z.conj() / r
        } else {
            Complex64::new(1.0, 0.0)
        }
    };
    let a_n = a.scale(unphase(a.data[k]));
    let b_n = b.scale(unphase(b.data[k]));
    max_deviation(&a_n, &b_n)
}
