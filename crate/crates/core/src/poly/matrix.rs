//! Dense matrices over `ℤ[U]` and over `𝔽_p`, with fraction-free and
//! modular determinants.

use num_bigint::BigInt;

use super::field::PrimeField;
use super::multipoly::MultiPoly;
use super::PolyError;

/// Default size above which [`det_symbolic`] refuses to run.
pub const DEFAULT_SYMBOLIC_LIMIT: usize = 12;

/// Dense row-major matrix with optional row and column labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    row_labels: Option<Vec<String>>,
    col_labels: Option<Vec<String>>,
}

pub type PolyMatrix = Matrix<MultiPoly>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            data,
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, PolyError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(PolyError::Ragged);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
            row_labels: None,
            col_labels: None,
        })
    }

    pub fn with_labels(
        mut self,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
    ) -> Result<Self, PolyError> {
        if row_labels.len() != self.rows || col_labels.len() != self.cols {
            return Err(PolyError::DimensionMismatch {
                left: (row_labels.len(), col_labels.len()),
                right: (self.rows, self.cols),
            });
        }
        let unique = |v: &[String]| {
            let mut s: Vec<&String> = v.iter().collect();
            s.sort();
            s.windows(2).all(|w| w[0] != w[1])
        };
        if !unique(&row_labels) || !unique(&col_labels) {
            return Err(PolyError::DuplicateLabels);
        }
        self.row_labels = Some(row_labels);
        self.col_labels = Some(col_labels);
        Ok(self)
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[String]> {
        self.col_labels.as_deref()
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
        }
    }

    pub fn try_map<U: Clone, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
        })
    }

    /// Selects rows and columns by index, carrying labels along.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<T> {
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data: rows
                .iter()
                .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
                .collect(),
            row_labels: self
                .row_labels
                .as_ref()
                .map(|l| rows.iter().map(|&i| l[i].clone()).collect()),
            col_labels: self
                .col_labels
                .as_ref()
                .map(|l| cols.iter().map(|&j| l[j].clone()).collect()),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols.max(1)).map(|c| c.to_vec()).collect()
    }

    fn check_product(&self, other: &Matrix<T>) -> Result<(), PolyError> {
        if self.cols != other.rows {
            Err(PolyError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            })
        } else {
            Ok(())
        }
    }

    fn check_same_shape(&self, other: &Matrix<T>) -> Result<(), PolyError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            Err(PolyError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            })
        } else {
            Ok(())
        }
    }
}

impl PolyMatrix {
    pub fn identity(n: usize, nvars: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                MultiPoly::one(nvars)
            } else {
                MultiPoly::zero(nvars)
            }
        })
    }

    /// Product; row labels come from `self`, column labels from `other`.
    pub fn mat_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        self.check_product(other)?;
        let nvars = self.data.first().map_or(0, MultiPoly::nvars);
        let mut out = Matrix::from_fn(self.rows, other.cols, |_, _| MultiPoly::zero(nvars));
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
                    let v = out.get(i, j).checked_add(&a.checked_mul(b)?)?;
                    out.set(i, j, v);
                }
            }
        }
        out.row_labels = self.row_labels.clone();
        out.col_labels = other.col_labels.clone();
        Ok(out)
    }

    pub fn mat_sub(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix {
            data,
            ..self.clone()
        })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn substitute_zero(&self, v: usize) -> PolyMatrix {
        self.map(|p| p.substitute_zero(v))
    }

    pub fn eval_modp(&self, field: &PrimeField, point: &[u64]) -> Result<ModMatrix, PolyError> {
        Ok(ModMatrix {
            field: *field,
            m: self.try_map(|p| p.eval_modp(field, point))?,
        })
    }

    /// JSON array of arrays of canonical polynomial strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.to_rows()
                .iter()
                .map(|row| {
                    serde_json::Value::Array(
                        row.iter()
                            .map(|p| serde_json::Value::String(p.to_string()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

/// A matrix of residues modulo `field.p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    pub field: PrimeField,
    pub m: Matrix<u64>,
}

impl ModMatrix {
    pub fn identity(field: PrimeField, n: usize) -> Self {
        ModMatrix {
            field,
            m: Matrix::from_fn(n, n, |i, j| u64::from(i == j)),
        }
    }

    pub fn mat_mul(&self, other: &ModMatrix) -> Result<ModMatrix, PolyError> {
        self.m.check_product(&other.m)?;
        let f = &self.field;
        let (r, inner, c) = (self.m.rows, self.m.cols, other.m.cols);
        let mut acc = vec![0u128; c];
        let mut data = Vec::with_capacity(r * c);
        let p = f.modulus() as u128;
        for i in 0..r {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..inner {
                let a = *self.m.get(i, k) as u128;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * *other.m.get(k, j) as u128) % p;
                }
            }
            data.extend(acc.iter().map(|&v| v as u64));
        }
        Ok(ModMatrix {
            field: self.field,
            m: Matrix {
                rows: r,
                cols: c,
                data,
                row_labels: self.m.row_labels.clone(),
                col_labels: other.m.col_labels.clone(),
            },
        })
    }

    /// Determinant by Gaussian elimination over `𝔽_p`.
    pub fn det(&self) -> Result<u64, PolyError> {
        if !self.m.is_square() {
            return Err(PolyError::NotSquare(self.m.rows, self.m.cols));
        }
        let f = &self.field;
        let n = self.m.rows;
        let mut a = self.m.data.clone();
        let mut det = 1u64;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| a[i * n + k] != 0) else {
                return Ok(0);
            };
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                det = f.neg(det);
            }
            let pivot = a[k * n + k];
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).expect("nonzero pivot");
            for i in k + 1..n {
                let factor = f.mul(a[i * n + k], inv);
                if factor == 0 {
                    continue;
                }
                for j in k..n {
                    let v = f.sub(a[i * n + j], f.mul(factor, a[k * n + j]));
                    a[i * n + j] = v;
                }
            }
        }
        Ok(det)
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination over `ℤ[U]`.
///
/// Refuses matrices larger than `limit × limit`.
pub fn det_symbolic(a: &PolyMatrix, limit: usize) -> Result<MultiPoly, PolyError> {
    if !a.is_square() {
        return Err(PolyError::NotSquare(a.rows, a.cols));
    }
    let n = a.rows;
    if n > limit {
        return Err(PolyError::SizeGuard { size: n, limit });
    }
    let nvars = a.data.first().map_or(0, MultiPoly::nvars);
    if n == 0 {
        return Ok(MultiPoly::one(nvars));
    }
    let mut m = a.data.clone();
    let mut prev = MultiPoly::one(nvars);
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i * n + k].is_zero()) else {
                return Ok(MultiPoly::zero(nvars));
            };
            for j in 0..n {
                m.swap(k * n + j, p * n + j);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i * n + j]
                    .checked_mul(&m[k * n + k])?
                    .checked_sub(&m[i * n + k].checked_mul(&m[k * n + j])?)?;
                let q = num.div_exact(&prev)?;
                debug_assert!(q.is_some(), "Bareiss division must be exact");
                m[i * n + j] = q.ok_or(PolyError::InexactDivision)?;
            }
            m[i * n + k] = MultiPoly::zero(nvars);
        }
        prev = m[k * n + k].clone();
    }
    let det = m[n * n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Determinant of `a` evaluated entrywise at `point`.
pub fn det_modp(a: &PolyMatrix, field: &PrimeField, point: &[u64]) -> Result<u64, PolyError> {
    if !a.is_square() {
        return Err(PolyError::NotSquare(a.rows, a.cols));
    }
    a.eval_modp(field, point)?.det()
}

/// Integer matrix helper used by tests and oracles.
pub fn integer_matrix(rows: &[Vec<i64>], nvars: usize) -> PolyMatrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| MultiPoly::constant(nvars, BigInt::from(v))).collect())
            .collect(),
    )
    .expect("rectangular input")
}
