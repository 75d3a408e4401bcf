//! Dense exact linear algebra over a [`FieldSpec`].
//!
//! Vectors and matrices carry their field. Subspaces are stored in reduced
//! row-echelon form with no zero rows, so two subspaces are equal exactly when
//! their stored matrices are identical.
//!
//! Tensor products flatten left-factor-major: component `(i, j)` of `u ⊗ v`
//! sits at index `i·dim(v) + j`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("rows do not form a basis")]
    NotABasis,
}

pub type Result<T, E = LinalgError> = std::result::Result<T, E>;

/// A coordinate vector in `F^d`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "wire::VectorRepr", into = "wire::VectorRepr")]
pub struct Vector {
    field: FieldSpec,
    coeffs: Vec<u16>,
}

impl Vector {
    pub fn zeros(field: &FieldSpec, dim: usize) -> Self {
        Self { field: field.clone(), coeffs: vec![0; dim] }
    }

    /// Unit vector `e_index`.
    pub fn unit(field: &FieldSpec, dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(field, dim);
        v.coeffs[index] = 1;
        v
    }

    /// Build from canonical element indices.
    pub fn from_values(field: &FieldSpec, values: &[u64]) -> Result<Self> {
        let coeffs = values
            .iter()
            .map(|&v| field.element(v).map(|e| e.value()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { field: field.clone(), coeffs })
    }

    pub fn from_elements(field: &FieldSpec, elements: &[FieldElement]) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(elements.len());
        for e in elements {
            field.check(e.field())?;
            coeffs.push(e.value());
        }
        Ok(Self { field: field.clone(), coeffs })
    }

    pub(crate) fn from_raw(field: &FieldSpec, coeffs: Vec<u16>) -> Self {
        Self { field: field.clone(), coeffs }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Canonical element indices of the coefficients.
    pub fn values(&self) -> &[u16] {
        &self.coeffs
    }

    pub fn get(&self, index: usize) -> FieldElement {
        self.field.element(self.coeffs[index] as u64).expect("stored values are reduced")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Index of the first nonzero coefficient.
    pub fn leading_index(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    fn conform(&self, other: &Vector) -> Result<()> {
        self.field.check(&other.field)?;
        if self.dim() != other.dim() {
            return Err(LinalgError::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        self.conform(other)?;
        let f = &self.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Vector::from_raw(f, coeffs))
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.conform(other)?;
        let f = &self.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(Vector::from_raw(f, coeffs))
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Vector> {
        self.field.check(c.field())?;
        Ok(self.scale_raw(c.value()))
    }

    pub(crate) fn scale_raw(&self, c: u16) -> Vector {
        let f = &self.field;
        Vector::from_raw(f, self.coeffs.iter().map(|&a| f.mul(c, a)).collect())
    }

    /// `Σ self_i · other_i`: a row functional evaluated on a column vector.
    pub fn pair(&self, other: &Vector) -> Result<FieldElement> {
        self.conform(other)?;
        Ok(self.field.element(self.pair_raw(other) as u64)?)
    }

    pub(crate) fn pair_raw(&self, other: &Vector) -> u16 {
        let f = &self.field;
        self.coeffs.iter().zip(&other.coeffs).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    /// `self ⊗ other`, left-factor-major.
    pub fn tensor(&self, other: &Vector) -> Result<Vector> {
        self.field.check(&other.field)?;
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .flat_map(|&a| other.coeffs.iter().map(move |&b| f.mul(a, b)))
            .collect();
        Ok(Vector::from_raw(f, coeffs))
    }

    /// `Some(c)` with `self = c · other` when the two span the same line.
    pub fn ratio_to(&self, other: &Vector) -> Option<FieldElement> {
        if self.conform(other).is_err() || self.is_zero() || other.is_zero() {
            return None;
        }
        let lead = other.leading_index()?;
        let f = &self.field;
        let c = f.mul(self.coeffs[lead], f.inv(other.coeffs[lead])?);
        (other.scale_raw(c) == *self).then(|| f.element(c as u64).unwrap())
    }

    /// Equal up to a nonzero scalar.
    pub fn projectively_equal(&self, other: &Vector) -> bool {
        self.ratio_to(other).is_some_and(|c| !c.is_zero())
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.field)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|&c| self.field.format_value(c)).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "wire::MatrixRepr", into = "wire::MatrixRepr")]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u16>,
}

impl Matrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Self { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Build from rows of canonical element indices.
    pub fn from_rows(field: &FieldSpec, rows: &[Vec<u64>]) -> Result<Self> {
        let vectors = rows.iter().map(|r| Vector::from_values(field, r)).collect::<Result<Vec<_>>>()?;
        let cols = vectors.first().map_or(0, Vector::dim);
        Self::from_vectors(field, cols, &vectors)
    }

    /// Stack vectors as rows. `cols` fixes the width when the list is empty.
    pub fn from_vectors(field: &FieldSpec, cols: usize, rows: &[Vector]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            field.check(r.field())?;
            if r.dim() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, found: r.dim() });
            }
            data.extend_from_slice(&r.coeffs);
        }
        Ok(Self { field: field.clone(), rows: rows.len(), cols, data })
    }

    pub(crate) fn from_raw(field: &FieldSpec, rows: usize, cols: usize, data: Vec<u16>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { field: field.clone(), rows, cols, data }
    }

    pub fn field(&self) -> &FieldSpec {
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

    pub(crate) fn raw(&self, r: usize, c: usize) -> u16 {
        self.data[r * self.cols + c]
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.field.element(self.raw(r, c) as u64).expect("stored values are reduced")
    }

    pub fn row(&self, r: usize) -> Vector {
        Vector::from_raw(&self.field, self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn column(&self, c: usize) -> Vector {
        Vector::from_raw(&self.field, (0..self.rows).map(|r| self.raw(r, c)).collect())
    }

    /// Rows as canonical element indices.
    pub fn to_rows(&self) -> Vec<Vec<u16>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[u16]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.raw(r, c));
            }
        }
        Matrix::from_raw(&self.field, self.cols, self.rows, data)
    }

    /// `self · v`.
    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        self.field.check(v.field())?;
        if v.dim() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: v.dim() });
        }
        let coeffs = (0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                row.iter().zip(&v.coeffs).fold(0, |acc, (&a, &b)| self.field.add(acc, self.field.mul(a, b)))
            })
            .collect();
        Ok(Vector::from_raw(&self.field, coeffs))
    }

    /// `self · rhs`.
    pub fn multiply(&self, rhs: &Matrix) -> Result<Matrix> {
        self.field.check(&rhs.field)?;
        if self.cols != rhs.rows {
            return Err(LinalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = &self.field;
        let mut data = vec![0u16; self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.raw(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let slot = &mut data[i * rhs.cols + j];
                    *slot = f.add(*slot, f.mul(a, rhs.raw(k, j)));
                }
            }
        }
        Ok(Matrix::from_raw(f, self.rows, rhs.cols, data))
    }

    /// Kronecker product `self ⊗ rhs`, left-factor-major.
    pub fn kron(&self, rhs: &Matrix) -> Result<Matrix> {
        self.field.check(&rhs.field)?;
        let f = &self.field;
        let (rows, cols) = (self.rows * rhs.rows, self.cols * rhs.cols);
        let mut data = vec![0u16; rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.raw(i, j);
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        data[(i * rhs.rows + k) * cols + j * rhs.cols + l] = f.mul(a, rhs.raw(k, l));
                    }
                }
            }
        }
        Ok(Matrix::from_raw(f, rows, cols, data))
    }

    /// Gauss–Jordan elimination. Returns the reduced row-echelon form (same
    /// shape, zero rows last) and the rank.
    pub fn rref(&self) -> (Matrix, usize) {
        let mut m = self.clone();
        let rank = m.rref_in_place();
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    fn rref_in_place(&mut self) -> usize {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivot_row = 0;
        for c in 0..cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(found) = (pivot_row..self.rows).find(|&r| self.raw(r, c) != 0) else {
                continue;
            };
            if found != pivot_row {
                for k in 0..cols {
                    self.data.swap(found * cols + k, pivot_row * cols + k);
                }
            }
            let inv = f.inv(self.raw(pivot_row, c)).unwrap();
            for k in 0..cols {
                let idx = pivot_row * cols + k;
                self.data[idx] = f.mul(inv, self.data[idx]);
            }
            for r in 0..self.rows {
                let factor = self.raw(r, c);
                if r == pivot_row || factor == 0 {
                    continue;
                }
                for k in 0..cols {
                    let sub = f.mul(factor, self.data[pivot_row * cols + k]);
                    let idx = r * cols + k;
                    self.data[idx] = f.sub(self.data[idx], sub);
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }

    /// Exact inverse, or `None` when the matrix is singular.
    pub fn invert(&self) -> Result<Option<Matrix>> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.data[r * 2 * n + c] = self.raw(r, c);
            }
            aug.data[r * 2 * n + n + r] = 1;
        }
        aug.rref_in_place();
        // Full rank iff the left block reduced to the identity.
        if (0..n).any(|i| aug.raw(i, i) != 1) {
            return Ok(None);
        }
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            data.extend_from_slice(&aug.data[r * 2 * n + n..(r + 1) * 2 * n]);
        }
        Ok(Some(Matrix::from_raw(&self.field, n, n, data)))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// The null space `{v : self · v = 0}` as a subspace of `F^cols`.
    pub fn kernel(&self) -> Subspace {
        let (r, rank) = self.rref();
        let f = &self.field;
        let pivots: Vec<usize> = (0..rank).map(|i| (0..self.cols).find(|&c| r.raw(i, c) != 0).unwrap()).collect();
        let basis: Vec<Vector> = (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0u16; self.cols];
                v[free] = 1;
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(r.raw(i, free));
                }
                Vector::from_raw(f, v)
            })
            .collect();
        Subspace::span_unchecked(f, self.cols, &basis)
    }

    /// Functionals dual to the rows of a basis matrix: row `i` of the result
    /// pairs to 1 with basis row `i` and to 0 with every other basis row.
    /// This is the inverse-transpose of the basis matrix.
    pub fn dual_basis(&self) -> Result<Matrix> {
        let inv = self.invert()?.ok_or(LinalgError::NotABasis)?;
        Ok(inv.transpose())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.field)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.row_vectors().iter().map(Vector::to_string).collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// A subspace of `F^dim`, held as its reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "wire::SubspaceRepr", into = "wire::SubspaceRepr")]
pub struct Subspace {
    dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: &FieldSpec, dim: usize) -> Self {
        Self { dim, basis: Matrix::zeros(field, 0, dim) }
    }

    pub fn full(field: &FieldSpec, dim: usize) -> Self {
        Self { dim, basis: Matrix::identity(field, dim) }
    }

    /// The span of `vectors` inside `F^dim`.
    pub fn span(field: &FieldSpec, dim: usize, vectors: &[Vector]) -> Result<Self> {
        let m = Matrix::from_vectors(field, dim, vectors)?;
        Ok(Self::from_matrix(&m))
    }

    fn span_unchecked(field: &FieldSpec, dim: usize, vectors: &[Vector]) -> Self {
        Self::span(field, dim, vectors).expect("vectors conform")
    }

    /// The row space of `m`.
    pub fn from_matrix(m: &Matrix) -> Self {
        let (r, rank) = m.rref();
        let basis = Matrix::from_raw(m.field(), rank, m.cols(), r.data[..rank * m.cols()].to_vec());
        Self { dim: m.cols(), basis }
    }

    pub fn field(&self) -> &FieldSpec {
        self.basis.field()
    }

    /// Ambient dimension.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.dim
    }

    /// The canonical basis in reduced row-echelon form.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    /// Membership by eliminating `v` against the echelon rows.
    pub fn contains(&self, v: &Vector) -> Result<bool> {
        self.field().check(v.field())?;
        if v.dim() != self.dim {
            return Err(LinalgError::DimensionMismatch { expected: self.dim, found: v.dim() });
        }
        let f = self.field();
        let mut residual = v.coeffs.clone();
        for i in 0..self.rank() {
            let pivot = (0..self.dim).find(|&c| self.basis.raw(i, c) != 0).unwrap();
            let factor = residual[pivot];
            if factor == 0 {
                continue;
            }
            for (c, slot) in residual.iter_mut().enumerate() {
                *slot = f.sub(*slot, f.mul(factor, self.basis.raw(i, c)));
            }
        }
        Ok(residual.iter().all(|&c| c == 0))
    }

    /// Canonical-form equality, with shape checks.
    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        self.field().check(other.field())?;
        if self.dim != other.dim {
            return Err(LinalgError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(self == other)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        for v in self.basis_vectors() {
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{} in {}^{}", self.basis, self.field(), self.dim)
    }
}

/// JSON forms: elements are integers for prime fields and polynomial strings
/// for extensions; both forms are accepted on input.
pub(crate) mod wire {
    use serde::{Deserialize, Serialize};

    use super::*;

    #[derive(Serialize, Deserialize, Clone)]
    #[serde(untagged)]
    pub enum ElementRepr {
        Index(u64),
        Text(String),
    }

    impl ElementRepr {
        pub fn encode(field: &FieldSpec, value: u16) -> Self {
            if field.is_prime_field() {
                ElementRepr::Index(value as u64)
            } else {
                ElementRepr::Text(field.format_value(value))
            }
        }

        pub fn decode(&self, field: &FieldSpec) -> Result<u16, FieldError> {
            match self {
                ElementRepr::Index(v) => field.element(*v).map(|e| e.value()),
                ElementRepr::Text(s) => field.parse_element(s).map(|e| e.value()),
            }
        }
    }

    pub fn encode_row(field: &FieldSpec, values: &[u16]) -> Vec<ElementRepr> {
        values.iter().map(|&v| ElementRepr::encode(field, v)).collect()
    }

    pub fn decode_row(field: &FieldSpec, row: &[ElementRepr]) -> Result<Vec<u16>, FieldError> {
        row.iter().map(|e| e.decode(field)).collect()
    }

    pub fn parse_field(text: &str) -> Result<FieldSpec, FieldError> {
        text.parse()
    }

    #[derive(Serialize, Deserialize)]
    pub struct VectorRepr {
        pub field: String,
        pub coeffs: Vec<ElementRepr>,
    }

    impl From<Vector> for VectorRepr {
        fn from(v: Vector) -> Self {
            Self { field: v.field.to_string(), coeffs: encode_row(&v.field, &v.coeffs) }
        }
    }

    impl TryFrom<VectorRepr> for Vector {
        type Error = LinalgError;

        fn try_from(r: VectorRepr) -> Result<Self> {
            let field = parse_field(&r.field)?;
            let coeffs = decode_row(&field, &r.coeffs)?;
            Ok(Vector::from_raw(&field, coeffs))
        }
    }

    #[derive(Serialize, Deserialize)]
    pub struct MatrixRepr {
        pub field: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub cols: Option<usize>,
        pub rows: Vec<Vec<ElementRepr>>,
    }

    impl From<Matrix> for MatrixRepr {
        fn from(m: Matrix) -> Self {
            let rows = m.to_rows().iter().map(|r| encode_row(&m.field, r)).collect();
            let cols = (m.rows == 0).then_some(m.cols);
            Self { field: m.field.to_string(), cols, rows }
        }
    }

    pub fn decode_matrix(field: &FieldSpec, cols: Option<usize>, rows: &[Vec<ElementRepr>]) -> Result<Matrix> {
        let width = cols.or_else(|| rows.first().map(Vec::len)).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * width);
        for row in rows {
            if row.len() != width {
                return Err(LinalgError::DimensionMismatch { expected: width, found: row.len() });
            }
            data.extend(decode_row(field, row)?);
        }
        Ok(Matrix::from_raw(field, rows.len(), width, data))
    }

    impl TryFrom<MatrixRepr> for Matrix {
        type Error = LinalgError;

        fn try_from(r: MatrixRepr) -> Result<Self> {
            let field = parse_field(&r.field)?;
            decode_matrix(&field, r.cols, &r.rows)
        }
    }

    #[derive(Serialize, Deserialize)]
    pub struct SubspaceRepr {
        pub field: String,
        pub dim: usize,
        pub rref: Vec<Vec<ElementRepr>>,
    }

    impl From<Subspace> for SubspaceRepr {
        fn from(s: Subspace) -> Self {
            let field = s.field().clone();
            let rref = s.basis.to_rows().iter().map(|r| encode_row(&field, r)).collect();
            Self { field: field.to_string(), dim: s.dim, rref }
        }
    }

    impl TryFrom<SubspaceRepr> for Subspace {
        type Error = LinalgError;

        /// Any spanning rows are accepted; the result is re-canonicalized.
        fn try_from(r: SubspaceRepr) -> Result<Self> {
            let field = parse_field(&r.field)?;
            let m = decode_matrix(&field, Some(r.dim), &r.rref)?;
            Ok(Subspace::from_matrix(&m))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    fn mat(q: u64, rows: &[&[u64]]) -> Matrix {
        let rows: Vec<Vec<u64>> = rows.iter().map(|r| r.to_vec()).collect();
        Matrix::from_rows(&gf(q), &rows).unwrap()
    }

    fn vecq(q: u64, v: &[u64]) -> Vector {
        Vector::from_values(&gf(q), v).unwrap()
    }

    /// Every vector of `F^d` in counting order.
    fn all_vectors(field: &FieldSpec, d: usize) -> Vec<Vector> {
        let q = field.order() as u64;
        (0..q.pow(d as u32))
            .map(|mut code| {
                let vals: Vec<u64> = (0..d)
                    .map(|_| {
                        let c = code % q;
                        code /= q;
                        c
                    })
                    .collect();
                Vector::from_values(field, &vals).unwrap()
            })
            .collect()
    }

    /// Rank by brute force: the largest k such that some k rows have only the
    /// trivial vanishing combination.
    fn brute_rank(m: &Matrix) -> usize {
        let f = m.field();
        let rows = m.row_vectors();
        let r = rows.len();
        let combos = all_vectors(f, r);
        // size of the row space = q^rank
        let mut seen = std::collections::HashSet::new();
        for c in combos {
            let mut acc = Vector::zeros(f, m.cols());
            for (i, row) in rows.iter().enumerate() {
                acc = acc.add(&row.scale(&c.get(i)).unwrap()).unwrap();
            }
            seen.insert(acc);
        }
        let q = f.order();
        let mut rank = 0;
        let mut size = 1;
        while size < seen.len() {
            size *= q;
            rank += 1;
        }
        rank
    }

    #[test]
    fn rref_examples() {
        let (r, rank) = mat(2, &[&[1, 0], &[0, 1]]).rref();
        assert_eq!((r, rank), (mat(2, &[&[1, 0], &[0, 1]]), 2));
        let (r, rank) = mat(2, &[&[1, 1], &[1, 1]]).rref();
        assert_eq!((r, rank), (mat(2, &[&[1, 1], &[0, 0]]), 1));
        // det = 1 - 4 = -3 = 0 mod 3: the second row is twice the first
        let m = mat(3, &[&[1, 2], &[2, 1]]);
        assert_eq!(brute_rank(&m), 1);
        let (r, rank) = m.rref();
        assert_eq!((r, rank), (mat(3, &[&[1, 2], &[0, 0]]), 1));
    }

    #[test]
    fn rref_leaves_input_unmodified() {
        let m = mat(3, &[&[0, 2, 1], &[1, 1, 0]]);
        let copy = m.clone();
        let _ = m.rref();
        assert_eq!(m, copy);
    }

    #[test]
    fn invert_examples() {
        let id = Matrix::identity(&gf(2), 2);
        assert_eq!(id.invert().unwrap(), Some(id.clone()));
        let g = mat(2, &[&[0, 1], &[1, 0]]);
        assert_eq!(g.multiply(&g).unwrap(), id);
        assert_eq!(g.invert().unwrap(), Some(g.clone()));
        assert_eq!(mat(2, &[&[1, 1], &[1, 1]]).invert().unwrap(), None);
        assert_eq!(
            mat(2, &[&[1, 1, 0]]).invert().unwrap_err(),
            LinalgError::NotSquare { rows: 1, cols: 3 }
        );
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(&gf(2), 2).kernel().rank(), 0);
        let k = mat(2, &[&[1, 1]]).kernel();
        assert_eq!(k, Subspace::span(&gf(2), 2, &[vecq(2, &[1, 1])]).unwrap());
        let k = mat(3, &[&[1, 1, 1]]).kernel();
        let solutions: Vec<Vector> =
            all_vectors(&gf(3), 3).into_iter().filter(|v| v.values().iter().map(|&c| c as u64).sum::<u64>() % 3 == 0).collect();
        assert_eq!(solutions.len(), 9);
        assert_eq!(k.rank(), 2);
        for v in all_vectors(&gf(3), 3) {
            assert_eq!(k.contains(&v).unwrap(), solutions.contains(&v));
        }
    }

    #[test]
    fn dual_basis_examples() {
        let f = gf(2);
        let std = Matrix::identity(&f, 2);
        assert_eq!(std.dual_basis().unwrap(), std);
        // Y basis {σ, 0} dualizes to {⟨1|, ⟨σ|}
        let y = mat(2, &[&[1, 1], &[1, 0]]);
        assert_eq!(y.dual_basis().unwrap(), mat(2, &[&[0, 1], &[1, 1]]));
        assert_eq!(y.dual_basis().unwrap().dual_basis().unwrap(), y);
        assert_eq!(mat(2, &[&[1, 1], &[1, 1]]).dual_basis().unwrap_err(), LinalgError::NotABasis);
    }

    #[test]
    fn span_examples() {
        let f = gf(2);
        assert!(Subspace::span(&f, 2, &[vecq(2, &[1, 0]), vecq(2, &[0, 1])]).unwrap().is_full());
        let line = Subspace::span(&f, 2, &[vecq(2, &[1, 1])]).unwrap();
        assert_eq!(line.basis(), &mat(2, &[&[1, 1]]));
        assert_eq!(Subspace::span(&f, 2, &[vecq(2, &[1, 1]), vecq(2, &[1, 1])]).unwrap(), line);
        assert_eq!(Subspace::span(&f, 2, &[]).unwrap().rank(), 0);
        assert!(Subspace::span(&f, 2, &[vecq(2, &[1, 1, 0])]).is_err());
    }

    #[test]
    fn membership_and_equality() {
        let f = gf(2);
        let full = Subspace::full(&f, 2);
        for v in all_vectors(&f, 2) {
            assert!(full.contains(&v).unwrap());
        }
        let line = Subspace::span(&f, 2, &[vecq(2, &[1, 1])]).unwrap();
        assert!(line.contains(&vecq(2, &[1, 1])).unwrap());
        assert!(!line.contains(&vecq(2, &[1, 0])).unwrap());
        let a = Subspace::span(&f, 2, &[vecq(2, &[1, 0]), vecq(2, &[0, 1])]).unwrap();
        let b = Subspace::span(&f, 2, &[vecq(2, &[1, 1]), vecq(2, &[0, 1])]).unwrap();
        assert!(a.equals(&b).unwrap());
        assert!(line.contains(&vecq(2, &[1, 1, 1])).is_err());
        assert!(a.equals(&Subspace::full(&f, 3)).is_err());
    }

    #[test]
    fn tensor_examples() {
        let zero = vecq(2, &[1, 0]);
        let one = vecq(2, &[0, 1]);
        assert_eq!(zero.tensor(&one).unwrap(), vecq(2, &[0, 1, 0, 0]));
        let s = zero.tensor(&one).unwrap().add(&one.tensor(&zero).unwrap()).unwrap();
        assert_eq!(s, vecq(2, &[0, 1, 1, 0]));
        let g = mat(2, &[&[0, 1], &[1, 0]]);
        let g1 = g.kron(&Matrix::identity(&gf(2), 2)).unwrap();
        // G swaps the two correlated pairs: (G⊗1)S = |0,0⟩+|1,1⟩
        let r = vecq(2, &[1, 0, 0, 1]);
        assert_eq!(g1.apply(&s).unwrap(), r);
        assert_eq!(g1.apply(&r).unwrap(), s);
    }

    #[test]
    fn kron_matches_tensor_of_images() {
        let f = gf(3);
        let a = mat(3, &[&[1, 2], &[0, 1]]);
        let b = mat(3, &[&[2, 1, 0], &[1, 1, 1], &[0, 2, 1]]);
        let ab = a.kron(&b).unwrap();
        for u in all_vectors(&f, 2) {
            for v in all_vectors(&f, 3).iter().step_by(4) {
                let lhs = ab.apply(&u.tensor(v).unwrap()).unwrap();
                let rhs = a.apply(&u).unwrap().tensor(&b.apply(v).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn shape_errors() {
        let f = gf(2);
        assert!(mat(2, &[&[1, 0]]).multiply(&mat(2, &[&[1, 0]])).is_err());
        assert!(Matrix::identity(&f, 2).apply(&vecq(2, &[1, 0, 1])).is_err());
        assert!(vecq(2, &[1, 0]).add(&vecq(3, &[1, 0])).is_err());
    }

    #[test]
    fn projective_equality() {
        let f = gf(3);
        let v = vecq(3, &[1, 2]);
        let w = v.scale(&f.element(2).unwrap()).unwrap();
        assert!(v.projectively_equal(&w));
        assert_eq!(w.ratio_to(&v), Some(f.element(2).unwrap()));
        assert!(!v.projectively_equal(&vecq(3, &[1, 1])));
        assert!(!v.projectively_equal(&Vector::zeros(&f, 2)));
    }

    #[test]
    fn json_forms() {
        let v = vecq(3, &[2, 0, 1]);
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(text, r#"{"field":"GF(3)","coeffs":[2,0,1]}"#);
        let f4 = gf(4);
        let w = Vector::from_values(&f4, &[3, 2]).unwrap();
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"{"field":"GF(2^2)","coeffs":["x+1","x"]}"#);
        let m = mat(2, &[&[1, 1], &[0, 1]]);
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"{"field":"GF(2)","rows":[[1,1],[0,1]]}"#);
        let s = Subspace::span(&gf(2), 3, &[vecq(2, &[1, 1, 0])]).unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"field":"GF(2)","dim":3,"rref":[[1,1,0]]}"#);
        let z = Subspace::zero(&gf(2), 3);
        assert_eq!(serde_json::from_str::<Subspace>(&serde_json::to_string(&z).unwrap()).unwrap(), z);
        assert!(serde_json::from_str::<Vector>(r#"{"field":"GF(3)","coeffs":[3]}"#).is_err());
        assert!(serde_json::from_str::<Matrix>(r#"{"field":"GF(3)","rows":[[1],[1,2]]}"#).is_err());
    }
}
