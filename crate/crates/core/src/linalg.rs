//! Exact integer linear algebra.
//!
//! Everything here works over an [`ExactInteger`] scalar: arbitrary precision
//! [`num_bigint::BigInt`] in the pipeline, or a fixed-width primitive when the
//! caller knows the entries stay small. Fixed-width instances never wrap; any
//! overflow surfaces as [`Error::Overflow`].

use std::fmt;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed};

use crate::error::{Error, Result};

/// Exact signed integer scalar usable by [`IntMatrix`].
pub trait ExactInteger:
    Clone
    + fmt::Debug
    + fmt::Display
    + Ord
    + Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + Send
    + Sync
{
}

impl<T> ExactInteger for T where
    T: Clone
        + fmt::Debug
        + fmt::Display
        + Ord
        + Integer
        + Signed
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + Send
        + Sync
{
}

fn mul<T: ExactInteger>(a: &T, b: &T) -> Result<T> {
    a.checked_mul(b).ok_or(Error::Overflow("integer matrix arithmetic"))
}

fn sub<T: ExactInteger>(a: &T, b: &T) -> Result<T> {
    a.checked_sub(b).ok_or(Error::Overflow("integer matrix arithmetic"))
}

fn add<T: ExactInteger>(a: &T, b: &T) -> Result<T> {
    a.checked_add(b).ok_or(Error::Overflow("integer matrix arithmetic"))
}

/// Dense row-major integer matrix. A `0x0` matrix is valid.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: ExactInteger> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from explicit rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row {bad} has length {} but row 0 has length {cols}",
                rows[bad].len()
            )));
        }
        let n = rows.len();
        Ok(IntMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor for literals in tests and fixtures.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from_i64(v).expect("i64 fits")).collect())
                .collect(),
        )
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

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Submatrix with the given row and column indices, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn map<U: ExactInteger>(&self, mut f: impl FnMut(&T) -> U) -> IntMatrix<U> {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(&mut f).collect() }
    }

    /// Row vector times matrix: `v · M`.
    pub fn left_mul(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.rows {
            return Err(Error::Dimension(format!(
                "vector of length {} times {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = vec![T::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let prod = mul(vi, self.get(i, j))?;
                *o = add(o, &prod)?;
            }
        }
        Ok(out)
    }

    /// Matrix times column vector: `M · w`.
    pub fn mul_vec(&self, w: &[T]) -> Result<Vec<T>> {
        if w.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                w.len()
            )));
        }
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(w).try_fold(T::zero(), |acc, (a, b)| add(&acc, &mul(a, b)?))
            })
            .collect()
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }
}

impl<T: fmt::Display> fmt::Debug for IntMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// One fraction-free elimination update of the trailing block below pivot `k`.
fn bareiss_update<T: ExactInteger>(a: &mut [T], n: usize, k: usize, prev: &T) -> Result<()> {
    let pivot = a[k * n + k].clone();
    for i in k + 1..n {
        let aik = a[i * n + k].clone();
        for j in k + 1..n {
            let lhs = mul(&a[i * n + j], &pivot)?;
            let rhs = mul(&aik, &a[k * n + j])?;
            // exact by Sylvester's identity
            a[i * n + j] = sub(&lhs, &rhs)? / prev.clone();
        }
        a[i * n + k] = T::zero();
    }
    Ok(())
}

/// Exact determinant by Bareiss fraction-free elimination with row pivoting.
pub fn determinant<T: ExactInteger>(m: &IntMatrix<T>) -> Result<T> {
    m.require_square()?;
    let n = m.rows;
    let mut a = m.data.clone();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i * n + k].is_zero()) else {
            return Ok(T::zero());
        };
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            negate = !negate;
        }
        bareiss_update(&mut a, n, k, &prev)?;
        prev = a[k * n + k].clone();
    }
    Ok(if negate { -prev } else { prev })
}

/// `[det M[..1,..1], det M[..2,..2], ..., det M]`.
///
/// Runs Bareiss without pivoting, whose k-th pivot is exactly the k-th leading
/// minor. A zero pivot stops the sweep and the remaining minors are computed
/// one at a time.
pub fn leading_principal_minors<T: ExactInteger>(m: &IntMatrix<T>) -> Result<Vec<T>> {
    m.require_square()?;
    let n = m.rows;
    let mut a = m.data.clone();
    let mut minors = Vec::with_capacity(n);
    let mut prev = T::one();
    for k in 0..n {
        let pivot = a[k * n + k].clone();
        if pivot.is_zero() {
            minors.push(T::zero());
            for t in k + 1..n {
                let idx: Vec<usize> = (0..=t).collect();
                minors.push(determinant(&m.submatrix(&idx, &idx))?);
            }
            return Ok(minors);
        }
        minors.push(pivot.clone());
        bareiss_update(&mut a, n, k, &prev)?;
        prev = pivot;
    }
    Ok(minors)
}

/// Rank over the rationals.
pub fn rank<T: ExactInteger>(m: &IntMatrix<T>) -> Result<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.data.clone();
    let mut rank = 0;
    let mut prev = T::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i * cols + col].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(rank * cols + j, p * cols + j);
            }
        }
        let pivot = a[rank * cols + col].clone();
        for i in rank + 1..rows {
            let aic = a[i * cols + col].clone();
            for j in col + 1..cols {
                let lhs = mul(&a[i * cols + j], &pivot)?;
                let rhs = mul(&aic, &a[rank * cols + j])?;
                a[i * cols + j] = sub(&lhs, &rhs)? / prev.clone();
            }
            a[i * cols + col] = T::zero();
        }
        prev = pivot;
        rank += 1;
    }
    Ok(rank)
}

/// Basis of the left kernel lattice `{ v in Z^rows : v · M = 0 }`.
///
/// Row-reduces `[M | I]` with unimodular integer row operations into an
/// echelon form; the transformation rows that end up next to zero rows of the
/// reduced `M` form a lattice basis. The basis is not canonical.
pub fn integer_kernel_basis<T: ExactInteger>(m: &IntMatrix<T>) -> Result<Vec<Vec<T>>> {
    let (rows, cols) = (m.rows, m.cols);
    let mut h: Vec<Vec<T>> = m.to_rows();
    let mut u: Vec<Vec<T>> = IntMatrix::<T>::identity(rows).to_rows();
    let mut pivot_row = 0;

    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(p) = (pivot_row..rows).find(|&i| !h[i][col].is_zero()) else {
            continue;
        };
        h.swap(pivot_row, p);
        u.swap(pivot_row, p);
        for i in pivot_row + 1..rows {
            if h[i][col].is_zero() {
                continue;
            }
            let a = h[pivot_row][col].clone();
            let b = h[i][col].clone();
            let eg = a.extended_gcd(&b);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let (ag, bg) = (a / g.clone(), b / g);
            // [[s, t], [b/g, -a/g]] has determinant -1.
            combine_rows(&mut h, pivot_row, i, &s, &t, &bg, &ag)?;
            combine_rows(&mut u, pivot_row, i, &s, &t, &bg, &ag)?;
        }
        pivot_row += 1;
    }

    Ok(u.split_off(pivot_row))
}

/// `(row_p, row_i) <- (s·row_p + t·row_i, bg·row_p - ag·row_i)`.
fn combine_rows<T: ExactInteger>(
    m: &mut [Vec<T>],
    p: usize,
    i: usize,
    s: &T,
    t: &T,
    bg: &T,
    ag: &T,
) -> Result<()> {
    for j in 0..m[p].len() {
        let (x, y) = (m[p][j].clone(), m[i][j].clone());
        m[p][j] = add(&mul(s, &x)?, &mul(t, &y)?)?;
        m[i][j] = sub(&mul(bg, &x)?, &mul(ag, &y)?)?;
    }
    Ok(())
}

/// True when every off-diagonal entry is non-positive.
pub fn is_z_matrix<T: ExactInteger>(m: &IntMatrix<T>) -> bool {
    (0..m.rows).all(|i| (0..m.cols).all(|j| i == j || !m.get(i, j).is_positive()))
}

/// Nonsingular M-matrix test for Z-matrices: all leading principal minors positive.
pub fn is_nonsingular_m_matrix<T: ExactInteger>(m: &IntMatrix<T>) -> Result<bool> {
    if !is_z_matrix(m) {
        return Err(Error::Contract("M-matrix test requires a Z-matrix".into()));
    }
    Ok(leading_principal_minors(m)?.iter().all(Signed::is_positive))
}
