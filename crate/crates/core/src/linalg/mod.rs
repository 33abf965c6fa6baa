//! Exact dense linear algebra over [`Scalar`].
//!
//! All eliminations pick the first nonzero entry of a column as pivot, so
//! results are deterministic functions of the input.

mod calibration;

pub use calibration::{gale_transform, Calibration};

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Vector = Vec<Scalar>;

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc += x * y;
    }
    acc
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(v: &[Scalar], s: &Scalar) -> Vector {
    v.iter().map(|x| x * s).collect()
}

pub fn neg(v: &[Scalar]) -> Vector {
    v.iter().map(|x| -x).collect()
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Representative of the ray `R_{>0}·v`: `v` divided by the absolute value of
/// its first nonzero entry. Zero vectors are returned unchanged.
pub fn normalize_direction(v: &[Scalar]) -> Vector {
    match v.iter().find(|x| !x.is_zero()) {
        None => v.to_vec(),
        Some(lead) => {
            let inv = lead.abs().inv().expect("nonzero lead");
            scale(v, &inv)
        }
    }
}

/// Positive scalar `λ` with `u = λ·v`, if any.
pub fn positive_multiple(u: &[Scalar], v: &[Scalar]) -> Option<Scalar> {
    let j = v.iter().position(|x| !x.is_zero())?;
    let lambda = &u[j] / &v[j];
    if !lambda.is_positive() {
        return None;
    }
    u.iter().zip(v).all(|(a, b)| *a == &lambda * b).then_some(lambda)
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// One solution of a linear system plus a basis of the homogeneous solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vector,
    pub kernel: Vec<Vector>,
}

pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors, all of length `height`.
    pub fn from_columns(height: usize, columns: &[Vector]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != height) {
            return Err(Error::DimensionMismatch("columns of unequal length".into()));
        }
        let mut m = Self::zeros(height, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v = rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        Self::from_rows(v).expect("rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column_vectors(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), rhs.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                out.data[i * rhs.cols + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out.data[i * idx.len() + jj] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let data = idx.iter().flat_map(|&i| self.row(i).iter().cloned()).collect();
        Matrix { rows: idx.len(), cols: self.cols, data }
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m);
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        echelon_rank(&mut m)
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m.get(r, c).is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            let inv = pivot.inv()?;
            for r in c + 1..n {
                if m.get(r, c).is_zero() {
                    continue;
                }
                let f = m.get(r, c) * &inv;
                m.axpy_row(r, c, &f, c);
            }
        }
        Ok(det)
    }

    /// Basis of `{x : Mx = 0}` from the reduced echelon form, free variables in
    /// increasing order, each basis vector carrying a `1` at its free variable.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let Rref { matrix, pivots } = self.rref();
        kernel_from_rref(&matrix, &pivots, self.cols)
    }

    pub fn solve(&self, rhs: &[Scalar]) -> Result<Option<AffineSolution>> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.data[i * (self.cols + 1) + j] = self.get(i, j).clone();
            }
            aug.data[i * (self.cols + 1) + self.cols] = rhs[i].clone();
        }
        let pivots = rref_in_place(&mut aug);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut particular = vec![Scalar::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            particular[p] = aug.get(r, self.cols).clone();
        }
        let kernel = kernel_from_rref(&aug, &pivots, self.cols);
        Ok(Some(AffineSolution { particular, kernel }))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j).clone();
            }
            aug.data[i * 2 * n + n + i] = Scalar::one();
        }
        let pivots = rref_in_place(&mut aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Degenerate("singular matrix".into()));
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = aug.get(i, n + j).clone();
            }
        }
        Ok(inv)
    }

    /// Rank of the lattice `{x ∈ Z^cols : Mx = 0}`.
    ///
    /// Writing `M = A + B·√m` with rational `A`, `B`, an integer vector is in
    /// the kernel iff it is in the rational kernel of the stacked matrix `[A; B]`.
    pub fn integer_kernel_rank(&self) -> usize {
        let mut stacked = Self::zeros(2 * self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                stacked.data[i * self.cols + j] = Scalar::from_rational(x.rational_part().clone());
                stacked.data[(self.rows + i) * self.cols + j] =
                    Scalar::from_rational(x.irrational_part().clone());
            }
        }
        self.cols - stacked.rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `row[r] -= f · row[p]` for columns `from..`.
    fn axpy_row(&mut self, r: usize, p: usize, f: &Scalar, from: usize) {
        for j in from..self.cols {
            let pj = &self.data[p * self.cols + j];
            if pj.is_zero() {
                continue;
            }
            let delta = f * pj;
            self.data[r * self.cols + j] -= &delta;
        }
    }
}

fn rref_in_place(m: &mut Matrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(p, r);
        let inv = m.get(r, c).inv().expect("nonzero pivot");
        if !inv.is_one() {
            for j in c..m.cols {
                let v = &m.data[r * m.cols + j] * &inv;
                m.data[r * m.cols + j] = v;
            }
        }
        for i in 0..m.rows {
            if i != r && !m.get(i, c).is_zero() {
                let f = m.get(i, c).clone();
                m.axpy_row(i, r, &f, c);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn echelon_rank(m: &mut Matrix) -> usize {
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(p, r);
        let inv = m.get(r, c).inv().expect("nonzero pivot");
        for i in r + 1..m.rows {
            if !m.get(i, c).is_zero() {
                let f = m.get(i, c) * &inv;
                m.axpy_row(i, r, &f, c);
            }
        }
        r += 1;
    }
    r
}

fn kernel_from_rref(m: &Matrix, pivots: &[usize], nvars: usize) -> Vec<Vector> {
    let free: Vec<usize> = (0..nvars).filter(|j| !pivots.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); nvars];
            v[f] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m.get(r, f);
            }
            v
        })
        .collect()
}

/// Rank of a family of vectors of common length.
pub fn rank_of(vectors: &[&[Scalar]]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<Vector> = vectors.iter().map(|v| v.to_vec()).collect();
    Matrix::from_rows(rows).expect("equal lengths").rank()
}

/// Coefficients `λ` with `Σ λ_j basis_j = target`, when the basis vectors are
/// independent and the target lies in their span.
pub fn coordinates_in(basis: &[&[Scalar]], target: &[Scalar]) -> Option<Vector> {
    let height = target.len();
    let cols: Vec<Vector> = basis.iter().map(|v| v.to_vec()).collect();
    let m = Matrix::from_columns(height, &cols).ok()?;
    let sol = m.solve(target).ok()??;
    sol.kernel.is_empty().then_some(sol.particular)
}

/// Unique solution of a square system, `None` when singular.
pub fn solve_square(rows: &[&[Scalar]], rhs: &[Scalar]) -> Option<Vector> {
    let n = rows.len();
    let mut m = Matrix::zeros(n, n + 1);
    for (i, row) in rows.iter().enumerate() {
        debug_assert_eq!(row.len(), n);
        for j in 0..n {
            m.data[i * (n + 1) + j] = row[j].clone();
        }
        m.data[i * (n + 1) + n] = rhs[i].clone();
    }
    for c in 0..n {
        let p = (c..n).find(|&r| !m.get(r, c).is_zero())?;
        m.swap_rows(p, c);
        let inv = m.get(c, c).inv().expect("nonzero pivot");
        for r in 0..n {
            if r != c && !m.get(r, c).is_zero() {
                let f = m.get(r, c) * &inv;
                m.axpy_row(r, c, &f, c);
            }
        }
    }
    Some((0..n).map(|i| m.get(i, n) / m.get(i, i)).collect())
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_text()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
