//! Integer lattices: arbitrary-precision matrices, Smith and Hermite normal
//! forms, and the dual exact sequence of tori.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A cocharacter `ℂ^× → T`, in a fixed basis of the cocharacter lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coweight(pub Vec<i64>);

/// A character `T → ℂ^×`, in the dual basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character(pub Vec<i64>);

impl Coweight {
    pub fn zero(rank: usize) -> Self {
        Coweight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn neg(&self) -> Coweight {
        Coweight(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Coweight) -> Coweight {
        debug_assert_eq!(self.rank(), other.rank());
        Coweight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Character {
    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

/// The canonical pairing `⟨ρ, λ⟩ = Σ_j λ_j ρ_j`.
pub fn pairing(lam: &Coweight, rho: &Character) -> Result<i64> {
    if lam.rank() != rho.rank() {
        return Err(Error::Dimension(format!(
            "coweight has length {}, character has length {}",
            lam.rank(),
            rho.rank()
        )));
    }
    Ok(lam.0.iter().zip(&rho.0).map(|(a, b)| a * b).sum())
}

/// A dense integer matrix with arbitrary-precision entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. A matrix with no rows has
    /// zero columns.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if let Some(bad) = rows.iter().position(|r| r.as_ref().len() != cols) {
            return Err(Error::Dimension(format!(
                "row {bad} has length {}, expected {cols}",
                rows[bad].as_ref().len()
            )));
        }
        let data = rows.iter().flat_map(|r| r.as_ref().iter().map(|&x| BigInt::from(x))).collect();
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// A matrix with the given columns, each of length `rows`.
    pub fn from_columns<C: AsRef<[i64]>>(rows: usize, columns: &[C]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            if c.len() != rows {
                return Err(Error::Dimension(format!("column {j} has length {}, expected {rows}", c.len())));
            }
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Entries as machine integers, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * &rhs[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("determinant of non-square {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        Ok(sign * &m[(n - 1, n - 1)])
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = k * &self[(src, j)];
            self[(dst, j)] += v;
        }
    }

    /// `col[dst] += k * col[src]`
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = k * &self[(i, src)];
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }

    /// Row-style Hermite normal form: an upper echelon matrix with positive
    /// pivots and entries above each pivot reduced into `[0, pivot)`. Zero rows
    /// are dropped, so the result is a canonical basis of the row span.
    pub fn hermite_normal_form(&self) -> IntMatrix {
        let mut h = self.clone();
        let mut pivot_row = 0;
        for col in 0..h.cols {
            if pivot_row == h.rows {
                break;
            }
            loop {
                let best = (pivot_row..h.rows)
                    .filter(|&i| !h[(i, col)].is_zero())
                    .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()));
                let Some(best) = best else { break };
                h.swap_rows(pivot_row, best);
                let mut done = true;
                for i in pivot_row + 1..h.rows {
                    if h[(i, col)].is_zero() {
                        continue;
                    }
                    let q = h[(i, col)].div_floor(&h[(pivot_row, col)]);
                    h.add_row_multiple(i, pivot_row, &-q);
                    if !h[(i, col)].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if h[(pivot_row, col)].is_zero() {
                continue;
            }
            if h[(pivot_row, col)].is_negative() {
                h.negate_row(pivot_row);
            }
            for i in 0..pivot_row {
                let q = h[(i, col)].div_floor(&h[(pivot_row, col)]);
                h.add_row_multiple(i, pivot_row, &-q);
            }
            pivot_row += 1;
        }
        let keep = pivot_row;
        IntMatrix {
            rows: keep,
            cols: h.cols,
            data: h.data[..keep * h.cols].to_vec(),
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal with `d_1 | d_2 | …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero invariant factors, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form with transforms.
///
/// Pivoting rule: at each step the entry of smallest absolute value in the
/// remaining block (first in row-major order on ties) is moved to the
/// diagonal. Invariant factors are made non-negative.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, t)] / &d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(t, j)] / &d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

/// Canonical basis (as columns) of the saturation-free column span of `m`,
/// via the Hermite normal form of the transpose.
pub fn canonical_column_span(m: &IntMatrix) -> IntMatrix {
    m.transpose().hermite_normal_form().transpose()
}

/// Canonical basis (as columns) of the integer kernel `{x : m·x = 0}`.
/// The kernel of an integer matrix is always a saturated sublattice.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let n = m.cols;
    let mut k = IntMatrix::zeros(n, n - rank);
    for (jj, j) in (rank..n).enumerate() {
        for i in 0..n {
            k[(i, jj)] = snf.v[(i, j)].clone();
        }
    }
    canonical_column_span(&k)
}

/// Given the cocharacter inclusion `A: ℤ^k → ℤ^n` of `T ⊂ (ℂ^×)^n`, returns
/// `B: ℤ^{n-k} → ℤ^n` whose image is `ker(Aᵀ)`, i.e. the cocharacter
/// inclusion of the dual flavor torus. Columns are in canonical (Hermite) form.
pub fn dual_sequence(a: &IntMatrix) -> Result<IntMatrix> {
    let snf = smith_normal_form(a);
    let factors = snf.invariant_factors();
    if factors.len() != a.cols {
        return Err(Error::Domain(format!(
            "inclusion matrix has rank {} but {} columns",
            factors.len(),
            a.cols
        )));
    }
    if let Some(f) = factors.iter().find(|f| !f.is_one()) {
        return Err(Error::NotSaturated(format!("cokernel has torsion (invariant factor {f})")));
    }
    Ok(kernel_basis(&a.transpose()))
}
