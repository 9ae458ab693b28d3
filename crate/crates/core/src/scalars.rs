//! Exact scalar fields and dense matrices over them.
//!
//! Three field implementations are provided: [`Zp`] (prime field with the
//! modulus fixed at compile time), [`DynFp`] (prime field whose modulus is a
//! process-wide setting, used by the CLI when the prime comes from a file or
//! the environment) and `BigRational` (characteristic zero, the tie-breaking
//! oracle). Everything downstream is generic over [`Scalar`].
//!
//! Elimination is deterministic: columns are scanned left to right and the
//! pivot in each column is the first eligible row.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub const DEFAULT_PRIME: u64 = 1_000_003;

/// Smallest admissible modulus (exclusive).
pub const MIN_PRIME: u64 = 1 << 16;
/// Largest admissible modulus (exclusive); keeps `a + b` inside `u64`.
pub const MAX_PRIME: u64 = 1 << 62;

/// A field with exact arithmetic.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Zero
    + One
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self;
}

/// A ring with enough structure for one step of block Gaussian cancellation.
///
/// The product need not be commutative; `unit_inverse` only has to recognise
/// the units that the caller marks as pivots.
pub trait Ring: Clone + Zero + Sub<Output = Self> + Mul<Output = Self> {
    fn unit_inverse(&self) -> Option<Self>;
}

impl<F: Scalar> Ring for F {
    fn unit_inverse(&self) -> Option<Self> {
        self.inverse()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is outside the supported range (2^16, 2^62)")]
    OutOfRange(u64),
}

/// Which ground field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p <= MIN_PRIME || p >= MAX_PRIME {
            return Err(FieldError::OutOfRange(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn reduce_i64(n: i64, m: u64) -> u64 {
    (n as i128).rem_euclid(m as i128) as u64
}

/// Element of `Z/P` for a compile-time prime `P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Zp<const P: u64>(u64);

impl<const P: u64> Zp<P> {
    pub fn new(n: i64) -> Self {
        Zp(reduce_i64(n, P))
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> fmt::Debug for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Zp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Zp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Zp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Zp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u64> Mul for Zp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Zp(mul_mod(self.0, rhs.0, P))
    }
}

impl<const P: u64> Neg for Zp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Zp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Zero for Zp<P> {
    fn zero() -> Self {
        Zp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Zp<P> {
    fn one() -> Self {
        Zp(1)
    }
}

impl<const P: u64> Scalar for Zp<P> {
    fn inverse(&self) -> Option<Self> {
        (self.0 != 0).then(|| Zp(pow_mod(self.0, P - 2, P)))
    }

    fn from_i64(n: i64) -> Self {
        Zp::new(n)
    }
}

static DYN_MODULUS: AtomicU64 = AtomicU64::new(DEFAULT_PRIME);

/// Prime-field element whose modulus is a process-wide setting.
///
/// Values created under one modulus must not be mixed with values created
/// after [`DynFp::set_modulus`] changes it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct DynFp(u64);

impl DynFp {
    pub fn set_modulus(p: u64) -> Result<(), FieldError> {
        FieldSpec::prime(p)?;
        DYN_MODULUS.store(p, Ordering::SeqCst);
        Ok(())
    }

    pub fn modulus() -> u64 {
        DYN_MODULUS.load(Ordering::Relaxed)
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Debug for DynFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for DynFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for DynFp {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let p = DynFp::modulus();
        let s = self.0 + rhs.0;
        DynFp(if s >= p { s - p } else { s })
    }
}

impl Sub for DynFp {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let p = DynFp::modulus();
        DynFp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + p - rhs.0 })
    }
}

impl Mul for DynFp {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        DynFp(mul_mod(self.0, rhs.0, DynFp::modulus()))
    }
}

impl Neg for DynFp {
    type Output = Self;
    fn neg(self) -> Self {
        DynFp(if self.0 == 0 { 0 } else { DynFp::modulus() - self.0 })
    }
}

impl Zero for DynFp {
    fn zero() -> Self {
        DynFp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for DynFp {
    fn one() -> Self {
        DynFp(1)
    }
}

impl Scalar for DynFp {
    fn inverse(&self) -> Option<Self> {
        let p = DynFp::modulus();
        (self.0 != 0).then(|| DynFp(pow_mod(self.0, p - 2, p)))
    }

    fn from_i64(n: i64) -> Self {
        DynFp(reduce_i64(n, DynFp::modulus()))
    }
}

impl Scalar for BigRational {
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|r| &self.data[r * self.cols..(r + 1) * self.cols]))
            .finish()
    }
}

impl<R> Matrix<R> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &R {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut R {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: R) {
        *self.get_mut(r, c) = value;
    }

    pub fn row(&self, r: usize) -> &[R] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn map<S>(&self, f: impl FnMut(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<R: Clone> Matrix<R> {
    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<R>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn column(&self, c: usize) -> Vec<R> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn without_row(&self, skip: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&r| r != skip).collect();
        Matrix::from_fn(rows.len(), self.cols, |r, c| self.get(rows[r], c).clone())
    }

    pub fn without_col(&self, skip: usize) -> Self {
        let cols: Vec<usize> = (0..self.cols).filter(|&c| c != skip).collect();
        Matrix::from_fn(self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    /// Stacks `blocks` left to right; all must share the row count `rows`.
    pub fn hcat(rows: usize, blocks: &[&Matrix<R>]) -> Self {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for b in blocks {
                assert_eq!(b.rows, rows);
                data.extend_from_slice(b.row(r));
            }
        }
        Matrix { rows, cols, data }
    }
}

impl<R: Clone + Zero> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Block-diagonal sum.
    pub fn block_diag(a: &Matrix<R>, b: &Matrix<R>) -> Self {
        let mut m = Matrix::zeros(a.rows + b.rows, a.cols + b.cols);
        for r in 0..a.rows {
            for c in 0..a.cols {
                m.set(r, c, a.get(r, c).clone());
            }
        }
        for r in 0..b.rows {
            for c in 0..b.cols {
                m.set(a.rows + r, a.cols + c, b.get(r, c).clone());
            }
        }
        m
    }

    /// Stacks `blocks` top to bottom; all must share the column count `cols`.
    pub fn vcat(cols: usize, blocks: &[&Matrix<R>]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend_from_slice(&b.data);
        }
        Matrix { rows, cols, data }
    }
}

impl<R: Clone + Zero + Mul<Output = R>> Matrix<R> {
    /// Matrix product `self * rhs` (entry `(r, c)` is `sum_k self[r,k] * rhs[k,c]`).
    pub fn mul(&self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Matrix::<R>::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c).clone();
                    out.set(r, c, cur + a.clone() * b.clone());
                }
            }
        }
        out
    }
}

impl<R: Clone + Zero + Neg<Output = R>> Matrix<R> {
    pub fn neg(&self) -> Matrix<R> {
        self.map(|x| -x.clone())
    }
}

/// Reduced row echelon form with the list of pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon<F> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Scalar> Matrix<F> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { F::one() } else { F::zero() })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| F::from_i64(x)).collect()).collect())
    }

    pub fn scaled(&self, s: &F) -> Matrix<F> {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn rref(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = m.get(lead, c).inverse().expect("nonzero pivot");
            for x in &mut m.data[lead * m.cols..(lead + 1) * m.cols] {
                *x = x.clone() * inv.clone();
            }
            for r in 0..m.rows {
                if r != lead && !m.get(r, c).is_zero() {
                    let factor = m.get(r, c).clone();
                    m.axpy_row(r, lead, &factor, c);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// `row[target] -= factor * row[source]`, touching columns `from..`.
    fn axpy_row(&mut self, target: usize, source: usize, factor: &F, from: usize) {
        let cols = self.cols;
        for c in from..cols {
            let s = &self.data[source * cols + c];
            if s.is_zero() {
                continue;
            }
            let delta = factor.clone() * s.clone();
            let t = &mut self.data[target * cols + c];
            *t = t.clone() - delta;
        }
    }

    pub fn rank(&self) -> usize {
        // Forward elimination only; cheaper than a full rref.
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            let inv = m.get(rank, c).inverse().expect("nonzero pivot");
            for r in rank + 1..m.rows {
                if !m.get(r, c).is_zero() {
                    let factor = m.get(r, c).clone() * inv.clone();
                    m.axpy_row(r, rank, &factor, c);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of `{ v : self * v = 0 }`, one vector per non-pivot column.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let Echelon { reduced, pivots } = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        (0..self.cols)
            .filter(|&c| is_pivot[c].is_none())
            .map(|free| {
                let mut v = vec![F::zero(); self.cols];
                v[free] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -reduced.get(row, free).clone();
                }
                v
            })
            .collect()
    }

    /// A basis of the column space, taken from the pivot columns of `self`.
    pub fn column_space_basis(&self) -> Vec<Vec<F>> {
        self.rref().pivots.into_iter().map(|c| self.column(c)).collect()
    }

    /// Standard basis vectors spanning a complement of the column space,
    /// i.e. representatives of a basis of the cokernel.
    pub fn cokernel_basis(&self) -> Vec<Vec<F>> {
        let mut aug = Matrix::hcat(self.rows, &[self, &Matrix::identity(self.rows)]);
        aug = aug.rref().reduced;
        let ech = Matrix::hcat(self.rows, &[self, &Matrix::identity(self.rows)]).rref();
        drop(aug);
        ech.pivots
            .into_iter()
            .filter(|&c| c >= self.cols)
            .map(|c| {
                let mut v = vec![F::zero(); self.rows];
                v[c - self.cols] = F::one();
                v
            })
            .collect()
    }

    /// Solves `self * x = rhs` for every column of `rhs`; `None` if some
    /// column is not in the column space. Free variables are set to zero.
    pub fn solve(&self, rhs: &Matrix<F>) -> Option<Matrix<F>> {
        assert_eq!(self.rows, rhs.rows);
        let aug = Matrix::hcat(self.rows, &[self, rhs]).rref();
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (row, &pc) in aug.pivots.iter().enumerate() {
            if pc >= self.cols {
                return None;
            }
            for j in 0..rhs.cols {
                x.set(pc, j, aug.reduced.get(row, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        Matrix::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }
}

/// One step of block Gaussian cancellation.
///
/// Looks for an entry that `unit_mask` allows as a pivot and that is a unit of
/// the ring; columns are scanned left to right and the first such row wins.
/// On success the pivot row and column are removed and the Schur complement
/// `m' = m[-r,-c] - m[-r,c] * m[r,c]^{-1} * m[r,-c]` is returned.
pub fn split_invertible_block<R: Ring>(
    m: &Matrix<R>,
    unit_mask: &Matrix<bool>,
) -> (Option<(usize, usize)>, Matrix<R>) {
    assert_eq!((m.rows, m.cols), (unit_mask.rows, unit_mask.cols));
    for c in 0..m.cols {
        for r in 0..m.rows {
            if !*unit_mask.get(r, c) || m.get(r, c).is_zero() {
                continue;
            }
            let Some(inv) = m.get(r, c).unit_inverse() else {
                continue;
            };
            return (Some((r, c)), schur_complement(m, r, c, &inv));
        }
    }
    (None, m.clone())
}

pub(crate) fn schur_complement<R: Ring>(m: &Matrix<R>, pr: usize, pc: usize, inv: &R) -> Matrix<R> {
    let rows: Vec<usize> = (0..m.rows).filter(|&r| r != pr).collect();
    let cols: Vec<usize> = (0..m.cols).filter(|&c| c != pc).collect();
    // Precompute inv * m[pr, c'] once per column.
    let right: Vec<R> = cols.iter().map(|&c| inv.clone() * m.get(pr, c).clone()).collect();
    Matrix::from_fn(rows.len(), cols.len(), |i, j| {
        let left = m.get(rows[i], pc);
        let base = m.get(rows[i], cols[j]).clone();
        if left.is_zero() || right[j].is_zero() {
            base
        } else {
            base - left.clone() * right[j].clone()
        }
    })
}

/// Rank of an integer matrix, computed over two primes with a rational
/// recomputation if they disagree.
pub fn verified_rank(rows: &[Vec<i64>]) -> usize {
    let a = Matrix::<Zp<DEFAULT_PRIME>>::from_i64_rows(rows).rank();
    let b = Matrix::<Zp<998_244_353>>::from_i64_rows(rows).rank();
    if a == b {
        a
    } else {
        Matrix::<BigRational>::from_i64_rows(rows).rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = Zp<DEFAULT_PRIME>;
    type Q = BigRational;

    #[test]
    fn rank_small_cases() {
        assert_eq!(Matrix::<F>::zeros(0, 0).rank(), 0);
        assert_eq!(Matrix::<F>::identity(3).rank(), 3);
        assert_eq!(Matrix::<Q>::from_i64_rows(&[vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::<F>::identity(2).kernel_basis().is_empty());
        assert_eq!(Matrix::<F>::zeros(2, 3).kernel_basis().len(), 3);
        let m = Matrix::<F>::from_i64_rows(&[vec![1, 1, 0], vec![0, 0, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).iter().all(Zero::is_zero));
        // spans (1, -1, 0)
        let v = &k[0];
        assert!(v[2].is_zero());
        assert_eq!(v[0] + v[1], F::zero());
    }

    #[test]
    fn split_block_examples() {
        let one = Matrix::<F>::from_i64_rows(&[vec![1]]);
        let (pivot, rest) = split_invertible_block(&one, &Matrix::from_fn(1, 1, |_, _| true));
        assert_eq!(pivot, Some((0, 0)));
        assert_eq!((rest.rows(), rest.cols()), (0, 0));

        let zero = Matrix::<F>::from_i64_rows(&[vec![0]]);
        let (pivot, rest) = split_invertible_block(&zero, &Matrix::from_fn(1, 1, |_, _| true));
        assert_eq!(pivot, None);
        assert_eq!(rest, zero);

        // [[1, 0], [x, 1]] with only (0,0) masked: residual is [[1 - x*0]] = [[1]].
        let m = Matrix::<F>::from_i64_rows(&[vec![1, 0], vec![7, 1]]);
        let mask = Matrix::from_fn(2, 2, |r, c| r == 0 && c == 0);
        let (pivot, rest) = split_invertible_block(&m, &mask);
        assert_eq!(pivot, Some((0, 0)));
        assert_eq!(rest, Matrix::from_i64_rows(&[vec![1]]));
    }

    #[test]
    fn solve_and_cokernel() {
        let m = Matrix::<F>::from_i64_rows(&[vec![1, 0], vec![0, 0], vec![2, 0]]);
        let coker = m.cokernel_basis();
        assert_eq!(coker.len(), 2);
        let rhs = Matrix::from_columns(3, &[vec![F::new(3), F::zero(), F::new(6)]]);
        let x = m.solve(&rhs).unwrap();
        assert_eq!(m.mul(&x), rhs);
        let bad = Matrix::from_columns(3, &[vec![F::zero(), F::one(), F::zero()]]);
        assert!(m.solve(&bad).is_none());
    }

    #[test]
    fn field_arithmetic() {
        let a = F::new(-1);
        assert_eq!(a.value(), DEFAULT_PRIME - 1);
        assert_eq!(a.inverse().unwrap() * a, F::one());
        assert!(F::zero().inverse().is_none());
        assert!(is_prime(DEFAULT_PRIME));
        assert!(is_prime(998_244_353));
        assert!(!is_prime(1_000_001));
        assert!(FieldSpec::prime(65_521).is_err());
        assert!(FieldSpec::prime(65_537).is_ok());
        assert!(FieldSpec::prime(1_000_001).is_err());
        assert_eq!(FieldSpec::prime(DEFAULT_PRIME), Ok(FieldSpec::Prime(DEFAULT_PRIME)));
    }

    #[test]
    fn dyn_field_matches_static_field() {
        // default modulus; never reconfigured inside this test binary
        for (x, y) in [(3i64, 5i64), (-7, 11), (123_456, -999_999)] {
            let d = DynFp::from_i64(x) * DynFp::from_i64(y) - DynFp::from_i64(y);
            let s = F::new(x) * F::new(y) - F::new(y);
            assert_eq!(d.value(), s.value());
        }
    }
}
