//! Exact integer and rational matrices.
//!
//! Everything here works over arbitrary-precision integers. Matrices are
//! small (rank at most a few dozen), so the algorithms favour clarity over
//! asymptotics: Bareiss elimination for determinants, a pivot-and-clear
//! Smith normal form, Faddeev–LeVerrier for characteristic polynomials, and
//! congruence diagonalisation over the rationals for signatures.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows, rejecting ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::Ragged { row: i, expected: ncols, found: row.len() });
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { rows: nrows, cols: ncols, data })
    }

    /// Panicking variant of [`IntMatrix::from_rows`] for literals.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&v).expect("rectangular literal")
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count");
        IntMatrix { rows, cols, data }
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: c.len() });
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
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

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    fn first_asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub(crate) fn check_symmetric(&self) -> Result<()> {
        self.require_square()?;
        match self.first_asymmetry() {
            Some((row, col)) => Err(Error::Asymmetric { row, col }),
            None => Ok(()),
        }
    }

    pub(crate) fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    /// Non-negative gcd of all entries (0 for the zero matrix).
    pub fn content(&self) -> BigInt {
        self.data.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn block_diag(&self, other: &IntMatrix) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// `Bᵀ·self·B`.
    pub fn congruence(&self, b: &IntMatrix) -> Self {
        &(&b.transpose() * self) * b
    }

    /// Integer inverse of a matrix with determinant ±1.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        let det = determinant(self)?;
        if det.abs() != BigInt::one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        let inv = RatMatrix::inverse_of(self)?;
        inv.to_integer().ok_or_else(|| Error::Internal("unimodular inverse not integral".into()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `row[dst] += q * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let t = &self[(src, j)] * q;
            self[(dst, j)] += t;
        }
    }

    /// `(row[i], row[j]) ← (x·row[i] + y·row[j], z·row[i] + w·row[j])`
    fn combine_rows(&mut self, i: usize, j: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
        for c in 0..self.cols {
            let (p, q) = (self[(i, c)].clone(), self[(j, c)].clone());
            self[(i, c)] = x * &p + y * &q;
            self[(j, c)] = z * &p + w * &q;
        }
    }

    /// `(col[i], col[j]) ← (x·col[i] + y·col[j], z·col[i] + w·col[j])`
    fn combine_cols(&mut self, i: usize, j: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
        for r in 0..self.rows {
            let (p, q) = (self[(r, i)].clone(), self[(r, j)].clone());
            self[(r, i)] = x * &p + y * &q;
            self[(r, j)] = z * &p + w * &q;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = x;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimensions");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum dimensions");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference dimensions");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Rational matrix stored as integer numerators over one positive common
/// denominator, kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    numerators: IntMatrix,
    denominator: BigInt,
}

impl RatMatrix {
    pub fn new(numerators: IntMatrix, denominator: BigInt) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::Zero);
        }
        let mut m = RatMatrix { numerators, denominator };
        m.normalize();
        Ok(m)
    }

    pub fn from_integer(m: IntMatrix) -> Self {
        RatMatrix { numerators: m, denominator: BigInt::one() }
    }

    fn normalize(&mut self) {
        if self.denominator.is_negative() {
            self.numerators = -&self.numerators;
            self.denominator = -&self.denominator;
        }
        if self.numerators.is_zero() {
            self.denominator = BigInt::one();
            return;
        }
        let g = self.numerators.content().gcd(&self.denominator);
        if !g.is_one() {
            self.numerators = IntMatrix {
                rows: self.numerators.rows,
                cols: self.numerators.cols,
                data: self.numerators.data.iter().map(|x| x / &g).collect(),
            };
            self.denominator /= &g;
        }
    }

    pub fn numerators(&self) -> &IntMatrix {
        &self.numerators
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn entry(&self, i: usize, j: usize) -> BigRational {
        BigRational::new(self.numerators[(i, j)].clone(), self.denominator.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.numerators.is_zero()
    }

    pub fn to_integer(&self) -> Option<IntMatrix> {
        self.denominator.is_one().then(|| self.numerators.clone())
    }

    /// Exact inverse by Gauss–Jordan elimination over the rationals.
    pub fn inverse_of(m: &IntMatrix) -> Result<RatMatrix> {
        m.require_square()?;
        let n = m.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = m.row(i).iter().map(|x| BigRational::from(x.clone())).collect();
                row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(Error::Degenerate)?;
            a.swap(k, p);
            let piv = a[k][k].clone();
            for x in a[k].iter_mut() {
                *x = &*x / &piv;
            }
            for i in 0..n {
                if i != k && !a[i][k].is_zero() {
                    let f = a[i][k].clone();
                    for j in 0..2 * n {
                        let t = &f * &a[k][j];
                        a[i][j] -= t;
                    }
                }
            }
        }
        let den = a.iter().flat_map(|r| r[n..].iter()).fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let mut num = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let x = &a[i][n + j];
                num[(i, j)] = x.numer() * (&den / x.denom());
            }
        }
        RatMatrix::new(num, den)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerators)
        } else {
            write!(f, "({}) / {}", self.numerators, self.denominator)
        }
    }
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    m.require_square()?;
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(i, k);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    Ok(if negate { -d } else { d })
}

/// Result of [`smith_normal_form`]: `u · m · v` is diagonal with entries
/// `diagonal`, each dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Row-style Hermite normal form: returns `(h, u)` with `u` unimodular and
/// `u · m = h`. Pivots are positive and the entries above each pivot lie in
/// `[0, pivot)`; zero rows come last.
///
/// Rows are combined with Bézout transforms and reduced above each pivot as
/// soon as it is found, which keeps entry growth modest.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows, m.cols);
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            if h[(r, c)].is_zero() {
                h.swap_rows(r, i);
                u.swap_rows(r, i);
                continue;
            }
            let e = h[(r, c)].extended_gcd(&h[(i, c)]);
            let a = &h[(r, c)] / &e.gcd;
            let b = &h[(i, c)] / &e.gcd;
            // [[x, y], [−b, a]] has determinant x·a + y·b = 1.
            h.combine_rows(r, i, &e.x, &e.y, &-b.clone(), &a);
            u.combine_rows(r, i, &e.x, &e.y, &-b, &a);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            if !q.is_zero() {
                h.add_row(i, r, &q);
                u.add_row(i, r, &q);
            }
        }
        r += 1;
    }
    (h, u)
}

fn is_diagonal(a: &IntMatrix) -> bool {
    (0..a.rows).all(|i| (0..a.cols).all(|j| i == j || a[(i, j)].is_zero()))
}

/// Smith normal form with unimodular transforms.
///
/// `diagonal` has `min(nrows, ncols)` non-negative entries with
/// `d₁ | d₂ | …`; zeros trail. Alternates row and column Hermite forms until
/// the matrix is diagonal, then repairs divisibility pairwise.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    loop {
        let (h, u1) = hermite_normal_form(&a);
        a = h;
        u = &u1 * &u;
        if is_diagonal(&a) {
            break;
        }
        let (h, v1) = hermite_normal_form(&a.transpose());
        a = h.transpose();
        v = &v * &v1.transpose();
        if is_diagonal(&a) {
            break;
        }
    }
    let n = rows.min(cols);
    // Nonzero entries lead; make each divide the next.
    for i in 0..n {
        for j in i + 1..n {
            if a[(j, j)].is_zero() || a[(j, j)].is_multiple_of(&a[(i, i)]) {
                continue;
            }
            let (p, q) = (a[(i, i)].clone(), a[(j, j)].clone());
            let e = p.extended_gcd(&q);
            let one = BigInt::one();
            // row i += row j: [[p, q], [0, q]]
            a.add_row(i, j, &one);
            u.add_row(i, j, &one);
            // columns (i, j) ← (x·i + y·j, −(q/g)·i + (p/g)·j): row i becomes [g, 0]
            let (qg, pg) = (&q / &e.gcd, &p / &e.gcd);
            a.combine_cols(i, j, &e.x, &e.y, &-qg.clone(), &pg);
            v.combine_cols(i, j, &e.x, &e.y, &-qg, &pg);
            // clear the (j, i) entry left behind
            let t = -(&a[(j, i)] / &a[(i, i)]);
            a.add_row(j, i, &t);
            u.add_row(j, i, &t);
        }
    }
    for i in 0..n {
        if a[(i, i)].is_negative() {
            a.negate_row(i);
            u.negate_row(i);
        }
    }
    debug_assert!(is_diagonal(&a));
    let diagonal = (0..n).map(|i| a[(i, i)].clone()).collect();
    SmithForm { diagonal, u, v }
}

/// Saturated basis of the integer kernel `{x : m·x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    (r..m.cols).map(|j| snf.v.column(j)).collect()
}

/// Integer solution `x` of `b·x = y`, if one exists.
pub fn solve_integer(b: &IntMatrix, y: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(y.len(), b.rows, "right-hand side length");
    let snf = smith_normal_form(b);
    let z = snf.u.mul_vec(y);
    let r = snf.rank();
    let mut w = vec![BigInt::zero(); b.cols];
    for (i, zi) in z.iter().enumerate() {
        if i < r {
            let (q, rem) = zi.div_rem(&snf.diagonal[i]);
            if !rem.is_zero() {
                return None;
            }
            w[i] = q;
        } else if !zi.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&w))
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank()
}

/// Monic characteristic polynomial `det(x·I − m)`; `coeffs[k]` multiplies `x^k`.
///
/// Faddeev–LeVerrier recursion; every division in it is exact over ℤ.
pub fn char_poly(m: &IntMatrix) -> Result<Vec<BigInt>> {
    m.require_square()?;
    let n = m.rows;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = IntMatrix::zeros(n, n);
    let ident = IntMatrix::identity(n);
    for k in 1..=n {
        mk = &(m * &mk) + &ident.scale(&coeffs[n - k + 1]);
        let t = (m * &mk).trace();
        let (q, r) = t.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::Internal("inexact Faddeev-LeVerrier step".into()));
        }
        coeffs[n - k] = -q;
    }
    Ok(coeffs)
}

/// Evaluates an integer polynomial at a square matrix (Horner).
pub fn poly_eval_matrix(coeffs: &[BigInt], m: &IntMatrix) -> IntMatrix {
    let n = m.rows;
    let mut acc = IntMatrix::zeros(n, n);
    for c in coeffs.iter().rev() {
        acc = &(&acc * m) + &IntMatrix::identity(n).scale(c);
    }
    acc
}

/// Inertia of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn is_definite(&self) -> bool {
        self.zero == 0 && (self.positive == 0 || self.negative == 0)
    }

    pub fn is_indefinite(&self) -> bool {
        self.positive > 0 && self.negative > 0
    }
}

/// Congruence-diagonalises a symmetric matrix over ℚ: returns `d` such that
/// the form equals `Σ dᵢ yᵢ²` for some rational change of variables.
///
/// Zero pivots are handled by swapping in a nonzero diagonal entry, or by
/// adding a row/column with a nonzero off-diagonal coupling.
pub fn diagonalize_symmetric(g: &IntMatrix) -> Result<Vec<BigRational>> {
    g.check_symmetric()?;
    let n = g.rows;
    let mut a: Vec<Vec<BigRational>> =
        (0..n).map(|i| g.row(i).iter().map(|x| BigRational::from(x.clone())).collect()).collect();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                for c in 0..n {
                    let t = a[j][c].clone();
                    a[k][c] += t;
                }
                for row in a.iter_mut() {
                    let t = row[j].clone();
                    row[k] += t;
                }
            } else {
                diag.push(BigRational::zero());
                continue;
            }
        }
        let p = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
            for row in a.iter_mut().skip(k) {
                let t = &f * &row[k];
                row[i] -= t;
            }
        }
        diag.push(p);
    }
    Ok(diag)
}

/// Exact signature via [`diagonalize_symmetric`].
pub fn signature(g: &IntMatrix) -> Result<Signature> {
    let d = diagonalize_symmetric(g)?;
    Ok(Signature {
        positive: d.iter().filter(|x| x.is_positive()).count(),
        negative: d.iter().filter(|x| x.is_negative()).count(),
        zero: d.iter().filter(|x| x.is_zero()).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Laplace expansion; independent of Bareiss.
    fn cofactor_det(a: &IntMatrix) -> BigInt {
        let n = a.nrows();
        if n == 0 {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for j in 0..n {
            let mut minor = Vec::new();
            for i in 1..n {
                minor.push((0..n).filter(|&c| c != j).map(|c| a[(i, c)].clone()).collect::<Vec<_>>());
            }
            let sub = IntMatrix::from_rows(&minor).unwrap_or(IntMatrix::zeros(0, 0));
            let term = &a[(0, j)] * cofactor_det(&sub);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&m(&[&[2, 13], &[13, 12]])).unwrap(), BigInt::from(-145));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])).unwrap(), BigInt::from(-1));
        assert_eq!(determinant(&m(&[&[8, 15], &[15, 10]])).unwrap(), BigInt::from(-145));
        assert_eq!(determinant(&IntMatrix::zeros(0, 0)).unwrap(), BigInt::one());
        assert_eq!(
            determinant(&m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])).unwrap(),
            BigInt::from(-1)
        );
        assert!(matches!(determinant(&m(&[&[1, 2]])), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn smith_examples() {
        assert_eq!(smith_normal_form(&m(&[&[2, 13], &[13, 12]])).diagonal, ints(&[1, 145]));
        assert_eq!(smith_normal_form(&m(&[&[0, 1], &[1, 0]])).diagonal, ints(&[1, 1]));
        assert_eq!(smith_normal_form(&m(&[&[-2]])).diagonal, ints(&[2]));
        assert_eq!(smith_normal_form(&m(&[&[2, 0], &[0, 3]])).diagonal, ints(&[1, 6]));
        assert_eq!(smith_normal_form(&m(&[&[2, 4, 4], &[-6, 6, 12]])).diagonal, ints(&[2, 6]));
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&IntMatrix::identity(2)).unwrap(), ints(&[1, -2, 1]));
        assert_eq!(char_poly(&m(&[&[1, 1], &[0, 1]])).unwrap(), ints(&[1, -2, 1]));
        assert_eq!(char_poly(&m(&[&[0, -1], &[1, 0]])).unwrap(), ints(&[1, 0, 1]));
        assert!(char_poly(&m(&[&[1, 2, 3]])).is_err());
    }

    #[test]
    fn signature_examples() {
        let s = signature(&m(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!((s.positive, s.negative, s.zero), (1, 1, 0));
        let s = signature(&m(&[&[-2]])).unwrap();
        assert_eq!((s.positive, s.negative, s.zero), (0, 1, 0));
        let s = signature(&m(&[&[2, 13], &[13, 12]])).unwrap();
        assert_eq!((s.positive, s.negative, s.zero), (1, 1, 0));
        let s = signature(&m(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]])).unwrap();
        assert_eq!((s.positive, s.negative, s.zero), (1, 1, 1));
        assert!(matches!(signature(&m(&[&[0, 1], &[2, 0]])), Err(Error::Asymmetric { .. })));
    }

    #[test]
    fn kernel_and_solve() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        let b = m(&[&[2, 0], &[0, 3]]);
        assert_eq!(solve_integer(&b, &ints(&[4, 9])), Some(ints(&[2, 3])));
        assert_eq!(solve_integer(&b, &ints(&[1, 0])), None);
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let p = m(&[&[2, 1], &[1, 1]]);
        let q = p.unimodular_inverse().unwrap();
        assert!((&p * &q).is_identity());
        assert!(m(&[&[2, 0], &[0, 1]]).unimodular_inverse().is_err());
    }

    #[test]
    fn rational_matrix_reduces() {
        let r = RatMatrix::new(m(&[&[2, 4], &[0, 6]]), BigInt::from(-4)).unwrap();
        assert_eq!(r.denominator(), &BigInt::from(2));
        assert_eq!(r.numerators(), &m(&[&[-1, -2], &[0, -3]]));
        assert_eq!(RatMatrix::new(IntMatrix::zeros(1, 1), BigInt::from(5)).unwrap().denominator(), &BigInt::one());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn square(max_n: usize) -> impl Strategy<Value = IntMatrix> {
            (1..=max_n).prop_flat_map(|n| {
                proptest::collection::vec(-6i64..=6, n * n)
                    .prop_map(move |v| IntMatrix::from_vec(n, n, v.into_iter().map(BigInt::from).collect()))
            })
        }

        fn rect() -> impl Strategy<Value = IntMatrix> {
            (1..=4usize, 1..=4usize).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-9i64..=9, r * c)
                    .prop_map(move |v| IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()))
            })
        }

        fn symmetric() -> impl Strategy<Value = IntMatrix> {
            square(5).prop_map(|a| &a + &a.transpose())
        }

        proptest! {
            #[test]
            fn bareiss_matches_cofactor(a in square(4)) {
                prop_assert_eq!(determinant(&a).unwrap(), cofactor_det(&a));
            }

            #[test]
            fn smith_reconstructs(a in rect()) {
                let s = smith_normal_form(&a);
                let d = &(&s.u * &a) * &s.v;
                for i in 0..d.nrows() {
                    for j in 0..d.ncols() {
                        let want = if i == j { s.diagonal[i].clone() } else { BigInt::zero() };
                        prop_assert_eq!(&d[(i, j)], &want);
                    }
                }
                prop_assert_eq!(determinant(&s.u).unwrap().abs(), BigInt::one());
                prop_assert_eq!(determinant(&s.v).unwrap().abs(), BigInt::one());
                for w in s.diagonal.windows(2) {
                    prop_assert!(!w[0].is_negative());
                    if w[0].is_zero() {
                        prop_assert!(w[1].is_zero());
                    } else {
                        prop_assert!(w[1].is_multiple_of(&w[0]));
                    }
                }
                if a.is_square() {
                    let prod: BigInt = s.diagonal.iter().product();
                    prop_assert_eq!(prod, determinant(&a).unwrap().abs());
                }
            }

            #[test]
            fn hermite_is_echelon_and_reduced(a in rect()) {
                let (h, u) = hermite_normal_form(&a);
                prop_assert_eq!(&(&u * &a), &h);
                prop_assert_eq!(determinant(&u).unwrap().abs(), BigInt::one());
                let mut last: Option<usize> = None;
                for i in 0..h.nrows() {
                    match (0..h.ncols()).find(|&j| !h[(i, j)].is_zero()) {
                        Some(c) => {
                            prop_assert!(last.is_none_or(|l| c > l));
                            prop_assert!(h[(i, c)].is_positive());
                            for k in 0..i {
                                prop_assert!(!h[(k, c)].is_negative() && h[(k, c)] < h[(i, c)]);
                            }
                            last = Some(c);
                        }
                        None => prop_assert!((i..h.nrows()).all(|k| h.row(k).iter().all(Zero::is_zero))),
                    }
                }
            }

            #[test]
            fn cayley_hamilton(a in square(6)) {
                let p = char_poly(&a).unwrap();
                prop_assert!(poly_eval_matrix(&p, &a).is_zero());
            }

            #[test]
            fn signature_counts_and_sums(a in symmetric(), b in symmetric()) {
                let sa = signature(&a).unwrap();
                let sb = signature(&b).unwrap();
                prop_assert_eq!(sa.positive + sa.negative + sa.zero, a.nrows());
                prop_assert_eq!(sa.positive + sa.negative, rank(&a));
                let s = signature(&a.block_diag(&b)).unwrap();
                prop_assert_eq!(s.positive, sa.positive + sb.positive);
                prop_assert_eq!(s.negative, sa.negative + sb.negative);
                prop_assert_eq!(s.zero, sa.zero + sb.zero);
            }

            #[test]
            fn signature_sign_of_determinant(a in symmetric()) {
                let s = signature(&a).unwrap();
                let d = determinant(&a).unwrap();
                if d.is_zero() {
                    prop_assert!(s.zero > 0);
                } else {
                    prop_assert_eq!(s.zero, 0);
                    prop_assert_eq!(d.is_negative(), s.negative % 2 == 1);
                }
            }
        }
    }
}
