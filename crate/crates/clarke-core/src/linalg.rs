//! Exact integer and rational linear algebra.
//!
//! Matrices are dense and row-major. Integer matrices carry normal forms
//! (Smith, Hermite) and fraction-free determinants; rational matrices carry
//! reduced row echelon forms, ranks and kernels. Wedge powers are expressed
//! in lexicographic wedge-monomial coordinates: the coordinates of a degree
//! `k` multivector in rank `d` are indexed by the `k`-subsets of `0..d` in
//! lexicographic order.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Arbitrary-precision rational, always kept reduced.
pub type Rat = BigRational;

/// Errors raised by the linear algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    /// The simplex vertices do not span a simplex of the expected dimension.
    #[error("simplex vertices are affinely dependent")]
    DegenerateSimplex,
    /// A square matrix was required.
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    /// An invertible matrix was required.
    #[error("matrix is not invertible")]
    Singular,
    /// Only the eigenvalues 1 and -1 are supported by the Jordan profile.
    #[error("unsupported eigenvalue {0}; only 1 and -1 are supported")]
    UnsupportedEigenvalue(Rat),
    /// Matrix shapes are incompatible with the requested operation.
    #[error("shape mismatch: {0}")]
    Shape(&'static str),
}

/// Converts a machine integer to an arbitrary-precision integer.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Converts a machine integer to a rational.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// Builds the rational `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Converts a lattice point to a rational vector.
pub fn to_rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

/// Dense rational matrix with reduced entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

macro_rules! matrix_common {
    ($name:ident, $elem:ty) => {
        impl $name {
            /// Builds a matrix from row-major entries.
            ///
            /// # Panics
            /// Panics if `data.len() != rows * cols`.
            pub fn new(rows: usize, cols: usize, data: Vec<$elem>) -> Self {
                assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
                Self { rows, cols, data }
            }

            /// The zero matrix.
            pub fn zeros(rows: usize, cols: usize) -> Self {
                Self { rows, cols, data: vec![<$elem>::zero(); rows * cols] }
            }

            /// The identity matrix of size `n`.
            pub fn identity(n: usize) -> Self {
                let mut m = Self::zeros(n, n);
                for i in 0..n {
                    m.data[i * n + i] = <$elem>::one();
                }
                m
            }

            /// Builds a matrix from a list of rows of equal length.
            ///
            /// # Panics
            /// Panics if the rows have different lengths.
            pub fn from_rows(rows: Vec<Vec<$elem>>) -> Self {
                let r = rows.len();
                let c = rows.first().map_or(0, Vec::len);
                let mut data = Vec::with_capacity(r * c);
                for row in rows {
                    assert_eq!(row.len(), c, "rows must have equal length");
                    data.extend(row);
                }
                Self { rows: r, cols: c, data }
            }

            /// Number of rows.
            pub fn rows(&self) -> usize {
                self.rows
            }

            /// Number of columns.
            pub fn cols(&self) -> usize {
                self.cols
            }

            /// Entry at `(i, j)`.
            pub fn get(&self, i: usize, j: usize) -> &$elem {
                &self.data[i * self.cols + j]
            }

            /// Mutable entry at `(i, j)`.
            pub fn get_mut(&mut self, i: usize, j: usize) -> &mut $elem {
                &mut self.data[i * self.cols + j]
            }

            /// Sets the entry at `(i, j)`.
            pub fn set(&mut self, i: usize, j: usize, v: $elem) {
                self.data[i * self.cols + j] = v;
            }

            /// Row `i` as a slice.
            pub fn row(&self, i: usize) -> &[$elem] {
                &self.data[i * self.cols..(i + 1) * self.cols]
            }

            /// Column `j` as an owned vector.
            pub fn col(&self, j: usize) -> Vec<$elem> {
                (0..self.rows).map(|i| self.get(i, j).clone()).collect()
            }

            /// All rows as owned vectors.
            pub fn to_rows(&self) -> Vec<Vec<$elem>> {
                (0..self.rows).map(|i| self.row(i).to_vec()).collect()
            }

            /// The transpose.
            pub fn transpose(&self) -> Self {
                let mut t = Self::zeros(self.cols, self.rows);
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        t.set(j, i, self.get(i, j).clone());
                    }
                }
                t
            }

            /// Matrix product `self * other`.
            ///
            /// # Panics
            /// Panics if the inner dimensions differ.
            pub fn mul(&self, other: &Self) -> Self {
                assert_eq!(self.cols, other.rows, "inner dimensions must agree");
                let mut out = Self::zeros(self.rows, other.cols);
                for i in 0..self.rows {
                    for k in 0..self.cols {
                        let a = self.get(i, k);
                        if a.is_zero() {
                            continue;
                        }
                        for j in 0..other.cols {
                            let b = other.get(k, j);
                            if !b.is_zero() {
                                let v = out.get_mut(i, j);
                                *v += a * b;
                            }
                        }
                    }
                }
                out
            }

            /// Matrix-vector product.
            pub fn mul_vec(&self, v: &[$elem]) -> Vec<$elem> {
                assert_eq!(self.cols, v.len(), "vector length must equal column count");
                (0..self.rows)
                    .map(|i| {
                        let mut s = <$elem>::zero();
                        for (a, b) in self.row(i).iter().zip(v) {
                            if !a.is_zero() && !b.is_zero() {
                                s += a * b;
                            }
                        }
                        s
                    })
                    .collect()
            }

            /// True when every entry is zero.
            pub fn is_zero(&self) -> bool {
                self.data.iter().all(Zero::is_zero)
            }

            fn swap_rows(&mut self, a: usize, b: usize) {
                if a != b {
                    for j in 0..self.cols {
                        self.data.swap(a * self.cols + j, b * self.cols + j);
                    }
                }
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "[")?;
                for i in 0..self.rows {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    for j in 0..self.cols {
                        if j > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{}", self.get(i, j))?;
                    }
                }
                write!(f, "]")
            }
        }
    };
}

matrix_common!(IntMatrix, Int);
matrix_common!(RatMatrix, Rat);

impl IntMatrix {
    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// Builds an integer matrix from machine-integer rows.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    /// Converts to a rational matrix.
    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|x| Rat::from_integer(x.clone())).collect(),
        )
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Int, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(Int::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, Int::zero());
            }
            prev = m.get(k, k).clone();
        }
        Ok(sign * m.get(n - 1, n - 1).clone())
    }

    /// Rank by fraction-free elimination. The pivot search order is either
    /// left-to-right over columns or right-to-left, which gives two
    /// independent pivot sequences for the same rank.
    pub fn rank_fraction_free(&self, reverse_columns: bool) -> usize {
        let mut rows: Vec<Vec<Int>> = self.to_rows();
        let cols: Vec<usize> = if reverse_columns {
            (0..self.cols).rev().collect()
        } else {
            (0..self.cols).collect()
        };
        let mut rank = 0;
        for &c in &cols {
            let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            let pv = pivot_row[c].clone();
            for row in rows.iter_mut().skip(rank + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x * &pv - &f * y;
                }
                reduce_content(row);
            }
            rank += 1;
        }
        rank
    }
}

impl RatMatrix {
    /// Builds a rational matrix from machine-integer rows.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| to_rat_vec(r)).collect())
    }

    /// `self - lambda * I`.
    pub fn minus_scalar(&self, lambda: &Rat) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = m.get(i, i) - lambda;
            m.set(i, i, v);
        }
        m
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Self::zeros(0, 0));
        }
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let (r, pivots) = rref(&aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(LinalgError::Singular);
        }
        let mut inv = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Rank of the matrix.
    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }
}

/// Divides an integer row by the gcd of its entries and makes the leading
/// nonzero entry positive.
pub fn reduce_content(row: &mut [Int]) {
    let mut g = Int::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    let neg = row.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative);
    if !g.is_one() || neg {
        let g = if neg { -g } else { g };
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction (positive multiple).
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<Int> {
    let mut l = Int::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let mut out: Vec<Int> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let mut g = Int::zero();
    for x in &out {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in &mut out {
            *x = &*x / &g;
        }
    }
    out
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a.get(r, c).recip();
        for j in c..a.cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in c..a.cols {
                let v = a.get(i, j) - &f * a.get(r, j);
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Rank and a kernel basis of a rational matrix.
///
/// The kernel basis is the standard one read off the reduced row echelon
/// form: one vector per free column, with a `1` in that column.
pub fn rank_and_kernel(a: &RatMatrix) -> (usize, Vec<Vec<Rat>>) {
    let (r, pivots) = rref(a);
    let mut is_pivot = vec![false; a.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut kernel = Vec::new();
    for free in (0..a.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rat::zero(); a.cols];
        v[free] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(i, free).clone();
        }
        kernel.push(v);
    }
    (pivots.len(), kernel)
}

/// Basis (as reduced echelon rows) of the row span of a list of vectors.
pub fn row_space_basis(vectors: &[Vec<Rat>], dim: usize) -> Vec<Vec<Rat>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = RatMatrix::from_rows(vectors.to_vec());
    debug_assert_eq!(m.cols(), dim);
    let (r, pivots) = rref(&m);
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Basis of the annihilator `{n : <v, n> = 0 for all v in vectors}` in `Q^dim`.
pub fn annihilator(vectors: &[Vec<Rat>], dim: usize) -> Vec<Vec<Rat>> {
    if vectors.is_empty() {
        return (0..dim)
            .map(|i| {
                let mut v = vec![Rat::zero(); dim];
                v[i] = Rat::one();
                v
            })
            .collect();
    }
    rank_and_kernel(&RatMatrix::from_rows(vectors.to_vec())).1
}

/// Smith normal form `U·A·V = S` together with the inverses of `U` and `V`.
#[derive(Debug, Clone)]
pub struct Smith {
    /// Left unimodular transform.
    pub u: IntMatrix,
    /// Diagonal form with `d1 | d2 | ...` and nonnegative entries.
    pub s: IntMatrix,
    /// Right unimodular transform.
    pub v: IntMatrix,
    /// Inverse of `v`.
    pub v_inv: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries (the elementary divisors).
    pub fn divisors(&self) -> Vec<Int> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    /// Rank of the original matrix.
    pub fn rank(&self) -> usize {
        self.divisors().len()
    }
}

/// Smith normal form of an integer matrix.
///
/// Returns unimodular `U`, `V` and diagonal `S` with `U·A·V = S`, the
/// diagonal entries nonnegative and each dividing the next. The algorithm is
/// deterministic.
pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    // Row operation: row_i -= q * row_t, mirrored on U.
    fn row_sub(s: &mut IntMatrix, u: &mut IntMatrix, i: usize, t: usize, q: &Int) {
        for j in 0..s.cols() {
            let x = s.get(i, j) - q * s.get(t, j);
            s.set(i, j, x);
        }
        for j in 0..u.cols() {
            let x = u.get(i, j) - q * u.get(t, j);
            u.set(i, j, x);
        }
    }
    // Column operation: col_j -= q * col_t, mirrored on V and V^{-1}.
    fn col_sub(
        s: &mut IntMatrix,
        v: &mut IntMatrix,
        v_inv: &mut IntMatrix,
        j: usize,
        t: usize,
        q: &Int,
    ) {
        for i in 0..s.rows() {
            let x = s.get(i, j) - q * s.get(i, t);
            s.set(i, j, x);
        }
        for i in 0..v.rows() {
            let x = v.get(i, j) - q * v.get(i, t);
            v.set(i, j, x);
        }
        // V' = V·E with E = I - q e_t e_j^T, so V'^{-1} = (I + q e_t e_j^T) V^{-1}.
        for k in 0..v_inv.cols() {
            let x = v_inv.get(t, k) + q * v_inv.get(j, k);
            v_inv.set(t, k, x);
        }
    }

    for t in 0..m.min(n) {
        loop {
            // Pivot: smallest nonzero absolute value in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = s.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish_smith(u, s, v, v_inv);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut dirty = false;
            for i in t + 1..m {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = s.get(i, t).div_floor(s.get(t, t));
                row_sub(&mut s, &mut u, i, t, &q);
                if !s.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = s.get(t, j).div_floor(s.get(t, t));
                col_sub(&mut s, &mut v, &mut v_inv, j, t, &q);
                if !s.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            let pivot = s.get(t, t).clone();
            let offending = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !s.get(i, j).is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let minus_one = -Int::one();
                    row_sub(&mut s, &mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            for j in 0..n {
                let x = -s.get(t, j).clone();
                s.set(t, j, x);
            }
            for j in 0..m {
                let x = -u.get(t, j).clone();
                u.set(t, j, x);
            }
        }
    }
    finish_smith(u, s, v, v_inv)
}

fn finish_smith(u: IntMatrix, mut s: IntMatrix, v: IntMatrix, v_inv: IntMatrix) -> Smith {
    let mut u = u;
    for t in 0..s.rows().min(s.cols()) {
        if s.get(t, t).is_negative() {
            for j in 0..s.cols() {
                let x = -s.get(t, j).clone();
                s.set(t, j, x);
            }
            for j in 0..u.cols() {
                let x = -u.get(t, j).clone();
                u.set(t, j, x);
            }
        }
    }
    Smith { u, s, v, v_inv }
}

/// Row-style Hermite normal form `U·A = H`.
///
/// `H` is in row echelon form, pivots are positive, and entries above each
/// pivot are reduced into `[0, pivot)`. Zero rows come last.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // Euclid on column c among rows r..m.
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if !h.get(i, c).is_zero()
                    && best.is_none_or(|b| h.get(i, c).abs() < h.get(b, c).abs())
                {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c).div_floor(h.get(r, c));
                for j in 0..n {
                    let x = h.get(i, j) - &q * h.get(r, j);
                    h.set(i, j, x);
                }
                for j in 0..m {
                    let x = u.get(i, j) - &q * u.get(r, j);
                    u.set(i, j, x);
                }
                if !h.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            for j in 0..n {
                let x = -h.get(r, j).clone();
                h.set(r, j, x);
            }
            for j in 0..m {
                let x = -u.get(r, j).clone();
                u.set(r, j, x);
            }
        }
        let pivot = h.get(r, c).clone();
        for i in 0..r {
            let q = h.get(i, c).div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            for j in 0..n {
                let x = h.get(i, j) - &q * h.get(r, j);
                h.set(i, j, x);
            }
            for j in 0..m {
                let x = u.get(i, j) - &q * u.get(r, j);
                u.set(i, j, x);
            }
        }
        r += 1;
    }
    (h, u)
}

/// A basis of the saturated lattice `span(vectors) ∩ Z^d`, as rows.
pub fn saturated_basis(vectors: &[Vec<i64>], d: usize) -> Vec<Vec<Int>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let a = IntMatrix::from_i64_rows(vectors);
    debug_assert_eq!(a.cols(), d);
    let snf = smith_normal_form(&a);
    // Row space of A equals the row space of S·V^{-1}; over Q it is spanned
    // by the first rank rows of the unimodular V^{-1}.
    (0..snf.rank()).map(|i| snf.v_inv.row(i).to_vec()).collect()
}

/// Integer solution of `A·x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length must equal row count");
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let mut y = vec![Int::zero(); a.cols()];
    for (i, ubi) in ub.iter().enumerate() {
        let d = if i < a.cols() { snf.s.get(i, i).clone() } else { Int::zero() };
        if d.is_zero() {
            if !ubi.is_zero() {
                return None;
            }
        } else {
            let (q, r) = ubi.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Rational solution `x` of `A·x = b` (one particular solution), if any.
pub fn solve_rational(a: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    let (m, n) = (a.rows(), a.cols());
    let mut aug = RatMatrix::zeros(m, n + 1);
    for i in 0..m {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n, b[i].clone());
    }
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r.get(i, n).clone();
    }
    Some(x)
}

/// Normalized volume `dim!·vol` of a lattice simplex, measured in the lattice
/// of its linear span.
///
/// The first vertex is the base point; the edges from it must be linearly
/// independent. The value is the index of the lattice generated by the edges
/// inside the saturated lattice of their span (the product of the Smith
/// elementary divisors of the edge matrix).
pub fn relative_volume(vertices: &[Vec<i64>]) -> Result<Int, LinalgError> {
    let Some(base) = vertices.first() else {
        return Err(LinalgError::DegenerateSimplex);
    };
    let edges: Vec<Vec<i64>> = vertices[1..]
        .iter()
        .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    if edges.is_empty() {
        return Ok(Int::one());
    }
    let snf = smith_normal_form(&IntMatrix::from_i64_rows(&edges));
    let divisors = snf.divisors();
    if divisors.len() < edges.len() {
        return Err(LinalgError::DegenerateSimplex);
    }
    Ok(divisors.iter().product())
}

/// Jordan block sizes of a square invertible rational matrix at the
/// eigenvalue `lambda ∈ {1, -1}`, in decreasing order.
///
/// With `r_k = rank (A - λI)^k`, the number of blocks of size at least `k`
/// is `r_{k-1} - r_k`.
pub fn jordan_profile(a: &RatMatrix, lambda: &Rat) -> Result<Vec<usize>, LinalgError> {
    if a.rows() != a.cols() {
        return Err(LinalgError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if !(lambda.is_one() || (-lambda).is_one()) {
        return Err(LinalgError::UnsupportedEigenvalue(lambda.clone()));
    }
    let n = a.rows();
    if a.rank() < n {
        return Err(LinalgError::Singular);
    }
    let shifted = a.minus_scalar(lambda);
    let mut ranks = vec![n];
    let mut power = RatMatrix::identity(n);
    loop {
        power = power.mul(&shifted);
        let r = power.rank();
        let prev = *ranks.last().expect("ranks is never empty");
        ranks.push(r);
        if r == prev {
            break;
        }
    }
    // at_least[k] = number of blocks of size >= k+1.
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for k in 0..at_least.len() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        for _ in 0..at_least[k] - next {
            sizes.push(k + 1);
        }
    }
    sizes.sort_unstable_by(|x, y| y.cmp(x));
    Ok(sizes)
}

/// The `k`-subsets of `0..d` in lexicographic order.
pub fn subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > d {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next combination in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < d - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Binomial coefficient.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Lexicographic wedge-monomial index tables for a fixed ambient rank.
#[derive(Debug, Clone)]
pub struct WedgeCoords {
    d: usize,
    by_degree: Vec<Vec<Vec<usize>>>,
    index: Vec<BTreeMap<Vec<usize>, usize>>,
}

impl WedgeCoords {
    /// Index tables for ambient rank `d`.
    pub fn new(d: usize) -> Self {
        let by_degree: Vec<Vec<Vec<usize>>> = (0..=d).map(|k| subsets(d, k)).collect();
        let index = by_degree
            .iter()
            .map(|subs| subs.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Self { d, by_degree, index }
    }

    /// Ambient rank.
    pub fn rank(&self) -> usize {
        self.d
    }

    /// Number of coordinates in degree `k`.
    pub fn len(&self, k: usize) -> usize {
        self.by_degree.get(k).map_or(0, Vec::len)
    }

    /// The index sets of degree `k` in coordinate order.
    pub fn monomials(&self, k: usize) -> &[Vec<usize>] {
        &self.by_degree[k]
    }

    /// Wedge product `v_1 ∧ … ∧ v_k` of vectors in `Q^d` (the vector of
    /// maximal minors).
    pub fn wedge_vectors(&self, vs: &[Vec<Rat>]) -> Vec<Rat> {
        let k = vs.len();
        self.by_degree[k]
            .iter()
            .map(|cols| {
                let m = RatMatrix::from_rows(
                    vs.iter().map(|v| cols.iter().map(|&c| v[c].clone()).collect()).collect(),
                );
                rat_det(&m)
            })
            .collect()
    }

    /// Exterior product of a degree-`ka` multivector and a degree-`kb`
    /// multivector.
    pub fn wedge(&self, a: &[Rat], ka: usize, b: &[Rat], kb: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.len(ka + kb)];
        if ka + kb > self.d {
            return out;
        }
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let si = &self.by_degree[ka][i];
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let sj = &self.by_degree[kb][j];
                if si.iter().any(|x| sj.contains(x)) {
                    continue;
                }
                // Sign of the shuffle sorting si ++ sj.
                let inversions: usize =
                    si.iter().map(|x| sj.iter().filter(|y| *y < x).count()).sum();
                let mut merged: Vec<usize> = si.iter().chain(sj).copied().collect();
                merged.sort_unstable();
                let idx = self.index[ka + kb][&merged];
                let term = ai * bj;
                if inversions % 2 == 0 {
                    out[idx] += term;
                } else {
                    out[idx] -= term;
                }
            }
        }
        out
    }
}

/// Determinant of a small square rational matrix.
pub fn rat_det(m: &RatMatrix) -> Rat {
    let n = m.rows();
    if n == 0 {
        return Rat::one();
    }
    let mut a = m.clone();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap_rows(p, c);
            det = -det;
        }
        let pv = a.get(c, c).clone();
        det *= &pv;
        for i in c + 1..n {
            if a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c) / &pv;
            for j in c..n {
                let v = a.get(i, j) - &f * a.get(c, j);
                a.set(i, j, v);
            }
        }
    }
    det
}

/// A linear subspace of `∧^k Q^d`, stored as a reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeSubspace {
    ambient_rank: usize,
    degree: usize,
    basis: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl WedgeSubspace {
    /// Builds the span of the given coordinate vectors.
    pub fn span(ambient_rank: usize, degree: usize, vectors: &[Vec<Rat>]) -> Self {
        let len = binomial(ambient_rank, degree);
        let nonzero: Vec<Vec<Rat>> =
            vectors.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
        if nonzero.is_empty() {
            return Self { ambient_rank, degree, basis: Vec::new(), pivots: Vec::new() };
        }
        let m = RatMatrix::from_rows(nonzero);
        debug_assert_eq!(m.cols(), len);
        let (r, pivots) = rref(&m);
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Self { ambient_rank, degree, basis, pivots }
    }

    /// Ambient rank `d`.
    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Wedge degree `k`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dimension of the subspace.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis vectors in wedge-monomial coordinates.
    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let coords: Vec<Rat> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut recon = vec![Rat::zero(); v.len()];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in recon.iter_mut().zip(b) {
                *r += c * x;
            }
        }
        (recon.as_slice() == v).then_some(coords)
    }

    /// Matrix of the inclusion `self ⊆ target` in the stored bases
    /// (`target.dim()` rows, `self.dim()` columns), or `None` if `self` is not
    /// contained in `target`.
    pub fn inclusion_into(&self, target: &WedgeSubspace) -> Option<RatMatrix> {
        let mut m = RatMatrix::zeros(target.dim(), self.dim());
        for (j, b) in self.basis.iter().enumerate() {
            let c = target.coordinates(b)?;
            for (i, x) in c.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Some(m)
    }

    /// The subspace `self ∧ v` for a fixed multivector `v` of degree `kv`.
    pub fn wedge_with(&self, coords: &WedgeCoords, v: &[Rat], kv: usize) -> WedgeSubspace {
        let vs: Vec<Vec<Rat>> =
            self.basis.iter().map(|b| coords.wedge(b, self.degree, v, kv)).collect();
        WedgeSubspace::span(self.ambient_rank, self.degree + kv, &vs)
    }
}

/// `∧^k` of the span of `vectors ⊂ Q^d`, in lexicographic wedge-monomial
/// coordinates. The dimension is `C(rank, k)`; `k > rank` gives the zero
/// subspace and `k = 0` the line spanned by the scalar unit.
pub fn wedge_power(vectors: &[Vec<Rat>], d: usize, k: usize) -> WedgeSubspace {
    wedge_power_with(&WedgeCoords::new(d), vectors, k)
}

/// [`wedge_power`] with precomputed coordinate tables.
pub fn wedge_power_with(coords: &WedgeCoords, vectors: &[Vec<Rat>], k: usize) -> WedgeSubspace {
    let d = coords.rank();
    if k == 0 {
        return WedgeSubspace::span(d, 0, &[vec![Rat::one()]]);
    }
    let basis = row_space_basis(vectors, d);
    let products: Vec<Vec<Rat>> = subsets(basis.len(), k)
        .iter()
        .map(|s| coords.wedge_vectors(&s.iter().map(|&i| basis[i].clone()).collect::<Vec<_>>()))
        .collect();
    WedgeSubspace::span(d, k, &products)
}

/// Sparse integer row used by the cochain rank computation.
pub type SparseRow = Vec<(usize, Int)>;

/// Rank of a sparse integer matrix given as rows of `(column, value)` pairs
/// sorted by column, by fraction-free elimination with content reduction.
///
/// `reverse` processes the rows in reverse order, which gives an
/// independent pivot sequence.
pub fn sparse_rank(rows: Vec<SparseRow>, reverse: bool) -> usize {
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    let iter: alloc::boxed::Box<dyn Iterator<Item = SparseRow>> = if reverse {
        alloc::boxed::Box::new(rows.into_iter().rev())
    } else {
        alloc::boxed::Box::new(rows.into_iter())
    };
    for mut row in iter {
        row.retain(|(_, v)| !v.is_zero());
        while let Some(&(lead, _)) = row.first() {
            match pivots.get(&lead) {
                None => {
                    sparse_reduce_content(&mut row);
                    pivots.insert(lead, row);
                    break;
                }
                Some(p) => {
                    row = sparse_eliminate(&row, p);
                }
            }
        }
    }
    pivots.len()
}

/// `p_lead·row − row_lead·p`, which cancels the common leading column.
fn sparse_eliminate(row: &SparseRow, p: &SparseRow) -> SparseRow {
    let a = &p[0].1;
    let b = &row[0].1;
    let g = a.gcd(b);
    let (fa, fb) = (a / &g, b / &g);
    let mut out = Vec::with_capacity(row.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < p.len() {
        let ci = row.get(i).map(|x| x.0);
        let cj = p.get(j).map(|x| x.0);
        match (ci, cj) {
            (Some(x), Some(y)) if x == y => {
                let v = &fa * &row[i].1 - &fb * &p[j].1;
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push((x, &fa * &row[i].1));
                i += 1;
            }
            (Some(x), None) => {
                out.push((x, &fa * &row[i].1));
                i += 1;
            }
            (_, Some(y)) => {
                out.push((y, -(&fb * &p[j].1)));
                j += 1;
            }
            (None, None) => break,
        }
    }
    sparse_reduce_content(&mut out);
    out
}

fn sparse_reduce_content(row: &mut SparseRow) {
    let mut g = Int::zero();
    for (_, x) in row.iter() {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, x) in row.iter_mut() {
        *x = &*x / &g;
    }
}

/// Converts a sparse rational row to a sparse integer row spanning the same
/// line.
pub fn sparse_rat_to_int(row: &[(usize, Rat)]) -> SparseRow {
    let mut l = Int::one();
    for (_, x) in row {
        l = l.lcm(x.denom());
    }
    row.iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, x)| (*c, x.numer() * (&l / x.denom())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn rm(rows: &[&[i64]]) -> RatMatrix {
        im(rows).to_rat()
    }

    fn check_smith(a: &IntMatrix) -> Smith {
        let snf = smith_normal_form(a);
        assert_eq!(snf.u.mul(a).mul(&snf.v), snf.s);
        assert_eq!(snf.v.mul(&snf.v_inv), IntMatrix::identity(a.cols()));
        assert!(snf.u.det().unwrap().abs().is_one());
        let d = snf.divisors();
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        for i in 0..snf.s.rows() {
            for j in 0..snf.s.cols() {
                if i != j {
                    assert!(snf.s.get(i, j).is_zero());
                }
            }
        }
        snf
    }

    #[test]
    fn smith_diag_2_3() {
        let snf = check_smith(&im(&[&[2, 0], &[0, 3]]));
        assert_eq!(snf.s, im(&[&[1, 0], &[0, 6]]));
    }

    #[test]
    fn smith_identity_and_scalar() {
        assert_eq!(check_smith(&IntMatrix::identity(3)).s, IntMatrix::identity(3));
        assert_eq!(check_smith(&im(&[&[3]])).s, im(&[&[3]]));
        assert_eq!(check_smith(&im(&[&[-3]])).s, im(&[&[3]]));
    }

    #[test]
    fn smith_rectangular_and_singular() {
        let snf = check_smith(&im(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(snf.divisors(), vec![int(2), int(6), int(12)]);
        let snf = check_smith(&im(&[&[1, 2], &[2, 4], &[3, 6]]));
        assert_eq!(snf.rank(), 1);
    }

    #[test]
    fn smith_is_deterministic() {
        let a = im(&[&[4, 6, 2], &[2, 8, 10]]);
        let x = smith_normal_form(&a);
        let y = smith_normal_form(&a);
        assert_eq!(x.u, y.u);
        assert_eq!(x.v, y.v);
    }

    #[test]
    fn hermite_basic() {
        let a = im(&[&[2, 3], &[4, 5], &[6, 7]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(u.mul(&a), h);
        assert_eq!(h.row(0), &[int(2), int(0)][..]);
        assert_eq!(h.row(1), &[int(0), int(1)][..]);
        assert!(h.row(2).iter().all(Zero::is_zero));
    }

    #[test]
    fn rank_kernel_examples() {
        let (r, k) = rank_and_kernel(&RatMatrix::zeros(2, 2));
        assert_eq!((r, k.len()), (0, 2));
        let (r, k) = rank_and_kernel(&RatMatrix::identity(4));
        assert_eq!((r, k.len()), (4, 0));
        let a = rm(&[&[1, 2], &[2, 4]]);
        let (r, k) = rank_and_kernel(&a);
        assert_eq!(r, 1);
        assert_eq!(k.len(), 1);
        // The kernel is spanned by (2, -1).
        assert_eq!(&k[0][0] * rat(-1), &k[0][1] * rat(2));
        assert!(a.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn wedge_examples() {
        let w = wedge_power(&[to_rat_vec(&[5, 1])], 2, 0);
        assert_eq!(w.dim(), 1);
        assert_eq!(w.basis()[0], vec![rat(1)]);
        let w = wedge_power(&[to_rat_vec(&[1, 0]), to_rat_vec(&[0, 1])], 2, 2);
        assert_eq!(w.basis(), &[vec![rat(1)]]);
        // Raw wedge of (1,0,0) and (1,2,0) is 2·e1∧e2.
        let c = WedgeCoords::new(3);
        let raw = c.wedge_vectors(&[to_rat_vec(&[1, 0, 0]), to_rat_vec(&[1, 2, 0])]);
        assert_eq!(raw, vec![rat(2), rat(0), rat(0)]);
        let w = wedge_power(&[to_rat_vec(&[1, 0, 0]), to_rat_vec(&[1, 2, 0])], 3, 2);
        assert_eq!(w.dim(), 1);
        assert!(w.coordinates(&raw).is_some());
        assert_eq!(wedge_power(&[to_rat_vec(&[1, 0, 0])], 3, 2).dim(), 0);
    }

    #[test]
    fn wedge_product_signs() {
        let c = WedgeCoords::new(3);
        let e = |i: usize| {
            let mut v = vec![rat(0); 3];
            v[i] = rat(1);
            v
        };
        let e2e1 = c.wedge(&e(1), 1, &e(0), 1);
        assert_eq!(e2e1, vec![rat(-1), rat(0), rat(0)]);
        let e12 = c.wedge(&e(0), 1, &e(1), 1);
        let vol = c.wedge(&e12, 2, &e(2), 1);
        assert_eq!(vol, vec![rat(1)]);
        assert_eq!(c.wedge(&e(2), 1, &e12, 2), vec![rat(1)]);
    }

    #[test]
    fn relative_volume_examples() {
        assert_eq!(relative_volume(&[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap(), int(1));
        assert_eq!(relative_volume(&[vec![0], vec![3]]).unwrap(), int(3));
        assert_eq!(relative_volume(&[vec![0, 0], vec![1, 0], vec![1, 2]]).unwrap(), int(2));
        assert_eq!(
            relative_volume(&[vec![0, 0], vec![1, 1], vec![2, 2]]),
            Err(LinalgError::DegenerateSimplex)
        );
        // A segment in the plane measured in its own lattice.
        assert_eq!(relative_volume(&[vec![0, 0], vec![2, 4]]).unwrap(), int(2));
    }

    #[test]
    fn jordan_examples() {
        assert_eq!(jordan_profile(&RatMatrix::identity(3), &rat(1)).unwrap(), vec![1, 1, 1]);
        assert_eq!(jordan_profile(&rm(&[&[1, 1], &[0, 1]]), &rat(1)).unwrap(), vec![2]);
        assert_eq!(jordan_profile(&rm(&[&[1, 1], &[0, 1]]), &rat(-1)).unwrap(), Vec::<usize>::new());
        assert_eq!(
            jordan_profile(&rm(&[&[1, 0], &[0, 0]]), &rat(1)),
            Err(LinalgError::Singular)
        );
        assert!(jordan_profile(&RatMatrix::identity(2), &rat(2)).is_err());
    }

    #[test]
    fn determinant_and_inverse() {
        let a = im(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det().unwrap(), int(18));
        let inv = a.to_rat().inverse().unwrap();
        assert_eq!(a.to_rat().mul(&inv), RatMatrix::identity(3));
    }

    #[test]
    fn integer_solutions() {
        let a = im(&[&[1, 0], &[1, 2]]);
        assert_eq!(solve_integer(&a, &[int(1), int(1)]), Some(vec![int(1), int(0)]));
        let a = im(&[&[2]]);
        assert_eq!(solve_integer(&a, &[int(1)]), None);
    }

    #[test]
    fn sparse_rank_matches_dense() {
        let a = im(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1], &[1, 3, 4]]);
        let rows: Vec<SparseRow> = (0..a.rows())
            .map(|i| {
                a.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect();
        assert_eq!(sparse_rank(rows.clone(), false), 2);
        assert_eq!(sparse_rank(rows, true), 2);
        assert_eq!(a.rank_fraction_free(false), 2);
        assert_eq!(a.rank_fraction_free(true), 2);
    }

    #[test]
    fn saturated_basis_of_thin_lattice() {
        let b = saturated_basis(&[vec![2, 4]], 2);
        assert_eq!(b.len(), 1);
        let v: Vec<i64> = b[0].iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert!(v == vec![1, 2] || v == vec![-1, -2]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
            (1..=max, 1..=max).prop_flat_map(|(r, c)| {
                proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r)
            })
        }

        proptest! {
            #[test]
            fn smith_invariants(rows in small_matrix(4)) {
                let a = IntMatrix::from_i64_rows(&rows);
                let snf = smith_normal_form(&a);
                prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s.clone());
                if a.rows() == a.cols() {
                    let det = a.det().unwrap().abs();
                    if !det.is_zero() {
                        let prod: Int = snf.divisors().iter().product();
                        prop_assert_eq!(prod, det);
                    }
                }
            }

            #[test]
            fn rank_orders_agree(rows in small_matrix(5)) {
                let a = IntMatrix::from_i64_rows(&rows);
                let r1 = a.rank_fraction_free(false);
                let r2 = a.rank_fraction_free(true);
                let (r3, kernel) = rank_and_kernel(&a.to_rat());
                prop_assert_eq!(r1, r2);
                prop_assert_eq!(r1, r3);
                prop_assert_eq!(r3 + kernel.len(), a.cols());
                for v in &kernel {
                    prop_assert!(a.to_rat().mul_vec(v).iter().all(Zero::is_zero));
                }
            }

            #[test]
            fn wedge_dimension_is_binomial(rows in small_matrix(4)) {
                let d = rows[0].len();
                let vs: Vec<Vec<Rat>> = rows.iter().map(|r| to_rat_vec(r)).collect();
                let r = RatMatrix::from_rows(vs.clone()).rank();
                for k in 0..=d {
                    prop_assert_eq!(wedge_power(&vs, d, k).dim(), binomial(r, k));
                }
            }

            #[test]
            fn volume_invariance(
                pts in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 2), 3),
                shear in -3i64..=3,
            ) {
                if let Ok(v) = relative_volume(&pts) {
                    let mut rev = pts.clone();
                    rev.reverse();
                    prop_assert_eq!(relative_volume(&rev).unwrap(), v.clone());
                    let sheared: Vec<Vec<i64>> =
                        pts.iter().map(|p| vec![p[0] + shear * p[1], p[1]]).collect();
                    prop_assert_eq!(relative_volume(&sheared).unwrap(), v);
                }
            }

            #[test]
            fn jordan_sizes_sum_to_multiplicity(
                diag in proptest::collection::vec(prop_oneof![Just(1i64), Just(-1i64), Just(2i64)], 1..5),
                sup in proptest::collection::vec(0i64..=1, 4),
            ) {
                let n = diag.len();
                let mut a = RatMatrix::zeros(n, n);
                for i in 0..n {
                    a.set(i, i, rat(diag[i]));
                    if i + 1 < n && diag[i] == diag[i + 1] {
                        a.set(i, i + 1, rat(sup[i]));
                    }
                }
                for lam in [1i64, -1] {
                    let mult = diag.iter().filter(|&&x| x == lam).count();
                    let sizes = jordan_profile(&a, &rat(lam)).unwrap();
                    prop_assert_eq!(sizes.iter().sum::<usize>(), mult);
                }
            }
        }
    }
}
