//! Exact rational linear algebra: scalars, dense matrices and Gaussian elimination.
//!
//! Every computation in the crate bottoms out here. Nothing is ever rounded;
//! systems are small (a few thousand equations, at most a few hundred unknowns)
//! so dense row reduction is adequate.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always stored in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// Shorthand for an integer scalar.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p`, `-p`, or `p/q`.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Scalar::new(n, d))
        }
        None => text.parse::<BigInt>().ok().map(Scalar::from_integer),
    }
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn zero_vec(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `y += a * x`
pub fn axpy(y: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

pub fn scale_vec(v: &[Scalar], a: &Scalar) -> Vec<Scalar> {
    v.iter().map(|x| x * a).collect()
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: zero_vec(rows * cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must share a length;
    /// `cols` is only consulted when `rows` is empty.
    pub fn from_rows(rows: &[Vec<Scalar>], cols: usize) -> Result<Self> {
        let cols = rows.first().map_or(cols, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                context: "matrix rows of unequal length",
                expected: cols,
                found: rows.iter().map(Vec::len).find(|&l| l != cols).unwrap_or(0),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Scalar>], rows: usize) -> Result<Self> {
        Ok(Self::from_rows(cols, rows)?.transpose())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<Scalar> = rows.iter().flat_map(|r| r.iter().map(|&x| int(x))).collect();
        assert_eq!(data.len(), rows.len() * cols, "ragged integer matrix");
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut inv = Matrix::zeros(n, n);
        for c in 0..n {
            let sol = solve(self, &unit_vec(n, c)).ok()?;
            if !sol.kernel_basis.is_empty() {
                return None;
            }
            let x = sol.particular?;
            for r in 0..n {
                inv[(r, c)] = x[r].clone();
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

/// Incrementally maintained reduced row echelon form.
///
/// Rows are fed one at a time; zero rows after reduction are dropped. The
/// stored rows are always fully reduced (each pivot column is zero in every
/// other row), so kernels can be read off directly.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        let mut e = Self::new(m.cols());
        for r in 0..m.rows() {
            e.push(m.row(r).to_vec());
        }
        e
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Reduces `v` against the stored rows without inserting it.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let a = -v[p].clone();
                axpy(&mut v, &a, row);
            }
        }
        v
    }

    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Inserts a row; returns true if the rank grew.
    pub fn push(&mut self, v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.cols, "row length mismatch in RowEchelon");
        let mut v = self.reduce(&v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let a = -row[p].clone();
                axpy(row, &a, &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    /// Basis of the null space of the stored rows, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = zero_vec(self.cols);
            v[free] = Scalar::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[free].is_zero() {
                    v[p] = -row[free].clone();
                }
            }
            out.push(v);
        }
        out
    }
}

/// Solution set of `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub particular: Option<Vec<Scalar>>,
    pub kernel_basis: Vec<Vec<Scalar>>,
}

impl SolutionSet {
    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }
}

pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<SolutionSet> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch {
            context: "linear system right-hand side",
            expected: a.rows(),
            found: b.len(),
        });
    }
    let n = a.cols();
    let mut aug = RowEchelon::new(n + 1);
    for r in 0..a.rows() {
        let mut row = a.row(r).to_vec();
        row.push(b[r].clone());
        aug.push(row);
    }
    let consistent = !aug.pivots().contains(&n);
    let particular = consistent.then(|| {
        let mut x = zero_vec(n);
        for (row, &p) in aug.basis_rows().iter().zip(aug.pivots()) {
            x[p] = row[n].clone();
        }
        x
    });
    Ok(SolutionSet {
        particular,
        kernel_basis: kernel(a),
    })
}

pub fn rank(a: &Matrix) -> usize {
    RowEchelon::from_matrix(a).rank()
}

pub fn kernel(a: &Matrix) -> Vec<Vec<Scalar>> {
    RowEchelon::from_matrix(a).kernel()
}

/// Rank of a family of vectors.
pub fn rank_of(vectors: &[Vec<Scalar>], len: usize) -> usize {
    let mut e = RowEchelon::new(len);
    for v in vectors {
        e.push(v.clone());
    }
    e.rank()
}

/// Rational roots of a polynomial with rational coefficients (lowest degree first),
/// without multiplicity, in increasing order.
pub fn rational_roots(coeffs: &[Scalar]) -> Vec<Scalar> {
    use num_integer::Integer;

    let mut c: Vec<Scalar> = coeffs.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    let mut roots = Vec::new();
    if c.len() <= 1 {
        return roots;
    }
    // factor out x^k
    let shift = c.iter().position(|x| !x.is_zero()).unwrap_or(0);
    if shift > 0 {
        roots.push(Scalar::zero());
        c.drain(..shift);
    }
    if c.len() > 1 {
        let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = c
            .iter()
            .map(|x| (x * Scalar::from_integer(lcm.clone())).to_integer())
            .collect();
        let lead = ints.last().unwrap().abs();
        let tail = ints[0].abs();
        let divisors = |n: &BigInt| -> Vec<BigInt> {
            let mut out = Vec::new();
            let mut d = BigInt::one();
            while &d * &d <= *n {
                if (n % &d).is_zero() {
                    out.push(d.clone());
                    let q = n / &d;
                    if q != d {
                        out.push(q);
                    }
                }
                d += 1;
            }
            out
        };
        for p in divisors(&tail) {
            for q in divisors(&lead) {
                for s in [1i64, -1] {
                    let cand = Scalar::new(&p * BigInt::from(s), q.clone());
                    if eval_poly(&c, &cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

pub fn eval_poly(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    coeffs.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
}

/// Characteristic polynomial det(t·I − M), lowest degree first (Faddeev–LeVerrier).
pub fn char_poly(m: &Matrix) -> Vec<Scalar> {
    let n = m.rows();
    let mut coeffs = zero_vec(n + 1);
    coeffs[n] = Scalar::one();
    let mut mk = Matrix::zeros(n, n);
    for k in 1..=n {
        // M_k = M * (M_{k-1} + c_{n-k+1} I)
        let mut tmp = mk.clone();
        for i in 0..n {
            tmp[(i, i)] += &coeffs[n - k + 1];
        }
        mk = m.mul(&tmp).expect("square");
        let trace = (0..n).fold(Scalar::zero(), |acc, i| acc + &mk[(i, i)]);
        coeffs[n - k] = -trace / int(k as i64);
    }
    coeffs
}
