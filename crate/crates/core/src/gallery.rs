//! Concrete algebras used throughout the crate and its tests.
//!
//! | name | basis | nonzero brackets |
//! |------|-------|------------------|
//! | `abelian(p\|q)` | `x1..xp` even, `y1..yq` odd | none |
//! | `heisenberg3` | `e1 e2 e3` even | `[e1,e2] = e3` |
//! | `solvable2d` | `e1 e2` even | `[e1,e2] = e2` |
//! | `gl11` | `E11 E22` even, `E12 E21` odd | matrix superbracket |
//! | `glnn(n)`, `gn(n)` | matrix units, see [`glnn`] | matrix superbracket |
//! | `hyperbolic-even`, `hyperbolic-odd` | two vectors of one parity | none, Gram `[[0,1],[±1,0]]` |
//! | `line` | `e` even | none, `B(e,e) = 1` |
//! | `euclidean-plane` | `x1 x2` even | none, identity Gram |
//! | `class-c(n)` | T*-extension of `gn(n)` by zero | |
//! | `tstar-h3` | T*-extension of `heisenberg3` by its volume cocycle | |
//! | `odd-instance` | orthogonal sum of `T*₀ heisenberg3` and `line` | |

use num_traits::{One, Zero};

use crate::algebra::LieSuperalgebra;
use crate::cochains::{unhat, FreeCoords3, ScalarCochain3};
use crate::error::{Error, Result};
use crate::forms::{hyperbolic_gram, EvenForm, QuadraticLieSuperalgebra};
use crate::linalg::{int, unit_vec, zero_vec, Matrix, Scalar};
use crate::parity::{koszul, signed, GradedBasis, Parity};
use crate::tstar::{self, TStarExtension};

pub fn abelian(even: usize, odd: usize) -> LieSuperalgebra {
    LieSuperalgebra::abelian(GradedBasis::standard(even, odd))
}

fn even_basis(names: &[&str]) -> GradedBasis {
    GradedBasis::new(names.iter().map(|n| (n.to_string(), Parity::Even)).collect()).expect("distinct labels")
}

pub fn heisenberg3() -> LieSuperalgebra {
    LieSuperalgebra::from_brackets(even_basis(&["e1", "e2", "e3"]), &[(0, 1, unit_vec(3, 2))]).expect("valid")
}

/// The affine algebra `[e1,e2] = e2`.
pub fn solvable2d() -> LieSuperalgebra {
    LieSuperalgebra::from_brackets(even_basis(&["e1", "e2"]), &[(0, 1, unit_vec(2, 1))]).expect("valid")
}

pub fn gl11() -> LieSuperalgebra {
    glnn(1).expect("n = 1")
}

/// Position of the matrix unit `E_rc` (0-based, `r, c < 2n`) in its block.
fn block(n: usize, r: usize) -> usize {
    usize::from(r >= n)
}

fn unit_parity(n: usize, (r, c): (usize, usize)) -> Parity {
    Parity::from_bit((block(n, r) + block(n, c)) as u8)
}

fn unit_label(n: usize, (r, c): (usize, usize)) -> String {
    if 2 * n >= 10 {
        format!("E{}_{}", r + 1, c + 1)
    } else {
        format!("E{}{}", r + 1, c + 1)
    }
}

/// Matrix units of the four blocks in basis order: A, D (even), B, C (odd),
/// each row-major, filtered by `keep(block, i, j)` on in-block indices.
fn block_units(n: usize, keep: impl Fn(char, usize, usize) -> bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (name, ro, co) in [('A', 0, 0), ('D', n, n), ('B', 0, n), ('C', n, 0)] {
        for i in 0..n {
            for j in 0..n {
                if keep(name, i, j) {
                    out.push((ro + i, co + j));
                }
            }
        }
    }
    out
}

/// Sub-superalgebra of gl(n,n) spanned by the given matrix units, with
/// `[E_ab, E_cd] = δ_bc E_ad − (−1)^{αβ} δ_da E_cb`.
fn matrix_unit_algebra(n: usize, units: &[(usize, usize)]) -> Result<LieSuperalgebra> {
    let basis = GradedBasis::new(units.iter().map(|&u| (unit_label(n, u), unit_parity(n, u))).collect())?;
    let d = units.len();
    let pos = |u: (usize, usize)| units.iter().position(|&v| v == u);
    let mut brackets = Vec::new();
    for (i, &(a, b)) in units.iter().enumerate() {
        for (j, &(c, e)) in units.iter().enumerate().skip(i) {
            let mut v = zero_vec(d);
            let neg = koszul(unit_parity(n, (a, b)), unit_parity(n, (c, e)));
            let mut terms = Vec::new();
            if b == c {
                terms.push(((a, e), Scalar::one()));
            }
            if e == a {
                terms.push(((c, b), signed(!neg, Scalar::one())));
            }
            for (u, coef) in terms {
                let k = pos(u).ok_or_else(|| Error::InvalidStructure {
                    reason: "matrix units are not closed under the bracket".into(),
                    witness: vec![unit_label(n, (a, b)), unit_label(n, (c, e))],
                })?;
                v[k] += coef;
            }
            if v.iter().any(|x| !x.is_zero()) {
                brackets.push((i, j, v));
            }
        }
    }
    let g = LieSuperalgebra::from_brackets(basis, &brackets)?;
    g.ensure_axioms()?;
    Ok(g)
}

/// gl(n,n) on matrix units `E{r}{c}` (1-based; `E{r}_{c}` once 2n ≥ 10), in
/// the order A block, D block, B block, C block, each row-major.
pub fn glnn(n: usize) -> Result<LieSuperalgebra> {
    if n == 0 {
        return Err(Error::Precondition("gl(n,n) needs n ≥ 1".into()));
    }
    matrix_unit_algebra(n, &block_units(n, |_, _, _| true))
}

/// g(n): A, C, D strictly upper triangular, B upper triangular.
pub fn gn(n: usize) -> Result<LieSuperalgebra> {
    if n == 0 {
        return Err(Error::Precondition("g(n) needs n ≥ 1".into()));
    }
    matrix_unit_algebra(n, &block_units(n, |b, i, j| if b == 'B' { i <= j } else { i < j }))
}

/// `T*₀ g(n)`, checked to be nilpotent with a nonzero center inside the odd part.
pub fn class_c(n: usize) -> Result<QuadraticLieSuperalgebra> {
    let g = gn(n)?;
    let e = tstar::build(&g, &crate::cochains::Cochain2Dual::zero(g.parities()))?;
    let q = e.total;
    let z = q.algebra().center();
    if !q.algebra().is_nilpotent() || z.is_zero() || z.sdim().0 != 0 {
        return Err(Error::Verification("T*₀ g(n) is not in class C".into()));
    }
    Ok(q)
}

/// A 2×2-block matrix of size 2n with the superbracket of gl(n,n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMatrix {
    n: usize,
    m: Matrix,
}

impl BlockMatrix {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            m: Matrix::zeros(2 * n, 2 * n),
        }
    }

    /// Matrix unit, 0-based indices in `0..2n`.
    pub fn unit(n: usize, r: usize, c: usize) -> Self {
        let mut b = Self::zero(n);
        b.m[(r, c)] = Scalar::one();
        b
    }

    pub fn from_blocks(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Self {
        let n = a.rows();
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.m[(i, j)] = a[(i, j)].clone();
                out.m[(i, n + j)] = b[(i, j)].clone();
                out.m[(n + i, j)] = c[(i, j)].clone();
                out.m[(n + i, n + j)] = d[(i, j)].clone();
            }
        }
        out
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    /// Even iff B = C = 0, odd iff A = D = 0; `None` for a mixed matrix (zero is even).
    pub fn parity(&self) -> Option<Parity> {
        let n = self.n;
        let (mut diag, mut off) = (false, false);
        for r in 0..2 * n {
            for c in 0..2 * n {
                if !self.m[(r, c)].is_zero() {
                    if block(n, r) == block(n, c) {
                        diag = true;
                    } else {
                        off = true;
                    }
                }
            }
        }
        match (diag, off) {
            (_, false) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            _ => None,
        }
    }

    /// `[M,N] = MN − (−1)^{αβ} NM` for homogeneous M, N.
    pub fn superbracket(&self, other: &Self) -> Result<Self> {
        let (pa, pb) = match (self.parity(), other.parity()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::NotHomogeneous("block matrix mixes parities".into())),
        };
        let mn = self.m.mul(&other.m)?;
        let nm = other.m.mul(&self.m)?;
        let mut out = Self::zero(self.n);
        let sign = signed(koszul(pa, pb), Scalar::one());
        for r in 0..2 * self.n {
            for c in 0..2 * self.n {
                out.m[(r, c)] = &mn[(r, c)] - &sign * &nm[(r, c)];
            }
        }
        Ok(out)
    }

    /// Membership in g(n).
    pub fn in_gn(&self) -> bool {
        let n = self.n;
        (0..2 * n).all(|r| {
            (0..2 * n).all(|c| {
                let (i, j) = (r % n, c % n);
                let upper_b = block(n, r) == 0 && block(n, c) == 1;
                self.m[(r, c)].is_zero() || if upper_b { i <= j } else { i < j }
            })
        })
    }
}

pub fn hyperbolic_plane(parity: Parity) -> QuadraticLieSuperalgebra {
    let basis = GradedBasis::new(vec![("u".into(), parity), ("v".into(), parity)]).expect("distinct");
    let form = EvenForm::new(&[parity, parity], hyperbolic_gram(parity)).expect("supersymmetric");
    QuadraticLieSuperalgebra::new(LieSuperalgebra::abelian(basis), form).expect("quadratic")
}

/// One even vector `e` with `B(e,e) = 1`.
pub fn line() -> QuadraticLieSuperalgebra {
    let basis = GradedBasis::new(vec![("e".into(), Parity::Even)]).expect("one label");
    let form = EvenForm::new(&[Parity::Even], Matrix::identity(1)).expect("symmetric");
    QuadraticLieSuperalgebra::new(LieSuperalgebra::abelian(basis), form).expect("quadratic")
}

/// abelian(2|0) with the identity Gram matrix: no rational isotropic line.
pub fn euclidean_plane() -> QuadraticLieSuperalgebra {
    let g = abelian(2, 0);
    let form = EvenForm::new(g.parities(), Matrix::identity(2)).expect("symmetric");
    QuadraticLieSuperalgebra::new(g, form).expect("quadratic")
}

/// The closed 3-form `e1* ∧ e2* ∧ e3*` on heisenberg3 seen as a cocycle.
pub fn heisenberg_volume() -> crate::cochains::Cochain2Dual {
    let g = heisenberg3();
    let free = FreeCoords3::new(g.parities());
    let f = ScalarCochain3::from_free(g.parities(), &free, &[int(1)]);
    unhat(&g, &f).expect("every 3-form on a 3-dimensional algebra is closed")
}

pub fn tstar_h3() -> TStarExtension {
    tstar::build(&heisenberg3(), &heisenberg_volume()).expect("volume cocycle is supercyclic")
}

/// Orthogonal sum of `T*₀ heisenberg3` and [`line`]: nilpotent, dimension 7.
pub fn odd_instance() -> QuadraticLieSuperalgebra {
    let g = heisenberg3();
    let t = tstar::build(&g, &crate::cochains::Cochain2Dual::zero(g.parities())).expect("zero cocycle");
    t.total.direct_sum(&line()).expect("distinct labels")
}

/// A named gallery entry.
#[derive(Clone, Debug)]
pub enum Stock {
    Algebra(LieSuperalgebra),
    Quadratic(QuadraticLieSuperalgebra),
}

impl Stock {
    pub fn algebra(&self) -> &LieSuperalgebra {
        match self {
            Stock::Algebra(g) => g,
            Stock::Quadratic(q) => q.algebra(),
        }
    }

    pub fn form(&self) -> Option<&EvenForm> {
        match self {
            Stock::Algebra(_) => None,
            Stock::Quadratic(q) => Some(q.form()),
        }
    }
}

pub const STOCK_NAMES: &[&str] = &[
    "abelian(p|q)",
    "heisenberg3",
    "solvable2d",
    "gl11",
    "hyperbolic-even",
    "hyperbolic-odd",
    "line",
    "euclidean-plane",
    "tstar-h3",
    "odd-instance",
];

fn parse_abelian(name: &str) -> Option<(usize, usize)> {
    let inner = name.strip_prefix("abelian(")?.strip_suffix(')')?;
    let (p, q) = inner.split_once('|')?;
    Some((p.trim().parse().ok()?, q.trim().parse().ok()?))
}

pub fn stock(name: &str) -> Result<Stock> {
    if let Some((p, q)) = parse_abelian(name) {
        return Ok(Stock::Algebra(abelian(p, q)));
    }
    Ok(match name {
        "heisenberg3" => Stock::Algebra(heisenberg3()),
        "solvable2d" => Stock::Algebra(solvable2d()),
        "gl11" => Stock::Algebra(gl11()),
        "hyperbolic-even" => Stock::Quadratic(hyperbolic_plane(Parity::Even)),
        "hyperbolic-odd" => Stock::Quadratic(hyperbolic_plane(Parity::Odd)),
        "line" => Stock::Quadratic(line()),
        "euclidean-plane" => Stock::Quadratic(euclidean_plane()),
        "tstar-h3" => Stock::Quadratic(tstar_h3().total),
        "odd-instance" => Stock::Quadratic(odd_instance()),
        _ => return Err(Error::UnknownName(name.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_block(g: &LieSuperalgebra, n: usize, x: &[Scalar]) -> BlockMatrix {
        let mut b = BlockMatrix::zero(n);
        for (i, c) in x.iter().enumerate() {
            let name = g.basis().name(i);
            let digits: Vec<usize> = if name.contains('_') {
                name[1..].split('_').map(|t| t.parse::<usize>().unwrap() - 1).collect()
            } else {
                name[1..]
                    .chars()
                    .map(|ch| ch.to_digit(10).unwrap() as usize - 1)
                    .collect()
            };
            b.m[(digits[0], digits[1])] += c;
        }
        b
    }

    fn check_against_matrices(g: &LieSuperalgebra, n: usize) {
        let d = g.dim();
        for i in 0..d {
            for j in 0..d {
                let bi = to_block(g, n, &unit_vec(d, i));
                let bj = to_block(g, n, &unit_vec(d, j));
                let expected = bi.superbracket(&bj).unwrap();
                let got = to_block(g, n, &g.bracket_basis_vec(i, j));
                assert_eq!(got, expected, "[{}, {}]", g.basis().name(i), g.basis().name(j));
            }
        }
    }

    #[test]
    fn glnn_matches_block_multiplication() {
        for n in 1..=2 {
            let g = glnn(n).unwrap();
            assert_eq!(g.basis().sdim(), (2 * n * n, 2 * n * n));
            check_against_matrices(&g, n);
        }
    }

    #[test]
    fn gl11_brackets() {
        let g = gl11();
        let b = g.basis();
        assert_eq!(b.names(), ["E11", "E22", "E12", "E21"]);
        let i = |s: &str| b.index_of(s).unwrap();
        assert_eq!(g.bracket_basis_vec(i("E11"), i("E12")), unit_vec(4, i("E12")));
        let mut sum = zero_vec(4);
        sum[i("E11")] = int(1);
        sum[i("E22")] = int(1);
        assert_eq!(g.bracket_basis_vec(i("E12"), i("E21")), sum);
    }

    #[test]
    fn gn_dimensions_and_closure() {
        for n in 1..=3 {
            let g = gn(n).unwrap();
            assert_eq!(g.dim(), n * (2 * n - 1));
            assert_eq!(g.basis().sdim(), (n * (n - 1), n * n));
            check_against_matrices(&g, n);
            for i in 0..g.dim() {
                assert!(to_block(&g, n, &unit_vec(g.dim(), i)).in_gn());
            }
        }
    }

    #[test]
    fn large_labels_use_separator() {
        assert_eq!(unit_label(5, (0, 9)), "E1_10");
        assert_eq!(unit_label(4, (0, 7)), "E18");
    }

    #[test]
    fn block_matrix_parity() {
        assert_eq!(BlockMatrix::unit(1, 0, 1).parity(), Some(Parity::Odd));
        assert_eq!(BlockMatrix::zero(1).parity(), Some(Parity::Even));
        let mut m = BlockMatrix::unit(1, 0, 1);
        m.m[(0, 0)] = int(1);
        assert_eq!(m.parity(), None);
        assert!(m.superbracket(&m).is_err());
    }

    #[test]
    fn zero_rejected() {
        assert!(glnn(0).is_err());
        assert!(gn(0).is_err());
    }

    #[test]
    fn stock_catalog() {
        for name in STOCK_NAMES {
            let name = if *name == "abelian(p|q)" { "abelian(0|2)" } else { name };
            let s = stock(name).unwrap();
            assert!(s.algebra().check_axioms().passes(), "{name}");
        }
        assert!(matches!(stock("nope"), Err(Error::UnknownName(_))));
        let h = stock("heisenberg3").unwrap();
        assert!(h.algebra().is_nilpotent());
        assert_eq!(h.algebra().center().dim(), 1);
        let s = stock("solvable2d").unwrap();
        assert!(s.algebra().is_solvable() && !s.algebra().is_nilpotent());
    }
}
