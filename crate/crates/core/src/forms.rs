//! Even supersymmetric bilinear forms and quadratic Lie superalgebras.

use num_traits::{One, Zero};

use crate::algebra::LieSuperalgebra;
use crate::error::{Error, Result};
use crate::linalg::{dot, frac, is_zero_vec, rank, solve, sub_vec, zero_vec, Matrix, Scalar};
use crate::parity::{koszul, signed, GradedBasis, Parity};
use crate::subspace::{graded_kernel, Subspace};

/// Gram matrix of a bilinear form that is even (`B(g₀, g₁) = 0`) and
/// supersymmetric (`B(X,Y) = (−1)^{xy} B(Y,X)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenForm {
    parities: Vec<Parity>,
    gram: Matrix,
}

impl EvenForm {
    pub fn new(parities: &[Parity], gram: Matrix) -> Result<Self> {
        let n = parities.len();
        if gram.rows() != n || gram.cols() != n {
            return Err(Error::DimensionMismatch {
                context: "Gram matrix",
                expected: n,
                found: gram.rows(),
            });
        }
        for i in 0..n {
            for j in 0..n {
                if parities[i] != parities[j] && !gram[(i, j)].is_zero() {
                    return Err(Error::InvalidForm {
                        reason: "form pairs an even vector with an odd one".into(),
                        witness: vec![i.to_string(), j.to_string()],
                    });
                }
                let mirrored = signed(koszul(parities[i], parities[j]), gram[(j, i)].clone());
                if gram[(i, j)] != mirrored {
                    return Err(Error::InvalidForm {
                        reason: "form is not supersymmetric".into(),
                        witness: vec![i.to_string(), j.to_string()],
                    });
                }
            }
        }
        Ok(Self {
            parities: parities.to_vec(),
            gram,
        })
    }

    pub fn zero(parities: &[Parity]) -> Self {
        let n = parities.len();
        Self::new(parities, Matrix::zeros(n, n)).expect("zero form is even and supersymmetric")
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn value(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        dot(x, &self.gram.mul_vec(y).expect("form dimension"))
    }

    /// Coefficients of the functional `v ↦ B(x, v)`.
    pub fn pair_left(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.gram.transpose().mul_vec(x).expect("form dimension")
    }

    pub fn is_nondegenerate(&self) -> bool {
        rank(&self.gram) == self.dim()
    }

    /// `W^⊥ = {v : B(v, w) = 0 for all w ∈ W}`, returned graded.
    pub fn orthogonal(&self, w: &Subspace) -> Subspace {
        let rows: Vec<Vec<Scalar>> = w
            .basis()
            .iter()
            .map(|b| self.gram.mul_vec(b).expect("form dimension"))
            .filter(|r| !is_zero_vec(r))
            .collect();
        graded_kernel(&self.parities, &rows)
    }

    pub fn is_totally_isotropic(&self, w: &Subspace) -> bool {
        let b = w.basis();
        b.iter().all(|x| b.iter().all(|y| self.value(x, y).is_zero()))
    }

    /// Restriction to the span of `vectors`, as a Gram matrix.
    pub fn restrict(&self, vectors: &[Vec<Scalar>]) -> Matrix {
        let n = vectors.len();
        let mut m = Matrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                m[(a, b)] = self.value(&vectors[a], &vectors[b]);
            }
        }
        m
    }

    /// Orthogonal direct sum of two forms.
    pub fn direct_sum(&self, other: &EvenForm) -> EvenForm {
        let (n, m) = (self.dim(), other.dim());
        let mut gram = Matrix::zeros(n + m, n + m);
        for i in 0..n {
            for j in 0..n {
                gram[(i, j)] = self.gram[(i, j)].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                gram[(n + i, n + j)] = other.gram[(i, j)].clone();
            }
        }
        let parities: Vec<Parity> = self.parities.iter().chain(&other.parities).copied().collect();
        EvenForm::new(&parities, gram).expect("direct sum of even supersymmetric forms")
    }

    /// A graded totally isotropic complement of a Lagrangian graded subspace,
    /// obtained from the standard-basis complement of `ideal`.
    pub fn isotropic_complement(&self, ideal: &Subspace) -> Result<Vec<Vec<Scalar>>> {
        let n = self.dim();
        let w: Vec<Vec<Scalar>> = ideal
            .standard_complement()
            .into_iter()
            .map(|i| crate::linalg::unit_vec(n, i))
            .collect();
        self.isotropic_complement_from(ideal, &w)
    }

    /// Corrects a homogeneous complement `w` of `ideal` to a totally isotropic
    /// one: `w ↦ w − h(w)` with `h: W → I` even and
    /// `B(h(w), w') = ½ B(w, w')` for all `w'` in `W`.
    ///
    /// The ½ needs characteristic ≠ 2, which always holds over the rationals.
    /// Output vectors correspond one-to-one, in order, to the input vectors.
    pub fn isotropic_complement_from(&self, ideal: &Subspace, w: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
        let n = self.dim();
        let half = frac(1, 2);
        debug_assert!(!(&half + &half).is_zero(), "characteristic 2");
        if !self.is_nondegenerate() {
            return Err(Error::DegenerateForm);
        }
        if 2 * ideal.dim() != n {
            return Err(Error::Precondition(format!(
                "subspace has dimension {} inside a space of dimension {n}",
                ideal.dim()
            )));
        }
        if !self.is_totally_isotropic(ideal) {
            return Err(Error::Precondition("subspace is not totally isotropic".into()));
        }
        if w.len() != ideal.dim()
            || !ideal
                .sum(&Subspace::from_homogeneous(&self.parities, w.to_vec()))
                .same_as(&Subspace::full(&self.parities))
        {
            return Err(Error::Precondition(
                "given vectors do not complement the subspace".into(),
            ));
        }
        for v in w {
            crate::parity::vector_parity(&self.parities, v)?;
        }
        let ib = ideal.basis();
        let m = ib.len();
        // pairing matrix: row c, column b = B(i_b, w_c)
        let mut pairing = Matrix::zeros(m, m);
        for c in 0..m {
            for b in 0..m {
                pairing[(c, b)] = self.value(&ib[b], &w[c]);
            }
        }
        let mut out = Vec::with_capacity(m);
        for wa in w {
            let rhs: Vec<Scalar> = w.iter().map(|wc| &half * self.value(wa, wc)).collect();
            let sol = solve(&pairing, &rhs)?;
            let x = sol
                .particular
                .ok_or_else(|| Error::Verification("isotropic correction system is inconsistent".into()))?;
            let mut h = zero_vec(n);
            for (coef, v) in x.iter().zip(ib) {
                crate::linalg::axpy(&mut h, coef, v);
            }
            out.push(sub_vec(wa, &h));
        }
        let c = Subspace::from_homogeneous(&self.parities, out.clone());
        if !self.is_totally_isotropic(&c) || c.dim() != m || c.intersect(ideal).dim() != 0 {
            return Err(Error::Verification(
                "corrected complement is not an isotropic complement".into(),
            ));
        }
        Ok(out)
    }
}

/// First basis triple where `B([X,Y],Z) ≠ B(X,[Y,Z])`.
pub fn invariance_witness(g: &LieSuperalgebra, form: &EvenForm) -> Option<(usize, usize, usize)> {
    let d = g.dim();
    let gram = form.gram();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut lhs = Scalar::zero();
                for (m, c) in g.bracket_basis(i, j) {
                    if !gram[(*m, k)].is_zero() {
                        lhs += c * &gram[(*m, k)];
                    }
                }
                let mut rhs = Scalar::zero();
                for (m, c) in g.bracket_basis(j, k) {
                    if !gram[(i, *m)].is_zero() {
                        rhs += c * &gram[(i, *m)];
                    }
                }
                if lhs != rhs {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

pub fn is_invariant(g: &LieSuperalgebra, form: &EvenForm) -> bool {
    invariance_witness(g, form).is_none()
}

/// A Lie superalgebra with an invariant scalar product (even, supersymmetric,
/// nondegenerate, invariant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticLieSuperalgebra {
    algebra: LieSuperalgebra,
    form: EvenForm,
}

impl QuadraticLieSuperalgebra {
    pub fn new(algebra: LieSuperalgebra, form: EvenForm) -> Result<Self> {
        if form.parities() != algebra.parities() {
            return Err(Error::BasisMismatch("form and algebra have different gradings".into()));
        }
        algebra.ensure_axioms()?;
        if !form.is_nondegenerate() {
            return Err(Error::DegenerateForm);
        }
        if let Some((i, j, k)) = invariance_witness(&algebra, &form) {
            return Err(Error::NotInvariant {
                witness: algebra.basis().labels(&[i, j, k]),
            });
        }
        Ok(Self { algebra, form })
    }

    pub fn algebra(&self) -> &LieSuperalgebra {
        &self.algebra
    }

    pub fn form(&self) -> &EvenForm {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn basis(&self) -> &GradedBasis {
        self.algebra.basis()
    }

    /// Orthogonal direct sum; labels of the two summands must be distinct.
    pub fn direct_sum(&self, other: &QuadraticLieSuperalgebra) -> Result<Self> {
        let (n, m) = (self.dim(), other.dim());
        let basis = self.basis().concat(other.basis())?;
        let t = n + m;
        let mut consts = zero_vec(t * t * t);
        for (alg, off) in [(&self.algebra, 0), (&other.algebra, n)] {
            let d = alg.dim();
            for i in 0..d {
                for j in 0..d {
                    for (k, c) in alg.bracket_basis(i, j) {
                        consts[((i + off) * t + j + off) * t + k + off] = c.clone();
                    }
                }
            }
        }
        let algebra = LieSuperalgebra::from_tensor(basis, consts)?;
        Self::new(algebra, self.form.direct_sum(&other.form))
    }
}

/// Whether `B([X,Y],Z) + (−1)^{xy} B(Y,[X,Z]) = 0` on every basis triple,
/// i.e. each `ad X` lies in `osp(g, B)`.
pub fn ad_in_osp(g: &LieSuperalgebra, form: &EvenForm) -> bool {
    let d = g.dim();
    for i in 0..d {
        for j in 0..d {
            let xy = g.bracket_basis_vec(i, j);
            for k in 0..d {
                let xz = g.bracket_basis_vec(i, k);
                let ej = crate::linalg::unit_vec(d, j);
                let ek = crate::linalg::unit_vec(d, k);
                let s = form.value(&xy, &ek) + signed(koszul(g.parity(i), g.parity(j)), form.value(&ej, &xz));
                if !s.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Diagonal-with-signs Gram for `[[0,1],[±1,0]]` blocks, handy in tests.
pub fn hyperbolic_gram(parity: Parity) -> Matrix {
    let mut m = Matrix::zeros(2, 2);
    m[(0, 1)] = Scalar::one();
    m[(1, 0)] = signed(parity.is_odd(), Scalar::one());
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::linalg::{int, unit_vec};

    const EE: [Parity; 2] = [Parity::Even, Parity::Even];
    const OO: [Parity; 2] = [Parity::Odd, Parity::Odd];

    #[test]
    fn nondegeneracy() {
        assert!(EvenForm::new(&EE, Matrix::identity(2)).unwrap().is_nondegenerate());
        assert!(!EvenForm::zero(&EE).is_nondegenerate());
    }

    #[test]
    fn rejects_odd_even_pairing_and_asymmetry() {
        let p = [Parity::Even, Parity::Odd];
        let m = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert!(matches!(EvenForm::new(&p, m), Err(Error::InvalidForm { .. })));
        // odd block must be antisymmetric
        assert!(EvenForm::new(&OO, Matrix::identity(2)).is_err());
        assert!(EvenForm::new(&OO, hyperbolic_gram(Parity::Odd)).is_ok());
    }

    #[test]
    fn heisenberg_identity_gram_not_invariant() {
        let h = gallery::heisenberg3();
        let f = EvenForm::new(h.parities(), Matrix::identity(3)).unwrap();
        assert!(!is_invariant(&h, &f));
        assert!(matches!(
            QuadraticLieSuperalgebra::new(h, f),
            Err(Error::NotInvariant { .. })
        ));
    }

    #[test]
    fn abelian_any_form_invariant() {
        let a = gallery::abelian(2, 0);
        let f = EvenForm::new(a.parities(), Matrix::from_i64(&[&[3, 1], &[1, 0]])).unwrap();
        assert!(is_invariant(&a, &f));
    }

    #[test]
    fn orthogonal_extremes() {
        let f = EvenForm::new(&EE, Matrix::identity(2)).unwrap();
        assert_eq!(f.orthogonal(&Subspace::zero(&EE)).dim(), 2);
        assert_eq!(f.orthogonal(&Subspace::full(&EE)).dim(), 0);
    }

    #[test]
    fn isotropy() {
        let z = EvenForm::zero(&EE);
        assert!(z.is_totally_isotropic(&Subspace::full(&EE)));
        let f = EvenForm::new(&EE, Matrix::identity(2)).unwrap();
        let line = Subspace::span(&EE, &[unit_vec(2, 0)]).unwrap();
        assert!(!f.is_totally_isotropic(&line));
        // odd vectors are always isotropic
        let o = EvenForm::new(&OO, hyperbolic_gram(Parity::Odd)).unwrap();
        let v = vec![int(3), int(-5)];
        assert!(o.value(&v, &v).is_zero());
    }

    #[test]
    fn hyperbolic_plane_correction() {
        // B(u,v) = 1, B(v,v) = 2, I = span{u}, W = span{v} → C = span{v − u}
        let f = EvenForm::new(&EE, Matrix::from_i64(&[&[0, 1], &[1, 2]])).unwrap();
        let i = Subspace::span(&EE, &[unit_vec(2, 0)]).unwrap();
        let c = f.isotropic_complement(&i).unwrap();
        assert_eq!(c, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn odd_plane_correction_is_trivial() {
        let f = EvenForm::new(&OO, hyperbolic_gram(Parity::Odd)).unwrap();
        let i = Subspace::span(&OO, &[unit_vec(2, 0)]).unwrap();
        assert_eq!(f.isotropic_complement(&i).unwrap(), vec![unit_vec(2, 1)]);
    }

    #[test]
    fn correction_rejects_bad_input() {
        let f = EvenForm::new(&EE, Matrix::identity(2)).unwrap();
        let i = Subspace::span(&EE, &[unit_vec(2, 0)]).unwrap();
        assert!(f.isotropic_complement(&i).is_err());
        let h = EvenForm::new(&EE, hyperbolic_gram(Parity::Even)).unwrap();
        assert!(h.isotropic_complement(&Subspace::zero(&EE)).is_err());
    }
}
