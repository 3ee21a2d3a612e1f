//! T*-extensions `T*_ω g = g ⊕ g*`, the coboundary isometries `S_φ`, and
//! recognition of quadratic Lie superalgebras as T*-extensions.
//!
//! Basis of `T*_ω g`: the basis of `g`, then the dual basis (labels with a `*`
//! suffix, `e_k*` of the parity of `e_k`). The bracket is
//!
//! `[X+F, Y+H] = [X,Y] + ω(X,Y) + π(X)H − (−1)^{xy} π(Y)F`
//!
//! and the form `B(X+F, Y+H) = F(Y) + (−1)^{xy} H(X)`.

use num_traits::One;

use crate::algebra::{DualVector, LieSuperalgebra, Quotient};
use crate::cochains::{cocycle2_witness, delta_scalar2, hat, supercyclic_witness, unhat, Cochain2Dual, ScalarCochain2};
use crate::error::{Error, Result};
use crate::forms::{invariance_witness, EvenForm, QuadraticLieSuperalgebra};
use crate::linalg::{frac, is_zero_vec, unit_vec, zero_vec, Matrix, Scalar};
use crate::parity::{koszul, signed, vector_parity, GradedBasis, Parity};
use crate::subspace::Subspace;

#[derive(Clone, Debug)]
pub struct TStarExtension {
    pub base: LieSuperalgebra,
    pub omega: Cochain2Dual,
    pub total: QuadraticLieSuperalgebra,
}

impl TStarExtension {
    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    /// `X ↦ X + 0`
    pub fn embed_base(&self, x: &[Scalar]) -> Vec<Scalar> {
        let mut v = x.to_vec();
        v.extend(zero_vec(self.base_dim()));
        v
    }

    /// `F ↦ 0 + F`
    pub fn embed_dual(&self, f: &[Scalar]) -> Vec<Scalar> {
        let mut v = zero_vec(self.base_dim());
        v.extend_from_slice(f);
        v
    }

    /// The copy of `g*`.
    pub fn dual_ideal(&self) -> Subspace {
        let d = self.base_dim();
        let vs = (0..d).map(|k| unit_vec(2 * d, d + k)).collect();
        Subspace::from_homogeneous(self.total.algebra().parities(), vs)
    }
}

/// The canonical pairing on `g ⊕ g*`.
pub fn canonical_form(g: &LieSuperalgebra) -> EvenForm {
    let d = g.dim();
    let parities: Vec<Parity> = g.parities().iter().chain(g.parities()).copied().collect();
    let mut gram = Matrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        gram[(i, d + i)] = signed(g.parity(i).is_odd(), Scalar::one());
        gram[(d + i, i)] = Scalar::one();
    }
    EvenForm::new(&parities, gram).expect("canonical pairing is even and supersymmetric")
}

/// Structure constants of `g ⊕ g*` with the T*-bracket, without any check.
pub fn raw_bracket(g: &LieSuperalgebra, omega: &Cochain2Dual) -> Result<LieSuperalgebra> {
    if omega.parities() != g.parities() {
        return Err(Error::BasisMismatch(
            "cochain and algebra have different gradings".into(),
        ));
    }
    let d = g.dim();
    let n = 2 * d;
    let mut c = zero_vec(n * n * n);
    for i in 0..d {
        for j in 0..d {
            for (k, v) in g.bracket_basis(i, j) {
                c[(i * n + j) * n + k] = v.clone();
            }
            for (l, v) in omega.value(i, j).iter().enumerate() {
                c[(i * n + j) * n + d + l] = v.clone();
            }
        }
        for m in 0..d {
            let neg = !koszul(g.parity(i), g.parity(m));
            for (l, v) in g.coadjoint_basis(i, m) {
                c[(i * n + d + m) * n + d + l] = v.clone();
                c[((d + m) * n + i) * n + d + l] = signed(neg, v);
            }
        }
    }
    LieSuperalgebra::from_tensor(g.basis().with_duals()?, c)
}

/// `T*_ω g`. Rejects ω that is not a cocycle or not supercyclic, with a basis triple.
pub fn build(g: &LieSuperalgebra, omega: &Cochain2Dual) -> Result<TStarExtension> {
    if let Some((i, j, k)) = cocycle2_witness(g, omega)? {
        return Err(Error::NotCocycle {
            witness: g.basis().labels(&[i, j, k]),
        });
    }
    if let Some((i, j, k)) = supercyclic_witness(omega) {
        return Err(Error::NotSupercyclic {
            witness: g.basis().labels(&[i, j, k]),
        });
    }
    let algebra = raw_bracket(g, omega)?;
    let total = QuadraticLieSuperalgebra::new(algebra, canonical_form(g))
        .map_err(|e| Error::Verification(format!("T*-extension of a supercyclic cocycle: {e}")))?;
    Ok(TStarExtension {
        base: g.clone(),
        omega: omega.clone(),
        total,
    })
}

/// First triple of the bracket built from `ω` where the super Jacobi identity fails.
pub fn jacobi_witness(g: &LieSuperalgebra, omega: &Cochain2Dual) -> Result<Option<Vec<String>>> {
    let a = raw_bracket(g, omega)?;
    let report = a.check_axioms();
    Ok(report
        .first(crate::algebra::AxiomKind::Jacobi)
        .map(|v| a.basis().labels(&v.indices)))
}

/// For a cocycle that is not supercyclic: a triple of `g ⊕ g*` where the
/// canonical form is not invariant under the T*-bracket.
pub fn negative_test_invariance(g: &LieSuperalgebra, omega: &Cochain2Dual) -> Result<Vec<String>> {
    if let Some((i, j, k)) = cocycle2_witness(g, omega)? {
        return Err(Error::NotCocycle {
            witness: g.basis().labels(&[i, j, k]),
        });
    }
    if supercyclic_witness(omega).is_none() {
        return Err(Error::Precondition("cochain is supercyclic".into()));
    }
    let a = raw_bracket(g, omega)?;
    match invariance_witness(&a, &canonical_form(g)) {
        Some((i, j, k)) => Ok(a.basis().labels(&[i, j, k])),
        None => Err(Error::Verification(
            "a non-supercyclic cocycle gave an invariant form".into(),
        )),
    }
}

/// For a half-dimensional totally isotropic graded subspace: whether it is an
/// ideal, after checking that this agrees with it being abelian.
pub fn half_dim_isotropic_is_ideal(q: &QuadraticLieSuperalgebra, ideal: &Subspace) -> Result<bool> {
    let n = q.dim();
    if !n.is_multiple_of(2) {
        return Err(Error::Precondition("odd dimension".into()));
    }
    if ideal.ambient_parities() != q.algebra().parities() || ideal.dim() * 2 != n {
        return Err(Error::Precondition("subspace is not half-dimensional".into()));
    }
    if !q.form().is_totally_isotropic(ideal) {
        return Err(Error::Precondition("subspace is not totally isotropic".into()));
    }
    let is_ideal = q.algebra().is_ideal(ideal);
    let abelian = q.algebra().bracket_span(ideal, ideal).is_zero();
    if is_ideal != abelian {
        return Err(Error::Verification(format!(
            "ideal test ({is_ideal}) and abelian test ({abelian}) disagree"
        )));
    }
    Ok(is_ideal)
}

/// Why a linear map fails to be a morphism of quadratic Lie superalgebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismDefect {
    NotEven { source: String },
    Bracket { pair: (String, String) },
    Form { pair: (String, String) },
    NotInjective,
    NotSurjective,
}

impl std::fmt::Display for MorphismDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MorphismDefect::NotEven { source } => write!(f, "image of {source} is not homogeneous of its parity"),
            MorphismDefect::Bracket { pair } => write!(f, "bracket of ({}, {}) not preserved", pair.0, pair.1),
            MorphismDefect::Form { pair } => write!(f, "form on ({}, {}) not preserved", pair.0, pair.1),
            MorphismDefect::NotInjective => f.write_str("map is not injective"),
            MorphismDefect::NotSurjective => f.write_str("map is not surjective"),
        }
    }
}

/// Checks, on all basis pairs, that the map whose columns are the images of the
/// basis of `src` is even, injective, bracket preserving and isometric
/// (and surjective when `onto`).
pub fn morphism_defect(
    src: &QuadraticLieSuperalgebra,
    dst: &QuadraticLieSuperalgebra,
    map: &Matrix,
    onto: bool,
) -> Option<MorphismDefect> {
    let n = src.dim();
    let images: Vec<Vec<Scalar>> = (0..n).map(|j| map.col(j)).collect();
    let name = |i: usize| src.basis().name(i).to_string();
    for (j, v) in images.iter().enumerate() {
        match vector_parity(dst.algebra().parities(), v) {
            Ok(Some(p)) if p == src.algebra().parity(j) => {}
            Ok(None) => {}
            _ => return Some(MorphismDefect::NotEven { source: name(j) }),
        }
    }
    let r = map.rank();
    if r != n {
        return Some(MorphismDefect::NotInjective);
    }
    if onto && r != dst.dim() {
        return Some(MorphismDefect::NotSurjective);
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = map.mul_vec(&src.algebra().bracket_basis_vec(i, j)).expect("sized");
            let rhs = dst.algebra().bracket(&images[i], &images[j]).expect("sized");
            if lhs != rhs {
                return Some(MorphismDefect::Bracket {
                    pair: (name(i), name(j)),
                });
            }
            if dst.form().value(&images[i], &images[j]) != src.form().gram()[(i, j)] {
                return Some(MorphismDefect::Form {
                    pair: (name(i), name(j)),
                });
            }
        }
    }
    None
}

/// Result of reading a quadratic algebra through a section of `A → A/I`.
#[derive(Clone, Debug)]
pub struct SectionExtension {
    pub quotient: Quotient,
    pub extension: TStarExtension,
    /// Columns: images of the basis of the input algebra.
    pub map: Matrix,
}

/// Given a graded ideal `I ⊆ I^⊥` and homogeneous section vectors `s_b`
/// spanning a complement of `I`, builds `T*_ω(A/I)` and
/// `ψ(x) = p(x) + F_x` with `F_x(b) = B(x, s_b) − ½ B(s(p x), s_b)` and
/// `ω(a,b) = F_{[s_a,s_b]} − π(a)F_{s_b} + (−1)^{ab} π(b)F_{s_a}`.
/// The correction term vanishes when the section spans an isotropic subspace.
pub fn extension_via_section(
    q: &QuadraticLieSuperalgebra,
    ideal: &Subspace,
    labels: GradedBasis,
    section: Vec<Vec<Scalar>>,
) -> Result<SectionExtension> {
    let quotient = q.algebra().quotient_along(ideal, labels, section)?;
    let qa = &quotient.algebra;
    let k = qa.dim();
    let n = q.dim();
    let half = frac(1, 2);
    let s = &quotient.section;
    let form = q.form();
    let f_of = |x: &[Scalar]| -> Vec<Scalar> {
        let sp = quotient.lift(&quotient.project(x));
        (0..k)
            .map(|b| form.value(x, &s[b]) - &half * form.value(&sp, &s[b]))
            .collect()
    };
    let f_s: Vec<DualVector> = (0..k)
        .map(|b| DualVector::new(qa.parities(), f_of(&s[b]), qa.parity(b)))
        .collect::<Result<_>>()
        .map_err(|e| Error::Verification(format!("section pairing is not homogeneous: {e}")))?;
    let mut w = zero_vec(k * k * k);
    for a in 0..k {
        for b in 0..k {
            let br = q.algebra().bracket(&s[a], &s[b])?;
            let mut val = f_of(&br);
            let t1 = qa.coadjoint(&unit_vec(k, a), &f_s[b])?;
            let t2 = qa.coadjoint(&unit_vec(k, b), &f_s[a])?;
            let neg = koszul(qa.parity(a), qa.parity(b));
            for c in 0..k {
                val[c] -= &t1.coeffs[c];
                val[c] += signed(neg, t2.coeffs[c].clone());
            }
            w[(a * k + b) * k..(a * k + b + 1) * k].clone_from_slice(&val);
        }
    }
    let omega = Cochain2Dual::new(qa.parities(), w)
        .map_err(|e| Error::Verification(format!("recovered cochain is invalid: {e}")))?;
    let extension = build(qa, &omega).map_err(|e| Error::Verification(format!("recovered cochain: {e}")))?;
    let mut map = Matrix::zeros(2 * k, n);
    for j in 0..n {
        let x = unit_vec(n, j);
        let px = quotient.project(&x);
        for (r, v) in px.into_iter().chain(f_of(&x)).enumerate() {
            map[(r, j)] = v;
        }
    }
    Ok(SectionExtension {
        quotient,
        extension,
        map,
    })
}

fn labels_of(q: &QuadraticLieSuperalgebra, idx: &[usize]) -> Result<GradedBasis> {
    GradedBasis::new(
        idx.iter()
            .map(|&i| (q.basis().name(i).to_string(), q.algebra().parity(i)))
            .collect(),
    )
}

fn check_recognition_input(q: &QuadraticLieSuperalgebra, ideal: &Subspace) -> Result<()> {
    let n = q.dim();
    if !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("dimension {n} is odd")));
    }
    if ideal.ambient_parities() != q.algebra().parities() {
        return Err(Error::BasisMismatch("subspace lives in a different space".into()));
    }
    if ideal.dim() * 2 != n {
        return Err(Error::Precondition(format!(
            "ideal has dimension {}, expected {}",
            ideal.dim(),
            n / 2
        )));
    }
    if !q.form().is_totally_isotropic(ideal) {
        return Err(Error::Precondition("subspace is not totally isotropic".into()));
    }
    if let Some((i, a)) = q.algebra().ideal_witness(ideal) {
        return Err(Error::NotAnIdeal {
            witness: (q.basis().name(i).to_string(), format!("ideal basis vector #{a}")),
        });
    }
    Ok(())
}

/// `A ≅ T*_ω(A/I)` along a half-dimensional totally isotropic graded ideal,
/// using the isotropic complement built from the standard-basis complement.
/// The returned map is verified to be an isometric isomorphism.
pub fn recognize(q: &QuadraticLieSuperalgebra, ideal: &Subspace) -> Result<SectionExtension> {
    check_recognition_input(q, ideal)?;
    let idx = ideal.standard_complement();
    let n = q.dim();
    let w: Vec<Vec<Scalar>> = idx.iter().map(|&i| unit_vec(n, i)).collect();
    recognize_with_complement(q, ideal, labels_of(q, &idx)?, &w)
}

/// As [`recognize`], starting from any homogeneous complement `w` of the ideal
/// (corrected to an isotropic one); `labels` names the quotient basis.
pub fn recognize_with_complement(
    q: &QuadraticLieSuperalgebra,
    ideal: &Subspace,
    labels: GradedBasis,
    w: &[Vec<Scalar>],
) -> Result<SectionExtension> {
    check_recognition_input(q, ideal)?;
    let section = q.form().isotropic_complement_from(ideal, w)?;
    let out = extension_via_section(q, ideal, labels, section)?;
    if let Some(defect) = morphism_defect(q, &out.extension.total, &out.map, true) {
        return Err(Error::Verification(format!("recognition map: {defect}")));
    }
    Ok(out)
}

/// Matrix of `S_φ(X+F) = X + φ(X,·) + F` on `g ⊕ g*`.
pub fn s_phi_matrix(phi: &ScalarCochain2) -> Matrix {
    let d = phi.dim();
    let mut m = Matrix::identity(2 * d);
    for i in 0..d {
        for j in 0..d {
            m[(d + j, i)] = phi.get(i, j).clone();
        }
    }
    m
}

#[derive(Clone, Debug)]
pub struct SPhiIsometry {
    pub from: TStarExtension,
    pub to: TStarExtension,
    pub map: Matrix,
}

/// Builds `T*_{ω1}`, `T*_{ω2}` with `ω2 = unhat(hat(ω1) − δφ)` and verifies
/// `S_φ` between them.
pub fn s_phi_isometry(g: &LieSuperalgebra, omega1: &Cochain2Dual, phi: &ScalarCochain2) -> Result<SPhiIsometry> {
    let from = build(g, omega1)?;
    let f2 = hat(g, omega1)?.sub(&delta_scalar2(g, phi)?);
    let omega2 = unhat(g, &f2)?;
    let to = build(g, &omega2)?;
    let map = s_phi_matrix(phi);
    if let Some(defect) = morphism_defect(&from.total, &to.total, &map, true) {
        return Err(Error::Verification(format!("S_φ: {defect}")));
    }
    Ok(SPhiIsometry { from, to, map })
}

/// Checks `S_φ` against an arbitrary target extension, reporting the first defect.
pub fn s_phi_defect(from: &TStarExtension, to: &TStarExtension, phi: &ScalarCochain2) -> Option<MorphismDefect> {
    morphism_defect(&from.total, &to.total, &s_phi_matrix(phi), true)
}

/// `z(g) ⊕ {f : f([g,g]) = 0}` inside `g ⊕ g*`.
pub fn expected_center_t0(g: &LieSuperalgebra) -> Subspace {
    let d = g.dim();
    let mut vs: Vec<Vec<Scalar>> = g
        .center()
        .basis()
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.extend(zero_vec(d));
            w
        })
        .collect();
    let rows: Vec<Vec<Scalar>> = g.derived_algebra().basis().to_vec();
    let ann = crate::subspace::graded_kernel(g.parities(), &rows);
    for f in ann.basis() {
        let mut w = zero_vec(d);
        w.extend_from_slice(f);
        vs.push(w);
    }
    let parities: Vec<Parity> = g.parities().iter().chain(g.parities()).copied().collect();
    Subspace::from_homogeneous(&parities, vs)
}

/// Whether a subspace is abelian as a subalgebra.
pub fn is_abelian_subspace(g: &LieSuperalgebra, s: &Subspace) -> bool {
    let b = s.basis();
    b.iter()
        .all(|x| b.iter().all(|y| is_zero_vec(&g.bracket(x, y).expect("sized"))))
}
