//! Maximal totally isotropic ideals and the decomposition of nilpotent (or
//! solvable, under the class condition) quadratic Lie superalgebras as
//! T*-extensions or codimension-one ideals of T*-extensions.
//!
//! The flag `0 = W₀ ⊂ W₁ ⊂ …` grows one vector at a time. At each step the
//! algebra acts on `V = W^⊥/W`; the vectors killed by the odd part and by
//! `[g,g]` form a subspace on which the even operators commute, and a common
//! rational eigenvector there, isotropic for the induced form, extends the
//! flag. Vectors of nonzero weight are automatically isotropic. In weight zero
//! an odd vector always works; an even one needs a rational zero of the
//! restricted quadric.
//!
//! The final dimension is `⌊n/2⌋`, which already makes `W` maximal among all
//! totally isotropic subspaces, stable or not.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forms::QuadraticLieSuperalgebra;
use crate::linalg::{
    axpy, char_poly, format_scalar, int, is_zero_vec, rational_roots, solve, unit_vec, zero_vec, Matrix, RowEchelon,
    Scalar,
};
use crate::parity::{GradedBasis, Parity};
use crate::subspace::{graded_kernel, SplitBasis, Subspace};
use crate::tstar::{self, morphism_defect, SectionExtension, TStarExtension};

/// Certificate attached to a failed search over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// A quadric with no rational zero found, as a Gram matrix and rendered.
    Quadric { gram: Matrix, rendered: String },
    /// A characteristic polynomial without rational roots (lowest degree first).
    CharPoly { coeffs: Vec<Scalar>, rendered: String },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Quadric { rendered, .. } => write!(f, "quadric {rendered} = 0 has no rational nonzero zero"),
            Obstruction::CharPoly { rendered, .. } => {
                write!(f, "characteristic polynomial {rendered} has no rational root")
            }
        }
    }
}

fn var_name(i: usize, n: usize) -> String {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    if n <= 4 {
        NAMES[i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

fn push_term(out: &mut String, coef: &Scalar, monomial: &str) {
    if coef.is_zero() {
        return;
    }
    let mag = coef.abs();
    let body = if mag.is_one() && !monomial.is_empty() {
        monomial.to_string()
    } else if monomial.is_empty() {
        format_scalar(&mag)
    } else {
        format!("{}*{monomial}", format_scalar(&mag))
    };
    if out.is_empty() {
        if coef.is_negative() {
            out.push('-');
        }
        out.push_str(&body);
    } else {
        out.push_str(if coef.is_negative() { " - " } else { " + " });
        out.push_str(&body);
    }
}

/// `Σ G_ii x_i² + Σ_{i<j} 2 G_ij x_i x_j`
pub fn render_quadric(gram: &Matrix) -> String {
    let n = gram.rows();
    let mut out = String::new();
    for i in 0..n {
        push_term(&mut out, &gram[(i, i)], &format!("{}^2", var_name(i, n)));
        for j in i + 1..n {
            push_term(
                &mut out,
                &(int(2) * &gram[(i, j)]),
                &format!("{}*{}", var_name(i, n), var_name(j, n)),
            );
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn render_poly(coeffs: &[Scalar]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        let mono = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        push_term(&mut out, c, &mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Clone, Debug)]
pub struct IsotropicFlagResult {
    pub w_max: Subspace,
    /// `W₁ ⊂ W₂ ⊂ …`, each one dimension larger.
    pub chain: Vec<Subspace>,
    pub achieved_dim: usize,
}

fn check_precondition(q: &QuadraticLieSuperalgebra) -> Result<()> {
    let g = q.algebra();
    if g.is_nilpotent() || (g.is_solvable() && g.class_condition()) {
        Ok(())
    } else if g.is_solvable() {
        Err(Error::Precondition("solvable but [g₁,g₁] ⊄ [g₀,g₀]".into()))
    } else {
        Err(Error::Precondition("algebra is not solvable".into()))
    }
}

/// Symmetric congruence diagonalisation: returns `P` (columns) and the
/// diagonal, with `Pᵀ G P = diag`.
fn diagonalize(gram: &Matrix) -> (Vec<Vec<Scalar>>, Vec<Scalar>) {
    let n = gram.rows();
    let mut g = gram.clone();
    let mut p: Vec<Vec<Scalar>> = (0..n).map(|i| unit_vec(n, i)).collect();
    let apply = |g: &mut Matrix, p: &mut Vec<Vec<Scalar>>, tgt: usize, src: usize, c: &Scalar| {
        // column/row op: v_tgt += c v_src
        let src_vec = p[src].clone();
        axpy(&mut p[tgt], c, &src_vec);
        for r in 0..n {
            let v = &g[(r, src)] * c;
            g[(r, tgt)] += v;
        }
        for k in 0..n {
            let v = &g[(src, k)] * c;
            g[(tgt, k)] += v;
        }
    };
    for i in 0..n {
        if g[(i, i)].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !g[(j, j)].is_zero()) {
                p.swap(i, j);
                for k in 0..n {
                    let (a, b) = (g[(i, k)].clone(), g[(j, k)].clone());
                    g[(i, k)] = b;
                    g[(j, k)] = a;
                }
                for k in 0..n {
                    let (a, b) = (g[(k, i)].clone(), g[(k, j)].clone());
                    g[(k, i)] = b;
                    g[(k, j)] = a;
                }
            } else if let Some(j) = (i + 1..n).find(|&j| !g[(i, j)].is_zero()) {
                apply(&mut g, &mut p, i, j, &Scalar::one());
            }
        }
        if g[(i, i)].is_zero() {
            continue;
        }
        for j in i + 1..n {
            if !g[(i, j)].is_zero() {
                let c = -(&g[(i, j)] / &g[(i, i)]);
                apply(&mut g, &mut p, j, i, &c);
            }
        }
    }
    let diag = (0..n).map(|i| g[(i, i)].clone()).collect();
    (p, diag)
}

fn rational_sqrt(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Scalar::new(n, d))
}

/// A nonzero rational `v` with `vᵀ G v = 0`, if one is found.
fn isotropic_vector(gram: &Matrix) -> Option<Vec<Scalar>> {
    let n = gram.rows();
    if let Some(i) = (0..n).find(|&i| gram[(i, i)].is_zero()) {
        return Some(unit_vec(n, i));
    }
    let (p, diag) = diagonalize(gram);
    let combine = |coeffs: &[Scalar]| {
        let mut v = zero_vec(n);
        for (c, col) in coeffs.iter().zip(&p) {
            axpy(&mut v, c, col);
        }
        v
    };
    if let Some(i) = diag.iter().position(Zero::is_zero) {
        return Some(p[i].clone());
    }
    for i in 0..n {
        for j in i + 1..n {
            if let Some(t) = rational_sqrt(&(-(&diag[j] / &diag[i]))) {
                let mut c = zero_vec(n);
                c[i] = t;
                c[j] = Scalar::one();
                return Some(combine(&c));
            }
        }
    }
    // small integer search on the first few diagonal coordinates
    let m = n.min(4);
    const R: i64 = 4;
    let total = (2 * R + 1).pow(m as u32);
    for code in 0..total {
        let mut c = zero_vec(n);
        let mut x = code;
        for slot in c.iter_mut().take(m) {
            *slot = int(x % (2 * R + 1) - R);
            x /= 2 * R + 1;
        }
        if is_zero_vec(&c) {
            continue;
        }
        let val = c.iter().zip(&diag).fold(Scalar::zero(), |acc, (a, d)| acc + a * a * d);
        if val.is_zero() {
            return Some(combine(&c));
        }
    }
    None
}

/// One extension step: a homogeneous vector of `W^⊥` outside `W` such that
/// `W + Kv` is a totally isotropic ideal.
fn next_vector(q: &QuadraticLieSuperalgebra, w: &Subspace) -> Result<Vec<Scalar>> {
    let g = q.algebra();
    let form = q.form();
    let n = q.dim();
    let parities = g.parities();
    let wp = form.orthogonal(w);
    // homogeneous complement R of W inside W^⊥
    let mut ech = RowEchelon::new(n);
    for b in w.basis() {
        ech.push(b.clone());
    }
    let mut r_vecs = Vec::new();
    let mut r_par = Vec::new();
    for (b, p) in wp.basis().iter().zip(wp.basis_parities()) {
        if ech.push(b.clone()) {
            r_vecs.push(b.clone());
            r_par.push(*p);
        }
    }
    let r = r_vecs.len();
    let mut rest: Vec<Vec<Scalar>> = w.basis().to_vec();
    rest.extend(wp.standard_complement().into_iter().map(|i| unit_vec(n, i)));
    let split = SplitBasis::new(r_vecs.clone(), rest)?;
    let op = |x: &[Scalar]| -> Matrix {
        let mut m = Matrix::zeros(r, r);
        for (a, ra) in r_vecs.iter().enumerate() {
            let (coords, _) = split.split(&g.bracket(x, ra).expect("sized"));
            for (b, c) in coords.into_iter().enumerate() {
                m[(b, a)] = c;
            }
        }
        m
    };
    // common kernel of odd basis operators and of [g,g]
    let mut rows = Vec::new();
    let odd_basis = (0..n).filter(|&i| parities[i].is_odd()).map(|i| unit_vec(n, i));
    for x in odd_basis.chain(g.derived_algebra().basis().iter().cloned()) {
        rows.extend(op(&x).row_vecs().into_iter().filter(|v| !is_zero_vec(v)));
    }
    let k_space = graded_kernel(&r_par, &rows);
    let even_ops: Vec<Matrix> = (0..n)
        .filter(|&i| !parities[i].is_odd())
        .map(|i| op(&unit_vec(n, i)))
        .collect();
    // simultaneous eigenspaces, per parity
    let mut spaces: Vec<(Vec<Vec<Scalar>>, Parity, bool)> = Vec::new();
    let mut last_poly = None;
    for par in [Parity::Odd, Parity::Even] {
        let part: Vec<Vec<Scalar>> = k_space.part(par).cloned().collect();
        if part.is_empty() {
            continue;
        }
        let mut current = vec![(part, true)];
        for m in &even_ops {
            let mut next = Vec::new();
            for (basis, zero_so_far) in current {
                // matrix of m on span(basis)
                let cols = Matrix::from_cols(&basis, r)?;
                let k = basis.len();
                let mut restricted = Matrix::zeros(k, k);
                for (a, v) in basis.iter().enumerate() {
                    let img = m.mul_vec(v)?;
                    let sol = solve(&cols, &img)?.particular.ok_or_else(|| {
                        Error::Verification("eigenspace is not invariant under the even action".into())
                    })?;
                    for (b, c) in sol.into_iter().enumerate() {
                        restricted[(b, a)] = c;
                    }
                }
                let poly = char_poly(&restricted);
                let roots = rational_roots(&poly);
                if roots.is_empty() {
                    last_poly = Some(poly);
                }
                for lambda in roots {
                    let mut shifted = restricted.clone();
                    for i in 0..k {
                        shifted[(i, i)] -= &lambda;
                    }
                    let eig: Vec<Vec<Scalar>> = crate::linalg::kernel(&shifted)
                        .into_iter()
                        .map(|c| {
                            let mut v = zero_vec(r);
                            for (coef, b) in c.iter().zip(&basis) {
                                axpy(&mut v, coef, b);
                            }
                            v
                        })
                        .collect();
                    next.push((eig, zero_so_far && lambda.is_zero()));
                }
            }
            current = next;
        }
        spaces.extend(current.into_iter().map(|(b, z)| (b, par, z)));
    }
    let lift = |v: &[Scalar]| {
        let mut out = zero_vec(n);
        for (c, rv) in v.iter().zip(&r_vecs) {
            axpy(&mut out, c, rv);
        }
        out
    };
    // odd vectors of weight zero, then any vector of nonzero weight
    if let Some((b, _, _)) = spaces.iter().find(|(_, p, z)| p.is_odd() && *z) {
        return Ok(lift(&b[0]));
    }
    if let Some((b, _, _)) = spaces.iter().find(|(_, _, z)| !*z) {
        return Ok(lift(&b[0]));
    }
    let u0: Vec<Vec<Scalar>> = spaces
        .iter()
        .filter(|(_, p, z)| !p.is_odd() && *z)
        .flat_map(|(b, _, _)| b.iter().cloned())
        .collect();
    if u0.is_empty() {
        let coeffs = last_poly.unwrap_or_default();
        let rendered = render_poly(&coeffs);
        return Err(Error::RationalPointNotFound(Obstruction::CharPoly { coeffs, rendered }));
    }
    let lifted: Vec<Vec<Scalar>> = u0.iter().map(|v| lift(v)).collect();
    let gram = form.restrict(&lifted);
    match isotropic_vector(&gram) {
        Some(c) => {
            let mut v = zero_vec(n);
            for (coef, b) in c.iter().zip(&lifted) {
                axpy(&mut v, coef, b);
            }
            Ok(v)
        }
        None => Err(Error::RationalPointNotFound(Obstruction::Quadric {
            rendered: render_quadric(&gram),
            gram,
        })),
    }
}

/// Flag of graded totally isotropic ideals up to dimension `⌊n/2⌋`, with the
/// closing properties of the last member verified.
pub fn max_isotropic_ideal(q: &QuadraticLieSuperalgebra) -> Result<IsotropicFlagResult> {
    check_precondition(q)?;
    let g = q.algebra();
    let form = q.form();
    let n = q.dim();
    let parities = g.parities();
    let mut w = Subspace::zero(parities);
    let mut chain = Vec::new();
    while w.dim() < n / 2 {
        let v = next_vector(q, &w)?;
        let mut vs = w.basis().to_vec();
        vs.push(v);
        let next = Subspace::from_homogeneous(parities, vs);
        if next.dim() != w.dim() + 1 || !form.is_totally_isotropic(&next) || !g.is_ideal(&next) {
            return Err(Error::Verification(format!(
                "flag step {} is not a totally isotropic ideal",
                next.dim()
            )));
        }
        w = next;
        chain.push(w.clone());
    }
    let wp = form.orthogonal(&w);
    let tail_ok = if n.is_multiple_of(2) {
        wp.same_as(&w)
    } else {
        wp.dim() == w.dim() + 1 && wp.contains_subspace(&w)
    };
    if !tail_ok || !w.contains_subspace(&g.bracket_span(&g.whole(), &wp)) {
        return Err(Error::Verification(
            "maximal isotropic ideal fails the closing properties".into(),
        ));
    }
    Ok(IsotropicFlagResult {
        achieved_dim: w.dim(),
        w_max: w,
        chain,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityCase {
    EvenDim,
    OddDim,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub flag: IsotropicFlagResult,
    pub ideal: Subspace,
    pub parity_case: ParityCase,
    pub quotient: crate::algebra::Quotient,
    pub extension: TStarExtension,
    /// Columns: images of the basis of the input.
    pub embedding: Matrix,
}

/// Even dimension: an isometric isomorphism onto `T*_ω(g/I)`. Odd dimension:
/// an isometric embedding onto a nondegenerate graded ideal of codimension 1.
pub fn decompose(q: &QuadraticLieSuperalgebra) -> Result<Decomposition> {
    let flag = max_isotropic_ideal(q)?;
    let ideal = flag.w_max.clone();
    let n = q.dim();
    let (parity_case, se): (ParityCase, SectionExtension) = if n.is_multiple_of(2) {
        (ParityCase::EvenDim, tstar::recognize(q, &ideal)?)
    } else {
        let idx = ideal.standard_complement();
        let labels = GradedBasis::new(
            idx.iter()
                .map(|&i| (q.basis().name(i).to_string(), q.algebra().parity(i)))
                .collect(),
        )?;
        let section = idx.iter().map(|&i| unit_vec(n, i)).collect();
        let se = tstar::extension_via_section(q, &ideal, labels, section)?;
        verify_odd_embedding(q, &se)?;
        (ParityCase::OddDim, se)
    };
    Ok(Decomposition {
        flag,
        ideal,
        parity_case,
        quotient: se.quotient,
        extension: se.extension,
        embedding: se.map,
    })
}

fn verify_odd_embedding(q: &QuadraticLieSuperalgebra, se: &SectionExtension) -> Result<()> {
    let total = &se.extension.total;
    if let Some(defect) = morphism_defect(q, total, &se.map, false) {
        return Err(Error::Verification(format!("embedding: {defect}")));
    }
    let images: Vec<Vec<Scalar>> = (0..q.dim()).map(|j| se.map.col(j)).collect();
    let image = Subspace::span(total.algebra().parities(), &images)
        .map_err(|_| Error::Verification("embedding image is not graded".into()))?;
    if image.dim() + 1 != total.dim() {
        return Err(Error::Verification("embedding image is not of codimension 1".into()));
    }
    if !total.algebra().is_ideal(&image) {
        return Err(Error::Verification("embedding image is not an ideal".into()));
    }
    if form_rank(total, image.basis()) != image.dim() {
        return Err(Error::Verification("form is degenerate on the embedding image".into()));
    }
    Ok(())
}

fn form_rank(q: &QuadraticLieSuperalgebra, vs: &[Vec<Scalar>]) -> usize {
    q.form().restrict(vs).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::linalg::Matrix;

    #[test]
    fn hyperbolic_plane_flag() {
        let q = gallery::hyperbolic_plane(Parity::Even);
        let r = max_isotropic_ideal(&q).unwrap();
        assert_eq!(r.achieved_dim, 1);
        assert!(r.w_max.contains(&[int(1), int(0)]));
    }

    #[test]
    fn euclidean_plane_has_no_rational_line() {
        match max_isotropic_ideal(&gallery::euclidean_plane()) {
            Err(Error::RationalPointNotFound(Obstruction::Quadric { rendered, .. })) => {
                assert_eq!(rendered, "x^2 + y^2")
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn quadric_helpers() {
        let g = Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -2]]);
        let v = isotropic_vector(&g).unwrap();
        let val = crate::linalg::dot(&v, &g.mul_vec(&v).unwrap());
        assert!(val.is_zero() && !is_zero_vec(&v));
        assert_eq!(render_quadric(&Matrix::from_i64(&[&[0, 1], &[1, -3]])), "2*x*y - 3*y^2");
        assert_eq!(render_poly(&[int(1), int(0), int(1)]), "t^2 + 1");
        let (p, d) = diagonalize(&Matrix::from_i64(&[&[0, 1], &[1, 0]]));
        assert_eq!(d.iter().filter(|x| x.is_zero()).count(), 0);
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn line_decomposes_in_odd_case() {
        let d = decompose(&gallery::line()).unwrap();
        assert_eq!(d.parity_case, ParityCase::OddDim);
        assert_eq!(d.embedding.col(0), vec![int(1), crate::linalg::frac(1, 2)]);
    }

    #[test]
    fn tstar_heisenberg_even_case() {
        let t = gallery::tstar_h3();
        let d = decompose(&t.total).unwrap();
        assert_eq!(d.parity_case, ParityCase::EvenDim);
        assert_eq!(d.flag.achieved_dim, 3);
    }

    #[test]
    fn simple_algebra_rejected() {
        use crate::algebra::LieSuperalgebra;
        use crate::forms::EvenForm;
        let basis = GradedBasis::new(["e", "f", "h"].iter().map(|s| (s.to_string(), Parity::Even)).collect()).unwrap();
        let v = |a: i64, b: i64, c: i64| vec![int(a), int(b), int(c)];
        let sl2 = LieSuperalgebra::from_brackets(basis, &[(2, 0, v(2, 0, 0)), (2, 1, v(0, -2, 0)), (0, 1, v(0, 0, 1))])
            .unwrap();
        let form = EvenForm::new(sl2.parities(), Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 2]])).unwrap();
        let q = QuadraticLieSuperalgebra::new(sl2, form).unwrap();
        assert!(matches!(max_isotropic_ideal(&q), Err(Error::Precondition(_))));
    }
}
