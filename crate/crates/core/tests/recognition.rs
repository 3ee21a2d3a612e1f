use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use superquad::cochains::{self, ScalarCochain3};
use superquad::linalg::{int, unit_vec, Matrix, Scalar};
use superquad::structure::{self, ParityCase};
use superquad::{gallery, random, tstar, LieSuperalgebra, Parity, Subspace};

fn families() -> Vec<LieSuperalgebra> {
    vec![
        gallery::abelian(2, 1),
        gallery::heisenberg3(),
        gallery::solvable2d(),
        gallery::gl11(),
        gallery::gn(2).unwrap(),
    ]
}

/// Any complement `e_i + (dual part)` of `g*` reads the extension back as a
/// cohomologous cochain, related by an explicit `S_φ`.
#[test]
fn shifted_complements_give_cohomologous_cochains() {
    let mut rng = StdRng::seed_from_u64(7);
    for g in families() {
        let d = g.dim();
        let p = g.parities().to_vec();
        let sz2 = cochains::z2_dual_basis(&g, true);
        for _ in 0..8 {
            let w = random::in_span2(&mut rng, &p, &sz2);
            let ext = tstar::build(&g, &w).unwrap();
            let shifted: Vec<Vec<Scalar>> = (0..d)
                .map(|i| {
                    let mut v = unit_vec(2 * d, i);
                    for k in 0..d {
                        if p[k] == p[i] && rng.gen_bool(0.5) {
                            v[d + k] = random::scalar(&mut rng);
                        }
                    }
                    v
                })
                .collect();
            let r =
                tstar::recognize_with_complement(&ext.total, &ext.dual_ideal(), g.basis().clone(), &shifted).unwrap();
            assert_eq!(r.quotient.algebra, g);
            let f1 = cochains::hat(&g, &w).unwrap();
            let f2 = cochains::hat(&g, &r.extension.omega).unwrap();
            let phi = cochains::cohomologous(&g, &f1, &f2).unwrap().expect("cohomologous");
            let s = tstar::s_phi_isometry(&g, &w, &phi).unwrap();
            assert_eq!(s.to.omega, r.extension.omega);
        }
    }
}

#[test]
fn heisenberg_cohomology() {
    let g = gallery::heisenberg3();
    assert_eq!(cochains::z3_basis(&g).len(), 1);
    assert_eq!(cochains::b3_basis(&g).len(), 0);
    assert_eq!(cochains::h3_dim(&g), 1);
    assert_eq!(cochains::z2_dual_basis(&g, true).len(), 1);
    let f = cochains::hat(&g, &gallery::heisenberg_volume()).unwrap();
    assert_eq!(f.get(0, 1, 2), &int(1));
    let zero = ScalarCochain3::zero(g.parities());
    assert!(cochains::cohomologous(&g, &f, &zero).unwrap().is_none());
}

#[test]
fn abelian_cohomology_is_all_of_lambda3() {
    // abelian(1|2), even x, odd y y': the even super-alternating 3-forms are
    // x y y, x y y', x y' y'
    let g = gallery::abelian(1, 2);
    assert_eq!(cochains::z3_basis(&g).len(), 3);
    assert_eq!(cochains::b3_basis(&g).len(), 0);
    let g = gallery::abelian(3, 0);
    assert_eq!(cochains::h3_dim(&g), 1);
}

#[test]
fn center_is_orthogonal_of_derived_algebra() {
    let mut rng = StdRng::seed_from_u64(8);
    for g in families() {
        let sz2 = cochains::z2_dual_basis(&g, true);
        let w = random::in_span2(&mut rng, g.parities(), &sz2);
        let q = tstar::build(&g, &w).unwrap().total;
        let perp = q.form().orthogonal(&q.algebra().derived_algebra());
        assert!(perp.same_as(&q.algebra().center()));
        let zero = tstar::build(&g, &cochains::Cochain2Dual::zero(g.parities())).unwrap();
        assert!(tstar::expected_center_t0(&g).same_as(&zero.total.algebra().center()));
    }
}

#[test]
fn decompose_odd_instance() {
    let q = gallery::odd_instance();
    let d = structure::decompose(&q).unwrap();
    assert_eq!(d.parity_case, ParityCase::OddDim);
    assert_eq!(d.flag.achieved_dim, 3);
    assert_eq!(d.extension.total.dim(), 8);
    assert_eq!(d.embedding.rows(), 8);
    assert_eq!(d.embedding.cols(), 7);
}

#[test]
fn odd_hyperbolic_plane_is_tstar_of_a_line() {
    let q = gallery::hyperbolic_plane(Parity::Odd);
    let u = Subspace::span(q.algebra().parities(), &[unit_vec(2, 0)]).unwrap();
    let r = tstar::recognize(&q, &u).unwrap();
    assert_eq!(r.quotient.algebra.dim(), 1);
    assert_eq!(r.quotient.algebra.parity(0), Parity::Odd);
    assert_eq!(r.map.rank(), 2);
    assert_ne!(r.map, Matrix::zeros(2, 2));
}
