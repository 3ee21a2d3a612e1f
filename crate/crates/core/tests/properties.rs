use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use superquad::algebra::DualVector;
use superquad::cochains::{self, Cochain2Dual, ScalarCochain2, ScalarCochain3};
use superquad::dsl::{self, AlgebraDocument};
use superquad::linalg::{self, Matrix, Scalar};
use superquad::parity::koszul;
use superquad::{gallery, random, tstar, GradedBasis, LieSuperalgebra};

fn algebras() -> Vec<LieSuperalgebra> {
    vec![
        gallery::abelian(2, 1),
        gallery::heisenberg3(),
        gallery::solvable2d(),
        gallery::gl11(),
        gallery::gn(2).unwrap(),
    ]
}

fn rat() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| Scalar::new(p.into(), q.into()))
}

fn pick(k: usize) -> LieSuperalgebra {
    let all = algebras();
    all[k % all.len()].clone()
}

/// Same algebra in the basis given by the columns of an even invertible `p`.
fn change_basis(g: &LieSuperalgebra, p: &Matrix) -> LieSuperalgebra {
    let d = g.dim();
    let inv = p.inverse().unwrap();
    let mut c = vec![Scalar::zero(); d * d * d];
    for i in 0..d {
        for j in 0..d {
            let v = inv.mul_vec(&g.bracket(&p.col(i), &p.col(j)).unwrap()).unwrap();
            for (k, x) in v.into_iter().enumerate() {
                c[(i * d + j) * d + k] = x;
            }
        }
    }
    let names = (0..d).map(|i| (format!("f{i}"), g.parity(i))).collect();
    LieSuperalgebra::from_tensor(GradedBasis::new(names).unwrap(), c).unwrap()
}

fn pull3(d: usize, p: &Matrix, t: impl Fn(usize, usize, usize) -> Scalar) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); d * d * d];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut s = Scalar::zero();
                for a in 0..d {
                    for b in 0..d {
                        for c in 0..d {
                            let coef = &p[(a, i)] * &p[(b, j)] * &p[(c, k)];
                            if !coef.is_zero() {
                                s += coef * t(a, b, c);
                            }
                        }
                    }
                }
                out[(i * d + j) * d + k] = s;
            }
        }
    }
    out
}

fn pull2(d: usize, p: &Matrix, phi: &ScalarCochain2) -> ScalarCochain2 {
    let mut out = vec![Scalar::zero(); d * d];
    for i in 0..d {
        for j in 0..d {
            out[i * d + j] = phi.eval(&p.col(i), &p.col(j));
        }
    }
    ScalarCochain2::new(phi.parities(), out).unwrap()
}

proptest! {
    #[test]
    fn scalar_field_axioms(a in rat(), b in rat(), c in rat()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip(), Scalar::one());
        }
        prop_assert_eq!(linalg::parse_scalar(&linalg::format_scalar(&a)), Some(a));
    }

    #[test]
    fn rank_nullity(rows in 1usize..6, cols in 1usize..6, entries in prop::collection::vec(rat(), 36)) {
        let data: Vec<Vec<Scalar>> = (0..rows).map(|r| entries[r * 6..r * 6 + cols].to_vec()).collect();
        let m = Matrix::from_rows(&data, cols).unwrap();
        let ker = linalg::kernel(&m);
        prop_assert_eq!(m.rank() + ker.len(), cols);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        for v in &ker {
            prop_assert!(linalg::is_zero_vec(&m.mul_vec(v).unwrap()));
        }
    }

    #[test]
    fn coadjoint_is_a_representation(k in 0usize..5) {
        let g = pick(k);
        let p = g.parities().to_vec();
        let d = g.dim();
        for i in 0..d {
            for j in 0..d {
                for m in 0..d {
                    let f = DualVector::basis(&p, m);
                    let xy = g.bracket_basis_vec(i, j);
                    let lhs = g.coadjoint(&xy, &f).unwrap();
                    let ei = linalg::unit_vec(d, i);
                    let ej = linalg::unit_vec(d, j);
                    let a = g.coadjoint(&ei, &g.coadjoint(&ej, &f).unwrap()).unwrap();
                    let b = g.coadjoint(&ej, &g.coadjoint(&ei, &f).unwrap()).unwrap();
                    let sign = if koszul(p[i], p[j]) { Scalar::one() } else { -Scalar::one() };
                    let rhs: Vec<Scalar> = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + &sign * y).collect();
                    prop_assert_eq!(lhs.coeffs, rhs);
                }
            }
        }
    }

    #[test]
    fn identities_survive_change_of_basis(k in 0usize..5, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = pick(k);
        let par = g.parities().to_vec();
        let d = g.dim();
        let p = random::graded_invertible(&mut rng, &par);
        let h = change_basis(&g, &p);
        prop_assert!(h.check_axioms().passes());

        let w = if seed % 2 == 0 {
            random::in_span2(&mut rng, &par, &cochains::z2_dual_basis(&g, true))
        } else {
            random::cochain2(&mut rng, &par)
        };
        let w2 = Cochain2Dual::new(&par, pull3(d, &p, |a, b, c| w.get(a, b, c).clone())).unwrap();
        prop_assert_eq!(cochains::is_cocycle2(&g, &w).unwrap(), cochains::is_cocycle2(&h, &w2).unwrap());
        prop_assert_eq!(cochains::is_supercyclic(&w), cochains::is_supercyclic(&w2));
        if cochains::is_cocycle2(&g, &w).unwrap() && cochains::is_supercyclic(&w) {
            let f = cochains::hat(&g, &w).unwrap();
            let f2 = ScalarCochain3::new(&par, pull3(d, &p, |a, b, c| f.get(a, b, c).clone())).unwrap();
            prop_assert_eq!(cochains::hat(&h, &w2).unwrap(), f2);
        }

        let f = random::cochain3(&mut rng, &par);
        let f2 = ScalarCochain3::new(&par, pull3(d, &p, |a, b, c| f.get(a, b, c).clone())).unwrap();
        prop_assert_eq!(cochains::is_closed3(&g, &f).unwrap(), cochains::is_closed3(&h, &f2).unwrap());

        let phi = random::scalar2(&mut rng, &par);
        let dphi = cochains::delta_scalar2(&g, &phi).unwrap();
        let pulled = ScalarCochain3::new(&par, pull3(d, &p, |a, b, c| dphi.get(a, b, c).clone())).unwrap();
        prop_assert_eq!(cochains::delta_scalar2(&h, &pull2(d, &p, &phi)).unwrap(), pulled);
    }

    #[test]
    fn s_phi_composes(k in 0usize..5, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = pick(k);
        let p = g.parities().to_vec();
        let a = random::scalar2(&mut rng, &p);
        let b = random::scalar2(&mut rng, &p);
        let lhs = tstar::s_phi_matrix(&b).mul(&tstar::s_phi_matrix(&a)).unwrap();
        prop_assert_eq!(lhs, tstar::s_phi_matrix(&a.add(&b)));
        let form = tstar::canonical_form(&g);
        let s = tstar::s_phi_matrix(&a);
        prop_assert_eq!(s.transpose().mul(form.gram()).unwrap().mul(&s).unwrap(), form.gram().clone());
    }

    #[test]
    fn coboundaries_are_closed(k in 0usize..5, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = pick(k);
        let phi = random::scalar2(&mut rng, g.parities());
        let f = cochains::delta_scalar2(&g, &phi).unwrap();
        prop_assert!(cochains::is_closed3(&g, &f).unwrap());
        let found = cochains::cohomologous(&g, &f, &ScalarCochain3::zero(g.parities())).unwrap();
        prop_assert!(found.is_some());
        prop_assert_eq!(cochains::delta_scalar2(&g, &found.unwrap()).unwrap(), f);
    }

    #[test]
    fn text_format_fixed_point(k in 0usize..5, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = pick(k);
        let p = g.parities().to_vec();
        let mut doc = AlgebraDocument::from_algebra(g);
        if p.iter().all(|x| *x == superquad::Parity::Even) {
            let m = random::graded_invertible(&mut rng, &p);
            doc.form = Some(m.transpose().mul(&m).unwrap());
        }
        doc.cochains2.insert("w".into(), random::cochain2(&mut rng, &p));
        doc.cochains2.insert("zero".into(), Cochain2Dual::zero(&p));
        doc.cochains3.insert("f".into(), random::cochain3(&mut rng, &p));
        doc.scalars2.insert("phi".into(), random::scalar2(&mut rng, &p));
        let text = dsl::emit(&doc);
        let back = dsl::parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(dsl::emit(&back), text);
    }
}
