use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};

use superquad::algebra::AxiomKind;
use superquad::cochains::{self, Cochain2Dual, ScalarCochain2};
use superquad::dsl::{self, AlgebraDocument};
use superquad::forms::{invariance_witness, EvenForm};
use superquad::structure::{self, Obstruction, ParityCase};
use superquad::tstar::{self, morphism_defect};
use superquad::{gallery, random, Error, LieSuperalgebra, QuadraticLieSuperalgebra, Subspace};

use crate::report::{matrix_json, vector_json, Report};

/// Input that cannot be processed at all (exit code 2).
#[derive(Debug)]
pub struct InputError(pub String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

pub struct Context {
    pub command: Vec<String>,
    pub seed: u64,
    pub max_dim: usize,
    pub allow_large: bool,
}

impl Context {
    fn rng(&self) -> StdRng {
        StdRng::seed_from_u64(self.seed)
    }

    fn load(&self, text: &str) -> Result<AlgebraDocument, InputError> {
        let doc = dsl::parse(text)?;
        if doc.algebra.dim() > self.max_dim {
            return Err(InputError(format!(
                "dimension {} exceeds --max-dim {}",
                doc.algebra.dim(),
                self.max_dim
            )));
        }
        Ok(doc)
    }

    fn report(&self, input: &str) -> Report {
        Report::new(self.command.clone(), Some(input))
    }
}

fn axiom_checks(r: &mut Report, g: &LieSuperalgebra) -> bool {
    let axioms = g.check_axioms();
    for (name, kind) in [
        ("grading", AxiomKind::Grading),
        ("super_skew_symmetry", AxiomKind::SuperSkew),
        ("super_jacobi", AxiomKind::Jacobi),
    ] {
        let w = axioms.first(kind).map(|v| g.basis().labels(&v.indices));
        r.check(name, w.is_none(), w);
    }
    axioms.passes()
}

/// Form checks; the quadratic algebra when they all pass.
fn form_checks(r: &mut Report, g: &LieSuperalgebra, doc: &AlgebraDocument) -> Option<QuadraticLieSuperalgebra> {
    let form = match doc.even_form()? {
        Ok(f) => f,
        Err(e) => {
            r.check_detail("form_even_supersymmetric", false, None, e.to_string());
            return None;
        }
    };
    r.check("form_even_supersymmetric", true, None);
    let nondeg = form.is_nondegenerate();
    r.check("form_nondegenerate", nondeg, None);
    let inv = invariance_witness(g, &form).map(|(i, j, k)| g.basis().labels(&[i, j, k]));
    r.check("form_invariant", inv.is_none(), inv.clone());
    if nondeg && inv.is_none() {
        QuadraticLieSuperalgebra::new(g.clone(), form).ok()
    } else {
        None
    }
}

fn structure_props(r: &mut Report, g: &LieSuperalgebra) {
    let (e, o) = g.basis().sdim();
    r.prop("dim", g.dim());
    r.prop("dim_even", e);
    r.prop("dim_odd", o);
    r.prop("abelian", g.is_abelian());
    r.prop("nilpotent", g.is_nilpotent());
    r.prop("solvable", g.is_solvable());
    r.prop("class_condition", g.class_condition());
    let z = g.center();
    r.prop("center_dim", z.dim());
    r.prop("center_in_odd_part", z.sdim().0 == 0);
}

pub fn check(ctx: &Context, input: &str) -> Result<Report, InputError> {
    let doc = ctx.load(input)?;
    let mut r = ctx.report(input);
    let g = &doc.algebra;
    let ok = axiom_checks(&mut r, g);
    if ok {
        structure_props(&mut r, g);
    }
    if let Some(q) = form_checks(&mut r, g, &doc) {
        let z = q.algebra().center();
        r.prop("class_c", !z.is_zero() && z.sdim().0 == 0);
        let perp = q.form().orthogonal(&q.algebra().derived_algebra());
        r.check("center_is_orthogonal_of_derived", perp.same_as(&z), None);
    }
    if ok {
        for (name, w) in &doc.cochains2 {
            r.prop(&format!("cochain2.{name}.cocycle"), cochains::is_cocycle2(g, w)?);
            r.prop(&format!("cochain2.{name}.supercyclic"), cochains::is_supercyclic(w));
        }
        for (name, f) in &doc.cochains3 {
            r.prop(&format!("cochain3.{name}.closed"), cochains::is_closed3(g, f)?);
        }
    }
    Ok(r.finish())
}

fn pick_omega(ctx: &Context, doc: &AlgebraDocument, name: Option<&str>) -> Result<Cochain2Dual, InputError> {
    let g = &doc.algebra;
    match name {
        None => Ok(Cochain2Dual::zero(g.parities())),
        Some("random") => {
            let basis = cochains::z2_dual_basis(g, true);
            Ok(random::in_span2(&mut ctx.rng(), g.parities(), &basis))
        }
        Some(n) => doc
            .cochains2
            .get(n)
            .cloned()
            .ok_or_else(|| InputError(format!("no cochain2 named `{n}`"))),
    }
}

fn require_axioms(r: &mut Report, g: &LieSuperalgebra) -> bool {
    let ok = axiom_checks(r, g);
    if !ok {
        r.check_detail("input_is_lie_superalgebra", false, None, "axioms fail".into());
    }
    ok
}

pub fn tstar_cmd(ctx: &Context, input: &str, omega: Option<&str>) -> Result<Report, InputError> {
    let doc = ctx.load(input)?;
    let mut r = ctx.report(input);
    let g = &doc.algebra;
    if !require_axioms(&mut r, g) {
        return Ok(r.finish());
    }
    let w = pick_omega(ctx, &doc, omega)?;
    let coc = cochains::cocycle2_witness(g, &w)?.map(|(i, j, k)| g.basis().labels(&[i, j, k]));
    let sc = cochains::supercyclic_witness(&w).map(|(i, j, k)| g.basis().labels(&[i, j, k]));
    r.check("cocycle", coc.is_none(), coc.clone());
    r.check("supercyclic", sc.is_none(), sc.clone());
    if coc.is_some() {
        let jac = tstar::jacobi_witness(g, &w)?;
        r.check("extension_jacobi", jac.is_none(), jac);
    } else if sc.is_some() {
        let inv = tstar::negative_test_invariance(g, &w)?;
        r.check("extension_form_invariant", false, Some(inv));
    } else {
        let t = tstar::build(g, &w)?;
        r.check("extension_axioms", true, None);
        r.check("extension_form_invariant", true, None);
        structure_props(&mut r, t.total.algebra());
        let mut base = AlgebraDocument::from_algebra(g.clone());
        base.cochains2.insert("omega".into(), w);
        r.output("document", dsl::emit(&AlgebraDocument::from_quadratic(&t.total)));
        r.output("base_with_omega", dsl::emit(&base));
    }
    Ok(r.finish())
}

pub fn cohomology(ctx: &Context, input: &str) -> Result<Report, InputError> {
    let doc = ctx.load(input)?;
    let mut r = ctx.report(input);
    let g = &doc.algebra;
    if !require_axioms(&mut r, g) {
        return Ok(r.finish());
    }
    let sz2 = cochains::z2_dual_basis(g, true);
    let z2 = cochains::z2_dual_basis(g, false);
    let z3 = cochains::z3_basis(g);
    let b3 = cochains::b3_basis(g);
    r.prop("dim_supercyclic_z2", sz2.len());
    r.prop("dim_z2_dual", z2.len());
    r.prop("dim_z3", z3.len());
    r.prop("dim_b3", b3.len());
    r.prop("dim_h3", z3.len() - b3.len());
    r.check("hat_dimensions_agree", sz2.len() == z3.len(), None);
    let b3_closed = b3.iter().all(|f| cochains::is_closed3(g, f).unwrap_or(false));
    r.check("coboundaries_closed", b3_closed, None);
    let mut out = AlgebraDocument::from_algebra(g.clone());
    for (i, f) in z3.iter().enumerate() {
        out.cochains3.insert(format!("z{}", i + 1), f.clone());
    }
    for (i, f) in b3.iter().enumerate() {
        out.cochains3.insert(format!("b{}", i + 1), f.clone());
    }
    r.output("basis", dsl::emit(&out));
    Ok(r.finish())
}

fn pick_phi(ctx: &Context, doc: &AlgebraDocument, name: &str) -> Result<ScalarCochain2, InputError> {
    if name == "random" {
        let mut rng = ctx.rng();
        // separate stream from the cocycle draw
        let _ = random::scalar(&mut rng);
        return Ok(random::scalar2(&mut rng, doc.algebra.parities()));
    }
    doc.scalars2
        .get(name)
        .cloned()
        .ok_or_else(|| InputError(format!("no scalar2 named `{name}`")))
}

pub fn isometry(ctx: &Context, input: &str, phi: &str, omega: Option<&str>) -> Result<Report, InputError> {
    let doc = ctx.load(input)?;
    let mut r = ctx.report(input);
    let g = &doc.algebra;
    if !require_axioms(&mut r, g) {
        return Ok(r.finish());
    }
    let w1 = pick_omega(ctx, &doc, omega)?;
    let phi = pick_phi(ctx, &doc, phi)?;
    match tstar::s_phi_isometry(g, &w1, &phi) {
        Ok(s) => {
            r.check("isometry", true, None);
            let mut out = AlgebraDocument::from_algebra(g.clone());
            out.cochains2.insert("omega1".into(), w1);
            out.cochains2.insert("omega2".into(), s.to.omega.clone());
            out.scalars2.insert("phi".into(), phi);
            r.output("cochains", dsl::emit(&out));
            r.output("map", matrix_json(&s.map));
        }
        Err(e @ (Error::NotCocycle { .. } | Error::NotSupercyclic { .. })) => {
            r.check_detail("omega1_valid", false, None, e.to_string());
        }
        Err(e) => r.check_detail("isometry", false, None, e.to_string()),
    }
    Ok(r.finish())
}

fn quadratic_or_report(r: &mut Report, doc: &AlgebraDocument) -> Option<QuadraticLieSuperalgebra> {
    if !require_axioms(r, &doc.algebra) {
        return None;
    }
    if doc.form.is_none() {
        r.check_detail("form_present", false, None, "document declares no form".into());
        return None;
    }
    form_checks(r, &doc.algebra, doc)
}

pub fn recognize(ctx: &Context, input: &str, ideal: &str) -> Result<Report, InputError> {
    let doc = ctx.load(input)?;
    let mut r = ctx.report(input);
    let Some(q) = quadratic_or_report(&mut r, &doc) else {
        return Ok(r.finish());
    };
    let vectors = ideal
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| dsl::parse_combination(q.basis(), s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let sub = match Subspace::span(q.algebra().parities(), &vectors) {
        Ok(s) => s,
        Err(e) => {
            r.check_detail("ideal_graded", false, None, e.to_string());
            return Ok(r.finish());
        }
    };
    r.prop("ideal_dim", sub.dim());
    match tstar::half_dim_isotropic_is_ideal(&q, &sub) {
        Ok(b) => r.prop("half_dim_isotropic_is_ideal", b),
        Err(e) => r.check_detail("half_dim_isotropic", false, None, e.to_string()),
    }
    match tstar::recognize(&q, &sub) {
        Ok(s) => {
            r.check("isometric_isomorphism", true, None);
            let mut out = AlgebraDocument::from_algebra(s.quotient.algebra.clone());
            out.cochains2.insert("omega".into(), s.extension.omega.clone());
            r.output("quotient", dsl::emit(&out));
            r.output("map", matrix_json(&s.map));
            r.output(
                "section",
                Value::Array(s.quotient.section.iter().map(|v| vector_json(v)).collect()),
            );
        }
        Err(e) => r.check_detail("recognition", false, None, e.to_string()),
    }
    Ok(r.finish())
}

pub fn decompose(ctx: &Context, input: &str) -> Result<Report, InputError> {
    let doc = ctx.load(input)?;
    let mut r = ctx.report(input);
    let Some(q) = quadratic_or_report(&mut r, &doc) else {
        return Ok(r.finish());
    };
    match structure::decompose(&q) {
        Ok(d) => {
            let onto = d.parity_case == ParityCase::EvenDim;
            let defect = morphism_defect(&q, &d.extension.total, &d.embedding, onto);
            r.check_detail(
                "embedding_verified",
                defect.is_none(),
                None,
                defect.map_or_else(|| "isometric homomorphism".to_string(), |x| x.to_string()),
            );
            r.prop(
                "parity_case",
                match d.parity_case {
                    ParityCase::EvenDim => "even",
                    ParityCase::OddDim => "odd",
                },
            );
            r.prop("dim", q.dim());
            r.prop("achieved_dim", d.flag.achieved_dim);
            r.prop("extension_dim", d.extension.total.dim());
            let mut base = AlgebraDocument::from_algebra(d.quotient.algebra.clone());
            base.cochains2.insert("omega".into(), d.extension.omega.clone());
            r.output("quotient", dsl::emit(&base));
            r.output(
                "extension",
                dsl::emit(&AlgebraDocument::from_quadratic(&d.extension.total)),
            );
            r.output(
                "ideal",
                Value::Array(d.ideal.basis().iter().map(|v| vector_json(v)).collect()),
            );
            r.output("embedding", matrix_json(&d.embedding));
        }
        Err(Error::RationalPointNotFound(ob)) => {
            let mut detail = BTreeMap::new();
            match &ob {
                Obstruction::Quadric { gram, rendered } => {
                    detail.insert("quadric", json!(rendered));
                    detail.insert("gram", matrix_json(gram));
                }
                Obstruction::CharPoly { rendered, .. } => {
                    detail.insert("characteristic_polynomial", json!(rendered));
                }
            }
            r.check_detail("rational_isotropic_flag", false, None, ob.to_string());
            r.output("obstruction", json!(detail));
        }
        Err(e) => r.check_detail("decomposition", false, None, e.to_string()),
    }
    Ok(r.finish())
}

pub enum ExampleKind<'a> {
    Gn(usize),
    Glnn(usize),
    ClassC(usize),
    Stock(&'a str),
}

pub fn example(ctx: &Context, kind: ExampleKind) -> Result<String, InputError> {
    let cap = |n: usize| {
        if n > 4 && !ctx.allow_large {
            Err(InputError(format!("n = {n} exceeds 4; pass --allow-large")))
        } else {
            Ok(n)
        }
    };
    let doc = match kind {
        ExampleKind::Gn(n) => AlgebraDocument::from_algebra(gallery::gn(cap(n)?)?),
        ExampleKind::Glnn(n) => AlgebraDocument::from_algebra(gallery::glnn(cap(n)?)?),
        ExampleKind::ClassC(n) => AlgebraDocument::from_quadratic(&gallery::class_c(cap(n)?)?),
        ExampleKind::Stock(name) => {
            let s = gallery::stock(name)?;
            let mut d = AlgebraDocument::from_algebra(s.algebra().clone());
            d.form = s.form().map(|f: &EvenForm| f.gram().clone());
            d
        }
    };
    Ok(dsl::emit(&doc))
}
