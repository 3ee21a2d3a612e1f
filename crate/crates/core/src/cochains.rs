//! Cochains of a Lie superalgebra used by T*-extensions.
//!
//! * [`Cochain2Dual`]: even bilinear maps `ω: g × g → g*`, stored as
//!   `ω(e_i, e_j)(e_k)`, super-antisymmetric in the first two slots.
//! * [`ScalarCochain3`]: even super-alternating trilinear forms.
//! * [`ScalarCochain2`]: even super-antisymmetric bilinear forms.
//!
//! Sign conventions. Swapping two adjacent arguments of parities `a`, `b`
//! multiplies the value by `−(−1)^{ab}`: a minus sign unless both are odd.
//! Hence an even index cannot repeat in a super-alternating tensor, while an
//! odd one can (`f(o, o, z)` is symmetric in the two odd slots).
//!
//! Free coordinates. Linear systems are solved over the independent entries
//! only:
//!
//! * 3-cochains: index triples `i ≤ j ≤ k` whose parities sum to even and in
//!   which no even index repeats;
//! * g*-valued 2-cochains: `(i, j, k)` with `i ≤ j`, `i = j` only for odd `i`,
//!   and parities of `i, j, k` summing to even;
//! * scalar 2-cochains: `i ≤ j` of equal parity, `i = j` only for odd `i`.
//!
//! The dense tensors stay the reference definition; the tests check the free
//! parametrisation against them.

use num_traits::{One, Zero};

use crate::algebra::LieSuperalgebra;
use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, sub_vec, zero_vec, RowEchelon, Scalar};
use crate::parity::{koszul, signed, Parity};

fn cube(d: usize) -> usize {
    d * d * d
}

/// Sign that sorts `seq` (by index) using adjacent super-transpositions, with
/// the sorted sequence. `true` means a minus sign.
fn sort_sign(seq: &mut [(usize, Parity)]) -> bool {
    let mut neg = false;
    for pass in 0..seq.len() {
        for a in 0..seq.len() - 1 - pass.min(seq.len() - 1) {
            if seq[a].0 > seq[a + 1].0 {
                if !koszul(seq[a].1, seq[a + 1].1) {
                    neg = !neg;
                }
                seq.swap(a, a + 1);
            }
        }
    }
    neg
}

/// Enumerates the independent entries of even super-alternating 3-tensors.
#[derive(Clone, Debug)]
pub struct FreeCoords3 {
    pub triples: Vec<(usize, usize, usize)>,
    // dense index → (free index, negate)
    lookup: Vec<Option<(usize, bool)>>,
    dim: usize,
}

impl FreeCoords3 {
    pub fn new(parities: &[Parity]) -> Self {
        let d = parities.len();
        let p = |i: usize| parities[i];
        let mut triples = Vec::new();
        for i in 0..d {
            for j in i..d {
                for k in j..d {
                    if (p(i) + p(j) + p(k)) != Parity::Even {
                        continue;
                    }
                    let repeated_even = (i == j && !p(i).is_odd()) || (j == k && !p(j).is_odd());
                    if !repeated_even {
                        triples.push((i, j, k));
                    }
                }
            }
        }
        let mut lookup = vec![None; cube(d)];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut seq = [(i, p(i)), (j, p(j)), (k, p(k))];
                    let neg = sort_sign(&mut seq);
                    let key = (seq[0].0, seq[1].0, seq[2].0);
                    if let Ok(pos) = triples.binary_search(&key) {
                        lookup[(i * d + j) * d + k] = Some((pos, neg));
                    }
                }
            }
        }
        Self {
            triples,
            lookup,
            dim: d,
        }
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn lookup(&self, i: usize, j: usize, k: usize) -> Option<(usize, bool)> {
        self.lookup[(i * self.dim + j) * self.dim + k]
    }
}

/// Independent entries of g*-valued even super-antisymmetric 2-cochains.
#[derive(Clone, Debug)]
pub struct FreeCoords2Dual {
    pub triples: Vec<(usize, usize, usize)>,
    lookup: Vec<Option<(usize, bool)>>,
    dim: usize,
}

impl FreeCoords2Dual {
    pub fn new(parities: &[Parity]) -> Self {
        let d = parities.len();
        let p = |i: usize| parities[i];
        let mut triples = Vec::new();
        for i in 0..d {
            for j in i..d {
                if i == j && !p(i).is_odd() {
                    continue;
                }
                for k in 0..d {
                    if p(i) + p(j) + p(k) == Parity::Even {
                        triples.push((i, j, k));
                    }
                }
            }
        }
        let mut lookup = vec![None; cube(d)];
        for (pos, &(i, j, k)) in triples.iter().enumerate() {
            lookup[(i * d + j) * d + k] = Some((pos, false));
            lookup[(j * d + i) * d + k] = Some((pos, !koszul(p(i), p(j))));
        }
        Self {
            triples,
            lookup,
            dim: d,
        }
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn lookup(&self, i: usize, j: usize, k: usize) -> Option<(usize, bool)> {
        self.lookup[(i * self.dim + j) * self.dim + k]
    }
}

/// Independent entries of even super-antisymmetric scalar 2-cochains.
#[derive(Clone, Debug)]
pub struct FreeCoords2 {
    pub pairs: Vec<(usize, usize)>,
    lookup: Vec<Option<(usize, bool)>>,
    dim: usize,
}

impl FreeCoords2 {
    pub fn new(parities: &[Parity]) -> Self {
        let d = parities.len();
        let mut pairs = Vec::new();
        for i in 0..d {
            for j in i..d {
                if parities[i] == parities[j] && (i < j || parities[i].is_odd()) {
                    pairs.push((i, j));
                }
            }
        }
        let mut lookup = vec![None; d * d];
        for (pos, &(i, j)) in pairs.iter().enumerate() {
            lookup[i * d + j] = Some((pos, false));
            lookup[j * d + i] = Some((pos, !koszul(parities[i], parities[j])));
        }
        Self { pairs, lookup, dim: d }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn lookup(&self, i: usize, j: usize) -> Option<(usize, bool)> {
        self.lookup[i * self.dim + j]
    }
}

fn labels(parities: &[Parity], idx: &[usize]) -> Vec<String> {
    idx.iter().map(|i| format!("#{i}({})", parities[*i])).collect()
}

/// Even bilinear map `ω: g × g → g*` with `ω(X,Y) = −(−1)^{xy} ω(Y,X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain2Dual {
    parities: Vec<Parity>,
    w: Vec<Scalar>,
}

impl Cochain2Dual {
    /// Validates evenness and super-antisymmetry of a dense tensor `w[(i*d+j)*d+k]`.
    pub fn new(parities: &[Parity], w: Vec<Scalar>) -> Result<Self> {
        let d = parities.len();
        if w.len() != cube(d) {
            return Err(Error::DimensionMismatch {
                context: "2-cochain tensor",
                expected: cube(d),
                found: w.len(),
            });
        }
        let p = |i: usize| parities[i];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = &w[(i * d + j) * d + k];
                    if v.is_zero() {
                        if w[(j * d + i) * d + k].is_zero() {
                            continue;
                        }
                    } else if p(i) + p(j) + p(k) != Parity::Even {
                        return Err(Error::InvalidCochain {
                            reason: "cochain is not even".into(),
                            witness: labels(parities, &[i, j, k]),
                        });
                    }
                    if *v != signed(!koszul(p(i), p(j)), w[(j * d + i) * d + k].clone()) {
                        return Err(Error::InvalidCochain {
                            reason: "cochain is not super-antisymmetric".into(),
                            witness: labels(parities, &[i, j, k]),
                        });
                    }
                }
            }
        }
        Ok(Self {
            parities: parities.to_vec(),
            w,
        })
    }

    pub fn zero(parities: &[Parity]) -> Self {
        Self {
            parities: parities.to_vec(),
            w: zero_vec(cube(parities.len())),
        }
    }

    pub fn from_free(parities: &[Parity], free: &FreeCoords2Dual, coords: &[Scalar]) -> Self {
        let d = parities.len();
        let mut w = zero_vec(cube(d));
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if let Some((pos, neg)) = free.lookup(i, j, k) {
                        w[(i * d + j) * d + k] = signed(neg, coords[pos].clone());
                    }
                }
            }
        }
        Self {
            parities: parities.to_vec(),
            w,
        }
    }

    pub fn to_free(&self, free: &FreeCoords2Dual) -> Vec<Scalar> {
        free.triples
            .iter()
            .map(|&(i, j, k)| self.get(i, j, k).clone())
            .collect()
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    /// `ω(e_i, e_j)(e_k)`
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let d = self.dim();
        &self.w[(i * d + j) * d + k]
    }

    pub fn tensor(&self) -> &[Scalar] {
        &self.w
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.w)
    }

    /// Dual-vector coefficients of `ω(e_i, e_j)`.
    pub fn value(&self, i: usize, j: usize) -> &[Scalar] {
        let d = self.dim();
        &self.w[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            parities: self.parities.clone(),
            w: crate::linalg::add_vec(&self.w, &other.w),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            parities: self.parities.clone(),
            w: sub_vec(&self.w, &other.w),
        }
    }

    pub fn scale(&self, a: &Scalar) -> Self {
        Self {
            parities: self.parities.clone(),
            w: crate::linalg::scale_vec(&self.w, a),
        }
    }
}

/// Even super-alternating trilinear scalar form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarCochain3 {
    parities: Vec<Parity>,
    f: Vec<Scalar>,
}

impl ScalarCochain3 {
    pub fn new(parities: &[Parity], f: Vec<Scalar>) -> Result<Self> {
        let d = parities.len();
        if f.len() != cube(d) {
            return Err(Error::DimensionMismatch {
                context: "3-cochain tensor",
                expected: cube(d),
                found: f.len(),
            });
        }
        let free = FreeCoords3::new(parities);
        let coords: Vec<Scalar> = free
            .triples
            .iter()
            .map(|&(i, j, k)| f[(i * d + j) * d + k].clone())
            .collect();
        let rebuilt = Self::from_free(parities, &free, &coords);
        if let Some(pos) = (0..f.len()).find(|&x| f[x] != rebuilt.f[x]) {
            let (i, j, k) = (pos / (d * d), (pos / d) % d, pos % d);
            return Err(Error::InvalidCochain {
                reason: "3-cochain is not even and super-alternating".into(),
                witness: labels(parities, &[i, j, k]),
            });
        }
        Ok(rebuilt)
    }

    pub fn zero(parities: &[Parity]) -> Self {
        Self {
            parities: parities.to_vec(),
            f: zero_vec(cube(parities.len())),
        }
    }

    pub fn from_free(parities: &[Parity], free: &FreeCoords3, coords: &[Scalar]) -> Self {
        let d = parities.len();
        let mut f = zero_vec(cube(d));
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if let Some((pos, neg)) = free.lookup(i, j, k) {
                        f[(i * d + j) * d + k] = signed(neg, coords[pos].clone());
                    }
                }
            }
        }
        Self {
            parities: parities.to_vec(),
            f,
        }
    }

    pub fn to_free(&self, free: &FreeCoords3) -> Vec<Scalar> {
        free.triples
            .iter()
            .map(|&(i, j, k)| self.get(i, j, k).clone())
            .collect()
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let d = self.dim();
        &self.f[(i * d + j) * d + k]
    }

    pub fn tensor(&self) -> &[Scalar] {
        &self.f
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.f)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            parities: self.parities.clone(),
            f: crate::linalg::add_vec(&self.f, &other.f),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            parities: self.parities.clone(),
            f: sub_vec(&self.f, &other.f),
        }
    }

    pub fn scale(&self, a: &Scalar) -> Self {
        Self {
            parities: self.parities.clone(),
            f: crate::linalg::scale_vec(&self.f, a),
        }
    }
}

/// Even super-antisymmetric bilinear scalar form `φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarCochain2 {
    parities: Vec<Parity>,
    p: Vec<Scalar>,
}

impl ScalarCochain2 {
    pub fn new(parities: &[Parity], p: Vec<Scalar>) -> Result<Self> {
        let d = parities.len();
        if p.len() != d * d {
            return Err(Error::DimensionMismatch {
                context: "scalar 2-cochain",
                expected: d * d,
                found: p.len(),
            });
        }
        for i in 0..d {
            for j in 0..d {
                let v = &p[i * d + j];
                if parities[i] != parities[j] && !v.is_zero() {
                    return Err(Error::InvalidCochain {
                        reason: "scalar 2-cochain is not even".into(),
                        witness: labels(parities, &[i, j]),
                    });
                }
                if *v != signed(!koszul(parities[i], parities[j]), p[j * d + i].clone()) {
                    return Err(Error::InvalidCochain {
                        reason: "scalar 2-cochain is not super-antisymmetric".into(),
                        witness: labels(parities, &[i, j]),
                    });
                }
            }
        }
        Ok(Self {
            parities: parities.to_vec(),
            p,
        })
    }

    pub fn zero(parities: &[Parity]) -> Self {
        Self {
            parities: parities.to_vec(),
            p: zero_vec(parities.len() * parities.len()),
        }
    }

    pub fn from_free(parities: &[Parity], free: &FreeCoords2, coords: &[Scalar]) -> Self {
        let d = parities.len();
        let mut p = zero_vec(d * d);
        for i in 0..d {
            for j in 0..d {
                if let Some((pos, neg)) = free.lookup(i, j) {
                    p[i * d + j] = signed(neg, coords[pos].clone());
                }
            }
        }
        Self {
            parities: parities.to_vec(),
            p,
        }
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.p[i * self.dim() + j]
    }

    pub fn matrix(&self) -> &[Scalar] {
        &self.p
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            parities: self.parities.clone(),
            p: crate::linalg::add_vec(&self.p, &other.p),
        }
    }

    /// `φ(v, w)` for arbitrary coordinate vectors.
    pub fn eval(&self, v: &[Scalar], w: &[Scalar]) -> Scalar {
        let d = self.dim();
        let mut acc = Scalar::zero();
        for i in (0..d).filter(|&i| !v[i].is_zero()) {
            for j in (0..d).filter(|&j| !w[j].is_zero()) {
                let x = &self.p[i * d + j];
                if !x.is_zero() {
                    acc += &v[i] * x * &w[j];
                }
            }
        }
        acc
    }
}

fn ensure_basis(g: &LieSuperalgebra, parities: &[Parity]) -> Result<()> {
    if g.parities() != parities {
        return Err(Error::BasisMismatch(
            "cochain and algebra have different gradings".into(),
        ));
    }
    Ok(())
}

/// Linear form in cochain coordinates, accumulated sparsely.
struct LinearRow {
    coeffs: Vec<Scalar>,
}

impl LinearRow {
    fn new(n: usize) -> Self {
        Self { coeffs: zero_vec(n) }
    }

    fn add(&mut self, entry: Option<(usize, bool)>, c: &Scalar, negate: bool) {
        if let Some((pos, neg)) = entry {
            let v = signed(neg ^ negate, c.clone());
            self.coeffs[pos] += v;
        }
    }
}

/// Dual-vector coefficients, in component `l`, of the g*-valued 2-cocycle
/// identity applied to basis vectors `(e_i, e_j, e_k)`, as linear forms in the
/// free coordinates of ω. One row per component `l`.
fn cocycle2_rows(g: &LieSuperalgebra, free: &FreeCoords2Dual, i: usize, j: usize, k: usize) -> Vec<LinearRow> {
    let d = g.dim();
    let p = |a: usize| g.parity(a);
    let (x, y, z) = (p(i), p(j), p(k));
    let s2 = koszul(x, y + z);
    let s3 = koszul(z, x + y);
    let mut rows: Vec<LinearRow> = (0..d).map(|_| LinearRow::new(free.len())).collect();
    // ω(X,[Y,Z]) + (−1)^{x(y+z)} ω(Y,[Z,X]) + (−1)^{z(x+y)} ω(Z,[X,Y])
    for (a, b, c, s) in [(i, j, k, false), (j, k, i, s2), (k, i, j, s3)] {
        for (m, coef) in g.bracket_basis(b, c) {
            for (l, row) in rows.iter_mut().enumerate() {
                row.add(free.lookup(a, *m, l), coef, s);
            }
        }
    }
    // π(X)(ω(Y,Z)) + (−1)^{x(y+z)} π(Y)(ω(Z,X)) + (−1)^{z(x+y)} π(Z)(ω(X,Y))
    for (a, b, c, s) in [(i, j, k, false), (j, k, i, s2), (k, i, j, s3)] {
        // π(e_a) e_m* = Σ_l coadjoint_basis(a, m)[l] e_l*, and ω(e_b,e_c) = Σ_m ω_bcm e_m*
        for m in 0..d {
            for (l, coef) in g.coadjoint_basis(a, m) {
                rows[l].add(free.lookup(b, c, m), &coef, s);
            }
        }
    }
    rows
}

fn supercyclic_row(parities: &[Parity], free: &FreeCoords2Dual, i: usize, j: usize, k: usize) -> LinearRow {
    // ω(X,Y)(Z) − (−1)^{x(y+z)} ω(Y,Z)(X)
    let mut row = LinearRow::new(free.len());
    let one = Scalar::one();
    row.add(free.lookup(i, j, k), &one, false);
    row.add(
        free.lookup(j, k, i),
        &one,
        !koszul(parities[i], parities[j] + parities[k]),
    );
    row
}

/// First basis triple where the g*-valued 2-cocycle identity fails.
pub fn cocycle2_witness(g: &LieSuperalgebra, omega: &Cochain2Dual) -> Result<Option<(usize, usize, usize)>> {
    ensure_basis(g, omega.parities())?;
    let free = FreeCoords2Dual::new(g.parities());
    let coords = omega.to_free(&free);
    let d = g.dim();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for row in cocycle2_rows(g, &free, i, j, k) {
                    if !crate::linalg::dot(&row.coeffs, &coords).is_zero() {
                        return Ok(Some((i, j, k)));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// `ω(X,[Y,Z]) + (−1)^{x(y+z)}ω(Y,[Z,X]) + (−1)^{z(x+y)}ω(Z,[X,Y])
///  + π(X)ω(Y,Z) + (−1)^{x(y+z)}π(Y)ω(Z,X) + (−1)^{z(x+y)}π(Z)ω(X,Y) = 0`.
pub fn is_cocycle2(g: &LieSuperalgebra, omega: &Cochain2Dual) -> Result<bool> {
    Ok(cocycle2_witness(g, omega)?.is_none())
}

/// First basis triple where `ω(X,Y)(Z) = (−1)^{x(y+z)} ω(Y,Z)(X)` fails.
pub fn supercyclic_witness(omega: &Cochain2Dual) -> Option<(usize, usize, usize)> {
    let d = omega.dim();
    let p = omega.parities();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let rhs = signed(koszul(p[i], p[j] + p[k]), omega.get(j, k, i).clone());
                if *omega.get(i, j, k) != rhs {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

pub fn is_supercyclic(omega: &Cochain2Dual) -> bool {
    supercyclic_witness(omega).is_none()
}

/// `ω ↦ ω̂`, `ω̂(X,Y,Z) = ω(X,Y)(Z)`, on supercyclic 2-cocycles.
pub fn hat(g: &LieSuperalgebra, omega: &Cochain2Dual) -> Result<ScalarCochain3> {
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
    let f = ScalarCochain3::new(omega.parities(), omega.tensor().to_vec())
        .map_err(|e| Error::Verification(format!("hat image is not super-alternating: {e}")))?;
    if let Some(w) = closed3_witness(g, &f)? {
        return Err(Error::Verification(format!(
            "hat image is not closed at {:?}",
            g.basis().labels(&[w.0, w.1, w.2, w.3])
        )));
    }
    Ok(f)
}

/// Inverse of [`hat`] on closed even scalar 3-cochains.
pub fn unhat(g: &LieSuperalgebra, f: &ScalarCochain3) -> Result<Cochain2Dual> {
    if let Some(w) = closed3_witness(g, f)? {
        return Err(Error::NotClosed {
            witness: g.basis().labels(&[w.0, w.1, w.2, w.3]),
        });
    }
    let omega = Cochain2Dual::new(f.parities(), f.tensor().to_vec())
        .map_err(|e| Error::Verification(format!("unhat image invalid: {e}")))?;
    if !is_supercyclic(&omega) || !is_cocycle2(g, &omega)? {
        return Err(Error::Verification("unhat image is not a supercyclic cocycle".into()));
    }
    Ok(omega)
}

/// `f([e_a,e_b], e_c, e_v)` contributions as (dense entry, coefficient).
fn closed3_row(g: &LieSuperalgebra, free: &FreeCoords3, i: usize, j: usize, k: usize, l: usize) -> LinearRow {
    let p = |a: usize| g.parity(a);
    let (x, y, z, v) = (p(i), p(j), p(k), p(l));
    let mut row = LinearRow::new(free.len());
    // (bracket pair, remaining pair, negate)
    let terms = [
        ((i, j), (k, l), false),
        ((i, k), (j, l), !koszul(y, z)),
        ((j, k), (i, l), koszul(x, y + z)),
        ((i, l), (j, k), koszul(y + z, v)),
        ((j, l), (i, k), !(koszul(x, y + v) ^ koszul(v, z))),
        ((k, l), (i, j), koszul(x + y, z + v)),
    ];
    for ((a, b), (c, e), neg) in terms {
        for (m, coef) in g.bracket_basis(a, b) {
            row.add(free.lookup(*m, c, e), coef, neg);
        }
    }
    row
}

/// First basis 4-tuple where the closedness identity fails.
pub fn closed3_witness(g: &LieSuperalgebra, f: &ScalarCochain3) -> Result<Option<(usize, usize, usize, usize)>> {
    ensure_basis(g, f.parities())?;
    let free = FreeCoords3::new(g.parities());
    let coords = f.to_free(&free);
    let d = g.dim();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    let row = closed3_row(g, &free, i, j, k, l);
                    if !crate::linalg::dot(&row.coeffs, &coords).is_zero() {
                        return Ok(Some((i, j, k, l)));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// `0 = f([X,Y],Z,V) − (−1)^{yz}f([X,Z],Y,V) + (−1)^{x(y+z)}f([Y,Z],X,V)
///  + (−1)^{(y+z)v}f([X,V],Y,Z) − (−1)^{x(y+v)+vz}f([Y,V],X,Z)
///  + (−1)^{(x+y)(z+v)}f([Z,V],X,Y)` on all basis 4-tuples.
pub fn is_closed3(g: &LieSuperalgebra, f: &ScalarCochain3) -> Result<bool> {
    Ok(closed3_witness(g, f)?.is_none())
}

/// `(δφ)(X,Y,Z) = −φ([X,Y],Z) + (−1)^{yz}φ([X,Z],Y) − (−1)^{x(y+z)}φ([Y,Z],X)`.
pub fn delta_scalar2(g: &LieSuperalgebra, phi: &ScalarCochain2) -> Result<ScalarCochain3> {
    ensure_basis(g, phi.parities())?;
    let d = g.dim();
    let p = |a: usize| g.parity(a);
    let mut f = zero_vec(cube(d));
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut acc = Scalar::zero();
                let terms = [
                    ((i, j), k, true),
                    ((i, k), j, koszul(p(j), p(k))),
                    ((j, k), i, !koszul(p(i), p(j) + p(k))),
                ];
                for ((a, b), c, neg) in terms {
                    for (m, coef) in g.bracket_basis(a, b) {
                        let v = phi.get(*m, c);
                        if !v.is_zero() {
                            acc += signed(neg, coef * v);
                        }
                    }
                }
                f[(i * d + j) * d + k] = acc;
            }
        }
    }
    ScalarCochain3::new(g.parities(), f).map_err(|e| Error::Verification(format!("δφ is not super-alternating: {e}")))
}

fn kernel_of_rows(n: usize, rows: impl Iterator<Item = LinearRow>) -> Vec<Vec<Scalar>> {
    let mut e = RowEchelon::new(n);
    for row in rows {
        if !is_zero_vec(&row.coeffs) {
            e.push(row.coeffs);
        }
    }
    e.kernel()
}

/// Basis of `(Z³(g, K))₀`, solved over the free coordinates.
pub fn z3_basis(g: &LieSuperalgebra) -> Vec<ScalarCochain3> {
    let free = FreeCoords3::new(g.parities());
    let d = g.dim();
    let rows = (0..d * d * d * d).map(|t| {
        let (i, j, k, l) = (t / (d * d * d), (t / (d * d)) % d, (t / d) % d, t % d);
        closed3_row(g, &free, i, j, k, l)
    });
    kernel_of_rows(free.len(), rows)
        .into_iter()
        .map(|c| ScalarCochain3::from_free(g.parities(), &free, &c))
        .collect()
}

/// Basis of the coboundaries `δ(C²)₀`.
pub fn b3_basis(g: &LieSuperalgebra) -> Vec<ScalarCochain3> {
    let free2 = FreeCoords2::new(g.parities());
    let free3 = FreeCoords3::new(g.parities());
    let mut e = RowEchelon::new(free3.len());
    for pos in 0..free2.len() {
        let phi = ScalarCochain2::from_free(g.parities(), &free2, &crate::linalg::unit_vec(free2.len(), pos));
        let f = delta_scalar2(g, &phi).expect("same basis");
        e.push(f.to_free(&free3));
    }
    e.basis_rows()
        .iter()
        .map(|c| ScalarCochain3::from_free(g.parities(), &free3, c))
        .collect()
}

pub fn h3_dim(g: &LieSuperalgebra) -> usize {
    z3_basis(g).len() - b3_basis(g).len()
}

/// Basis of `(Z²(g, g*))₀`; with `supercyclic` the supercyclic ones only.
pub fn z2_dual_basis(g: &LieSuperalgebra, supercyclic: bool) -> Vec<Cochain2Dual> {
    let free = FreeCoords2Dual::new(g.parities());
    let d = g.dim();
    let mut rows: Vec<LinearRow> = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                rows.extend(cocycle2_rows(g, &free, i, j, k));
                if supercyclic {
                    rows.push(supercyclic_row(g.parities(), &free, i, j, k));
                }
            }
        }
    }
    kernel_of_rows(free.len(), rows.into_iter())
        .into_iter()
        .map(|c| Cochain2Dual::from_free(g.parities(), &free, &c))
        .collect()
}

/// A `φ` with `f2 = f1 − δφ`, if the difference is a coboundary.
pub fn cohomologous(g: &LieSuperalgebra, f1: &ScalarCochain3, f2: &ScalarCochain3) -> Result<Option<ScalarCochain2>> {
    for f in [f1, f2] {
        if let Some(w) = closed3_witness(g, f)? {
            return Err(Error::NotClosed {
                witness: g.basis().labels(&[w.0, w.1, w.2, w.3]),
            });
        }
    }
    let free2 = FreeCoords2::new(g.parities());
    let free3 = FreeCoords3::new(g.parities());
    let cols: Vec<Vec<Scalar>> = (0..free2.len())
        .map(|pos| {
            let phi = ScalarCochain2::from_free(g.parities(), &free2, &crate::linalg::unit_vec(free2.len(), pos));
            delta_scalar2(g, &phi).expect("same basis").to_free(&free3)
        })
        .collect();
    let target = f1.sub(f2).to_free(&free3);
    let m = crate::linalg::Matrix::from_cols(&cols, free3.len())?;
    let sol = crate::linalg::solve(&m, &target)?;
    Ok(sol
        .particular
        .map(|x| ScalarCochain2::from_free(g.parities(), &free2, &x)))
}

/// Combination `Σ cᵢ bᵢ` of 3-cochains.
pub fn combine3(parities: &[Parity], basis: &[ScalarCochain3], coeffs: &[Scalar]) -> ScalarCochain3 {
    let mut f = zero_vec(cube(parities.len()));
    for (b, c) in basis.iter().zip(coeffs) {
        axpy(&mut f, c, b.tensor());
    }
    ScalarCochain3 {
        parities: parities.to_vec(),
        f,
    }
}

/// Combination `Σ cᵢ ωᵢ` of g*-valued 2-cochains.
pub fn combine2(parities: &[Parity], basis: &[Cochain2Dual], coeffs: &[Scalar]) -> Cochain2Dual {
    let mut w = zero_vec(cube(parities.len()));
    for (b, c) in basis.iter().zip(coeffs) {
        axpy(&mut w, c, b.tensor());
    }
    Cochain2Dual {
        parities: parities.to_vec(),
        w,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::linalg::{int, unit_vec};
    use crate::parity::Parity::{Even, Odd};

    /// Dense definition of super-alternation, used as the oracle for the free
    /// parametrisation.
    fn dense_super_alternating(parities: &[Parity], f: &[Scalar]) -> bool {
        let d = parities.len();
        let p = |i: usize| parities[i];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = &f[(i * d + j) * d + k];
                    if !v.is_zero() && p(i) + p(j) + p(k) != Even {
                        return false;
                    }
                    if *v != signed(!koszul(p(i), p(j)), f[(j * d + i) * d + k].clone()) {
                        return false;
                    }
                    if *v != signed(!koszul(p(j), p(k)), f[(i * d + k) * d + j].clone()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn free3_matches_dense_definition() {
        for parities in [
            vec![Even, Even, Even],
            vec![Even, Odd, Odd],
            vec![Odd, Odd],
            vec![Even, Even, Odd, Odd],
        ] {
            let free = FreeCoords3::new(&parities);
            let d = parities.len();
            // every free basis tensor is super-alternating
            for pos in 0..free.len() {
                let f = ScalarCochain3::from_free(&parities, &free, &unit_vec(free.len(), pos));
                assert!(dense_super_alternating(&parities, f.tensor()));
            }
            // and they span: count dense solutions by brute-force linear algebra
            let mut e = RowEchelon::new(cube(d));
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        let idx = |a: usize, b: usize, c: usize| (a * d + b) * d + c;
                        let mut r = zero_vec(cube(d));
                        r[idx(i, j, k)] += int(1);
                        r[idx(j, i, k)] += signed(koszul(parities[i], parities[j]), int(1));
                        e.push(r);
                        let mut r = zero_vec(cube(d));
                        r[idx(i, j, k)] += int(1);
                        r[idx(i, k, j)] += signed(koszul(parities[j], parities[k]), int(1));
                        e.push(r);
                        if parities[i] + parities[j] + parities[k] != Even {
                            e.push(unit_vec(cube(d), idx(i, j, k)));
                        }
                    }
                }
            }
            assert_eq!(e.kernel().len(), free.len(), "parities {parities:?}");
        }
    }

    #[test]
    fn odd_triple_repeats_allowed() {
        let free = FreeCoords3::new(&[Even, Odd]);
        // x,y,y is the only free coordinate; (y,y,y) is odd in total
        assert_eq!(free.triples, vec![(0, 1, 1)]);
        assert_eq!(FreeCoords3::new(&[Even, Even]).len(), 0);
    }

    #[test]
    fn zero_cochain_is_cocycle_and_supercyclic() {
        let g = gallery::heisenberg3();
        let z = Cochain2Dual::zero(g.parities());
        assert!(is_cocycle2(&g, &z).unwrap());
        assert!(is_supercyclic(&z));
        assert!(hat(&g, &z).unwrap().is_zero());
    }

    #[test]
    fn non_supercyclic_on_abelian() {
        // w[0][1][2] = 1 and w[1][0][2] = -1 only
        let p = [Even, Even, Even];
        let mut w = zero_vec(27);
        w[2 + 3] = int(1);
        w[3 * 3 + 2] = int(-1);
        let om = Cochain2Dual::new(&p, w).unwrap();
        assert!(!is_supercyclic(&om));
        assert_eq!(supercyclic_witness(&om), Some((0, 1, 2)));
        let g = gallery::abelian(3, 0);
        assert!(is_cocycle2(&g, &om).unwrap());
    }

    #[test]
    fn heisenberg_random_cochain_fails_on_generators() {
        // ω(e1,e1)... even: only pairs i<j. ω(e1,e2)(e1) = 1 is not a cocycle:
        // π(e3)... evaluate on (e1,e2,e3) directly via the witness search.
        let g = gallery::heisenberg3();
        let free = FreeCoords2Dual::new(g.parities());
        let mut found = false;
        for pos in 0..free.len() {
            let om = Cochain2Dual::from_free(g.parities(), &free, &unit_vec(free.len(), pos));
            if let Some(w) = cocycle2_witness(&g, &om).unwrap() {
                found = true;
                // the witness really violates the identity: recompute by hand
                assert!(cocycle2_rows(&g, &free, w.0, w.1, w.2)
                    .iter()
                    .any(|r| !crate::linalg::dot(&r.coeffs, &om.to_free(&free)).is_zero()));
            }
        }
        assert!(found);
    }

    #[test]
    fn abelian_dimension_counts() {
        let a2 = gallery::abelian(2, 0);
        assert_eq!(z3_basis(&a2).len(), 0);
        assert_eq!(h3_dim(&a2), 0);
        let a3 = gallery::abelian(3, 0);
        assert_eq!(z3_basis(&a3).len(), 1);
        assert_eq!(b3_basis(&a3).len(), 0);
        assert_eq!(h3_dim(&a3), 1);
    }

    #[test]
    fn delta_on_heisenberg_matches_formula() {
        let g = gallery::heisenberg3();
        let p = g.parities();
        let mut m = zero_vec(9);
        m[1] = int(1); // φ(e1,e2) = 1
        m[3] = int(-1);
        let phi = ScalarCochain2::new(p, m).unwrap();
        let f = delta_scalar2(&g, &phi).unwrap();
        // −φ([e1,e2],e3) + φ([e1,e3],e2) − φ([e2,e3],e1) = −φ(e3,e3) = 0
        assert!(f.get(0, 1, 2).is_zero());
        // with φ(e3, e1) = 1 instead: −φ(e3,e3) + φ(0,e2) − φ(0, e1) = 0 again,
        // and (δφ)(e1,e2,e1) is not a valid entry. Use φ(e3,e1):
        let mut m = zero_vec(9);
        m[2 * 3] = int(1); // φ(e3,e1) = 1
        m[2] = int(-1); // φ(e1,e3) = −1
        let phi = ScalarCochain2::new(p, m).unwrap();
        let f = delta_scalar2(&g, &phi).unwrap();
        // Heisenberg is 3-dimensional: δφ(e1,e2,e3) = −φ(e3,e3) + 0 − 0 = 0
        assert!(f.is_zero());
    }

    #[test]
    fn delta_abelian_and_zero() {
        let g = gallery::abelian(2, 2);
        let free = FreeCoords2::new(g.parities());
        let phi = ScalarCochain2::from_free(g.parities(), &free, &vec![int(3); free.len()]);
        assert!(delta_scalar2(&g, &phi).unwrap().is_zero());
        let h = gallery::heisenberg3();
        assert!(delta_scalar2(&h, &ScalarCochain2::zero(h.parities()))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn abelian_volume_not_cohomologous_to_zero() {
        let g = gallery::abelian(3, 0);
        let vol = z3_basis(&g).remove(0);
        let zero = ScalarCochain3::zero(g.parities());
        assert!(cohomologous(&g, &zero, &vol).unwrap().is_none());
        assert!(cohomologous(&g, &vol, &vol).unwrap().is_some());
    }

    #[test]
    fn rejects_invalid_containers() {
        let p = [Even, Odd];
        let mut w = zero_vec(8);
        w[1] = int(1); // ω(e0,e0)(e1): odd total
        assert!(Cochain2Dual::new(&p, w).is_err());
        let mut f = zero_vec(8);
        f[3] = int(1); // f(x,y,y) without its mirror
        assert!(ScalarCochain3::new(&p, f).is_err());
        assert!(ScalarCochain2::new(&[Even, Even], vec![int(0), int(1), int(1), int(0)]).is_err());
    }
}
