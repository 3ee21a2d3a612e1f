//! Graded subspaces of a coordinate space.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, zero_vec, Matrix, RowEchelon, Scalar};
use crate::parity::Parity;

/// A graded subspace, stored through a homogeneous, linearly independent basis.
///
/// The basis is the reduced echelon basis of each parity component (even
/// vectors first), so it is reproducible for a given subspace, but equality
/// is still decided by double inclusion.
#[derive(Clone, Debug)]
pub struct Subspace {
    parities: Vec<Parity>,
    basis: Vec<Vec<Scalar>>,
    basis_parity: Vec<Parity>,
    echelon: RowEchelon,
}

fn component(parities: &[Parity], v: &[Scalar], p: Parity) -> Vec<Scalar> {
    v.iter()
        .zip(parities)
        .map(|(x, q)| if *q == p { x.clone() } else { Scalar::zero() })
        .collect()
}

impl Subspace {
    pub fn zero(parities: &[Parity]) -> Self {
        Self::from_homogeneous(parities, Vec::new())
    }

    pub fn full(parities: &[Parity]) -> Self {
        let n = parities.len();
        let vs = (0..n).map(|i| crate::linalg::unit_vec(n, i)).collect();
        Self::from_homogeneous(parities, vs)
    }

    /// Span of arbitrary vectors. Non-homogeneous vectors are split into their
    /// parity components; if that enlarges the span the input did not span a
    /// graded subspace and `NotGraded` is returned.
    pub fn span(parities: &[Parity], vectors: &[Vec<Scalar>]) -> Result<Self> {
        let n = parities.len();
        for v in vectors {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    context: "subspace spanning vector",
                    expected: n,
                    found: v.len(),
                });
            }
        }
        let mut plain = RowEchelon::new(n);
        let mut split = Vec::with_capacity(2 * vectors.len());
        for v in vectors {
            plain.push(v.clone());
            for p in [Parity::Even, Parity::Odd] {
                let c = component(parities, v, p);
                if !is_zero_vec(&c) {
                    split.push(c);
                }
            }
        }
        let sub = Self::from_homogeneous(parities, split);
        if sub.dim() != plain.rank() {
            return Err(Error::NotGraded);
        }
        Ok(sub)
    }

    /// Span of vectors already known to be homogeneous (components are split
    /// regardless, so mixed input is tolerated but graded-closed).
    pub fn from_homogeneous(parities: &[Parity], vectors: Vec<Vec<Scalar>>) -> Self {
        let n = parities.len();
        let mut even = RowEchelon::new(n);
        let mut odd = RowEchelon::new(n);
        for v in &vectors {
            even.push(component(parities, v, Parity::Even));
            odd.push(component(parities, v, Parity::Odd));
        }
        let mut basis = Vec::new();
        let mut basis_parity = Vec::new();
        for (e, p) in [(&even, Parity::Even), (&odd, Parity::Odd)] {
            for row in e.basis_rows() {
                basis.push(row.clone());
                basis_parity.push(p);
            }
        }
        let mut echelon = RowEchelon::new(n);
        for b in &basis {
            echelon.push(b.clone());
        }
        Self {
            parities: parities.to_vec(),
            basis,
            basis_parity,
            echelon,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.parities.len()
    }

    pub fn ambient_parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// (dim even part, dim odd part)
    pub fn sdim(&self) -> (usize, usize) {
        let odd = self.basis_parity.iter().filter(|p| p.is_odd()).count();
        (self.dim() - odd, odd)
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn basis_parities(&self) -> &[Parity] {
        &self.basis_parity
    }

    pub fn part(&self, p: Parity) -> impl Iterator<Item = &Vec<Scalar>> {
        self.basis
            .iter()
            .zip(&self.basis_parity)
            .filter(move |(_, q)| **q == p)
            .map(|(v, _)| v)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.echelon.contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Equality by double inclusion.
    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other) && other.contains_subspace(self)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let vs = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::from_homogeneous(&self.parities, vs)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let n = self.ambient_dim();
        let mut out = Vec::new();
        for p in [Parity::Even, Parity::Odd] {
            let a: Vec<&Vec<Scalar>> = self.part(p).collect();
            let b: Vec<&Vec<Scalar>> = other.part(p).collect();
            if a.is_empty() || b.is_empty() {
                continue;
            }
            // columns a_1..a_r, -b_1..-b_s
            let mut m = Matrix::zeros(n, a.len() + b.len());
            for (c, v) in a.iter().enumerate() {
                for r in 0..n {
                    m[(r, c)] = v[r].clone();
                }
            }
            for (c, v) in b.iter().enumerate() {
                for r in 0..n {
                    m[(r, a.len() + c)] = -v[r].clone();
                }
            }
            for k in crate::linalg::kernel(&m) {
                let mut w = zero_vec(n);
                for (coef, v) in k.iter().zip(&a) {
                    crate::linalg::axpy(&mut w, coef, v);
                }
                out.push(w);
            }
        }
        Self::from_homogeneous(&self.parities, out)
    }

    /// Homogeneous standard basis vectors completing `self` to the whole space,
    /// chosen greedily in index order.
    pub fn standard_complement(&self) -> Vec<usize> {
        let mut e = self.echelon.clone();
        let n = self.ambient_dim();
        (0..n).filter(|&i| e.push(crate::linalg::unit_vec(n, i))).collect()
    }
}

/// `ker M ∩ V₀ ⊕ ker M ∩ V₁` for a system of row equations; equals `ker M`
/// whenever the kernel is graded (parity-preserving or parity-shifting maps).
pub fn graded_kernel(parities: &[Parity], rows: &[Vec<Scalar>]) -> Subspace {
    let n = parities.len();
    let mut out = Vec::new();
    for par in [Parity::Even, Parity::Odd] {
        let idx: Vec<usize> = (0..n).filter(|&i| parities[i] == par).collect();
        let mut e = RowEchelon::new(idx.len());
        for row in rows {
            let r: Vec<Scalar> = idx.iter().map(|&i| row[i].clone()).collect();
            if !is_zero_vec(&r) {
                e.push(r);
            }
        }
        for kv in e.kernel() {
            let mut v = zero_vec(n);
            for (pos, &i) in idx.iter().enumerate() {
                v[i] = kv[pos].clone();
            }
            out.push(v);
        }
    }
    Subspace::from_homogeneous(parities, out)
}

/// Coordinates with respect to a basis `first ∪ second` of the whole space.
#[derive(Clone, Debug)]
pub struct SplitBasis {
    first: Vec<Vec<Scalar>>,
    second: Vec<Vec<Scalar>>,
    inverse: Matrix,
}

impl SplitBasis {
    pub fn new(first: Vec<Vec<Scalar>>, second: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = first.first().or(second.first()).map_or(0, Vec::len);
        if first.len() + second.len() != n {
            return Err(Error::DimensionMismatch {
                context: "split basis size",
                expected: n,
                found: first.len() + second.len(),
            });
        }
        let cols: Vec<Vec<Scalar>> = first.iter().chain(&second).cloned().collect();
        let m = Matrix::from_cols(&cols, n)?;
        let inverse = m
            .inverse()
            .ok_or_else(|| Error::Precondition("the two families do not form a basis".into()))?;
        Ok(Self { first, second, inverse })
    }

    pub fn first(&self) -> &[Vec<Scalar>] {
        &self.first
    }

    pub fn second(&self) -> &[Vec<Scalar>] {
        &self.second
    }

    /// Coordinates of `v` along `first` and along `second`.
    pub fn split(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut coords = self.inverse.mul_vec(v).expect("ambient dimension");
        let tail = coords.split_off(self.first.len());
        (coords, tail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    const P: [Parity; 3] = [Parity::Even, Parity::Odd, Parity::Even];

    #[test]
    fn graded_split_accepted_when_span_unchanged() {
        // (1,1,0) and (0,1,0) span a graded space
        let s = Subspace::span(&P, &[v(&[1, 1, 0]), v(&[0, 1, 0])]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.sdim(), (1, 1));
    }

    #[test]
    fn non_graded_span_rejected() {
        assert_eq!(Subspace::span(&P, &[v(&[1, 1, 0])]).unwrap_err(), Error::NotGraded);
    }

    #[test]
    fn intersection_and_complement() {
        let a = Subspace::span(&P, &[v(&[1, 0, 0]), v(&[0, 0, 1])]).unwrap();
        let b = Subspace::span(&P, &[v(&[1, 0, 1]), v(&[0, 1, 0])]).unwrap();
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(&[2, 0, 2])));
        assert_eq!(a.standard_complement(), vec![1]);
        assert!(a.sum(&b).same_as(&Subspace::full(&P)));
    }

    #[test]
    fn split_basis_coordinates() {
        let sb = SplitBasis::new(vec![v(&[1, 1, 0])], vec![v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let (a, b) = sb.split(&v(&[2, 3, 4]));
        assert_eq!(a, v(&[2]));
        assert_eq!(b, v(&[1, 4]));
    }
}
