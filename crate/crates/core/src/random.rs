//! Seeded random data over small rationals, for property tests and the CLI.

use rand::Rng;

use crate::cochains::{
    combine2, combine3, Cochain2Dual, FreeCoords2, FreeCoords2Dual, FreeCoords3, ScalarCochain2, ScalarCochain3,
};
use crate::linalg::{Matrix, Scalar};
use crate::parity::Parity;

/// `p/q` with `|p| ≤ 4`, `1 ≤ q ≤ 3`.
pub fn scalar<R: Rng>(rng: &mut R) -> Scalar {
    Scalar::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into())
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let x = scalar(rng);
        if x != Scalar::from_integer(0.into()) {
            return x;
        }
    }
}

pub fn vector<R: Rng>(rng: &mut R, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| scalar(rng)).collect()
}

pub fn cochain2<R: Rng>(rng: &mut R, parities: &[Parity]) -> Cochain2Dual {
    let free = FreeCoords2Dual::new(parities);
    Cochain2Dual::from_free(parities, &free, &vector(rng, free.len()))
}

pub fn cochain3<R: Rng>(rng: &mut R, parities: &[Parity]) -> ScalarCochain3 {
    let free = FreeCoords3::new(parities);
    ScalarCochain3::from_free(parities, &free, &vector(rng, free.len()))
}

pub fn scalar2<R: Rng>(rng: &mut R, parities: &[Parity]) -> ScalarCochain2 {
    let free = FreeCoords2::new(parities);
    ScalarCochain2::from_free(parities, &free, &vector(rng, free.len()))
}

/// Random element of the span of `basis`.
pub fn in_span2<R: Rng>(rng: &mut R, parities: &[Parity], basis: &[Cochain2Dual]) -> Cochain2Dual {
    combine2(parities, basis, &vector(rng, basis.len()))
}

pub fn in_span3<R: Rng>(rng: &mut R, parities: &[Parity], basis: &[ScalarCochain3]) -> ScalarCochain3 {
    combine3(parities, basis, &vector(rng, basis.len()))
}

/// A random invertible matrix preserving the grading.
pub fn graded_invertible<R: Rng>(rng: &mut R, parities: &[Parity]) -> Matrix {
    let n = parities.len();
    loop {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if parities[i] == parities[j] {
                    m[(i, j)] = scalar(rng);
                }
            }
        }
        if m.rank() == n {
            return m;
        }
    }
}
