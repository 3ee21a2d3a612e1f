//! Z/2-grading bookkeeping: parities, graded bases and Koszul signs.

use std::collections::HashMap;
use std::fmt;
use std::ops::Add;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: u8) -> Self {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn flip(self) -> Self {
        Parity::from_bit(self.bit() + 1)
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// True when (-1)^(a·b) = -1, i.e. both are odd.
pub fn koszul(a: Parity, b: Parity) -> bool {
    a.is_odd() && b.is_odd()
}

/// Applies a sign: returns `-x` when `negate` holds.
pub fn signed(negate: bool, x: Scalar) -> Scalar {
    if negate {
        -x
    } else {
        x
    }
}

/// Parity of a coordinate vector: `Ok(None)` for zero, an error when it mixes parities.
pub fn vector_parity(parities: &[Parity], v: &[Scalar]) -> Result<Option<Parity>> {
    let mut seen = None;
    for (p, x) in parities.iter().zip(v) {
        if x.is_zero() {
            continue;
        }
        match seen {
            None => seen = Some(*p),
            Some(q) if q != *p => return Err(Error::NotHomogeneous("vector has both even and odd components".into())),
            _ => {}
        }
    }
    Ok(seen)
}

/// Ordered list of named basis vectors, each with a parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    names: Vec<String>,
    parities: Vec<Parity>,
    index: HashMap<String, usize>,
}

impl GradedBasis {
    pub fn new(entries: Vec<(String, Parity)>) -> Result<Self> {
        let mut index = HashMap::new();
        let mut names = Vec::with_capacity(entries.len());
        let mut parities = Vec::with_capacity(entries.len());
        for (i, (name, p)) in entries.into_iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(name));
            }
            names.push(name);
            parities.push(p);
        }
        Ok(Self { names, parities, index })
    }

    /// Even vectors `x1..xN` followed by odd vectors `y1..yM`.
    pub fn standard(even: usize, odd: usize) -> Self {
        let entries = (1..=even)
            .map(|i| (format!("x{i}"), Parity::Even))
            .chain((1..=odd).map(|i| (format!("y{i}"), Parity::Odd)))
            .collect();
        Self::new(entries).expect("generated labels are unique")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// (dim even, dim odd)
    pub fn sdim(&self) -> (usize, usize) {
        let odd = self.parities.iter().filter(|p| p.is_odd()).count();
        (self.dim() - odd, odd)
    }

    pub fn labels(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.names[i].clone()).collect()
    }

    /// The basis of `self` followed by a dual copy whose labels carry a `*` suffix.
    pub fn with_duals(&self) -> Result<Self> {
        let entries = self
            .names
            .iter()
            .cloned()
            .zip(self.parities.iter().copied())
            .chain(
                self.names
                    .iter()
                    .map(|n| format!("{n}*"))
                    .zip(self.parities.iter().copied()),
            )
            .collect();
        Self::new(entries)
    }

    /// Concatenation with a second basis (labels must stay unique).
    pub fn concat(&self, other: &GradedBasis) -> Result<Self> {
        let entries = self
            .names
            .iter()
            .cloned()
            .zip(self.parities.iter().copied())
            .chain(other.names.iter().cloned().zip(other.parities.iter().copied()))
            .collect();
        Self::new(entries)
    }
}
