//! Cyclic vertex orders around the spine.
//!
//! Spine positions are 0-based and run clockwise: `seq[p]` is the vertex at
//! position `p`. Vertex labels are 1-based. Under this convention the odd
//! labels of a YSL order sit at the *even* positions `0, 2, 4, ...`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circulant::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("order needs an even number of vertices, got {0}")]
    OddSize(u32),
    #[error("order needs at least {min} vertices, got {n}")]
    TooSmall { n: u32, min: u32 },
    #[error("label {0} appears more than once")]
    DuplicateLabel(Vertex),
    #[error("label {label} is outside 1..={n}")]
    LabelOutOfRange { label: Vertex, n: u32 },
    #[error("label {0} is missing from the order")]
    MissingLabel(Vertex),
}

/// A bijection from clockwise positions `0..n` to labels `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct CyclicOrder {
    seq: Vec<Vertex>,
    position: Vec<u32>,
}

impl CyclicOrder {
    /// Wraps a permutation of `1..=n`.
    pub fn from_sequence(seq: Vec<Vertex>) -> Result<Self, OrderError> {
        let n = seq.len() as u32;
        let mut position = vec![u32::MAX; seq.len()];
        for (p, &label) in seq.iter().enumerate() {
            if label == 0 || label > n {
                return Err(OrderError::LabelOutOfRange { label, n });
            }
            let slot = &mut position[(label - 1) as usize];
            if *slot != u32::MAX {
                return Err(OrderError::DuplicateLabel(label));
            }
            *slot = p as u32;
        }
        // n distinct labels in 1..=n cannot miss one; kept for clarity of the
        // error surface if the checks above change.
        if let Some(i) = position.iter().position(|&p| p == u32::MAX) {
            return Err(OrderError::MissingLabel(i as u32 + 1));
        }
        Ok(CyclicOrder { seq, position })
    }

    /// The natural clockwise order `1, 2, ..., n`.
    pub fn natural(n: u32) -> Self {
        Self::from_sequence((1..=n).collect()).expect("identity is a permutation")
    }

    pub fn len(&self) -> u32 {
        self.seq.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn sequence(&self) -> &[Vertex] {
        &self.seq
    }

    pub fn into_sequence(self) -> Vec<Vertex> {
        self.seq
    }

    pub fn vertex_at(&self, position: u32) -> Vertex {
        self.seq[position as usize]
    }

    /// Position of `label`, which must be in `1..=n`.
    pub fn position_of(&self, label: Vertex) -> u32 {
        self.position[(label - 1) as usize]
    }

    pub fn try_position_of(&self, label: Vertex) -> Option<u32> {
        (label >= 1)
            .then(|| self.position.get((label - 1) as usize).copied())
            .flatten()
    }

    /// Shifts every vertex `k` positions clockwise.
    pub fn rotated(&self, k: u32) -> Self {
        let n = self.seq.len();
        if n == 0 {
            return self.clone();
        }
        let k = k as usize % n;
        let seq = (0..n).map(|p| self.seq[(p + n - k) % n]).collect();
        Self::from_sequence(seq).expect("rotation is a permutation")
    }

    /// Mirror image: position `p` goes to `-p mod n`.
    pub fn reflected(&self) -> Self {
        let n = self.seq.len();
        let seq = (0..n).map(|p| self.seq[(n - p) % n]).collect();
        Self::from_sequence(seq).expect("reflection is a permutation")
    }

    /// Lexicographically least sequence over all rotations and reflections.
    pub fn canonical(&self) -> Self {
        let n = self.seq.len();
        if n == 0 {
            return self.clone();
        }
        let mut best: Option<Vec<Vertex>> = None;
        for start in 0..n {
            let forward = (0..n).map(|i| self.seq[(start + i) % n]);
            let backward = (0..n).map(|i| self.seq[(start + n - i) % n]);
            for candidate in [forward.collect::<Vec<_>>(), backward.collect()] {
                if best.as_ref().is_none_or(|b| candidate < *b) {
                    best = Some(candidate);
                }
            }
        }
        Self::from_sequence(best.unwrap()).expect("dihedral image is a permutation")
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }
}

impl TryFrom<Vec<Vertex>> for CyclicOrder {
    type Error = OrderError;

    fn try_from(seq: Vec<Vertex>) -> Result<Self, Self::Error> {
        Self::from_sequence(seq)
    }
}

impl From<CyclicOrder> for Vec<Vertex> {
    fn from(order: CyclicOrder) -> Self {
        order.seq
    }
}

impl fmt::Display for CyclicOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.seq.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Lexicographically least sequence over the dihedral images of `order`.
pub fn canonical_rotation_reflections(order: &CyclicOrder) -> CyclicOrder {
    order.canonical()
}

fn check_even(n: u32) -> Result<u32, OrderError> {
    if n % 2 == 1 {
        return Err(OrderError::OddSize(n));
    }
    if n < 4 {
        return Err(OrderError::TooSmall { n, min: 4 });
    }
    Ok(n / 2)
}

/// The YSL order on `n = 2k` vertices, `k >= 2`.
///
/// Odd labels ascend clockwise over the even positions, even labels descend
/// clockwise over the odd positions, and 2 sits just counterclockwise of 1:
/// `1, 2k, 3, 2k-2, 5, ..., 4, 2k-1, 2`.
pub fn ysl_order(n: u32) -> Result<CyclicOrder, OrderError> {
    check_even(n).map(ysl_sequence)
}

// Valid for every k >= 1; k = 1 only arises for K2 decomposition components.
pub(crate) fn ysl_sequence(k: u32) -> CyclicOrder {
    let seq = (0..k).flat_map(|j| [2 * j + 1, 2 * k - 2 * j]).collect();
    CyclicOrder::from_sequence(seq).expect("YSL sequence is a permutation")
}

/// Overbay's order, realized as the natural order `1, 2, ..., n`.
pub fn overbay_order(n: u32) -> Result<CyclicOrder, OrderError> {
    check_even(n)?;
    Ok(CyclicOrder::natural(n))
}
