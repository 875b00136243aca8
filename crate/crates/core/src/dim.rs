use std::fmt;

use serde::{Serialize, Serializer};

/// A homological dimension as computed under an exploration bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dim {
    Finite(u32),
    /// Every term qualifies and the resolution terminates (dominant
    /// dimension of a projective-injective module, for instance).
    Infinite,
    /// The resolution did not settle within `bound` steps.
    Unbounded {
        bound: usize,
    },
}

impl Dim {
    pub fn finite(self) -> Option<u32> {
        match self {
            Dim::Finite(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Dim::Finite(_))
    }

    /// Minimum under the order `Finite(_) < Unbounded < Infinite`.
    pub fn min(self, other: Dim) -> Dim {
        if self.rank() <= other.rank() {
            self
        } else {
            other
        }
    }

    /// Maximum under the same order.
    pub fn max(self, other: Dim) -> Dim {
        if self.rank() >= other.rank() {
            self
        } else {
            other
        }
    }

    fn rank(self) -> (u8, u32) {
        match self {
            Dim::Finite(n) => (0, n),
            Dim::Unbounded { bound } => (1, bound as u32),
            Dim::Infinite => (2, 0),
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(n) => write!(f, "{n}"),
            Dim::Infinite => write!(f, "inf"),
            Dim::Unbounded { bound } => write!(f, "> {bound}"),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Dim::Finite(n) => s.serialize_u32(*n),
            other => s.serialize_str(&other.to_string()),
        }
    }
}
