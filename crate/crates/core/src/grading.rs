//! Bidegrees `(s, w)` and the support of the reduced ring.
//!
//! A bidegree `(s, w)` stands for the representation `(s - w) + w·σ`; `s` is
//! the stem, `w` the weight, and `s - w` the coweight.

use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A `(stem, weight)` pair.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree {
    pub stem: i64,
    pub weight: i64,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { stem: 0, weight: 0 };

    pub const fn new(stem: i64, weight: i64) -> Self {
        Bidegree { stem, weight }
    }

    pub const fn coweight(self) -> i64 {
        self.stem - self.weight
    }

    /// True iff the reduced ring is nonzero in this degree: stem 0 with even
    /// weight, or coweight 0.
    pub fn is_nonzero_degree(self) -> bool {
        (self.stem == 0 && self.weight % 2 == 0) || self.stem == self.weight
    }

    /// Rank of the reduced ring as a free abelian group in this degree.
    pub fn rank(self) -> u32 {
        if self == Bidegree::ZERO {
            2
        } else if self.is_nonzero_degree() {
            1
        } else {
            0
        }
    }
}

pub fn add(a: Bidegree, b: Bidegree) -> Bidegree {
    a + b
}

pub fn is_nonzero_degree(d: Bidegree) -> bool {
    d.is_nonzero_degree()
}

pub fn rank(d: Bidegree) -> u32 {
    d.rank()
}

impl Add for Bidegree {
    type Output = Bidegree;

    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree {
            stem: self.stem.checked_add(rhs.stem).expect("stem overflow"),
            weight: self
                .weight
                .checked_add(rhs.weight)
                .expect("weight overflow"),
        }
    }
}

impl Sub for Bidegree {
    type Output = Bidegree;

    fn sub(self, rhs: Bidegree) -> Bidegree {
        self + (-rhs)
    }
}

impl Neg for Bidegree {
    type Output = Bidegree;

    fn neg(self) -> Bidegree {
        Bidegree::new(-self.stem, -self.weight)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.stem, self.weight)
    }
}

impl From<(i64, i64)> for Bidegree {
    fn from((stem, weight): (i64, i64)) -> Self {
        Bidegree::new(stem, weight)
    }
}
