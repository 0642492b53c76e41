use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::basis::BasisElement;
use super::model::RingModel;
use crate::grading::Bidegree;

/// Exact coefficient types: `BigInt` for the integral ring, `BigRational`
/// for its rationalization.
pub trait Coefficient:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Signed
    + From<BigInt>
    + for<'a> AddAssign<&'a Self>
    + Send
    + Sync
{
}

impl Coefficient for BigInt {}
impl Coefficient for BigRational {}

/// A finite combination of basis elements with nonzero coefficients.
///
/// The map never stores a zero, so structural equality is equality in the
/// ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearCombination<C> {
    terms: BTreeMap<BasisElement, C>,
}

/// An element of the reduced ring.
pub type RingElement = LinearCombination<BigInt>;

impl<C: Coefficient> LinearCombination<C> {
    pub fn zero() -> Self {
        LinearCombination {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::basis(BasisElement::Unit)
    }

    pub fn basis(b: BasisElement) -> Self {
        Self::term(C::one(), b)
    }

    pub fn term(coefficient: C, b: BasisElement) -> Self {
        let mut out = Self::zero();
        out.add_term(b, coefficient);
        out
    }

    pub fn scalar(c: C) -> Self {
        Self::term(c, BasisElement::Unit)
    }

    pub fn rho_pow(i: u32) -> Self {
        Self::basis(BasisElement::rho_pow(i))
    }

    pub fn x(i: u32) -> Self {
        Self::basis(BasisElement::x(i))
    }

    pub fn omega(n: i64) -> Self {
        Self::basis(BasisElement::Omega(n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisElement, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: &BasisElement) -> C {
        self.terms.get(b).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, b: BasisElement, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinearCombination {
            terms: self
                .terms
                .iter()
                .map(|(b, v)| (*b, v.clone() * c.clone()))
                .collect(),
        }
    }

    /// The common degree of all terms, or `None` for zero and for
    /// inhomogeneous elements.
    pub fn degree(&self) -> Option<Bidegree> {
        let mut degrees = self.terms.keys().map(BasisElement::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// If this is `c·1`, returns `c`.
    pub fn as_scalar(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&BasisElement::Unit).cloned(),
            _ => None,
        }
    }

    /// Applies `f` to every coefficient, pruning zeros. Used for base change.
    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> LinearCombination<D> {
        let mut out = LinearCombination::zero();
        for (b, c) in &self.terms {
            out.add_term(*b, f(c));
        }
        out
    }

    pub fn pow(&self, exponent: u32) -> Self {
        RingModel::standard().pow(self, exponent)
    }
}

impl<C: Coefficient> Default for LinearCombination<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> From<BasisElement> for LinearCombination<C> {
    fn from(b: BasisElement) -> Self {
        Self::basis(b)
    }
}

impl<C: Coefficient> FromIterator<(BasisElement, C)> for LinearCombination<C> {
    fn from_iter<I: IntoIterator<Item = (BasisElement, C)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }
}

impl<C: Coefficient> Add for &LinearCombination<C> {
    type Output = LinearCombination<C>;

    fn add(self, rhs: Self) -> LinearCombination<C> {
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(*b, c.clone());
        }
        out
    }
}

impl<C: Coefficient> Add for LinearCombination<C> {
    type Output = LinearCombination<C>;

    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<C: Coefficient> Neg for &LinearCombination<C> {
    type Output = LinearCombination<C>;

    fn neg(self) -> LinearCombination<C> {
        LinearCombination {
            terms: self.terms.iter().map(|(b, c)| (*b, -c.clone())).collect(),
        }
    }
}

impl<C: Coefficient> Neg for LinearCombination<C> {
    type Output = LinearCombination<C>;

    fn neg(self) -> Self {
        -&self
    }
}

impl<C: Coefficient> Sub for &LinearCombination<C> {
    type Output = LinearCombination<C>;

    fn sub(self, rhs: Self) -> LinearCombination<C> {
        self + &(-rhs)
    }
}

impl<C: Coefficient> Sub for LinearCombination<C> {
    type Output = LinearCombination<C>;

    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

/// Multiplication with the standard structure constants.
impl<C: Coefficient> Mul for &LinearCombination<C> {
    type Output = LinearCombination<C>;

    fn mul(self, rhs: Self) -> LinearCombination<C> {
        RingModel::standard().mul(self, rhs)
    }
}

impl<C: Coefficient> Mul for LinearCombination<C> {
    type Output = LinearCombination<C>;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Coefficient> fmt::Display for LinearCombination<C> {
    /// Canonical syntax: terms in basis order, `c*name`, unit coefficients
    /// elided, `0` for the empty sum.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if *b == BasisElement::Unit {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "{magnitude}*{b}")?;
            }
        }
        Ok(())
    }
}
