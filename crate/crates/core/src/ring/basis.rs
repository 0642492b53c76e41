use std::cmp::Ordering;
use std::fmt;
use std::num::NonZeroU32;

use crate::grading::Bidegree;

/// One of the canonical additive generators of the reduced ring.
///
/// `RhoPow` and `XClass` carry nonzero exponents, so `ρ^0` and `x_0` cannot be
/// stored; the smart constructors map them to [`BasisElement::Unit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisElement {
    /// The unit, degree `(0,0)`.
    Unit,
    /// `ω_n`, degree `(0,-2n)`. `ω_0` is the free orbit `[C₂/e]`.
    Omega(i64),
    /// `ρ^i`, degree `(-i,-i)`.
    RhoPow(NonZeroU32),
    /// `x_i = η^i / 2^{n(i)}`, degree `(i,i)`. `x_1 = η`.
    XClass(NonZeroU32),
}

impl BasisElement {
    pub const ETA: BasisElement = BasisElement::XClass(NonZeroU32::MIN);
    pub const RHO: BasisElement = BasisElement::RhoPow(NonZeroU32::MIN);
    pub const FREE_ORBIT: BasisElement = BasisElement::Omega(0);

    pub fn omega(n: i64) -> Self {
        BasisElement::Omega(n)
    }

    pub fn rho_pow(i: u32) -> Self {
        NonZeroU32::new(i).map_or(BasisElement::Unit, BasisElement::RhoPow)
    }

    pub fn x(i: u32) -> Self {
        NonZeroU32::new(i).map_or(BasisElement::Unit, BasisElement::XClass)
    }

    pub fn degree(&self) -> Bidegree {
        match *self {
            BasisElement::Unit => Bidegree::ZERO,
            BasisElement::Omega(n) => {
                Bidegree::new(0, n.checked_mul(-2).expect("omega index overflow"))
            }
            BasisElement::RhoPow(i) => {
                let i = i64::from(i.get());
                Bidegree::new(-i, -i)
            }
            BasisElement::XClass(i) => {
                let i = i64::from(i.get());
                Bidegree::new(i, i)
            }
        }
    }

    fn tag(&self) -> u8 {
        match self {
            BasisElement::Unit => 0,
            BasisElement::Omega(_) => 1,
            BasisElement::RhoPow(_) => 2,
            BasisElement::XClass(_) => 3,
        }
    }

    /// Every basis element whose degree lies in the box
    /// `smin..=smax × wmin..=wmax`, in canonical order.
    pub fn in_box(smin: i64, smax: i64, wmin: i64, wmax: i64) -> Vec<BasisElement> {
        let mut out = Vec::new();
        if smin > smax || wmin > wmax {
            return out;
        }
        // ρ^i and x_i sit on the diagonal s = w.
        let lo = smin.max(wmin);
        let hi = smax.min(wmax);
        for s in lo..=hi {
            if s < 0 {
                out.push(BasisElement::rho_pow(
                    u32::try_from(-s).expect("rho exponent"),
                ));
            } else if s > 0 {
                out.push(BasisElement::x(u32::try_from(s).expect("x index")));
            }
        }
        if smin <= 0 && 0 <= smax {
            let mut w = wmin + wmin.rem_euclid(2);
            while w <= wmax {
                if w == 0 {
                    out.push(BasisElement::Unit);
                }
                out.push(BasisElement::Omega(-w / 2));
                w += 2;
            }
        }
        out.sort();
        out
    }

    /// All basis elements with `|stem| ≤ stem_bound` and `|weight| ≤ weight_bound`.
    pub fn window(stem_bound: i64, weight_bound: i64) -> Vec<BasisElement> {
        Self::in_box(-stem_bound, stem_bound, -weight_bound, weight_bound)
    }
}

impl Ord for BasisElement {
    /// Canonical order: by stem, then weight, then tag (`Unit` before `ω_0`).
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.degree(), other.degree());
        a.stem
            .cmp(&b.stem)
            .then(a.weight.cmp(&b.weight))
            .then(self.tag().cmp(&other.tag()))
    }
}

impl PartialOrd for BasisElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::Unit => f.write_str("1"),
            BasisElement::Omega(n) => write!(f, "w[{n}]"),
            BasisElement::RhoPow(i) if i.get() == 1 => f.write_str("rho"),
            BasisElement::RhoPow(i) => write!(f, "rho^{i}"),
            BasisElement::XClass(i) if i.get() == 1 => f.write_str("eta"),
            BasisElement::XClass(i) => write!(f, "x[{i}]"),
        }
    }
}
