//! The rationalized ring and its four-generator presentation.
//!
//! After tensoring with ℚ the ring is generated by `ρ`, `η`, `ω_1`, `ω_{-1}`
//! subject to
//!
//! ```text
//! ω_1 ω_{-1} = 4 - 2ρη
//! ρ ω_{±1} = η ω_{±1} = 0
//! ρ (2 - ρη) = η (2 - ρη) = 0
//! ```
//!
//! Elements are computed with the integral structure constants; the
//! presentation is checked against them by [`check_rational_iso`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::divisibility::two_adic_exponent;
use crate::grading::Bidegree;
use crate::report::Report;
use crate::ring::{BasisElement, LinearCombination, RingElement, RingModel};

/// An element of the rationalized ring.
pub type RationalElement = LinearCombination<BigRational>;

pub fn rationalize(a: &RingElement) -> RationalElement {
    a.map_coefficients(|c| BigRational::from_integer(c.clone()))
}

pub fn mul_rational(a: &RationalElement, b: &RationalElement) -> RationalElement {
    RingModel::standard().mul(a, b)
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `ρ^rho η^eta ω_1^omega_plus ω_{-1}^omega_minus`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub rho: u32,
    pub eta: u32,
    pub omega_plus: u32,
    pub omega_minus: u32,
}

impl Monomial {
    pub fn degree(&self) -> Bidegree {
        let stem = i64::from(self.eta) - i64::from(self.rho);
        let weight = stem - 2 * i64::from(self.omega_plus) + 2 * i64::from(self.omega_minus);
        Bidegree::new(stem, weight)
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial {
            rho: self.rho + other.rho,
            eta: self.eta + other.eta,
            omega_plus: self.omega_plus + other.omega_plus,
            omega_minus: self.omega_minus + other.omega_minus,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [
            ("rho", self.rho),
            ("eta", self.eta),
            ("w[1]", self.omega_plus),
            ("w[-1]", self.omega_minus),
        ]
        .into_iter()
        .filter(|(_, e)| *e > 0)
        .map(|(g, e)| {
            if e == 1 {
                g.to_owned()
            } else {
                format!("{g}^{e}")
            }
        })
        .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// A formal ℚ-combination of monomials in the four generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PresentationWord {
    terms: BTreeMap<Monomial, BigRational>,
}

impl PresentationWord {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(BigRational::one(), m)
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut w = Self::zero();
        w.add_term(m, c);
        w
    }

    pub fn scalar(c: BigRational) -> Self {
        Self::term(c, Monomial::default())
    }

    pub fn rho() -> Self {
        Self::monomial(Monomial {
            rho: 1,
            ..Default::default()
        })
    }

    pub fn eta() -> Self {
        Self::monomial(Monomial {
            eta: 1,
            ..Default::default()
        })
    }

    pub fn omega_plus() -> Self {
        Self::monomial(Monomial {
            omega_plus: 1,
            ..Default::default()
        })
    }

    pub fn omega_minus() -> Self {
        Self::monomial(Monomial {
            omega_minus: 1,
            ..Default::default()
        })
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::scalar(BigRational::one()), |acc, _| &acc * self)
    }
}

impl Add for &PresentationWord {
    type Output = PresentationWord;

    fn add(self, rhs: Self) -> PresentationWord {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &PresentationWord {
    type Output = PresentationWord;

    fn sub(self, rhs: Self) -> PresentationWord {
        self + &rhs.scale(&-BigRational::one())
    }
}

impl Mul for &PresentationWord {
    type Output = PresentationWord;

    fn mul(self, rhs: Self) -> PresentationWord {
        let mut out = PresentationWord::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(*mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for PresentationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            if *m == Monomial::default() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Image of a monomial under `ρ ↦ ρ`, `η ↦ x_1`, `ω_{±1} ↦ ω_{±1}`.
fn reduce_monomial(m: &Monomial) -> RationalElement {
    let model = RingModel::standard();
    let factors = [
        RationalElement::rho_pow(m.rho),
        model.pow(&RationalElement::x(1), m.eta),
        model.pow(&RationalElement::omega(1), m.omega_plus),
        model.pow(&RationalElement::omega(-1), m.omega_minus),
    ];
    factors
        .iter()
        .fold(RationalElement::one(), |acc, f| model.mul(&acc, f))
}

/// Evaluates a presentation word in the basis model.
pub fn reduce_word(w: &PresentationWord) -> RationalElement {
    let mut out = RationalElement::zero();
    for (m, c) in w.terms() {
        for (b, v) in reduce_monomial(m).terms() {
            out.add_term(*b, v * c);
        }
    }
    out
}

/// The word that the surjectivity check uses for a basis element.
pub fn preimage_word(b: &BasisElement) -> PresentationWord {
    let two = q(2);
    match *b {
        BasisElement::Unit => PresentationWord::scalar(BigRational::one()),
        BasisElement::Omega(0) => {
            &PresentationWord::scalar(two) - &(&PresentationWord::rho() * &PresentationWord::eta())
        }
        BasisElement::Omega(n) => {
            let k = u32::try_from(n.unsigned_abs()).expect("omega index fits u32");
            let generator = if n > 0 {
                PresentationWord::omega_plus()
            } else {
                PresentationWord::omega_minus()
            };
            let scale = BigRational::new(BigInt::one(), BigInt::one() << (k - 1));
            generator.pow(k).scale(&scale)
        }
        BasisElement::RhoPow(i) => PresentationWord::rho().pow(i.get()),
        BasisElement::XClass(i) => {
            let scale =
                BigRational::new(BigInt::one(), BigInt::one() << two_adic_exponent(i.get()));
            PresentationWord::eta().pow(i.get()).scale(&scale)
        }
    }
}

/// The image of `a` under the inverse of the presentation map.
pub fn presentation_of(a: &RationalElement) -> PresentationWord {
    a.terms().fold(PresentationWord::zero(), |acc, (b, c)| {
        &acc + &preimage_word(b).scale(c)
    })
}

/// The relations of the rational presentation, as `(name, lhs - rhs)`.
pub fn relation_words() -> Vec<(&'static str, PresentationWord)> {
    let rho = PresentationWord::rho();
    let eta = PresentationWord::eta();
    let wp = PresentationWord::omega_plus();
    let wm = PresentationWord::omega_minus();
    let rho_eta = &rho * &eta;
    let two_minus = &PresentationWord::scalar(q(2)) - &rho_eta;
    let four_minus = &PresentationWord::scalar(q(4)) - &rho_eta.scale(&q(2));
    vec![
        ("w[1]*w[-1] = 4 - 2*rho*eta", &(&wp * &wm) - &four_minus),
        ("rho*w[1] = 0", &rho * &wp),
        ("rho*w[-1] = 0", &rho * &wm),
        ("eta*w[1] = 0", &eta * &wp),
        ("eta*w[-1] = 0", &eta * &wm),
        ("rho*(2 - rho*eta) = 0", &rho * &two_minus),
        ("eta*(2 - rho*eta) = 0", &eta * &two_minus),
    ]
}

/// Rank over ℚ of a family of vectors given as sparse maps.
#[allow(clippy::needless_range_loop)]
fn rational_rank(vectors: &[RationalElement], coords: &[BasisElement]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|v| coords.iter().map(|b| v.coefficient(b)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..coords.len() {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = &rows[r][col] / &p;
                for c in col..coords.len() {
                    let delta = &rows[rank][c] * &factor;
                    rows[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Checks, on `|stem|, |weight| ≤ window`, that the presentation maps onto the
/// rationalized basis, that its relations hold, and that the image has the
/// expected rank in every degree.
pub fn check_rational_iso(window: u32) -> Report {
    const SUITE: &str = "rational";
    let mut report = Report::new();
    let bound = i64::from(window);

    // (a) surjectivity
    let mut unreached = Vec::new();
    let basis = BasisElement::window(bound, bound);
    for b in &basis {
        let image = reduce_word(&preimage_word(b));
        if image != RationalElement::basis(*b) {
            unreached.push(format!("{b} <- {} gave {image}", preimage_word(b)));
        }
    }
    report.record(
        SUITE,
        format!("surjectivity on |s|,|w|<={window}"),
        unreached.is_empty(),
        if unreached.is_empty() {
            format!("{} basis elements", basis.len())
        } else {
            unreached.join("; ")
        },
    );
    for (name, word, expected) in [
        (
            "w[2] = 1/2*w[1]^2",
            PresentationWord::omega_plus()
                .pow(2)
                .scale(&BigRational::new(1.into(), 2.into())),
            RationalElement::omega(2),
        ),
        (
            "x[2] = eta^2",
            PresentationWord::eta().pow(2),
            RationalElement::x(2),
        ),
    ] {
        let image = reduce_word(&word);
        report.record(SUITE, name, image == expected, image.to_string());
    }

    // (b) relations
    for (name, word) in relation_words() {
        let image = reduce_word(&word);
        report.record(SUITE, name, image.is_zero(), image.to_string());
    }

    // (c) rank of the image in each degree
    let limit = window + 2;
    let mut images: BTreeMap<Bidegree, Vec<RationalElement>> = BTreeMap::new();
    for rho in 0..=limit {
        for eta in 0..=limit - rho {
            for omega_plus in 0..=limit - rho - eta {
                for omega_minus in 0..=limit - rho - eta - omega_plus {
                    let m = Monomial {
                        rho,
                        eta,
                        omega_plus,
                        omega_minus,
                    };
                    let d = m.degree();
                    if d.stem.abs() > bound || d.weight.abs() > bound {
                        continue;
                    }
                    let image = reduce_monomial(&m);
                    if !image.is_zero() {
                        images.entry(d).or_default().push(image);
                    }
                }
            }
        }
    }
    let mut rank_bad = Vec::new();
    let mut degrees = 0;
    for s in -bound..=bound {
        for w in -bound..=bound {
            let d = Bidegree::new(s, w);
            let coords = BasisElement::in_box(s, s, w, w);
            let vectors = images.get(&d).map(Vec::as_slice).unwrap_or(&[]);
            let r = rational_rank(vectors, &coords);
            degrees += 1;
            if r as u32 != d.rank() {
                rank_bad.push(format!("{d}: image rank {r}, expected {}", d.rank()));
            }
        }
    }
    report.record(
        SUITE,
        format!("rank agreement on |s|,|w|<={window}"),
        rank_bad.is_empty(),
        if rank_bad.is_empty() {
            format!("{degrees} degrees")
        } else {
            rank_bad.join("; ")
        },
    );
    let origin = [
        RationalElement::one(),
        reduce_word(&(&PresentationWord::rho() * &PresentationWord::eta())),
    ];
    let r = rational_rank(&origin, &BasisElement::in_box(0, 0, 0, 0));
    report.record(
        SUITE,
        "rank 2 at (0,0) spanned by {1, rho*eta}",
        r == 2,
        format!("rank {r}"),
    );

    report
}
