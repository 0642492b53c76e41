//! A second multiplication engine built from the defining relations alone.
//!
//! Elements are dyadic combinations of words `ρ^a η^b ω_{n_1} ⋯ ω_{n_k}`;
//! the divided class `x_i` enters only as the word `η^i` with coefficient
//! `2^{-n(i)}`. Products are reduced by rewriting with
//!
//! * `ω_n ω_m → 2 ω_{n+m}`
//! * `ρ ω_n → 0`, `η ω_n → 0`
//! * `ρ η² → 2η`, `ρ² η → 2ρ`
//! * `ρ η → 2 − ω_0`
//!
//! until no rule applies. Normal forms are scalars, `ω_n`, `ρ^a` and `η^b`,
//! which are then read back in the integral basis. Nothing here consults the
//! closed-form structure constants in [`crate::ring::model`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::divisibility::NTable;
use crate::report::Report;
use crate::ring::{BasisElement, RingElement, RingModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("normal form has non-integral coefficient {coefficient} on {word}")]
    NonIntegral { word: String, coefficient: String },
}

/// A monomial in ρ, η and the `ω_n`; `omegas` is kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub rho: u32,
    pub eta: u32,
    pub omegas: Vec<i64>,
}

impl Word {
    pub fn unit() -> Self {
        Word {
            rho: 0,
            eta: 0,
            omegas: Vec::new(),
        }
    }

    fn times(&self, other: &Word) -> Word {
        let mut omegas = self.omegas.clone();
        omegas.extend_from_slice(&other.omegas);
        omegas.sort_unstable();
        Word {
            rho: self.rho + other.rho,
            eta: self.eta + other.eta,
            omegas,
        }
    }

    fn lowered(&self) -> Word {
        Word {
            rho: self.rho - 1,
            eta: self.eta - 1,
            omegas: self.omegas.clone(),
        }
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "rho^{} eta^{}", self.rho, self.eta)?;
        for n in &self.omegas {
            write!(f, " w[{n}]")?;
        }
        Ok(())
    }
}

type Rewrite = Vec<(BigRational, Word)>;

/// A named rewriting rule; `apply` returns `None` when it does not match.
pub struct Rule {
    pub name: &'static str,
    pub apply: fn(&Word) -> Option<Rewrite>,
}

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

pub const RULES: [Rule; 6] = [
    Rule {
        name: "w[n] w[m] -> 2 w[n+m]",
        apply: |w| {
            (w.omegas.len() >= 2).then(|| {
                let mut omegas = w.omegas[2..].to_vec();
                omegas.push(w.omegas[0] + w.omegas[1]);
                omegas.sort_unstable();
                vec![(
                    two(),
                    Word {
                        omegas,
                        ..w.clone()
                    },
                )]
            })
        },
    },
    Rule {
        name: "rho w[n] -> 0",
        apply: |w| (w.rho > 0 && !w.omegas.is_empty()).then(Vec::new),
    },
    Rule {
        name: "eta w[n] -> 0",
        apply: |w| (w.eta > 0 && !w.omegas.is_empty()).then(Vec::new),
    },
    Rule {
        name: "rho eta^2 -> 2 eta",
        apply: |w| (w.rho >= 1 && w.eta >= 2).then(|| vec![(two(), w.lowered())]),
    },
    Rule {
        name: "rho^2 eta -> 2 rho",
        apply: |w| (w.rho >= 2 && w.eta >= 1).then(|| vec![(two(), w.lowered())]),
    },
    Rule {
        name: "rho eta -> 2 - w[0]",
        apply: |w| {
            (w.rho >= 1 && w.eta >= 1).then(|| {
                let base = w.lowered();
                let mut with_free_orbit = base.clone();
                with_free_orbit.omegas.push(0);
                with_free_orbit.omegas.sort_unstable();
                vec![(two(), base), (-BigRational::one(), with_free_orbit)]
            })
        },
    },
];

/// A dyadic combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordSum {
    terms: BTreeMap<Word, BigRational>,
}

impl WordSum {
    pub fn add(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    /// Lifts a basis element to its defining word.
    pub fn from_basis(b: &BasisElement, table: &dyn NTable) -> Self {
        let mut out = WordSum::default();
        match *b {
            BasisElement::Unit => out.add(Word::unit(), BigRational::one()),
            BasisElement::Omega(n) => out.add(
                Word {
                    omegas: vec![n],
                    ..Word::unit()
                },
                BigRational::one(),
            ),
            BasisElement::RhoPow(a) => out.add(
                Word {
                    rho: a.get(),
                    ..Word::unit()
                },
                BigRational::one(),
            ),
            BasisElement::XClass(i) => {
                let denominator = BigInt::one() << table.n(i.get());
                out.add(
                    Word {
                        eta: i.get(),
                        ..Word::unit()
                    },
                    BigRational::new(BigInt::one(), denominator),
                )
            }
        }
        out
    }

    /// Formal (unreduced) product.
    pub fn times(&self, other: &WordSum) -> WordSum {
        let mut out = WordSum::default();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add(wa.times(wb), ca * cb);
            }
        }
        out
    }

    /// Rewrites to normal form, trying rules in the given order.
    pub fn normalize_with(&self, order: &[usize]) -> WordSum {
        let mut pending: Vec<(Word, BigRational)> = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        let mut done = WordSum::default();
        while let Some((word, coefficient)) = pending.pop() {
            let rewrite = order.iter().find_map(|&k| (RULES[k].apply)(&word));
            match rewrite {
                None => done.add(word, coefficient),
                Some(replacement) => {
                    for (c, w) in replacement {
                        pending.push((w, c * &coefficient));
                    }
                }
            }
        }
        done
    }

    pub fn normalize(&self) -> WordSum {
        self.normalize_with(&[0, 1, 2, 3, 4, 5])
    }

    /// Reads a normal form back in the integral basis.
    pub fn to_ring_element(&self, table: &dyn NTable) -> Result<RingElement, OracleError> {
        let mut out = RingElement::zero();
        for (word, c) in &self.terms {
            let (basis, scaled) = match (word.rho, word.eta, word.omegas.as_slice()) {
                (0, 0, []) => (BasisElement::Unit, c.clone()),
                (0, 0, [n]) => (BasisElement::Omega(*n), c.clone()),
                (a, 0, []) => (BasisElement::rho_pow(a), c.clone()),
                (0, b, []) => (
                    BasisElement::x(b),
                    c * BigRational::from_integer(BigInt::one() << table.n(b)),
                ),
                _ => unreachable!("word {word} is not in normal form"),
            };
            if !scaled.is_integer() {
                return Err(OracleError::NonIntegral {
                    word: word.to_string(),
                    coefficient: scaled.to_string(),
                });
            }
            out.add_term(basis, scaled.to_integer());
        }
        Ok(out)
    }
}

/// Product of two basis elements computed by rewriting.
pub fn oracle_mul_basis(
    a: &BasisElement,
    b: &BasisElement,
    table: &dyn NTable,
) -> Result<RingElement, OracleError> {
    WordSum::from_basis(a, table)
        .times(&WordSum::from_basis(b, table))
        .normalize()
        .to_ring_element(table)
}

/// Compares the structure-constant model with the oracle on every pair of
/// basis elements with `|stem| ≤ stem_bound` and `|weight| ≤ weight_bound`.
pub fn check_oracle_equivalence(
    model: &RingModel<'_>,
    stem_bound: i64,
    weight_bound: i64,
) -> Report {
    const SUITE: &str = "oracle";
    const MAX_LISTED: usize = 10;
    let basis = BasisElement::window(stem_bound, weight_bound);
    let mut report = Report::new();
    let mut checked = 0usize;
    let mut mismatches = 0usize;
    for a in &basis {
        for b in &basis {
            checked += 1;
            let closed = model.try_mul_basis(a, b);
            let rewritten = oracle_mul_basis(a, b, model.table());
            let agree = matches!((&closed, &rewritten), (Ok(x), Ok(y)) if x == y);
            if !agree {
                mismatches += 1;
                if mismatches <= MAX_LISTED {
                    let show = |r: &Result<RingElement, String>| match r {
                        Ok(v) => v.to_string(),
                        Err(e) => format!("error: {e}"),
                    };
                    report.record(
                        SUITE,
                        format!("{a} * {b}"),
                        false,
                        format!(
                            "closed form {} vs rewriting {}",
                            show(&closed.map_err(|e| e.to_string())),
                            show(&rewritten.map_err(|e| e.to_string()))
                        ),
                    );
                }
            }
        }
    }
    report.record(
        SUITE,
        format!("closed form = rewriting on |stem|<={stem_bound}, |weight|<={weight_bound}"),
        mismatches == 0,
        format!("{checked} pairs, {mismatches} mismatches"),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisibility::Standard;
    use crate::ring::mul_basis;

    fn int(k: i64) -> BigInt {
        BigInt::from(k)
    }

    #[test]
    fn rho_eta() {
        let expected = RingElement::scalar(int(2)) - RingElement::omega(0);
        assert_eq!(
            oracle_mul_basis(&BasisElement::RHO, &BasisElement::ETA, &Standard),
            Ok(expected)
        );
    }

    #[test]
    fn eta_rho_identities_as_words() {
        // ρη² and 2η reduce to the same normal form
        let lhs = WordSum::from_basis(&BasisElement::RHO, &Standard)
            .times(&WordSum::from_basis(&BasisElement::ETA, &Standard))
            .times(&WordSum::from_basis(&BasisElement::ETA, &Standard))
            .normalize()
            .to_ring_element(&Standard)
            .unwrap();
        assert_eq!(lhs, RingElement::term(int(2), BasisElement::ETA));
    }

    #[test]
    fn agrees_with_closed_form_on_small_window() {
        for a in BasisElement::window(10, 10) {
            for b in BasisElement::window(10, 10) {
                assert_eq!(
                    oracle_mul_basis(&a, &b, &Standard).unwrap(),
                    mul_basis(&a, &b),
                    "{a} * {b}"
                );
            }
        }
    }

    #[test]
    fn rule_order_does_not_change_normal_forms() {
        // local confluence in practice: every rule order gives the same result
        let orders: [[usize; 6]; 4] = [
            [0, 1, 2, 3, 4, 5],
            [5, 4, 3, 2, 1, 0],
            [5, 0, 1, 2, 3, 4],
            [2, 5, 1, 4, 0, 3],
        ];
        for a in BasisElement::window(9, 6) {
            for b in BasisElement::window(9, 6) {
                for c in [BasisElement::RHO, BasisElement::ETA, BasisElement::Omega(0)] {
                    let word = WordSum::from_basis(&a, &Standard)
                        .times(&WordSum::from_basis(&b, &Standard))
                        .times(&WordSum::from_basis(&c, &Standard));
                    let reference = word.normalize_with(&orders[0]);
                    for order in &orders[1..] {
                        assert_eq!(word.normalize_with(order), reference, "{a} {b} {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn equivalence_report() {
        let r = check_oracle_equivalence(&RingModel::standard(), 8, 8);
        assert!(r.passed(), "{r}");
    }
}
