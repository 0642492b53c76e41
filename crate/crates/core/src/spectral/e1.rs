//! Generators of the `E_1^-` page of the ρ-Bockstein spectral sequence.
//!
//! Given `x ∈ Ext_ℂ` in tri-degree `(s, f, w)`:
//!
//! * if `x` is τ-free and not τ-divisible, `γ/(ρ^a τ^b) x` for `a ≥ 0`,
//!   `b ≥ 1` sits in `(s + a, f, w + a + b + 1)`;
//! * if `x` is τ-torsion and divisible by exactly `τ^k`, `Q/(ρ^a τ^b) x` for
//!   `a ≥ 0`, `0 ≤ b ≤ k` sits in `(s + a + 1, f - 1, w + a + b + 1)`.
//!
//! `Ext_ℂ` itself is not computed; callers supply a catalog.

use std::fmt;
use std::ops::RangeInclusive;
use std::path::Path;

use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(
        "generator {label} has negative stem {stem}; Ext_C is concentrated in nonnegative stems"
    )]
    NegativeStem { label: String, stem: i64 },
    #[error("generator {label} has negative filtration {filtration}")]
    NegativeFiltration { label: String, filtration: i64 },
    #[error("reading catalog: {0}")]
    Io(#[from] std::io::Error),
}

/// `(stem, filtration, weight)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriDegree {
    pub stem: i64,
    pub filtration: i64,
    pub weight: i64,
}

impl TriDegree {
    pub const fn new(stem: i64, filtration: i64, weight: i64) -> Self {
        TriDegree {
            stem,
            filtration,
            weight,
        }
    }
}

impl fmt::Display for TriDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.stem, self.filtration, self.weight)
    }
}

/// Target degree of a ρ-Bockstein differential: stem down one, filtration
/// up one, weight unchanged.
pub fn bockstein_degree(d: TriDegree) -> TriDegree {
    TriDegree::new(d.stem - 1, d.filtration + 1, d.weight)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TauStatus {
    /// τ-free and not divisible by τ.
    Free,
    /// τ-torsion, divisible by `τ^k` but not `τ^{k+1}`.
    Torsion(u32),
}

impl fmt::Display for TauStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TauStatus::Free => f.write_str("free"),
            TauStatus::Torsion(k) => write!(f, "torsion:{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtCGenerator {
    pub label: String,
    pub degree: TriDegree,
    pub tau: TauStatus,
}

impl ExtCGenerator {
    pub fn new(
        label: impl Into<String>,
        stem: i64,
        filtration: i64,
        weight: i64,
        tau: TauStatus,
    ) -> Self {
        ExtCGenerator {
            label: label.into(),
            degree: TriDegree::new(stem, filtration, weight),
            tau,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Gamma,
    Q,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Gamma => "gamma",
            Family::Q => "Q",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct E1MinusClass {
    pub family: Family,
    pub rho_exponent: u32,
    pub tau_exponent: u32,
    pub base: String,
    pub degree: TriDegree,
}

impl E1MinusClass {
    /// `family/(ρ^a τ^b) base`, omitting trivial powers and a unit base.
    pub fn name(&self) -> String {
        let mut denominator = Vec::new();
        match self.rho_exponent {
            0 => {}
            1 => denominator.push("rho".to_owned()),
            a => denominator.push(format!("rho^{a}")),
        }
        match self.tau_exponent {
            0 => {}
            1 => denominator.push("tau".to_owned()),
            b => denominator.push(format!("tau^{b}")),
        }
        let mut name = self.family.to_string();
        match denominator.len() {
            0 => {}
            1 => name = format!("{name}/{}", denominator[0]),
            _ => name = format!("{name}/({})", denominator.join(" ")),
        }
        if self.base == "1" {
            name
        } else {
            format!("{name} {}", self.base)
        }
    }
}

/// Finite bounds on each coordinate of a tri-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriWindow {
    pub stem: RangeInclusive<i64>,
    pub filtration: RangeInclusive<i64>,
    pub weight: RangeInclusive<i64>,
}

impl TriWindow {
    pub fn contains(&self, d: &TriDegree) -> bool {
        self.stem.contains(&d.stem)
            && self.filtration.contains(&d.filtration)
            && self.weight.contains(&d.weight)
    }
}

fn gamma_degree(x: &TriDegree, a: u32, b: u32) -> TriDegree {
    let (a, b) = (i64::from(a), i64::from(b));
    TriDegree::new(x.stem + a, x.filtration, x.weight + a + b + 1)
}

fn q_degree(x: &TriDegree, a: u32, b: u32) -> TriDegree {
    let (a, b) = (i64::from(a), i64::from(b));
    TriDegree::new(x.stem + a + 1, x.filtration - 1, x.weight + a + b + 1)
}

/// All `E_1^-` generators over `catalog` whose degree lies in `window`.
///
/// Output is grouped by catalog entry, then ordered by `a`, then `b`.
pub fn enumerate_e1_minus(
    catalog: &[ExtCGenerator],
    window: &TriWindow,
) -> Result<Vec<E1MinusClass>, CatalogError> {
    if let Some(g) = catalog.iter().find(|g| g.degree.stem < 0) {
        return Err(CatalogError::NegativeStem {
            label: g.label.clone(),
            stem: g.degree.stem,
        });
    }
    let mut out = Vec::new();
    for g in catalog {
        let x = &g.degree;
        // stem and weight are nondecreasing in a and b, so the upper bounds
        // terminate both loops
        let (family, b_range): (Family, RangeInclusive<u32>) = match g.tau {
            TauStatus::Free => (Family::Gamma, 1..=u32::MAX),
            TauStatus::Torsion(k) => (Family::Q, 0..=k),
        };
        let place = |a, b| match family {
            Family::Gamma => gamma_degree(x, a, b),
            Family::Q => q_degree(x, a, b),
        };
        let mut a = 0u32;
        loop {
            let first = place(a, *b_range.start());
            if first.stem > *window.stem.end() || first.weight > *window.weight.end() {
                break;
            }
            for b in b_range.clone() {
                let d = place(a, b);
                if d.weight > *window.weight.end() {
                    break;
                }
                if window.contains(&d) {
                    out.push(E1MinusClass {
                        family,
                        rho_exponent: a,
                        tau_exponent: b,
                        base: g.label.clone(),
                        degree: d,
                    });
                }
            }
            a += 1;
        }
    }
    Ok(out)
}

/// Every class lies in a nonnegative stem, in particular never in stem −1.
pub fn validate_e1_support(classes: &[E1MinusClass]) -> Report {
    const SUITE: &str = "e1";
    let mut report = Report::new();
    let negative: Vec<String> = classes
        .iter()
        .filter(|c| c.degree.stem < 0)
        .map(|c| format!("{} at {}", c.name(), c.degree))
        .collect();
    report.record(
        SUITE,
        "all classes in stem >= 0",
        negative.is_empty(),
        if negative.is_empty() {
            format!("{} classes", classes.len())
        } else {
            negative.join("; ")
        },
    );
    let minus_one = classes.iter().filter(|c| c.degree.stem == -1).count();
    report.record(
        SUITE,
        "no classes in stem -1",
        minus_one == 0,
        format!("{minus_one} found"),
    );
    report
}

/// Parses the line-oriented catalog format `label s f w tau_status`, where
/// `tau_status` is `free` or `torsion:k`. Blank lines and `#` comments are
/// ignored.
pub fn parse_catalog(text: &str) -> Result<Vec<ExtCGenerator>, CatalogError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: String| CatalogError::Syntax {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [label, s, f, w, tau] = fields[..] else {
            return Err(syntax(format!(
                "expected 5 fields `label s f w tau_status`, found {}",
                fields.len()
            )));
        };
        let int = |name: &str, v: &str| {
            v.parse::<i64>()
                .map_err(|_| syntax(format!("{name} `{v}` is not an integer")))
        };
        let (stem, filtration, weight) =
            (int("stem", s)?, int("filtration", f)?, int("weight", w)?);
        let tau = match tau {
            "free" => TauStatus::Free,
            other => match other.strip_prefix("torsion:") {
                Some(k) => TauStatus::Torsion(k.parse().map_err(|_| {
                    syntax(format!(
                        "torsion exponent `{k}` is not a nonnegative integer"
                    ))
                })?),
                None => {
                    return Err(syntax(format!(
                        "tau status `{other}` must be `free` or `torsion:k`"
                    )))
                }
            },
        };
        if filtration < 0 {
            return Err(CatalogError::NegativeFiltration {
                label: label.to_owned(),
                filtration,
            });
        }
        out.push(ExtCGenerator::new(label, stem, filtration, weight, tau));
    }
    Ok(out)
}

pub fn load_catalog(path: &Path) -> Result<Vec<ExtCGenerator>, CatalogError> {
    parse_catalog(&std::fs::read_to_string(path)?)
}

/// Text of the bundled catalog: the unit, `h_0` and `h_1`.
pub const BUNDLED_CATALOG: &str = include_str!("../../data/ext_c_minimal.txt");

pub fn bundled_catalog() -> Vec<ExtCGenerator> {
    parse_catalog(BUNDLED_CATALOG).expect("bundled catalog parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window(s: RangeInclusive<i64>, f: RangeInclusive<i64>, w: RangeInclusive<i64>) -> TriWindow {
        TriWindow {
            stem: s,
            filtration: f,
            weight: w,
        }
    }

    #[test]
    fn bockstein_examples() {
        assert_eq!(
            bockstein_degree(TriDegree::new(0, 0, -1)),
            TriDegree::new(-1, 1, -1)
        );
        assert_eq!(
            bockstein_degree(TriDegree::new(0, 0, 0)),
            TriDegree::new(-1, 1, 0)
        );
        assert_eq!(
            bockstein_degree(TriDegree::new(5, 2, 3)),
            TriDegree::new(4, 3, 3)
        );
    }

    #[test]
    fn unit_class_gamma_family() {
        let unit = vec![ExtCGenerator::new("1", 0, 0, 0, TauStatus::Free)];
        let classes = enumerate_e1_minus(&unit, &window(0..=10, 0..=0, -10..=6)).unwrap();
        let stem_zero: Vec<_> = classes
            .iter()
            .filter(|c| c.rho_exponent == 0)
            .map(|c| (c.tau_exponent, c.degree))
            .collect();
        let expected: Vec<_> = (1..=5)
            .map(|b| (b, TriDegree::new(0, 0, i64::from(b) + 1)))
            .collect();
        assert_eq!(stem_zero, expected);
        for c in &classes {
            let (a, b) = (i64::from(c.rho_exponent), i64::from(c.tau_exponent));
            assert_eq!(c.degree, TriDegree::new(a, 0, a + b + 1));
            assert!(c.degree.weight <= 6);
        }
        // a=4 leaves only b=1
        assert_eq!(classes.iter().filter(|c| c.rho_exponent == 4).count(), 1);
        assert_eq!(classes.len(), 5 + 4 + 3 + 2 + 1);
    }

    #[test]
    fn empty_catalog() {
        let classes = enumerate_e1_minus(&[], &window(0..=10, 0..=10, 0..=10)).unwrap();
        assert!(classes.is_empty());
    }

    #[test]
    fn torsion_class_q_family() {
        let x = vec![ExtCGenerator::new("x", 1, 1, 1, TauStatus::Torsion(0))];
        let classes = enumerate_e1_minus(&x, &window(0..=3, -5..=5, -5..=5)).unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].degree, TriDegree::new(2, 0, 2));
        assert_eq!(classes[1].degree, TriDegree::new(3, 0, 3));
        assert!(classes
            .iter()
            .all(|c| c.family == Family::Q && c.tau_exponent == 0));
    }

    #[test]
    fn negative_stem_rejected() {
        let bad = vec![ExtCGenerator::new("y", -1, 0, 0, TauStatus::Free)];
        assert!(matches!(
            enumerate_e1_minus(&bad, &window(0..=1, 0..=1, 0..=1)),
            Err(CatalogError::NegativeStem { .. })
        ));
    }

    #[test]
    fn support_validation() {
        let classes =
            enumerate_e1_minus(&bundled_catalog(), &window(0..=8, 0..=4, -8..=8)).unwrap();
        assert!(validate_e1_support(&classes).passed());
        assert!(validate_e1_support(&[]).passed());
        let bogus = E1MinusClass {
            family: Family::Gamma,
            rho_exponent: 0,
            tau_exponent: 1,
            base: "z".into(),
            degree: TriDegree::new(-1, 0, 2),
        };
        let r = validate_e1_support(&[bogus]);
        assert_eq!(r.failures().count(), 2);
    }

    #[test]
    fn catalog_parsing() {
        let text = "# comment\n\nh0 0 1 0 free\nx 3 2 2 torsion:2  # trailing\n";
        let cat = parse_catalog(text).unwrap();
        assert_eq!(cat.len(), 2);
        assert_eq!(cat[1].tau, TauStatus::Torsion(2));
        assert_eq!(cat[1].degree, TriDegree::new(3, 2, 2));

        let err = parse_catalog("h0 0 1 free").unwrap_err();
        assert!(matches!(err, CatalogError::Syntax { line: 1, .. }));
        let err = parse_catalog("\nh0 0 1 0 maybe").unwrap_err();
        assert!(matches!(err, CatalogError::Syntax { line: 2, .. }));
        let err = parse_catalog("h0 0 -1 0 free").unwrap_err();
        assert!(matches!(err, CatalogError::NegativeFiltration { .. }));
        let err = parse_catalog("h0 0 1 0 torsion:-1").unwrap_err();
        assert!(matches!(err, CatalogError::Syntax { .. }));
    }

    #[test]
    fn bundled() {
        let cat = bundled_catalog();
        let labels: Vec<&str> = cat.iter().map(|g| g.label.as_str()).collect();
        assert_eq!(labels, ["1", "h0", "h1"]);
        assert_eq!(cat[1].degree, TriDegree::new(0, 1, 0));
        assert_eq!(cat[2].degree, TriDegree::new(1, 1, 1));
    }

    #[test]
    fn class_names() {
        let c = E1MinusClass {
            family: Family::Gamma,
            rho_exponent: 2,
            tau_exponent: 3,
            base: "h1".into(),
            degree: TriDegree::new(3, 1, 7),
        };
        assert_eq!(c.name(), "gamma/(rho^2 tau^3) h1");
        let c = E1MinusClass {
            rho_exponent: 0,
            tau_exponent: 0,
            family: Family::Q,
            ..c
        };
        assert_eq!(c.name(), "Q h1");
        let c = E1MinusClass {
            family: Family::Gamma,
            tau_exponent: 3,
            base: "1".into(),
            ..c
        };
        assert_eq!(c.name(), "gamma/tau^3");
    }
}
