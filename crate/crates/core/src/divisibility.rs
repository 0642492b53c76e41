//! The functions `n(i)`, `m(i)` and `b(i)`.
//!
//! `η^i` is divisible by exactly `2^{n(i)}` and by exactly `ρ^{m(i)}` in the
//! reduced ring, and the geometric fixed points of the generator in degree
//! `(i,i)` are `2^{b(i)}` with `b(i) = i - n(i)`. All three are defined for
//! `i ≥ 1` only.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisibilityError {
    #[error("divisibility functions are defined for i >= 1, got {0}")]
    NonPositiveIndex(i64),
    #[error("index {0} is out of range")]
    IndexOutOfRange(i64),
}

fn index(i: i64) -> Result<u32, DivisibilityError> {
    if i <= 0 {
        return Err(DivisibilityError::NonPositiveIndex(i));
    }
    u32::try_from(i).map_err(|_| DivisibilityError::IndexOutOfRange(i))
}

/// Closed form of `n(i)`, 8-periodic up to a shift by 4. Requires `i ≥ 1`.
pub const fn two_adic_exponent(i: u32) -> u32 {
    let t = i / 8;
    match i % 8 {
        0 => 4 * t - 1,
        1..=4 => 4 * t,
        5 => 4 * t + 1,
        6 => 4 * t + 2,
        _ => 4 * t + 3,
    }
}

/// Closed form of `m(i)`. Requires `i ≥ 1`.
pub const fn rho_exponent(i: u32) -> u32 {
    match i % 4 {
        0 | 1 => i - 1,
        2 => i - 2,
        _ => i - 3,
    }
}

pub fn n_of(i: i64) -> Result<u32, DivisibilityError> {
    index(i).map(two_adic_exponent)
}

pub fn m_of(i: i64) -> Result<u32, DivisibilityError> {
    index(i).map(rho_exponent)
}

pub fn b_of(i: i64) -> Result<u32, DivisibilityError> {
    index(i).map(|i| i - two_adic_exponent(i))
}

/// A source of the exponent `n(i)` used by the structure constants.
///
/// [`Standard`] is the real table. [`Patched`] overrides individual values
/// and exists so the verification suites can be shown to catch a wrong table.
pub trait NTable: fmt::Debug + Send + Sync {
    /// `n(i)` for `i ≥ 1`.
    fn n(&self, i: u32) -> u32;

    /// `b(i) = i - n(i)`, signed so that broken tables surface as negative
    /// values instead of wrapping.
    fn b(&self, i: u32) -> i64 {
        i64::from(i) - i64::from(self.n(i))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Standard;

impl NTable for Standard {
    fn n(&self, i: u32) -> u32 {
        two_adic_exponent(i)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Patched {
    overrides: BTreeMap<u32, u32>,
}

impl Patched {
    pub fn new() -> Self {
        Patched::default()
    }

    pub fn with(mut self, i: u32, n: u32) -> Self {
        self.overrides.insert(i, n);
        self
    }
}

impl NTable for Patched {
    fn n(&self, i: u32) -> u32 {
        self.overrides
            .get(&i)
            .copied()
            .unwrap_or_else(|| two_adic_exponent(i))
    }
}

/// One row of the divisibility table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisibilityProfile {
    pub i: u32,
    pub n: u32,
    pub m: u32,
    pub b: u32,
}

impl DivisibilityProfile {
    pub fn of(i: i64) -> Result<Self, DivisibilityError> {
        let i = index(i)?;
        let n = two_adic_exponent(i);
        Ok(DivisibilityProfile {
            i,
            n,
            m: rho_exponent(i),
            b: i - n,
        })
    }
}

/// Rows `1..=i_max`.
pub fn table(i_max: u32) -> Vec<DivisibilityProfile> {
    (1..=i_max)
        .map(|i| DivisibilityProfile::of(i64::from(i)).expect("i >= 1"))
        .collect()
}

/// The compatibility between the 2-divisibility and ρ-divisibility of η-powers:
/// `m(i - n(i)) ≥ n(i)` and `m(i - n(i) - 1) < n(i) + 1`. The second inequality
/// is vacuous when `i - n(i) - 1 < 1`.
pub fn check_nm_compatibility(i_max: u32) -> Report {
    const SUITE: &str = "divisibility";
    let mut report = Report::new();
    for i in 1..=i_max {
        let n = two_adic_exponent(i);
        let b = i - n;
        let upper = rho_exponent(b) >= n;
        let (lower, lower_detail) = if b >= 2 {
            let m = rho_exponent(b - 1);
            (m < n + 1, format!("m({})={} < {}", b - 1, m, n + 1))
        } else {
            (true, "vacuous".to_owned())
        };
        report.record(
            SUITE,
            format!("n/m compatibility i={i}"),
            upper && lower,
            format!("m({b})={} >= n({i})={n}; {lower_detail}", rho_exponent(b)),
        );
    }
    report
}

/// Exhaustive checks of the properties the structure constants rely on.
///
/// `window` bounds single indices; superadditivity is checked for all
/// `i + j ≤ 2·window`.
pub fn check_table_invariants(table: &dyn NTable, window: u32) -> Report {
    const SUITE: &str = "divisibility";
    let mut report = Report::new();
    let n = |i: u32| i64::from(table.n(i));

    let step = (2..=2 * window).find(|&j| !matches!(n(j) - n(j - 1), 0 | 1));
    report.record(
        SUITE,
        "step bound n(j)-n(j-1) in {0,1}",
        step.is_none(),
        step.map(|j| format!("violated at j={j}"))
            .unwrap_or_default(),
    );

    let mut superadditive = None;
    'outer: for total in 2..=2 * window {
        for i in 1..total {
            if n(total) < n(i) + n(total - i) {
                superadditive = Some((i, total - i));
                break 'outer;
            }
        }
    }
    report.record(
        SUITE,
        "superadditivity n(i+j) >= n(i)+n(j)",
        superadditive.is_none(),
        superadditive
            .map(|(i, j)| format!("violated at i={i}, j={j}"))
            .unwrap_or_else(|| format!("all i+j <= {}", 2 * window)),
    );

    let periodic = (1..=window).find(|&i| n(i + 8) != n(i) + 4);
    report.record(
        SUITE,
        "periodicity n(i+8) = n(i)+4",
        periodic.is_none(),
        periodic
            .map(|i| format!("violated at i={i}"))
            .unwrap_or_default(),
    );

    let m_periodic = (1..=window).find(|&i| rho_exponent(i + 4) != rho_exponent(i) + 4);
    report.record(
        SUITE,
        "periodicity m(i+4) = m(i)+4",
        m_periodic.is_none(),
        m_periodic
            .map(|i| format!("violated at i={i}"))
            .unwrap_or_default(),
    );

    let b_bad =
        (1..=2 * window).find(|&i| table.b(i) < 1 || (i > 1 && table.b(i) < table.b(i - 1)));
    report.record(
        SUITE,
        "b nondecreasing and b >= 1",
        b_bad.is_none(),
        b_bad
            .map(|i| format!("violated at i={i}"))
            .unwrap_or_default(),
    );

    report
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `n(i)` read off the definition of divisibility: the largest `k` with
    /// `b(i) = i - k` consistent with the 8-periodic list of `b` values
    /// 1,2,3,4,4,4,4,5 (shifted by 4 every period).
    fn n_reference(i: u32) -> u32 {
        const B: [u32; 8] = [1, 2, 3, 4, 4, 4, 4, 5];
        let period = (i - 1) / 8;
        i - (B[((i - 1) % 8) as usize] + 4 * period)
    }

    #[test]
    fn n_examples() {
        assert_eq!(n_of(1), Ok(0));
        assert_eq!(n_of(8), Ok(3));
        assert_eq!(n_of(7), Ok(3));
        assert_eq!(n_of(14), Ok(6));
    }

    #[test]
    fn m_examples() {
        assert_eq!(m_of(4), Ok(3));
        assert_eq!(m_of(6), Ok(4));
        assert_eq!(m_of(7), Ok(4));
        assert_eq!(m_of(1), Ok(0));
    }

    #[test]
    fn b_examples() {
        assert_eq!(b_of(1), Ok(1));
        assert_eq!(b_of(8), Ok(5));
        assert_eq!(b_of(9), Ok(5));
    }

    #[test]
    fn non_positive_rejected() {
        for f in [n_of, m_of, b_of] {
            assert_eq!(f(0), Err(DivisibilityError::NonPositiveIndex(0)));
            assert_eq!(f(-3), Err(DivisibilityError::NonPositiveIndex(-3)));
        }
        assert!(matches!(
            n_of(i64::MAX),
            Err(DivisibilityError::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn closed_form_matches_reference() {
        for i in 1..=400 {
            assert_eq!(two_adic_exponent(i), n_reference(i), "i={i}");
        }
    }

    #[test]
    fn first_period() {
        let n: Vec<u32> = (1..=16).map(two_adic_exponent).collect();
        assert_eq!(n, [0, 0, 0, 0, 1, 2, 3, 3, 4, 4, 4, 4, 5, 6, 7, 7]);
        let m: Vec<u32> = (1..=8).map(rho_exponent).collect();
        assert_eq!(m, [0, 0, 0, 3, 4, 4, 4, 7]);
    }

    #[test]
    fn profile_invariants() {
        for row in table(64) {
            assert_eq!(row.b, row.i - row.n);
        }
        assert_eq!(
            DivisibilityProfile::of(1),
            Ok(DivisibilityProfile {
                i: 1,
                n: 0,
                m: 0,
                b: 1
            })
        );
    }

    #[test]
    fn compatibility_small_and_large() {
        assert!(check_nm_compatibility(8).passed());
        assert!(check_nm_compatibility(200).passed());
        let r = check_nm_compatibility(1);
        assert_eq!(r.items.len(), 1);
        assert!(r.items[0].detail.contains("vacuous"));
    }

    #[test]
    fn standard_table_invariants() {
        let r = check_table_invariants(&Standard, 200);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn patched_table_is_caught() {
        let broken = Patched::new().with(9, 1);
        let r = check_table_invariants(&broken, 16);
        assert!(!r.passed());
        assert_eq!(broken.n(9), 1);
        assert_eq!(broken.n(10), 4);
    }
}
