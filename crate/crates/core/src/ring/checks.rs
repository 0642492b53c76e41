//! Verification suites run against a [`RingModel`].
//!
//! The model is built from closed-form structure constants, so the ring
//! presentation (generators `ρ`, `ω_n`, `x_i` for `i ≡ ±1 mod 8`, and the four
//! relation families) is checked here rather than used as an engine.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::basis::BasisElement;
use super::characters::char_underlying;
use super::element::RingElement;
use super::model::{RingError, RingModel};
use crate::divisibility::rho_exponent;
use crate::report::Report;

fn int(k: i64) -> BigInt {
    BigInt::from(k)
}

fn show(r: &Result<RingElement, RingError>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn compare(
    report: &mut Report,
    suite: &str,
    name: String,
    lhs: Result<RingElement, RingError>,
    rhs: Result<RingElement, RingError>,
) {
    let passed = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
    report.record(
        suite,
        name,
        passed,
        format!("{} = {}", show(&lhs), show(&rhs)),
    );
}

/// A factorization found for a coweight-zero class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub rho: u32,
    pub factors: Vec<u32>,
    pub sign: i8,
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.sign < 0 {
            f.write_str("-")?;
        }
        let mut parts: Vec<String> = Vec::new();
        if self.rho > 0 {
            parts.push(BasisElement::rho_pow(self.rho).to_string());
        }
        parts.extend(self.factors.iter().map(|&j| BasisElement::x(j).to_string()));
        f.write_str(&parts.join("*"))
    }
}

/// Whether `x_j` is one of the ring generators (`j ≡ 1, 7 mod 8`).
pub fn is_ring_generator_index(j: u32) -> bool {
    matches!(j % 8, 1 | 7)
}

/// Searches for `x_i = ±ρ^a · x_{j_1} ⋯ x_{j_k}` with every `j ≡ 1, 7 mod 8`,
/// `a ≤ 7`, and at most `max_factors` factors.
pub fn find_generator_witness(
    model: &RingModel<'_>,
    i: u32,
    max_factors: usize,
) -> Option<Witness> {
    let target = BasisElement::x(i);
    let generators: Vec<u32> = (1..=i + 7)
        .filter(|&j| is_ring_generator_index(j))
        .collect();

    // depth-first over nondecreasing factor lists
    fn search(
        model: &RingModel<'_>,
        generators: &[u32],
        i: u32,
        start: usize,
        factors: &mut Vec<u32>,
        max_factors: usize,
        target: BasisElement,
    ) -> Option<Witness> {
        let total: u32 = factors.iter().sum();
        if !factors.is_empty() && total >= i && total - i <= 7 {
            let rho = total - i;
            let mut product = RingElement::rho_pow(rho);
            for &j in factors.iter() {
                product = model.try_mul(&product, &RingElement::x(j)).ok()?;
            }
            if product.len() == 1 {
                let c = product.coefficient(&target);
                if c.abs().is_one() {
                    return Some(Witness {
                        rho,
                        factors: factors.clone(),
                        sign: if c.is_negative() { -1 } else { 1 },
                    });
                }
            }
        }
        if factors.len() == max_factors || total > i + 7 {
            return None;
        }
        for k in start..generators.len() {
            factors.push(generators[k]);
            let found = search(model, generators, i, k, factors, max_factors, target);
            factors.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    search(
        model,
        &generators,
        i,
        0,
        &mut Vec::new(),
        max_factors,
        target,
    )
}

/// Every relation of the ring presentation, instantiated within `window`:
/// `|stem| ≤ window` and `|weight| ≤ window`.
pub fn check_presentation(model: &RingModel<'_>, window: u32) -> Report {
    const SUITE: &str = "presentation";
    let mut report = Report::new();
    let w = window;
    let x = |i: u32| RingElement::x(i);
    let rho = |i: u32| RingElement::rho_pow(i);
    let omega = |n: i64| RingElement::omega(n);
    let two = RingElement::scalar(int(2));
    let mul = |a: &RingElement, b: &RingElement| model.try_mul(a, b);

    // 2 = ω_0 + ρη
    compare(
        &mut report,
        SUITE,
        "2 = w[0] + rho*eta".into(),
        Ok(two.clone()),
        mul(&rho(1), &x(1)).map(|p| &omega(0) + &p),
    );

    // ω_n ω_m = 2 ω_{n+m}
    let half = i64::from(w / 2);
    let mut bad = Vec::new();
    let mut count = 0;
    for n in -half..=half {
        for m in -half..=half {
            if (n + m).abs() > half {
                continue;
            }
            count += 1;
            let lhs = mul(&omega(n), &omega(m));
            let rhs = Ok(RingElement::term(int(2), BasisElement::Omega(n + m)));
            if lhs != rhs {
                bad.push(format!("n={n},m={m}: {}", show(&lhs)));
            }
        }
    }
    report.record(
        SUITE,
        "w[n]*w[m] = 2*w[n+m]",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{count} pairs")
        } else {
            bad.join("; ")
        },
    );

    // i ≡ 1 mod 8: η^3 x_i = ρ^3 x_{i+6};  i ≡ 7 mod 8: η x_i = ρ x_{i+2}
    for i in (1..=w).filter(|i| i % 8 == 1 && i + 6 <= w) {
        compare(
            &mut report,
            SUITE,
            format!("eta^3*x[{i}] = rho^3*x[{}]", i + 6),
            model.try_pow(&x(1), 3).and_then(|e3| mul(&e3, &x(i))),
            mul(&rho(3), &x(i + 6)),
        );
        // With 2^{m(i+6)} in place of 2^{n(i+6)} the right side is not even
        // an element: η^{i+6} is not divisible by that power of 2.
        let n = model.n(i + 6);
        let m = i64::from(rho_exponent(i + 6));
        report.note(
            SUITE,
            format!("eta-power exponent for x[{}]", i + 6),
            format!(
                "checked with n({j})={n}; with m({j})={m} instead, 2^{m} {} eta^{j}",
                if m > n { "does not divide" } else { "divides" },
                j = i + 6,
            ),
        );
    }
    for i in (1..=w).filter(|i| i % 8 == 7 && i + 2 <= w) {
        compare(
            &mut report,
            SUITE,
            format!("eta*x[{i}] = rho*x[{}]", i + 2),
            mul(&x(1), &x(i)),
            mul(&rho(1), &x(i + 2)),
        );
    }

    // ρ ω_n = 0 = x_i ω_n
    let mut bad = Vec::new();
    for n in -half..=half {
        match mul(&rho(1), &omega(n)) {
            Ok(p) if p.is_zero() => {}
            other => bad.push(format!("rho*w[{n}] = {}", show(&other))),
        }
        for i in 1..=w {
            match mul(&x(i), &omega(n)) {
                Ok(p) if p.is_zero() => {}
                other => bad.push(format!("x[{i}]*w[{n}] = {}", show(&other))),
            }
        }
    }
    report.record(
        SUITE,
        "rho*w[n] = 0 = x[i]*w[n]",
        bad.is_empty(),
        bad.join("; "),
    );

    // 2η = ρη², 2ρ = ρ²η
    compare(
        &mut report,
        SUITE,
        "2*eta = rho*eta^2".into(),
        Ok(RingElement::term(int(2), BasisElement::ETA)),
        model.try_pow(&x(1), 2).and_then(|e2| mul(&rho(1), &e2)),
    );
    compare(
        &mut report,
        SUITE,
        "2*rho = rho^2*eta".into(),
        Ok(RingElement::term(int(2), BasisElement::RHO)),
        mul(&rho(2), &x(1)),
    );

    // [C₂/e] = 2 - ρη kills η and ρ
    let free_orbit = mul(&rho(1), &x(1)).map(|p| &two - &p);
    for (label, g) in [("eta", x(1)), ("rho", rho(1))] {
        let product = free_orbit.clone().and_then(|c| mul(&c, &g));
        compare(
            &mut report,
            SUITE,
            format!("(2 - rho*eta)*{label} = 0"),
            product,
            Ok(RingElement::zero()),
        );
    }

    // every x_i is ± a monomial in generators
    let mut missing = Vec::new();
    let mut witnesses = Vec::new();
    for i in 1..=w {
        match find_generator_witness(model, i, 4) {
            Some(wit) => witnesses.push(format!("x[{i}]={wit}")),
            None => missing.push(i),
        }
    }
    report.record(
        SUITE,
        format!("generator sufficiency x[1..={w}]"),
        missing.is_empty(),
        if missing.is_empty() {
            witnesses.join(", ")
        } else {
            format!("no factorization for x[{missing:?}]")
        },
    );

    report
}

/// Grading, commutativity, associativity, torsion-freeness and unique
/// divisibility of η-powers.
///
/// Pairs range over `|stem|, |weight| ≤ pair_bound`; associativity triples
/// over `|stem|, |weight| ≤ triple_bound`.
pub fn check_axioms(model: &RingModel<'_>, pair_bound: u32, triple_bound: u32) -> Report {
    const SUITE: &str = "axioms";
    let mut report = Report::new();
    let pairs = BasisElement::window(i64::from(pair_bound), i64::from(pair_bound));

    let mut grading_bad = Vec::new();
    let mut comm_bad = Vec::new();
    for a in &pairs {
        for b in &pairs {
            let ab = model.try_mul_basis(a, b);
            let ba = model.try_mul_basis(b, a);
            if let Ok(p) = &ab {
                let target = a.degree() + b.degree();
                if p.terms().any(|(t, _)| t.degree() != target) {
                    grading_bad.push(format!("{a}*{b}"));
                }
            }
            if ab.is_err() || ab != ba {
                comm_bad.push(format!("{a}*{b}"));
            }
        }
    }
    let n_pairs = pairs.len() * pairs.len();
    report.record(
        SUITE,
        format!("grading on |s|,|w|<={pair_bound}"),
        grading_bad.is_empty(),
        summarize(n_pairs, &grading_bad),
    );
    report.record(
        SUITE,
        format!("commutativity on |s|,|w|<={pair_bound}"),
        comm_bad.is_empty(),
        summarize(n_pairs, &comm_bad),
    );

    let triples = BasisElement::window(i64::from(triple_bound), i64::from(triple_bound));
    let mut assoc_bad = Vec::new();
    for a in &triples {
        for b in &triples {
            let ab = match model.try_mul_basis(a, b) {
                Ok(v) => v,
                Err(_) => {
                    assoc_bad.push(format!("{a}*{b}"));
                    continue;
                }
            };
            for c in &triples {
                let left = model.try_mul(&ab, &RingElement::basis(*c));
                let right = model
                    .try_mul_basis(b, c)
                    .and_then(|bc| model.try_mul(&RingElement::basis(*a), &bc));
                if left.is_err() || left != right {
                    assoc_bad.push(format!("({a}*{b})*{c}"));
                }
            }
        }
    }
    report.record(
        SUITE,
        format!("associativity on |s|,|w|<={triple_bound}"),
        assoc_bad.is_empty(),
        summarize(triples.len().pow(3), &assoc_bad),
    );

    let torsion = pairs.iter().find(|b| {
        (-5i64..=5)
            .filter(|k| *k != 0)
            .any(|k| RingElement::term(int(k), **b).is_zero())
    });
    report.record(
        SUITE,
        "torsion-free: k*b != 0 for k != 0",
        torsion.is_none(),
        torsion.map(|b| b.to_string()).unwrap_or_default(),
    );

    let mut divis_bad = Vec::new();
    for i in 1..=pair_bound {
        let eta_power = model.try_pow(&RingElement::x(1), i);
        let n = crate::divisibility::two_adic_exponent(i);
        let expected = RingElement::term(BigInt::one() << n, BasisElement::x(i));
        match &eta_power {
            Ok(p) if *p == expected => {
                // exactly 2^{n(i)}: not divisible by 2^{n(i)+1}
                let c = p.coefficient(&BasisElement::x(i));
                if (c % (BigInt::one() << (n + 1))).is_zero() {
                    divis_bad.push(format!("eta^{i} divisible by 2^{}", n + 1));
                }
            }
            other => divis_bad.push(format!("eta^{i} = {}", show(other))),
        }
    }
    report.record(
        SUITE,
        format!("eta^i = 2^n(i)*x[i] for i<={pair_bound}"),
        divis_bad.is_empty(),
        divis_bad.join("; "),
    );

    report
}

fn summarize(total: usize, bad: &[String]) -> String {
    if bad.is_empty() {
        format!("{total} cases")
    } else {
        let shown: Vec<&str> = bad.iter().take(10).map(String::as_str).collect();
        format!("{} of {total} failed: {}", bad.len(), shown.join(", "))
    }
}

/// Multiplicativity of both characters on basis pairs, spot values, and
/// `2 = ω_0 + ρη` under each character.
pub fn check_characters(model: &RingModel<'_>, window: u32) -> Report {
    const SUITE: &str = "characters";
    let mut report = Report::new();
    let basis = BasisElement::window(i64::from(window), i64::from(window));
    let fixed = |e: &RingElement| model.try_char_fixed(e);

    let mut under_bad = Vec::new();
    let mut fixed_bad = Vec::new();
    for a in &basis {
        for b in &basis {
            let (ea, eb) = (RingElement::basis(*a), RingElement::basis(*b));
            let Ok(ab) = model.try_mul_basis(a, b) else {
                under_bad.push(format!("{a}*{b}"));
                fixed_bad.push(format!("{a}*{b}"));
                continue;
            };
            if char_underlying(&ab) != char_underlying(&ea) * char_underlying(&eb) {
                under_bad.push(format!("{a}*{b}"));
            }
            let ok = matches!(
                (fixed(&ab), fixed(&ea), fixed(&eb)),
                (Ok(p), Ok(x), Ok(y)) if p == &x * &y
            );
            if !ok {
                fixed_bad.push(format!("{a}*{b}"));
            }
        }
    }
    let total = basis.len() * basis.len();
    report.record(
        SUITE,
        "phi_e multiplicative",
        under_bad.is_empty(),
        summarize(total, &under_bad),
    );
    report.record(
        SUITE,
        "phi_fix multiplicative",
        fixed_bad.is_empty(),
        summarize(total, &fixed_bad),
    );

    let half = i64::from(window / 2);
    let omega_bad: Vec<i64> = (-half..=half)
        .filter(|&n| char_underlying(&RingElement::omega(n)) != int(2))
        .collect();
    report.record(
        SUITE,
        format!("phi_e(w[n]) = 2 for |n|<={half}"),
        omega_bad.is_empty(),
        format!("{omega_bad:?}"),
    );

    let x_bad: Vec<u32> = (1..=window)
        .filter(|&i| {
            let b = i - crate::divisibility::two_adic_exponent(i);
            fixed(&RingElement::x(i)).ok() != Some(BigInt::one() << b)
        })
        .collect();
    report.record(
        SUITE,
        format!("phi_fix(x[i]) = 2^b(i) for i<={window}"),
        x_bad.is_empty(),
        format!("{x_bad:?}"),
    );

    let rho_bad: Vec<u32> = (1..=window)
        .filter(|&i| fixed(&RingElement::rho_pow(i)).ok() != Some(BigInt::one()))
        .collect();
    report.record(
        SUITE,
        format!("phi_fix(rho^i) = 1 for i<={window}"),
        rho_bad.is_empty(),
        format!("{rho_bad:?}"),
    );

    let two = RingElement::scalar(int(2));
    let w0 = RingElement::omega(0);
    match model.try_mul(&RingElement::rho_pow(1), &RingElement::x(1)) {
        Ok(rho_eta) => {
            let (f2, fw, fr) = (fixed(&two), fixed(&w0), fixed(&rho_eta));
            let fixed_ok = matches!(
                (&f2, &fw, &fr),
                (Ok(a), Ok(b), Ok(c)) if *a == int(2) && b.is_zero() && *c == int(2)
            );
            report.record(
                SUITE,
                "phi_fix: 2 = phi_fix(w[0]) + phi_fix(rho*eta)",
                fixed_ok,
                format!("{f2:?} = {fw:?} + {fr:?}"),
            );
            let (u2, uw, ur) = (
                char_underlying(&two),
                char_underlying(&w0),
                char_underlying(&rho_eta),
            );
            report.record(
                SUITE,
                "phi_e: 2 = phi_e(w[0]) + phi_e(rho*eta)",
                u2 == int(2) && uw == int(2) && ur.is_zero(),
                format!("{u2} = {uw} + {ur}"),
            );
        }
        Err(e) => report.record(
            SUITE,
            "2 = w[0] + rho*eta under characters",
            false,
            e.to_string(),
        ),
    }

    report
}
