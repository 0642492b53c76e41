//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Expected values are recomputed here from first principles rather
//! than read back from the library.

use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use c2stems::divisibility::{
    b_of, check_nm_compatibility, check_table_invariants, m_of, n_of, Standard,
};
use c2stems::expr::{evaluate, parse, print_canonical, EvalError, ExprError};
use c2stems::oracle::check_oracle_equivalence;
use c2stems::rational::check_rational_iso;
use c2stems::report::{Report, Status};
use c2stems::ring::{
    char_fixed, char_underlying, check_axioms, check_characters, check_presentation, BasisElement,
    RingElement, RingModel,
};
use c2stems::spectral::{
    adams_name, bundled_catalog, enumerate_e1_minus, validate_e1_support, Family, TriDegree,
    TriWindow,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// `b` listed over one period, then shifted by 4 per period of 8.
fn reference_b(i: u32) -> u32 {
    const FIRST: [u32; 8] = [1, 2, 3, 4, 4, 4, 4, 5];
    let k = (i - 1) / 8;
    FIRST[((i - 1) % 8) as usize] + 4 * k
}

fn reference_n(i: u32) -> u32 {
    i - reference_b(i)
}

/// `m(4k + r)`: `4k - 1` when `r = 0`, `4k` otherwise.
fn reference_m(i: u32) -> u32 {
    let k = i / 4;
    if i.is_multiple_of(4) {
        4 * k - 1
    } else {
        4 * k
    }
}

fn report_outcome(report: &Report) -> Outcome {
    let summary = format!(
        "{} passed, {} notes",
        report.count(Status::Pass),
        report.count(Status::Note)
    );
    if report.passed() {
        Ok(summary)
    } else {
        let failed: Vec<String> = report
            .failures()
            .map(|f| format!("{}: {} [{}]", f.suite, f.name, f.detail))
            .collect();
        Err(failed.join("; "))
    }
}

fn within(elapsed: Duration, limit: Duration, outcome: Outcome) -> Outcome {
    let timing = format!(
        "{:.3}s of {:.0}s",
        elapsed.as_secs_f64(),
        limit.as_secs_f64()
    );
    match outcome {
        Ok(detail) if elapsed < limit => Ok(format!("{detail}; {timing}")),
        Ok(_) => Err(format!("too slow: {timing}")),
        Err(e) => Err(e),
    }
}

fn divisibility_tables() -> Outcome {
    let start = Instant::now();
    let outcome = (|| {
        let known_n = [0, 0, 0, 0, 1, 2, 3, 3, 4, 4, 4, 4, 5, 6, 7, 7];
        let known_m = [0, 0, 0, 3, 4, 4, 4, 7];
        for (k, expected) in known_n.iter().enumerate() {
            let i = k as i64 + 1;
            if n_of(i).unwrap() != *expected {
                return Err(format!("n({i}) != {expected}"));
            }
        }
        for (k, expected) in known_m.iter().enumerate() {
            let i = k as i64 + 1;
            if m_of(i).unwrap() != *expected {
                return Err(format!("m({i}) != {expected}"));
            }
        }
        for i in 1..=200u32 {
            let (n, m, b) = (
                n_of(i.into()).unwrap(),
                m_of(i.into()).unwrap(),
                b_of(i.into()).unwrap(),
            );
            if (n, m, b) != (reference_n(i), reference_m(i), reference_b(i)) {
                return Err(format!("mismatch at i={i}: got n={n} m={m} b={b}"));
            }
            if n + b != i {
                return Err(format!("b != i - n at {i}"));
            }
            if reference_m(i - n) < n {
                return Err(format!("m(i - n(i)) < n(i) at {i}"));
            }
            if i - n >= 2 && reference_m(i - n - 1) > n {
                return Err(format!("m(i - n(i) - 1) >= n(i) + 1 at {i}"));
            }
        }
        let mut library = check_nm_compatibility(200);
        library.extend(check_table_invariants(&Standard, 200));
        report_outcome(&library).map(|s| format!("1 <= i <= 200; library suite {s}"))
    })();
    within(start.elapsed(), Duration::from_secs(1), outcome)
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let outcome = report_outcome(&check_oracle_equivalence(&RingModel::standard(), 24, 24));
    within(
        start.elapsed(),
        Duration::from_secs(10),
        outcome.map(|s| format!("|stem|, |weight| <= 24; {s}")),
    )
}

fn ring_axioms() -> Outcome {
    let model = RingModel::standard();
    let report = check_axioms(&model, 24, 12);
    let basis = BasisElement::window(12, 12);
    let mut triples = 0usize;
    for a in &basis {
        for b in &basis {
            let ab = model.mul_basis(a, b);
            if ab != model.mul_basis(b, a) {
                return Err(format!("{a}*{b} not commutative"));
            }
            for c in &basis {
                let lhs = model.mul(&ab, &RingElement::basis(*c));
                let rhs = model.mul(&RingElement::basis(*a), &model.mul_basis(b, c));
                if lhs != rhs {
                    return Err(format!("({a}*{b})*{c} != {a}*({b}*{c})"));
                }
                triples += 1;
            }
        }
    }
    report_outcome(&report)
        .map(|s| format!("{triples} triples in |stem|, |weight| <= 12; library suite {s}"))
}

fn presentation() -> Outcome {
    let report = check_presentation(&RingModel::standard(), 24);
    let notes = report.count(Status::Note);
    if notes == 0 {
        return Err("eta-power exponent discrepancy was not logged".into());
    }
    report_outcome(&report)
}

fn characters() -> Outcome {
    let report = check_characters(&RingModel::standard(), 24);
    let int = BigInt::from;
    for n in -12..=12 {
        if char_underlying(&RingElement::omega(n)) != int(2) {
            return Err(format!("phi_e(w[{n}]) != 2"));
        }
    }
    for i in 1..=24u32 {
        if char_fixed(&RingElement::x(i)) != int(2).pow(reference_b(i)) {
            return Err(format!("phi_fix(x[{i}]) != 2^b({i})"));
        }
    }
    if char_fixed(&RingElement::rho_pow(1)) != int(1) {
        return Err("phi_fix(rho) != 1".into());
    }
    let two = RingElement::scalar(int(2));
    let w0 = RingElement::omega(0);
    let rho_eta = RingElement::rho_pow(1) * RingElement::x(1);
    let fixed = (char_fixed(&two), char_fixed(&w0), char_fixed(&rho_eta));
    if fixed != (int(2), int(0), int(2)) {
        return Err(format!("phi_fix of (1): {fixed:?}"));
    }
    let under = (
        char_underlying(&two),
        char_underlying(&w0),
        char_underlying(&rho_eta),
    );
    if under != (int(2), int(2), int(0)) {
        return Err(format!("phi_e of (1): {under:?}"));
    }
    report_outcome(&report)
        .map(|s| format!("phi_fix: 2 = 0 + 2, phi_e: 2 = 2 + 0; library suite {s}"))
}

fn rationalization() -> Outcome {
    report_outcome(&check_rational_iso(12)).map(|s| format!("|stem|, |weight| <= 12; {s}"))
}

fn unique_divisibility() -> Outcome {
    let eta = RingElement::x(1);
    let mut power = RingElement::one();
    for i in 1..=24u32 {
        power = power * eta.clone();
        let expected = RingElement::term(BigInt::from(2).pow(reference_n(i)), BasisElement::x(i));
        if power != expected {
            return Err(format!("eta^{i} = {power}, expected {expected}"));
        }
        let text = format!("eta^{i} / 2^({})", reference_n(i) + 1);
        match evaluate(&text) {
            Err(ExprError::Eval(EvalError::InexactDivision { .. })) => {}
            other => return Err(format!("{text} gave {other:?}")),
        }
        let exact = format!("eta^{i} / 2^({})", reference_n(i));
        if evaluate(&exact).as_ref() != Ok(&RingElement::x(i)) {
            return Err(format!("{exact} != x[{i}]"));
        }
    }
    Ok("i <= 24".into())
}

fn e1_enumeration() -> Outcome {
    let catalog = bundled_catalog();
    let window = TriWindow {
        stem: 0..=12,
        filtration: -2..=4,
        weight: -2..=12,
    };
    let classes = enumerate_e1_minus(&catalog, &window).map_err(|e| e.to_string())?;
    for n in 1..=5u32 {
        let b = 2 * n - 1;
        let found = classes.iter().any(|c| {
            c.family == Family::Gamma
                && c.base == "1"
                && c.rho_exponent == 0
                && c.tau_exponent == b
                && (c.degree.stem, c.degree.weight) == (0, 2 * i64::from(n))
        });
        if !found {
            return Err(format!(
                "gamma/tau^{b} missing at homotopy degree (0,{})",
                2 * n
            ));
        }
    }
    for c in &classes {
        let base = catalog
            .iter()
            .find(|g| g.label == c.base)
            .ok_or("unknown base")?
            .degree;
        let (a, b) = (i64::from(c.rho_exponent), i64::from(c.tau_exponent));
        let expected = match c.family {
            Family::Gamma => {
                TriDegree::new(base.stem + a, base.filtration, base.weight + a + b + 1)
            }
            Family::Q => TriDegree::new(
                base.stem + a + 1,
                base.filtration - 1,
                base.weight + a + b + 1,
            ),
        };
        if c.degree != expected {
            return Err(format!("{} at {}, expected {expected}", c.name(), c.degree));
        }
    }
    report_outcome(&validate_e1_support(&classes))
        .map(|s| format!("{} classes; support {s}", classes.len()))
}

fn name_table() -> Outcome {
    let mut rows: Vec<(BasisElement, String)> = vec![(BasisElement::x(1), "h1".into())];
    for k in 1..=3u32 {
        rows.push((
            BasisElement::x(8 * k - 1),
            format!("Q/rho^{} h1^{}", 4 * k - 2, 4 * k),
        ));
        rows.push((
            BasisElement::x(8 * k + 1),
            format!("Q/rho^{} h1^{}", 4 * k - 1, 4 * k + 1),
        ));
    }
    rows.push((BasisElement::Omega(0), "h0".into()));
    for n in 1..=5i64 {
        rows.push((BasisElement::Omega(n), format!("tau^{} h0", 2 * n)));
        let tau = 2 * n - 1;
        let denominator = if tau == 1 {
            "tau".to_owned()
        } else {
            format!("tau^{tau}")
        };
        rows.push((BasisElement::Omega(-n), format!("gamma/{denominator}")));
    }
    for (b, expected) in &rows {
        let got = adams_name(b).map(|n| n.to_string());
        if got.as_deref() != Some(expected.as_str()) {
            return Err(format!("{b}: got {got:?}, expected {expected}"));
        }
    }
    Ok(format!("{} rows", rows.len()))
}

fn random_element(rng: &mut ChaCha8Rng, basis: &[BasisElement]) -> RingElement {
    let terms = rng.gen_range(0..=6);
    (0..terms)
        .map(|_| {
            let b = basis[rng.gen_range(0..basis.len())];
            (b, BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000)))
        })
        .collect()
}

fn random_text(rng: &mut ChaCha8Rng) -> String {
    const ALPHABET: &[char] = &[
        'r', 'h', 'o', 'e', 't', 'a', 'w', 'x', '[', ']', '(', ')', '+', '-', '*', '/', '^', ' ',
        '0', '1', '2', '7', '9', 'é', '∞', '\t',
    ];
    let len = rng.gen_range(0..=40);
    (0..len)
        .map(|_| ALPHABET[rng.gen_range(0..ALPHABET.len())])
        .collect()
}

fn dsl_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let basis = BasisElement::window(24, 24);
    for _ in 0..1000 {
        let a = random_element(&mut rng, &basis);
        let text = print_canonical(&a);
        match evaluate(&text) {
            Ok(back) if back == a => {}
            other => return Err(format!("{text} evaluated to {other:?}")),
        }
    }
    let previous_hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let mut crashes = Vec::new();
    for _ in 0..5000 {
        let text = random_text(&mut rng);
        let probe = text.clone();
        let result = panic::catch_unwind(move || {
            if let Err(e) = parse(&probe) {
                assert!(e.offset() <= probe.len());
            }
            let _ = evaluate(&probe);
        });
        if result.is_err() {
            crashes.push(text);
        }
    }
    panic::set_hook(previous_hook);
    if crashes.is_empty() {
        Ok("1000 elements round-tripped; 5000 fuzzed inputs without a crash".into())
    } else {
        Err(format!(
            "{} crashes, first: {:?}",
            crashes.len(),
            crashes[0]
        ))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("divisibility tables", divisibility_tables),
        (
            "structure constants agree with the rewriting oracle",
            oracle_equivalence,
        ),
        ("ring axioms", ring_axioms),
        ("presentation relations", presentation),
        ("characters", characters),
        ("rationalization", rationalization),
        ("unique divisibility of eta powers", unique_divisibility),
        ("E1-minus enumeration", e1_enumeration),
        ("Adams name table", name_table),
        ("expression round trip and parser totality", dsl_round_trip),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {title} [{detail}]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {title} [{detail}]", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
