//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Run with `cargo test -p invwalk --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use invwalk::closedform::{
    ballot_walks, brute_force_catalan_walks, iterated_upper_bound, semi_infinite_e,
    semi_infinite_p, theorem_lower_bound, theorem_upper_bound,
};
use invwalk::extract::{extract_d, extract_g, theorem_reconstruct};
use invwalk::heatflow::{self, init_field, run, trajectory, HeatRunReport, ModelVariant, Scalar};
use invwalk::numerics::{rat, Poly, Rational};
use invwalk::perm::{enumerate_total_inversions, monte_carlo_e, WalkSpec, DEFAULT_ENUM_BUDGET};

/// Net-transfer checks collected from every run in criteria 1–6.
#[derive(Default)]
struct TransferLedger {
    checked: usize,
    failures: Vec<String>,
}

impl TransferLedger {
    fn record<S: Scalar>(&mut self, label: &str, n: usize, x: &S, report: &HeatRunReport<S>) {
        let nx = S::from_count(n).mul(x);
        let two_x = S::from_count(2).mul(x);
        let mut e_prev = S::zero();
        for tau in 0..report.subdiagonal.len() {
            let expected = report.energy[tau].add(&nx).sub(&two_x.mul(&e_prev));
            self.checked += 1;
            if expected != report.energy[tau + 1] {
                self.failures
                    .push(format!("{label} n={n} step {}", tau + 1));
            }
            e_prev = report.subdiagonal[tau].clone();
        }
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], elapsed: Duration, limit: Duration, summary: String) -> Outcome {
    let in_time = elapsed <= limit;
    let mut detail = format!("{summary}; {:.2?} (limit {:?})", elapsed, limit);
    if !failures.is_empty() {
        let shown: Vec<_> = failures.iter().take(12).cloned().collect();
        detail.push_str(&format!(
            "; {} failure(s): {}",
            failures.len(),
            shown.join(", ")
        ));
    }
    if !in_time {
        detail.push_str("; over time limit");
    }
    Outcome {
        pass: failures.is_empty() && in_time,
        detail,
    }
}

const NO_LIMIT: Duration = Duration::from_secs(3600);

fn criterion_1(ledger: &mut TransferLedger) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 1..=5usize {
        let x = Rational::recip_of(n as u64).unwrap();
        let report = run(n, 7, &x, ModelVariant::TriangleHotBoundary).unwrap();
        ledger.record("c1", n, &x, &report);
        for t in 0..=7u32 {
            cases += 1;
            let total = enumerate_total_inversions(n as u64, t, DEFAULT_ENUM_BUDGET).unwrap();
            let scaled = &report.energy[t as usize] * &Rational::from((n as i64).pow(t));
            let as_int = scaled
                .is_integer()
                .then(|| scaled.numer().to_biguint())
                .flatten();
            if as_int != Some(total.clone()) {
                failures.push(format!("n={n} t={t}: enum {total} vs dp {scaled}"));
            }
        }
    }
    outcome(
        &failures,
        start.elapsed(),
        Duration::from_secs(120),
        format!("{cases} cases"),
    )
}

fn criterion_2(ledger: &mut TransferLedger) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let x = Poly::x();
    let fields = trajectory(
        init_field::<Poly>(4, ModelVariant::GridHotDiagonal).unwrap(),
        &x,
        2,
    )
    .unwrap();
    let mut expect = |f: &heatflow::OrderField<Poly>, cell: (i64, i64), want: Poly| {
        let got = f.get(cell.0, cell.1).cloned();
        if got.as_ref() != Some(&want) {
            failures.push(format!("{cell:?}: {got:?} != {want}"));
        }
    };
    for j in 1..=4 {
        expect(&fields[1], (j + 1, j), Poly::x());
    }
    for j in 1..=3 {
        expect(&fields[1], (j + 2, j), Poly::zero());
        expect(&fields[2], (j + 2, j), Poly::from_ints(&[0, 0, 2]));
    }
    expect(&fields[2], (2, 1), Poly::from_ints(&[0, 2, -3]));
    expect(&fields[2], (5, 4), Poly::from_ints(&[0, 2, -3]));
    expect(&fields[2], (3, 2), Poly::from_ints(&[0, 2, -4]));
    expect(&fields[2], (4, 3), Poly::from_ints(&[0, 2, -4]));

    let report = run(4, 2, &x, ModelVariant::GridHotDiagonal).unwrap();
    ledger.record("c2", 4, &x, &report);
    if report.energy[1] != Poly::from_ints(&[0, 4]) {
        failures.push(format!("E_41 = {}", report.energy[1]));
    }
    if report.energy[2] != Poly::from_ints(&[0, 8, -8]) {
        failures.push(format!("E_42 = {}", report.energy[2]));
    }
    outcome(
        &failures,
        start.elapsed(),
        Duration::from_secs(1),
        "n = 4 grid cells, E_41, E_42".into(),
    )
}

fn criterion_3(ledger: &mut TransferLedger) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let want: Vec<Rational> = [0, 1, 9, 69, 510]
        .iter()
        .map(|&v| Rational::from(v))
        .collect();
    for t in [6usize, 7, 8] {
        match extract_d(t) {
            Ok(d) => {
                let got: Vec<Rational> = (2..=6).map(|r| d.d[&r].clone()).collect();
                if got != want {
                    failures.push(format!("t={t}: {got:?}"));
                }
            }
            Err(e) => failures.push(format!("t={t}: {e}")),
        }
    }
    // the largest extraction run, recorded for the net-transfer ledger
    let x = Rational::recip_of(16).unwrap();
    ledger.record(
        "c3",
        16,
        &x,
        &run(16, 8, &x, ModelVariant::GridHotDiagonal).unwrap(),
    );
    outcome(
        &failures,
        start.elapsed(),
        Duration::from_secs(300),
        "d_2..d_6 at t = 6, 7, 8".into(),
    )
}

fn criterion_4(ledger: &mut TransferLedger) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let d = extract_d(8).expect("d extraction at t = 8");
    let mut cases = 0;
    for t in 0..=8usize {
        let lo = t.max(1);
        for n in lo..=t + 4 {
            cases += 1;
            let x = Rational::recip_of(n as u64).unwrap();
            let report = run(n, t, &x, ModelVariant::TriangleHotBoundary).unwrap();
            ledger.record("c4", n, &x, &report);
            let formula = theorem_reconstruct(n as u64, t, &d).unwrap();
            if &formula != report.final_energy() {
                failures.push(format!(
                    "n={n} t={t}: {formula} vs {}",
                    report.final_energy()
                ));
            }
        }
    }
    outcome(
        &failures,
        start.elapsed(),
        NO_LIMIT,
        format!("{cases} (n, t) pairs, zero tolerance"),
    )
}

fn criterion_5(ledger: &mut TransferLedger) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut comparisons = 0;
    for n in 1..=8u32 {
        let finite = run(n as usize, 8, &Poly::x(), ModelVariant::TriangleHotBoundary).unwrap();
        ledger.record("c5", n as usize, &Poly::x(), &finite);
        for t in 0..=8u32 {
            let exact_poly = &finite.energy[t as usize];
            let lower = semi_infinite_e(n, t);
            let upper = iterated_upper_bound(n, t);
            for x in [
                Rational::recip_of(n as u64).unwrap(),
                rat(1, 10).unwrap(),
                rat(1, 4).unwrap(),
            ] {
                comparisons += 1;
                let (lo, e, hi) = (lower.eval(&x), exact_poly.eval(&x), upper.eval(&x));
                if !(lo <= e && e <= hi) {
                    failures.push(format!("n={n} t={t} x={x}: {lo} <= {e} <= {hi}"));
                }
            }
        }
    }
    for n in 1..=10u32 {
        let inv = Rational::recip_of(n as u64).unwrap();
        for t in 0..=10u32 {
            comparisons += 2;
            if theorem_lower_bound(n, t) != semi_infinite_e(n, t).eval(&inv) {
                failures.push(format!("lower form n={n} t={t}"));
            }
            if theorem_upper_bound(n, t) != iterated_upper_bound(n, t).eval(&inv) {
                failures.push(format!("upper form n={n} t={t}"));
            }
        }
    }
    outcome(
        &failures,
        start.elapsed(),
        NO_LIMIT,
        format!("{comparisons} exact comparisons"),
    )
}

fn criterion_6(ledger: &mut TransferLedger) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let x = Poly::x();
    for n in 1..=6usize {
        let traj = |v: ModelVariant| trajectory(init_field::<Poly>(n, v).unwrap(), &x, 8).unwrap();
        let grid = traj(ModelVariant::GridHotDiagonal);
        let full = traj(ModelVariant::FullGridCrossDiagonal);
        let tri = traj(ModelVariant::TriangleHotBoundary);
        let diamond = traj(ModelVariant::DiamondHotBoundary);
        for t in 0..=8 {
            let off_diagonal_equal = grid[t]
                .cells()
                .filter(|((i, j), _)| i != j)
                .all(|((i, j), v)| full[t].get(i, j) == Some(v));
            if !off_diagonal_equal {
                failures.push(format!("full-grid vs grid n={n} t={t}"));
            }
            if grid[t].restrict_to_triangle().unwrap() != tri[t] {
                failures.push(format!("triangle vs grid n={n} t={t}"));
            }
            if diamond[t].restrict_to_triangle().unwrap() != tri[t] {
                failures.push(format!("diamond vs triangle n={n} t={t}"));
            }
        }
        for v in [
            ModelVariant::GridHotDiagonal,
            ModelVariant::FullGridCrossDiagonal,
            ModelVariant::TriangleHotBoundary,
            ModelVariant::DiamondHotBoundary,
        ] {
            ledger.record("c6", n, &x, &run(n, 8, &x, v).unwrap());
        }
    }
    outcome(
        &failures,
        start.elapsed(),
        NO_LIMIT,
        "n <= 6, t <= 8, four variants".into(),
    )
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let x = Poly::x();
    for t in 1..=12usize {
        let profile = heatflow::semi_infinite_profile(t, &x).unwrap();
        for (k, p) in profile.iter().enumerate().take(t + 1).skip(1) {
            if &semi_infinite_p(k as u32, t as u32) != p {
                failures.push(format!("p_{k}({t})"));
            }
        }
    }
    for r in 1..=8u32 {
        for k in 1..=r {
            if ballot_walks(r, k) != brute_force_catalan_walks(r, k).unwrap().into() {
                failures.push(format!("W({r},{k})"));
            }
        }
    }
    outcome(
        &failures,
        start.elapsed(),
        NO_LIMIT,
        "k <= t <= 12; ballot r <= 8".into(),
    )
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for t in [2usize, 3, 4] {
        let base = t as u64;
        match extract_g(t, &[base, base + 1, base + 3, base + 6]) {
            Ok(g) if g.g[&2] != Rational::one() => {
                failures.push(format!("t={t}: g_2 = {}", g.g[&2]))
            }
            Ok(_) => {}
            Err(e) => failures.push(format!("t={t}: {e}")),
        }
    }
    let g = extract_g(6, &[6, 7, 9]).expect("g at t = 6");
    let d = extract_d(6).expect("d at t = 6");
    for r in 2..=6usize {
        let lhs = &Rational::from(2) * &g.g[&r];
        let side = BigUint::from(1u32) << (r - 1);
        let cat = invwalk::closedform::catalan(r as u32 - 1);
        let rhs = &(&Rational::from(4) * &d.d[&r])
            + &Rational::from(num_bigint::BigInt::from(side) * cat);
        if lhs != rhs {
            failures.push(format!("r={r}: 2g = {lhs}, 4d + 2^(r-1)C = {rhs}"));
        }
    }
    outcome(
        &failures,
        start.elapsed(),
        NO_LIMIT,
        "g n-independence, g_2 = 1, 2g_r = 4d_r + 2^(r-1)C_(r-1)".into(),
    )
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for (n, t) in [(4usize, 2usize), (2, 3)] {
        let spec = WalkSpec {
            n,
            t,
            seed: 1,
            samples: 1_000_000,
            shards: 8,
        };
        let a = monte_carlo_e(&spec).unwrap();
        let b = monte_carlo_e(&spec).unwrap();
        if a.mean.to_bits() != b.mean.to_bits() || a.stderr.to_bits() != b.stderr.to_bits() {
            failures.push(format!("n={n} t={t}: rerun differs"));
        }
        let z = (a.mean - 1.5).abs() / a.stderr;
        summary.push(format!("n={n} t={t} mean {:.5} ({:.2} se)", a.mean, z));
        if z.is_nan() || z > 5.0 {
            failures.push(format!("n={n} t={t}: {z:.2} standard errors from 3/2"));
        }
    }
    outcome(
        &failures,
        start.elapsed(),
        Duration::from_secs(30),
        summary.join(", "),
    )
}

fn criterion_10(ledger: &TransferLedger) -> Outcome {
    let mut failures = ledger.failures.clone();
    if ledger.checked == 0 {
        failures.push("no steps recorded".into());
    }
    outcome(
        &failures,
        Duration::ZERO,
        NO_LIMIT,
        format!("{} steps checked", ledger.checked),
    )
}

fn main() -> ExitCode {
    let mut ledger = TransferLedger::default();
    let results = [
        (
            "1 enumeration = n^t * heat-flow E",
            criterion_1(&mut ledger),
        ),
        ("2 snapshot regression at n = 4", criterion_2(&mut ledger)),
        ("3 d-sequence recovery", criterion_3(&mut ledger)),
        ("4 theorem reconstruction", criterion_4(&mut ledger)),
        ("5 bound sandwich and bound forms", criterion_5(&mut ledger)),
        ("6 model equivalences", criterion_6(&mut ledger)),
        (
            "7 semi-infinite closed form and ballot counts",
            criterion_7(),
        ),
        ("8 correction structure", criterion_8()),
        ("9 Monte Carlo statistical check", criterion_9()),
    ];
    let last = criterion_10(&ledger);
    let mut all_pass = true;
    for (name, result) in results
        .iter()
        .chain(std::iter::once(&("10 net-transfer ledger", last)))
    {
        let tag = if result.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {name}: {}", result.detail);
        all_pass &= result.pass;
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
