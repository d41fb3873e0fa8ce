//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use gf2_roots::census::{
    closed_form_terms, ekhad_closed_form, oracle_table, recurrence_table, recurrence_totals,
    stated_summand_range, unified_closed_form,
};
use gf2_roots::cholesky::{all_roots, instructional_root, is_root_of, unique_root_full_rank, RootMethod};
use gf2_roots::oracle::{all_symmetric, gram_classes};
use gf2_roots::rootsets::{brute_force_enumerate, canonical_bijection, shift_by_identity};
use gf2_roots::{Count, Gf2Matrix, OracleConfig, RootFamily};
use num_bigint::BigInt;
use num_traits::{One, Zero};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn config() -> OracleConfig {
    OracleConfig::default()
}

fn matrix(rows: &[&str]) -> Gf2Matrix {
    rows.join("\n").parse().expect("literal matrix")
}

fn oracle_vs_recurrence() -> Outcome {
    let expected_totals = [1u32, 2, 6, 28, 192, 1952];
    for family in [RootFamily::SqrtZero, RootFamily::CholeskyZero] {
        let oracle = oracle_table(family, 6, &config()).map_err(|e| e.to_string())?;
        let formula = recurrence_table(family, 6).map_err(|e| e.to_string())?;
        for n in 1..=6 {
            for r in 0..=n {
                ensure!(
                    oracle.get(n, r) == formula.get(n, r),
                    "{family} n={n} r={r}: oracle {} recurrence {}",
                    oracle.get(n, r),
                    formula.get(n, r)
                );
            }
            ensure!(
                oracle.total(n) == Count::from(expected_totals[n - 1]),
                "{family} n={n}: total {}",
                oracle.total(n)
            );
        }
    }
    Ok("totals 1, 2, 6, 28, 192, 1952 for both families".into())
}

fn closed_forms() -> Outcome {
    let totals = recurrence_totals(64);
    for n in 1..=64 {
        let ekhad = ekhad_closed_form(n).map_err(|e| e.to_string())?;
        let unified = unified_closed_form(n).map_err(|e| e.to_string())?;
        ensure!(totals[n - 1] == ekhad, "n={n}: recurrence {} ekhad {ekhad}", totals[n - 1]);
        ensure!(totals[n - 1] == unified, "n={n}: recurrence {} unified {unified}", totals[n - 1]);
    }
    Ok("n = 1..64".into())
}

fn rank_preserving_equality() -> Outcome {
    let max_n = 64;
    let b = recurrence_table(RootFamily::SqrtZero, max_n).map_err(|e| e.to_string())?;
    let c = recurrence_table(RootFamily::CholeskyZero, max_n).map_err(|e| e.to_string())?;
    for n in 1..=max_n {
        for r in 0..=n {
            ensure!(b.get(n, r) == c.get(n, r), "table cell n={n} r={r} differs");
        }
    }
    let mut pairs_checked = 0usize;
    for n in 1..=6 {
        let b_set: Vec<_> = brute_force_enumerate(n, RootFamily::SqrtZero, &config())
            .map_err(|e| e.to_string())?
            .collect();
        for r in 0..=n {
            let pairs = canonical_bijection(n, r).map_err(|e| e.to_string())?;
            let stratum = b_set.iter().filter(|e| e.rank == r).count();
            ensure!(pairs.len() == stratum, "n={n} r={r}: {} pairs, |B_n(r)| = {stratum}", pairs.len());
            let firsts: BTreeSet<_> = pairs.iter().map(|p| &p.b_element).collect();
            let seconds: BTreeSet<_> = pairs.iter().map(|p| &p.c_element).collect();
            ensure!(firsts.len() == pairs.len() && seconds.len() == pairs.len(), "n={n} r={r}: repeated element");
            for p in &pairs {
                ensure!(RootFamily::SqrtZero.contains(&p.b_element), "n={n} r={r}: left side not in B");
                ensure!(RootFamily::CholeskyZero.contains(&p.c_element), "n={n} r={r}: right side not in C");
                ensure!(
                    p.b_element.rank() == r && p.c_element.rank() == r,
                    "n={n} r={r}: pair not rank-preserving"
                );
            }
            pairs_checked += pairs.len();
        }
    }
    Ok(format!("tables equal through n = {max_n}; {pairs_checked} pairs valid for n <= 6"))
}

fn involution() -> Outcome {
    for n in 1..=6 {
        let a: BTreeSet<_> = brute_force_enumerate(n, RootFamily::SqrtIdentity, &config())
            .map_err(|e| e.to_string())?
            .map(|e| e.matrix)
            .collect();
        let b: Vec<_> = brute_force_enumerate(n, RootFamily::SqrtZero, &config())
            .map_err(|e| e.to_string())?
            .map(|e| e.matrix)
            .collect();
        let image: BTreeSet<_> = b.iter().map(shift_by_identity).collect();
        ensure!(image.len() == b.len(), "n={n}: shift is not injective on B");
        ensure!(image == a, "n={n}: image of B differs from A");
        ensure!(a.len() == b.len(), "n={n}: |A| = {} |B| = {}", a.len(), b.len());
    }
    Ok("n <= 6".into())
}

fn cholesky_lpn_law() -> Outcome {
    let c_totals = recurrence_totals(5);
    let mut lpn_seen = 0usize;
    for n in 1..=5 {
        let classes = gram_classes(n, &config()).map_err(|e| e.to_string())?;
        for m in all_symmetric(n, &config()).map_err(|e| e.to_string())?.filter(Gf2Matrix::is_lpn) {
            let corank = n - m.rank();
            let expected = if corank == 0 { Count::one() } else { c_totals[corank - 1].clone() };
            let roots = classes.get(&m).map_or(&[][..], Vec::as_slice);
            ensure!(
                Count::from(roots.len()) == expected,
                "{m:?}: oracle {} roots, expected {expected}",
                roots.len()
            );
            let root = instructional_root(&m).map_err(|e| format!("{m:?}: {e}"))?.root;
            ensure!(roots.contains(&root), "{m:?}: instructional root not among roots");
            lpn_seen += 1;
        }
    }
    Ok(format!("{lpn_seen} symmetric LPN matrices, n <= 5"))
}

fn full_rank_uniqueness() -> Outcome {
    let mut seen = 0usize;
    for n in 1..=4 {
        let classes = gram_classes(n, &config()).map_err(|e| e.to_string())?;
        for m in all_symmetric(n, &config()).map_err(|e| e.to_string())?.filter(|m| m.rank() == n) {
            let roots = classes.get(&m).map_or(&[][..], Vec::as_slice);
            ensure!(!roots.is_empty() == m.is_lpn(), "{m:?}: has root = {}, lpn = {}", !roots.is_empty(), m.is_lpn());
            if m.is_lpn() {
                let unique = unique_root_full_rank(&m).map_err(|e| format!("{m:?}: {e}"))?.root;
                ensure!(roots == [unique], "{m:?}: {} roots", roots.len());
            }
            seen += 1;
        }
    }
    Ok(format!("{seen} full-rank symmetric matrices, n <= 4"))
}

fn counterexample() -> Outcome {
    let m = matrix(&["00", "01"]);
    ensure!(!m.is_lpn(), "diag(0,1) reported LPN");
    let found = all_roots(&m, &config()).map_err(|e| e.to_string())?;
    ensure!(found.method == RootMethod::Oracle, "non-LPN input not routed to the oracle");
    let got: BTreeSet<_> = found.roots.into_iter().collect();
    let displayed: BTreeSet<_> = [matrix(&["00", "01"]), matrix(&["01", "00"])].into_iter().collect();
    ensure!(got == displayed, "roots {got:?}");
    ensure!(got.iter().all(|u| is_root_of(u, &m)), "listed root fails UᵀU = M");
    // LPN law would predict |C_1| = 1 root
    let predicted = &recurrence_totals(1)[0];
    ensure!(Count::from(got.len()) != *predicted, "LPN law happened to hold");
    Ok(format!("2 roots; LPN law would predict {predicted}"))
}

fn emptiness_bound() -> Outcome {
    for family in [RootFamily::SqrtZero, RootFamily::CholeskyZero] {
        for n in 1..=6 {
            for e in brute_force_enumerate(n, family, &config()).map_err(|e| e.to_string())? {
                ensure!(e.rank <= n / 2, "{family} n={n}: rank {} element {:?}", e.rank, e.matrix);
            }
        }
        let at_two = brute_force_enumerate(2, family, &config())
            .map_err(|e| e.to_string())?
            .filter(|e| e.rank == 1)
            .count();
        ensure!(at_two > 0, "{family}: (2, 1) stratum empty");
    }
    Ok("r > floor(n/2) empty for n <= 6; (2, 1) nonempty in both families".into())
}

fn summand_range() -> Outcome {
    for n in 1..=200 {
        let (lo, hi) = stated_summand_range(n);
        let terms = closed_form_terms(n, (lo - 40)..=(hi + 40)).map_err(|e| e.to_string())?;
        let mut inside = BigInt::zero();
        for t in terms {
            if t.j < lo || t.j > hi {
                ensure!(t.value.is_zero(), "n={n} j={}: term {}", t.j, t.value);
            } else {
                inside += t.value;
            }
        }
        let total = unified_closed_form(n).map_err(|e| e.to_string())?;
        ensure!(inside == BigInt::from(total), "n={n}: window sum differs from total");
    }
    Ok("n <= 200".into())
}

fn scale_check() -> Outcome {
    let by_recurrence = recurrence_table(RootFamily::SqrtZero, 20).map_err(|e| e.to_string())?.total(20);
    let by_formula = unified_closed_form(20).map_err(|e| e.to_string())?;
    let by_ekhad = ekhad_closed_form(20).map_err(|e| e.to_string())?;
    ensure!(by_recurrence == by_formula && by_recurrence == by_ekhad, "recurrence {by_recurrence} closed form {by_formula}");
    ensure!(by_recurrence > Count::one() << 90u32, "|B_20| = {by_recurrence} not above 2^90");
    Ok(format!("|B_20| = {by_recurrence}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("oracle vs recurrence", oracle_vs_recurrence),
        ("closed-form agreement", closed_forms),
        ("rank-preserving equality", rank_preserving_equality),
        ("involution", involution),
        ("cholesky LPN law", cholesky_lpn_law),
        ("full-rank uniqueness", full_rank_uniqueness),
        ("diag(0,1) counterexample", counterexample),
        ("emptiness bound", emptiness_bound),
        ("summand range", summand_range),
        ("scale check", scale_check),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
