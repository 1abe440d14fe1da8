//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use orbichern::chern::{
    cusp_order, log_surface_from_ambient, nodal_surface_chern, node_order, plane_nc_curve_chern, stack_c1_sq,
    stack_c2, NodalSurface, PlaneNodeCuspCurve,
};
use orbichern::cli::{CliError, EXIT_INPUT, EXIT_INTERNAL, EXIT_OK};
use orbichern::criteria::{
    bogomolov_stack, jet_h0_coefficient, nevanlinna_excess, nodes_cusps_lhs, plane_pair_lhs, remark_form_lhs,
    theorem_a_lhs, NevanlinnaConfig, PlanePairConfig,
};
use orbichern::oracle::{
    chi_graded_term, chi_jet_exact, leading_coefficient, CoeffForm, Composition, OracleError,
};
use orbichern::rational::q;
use orbichern::scan::{grid_scan, minimal_passing, Family, ParamValue, ScanRequest};
use orbichern::{Multiplicity, Rational};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("{what} took {elapsed:?}, limit {limit:?}")
    })
}

fn fin(m: u64) -> Multiplicity {
    Multiplicity::finite(m).unwrap()
}

fn request(family: Family, fixed: &[(&str, i64)], sweep: &str) -> ScanRequest {
    let fixed = fixed
        .iter()
        .map(|&(k, v)| (k.to_string(), ParamValue::Int(v)))
        .collect();
    ScanRequest::new(family, fixed, sweep.parse().unwrap(), None).unwrap()
}

fn ac1_oracle_coefficients() -> Outcome {
    let start = Instant::now();
    let expected = [
        (1, q(1, 6), q(-1, 6)),
        (2, q(7, 384), q(-5, 384)),
        (3, q(85, 7776), q(-49, 7776)),
    ];
    let mut mismatches = Vec::new();
    for (k, alpha, beta) in expected {
        let (form, degree) = leading_coefficient(k).map_err(|e| format!("k={k}: {e}"))?;
        let want = CoeffForm::new(alpha, beta, 0);
        if form != want || degree != 2 * k + 1 {
            mismatches.push(format!(
                "k={k}: got {} (degree {degree}), expected {} (degree {})",
                form.to_common_denominator_string(),
                want.to_common_denominator_string(),
                2 * k + 1
            ));
        }
    }
    within(start.elapsed(), Duration::from_secs(60), "oracle")?;
    ensure(mismatches.is_empty(), || mismatches.join("; "))?;
    Ok(format!("k=1,2,3 exact in {:?}", start.elapsed()))
}

fn ac2_identity_suite() -> Outcome {
    const CASES: usize = 200;
    let mut rng = common::rng();
    for case in 0..CASES {
        let amb = common::random_ambient(&mut rng);
        let s = log_surface_from_ambient(&amb);
        let a = theorem_a_lhs(&s);
        let stack = stack_c1_sq(&s) - stack_c2(&s);
        ensure(a.lhs() == &stack, || {
            format!("case {case}: theorem A {} != stack {stack}", a.lhs())
        })?;
        let r = remark_form_lhs(&amb);
        ensure(r.lhs() == a.lhs(), || {
            format!("case {case}: ambient form {} != {}", r.lhs(), a.lhs())
        })?;
    }
    Ok(format!("{CASES} seeded configurations"))
}

fn ac3_two_quintics() -> Outcome {
    let start = Instant::now();
    let at = |m| plane_pair_lhs(&PlanePairConfig::new(5, 5, fin(m), fin(m)).unwrap());
    let (v69, v68) = (at(69), at(68));
    ensure(v69.lhs() == &q(6, 4761) && v69.holds(), || {
        format!("m=69 gave {}", v69.lhs())
    })?;
    ensure(v68.lhs() == &q(-61, 4624) && !v68.holds(), || {
        format!("m=68 gave {}", v68.lhs())
    })?;
    let min = minimal_passing(&request(Family::PlanePair, &[("d1", 5), ("d2", 5)], "m=2..100")).unwrap();
    ensure(min == Some(ParamValue::Int(69)), || {
        format!("minimal m = {min:?}")
    })?;
    within(start.elapsed(), Duration::from_secs(1), "two-quintic example")?;
    Ok(format!(
        "6/4761 at 69, -61/4624 at 68, minimal 69 in {:?}",
        start.elapsed()
    ))
}

fn ac4_nodes_cusps_chain() -> Outcome {
    let start = Instant::now();
    ensure(cusp_order(5) == Ok(q(600, 1)), || {
        format!("cusp_order(5) = {:?}", cusp_order(5))
    })?;
    ensure(node_order(5) == Ok(25), || {
        format!("node_order(5) = {:?}", node_order(5))
    })?;
    let mut checked = 0;
    for d in 4..=12i64 {
        for n in 0..=20i64 {
            for c in 0..=20i64 {
                if (d - 1) * (d - 2) / 2 - n - c < 0 {
                    continue;
                }
                let closed = nodes_cusps_lhs(d, n, c).map_err(|e| e.to_string())?;
                let curve = PlaneNodeCuspCurve::new(d, n, c, 5).map_err(|e| e.to_string())?;
                let stack = bogomolov_stack(&plane_nc_curve_chern(&curve));
                let scaled = closed.lhs() * &q(4, 25);
                ensure(&scaled == stack.lhs(), || {
                    format!("(d,n,c)=({d},{n},{c}): {scaled} != {}", stack.lhs())
                })?;
                checked += 1;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(5), "nodes-cusps grid")?;
    Ok(format!("{checked} realizable (d,n,c) in {:?}", start.elapsed()))
}

fn ac5_nodal_surfaces() -> Outcome {
    let ch = nodal_surface_chern(&NodalSurface::new(5, 31).unwrap());
    ensure(ch.difference() == q(-7, 2), || {
        format!("d=5 l=31 gave {}", ch.difference())
    })?;
    ensure(!bogomolov_stack(&ch).holds(), || "d=5 l=31 should fail".into())?;

    let rows = grid_scan(&request(Family::NodalSurface, &[("d", 6)], "l=0..200")).unwrap();
    let first = rows.iter().find(|r| r.holds).map(|r| r.param);
    ensure(first == Some(ParamValue::Int(57)), || {
        format!("d=6 threshold {first:?}")
    })?;

    for d in 5..=15i64 {
        for l in 0..=200i64 {
            let ch = nodal_surface_chern(&NodalSurface::new(d, l).unwrap());
            let dr = Rational::from(d);
            let rhs = q(3, 2) * (Rational::from(l) - q(8, 3) * (&dr * &dr - q(5, 2) * &dr));
            ensure(ch.difference() == rhs, || {
                format!("d={d} l={l}: {} != {rhs}", ch.difference())
            })?;
        }
    }
    Ok("-7/2 at (5,31), threshold 57 for d=6, identity on 11x201 grid".into())
}

fn ac6_jets() -> Outcome {
    let j2 = jet_h0_coefficient(2, 5, 31).map_err(|e| e.to_string())?.verdict;
    let j3 = jet_h0_coefficient(3, 5, 31).map_err(|e| e.to_string())?.verdict;
    ensure(j2.lhs() == &q(-15, 2) && !j2.holds(), || {
        format!("k=2 gave {}", j2.lhs())
    })?;
    ensure(j3.lhs() == &q(17, 2) && j3.holds(), || {
        format!("k=3 gave {}", j3.lhs())
    })?;
    let min = minimal_passing(&request(Family::NodalJet, &[("k", 3), ("d", 5)], "l=0..200")).unwrap();
    ensure(min == Some(ParamValue::Int(31)), || {
        format!("minimal l = {min:?}")
    })?;
    Ok("-15/2 (k=2), 17/2 (k=3), minimal l = 31".into())
}

fn ac7_nevanlinna() -> Outcome {
    let cases = [
        (vec![fin(2), fin(3), fin(7)], q(1, 42), true),
        (vec![fin(2), fin(3), fin(6)], Rational::zero(), false),
        (vec![Multiplicity::Infinite; 3], Rational::one(), true),
    ];
    for (mults, lhs, holds) in cases {
        let label = format!("{mults:?}");
        let v = nevanlinna_excess(&NevanlinnaConfig::new(mults).unwrap());
        ensure(v.lhs() == &lhs && v.holds() == holds, || {
            format!("{label}: {} {}", v.lhs(), v.holds())
        })?;
    }
    Ok("(2,3,7) 1/42, (2,3,6) 0, (inf,inf,inf) 1".into())
}

fn ac8_oracle_small_values() -> Outcome {
    let checks = [
        (
            "chi_graded_term((1))",
            chi_graded_term(&Composition::new(vec![1])),
            CoeffForm::new(0, -1, 2),
        ),
        (
            "chi_graded_term((2))",
            chi_graded_term(&Composition::new(vec![2])),
            CoeffForm::new(1, -3, 3),
        ),
        (
            "chi_jet_exact(2,2)",
            chi_jet_exact(2, 2),
            CoeffForm::new(1, -4, 5),
        ),
    ];
    let mismatches: Vec<String> = checks
        .iter()
        .filter(|(_, got, want)| got != want)
        .map(|(name, got, want)| format!("{name}: got {got}, expected {want}"))
        .collect();
    ensure(mismatches.is_empty(), || mismatches.join("; "))?;
    Ok("three small values exact".into())
}

fn ac9_cli_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_orbichern");
    let examples: [&[&str]; 3] = [
        &["criteria", "--family", "nodal-surface", "-d", "5", "-l", "31"],
        &["oracle", "--jet-order", "3"],
        &[
            "scan",
            "--family",
            "plane-pair",
            "--d1",
            "5",
            "--d2",
            "5",
            "--sweep",
            "m=2..100",
        ],
    ];
    let run = |args: &[&str], threads: &str| {
        Command::new(bin)
            .args(args)
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .map_err(|e| e.to_string())
    };
    for base in examples {
        for format in ["text", "csv", "json"] {
            let mut args = base.to_vec();
            args.extend(["--format", format]);
            let first = run(&args, "1")?;
            let second = run(&args, "8")?;
            ensure(first.status.code() == Some(EXIT_OK), || {
                format!("{args:?} exited {:?}", first.status.code())
            })?;
            ensure(first.stdout == second.stdout && !first.stdout.is_empty(), || {
                format!("{args:?} not byte-identical")
            })?;
        }
    }
    let bad = run(
        &["criteria", "--family", "nodal-surface", "-d", "4", "-l", "0"],
        "1",
    )?;
    ensure(bad.status.code() == Some(EXIT_INPUT), || {
        format!("input error exited {:?}", bad.status.code())
    })?;
    let internal = CliError::from(OracleError::ClassDisagreement {
        first: 0,
        other: 1,
        period: 2,
    });
    ensure(internal.exit_code() == EXIT_INTERNAL, || {
        "oracle disagreement not mapped to 2".into()
    })?;
    Ok("3 examples x 3 formats byte-identical across thread counts; exit codes 0/1/2".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1", "oracle leading coefficients", ac1_oracle_coefficients),
        ("AC2", "identity suite", ac2_identity_suite),
        ("AC3", "two-quintic example", ac3_two_quintics),
        ("AC4", "nodes-cusps chain", ac4_nodes_cusps_chain),
        ("AC5", "nodal surfaces", ac5_nodal_surfaces),
        ("AC6", "jet criteria", ac6_jets),
        ("AC7", "nevanlinna", ac7_nevanlinna),
        ("AC8", "oracle small values", ac8_oracle_small_values),
        ("AC9", "cli determinism", ac9_cli_determinism),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("{id} PASS {name}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("{id} FAIL {name}: {reason}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
