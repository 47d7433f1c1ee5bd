//! Acceptance suite: one PASS/FAIL line per criterion, all exact.
//!
//! Runs without the libtest harness so the lines always reach the console:
//! `cargo test -p bop-cli --test acceptance`.

use std::process::Command;
use std::time::{Duration, Instant};

use bop_core::algebra::AlgebraKind;
use bop_core::catalog::{self, homotopy_profile, SpectrumId};
use bop_core::splitting::{self, CTerm};
use bop_core::{conjecture, tower, TruncatedSeries};
use num_bigint::BigInt;
use serde_json::Value;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, what: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn pass_report(r: bop_core::Result<bop_core::VerificationReport>) -> Outcome {
    let r = r.map_err(|e| e.to_string())?;
    ensure(r.pass, r.to_string())
}

/// Oracle: dimensions of a polynomial algebra with generators in `degrees`
/// (repeats allowed), by coin-change counting in machine integers.
fn polynomial_dims(degrees: &[usize], n: usize) -> Vec<u128> {
    let mut dims = vec![0u128; n + 1];
    dims[0] = 1;
    for &d in degrees {
        for i in d..=n {
            dims[i] += dims[i - d];
        }
    }
    dims
}

fn as_u128(s: &TruncatedSeries) -> Vec<u128> {
    s.coefficients()
        .iter()
        .map(|c| u128::try_from(c).unwrap())
        .collect()
}

fn v_degrees(k: u32, n: usize) -> Vec<usize> {
    (1..=k)
        .map(catalog::v_degree)
        .take_while(|&d| d <= n)
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    pass_report(splitting::verify_rhs_one(512, CTerm::Exact))?;
    let elapsed = start.elapsed();
    let total = splitting::b_series(2, 512)
        .and_then(|b| b.add(&splitting::a_series(2, 512)?))
        .map_err(|e| e.to_string())?;
    ensure(total.is_one(), "B_2 + A_2 is not 1")?;
    ensure(
        elapsed < Duration::from_secs(1),
        format!("took {elapsed:?}"),
    )
}

fn criterion_2() -> Outcome {
    let n = 512;
    for s in 2..=9 {
        pass_report(splitting::verify_bcb(s, n, CTerm::Exact))?;
        let a = splitting::a_series(s, n).unwrap();
        let rhs = splitting::c_series(s, n)
            .unwrap()
            .add(&splitting::a_series(s + 1, n).unwrap())
            .unwrap();
        ensure(a == rhs, format!("A_{s} != C_{s} + A_{}", s + 1))?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    pass_report(splitting::verify_lemma61(256))?;
    let n = 40;
    // v_1, v_2 monomials of degree 6 are v_1^3 and v_2
    let bp2 = polynomial_dims(&v_degrees(2, n), n);
    ensure(bp2[6] == 2, "rank of BP<2> in degree 6")?;
    let f = homotopy_profile(SpectrumId::F, n).unwrap().free_ranks;
    ensure(
        f.coeff_or_zero(12) == BigInt::from(bp2[6]),
        "F in degree 12",
    )?;
    let bop = homotopy_profile(SpectrumId::BoP, n).unwrap();
    let bo = homotopy_profile(SpectrumId::Bo, n).unwrap();
    ensure(bop.torsion_z2 == bo.torsion_z2, "torsion patterns differ")
}

fn criterion_4() -> Outcome {
    pass_report(tower::verify_bo_regression(64))?;
    let bo2 = catalog::bo_space_homology(2, 64).unwrap();
    let bo3 = catalog::bo_space_homology(3, 64).unwrap();
    ensure(
        bo2.tor_suspend(0).unwrap() == bo3,
        "bo_2 -> bo_3 is not exact",
    )
}

fn criterion_5() -> Outcome {
    let n = 100;
    pass_report(tower::verify_prop46(n))?;
    let even: Vec<usize> = (1..=n / 2).map(|i| 2 * i).collect();
    let bo2_gens: Vec<usize> = (0..).map(|i| 4 * i + 2).take_while(|&d| d <= n).collect();
    let bo4_gens: Vec<usize> = (1..).map(|i| 4 * i).take_while(|&d| d <= n).collect();
    let lhs = polynomial_dims(&even, n);
    let rhs = polynomial_dims(&[bo2_gens, bo4_gens].concat(), n);
    ensure(lhs == rhs, "oracle disagrees")?;
    let bu2 = catalog::bu_space_homology(2, n).unwrap().poincare_series();
    ensure(as_u128(&bu2) == lhs, "bu_2 series disagrees with oracle")?;
    ensure(lhs[8] == 5 && rhs[8] == 5, "coefficient of x^8 is not 5")
}

fn criterion_6() -> Outcome {
    let r = tower::verify_negative_tower(-8, 5, 64, None).map_err(|e| e.to_string())?;
    ensure(r.cases.len() == 14, "expected 14 indices")?;
    ensure(r.pass, r.to_string())
}

fn criterion_7() -> Outcome {
    let tower = tower::bop_tower(12, 60).map_err(|e| e.to_string())?;
    ensure(tower.len() == 11, "expected BoP_2..BoP_12")?;
    for r in &tower {
        let t = r.table.as_ref().ok_or("missing table")?;
        let parity = t.parity_check();
        let want = AlgebraKind::for_index(r.space.index);
        ensure(
            t.kind() == want,
            format!("{} has kind {}", r.space, t.kind()),
        )?;
        let ok = if r.space.index % 2 == 0 {
            parity.all_even
        } else {
            parity.all_odd
        };
        ensure(ok, format!("{} parity", r.space))?;
    }
    pass_report(tower::verify_bop_tower(12, 60))?;
    let bop2 = &tower[0].series;
    ensure(
        bop2.coeff_or_zero(2) == BigInt::from(1),
        "H_2(BoP_2) is not 1-dimensional",
    )
}

fn criterion_8() -> Outcome {
    for s in [SpectrumId::BP, SpectrumId::Bu] {
        pass_report(tower::verify_oracle_equivalence(s, -6, 6, 40))?;
    }
    // independent: H_*(BP_2) by coin change on the rank rule's generators
    let n = 40;
    let bp = polynomial_dims(&v_degrees(6, n), n);
    let gens: Vec<usize> = (1..=n)
        .filter(|&d| d >= 2 && (d - 2) % 2 == 0)
        .flat_map(|d| std::iter::repeat_n(d, bp[d - 2] as usize))
        .collect();
    let table = tower::rank_rule_homology(catalog::SpaceRef::new(SpectrumId::BP, 2), n).unwrap();
    ensure(
        as_u128(&table.poincare_series()) == polynomial_dims(&gens, n),
        "BP_2 series",
    )
}

fn criterion_9() -> Outcome {
    pass_report(splitting::verify_irreducibility(12))?;
    pass_report(splitting::verify_index_bijection(1 << 13))?;
    pass_report(splitting::verify_wsw2_5(6, 128))?;
    ensure(
        !splitting::in_irreducible_window(4, 4),
        "boundary u accepted",
    )?;
    let n = 128;
    for j in 2..=6u32 {
        let top = polynomial_dims(&v_degrees(j, n), n);
        let below = polynomial_dims(&v_degrees(j - 1, n), n);
        let step = catalog::v_degree(j);
        for m in 0..=n {
            let shifted = if m >= step { top[m - step] } else { 0 };
            ensure(top[m] == below[m] + shifted, format!("j={j} m={m}"))?;
        }
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    pass_report(splitting::verify_thm26_homotopy(256))?;
    // d = 12: BoP contributes rank 1 in degree 6, bo none, Y_12 one
    let bop = homotopy_profile(SpectrumId::BoP, 6).unwrap().free_ranks;
    ensure(bop.coeff_or_zero(6) == BigInt::from(1), "BoP in degree 6")
}

fn criterion_11() -> Outcome {
    pass_report(conjecture::verify_epsilon_partition(64))?;
    pass_report(conjecture::verify_conjecture_limit(64, 64, Some(16)))?;
    pass_report(conjecture::verify_first_appearance(64))?;
    pass_report(conjecture::verify_squares(1 << 12))?;
    // the limit is the BP-bar cohomology series over 1 + x^2
    let n = 64;
    let bp = polynomial_dims(&v_degrees(6, n), n);
    let bpbar: Vec<u128> = (0..=n)
        .map(|d| (0..=d / 8).map(|a| bp[d - 8 * a]).sum())
        .collect();
    let limit = as_u128(&conjecture::bop_cohomology_series(n).unwrap());
    let mut times = vec![0u128; n + 1];
    for d in 0..=n {
        times[d] = limit[d] + if d >= 2 { limit[d - 2] } else { 0 };
    }
    ensure(
        times == bpbar,
        "limit times (1 + x^2) is not the BP-bar series",
    )?;
    let at16 = conjecture::conjectured_bopn_cohomology(16, n).unwrap();
    ensure(as_u128(&at16) == limit, "n = 16 has not reached the limit")
}

fn bop(args: &[&str]) -> (i32, String, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_bop"))
        .args(args)
        .output()
        .expect("spawn bop");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 output"),
        start.elapsed(),
    )
}

fn is_report(v: &Value) -> bool {
    let Some(o) = v.as_object() else { return false };
    let pass = o.get("pass").and_then(Value::as_bool);
    let failure = o.get("first_failure_degree");
    o.get("check").is_some_and(Value::is_string)
        && o.get("parameters").is_some_and(|p| {
            p.as_object()
                .is_some_and(|m| m.values().all(Value::is_string))
        })
        && o.get("elapsed_ms").is_some_and(Value::is_u64)
        && pass.is_some()
        && (pass == Some(true)) == failure.is_none()
        && failure.is_none_or(Value::is_u64)
}

fn is_series(v: &Value) -> bool {
    let n = v.get("truncation").and_then(Value::as_u64);
    let coeffs = v.get("coefficients").and_then(Value::as_array);
    match (n, coeffs) {
        (Some(n), Some(c)) => {
            c.len() as u64 == n + 1
                && c.iter()
                    .all(|x| x.as_str().is_some_and(|s| s.parse::<BigInt>().is_ok()))
        }
        _ => false,
    }
}

fn is_tower_result(v: &Value) -> bool {
    let table_ok = match v.get("table") {
        None | Some(Value::Null) => true,
        Some(t) => {
            t.get("kind").is_some_and(Value::is_string)
                && t.get("component_rank").is_some_and(Value::is_u64)
                && t.get("truncation").is_some_and(Value::is_u64)
                && t.get("generators")
                    .and_then(Value::as_array)
                    .is_some_and(|g| {
                        g.iter()
                            .all(|e| e["degree"].is_u64() && e["count"].is_u64())
                    })
        }
    };
    v["space"]["spectrum"].is_string()
        && v["space"]["index"].is_i64()
        && v.get("series").is_some_and(is_series)
        && v["provenance"].is_string()
        && table_ok
}

fn criterion_12() -> Outcome {
    let (code, text, elapsed) = bop(&["verify", "all", "--max-degree", "256", "--format", "json"]);
    ensure(code == 0, format!("verify all exited {code}"))?;
    ensure(
        elapsed < Duration::from_secs(30),
        format!("verify all took {elapsed:?}"),
    )?;
    let all: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let reports = all.as_array().ok_or("verify all json is not an array")?;
    ensure(
        !reports.is_empty() && reports.iter().all(is_report),
        "report schema",
    )?;
    let back: Vec<bop_core::VerificationReport> =
        serde_json::from_value(all.clone()).map_err(|e| e.to_string())?;
    ensure(
        serde_json::to_value(&back).unwrap() == all,
        "reports do not round-trip",
    )?;

    let (code, text, _) = bop(&[
        "homology",
        "BoP",
        "4",
        "--max-degree",
        "40",
        "--format",
        "json",
    ]);
    ensure(code == 0, "homology BoP 4 failed")?;
    let v: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    ensure(
        is_tower_result(&v) && v["provenance"] == "ses_solved",
        "tower result schema",
    )?;

    let (code, text, _) = bop(&["tower", "--max-degree", "30", "--format", "json"]);
    let v: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    ensure(
        code == 0 && v.as_array().is_some_and(|a| a.iter().all(is_tower_result)),
        "tower schema",
    )?;

    let (code, text, _) = bop(&["catalog", "--max-degree", "16", "--format", "json"]);
    let v: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let catalog_ok = v.as_array().is_some_and(|a| {
        a.iter().all(|e| {
            e["spectrum"].is_string()
                && is_series(&e["profile"]["free_ranks"])
                && e["profile"]["torsion_z2"].is_object()
        })
    });
    ensure(code == 0 && catalog_ok, "catalog schema")?;

    for (fault, check, degree) in [
        ("drop-one-plus-x2", "rhs-one", 8),
        ("drop-one-plus-x2", "bcb", 8),
        ("corrupt-f", "negative-tower", 1),
    ] {
        let (code, text, _) = bop(&[
            "verify",
            check,
            "--inject-fault",
            fault,
            "--max-degree",
            "64",
            "--format",
            "json",
        ]);
        ensure(code == 1, format!("{fault} on {check} exited {code}"))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        ensure(
            is_report(&v) && v["first_failure_degree"] == degree,
            format!("{fault} on {check} report"),
        )?;
    }
    let (code, _, _) = bop(&["verify", "all", "--inject-fault", "corrupt-f", "--quiet"]);
    ensure(code == 1, "faulted verify all did not exit 1")
}

fn main() {
    let criteria: [Criterion; 12] = [
        (
            "1 master identity B_2 + A_2 = 1 to degree 512 in under 1 s",
            criterion_1,
        ),
        (
            "2 induction B_{s+1} = B_s + C_s and A_s = C_s + A_{s+1}, s = 2..9, degree 512",
            criterion_2,
        ),
        (
            "3 BoP free ranks = bo + shifted BP<k> to degree 256, torsion equal",
            criterion_3,
        ),
        (
            "4 bar spectral sequence reproduces the bo tables to degree 64",
            criterion_4,
        ),
        (
            "5 H(bu_2) = H(bo_2) x H(bo_4) to degree 100, x^8 coefficient 5",
            criterion_5,
        ),
        (
            "6 series(X_i) = series(F_i) x series(F_{i+2}), i = -8..5, degree 64",
            criterion_6,
        ),
        (
            "7 BoP tower to index 12, degree 60: counts, parity, reconstruction, base",
            criterion_7,
        ),
        (
            "8 rank rule = iterated bar spectral sequence for BP and bu, -6..6, degree 40",
            criterion_8,
        ),
        (
            "9 irreducibility windows, index bijection to 2^13, BP<j> rank identity",
            criterion_9,
        ),
        (
            "10 homotopy of BoP_6 = bo_6 x product of BP<k> spaces to degree 256",
            criterion_10,
        ),
        (
            "11 epsilon partition, conjecture limit, first appearance, squares",
            criterion_11,
        ),
        (
            "12 CLI: verify all exits 0 in under 30 s, JSON schemas, faults exit 1",
            criterion_12,
        ),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("PASS {name}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("{} of 12 criteria failed", failed.len());
        std::process::exit(1);
    }
}
