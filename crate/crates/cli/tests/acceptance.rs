//! Acceptance criteria 1-11. Runs without the test harness so that each
//! criterion prints one PASS/FAIL line with its wall time; the target fails
//! if any criterion fails or runs over its time budget.

use std::process::Command;
use std::time::{Duration, Instant};

use cuspidal_core::genweight::{
    build_f, build_n, build_n_via_weyl, check_cuspidal, check_relations, extract_t, hom_space,
    is_weight_module, iso_check, u0_commutes, BlockSource, GenModule, Params,
};
use cuspidal_core::linalg::{Matrix, NilpotentFamily, Scalar};
use cuspidal_core::random::{random_commuting_pair, random_family, seeded_rng};
use cuspidal_core::reconstruct::{
    casimir_a, reconstruct_with, recover_t12, Branch, LayerOrder, PartialModule,
};
use cuspidal_core::sl2::{
    build_vbar, casimir_action, check_annihilator, g_charpoly_check, CommutingPair,
};
use cuspidal_core::weyl::{Label, SpBasis, StructureConstants};
use serde_json::Value;

type Outcome = Result<String, String>;

/// Criterion number, time budget in seconds, and the check itself.
type Criterion = (u32, u64, fn() -> Outcome);

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn a2() -> Params {
    Params::default_for(2).unwrap()
}

fn a3() -> Params {
    Params::default_for(3).unwrap()
}

/// The seeded families of criterion 3: seeds 0..6 for n = 2 with dims
/// cycling 1..3, seeds 6..10 for n = 3 with dims cycling 1..2.
fn seeded_families() -> Vec<(Params, NilpotentFamily)> {
    (0..10u64)
        .map(|seed| {
            let mut rng = seeded_rng(seed);
            if seed < 6 {
                (a2(), random_family(&mut rng, 2, 1 + seed as usize % 3))
            } else {
                (a3(), random_family(&mut rng, 3, 1 + seed as usize % 2))
            }
        })
        .collect()
}

fn radius_for(params: &Params) -> i64 {
    if params.n() == 2 {
        4
    } else {
        3
    }
}

fn cli(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_cuspidal"))
        .args(args)
        .output()
        .expect("binary runs");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), json)
}

fn criterion_1() -> Outcome {
    let mut total = 0;
    for n in [2, 3] {
        let sc = ok(StructureConstants::compute(&ok(SpBasis::new(n))?))?;
        let anti = sc.antisymmetry_failures();
        let jacobi = sc.jacobi_failures();
        ensure(anti.is_empty() && jacobi.is_empty(), || {
            format!(
                "n={n}: {} antisymmetry and {} Jacobi failures",
                anti.len(),
                jacobi.len()
            )
        })?;
        total += sc.dim().pow(3);
    }
    Ok(format!("{total} label triples"))
}

fn criterion_2() -> Outcome {
    for (params, radius) in [(a2(), 4), (a3(), 3)] {
        let n = params.n();
        let m = ok(build_n(&params, radius))?;
        let rel = check_relations(&m);
        ensure(rel.passed(), || {
            format!("n={n}: {} relation violations", rel.violations.len())
        })?;
        ensure(ok(build_n_via_weyl(&params, radius))? == m, || {
            format!("n={n}: Weyl route differs")
        })?;
        ensure(check_cuspidal(&m).passed(), || {
            format!("n={n}: not cuspidal")
        })?;
    }
    Ok("N(a) for n=2 (R=4) and n=3 (R=3)".into())
}

fn criterion_3() -> Outcome {
    for (seed, (params, fam)) in seeded_families().into_iter().enumerate() {
        let m = ok(build_f(&fam, &params, radius_for(&params)))?;
        let rel = check_relations(&m);
        ensure(rel.passed(), || {
            format!("seed {seed}: {} relation violations", rel.violations.len())
        })?;
        ensure(check_cuspidal(&m).passed(), || {
            format!("seed {seed}: not cuspidal")
        })?;
    }
    Ok("10 families".into())
}

fn criterion_4() -> Outcome {
    let expected = Scalar::new(529, 225);
    let mut modules = vec![ok(build_n(&a2(), 4))?];
    for (params, fam) in seeded_families() {
        if params.n() == 2 {
            modules.push(ok(build_f(&fam, &params, 4))?);
        }
    }
    for (i, m) in modules.iter().enumerate() {
        let c = ok(casimir_a(m, &[0, 0]))?;
        ensure(c.has_single_eigenvalue(&expected), || {
            format!("module {i}: Casimir {c:?}")
        })?;
    }
    Ok(format!("{} modules, eigenvalue {expected}", modules.len()))
}

fn criterion_5() -> Outcome {
    let mut checks = 0;
    for seed in 0..20u64 {
        let dim = 1 + seed as usize % 4;
        let (p, q) = random_commuting_pair(&mut seeded_rng(seed), dim);
        let pq = ok(CommutingPair::new(p, q))?;
        let m = ok(build_vbar(&pq, 4))?;
        let expected = pq.shifted_sum_squared(1);
        let (lo, hi) = m.window();
        for i in lo + 1..hi {
            ensure(ok(casimir_action(&m, i))? == expected, || {
                format!("seed {seed}: Casimir at {i}")
            })?;
            checks += 1;
        }
        for size in 2..=3 {
            let r = ok(check_annihilator(&m, &pq, size))?;
            ensure(r.passed(), || {
                format!("seed {seed}: C{size} annihilator fails")
            })?;
            checks += r.checks;
        }
        ensure(g_charpoly_check(&pq).passed(), || {
            format!("seed {seed}: G check fails")
        })?;
    }
    Ok(format!("20 pairs, {checks} block checks"))
}

fn criterion_6() -> Outcome {
    let mut dims = Vec::new();
    for seed in 0..10u64 {
        let mut rng = seeded_rng(1000 + seed);
        let v = random_family(&mut rng, 2, 1 + seed as usize % 3);
        let w = random_family(&mut rng, 2, 1 + (seed as usize / 3) % 3);
        let fv = ok(build_f(&v, &a2(), 2))?;
        let fw = ok(build_f(&w, &a2(), 2))?;
        let homs = ok(hom_space(&fv, &fw))?.len();
        let family_homs = ok(v.intertwiners(&w))?.len();
        ensure(homs == family_homs, || {
            format!("seed {seed}: dim hom {homs} vs {family_homs}")
        })?;
        dims.push(homs);
    }
    Ok(format!("hom dimensions {dims:?}"))
}

fn criterion_7() -> Outcome {
    for (seed, (params, fam)) in seeded_families().into_iter().enumerate() {
        let m = ok(build_f(&fam, &params, 2))?;
        ensure(ok(extract_t(&m))? == fam, || {
            format!("seed {seed}: extract_T differs")
        })?;
        if params.n() == 2 {
            let y1 = m.block_at(&Label::H(1), &[0, 0]).ok_or("no H block")?;
            let y2 = ok(casimir_a(&m, &[0, 0]))?;
            let t = ok(recover_t12(y1, &y2, &params, Branch::Plus))?;
            ensure(t == fam, || format!("seed {seed}: recover_T12 differs"))?;
        }
    }
    Ok("10 families".into())
}

fn criterion_8() -> Outcome {
    let mut steps = 0;
    for seed in 0..5u64 {
        let fam = random_family(&mut seeded_rng(seed), 2, 1 + seed as usize % 3);
        let m = ok(build_f(&fam, &a2(), 4))?;
        let rec = ok(reconstruct_with(
            &ok(PartialModule::strip(&m))?,
            LayerOrder::UpThenDown,
        ))?;
        ensure(ok(iso_check(&rec.module, &m))?.is_some(), || {
            format!("seed {seed}: not isomorphic")
        })?;
        for s in &rec.raising {
            // The unique solution is P + 3, which is Q + 3 only when P = Q.
            ensure(s.x == s.p.shift_int(3), || {
                format!("seed {seed}: X != P+3 at {:?}", s.point)
            })?;
        }
        for s in &rec.lowering {
            let u = &s.p.shift_int(3) * &s.p.shift_int(2);
            ensure(s.solution.u == u, || {
                format!("seed {seed}: u != (P+3)(P+2) at {:?}", s.point)
            })?;
            let (difference, product) = ok(s.solution.residuals(&s.p))?;
            ensure(difference.is_zero() && product.is_zero(), || {
                format!("seed {seed}: residual at {:?}", s.point)
            })?;
        }
        steps += rec.raising.len() + rec.lowering.len();
    }
    Ok(format!(
        "5 modules, {steps} solves; raising solution is P+3 (not Q+3)"
    ))
}

fn criterion_9() -> Outcome {
    for n in ["2", "3"] {
        let (code, json) = cli(&["ext-demo", "--n", n, "--R", "2"]);
        ensure(code == 0, || format!("ext-demo --n {n} exited {code}"))?;
        ensure(json["families"] == n.parse::<u64>().unwrap(), || {
            format!("n={n}: {} families", json["families"])
        })?;
        let ext = &json["extensions"];
        ensure(
            ext["isomorphic_pairs"]
                .as_array()
                .is_some_and(|p| p.is_empty()),
            || format!("n={n}: isomorphic pair"),
        )?;
        for cert in ext["certificates"].as_array().ok_or("no certificates")? {
            ensure(cert["weight"] == false && cert["split"] == false, || {
                format!("n={n}: bad certificate {cert}")
            })?;
        }
    }
    for (seed, (params, fam)) in seeded_families().into_iter().enumerate() {
        let m = ok(build_f(&fam, &params, 2))?;
        ensure(is_weight_module(&m) == fam.is_zero(), || {
            format!("seed {seed}: weight criterion")
        })?;
    }
    for n in [2, 3] {
        let params = Params::default_for(n).unwrap();
        for d in 1..=2 {
            let zero = ok(NilpotentFamily::new(vec![Matrix::zero(d, d); n]))?;
            ensure(is_weight_module(&ok(build_f(&zero, &params, 2))?), || {
                format!("zero family n={n} d={d}")
            })?;
        }
    }
    Ok("2 and 3 self-extensions".into())
}

fn criterion_10() -> Outcome {
    let mut modules: Vec<GenModule> = vec![ok(build_n(&a2(), 4))?];
    for seed in 0..3u64 {
        modules.push(ok(build_f(
            &random_family(&mut seeded_rng(seed), 2, 2 + seed as usize % 2),
            &a2(),
            4,
        ))?);
    }
    let mut checks = 0;
    for (i, m) in modules.iter().enumerate() {
        let r = u0_commutes(m, 3);
        ensure(r.passed(), || {
            format!("module {i}: {} violations", r.violations.len())
        })?;
        checks += r.checks;
    }
    Ok(format!("4 modules, {checks} commutators"))
}

fn names_site(json: &Value, label: &str, b: &Value) -> bool {
    json["violations"].as_array().is_some_and(|vs| {
        vs.iter()
            .any(|v| &v["b"] == b && (v["label_u"] == label || v["label_v"] == label))
    })
}

fn criterion_11() -> Outcome {
    let site = "X[e2-e1]@1,-1";
    let b = serde_json::json!([1, -1]);
    for cmd in [
        vec!["verify", "--R", "3"],
        vec!["verify", "--R", "3", "--dim", "2", "--seed", "4"],
        vec!["reconstruct", "--R", "3", "--dim", "2"],
        vec!["ext-demo", "--R", "2"],
    ] {
        let mut args = cmd.clone();
        args.extend(["--inject-fault", site]);
        let (code, json) = cli(&args);
        ensure(code == 1, || format!("{cmd:?} exited {code}"))?;
        ensure(names_site(&json, "X[e2-e1]", &b), || {
            format!("{cmd:?} does not name the fault")
        })?;
        let (clean, _) = cli(&cmd);
        ensure(clean == 0, || {
            format!("{cmd:?} without a fault exited {clean}")
        })?;
    }
    let (code, json) = cli(&["sl2", "--R", "3", "--dim", "2", "--inject-fault", "1"]);
    ensure(code == 1, || format!("sl2 exited {code}"))?;
    ensure(names_site(&json, "e", &serde_json::json!([1])), || {
        "sl2 does not name the fault".into()
    })?;
    Ok("verify, reconstruct, ext-demo and sl2".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, 10, criterion_1),
        (2, 30, criterion_2),
        (3, 60, criterion_3),
        (4, 5, criterion_4),
        (5, 30, criterion_5),
        (6, 30, criterion_6),
        (7, 10, criterion_7),
        (8, 60, criterion_8),
        (9, 30, criterion_9),
        (10, 60, criterion_10),
        (11, 10, criterion_11),
    ];
    let mut failed = Vec::new();
    for (id, budget, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = result.and_then(|detail| {
            if elapsed <= Duration::from_secs(budget) {
                Ok(detail)
            } else {
                Err(format!("{detail}; over the {budget} s budget"))
            }
        });
        match &result {
            Ok(detail) => println!(
                "PASS criterion {id:>2} ({:.2} s): {detail}",
                elapsed.as_secs_f64()
            ),
            Err(reason) => {
                println!(
                    "FAIL criterion {id:>2} ({:.2} s): {reason}",
                    elapsed.as_secs_f64()
                );
                failed.push(id);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
