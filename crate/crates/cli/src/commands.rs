use std::fs;

use cuspidal_core::genweight::{
    build_f, build_n, check_cuspidal, check_relations, check_weight_spaces, extension_report,
    extract_t, hom_space, iso_check, self_extension_family, u0_commutes, BlockSource, GenModule,
    ModuleDoc,
};
use cuspidal_core::linalg::NilpotentFamily;
use cuspidal_core::random::{random_commuting_pair, random_family, seeded_rng};
use cuspidal_core::reconstruct::{reconstruct_with, LayerOrder, PartialModule};
use cuspidal_core::sl2::{
    build_vbar, casimir_action, check_annihilator, check_double_tensor, g_charpoly_check,
    CommutingPair,
};
use cuspidal_core::{Error, Report, Result, StructureConstants, Violation};
use serde_json::{json, Value};

use crate::config::{parse_fault, HomArgs, RunConfig};

/// What a command produced: the JSON report, whether every check held, and
/// a few lines for the terminal.
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
    pub summary: Vec<String>,
}

/// Number of commuting pairs drawn by `sl2`.
pub const SL2_PAIRS: u64 = 20;

fn family(cfg: &RunConfig) -> Result<NilpotentFamily> {
    match cfg.dim {
        Some(dim) => Ok(random_family(&mut seeded_rng(cfg.seed), cfg.n(), dim)),
        None => NilpotentFamily::new(vec![cuspidal_core::Matrix::zero(1, 1); cfg.n()]),
    }
}

fn module(cfg: &RunConfig, fam: &NilpotentFamily) -> Result<GenModule> {
    if cfg.dim.is_none() {
        build_n(&cfg.params, cfg.radius)
    } else {
        build_f(fam, &cfg.params, cfg.radius)
    }
}

/// Resolves a fault request to a `(label, point)` index pair of `m`.
fn fault_site<M: BlockSource>(
    m: &M,
    request: &str,
    default_label: &str,
) -> Result<(usize, usize, Value)> {
    let layout = m.layout();
    let (name, b) = parse_fault(request, layout.n(), default_label)?;
    let label = layout.basis().parse_label(&name)?;
    let point = layout
        .support()
        .index_of(&b)
        .ok_or_else(|| Error::Parameter(format!("fault point {b:?} is outside the box")))?;
    if m.block(label, point).is_none() {
        return Err(Error::Parameter(format!("no {name} block at {b:?}")));
    }
    Ok((label, point, json!({ "label": name, "b": b })))
}

fn header(command: &str, cfg: &RunConfig) -> Value {
    json!({
        "command": command,
        "n": cfg.n(),
        "a": cfg.params.a(),
        "R": cfg.radius,
        "dim": cfg.dim,
        "seed": cfg.seed,
    })
}

fn section(report: &Report) -> Value {
    json!({ "checks": report.checks, "violations": report.violations.len() })
}

fn line(name: &str, report: &Report) -> String {
    format!(
        "{name}: {} checks, {} violations",
        report.checks,
        report.violations.len()
    )
}

pub fn verify(cfg: &RunConfig) -> Result<Outcome> {
    let fam = family(cfg)?;
    let mut m = module(cfg, &fam)?;
    let mut out = header("verify", cfg);
    if let Some(request) = &cfg.fault {
        let (label, point, site) = fault_site(&m, request, "X[e2-e1]")?;
        m = m.perturbed(label, point)?;
        out["fault"] = site;
    }
    let sc = StructureConstants::compute(m.layout().basis())?;
    let mut structure = Report::new();
    for failure in sc
        .antisymmetry_failures()
        .into_iter()
        .chain(sc.jacobi_failures())
    {
        let names: Vec<String> = failure
            .labels
            .iter()
            .map(|&l| m.layout().basis().name(l))
            .collect();
        structure.record(Some(Violation::single(
            names.join(","),
            vec![],
            "structure constant identity fails",
        )));
    }
    let n = sc.dim();
    structure.checks += n * n + n * n * n;
    let relations = check_relations(&m);
    let cuspidal = check_cuspidal(&m);
    let weights = check_weight_spaces(&m);
    let u0 = u0_commutes(&m, cfg.degree_cap);
    let mut round_trip = Report::new();
    round_trip.checks += 1;
    match extract_t(&m) {
        Ok(t) if t == fam => {}
        Ok(_) => round_trip.record(Some(Violation::single(
            "T".into(),
            vec![],
            "extracted family differs",
        ))),
        Err(e) => round_trip.record(Some(Violation::single("T".into(), vec![], e.to_string()))),
    }
    let summary = vec![
        line("structure constants", &structure),
        line("relations", &relations),
        line("cuspidal", &cuspidal),
        line("weight spaces", &weights),
        line(&format!("U0 (degree {})", cfg.degree_cap), &u0),
        line("family round trip", &round_trip),
    ];
    out["module"] = json!({ "points": m.layout().support().len(), "total_dim": m.total_dim() });
    out["degree_cap"] = json!(cfg.degree_cap);
    out["sections"] = json!({
        "structure": section(&structure),
        "relations": section(&relations),
        "cuspidal": section(&cuspidal),
        "weight_spaces": section(&weights),
        "u0": section(&u0),
        "round_trip": section(&round_trip),
    });
    let all = Report::merged([structure, relations, cuspidal, weights, u0, round_trip]);
    let passed = all.passed();
    out["passed"] = json!(passed);
    out["violations"] = json!(all.violations);
    Ok(Outcome {
        report: out,
        passed,
        summary,
    })
}

fn sl2_pairs(cfg: &RunConfig) -> Vec<CommutingPair> {
    let mut rng = seeded_rng(cfg.seed);
    (0..SL2_PAIRS)
        .map(|k| {
            let dim = cfg.dim.unwrap_or(1 + (k as usize % 4));
            let (p, q) = random_commuting_pair(&mut rng, dim);
            CommutingPair::new(p, q).expect("commuting by construction")
        })
        .collect()
}

pub fn sl2(cfg: &RunConfig) -> Result<Outcome> {
    let mut out = header("sl2", cfg);
    let fault_index = match &cfg.fault {
        None => None,
        Some(request) if request.is_empty() => Some(0),
        Some(request) => Some(
            request
                .parse::<i64>()
                .map_err(|e| Error::Parameter(format!("bad sl2 fault index {request:?}: {e}")))?,
        ),
    };
    let mut casimir = Report::new();
    let mut relations = Report::new();
    let mut annihilators = Report::new();
    let mut g = Report::new();
    let mut double = Report::new();
    for (k, pq) in sl2_pairs(cfg).iter().enumerate() {
        let mut m = build_vbar(pq, cfg.radius)?;
        if let (0, Some(i)) = (k, fault_index) {
            m = m.perturb_e(i)?;
            out["fault"] = json!({ "pair": 0, "label": "e", "index": i });
        }
        relations.merge(m.check_relations());
        let expected = pq.shifted_sum_squared(1);
        let (lo, hi) = m.window();
        for i in lo + 1..hi {
            let c = casimir_action(&m, i)?;
            casimir.record((c != expected).then(|| {
                Violation::pair(
                    "casimir".into(),
                    "(P+Q+1)²".into(),
                    vec![i],
                    c,
                    expected.clone(),
                )
            }));
        }
        for size in 2..=3 {
            annihilators.merge(check_annihilator(&m, pq, size)?);
        }
        g.merge(g_charpoly_check(pq));
        double.merge(check_double_tensor(&m)?);
    }
    let summary = vec![
        line("relations", &relations),
        line("casimir", &casimir),
        line("annihilators", &annihilators),
        line("G", &g),
        line("C2⊗C2", &double),
    ];
    out["pairs"] = json!(SL2_PAIRS);
    out["sections"] = json!({
        "relations": section(&relations),
        "casimir": section(&casimir),
        "annihilators": section(&annihilators),
        "g": section(&g),
        "double_tensor": section(&double),
    });
    let all = Report::merged([relations, casimir, annihilators, g, double]);
    let passed = all.passed();
    out["passed"] = json!(passed);
    out["violations"] = json!(all.violations);
    Ok(Outcome {
        report: out,
        passed,
        summary,
    })
}

pub fn reconstruct(cfg: &RunConfig) -> Result<Outcome> {
    if cfg.n() != 2 {
        return Err(Error::Parameter(format!(
            "reconstruction needs n = 2, got {}",
            cfg.n()
        )));
    }
    let fam = family(cfg)?;
    let m = module(cfg, &fam)?;
    let mut partial = PartialModule::strip(&m)?;
    let mut out = header("reconstruct", cfg);
    if let Some(request) = &cfg.fault {
        let (label, point, site) = fault_site(&partial, request, "X[e2-e1]")?;
        let mut block = partial.block(label, point).expect("checked").clone();
        block[(0, 0)] += &cuspidal_core::Scalar::one();
        partial = partial.with_block(label, point, block)?;
        out["fault"] = site;
    }
    let mut report = partial.check();
    let mut summary = vec![line("restriction data", &report)];
    let mut isomorphic = false;
    if report.passed() {
        match reconstruct_with(&partial, LayerOrder::UpThenDown) {
            Ok(rec) => {
                isomorphic = iso_check(&rec.module, &m)?.is_some();
                report.record((!isomorphic).then(|| {
                    Violation::single("module".into(), vec![], "rebuilt module is not isomorphic")
                }));
                let raising_ok = rec.raising.iter().all(|s| s.x == s.p.shift_int(3));
                let lowering_ok = rec
                    .lowering
                    .iter()
                    .all(|s| s.solution.u == &s.p.shift_int(3) * &s.p.shift_int(2));
                for (ok, what) in [
                    (raising_ok, "X = P + 3"),
                    (lowering_ok, "u = (P + 3)(P + 2)"),
                ] {
                    report.record((!ok).then(|| {
                        Violation::single("solution".into(), vec![], format!("{what} fails"))
                    }));
                }
                out["recovered_family"] = json!(rec.family);
                out["raising_steps"] = json!(rec.raising.len());
                out["lowering_steps"] = json!(rec.lowering.len());
                out["raising_solution"] = json!({ "formula": "X = P + 3", "holds": raising_ok });
                out["lowering_solution"] =
                    json!({ "formula": "u = (P + 3)(P + 2)", "holds": lowering_ok });
                summary.push(format!(
                    "solved {} raising and {} lowering steps",
                    rec.raising.len(),
                    rec.lowering.len()
                ));
            }
            Err(e @ (Error::Reconstruction { .. } | Error::Precondition(_))) => {
                report.record(Some(Violation::single(
                    "reconstruct".into(),
                    vec![],
                    e.to_string(),
                )));
            }
            Err(e) => return Err(e),
        }
    }
    summary.push(format!("isomorphic: {isomorphic}"));
    let passed = report.passed();
    out["isomorphic"] = json!(isomorphic);
    out["checks"] = json!(report.checks);
    out["passed"] = json!(passed);
    out["violations"] = json!(report.violations);
    Ok(Outcome {
        report: out,
        passed,
        summary,
    })
}

pub fn ext_demo(cfg: &RunConfig) -> Result<Outcome> {
    let extra: Vec<NilpotentFamily> = cfg
        .dim
        .map(|_| family(cfg))
        .transpose()?
        .into_iter()
        .collect();
    let ext = extension_report(&cfg.params, cfg.radius, &extra)?;
    let mut out = header("ext-demo", cfg);
    let mut faults = Report::new();
    if let Some(request) = &cfg.fault {
        let first = self_extension_family(&cfg.params, cfg.radius)?.swap_remove(0);
        let (label, point, site) = fault_site(&first, request, "X[e2-e1]")?;
        faults = check_relations(&first.perturbed(label, point)?);
        out["fault"] = site;
    }
    let mut summary = vec![format!("{} self-extension families", ext.count)];
    for c in &ext.certificates {
        summary.push(format!(
            "extension {}: weight: {}, jordan: [{}], split: {}",
            c.index,
            c.weight,
            c.jordan_labels.join(", "),
            c.split
        ));
    }
    for row in &ext.criterion {
        let witness = if row.all_zero && row.weight {
            ", semisimple witness"
        } else {
            ""
        };
        summary.push(format!("{}: weight: {}{witness}", row.family, row.weight));
    }
    let passed = ext.passed() && faults.passed();
    out["families"] = json!(ext.count);
    out["extensions"] = json!(ext);
    out["passed"] = json!(passed);
    out["violations"] = json!(faults.violations);
    Ok(Outcome {
        report: out,
        passed,
        summary,
    })
}

pub fn gen(cfg: &RunConfig) -> Result<Outcome> {
    let fam = family(cfg)?;
    let mut m = module(cfg, &fam)?;
    if let Some(request) = &cfg.fault {
        let (label, point, _) = fault_site(&m, request, "X[e2-e1]")?;
        m = m.perturbed(label, point)?;
    }
    let summary = vec![format!(
        "{} points, total dimension {}",
        m.layout().support().len(),
        m.total_dim()
    )];
    let report = serde_json::to_value(m.to_doc()).map_err(|e| Error::Document(e.to_string()))?;
    Ok(Outcome {
        report,
        passed: true,
        summary,
    })
}

fn load(path: &std::path::Path) -> Result<GenModule> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
    let doc: ModuleDoc = serde_json::from_str(&text)
        .map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
    GenModule::from_doc(&doc)
}

pub fn hom(args: &HomArgs) -> Result<Outcome> {
    let (m1, m2) = (load(&args.source)?, load(&args.target)?);
    let homs = hom_space(&m1, &m2)?;
    let isomorphic = iso_check(&m1, &m2)?.is_some();
    Ok(Outcome {
        report: json!({ "command": "hom", "dim": homs.len(), "isomorphic": isomorphic }),
        passed: true,
        summary: vec![
            format!("dim hom = {}", homs.len()),
            format!("isomorphic: {isomorphic}"),
        ],
    })
}
