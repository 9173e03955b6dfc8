use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{json, Value};
use superdegen::degeneration::{
    check_straightening, evaluate, family_ideal, find_weight_vector, gr_ideal, hilbert_check, lift_relations,
    DegenerationFamily, GeneratorRing, GradedRelation, RingData,
};
use superdegen::essential::{
    check_semigroup_property, essential_monomials, is_favourable, search_catalog, EssentialSet,
};
use superdegen::pipeline::{parse_rationals, Setup};
use superdegen::polytope::{compare, InequalitySystem};
use superdegen::superpoly::MultiExponent;
use superdegen::toric::{certify, ExponentSet, Reach, Verdict};

use crate::config::JobConfig;
use crate::UsageError;

/// A finished command: text and structured forms of the same report, plus
/// data files, all deterministic.
pub struct Report {
    pub name: &'static str,
    pub text: String,
    pub json: Value,
    pub files: Vec<(String, String)>,
    pub passed: bool,
}

fn setup(cfg: &JobConfig) -> Result<Setup> {
    let s = Setup::build(&cfg.algebra, &cfg.realization)?;
    for w in &s.warnings {
        eprintln!("warning: {w}");
    }
    Ok(s)
}

fn header(cfg: &JobConfig, s: &Setup, text: &mut String) {
    let _ = writeln!(text, "algebra {}", s.alg.spec);
    let _ = writeln!(text, "module dimension {}", s.module_dim());
    let _ = writeln!(text, "negative basis: {} even, {} odd", s.basis.n(), s.basis.q());
    let _ = writeln!(
        text,
        "typicality {}",
        if cfg.realization.assume_typical { "assumed" } else { "not asserted" }
    );
    for w in &s.warnings {
        let _ = writeln!(text, "warning: {w}");
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn essential(cfg: &JobConfig) -> Result<Report> {
    let s = setup(cfg)?;
    let order = s.order(&cfg.order)?;
    let k = cfg.bounds.favourable_k as usize;
    let data = RingData::new(&s.alg, &s.level_one, &s.basis, &order, k, s.divided)?;
    let sets: Vec<EssentialSet> = (1..=k).map(|i| data.essential(i).clone()).collect();

    let mut text = String::new();
    header(cfg, &s, &mut text);
    let _ = writeln!(text, "order {}", order.name());
    let mut files = Vec::new();
    for set in &sets {
        let _ = writeln!(text, "|es({} lambda)| = {}", set.level, set.len());
        files.push((format!("essential_k{}.txt", set.level), set.to_text()));
    }
    let mut semigroup = Vec::new();
    let mut ok = true;
    for k1 in 1..k {
        for k2 in k1..=k - k1 {
            let r = check_semigroup_property(&sets[k1 - 1], &sets[k2 - 1], &sets[k1 + k2 - 1]);
            let _ = writeln!(
                text,
                "semigroup ({k1},{k2}): {} ({} sums, {} bottom, {} violations)",
                mark(r.passed()),
                r.checked,
                r.bottom,
                r.violations.len()
            );
            ok &= r.passed();
            semigroup.push(json!({ "levels": [k1, k2], "report": r }));
        }
    }
    let fav = is_favourable(&sets);
    let _ = writeln!(text, "favourable up to k = {}: {}", fav.max_level, mark(fav.favourable));
    for (level, e) in &fav.failures {
        let _ = writeln!(text, "  no decomposition: {e} at level {level}");
    }
    ok &= fav.favourable;
    Ok(Report {
        name: "essential",
        text,
        json: json!({
            "algebra": s.alg.spec.to_string(),
            "module_dimension": s.module_dim(),
            "order": order,
            "essential": sets,
            "semigroup": semigroup,
            "favourable": fav,
            "assume_typical": cfg.realization.assume_typical,
            "warnings": s.warnings,
        }),
        files,
        passed: ok,
    })
}

fn relation_json(ring: &GeneratorRing, g: &GradedRelation) -> Value {
    json!({
        "degree": g.degree,
        "lead": ring.format(&g.lead),
        "binomial": g.is_binomial(),
        "full": ring.format(&g.full()),
    })
}

fn family_json(ring: &GeneratorRing, f: &DegenerationFamily) -> Value {
    let gens: Vec<Value> = f
        .generators
        .iter()
        .map(|g| {
            json!({
                "degree": g.degree,
                "lead": ring.format(&g.lead),
                "corrections": g.corrections.iter().map(|(e, p)| json!({ "t": e, "poly": ring.format(p) })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let exchange: Vec<Value> = f
        .exchange
        .iter()
        .map(|(h, ps)| json!({ "degree": h, "relations": ps.iter().map(|p| ring.format(p)).collect::<Vec<_>>() }))
        .collect();
    json!({ "weight": f.weight, "degree_bound": f.degree_bound, "generators": gens, "exchange": exchange })
}

pub fn degenerate(cfg: &JobConfig) -> Result<Report> {
    let s = setup(cfg)?;
    let order = s.order(&cfg.order)?;
    let d = cfg.bounds.degree_bound;
    let samples = parse_rationals(&cfg.bounds.samples)?;
    let mut data = RingData::new(&s.alg, &s.level_one, &s.basis, &order, d as usize, s.divided)?;
    let ring = GeneratorRing::new(data.essential(1));
    let mut text = String::new();
    header(cfg, &s, &mut text);
    let _ = writeln!(text, "order {}", order.name());
    let _ = writeln!(text, "generators: {} even, {} odd", ring.ns(), ring.qs());
    if d < 2 {
        eprintln!("warning: degree bound {d} examines no relations");
        let _ = writeln!(text, "warning: degree bound {d} examines no relations");
    }
    let leads = gr_ideal(&ring, d);
    let lifted = lift_relations(&ring, &mut data, &leads)?;
    let w = find_weight_vector(&lifted, s.vars())?;
    let family = family_ideal(&ring, &data, &lifted, &w, d)?;
    let corrected = lifted.iter().filter(|g| !g.corrections.is_empty()).count();
    let _ = writeln!(
        text,
        "relations up to degree {d}: {} ({} binomial, {corrected} with corrections)",
        lifted.len(),
        lifted.iter().filter(|g| g.is_binomial()).count()
    );
    let _ = writeln!(text, "weight vector {w:?}");
    let straightening = if d >= 2 {
        Some(check_straightening(&mut data, 1, 1)?)
    } else {
        None
    };
    if let Some(r) = &straightening {
        let _ = writeln!(text, "straightening (1,1): {} ({} pairs)", mark(r.failures.is_empty()), r.pairs);
    }
    let hilbert = hilbert_check(&ring, &family, &samples, &data.dims(), d);
    let _ = writeln!(text, "expected dimensions {:?}", hilbert.expected);
    for row in &hilbert.rows {
        let _ = writeln!(text, "  t = {}: {:?}", row.sample, row.dims);
    }
    let _ = writeln!(text, "hilbert: {}", mark(hilbert.passed));
    let passed = hilbert.passed && straightening.as_ref().is_none_or(|r| r.failures.is_empty());
    let gr_text: String = leads.iter().map(|g| format!("{}\n", ring.format(&g.lead))).collect();
    let rel_text: String = lifted.iter().map(|g| format!("{}\n", ring.format(&g.full()))).collect();
    Ok(Report {
        name: "degenerate",
        text,
        json: json!({
            "algebra": s.alg.spec.to_string(),
            "order": order,
            "generators": ring.exps,
            "gr_ideal": leads.iter().map(|g| relation_json(&ring, g)).collect::<Vec<_>>(),
            "relations": lifted.iter().map(|g| relation_json(&ring, g)).collect::<Vec<_>>(),
            "family": family_json(&ring, &family),
            "straightening": straightening,
            "hilbert": hilbert,
            "assume_typical": cfg.realization.assume_typical,
        }),
        files: vec![
            ("family.txt".into(), family.to_text(&ring)),
            ("gr_ideal.txt".into(), gr_text),
            ("relations.txt".into(), rel_text),
        ],
        passed,
    })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn load_exponents(path: &Path) -> Result<ExponentSet> {
    let parsed = EssentialSet::from_text(&read(path)?).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    let monos: Vec<MultiExponent> = parsed.into_iter().map(|(e, _)| e).collect();
    let Some(first) = monos.first() else {
        return Err(UsageError(format!("{}: empty exponent set", path.display())).into());
    };
    Ok(ExponentSet::from_monomials(first.n(), first.q(), &monos)?)
}

fn certificate_text(cert: &superdegen::toric::ToricCertificate) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "verdict {:?}", cert.verdict);
    let _ = writeln!(text, "odd removal: {}", mark(cert.odd_removal.holds));
    let _ = writeln!(
        text,
        "even Laurent lattice: {} (rank {}/{}, invariant factors {:?})",
        mark(cert.lattice.holds),
        cert.lattice.rank,
        cert.lattice.ambient_rank,
        cert.lattice.invariant_factors
    );
    for (i, r) in cert.reachability.iter().enumerate() {
        let s = match r {
            Reach::Witness { exponent, summands } => format!("witness {exponent} from {summands:?}"),
            Reach::Unreachable => "unreachable".into(),
            Reach::Inconclusive { bound } => format!("undecided within {bound} summands"),
        };
        let _ = writeln!(text, "odd direction {}: {s}", i + 1);
    }
    let _ = writeln!(text, "action parameters: dimension {}", cert.action.dimension());
    for (key, vecs) in &cert.action.basis {
        for v in vecs {
            let _ = writeln!(text, "  c[{},{}] = [{}]", key.0 + 1, key.1 + 1, v.join(", "));
        }
    }
    if cert.alternative_action.is_some() {
        let _ = writeln!(text, "note: the ungraded reading gives different constraints (see JSON)");
    }
    let _ = writeln!(
        text,
        "derivation closure: {} ({} checks, {} residuals)",
        mark(cert.action_closure.holds && cert.zero_action_closure.holds),
        cert.action_closure.checked + cert.zero_action_closure.checked,
        cert.action_closure.residuals.len() + cert.zero_action_closure.residuals.len()
    );
    text
}

pub fn toric(k: &ExponentSet, bound: Option<usize>) -> Result<Report> {
    let cert = certify(k, bound)?;
    let passed = matches!(cert.verdict, Verdict::Toric { .. });
    Ok(Report {
        name: "toric",
        text: certificate_text(&cert),
        json: serde_json::to_value(&cert)?,
        files: Vec::new(),
        passed,
    })
}

pub fn polytope(cfg: Option<&JobConfig>, system_path: &Path, dilate: u32, compare_es: bool) -> Result<Report> {
    let system = InequalitySystem::parse(&read(system_path)?)
        .map_err(|e| UsageError(format!("{}: {e}", system_path.display())))?
        .dilate(dilate);
    let points = system.enumerate()?;
    let mut text = String::new();
    let _ = writeln!(text, "variables {}", system.vars.len());
    let _ = writeln!(text, "dilation {dilate}");
    let _ = writeln!(text, "lattice points {}", points.len());
    let listing: String = points.points.iter().map(|p| format!("{p} k={dilate}\n")).collect();
    let mut json = json!({ "dilation": dilate, "points": points });
    let mut passed = true;
    if compare_es {
        let cfg = cfg.ok_or_else(|| UsageError("comparison needs --config".into()))?;
        let s = setup(cfg)?;
        let order = s.order(&cfg.order)?;
        let es = essential_monomials(&s.alg, s.evaluator(dilate as usize), &order, dilate as usize)?;
        let diff = compare(&s.alg, &system, &points, &es.monomials, &s.basis)?;
        let _ = writeln!(text, "order {}", order.name());
        let _ = writeln!(
            text,
            "compare with es: {} ({} common, {} polytope only, {} essential only)",
            mark(diff.is_empty()),
            diff.common,
            diff.polytope_only.len(),
            diff.essential_only.len()
        );
        passed = diff.is_empty();
        json["compare"] = serde_json::to_value(&diff)?;
    }
    Ok(Report {
        name: "polytope",
        text,
        json,
        files: vec![("polytope_points.txt".into(), listing)],
        passed,
    })
}

/// One line per stage of the osp(1|4) example pipeline.
pub fn verify_example(cfg: &JobConfig) -> Result<Report> {
    let poly = cfg.polytope.as_ref().ok_or_else(|| UsageError("config has no [polytope] section".into()))?;
    let toric_cfg = cfg.toric.as_ref().ok_or_else(|| UsageError("config has no [toric] section".into()))?;
    let system = InequalitySystem::parse(&read(&cfg.resolve(&poly.file))?)?;
    let listed = load_exponents(&cfg.resolve(&toric_cfg.exponents))?;
    let s = setup(cfg)?;
    let order = s.order(&cfg.order)?;

    let mut stages: Vec<(&str, bool, String)> = Vec::new();

    let points = system.enumerate()?;
    let got: BTreeSet<&MultiExponent> = points.points.iter().collect();
    let want: BTreeSet<&MultiExponent> = listed.elements.iter().map(|(e, _)| e).collect();
    stages.push((
        "polytope",
        got == want,
        format!("{} lattice points, {} listed generators", points.len(), want.len()),
    ));

    let es = essential_monomials(&s.alg, s.evaluator(1), &order, 1)?;
    stages.push((
        "essential",
        es.len() == s.module_dim(),
        format!("|es| = {}, module dimension {}", es.len(), s.module_dim()),
    ));

    let labels = system.root_labels(&s.alg)?;
    let target = points.root_labelled(&labels);
    let catalog = search_catalog(&s.alg, &s.borel, &s.level_one, &target, s.divided, true)?;
    let detail = match catalog.matches.first() {
        Some(m) => format!("match: {} with basis permutation {:?}", m.order.name(), m.permutation),
        None => format!(
            "no order in the catalog reproduces the points ({} tried, best overlap {}/{})",
            catalog.tried,
            catalog.best_overlap,
            target.len()
        ),
    };
    stages.push(("compare", !catalog.matches.is_empty(), detail));

    let d = cfg.bounds.degree_bound;
    let mut data = RingData::new(&s.alg, &s.level_one, &s.basis, &order, d as usize, s.divided)?;
    let ring = GeneratorRing::new(data.essential(1));
    let lifted = lift_relations(&ring, &mut data, &gr_ideal(&ring, d))?;
    let mut nonzero = 0;
    for g in &lifted {
        if !evaluate(&ring, &mut data, &g.full())?.1.is_zero() {
            nonzero += 1;
        }
    }
    stages.push((
        "gr-ideal",
        nonzero == 0,
        format!("{} relations up to degree {d}, {nonzero} fail to vanish", lifted.len()),
    ));

    let family = find_weight_vector(&lifted, s.vars()).and_then(|w| family_ideal(&ring, &data, &lifted, &w, d));
    match family {
        Ok(family) => {
            stages.push(("family", true, format!("weight vector {:?}", family.weight)));
            let samples = parse_rationals(&cfg.bounds.samples)?;
            let h = hilbert_check(&ring, &family, &samples, &data.dims(), d);
            let rows: Vec<String> = h.rows.iter().map(|r| format!("t={}: {:?}", r.sample, r.dims)).collect();
            stages.push(("hilbert", h.passed, format!("expected {:?}; {}", h.expected, rows.join(", "))));
        }
        Err(e) => {
            stages.push(("family", false, e.to_string()));
            stages.push(("hilbert", false, "skipped: no family".into()));
        }
    }

    let k = ExponentSet::from_monomials(system.vars.iter().filter(|v| !v.odd).count(), system.vars.iter().filter(|v| v.odd).count(), &points.points)?;
    let cert = certify(&k, cfg.bounds.semigroup_bound.or(toric_cfg.bound))?;
    stages.push((
        "toric",
        cert.verdict == Verdict::Toric { faithful: true },
        format!("verdict {:?}", cert.verdict),
    ));

    let mut text = String::new();
    for (name, ok, detail) in &stages {
        let _ = writeln!(text, "stage {name}: {} {detail}", mark(*ok));
    }
    let failed: Vec<&str> = stages.iter().filter(|s| !s.1).map(|s| s.0).collect();
    if !failed.is_empty() {
        let _ = writeln!(text, "failed stages: {}", failed.join(", "));
    }
    Ok(Report {
        name: "verify",
        text,
        json: json!({
            "stages": stages.iter().map(|(n, ok, d)| json!({ "stage": n, "passed": ok, "detail": d })).collect::<Vec<_>>(),
            "catalog": catalog,
            "certificate": cert,
        }),
        files: vec![("essential_k1.txt".into(), es.to_text())],
        passed: failed.is_empty(),
    })
}
