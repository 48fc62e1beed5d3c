use std::fs;
use std::io::Read as _;
use std::path::Path;
use std::process::ExitCode;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use toric_fine::atlas::{
    self, classify, closure_laws_hold, coarsening_drop, degeneration_split, global_checks, lattice_coarsen,
    lattice_refine_cover, load_atlas, verify_entry_against, AtlasEntry, Check, EntryReport, Expected,
};
use toric_fine::fine::fine_interior;
use toric_fine::hypersurface::{invariants, Analysis};
use toric_fine::io::{fine_interior_report, parse_polytope, point_json, polytope_to_json};
use toric_fine::lattice::fmt_rat;
use toric_fine::polytope::Polytope;
use toric_fine::sample::random_canonical_fano;

use crate::markdown;
use crate::{AtlasCommand, Cli, Command, Format};

pub struct Output {
    pub text: String,
    pub code: ExitCode,
}

type CmdResult = Result<Output, String>;

fn ok(text: String) -> CmdResult {
    Ok(Output { text, code: ExitCode::SUCCESS })
}

fn emit(v: &Value, format: Option<Format>) -> CmdResult {
    match format.unwrap_or(Format::Json) {
        Format::Json => ok(format!("{}\n", serde_json::to_string_pretty(v).expect("serializable"))),
        Format::Markdown => ok(markdown::render(v)),
    }
}

fn read_input(path: &Path) -> Result<String, String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn read_polytope(path: &Path) -> Result<Polytope, String> {
    let p = parse_polytope(&read_input(path)?).map_err(|e| e.to_string())?;
    if !p.is_full_dimensional() {
        return Err("input polytope is not full-dimensional".into());
    }
    if !p.is_lattice() {
        return Err("input polytope has non-integral vertices".into());
    }
    Ok(p)
}

pub fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Analyze(i) => emit(&analyze(&read_polytope(&i.input)?)?, cli.format),
        Command::FineInterior(i) => {
            emit(&fine_interior_report(&read_polytope(&i.input)?).map_err(|e| e.to_string())?, cli.format)
        }
        Command::Atlas(a) => run_atlas(a, cli),
        Command::Split { id } => emit(&split(atlas_entry(id)?)?, cli.format),
        Command::Cover { id } => emit(&cover(atlas_entry(id)?)?, cli.format),
        Command::Coarsen { id, axis, factor } => emit(&coarsen(atlas_entry(id)?, *axis, *factor)?, cli.format),
    }
}

fn atlas_entry(id: &str) -> Result<&'static AtlasEntry, String> {
    atlas::entry(id).map_err(|e| e.to_string())
}

pub fn analyze(delta: &Polytope) -> Result<Value, String> {
    let mut out = json!({
        "polytope": polytope_to_json(delta),
        "lattice_points": delta.num_lattice_points(),
        "interior_points": delta.num_interior_lattice_points(),
        "reflexive": delta.is_reflexive(),
        "canonical_fano": delta.is_canonical_fano(),
    });
    let obj = out.as_object_mut().expect("object");
    let fine = fine_interior(delta).map_err(|e| e.to_string())?;
    if fine.is_empty() {
        let inv = invariants(delta).map_err(|e| e.to_string())?;
        obj.insert("fine_interior_empty".into(), json!(true));
        obj.insert("invariants".into(), json!({"kappa": inv.kappa, "p_g": inv.p_g}));
        return Ok(out);
    }
    let fi = fine_interior_report(delta).map_err(|e| e.to_string())?;
    for (k, v) in fi.as_object().expect("object") {
        obj.insert(k.clone(), v.clone());
    }
    obj.insert("class".into(), classify(delta).map(|c| json!(c.to_string())).unwrap_or(Value::Null));
    match Analysis::new(delta).and_then(|an| Ok((an.report()?, an.invariants()))) {
        Ok((report, inv)) => {
            for (k, v) in report.to_json(&inv).as_object().expect("object") {
                obj.insert(k.clone(), v.clone());
            }
        }
        Err(e) => {
            let inv = invariants(delta).map_err(|e| e.to_string())?;
            obj.insert("invariants".into(), inv.to_json());
            obj.insert("singularities_error".into(), json!(e.to_string()));
        }
    }
    Ok(out)
}

fn row_json(e: &AtlasEntry) -> Value {
    json!({
        "id": e.id,
        "class": e.class.to_string(),
        "span": e.span,
        "lattice_points": e.expected.lattice_points,
        "ambient": e.expected.ambient.to_string(),
        "canonical": e.expected.canonical.to_string(),
        "picard": e.expected.picard,
        "closure": e.expected.closure_id,
    })
}

fn run_atlas(cmd: &AtlasCommand, cli: &Cli) -> CmdResult {
    match cmd {
        AtlasCommand::List { flags } => match flags.resolve(cli.format) {
            Some(Format::Markdown) => ok(markdown::atlas_table(load_atlas())),
            f => emit(&Value::Array(load_atlas().iter().map(row_json).collect()), f),
        },
        AtlasCommand::Show { id, flags } => {
            let e = atlas_entry(id)?;
            let mut v = row_json(e);
            v["polytope"] = polytope_to_json(&e.polytope);
            v["fine_interior"] = polytope_to_json(&fine_interior(&e.polytope).map_err(|e| e.to_string())?.polytope);
            emit(&v, flags.resolve(cli.format))
        }
        AtlasCommand::Classify { input, flags } => {
            let v = match input {
                Some(path) => {
                    let p = read_polytope(path)?;
                    json!({"class": classify(&p).map_err(|e| e.to_string())?.to_string()})
                }
                None => {
                    let rows: Vec<Value> = load_atlas()
                        .par_iter()
                        .map(|e| {
                            let got = classify(&e.polytope).map(|c| c.to_string()).unwrap_or_else(|err| err.to_string());
                            json!({"id": e.id, "class": got, "expected": e.class.to_string()})
                        })
                        .collect();
                    Value::Array(rows)
                }
            };
            emit(&v, flags.resolve(cli.format))
        }
        AtlasCommand::Verify { expected, random, flags } => {
            let overrides = match expected {
                Some(p) => read_overrides(p)?,
                None => Vec::new(),
            };
            verify(&overrides, *random, cli.seed, flags.resolve(cli.format))
        }
    }
}

/// Per-entry replacements for the stored expectations.
fn read_overrides(path: &Path) -> Result<Vec<(String, Expected)>, String> {
    let v: Value = serde_json::from_str(&read_input(path)?).map_err(|e| format!("parse error: {e}"))?;
    let items = v.as_array().ok_or("expected a JSON array of overrides")?;
    let mut out = Vec::new();
    for item in items {
        let id = item.get("id").and_then(Value::as_str).ok_or("override without \"id\"")?;
        let mut x = atlas_entry(id)?.expected.clone();
        let label = |key: &str| item.get(key).and_then(Value::as_str);
        if let Some(n) = item.get("lattice_points").and_then(Value::as_u64) {
            x.lattice_points = n as usize;
        }
        if let Some(s) = label("ambient") {
            x.ambient = s.parse().map_err(|e: toric_fine::Error| e.to_string())?;
        }
        if let Some(s) = label("canonical") {
            x.canonical = s.parse().map_err(|e: toric_fine::Error| e.to_string())?;
        }
        if let Some(n) = item.get("picard").and_then(Value::as_u64) {
            x.picard = n as u32;
        }
        if let Some(c) = item.get("closure") {
            x.closure_id = c.as_str().map(str::to_string);
        }
        out.push((id.to_string(), x));
    }
    Ok(out)
}

fn random_closure_check(n: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<Polytope> = (0..n).map(|_| random_canonical_fano(&mut rng, 5, 6)).collect();
    let failures: Vec<usize> = samples
        .par_iter()
        .enumerate()
        .filter(|(_, p)| !closure_laws_hold(p).unwrap_or(false))
        .map(|(i, _)| i)
        .collect();
    Check {
        name: format!("closure laws on {n} random polytopes (seed {seed})"),
        passed: failures.is_empty(),
        detail: if failures.is_empty() { String::new() } else { format!("failed samples {failures:?}") },
    }
}

fn verify(overrides: &[(String, Expected)], random: usize, seed: u64, format: Option<Format>) -> CmdResult {
    let entries = load_atlas();
    let reports: Vec<EntryReport> = entries
        .par_iter()
        .map(|e| {
            let expected = overrides.iter().rev().find(|(id, _)| *id == e.id).map_or(&e.expected, |(_, x)| x);
            verify_entry_against(e, expected)
        })
        .collect();
    let mut checks = global_checks();
    if random > 0 {
        checks.push(random_closure_check(random, seed));
    }
    let verified = reports.iter().filter(|r| r.passed()).count();
    let all = verified == reports.len() && checks.iter().all(|c| c.passed);
    let code = if all { ExitCode::SUCCESS } else { ExitCode::from(1) };
    let text = match format {
        Some(Format::Json) => {
            let v = json!({
                "entries": reports.iter().map(EntryReport::to_json).collect::<Vec<_>>(),
                "checks": checks.iter().map(Check::to_json).collect::<Vec<_>>(),
                "verified": verified,
                "total": reports.len(),
                "passed": all,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Some(Format::Markdown) => markdown::verify_table(&reports, &checks, verified),
        None => {
            let mut s = String::new();
            for r in &reports {
                if r.passed() {
                    s += &format!("ok    {} ({})\n", r.id, r.class);
                } else {
                    s += &format!("FAIL  {} ({}): {}\n", r.id, r.class, r.mismatches.join("; "));
                }
            }
            for c in &checks {
                let tag = if c.passed { "ok  " } else { "FAIL" };
                s += &format!("{tag}  {}: {}\n", c.name, c.detail);
            }
            s += &format!("{verified}/{} entries verified\n", reports.len());
            s
        }
    };
    Ok(Output { text, code })
}

fn split(e: &AtlasEntry) -> Result<Value, String> {
    let s = degeneration_split(e).map_err(|e| e.to_string())?;
    Ok(json!({
        "id": e.id,
        "class": s.class.to_string(),
        "plane_points": s.plane_points.iter().map(point_json).collect::<Vec<_>>(),
        "shared": polytope_to_json(&s.shared),
        "shared_reflexive": s.shared_reflexive,
        "components": s.components.iter().map(|c| json!({
            "vertices": c.polytope.vertices().iter().map(point_json).collect::<Vec<_>>(),
            "six_volume": fmt_rat(&c.six_volume),
            "height": c.height.to_string(),
            "kappa": fmt_rat(&c.kappa),
            "K2": fmt_rat(&c.k2),
            "singularities": c.singularities.to_string(),
            "edge_ac": c.edge_ac.to_string(),
        })).collect::<Vec<_>>(),
    }))
}

fn cover(e: &AtlasEntry) -> Result<Value, String> {
    let c = lattice_refine_cover(e).map_err(|e| e.to_string())?;
    Ok(json!({
        "id": e.id,
        "refined": polytope_to_json(&c.refined),
        "p_g": c.p_g,
        "can_interior_points": c.can_interior_points,
        "K2": c.k2,
        "quadric_points": c.quadric_points.iter().map(point_json).collect::<Vec<_>>(),
        "quadric_relation": c.quadric_relation,
    }))
}

fn coarsen(e: &AtlasEntry, axis: usize, factor: i64) -> Result<Value, String> {
    let dropped = coarsening_drop(e);
    let c = lattice_coarsen(&e.polytope, &dropped, axis, factor).map_err(|e| e.to_string())?;
    Ok(json!({
        "id": e.id,
        "dropped": dropped.iter().map(point_json).collect::<Vec<_>>(),
        "kept_points": c.kept_points,
        "polytope": polytope_to_json(&c.polytope),
        "reflexive": c.reflexive,
    }))
}
