use serde_json::Value;

use toric_fine::atlas::{AtlasEntry, Check, Class, EntryReport};

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
    .replace('|', "\\|")
}

/// Objects become two-column tables, arrays of objects become tables with
/// one column per key.
pub fn render(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let mut s = String::from("| key | value |\n|---|---|\n");
            for (k, x) in map {
                s += &format!("| {k} | {} |\n", cell(x));
            }
            s
        }
        Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
            let keys: Vec<&String> = rows[0].as_object().expect("object").keys().collect();
            let mut s = format!("| {} |\n", keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(" | "));
            s += &format!("|{}\n", "---|".repeat(keys.len()));
            for r in rows {
                let cells: Vec<String> = keys.iter().map(|k| cell(&r[k.as_str()])).collect();
                s += &format!("| {} |\n", cells.join(" | "));
            }
            s
        }
        other => format!("{}\n", cell(other)),
    }
}

/// One table per class with the columns id, spanning set, l(Δ), ambient
/// singularities, canonical RDPs and generic Picard number.
pub fn atlas_table(entries: &[AtlasEntry]) -> String {
    let mut s = String::new();
    for class in Class::ALL {
        s += &format!("### Class {class}\n\n| id | spanning set | l(Δ) | Z_Δ̃ | Z_F(Δ) | ρ |\n|---|---|---|---|---|---|\n");
        for e in entries.iter().filter(|e| e.class == class) {
            let id = match &e.expected.closure_id {
                Some(c) => format!("{} → {c}", e.id),
                None => e.id.clone(),
            };
            s += &format!(
                "| {id} | {} | {} | {} | {} | {} |\n",
                e.span.join(", "),
                e.expected.lattice_points,
                e.expected.ambient,
                e.expected.canonical,
                e.expected.picard
            );
        }
        s += "\n";
    }
    s
}

pub fn verify_table(reports: &[EntryReport], checks: &[Check], verified: usize) -> String {
    let mut s = String::from("| entry | class | result |\n|---|---|---|\n");
    for r in reports {
        let res = if r.passed() { "ok".to_string() } else { r.mismatches.join("; ") };
        s += &format!("| {} | {} | {} |\n", r.id, r.class, res.replace('|', "\\|"));
    }
    s += "\n| check | result | detail |\n|---|---|---|\n";
    for c in checks {
        s += &format!("| {} | {} | {} |\n", c.name, if c.passed { "ok" } else { "FAIL" }, c.detail);
    }
    s += &format!("\n{verified}/{} entries verified\n", reports.len());
    s
}
