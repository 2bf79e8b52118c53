use std::fmt::Write;

use serde_json::Value;

fn yes_no(v: &Value) -> &'static str {
    if v.as_bool() == Some(true) {
        "yes"
    } else {
        "no"
    }
}

fn list(v: &Value) -> String {
    let items: Vec<String> = v.as_array().into_iter().flatten().map(|x| x.to_string()).collect();
    format!("({})", items.join(", "))
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn f_vector(out: &mut String, entry: &Value) {
    let _ = writeln!(out, "{} (dimension {})", plain(&entry["polytope"]), entry["dim"]);
    let _ = writeln!(out, "  f-vector: {}", list(&entry["f_vector"]));
    let _ = writeln!(out, "  f-polynomial: {}", plain(&entry["f_polynomial"]));
}

/// Human-readable rendering of a successful command document.
pub fn text(command: &str, doc: &Value) -> String {
    let mut out = String::new();
    match command {
        "check" => {
            let report = &doc["report"];
            for (label, key) in [
                ("symmetric", "is_symmetric"),
                ("zero diagonal", "zero_diagonal"),
                ("triangle inequality", "triangle_ok"),
                ("separates points", "separates_points"),
                ("four point condition", "four_point"),
            ] {
                let _ = writeln!(out, "{label}: {}", yes_no(&report[key]));
            }
            let _ = writeln!(out, "tree-like: {}", yes_no(&doc["tree_like"]));
            if !doc["witness"].is_null() {
                let _ = writeln!(out, "witness: {}", list(&doc["witness"]));
            }
        }
        "decompose" => {
            for s in doc["splits"].as_array().into_iter().flatten() {
                let side: Vec<String> = s["side"].as_array().into_iter().flatten().map(plain).collect();
                let _ = writeln!(out, "{{{}}}  weight {}", side.join(","), plain(&s["weight"]));
            }
            let _ = writeln!(out, "newick: {}", plain(&doc["newick"]));
        }
        "fvector" => f_vector(&mut out, doc),
        "matroid" => {
            let _ = writeln!(out, "rank {} ({} route)", doc["rank"], plain(&doc["route"]));
            for (k, s) in doc["splits"].as_array().into_iter().flatten().enumerate() {
                let _ = writeln!(out, "  split {k}: {}", plain(s));
            }
            if let Some(flats) = doc["flats"].as_array() {
                let _ = writeln!(out, "{} flats", flats.len());
                for f in flats {
                    let _ = writeln!(out, "  rank {}: {}", f["rank"], list(&f["splits"]));
                }
            }
            if let Some(mu) = doc["moebius"].as_array() {
                for t in mu {
                    let _ = writeln!(out, "  mu({}, {}) = {}", t[0], t[1], t[2]);
                }
                let _ = writeln!(
                    out,
                    "Möbius polynomial: {}",
                    plain(&doc["moebius_polynomial"]["polynomial"])
                );
            }
            if !doc["characteristic_polynomial"].is_null() {
                let _ = writeln!(
                    out,
                    "characteristic polynomial: {}",
                    plain(&doc["characteristic_polynomial"]["polynomial"])
                );
            }
        }
        "oracle" => {
            for key in ["lipschitz", "fundamental"] {
                if !doc[key].is_null() {
                    f_vector(&mut out, &doc[key]);
                }
            }
        }
        "compare" => {
            for c in doc["comparisons"].as_array().into_iter().flatten() {
                let verdict = if c["match"].as_bool() == Some(true) {
                    "match"
                } else {
                    "MISMATCH"
                };
                let _ = writeln!(out, "{}: {verdict}", plain(&c["polytope"]));
                let _ = writeln!(out, "  formula: {}", list(&c["f_formula"]));
                let _ = writeln!(out, "  oracle:  {}", list(&c["f_oracle"]));
            }
        }
        _ => {}
    }
    out
}
