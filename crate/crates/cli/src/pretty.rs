//! Human-readable rendering of a report.

use serde_json::Value;

use crate::report::{Certificate, Report};

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        other => other.to_string(),
    }
}

fn table(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("  {k:<width$}  {v}\n"))
        .collect()
}

fn object_rows(v: &Value) -> Vec<(String, String)> {
    match v {
        Value::Object(m) => m.iter().map(|(k, v)| (k.clone(), scalar(v))).collect(),
        Value::Null => vec![],
        other => vec![("value".to_string(), scalar(other))],
    }
}

fn set(xs: &[Vec<i64>]) -> String {
    let items: Vec<String> = xs
        .iter()
        .map(|x| x.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
        .map(|x| if x.contains(',') { format!("({x})") } else { x })
        .collect();
    format!("{{{}}}", items.join(", "))
}

fn pairs(ps: &[(Vec<i64>, Vec<i64>)]) -> String {
    ps.iter()
        .map(|(a, b)| {
            format!(
                "{}->{}",
                set(std::slice::from_ref(a)),
                set(std::slice::from_ref(b))
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn certificate(c: &Certificate) -> Vec<(String, String)> {
    match c {
        Certificate::Matching { pairs: ps, defect } => vec![
            ("defect".into(), defect.to_string()),
            ("pairs".into(), pairs(ps)),
        ],
        Certificate::Witness { s, r, y, z, level } => vec![
            ("S".into(), set(s)),
            ("R".into(), set(r)),
            ("Y".into(), set(y)),
            ("Z".into(), set(z)),
            ("level".into(), level.to_string()),
        ],
        Certificate::Partition { side, classes } => {
            let mut rows = vec![("side".into(), format!("{side:?}").to_lowercase())];
            for (i, c) in classes.iter().enumerate() {
                rows.push((format!("class {i}"), set(&c.elements)));
            }
            rows
        }
        Certificate::StabilizerPair { s, r, value } => vec![
            ("S".into(), set(s)),
            ("R".into(), set(r)),
            ("value".into(), value.to_string()),
        ],
    }
}

pub fn render(r: &Report) -> String {
    let mut s = format!("{} (groupmatch {})\n", r.command, r.version);
    if let Some(inst) = r.inputs.get("instance") {
        s.push_str("instance\n");
        let field = |k: &str| -> Vec<Vec<i64>> {
            serde_json::from_value(inst.get(k).cloned().unwrap_or(Value::Null)).unwrap_or_default()
        };
        s.push_str(&table(&[
            ("group".into(), scalar(&inst["group"])),
            ("A".into(), set(&field("A"))),
            ("B".into(), set(&field("B"))),
        ]));
    }
    let params = object_rows(r.inputs.get("params").unwrap_or(&Value::Null));
    if !params.is_empty() {
        s.push_str("params\n");
        s.push_str(&table(&params));
    }
    s.push_str("results\n");
    s.push_str(&table(&object_rows(&r.results)));
    for (i, c) in r.certificates.iter().enumerate() {
        s.push_str(&format!("certificate {i}: {}\n", c.kind()));
        s.push_str(&table(&certificate(c)));
    }
    s
}
