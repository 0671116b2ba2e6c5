use serde::Serialize;

/// Comma-separated lines with a header. Cells never contain commas.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        debug_assert!(row.iter().all(|c| !c.contains(',')));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output is plain data");
    s.push('\n');
    s
}
