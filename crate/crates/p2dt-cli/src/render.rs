//! Output formatting for each subcommand.

use std::fmt::Write as _;

use serde_json::json;

use p2dt::invariants::{mu_stable_series, series_k1, series_k2_a1, weighted_sums, InvariantReport};
use p2dt::sigma::TableRow;
use p2dt::Rational;

use crate::verify::Check;
use crate::Format;

fn to_json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_string(header: &[&str], records: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in records {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn deltas_str(d: [i64; 3]) -> String {
    format!("({},{},{})", d[0], d[1], d[2])
}

fn pis_str(r: &TableRow) -> String {
    r.data
        .pis
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn e_str(r: &TableRow) -> String {
    let pairs: Vec<String> = r.data.e.iter().map(|(i, j)| format!("({i},{j})")).collect();
    format!("[{}]", pairs.join(","))
}

pub fn table(b: i64, rows: &[TableRow], format: Format) -> String {
    let (sum_ss, sum_st) = weighted_sums(rows);
    match format {
        Format::Json => to_json(&json!({
            "b": b,
            "rows": rows,
            "sum_c_ss": sum_ss,
            "sum_c_st": sum_st,
        })),
        Format::Csv => {
            let header = [
                "index",
                "A",
                "deltas",
                "partitions",
                "E",
                "c_ss",
                "c_st",
                "multiplicity",
            ];
            let records = rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    vec![
                        (i + 1).to_string(),
                        r.data.a.to_string(),
                        deltas_str(r.data.deltas),
                        pis_str(r),
                        e_str(r),
                        r.c_ss.to_string(),
                        r.c_st.to_string(),
                        r.multiplicity.to_string(),
                    ]
                })
                .collect();
            csv_string(&header, records)
        }
        Format::Pretty => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{:>4} {:>3} {:<9} {:<36} {:<14} {:>4} {:>4} {:>2}",
                "#", "A", "deltas", "partitions", "E", "c_ss", "c_st", "m"
            );
            for (i, r) in rows.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "{:>4} {:>3} {:<9} {:<36} {:<14} {:>4} {:>4} {:>2}",
                    i + 1,
                    r.data.a,
                    deltas_str(r.data.deltas),
                    pis_str(r),
                    e_str(r),
                    r.c_ss,
                    r.c_st,
                    r.multiplicity
                );
            }
            let _ = writeln!(
                s,
                "b={b} rows={} sum c_ss={sum_ss} sum c_st={sum_st}",
                rows.len()
            );
            s
        }
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn reports(reports: &[InvariantReport], format: Format) -> String {
    match format {
        Format::Json => to_json(&reports),
        Format::Csv => {
            let header = [
                "b",
                "parity",
                "dt_bar",
                "dt_hat",
                "dt_signed",
                "chi_stable",
                "sum_c_ss",
                "sum_c_st",
                "n1",
                "pi_n1",
                "n2",
                "pi_n2",
                "dimension",
                "rows",
                "checks_ok",
            ];
            let records = reports
                .iter()
                .map(|r| {
                    vec![
                        r.b.to_string(),
                        r.parity.to_string(),
                        r.dt_bar.to_string(),
                        r.dt_hat.to_string(),
                        opt(r.dt_signed),
                        r.chi_stable.to_string(),
                        r.sum_c_ss.to_string(),
                        r.sum_c_st.to_string(),
                        opt(r.n_used.map(|n| n[0])),
                        opt(r.pi_n.as_ref().map(|p| p[0].clone())),
                        opt(r.n_used.map(|n| n[1])),
                        opt(r.pi_n.as_ref().map(|p| p[1].clone())),
                        r.dimension.to_string(),
                        r.rows.to_string(),
                        r.checks.all().to_string(),
                    ]
                })
                .collect();
            csv_string(&header, records)
        }
        Format::Pretty => {
            let mut s = String::new();
            for r in reports {
                let _ = writeln!(
                    s,
                    "b = {} ({}), dim M = {}, {} rows",
                    r.b, r.parity, r.dimension, r.rows
                );
                let _ = writeln!(s, "  DT-bar      {}", r.dt_bar);
                let _ = writeln!(s, "  DT-hat      {}", r.dt_hat);
                if let Some(d) = r.dt_signed {
                    let _ = writeln!(s, "  -chi(M)     {d}");
                }
                let _ = writeln!(s, "  chi(M^s)    {}", r.chi_stable);
                let _ = writeln!(s, "  sum c_ss    {}", r.sum_c_ss);
                let _ = writeln!(s, "  sum c_st    {}", r.sum_c_st);
                if let (Some(ns), Some(pis)) = (r.n_used, &r.pi_n) {
                    let _ = writeln!(s, "  PI_{}  {}   PI_{}  {}", ns[0], pis[0], ns[1], pis[1]);
                }
                let _ = writeln!(
                    s,
                    "  checks      {}",
                    if r.checks.all() { "ok" } else { "FAILED" }
                );
            }
            s
        }
    }
}

pub fn series(order: usize, format: Format) -> p2dt::Result<String> {
    let k1 = series_k1(order);
    let k2 = series_k2_a1(order);
    let mu = mu_stable_series(order)?;
    let cols: [(&str, &[Rational]); 3] = [
        ("k1", k1.coeffs()),
        ("k2_a1", k2.coeffs()),
        ("mu_stable", mu.closed_form.coeffs()),
    ];
    let strs = |c: &[Rational]| c.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    Ok(match format {
        Format::Json => to_json(&json!({
            "order": order,
            "k1": strs(cols[0].1),
            "k2_a1": strs(cols[1].1),
            "mu_stable": strs(cols[2].1),
            "triangle_identity": mu.triangle_identity,
        })),
        Format::Csv => {
            let records = (0..=order)
                .map(|i| {
                    let mut r = vec![i.to_string()];
                    r.extend(cols.iter().map(|(_, c)| c[i].to_string()));
                    r
                })
                .collect();
            csv_string(&["k", "k1", "k2_a1", "mu_stable"], records)
        }
        Format::Pretty => {
            let mut s = String::new();
            for (name, c) in cols {
                let _ = writeln!(s, "{name:<10} {}", strs(c).join(" "));
            }
            let _ = writeln!(
                s,
                "triangle identity to q^{order}: {}",
                if mu.triangle_identity {
                    "holds"
                } else {
                    "FAILS"
                }
            );
            s
        }
    })
}

pub fn checks(checks: &[Check], format: Format) -> String {
    match format {
        Format::Json => to_json(&checks),
        Format::Csv => csv_string(
            &["check", "passed", "detail"],
            checks
                .iter()
                .map(|c| vec![c.name.clone(), c.passed.to_string(), c.detail.clone()])
                .collect(),
        ),
        Format::Pretty => {
            let mut s = String::new();
            for c in checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    let _ = writeln!(s, "{tag}  {}", c.name);
                } else {
                    let _ = writeln!(s, "{tag}  {}  ({})", c.name, c.detail);
                }
            }
            s
        }
    }
}
