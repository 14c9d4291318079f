//! The check suite behind `p2dt verify`.

use std::path::Path;

use serde::Serialize;

use p2dt::exactmath::{int, Rational};
use p2dt::invariants::{
    hilb_chi, invariant_report, mu_stable_count_direct, mu_stable_series, series_k2_a1,
};
use p2dt::pairs::pair_counts;
use p2dt::partitions::Partition2D;
use p2dt::sigma::{DeltaFamilyData, SigmaFamily, TableRow};
use p2dt::strata::{
    classify_pattern, default_fields, enumerate_patterns, fq_stratum_oracle, StratumTag,
};

use crate::cache;
use crate::Failure;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

fn failed(name: impl Into<String>, e: impl std::fmt::Display) -> Check {
    check(name, false, format!("error: {e}"))
}

pub fn toric_data() -> DeltaFamilyData {
    let mut pis: [Partition2D; 6] = Default::default();
    pis[0] = Partition2D::new(vec![1]).expect("valid partition");
    DeltaFamilyData::new(-2, [2, 1, 1], pis, vec![]).expect("valid data")
}

/// Per-chart counts at n = 5 for the one-box toric family.
pub fn toric_checks() -> Vec<Check> {
    let name = "toric example n=5";
    let f = match SigmaFamily::new(&toric_data()) {
        Ok(f) => f,
        Err(e) => return vec![failed(name, e)],
    };
    let pattern = &enumerate_patterns(f.class_count(), f.free_component_count())[0];
    let counts = match pair_counts(&f, pattern, 5) {
        Ok(c) => c,
        Err(e) => return vec![failed(name, e)],
    };
    counts
        .iter()
        .enumerate()
        .map(|(j, pc)| {
            let total = pc.circles + 2 * pc.bullets;
            check(
                format!("toric example chart {} n=5", j + 1),
                total == 40 && pc.weighted == int(20),
                format!(
                    "circles={} bullets={} circles+2*bullets={} weighted={}",
                    pc.circles, pc.bullets, total, pc.weighted
                ),
            )
        })
        .collect()
}

fn series_checks(order: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let chi: Vec<i64> = (0..3).map(hilb_chi).collect();
    out.push(check(
        "hilb chi q^0..q^2",
        chi == [1, 3, 9],
        format!("{chi:?}"),
    ));
    match mu_stable_series(order) {
        Ok(s) => {
            out.push(check(
                format!("triangle identity to q^{order}"),
                s.triangle_identity,
                "triangle sum vs lambert double sum",
            ));
            out.push(check(
                format!("mu-stable closed form vs triangles to q^{order}"),
                s.closed_form == s.from_triangles,
                "",
            ));
            match mu_stable_count_direct(order) {
                Ok(d) => out.push(check(
                    format!("mu-stable direct count to q^{order}"),
                    d == s.closed_form,
                    "six partitions times strict triangles, convolved",
                )),
                Err(e) => out.push(failed("mu-stable direct count", e)),
            }
        }
        Err(e) => out.push(failed("triangle identity", e)),
    }
    let k2 = series_k2_a1(order);
    let nonneg = k2.coeffs().iter().all(|c| *c >= int(0));
    out.push(check(
        format!("k=2 a=1 series nonnegative to q^{order}"),
        nonneg,
        "",
    ));
    out
}

/// `(c_ss, c_st)` recomputed with each configuration χ taken from the finite-field oracle.
fn oracle_c_values(x: &DeltaFamilyData) -> p2dt::Result<(Rational, Rational)> {
    let f = SigmaFamily::new(x)?;
    let (mut css, mut cst) = (int(0), int(0));
    for p in enumerate_patterns(f.class_count(), f.free_component_count()) {
        let cl = classify_pattern(&f, &p)?;
        let chi = || fq_stratum_oracle(&p, &default_fields(cl.d));
        match cl.tag {
            StratumTag::StrictlySsIndecomposable => {
                css += chi()? * int(2 - cl.destabilizers.len() as i64)
            }
            StratumTag::Stable => cst += chi()?,
            _ => {}
        }
    }
    Ok((css, cst))
}

fn oracle_check(b: i64, rows: &[TableRow]) -> Check {
    let name = format!("b={b} c-values vs finite-field oracle");
    let mut bad = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        match oracle_c_values(&r.data) {
            Ok((css, cst)) => {
                if css != int(r.c_ss) || cst != int(r.c_st) {
                    bad.push(i + 1);
                }
            }
            Err(e) => return failed(name, e),
        }
    }
    let detail = if bad.is_empty() {
        format!("{} rows", rows.len())
    } else {
        format!("mismatched rows {bad:?}")
    };
    check(name, bad.is_empty(), detail)
}

fn b_checks(b: i64, rows: &[TableRow]) -> Vec<Check> {
    let mut out = Vec::new();
    match invariant_report(b, rows, None) {
        Ok(r) => {
            let ns = r
                .n_used
                .map(|n| format!("n={},{}", n[0], n[1]))
                .unwrap_or_default();
            if b % 2 == 0 {
                out.push(check(
                    format!("b={b} n-independence"),
                    r.checks.n_independent,
                    ns.clone(),
                ));
                out.push(check(
                    format!("b={b} wall-crossing vs strata"),
                    r.checks.wall_crossing_agrees,
                    format!("dt_bar={} {ns}", r.dt_bar),
                ));
                out.push(check(
                    format!("b={b} bps consistency"),
                    r.checks.bps_consistent,
                    format!("dt_hat={}", r.dt_hat),
                ));
                out.push(check(
                    format!("b={b} integrality"),
                    r.checks.dt_hat_integral && r.checks.c_ss_even,
                    format!("dt_hat={} sum_c_ss={}", r.dt_hat, r.sum_c_ss),
                ));
            } else {
                out.push(check(
                    format!("b={b} sum c_ss = 0"),
                    r.sum_c_ss == 0,
                    format!("sum_c_ss={}", r.sum_c_ss),
                ));
            }
        }
        Err(e) => out.push(failed(format!("b={b} report"), e)),
    }
    out.push(oracle_check(b, rows));
    out
}

pub fn all_checks(
    order: usize,
    bs: &[i64],
    a_floor: Option<i64>,
    dir: Option<&Path>,
) -> Result<Vec<Check>, Failure> {
    let mut out = series_checks(order);
    out.extend(toric_checks());
    for &b in bs {
        match cache::rows_for(b, a_floor, dir) {
            Ok(rows) => out.extend(b_checks(b, &rows)),
            Err(cache::RowsError::Compute(e)) => out.push(failed(format!("b={b} enumeration"), e)),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toric_passes() {
        assert!(toric_checks().iter().all(|c| c.passed));
    }

    #[test]
    fn oracle_matches_small_b() {
        let rows = p2dt::sigma::enumerate_d(-2, None).unwrap();
        assert!(oracle_check(-2, &rows).passed);
        assert_eq!(oracle_c_values(&toric_data()).unwrap(), (int(1), int(0)));
    }
}
