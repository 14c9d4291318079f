//! DT-bar, DT-hat, odd-b invariants, dimension formulas and generating series.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::exactmath::{
    eta_power_series, int, lambert_double_sum, rat, LambertKind, PowerSeries, Rational,
    RationalSeries,
};
use crate::pairs::{hilbert_value, n_min, pair_invariant_by_counts};
use crate::partitions::enumerate_partitions;
use crate::sigma::{enumerate_d, TableRow};
use crate::{Error, Result};

/// `dim M = −2kb + a² − k² + 1`.
pub fn moduli_dimension(k: i64, a: i64, b: i64) -> i64 {
    -2 * k * b + a * a - k * k + 1
}

/// `χ(Hilb^k(P²))`, the coefficient of `q^k` in `∏(1 − qⁿ)^{−3}`.
pub fn hilb_chi(k: usize) -> i64 {
    eta_power_series::<i64>(-3, k).coeff(k)
}

fn even_b(b: i64) -> Result<usize> {
    if b > 0 || b % 2 != 0 {
        return Err(Error::Config(format!("b must be even and ≤ 0, got {b}")));
    }
    Ok((-b / 2) as usize)
}

/// `χ(Hilb^{−b/2})²·P(n)/8 − PI_n/P(n)`.
pub fn wall_crossing_dt(b: i64, pi_n: &Rational, n: i64) -> Result<Rational> {
    let h = hilb_chi(even_b(b)?);
    let p = hilbert_value(b, n);
    if p == 0 {
        return Err(Error::Config(format!("P({n}) = 0 for b = {b}")));
    }
    Ok(rat(h * h * p, 8) - pi_n / int(p))
}

/// `χ(Hilb^{−b/2})/4 − Σc_st − Σc_ss/2`.
pub fn theorem_ss_dt(b: i64, sum_c_ss: i64, sum_c_st: i64) -> Result<Rational> {
    let h = hilb_chi(even_b(b)?);
    Ok(rat(h, 4) - int(sum_c_st) - rat(sum_c_ss, 2))
}

/// DT-hat from DT-bar: the divisors of `P` are 1 and 2, and `DT(P/2) = χ(Hilb^{−b/2})`.
pub fn bps_invariant(b: i64, dt_bar: &Rational) -> Result<Rational> {
    let h = hilb_chi(even_b(b)?);
    Ok(dt_bar - rat(h, 4))
}

/// Multiplicity-weighted sums `(Σc_ss, Σc_st)`.
pub fn weighted_sums(rows: &[TableRow]) -> (i64, i64) {
    rows.iter().fold((0, 0), |(ss, st), r| {
        let m = r.multiplicity as i64;
        (ss + m * r.c_ss, st + m * r.c_st)
    })
}

/// `(χ(M), −χ(M))` for odd `b` from its rows.
pub fn odd_b_dt_from_rows(rows: &[TableRow]) -> (i64, i64) {
    let (_, chi) = weighted_sums(rows);
    (chi, -chi)
}

/// `(χ(M), (−1)^{dim M} χ(M))` for odd `b`; the dimension `−4b−3` is odd.
pub fn odd_b_dt(b: i64, a_floor: Option<i64>) -> Result<(i64, i64)> {
    if b >= 0 || b % 2 == 0 {
        return Err(Error::Config(format!(
            "b must be odd and negative, got {b}"
        )));
    }
    Ok(odd_b_dt_from_rows(&enumerate_d(b, a_floor)?))
}

/// `∏(1 − qⁿ)^{−3}`.
pub fn series_k1(order: usize) -> RationalSeries {
    eta_power_series(-3, order)
}

/// `∏(1 − qⁿ)^{−6} · Σ q^{mn}/(1 − q^{m+n−1})`.
pub fn series_k2_a1(order: usize) -> RationalSeries {
    eta_power_series::<Rational>(-6, order).mul(&lambert_double_sum(LambertKind::A1, order))
}

/// `Σ q^{Σ_{i<j}Δ_iΔ_j − (ΣΔ)²/4}` over positive strict-triangle triples with even sum.
///
/// Triples are walked by total `S ≤ 2·order + 4`; an error is returned if the
/// smallest exponent of the outermost shells has not yet passed `order`.
pub fn triangle_sum(order: usize) -> Result<PowerSeries<i64>> {
    let mut coeffs = vec![0i64; order + 1];
    let top = 2 * order as i64 + 4;
    let mut shell_min = Vec::new();
    for s in (2..=top).step_by(2) {
        let mut lowest = i64::MAX;
        for d1 in 1..s {
            for d2 in 1..s - d1 {
                let d3 = s - d1 - d2;
                if 2 * d1.max(d2).max(d3) >= s {
                    continue;
                }
                let e = d1 * d2 + d1 * d3 + d2 * d3 - s * s / 4;
                lowest = lowest.min(e);
                if (0..=order as i64).contains(&e) {
                    coeffs[e as usize] += 1;
                }
            }
        }
        shell_min.push(lowest);
    }
    let tail = &shell_min[shell_min.len().saturating_sub(2)..];
    if tail.iter().any(|&e| e != i64::MAX && e <= order as i64) {
        return Err(Error::Config(format!(
            "triangle sum bound too small for order {order}"
        )));
    }
    Ok(PowerSeries::from_coeffs(coeffs, order))
}

/// The μ-stable series by its closed form and by the triangle-triple sum.
#[derive(Clone, Debug)]
pub struct MuStableSeries {
    pub closed_form: RationalSeries,
    pub from_triangles: RationalSeries,
    pub lambert: RationalSeries,
    pub triangle_identity: bool,
}

pub fn mu_stable_series(order: usize) -> Result<MuStableSeries> {
    let lambert: RationalSeries = lambert_double_sum(LambertKind::Mu, order);
    let tri = triangle_sum(order)?;
    let tri: RationalSeries =
        PowerSeries::from_coeffs(tri.coeffs().iter().map(|&c| int(c)).collect(), order);
    let eta6: RationalSeries = eta_power_series(-6, order);
    Ok(MuStableSeries {
        closed_form: eta6.mul(&lambert),
        from_triangles: eta6.mul(&tri),
        triangle_identity: tri == lambert,
        lambert,
    })
}

/// Count of 9-tuples (strict-triangle Δ, six partitions) by `−b`, built from
/// enumerated partition counts without any product formula.
pub fn mu_stable_count_direct(order: usize) -> Result<RationalSeries> {
    let p: Vec<i64> = (0..=order)
        .map(|n| enumerate_partitions(n).len() as i64)
        .collect();
    let mut six = vec![0i64; order + 1];
    six[0] = 1;
    for _ in 0..6 {
        let mut next = vec![0i64; order + 1];
        for i in 0..=order {
            for j in 0..=order - i {
                next[i + j] += six[i] * p[j];
            }
        }
        six = next;
    }
    let tri = triangle_sum(order)?;
    let mut out = vec![Rational::zero(); order + 1];
    for (e, &c) in tri.coeffs().iter().enumerate() {
        for k in 0..=order - e {
            out[e + k] += int(c * six[k]);
        }
    }
    Ok(PowerSeries::from_coeffs(out, order))
}

fn ser_rational_opt<S: Serializer>(
    r: &Option<[Rational; 2]>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some([x, y]) => [x.to_string(), y.to_string()].serialize(s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportChecks {
    /// Wall-crossing value equals the strata formula at both n.
    pub wall_crossing_agrees: bool,
    pub n_independent: bool,
    /// DT-hat equals `−Σc_st − Σc_ss/2`.
    pub bps_consistent: bool,
    pub dt_hat_integral: bool,
    pub c_ss_even: bool,
}

impl ReportChecks {
    pub fn all(&self) -> bool {
        self.wall_crossing_agrees
            && self.n_independent
            && self.bps_consistent
            && self.dt_hat_integral
            && self.c_ss_even
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub b: i64,
    pub parity: &'static str,
    #[serde(serialize_with = "crate::exactmath::serialize_rational")]
    pub dt_bar: Rational,
    #[serde(serialize_with = "crate::exactmath::serialize_rational")]
    pub dt_hat: Rational,
    /// `−χ(M)` for odd `b`, whose moduli space has odd dimension.
    pub dt_signed: Option<i64>,
    pub chi_stable: i64,
    pub sum_c_ss: i64,
    pub sum_c_st: i64,
    #[serde(serialize_with = "ser_rational_opt")]
    pub pi_n: Option<[Rational; 2]>,
    pub n_used: Option<[i64; 2]>,
    pub dimension: i64,
    pub rows: usize,
    pub checks: ReportChecks,
    pub provenance: BTreeMap<&'static str, &'static str>,
}

/// Default level for pair invariants: the largest `n_min` over the rows, at least 1.
pub fn default_n(rows: &[TableRow]) -> Result<i64> {
    let mut n = 1;
    for r in rows {
        n = n.max(n_min(&r.data)?);
    }
    Ok(n)
}

/// Assembles the report for one `b` from its rows.
pub fn invariant_report(b: i64, rows: &[TableRow], n: Option<i64>) -> Result<InvariantReport> {
    let (sum_c_ss, sum_c_st) = weighted_sums(rows);
    let mut provenance = BTreeMap::new();
    provenance.insert("sum_c_ss", "Σ multiplicity·c_ss over enumerated D(P)");
    provenance.insert("sum_c_st", "Σ multiplicity·c_st over enumerated D(P)");
    provenance.insert("chi_stable", "Σ multiplicity·c_st over enumerated D(P)");
    if b % 2 != 0 {
        let (chi, signed) = odd_b_dt_from_rows(rows);
        provenance.insert("dt_bar", "χ(M) (all strata stable for odd b)");
        provenance.insert("dt_signed", "(−1)^{dim M}·χ(M), dim M = −4b−3");
        provenance.insert("dt_hat", "equal to dt_bar (P has no divisor 2 for odd b)");
        let checks = ReportChecks {
            wall_crossing_agrees: true,
            n_independent: true,
            bps_consistent: true,
            dt_hat_integral: true,
            c_ss_even: sum_c_ss == 0,
        };
        return Ok(InvariantReport {
            b,
            parity: "odd",
            dt_bar: int(chi),
            dt_hat: int(chi),
            dt_signed: Some(signed),
            chi_stable: chi,
            sum_c_ss,
            sum_c_st,
            pi_n: None,
            n_used: None,
            dimension: moduli_dimension(2, 0, b),
            rows: rows.len(),
            checks,
            provenance,
        });
    }
    let n0 = match n {
        Some(n) => n,
        None => default_n(rows)?,
    };
    let ns = [n0, n0 + 2];
    let dt_bar = theorem_ss_dt(b, sum_c_ss, sum_c_st)?;
    let pis = [
        pair_invariant_by_counts(b, ns[0], rows)?,
        pair_invariant_by_counts(b, ns[1], rows)?,
    ];
    let wc = [
        wall_crossing_dt(b, &pis[0], ns[0])?,
        wall_crossing_dt(b, &pis[1], ns[1])?,
    ];
    let dt_hat = bps_invariant(b, &dt_bar)?;
    let checks = ReportChecks {
        wall_crossing_agrees: wc.iter().all(|w| *w == dt_bar),
        n_independent: wc[0] == wc[1],
        bps_consistent: dt_hat == -int(sum_c_st) - rat(sum_c_ss, 2),
        dt_hat_integral: dt_hat.is_integer(),
        c_ss_even: sum_c_ss % 2 == 0,
    };
    provenance.insert("dt_bar", "χ(Hilb^{-b/2})/4 − Σc_st − Σc_ss/2");
    provenance.insert("dt_hat", "dt_bar − χ(Hilb^{-b/2})/4 (divisors 1, 2 of P)");
    provenance.insert(
        "pi_n",
        "decomposable term + Σ multiplicity·χ(configurations)·weighted section-triple count",
    );
    provenance.insert(
        "checks.wall_crossing_agrees",
        "χ(Hilb^{-b/2})²·P(n)/8 − PI_n/P(n) equals dt_bar",
    );
    Ok(InvariantReport {
        b,
        parity: "even",
        dt_bar,
        dt_hat,
        dt_signed: None,
        chi_stable: sum_c_st,
        sum_c_ss,
        sum_c_st,
        pi_n: Some(pis),
        n_used: Some(ns),
        dimension: moduli_dimension(2, 0, b),
        rows: rows.len(),
        checks,
        provenance,
    })
}

/// Enumerates D(P) and assembles the report.
pub fn compute_report(b: i64, a_floor: Option<i64>, n: Option<i64>) -> Result<InvariantReport> {
    let rows = enumerate_d(b, a_floor)?;
    invariant_report(b, &rows, n)
}

/// Weight `1/d²` of the divisor `d` in the BPS inversion.
pub fn divisor_weight(d: i64) -> Rational {
    Rational::one() / int(d * d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(moduli_dimension(1, 0, -5), 10);
        assert_eq!(moduli_dimension(2, 0, -3), 9);
        assert_eq!(moduli_dimension(2, 1, -3), 10);
    }

    #[test]
    fn hilbert_chi_values() {
        assert_eq!((0..4).map(hilb_chi).collect::<Vec<_>>(), vec![1, 3, 9, 22]);
    }

    #[test]
    fn theorem_examples() {
        assert_eq!(theorem_ss_dt(0, 0, 0).unwrap(), rat(1, 4));
        assert_eq!(theorem_ss_dt(-2, 12, 0).unwrap(), rat(-21, 4));
        assert_eq!(theorem_ss_dt(-4, 216, 54).unwrap(), rat(-639, 4));
        assert!(theorem_ss_dt(-3, 0, 0).is_err());
    }

    #[test]
    fn bps_examples() {
        assert_eq!(bps_invariant(0, &rat(1, 4)).unwrap(), int(0));
        assert_eq!(bps_invariant(-2, &rat(-21, 4)).unwrap(), int(-6));
        assert_eq!(bps_invariant(-4, &rat(-639, 4)).unwrap(), int(-162));
    }

    #[test]
    fn wall_crossing_b0() {
        for n in [2, 5] {
            let p = hilbert_value(0, n);
            let pi = rat(p * (p - 2), 8);
            assert_eq!(wall_crossing_dt(0, &pi, n).unwrap(), rat(1, 4));
        }
    }

    #[test]
    fn k2_a1_start() {
        let s = series_k2_a1(10);
        assert_eq!(s.coeff(0), int(0));
        assert_eq!(s.coeff(1), int(1));
        assert!(s.coeffs().iter().all(|c| *c >= int(0)));
    }

    #[test]
    fn triangle_identity_small() {
        let m = mu_stable_series(10).unwrap();
        assert!(m.triangle_identity);
        assert_eq!(m.closed_form, m.from_triangles);
        let low = mu_stable_series(2).unwrap();
        assert!(low.lambert.coeffs().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn divisor_weights() {
        assert_eq!(divisor_weight(2), rat(1, 4));
    }
}
