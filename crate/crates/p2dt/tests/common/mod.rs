#![allow(dead_code)]

use std::collections::BTreeMap;

use p2dt::partitions::Partition2D;
use p2dt::sigma::{DeltaFamilyData, Fingerprint, SigmaFamily, TableRow};

/// A row of the printed b = −4 table.
pub struct PrintedRow {
    pub index: usize,
    pub data: DeltaFamilyData,
    pub c_ss: i64,
    pub c_st: i64,
    pub multiplicity: u32,
}

fn parse_partition(s: &str) -> Partition2D {
    let inner = s.trim_start_matches('[').trim_end_matches(']');
    let parts = if inner.is_empty() {
        vec![]
    } else {
        inner.split(',').map(|p| p.parse().unwrap()).collect()
    };
    Partition2D::new(parts).unwrap()
}

pub fn printed_rows_b_minus4() -> Vec<PrintedRow> {
    let text = include_str!("../data/rows_b_minus4.txt");
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            assert_eq!(f.len(), 13, "bad fixture line {l}");
            let deltas: Vec<i64> = f[2].split(',').map(|d| d.parse().unwrap()).collect();
            let e: Vec<(u8, u8)> = if f[3] == "-" {
                vec![]
            } else {
                f[3].split(',')
                    .map(|p| {
                        let (i, j) = p.split_once('-').unwrap();
                        (i.parse().unwrap(), j.parse().unwrap())
                    })
                    .collect()
            };
            let pis: [Partition2D; 6] = std::array::from_fn(|i| parse_partition(f[4 + i]));
            PrintedRow {
                index: f[0].parse().unwrap(),
                data: DeltaFamilyData::new(
                    f[1].parse().unwrap(),
                    [deltas[0], deltas[1], deltas[2]],
                    pis,
                    e,
                )
                .unwrap(),
                c_ss: f[10].parse().unwrap(),
                c_st: f[11].parse().unwrap(),
                multiplicity: f[12].parse().unwrap(),
            }
        })
        .collect()
}

pub fn fingerprint(x: &DeltaFamilyData) -> Fingerprint {
    SigmaFamily::new(x).unwrap().fingerprint()
}

pub fn by_fingerprint(rows: &[TableRow]) -> BTreeMap<Fingerprint, &TableRow> {
    rows.iter().map(|r| (fingerprint(&r.data), r)).collect()
}

/// Non-degenerate with a strict triangle: three distinct classes, `Δ_i < Δ_j + Δ_k`.
pub fn strict_triangle(x: &DeltaFamilyData) -> bool {
    let d = x.deltas;
    let s: i64 = d.iter().sum();
    x.e.is_empty() && d.iter().all(|&v| v > 0 && 2 * v < s)
}
