//! Torus-fixed stable pairs `O(−n) → F`: compatible section triples, their
//! lattice counts, and the pair invariant PI_n.

use num_traits::Zero;
use serde::Serialize;

use crate::exactmath::{int, rat, Rational};
use crate::partitions::partition_tuples;
use crate::sigma::{CellContent, DeltaFamilyData, SigmaFamily, TableRow, CHARTS};
use crate::strata::{classify_pattern, configuration_chi, enumerate_patterns, Pattern, StratumTag};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SectionTriple {
    pub u: i64,
    pub v: i64,
    pub w: i64,
}

impl SectionTriple {
    /// Coordinates of the triple in chart `j`.
    pub fn chart_point(&self, j: usize) -> (i64, i64) {
        let c = [self.u, self.v, self.w];
        let (rx, ry) = CHARTS[j];
        (c[rx], c[ry])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCount {
    pub n: i64,
    /// Triples where the section is forced to a line.
    pub circles: i64,
    /// Triples where every content is the full plane.
    pub bullets: i64,
    /// Euler characteristic of the allowed sections, summed over triples.
    #[serde(serialize_with = "crate::exactmath::serialize_rational")]
    pub weighted: Rational,
}

/// Line values among the three chart contents, as pattern blocks; `None` if some content is zero.
fn triple_lines(f: &SigmaFamily, pattern: &Pattern, t: &SectionTriple) -> Option<Vec<usize>> {
    let mut lines = Vec::new();
    for j in 0..3 {
        match f.content(j, t.chart_point(j)) {
            CellContent::Zero => return None,
            CellContent::Full => {}
            CellContent::Line(p) => lines.push(pattern.block_of_class(p)),
            CellContent::Free(k) => lines.push(pattern.block_of_free(k)),
        }
    }
    lines.sort_unstable();
    lines.dedup();
    Some(lines)
}

/// Triples with `u+v+w = n`, all three contents nonzero and a common line for
/// the section; `l = 1` when all contents are full, else `0`.
pub fn compatible_triples(f: &SigmaFamily, pattern: &Pattern, n: i64) -> Vec<(SectionTriple, u8)> {
    let a = f.data().a;
    let mut out = Vec::new();
    for u in 0..=n - a {
        for v in 0..=n - a - u {
            let t = SectionTriple { u, v, w: n - u - v };
            if let Some(lines) = triple_lines(f, pattern, &t) {
                match lines.len() {
                    0 => out.push((t, 1)),
                    1 => out.push((t, 0)),
                    _ => {}
                }
            }
        }
    }
    out
}

/// Counts of compatible triples read off in each chart's own coordinates.
pub fn pair_counts(f: &SigmaFamily, pattern: &Pattern, n: i64) -> Result<[PairCount; 3]> {
    let destab = classify_pattern(f, pattern)?.destabilizers;
    let starts = [0, 0, f.data().a];
    let count = |j: usize| {
        let (rx, ry) = CHARTS[j];
        let rz = 3 - rx - ry;
        let mut pc = PairCount {
            n,
            circles: 0,
            bullets: 0,
            weighted: Rational::zero(),
        };
        for x in starts[rx]..=n - starts[ry] - starts[rz] {
            for y in starts[ry]..=n - x - starts[rz] {
                let mut c = [0; 3];
                c[rx] = x;
                c[ry] = y;
                c[rz] = n - x - y;
                let t = SectionTriple {
                    u: c[0],
                    v: c[1],
                    w: c[2],
                };
                match triple_lines(f, pattern, &t).as_deref() {
                    Some([]) => {
                        pc.bullets += 1;
                        pc.weighted += int(2 - destab.len() as i64);
                    }
                    Some([line]) => {
                        pc.circles += 1;
                        if !destab.contains(line) {
                            pc.weighted += int(1);
                        }
                    }
                    _ => {}
                }
            }
        }
        pc
    };
    Ok([count(0), count(1), count(2)])
}

/// Level beyond which every triple with all coordinates past the modified
/// region is full: the sum over rays of the furthest non-full coordinate.
pub fn n_min(x: &DeltaFamilyData) -> Result<i64> {
    let f = SigmaFamily::new(x)?;
    let starts = [0, 0, x.a];
    let mut reach: [i64; 3] = std::array::from_fn(|r| starts[r] + x.deltas[r]);
    for (j, &(rx, ry)) in CHARTS.iter().enumerate() {
        for &((cx, cy), _) in f.modified_cells(j) {
            reach[rx] = reach[rx].max(cx + 1);
            reach[ry] = reach[ry].max(cy + 1);
        }
    }
    Ok(reach.iter().sum::<i64>().max(0))
}

/// `P(n) = n² + 3n + 2 + b`.
pub fn hilbert_value(b: i64, n: i64) -> i64 {
    n * n + 3 * n + 2 + b
}

/// Number of torus-fixed points of `Hilb^k(P²)`: triples of partitions of total size `k`.
pub fn fixed_point_count(k: usize) -> i64 {
    partition_tuples(k, 3).len() as i64
}

fn even_b(b: i64) -> Result<()> {
    if b > 0 || b % 2 != 0 {
        return Err(Error::Config(format!("b must be even and ≤ 0, got {b}")));
    }
    Ok(())
}

/// `h·P(P−2)/8 + h(h−1)/2 · P²/4` with `h = χ(Hilb^{−b/2})`.
pub fn decomposable_pair_contribution(b: i64, n: i64) -> Result<Rational> {
    even_b(b)?;
    let h = fixed_point_count((-b / 2) as usize);
    let p = hilbert_value(b, n);
    assert!(p % 2 == 0, "P(n) is even for even b");
    Ok(rat(h * p * (p - 2), 8) + rat(h * (h - 1) / 2 * p * p, 4))
}

/// `PI_n` from the decomposable term and the table rows.
pub fn pair_invariant(b: i64, n: i64, rows: &[TableRow]) -> Result<Rational> {
    let mut total = decomposable_pair_contribution(b, n)?;
    let p = hilbert_value(b, n);
    for r in rows {
        let m = r.multiplicity as i64;
        total += rat(m * p * r.c_ss, 2) + int(m * p * r.c_st);
    }
    Ok(total)
}

/// Fixed pairs of one family counted directly: over stable and strictly
/// semistable indecomposable patterns, the configuration χ times the weighted
/// triple count of chart 1.
pub fn family_pair_count(f: &SigmaFamily, n: i64) -> Result<Rational> {
    let mut total = Rational::zero();
    for p in enumerate_patterns(f.class_count(), f.free_component_count()) {
        let cl = classify_pattern(f, &p)?;
        if matches!(
            cl.tag,
            StratumTag::Stable | StratumTag::StrictlySsIndecomposable
        ) {
            let [pc, _, _] = pair_counts(f, &p, n)?;
            total += int(configuration_chi(cl.d)?) * pc.weighted;
        }
    }
    Ok(total)
}

/// `PI_n` with the indecomposable part counted from section triples instead of `c`-values.
pub fn pair_invariant_by_counts(b: i64, n: i64, rows: &[TableRow]) -> Result<Rational> {
    let mut total = decomposable_pair_contribution(b, n)?;
    for r in rows {
        let f = SigmaFamily::new(&r.data)?;
        total += int(r.multiplicity as i64) * family_pair_count(&f, n)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition2D;
    use crate::strata::enumerate_patterns;

    fn toric() -> SigmaFamily {
        let mut pis: [Partition2D; 6] = Default::default();
        pis[0] = Partition2D::new(vec![1]).unwrap();
        SigmaFamily::new(&DeltaFamilyData::new(-2, [2, 1, 1], pis, vec![]).unwrap()).unwrap()
    }

    #[test]
    fn toric_counts() {
        let f = toric();
        let pat = &enumerate_patterns(3, 0)[0];
        for pc in pair_counts(&f, pat, 5).unwrap() {
            assert_eq!(pc.circles + 2 * pc.bullets, 40);
            assert_eq!(pc.weighted, int(20));
        }
        let t = compatible_triples(&f, pat, 5);
        let bullets = t.iter().filter(|(_, l)| *l == 1).count() as i64;
        assert_eq!(t.len() as i64 + bullets, 40);
    }

    #[test]
    fn decomposable_examples() {
        for n in [3, 7] {
            let p = hilbert_value(0, n);
            assert_eq!(
                decomposable_pair_contribution(0, n).unwrap(),
                rat(p * (p - 2), 8)
            );
            let p = hilbert_value(-2, n);
            assert_eq!(
                decomposable_pair_contribution(-2, n).unwrap(),
                rat(3 * p * (p - 2), 8) + rat(3 * p * p, 4)
            );
            let p = hilbert_value(-4, n);
            assert_eq!(
                decomposable_pair_contribution(-4, n).unwrap(),
                rat(9 * p * (p - 2), 8) + rat(36 * p * p, 4)
            );
        }
        assert!(decomposable_pair_contribution(-3, 4).is_err());
    }

    #[test]
    fn fixed_points() {
        assert_eq!(
            (0..4).map(fixed_point_count).collect::<Vec<_>>(),
            vec![1, 3, 9, 22]
        );
    }

    #[test]
    fn n_min_of_toric() {
        let f = toric();
        assert!(n_min(f.data()).unwrap() >= 2);
    }
}
