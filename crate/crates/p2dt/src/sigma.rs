//! Δ-family data, the chart-wise σ-family contents, destabilizing rank-1
//! subsheaves, and the enumeration of D(P).
//!
//! Rays are indexed 0, 1, 2 (U, V, W) with starts `(0, 0, A)`. Chart `j` has
//! x-ray `j` and y-ray `j+1 mod 3`, so its coordinates are `(u,v)`, `(v,w)`, `(w,u)`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactmath::{int, rat, HilbertPolynomial, Rational, RationalPoly};
use crate::partitions::{connected_components, partition_tuples, Cell, CellSet, Partition2D};
use crate::strata::{c_values_of_family, Pattern};
use crate::{Error, Result};

/// Ray pair `(x-ray, y-ray)` of each chart.
pub const CHARTS: [(usize, usize); 3] = [(0, 1), (1, 2), (2, 0)];

/// One Δ-family: `A`, the strip widths, two partitions per chart and the
/// coincidences `E` among the nonzero lines (1-based ray indices).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DeltaFamilyData {
    #[serde(rename = "A")]
    pub a: i64,
    pub deltas: [i64; 3],
    pub pis: [Partition2D; 6],
    #[serde(rename = "E")]
    pub e: Vec<(u8, u8)>,
}

impl DeltaFamilyData {
    pub fn new(
        a: i64,
        deltas: [i64; 3],
        pis: [Partition2D; 6],
        mut e: Vec<(u8, u8)>,
    ) -> Result<Self> {
        e.sort_unstable();
        e.dedup();
        let x = DeltaFamilyData { a, deltas, pis, e };
        x.validate()?;
        Ok(x)
    }

    /// Checks the structural invariants. Does not require `ΣΔ = −2A`.
    pub fn validate(&self) -> Result<()> {
        if self.deltas.iter().any(|&d| d < 0) {
            return Err(Error::InvalidData(format!(
                "negative Δ in {:?}",
                self.deltas
            )));
        }
        let mut prev = None;
        for &(i, j) in &self.e {
            if !(1..=3).contains(&i) || !(1..=3).contains(&j) || i >= j {
                return Err(Error::InvalidData(format!("bad pair ({i},{j}) in E")));
            }
            if self.deltas[i as usize - 1] == 0 || self.deltas[j as usize - 1] == 0 {
                return Err(Error::InvalidData(format!(
                    "pair ({i},{j}) in E joins a zero line"
                )));
            }
            if prev.is_some_and(|p| p >= (i, j)) {
                return Err(Error::InvalidData(
                    "E must be sorted without repeats".into(),
                ));
            }
            prev = Some((i, j));
        }
        // with three rays, two pairs force the third
        if self.e.len() == 2 {
            return Err(Error::InvalidData(format!(
                "E = {:?} is not transitively closed",
                self.e
            )));
        }
        Ok(())
    }

    /// True if rays `i` and `j` (0-based) carry the same nonzero line.
    pub fn same_class(&self, i: usize, j: usize) -> bool {
        if self.deltas[i] == 0 || self.deltas[j] == 0 {
            return false;
        }
        let (lo, hi) = (i.min(j), i.max(j));
        lo == hi || self.e.contains(&(lo as u8 + 1, hi as u8 + 1))
    }

    /// Class index of each ray with `Δ > 0`, numbered by first ray.
    pub fn ray_classes(&self) -> [Option<usize>; 3] {
        let mut out = [None; 3];
        let mut next = 0;
        for r in 0..3 {
            if self.deltas[r] == 0 {
                continue;
            }
            out[r] = (0..r).find(|&s| self.same_class(r, s)).and_then(|s| out[s]);
            if out[r].is_none() {
                out[r] = Some(next);
                next += 1;
            }
        }
        out
    }

    pub fn class_count(&self) -> usize {
        self.ray_classes()
            .iter()
            .flatten()
            .max()
            .map_or(0, |m| m + 1)
    }

    /// Total width of each line class.
    pub fn class_widths(&self) -> Vec<i64> {
        let classes = self.ray_classes();
        let mut w = vec![0; self.class_count()];
        for r in 0..3 {
            if let Some(c) = classes[r] {
                w[c] += self.deltas[r];
            }
        }
        w
    }

    pub fn partition_count(&self) -> i64 {
        self.pis.iter().map(|p| p.size() as i64).sum()
    }

    /// `Σ_{i<j} Δ_i Δ_j (1 − dim p_i ∩ p_j)`.
    pub fn cross_term(&self) -> i64 {
        let mut s = 0;
        for i in 0..3 {
            for j in i + 1..3 {
                if !self.same_class(i, j) {
                    s += self.deltas[i] * self.deltas[j];
                }
            }
        }
        s
    }

    /// The `b` of the Hilbert polynomial `m² + 3m + 2 + b`, assuming `ΣΔ = −2A`.
    pub fn b(&self) -> i64 {
        self.a * self.a - self.partition_count() - self.cross_term()
    }

    /// Canonical JSON object `{"A":…,"deltas":[…],"pis":[[…],…],"E":[[i,j],…]}`.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("Δ-family data always serializes")
    }

    /// Same Δ-family with empty partitions.
    pub fn hull(&self) -> Self {
        DeltaFamilyData {
            pis: Default::default(),
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug)]
pub struct Rank1Data {
    pub u: i64,
    pub v: i64,
    pub w: i64,
    pub pis: [Partition2D; 3],
}

/// `(rank, c1, c2)` with `c1` the degree of `ch₁` and `c2` the degree of `ch₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernCharacter {
    pub rank: i64,
    pub c1: i64,
    pub c2: Rational,
}

pub fn rank1_chern(d: &Rank1Data) -> ChernCharacter {
    let s = d.u + d.v + d.w;
    let boxes: i64 = d.pis.iter().map(|p| p.size() as i64).sum();
    ChernCharacter {
        rank: 1,
        c1: -s,
        c2: rat(s * s, 2) - int(boxes),
    }
}

/// Chern character of the rank-2 sheaf of `x`; `dim p_i ∩ p_j` is read from `E`.
pub fn rank2_chern(x: &DeltaFamilyData) -> ChernCharacter {
    let sd: i64 = x.deltas.iter().sum();
    let a = x.a;
    let c2 = rat(a * a, 2) + rat((a + sd) * (a + sd), 2)
        - int(x.partition_count())
        - int(x.cross_term());
    ChernCharacter {
        rank: 2,
        c1: -2 * a - sd,
        c2,
    }
}

/// `rank·(m+1)(m+2)/2 + c1·(m + 3/2) + c2`.
pub fn hilbert_from_chern(c: &ChernCharacter) -> RationalPoly {
    let r = c.rank;
    HilbertPolynomial::new(
        rat(r, 2),
        rat(3 * r, 2) + int(c.c1),
        int(r) + rat(3 * c.c1, 2) + c.c2.clone(),
    )
}

/// Value of the σ-family at a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CellContent {
    Zero,
    Full,
    /// The line of a p-class.
    Line(usize),
    /// Free line of component `k`.
    Free(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Region {
    Out,
    Corner,
    StripX,
    StripY,
    Open,
}

#[derive(Clone, Debug)]
struct Chart {
    ax: i64,
    ay: i64,
    dx: i64,
    dy: i64,
    px: Option<usize>,
    py: Option<usize>,
    degenerate: bool,
    pi1: CellSet,
    pi2: CellSet,
}

impl Chart {
    fn region(&self, (x, y): Cell) -> Region {
        if x < self.ax || y < self.ay {
            return Region::Out;
        }
        let inx = x < self.ax + self.dx;
        let iny = y < self.ay + self.dy;
        match (inx, iny) {
            (true, true) => Region::Corner,
            (true, false) => Region::StripX,
            (false, true) => Region::StripY,
            (false, false) => Region::Open,
        }
    }

    /// Content before resolving line components; `None` marks a line cell of the open region.
    fn base(&self, m: Cell, with_partitions: bool) -> Option<CellContent> {
        let in1 = with_partitions && self.pi1.contains(&m);
        let in2 = with_partitions && self.pi2.contains(&m);
        let line = |p: Option<usize>| p.map_or(CellContent::Zero, CellContent::Line);
        let region = self.region(m);
        match region {
            Region::Out => Some(CellContent::Zero),
            Region::Open => match (in1, in2) {
                (true, true) => Some(CellContent::Zero),
                (false, false) => Some(CellContent::Full),
                _ => None,
            },
            _ if self.degenerate => Some(if in1 {
                CellContent::Zero
            } else {
                line(self.px.or(self.py))
            }),
            Region::Corner => Some(CellContent::Zero),
            Region::StripX => Some(if in1 {
                CellContent::Zero
            } else {
                line(self.px)
            }),
            Region::StripY => Some(if in2 {
                CellContent::Zero
            } else {
                line(self.py)
            }),
        }
    }
}

/// Direction whose destabilizing rank-1 subsheaf is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// A block of the coincidence pattern.
    Block(usize),
    /// A line distinct from every value of the pattern.
    Generic,
}

/// Tag used in a [`Fingerprint`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FingerprintTag {
    Zero,
    Full,
    Line(usize),
    /// Free component named by its chart and smallest cell.
    Free(usize, Cell),
}

/// Chart-wise sorted list of cells whose content differs from the bare Δ-family.
pub type Fingerprint = Vec<(usize, Cell, FingerprintTag)>;

/// The σ-family of one Δ-family datum, with free line components resolved.
#[derive(Clone, Debug)]
pub struct SigmaFamily {
    data: DeltaFamilyData,
    classes: [Option<usize>; 3],
    n_classes: usize,
    charts: Vec<Chart>,
    lines: BTreeMap<(usize, Cell), CellContent>,
    free: Vec<(usize, CellSet)>,
    modified: Vec<Vec<(Cell, CellContent)>>,
}

impl SigmaFamily {
    pub fn new(x: &DeltaFamilyData) -> Result<Self> {
        x.validate()?;
        let classes = x.ray_classes();
        let starts = [0, 0, x.a];
        let charts: Vec<Chart> = CHARTS
            .iter()
            .enumerate()
            .map(|(j, &(rx, ry))| {
                let (ax, ay) = (starts[rx], starts[ry]);
                let (dx, dy) = (x.deltas[rx], x.deltas[ry]);
                let degenerate = x.same_class(rx, ry) || dx == 0 || dy == 0;
                let (b1, b2) = if degenerate {
                    ((ax, ay), (ax + dx, ay + dy))
                } else {
                    ((ax, ay + dy), (ax + dx, ay))
                };
                Chart {
                    ax,
                    ay,
                    dx,
                    dy,
                    px: classes[rx],
                    py: classes[ry],
                    degenerate,
                    pi1: x.pis[2 * j].cells_at(b1),
                    pi2: x.pis[2 * j + 1].cells_at(b2),
                }
            })
            .collect();

        let mut lines = BTreeMap::new();
        let mut free = Vec::new();
        for (j, ch) in charts.iter().enumerate() {
            let open_lines: CellSet = ch
                .pi1
                .symmetric_difference(&ch.pi2)
                .iter()
                .copied()
                .filter(|&m| ch.region(m) == Region::Open)
                .collect();
            for comp in connected_components(&open_lines) {
                let mut forced = BTreeSet::new();
                for &(cx, cy) in comp.iter() {
                    for n in [(cx - 1, cy), (cx, cy - 1)] {
                        if let Some(CellContent::Line(p)) = ch.base(n, true) {
                            forced.insert(p);
                        }
                    }
                }
                if forced.len() > 1 {
                    return Err(Error::ConflictingLines { chart: j + 1 });
                }
                let value = match forced.first() {
                    Some(&p) => CellContent::Line(p),
                    None => {
                        free.push((j, comp.clone()));
                        CellContent::Free(free.len() - 1)
                    }
                };
                for &c in comp.iter() {
                    lines.insert((j, c), value);
                }
            }
        }

        let mut family = SigmaFamily {
            data: x.clone(),
            classes,
            n_classes: classes.iter().flatten().max().map_or(0, |m| m + 1),
            charts,
            lines,
            free,
            modified: Vec::new(),
        };
        family.modified = (0..3)
            .map(|j| {
                let ch = &family.charts[j];
                ch.pi1
                    .union(&ch.pi2)
                    .iter()
                    .filter_map(|&m| {
                        let c = family.content(j, m);
                        (c != family.hull_content(j, m)).then_some((m, c))
                    })
                    .collect()
            })
            .collect();
        Ok(family)
    }

    pub fn data(&self) -> &DeltaFamilyData {
        &self.data
    }

    /// Number of distinct p-classes.
    pub fn class_count(&self) -> usize {
        self.n_classes
    }

    /// Class of each ray, `None` for rays with `Δ = 0`.
    pub fn ray_classes(&self) -> [Option<usize>; 3] {
        self.classes
    }

    pub fn free_component_count(&self) -> usize {
        self.free.len()
    }

    /// Chart index and cells of each free component.
    pub fn free_components(&self) -> &[(usize, CellSet)] {
        &self.free
    }

    pub fn is_degenerate_chart(&self, chart: usize) -> bool {
        self.charts[chart].degenerate
    }

    /// Content at cell `m` of chart `chart` (0-based).
    pub fn content(&self, chart: usize, m: Cell) -> CellContent {
        match self.charts[chart].base(m, true) {
            Some(c) => c,
            None => self.lines[&(chart, m)],
        }
    }

    /// Content of the same Δ-family with all partitions empty.
    pub fn hull_content(&self, chart: usize, m: Cell) -> CellContent {
        self.charts[chart]
            .base(m, false)
            .expect("hull has no line cells")
    }

    /// Cells whose content differs from the hull, with their content.
    pub fn modified_cells(&self, chart: usize) -> &[(Cell, CellContent)] {
        &self.modified[chart]
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut out = Vec::new();
        for (j, cells) in self.modified.iter().enumerate() {
            for &(m, c) in cells {
                let tag = match c {
                    CellContent::Zero => FingerprintTag::Zero,
                    CellContent::Full => FingerprintTag::Full,
                    CellContent::Line(p) => FingerprintTag::Line(p),
                    CellContent::Free(k) => {
                        let (fj, comp) = &self.free[k];
                        FingerprintTag::Free(*fj, comp.smallest().expect("components are nonempty"))
                    }
                };
                out.push((j, m, tag));
            }
        }
        out
    }

    /// Whether the line of `dir` lies in a cell with this content under `pattern`.
    pub fn contains_direction(&self, c: CellContent, pattern: &Pattern, dir: Direction) -> bool {
        match (c, dir) {
            (CellContent::Full, _) => true,
            (CellContent::Zero, _) => false,
            (_, Direction::Generic) => false,
            (CellContent::Line(p), Direction::Block(x)) => pattern.block_of_class(p) == x,
            (CellContent::Free(k), Direction::Block(x)) => pattern.block_of_free(k) == x,
        }
    }

    fn destabilizer_starts(&self, pattern: &Pattern, dir: Direction) -> [i64; 3] {
        let base = [0, 0, self.data.a];
        let mut st = [0; 3];
        for r in 0..3 {
            let own = matches!((self.classes[r], dir), (Some(c), Direction::Block(x)) if pattern.block_of_class(c) == x);
            st[r] = base[r] + if own { 0 } else { self.data.deltas[r] };
        }
        st
    }

    /// Cells of each chart's quadrant that miss the direction, relative to the quadrant corner.
    fn destabilizer_deficits(&self, pattern: &Pattern, dir: Direction) -> ([i64; 3], [CellSet; 3]) {
        let st = self.destabilizer_starts(pattern, dir);
        let mut out: [CellSet; 3] = Default::default();
        for (j, &(rx, ry)) in CHARTS.iter().enumerate() {
            for &((x, y), c) in &self.modified[j] {
                if x >= st[rx] && y >= st[ry] && !self.contains_direction(c, pattern, dir) {
                    out[j].insert((x, y));
                }
            }
        }
        (st, out)
    }

    /// `(s, deficiency)`: the destabilizer has polynomial `(m−s+1)(m−s+2)/2 − deficiency`.
    pub fn destabilizer_shape(&self, pattern: &Pattern, dir: Direction) -> (i64, i64) {
        let (st, cells) = self.destabilizer_deficits(pattern, dir);
        (st.iter().sum(), cells.iter().map(|c| c.len() as i64).sum())
    }

    /// Rank-1 data of the maximal subsheaf whose sections lie in the direction.
    pub fn destabilizer_data(&self, pattern: &Pattern, dir: Direction) -> Result<Rank1Data> {
        let (st, cells) = self.destabilizer_deficits(pattern, dir);
        let mut pis: [Partition2D; 3] = Default::default();
        for (j, &(rx, ry)) in CHARTS.iter().enumerate() {
            pis[j] = Partition2D::from_cells(&cells[j], (st[rx], st[ry])).ok_or_else(|| {
                Error::InvalidData(format!(
                    "destabilizer of {} in chart {} is not a partition",
                    self.data.to_canonical_json(),
                    j + 1
                ))
            })?;
        }
        Ok(Rank1Data {
            u: st[0],
            v: st[1],
            w: st[2],
            pis,
        })
    }
}

/// Content of chart `chart` (1, 2 or 3) at `m`.
pub fn eval_sigma(x: &DeltaFamilyData, chart: usize, m: Cell) -> Result<CellContent> {
    if !(1..=3).contains(&chart) {
        return Err(Error::InvalidData(format!(
            "chart must be 1, 2 or 3, got {chart}"
        )));
    }
    Ok(SigmaFamily::new(x)?.content(chart - 1, m))
}

pub fn free_component_count(x: &DeltaFamilyData) -> Result<usize> {
    Ok(SigmaFamily::new(x)?.free_component_count())
}

pub fn destabilizer_polynomial(
    f: &SigmaFamily,
    pattern: &Pattern,
    dir: Direction,
) -> Result<RationalPoly> {
    Ok(hilbert_from_chern(&rank1_chern(
        &f.destabilizer_data(pattern, dir)?,
    )))
}

/// A canonical row of D(P) with its counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    #[serde(flatten)]
    pub data: DeltaFamilyData,
    pub c_ss: i64,
    pub c_st: i64,
    pub multiplicity: u32,
}

/// Number of distinct reorderings of a triple.
pub fn reindexing_multiplicity(d: [i64; 3]) -> u32 {
    match (d[0] == d[1], d[1] == d[2], d[0] == d[2]) {
        (true, true, _) => 1,
        (false, false, false) => 6,
        _ => 3,
    }
}

/// All `E` for the nonzero entries of `deltas`, as sorted 1-based pair lists.
pub fn coincidence_sets(deltas: [i64; 3]) -> Vec<Vec<(u8, u8)>> {
    let nz: Vec<u8> = (0..3)
        .filter(|&r| deltas[r] > 0)
        .map(|r| r as u8 + 1)
        .collect();
    let mut out = vec![Vec::new()];
    for i in 0..nz.len() {
        for j in i + 1..nz.len() {
            out.push(vec![(nz[i], nz[j])]);
        }
    }
    if nz.len() == 3 {
        out.push(vec![(1, 2), (1, 3), (2, 3)]);
    }
    out
}

/// Descending triples with sum `s`.
fn descending_triples(s: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for d1 in (0..=s).rev() {
        for d2 in (0..=d1.min(s - d1)).rev() {
            let d3 = s - d1 - d2;
            if d3 <= d2 {
                out.push([d1, d2, d3]);
            }
        }
    }
    out
}

type RepresentativeKey = ([i64; 3], [Partition2D; 6]);

/// Per chart: `+|π¹|` for degenerate charts, `−|π¹|` otherwise; then the tuple.
fn representative_key(f: &SigmaFamily) -> RepresentativeKey {
    let mut k = [0; 3];
    for (j, kj) in k.iter_mut().enumerate() {
        let n1 = f.data.pis[2 * j].size() as i64;
        *kj = if f.is_degenerate_chart(j) { n1 } else { -n1 };
    }
    (k, f.data.pis.clone())
}

/// Contributing rows for one `(A, Δ, E)` cell, deduplicated by fingerprint.
pub fn enumerate_cell(a: i64, deltas: [i64; 3], e: &[(u8, u8)], b: i64) -> Result<Vec<TableRow>> {
    let hull = DeltaFamilyData::new(a, deltas, Default::default(), e.to_vec())?;
    let n = hull.b() - b;
    if n < 0 {
        return Ok(Vec::new());
    }
    let tuples = partition_tuples(n as usize, 6);
    let found: Vec<Option<(Fingerprint, RepresentativeKey, TableRow)>> = tuples
        .into_par_iter()
        .map(|t| -> Result<_> {
            let pis: [Partition2D; 6] = t.try_into().expect("six partitions");
            let x = DeltaFamilyData {
                pis,
                ..hull.clone()
            };
            let f = match SigmaFamily::new(&x) {
                Ok(f) => f,
                Err(Error::ConflictingLines { .. }) => return Ok(None),
                Err(e) => return Err(e),
            };
            let (c_ss, c_st) = c_values_of_family(&f)?;
            if c_ss == 0 && c_st == 0 {
                return Ok(None);
            }
            let row = TableRow {
                data: x,
                c_ss,
                c_st,
                multiplicity: reindexing_multiplicity(deltas),
            };
            Ok(Some((f.fingerprint(), representative_key(&f), row)))
        })
        .collect::<Result<_>>()?;
    let mut best: BTreeMap<Fingerprint, (RepresentativeKey, TableRow)> = BTreeMap::new();
    for (fp, key, row) in found.into_iter().flatten() {
        match best.get(&fp) {
            Some((k, prev)) if *k <= key => {
                debug_assert_eq!((prev.c_ss, prev.c_st), (row.c_ss, row.c_st));
            }
            _ => {
                best.insert(fp, (key, row));
            }
        }
    }
    Ok(best.into_values().map(|(_, r)| r).collect())
}

/// True if some line class alone already destabilizes every sheaf of the cell.
fn cell_pruned(hull: &DeltaFamilyData, n: i64, b: i64) -> bool {
    hull.class_widths()
        .iter()
        .any(|&w| w > -hull.a || (w == -hull.a && 2 * n < -b))
}

/// Default hard floor of the `A` sweep.
pub fn default_a_floor(b: i64) -> i64 {
    -(b.abs() + 4)
}

/// Table ordering: `(|A|, Δ, partitions, E)`.
pub fn sort_rows(rows: &mut [TableRow]) {
    rows.sort_by(|x, y| {
        let kx = (x.data.a.abs(), x.data.deltas, &x.data.pis, &x.data.e);
        let ky = (y.data.a.abs(), y.data.deltas, &y.data.pis, &y.data.e);
        kx.cmp(&ky)
    });
}

/// Canonical rows of D(P) for `P = m² + 3m + 2 + b`.
///
/// `A` runs down from 0 and stops after two consecutive values without rows.
/// Reaching `a_floor` (default `−(|b|+4)`) while still finding rows is an error.
pub fn enumerate_d(b: i64, a_floor: Option<i64>) -> Result<Vec<TableRow>> {
    if b > 0 {
        return Err(Error::Config(format!("b must be ≤ 0, got {b}")));
    }
    let floor = a_floor.unwrap_or_else(|| default_a_floor(b));
    let mut rows = Vec::new();
    let mut empty_run = 0;
    let mut a = 0;
    loop {
        let mut found = 0;
        for deltas in descending_triples(-2 * a) {
            for e in coincidence_sets(deltas) {
                let hull = DeltaFamilyData::new(a, deltas, Default::default(), e.clone())?;
                let n = hull.b() - b;
                if n < 0 || cell_pruned(&hull, n, b) {
                    continue;
                }
                let cell = enumerate_cell(a, deltas, &e, b)?;
                found += cell.len();
                rows.extend(cell);
            }
        }
        if found == 0 {
            empty_run += 1;
            if empty_run == 2 {
                break;
            }
        } else {
            empty_run = 0;
            if a <= floor {
                return Err(Error::FloorReached { b, a_floor: floor });
            }
        }
        if a <= floor {
            break;
        }
        a -= 1;
    }
    sort_rows(&mut rows);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rank2_hilbert;
    use crate::strata::enumerate_patterns;

    fn p(v: &[u32]) -> Partition2D {
        Partition2D::new(v.to_vec()).unwrap()
    }

    fn e() -> Partition2D {
        Partition2D::empty()
    }

    pub(crate) fn toric() -> DeltaFamilyData {
        DeltaFamilyData::new(-2, [2, 1, 1], [p(&[1]), e(), e(), e(), e(), e()], vec![]).unwrap()
    }

    fn row1() -> DeltaFamilyData {
        DeltaFamilyData::new(
            -1,
            [1, 1, 0],
            [e(), e(), p(&[1]), p(&[1]), p(&[1]), p(&[1])],
            vec![],
        )
        .unwrap()
    }

    fn row68() -> DeltaFamilyData {
        DeltaFamilyData::new(
            -2,
            [2, 1, 1],
            [p(&[2]), p(&[1, 1]), e(), e(), e(), e()],
            vec![(2, 3)],
        )
        .unwrap()
    }

    #[test]
    fn rank1_examples() {
        let none: [Partition2D; 3] = Default::default();
        let c = rank1_chern(&Rank1Data {
            u: 0,
            v: 0,
            w: 0,
            pis: none.clone(),
        });
        assert_eq!(
            c,
            ChernCharacter {
                rank: 1,
                c1: 0,
                c2: int(0)
            }
        );
        let c = rank1_chern(&Rank1Data {
            u: 0,
            v: 0,
            w: 0,
            pis: [p(&[1]), e(), e()],
        });
        assert_eq!(c.c2, int(-1));
        let c = rank1_chern(&Rank1Data {
            u: 0,
            v: 1,
            w: 2,
            pis: none,
        });
        assert_eq!(
            c,
            ChernCharacter {
                rank: 1,
                c1: -3,
                c2: rat(9, 2)
            }
        );
    }

    #[test]
    fn rank2_examples() {
        assert_eq!(
            rank2_chern(&toric()),
            ChernCharacter {
                rank: 2,
                c1: 0,
                c2: int(-2)
            }
        );
        let zero = DeltaFamilyData::new(0, [0, 0, 0], Default::default(), vec![]).unwrap();
        assert_eq!(
            rank2_chern(&zero),
            ChernCharacter {
                rank: 2,
                c1: 0,
                c2: int(0)
            }
        );
        assert_eq!(
            rank2_chern(&row68()),
            ChernCharacter {
                rank: 2,
                c1: 0,
                c2: int(-4)
            }
        );
        let two = DeltaFamilyData::new(
            -2,
            [2, 1, 1],
            [p(&[1, 1]), e(), e(), e(), e(), e()],
            vec![(2, 3)],
        )
        .unwrap();
        assert_eq!(rank2_chern(&two).c2, int(-2));
    }

    #[test]
    fn hilbert_examples() {
        let h = hilbert_from_chern(&ChernCharacter {
            rank: 1,
            c1: 0,
            c2: int(-3),
        });
        assert_eq!(h, HilbertPolynomial::new(rat(1, 2), rat(3, 2), int(-2)));
        let h = hilbert_from_chern(&ChernCharacter {
            rank: 2,
            c1: 0,
            c2: int(0),
        });
        assert_eq!(h, rank2_hilbert(0));
        assert_eq!(
            hilbert_from_chern(&rank2_chern(&toric())),
            rank2_hilbert(-2)
        );
    }

    #[test]
    fn validation() {
        let bad = DeltaFamilyData::new(-1, [1, 1, 0], Default::default(), vec![(1, 3)]);
        assert!(bad.is_err());
        let bad = DeltaFamilyData::new(-2, [2, 1, 1], Default::default(), vec![(1, 2), (2, 3)]);
        assert!(bad.is_err());
        assert!(DeltaFamilyData::new(
            -2,
            [2, 1, 1],
            Default::default(),
            vec![(1, 2), (1, 3), (2, 3)]
        )
        .is_ok());
    }

    #[test]
    fn canonical_json() {
        assert_eq!(
            row68().to_canonical_json(),
            r#"{"A":-2,"deltas":[2,1,1],"pis":[[2],[1,1],[],[],[],[]],"E":[[2,3]]}"#
        );
        let back: DeltaFamilyData = serde_json::from_str(&row68().to_canonical_json()).unwrap();
        assert_eq!(back, row68());
    }

    #[test]
    fn toric_contents() {
        let x = toric();
        assert_eq!(eval_sigma(&x, 1, (0, 1)).unwrap(), CellContent::Zero);
        assert_eq!(eval_sigma(&x, 1, (0, 2)).unwrap(), CellContent::Line(0));
        assert_eq!(eval_sigma(&x, 1, (-1, 5)).unwrap(), CellContent::Zero);
        assert_eq!(eval_sigma(&x, 1, (5, -1)).unwrap(), CellContent::Zero);
        assert_eq!(eval_sigma(&x, 1, (5, 5)).unwrap(), CellContent::Full);
        assert_eq!(eval_sigma(&x, 1, (1, 0)).unwrap(), CellContent::Zero);
        assert_eq!(eval_sigma(&x, 1, (2, 0)).unwrap(), CellContent::Line(1));
        assert!(eval_sigma(&x, 4, (0, 0)).is_err());
        assert_eq!(free_component_count(&x).unwrap(), 0);
    }

    #[test]
    fn free_components_of_walkthrough_rows() {
        let f = SigmaFamily::new(&row1()).unwrap();
        assert_eq!(f.free_component_count(), 2);
        assert_eq!(f.free_components()[0].0, 1);
        let c = f.free_components()[0].1.smallest().unwrap();
        assert_eq!(f.content(1, c), CellContent::Free(0));
        assert_eq!(free_component_count(&row68()).unwrap(), 1);
    }

    #[test]
    fn toric_destabilizer_is_half() {
        let f = SigmaFamily::new(&toric()).unwrap();
        let half = rank2_hilbert(-2).scale(&rat(1, 2));
        for pat in enumerate_patterns(f.class_count(), f.free_component_count()) {
            let l = destabilizer_polynomial(&f, &pat, Direction::Block(0)).unwrap();
            assert_eq!(l, half);
        }
    }

    #[test]
    fn shape_matches_polynomial() {
        for x in [toric(), row1(), row68()] {
            let f = SigmaFamily::new(&x).unwrap();
            for pat in enumerate_patterns(f.class_count(), f.free_component_count()) {
                let mut dirs: Vec<Direction> =
                    (0..pat.block_count()).map(Direction::Block).collect();
                dirs.push(Direction::Generic);
                for d in dirs {
                    let (s, defi) = f.destabilizer_shape(&pat, d);
                    let poly = destabilizer_polynomial(&f, &pat, d).unwrap();
                    let expect = HilbertPolynomial::new(
                        rat(1, 2),
                        rat(3 - 2 * s, 2),
                        rat((1 - s) * (2 - s), 2) - int(defi),
                    );
                    assert_eq!(poly, expect);
                }
            }
        }
    }

    #[test]
    fn multiplicities() {
        assert_eq!(reindexing_multiplicity([1, 1, 0]), 3);
        assert_eq!(reindexing_multiplicity([3, 2, 1]), 6);
        assert_eq!(reindexing_multiplicity([2, 2, 2]), 1);
        assert_eq!(reindexing_multiplicity([2, 1, 1]), 3);
        assert_eq!(coincidence_sets([2, 1, 1]).len(), 5);
        assert_eq!(coincidence_sets([1, 1, 0]).len(), 2);
        assert_eq!(coincidence_sets([0, 0, 0]).len(), 1);
    }

    #[test]
    fn triples() {
        assert_eq!(descending_triples(2), vec![[2, 0, 0], [1, 1, 0]]);
        assert_eq!(descending_triples(0), vec![[0, 0, 0]]);
        assert_eq!(descending_triples(4).len(), 4);
    }

    #[test]
    fn b_zero_is_empty() {
        assert!(enumerate_d(0, None).unwrap().is_empty());
        assert!(enumerate_d(1, None).is_err());
    }
}
