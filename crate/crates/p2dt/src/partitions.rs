//! Integer partitions as Young diagrams and finite cell sets in ℤ².

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A lattice cell `(x, y)`.
pub type Cell = (i64, i64);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing, got {0:?}")]
    NotAPartition(Vec<u32>),
}

/// A partition stored as row lengths: row `y` holds the cells `(0, y) .. (parts[y]-1, y)`.
///
/// Serializes as its part list, e.g. `[2,1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition2D {
    parts: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Partition2D {
    type Error = PartitionError;
    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Partition2D::new(parts)
    }
}

impl From<Partition2D> for Vec<u32> {
    fn from(p: Partition2D) -> Self {
        p.parts
    }
}

impl Partition2D {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition2D { parts })
        } else {
            Err(PartitionError::NotAPartition(parts))
        }
    }

    pub fn empty() -> Self {
        Partition2D { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        x >= 0 && y >= 0 && (y as usize) < self.parts.len() && x < self.parts[y as usize] as i64
    }

    pub fn conjugate(&self) -> Self {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width)
            .map(|x| self.parts.iter().filter(|&&p| p > x).count() as u32)
            .collect();
        Partition2D { parts }
    }

    /// Cells of the diagram translated so its corner sits at `base`.
    pub fn cells_at(&self, base: Cell) -> CellSet {
        let mut out = CellSet::new();
        for (y, &row) in self.parts.iter().enumerate() {
            for x in 0..row as i64 {
                out.insert((base.0 + x, base.1 + y as i64));
            }
        }
        out
    }

    /// Recovers a partition from a cell set with corner `origin`.
    ///
    /// Returns `None` unless the cells form a Young diagram there.
    pub fn from_cells(cells: &CellSet, origin: Cell) -> Option<Self> {
        let mut rows: Vec<u32> = Vec::new();
        for &(x, y) in cells.iter() {
            let (dx, dy) = (x - origin.0, y - origin.1);
            if dx < 0 || dy < 0 {
                return None;
            }
            let dy = dy as usize;
            if rows.len() <= dy {
                rows.resize(dy + 1, 0);
            }
            rows[dy] += 1;
        }
        let p = Partition2D::new(rows).ok()?;
        if p.cells_at(origin) == *cells {
            Some(p)
        } else {
            None
        }
    }
}

impl fmt::Display for Partition2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "]")
    }
}

/// All partitions of `n`, largest first part first.
pub fn enumerate_partitions(n: usize) -> Vec<Partition2D> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition2D>) {
        if n == 0 {
            out.push(Partition2D {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, n as u32, &mut Vec::new(), &mut out);
    out
}

/// All `k`-tuples of partitions of total size `n`.
///
/// Sizes run over compositions in lexicographic order, then partitions in the
/// order of [`enumerate_partitions`].
pub fn partition_tuples(n: usize, k: usize) -> Vec<Vec<Partition2D>> {
    let by_size: Vec<Vec<Partition2D>> = (0..=n).map(enumerate_partitions).collect();
    let mut out = Vec::new();
    let mut sizes = vec![0usize; k];
    fn comps(
        i: usize,
        left: usize,
        sizes: &mut Vec<usize>,
        by_size: &[Vec<Partition2D>],
        out: &mut Vec<Vec<Partition2D>>,
    ) {
        let k = sizes.len();
        if i + 1 == k || k == 0 {
            if k == 0 {
                if left == 0 {
                    out.push(Vec::new());
                }
                return;
            }
            sizes[i] = left;
            product(sizes, by_size, out);
            return;
        }
        for s in 0..=left {
            sizes[i] = s;
            comps(i + 1, left - s, sizes, by_size, out);
        }
    }
    fn product(sizes: &[usize], by_size: &[Vec<Partition2D>], out: &mut Vec<Vec<Partition2D>>) {
        let mut acc: Vec<Vec<Partition2D>> = vec![Vec::new()];
        for &s in sizes {
            let mut next = Vec::with_capacity(acc.len() * by_size[s].len());
            for prefix in &acc {
                for p in &by_size[s] {
                    let mut t = prefix.clone();
                    t.push(p.clone());
                    next.push(t);
                }
            }
            acc = next;
        }
        out.extend(acc);
    }
    comps(0, n, &mut sizes, &by_size, &mut out);
    out
}

/// Finite set of lattice cells with a deterministic iteration order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellSet {
    cells: BTreeSet<Cell>,
}

impl CellSet {
    pub fn new() -> Self {
        CellSet::default()
    }

    pub fn insert(&mut self, c: Cell) -> bool {
        self.cells.insert(c)
    }

    pub fn contains(&self, c: &Cell) -> bool {
        self.cells.contains(c)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Cell> + '_ {
        self.cells.iter()
    }

    /// Smallest cell in lexicographic order.
    pub fn smallest(&self) -> Option<Cell> {
        self.cells.first().copied()
    }

    pub fn union(&self, other: &CellSet) -> CellSet {
        self.cells.union(&other.cells).copied().collect()
    }

    pub fn intersection(&self, other: &CellSet) -> CellSet {
        self.cells.intersection(&other.cells).copied().collect()
    }

    pub fn difference(&self, other: &CellSet) -> CellSet {
        self.cells.difference(&other.cells).copied().collect()
    }

    pub fn symmetric_difference(&self, other: &CellSet) -> CellSet {
        self.cells
            .symmetric_difference(&other.cells)
            .copied()
            .collect()
    }
}

impl FromIterator<Cell> for CellSet {
    fn from_iter<I: IntoIterator<Item = Cell>>(iter: I) -> Self {
        CellSet {
            cells: iter.into_iter().collect(),
        }
    }
}

fn neighbours((x, y): Cell) -> [Cell; 4] {
    [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)]
}

/// 4-connected components, ordered by their smallest cell.
pub fn connected_components(s: &CellSet) -> Vec<CellSet> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &start in s.iter() {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = CellSet::new();
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            if !seen.insert(c) {
                continue;
            }
            comp.insert(c);
            for n in neighbours(c) {
                if s.contains(&n) && !seen.contains(&n) {
                    stack.push(n);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// True if some cell of `s` shares an edge with some cell of `t`.
pub fn adjacent(s: &CellSet, t: &CellSet) -> bool {
    s.iter()
        .any(|&c| neighbours(c).iter().any(|n| t.contains(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition2D {
        Partition2D::new(v.to_vec()).unwrap()
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|n| enumerate_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        assert_eq!(
            enumerate_partitions(3),
            vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]
        );
    }

    #[test]
    fn tuple_counts() {
        // coefficient of q^n in eta^{-6}
        let counts: Vec<usize> = (0..5).map(|n| partition_tuples(n, 6).len()).collect();
        assert_eq!(counts, vec![1, 6, 27, 98, 315]);
        assert_eq!(partition_tuples(0, 0).len(), 1);
        assert_eq!(partition_tuples(2, 0).len(), 0);
    }

    #[test]
    fn validation_and_display() {
        assert!(Partition2D::new(vec![1, 2]).is_err());
        assert!(Partition2D::new(vec![2, 0]).is_err());
        assert_eq!(p(&[2, 1]).to_string(), "[2,1]");
        assert_eq!(Partition2D::empty().to_string(), "[]");
        assert_eq!(serde_json::to_string(&p(&[2, 1])).unwrap(), "[2,1]");
        let back: Partition2D = serde_json::from_str("[3,1]").unwrap();
        assert_eq!(back, p(&[3, 1]));
        assert!(serde_json::from_str::<Partition2D>("[1,3]").is_err());
    }

    #[test]
    fn cells_roundtrip() {
        for n in 0..7 {
            for q in enumerate_partitions(n) {
                let cells = q.cells_at((3, -2));
                assert_eq!(cells.len(), n);
                assert_eq!(Partition2D::from_cells(&cells, (3, -2)), Some(q.clone()));
                assert_eq!(q.conjugate().conjugate(), q);
                assert_eq!(q.conjugate().size(), n);
            }
        }
        let bad: CellSet = [(0, 0), (1, 1)].into_iter().collect();
        assert_eq!(Partition2D::from_cells(&bad, (0, 0)), None);
    }

    #[test]
    fn components() {
        let s: CellSet = [(0, 0), (1, 0), (3, 0), (3, 1), (1, 1)]
            .into_iter()
            .collect();
        let comps = connected_components(&s);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].smallest(), Some((0, 0)));
        assert_eq!(comps[1].len(), 2);
        let diag: CellSet = [(0, 0), (1, 1)].into_iter().collect();
        assert_eq!(connected_components(&diag).len(), 2);
        assert!(adjacent(&comps[0], &[(2, 0)].into_iter().collect()));
        assert!(!adjacent(&comps[0], &[(2, 2)].into_iter().collect()));
    }
}
