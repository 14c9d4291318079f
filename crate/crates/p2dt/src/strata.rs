//! Coincidence patterns of the direction variables and the Euler
//! characteristics c^ss, c^st of the resulting strata.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::exactmath::{int, Rational};
use crate::sigma::{DeltaFamilyData, Direction, SigmaFamily};
use crate::{Error, Result};

/// Set partition of the variables `p_1..p_c, s_1..s_k`.
///
/// p-classes always occupy their own blocks `0..c`; each free variable
/// either joins an existing block or opens a new one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Pattern {
    classes: usize,
    free: Vec<usize>,
    blocks: usize,
}

impl Pattern {
    /// Pattern from the block of each free variable; blocks must be in restricted-growth form.
    pub fn new(classes: usize, free: Vec<usize>) -> Result<Self> {
        let mut blocks = classes;
        for &f in &free {
            if f > blocks {
                return Err(Error::InvalidData(format!(
                    "free blocks {free:?} skip a block"
                )));
            }
            if f == blocks {
                blocks += 1;
            }
        }
        Ok(Pattern {
            classes,
            free,
            blocks,
        })
    }

    pub fn block_of_class(&self, c: usize) -> usize {
        debug_assert!(c < self.classes);
        c
    }

    pub fn block_of_free(&self, k: usize) -> usize {
        self.free[k]
    }

    /// Number of distinct direction values `d`.
    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    pub fn free_blocks(&self) -> &[usize] {
        &self.free
    }
}

/// All patterns for `classes` p-classes and `k` free variables.
pub fn enumerate_patterns(classes: usize, k: usize) -> Vec<Pattern> {
    fn rec(classes: usize, k: usize, blocks: usize, cur: &mut Vec<usize>, out: &mut Vec<Pattern>) {
        if cur.len() == k {
            out.push(Pattern {
                classes,
                free: cur.clone(),
                blocks,
            });
            return;
        }
        for b in 0..=blocks {
            cur.push(b);
            rec(classes, k, blocks.max(b + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(classes, k, classes, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StratumTag {
    Unstable,
    Decomposable,
    StrictlySsIndecomposable,
    Stable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumClass {
    pub tag: StratumTag,
    /// Blocks whose destabilizer has polynomial exactly `P/2`.
    pub destabilizers: Vec<usize>,
    pub d: usize,
}

/// Sign of `P_L − P/2` in the asymptotic order, from the destabilizer shape.
fn against_half(s: i64, defi: i64, b: i64) -> std::cmp::Ordering {
    // P_L = (m−s+1)(m−s+2)/2 − defi, P/2 = (m² + 3m + 2 + b)/2
    0.cmp(&s).then((-2 * defi).cmp(&b))
}

pub fn classify_pattern(f: &SigmaFamily, p: &Pattern) -> Result<StratumClass> {
    use std::cmp::Ordering::*;
    let b = f.data().b();
    let d = p.block_count();
    let mut destabilizers = Vec::new();
    for x in 0..d {
        let (s, defi) = f.destabilizer_shape(p, Direction::Block(x));
        match against_half(s, defi, b) {
            Greater => {
                return Ok(StratumClass {
                    tag: StratumTag::Unstable,
                    destabilizers: vec![],
                    d,
                })
            }
            Equal => destabilizers.push(x),
            Less => {}
        }
    }
    let (s, defi) = f.destabilizer_shape(p, Direction::Generic);
    let generic = against_half(s, defi, b);
    if generic == Greater {
        return Ok(StratumClass {
            tag: StratumTag::Unstable,
            destabilizers: vec![],
            d,
        });
    }
    if d <= 2 {
        return Ok(StratumClass {
            tag: StratumTag::Decomposable,
            destabilizers,
            d,
        });
    }
    if generic == Equal {
        return Err(Error::GenericDestabilizer {
            data: f.data().to_canonical_json(),
            d,
        });
    }
    let tag = if destabilizers.is_empty() {
        StratumTag::Stable
    } else {
        StratumTag::StrictlySsIndecomposable
    };
    Ok(StratumClass {
        tag,
        destabilizers,
        d,
    })
}

/// Euler characteristic of `d` distinct ordered points on P¹ modulo PGL₂.
pub fn configuration_chi(d: usize) -> Result<i64> {
    if d < 3 {
        return Err(Error::TooFewPoints(d));
    }
    Ok((0..d as i64 - 3).map(|i| -1 - i).product())
}

/// `(c_ss, c_st)` summed over all patterns of the family.
pub fn c_values_of_family(f: &SigmaFamily) -> Result<(i64, i64)> {
    let (mut css, mut cst) = (0, 0);
    for p in enumerate_patterns(f.class_count(), f.free_component_count()) {
        let cl = classify_pattern(f, &p)?;
        match cl.tag {
            StratumTag::StrictlySsIndecomposable => {
                css += configuration_chi(cl.d)? * (2 - cl.destabilizers.len() as i64)
            }
            StratumTag::Stable => cst += configuration_chi(cl.d)?,
            _ => {}
        }
    }
    Ok((css, cst))
}

pub fn c_values(x: &DeltaFamilyData) -> Result<(i64, i64)> {
    c_values_of_family(&SigmaFamily::new(x)?)
}

fn walk_injective(left: usize, points: usize, used: &mut [bool]) -> u64 {
    if left == 0 {
        return 1;
    }
    let mut n = 0;
    for i in 0..points {
        if !used[i] {
            used[i] = true;
            n += walk_injective(left - 1, points, used);
            used[i] = false;
        }
    }
    n
}

/// Number of injective `d`-tuples of points of P¹(F_q), counted by walking them.
pub fn fq_injective_count(d: usize, q: u64) -> u64 {
    let points = q as usize + 1;
    walk_injective(d, points, &mut vec![false; points])
}

/// Number of PGL₂(F_q)-orbits of injective `d`-tuples, `d ≥ 3`.
///
/// The action is free and sharply 3-transitive, so orbits are counted by the
/// tuples starting `(0, 1, ∞)`; [`fq_injective_count`] divided by `q³ − q`
/// gives the same value.
pub fn fq_orbit_count(d: usize, q: u64) -> Rational {
    let points = q as usize + 1;
    let mut used = vec![false; points];
    // points 0, 1, ∞ are the first three labels
    used[..3].iter_mut().for_each(|u| *u = true);
    int(walk_injective(d - 3, points, &mut used) as i64)
}

/// Lagrange interpolation through `(x_i, y_i)`, evaluated at `at`.
pub fn interpolate(points: &[(Rational, Rational)], at: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut term = yi.clone();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                term = term * (at - xj) / (xi - xj);
            }
        }
        acc += term;
    }
    acc
}

/// Finite-field recount of the χ of a pattern's configuration stratum:
/// orbit counts at each `q` are interpolated as a polynomial in `q` and evaluated at `q = 1`.
pub fn fq_stratum_oracle(p: &Pattern, qs: &[u64]) -> Result<Rational> {
    let d = p.block_count();
    if d < 3 {
        return Err(Error::TooFewPoints(d));
    }
    // the count is a polynomial of degree d − 3
    let needed = d - 2;
    if qs.len() < needed {
        return Err(Error::InsufficientSamples {
            needed,
            got: qs.len(),
        });
    }
    let pts: Vec<(Rational, Rational)> = qs
        .iter()
        .map(|&q| (int(q as i64), fq_orbit_count(d, q)))
        .collect();
    Ok(interpolate(&pts, &Rational::one()))
}

/// The `d − 2` smallest prime powers `q ≥ d + 2`.
pub fn default_fields(d: usize) -> Vec<u64> {
    let is_prime_power = |n: u64| {
        let p = (2..=n).find(|p| n.is_multiple_of(*p)).unwrap_or(n);
        let mut m = n;
        while m.is_multiple_of(p) {
            m /= p;
        }
        n > 1 && m == 1
    };
    (d as u64 + 2..)
        .filter(|&q| is_prime_power(q))
        .take(d.saturating_sub(2))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition2D;

    fn p(v: &[u32]) -> Partition2D {
        Partition2D::new(v.to_vec()).unwrap()
    }

    fn e() -> Partition2D {
        Partition2D::empty()
    }

    fn row(a: i64, d: [i64; 3], pis: [Partition2D; 6], ee: Vec<(u8, u8)>) -> SigmaFamily {
        SigmaFamily::new(&DeltaFamilyData::new(a, d, pis, ee).unwrap()).unwrap()
    }

    #[test]
    fn pattern_counts_are_bell_like() {
        // zero p-classes: Bell numbers
        let bell: Vec<usize> = (0..6).map(|k| enumerate_patterns(0, k).len()).collect();
        assert_eq!(bell, vec![1, 1, 2, 5, 15, 52]);
        // one free variable with three classes: join one of three or stay alone
        assert_eq!(enumerate_patterns(3, 1).len(), 4);
        assert!(Pattern::new(2, vec![3]).is_err());
        assert_eq!(Pattern::new(2, vec![2, 0, 3]).unwrap().block_count(), 4);
    }

    #[test]
    fn chi_values() {
        assert_eq!(configuration_chi(3).unwrap(), 1);
        assert_eq!(configuration_chi(4).unwrap(), -1);
        assert_eq!(configuration_chi(5).unwrap(), 2);
        assert_eq!(configuration_chi(6).unwrap(), -6);
        assert!(configuration_chi(2).is_err());
    }

    #[test]
    fn fq_counts() {
        assert_eq!(fq_orbit_count(3, 5), int(1));
        assert_eq!(fq_orbit_count(4, 5), int(3));
        for (d, q) in [(3, 4), (4, 5), (5, 7), (6, 8)] {
            let full = Rational::from_integer(fq_injective_count(d, q).into());
            let q = q as i64;
            assert_eq!(full / int(q * q * q - q), fq_orbit_count(d, q as u64));
        }
        let four = Pattern::new(3, vec![3]).unwrap();
        assert_eq!(fq_stratum_oracle(&four, &[5, 7, 8]).unwrap(), int(-1));
        let five = Pattern::new(3, vec![3, 4]).unwrap();
        assert_eq!(fq_stratum_oracle(&five, &[7, 8, 9, 11]).unwrap(), int(2));
        assert!(fq_stratum_oracle(&five, &[7, 8]).is_err());
        assert_eq!(default_fields(5), vec![7, 8, 9]);
        assert_eq!(default_fields(6), vec![8, 9, 11, 13]);
    }

    #[test]
    fn walkthrough_row1() {
        // Δ = (1,1,0): p-classes 0 (ray U) and 1 (ray V); s_1, s_2 free
        let f = row(
            -1,
            [1, 1, 0],
            [e(), e(), p(&[1]), p(&[1]), p(&[1]), p(&[1])],
            vec![],
        );
        assert_eq!(f.free_component_count(), 2);
        let mut saw_ss = false;
        for pat in enumerate_patterns(2, 2) {
            let cl = classify_pattern(&f, &pat).unwrap();
            if pat.block_count() <= 2 {
                assert!(matches!(
                    cl.tag,
                    StratumTag::Decomposable | StratumTag::Unstable
                ));
            }
            if cl.tag == StratumTag::StrictlySsIndecomposable {
                assert_eq!(cl.destabilizers.len(), 1);
                saw_ss = true;
            }
        }
        assert!(saw_ss);
        assert_eq!(c_values_of_family(&f).unwrap(), (4, 0));
    }

    #[test]
    fn walkthrough_rows_34_68_7() {
        let r34 = row(
            -1,
            [1, 1, 0],
            [e(), e(), p(&[1]), p(&[3]), e(), e()],
            vec![],
        );
        assert_eq!(c_values_of_family(&r34).unwrap(), (0, 1));
        let r68 = row(
            -2,
            [2, 1, 1],
            [p(&[2]), p(&[1, 1]), e(), e(), e(), e()],
            vec![(2, 3)],
        );
        assert_eq!(c_values_of_family(&r68).unwrap(), (1, 0));
        let r7 = row(
            -1,
            [1, 1, 0],
            [e(), e(), p(&[1]), p(&[2]), e(), p(&[1])],
            vec![],
        );
        assert_eq!(c_values_of_family(&r7).unwrap(), (1, 0));
    }

    #[test]
    fn table1_row() {
        // b = −2, Δ = (1,1,0) with one box in each chart-2 partition
        let f = row(
            -1,
            [1, 1, 0],
            [e(), e(), p(&[1]), p(&[1]), e(), e()],
            vec![],
        );
        assert_eq!(f.data().b(), -2);
        assert_eq!(c_values_of_family(&f).unwrap(), (1, 0));
    }

    #[test]
    fn strict_triangle_is_stable() {
        let f = row(-3, [2, 2, 2], [p(&[1]), e(), e(), e(), e(), e()], vec![]);
        assert_eq!(
            c_values_of_family(&f).unwrap(),
            (0, 1 << f.free_component_count())
        );
    }
}
