//! Exact rationals, quadratic Hilbert polynomials and truncated q-series.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, Zero};
use serde::Serializer;

/// Arbitrary precision rational number, always reduced with positive denominator.
pub type Rational = BigRational;

/// Builds the rational `n/d`.
///
/// # Panics
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational as `p` or `p/q` (ASCII minus sign).
pub fn rational_string(r: &Rational) -> String {
    r.to_string()
}

/// Parses `p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Serializes a rational as its `p/q` string.
pub fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Returns the integer value of `r` if it has denominator one.
pub fn as_integer(r: &Rational) -> Option<BigInt> {
    if r.is_integer() {
        Some(r.to_integer())
    } else {
        None
    }
}

/// Quadratic polynomial `c2 m² + c1 m + c0`.
///
/// Ordering is lexicographic on `(c2, c1, c0)`, which is the order of the values
/// at every sufficiently large `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertPolynomial<T> {
    pub c2: T,
    pub c1: T,
    pub c0: T,
}

impl<T> HilbertPolynomial<T> {
    pub fn new(c2: T, c1: T, c0: T) -> Self {
        HilbertPolynomial { c2, c1, c0 }
    }
}

impl<T: Num + Clone> HilbertPolynomial<T> {
    pub fn eval(&self, m: &T) -> T {
        (self.c2.clone() * m.clone() + self.c1.clone()) * m.clone() + self.c0.clone()
    }

    pub fn add(&self, other: &Self) -> Self {
        HilbertPolynomial::new(
            self.c2.clone() + other.c2.clone(),
            self.c1.clone() + other.c1.clone(),
            self.c0.clone() + other.c0.clone(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        HilbertPolynomial::new(
            self.c2.clone() - other.c2.clone(),
            self.c1.clone() - other.c1.clone(),
            self.c0.clone() - other.c0.clone(),
        )
    }

    pub fn scale(&self, k: &T) -> Self {
        HilbertPolynomial::new(
            self.c2.clone() * k.clone(),
            self.c1.clone() * k.clone(),
            self.c0.clone() * k.clone(),
        )
    }

    /// Divides by the leading coefficient. Returns `None` for a zero leading term.
    pub fn reduced(&self) -> Option<Self> {
        if self.c2.is_zero() {
            return None;
        }
        Some(HilbertPolynomial::new(
            T::one(),
            self.c1.clone() / self.c2.clone(),
            self.c0.clone() / self.c2.clone(),
        ))
    }
}

impl<T: Ord> PartialOrd for HilbertPolynomial<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Ord> Ord for HilbertPolynomial<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c2
            .cmp(&other.c2)
            .then_with(|| self.c1.cmp(&other.c1))
            .then_with(|| self.c0.cmp(&other.c0))
    }
}

impl<T: fmt::Display + Signed> fmt::Display for HilbertPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [(&self.c2, "m^2"), (&self.c1, "m"), (&self.c0, "")];
        let mut first = true;
        for (c, var) in terms {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if var.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", var)?;
            } else {
                write!(f, "({}){}", abs, var)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Exact Hilbert polynomial with rational coefficients.
pub type RationalPoly = HilbertPolynomial<Rational>;

/// The polynomial `m² + 3m + 2 + b` of a rank-2 sheaf with `c1 = 0`.
pub fn rank2_hilbert(b: i64) -> RationalPoly {
    HilbertPolynomial::new(int(1), int(3), int(2 + b))
}

/// Asymptotic comparison of two Hilbert polynomials.
pub fn compare_polys<T: Ord>(p: &HilbertPolynomial<T>, q: &HilbertPolynomial<T>) -> Ordering {
    p.cmp(q)
}

/// Comparison of `p + sp·ε` with `q + sq·ε` for an infinitesimal `ε > 0`.
pub fn pair_compare<T: Ord>(
    p: &HilbertPolynomial<T>,
    sp: bool,
    q: &HilbertPolynomial<T>,
    sq: bool,
) -> Ordering {
    p.cmp(q).then_with(|| sp.cmp(&sq))
}

/// Formal power series in `q` truncated after `q^order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Num + Clone> PowerSeries<T> {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![T::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = T::one();
        s
    }

    /// Takes the given coefficients, padding with zeros or truncating to `order`.
    pub fn from_coeffs(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order + 1, T::zero());
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|i| self.coeffs[i].clone() + other.coeffs[i].clone())
            .collect();
        PowerSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|i| self.coeffs[i].clone() - other.coeffs[i].clone())
            .collect();
        PowerSeries { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        PowerSeries { coeffs: out }
    }

    /// Multiplicative inverse, or `None` if the constant term vanishes.
    ///
    /// Over a ring this is exact only when the constant term is a unit.
    pub fn inverse(&self) -> Option<Self> {
        let a0 = self.coeffs[0].clone();
        if a0.is_zero() {
            return None;
        }
        let n = self.order();
        let mut inv = vec![T::zero(); n + 1];
        inv[0] = T::one() / a0.clone();
        for k in 1..=n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * inv[k - j].clone();
            }
            inv[k] = T::zero() - acc / a0.clone();
        }
        Some(PowerSeries { coeffs: inv })
    }

    /// Multiplies in place by `(1 - q^k)`.
    fn mul_one_minus(&mut self, k: usize) {
        for i in (k..self.coeffs.len()).rev() {
            self.coeffs[i] = self.coeffs[i].clone() - self.coeffs[i - k].clone();
        }
    }

    /// Multiplies in place by `1 / (1 - q^k)`.
    fn div_one_minus(&mut self, k: usize) {
        for i in k..self.coeffs.len() {
            self.coeffs[i] = self.coeffs[i].clone() + self.coeffs[i - k].clone();
        }
    }
}

impl<T: fmt::Display + Signed + Clone + Num> fmt::Display for PowerSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            match i {
                0 => write!(f, "{}", abs)?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{}", abs)?;
                    }
                    if i == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{}", i)?;
                    }
                }
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

/// Exact rational q-series.
pub type RationalSeries = PowerSeries<Rational>;

/// `∏_{n≥1} (1 - q^n)^e` through `q^order`.
pub fn eta_power_series<T: Num + Clone>(e: i64, order: usize) -> PowerSeries<T> {
    let mut s = PowerSeries::one(order);
    for k in 1..=order {
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                s.mul_one_minus(k);
            } else {
                s.div_one_minus(k);
            }
        }
    }
    s
}

/// The two Lambert-type double sums over `m, n ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambertKind {
    /// `q^{mn} / (1 - q^{m+n-1})`
    A1,
    /// `q^{mn+m+n} / (1 - q^{m+n})`
    Mu,
}

/// The double sum of the given kind through `q^order`.
pub fn lambert_double_sum<T: Num + Clone>(kind: LambertKind, order: usize) -> PowerSeries<T> {
    let mut coeffs = vec![T::zero(); order + 1];
    for m in 1..=order.max(1) {
        for n in 1..=order.max(1) {
            let (lead, step) = match kind {
                LambertKind::A1 => (m * n, m + n - 1),
                LambertKind::Mu => (m * n + m + n, m + n),
            };
            let mut e = lead;
            while e <= order {
                coeffs[e] = coeffs[e].clone() + T::one();
                e += step;
            }
        }
    }
    PowerSeries { coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &PowerSeries<i64>) -> Vec<i64> {
        s.coeffs().to_vec()
    }

    #[test]
    fn eta_examples() {
        assert_eq!(ints(&eta_power_series(-3, 3)), vec![1, 3, 9, 22]);
        assert_eq!(ints(&eta_power_series(0, 5)), vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(ints(&eta_power_series(1, 5)), vec![1, -1, -1, 0, 0, 1]);
    }

    #[test]
    fn eta_against_direct_product() {
        // multiply out the finite product term by term with binomial expansions
        for e in [-4i64, -1, 2, 3] {
            let n = 12;
            let mut direct = PowerSeries::<i64>::one(n);
            for k in 1..=n {
                let mut factor = PowerSeries::<i64>::one(n);
                factor = PowerSeries::from_coeffs(
                    {
                        let mut c = vec![0i64; n + 1];
                        c[0] = 1;
                        c[k] = -1;
                        c
                    },
                    n,
                )
                .mul(&factor);
                let f = if e >= 0 {
                    let mut acc = PowerSeries::one(n);
                    for _ in 0..e {
                        acc = acc.mul(&factor);
                    }
                    acc
                } else {
                    let inv = factor.inverse().unwrap();
                    let mut acc = PowerSeries::one(n);
                    for _ in 0..(-e) {
                        acc = acc.mul(&inv);
                    }
                    acc
                };
                direct = direct.mul(&f);
            }
            assert_eq!(direct, eta_power_series(e, n), "e = {e}");
        }
    }

    #[test]
    fn lambert_examples() {
        assert_eq!(ints(&lambert_double_sum(LambertKind::Mu, 2)), vec![0, 0, 0]);
        assert_eq!(
            ints(&lambert_double_sum(LambertKind::Mu, 3)),
            vec![0, 0, 0, 1]
        );
        assert_eq!(ints(&lambert_double_sum(LambertKind::A1, 1)), vec![0, 1]);
    }

    #[test]
    fn lambert_order_zero() {
        assert_eq!(ints(&lambert_double_sum(LambertKind::A1, 0)), vec![0]);
        assert_eq!(ints(&lambert_double_sum(LambertKind::Mu, 0)), vec![0]);
    }

    #[test]
    fn poly_compare_examples() {
        let a = HilbertPolynomial::new(rat(1, 2), int(1), int(0));
        assert_eq!(compare_polys(&a, &a.clone()), Ordering::Equal);
        let b = HilbertPolynomial::new(rat(1, 2), rat(3, 2), int(0));
        let c = HilbertPolynomial::new(rat(1, 2), rat(3, 2), int(1));
        assert_eq!(compare_polys(&b, &c), Ordering::Less);
        // rank-1 u=v=w=0 with one box against P/2 for b=-2
        let l = HilbertPolynomial::new(rat(1, 2), rat(3, 2), int(0));
        let half = rank2_hilbert(-2).scale(&rat(1, 2));
        assert_eq!(compare_polys(&l, &half), Ordering::Equal);
        let l2 = HilbertPolynomial::new(rat(1, 2), rat(3, 2), int(-1));
        assert_eq!(compare_polys(&l2, &half), Ordering::Less);
        for m in 10..=12 {
            assert!(l2.eval(&int(m)) < half.eval(&int(m)));
        }
    }

    #[test]
    fn pair_compare_examples() {
        let p = rank2_hilbert(-2);
        assert_eq!(pair_compare(&p, true, &p, false), Ordering::Greater);
        assert_eq!(pair_compare(&p, true, &p, true), Ordering::Equal);
        let small = rank2_hilbert(-4);
        assert_eq!(pair_compare(&small, true, &p, false), Ordering::Less);
    }

    #[test]
    fn inverse_roundtrip() {
        let s: RationalSeries = eta_power_series(-6, 15);
        let inv = s.inverse().unwrap();
        assert_eq!(s.mul(&inv), PowerSeries::one(15));
        assert!(PowerSeries::<Rational>::zero(3).inverse().is_none());
    }

    #[test]
    fn display_forms() {
        let p = rank2_hilbert(-2);
        assert_eq!(p.to_string(), "m^2 + (3)m");
        let s: PowerSeries<i64> = eta_power_series(1, 5);
        assert_eq!(s.to_string(), "1 - q - q^2 + q^5 + O(q^6)");
        assert_eq!(parse_rational("-639/4"), Some(rat(-639, 4)));
        assert_eq!(rational_string(&rat(-639, 4)), "-639/4");
    }
}
