//! Hilbert-series machinery: bigraded rational functions with denominators of
//! the form prod (1 - t^a q^b)^m, and univariate rational series in t.

use crate::num::*;
use num::{One, Zero};
use std::collections::BTreeMap;

/// A bigraded rational function N(t, q) / prod (1 - t^a q^b)^mult with
/// integer numerator coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedSeries {
    /// (t-exponent, q-exponent) -> coefficient.
    pub numerator: BTreeMap<(i64, i64), Int>,
    /// ((a, b), multiplicity) denominator factors (1 - t^a q^b)^mult, a >= 0.
    pub denominator: Vec<((i64, i64), usize)>,
}

impl BigradedSeries {
    pub fn constant(c: Int) -> Self {
        let mut numerator = BTreeMap::new();
        if !c.is_zero() {
            numerator.insert((0, 0), c);
        }
        BigradedSeries { numerator, denominator: Vec::new() }
    }

    /// c / (1 - t^a q^b)^mult.
    pub fn geometric(c: Int, a: i64, b: i64, mult: usize) -> Self {
        let mut s = BigradedSeries::constant(c);
        if mult > 0 {
            s.denominator.push(((a, b), mult));
        }
        s
    }

    /// Expansion coefficients up to total t-degree `n` (inclusive): map from
    /// (t-degree, q-degree) to coefficient.
    pub fn expand(&self, n: i64) -> BTreeMap<(i64, i64), Rat> {
        let mut coeffs: BTreeMap<(i64, i64), Rat> = self
            .numerator
            .iter()
            .filter(|((a, _), _)| *a <= n)
            .map(|(&k, v)| (k, rat_of(v)))
            .collect();
        for &((a, b), mult) in &self.denominator {
            assert!(a > 0, "denominator factor must have positive t-degree");
            for _ in 0..mult {
                // Multiply by 1/(1 - t^a q^b): prefix sums with stride (a, b).
                let mut next: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
                // Process keys in increasing t-degree.
                let keys: Vec<(i64, i64)> = coeffs.keys().copied().collect();
                for k in keys {
                    let v = coeffs[&k].clone();
                    let e = next.entry(k).or_insert_with(Rat::zero);
                    *e += v;
                }
                // Propagate: c[t+a, q+b] += c[t, q] iteratively.
                let mut t_deg = 0;
                while t_deg <= n {
                    let level: Vec<((i64, i64), Rat)> = next
                        .iter()
                        .filter(|((t, _), _)| *t == t_deg)
                        .map(|(&k, v)| (k, v.clone()))
                        .collect();
                    for ((t, q), v) in level {
                        if t + a <= n && !v.is_zero() {
                            let e = next.entry((t + a, q + b)).or_insert_with(Rat::zero);
                            *e += v;
                        }
                    }
                    t_deg += 1;
                }
                coeffs = next;
            }
        }
        coeffs.retain(|_, v| !v.is_zero());
        coeffs
    }

    pub fn to_display(&self) -> String {
        let num: Vec<String> = self
            .numerator
            .iter()
            .map(|((a, b), c)| match (a, b) {
                (0, 0) => c.to_string(),
                _ => format!("{c}*t^{a}*q^{b}"),
            })
            .collect();
        let num = if num.is_empty() { "0".to_string() } else { num.join(" + ") };
        if self.denominator.is_empty() {
            num
        } else {
            let den: Vec<String> = self
                .denominator
                .iter()
                .map(|((a, b), m)| format!("(1 - t^{a}*q^{b})^{m}"))
                .collect();
            format!("({num}) / {}", den.join(" "))
        }
    }
}

/// Univariate rational series: numerator polynomial over denominator factors
/// (1 - t^a)^mult.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    /// Coefficient of t^k at index k.
    pub numerator: Vec<Rat>,
    /// (a, multiplicity) denominator factors (1 - t^a)^mult.
    pub denominator: Vec<(usize, usize)>,
}

impl RationalSeries {
    pub fn constant(c: Rat) -> Self {
        RationalSeries { numerator: vec![c], denominator: Vec::new() }
    }

    pub fn polynomial(coeffs: Vec<Rat>) -> Self {
        RationalSeries { numerator: coeffs, denominator: Vec::new() }
    }

    /// Multiply by another numerator polynomial.
    pub fn mul_poly(&self, poly: &[Rat]) -> RationalSeries {
        let mut numerator = vec![Rat::zero(); self.numerator.len() + poly.len() - 1];
        for (i, a) in self.numerator.iter().enumerate() {
            for (j, b) in poly.iter().enumerate() {
                numerator[i + j] += a * b;
            }
        }
        RationalSeries { numerator, denominator: self.denominator.clone() }
    }

    pub fn div_factor(&self, a: usize, mult: usize) -> RationalSeries {
        let mut s = self.clone();
        if mult > 0 {
            s.denominator.push((a, mult));
        }
        s
    }

    /// First n+1 expansion coefficients.
    pub fn expand(&self, n: usize) -> Vec<Rat> {
        let mut c = vec![Rat::zero(); n + 1];
        for (k, v) in self.numerator.iter().enumerate() {
            if k <= n {
                c[k] = v.clone();
            }
        }
        for &(a, mult) in &self.denominator {
            for _ in 0..mult {
                for k in a..=n {
                    let prev = c[k - a].clone();
                    c[k] += prev;
                }
            }
        }
        c
    }

    pub fn to_display(&self) -> String {
        let terms: Vec<String> = self
            .numerator
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{k}"),
            })
            .collect();
        let num = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        if self.denominator.is_empty() {
            num
        } else {
            let den: Vec<String> =
                self.denominator.iter().map(|(a, m)| format!("(1 - t^{a})^{m}")).collect();
            format!("({num}) / {}", den.join(" "))
        }
    }
}

/// Binomial expansion of (1 + t)^r as coefficients.
pub fn one_plus_t_pow(r: usize) -> Vec<Rat> {
    let mut c = vec![Rat::one()];
    for _ in 0..r {
        let mut next = vec![Rat::zero(); c.len() + 1];
        for (i, v) in c.iter().enumerate() {
            next[i] += v;
            next[i + 1] += v;
        }
        c = next;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_expansion() {
        // 2 / (1 - t^2 q^2): coefficients 2 at (0,0), (2,2), (4,4)...
        let s = BigradedSeries::geometric(int(2), 2, 2, 1);
        let e = s.expand(6);
        assert_eq!(e.get(&(0, 0)), Some(&rat(2)));
        assert_eq!(e.get(&(2, 2)), Some(&rat(2)));
        assert_eq!(e.get(&(4, 4)), Some(&rat(2)));
        assert_eq!(e.get(&(2, 0)), None);
    }

    #[test]
    fn squared_denominator_matches_brute_force() {
        // 6 / (1 - t^2 q^2)^2: coefficient at (2k, 2k) is 6 (k + 1).
        let s = BigradedSeries::geometric(int(6), 2, 2, 2);
        let e = s.expand(8);
        for k in 0..=4i64 {
            assert_eq!(e.get(&(2 * k, 2 * k)), Some(&rat(6 * (k + 1))));
        }
    }

    #[test]
    fn univariate_expansion() {
        // (1 + t) / (1 - t^2) = 1 / (1 - t).
        let s = RationalSeries::polynomial(vec![rat(1), rat(1)]).div_factor(2, 1);
        assert_eq!(s.expand(5), vec![rat(1); 6]);
        // 2 / (1 - t): all coefficients 2.
        let s2 = RationalSeries::constant(rat(2)).div_factor(1, 1);
        assert_eq!(s2.expand(19), vec![rat(2); 20]);
        // 6 (1+t)^2 / (1 - t^2)^2 = 6 / (1-t)^2: coefficients 6(k+1).
        let s3 = RationalSeries::polynomial(one_plus_t_pow(2))
            .mul_poly(&[rat(6)])
            .div_factor(2, 2);
        let got = s3.expand(5);
        let want: Vec<Rat> = (0..=5).map(|k| rat(6 * (k + 1))).collect();
        assert_eq!(got, want);
    }
}
