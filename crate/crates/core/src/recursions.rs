//! Kontsevich's recursion for rational plane curves and the Caporaso–Harris
//! recursion for generalized Severi degrees, in exact big-integer arithmetic.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::binomial;

/// Number of rational plane curves of degree `d` through `3d - 1` general points.
pub fn kontsevich(d: u32) -> Result<BigInt> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    Ok(kontsevich_table(d).pop().expect("table has d entries"))
}

/// `N(1), ..., N(max_d)`.
pub fn kontsevich_table(max_d: u32) -> Vec<BigInt> {
    let mut n: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    for d in 2..=max_d as i64 {
        let mut total = BigInt::zero();
        for k in 1..d {
            let l = d - k;
            let bracket = BigInt::from(l) * binomial(3 * d - 4, 3 * k - 2)
                - BigInt::from(k) * binomial(3 * d - 4, 3 * k - 1);
            total += &n[k as usize] * &n[l as usize] * BigInt::from(k * k * l) * bracket;
        }
        n.push(total);
    }
    n.into_iter().skip(1).take(max_d as usize).collect()
}

/// Sequence of non-negative integers indexed from 1, stored without
/// trailing zeros so that equal sequences compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Sequence(Vec<u64>);

impl Sequence {
    pub fn new(mut entries: Vec<u64>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        Self(entries)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// The sequence with a single 1 at position `i`.
    pub fn unit(i: usize) -> Self {
        let mut v = vec![0; i];
        v[i - 1] = 1;
        Self(v)
    }

    /// Entry at 1-based position `i`.
    pub fn get(&self, i: usize) -> u64 {
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    /// Largest index with a nonzero entry.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|ε| = Σ ε_i`.
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// The linear functional `Iε = Σ i ε_i`.
    pub fn weighted_total(&self) -> u64 {
        self.0.iter().enumerate().map(|(i, &e)| (i as u64 + 1) * e).sum()
    }

    /// The multiplicative `I^ε = Π i^{ε_i}`.
    pub fn power_product(&self) -> BigInt {
        self.0
            .iter()
            .enumerate()
            .fold(BigInt::one(), |acc, (i, &e)| acc * BigInt::from(i + 1).pow(e as u32))
    }

    fn add_at(&self, i: usize, delta: i64) -> Self {
        let mut v = self.0.clone();
        if v.len() < i {
            v.resize(i, 0);
        }
        v[i - 1] = (v[i - 1] as i64 + delta) as u64;
        Self::new(v)
    }

    fn plus(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        Self::new((1..=n).map(|i| self.get(i) + other.get(i)).collect())
    }

    /// `C(self, sub) = Π C(self_i, sub_i)`.
    fn choose(&self, sub: &Self) -> BigInt {
        (1..=self.len().max(sub.len())).fold(BigInt::one(), |acc, i| {
            acc * binomial(self.get(i) as i64, sub.get(i) as i64)
        })
    }

    /// All sequences `ε'` with `0 <= ε'_i <= ε_i`.
    fn sub_sequences(&self) -> Vec<Sequence> {
        let mut out = vec![Vec::new()];
        for &e in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u64>| {
                    (0..=e).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Sequence::new).collect()
    }

    /// All sequences `γ` with `Iγ = m`.
    fn with_weighted_total(m: u64) -> Vec<Sequence> {
        fn rec(m: u64, max_part: u64, acc: &mut Vec<u64>, out: &mut Vec<Sequence>) {
            if m == 0 {
                out.push(Sequence::new(acc.clone()));
                return;
            }
            for part in (1..=max_part.min(m)).rev() {
                if acc.len() < part as usize {
                    acc.resize(part as usize, 0);
                }
                acc[part as usize - 1] += 1;
                rec(m - part, part, acc, out);
                acc[part as usize - 1] -= 1;
            }
        }
        let mut out = Vec::new();
        rec(m, m, &mut Vec::new(), &mut out);
        out
    }
}

/// Tangency profile `(α, β)` for the Caporaso–Harris recursion.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TangencyProfile {
    pub alpha: Sequence,
    pub beta: Sequence,
}

impl TangencyProfile {
    pub fn new(alpha: Vec<u64>, beta: Vec<u64>) -> Self {
        Self { alpha: Sequence::new(alpha), beta: Sequence::new(beta) }
    }

    /// The plain profile `α = 0, β = (d)`: transverse to the line at moving points.
    pub fn plain(d: u32) -> Self {
        Self::new(vec![], vec![d as u64])
    }

    pub fn weighted_total(&self) -> u64 {
        self.alpha.weighted_total() + self.beta.weighted_total()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SeveriDegreeKey {
    pub d: u32,
    pub delta: i64,
    pub profile: TangencyProfile,
}

/// Number of point conditions for `N^{d,δ}(α,β)`:
/// `3d + g - 1 - Iα - (Iβ - |β|)` with `g = (d-1)(d-2)/2 - δ`.
pub fn point_conditions(key: &SeveriDegreeKey) -> i64 {
    let d = key.d as i64;
    let g = (d - 1) * (d - 2) / 2 - key.delta;
    let p = &key.profile;
    3 * d + g - 1 - p.alpha.weighted_total() as i64
        - (p.beta.weighted_total() as i64 - p.beta.total() as i64)
}

/// Memo table for the Caporaso–Harris recursion, safe to share between
/// threads.
#[derive(Default)]
pub struct CaporasoHarris {
    memo: Mutex<HashMap<SeveriDegreeKey, BigInt>>,
}

impl CaporasoHarris {
    pub fn new() -> Self {
        Self::default()
    }

    /// `N^{d,δ}(α,β)`.
    pub fn evaluate(&self, key: &SeveriDegreeKey) -> Result<BigInt> {
        validate(key)?;
        Ok(self.eval(key, true))
    }

    /// Same value computed without reading or writing the memo table.
    pub fn evaluate_uncached(key: &SeveriDegreeKey) -> Result<BigInt> {
        validate(key)?;
        Ok(Self::new().eval(key, false))
    }

    pub fn memo_len(&self) -> usize {
        self.memo.lock().expect("memo lock").len()
    }

    fn eval(&self, key: &SeveriDegreeKey, cache: bool) -> BigInt {
        let d = key.d as i64;
        if key.delta < 0 || key.delta > d * (d - 1) / 2 {
            return BigInt::zero();
        }
        if d == 1 {
            return if key.delta == 0 { BigInt::one() } else { BigInt::zero() };
        }
        if cache {
            if let Some(v) = self.memo.lock().expect("memo lock").get(key) {
                return v.clone();
            }
        }
        let value = self.expand(key, cache);
        if cache {
            self.memo
                .lock()
                .expect("memo lock")
                .entry(key.clone())
                .or_insert(value.clone());
        }
        value
    }

    fn expand(&self, key: &SeveriDegreeKey, cache: bool) -> BigInt {
        let TangencyProfile { alpha, beta } = &key.profile;
        let mut total = BigInt::zero();
        // Moving a point of tangency order k onto the fixed line.
        for k in 1..=beta.len() {
            if beta.get(k) > 0 {
                let next = SeveriDegreeKey {
                    d: key.d,
                    delta: key.delta,
                    profile: TangencyProfile {
                        alpha: alpha.add_at(k, 1),
                        beta: beta.add_at(k, -1),
                    },
                };
                total += BigInt::from(k) * self.eval(&next, cache);
            }
        }
        // Curves splitting off the line L.
        let d = key.d as i64;
        let ia = alpha.weighted_total() as i64;
        for alpha2 in alpha.sub_sequences() {
            let m = ia - alpha2.weighted_total() as i64 - 1;
            if m < 0 {
                continue;
            }
            let c_alpha = alpha.choose(&alpha2);
            for gamma in Sequence::with_weighted_total(m as u64) {
                let delta2 = key.delta - (d - 1) + gamma.total() as i64;
                if delta2 < 0 {
                    continue;
                }
                let beta2 = beta.plus(&gamma);
                let sub = SeveriDegreeKey {
                    d: key.d - 1,
                    delta: delta2,
                    profile: TangencyProfile { alpha: alpha2.clone(), beta: beta2.clone() },
                };
                let n = self.eval(&sub, cache);
                if n.is_zero() {
                    continue;
                }
                total += gamma.power_product() * &c_alpha * beta2.choose(beta) * n;
            }
        }
        total
    }
}

fn validate(key: &SeveriDegreeKey) -> Result<()> {
    if key.d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    if key.delta < 0 {
        return Err(Error::InvalidArgument(format!("delta must be non-negative, got {}", key.delta)));
    }
    let got = key.profile.weighted_total();
    if got != key.d as u64 {
        return Err(Error::InconsistentProfile { got, expected: key.d as u64 });
    }
    Ok(())
}

fn shared() -> &'static CaporasoHarris {
    static TABLE: OnceLock<CaporasoHarris> = OnceLock::new();
    TABLE.get_or_init(CaporasoHarris::new)
}

/// `N^{d,δ}(α,β)` using a process-wide memo table.
pub fn caporaso_harris(key: &SeveriDegreeKey) -> Result<BigInt> {
    shared().evaluate(key)
}

/// Degree of the Severi variety of `δ`-nodal plane curves of degree `d`.
pub fn severi_degree(d: u32, delta: i64) -> Result<BigInt> {
    caporaso_harris(&SeveriDegreeKey { d, delta, profile: TangencyProfile::plain(d) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeveriRow {
    pub d: u32,
    pub delta: i64,
    pub value: BigInt,
}

/// `N^{d,δ}` for `1 <= d <= max_d` and every `δ` up to `d(d-1)/2`.
pub fn severi_table(max_d: u32) -> Result<Vec<SeveriRow>> {
    let mut rows = Vec::new();
    for d in 1..=max_d {
        let top = d as i64 * (d as i64 - 1) / 2;
        for delta in 0..=top {
            rows.push(SeveriRow { d, delta, value: severi_degree(d, delta)? });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn kontsevich_values() {
        assert_eq!(kontsevich_table(5), vec![n(1), n(1), n(12), n(620), n(87304)]);
        assert!(kontsevich(0).is_err());
        assert_eq!(kontsevich(6).unwrap(), n(26312976));
    }

    #[test]
    fn base_and_small_cases() {
        let line = |alpha: Vec<u64>, beta: Vec<u64>| SeveriDegreeKey {
            d: 1,
            delta: 0,
            profile: TangencyProfile::new(alpha, beta),
        };
        assert_eq!(caporaso_harris(&line(vec![], vec![1])).unwrap(), n(1));
        assert_eq!(caporaso_harris(&line(vec![1], vec![])).unwrap(), n(1));
        assert_eq!(severi_degree(2, 1).unwrap(), n(3));
        assert_eq!(severi_degree(3, 1).unwrap(), n(12));
        assert_eq!(severi_degree(4, 1).unwrap(), n(27));
        assert_eq!(severi_degree(4, 3).unwrap(), n(675));
    }

    #[test]
    fn discriminant_and_fixed_points() {
        for d in 2..=6u32 {
            let e = d as i64 - 1;
            assert_eq!(severi_degree(d, 1).unwrap(), n(3 * e * e), "d = {d}");
        }
        for d in 1..=6 {
            assert_eq!(severi_degree(d, 0).unwrap(), n(1));
        }
    }

    #[test]
    fn unions_of_lines() {
        // A curve with d(d-1)/2 nodes is a union of d lines through 2d points:
        // the number of perfect matchings of 2d points.
        for d in 1..=5u32 {
            let mut matchings = n(1);
            for k in (1..2 * d as i64).step_by(2) {
                matchings *= n(k);
            }
            let top = d as i64 * (d as i64 - 1) / 2;
            assert_eq!(severi_degree(d, top).unwrap(), matchings, "d = {d}");
            assert_eq!(severi_degree(d, top + 1).unwrap(), n(0));
        }
    }

    #[test]
    fn errors() {
        let bad = SeveriDegreeKey { d: 3, delta: 0, profile: TangencyProfile::new(vec![], vec![2]) };
        assert_eq!(
            caporaso_harris(&bad),
            Err(Error::InconsistentProfile { got: 2, expected: 3 })
        );
        let neg = SeveriDegreeKey { d: 2, delta: -1, profile: TangencyProfile::plain(2) };
        assert!(caporaso_harris(&neg).is_err());
    }

    #[test]
    fn memoized_matches_uncached() {
        let table = CaporasoHarris::new();
        for d in 1..=4u32 {
            for delta in 0..=(d as i64 * (d as i64 - 1) / 2) {
                for beta1 in 0..=d as u64 {
                    let key = SeveriDegreeKey {
                        d,
                        delta,
                        profile: TangencyProfile::new(vec![d as u64 - beta1], vec![beta1]),
                    };
                    assert_eq!(
                        table.evaluate(&key).unwrap(),
                        CaporasoHarris::evaluate_uncached(&key).unwrap()
                    );
                }
            }
        }
        assert!(table.memo_len() > 0);
    }

    #[test]
    fn sequence_canonical_form() {
        assert_eq!(Sequence::new(vec![1, 0, 0]), Sequence::new(vec![1]));
        assert_eq!(Sequence::new(vec![0, 2]).weighted_total(), 4);
        assert_eq!(Sequence::new(vec![0, 2]).power_product(), n(4));
        assert_eq!(Sequence::with_weighted_total(4).len(), 5);
        let key = SeveriDegreeKey { d: 2, delta: 1, profile: TangencyProfile::plain(2) };
        assert_eq!(point_conditions(&key), 4);
    }
}
