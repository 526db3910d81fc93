//! Closed-form anti-Ramsey values and the parameter regions they cover.
//!
//! Everything here is exact: half-integer expressions are evaluated by
//! doubling and halving integers, rational bounds are [`BigRational`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Halves a value that is even for every integer input.
fn exact_half(doubled: BigInt, what: &str) -> BigInt {
    let (q, r) = doubled.div_rem(&int(2));
    assert!(r.is_zero(), "{what} must be even, got {doubled}");
    q
}

/// Parameters of `kP4 + tP2` in `K_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamTriple {
    pub k: BigInt,
    pub t: BigInt,
    pub n: BigInt,
}

impl ParamTriple {
    pub fn new(k: impl Into<BigInt>, t: impl Into<BigInt>, n: impl Into<BigInt>) -> Result<Self> {
        let (k, t, n) = (k.into(), t.into(), n.into());
        if k.is_negative() || t.is_negative() || n.is_negative() {
            return Err(Error::domain(format!(
                "parameters must be nonnegative, got k = {k}, t = {t}, n = {n}"
            )));
        }
        Ok(Self { k, t, n })
    }

    /// Size of the matching contained in `kP4 + tP2`, namely `2k + t`.
    pub fn matching_size(&self) -> BigInt {
        int(2) * &self.k + &self.t
    }
}

impl fmt::Display for ParamTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(k = {}, t = {}, n = {})", self.k, self.t, self.n)
    }
}

/// `AR(n, tP2)` for `t ≥ 2` and `n ≥ 2t + 1`.
///
/// The small-host branch `(t-2)(2t-3) + 1` applies when `2n ≤ 5t - 7`, the
/// large-host branch `(t-2)(n - (t-1)/2) + 1` otherwise. The two agree when
/// `2n = 5t - 7`.
pub fn ar_matching(n: &BigInt, t: &BigInt) -> Result<BigInt> {
    if *t < int(2) {
        return Err(Error::OutOfRegion(format!("matching formula needs t ≥ 2, got t = {t}")));
    }
    let min_n = int(2) * t + 1;
    if *n < min_n {
        return Err(Error::OutOfRegion(format!(
            "matching formula needs n ≥ 2t + 1 = {min_n}, got n = {n} (the case n = 2t is not covered)"
        )));
    }
    if int(2) * n <= int(5) * t - 7 {
        Ok(matching_small_branch(t))
    } else {
        Ok(matching_large_branch(n, t))
    }
}

pub(crate) fn matching_small_branch(t: &BigInt) -> BigInt {
    (t - 2) * (int(2) * t - 3) + 1
}

pub(crate) fn matching_large_branch(n: &BigInt, t: &BigInt) -> BigInt {
    let doubled = (t - 2) * (int(2) * n - t + 1);
    exact_half(doubled, "(t-2)(2n-t+1)") + 1
}

/// `g(k, t) = 8k + 2t - 4`.
pub fn interval_lower(k: &BigInt, t: &BigInt) -> BigInt {
    int(8) * k + int(2) * t - 4
}

/// `f(k, t) = (7k² + 8kt - t² + 23k - t - 18) / (2k - 2t + 2)`, for `k ≥ t`.
pub fn interval_upper(k: &BigInt, t: &BigInt) -> Result<BigRational> {
    let den: BigInt = int(2) * k - int(2) * t + 2;
    if !den.is_positive() {
        return Err(Error::domain(format!(
            "upper interval bound needs 2k - 2t + 2 > 0, got k = {k}, t = {t}"
        )));
    }
    let num = int(7) * k * k + int(8) * k * t - t * t + int(23) * k - t - 18;
    Ok(BigRational::new(num, den))
}

/// The host-order interval `[g, f]` of the `k ≥ t` theorem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalBounds {
    pub g: BigInt,
    pub f: BigRational,
}

impl IntervalBounds {
    /// Largest integer `n ≤ f`.
    pub fn f_floor(&self) -> BigInt {
        self.f.floor().to_integer()
    }

    pub fn contains(&self, n: &BigInt) -> bool {
        *n >= self.g && BigRational::from_integer(n.clone()) <= self.f
    }

    pub fn is_empty(&self) -> bool {
        BigRational::from_integer(self.g.clone()) > self.f
    }
}

pub fn interval_bounds(k: &BigInt, t: &BigInt) -> Result<IntervalBounds> {
    if k < t {
        return Err(Error::domain(format!("interval needs k ≥ t, got k = {k}, t = {t}")));
    }
    Ok(IntervalBounds {
        g: interval_lower(k, t),
        f: interval_upper(k, t)?,
    })
}

/// `9k² - 20kt - 15k - 3t² + 13t + 10`; the interval is nonempty iff this is
/// at most zero (it is `(2k-2t+2)·g - numerator(f)` expanded).
pub fn nonempty_discriminant(k: &BigInt, t: &BigInt) -> BigInt {
    int(9) * k * k - int(20) * k * t - int(15) * k - int(3) * t * t + int(13) * t + 10
}

/// Whether `g(k, t) ≤ f(k, t)`, for `k ≥ t ≥ 2`.
pub fn interval_nonempty(k: &BigInt, t: &BigInt) -> Result<bool> {
    if *t < int(2) {
        return Err(Error::domain(format!("interval needs t ≥ 2, got t = {t}")));
    }
    if k < t {
        return Err(Error::domain(format!("interval needs k ≥ t, got k = {k}, t = {t}")));
    }
    let by_predicate = !nonempty_discriminant(k, t).is_positive();
    debug_assert_eq!(by_predicate, !interval_bounds(k, t)?.is_empty());
    Ok(by_predicate)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RegionTag {
    /// `t ≥ k + 1 ≥ 2` and `n ≥ 8k + 2t - 4`.
    Theorem1,
    /// `k ≥ t ≥ 2` and `g(k, t) ≤ n ≤ f(k, t)`.
    Theorem2,
    Outside,
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionTag::Theorem1 => "Theorem1",
            RegionTag::Theorem2 => "Theorem2",
            RegionTag::Outside => "Outside",
        })
    }
}

fn theorem1_failures(p: &ParamTriple) -> Vec<String> {
    let mut fails = Vec::new();
    if p.t < &p.k + 1 {
        fails.push(format!("t ≥ k + 1 fails ({} < {})", p.t, &p.k + 1));
    }
    if p.k < int(1) {
        fails.push("k + 1 ≥ 2 fails (k = 0)".to_string());
    }
    let g = interval_lower(&p.k, &p.t);
    if p.n < g {
        fails.push(format!("n ≥ 8k + 2t - 4 fails ({} < {g})", p.n));
    }
    fails
}

fn theorem2_failures(p: &ParamTriple) -> Vec<String> {
    let mut fails = Vec::new();
    if p.t < int(2) {
        fails.push(format!("t ≥ 2 fails (t = {})", p.t));
    }
    if p.k < p.t {
        fails.push(format!("k ≥ t fails ({} < {})", p.k, p.t));
        return fails;
    }
    let bounds = interval_bounds(&p.k, &p.t).expect("k ≥ t checked");
    if p.n < bounds.g {
        fails.push(format!("n ≥ g(k, t) fails ({} < {})", p.n, bounds.g));
    }
    if BigRational::from_integer(p.n.clone()) > bounds.f {
        fails.push(format!("n ≤ f(k, t) fails ({} > {})", p.n, bounds.f));
    }
    fails
}

/// Which theorem, if any, determines `AR(n, kP4 + tP2)`. Theorem 1 is
/// checked first; the regions are disjoint since one needs `t > k` and the
/// other `k ≥ t`.
pub fn classify_region(p: &ParamTriple) -> RegionTag {
    if theorem1_failures(p).is_empty() {
        RegionTag::Theorem1
    } else if theorem2_failures(p).is_empty() {
        RegionTag::Theorem2
    } else {
        RegionTag::Outside
    }
}

/// `AR(n, kP4 + tP2)` on the covered regions, where it equals
/// `AR(n, (2k+t)P2)`.
///
/// In the `k ≥ t` region this is `(2k+t-2)(n - (2k+t-1)/2) + 1`. In the
/// `t > k` region the matching formula is used directly, which may fall in
/// its small-host branch when `t` is large relative to `k`. The single
/// boundary point `k = 1, n = 2(2k+t)` of the `t > k` region is a perfect
/// matching host, where the matching formula is not available, and is
/// reported as an error.
pub fn ar_linear_forest(p: &ParamTriple) -> Result<BigInt> {
    let s = p.matching_size();
    match classify_region(p) {
        RegionTag::Theorem2 => {
            assert!(p.n > int(2) * &s, "k ≥ t region implies n ≥ 2(2k+t) + 1");
            assert!(
                int(2) * &p.n >= int(5) * &s - 7,
                "k ≥ t region implies 2n ≥ 5(2k+t) - 7"
            );
            let doubled = (&s - 2) * (int(2) * &p.n - &s + 1);
            Ok(exact_half(doubled, "(2k+t-2)(2n-2k-t+1)") + 1)
        }
        RegionTag::Theorem1 => ar_matching(&p.n, &s).map_err(|_| {
            Error::OutOfRegion(format!(
                "{p}: n = 2(2k+t) is a perfect-matching host; AR(2s, sP2) is not given by the matching formula"
            ))
        }),
        RegionTag::Outside => {
            let t1 = theorem1_failures(p).join(", ");
            let t2 = theorem2_failures(p).join(", ");
            Err(Error::OutOfRegion(format!(
                "{p}: t > k region: {t1}; k ≥ t region: {t2}"
            )))
        }
    }
}

/// The target `μ` and the two upper bounds `β₁`, `β₂` compared in the
/// upper-bound argument. All three are integers for integer inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuBeta {
    /// `(2k+t-2)(n - (2k+t-1)/2) + 2`
    pub mu: BigInt,
    /// `(6kn + 6t + 18 - 11k² - 12kt - 19k - 2n) / 2`
    pub beta1: BigInt,
    /// `(4kn + 12 - 3k² - 6kt - 21k) / 2`
    pub beta2: BigInt,
}

pub fn mu_beta(p: &ParamTriple) -> MuBeta {
    let (k, t, n) = (&p.k, &p.t, &p.n);
    let s = p.matching_size();
    let mu = exact_half((&s - 2) * (int(2) * n - &s + 1), "(2k+t-2)(2n-2k-t+1)") + 2;
    let beta1 = exact_half(
        int(6) * k * n + int(6) * t + 18 - int(11) * k * k - int(12) * k * t - int(19) * k - int(2) * n,
        "2·β₁",
    );
    let beta2 = exact_half(
        int(4) * k * n + 12 - int(3) * k * k - int(6) * k * t - int(21) * k,
        "2·β₂",
    );
    MuBeta { mu, beta1, beta2 }
}
