//! Exact checks of the numeric skeleton of the upper-bound argument for
//! `kP4 + tP2`: the layer objective `Ω`, the two counting bounds, the case
//! bounds `β₁`, `β₂` against the target `μ`, and the interval identities.
//!
//! Every check returns [`CheckRow`]s instead of panicking so that callers can
//! print one line per family. Nothing here uses floating point.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::{interval_bounds, interval_lower, interval_nonempty, interval_upper, mu_beta, ParamTriple};

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported for information; never counts as a failure.
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        })
    }
}

/// One verified family: how many instances were checked, how many failed,
/// and the first failing instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub family: String,
    pub status: Status,
    pub checked: u64,
    pub violations: u64,
    pub counterexample: Option<String>,
    pub note: Option<String>,
}

impl CheckRow {
    fn tally(family: &str, checked: u64, violations: u64, counterexample: Option<String>) -> Self {
        Self {
            family: family.to_owned(),
            status: if violations == 0 { Status::Pass } else { Status::Fail },
            checked,
            violations,
            counterexample,
            note: None,
        }
    }

    fn info(family: &str, checked: u64, count: u64, note: String) -> Self {
        Self {
            family: family.to_owned(),
            status: Status::Info,
            checked,
            violations: count,
            counterexample: None,
            note: Some(note),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub rows: Vec<CheckRow>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != Status::Fail)
    }

    pub fn row(&self, family: &str) -> Option<&CheckRow> {
        self.rows.iter().find(|r| r.family == family)
    }

    pub const TSV_HEADER: &'static str = "family\tstatus\tchecked\tviolations\tcounterexample\tnote";

    pub fn to_tsv(&self) -> String {
        let mut out = String::from(Self::TSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let clean = |s: &Option<String>| s.as_deref().unwrap_or("").replace(['\t', '\n'], " ");
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                r.family,
                r.status,
                r.checked,
                r.violations,
                clean(&r.counterexample),
                clean(&r.note)
            ));
        }
        out
    }
}

/// Running count of checked instances and failures, keeping the first failure.
#[derive(Default)]
struct Tally {
    checked: u64,
    violations: u64,
    first: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.first.is_none() {
                self.first = Some(witness());
            }
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.checked += other.checked;
        self.violations += other.violations;
        if self.first.is_none() {
            self.first = other.first;
        }
    }

    fn row(self, family: &str) -> CheckRow {
        CheckRow::tally(family, self.checked, self.violations, self.first)
    }
}

/// `α_i` for a layer of size `fi` given `|V'|` and `t`.
pub fn alpha(fi: u64, vprime: &BigInt, t: &BigInt) -> Result<BigInt> {
    let two_side = |extra: i64| int(2) * (vprime + t + extra);
    Ok(match fi {
        0 => return Err(Error::domain("layer size must be at least 1")),
        1 => (int(3) * vprime).max(two_side(3)),
        2 => (int(5) * vprime).max(two_side(2)),
        _ => (int(3) * vprime).max(two_side(2)),
    })
}

/// Layer sizes `S = (|F_1|, …, |F_λ|)` together with `|V'|` and `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaInput {
    s: Vec<u64>,
    vprime: BigInt,
    t: BigInt,
}

impl OmegaInput {
    pub fn new(s: Vec<u64>, vprime: impl Into<BigInt>, t: impl Into<BigInt>) -> Result<Self> {
        let (vprime, t) = (vprime.into(), t.into());
        if s.is_empty() || s.contains(&0) {
            return Err(Error::domain(
                "layer sizes must be a nonempty sequence of positive integers",
            ));
        }
        if vprime.is_negative() {
            return Err(Error::domain("|V'| must be nonnegative"));
        }
        if t < int(2) {
            return Err(Error::domain("t must be at least 2"));
        }
        Ok(Self { s, vprime, t })
    }

    pub fn s(&self) -> &[u64] {
        &self.s
    }

    /// `k = 1 + Σ S_i`.
    pub fn k(&self) -> u64 {
        1 + self.s.iter().sum::<u64>()
    }

    /// `|V(H₁)| = 4(k - 1)`.
    pub fn h1_size(&self) -> u64 {
        4 * (self.k() - 1)
    }
}

/// `Ω(S) = Σ α_i + 3 Σ |F_i|(i - 1)`.
pub fn omega(input: &OmegaInput) -> BigInt {
    input
        .s
        .iter()
        .enumerate()
        .map(|(i, &fi)| {
            alpha(fi, &input.vprime, &input.t).expect("layer sizes validated") + int(3) * BigInt::from(fi) * i
        })
        .sum()
}

/// All compositions of `total` into positive parts, in lexicographic order.
pub fn compositions(total: u64) -> Vec<Vec<u64>> {
    fn rec(left: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in 1..=left {
            prefix.push(part);
            rec(left - part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if total > 0 {
        rec(total, &mut Vec::new(), &mut out);
    }
    out
}

/// Checks `Ω(1, …, 1) ≥ Ω(S)` for every composition `S` of `k - 1`, every
/// `2 ≤ k ≤ k_max`, `2 ≤ t ≤ t_max` and `4(k-1) ≤ |V'| ≤ 4(k-1) + vprime_extra`.
pub fn verify_claim8(k_max: u64, t_max: u64, vprime_extra: u64) -> Result<VerifyReport> {
    if k_max < 2 || t_max < 2 {
        return Err(Error::domain("claim check needs k_max ≥ 2 and t_max ≥ 2"));
    }
    let mut tally = Tally::default();
    for k in 2..=k_max {
        let comps = compositions(k - 1);
        for t in 2..=t_max {
            let low = 4 * (k - 1);
            for vprime in low..=low + vprime_extra {
                let ones = omega(&OmegaInput::new(vec![1; (k - 1) as usize], vprime, t)?);
                for s in &comps {
                    let value = omega(&OmegaInput::new(s.clone(), vprime, t)?);
                    tally.record(ones >= value, || {
                        format!("k={k} t={t} vprime={vprime} S={s:?} omega={value} ones={ones}")
                    });
                }
            }
        }
    }
    Ok(VerifyReport {
        rows: vec![tally.row("claim8_all_ones_maximizes_omega")],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum YBranch {
    /// `max{3|V'|, 2(|V'|+t+3)} = 3|V'|`, i.e. `|V'| ≥ 2t + 6`.
    ThreeVprime,
    TwoVprimeT3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsLedger {
    pub vprime: BigInt,
    /// `2n - 8k - 3t + 2`
    pub x_bound: BigInt,
    /// `(13k-14)(k-1)/2 + (k-1)·max{3|V'|, 2(|V'|+t+3)}`
    pub y_bound: BigInt,
    pub branch: YBranch,
    pub beta1: BigInt,
    pub beta2: BigInt,
    /// In the `3|V'|` branch: whether `x_bound + y_bound = β₁`.
    pub beta1_identity: Option<bool>,
    /// In the other branch: `x_bound + y_bound - β₂`, reported as is.
    pub beta2_residual: Option<BigInt>,
}

fn y_parts(k: &BigInt, t: &BigInt, vprime: &BigInt) -> (BigInt, BigInt, BigInt) {
    let base: BigInt = (int(13) * k - 14) * (k - 1);
    let (half, r) = base.div_rem(&int(2));
    debug_assert!(r.is_zero());
    (half, int(3) * vprime, int(2) * (vprime + t + 3))
}

pub fn bounds_ledger(p: &ParamTriple) -> Result<BoundsLedger> {
    let (k, t, n) = (&p.k, &p.t, &p.n);
    if k < &BigInt::one() {
        return Err(Error::domain("bounds ledger needs k ≥ 1"));
    }
    let vprime = n - int(4) * k - int(2) * t;
    let x_bound = int(2) * n - int(8) * k - int(3) * t + 2;
    let (half, three, two) = y_parts(k, t, &vprime);
    let branch = if three >= two {
        YBranch::ThreeVprime
    } else {
        YBranch::TwoVprimeT3
    };
    let y_bound = half + (k - 1) * three.max(two);
    let mb = mu_beta(p);
    let sum = &x_bound + &y_bound;
    let (beta1_identity, beta2_residual) = match branch {
        YBranch::ThreeVprime => (Some(sum == mb.beta1), None),
        YBranch::TwoVprimeT3 => (None, Some(sum - &mb.beta2)),
    };
    Ok(BoundsLedger {
        vprime,
        x_bound,
        y_bound,
        branch,
        beta1: mb.beta1,
        beta2: mb.beta2,
        beta1_identity,
        beta2_residual,
    })
}

/// Checks that the `3|V'|` form of `x_bound + y_bound` equals `β₁` as a
/// polynomial, by evaluating it on the full grid `0 ≤ k, t, n ≤ max` (far more
/// points per variable than its degree), and separately at every point of
/// that grid where the `3|V'|` branch is the one selected.
pub fn verify_beta_identity(max: u64) -> Result<VerifyReport> {
    if max < 3 {
        return Err(Error::domain("identity check needs max ≥ 3 to exceed the degree"));
    }
    let mut grid = Tally::default();
    let mut branch = Tally::default();
    for k in 0..=max {
        for t in 0..=max {
            for n in 0..=max {
                let p = ParamTriple::new(k, t, n)?;
                let (kk, tt, nn) = (&p.k, &p.t, &p.n);
                let vprime = nn - int(4) * kk - int(2) * tt;
                let (half, three, two) = y_parts(kk, tt, &vprime);
                let x = int(2) * nn - int(8) * kk - int(3) * tt + 2;
                let sum = &x + &half + (kk - 1) * &three;
                let beta1 = mu_beta(&p).beta1;
                let ok = sum == beta1;
                grid.record(ok, || format!("k={k} t={t} n={n} x+y={sum} beta1={beta1}"));
                if k >= 1 && three >= two {
                    branch.record(ok, || format!("k={k} t={t} n={n}"));
                }
            }
        }
    }
    Ok(VerifyReport {
        rows: vec![
            grid.row("beta1_identity_polynomial"),
            branch.row("beta1_identity_on_branch"),
        ],
    })
}

/// Per-`(k, t)` results of the region scan, merged in `k` order.
#[derive(Default)]
struct CellTallies {
    cells: u64,
    mu_beta1: Tally,
    mu_beta2: Tally,
    gdiff_2l: Tally,
    gdiff_4l: Tally,
    f_monotone: Tally,
    implication: Tally,
    sharpness: Tally,
    sharpness_cells: u64,
    conservative: u64,
}

impl CellTallies {
    fn absorb(&mut self, o: CellTallies) {
        self.cells += o.cells;
        self.mu_beta1.absorb(o.mu_beta1);
        self.mu_beta2.absorb(o.mu_beta2);
        self.gdiff_2l.absorb(o.gdiff_2l);
        self.gdiff_4l.absorb(o.gdiff_4l);
        self.f_monotone.absorb(o.f_monotone);
        self.implication.absorb(o.implication);
        self.sharpness.absorb(o.sharpness);
        self.sharpness_cells += o.sharpness_cells;
        self.conservative += o.conservative;
    }
}

fn mu_minus_beta1(k: &BigInt, t: &BigInt, n: &BigInt) -> BigInt {
    let mb = mu_beta(&ParamTriple {
        k: k.clone(),
        t: t.clone(),
        n: n.clone(),
    });
    mb.mu - mb.beta1
}

fn scan_cell(k: i64, t: i64) -> CellTallies {
    let mut out = CellTallies::default();
    let (kb, tb) = (int(k), int(t));
    let bounds = interval_bounds(&kb, &tb).expect("k ≥ t ≥ 2");
    let g = &bounds.g;
    let last = bounds.f_floor();

    let mut n = g.clone();
    while n <= last {
        out.cells += u64::from(n == *g);
        let mb = mu_beta(&ParamTriple {
            k: kb.clone(),
            t: tb.clone(),
            n: n.clone(),
        });
        out.mu_beta1.record(mb.mu > mb.beta1, || {
            format!("k={k} t={t} n={n} mu={} beta1={}", mb.mu, mb.beta1)
        });
        out.mu_beta2.record(mb.mu > mb.beta2, || {
            format!("k={k} t={t} n={n} mu={} beta2={}", mb.mu, mb.beta2)
        });
        n += 1;
    }

    for l in 1..=(k - t + 1) {
        let diff = g - interval_lower(&int(k - l), &int(t + 2 * l));
        out.gdiff_2l
            .record(diff == int(2 * l), || format!("k={k} t={t} l={l} difference={diff}"));
        out.gdiff_4l
            .record(diff == int(4 * l), || format!("k={k} t={t} l={l} difference={diff}"));
    }

    if k >= t + 3 {
        let here = interval_upper(&kb, &tb).expect("k ≥ t");
        let next = interval_upper(&int(k - 1), &int(t + 2)).expect("k - 1 ≥ t + 2");
        out.f_monotone
            .record(here <= next, || format!("k={k} t={t} f={here} f(k-1,t+2)={next}"));
    }

    let low_case = int(4 * k + 3 * t + 3);
    let admits_low_case = *g <= low_case;
    out.implication.record(!admits_low_case || 4 * k <= t + 7, || {
        format!("k={k} t={t} g={g} 4k+3t+3={low_case}")
    });

    if last >= *g && last >= low_case {
        out.sharpness_cells += 1;
        let f = &bounds.f;
        let past = f.ceil().to_integer() + 1;
        let inside = mu_minus_beta1(&kb, &tb, &last);
        let outside = mu_minus_beta1(&kb, &tb, &past);
        out.sharpness
            .record(inside.is_positive() && !outside.is_positive(), || {
                format!("k={k} t={t} n={last}: {inside}; n={past}: {outside}")
            });
        if mu_minus_beta1(&kb, &tb, &(&last + 1)).is_positive() {
            out.conservative += 1;
        }
    }
    out
}

/// Exact scan of the integer region `2 ≤ t ≤ k ≤ k_max`, `t ≤ t_max`,
/// `g(k,t) ≤ n ≤ floor(f(k,t))`.
pub fn verify_region(k_max: u64, t_max: u64) -> Result<VerifyReport> {
    if t_max < 2 || k_max < t_max {
        return Err(Error::domain("region scan needs k_max ≥ t_max ≥ 2"));
    }
    let (k_max, t_max) = (k_max as i64, t_max as i64);
    let pairs: Vec<(i64, i64)> = (2..=k_max)
        .flat_map(|k| (2..=t_max.min(k)).map(move |t| (k, t)))
        .collect();
    let parts: Vec<CellTallies> = pairs.par_iter().map(|&(k, t)| scan_cell(k, t)).collect();
    let mut all = CellTallies::default();
    for p in parts {
        all.absorb(p);
    }

    let points = all.mu_beta1.checked;
    let mut rows = vec![
        all.mu_beta1.row("mu_gt_beta1_on_region"),
        all.mu_beta2.row("mu_gt_beta2_on_region"),
        all.gdiff_2l
            .row("g_difference_equals_2l")
            .with_note("g(k,t) - g(k-l,t+2l) = 2l as stated; g = 8k+2t-4 gives 4l"),
        all.gdiff_4l.row("g_difference_equals_4l"),
        all.f_monotone.row("f_monotone_k_ge_t_plus_3"),
        all.implication.row("low_case_implies_4k_le_t_plus_7"),
        all.sharpness
            .row("beta1_cutoff_sharp")
            .with_note("mu-beta1 > 0 at n = floor(f) and <= 0 at n = ceil(f)+1, where n >= 4k+3t+3"),
        CheckRow::info(
            "beta1_cutoff_conservative_cells",
            all.sharpness_cells,
            all.conservative,
            "cells where mu > beta1 still holds at n = floor(f)+1 (f not an integer)".into(),
        ),
    ];
    rows.push(cutoff_example_row());
    rows.insert(
        0,
        CheckRow::info(
            "region_cells",
            all.cells,
            points,
            "nonempty cells; integer points".into(),
        ),
    );
    Ok(VerifyReport { rows })
}

/// `μ - β₁` at `(2, 2, 41)` and `(2, 2, 42)`, where `f(2, 2) = 41`.
fn cutoff_example_row() -> CheckRow {
    let at41 = mu_minus_beta1(&int(2), &int(2), &int(41));
    let at42 = mu_minus_beta1(&int(2), &int(2), &int(42));
    let ok = at41 == int(1) && at42.is_zero();
    CheckRow::tally(
        "cutoff_example_k2_t2",
        2,
        u64::from(!ok),
        (!ok).then(|| format!("mu-beta1 = {at41} at n=41, {at42} at n=42")),
    )
    .with_note(format!("mu-beta1 = {at41} at n=41, {at42} at n=42"))
}

/// `floor((20t + 15 + √(508t² + 132t - 135)) / 18)`, exactly.
pub fn nonempty_k_bound(t: u64) -> BigInt {
    let t = BigInt::from(t);
    let d: BigInt = int(508) * &t * &t + int(132) * &t - 135;
    let num: BigInt = int(20) * &t + 15 + d.sqrt();
    num.div_floor(&int(18))
}

/// For each `2 ≤ t ≤ t_max`: the `k ≥ t` with a nonempty interval form the
/// range `t..=K` and `K` equals [`nonempty_k_bound`].
pub fn verify_interval_extent(t_max: u64) -> Result<VerifyReport> {
    if t_max < 2 {
        return Err(Error::domain("extent check needs t_max ≥ 2"));
    }
    let mut largest = Tally::default();
    let mut contiguous = Tally::default();
    for t in 2..=t_max {
        let bound = nonempty_k_bound(t);
        let tb = BigInt::from(t);
        // Scan well past the bound; the discriminant is quadratic in k.
        let stop = &bound * 2 + 10;
        let mut k = tb.clone();
        let mut last_true: Option<BigInt> = None;
        let mut gaps = false;
        while k <= stop {
            if interval_nonempty(&k, &tb)? {
                if last_true.as_ref().is_some_and(|l| l + 1 != k) || (last_true.is_none() && k != tb) {
                    gaps = true;
                }
                last_true = Some(k.clone());
            }
            k += 1;
        }
        let found = last_true.clone().unwrap_or_else(|| &tb - 1);
        largest.record(found == bound, || format!("t={t} largest_k={found} bound={bound}"));
        contiguous.record(!gaps, || format!("t={t}"));
    }
    Ok(VerifyReport {
        rows: vec![
            largest.row("largest_nonempty_k_matches_sqrt_bound"),
            contiguous.row("nonempty_k_contiguous_from_t"),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn b(v: i64) -> BigInt {
        int(v)
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(1, &b(10), &b(2)).unwrap(), b(30));
        assert_eq!(alpha(2, &b(10), &b(2)).unwrap(), b(50));
        assert_eq!(alpha(3, &b(0), &b(2)).unwrap(), b(8));
        assert!(alpha(0, &b(0), &b(2)).is_err());
    }

    #[test]
    fn omega_examples() {
        let o = |s: Vec<u64>| omega(&OmegaInput::new(s, 10, 2).unwrap());
        assert_eq!(o(vec![1]), b(30));
        assert_eq!(o(vec![1, 1]), b(63));
        assert_eq!(o(vec![2]), b(50));
        assert!(OmegaInput::new(vec![], 0, 2).is_err());
        assert!(OmegaInput::new(vec![0], 0, 2).is_err());
        assert_eq!(OmegaInput::new(vec![2, 1], 0, 2).unwrap().h1_size(), 12);
    }

    #[test]
    fn compositions_count() {
        for total in 1..10u64 {
            assert_eq!(compositions(total).len(), 1 << (total - 1));
        }
        assert_eq!(compositions(1), vec![vec![1]]);
    }

    #[test]
    fn claim8_small() {
        let r = verify_claim8(2, 2, 0).unwrap();
        assert_eq!(r.rows[0].checked, 1);
        assert!(r.passed());
    }

    #[test]
    fn ledger_examples() {
        let l = bounds_ledger(&ParamTriple::new(2, 2, 20).unwrap()).unwrap();
        assert_eq!(
            (l.vprime.clone(), l.x_bound.clone(), l.y_bound.clone()),
            (b(8), b(20), b(32))
        );
        assert_eq!(l.branch, YBranch::TwoVprimeT3);
        assert_eq!(l.beta2_residual, Some(b(5)));

        let l = bounds_ledger(&ParamTriple::new(1, 5, 40).unwrap()).unwrap();
        assert_eq!(l.y_bound, b(0));

        let l = bounds_ledger(&ParamTriple::new(2, 2, 30).unwrap()).unwrap();
        assert_eq!(l.branch, YBranch::ThreeVprime);
        assert_eq!(l.beta1_identity, Some(true));
    }

    #[test]
    fn sqrt_bound_small_t() {
        // t = 2: 508·4 + 264 - 135 = 2161, isqrt 46, (40 + 15 + 46) / 18 = 5.
        assert_eq!(nonempty_k_bound(2), b(5));
        assert!(interval_nonempty(&b(5), &b(2)).unwrap());
        assert!(!interval_nonempty(&b(6), &b(2)).unwrap());
    }

    fn f_direct(k: i64, t: i64) -> BigRational {
        let num = int(7 * k * k + 8 * k * t - t * t + 23 * k - t - 18);
        BigRational::new(num, int(2 * k - 2 * t + 2))
    }

    #[test]
    fn f_matches_direct_evaluation() {
        for k in 2..20 {
            for t in 2..=k {
                assert_eq!(interval_upper(&b(k), &b(t)).unwrap(), f_direct(k, t));
            }
        }
    }

    #[test]
    fn tsv_shape() {
        let r = verify_region(6, 4).unwrap();
        let tsv = r.to_tsv();
        assert!(tsv.starts_with(VerifyReport::TSV_HEADER));
        for line in tsv.lines() {
            assert_eq!(line.split('\t').count(), 6, "{line}");
        }
    }
}
