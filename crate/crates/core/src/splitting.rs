//! Series identities behind the irreducible splitting of the sixth space of
//! `BoP` into `bo_6` and spaces `BP⟨k⟩_{2^{k+1}+8u+4}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::{homotopy_profile, v_degree, SpectrumId};
use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::series::{Factor, TruncatedSeries};

/// A factor `BP⟨k⟩_{2^{k+1}+8u+4}` of the splitting, `k ≥ 2`, `u < 2^{k-2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SplittingIndex {
    k: u32,
    u: u64,
}

impl SplittingIndex {
    pub fn new(k: u32, u: u64) -> Result<Self> {
        if !(2..=40).contains(&k) {
            return Err(Error::InvalidParameter(format!(
                "splitting index needs 2 <= k <= 40, got {k}"
            )));
        }
        if u >= 1u64 << (k - 2) {
            return Err(Error::InvalidParameter(format!(
                "u = {u} must be below 2^{}",
                k - 2
            )));
        }
        Ok(Self { k, u })
    }

    pub fn k(self) -> u32 {
        self.k
    }

    pub fn u(self) -> u64 {
        self.u
    }

    /// `2^{k+1} + 8u + 4`.
    pub fn connectivity(self) -> u64 {
        connectivity(self.k, self.u)
    }

    /// All indices with connectivity at most `bound`.
    pub fn up_to(bound: u64) -> impl Iterator<Item = Self> {
        (2u32..40)
            .take_while(move |&k| connectivity(k, 0) <= bound)
            .flat_map(move |k| {
                (0..1u64 << (k - 2))
                    .take_while(move |&u| connectivity(k, u) <= bound)
                    .map(move |u| Self { k, u })
            })
    }
}

fn connectivity(k: u32, u: u64) -> u64 {
    (1u64 << (k + 1)) + 8 * u + 4
}

/// `2^{k+1} − 2 < 2^{k+1} + 8u + 4 ≤ 2^{k+2} − 2`: the space lies in the
/// connectivity window where `BP⟨k⟩` spaces are irreducible.
pub fn in_irreducible_window(k: u32, u: u64) -> bool {
    let c = connectivity(k, u);
    let lo = (1u64 << (k + 1)) - 2;
    let hi = (1u64 << (k + 2)) - 2;
    lo < c && c <= hi
}

/// How the `C_s` term is built; `DropOnePlusX2` is a deliberate fault.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CTerm {
    #[default]
    Exact,
    DropOnePlusX2,
}

/// `∏_{j ≥ from} (1 − x^{2(2^j−1)})`.
fn v_tail(from: u32, n: usize) -> Result<TruncatedSeries> {
    TruncatedSeries::product_over(
        (from..usize::BITS - 2).map(|j| Factor::one_minus(v_degree(j))),
        n,
    )
}

fn check_s(s: u32) -> Result<()> {
    if !(2..=60).contains(&s) {
        return Err(Error::InvalidParameter(format!(
            "s must satisfy 2 <= s <= 60, got {s}"
        )));
    }
    Ok(())
}

/// `x^{2^{k+1}−2} (1+x²)(1−x^{2^{k+1}}) ∏_{j>k} (1−x^{2(2^j−1)})`.
fn a_term(k: u32, n: usize, c: CTerm) -> Result<TruncatedSeries> {
    let lead = v_degree(k);
    if lead > n {
        return Ok(TruncatedSeries::zero(n));
    }
    let mut t = v_tail(k + 1, n)?.mul_factor(Factor::one_minus(1 << (k + 1)))?;
    if c == CTerm::Exact {
        t = t.mul_factor(Factor::one_plus(2))?;
    }
    Ok(t.shift(lead))
}

/// `A_s = Σ_{k ≥ s} C_k`, dropping terms whose leading degree exceeds `n`.
pub fn a_series(s: u32, n: usize) -> Result<TruncatedSeries> {
    check_s(s)?;
    let mut acc = TruncatedSeries::zero(n);
    for k in (s..).take_while(|&k| k < 62 && v_degree(k) <= n) {
        acc = acc.add(&a_term(k, n, CTerm::Exact)?)?;
    }
    Ok(acc)
}

/// `B_s = (1−x^{2^{s+1}}) ∏_{j ≥ s} (1−x^{2(2^j−1)})`.
pub fn b_series(s: u32, n: usize) -> Result<TruncatedSeries> {
    check_s(s)?;
    v_tail(s, n)?.mul_factor(Factor::one_minus(1 << (s + 1)))
}

/// `C_s = x^{2^{s+1}−2} (1+x²)(1−x^{2^{s+1}}) ∏_{j>s} (1−x^{2(2^j−1)})`.
pub fn c_series(s: u32, n: usize) -> Result<TruncatedSeries> {
    c_series_with(s, n, CTerm::Exact)
}

pub fn c_series_with(s: u32, n: usize, c: CTerm) -> Result<TruncatedSeries> {
    check_s(s)?;
    a_term(s, n, c)
}

/// Largest `s` whose `C_s` is visible below degree `n`.
fn s_top(n: usize) -> u32 {
    (2u32..62)
        .take_while(|&s| v_degree(s) <= n)
        .last()
        .unwrap_or(2)
}

/// `B_{s+1} = B_s + C_s`.
pub fn verify_bcb(s: u32, n: usize, c: CTerm) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("bcb")
        .param("s", s)
        .param("max_degree", n);
    let lhs = b_series(s + 1, n)?;
    let rhs = b_series(s, n)?.add(&c_series_with(s, n, c)?)?;
    report.record(
        format!("B_{} = B_{s} + C_{s}", s + 1),
        lhs.first_difference(&rhs),
    );
    Ok(report)
}

/// `B_2 + A_2 = 1`, plus `B_{s+1} = B_s + C_s` and `A_s = C_s + A_{s+1}`
/// for every `s` whose leading degree is visible.
pub fn verify_rhs_one(n: usize, c: CTerm) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("rhs-one").param("max_degree", n);
    let total = b_series(2, n)?.add(&a_series(2, n)?)?;
    report.record(
        "B_2 + A_2 = 1",
        total.first_difference(&TruncatedSeries::one(n)),
    );
    for s in 2..=s_top(n) {
        let cs = c_series_with(s, n, c)?;
        let telescope = cs.add(&a_series(s + 1, n)?)?;
        report.record(
            format!("A_{s} = C_{s} + A_{}", s + 1),
            a_series(s, n)?.first_difference(&telescope),
        );
        let bcb = b_series(s, n)?.add(&cs)?;
        report.record(
            format!("B_{} = B_{s} + C_{s}", s + 1),
            b_series(s + 1, n)?.first_difference(&bcb),
        );
    }
    Ok(report)
}

fn torsion_difference(a: &BTreeMap<usize, u64>, b: &BTreeMap<usize, u64>) -> Option<usize> {
    a.keys()
        .chain(b.keys())
        .filter(|d| a.get(d) != b.get(d))
        .min()
        .copied()
}

/// `Σ_{k,u} x^{2^{k+1}+8u−2} · series(BP⟨k⟩)`, up to degree `n`.
pub fn splitting_summands(n: usize) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::zero(n);
    for idx in SplittingIndex::up_to(n as u64 + 6) {
        let shift = (idx.connectivity() - 6) as usize;
        let bpn = homotopy_profile(SpectrumId::BPn(idx.k()), n - shift)?.free_ranks;
        acc = acc.add(&bpn.shift_to(shift, n)?)?;
    }
    Ok(acc)
}

/// As graded groups `π_*BoP ≅ π_*bo ⊕ ⊕_{k,u} Σ^{2^{k+1}+8u−2} π_*BP⟨k⟩`.
pub fn verify_lemma61(n: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("lemma61").param("max_degree", n);
    let bop = homotopy_profile(SpectrumId::BoP, n)?;
    let bo = homotopy_profile(SpectrumId::Bo, n)?;
    let rhs = bo.free_ranks.add(&splitting_summands(n)?)?;
    report.record("free ranks", bop.free_ranks.first_difference(&rhs));
    report.record(
        "torsion",
        torsion_difference(&bop.torsion_z2, &bo.torsion_z2),
    );
    Ok(report)
}

/// Every index with `k ≤ k_max` sits in its irreducibility window. A failing
/// case reports its connectivity.
pub fn verify_irreducibility(k_max: u32) -> Result<VerificationReport> {
    if k_max > 30 {
        return Err(Error::InvalidParameter(
            "k_max above 30 is not enumerable".into(),
        ));
    }
    let mut report = VerificationReport::new("irreducibility").param("k_max", k_max);
    for k in 2..=k_max {
        let bad = (0..1u64 << (k - 2)).find(|&u| !in_irreducible_window(k, u));
        report.record(format!("k={k}"), bad.map(|u| connectivity(k, u) as usize));
    }
    Ok(report)
}

/// `{8u+12}` and `{2^{k+1}+8u+4}` agree as multisets below `bound`. A
/// failure reports the smallest value where the multiplicities differ.
pub fn verify_index_bijection(bound: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("index-bijection").param("bound", bound);
    let mut lhs: BTreeMap<u64, u64> = BTreeMap::new();
    for c in (12..=bound).step_by(8) {
        *lhs.entry(c).or_default() += 1;
    }
    let mut rhs: BTreeMap<u64, u64> = BTreeMap::new();
    for idx in SplittingIndex::up_to(bound) {
        *rhs.entry(idx.connectivity()).or_default() += 1;
    }
    let diff = lhs
        .keys()
        .chain(rhs.keys())
        .filter(|c| lhs.get(c) != rhs.get(c))
        .min()
        .map(|&c| c as usize);
    report.record("connectivities", diff);
    Ok(report)
}

/// `rank π_m BP⟨j⟩ = rank π_m BP⟨j−1⟩ + rank π_{m−|v_j|} BP⟨j⟩` for
/// `2 ≤ j ≤ j_max`, `m ≤ n`.
pub fn verify_wsw2_5(j_max: u32, n: usize) -> Result<VerificationReport> {
    if !(2..=40).contains(&j_max) {
        return Err(Error::InvalidParameter("j_max must lie in 2..=40".into()));
    }
    let mut report = VerificationReport::new("wsw2-5")
        .param("j_max", j_max)
        .param("max_degree", n);
    for j in 2..=j_max {
        let top = homotopy_profile(SpectrumId::BPn(j), n)?.free_ranks;
        let below = homotopy_profile(SpectrumId::BPn(j - 1), n)?.free_ranks;
        let step = v_degree(j);
        let shifted = if step <= n {
            top.shift(step)
        } else {
            TruncatedSeries::zero(n)
        };
        report.record(
            format!("j={j}"),
            top.first_difference(&below.add(&shifted)?),
        );
    }
    Ok(report)
}

/// `π_d BoP_6 ≅ π_d bo_6 ⊕ ⊕_{k,u} π_d BP⟨k⟩_{2^{k+1}+8u+4}` for `d ≤ n`,
/// free and torsion parts separately.
pub fn verify_thm26_homotopy(n: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("thm26-homotopy").param("max_degree", n);
    let base = n.saturating_sub(6);
    let bop = homotopy_profile(SpectrumId::BoP, base)?;
    let bo = homotopy_profile(SpectrumId::Bo, base)?;
    let lhs = space_series(&bop.free_ranks, 6, n)?;
    let mut rhs = space_series(&bo.free_ranks, 6, n)?;
    for idx in SplittingIndex::up_to(n as u64) {
        let c = idx.connectivity() as usize;
        let bpn = homotopy_profile(SpectrumId::BPn(idx.k()), n - c)?.free_ranks;
        rhs = rhs.add(&space_series(&bpn, c, n)?)?;
    }
    report.record("free ranks", lhs.first_difference(&rhs));
    let shift = |t: &BTreeMap<usize, u64>| -> BTreeMap<usize, u64> {
        t.iter()
            .map(|(d, c)| (d + 6, *c))
            .filter(|(d, _)| *d <= n)
            .collect()
    };
    report.record(
        "torsion",
        torsion_difference(&shift(&bop.torsion_z2), &shift(&bo.torsion_z2)),
    );
    Ok(report)
}

/// Homotopy of the `c`-th space of a connective spectrum with free ranks
/// `profile`, as a series to degree `n`.
fn space_series(profile: &TruncatedSeries, c: usize, n: usize) -> Result<TruncatedSeries> {
    profile.shift_to(c, n)
}
