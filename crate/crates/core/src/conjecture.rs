//! Series-level model of the conjectured cohomology of `BoP⟨n⟩`: Steenrod
//! quotient series, the ε rule, the summand decomposition and its limit,
//! first appearances of suspensions, and the degree arithmetic of the
//! conjectured squares in `H_*(bo_6)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::{homotopy_profile, SpectrumId};
use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::series::{Factor, TruncatedSeries};

/// Degree of the Milnor primitive `Q_i`.
fn q_degree(i: u32) -> usize {
    (1usize << (i + 1)) - 1
}

/// `∏_{i≥1} 1/(1−x^{2^i−1})`: the Milnor basis counts `ξ_i` in degree `2^i − 1`.
pub fn steenrod_series(n: usize) -> TruncatedSeries {
    TruncatedSeries::product_over(
        (1..usize::BITS - 1).map(|i| Factor::inverse_one_minus((1usize << i) - 1)),
        n,
    )
    .expect("positive ascending degrees")
}

/// Series of `𝒜/𝒜(Q_0, …, Q_k)`; `None` quotients by every `Q_i`.
pub fn a_n_series(k: Option<u32>, n: usize) -> TruncatedSeries {
    let top = k.unwrap_or(u32::MAX).min(usize::BITS - 2);
    let factors = (0..=top)
        .map(q_degree)
        .take_while(|&d| d <= n)
        .map(Factor::inverse_one_plus);
    let mut s = steenrod_series(n);
    for f in factors {
        s = s.mul_factor(f).expect("positive degree");
    }
    s
}

/// Series of `𝒜/𝒜(Q_0, Sq², Q_1, …, Q_k)`, modelled as `a_n_series(k)/(1+x²)`.
pub fn a2_k_series(k: Option<u32>, n: usize) -> Result<TruncatedSeries> {
    let s = a_n_series(k, n).mul_factor(Factor::inverse_one_plus(2))?;
    s.check_nonnegative()
        .map_err(|degree| Error::NegativeDimension { degree })?;
    Ok(s)
}

/// `Σ_{a≥0} x^{8a} · a2_k_series(∞)`: the cohomology series of `BoP`, equal
/// to the `BP̄` cohomology series divided by `1+x²`.
pub fn bop_cohomology_series(n: usize) -> Result<TruncatedSeries> {
    a2_k_series(None, n)?.mul_factor(Factor::inverse_one_minus(8))
}

/// `n = 2^K + a + 1` with `0 ≤ a < 2^K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonContext {
    n: u64,
    k: u32,
    a: u64,
}

impl EpsilonContext {
    /// Accepts `n ≥ 2`; the decomposition also makes sense at `n = 2`
    /// (`K = 0`, `a = 0`), which first-appearance scans need.
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "epsilon context needs n >= 2, got {n}"
            )));
        }
        let k = (n - 1).ilog2();
        Ok(Self {
            n,
            k,
            a: n - 1 - (1 << k),
        })
    }

    pub fn n(self) -> u64 {
        self.n
    }

    pub fn k(self) -> u32 {
        self.k
    }

    pub fn a(self) -> u64 {
        self.a
    }

    /// `1` on `0 < s ≤ a` and `n−a ≤ s < n`, `0` on `a < s < n−a`.
    pub fn epsilon(self, s: u64) -> Result<u32> {
        if s == 0 || s >= self.n {
            return Err(Error::InvalidParameter(format!(
                "s = {s} outside 1..={}",
                self.n - 1
            )));
        }
        Ok(u32::from(s <= self.a || s >= self.n - self.a))
    }
}

/// One summand `Σ^{suspension} 𝒜(2, algebra_index)` of the decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub s: u64,
    pub k_prime: u32,
    pub epsilon: u32,
    pub suspension: u64,
    /// `K' + 2 + ε`.
    pub algebra_index: u32,
}

/// Summands with suspension at most `max_suspension`, ordered by `s` then
/// `K'`. A negative suspension is an error rather than a dropped term.
pub fn summands(ctx: EpsilonContext, max_suspension: u64) -> Result<Vec<Summand>> {
    let mut out = Vec::new();
    for s in 1..ctx.n() {
        let epsilon = ctx.epsilon(s)?;
        for k_prime in ctx.k().. {
            let power = k_prime + 3 + epsilon;
            if power >= 63 {
                break;
            }
            let suspension = (1i64 << power) - 8 * s as i64;
            if suspension < 0 {
                return Err(Error::ConjectureShape {
                    s,
                    k_prime,
                    suspension,
                });
            }
            let suspension = suspension as u64;
            if suspension > max_suspension {
                break;
            }
            out.push(Summand {
                s,
                k_prime,
                epsilon,
                suspension,
                algebra_index: k_prime + 2 + epsilon,
            });
        }
    }
    Ok(out)
}

fn check_conjecture_n(n: u64) -> Result<EpsilonContext> {
    if n <= 2 {
        return Err(Error::InvalidParameter(format!(
            "the conjectured decomposition needs n > 2, got {n}"
        )));
    }
    EpsilonContext::new(n)
}

/// `a2_k_series(k, N)` for finite `k`, memoised; `k` beyond the last visible
/// primitive shares the `∞` entry.
struct QuotientCache {
    n: usize,
    two: bool,
    series: BTreeMap<u32, TruncatedSeries>,
}

impl QuotientCache {
    fn new(n: usize, two: bool) -> Self {
        Self {
            n,
            two,
            series: BTreeMap::new(),
        }
    }

    fn get(&mut self, k: u32) -> Result<&TruncatedSeries> {
        let visible = (0..usize::BITS - 2)
            .take_while(|&i| q_degree(i) <= self.n)
            .last()
            .unwrap_or(0);
        let key = k.min(visible + 1);
        if !self.series.contains_key(&key) {
            let s = if self.two {
                a2_k_series(Some(key), self.n)?
            } else {
                a_n_series(Some(key), self.n)
            };
            self.series.insert(key, s);
        }
        Ok(&self.series[&key])
    }
}

fn decomposition(n: u64, truncation: usize, cache: &mut QuotientCache) -> Result<TruncatedSeries> {
    let ctx = check_conjecture_n(n)?;
    let mut acc = TruncatedSeries::zero(truncation);
    for term in summands(ctx, truncation as u64)? {
        let piece = cache
            .get(term.algebra_index)?
            .shift(term.suspension as usize);
        acc = acc.add(&piece)?;
    }
    Ok(acc)
}

/// `Σ_{s=1}^{n−1} Σ_{K'≥K} x^{2^{K'+3+ε}−8s} · a2_k_series(K'+2+ε)`.
pub fn conjectured_bopn_cohomology(n: u64, truncation: usize) -> Result<TruncatedSeries> {
    decomposition(n, truncation, &mut QuotientCache::new(truncation, true))
}

/// The companion `BP̄⟨n⟩` wedge: the same index set over `a_n_series`.
pub fn conjectured_bpbarn_cohomology(n: u64, truncation: usize) -> Result<TruncatedSeries> {
    decomposition(n, truncation, &mut QuotientCache::new(truncation, false))
}

/// First `n` whose decomposition has a summand suspended by `8q`:
/// `2^J + 1 − u` for `q = 2^J + u`, `0 ≤ u < 2^J`.
pub fn first_appearance(q: u64) -> Result<u64> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be at least 1".into()));
    }
    let j = q.ilog2();
    let u = q - (1 << j);
    Ok((1 << j) + 1 - u)
}

/// Same value found by scanning `n = 2, 3, …` for a summand at `8q`.
pub fn first_appearance_by_scan(q: u64, n_max: u64) -> Result<Option<u64>> {
    for n in 2..=n_max {
        let hit = summands(EpsilonContext::new(n)?, 8 * q)?
            .iter()
            .any(|t| t.suspension == 8 * q);
        if hit {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Conjectured `x_{2j}^{*2} = b_{(m_1)}^2 b_{(m_2)}^4 ⋯ b_{(m_k)}^{2^k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareMonomial {
    pub j: u64,
    /// `(m_i, 2^i)` with `m_i = s_i − (i−1)` for the set bits `s_1 < ⋯ < s_k` of `j`.
    pub factors: Vec<(u32, u64)>,
    pub source_degree: u64,
}

pub fn square_monomial(j: u64) -> Result<SquareMonomial> {
    if j.count_ones() < 2 {
        return Err(Error::NotApplicable(format!(
            "x_{} has no conjectured square: j = {j} is not a sum of two or more powers of 2",
            2 * j
        )));
    }
    let factors = (0..64u32)
        .filter(|b| j >> b & 1 == 1)
        .enumerate()
        .map(|(i, s)| (s - i as u32, 1u64 << (i + 1)))
        .collect();
    Ok(SquareMonomial {
        j,
        factors,
        source_degree: 2 * j,
    })
}

/// Total degree under `|b_{(m)}| = 2^{m+1}`.
pub fn square_degree(m: &SquareMonomial) -> u64 {
    m.factors.iter().map(|&(sub, exp)| exp << (sub + 1)).sum()
}

/// The square lands in twice the source degree.
pub fn square_degree_check(m: &SquareMonomial) -> bool {
    square_degree(m) == 2 * m.source_degree
}

/// Each degree `d ≤ N` stabilises in `n` and the stable value is the `BoP`
/// cohomology coefficient. With `stable_from`, stabilisation must have
/// happened by that `n`. Failures report the degree.
pub fn verify_conjecture_limit(
    truncation: usize,
    n_max: u64,
    stable_from: Option<u64>,
) -> Result<VerificationReport> {
    if n_max < 3 || stable_from.is_some_and(|s| s < 3 || s > n_max) {
        return Err(Error::InvalidParameter(
            "need 3 <= stable_from <= n_max".into(),
        ));
    }
    let mut report = VerificationReport::new("conjecture-limit")
        .param("max_degree", truncation)
        .param("n_max", n_max);
    if let Some(s) = stable_from {
        report = report.param("stable_from", s);
    }
    let mut cache = QuotientCache::new(truncation, true);
    let sequence = (3..=n_max)
        .map(|n| decomposition(n, truncation, &mut cache))
        .collect::<Result<Vec<_>>>()?;
    let limit = sequence.last().expect("n_max >= 3");
    // n0[d]: first n from which degree d never changes again
    let mut n0 = vec![3u64; truncation + 1];
    for (idx, pair) in sequence.windows(2).enumerate() {
        for (d, slot) in n0.iter_mut().enumerate() {
            if pair[0].coefficients()[d] != pair[1].coefficients()[d] {
                *slot = idx as u64 + 4;
            }
        }
    }
    report.parameters.insert(
        "latest_stabilization".into(),
        n0.iter().max().copied().unwrap_or(3).to_string(),
    );
    report.record(
        "limit equals BoP cohomology",
        limit.first_difference(&bop_cohomology_series(truncation)?),
    );
    if let Some(s) = stable_from {
        report.record(format!("stable from n={s}"), n0.iter().position(|&m| m > s));
    }
    Ok(report)
}

/// The three ε ranges partition `{1, …, n−1}` and agree with `epsilon`, for
/// `2 < n ≤ n_max`. Failures report `n`.
pub fn verify_epsilon_partition(n_max: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("epsilon-partition").param("n_max", n_max);
    for n in 3..=n_max {
        let ctx = EpsilonContext::new(n)?;
        let a = ctx.a();
        let ok = (1..n).all(|s| {
            let lower = s <= a;
            let middle = a < s && s < n - a;
            let upper = n - a <= s;
            let hits = [lower, middle, upper].iter().filter(|&&b| b).count();
            hits == 1 && ctx.epsilon(s).ok() == Some(u32::from(!middle))
        });
        let bounds = n == (1 << ctx.k()) + a + 1 && a < (1 << ctx.k());
        report.record(format!("n={n}"), (!(ok && bounds)).then_some(n as usize));
    }
    Ok(report)
}

/// Formula against scan for `1 ≤ q ≤ q_max`. Failures report `q`.
pub fn verify_first_appearance(q_max: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("first-appearance").param("q_max", q_max);
    for q in 1..=q_max {
        let scanned = first_appearance_by_scan(q, q + 2)?;
        let formula = first_appearance(q)?;
        report.record(
            format!("q={q}"),
            (scanned != Some(formula)).then_some(q as usize),
        );
    }
    Ok(report)
}

/// `square_degree_check` for every non-power-of-2 `j < j_bound`. Failures
/// report `j`.
pub fn verify_squares(j_bound: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("squares").param("j_bound", j_bound);
    let bad = (3..j_bound).filter(|j| !j.is_power_of_two()).find(|&j| {
        square_monomial(j)
            .map(|m| !square_degree_check(&m))
            .unwrap_or(true)
    });
    report.record("degree 4j", bad.map(|j| j as usize));
    Ok(report)
}

/// For `2 < n ≤ n_max`: every suspension is non-negative, the decomposition
/// is non-negative, and multiplying it by `1+x²` gives the `BP̄⟨n⟩` wedge.
/// Failures report `n`.
pub fn verify_conjecture_shape(n_max: u64, truncation: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("conjecture-shape")
        .param("n_max", n_max)
        .param("max_degree", truncation);
    let mut two = QuotientCache::new(truncation, true);
    let mut one = QuotientCache::new(truncation, false);
    for n in 3..=n_max {
        let ok = match decomposition(n, truncation, &mut two) {
            Err(Error::ConjectureShape { .. }) => false,
            Err(e) => return Err(e),
            Ok(bop) => {
                let wedge = decomposition(n, truncation, &mut one)?;
                bop.check_nonnegative().is_ok()
                    && bop
                        .mul_factor(Factor::one_plus(2))?
                        .first_difference(&wedge)
                        .is_none()
            }
        };
        report.record(format!("n={n}"), (!ok).then_some(n as usize));
    }
    Ok(report)
}

/// Experimental: replaces each `𝒜(k)` of the `BP̄⟨n⟩` wedge by the homotopy
/// of `BP⟨k⟩`, divides by `1+x²` and asks for non-negativity. Nothing
/// guarantees this; the report is informational.
pub fn experimental_bopn_homotopy(n: u64, truncation: usize) -> Result<VerificationReport> {
    let ctx = check_conjecture_n(n)?;
    let mut report = VerificationReport::new("conjecture-homotopy-experimental")
        .param("n", n)
        .param("max_degree", truncation);
    let mut wedge = TruncatedSeries::zero(truncation);
    for term in summands(ctx, truncation as u64)? {
        let bpn = homotopy_profile(SpectrumId::BPn(term.algebra_index), truncation)?.free_ranks;
        wedge = wedge.add(&bpn.shift(term.suspension as usize))?;
    }
    let quotient = wedge.mul_factor(Factor::inverse_one_plus(2))?;
    report.record("non-negative quotient", quotient.first_negative());
    Ok(report)
}
