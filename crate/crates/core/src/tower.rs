//! Homology of Omega-spectrum spaces by induction: the rank rule for
//! torsion-free even spectra, iterated bar spectral sequences, and the
//! short exact sequences `H(BoP_i) → H(BP̄_i) → H(BoP_{i+2})` and
//! `H(F_i) → H(X_i) → H(F_{i+2})`.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraKind, GeneratorTable};
use crate::catalog::{
    bo_space_homology, bu_space_homology, homotopy_profile, ko_space_homology, HomotopyProfile,
    SpaceRef, SpectrumId,
};
use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    RankRule,
    BssIteration,
    SesSolved,
    Catalog,
    Product,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerResult {
    pub space: SpaceRef,
    /// Absent when only the series is known (mixed-kind products).
    pub table: Option<GeneratorTable>,
    pub series: TruncatedSeries,
    pub provenance: Provenance,
}

impl TowerResult {
    pub fn from_table(space: SpaceRef, table: GeneratorTable, provenance: Provenance) -> Self {
        Self {
            space,
            series: table.poincare_series(),
            table: Some(table),
            provenance,
        }
    }
}

/// Truncation a profile needs to feed the rank rule for `Z_index` up to `n`.
pub fn profile_truncation(index: i32, truncation: usize) -> usize {
    let top = truncation as i64 - index as i64;
    top.max(-(index as i64)).max(0) as usize
}

/// Free rank of `π_{-index}`, the number of `Z_(2)` components of `Z_index`.
pub fn component_rank(profile: &HomotopyProfile, index: i32) -> Result<u64> {
    if index > 0 {
        return Ok(0);
    }
    rank_at(profile, (-index) as usize)
}

fn rank_at(profile: &HomotopyProfile, degree: usize) -> Result<u64> {
    let c = profile.free_ranks.coefficient(degree)?;
    u64::try_from(c).map_err(|_| {
        if c < &num_bigint::BigInt::from(0) {
            Error::NegativeDimension { degree }
        } else {
            Error::CountOverflow { degree }
        }
    })
}

/// Rank rule: `Z_index` has one generator in degree `d > 0` per unit of free
/// rank in `π_{d-index}`, and `rank π_{-index}` components.
pub fn rank_rule_from_profile(
    profile: &HomotopyProfile,
    index: i32,
    kind: AlgebraKind,
    truncation: usize,
) -> Result<GeneratorTable> {
    let needed = profile_truncation(index, truncation);
    if profile.truncation() < needed {
        return Err(Error::Truncation {
            degree: needed,
            truncation: profile.truncation(),
        });
    }
    let mut counts = Vec::new();
    for d in 1..=truncation {
        let m = d as i64 - index as i64;
        if m < 0 {
            continue;
        }
        let c = rank_at(profile, m as usize)?;
        counts.push((d, c));
    }
    GeneratorTable::from_counts(kind, counts, component_rank(profile, index)?, truncation)
}

fn rank_rule_kind(space: SpaceRef) -> Result<AlgebraKind> {
    if !space.spectrum.is_torsion_free_even() {
        return Err(Error::RankRuleInapplicable(space.spectrum));
    }
    if matches!(space.spectrum, SpectrumId::F | SpectrumId::X) {
        match space.index {
            8 => return Ok(AlgebraKind::EvenUnresolved),
            i if i > 8 => {
                return Err(Error::UnsupportedSpace {
                    space,
                    reason: "F and X spaces are only determined up to index 8".into(),
                })
            }
            _ => {}
        }
    }
    Ok(AlgebraKind::for_index(space.index))
}

pub fn rank_rule_homology(space: SpaceRef, truncation: usize) -> Result<GeneratorTable> {
    let kind = rank_rule_kind(space)?;
    let profile = homotopy_profile(space.spectrum, profile_truncation(space.index, truncation))?;
    rank_rule_from_profile(&profile, space.index, kind, truncation)
}

/// Deloops `start` through `steps` collapsing bar spectral sequences.
/// `component_ranks[k]` is `rank π_0` of the `k`-th new space. Divided-power
/// outputs are resolved to polynomial only when `assert_polynomial` is set
/// and every generator sits in even degree; otherwise they stay divided
/// power and a further step fails with `UnresolvedExtension`.
pub fn bss_iterate(
    start: &TowerResult,
    steps: usize,
    component_ranks: &[u64],
    assert_polynomial: bool,
) -> Result<Vec<TowerResult>> {
    if steps == 0 {
        return Err(Error::InvalidParameter(
            "bss_iterate needs at least one step".into(),
        ));
    }
    if component_ranks.len() < steps {
        return Err(Error::InvalidParameter(format!(
            "{steps} steps need {steps} component ranks, got {}",
            component_ranks.len()
        )));
    }
    let mut table = start
        .table
        .clone()
        .ok_or_else(|| Error::InvalidParameter("start has no generator table".into()))?;
    let mut space = start.space;
    let mut out = Vec::with_capacity(steps);
    for &rank in &component_ranks[..steps] {
        table = table.tor_suspend(rank)?;
        if table.kind() == AlgebraKind::DividedPower
            && assert_polynomial
            && table.parity_check().all_even
        {
            table = table.resolve_extensions(true)?;
        }
        space.index += 1;
        out.push(TowerResult::from_table(
            space,
            table.clone(),
            Provenance::BssIteration,
        ));
    }
    Ok(out)
}

/// Quotient of a short exact sequence of connected Hopf algebras:
/// `middle / sub`, rejected if any dimension comes out negative.
pub fn ses_quotient(middle: &TruncatedSeries, sub: &TruncatedSeries) -> Result<TruncatedSeries> {
    for s in [middle, sub] {
        if !s.coefficient(0)?.eq(&num_bigint::BigInt::from(1)) {
            return Err(Error::InvalidParameter(
                "short exact sequence terms must have constant term 1".into(),
            ));
        }
    }
    let q = middle.div(sub)?;
    match q.check_nonnegative() {
        Ok(()) => Ok(q),
        Err(degree) => Err(Error::NegativeDimension { degree }),
    }
}

/// `H_*(BoP_i) = H_*(F_i) ⊗ H_*(bo_i)` for `i < 6`. The table is present
/// when both factors have the same kind.
pub fn bop_product(index: i32, truncation: usize) -> Result<TowerResult> {
    let space = SpaceRef::new(SpectrumId::BoP, index);
    if index >= 6 {
        return Err(Error::UnsupportedSpace {
            space,
            reason: "the F x bo product form holds for i < 6".into(),
        });
    }
    let f = rank_rule_homology(SpaceRef::new(SpectrumId::F, index), truncation)?;
    let bo = bo_space_homology(index, truncation)?;
    let series = f.poincare_series().mul(&bo.poincare_series())?;
    let table = match f.tensor(&bo) {
        Ok(t) => Some(t),
        Err(Error::InvalidKind { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(TowerResult {
        space,
        table,
        series,
        provenance: Provenance::Product,
    })
}

/// `H_*(BoP_i)` for `2 ≤ i ≤ i_max`. The bases `i = 2, 3` are the product
/// forms; above that each `H(BoP_{i+2})` is the quotient of `H(BP̄_i)` by
/// `H(BoP_i)`, with generator kind fixed by the parity of the index.
pub fn bop_tower(i_max: i32, truncation: usize) -> Result<Vec<TowerResult>> {
    if i_max < 2 {
        return Err(Error::InvalidParameter("bop_tower needs i_max >= 2".into()));
    }
    let mut out: Vec<TowerResult> = Vec::new();
    for i in 2..=i_max {
        let result = if i <= 3 {
            bop_product(i, truncation)?
        } else {
            let below = &out[(i - 4) as usize];
            let bpbar = rank_rule_homology(SpaceRef::new(SpectrumId::BPbar, i - 2), truncation)?;
            let series = ses_quotient(&bpbar.poincare_series(), &below.series)?;
            let table = GeneratorTable::extract_generators(&series, AlgebraKind::for_index(i))?;
            TowerResult {
                space: SpaceRef::new(SpectrumId::BoP, i),
                table: Some(table),
                series,
                provenance: Provenance::SesSolved,
            }
        };
        out.push(result);
    }
    Ok(out)
}

/// `H_*(BoP_i)`: the product form below 2, the solved tower from 2 on.
pub fn bop_homology(index: i32, truncation: usize) -> Result<TowerResult> {
    if index < 2 {
        return bop_product(index, truncation);
    }
    Ok(bop_tower(index, truncation)?
        .pop()
        .expect("tower is non-empty for i >= 2"))
}

/// Spectrum profiles feeding the negative-tower check; swappable so a
/// corrupted profile can be injected.
#[derive(Debug, Clone)]
pub struct TowerInputs {
    pub f: HomotopyProfile,
    pub x: HomotopyProfile,
}

impl TowerInputs {
    pub fn catalog(truncation: usize) -> Result<Self> {
        Ok(Self {
            f: homotopy_profile(SpectrumId::F, truncation)?,
            x: homotopy_profile(SpectrumId::X, truncation)?,
        })
    }
}

/// Checks `series(X_i) = series(F_i) · series(F_{i+2})` for `i` in
/// `from..=to` (`to ≤ 6`).
pub fn verify_negative_tower(
    from: i32,
    to: i32,
    truncation: usize,
    inputs: Option<&TowerInputs>,
) -> Result<VerificationReport> {
    if to > 6 || from > to {
        return Err(Error::InvalidParameter(format!(
            "negative tower range {from}..={to} must satisfy from <= to <= 6"
        )));
    }
    let owned;
    let inputs = match inputs {
        Some(i) => i,
        None => {
            owned = TowerInputs::catalog(profile_truncation(from, truncation))?;
            &owned
        }
    };
    let mut report = VerificationReport::new("negative-tower")
        .param("from", from)
        .param("to", to)
        .param("max_degree", truncation);
    for i in from..=to {
        let f_kind = |j: i32| rank_rule_kind(SpaceRef::new(SpectrumId::F, j));
        let x = rank_rule_from_profile(&inputs.x, i, AlgebraKind::for_index(i), truncation)?;
        let f_lo = rank_rule_from_profile(&inputs.f, i, f_kind(i)?, truncation)?;
        let f_hi = rank_rule_from_profile(&inputs.f, i + 2, f_kind(i + 2)?, truncation)?;
        let product = f_lo.poincare_series().mul(&f_hi.poincare_series())?;
        report.record(
            format!("i={i}"),
            x.poincare_series().first_difference(&product),
        );
    }
    Ok(report)
}

/// Checks the solved `BoP` tower: generator counts exist, parity matches the
/// index, `series(BP̄_i) = series(BoP_i) · series(BoP_{i+2})`, the recurrence
/// agrees with `F_i ⊗ bo_i` at `i = 4, 5`, and `BoP_2` has a single class in
/// degrees `≤ 2`.
pub fn verify_bop_tower(i_max: i32, truncation: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("bop-tower")
        .param("i_max", i_max)
        .param("max_degree", truncation);
    let tower = match bop_tower(i_max, truncation) {
        Ok(t) => t,
        Err(Error::NegativeDimension { degree }) => {
            report.record("extraction", Some(degree));
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    for r in &tower {
        let i = r.space.index;
        let table = r.table.as_ref().expect("i >= 2 tables are present");
        let parity = table.parity_check();
        let ok = if i % 2 == 0 {
            parity.all_even
        } else {
            parity.all_odd || table.total_generators() == 0
        };
        let bad = (!ok).then(|| {
            table
                .degrees()
                .into_iter()
                .find(|d| (d % 2 == 0) != (i % 2 == 0))
                .unwrap_or(0)
        });
        report.record(format!("parity BoP_{i}"), bad);
        report.record(
            format!("table matches series BoP_{i}"),
            table.poincare_series().first_difference(&r.series),
        );
    }
    for pair in tower.windows(3) {
        let (lo, hi) = (&pair[0], &pair[2]);
        let i = lo.space.index;
        let bpbar = rank_rule_homology(SpaceRef::new(SpectrumId::BPbar, i), truncation)?;
        let product = lo.series.mul(&hi.series)?;
        report.record(
            format!("reconstruct BPbar_{i}"),
            bpbar.poincare_series().first_difference(&product),
        );
    }
    for i in [4, 5] {
        if i <= i_max {
            let product = bop_product(i, truncation)?;
            let solved = &tower[(i - 2) as usize];
            report.record(
                format!("recurrence vs F_{i} x bo_{i}"),
                solved.series.first_difference(&product.series),
            );
        }
    }
    let base = &tower[0].series;
    let bpbar2 =
        rank_rule_homology(SpaceRef::new(SpectrumId::BPbar, 2), truncation)?.poincare_series();
    let low_ok = (1..=truncation.min(2)).find(|&d| {
        let expected = num_bigint::BigInt::from(u8::from(d == 2));
        base.coeff_or_zero(d) != expected || bpbar2.coeff_or_zero(d) != expected
    });
    report.record("H_2(BoP_2) = H_2(BPbar_2) = Z/2", low_ok);
    Ok(report)
}

/// Rank rule against iterated bar spectral sequences on `from..=to`. The
/// iteration starts from the catalogued table for `bu` and from the rank
/// rule at `from` otherwise.
pub fn verify_oracle_equivalence(
    spectrum: SpectrumId,
    from: i32,
    to: i32,
    truncation: usize,
) -> Result<VerificationReport> {
    if from >= to {
        return Err(Error::InvalidParameter("need from < to".into()));
    }
    let space = SpaceRef::new(spectrum, from);
    let (start, provenance) = match spectrum {
        SpectrumId::Bu if from <= 2 => (bu_space_homology(from, truncation)?, Provenance::Catalog),
        _ => (rank_rule_homology(space, truncation)?, Provenance::RankRule),
    };
    let profile = homotopy_profile(spectrum, profile_truncation(from, truncation))?;
    let ranks = ((from + 1)..=to)
        .map(|i| component_rank(&profile, i))
        .collect::<Result<Vec<_>>>()?;
    let steps = (to - from) as usize;
    let start = TowerResult::from_table(space, start, provenance);
    let iterated = bss_iterate(&start, steps, &ranks, true)?;
    let mut report = VerificationReport::new("oracle-equivalence")
        .param("spectrum", spectrum)
        .param("from", from)
        .param("to", to)
        .param("max_degree", truncation);
    for r in iterated {
        let direct = rank_rule_homology(r.space, truncation)?;
        let table = r.table.expect("iteration keeps tables");
        let failure = if table == direct {
            None
        } else {
            Some(
                table
                    .poincare_series()
                    .first_difference(&direct.poincare_series())
                    .unwrap_or(0),
            )
        };
        report.record(r.space.to_string(), failure);
    }
    Ok(report)
}

/// One delooping step per classical table: exact table equality where the
/// target is the Tor output on the nose, series equality where the target
/// is even (divided power against polynomial or even exterior).
pub fn verify_bo_regression(truncation: usize) -> Result<VerificationReport> {
    let n = truncation;
    let mut report = VerificationReport::new("bo-regression").param("max_degree", n);
    let bo_profile = homotopy_profile(SpectrumId::Bo, profile_truncation(-8, n))?;
    type Lookup = fn(i32, usize) -> Result<GeneratorTable>;
    let chains: [(&str, Lookup, bool); 2] = [
        ("bo", bo_space_homology, false),
        ("KO", ko_space_homology, true),
    ];
    for (name, lookup, periodic) in chains {
        for i in [2, 3, 4, 5] {
            let source = lookup(i, n)?;
            let target = lookup(i + 1, n)?;
            // KO_i has rank π_{-i}(KO) components, bo_i only the connective ones
            let rank = if periodic {
                target.component_rank()
            } else {
                component_rank(&bo_profile, i + 1)?
            };
            let stepped = source.tor_suspend(rank)?;
            let label = format!("{name}_{i} -> {name}_{}", i + 1);
            let failure = if stepped.kind() == AlgebraKind::DividedPower {
                stepped
                    .poincare_series()
                    .first_difference(&target.poincare_series())
            } else if stepped == target {
                None
            } else {
                Some(
                    stepped
                        .poincare_series()
                        .first_difference(&target.poincare_series())
                        .unwrap_or(0),
                )
            };
            report.record(label, failure);
            if stepped.kind() == AlgebraKind::DividedPower
                && target.kind() == AlgebraKind::Polynomial
            {
                let resolved = stepped.resolve_extensions(true)?;
                let failure = (resolved != target).then(|| {
                    resolved
                        .poincare_series()
                        .first_difference(&target.poincare_series())
                        .unwrap_or(0)
                });
                report.record(format!("{name}_{} resolved polynomial", i + 1), failure);
            }
        }
    }
    for i in [0, 1] {
        let stepped =
            bu_space_homology(i, n)?.tor_suspend(bu_space_homology(i + 1, n)?.component_rank())?;
        let stepped = if stepped.kind() == AlgebraKind::DividedPower {
            stepped.resolve_extensions(true)?
        } else {
            stepped
        };
        let target = bu_space_homology(i + 1, n)?;
        let failure = (stepped != target).then(|| {
            stepped
                .poincare_series()
                .first_difference(&target.poincare_series())
                .unwrap_or(0)
        });
        report.record(format!("bu_{i} -> bu_{}", i + 1), failure);
    }
    Ok(report)
}

/// `H_*(bo_2) → H_*(bu_2) → H_*(bo_4)` is short exact.
pub fn verify_prop46(truncation: usize) -> Result<VerificationReport> {
    let n = truncation;
    let bu2 = bu_space_homology(2, n)?.poincare_series();
    let bo2 = bo_space_homology(2, n)?.poincare_series();
    let bo4 = bo_space_homology(4, n)?.poincare_series();
    let mut report = VerificationReport::new("prop46").param("max_degree", n);
    report.record("bu_2 = bo_2 x bo_4", bu2.first_difference(&bo2.mul(&bo4)?));
    let failure = match ses_quotient(&bu2, &bo2) {
        Ok(q) => q.first_difference(&bo4),
        Err(Error::NegativeDimension { degree }) => Some(degree),
        Err(e) => return Err(e),
    };
    report.record("bu_2 / bo_2 = bo_4", failure);
    Ok(report)
}
