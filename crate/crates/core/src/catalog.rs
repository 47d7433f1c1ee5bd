//! Homotopy of the 2-local spectra in play, and the classical homology
//! tables of the spaces in the Omega spectra for `bo`, `KO` and `bu`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraKind, GeneratorTable};
use crate::error::{Error, Result};
use crate::series::{Factor, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum SpectrumId {
    BP,
    /// `∏_{a≥0} Σ^{8a} BP`.
    BPbar,
    /// `BP⟨k⟩`, `k ≥ 1`.
    BPn(u32),
    Bu,
    Bo,
    BoP,
    /// Fiber of `BoP → bo`.
    F,
    /// Fiber of `BP̄ → bu`.
    X,
}

impl SpectrumId {
    pub fn bpn(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("BP<k> needs k >= 1".into()));
        }
        Ok(SpectrumId::BPn(k))
    }

    /// Every spectrum whose homotopy is torsion-free and concentrated in
    /// even degrees.
    pub fn is_torsion_free_even(self) -> bool {
        !matches!(self, SpectrumId::Bo | SpectrumId::BoP)
    }
}

impl fmt::Display for SpectrumId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumId::BP => f.write_str("BP"),
            SpectrumId::BPbar => f.write_str("BPbar"),
            SpectrumId::BPn(k) => write!(f, "BP<{k}>"),
            SpectrumId::Bu => f.write_str("bu"),
            SpectrumId::Bo => f.write_str("bo"),
            SpectrumId::BoP => f.write_str("BoP"),
            SpectrumId::F => f.write_str("F"),
            SpectrumId::X => f.write_str("X"),
        }
    }
}

impl FromStr for SpectrumId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let id = match s {
            "BP" => SpectrumId::BP,
            "BPbar" => SpectrumId::BPbar,
            "bu" => SpectrumId::Bu,
            "bo" => SpectrumId::Bo,
            "BoP" => SpectrumId::BoP,
            "F" => SpectrumId::F,
            "X" => SpectrumId::X,
            other => {
                let inner = other
                    .strip_prefix("BP<")
                    .and_then(|r| r.strip_suffix('>'))
                    .or_else(|| other.strip_prefix("BPn"))
                    .ok_or_else(|| {
                        Error::InvalidParameter(format!("unknown spectrum {other:?}"))
                    })?;
                let k = inner.parse().map_err(|_| {
                    Error::InvalidParameter(format!("bad BP<k> index in {other:?}"))
                })?;
                SpectrumId::bpn(k)?
            }
        };
        Ok(id)
    }
}

impl From<SpectrumId> for String {
    fn from(id: SpectrumId) -> Self {
        id.to_string()
    }
}

impl TryFrom<String> for SpectrumId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// A space `Z_i` in the Omega spectrum of `spectrum`: `π_d(Z_i) = π_{d-i}(Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceRef {
    pub spectrum: SpectrumId,
    pub index: i32,
}

impl SpaceRef {
    pub fn new(spectrum: SpectrumId, index: i32) -> Self {
        Self { spectrum, index }
    }
}

impl fmt::Display for SpaceRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.spectrum, self.index)
    }
}

/// `π_*` of a 2-local spectrum: free `Z_(2)` ranks plus `Z/2` summands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyProfile {
    pub free_ranks: TruncatedSeries,
    pub torsion_z2: BTreeMap<usize, u64>,
}

impl HomotopyProfile {
    pub fn torsion_free(free_ranks: TruncatedSeries) -> Self {
        Self {
            free_ranks,
            torsion_z2: BTreeMap::new(),
        }
    }

    pub fn truncation(&self) -> usize {
        self.free_ranks.truncation()
    }

    pub fn torsion(&self, degree: usize) -> u64 {
        self.torsion_z2.get(&degree).copied().unwrap_or(0)
    }
}

/// `|v_j| = 2(2^j - 1)`.
pub fn v_degree(j: u32) -> usize {
    2 * ((1usize << j) - 1)
}

/// `1/(1 - x^{|v_j|})` for `j ≥ 1`, ascending, unbounded.
fn v_factors(from: u32) -> impl Iterator<Item = Factor> {
    (from..usize::BITS - 2).map(|j| Factor::inverse_one_minus(v_degree(j)))
}

fn bo_free(n: usize) -> TruncatedSeries {
    TruncatedSeries::product_over([Factor::inverse_one_minus(4)], n).expect("positive degree")
}

fn bo_torsion(n: usize) -> BTreeMap<usize, u64> {
    (0..=n)
        .filter(|d| matches!(d % 8, 1 | 2))
        .map(|d| (d, 1))
        .collect()
}

pub fn homotopy_profile(spectrum: SpectrumId, truncation: usize) -> Result<HomotopyProfile> {
    let n = truncation;
    let product = |fs: Vec<Factor>| TruncatedSeries::product_over(fs, n);
    let profile = match spectrum {
        SpectrumId::BP => {
            HomotopyProfile::torsion_free(TruncatedSeries::product_over(v_factors(1), n)?)
        }
        SpectrumId::BPbar => {
            let bp = TruncatedSeries::product_over(v_factors(1), n)?;
            HomotopyProfile::torsion_free(bp.mul_factor(Factor::inverse_one_minus(8))?)
        }
        SpectrumId::BPn(k) => {
            if k == 0 {
                return Err(Error::InvalidParameter("BP<k> needs k >= 1".into()));
            }
            HomotopyProfile::torsion_free(TruncatedSeries::product_over(
                v_factors(1).take(k as usize),
                n,
            )?)
        }
        SpectrumId::Bu => {
            HomotopyProfile::torsion_free(product(vec![Factor::inverse_one_minus(2)])?)
        }
        SpectrumId::Bo => HomotopyProfile {
            free_ranks: bo_free(n),
            torsion_z2: bo_torsion(n),
        },
        SpectrumId::BoP => HomotopyProfile {
            free_ranks: bop_free(n)?,
            torsion_z2: bo_torsion(n),
        },
        SpectrumId::F => HomotopyProfile::torsion_free(bop_free(n)?.sub(&bo_free(n))?),
        SpectrumId::X => {
            let bpbar = homotopy_profile(SpectrumId::BPbar, n)?.free_ranks;
            let bu = homotopy_profile(SpectrumId::Bu, n)?.free_ranks;
            HomotopyProfile::torsion_free(bpbar.sub(&bu)?)
        }
    };
    Ok(profile)
}

/// `1/((1-x^8)(1-x^4)) · ∏_{j>1} 1/(1-x^{|v_j|})`.
fn bop_free(n: usize) -> Result<TruncatedSeries> {
    let factors = [Factor::inverse_one_minus(4)]
        .into_iter()
        .chain(v_factors(2).take(1))
        .chain([Factor::inverse_one_minus(8)])
        .chain(v_factors(3));
    TruncatedSeries::product_over(factors, n)
}

fn every(step: usize, start: usize) -> impl Iterator<Item = usize> {
    (0..).map(move |i| start + step * i)
}

/// `H_*(KO_i)`, 8-periodic in `i`.
pub fn ko_space_homology(index: i32, truncation: usize) -> Result<GeneratorTable> {
    use AlgebraKind::{Exterior, Polynomial};
    let n = truncation;
    let table = match index.rem_euclid(8) {
        // Z/2[Z] ⊗ P[x_i], i > 0
        0 => GeneratorTable::from_degrees(Polynomial, every(1, 1), n)?.with_component_rank(1),
        1 => GeneratorTable::from_degrees(Polynomial, every(2, 1), n)?,
        2 => GeneratorTable::from_degrees(Polynomial, every(4, 2), n)?,
        3 => GeneratorTable::from_degrees(Exterior, every(4, 3), n)?,
        4 => GeneratorTable::from_degrees(Polynomial, every(4, 4), n)?.with_component_rank(1),
        // E(x_1) ⊗ E[x_{4i+1}]
        5 => GeneratorTable::from_degrees(Exterior, every(4, 1), n)?,
        // E(x_{2^k}) ⊗ E[x_{2i}], 2i ≠ 2^k: one generator in every even degree
        6 => GeneratorTable::from_degrees(Exterior, every(2, 2), n)?,
        _ => GeneratorTable::from_degrees(Exterior, every(1, 1), n)?,
    };
    Ok(table)
}

/// `H_*(bo_i)`. Below 4 the space is `KO_i`; `bo_4`, `bo_5` and `bo_6` are
/// the connective tables. Nothing at or above 7 is catalogued.
pub fn bo_space_homology(index: i32, truncation: usize) -> Result<GeneratorTable> {
    use AlgebraKind::{Exterior, Polynomial};
    let n = truncation;
    match index {
        i if i < 4 => ko_space_homology(i, n),
        4 => GeneratorTable::from_degrees(Polynomial, every(4, 4), n),
        5 => GeneratorTable::from_degrees(Exterior, every(4, 5), n),
        6 => {
            GeneratorTable::from_degrees(Exterior, every(2, 2).filter(|d| !d.is_power_of_two()), n)
        }
        i => Err(Error::UnsupportedSpace {
            space: SpaceRef::new(SpectrumId::Bo, i),
            reason: "connective bo spaces are catalogued only for i <= 6; use the KO tables".into(),
        }),
    }
}

/// `H_*(bu_i)`. For `i ≤ 2` the space is `Z × BU`, `U` or `BU`; higher
/// indices go through the rank rule.
pub fn bu_space_homology(index: i32, truncation: usize) -> Result<GeneratorTable> {
    use AlgebraKind::{Exterior, Polynomial};
    let n = truncation;
    match index {
        2 => GeneratorTable::from_degrees(Polynomial, every(2, 2), n),
        i if i < 2 && i.rem_euclid(2) == 0 => {
            Ok(GeneratorTable::from_degrees(Polynomial, every(2, 2), n)?.with_component_rank(1))
        }
        i if i < 2 => GeneratorTable::from_degrees(Exterior, every(2, 1), n),
        i => crate::tower::rank_rule_homology(SpaceRef::new(SpectrumId::Bu, i), n),
    }
}
