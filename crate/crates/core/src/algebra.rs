//! Free graded-commutative algebras presented by generator counts.
//!
//! A [`GeneratorTable`] records how many generators an algebra has in each
//! positive degree together with its [`AlgebraKind`]. Components (degree-0
//! classes from `π_0`) are kept apart in `component_rank`: the group ring on
//! a free `π_0` is treated as a polynomial algebra on degree-0 generators,
//! which after one delooping contribute exterior classes in degree 1.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{Factor, FactorForm, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraKind {
    Polynomial,
    Exterior,
    DividedPower,
    /// Even-degree algebra whose multiplicative extensions were not asserted.
    EvenUnresolved,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraKind::Polynomial => "polynomial",
            AlgebraKind::Exterior => "exterior",
            AlgebraKind::DividedPower => "divided_power",
            AlgebraKind::EvenUnresolved => "even_unresolved",
        })
    }
}

impl AlgebraKind {
    /// Polynomial for even space index, exterior for odd.
    pub fn for_index(index: i32) -> Self {
        if index.rem_euclid(2) == 0 {
            AlgebraKind::Polynomial
        } else {
            AlgebraKind::Exterior
        }
    }

    fn factor_form(self) -> FactorForm {
        match self {
            AlgebraKind::Exterior => FactorForm::OnePlus,
            _ => FactorForm::InverseOneMinus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableWire", into = "TableWire")]
pub struct GeneratorTable {
    kind: AlgebraKind,
    counts: BTreeMap<usize, u64>,
    component_rank: u64,
    truncation: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityReport {
    pub all_even: bool,
    pub all_odd: bool,
    /// Degrees that break the majority parity; every degree when mixed.
    pub offending: Vec<usize>,
}

impl GeneratorTable {
    pub fn empty(kind: AlgebraKind, truncation: usize) -> Self {
        Self {
            kind,
            counts: BTreeMap::new(),
            component_rank: 0,
            truncation,
        }
    }

    /// Table from explicit `(degree, count)` pairs. Degrees must lie in
    /// `1..=N`; zero counts are dropped and repeated degrees accumulate.
    pub fn from_counts<I>(
        kind: AlgebraKind,
        counts: I,
        component_rank: u64,
        truncation: usize,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, u64)>,
    {
        let mut table = Self::empty(kind, truncation);
        table.component_rank = component_rank;
        for (degree, c) in counts {
            if degree == 0 {
                return Err(Error::InvalidParameter(
                    "degree-0 generators belong in component_rank".into(),
                ));
            }
            if degree > truncation {
                return Err(Error::Truncation { degree, truncation });
            }
            table.add_count(degree, c)?;
        }
        Ok(table)
    }

    /// One generator in each degree of `degrees`, which must be
    /// non-decreasing; anything past the truncation is ignored.
    pub fn from_degrees<I>(kind: AlgebraKind, degrees: I, truncation: usize) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut table = Self::empty(kind, truncation);
        for d in degrees.into_iter().take_while(|&d| d <= truncation) {
            if d == 0 {
                return Err(Error::InvalidParameter(
                    "degree-0 generators belong in component_rank".into(),
                ));
            }
            table.add_count(d, 1)?;
        }
        Ok(table)
    }

    pub fn with_component_rank(mut self, rank: u64) -> Self {
        self.component_rank = rank;
        self
    }

    fn add_count(&mut self, degree: usize, c: u64) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let slot = self.counts.entry(degree).or_insert(0);
        *slot = slot.checked_add(c).ok_or(Error::CountOverflow { degree })?;
        Ok(())
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn component_rank(&self) -> u64 {
        self.component_rank
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn count(&self, degree: usize) -> u64 {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    /// `(degree, count)` in ascending degree, positive counts only.
    pub fn counts(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().map(|(&d, &c)| (d, c))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.counts.keys().copied().collect()
    }

    pub fn total_generators(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Series of the base-point component; `component_rank` adds no factor.
    pub fn poincare_series(&self) -> TruncatedSeries {
        let form = self.kind.factor_form();
        TruncatedSeries::product_over(
            self.counts().map(|(d, c)| Factor::new(d, c, form)),
            self.truncation,
        )
        .expect("stored degrees are positive and ascending")
    }

    /// One step of the collapsing bar spectral sequence, at the level of
    /// generators: polynomial becomes exterior and exterior becomes divided
    /// power, each generator moving up one degree. Components contribute
    /// generators in degree 1.
    pub fn tor_suspend(&self, next_component_rank: u64) -> Result<Self> {
        let kind = match self.kind {
            AlgebraKind::Polynomial => AlgebraKind::Exterior,
            AlgebraKind::Exterior => AlgebraKind::DividedPower,
            other => return Err(Error::UnresolvedExtension { kind: other }),
        };
        let mut out = Self::empty(kind, self.truncation);
        out.component_rank = next_component_rank;
        if self.truncation >= 1 {
            out.add_count(1, self.component_rank)?;
        }
        for (d, c) in self.counts() {
            if d < self.truncation {
                out.add_count(d + 1, c)?;
            }
        }
        Ok(out)
    }

    /// Settles the squaring extensions of a divided-power table: either the
    /// caller asserts the algebra is polynomial, or the kind is left as
    /// `even_unresolved`. The series never changes.
    pub fn resolve_extensions(&self, assert_polynomial: bool) -> Result<Self> {
        if self.kind != AlgebraKind::DividedPower {
            return Err(Error::InvalidKind {
                expected: "divided_power",
                found: self.kind,
            });
        }
        let mut out = self.clone();
        out.kind = if assert_polynomial {
            AlgebraKind::Polynomial
        } else {
            AlgebraKind::EvenUnresolved
        };
        Ok(out)
    }

    /// Reads generator counts off a series by peeling factors in ascending
    /// degree. Fails with `NegativeDimension` when the series is not the
    /// series of a free algebra of the given kind.
    pub fn extract_generators(series: &TruncatedSeries, kind: AlgebraKind) -> Result<Self> {
        let undo = match kind {
            AlgebraKind::Polynomial => FactorForm::OneMinus,
            AlgebraKind::Exterior => FactorForm::InverseOnePlus,
            other => {
                return Err(Error::InvalidKind {
                    expected: "polynomial or exterior",
                    found: other,
                })
            }
        };
        if !series.coefficients()[0].is_one() {
            return Err(Error::InvalidParameter(
                "series must have constant coefficient 1".into(),
            ));
        }
        let n = series.truncation();
        let mut table = Self::empty(kind, n);
        let mut rest = series.clone();
        for d in 1..=n {
            let c = &rest.coefficients()[d];
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                return Err(Error::NegativeDimension { degree: d });
            }
            let c = c.to_u64().ok_or(Error::CountOverflow { degree: d })?;
            table.add_count(d, c)?;
            rest = rest.mul_factor(Factor::new(d, c, undo))?;
        }
        Ok(table)
    }

    /// Tensor product of two tables of the same kind.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.kind != other.kind {
            return Err(Error::InvalidKind {
                expected: kind_name(self.kind),
                found: other.kind,
            });
        }
        if self.truncation != other.truncation {
            return Err(Error::TruncationMismatch {
                left: self.truncation,
                right: other.truncation,
            });
        }
        let mut out = self.clone();
        for (d, c) in other.counts() {
            out.add_count(d, c)?;
        }
        out.component_rank = self
            .component_rank
            .checked_add(other.component_rank)
            .ok_or(Error::CountOverflow { degree: 0 })?;
        Ok(out)
    }

    pub fn parity_check(&self) -> ParityReport {
        let degrees = self.degrees();
        let all_even = degrees.iter().all(|d| d % 2 == 0);
        let all_odd = !degrees.is_empty() && degrees.iter().all(|d| d % 2 == 1);
        // a mixed table reports every degree
        let offending = if all_even || all_odd {
            Vec::new()
        } else {
            degrees
        };
        ParityReport {
            all_even,
            all_odd,
            offending,
        }
    }
}

fn kind_name(kind: AlgebraKind) -> &'static str {
    match kind {
        AlgebraKind::Polynomial => "polynomial",
        AlgebraKind::Exterior => "exterior",
        AlgebraKind::DividedPower => "divided_power",
        AlgebraKind::EvenUnresolved => "even_unresolved",
    }
}

#[derive(Serialize, Deserialize)]
struct GeneratorWire {
    degree: usize,
    count: u64,
}

#[derive(Serialize, Deserialize)]
struct TableWire {
    kind: AlgebraKind,
    component_rank: u64,
    generators: Vec<GeneratorWire>,
    truncation: usize,
}

impl From<GeneratorTable> for TableWire {
    fn from(t: GeneratorTable) -> Self {
        TableWire {
            kind: t.kind,
            component_rank: t.component_rank,
            generators: t
                .counts()
                .map(|(degree, count)| GeneratorWire { degree, count })
                .collect(),
            truncation: t.truncation,
        }
    }
}

impl TryFrom<TableWire> for GeneratorTable {
    type Error = Error;

    fn try_from(w: TableWire) -> Result<Self> {
        GeneratorTable::from_counts(
            w.kind,
            w.generators.into_iter().map(|g| (g.degree, g.count)),
            w.component_rank,
            w.truncation,
        )
    }
}
