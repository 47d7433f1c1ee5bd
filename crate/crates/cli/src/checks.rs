use bop_core::catalog::SpectrumId;
use bop_core::conjecture;
use bop_core::report::timed;
use bop_core::splitting::{self, CTerm};
use bop_core::tower::{self, TowerInputs};
use bop_core::{Result, TruncatedSeries, VerificationReport};
use clap::{Args, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    RhsOne,
    Bcb,
    Lemma61,
    Irreducibility,
    IndexBijection,
    #[value(name = "wsw2-5")]
    Wsw25,
    Thm26Homotopy,
    Prop46,
    NegativeTower,
    BopTower,
    OracleEquivalence,
    BoRegression,
    ConjectureLimit,
    EpsilonPartition,
    FirstAppearance,
    Squares,
    ConjectureShape,
    All,
}

impl Check {
    /// Everything `all` runs, in order.
    const SUITE: [Check; 17] = [
        Check::RhsOne,
        Check::Bcb,
        Check::Lemma61,
        Check::Irreducibility,
        Check::IndexBijection,
        Check::Wsw25,
        Check::Thm26Homotopy,
        Check::Prop46,
        Check::NegativeTower,
        Check::BopTower,
        Check::OracleEquivalence,
        Check::BoRegression,
        Check::ConjectureLimit,
        Check::EpsilonPartition,
        Check::FirstAppearance,
        Check::Squares,
        Check::ConjectureShape,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Builds `C_s` without its `(1+x²)` factor.
    DropOnePlusX2,
    /// Adds one to the free rank of `F` in degree 5.
    CorruptF,
}

/// Per-check knobs; unset values fall back to the defaults below.
#[derive(Debug, Clone, Default, Args)]
pub struct CheckParams {
    /// Single s for bcb (default: every s in 2..=9).
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<i32>,
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<i32>,
    /// Spectrum for oracle-equivalence (default: BP and bu).
    #[arg(long)]
    pub spectrum: Option<String>,
    #[arg(long)]
    pub i_max: Option<i32>,
    #[arg(long)]
    pub k_max: Option<u32>,
    #[arg(long)]
    pub bound: Option<u64>,
    #[arg(long)]
    pub j_max: Option<u32>,
    #[arg(long)]
    pub n_max: Option<u64>,
    #[arg(long)]
    pub stable_from: Option<u64>,
    #[arg(long)]
    pub q_max: Option<u64>,
    #[arg(long)]
    pub j_bound: Option<u64>,
}

pub struct Context {
    pub max_degree: usize,
    pub fault: Option<Fault>,
}

impl Context {
    fn c_term(&self) -> CTerm {
        match self.fault {
            Some(Fault::DropOnePlusX2) => CTerm::DropOnePlusX2,
            _ => CTerm::Exact,
        }
    }

    /// `n` large enough for every degree `≤ N` of the conjectured series to
    /// have stabilised.
    pub fn default_n_max(&self) -> u64 {
        (self.max_degree as u64 / 4).max(64)
    }
}

pub fn run(check: Check, p: &CheckParams, ctx: &Context) -> Result<Vec<VerificationReport>> {
    if check == Check::All {
        let mut out = Vec::new();
        for c in Check::SUITE {
            out.extend(run(c, &CheckParams::default(), ctx)?);
        }
        // the fixed-window form of the limit statement
        let n = ctx.max_degree.min(64);
        out.push(timed(|| {
            conjecture::verify_conjecture_limit(n, 64, Some(16))
        })?);
        return Ok(out);
    }
    let n = ctx.max_degree;
    let report = timed(|| -> Result<VerificationReport> {
        match check {
            Check::RhsOne => splitting::verify_rhs_one(n, ctx.c_term()),
            Check::Bcb => {
                let range = p.s.map_or(2..=9, |s| s..=s);
                let mut r = VerificationReport::new("bcb").param("max_degree", n);
                r = r.param("s", format!("{}..={}", range.start(), range.end()));
                for s in range {
                    let sub = splitting::verify_bcb(s, n, ctx.c_term())?;
                    r.record(format!("s={s}"), sub.first_failure_degree);
                }
                Ok(r)
            }
            Check::Lemma61 => splitting::verify_lemma61(n),
            Check::Irreducibility => splitting::verify_irreducibility(p.k_max.unwrap_or(12)),
            Check::IndexBijection => splitting::verify_index_bijection(p.bound.unwrap_or(1 << 13)),
            Check::Wsw25 => splitting::verify_wsw2_5(p.j_max.unwrap_or(6), n),
            Check::Thm26Homotopy => splitting::verify_thm26_homotopy(n),
            Check::Prop46 => tower::verify_prop46(n),
            Check::NegativeTower => {
                let from = p.from.unwrap_or(-8);
                let to = p.to.unwrap_or(5);
                let inputs = match ctx.fault {
                    Some(Fault::CorruptF) => Some(corrupted_inputs(from, n)?),
                    _ => None,
                };
                tower::verify_negative_tower(from, to, n, inputs.as_ref())
            }
            Check::BopTower => tower::verify_bop_tower(p.i_max.unwrap_or(12), n),
            Check::OracleEquivalence => {
                let spectra = match &p.spectrum {
                    Some(s) => vec![s.parse::<SpectrumId>()?],
                    None => vec![SpectrumId::BP, SpectrumId::Bu],
                };
                let (from, to) = (p.from.unwrap_or(-6), p.to.unwrap_or(6));
                let mut r = VerificationReport::new("oracle-equivalence")
                    .param("from", from)
                    .param("to", to)
                    .param("max_degree", n);
                for s in spectra {
                    let sub = tower::verify_oracle_equivalence(s, from, to, n)?;
                    for case in sub.cases {
                        r.record(format!("{s}: {}", case.label), case.first_failure_degree);
                    }
                }
                Ok(r)
            }
            Check::BoRegression => tower::verify_bo_regression(n),
            Check::ConjectureLimit => conjecture::verify_conjecture_limit(
                n,
                p.n_max.unwrap_or_else(|| ctx.default_n_max()),
                p.stable_from,
            ),
            Check::EpsilonPartition => conjecture::verify_epsilon_partition(p.n_max.unwrap_or(64)),
            Check::FirstAppearance => conjecture::verify_first_appearance(p.q_max.unwrap_or(64)),
            Check::Squares => conjecture::verify_squares(p.j_bound.unwrap_or(1 << 12)),
            Check::ConjectureShape => conjecture::verify_conjecture_shape(p.n_max.unwrap_or(64), n),
            Check::All => unreachable!("handled above"),
        }
    })?;
    Ok(vec![report])
}

fn corrupted_inputs(from: i32, n: usize) -> Result<TowerInputs> {
    let mut inputs = TowerInputs::catalog(tower::profile_truncation(from.min(0), n))?;
    let mut coeffs = inputs.f.free_ranks.clone().into_coefficients();
    if let Some(c) = coeffs.get_mut(5) {
        *c += 1;
    }
    inputs.f.free_ranks = TruncatedSeries::from_coefficients(coeffs)?;
    Ok(inputs)
}
