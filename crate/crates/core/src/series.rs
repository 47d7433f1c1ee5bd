//! Exact truncated power series in one variable `x`.
//!
//! A [`TruncatedSeries`] of truncation degree `N` stores exactly `N + 1`
//! arbitrary-precision integer coefficients. Every Poincaré series in the
//! crate is one of these. Binary operations require equal truncation
//! degrees; nothing is ever rounded.
//!
//! Products of the shape `∏ (1 ± x^d)^{±c}` are applied in place, one factor
//! at a time, so infinite families only cost as much as their factors of
//! degree `≤ N`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

/// Shape of one factor in a product family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorForm {
    /// `1 / (1 - x^d)`, a polynomial generator.
    InverseOneMinus,
    /// `1 + x^d`, an exterior generator.
    OnePlus,
    /// `1 - x^d`.
    OneMinus,
    /// `1 / (1 + x^d)`.
    InverseOnePlus,
}

/// `form(d)^multiplicity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factor {
    pub degree: usize,
    pub multiplicity: u64,
    pub form: FactorForm,
}

impl Factor {
    pub fn new(degree: usize, multiplicity: u64, form: FactorForm) -> Self {
        Self {
            degree,
            multiplicity,
            form,
        }
    }

    pub fn inverse_one_minus(degree: usize) -> Self {
        Self::new(degree, 1, FactorForm::InverseOneMinus)
    }

    pub fn one_plus(degree: usize) -> Self {
        Self::new(degree, 1, FactorForm::OnePlus)
    }

    pub fn one_minus(degree: usize) -> Self {
        Self::new(degree, 1, FactorForm::OneMinus)
    }

    pub fn inverse_one_plus(degree: usize) -> Self {
        Self::new(degree, 1, FactorForm::InverseOnePlus)
    }
}

impl TruncatedSeries {
    pub fn zero(truncation: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); truncation + 1],
        }
    }

    pub fn one(truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Builds `Σ c x^d` from `(d, c)` terms; repeated degrees accumulate.
    pub fn from_terms<I, C>(terms: I, truncation: usize) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, C)>,
        C: Into<BigInt>,
    {
        let mut s = Self::zero(truncation);
        for (degree, c) in terms {
            if degree > truncation {
                return Err(Error::Truncation { degree, truncation });
            }
            s.coeffs[degree] += c.into();
        }
        Ok(s)
    }

    /// `c x^d`, or zero when `d > N`.
    pub fn monomial(degree: usize, c: impl Into<BigInt>, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        if degree <= truncation {
            s.coeffs[degree] = c.into();
        }
        s
    }

    /// Wraps a coefficient vector; its length fixes the truncation degree.
    pub fn from_coefficients(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter(
                "a series needs at least the constant coefficient".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coefficient(&self, degree: usize) -> Result<&BigInt> {
        self.coeffs.get(degree).ok_or(Error::Truncation {
            degree,
            truncation: self.truncation(),
        })
    }

    /// Coefficient at `degree`, zero beyond the truncation.
    pub fn coeff_or_zero(&self, degree: usize) -> BigInt {
        self.coeffs.get(degree).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::TruncationMismatch {
                left: self.truncation(),
                right: other.truncation(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { coeffs })
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Truncated convolution.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let n = self.truncation();
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Self { coeffs: out })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x^d`, discarding everything pushed past the truncation.
    pub fn shift(&self, d: usize) -> Self {
        let n = self.truncation();
        let mut out = Self::zero(n);
        if d <= n {
            out.coeffs[d..].clone_from_slice(&self.coeffs[..=n - d]);
        }
        out
    }

    /// `x^d · self` truncated at `truncation`, which may exceed the input's:
    /// the input only needs to be known up to `truncation − d`.
    pub fn shift_to(&self, d: usize, truncation: usize) -> Result<Self> {
        let mut out = Self::zero(truncation);
        if d > truncation {
            return Ok(out);
        }
        let need = truncation - d;
        if need > self.truncation() {
            return Err(Error::Truncation {
                degree: need,
                truncation: self.truncation(),
            });
        }
        out.coeffs[d..].clone_from_slice(&self.coeffs[..=need]);
        Ok(out)
    }

    /// Same series at a smaller truncation degree.
    pub fn truncate(&self, truncation: usize) -> Result<Self> {
        if truncation > self.truncation() {
            return Err(Error::Truncation {
                degree: truncation,
                truncation: self.truncation(),
            });
        }
        Ok(Self {
            coeffs: self.coeffs[..=truncation].to_vec(),
        })
    }

    /// Multiplicative inverse up to degree `N`; needs a constant term of ±1.
    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if !(a0.is_one() || (-a0).is_one()) {
            return Err(Error::NotInvertible {
                constant: a0.to_string(),
            });
        }
        let negate = a0.is_negative();
        let n = self.truncation();
        let mut inv: Vec<BigInt> = Vec::with_capacity(n + 1);
        inv.push(a0.clone());
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += a * &inv[k - j];
                }
            }
            // a0 * b_k = -acc, and a0 = ±1
            inv.push(if negate { acc } else { -acc });
        }
        Ok(Self { coeffs: inv })
    }

    /// `self / divisor`, computed as `self * divisor^{-1}`.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        self.mul(&divisor.invert()?)
    }

    /// Multiplies by a single factor `form(d)^c`.
    pub fn mul_factor(&self, factor: Factor) -> Result<Self> {
        let mut out = self.clone();
        out.apply_factor(factor)?;
        Ok(out)
    }

    /// Truncated product of a factor family. Degrees must be non-decreasing;
    /// consumption stops at the first factor of degree `> N`.
    pub fn product_over<I>(factors: I, truncation: usize) -> Result<Self>
    where
        I: IntoIterator<Item = Factor>,
    {
        let mut s = Self::one(truncation);
        let mut previous = 0;
        for f in factors {
            if f.degree == 0 {
                return Err(Error::ZeroDegreeFactor);
            }
            if f.degree < previous {
                return Err(Error::NonMonotoneFamily {
                    previous,
                    degree: f.degree,
                });
            }
            previous = f.degree;
            if f.degree > truncation {
                break;
            }
            s.apply_factor(f)?;
        }
        Ok(s)
    }

    fn apply_factor(&mut self, f: Factor) -> Result<()> {
        if f.degree == 0 {
            return Err(Error::ZeroDegreeFactor);
        }
        let n = self.truncation();
        let d = f.degree;
        if d > n || f.multiplicity == 0 {
            return Ok(());
        }
        // (1 + sign x^d)^(±multiplicity)
        let (sign_plus, inverse) = match f.form {
            FactorForm::OnePlus => (true, false),
            FactorForm::OneMinus => (false, false),
            FactorForm::InverseOnePlus => (true, true),
            FactorForm::InverseOneMinus => (false, true),
        };
        if f.multiplicity <= 2 {
            for _ in 0..f.multiplicity {
                self.apply_simple(d, sign_plus, inverse);
            }
            return Ok(());
        }
        let weights = binomial_weights(f.multiplicity, sign_plus, inverse, n / d);
        let mut out = vec![BigInt::zero(); n + 1];
        for (k, w) in weights.iter().enumerate() {
            let shift = k * d;
            for (m, a) in self.coeffs[..=n - shift].iter().enumerate() {
                if !a.is_zero() {
                    out[m + shift] += w * a;
                }
            }
        }
        self.coeffs = out;
        Ok(())
    }

    fn apply_simple(&mut self, d: usize, sign_plus: bool, inverse: bool) {
        let n = self.truncation();
        if inverse {
            // b (1 + σ x^d) = a  ⇒  b_m = a_m - σ b_{m-d}, ascending
            for m in d..=n {
                let (lo, hi) = self.coeffs.split_at_mut(m);
                if sign_plus {
                    hi[0] -= &lo[m - d];
                } else {
                    hi[0] += &lo[m - d];
                }
            }
        } else {
            for m in (d..=n).rev() {
                let (lo, hi) = self.coeffs.split_at_mut(m);
                if sign_plus {
                    hi[0] += &lo[m - d];
                } else {
                    hi[0] -= &lo[m - d];
                }
            }
        }
    }

    /// `None` when every coefficient is `≥ 0`, else the least negative degree.
    pub fn first_negative(&self) -> Option<usize> {
        self.coeffs.iter().position(Signed::is_negative)
    }

    /// Total check: `Ok` iff all coefficients are non-negative, otherwise the
    /// least offending degree.
    pub fn check_nonnegative(&self) -> std::result::Result<(), usize> {
        match self.first_negative() {
            None => Ok(()),
            Some(d) => Err(d),
        }
    }

    /// Least degree where the two series differ; `None` when equal.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).find(|&d| self.coeffs.get(d) != other.coeffs.get(d))
    }
}

/// Coefficients of `(1 + σ y)^(±c)` up to `y^kmax`.
fn binomial_weights(c: u64, sign_plus: bool, inverse: bool, kmax: usize) -> Vec<BigInt> {
    let mut w = Vec::with_capacity(kmax + 1);
    let mut cur = BigInt::one();
    w.push(cur.clone());
    let c = BigInt::from(c);
    for k in 1..=kmax {
        let kb = BigInt::from(k);
        if inverse {
            // C(c+k-1, k)(-σ)^k
            cur = cur * (&c + &kb - 1u32) / &kb;
        } else {
            if kb > c {
                break;
            }
            // C(c, k) σ^k
            cur = cur * (&c - &kb + 1u32) / &kb;
        }
        let negative = if inverse { sign_plus } else { !sign_plus };
        if negative && k % 2 == 1 {
            w.push(-cur.clone());
        } else {
            w.push(cur.clone());
        }
    }
    w
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[N={}](", self.truncation())?;
        fmt::Display::fmt(self, f)?;
        write!(f, ")")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (d, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{d}")?,
                (_, false) => write!(f, "{mag}x^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.truncation() + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesWire {
    truncation: usize,
    coefficients: Vec<String>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesWire {
            truncation: self.truncation(),
            coefficients: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = SeriesWire::deserialize(deserializer)?;
        if wire.coefficients.len() != wire.truncation + 1 {
            return Err(D::Error::custom(format!(
                "truncation {} needs {} coefficients, found {}",
                wire.truncation,
                wire.truncation + 1,
                wire.coefficients.len()
            )));
        }
        let coeffs = wire
            .coefficients
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn series(cs: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_coefficients(cs.iter().map(|&c| BigInt::from(c)).collect()).unwrap()
    }

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.coefficients()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    // Independent oracle: the number of partitions of `n` with parts drawn
    // from `parts`, by naive recursion.
    fn partitions(n: usize, parts: &[usize]) -> u64 {
        fn go(n: usize, parts: &[usize]) -> u64 {
            if n == 0 {
                return 1;
            }
            match parts.split_first() {
                None => 0,
                Some((&p, rest)) => {
                    let mut total = go(n, rest);
                    let mut used = p;
                    while used <= n {
                        total += go(n - used, rest);
                        used += p;
                    }
                    total
                }
            }
        }
        go(n, parts)
    }

    #[test]
    fn make_polynomial_examples() {
        let s = TruncatedSeries::from_terms([(0, 1), (2, 1)], 4).unwrap();
        assert_eq!(ints(&s), vec![1, 0, 1, 0, 0]);
        let z = TruncatedSeries::from_terms(Vec::<(usize, i64)>::new(), 3).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.truncation(), 3);
        let s = TruncatedSeries::from_terms([(8, -1), (0, 1)], 10).unwrap();
        assert_eq!(ints(&s), vec![1, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0]);
        assert_eq!(
            TruncatedSeries::from_terms([(5, 1)], 4),
            Err(Error::Truncation {
                degree: 5,
                truncation: 4
            })
        );
    }

    #[test]
    fn arithmetic_examples() {
        let a = series(&[1, 0, 1, 0, 0]);
        let b = series(&[1, 0, -1, 0, 0]);
        assert_eq!(ints(&a.mul(&b).unwrap()), vec![1, 0, 0, 0, -1]);
        assert_eq!(ints(&a.mul(&a).unwrap()), vec![1, 0, 2, 0, 1]);

        let geo = TruncatedSeries::product_over([Factor::inverse_one_minus(4)], 12).unwrap();
        let one_minus = TruncatedSeries::from_terms([(0, 1), (4, -1)], 12).unwrap();
        assert!(one_minus.mul(&geo).unwrap().is_one());

        assert_eq!(
            a.add(&series(&[1, 2])),
            Err(Error::TruncationMismatch { left: 4, right: 1 })
        );
        assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn invert_examples() {
        let s = TruncatedSeries::from_terms([(0, 1), (2, -1)], 6).unwrap();
        assert_eq!(ints(&s.invert().unwrap()), vec![1, 0, 1, 0, 1, 0, 1]);
        let s = series(&[1, 1, 0, 0]);
        assert_eq!(ints(&s.invert().unwrap()), vec![1, -1, 1, -1]);

        // multiply-back oracle
        let s = TruncatedSeries::from_terms([(0, 1), (2, -1), (4, -1)], 8).unwrap();
        let inv = s.invert().unwrap();
        assert!(s.mul(&inv).unwrap().is_one());
        assert!(inv.mul(&s).unwrap().is_one());
        // 1/(1-y-y^2) in y = x^2 is Fibonacci
        assert_eq!(ints(&inv), vec![1, 0, 1, 0, 2, 0, 3, 0, 5]);

        let neg = series(&[-1, 3, 0]);
        assert!(neg.mul(&neg.invert().unwrap()).unwrap().is_one());

        assert!(matches!(
            series(&[2, 1]).invert(),
            Err(Error::NotInvertible { .. })
        ));
        assert!(matches!(
            series(&[0, 1]).invert(),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn product_over_examples() {
        let even =
            TruncatedSeries::product_over((1..).map(|i| Factor::inverse_one_minus(2 * i)), 8)
                .unwrap();
        assert_eq!(
            *even.coefficient(8).unwrap(),
            BigInt::from(partitions(4, &[1, 2, 3, 4]))
        );
        assert_eq!(*even.coefficient(8).unwrap(), BigInt::from(5));

        let bp = TruncatedSeries::product_over(
            (1..).map(|j| Factor::inverse_one_minus(2 * ((1usize << j) - 1))),
            8,
        )
        .unwrap();
        assert_eq!(ints(&bp), vec![1, 0, 1, 0, 1, 0, 2, 0, 2]);
        assert_eq!(*bp.coefficient(6).unwrap(), BigInt::from(2));

        let empty = TruncatedSeries::product_over(std::iter::empty(), 5).unwrap();
        assert!(empty.is_one());

        assert_eq!(
            TruncatedSeries::product_over([Factor::one_plus(0)], 5),
            Err(Error::ZeroDegreeFactor)
        );
        assert_eq!(
            TruncatedSeries::product_over([Factor::one_plus(3), Factor::one_plus(2)], 5),
            Err(Error::NonMonotoneFamily {
                previous: 3,
                degree: 2
            })
        );
    }

    #[test]
    fn coefficient_examples() {
        let s = series(&[1, 0, 1]);
        assert_eq!(*s.coefficient(2).unwrap(), BigInt::from(1));
        assert_eq!(
            *TruncatedSeries::zero(0).coefficient(0).unwrap(),
            BigInt::zero()
        );
        assert!(s.coefficient(3).is_err());
    }

    #[test]
    fn check_nonnegative_examples() {
        assert_eq!(series(&[1, 0, 1]).check_nonnegative(), Ok(()));
        assert_eq!(series(&[1, 0, 0, -1]).check_nonnegative(), Err(3));
    }

    #[test]
    fn multiplicity_matches_repeated_factors() {
        for form in [
            FactorForm::InverseOneMinus,
            FactorForm::OnePlus,
            FactorForm::OneMinus,
            FactorForm::InverseOnePlus,
        ] {
            for c in 0..7u64 {
                for d in 1..5 {
                    let bulk =
                        TruncatedSeries::product_over([Factor::new(d, c, form)], 20).unwrap();
                    let single = Factor::new(d, 1, form);
                    let repeated =
                        TruncatedSeries::product_over(std::iter::repeat_n(single, c as usize), 20)
                            .unwrap();
                    assert_eq!(bulk, repeated, "form {form:?} c={c} d={d}");
                }
            }
        }
    }

    #[test]
    fn coefficients_exceed_64_bits() {
        // p(500) = 2300165032574323995027 overflows u64
        let p = TruncatedSeries::product_over((1..).map(Factor::inverse_one_minus), 500).unwrap();
        assert!(p.coefficient(500).unwrap() > &BigInt::from(u64::MAX));
        assert_eq!(
            p.coefficient(500).unwrap().to_string(),
            "2300165032574323995027"
        );
    }

    #[test]
    fn json_shape() {
        let s = series(&[1, -2, 0]);
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"truncation": 2, "coefficients": ["1", "-2", "0"]})
        );
        let back: TruncatedSeries = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
        let bad = serde_json::json!({"truncation": 3, "coefficients": ["1"]});
        assert!(serde_json::from_value::<TruncatedSeries>(bad).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(
            series(&[1, 0, -2, 1]).to_string(),
            "1 - 2x^2 + x^3 + O(x^4)"
        );
        assert_eq!(TruncatedSeries::zero(1).to_string(), "0 + O(x^2)");
    }

    fn arb_series(n: usize) -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec(-20i64..20, n + 1).prop_map(|v| {
            TruncatedSeries::from_coefficients(v.into_iter().map(BigInt::from).collect()).unwrap()
        })
    }

    fn arb_unit_series(n: usize) -> impl Strategy<Value = TruncatedSeries> {
        (prop::bool::ANY, proptest::collection::vec(-20i64..20, n)).prop_map(|(neg, rest)| {
            let mut v = vec![BigInt::from(if neg { -1 } else { 1 })];
            v.extend(rest.into_iter().map(BigInt::from));
            TruncatedSeries::from_coefficients(v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn invert_is_two_sided(a in (0usize..12).prop_flat_map(arb_unit_series)) {
            let inv = a.invert().unwrap();
            prop_assert!(a.mul(&inv).unwrap().is_one());
            prop_assert!(inv.mul(&a).unwrap().is_one());
        }

        #[test]
        fn mul_commutes_and_associates(
            (a, b, c) in (0usize..10).prop_flat_map(|n| (arb_series(n), arb_series(n), arb_series(n)))
        ) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn truncation_compatible(
            (a, b, m) in (1usize..12).prop_flat_map(|n| (arb_unit_series(n), arb_series(n), 0..=n))
        ) {
            let at = |s: &TruncatedSeries| s.truncate(m).unwrap();
            prop_assert_eq!(at(&a.mul(&b).unwrap()), at(&a).mul(&at(&b)).unwrap());
            prop_assert_eq!(at(&a.add(&b).unwrap()), at(&a).add(&at(&b)).unwrap());
            prop_assert_eq!(at(&a.invert().unwrap()), at(&a).invert().unwrap());
            prop_assert_eq!(at(&b.shift(3)), at(&b).shift(3));
        }

        #[test]
        fn finite_product_is_fold_of_mul(
            degrees in proptest::collection::vec((1usize..6, 0u64..4, 0usize..4), 0..6),
            n in 0usize..16,
        ) {
            let forms = [
                FactorForm::InverseOneMinus,
                FactorForm::OnePlus,
                FactorForm::OneMinus,
                FactorForm::InverseOnePlus,
            ];
            let mut factors: Vec<Factor> = degrees
                .iter()
                .map(|&(d, c, f)| Factor::new(d, c, forms[f]))
                .collect();
            factors.sort_by_key(|f| f.degree);
            let product = TruncatedSeries::product_over(factors.clone(), n).unwrap();
            let mut folded = TruncatedSeries::one(n);
            for f in factors {
                // explicit factor as a series: (1 ± x^d)^c, or its inverse
                let sign = matches!(f.form, FactorForm::OnePlus | FactorForm::InverseOnePlus);
                let base = TruncatedSeries::from_terms(
                    [(0usize, 1i64)].into_iter().chain((f.degree <= n).then_some((f.degree, if sign { 1 } else { -1 }))),
                    n,
                ).unwrap();
                let base = match f.form {
                    FactorForm::OnePlus | FactorForm::OneMinus => base,
                    _ => base.invert().unwrap(),
                };
                for _ in 0..f.multiplicity {
                    folded = folded.mul(&base).unwrap();
                }
            }
            prop_assert_eq!(product, folded);
        }

        #[test]
        fn json_round_trip(a in (0usize..8).prop_flat_map(arb_series)) {
            let text = serde_json::to_string(&a).unwrap();
            let back: TruncatedSeries = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
