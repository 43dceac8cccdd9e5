//! Exact exponents for circle values `λ = e^{2πit}`.
//!
//! A [`CircleExponent`] is `t = q_0 + Σ q_b·b` with rational `q_0` and
//! rational coefficients on declared formal symbols `b`. Only the rational
//! part is reduced mod 1. The symbols are assumed, together with 1, to be
//! linearly independent over Q; that contract is the caller's and cannot be
//! checked.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::parse("rational", s);
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Always `"p/q"` in lowest terms, `q > 0`.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// `x - floor(x)`.
pub fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// An ordered set of formal irrational symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct IrrationalBasis {
    symbols: Vec<String>,
}

impl IrrationalBasis {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for s in &symbols {
            let valid = s
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidBasis(format!("bad symbol name `{s}`")));
            }
            if !seen.insert(s.clone()) {
                return Err(Error::InvalidBasis(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(IrrationalBasis { symbols })
    }

    pub fn empty() -> Self {
        IrrationalBasis::default()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn contains(&self, symbol: &str) -> bool {
        self.symbols.iter().any(|s| s == symbol)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Errors if `x` mentions a symbol outside the basis.
    pub fn check(&self, x: &CircleExponent) -> Result<()> {
        match x.symbols().find(|s| !self.contains(s)) {
            Some(s) => Err(Error::UnknownSymbol(s.to_string())),
            None => Ok(()),
        }
    }
}

impl TryFrom<Vec<String>> for IrrationalBasis {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        IrrationalBasis::new(v)
    }
}

impl From<IrrationalBasis> for Vec<String> {
    fn from(b: IrrationalBasis) -> Self {
        b.symbols
    }
}

/// An element of R/Z in the symbolic model, always kept canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircleExponent {
    rational: BigRational,
    irrational: BTreeMap<String, BigRational>,
}

impl Default for CircleExponent {
    fn default() -> Self {
        Self::zero()
    }
}

impl CircleExponent {
    pub fn zero() -> Self {
        CircleExponent {
            rational: BigRational::zero(),
            irrational: BTreeMap::new(),
        }
    }

    pub fn rational(q: BigRational) -> Self {
        Self::new(q, BTreeMap::new())
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::rational(BigRational::new(p.into(), q.into()))
    }

    /// `coef·symbol`.
    pub fn symbol(symbol: impl Into<String>, coef: BigRational) -> Self {
        Self::new(BigRational::zero(), BTreeMap::from([(symbol.into(), coef)]))
    }

    pub fn new(rational: BigRational, irrational: BTreeMap<String, BigRational>) -> Self {
        let mut x = CircleExponent {
            rational,
            irrational,
        };
        x.canonicalize();
        x
    }

    fn canonicalize(&mut self) {
        self.rational = frac(&self.rational);
        self.irrational.retain(|_, c| !c.is_zero());
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn irrational_parts(&self) -> &BTreeMap<String, BigRational> {
        &self.irrational
    }

    pub fn coefficient(&self, symbol: &str) -> BigRational {
        self.irrational
            .get(symbol)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.irrational.keys().map(String::as_str)
    }

    /// `λ = 1`, i.e. `t ∈ Z`.
    pub fn is_integral(&self) -> bool {
        self.rational.is_zero() && self.irrational.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.irrational.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut irrational = self.irrational.clone();
        for (s, c) in &other.irrational {
            *irrational
                .entry(s.clone())
                .or_insert_with(BigRational::zero) += c;
        }
        Self::new(&self.rational + &other.rational, irrational)
    }

    pub fn neg(&self) -> Self {
        Self::new(
            -&self.rational,
            self.irrational
                .iter()
                .map(|(s, c)| (s.clone(), -c))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let k = BigRational::from_integer(k.clone());
        Self::new(
            &self.rational * &k,
            self.irrational
                .iter()
                .map(|(s, c)| (s.clone(), c * &k))
                .collect(),
        )
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&BigInt::from(k))
    }

    /// `Σ k_i x_i`.
    pub fn linear_combination<'a>(
        terms: impl IntoIterator<Item = (&'a BigInt, &'a CircleExponent)>,
    ) -> Self {
        let mut rational = BigRational::zero();
        let mut irrational: BTreeMap<String, BigRational> = BTreeMap::new();
        for (k, x) in terms {
            if k.is_zero() {
                continue;
            }
            let k = BigRational::from_integer(k.clone());
            rational += &x.rational * &k;
            for (s, c) in &x.irrational {
                *irrational
                    .entry(s.clone())
                    .or_insert_with(BigRational::zero) += c * &k;
            }
        }
        Self::new(rational, irrational)
    }
}

impl fmt::Display for CircleExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        if !self.rational.is_zero() || self.irrational.is_empty() {
            terms.push(self.rational.to_string());
        }
        for (s, c) in &self.irrational {
            if c.is_one() {
                terms.push(s.clone());
            } else {
                terms.push(format!("{c}*{s}"));
            }
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl FromStr for CircleExponent {
    type Err = Error;

    /// Parses sums like `1/2 + 1/3*alpha - beta`.
    fn from_str(s: &str) -> Result<Self> {
        let normalized = s.replace('-', "+-");
        let mut rational = BigRational::zero();
        let mut irrational: BTreeMap<String, BigRational> = BTreeMap::new();
        for term in normalized
            .split('+')
            .map(str::trim)
            .filter(|t| !t.is_empty())
        {
            let (neg, term) = match term.strip_prefix('-') {
                Some(rest) => (true, rest.trim()),
                None => (false, term),
            };
            let (coef, sym) = match term.split_once('*') {
                Some((c, sym)) => (parse_rational(c)?, Some(sym.trim())),
                None if term.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') => {
                    (BigRational::one(), Some(term))
                }
                None => (parse_rational(term)?, None),
            };
            let coef = if neg { -coef } else { coef };
            match sym {
                Some(sym) => {
                    IrrationalBasis::new([sym]).map_err(|_| Error::parse("circle exponent", s))?;
                    *irrational
                        .entry(sym.to_string())
                        .or_insert_with(BigRational::zero) += coef;
                }
                None => rational += coef,
            }
        }
        Ok(CircleExponent::new(rational, irrational))
    }
}

/// JSON form `{"rat": "p/q", "irr": {"alpha": "p/q"}}`. Input may also be
/// an expression string such as `"1/3 + alpha"`.
#[derive(Serialize, Deserialize)]
struct ExponentRepr {
    #[serde(default = "zero_string")]
    rat: String,
    #[serde(default)]
    irr: BTreeMap<String, String>,
}

fn zero_string() -> String {
    "0".into()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ExponentInput {
    Expr(String),
    Parts(ExponentRepr),
}

impl Serialize for CircleExponent {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        ExponentRepr {
            rat: format_rational(&self.rational),
            irr: self
                .irrational
                .iter()
                .map(|(s, c)| (s.clone(), format_rational(c)))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CircleExponent {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = match ExponentInput::deserialize(deserializer)? {
            ExponentInput::Expr(e) => return e.parse().map_err(D::Error::custom),
            ExponentInput::Parts(repr) => repr,
        };
        let rational = parse_rational(&repr.rat).map_err(D::Error::custom)?;
        let mut irrational = BTreeMap::new();
        for (s, c) in repr.irr {
            irrational.insert(s, parse_rational(&c).map_err(D::Error::custom)?);
        }
        Ok(CircleExponent::new(rational, irrational))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    fn ce(s: &str) -> CircleExponent {
        s.parse().unwrap()
    }

    #[test]
    fn add_wraps_mod_one() {
        assert_eq!(ce("1/2").add(&ce("2/3")), ce("1/6"));
        assert_eq!(CircleExponent::zero().neg(), CircleExponent::zero());
    }

    #[test]
    fn scale_only_reduces_rational_part() {
        let x = ce("1/2 + 1/3*alpha");
        assert_eq!(x.scale_i64(6), CircleExponent::symbol("alpha", q(2, 1)));
        assert_eq!(x.scale_i64(6).rational_part(), &q(0, 1));
    }

    #[test]
    fn integrality() {
        assert!(ce("3").is_integral());
        assert!(!ce("1/2").is_integral());
        let a = ce("alpha");
        assert!(a.scale_i64(3).sub(&ce("3*alpha")).is_integral());
        assert!(!a.is_integral());
    }

    #[test]
    fn canonical_form_invariants() {
        let x = CircleExponent::new(q(-7, 3), BTreeMap::from([("b".into(), q(0, 1))]));
        assert_eq!(x.rational_part(), &q(2, 3));
        assert!(x.irrational_parts().is_empty());
    }

    #[test]
    fn parse_and_display() {
        let x = ce("5/4 - 2/6*beta + alpha");
        assert_eq!(x.rational_part(), &q(1, 4));
        assert_eq!(x.coefficient("beta"), q(-1, 3));
        assert_eq!(x.to_string(), "1/4 + alpha + -1/3*beta");
        assert_eq!(ce(&x.to_string()), x);
        assert!("1/0".parse::<CircleExponent>().is_err());
        assert!("2*3x".parse::<CircleExponent>().is_err());
    }

    #[test]
    fn json_shape() {
        let x = ce("1/6 + 2*alpha");
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"rat":"1/6","irr":{"alpha":"2/1"}}"#);
        assert_eq!(serde_json::from_str::<CircleExponent>(&s).unwrap(), x);
        let y: CircleExponent = serde_json::from_str(r#"{"rat":"7/6"}"#).unwrap();
        assert_eq!(y, ce("1/6"));
        let z: CircleExponent = serde_json::from_str(r#"{"irr":{"alpha":"1"}}"#).unwrap();
        assert_eq!(z, ce("alpha"));
        let w: CircleExponent = serde_json::from_str(r#""1/3 - beta""#).unwrap();
        assert_eq!(w, ce("1/3 + -1*beta"));
    }

    #[test]
    fn basis_validation() {
        assert!(IrrationalBasis::new(["alpha", "beta"]).is_ok());
        assert!(IrrationalBasis::new(["alpha", "alpha"]).is_err());
        assert!(IrrationalBasis::new(["1x"]).is_err());
        let b = IrrationalBasis::new(["alpha"]).unwrap();
        assert!(b.check(&ce("alpha + 1/2")).is_ok());
        assert_eq!(
            b.check(&ce("beta")),
            Err(Error::UnknownSymbol("beta".into()))
        );
    }

    fn arb_exp() -> impl Strategy<Value = CircleExponent> {
        (-20i64..20, 1i64..12, -20i64..20, 1i64..12, -5i64..5).prop_map(|(a, b, c, d, e)| {
            CircleExponent::new(
                q(a, b),
                BTreeMap::from([("alpha".into(), q(c, d)), ("beta".into(), q(e, 1))]),
            )
        })
    }

    proptest! {
        #[test]
        fn add_is_commutative_and_associative(x in arb_exp(), y in arb_exp(), z in arb_exp()) {
            prop_assert_eq!(x.add(&y), y.add(&x));
            prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
            prop_assert!(x.add(&x.neg()).is_integral());
        }

        #[test]
        fn scale_is_repeated_addition(x in arb_exp(), k in -10i64..=10) {
            let mut acc = CircleExponent::zero();
            for _ in 0..k.abs() {
                acc = acc.add(&x);
            }
            if k < 0 {
                acc = acc.neg();
            }
            prop_assert_eq!(x.scale_i64(k), acc);
        }

        #[test]
        fn canonicalization_is_idempotent(x in arb_exp()) {
            let again = CircleExponent::new(x.rational_part().clone(), x.irrational_parts().clone());
            prop_assert_eq!(&again, &x);
            prop_assert!(x.rational_part() >= &q(0, 1) && x.rational_part() < &q(1, 1));
        }
    }
}
