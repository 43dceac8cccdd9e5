//! The free nilpotent group G(n) of class 2 and rank n, in its integer
//! coordinate realization.
//!
//! An element is a vector `(r_1, …, r_n, r_{12}, r_{13}, r_{23}, r_{14}, …)`
//! whose central block is laid out in colexicographic pair order. The product
//! is
//!
//! ```text
//! (r·s)_i  = r_i + s_i
//! (r·s)_jk = r_jk + s_jk + r_j s_k      (j < k)
//! ```
//!
//! Indices are 0-based in the Rust API. Display and the JSON/CLI surfaces use
//! the 1-based names `u1`, `v12`, ….

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of central coordinates, `n(n-1)/2`.
pub fn central_dim(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Total coordinate count, `n + n(n-1)/2`.
pub fn coord_dim(n: usize) -> usize {
    n + central_dim(n)
}

/// `m(m-1)/2`, exact for every integer including negatives.
pub fn choose2(m: &BigInt) -> BigInt {
    let prod = m * (m - BigInt::one());
    prod.div_floor(&BigInt::from(2))
}

/// An ordered pair `j < k` of 0-based generator indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub j: usize,
    pub k: usize,
}

impl Pair {
    pub fn new(j: usize, k: usize) -> Self {
        assert!(j < k, "pair requires j < k (got {j}, {k})");
        Pair { j, k }
    }

    /// Position of the pair in the colex order.
    pub fn index(self) -> usize {
        self.k * (self.k - 1) / 2 + self.j
    }

    pub fn from_index(idx: usize) -> Self {
        let mut k = 1;
        while (k + 1) * k / 2 <= idx {
            k += 1;
        }
        Pair {
            j: idx - k * (k - 1) / 2,
            k,
        }
    }

    /// All pairs for rank `n`, in colex order.
    pub fn all(n: usize) -> impl Iterator<Item = Pair> {
        (0..central_dim(n)).map(Pair::from_index)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.j + 1, self.k + 1)
    }
}

/// A generator of G(n): `u_i` or `v_jk`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    U(usize),
    V(Pair),
}

impl Generator {
    fn check(self, n: usize) -> Result<()> {
        let ok = match self {
            Generator::U(i) => i < n,
            Generator::V(p) => p.j < p.k && p.k < n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnknownGenerator(format!("{self} in rank {n}")))
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::U(i) => write!(f, "u{}", i + 1),
            Generator::V(p) => write!(f, "v{p}"),
        }
    }
}

impl std::str::FromStr for Generator {
    type Err = Error;

    /// Parses `u3`, `v12`, or `v1,12` (comma form for indices above 9).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownGenerator(s.to_string());
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('u') {
            let i: usize = rest.parse().map_err(|_| bad())?;
            if i == 0 {
                return Err(bad());
            }
            return Ok(Generator::U(i - 1));
        }
        if let Some(rest) = s.strip_prefix('v') {
            let (j, k): (usize, usize) = if let Some((a, b)) = rest.split_once(',') {
                (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)
            } else {
                if rest.len() != 2 {
                    return Err(bad());
                }
                (
                    rest[..1].parse().map_err(|_| bad())?,
                    rest[1..].parse().map_err(|_| bad())?,
                )
            };
            if j == 0 || j >= k {
                return Err(bad());
            }
            return Ok(Generator::V(Pair::new(j - 1, k - 1)));
        }
        Err(bad())
    }
}

/// One letter of a word: a generator raised to an integer power.
pub type Letter = (Generator, BigInt);

/// An element of G(n) in flat coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    n: usize,
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement {
            n,
            coords: vec![BigInt::zero(); coord_dim(n)],
        }
    }

    pub fn from_coords(n: usize, coords: Vec<BigInt>) -> Result<Self> {
        let expected = coord_dim(n);
        if coords.len() != expected {
            return Err(Error::CoordinateLength {
                n,
                expected,
                found: coords.len(),
            });
        }
        Ok(GroupElement { n, coords })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64s(n: usize, coords: &[i64]) -> Result<Self> {
        Self::from_coords(n, coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds an element from its base and central blocks.
    pub fn from_parts(n: usize, base: Vec<BigInt>, central: Vec<BigInt>) -> Result<Self> {
        if base.len() != n || central.len() != central_dim(n) {
            return Err(Error::CoordinateLength {
                n,
                expected: coord_dim(n),
                found: base.len() + central.len(),
            });
        }
        let mut coords = base;
        coords.extend(central);
        Ok(GroupElement { n, coords })
    }

    /// The central element with the given central coordinates.
    pub fn central_from(n: usize, central: Vec<BigInt>) -> Result<Self> {
        Self::from_parts(n, vec![BigInt::zero(); n], central)
    }

    pub fn u(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut e = Self::identity(n);
        e.coords[i] = BigInt::one();
        e
    }

    pub fn v(n: usize, pair: Pair) -> Self {
        assert!(pair.k < n);
        let mut e = Self::identity(n);
        e.coords[n + pair.index()] = BigInt::one();
        e
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn base(&self) -> &[BigInt] {
        &self.coords[..self.n]
    }

    pub fn central(&self) -> &[BigInt] {
        &self.coords[self.n..]
    }

    pub fn base_at(&self, i: usize) -> &BigInt {
        &self.coords[i]
    }

    pub fn central_at(&self, pair: Pair) -> &BigInt {
        &self.coords[self.n + pair.index()]
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Central elements are exactly those with vanishing base part.
    pub fn is_central(&self) -> bool {
        self.base().iter().all(Zero::is_zero)
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RankMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let n = self.n;
        let mut coords: Vec<BigInt> = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        for p in Pair::all(n) {
            coords[n + p.index()] += &self.coords[p.j] * &other.coords[p.k];
        }
        Ok(GroupElement { n, coords })
    }

    pub fn inverse(&self) -> Self {
        let n = self.n;
        let mut coords: Vec<BigInt> = self.coords.iter().map(|c| -c).collect();
        for p in Pair::all(n) {
            coords[n + p.index()] += &self.coords[p.j] * &self.coords[p.k];
        }
        GroupElement { n, coords }
    }

    /// `self^m` for any integer `m`, via the closed form
    /// `(r^m)_jk = m r_jk + C(m,2) r_j r_k`.
    pub fn pow(&self, m: &BigInt) -> Self {
        let n = self.n;
        let c2 = choose2(m);
        let mut coords: Vec<BigInt> = self.coords.iter().map(|c| c * m).collect();
        for p in Pair::all(n) {
            coords[n + p.index()] += &c2 * &self.coords[p.j] * &self.coords[p.k];
        }
        GroupElement { n, coords }
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.multiply(other)?
            .multiply(&self.inverse())?
            .multiply(&other.inverse())
    }

    /// `s r s⁻¹`, where `self` is `s`.
    pub fn conjugate(&self, r: &Self) -> Result<Self> {
        self.multiply(r)?.multiply(&self.inverse())
    }

    /// Closed-form conjugation `(s r s⁻¹)_jk = r_jk + s_j r_k - r_j s_k`.
    pub fn conjugate_closed_form(&self, r: &Self) -> Result<Self> {
        self.check_rank(r)?;
        let n = self.n;
        let mut out = r.clone();
        for p in Pair::all(n) {
            out.coords[n + p.index()] +=
                &self.coords[p.j] * &r.coords[p.k] - &r.coords[p.j] * &self.coords[p.k];
        }
        Ok(out)
    }

    /// The word `v_12^{r_12} ⋯ v_{n-1,n}^{r_{n-1,n}} · u_n^{r_n} ⋯ u_1^{r_1}`.
    /// Zero powers are kept, so the word length is always `n + n(n-1)/2`.
    pub fn normal_form(&self) -> Vec<Letter> {
        let n = self.n;
        let mut word: Vec<Letter> = Pair::all(n)
            .map(|p| (Generator::V(p), self.central_at(p).clone()))
            .collect();
        word.extend(
            (0..n)
                .rev()
                .map(|i| (Generator::U(i), self.coords[i].clone())),
        );
        word
    }

    /// H(n)·G(n-1) factorization `r = a·b`: `a` carries `u_n` and the `v_{jn}`,
    /// `b` carries everything else.
    pub fn decompose(&self) -> Result<(Self, Self)> {
        let n = self.n;
        if n < 2 {
            return Err(Error::RankTooSmall { min: 2, found: n });
        }
        let mut a = Self::identity(n);
        let mut b = self.clone();
        a.coords[n - 1] = std::mem::take(&mut b.coords[n - 1]);
        for j in 0..n - 1 {
            let idx = n + Pair::new(j, n - 1).index();
            a.coords[idx] = std::mem::take(&mut b.coords[idx]);
        }
        Ok((a, b))
    }

    /// True when the element lies in H(n) = ⟨u_n, v_{jn}⟩.
    pub fn in_h(&self) -> bool {
        let n = self.n;
        if n == 0 {
            return self.is_identity();
        }
        self.coords[..n - 1].iter().all(Zero::is_zero)
            && Pair::all(n)
                .filter(|p| p.k != n - 1)
                .all(|p| self.central_at(p).is_zero())
    }

    /// True when the element lies in the embedded copy of G(n-1).
    pub fn in_lower(&self) -> bool {
        let n = self.n;
        if n == 0 {
            return true;
        }
        self.coords[n - 1].is_zero()
            && (0..n - 1).all(|j| self.central_at(Pair::new(j, n - 1)).is_zero())
    }

    /// The action `α_b(a) = b a b⁻¹` of G(n-1) on H(n).
    pub fn alpha(b: &Self, a: &Self) -> Result<Self> {
        b.check_rank(a)?;
        if !a.in_h() {
            return Err(Error::SupportViolation("H(n)"));
        }
        if !b.in_lower() {
            return Err(Error::SupportViolation("G(n-1)"));
        }
        b.conjugate(a)
    }

    fn fmt_coords(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[BigInt]| {
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "({} | {})", join(self.base()), join(self.central()))
    }

    /// Comma-separated coordinates, the command-line wire format.
    pub fn to_csv(&self) -> String {
        self.coords
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_csv(n: usize, s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|t| t.trim().parse::<BigInt>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::parse("group element", s))?;
        Self::from_coords(n, coords)
    }

    /// Largest absolute coordinate.
    pub fn max_norm(&self) -> BigInt {
        self.coords
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_coords(f)
    }
}

/// The generators `u_1..u_n, v_12..v_{n-1,n}` as elements.
pub fn generators(n: usize) -> Vec<GroupElement> {
    let mut out: Vec<GroupElement> = (0..n).map(|i| GroupElement::u(n, i)).collect();
    out.extend(Pair::all(n).map(|p| GroupElement::v(n, p)));
    out
}

pub fn generator_element(n: usize, g: Generator) -> Result<GroupElement> {
    g.check(n)?;
    Ok(match g {
        Generator::U(i) => GroupElement::u(n, i),
        Generator::V(p) => GroupElement::v(n, p),
    })
}

/// Evaluates a word left to right.
pub fn word_evaluate(n: usize, word: &[Letter]) -> Result<GroupElement> {
    word.iter()
        .try_fold(GroupElement::identity(n), |acc, (g, m)| {
            acc.multiply(&generator_element(n, *g)?.pow(m))
        })
}

/// JSON form `{"n": 2, "coords": ["1", "0", "1"]}`.
#[derive(Serialize, Deserialize)]
struct ElementRepr {
    n: usize,
    coords: Vec<String>,
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            n: self.n,
            coords: self.coords.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ElementRepr::deserialize(deserializer)?;
        let coords = repr
            .coords
            .iter()
            .map(|c| c.parse::<BigInt>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        GroupElement::from_coords(repr.n, coords).map_err(D::Error::custom)
    }
}
