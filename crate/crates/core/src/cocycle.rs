//! Canonical multipliers of G(n).
//!
//! A multiplier class is fixed by the exponents `t_{i,jk}` for
//! `1 <= i <= k`, `1 <= j < k <= n`, `(n+1)n(n-1)/3` of them in total. The
//! representative evaluated here is
//!
//! ```text
//! σ(r,s) = Π_{i<j<k} λ_{i,jk}^{s_jk r_i + s_k r_ij} · λ_{j,ik}^{s_ik r_j + s_k (r_i r_j - r_ij)}
//!        · Π_{j<k}   λ_{j,jk}^{s_jk r_j + C(r_j,2) s_k} · λ_{k,jk}^{r_k (s_jk + r_j s_k) + r_j C(s_k,2)}
//! ```
//!
//! with `λ = e^{2πit}` and `C(m,2) = m(m-1)/2`. Values are returned as
//! exponents mod 1. Entries with `i > k` are never stored; they are derived
//! on demand from `t_{k,ij} = t_{j,ik} - t_{i,jk}` (`i < j < k`).

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{choose2, GroupElement, Pair};
use crate::scalars::{CircleExponent, IrrationalBasis};

/// `(n+1)n(n-1)/3`, the number of free parameters.
pub fn param_count(n: usize) -> usize {
    (n + 1) * n * n.saturating_sub(1) / 3
}

/// Index `(i, (j,k))` of a parameter `t_{i,jk}`, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamIndex {
    pub i: usize,
    pub pair: Pair,
}

impl ParamIndex {
    pub fn new(i: usize, pair: Pair) -> Self {
        ParamIndex { i, pair }
    }

    pub fn is_free(self) -> bool {
        self.i <= self.pair.k
    }

    /// Position in the fixed parameter order: pairs in colex order, then `i`
    /// ascending. For n = 2 this is `(t_{1,12}, t_{2,12})`.
    ///
    /// Panics on a derived index.
    pub fn position(self) -> usize {
        assert!(self.is_free(), "derived index {self} has no position");
        let k = self.pair.k;
        let before_k = if k == 0 { 0 } else { (k - 1) * k * (k + 1) / 3 };
        before_k + self.pair.j * (k + 1) + self.i
    }

    /// All free indices for rank `n`, in position order.
    pub fn all_free(n: usize) -> impl Iterator<Item = ParamIndex> {
        Pair::all(n).flat_map(|pair| (0..=pair.k).map(move |i| ParamIndex { i, pair }))
    }
}

impl fmt::Display for ParamIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t_{{{},{}}}", self.i + 1, self.pair)
    }
}

/// Parameters of a canonical multiplier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleParams {
    n: usize,
    basis: IrrationalBasis,
    values: Vec<CircleExponent>,
}

impl CocycleParams {
    /// All parameters zero: the trivial multiplier.
    pub fn zero(n: usize, basis: IrrationalBasis) -> Self {
        CocycleParams {
            n,
            basis,
            values: vec![CircleExponent::zero(); param_count(n)],
        }
    }

    /// Builds parameters from values in position order.
    pub fn from_values(
        n: usize,
        basis: IrrationalBasis,
        values: Vec<CircleExponent>,
    ) -> Result<Self> {
        if values.len() != param_count(n) {
            return Err(Error::Shape(format!(
                "{} parameter values for rank {n} (expected {})",
                values.len(),
                param_count(n)
            )));
        }
        for v in &values {
            basis.check(v)?;
        }
        Ok(CocycleParams { n, basis, values })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &IrrationalBasis {
        &self.basis
    }

    /// Free values in position order.
    pub fn values(&self) -> &[CircleExponent] {
        &self.values
    }

    /// `t_{i,jk}` for any `i`, deriving entries with `i > k`.
    pub fn get(&self, idx: ParamIndex) -> CircleExponent {
        if idx.is_free() {
            return self.values[idx.position()].clone();
        }
        // idx = (c, (a,b)) with a < b < c: t_{c,ab} = t_{b,ac} - t_{a,bc}.
        let (a, b, c) = (idx.pair.j, idx.pair.k, idx.i);
        let t_b_ac = &self.values[ParamIndex::new(b, Pair::new(a, c)).position()];
        let t_a_bc = &self.values[ParamIndex::new(a, Pair::new(b, c)).position()];
        t_b_ac.sub(t_a_bc)
    }

    /// Sets a free entry.
    pub fn set(&mut self, idx: ParamIndex, value: CircleExponent) -> Result<()> {
        if idx.pair.k >= self.n || idx.i >= self.n {
            return Err(Error::BadIndex {
                i: idx.i + 1,
                j: idx.pair.j + 1,
                k: idx.pair.k + 1,
                n: self.n,
            });
        }
        if !idx.is_free() {
            return Err(Error::DerivedIndex {
                i: idx.i + 1,
                j: idx.pair.j + 1,
                k: idx.pair.k + 1,
            });
        }
        self.basis.check(&value)?;
        self.values[idx.position()] = value;
        Ok(())
    }

    fn check_element(&self, r: &GroupElement) -> Result<()> {
        if r.rank() != self.n {
            return Err(Error::RankMismatch {
                expected: self.n,
                found: r.rank(),
            });
        }
        Ok(())
    }
}

/// Integer exponents `e(r,s)` such that `σ(r,s) = Σ e_p t_p`, in position
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    n: usize,
    entries: Vec<BigInt>,
}

impl ExponentVector {
    pub fn zero(n: usize) -> Self {
        ExponentVector {
            n,
            entries: vec![BigInt::zero(); param_count(n)],
        }
    }

    pub fn from_entries(n: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != param_count(n) {
            return Err(Error::Shape("exponent vector length".into()));
        }
        Ok(ExponentVector { n, entries })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.entries
    }

    pub fn get(&self, idx: ParamIndex) -> &BigInt {
        &self.entries[idx.position()]
    }

    /// Nonzero entries only.
    pub fn support(&self) -> Vec<(ParamIndex, BigInt)> {
        ParamIndex::all_free(self.n)
            .zip(&self.entries)
            .filter(|(_, e)| !e.is_zero())
            .map(|(p, e)| (p, e.clone()))
            .collect()
    }

    fn bump(&mut self, idx: ParamIndex, by: BigInt) {
        self.entries[idx.position()] += by;
    }

    /// `Σ e_p t_p` mod 1.
    pub fn pair_with(&self, params: &CocycleParams) -> Result<CircleExponent> {
        if params.n != self.n {
            return Err(Error::RankMismatch {
                expected: params.n,
                found: self.n,
            });
        }
        Ok(CircleExponent::linear_combination(
            self.entries.iter().zip(&params.values),
        ))
    }
}

pub fn exponent_vector(n: usize, r: &GroupElement, s: &GroupElement) -> Result<ExponentVector> {
    for x in [r, s] {
        if x.rank() != n {
            return Err(Error::RankMismatch {
                expected: n,
                found: x.rank(),
            });
        }
    }
    let mut e = ExponentVector::zero(n);
    let rb = |i: usize| r.base_at(i);
    let sb = |i: usize| s.base_at(i);
    let rc = |j: usize, k: usize| r.central_at(Pair::new(j, k));
    let sc = |j: usize, k: usize| s.central_at(Pair::new(j, k));

    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                // i < j < k
                e.bump(
                    ParamIndex::new(i, Pair::new(j, k)),
                    sc(j, k) * rb(i) + sb(k) * rc(i, j),
                );
                e.bump(
                    ParamIndex::new(j, Pair::new(i, k)),
                    sc(i, k) * rb(j) + sb(k) * (rb(i) * rb(j) - rc(i, j)),
                );
            }
            e.bump(
                ParamIndex::new(j, Pair::new(j, k)),
                sc(j, k) * rb(j) + choose2(rb(j)) * sb(k),
            );
            e.bump(
                ParamIndex::new(k, Pair::new(j, k)),
                rb(k) * (sc(j, k) + rb(j) * sb(k)) + rb(j) * choose2(sb(k)),
            );
        }
    }
    Ok(e)
}

/// `σ(r,s)` as an exponent mod 1.
pub fn sigma_eval(
    params: &CocycleParams,
    r: &GroupElement,
    s: &GroupElement,
) -> Result<CircleExponent> {
    params.check_element(r)?;
    params.check_element(s)?;
    exponent_vector(params.n, r, s)?.pair_with(params)
}

/// `σ(r,s) σ(rs,t) = σ(r,st) σ(s,t)`, checked exactly.
pub fn cocycle_identity_holds(
    params: &CocycleParams,
    r: &GroupElement,
    s: &GroupElement,
    t: &GroupElement,
) -> Result<bool> {
    let rs = r.multiply(s)?;
    let st = s.multiply(t)?;
    let lhs = sigma_eval(params, r, s)?.add(&sigma_eval(params, &rs, t)?);
    let rhs = sigma_eval(params, r, &st)?.add(&sigma_eval(params, s, t)?);
    Ok(lhs == rhs)
}

/// `σ(r,s) - σ(s,r)` mod 1.
pub fn pairing(
    params: &CocycleParams,
    r: &GroupElement,
    s: &GroupElement,
) -> Result<CircleExponent> {
    Ok(sigma_eval(params, r, s)?.sub(&sigma_eval(params, s, r)?))
}

/// Reads off the parameters of the class of an arbitrary normalized
/// multiplier from its commutator values `ω(u_i,v_jk) - ω(v_jk,u_i)`.
pub fn extract_params<F>(n: usize, basis: &IrrationalBasis, mut oracle: F) -> Result<CocycleParams>
where
    F: FnMut(&GroupElement, &GroupElement) -> Result<CircleExponent>,
{
    let values = ParamIndex::all_free(n)
        .map(|idx| {
            let u = GroupElement::u(n, idx.i);
            let v = GroupElement::v(n, idx.pair);
            Ok(oracle(&u, &v)?.sub(&oracle(&v, &u)?))
        })
        .collect::<Result<Vec<_>>>()?;
    CocycleParams::from_values(n, basis.clone(), values)
}

/// Similarity of canonical multipliers is equality of parameters.
pub fn similar_to(p: &CocycleParams, q: &CocycleParams) -> Result<bool> {
    if p.n != q.n {
        return Err(Error::RankMismatch {
            expected: p.n,
            found: q.n,
        });
    }
    if p.basis != q.basis {
        return Err(Error::BasisMismatch);
    }
    Ok(p.values == q.values)
}

/// The Heisenberg-group multiplier
/// `λ_1^{s_12 r_1 + ½ s_2 r_1 (r_1-1)} · λ_2^{r_2 (s_12 + r_1 s_2) + ½ r_1 s_2 (s_2-1)}`,
/// written out directly.
pub fn g2_sigma(
    t1: &CircleExponent,
    t2: &CircleExponent,
    r: &GroupElement,
    s: &GroupElement,
) -> Result<CircleExponent> {
    for x in [r, s] {
        if x.rank() != 2 {
            return Err(Error::RankMismatch {
                expected: 2,
                found: x.rank(),
            });
        }
    }
    let c = r.coords();
    let d = s.coords();
    let (r1, r2) = (&c[0], &c[1]);
    let (s2, s12) = (&d[1], &d[2]);
    let e1 = s12 * r1 + s2 * choose2(r1);
    let e2 = r2 * (s12 + r1 * s2) + r1 * choose2(s2);
    Ok(t1.scale(&e1).add(&t2.scale(&e2)))
}

/// One entry of a parameter file; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub t: CircleExponent,
}

/// On-disk parameter file:
/// `{"n": 3, "basis": ["alpha"], "params": [{"i":1,"j":2,"k":3,"t":{…}}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsFile {
    pub n: usize,
    #[serde(default)]
    pub basis: IrrationalBasis,
    #[serde(default)]
    pub params: Vec<ParamEntry>,
}

impl ParamsFile {
    /// Validates indices and symbols; missing entries default to 0.
    pub fn into_params(self) -> Result<CocycleParams> {
        let n = self.n;
        let mut out = CocycleParams::zero(n, self.basis);
        let mut seen = BTreeSet::new();
        for e in self.params {
            let (i, j, k) = (e.i, e.j, e.k);
            if i == 0 || j == 0 || j >= k || k > n || i > n {
                return Err(Error::BadIndex { i, j, k, n });
            }
            if i > k {
                return Err(Error::DerivedIndex { i, j, k });
            }
            if !seen.insert((i, j, k)) {
                return Err(Error::DuplicateIndex { i, j, k });
            }
            out.set(ParamIndex::new(i - 1, Pair::new(j - 1, k - 1)), e.t)?;
        }
        Ok(out)
    }

    /// Writes every free entry, zero or not.
    pub fn from_params(params: &CocycleParams) -> Self {
        ParamsFile {
            n: params.n,
            basis: params.basis.clone(),
            params: ParamIndex::all_free(params.n)
                .zip(&params.values)
                .map(|(idx, t)| ParamEntry {
                    i: idx.i + 1,
                    j: idx.pair.j + 1,
                    k: idx.pair.k + 1,
                    t: t.clone(),
                })
                .collect(),
        }
    }
}

impl Serialize for CocycleParams {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        ParamsFile::from_params(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CocycleParams {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        ParamsFile::deserialize(deserializer)?
            .into_params()
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn el(n: usize, c: &[i64]) -> GroupElement {
        GroupElement::from_i64s(n, c).unwrap()
    }

    fn ce(s: &str) -> CircleExponent {
        s.parse().unwrap()
    }

    fn g2(t1: &str, t2: &str) -> CocycleParams {
        let basis = IrrationalBasis::new(["alpha", "beta"]).unwrap();
        CocycleParams::from_values(2, basis, vec![ce(t1), ce(t2)]).unwrap()
    }

    #[test]
    fn counts_and_positions() {
        for n in 1..=6 {
            let all: Vec<_> = ParamIndex::all_free(n).collect();
            assert_eq!(all.len(), param_count(n));
            for (pos, idx) in all.iter().enumerate() {
                assert_eq!(idx.position(), pos);
            }
        }
        assert_eq!(param_count(3), 8);
        let names: Vec<String> = ParamIndex::all_free(2).map(|p| p.to_string()).collect();
        assert_eq!(names, ["t_{1,12}", "t_{2,12}"]);
    }

    #[test]
    fn exponent_vector_examples() {
        let u1 = GroupElement::u(2, 0);
        let v12 = GroupElement::v(2, Pair::new(0, 1));
        let e = exponent_vector(2, &u1, &v12).unwrap();
        assert_eq!(
            e.support(),
            vec![(ParamIndex::new(0, Pair::new(0, 1)), BigInt::one())]
        );
        let r = el(2, &[4, -3, 2]);
        assert!(exponent_vector(2, &GroupElement::identity(2), &r)
            .unwrap()
            .support()
            .is_empty());
        let e = exponent_vector(2, &el(2, &[2, 0, 0]), &GroupElement::u(2, 1)).unwrap();
        assert_eq!(
            e.support(),
            vec![(ParamIndex::new(0, Pair::new(0, 1)), BigInt::one())]
        );
    }

    #[test]
    fn sigma_examples() {
        let p = g2("1/5 + alpha", "2/7");
        let r = el(2, &[3, -1, 4]);
        assert!(sigma_eval(&p, &GroupElement::identity(2), &r)
            .unwrap()
            .is_integral());
        let u2 = GroupElement::u(2, 1);
        let v12 = GroupElement::v(2, Pair::new(0, 1));
        assert_eq!(sigma_eval(&p, &u2, &v12).unwrap(), ce("2/7"));
        assert!(sigma_eval(&p, &v12, &u2).unwrap().is_integral());
        assert!(sigma_eval(&p, &GroupElement::u(3, 0), &u2).is_err());
    }

    #[test]
    fn cocycle_identity_direct() {
        let n = 3;
        let basis = IrrationalBasis::empty();
        let p = CocycleParams::from_values(n, basis, vec![ce("1/7"); 8]).unwrap();
        let u = |i| GroupElement::u(n, i);
        assert!(cocycle_identity_holds(&p, &u(0), &u(1), &u(2)).unwrap());
        let e = GroupElement::identity(n);
        assert!(cocycle_identity_holds(&p, &e, &u(1), &u(2)).unwrap());
    }

    #[test]
    fn pairing_examples() {
        let p = g2("1/2", "0");
        let u1 = GroupElement::u(2, 0);
        let v12 = GroupElement::v(2, Pair::new(0, 1));
        assert_eq!(pairing(&p, &u1, &v12).unwrap(), ce("1/2"));
        let r = el(2, &[1, 2, 3]);
        assert!(pairing(&p, &r, &r).unwrap().is_integral());
    }

    #[test]
    fn derived_entries() {
        let basis = IrrationalBasis::new(["alpha"]).unwrap();
        let mut p = CocycleParams::zero(3, basis);
        p.set(ParamIndex::new(0, Pair::new(1, 2)), ce("alpha"))
            .unwrap();
        p.set(ParamIndex::new(1, Pair::new(0, 2)), ce("1/3"))
            .unwrap();
        // t_{3,12} = t_{2,13} - t_{1,23}
        assert_eq!(
            p.get(ParamIndex::new(2, Pair::new(0, 1))),
            ce("1/3 - alpha")
        );
        let err = p.set(ParamIndex::new(2, Pair::new(0, 1)), ce("1/2"));
        assert!(matches!(err, Err(Error::DerivedIndex { .. })));
        let err = p.set(ParamIndex::new(0, Pair::new(0, 1)), ce("gamma"));
        assert!(matches!(err, Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn similarity_and_g2() {
        let p = g2("1/3", "beta");
        assert!(similar_to(&p, &p).unwrap());
        assert!(!similar_to(&p, &g2("1/3", "0")).unwrap());
        let other = CocycleParams::zero(2, IrrationalBasis::empty());
        assert_eq!(similar_to(&p, &other), Err(Error::BasisMismatch));
        assert!(similar_to(&p, &CocycleParams::zero(3, p.basis().clone())).is_err());

        let v = g2_sigma(
            &ce("1/3"),
            &ce("beta"),
            &GroupElement::u(2, 0),
            &GroupElement::u(2, 1),
        )
        .unwrap();
        assert!(v.is_integral());
    }

    #[test]
    fn extract_trivial() {
        let basis = IrrationalBasis::empty();
        let p = extract_params(3, &basis, |_, _| Ok(CircleExponent::zero())).unwrap();
        assert_eq!(p, CocycleParams::zero(3, basis));
    }

    #[test]
    fn params_file_validation() {
        let ok = r#"{"n":2,"basis":["alpha"],"params":[{"i":2,"j":1,"k":2,"t":{"rat":"1/3","irr":{"alpha":"1/1"}}}]}"#;
        let p: CocycleParams = serde_json::from_str(ok).unwrap();
        assert_eq!(p.values()[0], CircleExponent::zero());
        assert_eq!(p.values()[1], ce("1/3 + alpha"));

        let derived = r#"{"n":3,"params":[{"i":3,"j":1,"k":2,"t":{"rat":"1/2"}}]}"#;
        let err = serde_json::from_str::<ParamsFile>(derived)
            .unwrap()
            .into_params();
        assert!(matches!(err, Err(Error::DerivedIndex { i: 3, j: 1, k: 2 })));

        let bad = r#"{"n":2,"params":[{"i":1,"j":2,"k":1,"t":{"rat":"1/2"}}]}"#;
        let err = serde_json::from_str::<ParamsFile>(bad)
            .unwrap()
            .into_params();
        assert!(matches!(err, Err(Error::BadIndex { .. })));

        let unknown =
            r#"{"n":2,"params":[{"i":1,"j":1,"k":2,"t":{"rat":"0/1","irr":{"beta":"1/1"}}}]}"#;
        let err = serde_json::from_str::<ParamsFile>(unknown)
            .unwrap()
            .into_params();
        assert!(matches!(err, Err(Error::UnknownSymbol(_))));

        let dup = r#"{"n":2,"params":[{"i":1,"j":1,"k":2,"t":{"rat":"1/2"}},{"i":1,"j":1,"k":2,"t":{"rat":"1/3"}}]}"#;
        let err = serde_json::from_str::<ParamsFile>(dup)
            .unwrap()
            .into_params();
        assert!(matches!(err, Err(Error::DuplicateIndex { .. })));

        let round = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<CocycleParams>(&round).unwrap(), p);
    }
}
