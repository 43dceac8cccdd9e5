//! σ-regular central elements and the simplicity decision.
//!
//! A central `s` is σ-regular exactly when `(T s)_i ∈ Z` for every row `i`
//! of the parameter matrix `T = (t_{i,jk})`. The twisted algebra is simple
//! exactly when no nonzero integer `s` passes, i.e. when
//! `T⁻¹(Z^n) ∩ Z^{n(n-1)/2} = {0}`.
//!
//! Under the independence contract on the symbols, `(T s)_i ∈ Z` splits into
//! one homogeneous integer system per symbol (its coefficients must cancel)
//! and a rational congruence on what is left. The first stage is an integer
//! kernel, the second a lattice preimage; both are read off Smith forms,
//! which are kept as the certificate.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cocycle::{pairing, CocycleParams, ParamIndex, ParamsFile};
use crate::error::{Error, Result};
use crate::group::{central_dim, GroupElement, Pair};
use crate::scalars::lattice::preimage_from_smith;
use crate::scalars::{
    clear_denominators, smith_normal_form, CircleExponent, IntegerMatrix, LatticeBasis, SmithForm,
};

/// The `n × n(n-1)/2` matrix of exponents `t_{i,jk}`, derived entries
/// included, columns in colex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamMatrix {
    n: usize,
    entries: Vec<CircleExponent>,
}

impl ParamMatrix {
    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        central_dim(self.n)
    }

    pub fn get(&self, i: usize, pair: Pair) -> &CircleExponent {
        &self.entries[i * self.cols() + pair.index()]
    }

    pub fn row(&self, i: usize) -> &[CircleExponent] {
        let m = self.cols();
        &self.entries[i * m..(i + 1) * m]
    }

    /// `T s` for an integer vector `s` of central coordinates.
    pub fn apply(&self, s: &[BigInt]) -> Result<Vec<CircleExponent>> {
        if s.len() != self.cols() {
            return Err(Error::Shape("central vector length".into()));
        }
        Ok((0..self.n)
            .map(|i| CircleExponent::linear_combination(s.iter().zip(self.row(i))))
            .collect())
    }
}

pub fn param_matrix(params: &CocycleParams) -> ParamMatrix {
    let n = params.rank();
    let entries = (0..n)
        .flat_map(|i| Pair::all(n).map(move |pair| ParamIndex::new(i, pair)))
        .map(|idx| params.get(idx))
        .collect();
    ParamMatrix { n, entries }
}

/// The subgroup S(G(n)) of σ-regular central elements, as a lattice in
/// the central coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularCentralSubgroup {
    pub n: usize,
    pub lattice: LatticeBasis,
    pub rank: usize,
}

impl RegularCentralSubgroup {
    pub fn contains(&self, s: &GroupElement) -> bool {
        s.rank() == self.n && s.is_central() && self.lattice.contains(s.central())
    }
}

/// Stage 1: stacked symbol-coefficient rows, denominators cleared per row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolStage {
    pub matrix: IntegerMatrix,
    pub smith: SmithForm,
    /// Z-basis of the integer kernel, as rows.
    pub kernel: LatticeBasis,
}

/// Stage 2: rational parts restricted to the stage-1 kernel, written as
/// `matrix / denominator` acting on kernel coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalStage {
    pub matrix: IntegerMatrix,
    #[serde(with = "bigint_string")]
    pub denominator: BigInt,
    pub smith: SmithForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreimageProof {
    pub symbols: SymbolStage,
    pub rational: RationalStage,
}

fn symbol_matrix(params: &CocycleParams, t: &ParamMatrix) -> IntegerMatrix {
    let m = t.cols();
    let mut rows = Vec::new();
    for sym in params.basis().symbols() {
        for i in 0..t.rows() {
            let coefs: Vec<BigRational> = t.row(i).iter().map(|x| x.coefficient(sym)).collect();
            let (row, _) = clear_denominators(1, m, &coefs).expect("one row of m entries");
            rows.push(row.row(0).to_vec());
        }
    }
    IntegerMatrix::from_rows(rows, m).expect("rows of equal length")
}

/// `T_rat · Bᵀ` over the kernel basis `B`, as `(N, d)`.
fn rational_matrix(t: &ParamMatrix, kernel: &LatticeBasis) -> (IntegerMatrix, BigInt) {
    let r = kernel.rank();
    let entries: Vec<BigRational> = (0..t.rows())
        .flat_map(|i| {
            kernel.vectors().iter().map(move |b| {
                t.row(i)
                    .iter()
                    .zip(b)
                    .map(|(x, c)| x.rational_part() * BigRational::from_integer(c.clone()))
                    .fold(BigRational::zero(), |acc, y| acc + y)
            })
        })
        .collect();
    clear_denominators(t.rows(), r, &entries).expect("n·r entries")
}

fn kernel_from_smith(snf: &SmithForm, cols: usize) -> LatticeBasis {
    let gens = (snf.rank..cols).map(|j| snf.v.column(j)).collect();
    LatticeBasis::from_generators(cols, gens).expect("columns of V have length cols")
}

/// Maps kernel coordinates `y` back to central coordinates `Σ y_q B_q`.
fn lift(kernel: &LatticeBasis, coords: &LatticeBasis) -> LatticeBasis {
    let m = kernel.dim();
    let gens = coords
        .vectors()
        .iter()
        .map(|y| {
            let mut s = vec![BigInt::zero(); m];
            for (yq, bq) in y.iter().zip(kernel.vectors()) {
                for (sc, bc) in s.iter_mut().zip(bq) {
                    *sc += yq * bc;
                }
            }
            s
        })
        .collect();
    LatticeBasis::from_generators(m, gens).expect("vectors of length m")
}

fn solve(params: &CocycleParams) -> (RegularCentralSubgroup, PreimageProof) {
    let n = params.rank();
    let t = param_matrix(params);
    let m = t.cols();

    let sym = symbol_matrix(params, &t);
    let sym_smith = smith_normal_form(&sym);
    let kernel = kernel_from_smith(&sym_smith, m);

    let (rat, d) = rational_matrix(&t, &kernel);
    let rat_smith = smith_normal_form(&rat);
    let coords = preimage_from_smith(&rat_smith, kernel.rank(), &d);
    let lattice = lift(&kernel, &coords);

    let rank = lattice.rank();
    let proof = PreimageProof {
        symbols: SymbolStage {
            matrix: sym,
            smith: sym_smith,
            kernel,
        },
        rational: RationalStage {
            matrix: rat,
            denominator: d,
            smith: rat_smith,
        },
    };
    (RegularCentralSubgroup { n, lattice, rank }, proof)
}

pub fn regular_central_subgroup(params: &CocycleParams) -> RegularCentralSubgroup {
    solve(params).0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Simple,
    NotSimple,
}

/// Machine-checkable outcome of [`is_simple`]. Self-contained: it carries the
/// parameters it was computed from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicityCertificate {
    pub params: ParamsFile,
    pub verdict: Verdict,
    /// Rank of S(G(n)); the center of the algebra is `C(T^center_rank)`.
    pub center_rank: usize,
    pub center: String,
    pub regular_basis: LatticeBasis,
    pub witness: Option<GroupElement>,
    pub proof: PreimageProof,
}

fn max_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
}

/// Shortest basis vector by max-norm, ties broken lexicographically.
fn pick_witness(n: usize, lattice: &LatticeBasis) -> Option<GroupElement> {
    lattice
        .vectors()
        .iter()
        .min_by(|a, b| match max_norm(a).cmp(&max_norm(b)) {
            Ordering::Equal => a.cmp(b),
            o => o,
        })
        .map(|v| GroupElement::central_from(n, v.clone()).expect("central length"))
}

pub fn is_simple(params: &CocycleParams) -> SimplicityCertificate {
    let n = params.rank();
    let (sub, proof) = solve(params);
    let verdict = if sub.rank == 0 {
        Verdict::Simple
    } else {
        Verdict::NotSimple
    };
    SimplicityCertificate {
        params: ParamsFile::from_params(params),
        verdict,
        center_rank: sub.rank,
        center: format!("C(T^{})", sub.rank),
        witness: pick_witness(n, &sub.lattice),
        regular_basis: sub.lattice,
        proof,
    }
}

fn check_central(params: &CocycleParams, s: &GroupElement) -> Result<()> {
    if s.rank() != params.rank() {
        return Err(Error::RankMismatch {
            expected: params.rank(),
            found: s.rank(),
        });
    }
    if !s.is_central() {
        return Err(Error::NotCentral);
    }
    Ok(())
}

/// σ-regularity of a central `s` by `σ(u_i,s) = σ(s,u_i)` for every `i`.
pub fn regular_by_pairing(params: &CocycleParams, s: &GroupElement) -> Result<bool> {
    check_central(params, s)?;
    let n = params.rank();
    for i in 0..n {
        if !pairing(params, &GroupElement::u(n, i), s)?.is_integral() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// σ-regularity of a central `s` by integrality of `T s`.
pub fn regular_by_matrix(params: &CocycleParams, s: &GroupElement) -> Result<bool> {
    check_central(params, s)?;
    Ok(param_matrix(params)
        .apply(s.central())?
        .iter()
        .all(CircleExponent::is_integral))
}

/// Both criteria must accept.
pub fn verify_witness(params: &CocycleParams, s: &GroupElement) -> Result<bool> {
    Ok(regular_by_pairing(params, s)? && regular_by_matrix(params, s)?)
}

/// Re-checks a certificate from scratch. Returns the list of failed checks;
/// an empty list means the certificate is valid.
pub fn verify_certificate(cert: &SimplicityCertificate) -> Result<Vec<String>> {
    let params = cert.params.clone().into_params()?;
    let n = params.rank();
    let m = central_dim(n);
    let t = param_matrix(&params);
    let mut failures = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_string());
        }
    };

    let stage1 = &cert.proof.symbols;
    check(
        stage1.matrix == symbol_matrix(&params, &t),
        "symbol matrix does not match the parameters",
    );
    check(
        stage1.smith.verify(&stage1.matrix),
        "symbol-stage Smith form identities fail",
    );
    let kernel = kernel_from_smith(&stage1.smith, m);
    check(
        kernel == stage1.kernel,
        "kernel does not follow from the symbol-stage Smith form",
    );
    for v in kernel.vectors() {
        check(
            stage1
                .matrix
                .mul_vec(v)
                .is_ok_and(|w| w.iter().all(Zero::is_zero)),
            "kernel vector is not annihilated",
        );
    }

    let stage2 = &cert.proof.rational;
    let (rat, d) = rational_matrix(&t, &kernel);
    check(
        stage2.matrix == rat && stage2.denominator == d,
        "rational-stage matrix does not match the parameters",
    );
    check(
        stage2.smith.verify(&stage2.matrix),
        "rational-stage Smith form identities fail",
    );
    let lattice = if stage2.denominator.is_positive() {
        lift(
            &kernel,
            &preimage_from_smith(&stage2.smith, kernel.rank(), &stage2.denominator),
        )
    } else {
        LatticeBasis::zero(m)
    };
    check(
        lattice == cert.regular_basis,
        "regular basis does not follow from the proof",
    );
    check(cert.center_rank == lattice.rank(), "center rank mismatch");

    for v in cert.regular_basis.vectors() {
        let s = GroupElement::central_from(n, v.clone())?;
        check(
            verify_witness(&params, &s)?,
            "basis vector is not σ-regular",
        );
    }

    match cert.verdict {
        Verdict::Simple => {
            check(
                lattice.is_trivial(),
                "simple verdict with a nontrivial regular lattice",
            );
            check(cert.witness.is_none(), "simple verdict carries a witness");
        }
        Verdict::NotSimple => match &cert.witness {
            Some(w) => {
                check(!w.is_identity(), "witness is trivial");
                check(w.is_central() && w.rank() == n, "witness is not central");
                check(
                    w.is_central() && verify_witness(&params, w)?,
                    "witness is not σ-regular",
                );
                check(
                    lattice.contains(w.central()),
                    "witness is not in the regular lattice",
                );
            }
            None => check(false, "not_simple verdict without a witness"),
        },
    }
    Ok(failures)
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        use serde::de::Error as _;
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// The least common multiple of the denominators of a rational column, if
/// every entry in column `pair` is rational. `q·v_jk` is then σ-regular.
pub fn rational_column_order(t: &ParamMatrix, pair: Pair) -> Option<BigInt> {
    (0..t.rows()).try_fold(BigInt::one(), |acc, i| {
        let x = t.get(i, pair);
        x.is_rational().then(|| acc.lcm(x.rational_part().denom()))
    })
}
