//! Endomorphisms and automorphisms of G(n), and the GL(n,Z) action on
//! cocycle parameters.
//!
//! An endomorphism is fixed by the images of the `u_i`. Row `i` of `A` holds
//! the base part of `φ(u_i)`, row `i` of `S` its central part. `φ` is an
//! automorphism exactly when `A` is unimodular; `S` is then arbitrary.

use num_traits::Zero;

use crate::cocycle::{extract_params, sigma_eval, CocycleParams, ParamIndex};
use crate::error::{Error, Result};
use crate::group::{central_dim, Generator, GroupElement, Pair};
use crate::scalars::{CircleExponent, IntegerMatrix};
use crate::simplicity::param_matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    n: usize,
    a: IntegerMatrix,
    s: IntegerMatrix,
    images: Vec<GroupElement>,
}

impl Endomorphism {
    pub fn new(a: IntegerMatrix, s: IntegerMatrix) -> Result<Self> {
        let n = a.rows();
        if !a.is_square() {
            return Err(Error::Shape(format!(
                "A is {}x{}, expected square",
                a.rows(),
                a.cols()
            )));
        }
        let m = central_dim(n);
        if s.rows() != n || s.cols() != m {
            return Err(Error::Shape(format!(
                "S is {}x{}, expected {n}x{m}",
                s.rows(),
                s.cols()
            )));
        }
        let images = (0..n)
            .map(|i| GroupElement::from_parts(n, a.row(i).to_vec(), s.row(i).to_vec()))
            .collect::<Result<_>>()?;
        Ok(Endomorphism { n, a, s, images })
    }

    /// The endomorphism with `u_i ↦ images[i]`.
    pub fn from_images(n: usize, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != n {
            return Err(Error::Shape(format!(
                "{} images for rank {n}",
                images.len()
            )));
        }
        for g in &images {
            if g.rank() != n {
                return Err(Error::RankMismatch {
                    expected: n,
                    found: g.rank(),
                });
            }
        }
        let a = IntegerMatrix::from_rows(images.iter().map(|g| g.base().to_vec()).collect(), n)?;
        let s = IntegerMatrix::from_rows(
            images.iter().map(|g| g.central().to_vec()).collect(),
            central_dim(n),
        )?;
        Ok(Endomorphism { n, a, s, images })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &IntegerMatrix {
        &self.a
    }

    pub fn s(&self) -> &IntegerMatrix {
        &self.s
    }

    /// `φ(u_i)`.
    pub fn image(&self, i: usize) -> &GroupElement {
        &self.images[i]
    }

    /// Evaluates `φ` on the normal form of `r`, letter by letter.
    pub fn apply(&self, r: &GroupElement) -> Result<GroupElement> {
        if r.rank() != self.n {
            return Err(Error::RankMismatch {
                expected: self.n,
                found: r.rank(),
            });
        }
        r.normal_form()
            .into_iter()
            .try_fold(GroupElement::identity(self.n), |acc, (g, p)| {
                let img = match g {
                    Generator::U(i) => self.images[i].clone(),
                    Generator::V(pair) => self.images[pair.j].commutator(&self.images[pair.k])?,
                };
                acc.multiply(&img.pow(&p))
            })
    }

    pub fn is_automorphism(&self) -> bool {
        self.a.is_unimodular()
    }
}

/// An endomorphism with unimodular `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism(Endomorphism);

impl Automorphism {
    pub fn new(a: IntegerMatrix, s: IntegerMatrix) -> Result<Self> {
        Self::try_from(Endomorphism::new(a, s)?)
    }

    /// The lift of `A` with trivial central parts.
    pub fn lift(a: IntegerMatrix) -> Result<Self> {
        let n = a.rows();
        Self::new(a, IntegerMatrix::zeros(n, central_dim(n)))
    }

    pub fn identity(n: usize) -> Self {
        Self::lift(IntegerMatrix::identity(n)).expect("identity is unimodular")
    }

    /// Conjugation `r ↦ s r s⁻¹`.
    pub fn inner_from(s: &GroupElement) -> Self {
        let n = s.rank();
        let images = (0..n)
            .map(|i| {
                s.conjugate_closed_form(&GroupElement::u(n, i))
                    .expect("same rank")
            })
            .collect();
        Self::try_from(Endomorphism::from_images(n, images).expect("rank n images"))
            .expect("inner automorphisms have A = I")
    }

    pub fn rank(&self) -> usize {
        self.0.n
    }

    pub fn a(&self) -> &IntegerMatrix {
        &self.0.a
    }

    pub fn s(&self) -> &IntegerMatrix {
        &self.0.s
    }

    pub fn image(&self, i: usize) -> &GroupElement {
        self.0.image(i)
    }

    pub fn as_endomorphism(&self) -> &Endomorphism {
        &self.0
    }

    pub fn apply(&self, r: &GroupElement) -> Result<GroupElement> {
        self.0.apply(r)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        let images = other
            .0
            .images
            .iter()
            .map(|g| self.apply(g))
            .collect::<Result<_>>()?;
        Self::try_from(Endomorphism::from_images(self.rank(), images)?)
    }

    /// Lifts `A⁻¹` with `S = 0`, then cancels the central error with an
    /// `A = I` correction.
    pub fn inverse(&self) -> Self {
        let n = self.rank();
        let a_inv = self.a().inverse_unimodular().expect("A is unimodular");
        let psi0 = Self::lift(a_inv).expect("inverse is unimodular");
        let c = self.compose(&psi0).expect("same rank");
        let mut neg = c.s().clone();
        for i in 0..neg.rows() {
            neg.negate_row(i);
        }
        let fix = Self::new(IntegerMatrix::identity(n), neg).expect("shapes match");
        psi0.compose(&fix).expect("same rank")
    }
}

impl TryFrom<Endomorphism> for Automorphism {
    type Error = Error;

    fn try_from(e: Endomorphism) -> Result<Self> {
        if !e.is_automorphism() {
            let det = e.a.det().map(|d| d.to_string()).unwrap_or_default();
            return Err(Error::NotUnimodular(det));
        }
        Ok(Automorphism(e))
    }
}

/// `ã_{ij,kl} = a_ik a_jl − a_il a_jk`, rows and columns in colex order.
pub fn minor_matrix(a: &IntegerMatrix) -> Result<IntegerMatrix> {
    if !a.is_square() {
        return Err(Error::Shape("minor matrix of a non-square matrix".into()));
    }
    let n = a.rows();
    let m = central_dim(n);
    let mut out = IntegerMatrix::zeros(m, m);
    for p in Pair::all(n) {
        for q in Pair::all(n) {
            out[(p.index(), q.index())] =
                &a[(p.j, q.j)] * &a[(p.k, q.k)] - &a[(p.j, q.k)] * &a[(p.k, q.j)];
        }
    }
    Ok(out)
}

/// Parameters of `σ_φ` for the lift `φ` of `A`: `T' = A T Ãᵀ`, read back on
/// the free entries.
pub fn act_on_params(a: &IntegerMatrix, params: &CocycleParams) -> Result<CocycleParams> {
    let n = params.rank();
    if a.rows() != n || !a.is_square() {
        return Err(Error::Shape(format!("A must be {n}x{n}")));
    }
    if !a.is_unimodular() {
        return Err(Error::NotUnimodular(a.det()?.to_string()));
    }
    let minors = minor_matrix(a)?;
    let t = param_matrix(params);
    let pairs: Vec<Pair> = Pair::all(n).collect();
    // (A T)_{i,d}
    let at: Vec<Vec<CircleExponent>> = (0..n)
        .map(|i| {
            pairs
                .iter()
                .map(|&d| {
                    CircleExponent::linear_combination((0..n).map(|l| (&a[(i, l)], t.get(l, d))))
                })
                .collect()
        })
        .collect();
    let values = ParamIndex::all_free(n)
        .map(|idx| {
            let c = idx.pair.index();
            let row = &at[idx.i];
            CircleExponent::linear_combination(
                pairs
                    .iter()
                    .map(|d| &minors[(c, d.index())])
                    .zip(row)
                    .filter(|(m, _)| !m.is_zero()),
            )
        })
        .collect();
    CocycleParams::from_values(n, params.basis().clone(), values)
}

/// Parameters of `σ_φ(r,s) = σ(φ(r), φ(s))`, read off by extraction.
pub fn pullback(phi: &Automorphism, params: &CocycleParams) -> Result<CocycleParams> {
    let n = params.rank();
    if phi.rank() != n {
        return Err(Error::RankMismatch {
            expected: n,
            found: phi.rank(),
        });
    }
    extract_params(n, params.basis(), |r, s| {
        sigma_eval(params, &phi.apply(r)?, &phi.apply(s)?)
    })
}

/// `P, A·P, A²·P, …`, `steps + 1` entries.
pub fn orbit(
    a: &IntegerMatrix,
    params: &CocycleParams,
    steps: usize,
) -> Result<Vec<CocycleParams>> {
    let mut out = vec![params.clone()];
    for _ in 0..steps {
        let next = act_on_params(a, out.last().expect("nonempty"))?;
        out.push(next);
    }
    Ok(out)
}
