//! Integer matrices, Smith and Hermite normal forms, and the lattice
//! computations built on them.
//!
//! Both normal forms are computed by plain Euclidean row/column reduction
//! with explicit transformation matrices. The pivot is always the entry of
//! smallest nonzero absolute value in the active block.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntegerMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is only consulted when there are no
    /// rows.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        let cols = rows.first().map_or(cols, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let nrows = rows.len();
        Ok(IntegerMatrix {
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cols,
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<BigInt>], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Shape("column length".into()));
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let val = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = val / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().is_ok_and(|d| d.abs().is_one())
    }

    /// Exact inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        let det = self.det()?;
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        // U A V = I, hence A⁻¹ = V U.
        let snf = smith_normal_form(self);
        snf.v.mul(&snf.u)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c · row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let delta = c * &self[(src, j)];
            self[(dst, j)] += delta;
        }
    }

    /// `col[dst] += c · col[src]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let delta = c * &self[(i, src)];
            self[(i, dst)] += delta;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = -x;
        }
    }
}

impl Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A JSON matrix entry: a number or a decimal string.
#[derive(Deserialize)]
#[serde(untagged)]
pub(crate) enum EntryRepr {
    Num(i64),
    Str(String),
}

impl EntryRepr {
    fn parse<E: serde::de::Error>(self) -> std::result::Result<BigInt, E> {
        match self {
            EntryRepr::Num(x) => Ok(BigInt::from(x)),
            EntryRepr::Str(s) => s.trim().parse().map_err(E::custom),
        }
    }
}

pub(crate) fn parse_entry_rows<E: serde::de::Error>(
    rows: Vec<Vec<EntryRepr>>,
) -> std::result::Result<Vec<Vec<BigInt>>, E> {
    rows.into_iter()
        .map(|r| r.into_iter().map(EntryRepr::parse).collect())
        .collect()
}

/// Serializes as `{"rows": r, "cols": c, "entries": [["1","0"],…]}`.
#[derive(Serialize)]
struct MatrixOut {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct MatrixIn {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<EntryRepr>>,
}

impl Serialize for IntegerMatrix {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        MatrixOut {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .to_rows()
                .into_iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntegerMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let m = MatrixIn::deserialize(deserializer)?;
        let rows = parse_entry_rows::<D::Error>(m.entries)?;
        if rows.len() != m.rows {
            return Err(D::Error::custom("row count mismatch"));
        }
        let out = IntegerMatrix::from_rows(rows, m.cols).map_err(D::Error::custom)?;
        if out.cols != m.cols {
            return Err(D::Error::custom("column count mismatch"));
        }
        Ok(out)
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_0 | d_1 | … | d_{rank-1}`, all `d_i > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub rank: usize,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Re-checks every identity a Smith form must satisfy against `m`.
    pub fn verify(&self, m: &IntegerMatrix) -> bool {
        let (r, c) = (m.rows(), m.cols());
        if self.u.rows() != r
            || !self.u.is_square()
            || self.v.rows() != c
            || !self.v.is_square()
            || self.d.rows() != r
            || self.d.cols() != c
            || self.rank > r.min(c)
        {
            return false;
        }
        if !self.u.is_unimodular() || !self.v.is_unimodular() {
            return false;
        }
        let Ok(prod) = self.u.mul(m).and_then(|um| um.mul(&self.v)) else {
            return false;
        };
        if prod != self.d {
            return false;
        }
        for i in 0..r {
            for j in 0..c {
                let x = &self.d[(i, j)];
                let on_diag = i == j && i < self.rank;
                if on_diag != !x.is_zero() || (on_diag && !x.is_positive()) {
                    return false;
                }
            }
        }
        (1..self.rank).all(|i| (&self.d[(i, i)] % &self.d[(i - 1, i - 1)]).is_zero())
    }
}

fn smallest_nonzero(
    a: &IntegerMatrix,
    cells: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    cells
        .filter(|&(i, j)| !a[(i, j)].is_zero())
        .min_by(|&x, &y| a[x].abs().cmp(&a[y].abs()))
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(r);
    let mut v = IntegerMatrix::identity(c);
    let mut t = 0;
    while t < r.min(c) {
        let block = (t..r).flat_map(|i| (t..c).map(move |j| (i, j)));
        let Some((pi, pj)) = smallest_nonzero(&a, block) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if !a[(i, t)].is_zero() {
                    let q = -a[(i, t)].div_floor(&a[(t, t)]);
                    a.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                    clean &= a[(i, t)].is_zero();
                }
            }
            for j in t + 1..c {
                if !a[(t, j)].is_zero() {
                    let q = -a[(t, j)].div_floor(&a[(t, t)]);
                    a.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                    clean &= a[(t, j)].is_zero();
                }
            }
            if !clean {
                let cross = (t + 1..r).map(|i| (i, t)).chain((t + 1..c).map(|j| (t, j)));
                if let Some((pi, pj)) = smallest_nonzero(&a, cross) {
                    a.swap_rows(t, pi);
                    u.swap_rows(t, pi);
                    a.swap_cols(t, pj);
                    v.swap_cols(t, pj);
                }
                continue;
            }
            let pivot = a[(t, t)].clone();
            let offender =
                (t + 1..r).find(|&i| (t + 1..c).any(|j| !(&a[(i, j)] % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    a.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SmithForm {
        u,
        d: a,
        v,
        rank: t,
    }
}

/// `U · M = H` with `H` in row echelon form: positive pivots, entries above
/// each pivot reduced into `[0, pivot)`, zero rows last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntegerMatrix,
    pub u: IntegerMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn hermite_normal_form(m: &IntegerMatrix) -> HermiteForm {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(r);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        let mut found = false;
        while let Some((pi, _)) = smallest_nonzero(&a, (row..r).map(|i| (i, col))) {
            found = true;
            a.swap_rows(row, pi);
            u.swap_rows(row, pi);
            let mut done = true;
            for i in row + 1..r {
                if !a[(i, col)].is_zero() {
                    let q = -a[(i, col)].div_floor(&a[(row, col)]);
                    a.add_row_multiple(i, row, &q);
                    u.add_row_multiple(i, row, &q);
                    done &= a[(i, col)].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if !found {
            continue;
        }
        if a[(row, col)].is_negative() {
            a.negate_row(row);
            u.negate_row(row);
        }
        for i in 0..row {
            let q = -a[(i, col)].div_floor(&a[(row, col)]);
            if !q.is_zero() {
                a.add_row_multiple(i, row, &q);
                u.add_row_multiple(i, row, &q);
            }
        }
        pivots.push(col);
        row += 1;
    }
    HermiteForm {
        h: a,
        u,
        rank: row,
        pivots,
    }
}

/// A sublattice of `Z^dim`, stored as the nonzero rows of its Hermite normal
/// form. Two bases compare equal exactly when they span the same lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    dim: usize,
    vectors: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn zero(dim: usize) -> Self {
        LatticeBasis {
            dim,
            vectors: Vec::new(),
        }
    }

    pub fn full(dim: usize) -> Self {
        Self::from_generators(dim, IntegerMatrix::identity(dim).to_rows())
            .expect("identity rows have the right length")
    }

    /// The lattice spanned by arbitrary (possibly dependent) generators.
    pub fn from_generators(dim: usize, generators: Vec<Vec<BigInt>>) -> Result<Self> {
        if generators.iter().any(|g| g.len() != dim) {
            return Err(Error::Shape("generator length".into()));
        }
        let m = IntegerMatrix::from_rows(generators, dim)?;
        let hnf = hermite_normal_form(&m);
        Ok(LatticeBasis {
            dim,
            vectors: (0..hnf.rank).map(|i| hnf.h.row(i).to_vec()).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vectors
    }

    /// Basis vectors as the rows of a matrix.
    pub fn to_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_rows(self.vectors.clone(), self.dim).expect("rectangular")
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        if v.len() != self.dim {
            return false;
        }
        let mut rest = v.to_vec();
        for row in &self.vectors {
            let p = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("HNF rows are nonzero");
            if rest[..p].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, rem) = rest[p].div_rem(&row[p]);
            if !rem.is_zero() {
                return false;
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        rest.iter().all(Zero::is_zero)
    }

    pub fn is_sublattice_of(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vectors.iter().all(|v| other.contains(v))
    }
}

/// Z-basis of `{x ∈ Z^cols : M x = 0}`.
pub fn integer_kernel(m: &IntegerMatrix) -> LatticeBasis {
    let snf = smith_normal_form(m);
    let gens = (snf.rank..m.cols()).map(|j| snf.v.column(j)).collect();
    LatticeBasis::from_generators(m.cols(), gens).expect("columns of V have length cols")
}

/// Z-basis of `{x ∈ Z^cols : (M/d) x ∈ Z^rows}` for an integer matrix `M`
/// and a positive common denominator `d`.
pub fn lattice_preimage(m: &IntegerMatrix, denominator: &BigInt) -> Result<LatticeBasis> {
    if !denominator.is_positive() {
        return Err(Error::Shape("denominator must be positive".into()));
    }
    let snf = smith_normal_form(m);
    Ok(preimage_from_smith(&snf, m.cols(), denominator))
}

/// Reads the preimage lattice off a Smith form of `M`: with `y = V⁻¹x`, the
/// condition becomes `d_i y_i ≡ 0 (mod denominator)` coordinatewise.
pub(crate) fn preimage_from_smith(
    snf: &SmithForm,
    cols: usize,
    denominator: &BigInt,
) -> LatticeBasis {
    let gens = (0..cols)
        .map(|j| {
            let col = snf.v.column(j);
            if j < snf.rank {
                let step = denominator / denominator.gcd(&snf.d[(j, j)]);
                col.into_iter().map(|x| x * &step).collect()
            } else {
                col
            }
        })
        .collect();
    LatticeBasis::from_generators(cols, gens).expect("columns of V have length cols")
}

/// Clears denominators of a rational matrix: returns `(M, d)` with
/// `entries = M / d` and `d` the least common denominator.
pub fn clear_denominators(
    rows: usize,
    cols: usize,
    entries: &[BigRational],
) -> Result<(IntegerMatrix, BigInt)> {
    if entries.len() != rows * cols {
        return Err(Error::Shape("rational entry count".into()));
    }
    let d = entries
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let data = entries
        .iter()
        .map(|q| q.numer() * (&d / q.denom()))
        .collect();
    Ok((IntegerMatrix::new(rows, cols, data)?, d))
}

/// [`lattice_preimage`] for a matrix given by rational entries (row-major).
pub fn lattice_preimage_rational(
    rows: usize,
    cols: usize,
    entries: &[BigRational],
) -> Result<LatticeBasis> {
    let (m, d) = clear_denominators(rows, cols, entries)?;
    lattice_preimage(&m, &d)
}

/// Lattice JSON: `{"dim": m, "vectors": [["6"], …]}`.
#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    dim: usize,
    vectors: Vec<Vec<String>>,
}

impl Serialize for LatticeBasis {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        LatticeRepr {
            dim: self.dim(),
            vectors: self
                .vectors()
                .iter()
                .map(|v| v.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LatticeBasis {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = LatticeRepr::deserialize(deserializer)?;
        let gens = repr
            .vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| x.parse::<BigInt>())
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        LatticeBasis::from_generators(repr.dim, gens).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_i64_rows(rows).unwrap()
    }

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn smith_of_diag_2_3() {
        let m = mat(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&m);
        assert!(snf.verify(&m));
        assert_eq!(snf.diagonal(), big(&[1, 6]));
    }

    #[test]
    fn smith_of_empty_and_zero() {
        let empty = IntegerMatrix::zeros(0, 3);
        let snf = smith_normal_form(&empty);
        assert_eq!(snf.rank, 0);
        assert!(snf.verify(&empty));
        let z = IntegerMatrix::zeros(2, 2);
        assert_eq!(smith_normal_form(&z).rank, 0);
        assert_eq!(integer_kernel(&IntegerMatrix::zeros(0, 0)).rank(), 0);
    }

    #[test]
    fn kernel_of_row_one_one() {
        let k = integer_kernel(&mat(&[&[1, 1]]));
        assert_eq!(k.rank(), 1);
        assert!(k.contains(&big(&[1, -1])));
        assert!(!k.contains(&big(&[1, 1])));
        assert_eq!(
            k,
            LatticeBasis::from_generators(2, vec![big(&[1, -1])]).unwrap()
        );
    }

    #[test]
    fn preimage_half_third() {
        let entries = [
            BigRational::new(1.into(), 2.into()),
            BigRational::new(1.into(), 3.into()),
        ];
        let l = lattice_preimage_rational(2, 1, &entries).unwrap();
        assert_eq!(l.vectors(), &[big(&[6])]);
    }

    #[test]
    fn determinant_and_inverse() {
        let a = mat(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]);
        assert_eq!(a.det().unwrap(), BigInt::one());
        let inv = a.inverse_unimodular().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), IntegerMatrix::identity(3));
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).det().unwrap(), BigInt::from(-1));
        assert_eq!(mat(&[&[2, 4], &[1, 2]]).det().unwrap(), BigInt::zero());
        assert!(mat(&[&[2, 0], &[0, 1]]).inverse_unimodular().is_err());
    }

    #[test]
    fn hermite_shape() {
        let m = mat(&[&[4, 6], &[2, 8], &[6, 14]]);
        let hnf = hermite_normal_form(&m);
        assert_eq!(hnf.u.mul(&m).unwrap(), hnf.h);
        assert!(hnf.u.is_unimodular());
        assert_eq!(hnf.rank, 2);
        assert_eq!(hnf.h.row(0), &big(&[2, 8])[..]);
        assert_eq!(hnf.h.row(1), &big(&[0, 10])[..]);
        assert!(hnf.h.row(2).iter().all(Zero::is_zero));
    }

    #[test]
    fn matrix_json() {
        let m = mat(&[&[1, -2], &[0, 3]]);
        let s = serde_json::to_string(&m).unwrap();
        let back: IntegerMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let mixed: IntegerMatrix =
            serde_json::from_str(r#"{"rows":1,"cols":2,"entries":[[1,"-5"]]}"#).unwrap();
        assert_eq!(mixed, mat(&[&[1, -5]]));
    }

    fn arb_matrix() -> impl Strategy<Value = IntegerMatrix> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..=9, r * c)
                .prop_map(move |d| IntegerMatrix::new(r, c, big(&d)).unwrap())
        })
    }

    proptest! {
        #[test]
        fn smith_identities(m in arb_matrix()) {
            let snf = smith_normal_form(&m);
            prop_assert!(snf.verify(&m));
        }

        #[test]
        fn hermite_identities(m in arb_matrix()) {
            let hnf = hermite_normal_form(&m);
            prop_assert_eq!(hnf.u.mul(&m).unwrap(), hnf.h.clone());
            prop_assert!(hnf.u.is_unimodular());
            for (row, &p) in hnf.pivots.iter().enumerate() {
                let piv = &hnf.h[(row, p)];
                prop_assert!(piv.is_positive());
                for above in 0..row {
                    let x = &hnf.h[(above, p)];
                    prop_assert!(!x.is_negative() && x < piv);
                }
            }
        }

        #[test]
        fn kernel_vectors_are_annihilated(m in arb_matrix()) {
            let k = integer_kernel(&m);
            let snf = smith_normal_form(&m);
            prop_assert_eq!(k.rank(), m.cols() - snf.rank);
            for v in k.vectors() {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
            }
        }
    }
}
