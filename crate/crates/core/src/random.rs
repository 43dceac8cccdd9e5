//! Seeded generators for property sweeps.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::cocycle::{param_count, CocycleParams};
use crate::group::{central_dim, coord_dim, GroupElement};
use crate::scalars::{CircleExponent, IntegerMatrix, IrrationalBasis};

/// A group element with every coordinate in `[-bound, bound]`.
pub fn element<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> GroupElement {
    let coords = (0..coord_dim(n))
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    GroupElement::from_coords(n, coords).expect("length matches")
}

pub fn central_element<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> GroupElement {
    let central = (0..central_dim(n))
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    GroupElement::central_from(n, central).expect("length matches")
}

/// A rational in `[0, 1)` with denominator at most `max_den`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R, max_den: i64) -> BigRational {
    let d = rng.gen_range(1..=max_den);
    BigRational::new(rng.gen_range(0..d).into(), d.into())
}

/// Purely rational parameters with denominators at most `max_den`.
pub fn rational_params<R: Rng + ?Sized>(rng: &mut R, n: usize, max_den: i64) -> CocycleParams {
    let values = (0..param_count(n))
        .map(|_| CircleExponent::rational(rational(rng, max_den)))
        .collect();
    CocycleParams::from_values(n, IrrationalBasis::empty(), values).expect("count matches")
}

/// Parameters mixing rationals with small rational multiples of the basis
/// symbols; each symbol appears in an entry with probability `1/2`.
pub fn mixed_params<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    basis: &IrrationalBasis,
    max_den: i64,
) -> CocycleParams {
    let values = (0..param_count(n))
        .map(|_| {
            let mut x = CircleExponent::rational(rational(rng, max_den));
            for s in basis.symbols() {
                if rng.gen_bool(0.5) {
                    let num = rng.gen_range(-3..=3i64);
                    let den = rng.gen_range(1..=3i64);
                    x = x.add(&CircleExponent::symbol(
                        s.clone(),
                        BigRational::new(num.into(), den.into()),
                    ));
                }
            }
            x
        })
        .collect();
    CocycleParams::from_values(n, basis.clone(), values).expect("count matches")
}

/// A random element of GL(n, Z): a product of `steps` elementary
/// transvections `I ± E_ij`, row swaps, and sign flips. Entries stay small
/// for small `steps`.
pub fn unimodular<R: Rng + ?Sized>(rng: &mut R, n: usize, steps: usize) -> IntegerMatrix {
    let mut a = IntegerMatrix::identity(n);
    if n == 0 {
        return a;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..6) {
            0 => a.swap_rows(i, j),
            1 => a.negate_row(i),
            _ if i != j => {
                let c = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
                a.add_row_multiple(i, j, &c);
            }
            _ => {}
        }
    }
    a
}

/// A random `rows × cols` matrix with entries in `[-bound, bound]`.
pub fn matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntegerMatrix {
    let data = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    IntegerMatrix::new(rows, cols, data).expect("size matches")
}
