//! Exact scalars: circle exponents over formal irrational symbols, and
//! integer lattice linear algebra.

pub mod circle;
pub mod lattice;

pub use circle::{format_rational, parse_rational, CircleExponent, IrrationalBasis};
pub use lattice::{
    clear_denominators, hermite_normal_form, integer_kernel, lattice_preimage,
    lattice_preimage_rational, smith_normal_form, HermiteForm, IntegerMatrix, LatticeBasis,
    SmithForm,
};
