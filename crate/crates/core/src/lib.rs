//! Exact Hecke polynomials of split reductive groups.
//!
//! The crate builds the Hecke polynomial attached to a minuscule
//! cocharacter, computes the Satake transform through the Bernstein
//! presentation of the affine Hecke algebra, and checks the
//! Cayley-Hamilton (Eichler-Shimura) relations at Satake parameters over
//! exact rings and finite fields.

pub mod characters;
pub mod coeff_ring;
pub mod error;
pub mod hecke_poly;
pub mod iwahori;
pub mod matrix;
pub mod root_data;
pub mod satake;
pub mod trials;

pub use characters::{SymmetricFunction, TorusRing, WeightMultiset};
pub use coeff_ring::{FormalRing, FracScaled, LaurentHalf, PrimeField, RationalRing, Ring, Scalar, ScalarDomain};
pub use error::{Error, Result};
pub use hecke_poly::{HeckePolynomial, RelationReport};
pub use iwahori::{AffineHeckeElement, ExtAffineWeylElement, IwahoriHecke, SphericalCosetVector};
pub use matrix::Matrix;
pub use root_data::{BasedRootDatum, Coweight, Family, WeylElement};
pub use satake::{FrobeniusMatrix, SatakeParameter, TwistConfig};
