//! ramforge-core: exact-arithmetic ramification invariants of rings of
//! integers.
//!
//! The crate computes prime splitting, Kähler differentials, the
//! different and inverse different, local Eisenstein models of totally
//! ramified extensions, chain-level certificates for the fiber sequence
//! relating them, and tables of (topological) Hochschild homology groups,
//! cross-checked by an independent Tor engine over the tensor-square
//! algebra.

pub mod error;
pub mod exactalg;
pub mod homalg;
pub mod localram;
pub mod numberfield;
pub mod thh;

pub use error::{Error, Result};
pub use exactalg::{
    BivarElem, EisensteinDatum, FinAbGroup, GroundRing, Matrix, Scalar, SmithForm,
};
pub use homalg::{
    BasedAlgebra, ChainComplex, ChainMap, HomologyGroup, HomologyResult, PresentedModule,
};
pub use numberfield::{NumberRing, PrimeFactorization};
