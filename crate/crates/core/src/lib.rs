//! Exact computations with finitely generated graded modules over
//! `Q[t1..tr]`: Gröbner bases, minimal free resolutions, `Ext^j(M, R)`,
//! depth and syzygy invariants, and Atiyah–Bredon reports for torus
//! equivariant fixtures.
//!
//! Shift convention: `R[l]` is free of rank one on a generator of degree
//! `l`, so `M[l]_q = M_{q-l}`.

pub mod equivariant;
pub mod error;
pub mod groebner;
pub mod cli;
pub mod homalg;
pub mod io;
pub mod modfree;
pub mod oracle;
pub mod par;
pub mod resolution;
pub mod ring;

pub use error::{Error, Result};
pub use groebner::{GroebnerBasis, ModuleOrder};
pub use modfree::{GradedFreeModule, GradedMatrix, ModuleElement, ModulePresentation};
pub use par::Execution;
pub use ring::{Monomial, MonomialOrder, Polynomial, Rational, RingSpec};
