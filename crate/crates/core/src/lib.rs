//! Mixed sums of squares and triangular numbers.
//!
//! Every natural number `n` can be written in each of the forms
//!
//! ```text
//! x² + 3y² + t_z    x² + 3t_y + t_z    x² + 6t_y + t_z
//! 3x² + 2t_y + t_z  4x² + 2t_y + t_z
//! ```
//!
//! with `x, y, z` integers and `t_k = k(k+1)/2`. This crate builds such
//! representations constructively (via a three-square decomposition and
//! Jacobi's identity), emits checkable [`Certificate`]s, and cross-checks
//! them against an independent brute-force [`oracle`] and a parallel
//! range-verification engine in [`survey`].
//!
//! ```
//! use mixsq::{represent, MixedFormId};
//!
//! let cert = represent(MixedFormId::FourX2TwoTT, 2).unwrap();
//! assert_eq!((cert.x, cert.y, cert.z), (0, -2, 0));
//! assert!(cert.verify().unwrap());
//! ```

pub mod arith;
mod error;
pub mod jacobi;
pub mod oracle;
pub mod survey;
pub mod theorem2;
pub mod three_squares;

pub use arith::{
    is_square, is_three_square_feasible, is_triangular, isqrt, strip_fours, triangular, MAX_N,
};
pub use error::{Error, Result};
pub use jacobi::{align_mod3, jacobi_transform, JacobiImage, SignedTriple};
pub use oracle::{DomainFilter, FormSpec, Term, TermKind, WitnessList};
pub use survey::{CatalogEntry, EntryForm, Mode, RangeReport, Source, Survey};
pub use theorem2::{
    derive, rep_4x2_2t_t, rep_eps, rep_x2_3t_t, represent, verify, Certificate, Derivation,
    Epsilon, MixedFormId, NormalizedTriple, ParityPattern,
};
pub use three_squares::{three_squares, two_squares, ThreeSquareRep};
