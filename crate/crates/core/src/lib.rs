//! Exact computation with noncommutative symmetric functions, the descent-set
//! coproduct `γ_∧`, noncommutative Bessel functions and their specializations
//! to word algebras, permutation statistics and parallelogram polyominoes.
//!
//! All arithmetic is exact: coefficients are [`MultiPoly`] values over the
//! rationals in the variables `t, q, p, x, y, z`, truncated where series are
//! involved. Every identity the crate implements is paired with an
//! independent brute-force computation; see [`verify`].

pub mod bessel;
pub mod compositions;
pub mod error;
pub mod lincomb;
pub mod nsym;
pub mod polyomino;
pub mod qsym;
pub mod scalars;
pub mod specialize;
pub mod theta;
pub mod verify;

pub use bessel::{SecondOp, TensorElement, TensorSeries};
pub use compositions::{Composition, DescentOp, Permutation};
pub use error::{Error, Result};
pub use lincomb::LinComb;
pub use nsym::{Basis, NsymElement, NsymSeries};
pub use polyomino::{PolyominoCode, SegmentAlphabet};
pub use qsym::{InternalMode, QBasis, QsymElement};
pub use scalars::{MultiPoly, Rational, Var};
pub use specialize::{FrSeries, FrVariant, FrWindow};
pub use theta::{BiAlphabet, Relation, Word, WordPoly};
pub use verify::{CheckOutcome, ReportFormat, VerifyConfig};
