//! Euler-Zagier and Schur multiple zeta values at finite truncation, O-sums,
//! dual indices, and the complex interpolation of the O-sum (the Ohno
//! function), with truncation-error estimates and duality verification.
//!
//! The crate is organized around four layers:
//!
//! * [`shapes`] — partitions, skew Young diagrams, and semistandard tableau
//!   enumeration with bounded entries;
//! * [`indices`] — tableau indices, admissibility domains, admissible pieces,
//!   and dual indices;
//! * [`mzv`] — truncated evaluation of zeta values and O-sums;
//! * [`ohno`] — the interpolated function I_k(s): an exact-rational
//!   partial-fraction series backend on Re(s) > -1 and an independent
//!   quadrature backend on the strip -1 < Re(s) < 0.
//!
//! All series evaluations accumulate terms in an exact fixed-point sum
//! ([`sum::ExactSum`]), so results are bitwise independent of term order and
//! of the number of worker threads.
//!
//! ```
//! use num_complex::Complex64;
//! use schur_ohno::{ComplexPoint, OhnoConfig, TableauIndex, TruncationConfig};
//! use schur_ohno::mzv::{osum_schur, zeta_schur};
//! use schur_ohno::ohno::ohno_schur;
//!
//! // the tableau [[1,2],[2]] on the straight shape (2,1)
//! let k = TableauIndex::from_rows(&[2, 1], &[], &[&[1, 2], &[2]])?;
//! let cfg = TruncationConfig::with_max_entry(200)?;
//! let zeta = zeta_schur(&k, cfg)?;
//! assert!(zeta.value.re > 1.0 && zeta.err_est < 5e-2);
//!
//! // the interpolated function reproduces the O-sum at integer points
//! let osum = osum_schur(&k, 1, cfg)?;
//! let s = ComplexPoint::new(Complex64::new(1.0, 0.0))?;
//! let interp = ohno_schur(&k, &s, &OhnoConfig::with_max_entry(200)?)?;
//! assert!((osum.value.re - interp.value.re).abs() < 1e-10 * osum.value.re);
//! # Ok::<(), schur_ohno::EvalError>(())
//! ```

pub mod indices;
pub mod mzv;
pub mod ohno;
pub mod shapes;
pub mod sum;

pub use indices::{
    dual_tableau, enumerate_bump_tableaux, AdmissiblePiece, CompositionTableau, DualRegistry,
    EZIndex, IndexError, TableauIndex,
};
pub use mzv::{EvalError, EvalResult, TruncationConfig};
pub use ohno::{ComplexPoint, OhnoConfig};
pub use shapes::{Cell, Filling, Partition, ShapeError, SkewShape};
