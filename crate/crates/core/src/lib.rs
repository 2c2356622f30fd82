//! Lower bounds for the chromatic number of `R^n` with the forbidden distance
//! set `A_m = {1, √2, …, √m}`, and the numerical and combinatorial machinery
//! behind them.
//!
//! The crate is `no_std` (it needs `alloc`) and every operation is a pure
//! function of its arguments. Modules:
//!
//! - [`special_functions`]: truncated and full partial theta functions, the
//!   Jacobi theta functions, the functional equation residual, and `Γ_χ`.
//! - [`bound_engine`]: the ratio `F_γ(t, l)`, its maximization over `t` and `l`,
//!   the `ζ_m^k` table, and the asymptotic and upper-bound comparisons.
//! - [`lattice_theta`]: theta series of `D_n`, `E8`, and the Leech lattice, and
//!   the double cap quantities `μ_Λ`.
//! - [`lattice_combinatorics`]: exact box counts, the generating function
//!   bound, the `d_max` pairing formula, and prime selection.
//! - [`tensor_oracle`]: brute-force checks of the distinctness indicator, its
//!   partition expansion, and the simplex indicator over `F_p`.
//! - [`optimize`]: grid scan plus golden-section refinement used by all of the
//!   one-dimensional maximizations.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bound_engine;
mod error;
pub mod lattice_combinatorics;
pub mod lattice_theta;
pub mod optimize;
pub mod primes;
pub mod special_functions;
pub mod tensor_oracle;

pub use crate::bound_engine::{BoundQuery, BoundResult};
pub use crate::error::{Error, Result};
pub use crate::lattice_theta::{LatticeLabel, MuResult, ThetaSeries};
pub use crate::special_functions::{ExponentialSum, GammaChiResult, SeriesValue};
