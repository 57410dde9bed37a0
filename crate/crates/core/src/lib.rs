//! Sums of two Narayana numbers that are repdigits.
//!
//! Finds every `(n, m, l, a, b)` with `N_n + N_m = a (b^l - 1)/(b - 1)`,
//! `0 <= m <= n`, `2 <= b <= 100`, `1 <= a < b` and `l >= 2`, where
//! `N_0 = 0, N_1 = N_2 = 1, N_n = N_{n-1} + N_{n-3}`.
//!
//! The modules follow the argument:
//!
//! * [`sequence`]: exact terms, and the closed form as a cross-check
//! * [`highprec`]: certified interval arithmetic, constants, continued fractions
//! * [`repdigit`]: base-`b` digit algebra
//! * [`bounds`]: heights, Matveev's bound and the chain to `n < 6.5e31 log^5 b`
//! * [`reduction`]: Dujella–Pethő reduction over all bases and digits
//! * [`search`]: enumeration below the reduced bound, the expected table, corollaries
//! * [`pipeline`], [`report`]: the end-to-end run and its serialized output
//!
//! ```
//! use narayana::search::enumerate_solutions;
//!
//! let sols = enumerate_solutions(30, 2..=10, 5).unwrap();
//! let t: Vec<_> = sols.iter().map(|s| s.as_tuple()).collect();
//! assert_eq!(t, [(11, 5, 5, 1, 2), (13, 5, 6, 1, 2), (21, 17, 5, 1, 6)]);
//! ```

pub mod bounds;
pub mod error;
pub mod highprec;
pub mod pipeline;
pub mod reduction;
pub mod repdigit;
pub mod report;
pub mod search;
pub mod sequence;

pub use error::{Error, Result};
