//! Formal-group reorganization of truncated Euler products.
//!
//! The crate builds the cutoff log-zeta expansion around `T = 1/2`,
//! evenizes it, normalizes the even part into a cumulant hierarchy and
//! splits each cumulant into smooth, boundary and Chebyshev-error pieces.
//!
//! * [`ring`], [`series`]: coefficient rings and truncated power series.
//! * [`formal_group`]: one-dimensional formal group laws and logarithms.
//! * [`primes`]: sieve, Chebyshev `theta`, Eulerian closed forms, prime sums.
//! * [`zeta`]: log-zeta expansion, evenization, cumulants, normalization.
//! * [`quadrature`], [`fluctuation`]: boundary/bulk decomposition.
//! * [`report`]: command implementations behind the `fgzeta` binary.

pub mod ring;
pub mod series;
pub mod json;
pub mod primes;
pub mod zeta;
pub mod formal_group;
pub mod quadrature;
pub mod fluctuation;
pub mod report;
