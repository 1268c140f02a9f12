//! Hall polynomials as fugacity-weighted sums over honeycombs.
//!
//! The structure constants `c^{lambda,mu}_nu(t)` of Hall-Littlewood
//! polynomials in `Lambda_{k,n}` are computed by enumerating honeycombs with
//! prescribed boundaries ([`honeycomb`]), cross-checked against the
//! symmetrization formula ([`hlalgebra`]), and the sl4 tensor identities that
//! make the honeycomb product associative are verified in [`sl4net`].

pub mod cli;
pub mod fugacity;
pub mod hlalgebra;
pub mod honeycomb;
pub mod partition;
pub mod polyring;
pub mod sl4net;

pub use fugacity::{vertex_fugacity, VertexLabels};
pub use partition::{enumerate_pkn, Partition};
pub use polyring::{alpha, RatFun, TPoly};
