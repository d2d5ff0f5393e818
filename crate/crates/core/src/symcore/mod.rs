//! Compositions, partitions, the path weight functions and exact symmetric
//! function arithmetic in the elementary and power-sum bases.

mod composition;
mod expansion;
mod partition;
mod scalar;
mod symfunc;

pub use composition::{compositions_of, rho, sigma, surplus, w_weight, Composition, Compositions};
pub use expansion::{ei_flatten, CompositionTerm, EIExpansion};
pub use partition::Partition;
pub use scalar::{binomial, factorial, Scalar};
pub use symfunc::{
    is_e_positive, p_to_e, principal_eval, Basis, Elementary, Positivity, PowerSum, SymFunc,
    TermRepr,
};
