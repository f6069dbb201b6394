//! The incidence poset Q, chains of Q, saturated elements over a base field,
//! their Möbius functions and the combinatorial functions γ, rank, κ and E.

pub mod chain;
pub mod q;
pub mod saturated;

pub use chain::{
    chains_above, covers, covers_and_essentials, essentials, interval, local_euler_polynomial, mobius_local,
    saturate, Chain, CoverReport, Multiplicities,
};
pub use q::{elements, meet, mobius_q, QElem, QKind};
pub use saturated::{
    comb_functions, enumerate_saturated_above, for_each_saturated_above, mobius_global, CombRecord, PairWX,
    SaturatedElement,
};
