//! Multi-qubit states, channels and operator embedding.
//!
//! Qubit order is big-endian: qubit 0 is the most significant bit of a
//! basis index, so basis state |b0 b1 ... b_{n-1}> has index
//! sum_q b_q * 2^(n-1-q). Kronecker products follow the same convention
//! (left factor most significant).

pub mod gates;
mod channel;
mod embed;
mod index;
mod layout;
mod state;

pub use channel::{apply_channel, apply_channel_on, KrausChannel};
pub use embed::{apply_operator_on, conjugate_by_operator_on, embed_operator};
pub use layout::RegisterLayout;
pub use state::{partial_trace, DensityMatrix, PureState};

pub(crate) use embed::apply_left_accumulate;
pub(crate) use index::{insert_bit, insert_bits, TargetIndexer};
