//! Unfolding: k∨, the handy datum, its contragredient superalgebra, the
//! loop superalgebra and the realization π of the elliptic algebra.

pub mod graded;
pub mod handy;
pub mod loop_alg;
pub mod realize;
pub mod transport;

pub use graded::{GradedAlgebra, Loc, Weight};
pub use handy::{build_handy, k_vee, unfold_datum, HandyDatum, HdCheck};
pub use loop_alg::{LoopAlgebra, LoopElement};
pub use realize::{auto_height, verify_pi, PiReport, Realization};
pub use transport::{aut_n, transport, RootWitness, TransportReport};
