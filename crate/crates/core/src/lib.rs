//! Exact computational algebra for Pfaffian representations of quartic
//! threefolds.

pub mod arith;
pub mod groebner;
pub mod hilbert;
pub mod linalg;
pub mod pfaffian;
pub mod poly;
pub mod sheafcoh;
