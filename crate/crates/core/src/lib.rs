//! Exact computations with modular Lie superalgebras in small characteristic.

pub mod cli;
pub mod divpow;
pub mod families;
pub mod linalg;
pub mod pstruct;
pub mod report;
pub mod scalars;
pub mod superalg;
