pub mod kernel;
pub mod sdt;
pub mod chain;
pub mod mech;
