//! Float functions routed through `libm` so the crate builds without `std`
//! and produces bit-identical results on every platform.

pub(crate) use libm::{exp, fabs as abs, floor, sqrt};
