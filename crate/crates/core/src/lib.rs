//! LP seeds, anti-symmetric quivers and quasi-triangulations of unpunctured
//! marked surfaces, with exchange-graph exploration.

pub mod poly;
pub mod lp_core;
pub mod quiver;
pub mod surface;
pub mod explorer;

mod par;

pub use par::with_jobs;
