//! Graded free resolutions, Tor modules and intersection multiplicities.

pub mod module;
pub mod quotient;
pub mod resolution;
pub mod tor;

pub use module::GradedModulePresentation;
pub use quotient::{truncated_tor_over_quotient, QuotientTorTable};
pub use resolution::{free_resolution, FreeResolution, GradedMap};
pub use tor::{
    graded_tor, homologically_transverse, serre_multiplicity_total, tor_from_resolution, tor_series_all, TorModule,
    Transversality,
};
