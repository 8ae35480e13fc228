//! Orbit dynamics of σ and invariant-subscheme certificates.

mod eigen;
mod invariant;
mod orbit;
mod point;

pub use eigen::{
    characteristic_polynomial, coprime_base, eigen_data, multiplicative_independence, rational_roots,
    relation_product, EigenData, Multiplicative,
};
pub use invariant::{
    critical_transversality_certificate, invariant_coordinate_subschemes, torus_gate, CtCertificate, CtVerdict,
    MAX_CERTIFIED_DIM,
};
pub use orbit::{forward_orbit_hits, point_order, OrbitReport, OrbitVerdict, PointOrder, CERTIFICATE_CAP};
pub use point::{point_on_linear_space, RationalPoint};
