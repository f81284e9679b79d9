//! Lie-type parameters, closed-form class-count bounds and their certification.

pub mod certify;
pub mod evaluators;
pub mod exceptional;
pub mod params;

use serde::Serializer;

pub use certify::{
    default_claims, exceptional_p_regular_proportion, find_claim, grid_certify,
    kpprime_chain_bound, load_claims, parse_claims, thm4_certify, BoundCertificate, Claim,
    Congruence, GridReport, GridSpec, Inequality,
};
pub use evaluators::{
    centralizer_log_rank, even_orthogonal_unipotent_lower, min_centralizer_h,
    odd_orthogonal_kpprime_lower, odd_orthogonal_unipotent_lower, orthogonal_lower_bounds,
    psl_torus_orbit_bound, ssc_coprime_tori_bound, ssc_torus_bounds, symplectic_kpprime_lower,
    symplectic_unipotent_lower, OrbitTarget, OrthogonalBounds, SscBounds, TorusOrbitBound,
};
pub use exceptional::{
    exceptional_data, exceptional_largest_prime, exceptional_order, smallest_valid_q,
};
pub use params::{semisimple_class_count, LieFamily, LieParams};

use crate::numtheory::Rational;

pub(crate) fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub(crate) fn ser_opt_rational<S: Serializer>(
    r: &Option<Rational>,
    s: S,
) -> Result<S::Ok, S::Error> {
    ser_opt_display(r, s)
}

pub(crate) fn ser_opt_display<T: std::fmt::Display, S: Serializer>(
    r: &Option<T>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}
