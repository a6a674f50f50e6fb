//! Degree-three locally Cohen-Macaulay curves in P^3: multiple-line
//! constructions, unions, flat families and the component atlas of the
//! Hilbert schemes `H(3, g)`.

pub mod atlas;
pub mod construct;
pub mod error;
pub mod family;
pub mod record;
pub mod witness;

pub use construct::{
    double_line, solve_quadratic_combination, triple_line_planar_base, triple_line_quasiprimitive, union_curve,
    verify_cm_filtrant, DoubleLineSpec, TripleLineSpecPlanarBase, TripleLineSpecQuasiprimitive,
};
pub use error::{CurveError, Result};
pub use family::{flatten, h40_family, spec_family, verify_specialization, FamilyIdeal, FlattenReport};
pub use record::{curve_invariants, Certificates, CurveRecord, Provenance};
pub use witness::{witness, WitnessLabel};

/// Version tag carried by every JSON report.
pub const SCHEMA: &str = "cm3/1";
