//! Cosimplicial vector spaces, cochain complexes, multicomplexes and
//! contracting homotopies.

mod complex;
mod cosimplicial;
mod multi;
mod retract;

pub use complex::{
    induced_cohomology_map, quasi_iso_report, Augmented, ChainMap, CochainComplex, CohomologyTable, DegreeIso,
};
pub use cosimplicial::CosimplicialVectorSpace;
pub use multi::{augmented_line_report, total_chain_map, BlockMap, LineReport, Multicomplex};
pub use retract::{glue_retracts, retract_violations, verify_retract, CosimplicialRetract, RetractReport};
