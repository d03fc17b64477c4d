//! The Courant algebroid `(TM)_N + (T*M)_pi` attached to a PqN structure,
//! its axioms, gauge transforms, graph subbundles and the quasi-Lie
//! bialgebroid induced by a Lagrangian complement.

mod axioms;
mod dirac;
mod section;
mod structure;

pub use axioms::{
    anchor_defect, check_courant_axioms, d_isotropy_defect, invariance_defect, jacobi_defect, leibniz_defect,
    AxiomBattery,
};
pub use dirac::{
    check_induced_matches_deform, graph_subbundle, induced_qlba, is_dirac, verify_graph_bracket, InducedQlba,
    LagrangianGraph,
};
pub use section::{gauge, pairing_e, CourantSection};
pub use structure::CourantStructure;
