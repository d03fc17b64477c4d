//! Poisson quasi-Nijenhuis structures: axiom checks, deformation by closed
//! 2-forms, and the associated quasi-Lie bialgebroid.

mod deform;
mod generate;
mod qlba;
mod structure;

pub use deform::{action_compose, deform, mc_residual, twist};
pub(crate) use deform::require_closed;
pub use generate::{seeded_instance, Seeded};
pub use qlba::{
    bracket_derivation_defect, check_qlba, field_battery, form_battery, generator_battery, multipliers,
    recovered_anchor, recovered_bracket, square_defect, wedge_derivation_defect,
};
pub use structure::{
    check_compatibility, check_pqn, check_poisson, compatibility_defect, concomitant, guard_function, make_pi_n,
    torsion_defect, PqnStructure,
};
