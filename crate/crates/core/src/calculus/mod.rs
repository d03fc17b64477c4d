//! Differential operators and brackets: `d`, Lie derivatives, the Schouten
//! and Koszul brackets, the Nijenhuis calculus and the Lichnerowicz
//! differential.

mod cartan;
mod frame;
mod graded;
mod nijenhuis;
mod poisson;

pub use cartan::{differential, exterior_d, lie_bracket, lie_derivative_form, lie_derivative_multivector};
pub use frame::{frame_differential, Frame};
pub use graded::{
    graded_bracket, koszul_bracket, koszul_bracket_with, schouten, schouten_with, Algebroid, BracketSigns,
    PoissonCotangent, TangentAlgebroid,
};
pub use nijenhuis::{bracket_n, d_n, d_n_expanded, nijenhuis_frame, nijenhuis_torsion, torsion_on_frame};
pub use poisson::{lichnerowicz_d, lichnerowicz_d_function, omega_pi_bracket, pi_lie_derivative, poisson_frame};
