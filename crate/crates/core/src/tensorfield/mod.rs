//! Tensor fields on a polynomial chart: forms, multivectors, vector fields
//! and (1,1) tensors, with the musical maps between them.

mod alt;
mod chart;
mod endo;
pub mod ops;
mod vector;

pub use alt::{increasing_tuples, sort_indices, Alt, Co, Contra, Form, MultiVector, Variance};
pub use chart::Chart;
pub(crate) use chart::same_chart;
pub use endo::EndoField;
pub use ops::{
    compose_sharp_flat, contract, contract_form, contract_pair, evaluate_form, evaluate_multivector,
    flat, insert_n, pairing, sharp, sharp_matrix, transpose, wedge,
};
pub use vector::VectorField;
