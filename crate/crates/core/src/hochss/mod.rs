//! Hochschild cohomology of algebras and partial smash products, and the
//! functors relating it to partial group cohomology.

mod bar;
mod functors;
mod spectral;
mod tensor;

use thiserror::Error;

pub use bar::{hochschild, HochschildComplex};
pub use functors::{
    conjugation, f1, f1_literal_check, f_space, factorization_check, restrict_to_base, F1Module,
};
pub use spectral::{
    cochain_lift, dual_bimodule, spectral_low_degree, CochainLift, E2Entry, SpectralOptions,
    SpectralReport,
};
pub use tensor::{
    b_tensor_check, flatness_check, gamma_lambda_check, random_b_module, random_submodule,
    smash_flatness_check, tensor_over_b, BalancedTensor, TensorOverB,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HochError {
    #[error("{what} = {value} exceeds the budget of {cap}")]
    BudgetExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("axiom violated: {0}")]
    AxiomViolated(String),
    #[error("internal error: {0}")]
    Internal(String),
}
