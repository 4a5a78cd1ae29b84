//! The Bergman kernel of `G_n`: direct evaluation through the polydisc,
//! the closed form for `n = 2`, the exact rational formula and its log-jets.

mod direct;
mod formula;
mod jet;
mod pipeline;
mod verify;

pub(crate) use direct::direct_generic;
pub use direct::{kernel_closed_form_n2, kernel_direct_eval, kernel_direct_eval_with};
pub(crate) use formula::FormulaScalar;
pub use formula::KernelFormula;
pub use jet::{log_kernel_jet, JetEvaluator, MAX_JET_ORDER};
pub use pipeline::{
    conjugate_product, conjugate_product_half_symmetrized, divide_vandermonde, formula_arena,
    leibniz_numerator, polydisc_arena, rationalize_kernel, rationalize_kernel_with_stats,
    PipelineStats, MAX_N,
};
pub use verify::{cross_validate, VerifyConfig, VerifyReport};
