//! Bimodules between blocks with their tensor products.
//! Checkers for stable and Morita equivalences and for Brauer indecomposability.

mod bimodule;
mod brauer;
mod checks;

pub use bimodule::{
    apply_block_functor, apply_functor, split_block_summand, tensor_coinvariants, tensor_over_block,
    tensor_over_group, Bimodule, BlockBimodule, BlockSplit, COINVARIANT_CAP,
};

pub use brauer::{
    brauer_of_scott_summand_check, is_rel_brauer_indecomposable, q_centralizer_product,
    scott_summand_of_functor_image, theorem_brauer_criterion, theorem_brauer_criterion_for, vertex_shape_check, BrauerCriterionReport,
    BrauerEntry, BrauerIndecReport, NormalizerScottEntry, ScottSummandReport, VertexShapeEntry,
    VertexShapeReport,
};
pub use checks::{
    brauer_bimodule, check_centralizer_morita, check_gluing_theorem, check_hypotheses,
    check_morita_lift, check_relative_stable_equivalence, check_simple_images, diagonal_of_iso,
    unique_nonrelprojective_summand, BlockContext, CentralizerCheck, EquivalenceReport,
    GluingReport, HypothesisReport, MoritaLiftReport, RemainderReport, ScottSetting,
    SimpleImage, SummandInfo, Verdict,
};

#[cfg(test)]
mod tests;
