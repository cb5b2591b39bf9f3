#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod catalog;
pub mod coset;
pub mod error;
pub mod group;
pub mod group_ring;
pub mod pipeline;
pub mod snf;
pub mod steinberg;
pub mod whitehead;
pub mod words;

pub use analysis::{
    ambivalence, centre, conjugacy_classes, is_ambivalent, AmbivalenceVerdict, ConjugacyProfile,
};
pub use catalog::{
    builtin_groups, central_fibre_check, fiber_order_rule, preset, seifert_presentation,
    CatalogEntry, Construction, Epsilon, FiberOrder, FibreVerdict, Goodness, SeifertInvariants,
};
pub use coset::{enumerate, realize, realize_presentation, CosetTable, DEFAULT_MAX_COSETS};
pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use group_ring::{GroupRingElement, GroupRingMatrix};
pub use pipeline::{analyze, reproduce_classification, DetectionReport, Verdict};
pub use snf::{cokernel, smith_normal_form, IntMatrix, SmithForm};
pub use steinberg::{evaluate, is_pd_form, k2_membership, w_element, PdForm, SteinbergWord};
pub use whitehead::{
    detection_rank, involution_space, wh1_general, wh1_z2_fast, CoefficientSystem, InvolutionSpace,
    WhiteheadGroupResult,
};
pub use words::{Generator, Letter, Presentation, Word};
