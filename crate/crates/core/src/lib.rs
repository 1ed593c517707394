//! Combinatorics of minimal shift spaces generated by primitive
//! substitutions: factor languages, extension graphs, return words and
//! derived shifts, together with the free-group side (Stallings graphs,
//! basis and tameness checks) needed to compare dendricity with the
//! algebraic behavior of return sets.

pub mod error;
pub mod freegroup;
pub mod language;
pub mod rauzy;
pub mod returns;
pub mod sweep;
pub mod systems;
pub mod tame;
pub mod words;

pub use error::{Error, Result};
pub use freegroup::{
    evaluate, express, is_basis_of_free_group, is_free_family, rank, stallings, subgroup_equals,
    StallingsGraph,
};
pub use language::{
    check_bilateral_sum, complexity, dendric_report, extension_graph, generate_language,
    Complexity, DendricReport, ExtensionGraph, LanguageApprox, Strength,
};
pub use rauzy::{
    check_return_criterion, rauzy_graph, rauzy_group, RauzyGraph, ReturnCriterionReport,
};
pub use returns::{
    check_durand, derive, return_words, right_return_words, theta_morphism, DerivedSystem,
    ReturnSet,
};
pub use tame::{
    apply_move, tame_decompose, verify_certificate, ElementaryMove, TameCertificate, TameOutcome,
};
pub use words::{Alphabet, GroupWord, Letter, Substitution, Syllable, Word};
