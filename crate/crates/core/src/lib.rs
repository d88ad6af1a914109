//! Repair of incoherent ontology revisions.
//!
//! A *rebuttal* ontology `K` is revised by a *reliable* ontology `K0`: when
//! `K ∪ K0` has unsatisfiable named concepts, a set of axioms of `K` is
//! deleted so that the union becomes coherent again. The crate provides the
//! pieces of that pipeline:
//!
//! * [`ontology`] and [`syntax`]: the ALCH data model and its line-oriented
//!   functional-style text format.
//! * [`reasoner`]: a tableau procedure deciding concept satisfiability.
//! * [`explanation`]: R-MUPS enumeration and R-MIPS derivation.
//! * [`verbalizer`]: axiom-to-sentence templates used before embedding.
//! * [`scoring`]: similarity metrics, the similarity-based scoring
//!   functions and the counting baselines.
//! * [`diagnosis`]: subset extraction, exact minimum hitting sets and the
//!   two revision procedures (all R-MIPS and grouped local R-MIPS).
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled. Wall-clock time only enters through the [`budget::Clock`]
//! trait.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod prelude;

pub mod budget;
pub mod diagnosis;
pub mod explanation;
pub mod ontology;
pub mod reasoner;
pub mod scoring;
pub mod syntax;
pub mod verbalizer;

pub use budget::{Clock, Deadline, ExplanationBudget, NullClock};
pub use diagnosis::{
    compute_diagnosis, extract_subsets, is_minimal_repair, min_hitting_set, minimize_diagnosis, remaining_unsat,
    revise_all_mips, revise_grouped, Diagnosis, ExtractedFamily, GroupTrace, HittingSetError, RevisionError,
    RevisionStats,
};
pub use explanation::{
    all_mups, explain_concepts, mips_from_mups, one_mups, ConflictSet, ExplanationError, MupsResult, Truncation,
};
pub use ontology::{
    signature_of, Axiom, AxiomForm, AxiomId, Concept, EntityId, EntityKind, Name, Ontology, OntologyError,
    RevisionProblem,
};
pub use reasoner::{
    is_coherent, is_satisfiable, unsatisfiable_concepts, unsatisfiable_concepts_in, unsatisfiable_concepts_scoped,
    ProbeScope, Reasoner, ResourceNote, SatVerdict, UnsatReport,
};
pub use scoring::{
    fallback_embed, score_axioms, set_axiom_similarity, sim_cos, sim_euc, Direction, EmbeddingProvider,
    FallbackEmbedder, Metric, PairTable, ScoreTable, ScoringConfig, ScoringError, SimilarityParams, SimilaritySource,
    Strategy, Vector, VectorSimilarity, VectorStore,
};
pub use syntax::{parse_axiom, parse_ontology, serialize_ontology, ParseError, ParseOutcome};
pub use verbalizer::{humanize, verbalize, verbalize_ontology, SentenceMap};
