use crate::coloring::PathWitness;
use crate::graph::Violation;

/// Errors shared across the library.
///
/// Boundary truncation during a root walk is *not* an error: `apply_word`
/// and `fixes_root` return `None` for it. The `BoundaryTruncation` variant
/// is reserved for operations whose contract requires the walk to stay
/// inside the graph (stabilizer enumeration, subshift windows).
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid graph: {}", format_violations(.0))]
    InvalidGraph(Vec<Violation>),

    #[error("{0}")]
    InvalidInput(String),

    #[error("incomparable spaces: {0}")]
    IncomparableSpaces(String),

    #[error("malformed document: {0}")]
    MalformedDocument(String),

    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),

    #[error("path search budget exceeded after {expansions} expansions; all half-lengths <= {completed_half} were fully searched")]
    BudgetExceeded { expansions: u64, completed_half: usize },

    #[error("per-root budget exceeded; unresolved roots: {unresolved_roots:?}")]
    CensusBudgetExceeded { unresolved_roots: Vec<usize> },

    #[error("resample cap exceeded after {resamples} resamples with alphabet {alphabet_size}; last witness {last_witness:?}")]
    ResampleCapExceeded {
        resamples: u64,
        alphabet_size: u32,
        last_witness: PathWitness,
    },

    #[error("vertex cap exceeded: {0}")]
    CapExceeded(String),

    #[error("word leaves the truncated graph at letter {step}")]
    BoundaryTruncation { step: usize },

    #[error("graph must be connected and complete: {0}")]
    IncompleteOrDisconnected(String),

    #[error("automorphism is the identity; a nontrivial one is required")]
    TrivialAutomorphism,

    #[error("not a colored-labeled automorphism: {0}")]
    NotAnAutomorphism(String),

    #[error("distribution radii differ: {0} vs {1}")]
    RadiusMismatch(usize, usize),

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
