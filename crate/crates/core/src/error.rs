use thiserror::Error;

/// Errors produced anywhere in the motif pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty graph")]
    EmptyGraph,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("unsupported motif size {0} (expected 3 or 4)")]
    InvalidSize(usize),

    #[error("graph has {nodes} nodes, fewer than motif size {size}")]
    TooFewNodes { nodes: usize, size: usize },

    #[error("adjacency matrix has a nonzero diagonal entry at node {0}")]
    NonzeroDiagonal(usize),

    #[error("motif size mismatch: census is size {census}, ensemble is size {ensemble}")]
    SizeMismatch { census: usize, ensemble: usize },

    #[error("motif {0} has no uniqueness value; run the census with instance retention")]
    MissingUniqueness(u32),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn at_stage(stage: &'static str) -> impl FnOnce(Error) -> Error {
        move |source| Error::Stage {
            stage,
            source: Box::new(source),
        }
    }

    /// The innermost error, with stage tags stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
