use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ParseError: line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("DuplicateVertex: line {line}: vertex {id} declared twice")]
    DuplicateVertex { line: usize, id: usize },
    #[error("DuplicateEdge: line {line}: edge {{{u},{v}}} declared twice")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("DanglingEdge: line {line}: edge endpoint {id} is not a declared vertex")]
    DanglingEdge { line: usize, id: usize },
    #[error("SelfLoop: line {line}: edge connects vertex {id} to itself")]
    SelfLoop { line: usize, id: usize },
    #[error("UnknownLabel: no weight for {kind} label {label:?} and no default")]
    UnknownLabel { kind: &'static str, label: String },
    #[error("BlockTooLarge: block with {size} vertices exceeds the limit of {limit}")]
    BlockTooLarge { size: usize, limit: usize },
    #[error("NotOuterplanar: graph {graph:?} is not outerplanar")]
    NotOuterplanar { graph: String },
    #[error("NotATree: graph {graph:?} is not a tree")]
    NotATree { graph: String },
    #[error("Disconnected: graph {graph:?} is not connected")]
    Disconnected { graph: String },
    #[error("TooLarge: {what} has size {size}, limit is {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("IndexOutOfRange: index {index} not below {bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("CorpusTooLarge: {triples} triples exceed the budget of {budget}")]
    CorpusTooLarge { triples: usize, budget: usize },
    #[error("InvalidVertex: vertex {id} is not in graph {graph:?}")]
    InvalidVertex { graph: String, id: usize },
    #[error("InvalidArgument: {message}")]
    InvalidArgument { message: String },
    #[error("Io: {path}: {message}")]
    Io { path: PathBuf, message: String },
}

impl Error {
    /// Short error name as printed by the command line tool.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::DuplicateVertex { .. } => "DuplicateVertex",
            Error::DuplicateEdge { .. } => "DuplicateEdge",
            Error::DanglingEdge { .. } => "DanglingEdge",
            Error::SelfLoop { .. } => "SelfLoop",
            Error::UnknownLabel { .. } => "UnknownLabel",
            Error::BlockTooLarge { .. } => "BlockTooLarge",
            Error::NotOuterplanar { .. } => "NotOuterplanar",
            Error::NotATree { .. } => "NotATree",
            Error::Disconnected { .. } => "Disconnected",
            Error::TooLarge { .. } => "TooLarge",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::CorpusTooLarge { .. } => "CorpusTooLarge",
            Error::InvalidVertex { .. } => "InvalidVertex",
            Error::InvalidArgument { .. } => "InvalidArgument",
            Error::Io { .. } => "Io",
        }
    }
}
