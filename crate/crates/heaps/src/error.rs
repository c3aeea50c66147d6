//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised while reading the edge-list file format.
///
/// Each malformed-input condition gets its own variant so callers can report
/// (and tests can assert) exactly what went wrong.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("edge list has no vertex-count line")]
    MissingVertexCount,
    #[error("line {line}: malformed line {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("line {line}: loop at vertex {vertex}")]
    Loop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    /// A brute-force enumeration would exceed the configured size guard.
    /// Guard violations are hard errors, never silent truncation.
    #[error("size guard exceeded: {quantity} = {actual} > limit {limit}")]
    GuardExceeded {
        quantity: &'static str,
        actual: u128,
        limit: u128,
    },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {vertex}")]
    Loop { vertex: usize },
    #[error("duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("operands live on different graphs")]
    GraphMismatch,
    #[error("heap is not multilinear")]
    NotMultilinear,
    #[error("orientation is cyclic: no source among remaining vertices")]
    CyclicOrientation,
    #[error("operation requires a non-empty heap")]
    EmptyHeap,
    #[error("invalid heap: {0}")]
    InvalidHeap(String),
    #[error("invalid rack: {0}")]
    InvalidRack(String),
    #[error("invalid orientation: {0}")]
    InvalidOrientation(String),
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("invalid vertex order: {0}")]
    InvalidOrder(String),
    #[error("{what} {value} out of range (expected {expected})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        expected: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
