use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty gap set: the trivial semigroup has genus 0 and is not a tree node")]
    EmptyGapSet,
    #[error("gap list must be strictly increasing positive integers")]
    UnorderedGaps,
    #[error("complement of the gap set is not additively closed: {a} + {b} = {sum} is a gap")]
    NotClosed { a: usize, b: usize, sum: usize },
    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },
    #[error("chain does not encode a valid node: {0}")]
    InvalidChain(String),
    #[error("index {s} is not a right generator position of the node (window {lo}..{hi})")]
    NotRightGenerator { s: usize, lo: usize, hi: usize },
    #[error("genus {gamma} is out of range: {reason}")]
    GenusOutOfRange { gamma: usize, reason: &'static str },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("count overflowed 64 bits")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
