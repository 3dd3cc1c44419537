use std::fmt;

use thiserror::Error;

/// Which side of a biaction an endofunction family acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => f.write_str("left"),
            Side::Right => f.write_str("right"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator names must be nonempty")]
    EmptyGeneratorName,
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("the empty word is not an element of a semigroup without unit")]
    EmptyWord,
    #[error("word has {len} letters, the limit is {limit}")]
    WordTooLong { len: usize, limit: usize },
    #[error("expected {expected} endofunctions (one per generator), got {found}")]
    Arity { expected: usize, found: usize },
    #[error("{context}: target {target} is out of range for a carrier of size {size}")]
    OutOfRange {
        context: String,
        target: usize,
        size: usize,
    },
    #[error("duplicate state name `{0}`")]
    DuplicateState(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("{side} family violates the monoid relations: {detail}")]
    Relation { side: Side, detail: String },
    #[error(
        "left action of `{left}` and right action of `{right}` do not commute at state `{state}`"
    )]
    Commutation {
        left: String,
        right: String,
        state: String,
    },
    #[error("actions are over different monoids")]
    MonoidMismatch,
    #[error("map has {found} entries but the source carrier has {expected} states")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{what} has {size} elements, the limit is {limit}")]
    SizeBound {
        what: &'static str,
        size: String,
        limit: usize,
    },
    #[error("{op} requires a {expected} monoid")]
    WrongMonoidKind {
        op: &'static str,
        expected: &'static str,
    },
    #[error("monoid is not a group: element `{0}` has no inverse")]
    NotAGroup(String),
    #[error("{op} requires the {side} action to be trivial")]
    NotOneSided { op: &'static str, side: Side },
    #[error("{op} requires a one-sided action")]
    TwoSided { op: &'static str },
    #[error("evaluation at the unit is undefined for a semigroup without unit")]
    NoUnit,
    #[error("map is not equivariant")]
    NotEquivariant,
    #[error("map is not a weak equivalence")]
    NotWeakEquivalence,
    #[error("maps do not form the expected diagram: {0}")]
    Diagram(String),
    #[error("subset of states is not invariant under the action")]
    NotInvariant,
    #[error("generator `{0}` does not act bijectively")]
    NotBijective(String),
    #[error("generators `{0}` and `{1}` do not commute")]
    NotCommuting(String, String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("invalid lattice label: {0}")]
    InvalidLattice(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
