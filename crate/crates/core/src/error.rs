use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("unrecognized field descriptor `{0}` (expected Q or GF:p)")]
    BadDescriptor(String),
    #[error("malformed scalar `{0}`")]
    BadScalar(String),
    #[error("denominator of {value} vanishes in GF({p})")]
    DenominatorVanishes { value: String, p: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{arrow}` references unknown vertex `{vertex}`")]
    DanglingEndpoint { arrow: String, vertex: String },
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error(
        "quiver is not 2-regular (condition (a)): vertex `{0}` does not have two incoming and two outgoing arrows"
    )]
    NotTwoRegular(String),
    #[error("quiver is not connected")]
    NotConnected,
    #[error("triangulation quivers need at least three vertices, got {0}")]
    TooFewVertices(usize),
    #[error("f is not a bijection on the arrows: {0}")]
    NotBijection(String),
    #[error("condition (b) fails: s(f({arrow})) = s({image}) differs from t({arrow})")]
    SourceMismatch { arrow: String, image: String },
    #[error("condition (c) fails: f^3({0}) is not {0}")]
    NotOrderThree(String),
    #[error("internal check g^(n-1)(a) = f^2(bar a) failed at `{0}`")]
    OrbitIdentity(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("a surface needs at least three distinct edges, got {0}")]
    TooFewEdges(usize),
    #[error("duplicate edge `{0}`")]
    DuplicateEdge(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("malformed triangle {index}: {reason}")]
    MalformedTriangle { index: usize, reason: String },
    #[error("edge `{edge}` occupies {count} slots, expected {expected}")]
    Multiplicity {
        edge: String,
        count: usize,
        expected: usize,
    },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("relation {0} mixes non-parallel paths")]
    NotParallel(String),
    #[error("relation {0} contains a path of length < 2")]
    ShortPath(String),
    #[error("path {0} does not compose")]
    BrokenPath(String),
    #[error("relation is empty")]
    EmptyRelation,
    #[error("weight constraint m*n >= 3 violated on the g-orbit of `{arrow}` (m = {m}, n = {n})")]
    WeightConstraint { arrow: String, m: u32, n: usize },
    #[error("missing {what} for the g-orbit of `{arrow}`")]
    MissingWeight { what: &'static str, arrow: String },
    #[error("parameter for the g-orbit of `{0}` must be nonzero")]
    ZeroParameter(String),
    #[error("`{0}` is not a border vertex")]
    NotBorder(String),
    #[error("the triangulation quiver has no border loops")]
    EmptyBorder,
    #[error("`{0}` is not a g-orbit representative")]
    UnknownOrbit(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("rewriting did not terminate within the length cap {cap}")]
    CapExceeded { cap: usize },
    #[error("quotient is infinite-dimensional at the length cap {cap}")]
    InfiniteDimensional { cap: usize },
    #[error("ideal is not admissible: radical powers stabilize at J^{power} of dimension {dim}")]
    NotAdmissible { power: usize, dim: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("unknown vertex index {0}")]
    UnknownVertex(usize),
    #[error("matrix of arrow `{arrow}` is {rows}x{cols}, expected {want_rows}x{want_cols}")]
    Shape {
        arrow: String,
        rows: usize,
        cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("relation {0} does not act as zero")]
    RelationNonzero(String),
}

/// Umbrella error for callers that touch several layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
