use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus {0:?} is reducible")]
    Reducible(Vec<u32>),
    #[error("division by zero")]
    DivisionByZero,
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("orthogonal spaces over fields of even order are not supported")]
    UnsupportedCharacteristic,
    #[error("field order {0} is not a square")]
    NotASquare(u64),
    #[error("the two maximal subspaces are not opposite")]
    NotOppositeMaximals,
    #[error("bad flag: {0}")]
    BadFlag(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph is not antipodal")]
    NotAntipodal,
    #[error("graph is not distance-regular")]
    NotDistanceRegular,
    #[error("distance {0} is out of range")]
    BadDistance(usize),
    #[error("not a permutation: {0}")]
    NotPermutation(String),
    #[error("tuple set is not invariant under the generators")]
    NotInvariant,
    #[error("vertices must be distinct")]
    NotDistinct,
    #[error("subspace is not singular")]
    NotSingular,
    #[error("maximal singular subspaces are not allowed here")]
    MaximalNotAllowed,
    #[error("not a geodesic: {0}")]
    NotAGeodesic(String),
    #[error("the geodesic has opposite ends")]
    OppositeEnds,
    #[error("bad type vector: {0}")]
    BadType(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
