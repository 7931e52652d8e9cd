use thiserror::Error;

/// Errors from sequence construction, spectrum computation, and sequence
/// mapping.
#[derive(Debug, Error)]
pub enum Error {
    #[error("sequence must contain at least one sample")]
    EmptySequence,

    #[error("sample at index {index} is {value}; samples must be finite")]
    NonFiniteSample { index: usize, value: f64 },

    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(usize),

    #[error("modulus {modulus} does not divide sequence length {length}; pad the sequence first")]
    UnalignedFold { modulus: usize, length: usize },

    #[error("frequency index k = {k} is outside {min}..={max} (modulus {modulus})")]
    FrequencyOutOfRange {
        k: usize,
        min: usize,
        max: usize,
        modulus: usize,
    },

    #[error("modulus mismatch: shift sums are for {sums}, cosine table for {table}")]
    ModulusMismatch { sums: usize, table: usize },

    #[error("invalid modulus range {l_min}..={l_max} for a sequence of length {length}")]
    InvalidScanRange {
        l_min: usize,
        l_max: usize,
        length: usize,
    },

    /// A numerical guarantee was violated. Front ends report these with a
    /// distinct exit status from input errors.
    #[error("internal consistency violation: {0}")]
    Internal(String),

    #[error("FASTA input contains no records")]
    EmptyFasta,

    #[error("FASTA record {id:?} starting at line {line} has no residues")]
    EmptyFastaRecord { id: String, line: usize },

    #[error("FASTA line {line}: {message}")]
    FastaFormat { line: usize, message: String },

    #[error(
        "numeric input line {line}, token {column}: cannot parse {token:?} as a finite number"
    )]
    NumericParse {
        line: usize,
        column: usize,
        token: String,
    },

    #[error("numeric input contains no values")]
    EmptyNumeric,

    #[error("residue {residue:?} at position {position} has no mapping value")]
    UnknownResidue { residue: char, position: usize },

    #[error("expected a {expected} sequence, got {actual}")]
    AlphabetMismatch {
        expected: &'static str,
        actual: &'static str,
    },

    #[error("indicator symbol {0:?} is not one of A, C, G, T")]
    InvalidIndicatorSymbol(char),

    #[error("mapping table line {line}: {message}")]
    MappingTable { line: usize, message: String },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for violations of internal numerical guarantees, as opposed to
    /// invalid input or usage.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
