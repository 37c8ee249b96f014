use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed regex, grammar file, direction word, or JSON payload.
    #[error("parse error at offset {position}: {message}")]
    Parse { position: usize, message: String },

    /// A symbol that is not printable, or is whitespace.
    #[error("invalid symbol {symbol:?}: symbols must be printable and not whitespace")]
    InvalidSymbol { symbol: char },

    /// A symbol fell outside the expected alphabet, or two operands carry
    /// different alphabets.
    #[error("alphabet mismatch: {message}")]
    AlphabetMismatch { message: String },

    #[error("invalid residue {residue} for modulus {modulus}")]
    InvalidResidue { residue: usize, modulus: usize },

    /// A bounded enumeration was asked to go past its configured cap.
    #[error("requested length {requested} exceeds the cap {cap}")]
    CapExceeded { requested: usize, cap: usize },

    /// The folding function is undefined when the word and the direction
    /// word have different lengths.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A grammar rule carries more than one nonterminal on its right-hand
    /// side.
    #[error("grammar is not linear: a rule for '{nonterminal}' has more than one nonterminal")]
    NotLinear { nonterminal: String },

    /// A grammar cannot be brought into right-linear normal form.
    #[error("grammar is not right-linear: {message}")]
    NotRightLinear { message: String },

    /// A folding procedure language used a symbol other than `u` or `d`.
    #[error("procedure alphabet must be a subset of {{u, d}}, found {symbol:?}")]
    ProcAlphabet { symbol: char },

    #[error("unknown nonterminal '{name}'")]
    UnknownNonterminal { name: String },

    #[error("precondition violated: {message}")]
    Precondition { message: String },

    /// Input too short for a pumping decomposition.
    #[error("prefix of length {length} is too short: need more than {bound} symbols")]
    TooShort { length: usize, bound: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
