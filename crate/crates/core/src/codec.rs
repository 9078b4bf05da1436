//! Encoding, erasure, and burst decoding.
//!
//! A good [n, k] generator guarantees that after any single cyclic burst
//! of at most n-k erasures, some window of k consecutive positions is
//! fully known and invertible; the decoder solves on the window that
//! starts right after the burst ends.

use thiserror::Error;

use crate::construct::Code;
use crate::gf::{FieldElement, PrimeField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("message has {found} symbols, expected k = {expected}")]
    MessageLength { expected: usize, found: usize },
    #[error("word has {found} symbols, expected n = {expected}")]
    WordLength { expected: usize, found: usize },
    #[error("symbols belong to Z_{found}, expected Z_{expected}")]
    FieldMismatch { expected: u32, found: u32 },
    #[error("burst (start {start}, length {length}) does not fit a word of length {n}")]
    InvalidBurst {
        start: usize,
        length: usize,
        n: usize,
    },
    #[error("erased positions do not form a single cyclic burst")]
    NotABurst,
    #[error("burst of length {length} exceeds the correctable maximum {max}")]
    BurstTooLong { length: usize, max: usize },
}

/// A cyclic run of erased positions: `length` positions starting at the
/// 1-based position `start`, wrapping past position n back to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BurstPattern {
    start: usize,
    length: usize,
}

impl BurstPattern {
    /// # Panics
    ///
    /// Panics if `start` is zero; positions are 1-based.
    pub fn new(start: usize, length: usize) -> BurstPattern {
        assert!(start >= 1, "burst positions are 1-based");
        BurstPattern { start, length }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// The 1-based positions covered in a word of length n.
    pub fn positions(&self, n: usize) -> Vec<usize> {
        (0..self.length).map(|t| (self.start - 1 + t) % n + 1).collect()
    }

    /// True if the burst runs past position n and wraps to the front.
    pub fn wraps_around(&self, n: usize) -> bool {
        self.length > 0 && self.start - 1 + self.length > n
    }
}

/// A received symbol: either a field element or an erasure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbol {
    Known(FieldElement),
    Erased,
}

/// A length-n word whose erased positions form one cyclic burst
/// (validated at construction). The burst is stored in canonical form:
/// a word with no erasures has burst (1, 0), a fully erased word (1, n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReceivedWord {
    field: PrimeField,
    symbols: Vec<Option<u32>>,
    burst: BurstPattern,
}

/// Finds the canonical burst covering the erased positions, or fails if
/// they are not one cyclic run.
fn derive_burst(erased: &[bool]) -> Result<BurstPattern, CodecError> {
    let n = erased.len();
    let count = erased.iter().filter(|&&e| e).count();
    if count == 0 {
        return Ok(BurstPattern::new(1, 0));
    }
    if count == n {
        return Ok(BurstPattern::new(1, n));
    }
    // A proper nonempty subset is one cyclic run iff there is exactly
    // one known -> erased boundary.
    let starts: Vec<usize> = (0..n)
        .filter(|&i| !erased[i] && erased[(i + 1) % n])
        .map(|i| (i + 1) % n + 1)
        .collect();
    if starts.len() != 1 {
        return Err(CodecError::NotABurst);
    }
    Ok(BurstPattern::new(starts[0], count))
}

impl ReceivedWord {
    pub fn new(field: PrimeField, symbols: &[Symbol]) -> Result<ReceivedWord, CodecError> {
        if symbols.is_empty() {
            return Err(CodecError::WordLength {
                expected: 1,
                found: 0,
            });
        }
        let mut values = Vec::with_capacity(symbols.len());
        let mut erased = Vec::with_capacity(symbols.len());
        for s in symbols {
            match s {
                Symbol::Known(e) => {
                    if e.field() != field {
                        return Err(CodecError::FieldMismatch {
                            expected: field.modulus(),
                            found: e.field().modulus(),
                        });
                    }
                    values.push(Some(e.value()));
                    erased.push(false);
                }
                Symbol::Erased => {
                    values.push(None);
                    erased.push(true);
                }
            }
        }
        let burst = derive_burst(&erased)?;
        Ok(ReceivedWord {
            field,
            symbols: values,
            burst,
        })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Symbol at the 1-based position.
    ///
    /// # Panics
    ///
    /// Panics if the position is out of range.
    pub fn symbol(&self, pos: usize) -> Symbol {
        assert!(pos >= 1 && pos <= self.len(), "positions are 1-based");
        match self.symbols[pos - 1] {
            Some(v) => Symbol::Known(self.field.element(u64::from(v))),
            None => Symbol::Erased,
        }
    }

    /// The canonical burst covering the erased positions.
    pub fn burst(&self) -> BurstPattern {
        self.burst
    }
}

/// Multiplies the message row vector by the generator.
pub fn encode(code: &Code, message: &[FieldElement]) -> Result<Vec<FieldElement>, CodecError> {
    let g = code.generator();
    let (k, n) = (code.dimension(), code.length());
    if message.len() != k {
        return Err(CodecError::MessageLength {
            expected: k,
            found: message.len(),
        });
    }
    let field = code.field();
    for e in message {
        if e.field() != field {
            return Err(CodecError::FieldMismatch {
                expected: field.modulus(),
                found: e.field().modulus(),
            });
        }
    }
    Ok((0..n)
        .map(|j| {
            let mut acc = 0u64;
            for (i, m) in message.iter().enumerate() {
                acc += u64::from(m.value()) * u64::from(g.get(i, j).value());
            }
            field.element(acc)
        })
        .collect())
}

/// Replaces the burst positions of a codeword with erasures.
pub fn erase(codeword: &[FieldElement], burst: BurstPattern) -> Result<ReceivedWord, CodecError> {
    let n = codeword.len();
    if n == 0 {
        return Err(CodecError::WordLength {
            expected: 1,
            found: 0,
        });
    }
    let field = codeword[0].field();
    for e in codeword {
        if e.field() != field {
            return Err(CodecError::FieldMismatch {
                expected: field.modulus(),
                found: e.field().modulus(),
            });
        }
    }
    if burst.start() > n || burst.length() > n {
        return Err(CodecError::InvalidBurst {
            start: burst.start(),
            length: burst.length(),
            n,
        });
    }
    let mut symbols: Vec<Symbol> = codeword.iter().map(|&e| Symbol::Known(e)).collect();
    for pos in burst.positions(n) {
        symbols[pos - 1] = Symbol::Erased;
    }
    ReceivedWord::new(field, &symbols)
}

/// Recovers (codeword, message) from a word whose erased burst is at
/// most n-k long.
///
/// The decoder reads the k consecutive known positions starting right
/// after the burst ends and solves for the message there; erased
/// positions are never consulted.
pub fn decode(
    code: &Code,
    received: &ReceivedWord,
) -> Result<(Vec<FieldElement>, Vec<FieldElement>), CodecError> {
    let (k, n) = (code.dimension(), code.length());
    if received.len() != n {
        return Err(CodecError::WordLength {
            expected: n,
            found: received.len(),
        });
    }
    if received.field() != code.field() {
        return Err(CodecError::FieldMismatch {
            expected: code.field().modulus(),
            found: received.field().modulus(),
        });
    }
    let burst = received.burst();
    if burst.length() > code.max_burst() {
        return Err(CodecError::BurstTooLong {
            length: burst.length(),
            max: code.max_burst(),
        });
    }
    let window_start = if burst.length() == 0 {
        1
    } else {
        (burst.start() - 1 + burst.length()) % n + 1
    };
    let window: Vec<usize> = (0..k).map(|t| (window_start - 1 + t) % n).collect();
    let y: Vec<FieldElement> = window
        .iter()
        .map(|&c| match received.symbol(c + 1) {
            Symbol::Known(e) => e,
            Symbol::Erased => unreachable!("window after the burst holds no erasures"),
        })
        .collect();
    let g = code.generator();
    let window_cols = g.columns(&window).expect("window indices in range");
    // Codeword values on the window are m * A, i.e. A^T m = y.
    let message = window_cols
        .transpose()
        .solve(&y)
        .expect("window of a good generator is invertible");
    let codeword = encode(code, &message)?;
    Ok((codeword, message))
}
