//! Linear [n, k] codes over prime fields Z_p that correct one
//! wrap-around burst of up to n-k erasures — the best any [n, k] code
//! can do.
//!
//! A generator matrix has this property exactly when every k cyclically
//! consecutive columns are linearly independent; such matrices are
//! called *good* here. The crate constructs good generators for every
//! shape and prime, verifies goodness window by window, extends good
//! generators to longer ones, dualizes them, and runs the complete
//! encode / erase / decode pipeline plus a seeded channel simulator.
//!
//! ```
//! use burstec_core::{
//!     decode, encode, erase, generator_recursive, BurstPattern, PrimeField,
//! };
//!
//! let field = PrimeField::new(2)?;
//! let code = generator_recursive(3, 7, field)?;
//! let message: Vec<_> = [1, 0, 1].iter().map(|&v| field.element(v)).collect();
//! let codeword = encode(&code, &message)?;
//!
//! // Any 4 consecutive codeword positions may vanish, even wrapping
//! // around the end, and decoding still recovers the message.
//! let received = erase(&codeword, BurstPattern::new(6, 4))?;
//! let (recovered_word, recovered_message) = decode(&code, &received)?;
//! assert_eq!(recovered_word, codeword);
//! assert_eq!(recovered_message, message);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! Module map:
//!
//! * [`gf`] — arithmetic in Z_p and binomial coefficients mod p.
//! * [`linalg`] — dense matrices, rank, inverse, solving, nullspaces.
//! * [`goodness`] — the window-by-window goodness checks and reports.
//! * [`construct`] — generator constructions, extensions, duals.
//! * [`codec`] — encode, burst erasure, decode.
//! * [`io`] — the plain-text matrix file format.
//! * [`sim`] — the seeded erasure-channel simulator.

pub mod codec;
pub mod construct;
pub mod gf;
pub mod goodness;
pub mod io;
pub mod linalg;
pub mod sim;

pub use codec::{decode, encode, erase, BurstPattern, CodecError, ReceivedWord, Symbol};
pub use construct::{
    covering_power, dual_generator, extend_fixed_dimension, extend_fixed_redundancy,
    extension_basis, extension_columns, generator_explicit, generator_recursive, pascal_block,
    shifted_pascal_block, shifted_pascal_block_int, m_matrix, p_matrix, q_matrix, unique_binary_extension,
    Code, ConstructError, IntMatrix, Provenance,
};
pub use gf::{binom_mod_p, binomial_exact, FieldElement, GfError, PrimeField};
pub use goodness::{
    check_goodness, check_prefix_goodness, is_good, is_information_set, is_prefix_good,
    GoodnessError, GoodnessReport, PrefixFailure, PrefixReport, WindowReport,
};
pub use io::{format_matrix, parse_matrix, read_matrix, write_matrix, IoError};
pub use linalg::{LinalgError, Matrix};
pub use sim::{run_simulation, ChannelKind, ChannelModel, SimError, SimReport};
