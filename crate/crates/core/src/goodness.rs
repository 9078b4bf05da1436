//! Verification that a generator matrix is "good": every k cyclically
//! consecutive columns are linearly independent. Goodness is exactly the
//! property that lets the code correct any single wrap-around burst of
//! n-k erasures.
//!
//! Everything here is brute force by design — these checks are the
//! ground truth the constructions are validated against.

use serde::Serialize;
use thiserror::Error;

use crate::linalg::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GoodnessError {
    #[error("matrix has more rows ({k}) than columns ({n})")]
    MoreRowsThanColumns { k: usize, n: usize },
    #[error("matrix is not in systematic form (I_k | P)")]
    NotSystematic,
    #[error("index set must contain {expected} distinct positions in 1..={n}")]
    BadIndexSet { expected: usize, n: usize },
}

/// Rank check of one cyclic window of columns. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    pub start: usize,
    pub columns: Vec<usize>,
    pub rank: usize,
    pub ok: bool,
}

/// Outcome of checking every cyclic window of a matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodnessReport {
    pub good: bool,
    pub k: usize,
    pub n: usize,
    pub windows: Vec<WindowReport>,
}

/// One failing window inside a prefix, for the prefix-goodness report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrefixFailure {
    pub prefix: usize,
    pub start: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrefixReport {
    pub prefix_good: bool,
    pub k: usize,
    pub n: usize,
    pub failures: Vec<PrefixFailure>,
}

/// 0-based column indices of the cyclic window of length k starting at
/// 1-based position `start`.
fn window_columns(n: usize, k: usize, start: usize) -> Vec<usize> {
    (0..k).map(|t| (start - 1 + t) % n).collect()
}

fn check_window(g: &Matrix, start: usize) -> WindowReport {
    let k = g.rows();
    let cols = window_columns(g.cols(), k, start);
    let rank = g.columns(&cols).expect("window indices in range").rank();
    WindowReport {
        start,
        columns: cols.iter().map(|c| c + 1).collect(),
        rank,
        ok: rank == k,
    }
}

fn check_shape(g: &Matrix) -> Result<(), GoodnessError> {
    if g.rows() > g.cols() {
        return Err(GoodnessError::MoreRowsThanColumns {
            k: g.rows(),
            n: g.cols(),
        });
    }
    Ok(())
}

/// Checks every cyclic window, reporting each one.
///
/// A matrix with zero rows (the dual of a full-dimension code) is good
/// vacuously and yields an empty window list.
pub fn check_goodness(g: &Matrix) -> Result<GoodnessReport, GoodnessError> {
    check_shape(g)?;
    let (k, n) = (g.rows(), g.cols());
    if k == 0 {
        return Ok(GoodnessReport {
            good: true,
            k,
            n,
            windows: Vec::new(),
        });
    }
    let windows: Vec<WindowReport> = (1..=n).map(|s| check_window(g, s)).collect();
    Ok(GoodnessReport {
        good: windows.iter().all(|w| w.ok),
        k,
        n,
        windows,
    })
}

/// True iff every k cyclically consecutive columns are independent.
/// Stops at the first failing window.
pub fn is_good(g: &Matrix) -> Result<bool, GoodnessError> {
    check_shape(g)?;
    let (k, n) = (g.rows(), g.cols());
    if k == 0 {
        return Ok(true);
    }
    Ok((1..=n).all(|s| check_window(g, s).ok))
}

/// Checks that every prefix (I_k | first j-k appended columns), for
/// j = k..=n, is good. The matrix must be systematic.
pub fn check_prefix_goodness(g: &Matrix) -> Result<PrefixReport, GoodnessError> {
    check_shape(g)?;
    if !g.starts_with_identity() {
        return Err(GoodnessError::NotSystematic);
    }
    let (k, n) = (g.rows(), g.cols());
    let mut failures = Vec::new();
    for j in k..=n {
        let prefix = g.submatrix(0..k, 0..j).expect("prefix in range");
        for w in check_goodness(&prefix)?.windows {
            if !w.ok {
                failures.push(PrefixFailure {
                    prefix: j,
                    start: w.start,
                    rank: w.rank,
                });
            }
        }
    }
    Ok(PrefixReport {
        prefix_good: failures.is_empty(),
        k,
        n,
        failures,
    })
}

/// True iff every prefix of the systematic matrix is good.
pub fn is_prefix_good(g: &Matrix) -> Result<bool, GoodnessError> {
    check_shape(g)?;
    if !g.starts_with_identity() {
        return Err(GoodnessError::NotSystematic);
    }
    let (k, n) = (g.rows(), g.cols());
    for j in k..=n {
        let prefix = g.submatrix(0..k, 0..j).expect("prefix in range");
        if !is_good(&prefix)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff the columns at the given 1-based positions are independent,
/// i.e. the positions form an information set of the code.
pub fn is_information_set(g: &Matrix, positions: &[usize]) -> Result<bool, GoodnessError> {
    let (k, n) = (g.rows(), g.cols());
    let bad = GoodnessError::BadIndexSet { expected: k, n };
    if positions.len() != k {
        return Err(bad);
    }
    let mut seen = vec![false; n];
    for &pos in positions {
        if pos < 1 || pos > n || seen[pos - 1] {
            return Err(bad);
        }
        seen[pos - 1] = true;
    }
    let cols: Vec<usize> = positions.iter().map(|&p| p - 1).collect();
    Ok(g.columns(&cols).expect("validated above").rank() == k)
}
