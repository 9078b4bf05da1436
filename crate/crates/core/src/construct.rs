//! Constructions of good generator matrices: the recursive family, the
//! explicit binomial-coefficient family, the two length extenders, dual
//! generators, and single-column extensions. Also the exact-integer
//! binomial matrices used as oracles for the invertibility arguments
//! behind the explicit family.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::gf::{binom_mod_p, binomial_exact, FieldElement, PrimeField};
use crate::goodness::{self, GoodnessError};
use crate::linalg::Matrix;

/// Cap on the number of rows of the doubling-construction matrix.
pub const M_MATRIX_SIZE_CAP: usize = 1 << 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("dimensions must satisfy 1 <= k <= n (got k={k}, n={n})")]
    InvalidDimensions { k: usize, n: usize },
    #[error("matrix is not in systematic form (I_k | P)")]
    NotSystematic,
    #[error("matrix is not good: window at position {start} has rank {rank} < {k}")]
    NotGood { start: usize, rank: usize, k: usize },
    #[error("matrix is not over Z_2")]
    NotBinary,
    #[error("extension count (p-1)^k = {count} exceeds the enumeration limit {limit}")]
    LimitExceeded { count: u128, limit: u64 },
    #[error("matrix of 2^{m} rows exceeds the size cap of {cap}")]
    SizeCapExceeded { m: u32, cap: usize },
    #[error("arguments must satisfy m >= 1, b >= 1 and a + b <= p^m (got p={p}, m={m}, a={a}, b={b})")]
    BadPascalBlockArgs { p: u32, m: u32, a: u64, b: usize },
}

impl From<GoodnessError> for ConstructError {
    fn from(e: GoodnessError) -> Self {
        match e {
            GoodnessError::MoreRowsThanColumns { k, n } => {
                ConstructError::InvalidDimensions { k, n }
            }
            GoodnessError::NotSystematic => ConstructError::NotSystematic,
            GoodnessError::BadIndexSet { expected, n } => {
                ConstructError::InvalidDimensions { k: expected, n }
            }
        }
    }
}

/// How a [`Code`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Recursive,
    Explicit,
    ExtendedDimension,
    ExtendedRedundancy,
    ColumnExtended,
    Manual,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Provenance::Recursive => "recursive",
            Provenance::Explicit => "explicit",
            Provenance::ExtendedDimension => "extended-dim",
            Provenance::ExtendedRedundancy => "extended-red",
            Provenance::ColumnExtended => "column-extended",
            Provenance::Manual => "manual",
        })
    }
}

/// An [n, k] code with a generator matrix verified to be good, i.e.
/// able to correct any single wrap-around burst of n-k erasures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    matrix: Matrix,
    provenance: Provenance,
}

impl Code {
    /// Wraps a generator matrix after verifying goodness. Matrices with
    /// `Recursive` or `Explicit` provenance must also be systematic.
    pub fn new(matrix: Matrix, provenance: Provenance) -> Result<Code, ConstructError> {
        let (k, n) = (matrix.rows(), matrix.cols());
        if k == 0 || k > n {
            return Err(ConstructError::InvalidDimensions { k, n });
        }
        if matches!(provenance, Provenance::Recursive | Provenance::Explicit)
            && !matrix.starts_with_identity()
        {
            return Err(ConstructError::NotSystematic);
        }
        ensure_good(&matrix)?;
        Ok(Code { matrix, provenance })
    }

    pub fn field(&self) -> PrimeField {
        self.matrix.field()
    }

    /// Code dimension k.
    pub fn dimension(&self) -> usize {
        self.matrix.rows()
    }

    /// Block length n.
    pub fn length(&self) -> usize {
        self.matrix.cols()
    }

    /// Longest erasure burst the code corrects, n - k.
    pub fn max_burst(&self) -> usize {
        self.length() - self.dimension()
    }

    pub fn generator(&self) -> &Matrix {
        &self.matrix
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }
}

/// Errors with the first failing window if the matrix is not good.
fn ensure_good(g: &Matrix) -> Result<(), ConstructError> {
    let report = goodness::check_goodness(g)?;
    if let Some(w) = report.windows.iter().find(|w| !w.ok) {
        return Err(ConstructError::NotGood {
            start: w.start,
            rank: w.rank,
            k: g.rows(),
        });
    }
    Ok(())
}

fn ensure_systematic(g: &Matrix) -> Result<(), ConstructError> {
    if g.rows() == 0 || !g.starts_with_identity() {
        return Err(ConstructError::NotSystematic);
    }
    Ok(())
}

/// The k x r matrix P_{k,r} defined by stripping identity blocks:
/// P_{k,r} = (I_r stacked on P_{k-r,r}) for r < k, I_k for r = k, and
/// (I_k | P_{k,r-k}) for r > k.
///
/// Implemented iteratively: the subtractive reduction of (k, r) is
/// recorded first and the matrix is grown back from the I base case, so
/// skewed shapes like (500, 1) do not recurse deeply.
///
/// # Panics
///
/// Panics if `k` or `r` is zero.
pub fn p_matrix(k: usize, r: usize, field: PrimeField) -> Matrix {
    assert!(k >= 1 && r >= 1, "p_matrix requires k >= 1 and r >= 1");
    enum Step {
        Top(usize),  // vconcat(I_s, _) taken when r < k
        Left(usize), // hconcat(I_s, _) taken when r > k
    }
    let mut steps = Vec::new();
    let (mut a, mut b) = (k, r);
    while a != b {
        if b < a {
            steps.push(Step::Top(b));
            a -= b;
        } else {
            steps.push(Step::Left(a));
            b -= a;
        }
    }
    let mut p = Matrix::identity(a, field);
    for step in steps.iter().rev() {
        p = match *step {
            Step::Top(s) => Matrix::identity(s, field)
                .vconcat(&p)
                .expect("column counts agree by construction"),
            Step::Left(s) => Matrix::identity(s, field)
                .hconcat(&p)
                .expect("row counts agree by construction"),
        };
    }
    p
}

/// Good [n, k] generator (I_k | P_{k,n-k}); the identity alone when
/// n = k. Goodness is re-verified on the result.
pub fn generator_recursive(
    k: usize,
    n: usize,
    field: PrimeField,
) -> Result<Code, ConstructError> {
    if k == 0 || k > n {
        return Err(ConstructError::InvalidDimensions { k, n });
    }
    let ik = Matrix::identity(k, field);
    let g = if n == k {
        ik
    } else {
        ik.hconcat(&p_matrix(k, n - k, field)).expect("k rows each")
    };
    Code::new(g, Provenance::Recursive)
}

/// Extends a good systematic [n, k] generator to a good [n+k, k] one by
/// prepending another identity block: (I_k | G).
pub fn extend_fixed_dimension(g: &Matrix) -> Result<Matrix, ConstructError> {
    ensure_systematic(g)?;
    ensure_good(g)?;
    Ok(Matrix::identity(g.rows(), g.field())
        .hconcat(g)
        .expect("k rows each"))
}

/// Extends a good systematic [n, k] generator to a good [2n-k, n] one:
///
/// ```text
/// ( I_{n-k}   0     I_{n-k} )
/// (   0      I_k      P     )
/// ```
pub fn extend_fixed_redundancy(g: &Matrix) -> Result<Matrix, ConstructError> {
    ensure_systematic(g)?;
    ensure_good(g)?;
    let (k, n) = (g.rows(), g.cols());
    let r = n - k;
    Ok(Matrix::from_fn(n, 2 * n - k, g.field(), |i, j| {
        if i < r {
            // (I_{n-k} | 0 | I_{n-k}) band.
            u64::from(j < r && i == j || j >= n && i == j - n)
        } else if j < r {
            0
        } else if j < n {
            u64::from(i - r == j - r)
        } else {
            // P entry: row i-r of G's parity part.
            u64::from(g.get(i - r, k + (j - n)).value())
        }
    }))
}

/// Generator (-P^T | I_{n-k}) of the dual code of a systematic (I_k | P).
///
/// For a full-dimension code (n = k) this is the 0 x n matrix, which is
/// good vacuously.
pub fn dual_generator(g: &Matrix) -> Result<Matrix, ConstructError> {
    ensure_systematic(g)?;
    let (k, n) = (g.rows(), g.cols());
    let field = g.field();
    Ok(Matrix::from_fn(n - k, n, field, |i, j| {
        if j < k {
            u64::from(field.element(u64::from(g.get(j, k + i).value())).neg().value())
        } else {
            u64::from(j - k == i)
        }
    }))
}

/// The k x k basis matrix B whose row i spans the orthogonal complement
/// of the k-1 columns a new column x would share a window with: columns
/// n-i, ..., n-1, 0, ..., k-i-2 (0-based). Appending x keeps the matrix
/// good iff (x, b_i) is nonzero for every i; B always has rank k when G
/// is good.
pub fn extension_basis(g: &Matrix) -> Result<Matrix, ConstructError> {
    ensure_good(g)?;
    let (k, n) = (g.rows(), g.cols());
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(k);
    for i in 0..k {
        let mut window = Vec::with_capacity(k - 1);
        window.extend((0..i).map(|t| n - i + t));
        window.extend(0..k - 1 - i);
        // Rows of the constraint system are the window columns of G.
        let constraints = Matrix::from_fn(k - 1, k, g.field(), |r, c| {
            u64::from(g.get(c, window[r]).value())
        });
        let b = constraints
            .nullspace_vector()
            .expect("windows of a good matrix are independent");
        rows.push(b.iter().map(|e| u64::from(e.value())).collect());
    }
    Ok(Matrix::from_fn(k, k, g.field(), |r, c| rows[r][c]))
}

fn extension_count(p: u32, k: usize) -> u128 {
    u128::from(p - 1)
        .checked_pow(k as u32)
        .unwrap_or(u128::MAX)
}

/// All (p-1)^k columns x such that (G | x) is still good, in a fixed
/// order: x = B^{-1} lambda for every lambda in {1..p-1}^k enumerated
/// lexicographically.
pub fn extension_columns(
    g: &Matrix,
    enumerate_limit: u64,
) -> Result<Vec<Vec<FieldElement>>, ConstructError> {
    let field = g.field();
    let p = field.modulus();
    let k = g.rows();
    let count = extension_count(p, k);
    if count > u128::from(enumerate_limit) {
        return Err(ConstructError::LimitExceeded {
            count,
            limit: enumerate_limit,
        });
    }
    let basis_inv = extension_basis(g)?
        .inverse()
        .expect("extension basis of a good matrix has full rank");
    let mut columns = Vec::with_capacity(count as usize);
    let mut lambda = vec![1u32; k];
    loop {
        let x: Vec<FieldElement> = (0..k)
            .map(|t| {
                let mut acc = 0u64;
                for (j, &l) in lambda.iter().enumerate() {
                    acc += u64::from(basis_inv.get(t, j).value()) * u64::from(l);
                }
                field.element(acc)
            })
            .collect();
        columns.push(x);
        if !next_tuple(&mut lambda, p - 1) {
            break;
        }
    }
    Ok(columns)
}

/// Advances `digits` (each in 1..=max) to the lexicographic successor.
/// Returns false once the tuple was all-max.
fn next_tuple(digits: &mut [u32], max: u32) -> bool {
    for d in digits.iter_mut().rev() {
        if *d < max {
            *d += 1;
            return true;
        }
        *d = 1;
    }
    false
}

/// Over Z_2 exactly one column keeps a good matrix good; returns it.
pub fn unique_binary_extension(g: &Matrix) -> Result<Vec<FieldElement>, ConstructError> {
    if g.field().modulus() != 2 {
        return Err(ConstructError::NotBinary);
    }
    let mut columns = extension_columns(g, 1)?;
    debug_assert_eq!(columns.len(), 1);
    Ok(columns.pop().expect("(2-1)^k = 1 column"))
}

/// The 2^m x 2^m binary matrix from the doubling recursion
/// M_1 = ((1,0),(1,1)), M_{t+1} = ((M_t, 0), (M_t, M_t)).
pub fn m_matrix(m: u32) -> Result<Matrix, ConstructError> {
    if m < 1 || (m as usize) >= usize::BITS as usize || (1usize << m) > M_MATRIX_SIZE_CAP {
        return Err(ConstructError::SizeCapExceeded {
            m,
            cap: M_MATRIX_SIZE_CAP,
        });
    }
    let f2 = PrimeField::new(2).expect("2 is prime");
    let mut mat = Matrix::from_rows(f2, &[vec![1, 0], vec![1, 1]]).expect("2x2 literal");
    for _ in 1..m {
        let half = mat.rows();
        mat = Matrix::from_fn(2 * half, 2 * half, f2, |r, c| {
            if r < half && c >= half {
                0
            } else {
                u64::from(mat.get(r % half, c % half).value())
            }
        });
    }
    Ok(mat)
}

/// Smallest power of p that is >= both k and r.
pub fn covering_power(p: u32, k: usize, r: usize) -> u64 {
    let bound = k.max(r) as u64;
    let mut q = 1u64;
    while q < bound {
        q *= u64::from(p);
    }
    q
}

/// The explicit k x r parity block: entry (i, j), 1-based, is
/// C(p^m - k + i - 1, j - 1) mod p with p^m the smallest power of p
/// covering both k and r.
///
/// # Panics
///
/// Panics if `k` or `r` is zero.
pub fn q_matrix(k: usize, r: usize, field: PrimeField) -> Matrix {
    assert!(k >= 1 && r >= 1, "q_matrix requires k >= 1 and r >= 1");
    let q = covering_power(field.modulus(), k, r);
    Matrix::from_fn(k, r, field, |i, j| {
        u64::from(binom_mod_p(q - k as u64 + i as u64, j as u64, field).value())
    })
}

/// Good [n, k] generator (I_k | Q_{k,n-k}) from the explicit binomial
/// construction; every prefix of it is good as well.
pub fn generator_explicit(k: usize, n: usize, field: PrimeField) -> Result<Code, ConstructError> {
    if k == 0 || k > n {
        return Err(ConstructError::InvalidDimensions { k, n });
    }
    let ik = Matrix::identity(k, field);
    let g = if n == k {
        ik
    } else {
        ik.hconcat(&q_matrix(k, n - k, field)).expect("k rows each")
    };
    Code::new(g, Provenance::Explicit)
}

/// A small dense matrix over the integers, kept exact so statements
/// about determinants over Z (not just their residues) can be tested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.entries[r * self.cols + c]
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// # Panics
    ///
    /// Panics if the matrix is not square.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|r| (0..n).map(|c| self.get(r, c).clone()).collect())
            .collect();
        let mut negated = false;
        let mut denom = BigInt::one();
        for t in 0..n - 1 {
            if m[t][t].is_zero() {
                let Some(swap) = (t + 1..n).find(|&i| !m[i][t].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(t, swap);
                negated = !negated;
            }
            for i in t + 1..n {
                for j in t + 1..n {
                    let num = &m[t][t] * &m[i][j] - &m[i][t] * &m[t][j];
                    m[i][j] = num / &denom; // exact at every step
                }
                m[i][t] = BigInt::zero();
            }
            denom = m[t][t].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if negated {
            -det
        } else {
            det
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs() == BigInt::one()
    }

    /// Entrywise reduction into Z_p.
    pub fn reduce_mod(&self, field: PrimeField) -> Matrix {
        let p = BigInt::from(field.modulus());
        Matrix::from_fn(self.rows, self.cols, field, |r, c| {
            let mut v = self.get(r, c) % &p;
            if v.is_negative() {
                v += &p;
            }
            v.to_u64().expect("residue fits in u64")
        })
    }
}

fn big(n: BigUint) -> BigInt {
    BigInt::from(n)
}

/// The b x b block of Pascal's triangle with entries C(n0 + i - 1, j - 1),
/// 1-based: b consecutive rows starting at row n0, columns 0 through b - 1.
/// Its determinant is +-1 for every n0 >= 0, which is what makes the
/// corresponding binomial systems solvable over the integers.
pub fn pascal_block(n0: u64, b: usize) -> IntMatrix {
    IntMatrix::from_fn(b, b, |i, j| big(binomial_exact(n0 + i as u64, j as u64)))
}

/// The b x b block of Pascal's triangle with entries
/// C(p^m - 1 + i - b, a + j - 1), 1-based, for a + b <= p^m: the b rows
/// ending at row p^m - 1, columns starting at column a. Not unimodular
/// in general, but always invertible mod p.
pub fn shifted_pascal_block_int(
    field: PrimeField,
    m: u32,
    a: u64,
    b: usize,
) -> Result<IntMatrix, ConstructError> {
    let p = field.modulus();
    let bad = ConstructError::BadPascalBlockArgs { p, m, a, b };
    if m < 1 || b < 1 {
        return Err(bad);
    }
    let Some(q) = u64::from(p).checked_pow(m) else {
        return Err(bad);
    };
    if a + b as u64 > q {
        return Err(bad);
    }
    Ok(IntMatrix::from_fn(b, b, |i, j| {
        big(binomial_exact(q + i as u64 - b as u64, a + j as u64))
    }))
}

/// [`shifted_pascal_block_int`] reduced mod p.
pub fn shifted_pascal_block(
    field: PrimeField,
    m: u32,
    a: u64,
    b: usize,
) -> Result<Matrix, ConstructError> {
    Ok(shifted_pascal_block_int(field, m, a, b)?.reduce_mod(field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goodness::{is_good, is_prefix_good};

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn m2(rows: &[Vec<u64>]) -> Matrix {
        Matrix::from_rows(f(2), rows).unwrap()
    }

    #[test]
    fn p_matrix_base_cases() {
        for k in 1..=6 {
            assert_eq!(p_matrix(k, k, f(2)), Matrix::identity(k, f(2)));
        }
        // Single redundancy column is all ones.
        assert_eq!(
            p_matrix(5, 1, f(3)),
            Matrix::from_rows(f(3), &[vec![1], vec![1], vec![1], vec![1], vec![1]]).unwrap()
        );
        let ones = m2(&[vec![1], vec![1], vec![1], vec![1], vec![1]]);
        let expected = Matrix::identity(5, f(2)).hconcat(&ones).unwrap();
        assert_eq!(p_matrix(5, 6, f(2)), expected);
    }

    #[test]
    fn p_matrix_follows_its_recursion() {
        for p in [2u32, 3] {
            for k in 1..=10usize {
                for r in 1..=10usize {
                    let got = p_matrix(k, r, f(p));
                    let expected = if r < k {
                        Matrix::identity(r, f(p))
                            .vconcat(&p_matrix(k - r, r, f(p)))
                            .unwrap()
                    } else if r == k {
                        Matrix::identity(k, f(p))
                    } else {
                        Matrix::identity(k, f(p))
                            .hconcat(&p_matrix(k, r - k, f(p)))
                            .unwrap()
                    };
                    assert_eq!(got, expected, "P_{{{k},{r}}} over Z_{p}");
                }
            }
        }
    }

    #[test]
    fn p_matrix_transpose_symmetry() {
        for p in [2u32, 3, 5] {
            for k in 1..=12 {
                for r in 1..=12 {
                    assert_eq!(p_matrix(k, r, f(p)), p_matrix(r, k, f(p)).transpose());
                }
            }
        }
    }

    #[test]
    fn p_matrix_handles_skewed_shapes() {
        // Deep one-sided reductions must not overflow the stack.
        let tall = p_matrix(500, 1, f(2));
        assert_eq!(tall.rows(), 500);
        assert_eq!(tall.cols(), 1);
        assert!((0..500).all(|r| tall.get(r, 0).value() == 1));
        let wide = p_matrix(1, 500, f(2));
        assert_eq!(wide, tall.transpose());
    }

    #[test]
    fn recursive_generator_examples() {
        let code = generator_recursive(2, 3, f(2)).unwrap();
        assert_eq!(code.generator(), &m2(&[vec![1, 0, 1], vec![0, 1, 1]]));
        assert_eq!(code.provenance(), Provenance::Recursive);
        assert_eq!(code.max_burst(), 1);
        let trivial = generator_recursive(4, 4, f(5)).unwrap();
        assert_eq!(trivial.generator(), &Matrix::identity(4, f(5)));
        assert!(matches!(
            generator_recursive(3, 2, f(2)),
            Err(ConstructError::InvalidDimensions { k: 3, n: 2 })
        ));
    }

    #[test]
    fn recursive_generator_small_sweep_is_good() {
        for p in [2u32, 3] {
            for n in 1..=10 {
                for k in 1..=n {
                    let code = generator_recursive(k, n, f(p)).unwrap();
                    assert!(is_good(code.generator()).unwrap(), "[{n},{k}] over Z_{p}");
                }
            }
        }
    }

    #[test]
    fn fixed_dimension_extension_examples() {
        let doubled = extend_fixed_dimension(&Matrix::identity(3, f(2))).unwrap();
        assert_eq!(
            doubled,
            Matrix::identity(3, f(2))
                .hconcat(&Matrix::identity(3, f(2)))
                .unwrap()
        );
        assert!(is_good(&doubled).unwrap());

        let g = m2(&[vec![1, 0, 1], vec![0, 1, 1]]);
        let extended = extend_fixed_dimension(&g).unwrap();
        assert_eq!(extended.cols(), 5);
        assert!(is_good(&extended).unwrap());

        assert_eq!(
            extend_fixed_dimension(&m2(&[vec![0, 1], vec![1, 0]])),
            Err(ConstructError::NotSystematic)
        );
        // Systematic but not good: repeated column (1,0).
        assert_eq!(
            extend_fixed_dimension(&m2(&[vec![1, 0, 1], vec![0, 1, 0]])),
            Err(ConstructError::NotGood {
                start: 3,
                rank: 1,
                k: 2
            })
        );
    }

    #[test]
    fn fixed_dimension_extension_matches_recursive_family() {
        // Appending an identity block is exactly one unfolding of the
        // recursion: once maps [k+r, k] onto [2k+r, k], twice onto
        // [3k+r, k].
        for p in [2u32, 3] {
            for k in 1..=5usize {
                for r in 1..=5usize {
                    let base = generator_recursive(k, k + r, f(p)).unwrap();
                    let once = extend_fixed_dimension(base.generator()).unwrap();
                    assert_eq!(
                        &once,
                        generator_recursive(k, 2 * k + r, f(p)).unwrap().generator()
                    );
                    let twice = extend_fixed_dimension(&once).unwrap();
                    assert_eq!(
                        &twice,
                        generator_recursive(k, 3 * k + r, f(p)).unwrap().generator()
                    );
                }
            }
        }
    }

    #[test]
    fn fixed_redundancy_extension_examples() {
        // [2,1] repetition code grows into the [3,2] parity-check code.
        let rep = m2(&[vec![1, 1]]);
        assert_eq!(
            extend_fixed_redundancy(&rep).unwrap(),
            m2(&[vec![1, 0, 1], vec![0, 1, 1]])
        );

        let g = Matrix::from_rows(f(3), &[vec![1, 0, 1], vec![0, 1, 2]]).unwrap();
        let extended = extend_fixed_redundancy(&g).unwrap();
        assert_eq!(extended.rows(), 3);
        assert_eq!(extended.cols(), 4);
        assert!(is_good(&extended).unwrap());
        assert!(extended.starts_with_identity());

        assert_eq!(
            extend_fixed_redundancy(&m2(&[vec![1, 1], vec![1, 0]])),
            Err(ConstructError::NotSystematic)
        );
    }

    #[test]
    fn dual_generator_examples() {
        let g = m2(&[vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(dual_generator(&g).unwrap(), m2(&[vec![1, 1, 1]]));

        let g3 = Matrix::from_rows(f(3), &[vec![1, 0, 1], vec![0, 1, 2]]).unwrap();
        let dual = dual_generator(&g3).unwrap();
        assert_eq!(
            dual,
            Matrix::from_rows(f(3), &[vec![2, 1, 1]]).unwrap()
        );
        // Annihilation: G * H^T = 0.
        let prod = g3.mul(&dual.transpose()).unwrap();
        assert_eq!(prod, Matrix::zero(2, 1, f(3)));

        // Full-dimension code: the dual generator is empty and good.
        let empty = dual_generator(&Matrix::identity(3, f(2))).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (0, 3));
        assert!(is_good(&empty).unwrap());
    }

    #[test]
    fn extension_columns_examples() {
        let cols = extension_columns(&Matrix::identity(2, f(2)), 10).unwrap();
        assert_eq!(cols.len(), 1);
        assert_eq!(
            cols[0],
            vec![f(2).element(1), f(2).element(1)]
        );

        // Over Z_3 the two extensions of I_1 are (1) and (2), in order.
        let cols3 = extension_columns(&Matrix::identity(1, f(3)), 10).unwrap();
        assert_eq!(
            cols3,
            vec![vec![f(3).element(1)], vec![f(3).element(2)]]
        );

        assert_eq!(
            extension_columns(&Matrix::identity(2, f(3)), 3),
            Err(ConstructError::LimitExceeded { count: 4, limit: 3 })
        );
    }

    #[test]
    fn extension_columns_match_brute_force() {
        // Independent route: try every candidate column and keep those
        // that leave the matrix good.
        for p in [2u32, 3] {
            for k in 1..=3usize {
                for n in k..=5usize {
                    let code = generator_recursive(k, n, f(p)).unwrap();
                    let g = code.generator();
                    let mut expected = Vec::new();
                    for idx in 0..u64::from(p).pow(k as u32) {
                        let col: Vec<u64> =
                            (0..k).map(|i| idx / u64::from(p).pow(i as u32) % u64::from(p)).collect();
                        let col_m = Matrix::from_fn(k, 1, f(p), |r, _| col[r]);
                        let candidate = g.hconcat(&col_m).unwrap();
                        if is_good(&candidate).unwrap() {
                            expected.push(col.iter().map(|&v| f(p).element(v)).collect::<Vec<_>>());
                        }
                    }
                    let mut got = extension_columns(g, 1 << 20).unwrap();
                    assert_eq!(got.len(), (p as usize - 1).pow(k as u32), "count");
                    let key = |v: &Vec<FieldElement>| {
                        v.iter().map(|e| e.value()).collect::<Vec<_>>()
                    };
                    got.sort_by_key(key);
                    expected.sort_by_key(key);
                    assert_eq!(got, expected, "k={k} n={n} p={p}");
                }
            }
        }
    }

    #[test]
    fn extension_basis_always_has_full_rank() {
        for p in [2u32, 3] {
            for k in 1..=4usize {
                for n in k..=7usize {
                    let code = generator_recursive(k, n, f(p)).unwrap();
                    let basis = extension_basis(code.generator()).unwrap();
                    assert_eq!(basis.rank(), k, "k={k} n={n} p={p}");
                }
            }
        }
    }

    #[test]
    fn unique_binary_extension_examples() {
        assert_eq!(
            unique_binary_extension(&Matrix::identity(2, f(2))).unwrap(),
            vec![f(2).element(1), f(2).element(1)]
        );
        assert_eq!(
            unique_binary_extension(&Matrix::identity(1, f(3))),
            Err(ConstructError::NotBinary)
        );
    }

    #[test]
    fn m_matrix_examples() {
        assert_eq!(m_matrix(1).unwrap(), m2(&[vec![1, 0], vec![1, 1]]));
        assert_eq!(
            m_matrix(2).unwrap(),
            m2(&[
                vec![1, 0, 0, 0],
                vec![1, 1, 0, 0],
                vec![1, 0, 1, 0],
                vec![1, 1, 1, 1],
            ])
        );
        // Block structure of the doubling step.
        let m3 = m_matrix(3).unwrap();
        let m2_ = m_matrix(2).unwrap();
        assert_eq!(m3.submatrix(0..4, 0..4).unwrap(), m2_);
        assert_eq!(m3.submatrix(4..8, 0..4).unwrap(), m2_);
        assert_eq!(m3.submatrix(4..8, 4..8).unwrap(), m2_);
        assert_eq!(m3.submatrix(0..4, 4..8).unwrap(), Matrix::zero(4, 4, f(2)));

        assert!(matches!(
            m_matrix(11),
            Err(ConstructError::SizeCapExceeded { m: 11, .. })
        ));
        assert!(matches!(m_matrix(0), Err(ConstructError::SizeCapExceeded { .. })));
    }

    #[test]
    fn q_matrix_examples() {
        assert_eq!(q_matrix(2, 2, f(2)), m_matrix(1).unwrap());
        assert_eq!(q_matrix(4, 4, f(2)), m_matrix(2).unwrap());
        // Lower-left nesting: smaller blocks sit in the corner of
        // larger ones.
        for p in [2u32, 3] {
            let big_q = q_matrix(9, 9, f(p));
            for k in 1..=9usize {
                for r in 1..=9usize {
                    let corner = big_q.submatrix(9 - k..9, 0..r).unwrap();
                    assert_eq!(q_matrix(k, r, f(p)), corner, "k={k} r={r} p={p}");
                }
            }
        }
    }

    #[test]
    fn q_matrix_block_structure() {
        // Over Z_3, Q_9 splits into 3x3 blocks C(a,c) * Q_3.
        let f3 = f(3);
        let q9 = q_matrix(9, 9, f3);
        let q3 = q_matrix(3, 3, f3);
        for a in 0..3usize {
            for c in 0..3usize {
                let coeff = binom_mod_p(a as u64, c as u64, f3);
                for i in 0..3 {
                    for j in 0..3 {
                        let expected = coeff.mul(q3.get(i, j)).unwrap();
                        assert_eq!(q9.get(3 * a + i, 3 * c + j), expected, "block ({a},{c})");
                    }
                }
            }
        }
    }

    #[test]
    fn explicit_generator_examples() {
        let code = generator_explicit(2, 3, f(2)).unwrap();
        assert_eq!(code.generator(), &m2(&[vec![1, 0, 1], vec![0, 1, 1]]));
        assert_eq!(code.provenance(), Provenance::Explicit);
        for p in [2u32, 3] {
            for n in 1..=8 {
                for k in 1..=n {
                    let code = generator_explicit(k, n, f(p)).unwrap();
                    assert!(
                        is_prefix_good(code.generator()).unwrap(),
                        "[{n},{k}] over Z_{p}"
                    );
                }
            }
        }
    }

    #[test]
    fn binary_extension_chain_reproduces_explicit_family() {
        // Greedily appending the unique good column to I_k rebuilds
        // (I_k | Q_{k,r}) column by column.
        for k in 1..=5usize {
            let mut g = Matrix::identity(k, f(2));
            for r in 1..=8usize {
                let x = unique_binary_extension(&g).unwrap();
                let xm = Matrix::from_fn(k, 1, f(2), |t, _| u64::from(x[t].value()));
                g = g.hconcat(&xm).unwrap();
                let expected = generator_explicit(k, k + r, f(2)).unwrap();
                assert_eq!(&g, expected.generator(), "k={k} r={r}");
            }
        }
    }

    #[test]
    fn code_constructor_validates() {
        assert!(matches!(
            Code::new(m2(&[vec![1, 0, 1], vec![0, 1, 0]]), Provenance::Manual),
            Err(ConstructError::NotGood { .. })
        ));
        assert_eq!(
            Code::new(m2(&[vec![1, 1], vec![1, 0]]), Provenance::Recursive),
            Err(ConstructError::NotSystematic)
        );
        // Manual provenance does not require systematic form.
        let swapped = m2(&[vec![1, 1], vec![1, 0]]);
        assert!(Code::new(swapped, Provenance::Manual).is_ok());
    }

    #[test]
    fn pascal_block_examples_and_unimodularity() {
        assert_eq!(pascal_block(4, 1).get(0, 0), &BigInt::one());
        let v = pascal_block(0, 2);
        assert_eq!(v.get(0, 0), &BigInt::one());
        assert_eq!(v.get(0, 1), &BigInt::zero());
        assert_eq!(v.get(1, 0), &BigInt::one());
        assert_eq!(v.get(1, 1), &BigInt::one());
        for n0 in 0..=6u64 {
            for b in 1..=5usize {
                assert!(
                    pascal_block(n0, b).is_unimodular(),
                    "V_{b} at n0={n0} should have determinant +-1"
                );
            }
        }
    }

    #[test]
    fn shifted_pascal_block_examples() {
        // b = 1: single entry C(p^m - 1, a) = (-1)^a mod p.
        for p in [2u32, 3, 5] {
            for m in 1..=2u32 {
                let q = u64::from(p).pow(m);
                for a in 0..q {
                    let w = shifted_pascal_block(f(p), m, a, 1).unwrap();
                    let expected = if a % 2 == 0 {
                        f(p).one()
                    } else {
                        f(p).one().neg()
                    };
                    assert_eq!(w.get(0, 0), expected, "p={p} m={m} a={a}");
                }
            }
        }

        // p=2, m=2, a=1, b=2: integer entries C(2..3, 1..2), singular
        // mod nothing -- determinant 3 -- but invertible mod 2.
        let w_int = shifted_pascal_block_int(f(2), 2, 1, 2).unwrap();
        assert_eq!(w_int.get(0, 0), &BigInt::from(2));
        assert_eq!(w_int.get(0, 1), &BigInt::from(1));
        assert_eq!(w_int.get(1, 0), &BigInt::from(3));
        assert_eq!(w_int.get(1, 1), &BigInt::from(3));
        assert_eq!(w_int.determinant(), BigInt::from(3));
        assert!(!w_int.is_unimodular());
        assert_eq!(w_int.reduce_mod(f(2)).rank(), 2);

        assert!(matches!(
            shifted_pascal_block(f(2), 2, 3, 2),
            Err(ConstructError::BadPascalBlockArgs { .. })
        ));
        assert!(matches!(
            shifted_pascal_block(f(2), 0, 0, 1),
            Err(ConstructError::BadPascalBlockArgs { .. })
        ));
    }

    #[test]
    fn shifted_pascal_block_small_rank_sweep() {
        for p in [2u32, 3] {
            for m in 1..=2u32 {
                let q = u64::from(p).pow(m);
                for b in 1..=q as usize {
                    for a in 0..=(q - b as u64) {
                        let w = shifted_pascal_block(f(p), m, a, b).unwrap();
                        assert_eq!(w.rank(), b, "p={p} m={m} a={a} b={b}");
                    }
                }
            }
        }
    }

    #[test]
    fn bareiss_determinant_matches_cofactor_expansion() {
        // Independent check of the exact determinant on small random
        // integer matrices.
        fn cofactor_det(m: &Vec<Vec<i64>>) -> i64 {
            let n = m.len();
            if n == 0 {
                return 1;
            }
            if n == 1 {
                return m[0][0];
            }
            let mut acc = 0i64;
            for c in 0..n {
                let minor: Vec<Vec<i64>> = (1..n)
                    .map(|r| {
                        (0..n)
                            .filter(|&j| j != c)
                            .map(|j| m[r][j])
                            .collect()
                    })
                    .collect();
                let term = m[0][c] * cofactor_det(&minor);
                acc += if c % 2 == 0 { term } else { -term };
            }
            acc
        }

        let mut state = 0x3c6ef372u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 11) as i64 - 5
        };
        for n in 1..=4usize {
            for _ in 0..25 {
                let raw: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
                let int = IntMatrix::from_fn(n, n, |r, c| BigInt::from(raw[r][c]));
                assert_eq!(int.determinant(), BigInt::from(cofactor_det(&raw)));
            }
        }
    }
}
