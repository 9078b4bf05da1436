//! Arithmetic in the prime field Z_p, plus binomial coefficients mod p.
//!
//! Elements are stored as canonical representatives in `[0, p-1]`. The
//! modulus is capped below 2^16 so that products of two representatives
//! always fit in a `u64` without overflow.

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

/// Exclusive upper bound on the field modulus.
pub const MAX_MODULUS: u32 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0} is not below the supported bound {MAX_MODULUS}")]
    ModulusTooLarge(u32),
    #[error("operands belong to different fields (Z_{0} and Z_{1})")]
    FieldMismatch(u32, u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
}

/// The field Z_p for a prime `p < 2^16`.
///
/// Primality is established by trial division when the field is created,
/// so a `PrimeField` value is always a genuine field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Creates Z_p, rejecting composites and out-of-range moduli.
    pub fn new(p: u32) -> Result<Self, GfError> {
        if p >= MAX_MODULUS {
            return Err(GfError::ModulusTooLarge(p));
        }
        if p < 2 {
            return Err(GfError::NotPrime(p));
        }
        let mut d = 2u32;
        while d * d <= p {
            if p % d == 0 {
                return Err(GfError::NotPrime(p));
            }
            d += 1;
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Embeds an integer into the field, reducing mod p.
    pub fn element(self, value: u64) -> FieldElement {
        FieldElement {
            value: (value % u64::from(self.p)) as u32,
            field: self,
        }
    }

    pub fn zero(self) -> FieldElement {
        self.element(0)
    }

    pub fn one(self) -> FieldElement {
        self.element(1)
    }

    // Raw operations on canonical representatives. These back both the
    // `FieldElement` API and the matrix kernels, which validate field
    // agreement once per matrix instead of once per entry.

    pub(crate) fn add_raw(self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    pub(crate) fn sub_raw(self, a: u32, b: u32) -> u32 {
        (a + self.p - b % self.p) % self.p
    }

    pub(crate) fn mul_raw(self, a: u32, b: u32) -> u32 {
        (u64::from(a) * u64::from(b) % u64::from(self.p)) as u32
    }

    pub(crate) fn neg_raw(self, a: u32) -> u32 {
        (self.p - a % self.p) % self.p
    }

    pub(crate) fn pow_raw(self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem. `a` must be
    /// nonzero mod p; callers that cannot guarantee that go through
    /// [`FieldElement::inv`].
    pub(crate) fn inv_raw(self, a: u32) -> u32 {
        debug_assert!(a % self.p != 0, "inverse of zero");
        self.pow_raw(a, self.p - 2)
    }
}

/// An element of Z_p, tagged with its field.
///
/// Mixing elements of different fields is an error, not a silent
/// coercion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    field: PrimeField,
}

impl FieldElement {
    /// Canonical representative in `[0, p-1]`.
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, rhs: FieldElement) -> Result<PrimeField, GfError> {
        if self.field == rhs.field {
            Ok(self.field)
        } else {
            Err(GfError::FieldMismatch(self.field.p, rhs.field.p))
        }
    }

    pub fn add(self, rhs: FieldElement) -> Result<FieldElement, GfError> {
        let f = self.same_field(rhs)?;
        Ok(FieldElement {
            value: f.add_raw(self.value, rhs.value),
            field: f,
        })
    }

    pub fn sub(self, rhs: FieldElement) -> Result<FieldElement, GfError> {
        let f = self.same_field(rhs)?;
        Ok(FieldElement {
            value: f.sub_raw(self.value, rhs.value),
            field: f,
        })
    }

    pub fn mul(self, rhs: FieldElement) -> Result<FieldElement, GfError> {
        let f = self.same_field(rhs)?;
        Ok(FieldElement {
            value: f.mul_raw(self.value, rhs.value),
            field: f,
        })
    }

    pub fn neg(self) -> FieldElement {
        FieldElement {
            value: self.field.neg_raw(self.value),
            field: self.field,
        }
    }

    pub fn inv(self) -> Result<FieldElement, GfError> {
        if self.value == 0 {
            return Err(GfError::ZeroInverse);
        }
        Ok(FieldElement {
            value: self.field.inv_raw(self.value),
            field: self.field,
        })
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Binomial coefficient C(n, k) for `n < p`, reduced mod p.
///
/// Every factor of the falling product is a unit mod p, so the division
/// can be done with inverses instead of exact integer arithmetic.
fn small_binom(field: PrimeField, n: u64, k: u64) -> u32 {
    debug_assert!(n < u64::from(field.modulus()));
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u32 % field.modulus();
    for i in 0..k {
        acc = field.mul_raw(acc, ((n - i) % u64::from(field.modulus())) as u32);
        acc = field.mul_raw(acc, field.inv_raw((i + 1) as u32));
    }
    acc
}

/// Binomial coefficient C(n, k) mod p via the digit product
/// C(n, k) = prod_i C(n_i, k_i) mod p, where n_i, k_i are the base-p
/// digits of n and k. Any digit with k_i > n_i makes the product zero.
pub fn binom_mod_p(n: u64, k: u64, field: PrimeField) -> FieldElement {
    let p = u64::from(field.modulus());
    let (mut n, mut k) = (n, k);
    let mut acc = 1u32 % field.modulus();
    while n > 0 || k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return field.zero();
        }
        acc = field.mul_raw(acc, small_binom(field, nd, kd));
        n /= p;
        k /= p;
    }
    field.element(u64::from(acc))
}

/// Exact integer binomial coefficient C(n, k).
///
/// Used where a statement is about the integers themselves rather than
/// their residues (unimodularity of the binomial matrices below).
pub fn binomial_exact(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn accepts_primes_rejects_composites() {
        for p in [2u32, 3, 5, 7, 65521] {
            assert_eq!(PrimeField::new(p).unwrap().modulus(), p);
        }
        for p in [0u32, 1, 4, 6, 9, 65025] {
            assert_eq!(PrimeField::new(p), Err(GfError::NotPrime(p)));
        }
        // 65537 is prime but over the modulus bound.
        assert_eq!(
            PrimeField::new(65537),
            Err(GfError::ModulusTooLarge(65537))
        );
    }

    #[test]
    fn arithmetic_examples() {
        let f5 = f(5);
        assert_eq!(f5.element(3).add(f5.element(4)).unwrap(), f5.element(2));
        let f2 = f(2);
        assert_eq!(f2.element(1).add(f2.element(1)).unwrap(), f2.element(0));
        let f3 = f(3);
        assert_eq!(f3.element(1).neg(), f3.element(2));
        assert_eq!(f5.element(2).sub(f5.element(4)).unwrap(), f5.element(3));
        assert_eq!(f5.element(3).mul(f5.element(4)).unwrap(), f5.element(2));
    }

    #[test]
    fn inverse_examples() {
        let f5 = f(5);
        assert_eq!(f5.element(2).inv().unwrap(), f5.element(3));
        let f2 = f(2);
        assert_eq!(f2.element(1).inv().unwrap(), f2.element(1));
        assert_eq!(f2.element(0).inv(), Err(GfError::ZeroInverse));
    }

    #[test]
    fn inverse_matches_exhaustive_search() {
        // Independent route: scan all candidates for a*x = 1.
        for p in [2u32, 3, 5, 7, 13] {
            let fp = f(p);
            for a in 1..p {
                let found = (1..p)
                    .find(|&x| fp.mul_raw(a, x) == 1)
                    .expect("every nonzero element has an inverse");
                assert_eq!(fp.element(u64::from(a)).inv().unwrap().value(), found);
            }
        }
    }

    #[test]
    fn mixed_field_operations_are_rejected() {
        let a = f(5).element(1);
        let b = f(7).element(1);
        assert_eq!(a.add(b), Err(GfError::FieldMismatch(5, 7)));
        assert_eq!(a.mul(b), Err(GfError::FieldMismatch(5, 7)));
    }

    #[test]
    fn binom_examples() {
        // C(4,2) = 6 is even.
        assert_eq!(binom_mod_p(4, 2, f(2)).value(), 0);
        for p in [2u32, 3, 5] {
            for n in 0..20 {
                assert_eq!(binom_mod_p(n, 0, f(p)).value(), 1);
                assert_eq!(binom_mod_p(n, n + 1, f(p)).value(), 0);
            }
        }
    }

    #[test]
    fn binom_matches_exact_binomial() {
        for p in [2u32, 3, 5, 7] {
            let fp = f(p);
            for n in 0..=64u64 {
                for k in 0..=n {
                    let exact = binomial_exact(n, k) % BigUint::from(p);
                    let digits = exact.to_u32_digits();
                    let expected = if digits.is_empty() { 0 } else { digits[0] };
                    assert_eq!(
                        binom_mod_p(n, k, fp).value(),
                        expected,
                        "C({n},{k}) mod {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn binomial_exact_satisfies_pascal_recurrence() {
        for n in 1..=40u64 {
            for k in 1..=n {
                assert_eq!(
                    binomial_exact(n, k),
                    binomial_exact(n - 1, k - 1) + binomial_exact(n - 1, k)
                );
            }
        }
    }

    #[test]
    fn pascal_identity_mod_p() {
        for p in [2u32, 3, 5] {
            let fp = f(p);
            for n in 1..=50u64 {
                for k in 1..=n {
                    let lhs = binom_mod_p(n, k, fp);
                    let rhs = binom_mod_p(n - 1, k - 1, fp)
                        .add(binom_mod_p(n - 1, k, fp))
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn prime_power_rows_vanish_in_the_interior() {
        // C(p^m, i) = 0 mod p for 0 < i < p^m.
        for p in [2u32, 3, 5] {
            let fp = f(p);
            for m in 1..=3u32 {
                let q = u64::from(p).pow(m);
                for i in 1..q {
                    assert_eq!(binom_mod_p(q, i, fp).value(), 0, "C({q},{i}) mod {p}");
                }
                assert_eq!(binom_mod_p(q, 0, fp).value(), 1);
                assert_eq!(binom_mod_p(q, q, fp).value(), 1);
            }
        }
    }

    #[test]
    fn row_below_prime_power_alternates_sign() {
        // C(p^m - 1, i) = (-1)^i mod p.
        for p in [2u32, 3, 5] {
            let fp = f(p);
            for m in 1..=3u32 {
                let q = u64::from(p).pow(m);
                for i in 0..q {
                    let expected = if i % 2 == 0 {
                        fp.one()
                    } else {
                        fp.one().neg()
                    };
                    assert_eq!(binom_mod_p(q - 1, i, fp), expected);
                }
            }
        }
    }

    #[test]
    fn binomials_split_at_prime_power_blocks() {
        // C(i*p^m + j, k*p^m + l) = C(i,k) * C(j,l) mod p for j, l < p^m.
        for p in [2u32, 3] {
            let fp = f(p);
            for m in 1..=2u32 {
                let q = u64::from(p).pow(m);
                for i in 0..u64::from(p) {
                    for k in 0..u64::from(p) {
                        for j in 0..q {
                            for l in 0..q {
                                let lhs = binom_mod_p(i * q + j, k * q + l, fp);
                                let rhs =
                                    binom_mod_p(i, k, fp).mul(binom_mod_p(j, l, fp)).unwrap();
                                assert_eq!(lhs, rhs);
                            }
                        }
                    }
                }
            }
        }
    }
}
