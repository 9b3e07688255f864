//! Exact scalar arithmetic.
//!
//! Two layers. [`BaseScalar`] is an element of an exact base field: an
//! arbitrary-precision rational, or a residue modulo a prime. [`DeltaScalar`]
//! adjoins a formal square root δ of the algebra dimension n, so every value
//! has the form a + bδ with δ² = n. δ is never evaluated numerically; final
//! invariants are δ-free and are extracted with [`project_to_base`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The base field: rationals, or integers modulo a prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum BaseRing {
    /// Arbitrary-precision rationals.
    Q,
    /// The prime field with `p` elements.
    Fp(u64),
}

impl BaseRing {
    /// Parses `"Q"` or `"F<p>"` (for example `"F5"`). The prime is checked.
    pub fn parse(s: &str) -> Result<BaseRing> {
        if s == "Q" {
            return Ok(BaseRing::Q);
        }
        if let Some(rest) = s.strip_prefix('F') {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad base ring {s:?}: expected Q or F<p>")))?;
            if !is_prime_u64(p) {
                return Err(Error::Invalid(format!("base ring modulus {p} is not prime")));
            }
            return Ok(BaseRing::Fp(p));
        }
        Err(Error::Parse(format!("bad base ring {s:?}: expected Q or F<p>")))
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Q => write!(f, "Q"),
            BaseRing::Fp(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact element of the base field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum BaseScalar {
    Q(BigRational),
    Fp { value: u64, p: u64 },
}

impl BaseScalar {
    pub fn ring(&self) -> BaseRing {
        match self {
            BaseScalar::Q(_) => BaseRing::Q,
            BaseScalar::Fp { p, .. } => BaseRing::Fp(*p),
        }
    }

    pub fn zero(ring: BaseRing) -> BaseScalar {
        BaseScalar::from_i64(0, ring)
    }

    pub fn one(ring: BaseRing) -> BaseScalar {
        BaseScalar::from_i64(1, ring)
    }

    pub fn from_i64(v: i64, ring: BaseRing) -> BaseScalar {
        match ring {
            BaseRing::Q => BaseScalar::Q(BigRational::from_integer(BigInt::from(v))),
            BaseRing::Fp(p) => {
                let r = v.rem_euclid(p as i64) as u64;
                BaseScalar::Fp { value: r % p, p }
            }
        }
    }

    pub fn from_u64(v: u64, ring: BaseRing) -> BaseScalar {
        match ring {
            BaseRing::Q => BaseScalar::Q(BigRational::from_integer(BigInt::from(v))),
            BaseRing::Fp(p) => BaseScalar::Fp { value: v % p, p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            BaseScalar::Q(r) => r.is_zero(),
            BaseScalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            BaseScalar::Q(r) => r.is_one(),
            BaseScalar::Fp { value, .. } => *value == 1,
        }
    }

    fn require_same_ring(&self, other: &BaseScalar) {
        assert_eq!(
            self.ring(),
            other.ring(),
            "scalar arithmetic across different base rings"
        );
    }

    pub fn add(&self, other: &BaseScalar) -> BaseScalar {
        self.require_same_ring(other);
        match (self, other) {
            (BaseScalar::Q(a), BaseScalar::Q(b)) => BaseScalar::Q(a + b),
            (BaseScalar::Fp { value: a, p }, BaseScalar::Fp { value: b, .. }) => BaseScalar::Fp {
                value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &BaseScalar) -> BaseScalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BaseScalar {
        match self {
            BaseScalar::Q(a) => BaseScalar::Q(-a),
            BaseScalar::Fp { value, p } => BaseScalar::Fp {
                value: if *value == 0 { 0 } else { p - value },
                p: *p,
            },
        }
    }

    pub fn mul(&self, other: &BaseScalar) -> BaseScalar {
        self.require_same_ring(other);
        match (self, other) {
            (BaseScalar::Q(a), BaseScalar::Q(b)) => BaseScalar::Q(a * b),
            (BaseScalar::Fp { value: a, p }, BaseScalar::Fp { value: b, .. }) => BaseScalar::Fp {
                value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!(),
        }
    }

    /// Multiplicative inverse. Fails on zero.
    pub fn inverse(&self) -> Result<BaseScalar> {
        if self.is_zero() {
            return Err(Error::Math("division by zero".into()));
        }
        match self {
            BaseScalar::Q(a) => Ok(BaseScalar::Q(a.recip())),
            BaseScalar::Fp { value, p } => {
                let inv = mod_inverse(*value, *p).ok_or_else(|| {
                    Error::Math(format!("{value} has no inverse modulo {p}"))
                })?;
                Ok(BaseScalar::Fp { value: inv, p: *p })
            }
        }
    }

    pub fn div(&self, other: &BaseScalar) -> Result<BaseScalar> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Integer power, with negative exponents requiring invertibility.
    pub fn pow(&self, k: i64) -> Result<BaseScalar> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = BaseScalar::one(self.ring());
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq.clone());
            e >>= 1;
        }
        Ok(acc)
    }

    /// Renders the scalar as an exact string: `"p/q"` or `"p"` for
    /// rationals, a canonical residue for prime fields.
    pub fn to_exact_string(&self) -> String {
        match self {
            BaseScalar::Q(r) => r.to_string(),
            BaseScalar::Fp { value, .. } => value.to_string(),
        }
    }

    /// Parses an exact scalar string (`"p"`, `"p/q"`, signs allowed) in the
    /// given ring. In a prime field, `"p/q"` means p·q⁻¹ mod p.
    pub fn parse_in_ring(s: &str, ring: BaseRing) -> Result<BaseScalar> {
        let s = s.trim();
        match ring {
            BaseRing::Q => {
                let r = BigRational::from_str(s)
                    .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))?;
                Ok(BaseScalar::Q(r))
            }
            BaseRing::Fp(p) => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let num = BigInt::from_str(num.trim())
                    .map_err(|e| Error::Parse(format!("bad numerator {num:?}: {e}")))?;
                let den = BigInt::from_str(den.trim())
                    .map_err(|e| Error::Parse(format!("bad denominator {den:?}: {e}")))?;
                let num = bigint_mod_u64(&num, p);
                let den = bigint_mod_u64(&den, p);
                let den_inv = mod_inverse(den, p).ok_or_else(|| {
                    Error::Math(format!("denominator {den} is not invertible modulo {p}"))
                })?;
                Ok(BaseScalar::Fp {
                    value: ((num as u128 * den_inv as u128) % p as u128) as u64,
                    p,
                })
            }
        }
    }
}

impl fmt::Display for BaseScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_exact_string())
    }
}

fn bigint_mod_u64(v: &BigInt, p: u64) -> u64 {
    let p_big = BigInt::from(p);
    let mut r = v % &p_big;
    if r.is_negative() {
        r += &p_big;
    }
    let (_, digits) = r.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0],
        _ => unreachable!("residue below u64 modulus"),
    }
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    // Extended Euclid over signed 128-bit integers.
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller-Rabin primality test for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An element a + bδ of the quadratic extension by the formal square root δ
/// of the integer `modulus_square` (the dimension of the ambient algebra).
///
/// Two values are comparable and combinable only when their base rings and
/// `modulus_square` agree; mixing them is a programming error and panics.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DeltaScalar {
    base: BaseScalar,
    delta_part: BaseScalar,
    modulus_square: u64,
}

impl DeltaScalar {
    pub fn new(base: BaseScalar, delta_part: BaseScalar, modulus_square: u64) -> DeltaScalar {
        assert_eq!(
            base.ring(),
            delta_part.ring(),
            "δ-scalar parts must share a base ring"
        );
        DeltaScalar {
            base,
            delta_part,
            modulus_square,
        }
    }

    pub fn from_base(base: BaseScalar, modulus_square: u64) -> DeltaScalar {
        let zero = BaseScalar::zero(base.ring());
        DeltaScalar::new(base, zero, modulus_square)
    }

    pub fn zero(ring: BaseRing, modulus_square: u64) -> DeltaScalar {
        DeltaScalar::from_base(BaseScalar::zero(ring), modulus_square)
    }

    pub fn one(ring: BaseRing, modulus_square: u64) -> DeltaScalar {
        DeltaScalar::from_base(BaseScalar::one(ring), modulus_square)
    }

    pub fn from_i64(v: i64, ring: BaseRing, modulus_square: u64) -> DeltaScalar {
        DeltaScalar::from_base(BaseScalar::from_i64(v, ring), modulus_square)
    }

    /// The pure-δ generator 0 + 1δ.
    pub fn delta(ring: BaseRing, modulus_square: u64) -> DeltaScalar {
        DeltaScalar::new(
            BaseScalar::zero(ring),
            BaseScalar::one(ring),
            modulus_square,
        )
    }

    pub fn base_part(&self) -> &BaseScalar {
        &self.base
    }

    pub fn delta_part(&self) -> &BaseScalar {
        &self.delta_part
    }

    pub fn modulus_square(&self) -> u64 {
        self.modulus_square
    }

    pub fn ring(&self) -> BaseRing {
        self.base.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.delta_part.is_zero()
    }

    fn require_compatible(&self, other: &DeltaScalar) {
        assert_eq!(
            self.modulus_square, other.modulus_square,
            "δ-scalars with different δ² are not comparable"
        );
        assert_eq!(
            self.ring(),
            other.ring(),
            "δ-scalars over different base rings are not comparable"
        );
    }

    pub fn add(&self, other: &DeltaScalar) -> DeltaScalar {
        self.require_compatible(other);
        DeltaScalar::new(
            self.base.add(&other.base),
            self.delta_part.add(&other.delta_part),
            self.modulus_square,
        )
    }

    pub fn sub(&self, other: &DeltaScalar) -> DeltaScalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DeltaScalar {
        DeltaScalar::new(self.base.neg(), self.delta_part.neg(), self.modulus_square)
    }

    /// (a + bδ)(c + dδ) = (ac + n·bd) + (ad + bc)δ with n = δ².
    pub fn mul(&self, other: &DeltaScalar) -> DeltaScalar {
        self.require_compatible(other);
        let n = BaseScalar::from_u64(self.modulus_square, self.ring());
        let ac = self.base.mul(&other.base);
        let bd = self.delta_part.mul(&other.delta_part);
        let ad = self.base.mul(&other.delta_part);
        let bc = self.delta_part.mul(&other.base);
        DeltaScalar::new(ac.add(&n.mul(&bd)), ad.add(&bc), self.modulus_square)
    }

    pub fn scale(&self, s: &BaseScalar) -> DeltaScalar {
        DeltaScalar::new(
            self.base.mul(s),
            self.delta_part.mul(s),
            self.modulus_square,
        )
    }

    /// Renders as `a`, `bδ`, or `a + bδ`.
    pub fn to_exact_string(&self) -> String {
        if self.delta_part.is_zero() {
            return self.base.to_exact_string();
        }
        if self.base.is_zero() {
            return format!("{}δ", self.delta_part.to_exact_string());
        }
        format!(
            "{} + {}δ",
            self.base.to_exact_string(),
            self.delta_part.to_exact_string()
        )
    }
}

impl fmt::Display for DeltaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_exact_string())
    }
}

impl Serialize for DeltaScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("DeltaScalar", 3)?;
        st.serialize_field("a", &self.base.to_exact_string())?;
        st.serialize_field("b", &self.delta_part.to_exact_string())?;
        st.serialize_field("n", &self.modulus_square)?;
        st.end()
    }
}

impl DeltaScalar {
    /// Reads a value serialized by [`Serialize`]: `{"a": "...", "b": "...",
    /// "n": int}`, with the base ring supplied by context.
    pub fn from_json(v: &serde_json::Value, ring: BaseRing) -> Result<DeltaScalar> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("δ-scalar must be a JSON object".into()))?;
        let field = |k: &str| -> Result<&serde_json::Value> {
            obj.get(k)
                .ok_or_else(|| Error::Parse(format!("δ-scalar is missing field {k:?}")))
        };
        let a = field("a")?
            .as_str()
            .ok_or_else(|| Error::Parse("δ-scalar field \"a\" must be a string".into()))?;
        let b = field("b")?
            .as_str()
            .ok_or_else(|| Error::Parse("δ-scalar field \"b\" must be a string".into()))?;
        let n = field("n")?
            .as_u64()
            .ok_or_else(|| Error::Parse("δ-scalar field \"n\" must be a nonnegative integer".into()))?;
        Ok(DeltaScalar::new(
            BaseScalar::parse_in_ring(a, ring)?,
            BaseScalar::parse_in_ring(b, ring)?,
            n,
        ))
    }
}

/// δ^k reduced to the form a + bδ. Even k gives a pure base part n^{k/2},
/// odd k a pure δ part n^{(k-1)/2}. Negative powers require n to be
/// invertible in the base ring.
pub fn delta_pow(k: i64, n: u64, ring: BaseRing) -> Result<DeltaScalar> {
    if n == 0 {
        return Err(Error::Math("δ² must be a positive integer".into()));
    }
    let n_ring = BaseScalar::from_u64(n, ring);
    if k < 0 && n_ring.is_zero() {
        return Err(Error::Math(format!(
            "δ^{k} does not exist: δ² = {n} vanishes in {ring}"
        )));
    }
    if k % 2 == 0 {
        Ok(DeltaScalar::from_base(n_ring.pow(k / 2)?, n))
    } else {
        let coeff = n_ring.pow((k - 1) / 2)?;
        Ok(DeltaScalar::new(BaseScalar::zero(ring), coeff, n))
    }
}

/// Extracts the base part of a δ-free value. A nonzero δ component signals
/// an implementation bug in an evaluator and is reported as an error.
pub fn project_to_base(x: &DeltaScalar) -> Result<BaseScalar> {
    if !x.delta_part.is_zero() {
        return Err(Error::Math(format!(
            "unexpected δ component in {x}: final values must be δ-free"
        )));
    }
    Ok(x.base.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: i64) -> BaseScalar {
        BaseScalar::from_i64(v, BaseRing::Q)
    }

    fn qr(num: i64, den: i64) -> BaseScalar {
        BaseScalar::Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    #[test]
    fn delta_pow_even_is_pure_base() {
        let x = delta_pow(2, 4, BaseRing::Q).unwrap();
        assert_eq!(x, DeltaScalar::from_base(q(4), 4));
    }

    #[test]
    fn delta_pow_negative_one() {
        let x = delta_pow(-1, 4, BaseRing::Q).unwrap();
        assert_eq!(x, DeltaScalar::new(q(0), qr(1, 4), 4));
    }

    #[test]
    fn delta_pow_odd() {
        let x = delta_pow(3, 2, BaseRing::Q).unwrap();
        assert_eq!(x, DeltaScalar::new(q(0), q(2), 2));
    }

    #[test]
    fn delta_pow_negative_requires_invertible_dimension() {
        assert!(delta_pow(-2, 4, BaseRing::Fp(2)).is_err());
        assert!(delta_pow(2, 4, BaseRing::Fp(2)).is_ok());
    }

    #[test]
    fn delta_pow_is_multiplicative() {
        for ring in [BaseRing::Q, BaseRing::Fp(13)] {
            for n in 1..=12u64 {
                for j in -6i64..=6 {
                    for k in -6i64..=6 {
                        let lhs = delta_pow(j + k, n, ring).unwrap();
                        let rhs = delta_pow(j, n, ring)
                            .unwrap()
                            .mul(&delta_pow(k, n, ring).unwrap());
                        assert_eq!(lhs, rhs, "δ^{j}·δ^{k} over {ring}, n = {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn projection_accepts_delta_free_values() {
        assert_eq!(project_to_base(&DeltaScalar::from_base(q(7), 3)).unwrap(), q(7));
        assert_eq!(project_to_base(&DeltaScalar::zero(BaseRing::Q, 3)).unwrap(), q(0));
    }

    #[test]
    fn projection_rejects_delta_components() {
        let x = DeltaScalar::new(q(3), q(2), 5);
        assert!(project_to_base(&x).is_err());
    }

    #[test]
    fn fp_inverse_round_trips() {
        for p in [2u64, 3, 5, 7, 11, 101] {
            for v in 1..p.min(40) {
                let x = BaseScalar::Fp { value: v, p };
                assert!(x.mul(&x.inverse().unwrap()).is_one());
            }
        }
        assert!(BaseScalar::Fp { value: 0, p: 5 }.inverse().is_err());
    }

    #[test]
    fn rational_strings_round_trip() {
        for s in ["3/4", "-7/2", "0", "12", "-1"] {
            let x = BaseScalar::parse_in_ring(s, BaseRing::Q).unwrap();
            assert_eq!(x.to_exact_string(), s);
        }
        let half_mod_5 = BaseScalar::parse_in_ring("1/2", BaseRing::Fp(5)).unwrap();
        assert_eq!(half_mod_5, BaseScalar::Fp { value: 3, p: 5 });
    }

    #[test]
    fn delta_scalar_json_round_trips() {
        let x = DeltaScalar::new(qr(3, 4), q(-2), 6);
        let json = serde_json::to_value(&x).unwrap();
        assert_eq!(json["a"], "3/4");
        assert_eq!(json["b"], "-2");
        assert_eq!(json["n"], 6);
        let back = DeltaScalar::from_json(&json, BaseRing::Q).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn primality_test_agrees_with_trial_division() {
        let slow = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..2000u64 {
            assert_eq!(is_prime_u64(n), slow(n), "n = {n}");
        }
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(18_446_744_073_709_551_555));
    }

    fn arb_base(ring: BaseRing) -> impl Strategy<Value = BaseScalar> {
        (any::<i32>(), 1u32..100).prop_map(move |(num, den)| match ring {
            BaseRing::Q => BaseScalar::Q(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            )),
            BaseRing::Fp(p) => BaseScalar::from_i64(num as i64, BaseRing::Fp(p)),
        })
    }

    fn arb_delta(ring: BaseRing, n: u64) -> impl Strategy<Value = DeltaScalar> {
        (arb_base(ring), arb_base(ring))
            .prop_map(move |(a, b)| DeltaScalar::new(a, b, n))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_axioms_over_q(
            (x, y, z) in (1u64..=12).prop_flat_map(|n| {
                let d = || arb_delta(BaseRing::Q, n);
                (d(), d(), d())
            })
        ) {
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            prop_assert_eq!(y.add(&z).mul(&x), y.mul(&x).add(&z.mul(&x)));
            prop_assert_eq!(x.add(&y), y.add(&x));
        }

        #[test]
        fn ring_axioms_over_f7(
            (x, y, z) in (1u64..=12).prop_flat_map(|n| {
                let d = || arb_delta(BaseRing::Fp(7), n);
                (d(), d(), d())
            })
        ) {
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        }
    }
}
