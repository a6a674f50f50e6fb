//! Coefficient fields: the rationals and prime fields.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// An exact field of coefficients.
///
/// Arithmetic is by value through the std operator traits; the `*_ref` hooks
/// let big-number fields avoid needless clones in the hot loops.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn from_i64(n: i64) -> Self;

    /// The class of `num/den`, or `None` when `den` vanishes in the field.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self>;

    /// 0 for the rationals, p for the prime field of order p.
    fn characteristic() -> u64;

    fn field_name() -> String;

    /// A signed rational representative used by the printer. Prime field
    /// elements print with the symmetric representative in (-p/2, p/2].
    fn to_rational(&self) -> BigRational;

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
}

impl Field for BigRational {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }

    fn characteristic() -> u64 {
        0
    }

    fn field_name() -> String {
        "Q".to_string()
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
}

/// Residues modulo the prime `P`. `P` must be prime and below 2^32 so that
/// products fit in a `u64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const CHECK: () = assert!(P > 1 && P < (1 << 32), "modulus out of range");

    pub fn new(value: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::CHECK;
        Fp(value.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Fp(acc)
    }

    fn from_bigint(n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().expect("residue fits"))
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.0, P)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(self.0 * o.0 % P)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        let d = Self::from_bigint(den);
        if d.is_zero() {
            None
        } else {
            Some(Self::from_bigint(num) / d)
        }
    }

    fn characteristic() -> u64 {
        P
    }

    fn field_name() -> String {
        format!("Fp:{}", P)
    }

    fn to_rational(&self) -> BigRational {
        let v = if self.0 > P / 2 { self.0 as i64 - P as i64 } else { self.0 as i64 };
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Trial-division primality test, adequate for word-sized moduli.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Reduce a rational into a prime field, `None` when p divides the denominator.
pub fn reduce_rational<F: Field>(q: &BigRational) -> Option<F> {
    F::from_ratio(q.numer(), q.denom())
}
