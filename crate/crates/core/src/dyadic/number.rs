use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::BinaryWord;
use crate::error::Error;

/// An exact dyadic rational `numerator / 2^exponent`.
///
/// Always stored in lowest terms: either the exponent is zero or the
/// numerator is odd. Two dyadics are equal iff their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Self {
        let mut num = num.into();
        let mut exp = exp;
        if num.is_zero() {
            return Dyadic::zero();
        }
        if exp > 0 {
            let tz = num.trailing_zeros().unwrap_or(0).min(u64::from(exp)) as u32;
            num >>= tz;
            exp -= tz;
        }
        Dyadic { num, exp }
    }

    pub fn zero() -> Self {
        Dyadic {
            num: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            num: BigInt::one(),
            exp: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(n, 0)
    }

    /// `2^e` for any integer `e`.
    pub fn pow2(e: i64) -> Self {
        if e >= 0 {
            Dyadic {
                num: BigInt::one() << (e as u64),
                exp: 0,
            }
        } else {
            Dyadic {
                num: BigInt::one(),
                exp: (-e) as u32,
            }
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    /// Multiplies by `2^e`; always exact.
    pub fn mul_pow2(&self, e: i64) -> Self {
        if e >= 0 {
            let e = e as u64;
            let shift_exp = e.min(u64::from(self.exp));
            let rest = e - shift_exp;
            Dyadic {
                num: &self.num << rest,
                exp: self.exp - shift_exp as u32,
            }
            .canonical()
        } else {
            Dyadic::new(self.num.clone(), self.exp + (-e) as u32)
        }
    }

    fn canonical(self) -> Self {
        Dyadic::new(self.num, self.exp)
    }

    pub fn half(&self) -> Self {
        self.mul_pow2(-1)
    }

    /// Largest integer not exceeding `self`.
    pub fn floor(&self) -> BigInt {
        self.num.div_floor(&(BigInt::one() << self.exp))
    }

    /// The representative of `self` modulo 1 in `[0, 1)`.
    pub fn frac(&self) -> Self {
        let fl = self.floor();
        self - &Dyadic::new(fl, 0)
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            num: self.num.abs(),
            exp: self.exp,
        }
    }

    /// Exact division by an integer, if the quotient is dyadic.
    pub fn div_int(&self, d: &BigInt) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let tz = d.trailing_zeros().unwrap_or(0) as u32;
        let odd = d >> tz;
        let (q, r) = self.num.div_rem(&odd);
        if !r.is_zero() {
            return None;
        }
        Some(Dyadic::new(q, self.exp + tz))
    }

    /// Base-2 exponent if `self` is a positive power of two.
    pub fn log2_exact(&self) -> Option<i64> {
        if self.num.is_one() {
            Some(-(i64::from(self.exp)))
        } else if self.exp == 0 && self.num.is_positive() {
            let tz = self.num.trailing_zeros()?;
            if (&self.num >> tz).is_one() {
                Some(tz as i64)
            } else {
                None
            }
        } else {
            None
        }
    }

    /// Binary digits of `self - 0⁺`, i.e. the expansion ending in `0111…`,
    /// truncated or padded with 1s to `depth` digits. Valid for `0 < self ≤ 1`.
    pub fn left_expansion(&self, depth: usize) -> BinaryWord {
        debug_assert!(self.num.is_positive() && *self <= Dyadic::one());
        let q = self.exp as usize;
        let below = &self.num - BigInt::one();
        let mut bits = Vec::with_capacity(depth);
        for i in 0..depth {
            if i < q {
                bits.push(below.bit((q - 1 - i) as u64));
            } else {
                bits.push(true);
            }
        }
        BinaryWord::from_bits(bits)
    }

    /// Binary digits of `self + 0⁺`, padded with 0s to `depth` digits. Valid
    /// for `0 ≤ self < 1`.
    pub fn right_expansion(&self, depth: usize) -> BinaryWord {
        debug_assert!(!self.num.is_negative() && *self < Dyadic::one());
        let q = self.exp as usize;
        let mut bits = Vec::with_capacity(depth);
        for i in 0..depth {
            if i < q {
                bits.push(self.num.bit((q - 1 - i) as u64));
            } else {
                bits.push(false);
            }
        }
        BinaryWord::from_bits(bits)
    }

    pub fn to_f64(&self) -> f64 {
        self.num.to_f64().unwrap_or(f64::NAN) / 2f64.powi(self.exp as i32)
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u32) {
        let e = self.exp.max(other.exp);
        (
            &self.num << (e - self.exp),
            &other.num << (e - other.exp),
            e,
        )
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.exp == other.exp {
            return self.num.cmp(&other.num);
        }
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a - b, e)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -&self.num,
            exp: self.exp,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.exp)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `p/2^q` with an optional leading minus sign on `p`.
impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let err = |col: usize, msg: &str| Error::parse(1, col, format!("{msg} in dyadic {s:?}"));
        let slash = s.find('/').ok_or_else(|| err(1, "missing '/2^'"))?;
        let (p, rest) = s.split_at(slash);
        let q = rest
            .strip_prefix("/2^")
            .ok_or_else(|| err(slash + 1, "expected '/2^'"))?;
        let digits_ok = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        let p_digits = p.strip_prefix('-').unwrap_or(p);
        if !digits_ok(p_digits) {
            return Err(err(1, "bad numerator"));
        }
        if !digits_ok(q) {
            return Err(err(slash + 4, "bad exponent"));
        }
        let num = BigInt::parse_bytes(p.as_bytes(), 10).ok_or_else(|| err(1, "bad numerator"))?;
        let exp: u32 = q
            .parse()
            .map_err(|_| err(slash + 4, "exponent too large"))?;
        Ok(Dyadic::new(num, exp))
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        crate::dyadic::parse_canonical(&s).map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n)
    }
}

/// Sign helper for callers that want `-1, 0, 1`.
pub fn signum(x: &Dyadic) -> i32 {
    match x.num.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
