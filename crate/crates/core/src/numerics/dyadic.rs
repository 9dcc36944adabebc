use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction for inexact dyadic operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Floor,
    Ceil,
    Nearest,
}

/// An exact dyadic rational `mantissa · 2^exponent`.
///
/// Normalized so the mantissa is odd (or the value is zero with exponent 0),
/// which makes structural equality coincide with numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

fn shr_rounded(m: &BigInt, shift: u64, mode: Rounding) -> BigInt {
    if shift == 0 {
        return m.clone();
    }
    match mode {
        // BigInt shifts round toward negative infinity.
        Rounding::Floor => m >> shift,
        Rounding::Ceil => -((-m) >> shift),
        Rounding::Nearest => (m + (BigInt::one() << (shift - 1))) >> shift,
    }
}

fn div_rounded(num: &BigInt, den: &BigInt, mode: Rounding) -> BigInt {
    match mode {
        Rounding::Floor => num.div_floor(den),
        Rounding::Ceil => -((-num).div_floor(den)),
        Rounding::Nearest => {
            let twice: BigInt = num * 2 + den;
            twice.div_floor(&(den * 2))
        }
    }
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        if mantissa.is_zero() {
            return Self::zero();
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Self { mantissa, exponent }
        } else {
            Self {
                mantissa: mantissa >> tz,
                exponent: exponent + tz as i64,
            }
        }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Self::new(v.into(), 0)
    }

    /// Exact conversion; panics on non-finite input.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "cannot represent {x} as a dyadic");
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Self::new(BigInt::from(sign) * BigInt::from(m), e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn sign(&self) -> Sign {
        self.mantissa.sign()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn abs(&self) -> Self {
        Self {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// Significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mantissa.bits()
    }

    /// `floor(log2 |x|)`, or `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.bits() as i64 - 1 + self.exponent)
        }
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Self {
            mantissa: BigInt::one(),
            exponent: e,
        }
    }

    /// Round to at most `prec` significant bits.
    pub fn round(&self, prec: u32, mode: Rounding) -> Self {
        let bits = self.bits();
        if bits <= u64::from(prec) {
            return self.clone();
        }
        let shift = bits - u64::from(prec);
        Self::new(
            shr_rounded(&self.mantissa, shift, mode),
            self.exponent + shift as i64,
        )
    }

    /// Quotient rounded to `prec` significant bits. Panics on a zero divisor.
    pub fn div(&self, rhs: &Self, prec: u32, mode: Rounding) -> Self {
        assert!(!rhs.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let extra = i64::from(prec) + rhs.bits() as i64 - self.bits() as i64 + 2;
        let shift = extra.max(0);
        let q = div_rounded(&(&self.mantissa << shift as u64), &rhs.mantissa, mode);
        Self::new(q, self.exponent - rhs.exponent - shift).round(prec, mode)
    }

    /// Square root rounded to `prec` significant bits. Panics on negative input.
    pub fn sqrt(&self, prec: u32, mode: Rounding) -> Self {
        assert!(!self.is_negative(), "square root of a negative dyadic");
        if self.is_zero() {
            return Self::zero();
        }
        let mut shift = (2 * i64::from(prec) + 4 - self.bits() as i64).max(0);
        if (self.exponent - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.mantissa << shift as u64;
        let r = m.sqrt();
        let r = match mode {
            Rounding::Ceil if &r * &r != m => r + 1,
            _ => r,
        };
        Self::new(r, (self.exponent - shift) / 2).round(prec, mode)
    }

    /// Nearest rational `num/den` rounded to `prec` significant bits.
    pub fn from_rational(r: &BigRational, prec: u32, mode: Rounding) -> Self {
        Self::from_int(r.numer().clone()).div(&Self::from_int(r.denom().clone()), prec, mode)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa << self.exponent as u64)
        } else {
            BigRational::new(
                self.mantissa.clone(),
                BigInt::one() << (-self.exponent) as u64,
            )
        }
    }

    /// Integer rounded in the given direction.
    pub fn to_integer(&self, mode: Rounding) -> BigInt {
        if self.exponent >= 0 {
            &self.mantissa << self.exponent as u64
        } else {
            shr_rounded(&self.mantissa, (-self.exponent) as u64, mode)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bits();
        let (m, e) = if bits > 64 {
            let s = bits - 64;
            (&self.mantissa >> s, self.exponent + s as i64)
        } else {
            (self.mantissa.clone(), self.exponent)
        };
        let m = m.to_f64().unwrap_or(f64::NAN);
        let e = e.clamp(-2200, 2200) as i32;
        // Split the scaling so intermediate powers stay finite.
        m * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
    }

    /// Decimal string with `digits` fractional digits, rounded in `mode`.
    pub fn to_decimal(&self, digits: usize, mode: Rounding) -> String {
        let scaled = &self.mantissa * BigInt::from(10u32).pow(digits as u32);
        let int = if self.exponent >= 0 {
            scaled << self.exponent as u64
        } else {
            shr_rounded(&scaled, (-self.exponent) as u64, mode)
        };
        let negative = int.is_negative();
        let mut s = int.abs().to_string();
        if s.len() <= digits {
            s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
        }
        let (whole, frac) = s.split_at(s.len() - digits);
        let sign = if negative { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{whole}")
        } else {
            format!("{sign}{whole}.{frac}")
        }
    }

    fn align(&self, rhs: &Self) -> (BigInt, BigInt, i64) {
        let e = self.exponent.min(rhs.exponent);
        (
            &self.mantissa << (self.exponent - e) as u64,
            &rhs.mantissa << (rhs.exponent - e) as u64,
            e,
        )
    }
}

impl Zero for Dyadic {
    fn zero() -> Self {
        Self {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }
}

impl One for Dyadic {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, e) = self.align(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.align(rhs);
        Dyadic::new(a - b, e)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        (&self).neg()
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.sign(), other.sign()) {
            (a, b) if a != b => a.cmp(&b),
            _ => {
                let (a, b, _) = self.align(other);
                a.cmp(&b)
            }
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigInt> for Dyadic {
    fn from(v: BigInt) -> Self {
        Self::from_int(v)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·2^{}", self.mantissa, self.exponent)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn normalizes() {
        assert_eq!(d(12, 0), d(3, 2));
        assert_eq!(d(0, 5), Dyadic::zero());
        assert_eq!(d(-8, -3), Dyadic::from_int(-1));
    }

    #[test]
    fn negative_shift_rounds_down() {
        assert_eq!(BigInt::from(-5) >> 1u32, BigInt::from(-3));
        assert_eq!(
            shr_rounded(&BigInt::from(-5), 1, Rounding::Ceil),
            BigInt::from(-2)
        );
    }

    #[test]
    fn directed_division() {
        let one = Dyadic::one();
        let three = Dyadic::from_int(3);
        let lo = one.div(&three, 20, Rounding::Floor);
        let hi = one.div(&three, 20, Rounding::Ceil);
        let third = BigRational::new(1.into(), 3.into());
        assert!(lo.to_rational() < third && third < hi.to_rational());
        assert!(hi.bits() <= 20);
        let neg = (-&one).div(&three, 20, Rounding::Floor);
        assert_eq!(neg, -&hi);
    }

    #[test]
    fn directed_sqrt() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt(64, Rounding::Floor);
        let hi = two.sqrt(64, Rounding::Ceil);
        assert!(&lo * &lo < two && two < &hi * &hi);
        assert_eq!(
            Dyadic::from_int(9).sqrt(8, Rounding::Ceil),
            Dyadic::from_int(3)
        );
        assert_eq!(d(1, -2).sqrt(8, Rounding::Floor), d(1, -1));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(d(5, -1).to_decimal(3, Rounding::Floor), "2.500");
        assert_eq!(d(-1, -2).to_decimal(1, Rounding::Floor), "-0.3");
        assert_eq!(d(-1, -2).to_decimal(1, Rounding::Ceil), "-0.2");
        assert_eq!(d(1, -3).to_decimal(2, Rounding::Ceil), "0.13");
        assert_eq!(Dyadic::from_int(42).to_decimal(0, Rounding::Floor), "42");
    }

    #[test]
    fn f64_round_trip() {
        for x in [0.1, -3.75, 1e-300, 6.02e23] {
            assert_eq!(Dyadic::from_f64(x).to_f64(), x);
        }
        assert_eq!(Dyadic::from_int(6).log2_floor(), Some(2));
        assert_eq!(d(1, -3).log2_floor(), Some(-3));
    }

    proptest! {
        #[test]
        fn rounding_brackets_value(m in any::<i64>(), e in -80i64..80, prec in 1u32..40) {
            let x = d(m, e);
            let lo = x.round(prec, Rounding::Floor);
            let hi = x.round(prec, Rounding::Ceil);
            prop_assert!(lo <= x && x <= hi);
            prop_assert!(lo.bits() <= u64::from(prec) && hi.bits() <= u64::from(prec));
        }

        #[test]
        fn ordering_matches_rationals(a in any::<i32>(), ea in -20i64..20, b in any::<i32>(), eb in -20i64..20) {
            let (x, y) = (d(a.into(), ea), d(b.into(), eb));
            prop_assert_eq!(x.cmp(&y), x.to_rational().cmp(&y.to_rational()));
            prop_assert_eq!((&x + &y).to_rational(), x.to_rational() + y.to_rational());
            prop_assert_eq!((&x * &y).to_rational(), x.to_rational() * y.to_rational());
        }
    }
}
