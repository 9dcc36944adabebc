use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dyadic::{Dyadic, Rounding};
use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` with dyadic endpoints.
///
/// Every operation rounds `lo` down and `hi` up to `prec` significant bits,
/// so the exact result of the corresponding real operation is always
/// contained in the output. Binary operations work at the larger of the two
/// precisions.
#[derive(Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl DyadicInterval {
    /// Interval from endpoints, rounded outward. Panics if `lo > hi`.
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: {lo:?} > {hi:?}");
        Self {
            lo: lo.round(prec, Rounding::Floor),
            hi: hi.round(prec, Rounding::Ceil),
            prec,
        }
    }

    pub fn point(x: Dyadic, prec: u32) -> Self {
        Self::new(x.clone(), x, prec)
    }

    pub fn from_int(v: impl Into<BigInt>, prec: u32) -> Self {
        Self::point(Dyadic::from_int(v), prec)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        Self {
            lo: Dyadic::from_rational(r, prec, Rounding::Floor),
            hi: Dyadic::from_rational(r, prec, Rounding::Ceil),
            prec,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Same enclosure, computing at a new precision from here on.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self::new(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    /// `floor(log2(width))`, or `None` for a point interval.
    pub fn width_log2(&self) -> Option<i64> {
        self.width().log2_floor()
    }

    pub fn midpoint(&self) -> Dyadic {
        let sum = &self.lo + &self.hi;
        Dyadic::new(sum.mantissa().clone(), sum.exponent() - 1)
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, x: &BigRational) -> bool {
        &self.lo.to_rational() <= x && x <= &self.hi.to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Dyadic::zero())
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// `Some(Less)` when every point of `self` is below every point of
    /// `other`, `Some(Greater)` for the reverse, `Some(Equal)` for equal
    /// points, `None` when the intervals overlap.
    pub fn certain_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn certainly_lt(&self, other: &Self) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_gt(&self, other: &Self) -> bool {
        self.lo > other.hi
    }

    /// Largest absolute value of a point in the interval.
    pub fn magnitude(&self) -> Dyadic {
        self.lo.abs().max(self.hi.abs())
    }

    fn outward(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        Self {
            lo: lo.round(prec, Rounding::Floor),
            hi: hi.round(prec, Rounding::Ceil),
            prec,
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        let one = Dyadic::one();
        Ok(Self {
            lo: one.div(&self.hi, self.prec, Rounding::Floor),
            hi: one.div(&self.lo, self.prec, Rounding::Ceil),
            prec: self.prec,
        })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        let prec = self.prec.max(rhs.prec);
        let quotients = |mode| {
            [
                self.lo.div(&rhs.lo, prec, mode),
                self.lo.div(&rhs.hi, prec, mode),
                self.hi.div(&rhs.lo, prec, mode),
                self.hi.div(&rhs.hi, prec, mode),
            ]
        };
        let lo = quotients(Rounding::Floor).into_iter().min().expect("four");
        let hi = quotients(Rounding::Ceil).into_iter().max().expect("four");
        Ok(Self { lo, hi, prec })
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.lo.is_negative() {
            return Err(Error::NegativeSqrt);
        }
        Ok(Self {
            lo: self.lo.sqrt(self.prec, Rounding::Floor),
            hi: self.hi.sqrt(self.prec, Rounding::Ceil),
            prec: self.prec,
        })
    }

    pub fn square(&self) -> Self {
        let (a, b) = (&self.lo * &self.lo, &self.hi * &self.hi);
        let (lo, hi) = if self.contains_zero() {
            (Dyadic::zero(), a.max(b))
        } else {
            (a.clone().min(b.clone()), a.max(b))
        };
        Self::outward(lo, hi, self.prec)
    }

    /// `self^n`; negative exponents fail if the interval contains zero.
    pub fn powi(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        if !self.lo.is_negative() {
            // Monotone on the nonnegative axis: power each endpoint with
            // one-sided rounding.
            return Ok(Self {
                lo: pow_rounded(&self.lo, n as u64, self.prec, Rounding::Floor),
                hi: pow_rounded(&self.hi, n as u64, self.prec, Rounding::Ceil),
                prec: self.prec,
            });
        }
        let mut result = Self::from_int(1, self.prec);
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        Ok(result)
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self
        } else {
            Self {
                lo: Dyadic::zero(),
                hi: self.magnitude(),
                prec: self.prec,
            }
        }
    }

    /// Endpoints as decimals with `digits` fractional digits, `lo` rounded
    /// down and `hi` rounded up so the printed interval still encloses.
    pub fn to_decimal_pair(&self, digits: usize) -> (String, String) {
        (
            self.lo.to_decimal(digits, Rounding::Floor),
            self.hi.to_decimal(digits, Rounding::Ceil),
        )
    }
}

fn pow_rounded(x: &Dyadic, mut e: u64, prec: u32, mode: Rounding) -> Dyadic {
    let mut result = Dyadic::one();
    let mut base = x.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = (&result * &base).round(prec, mode);
        }
        e >>= 1;
        if e > 0 {
            base = (&base * &base).round(prec, mode);
        }
    }
    result
}

impl Add for &DyadicInterval {
    type Output = DyadicInterval;

    fn add(self, rhs: &DyadicInterval) -> DyadicInterval {
        DyadicInterval::outward(
            &self.lo + &rhs.lo,
            &self.hi + &rhs.hi,
            self.prec.max(rhs.prec),
        )
    }
}

impl Sub for &DyadicInterval {
    type Output = DyadicInterval;

    fn sub(self, rhs: &DyadicInterval) -> DyadicInterval {
        DyadicInterval::outward(
            &self.lo - &rhs.hi,
            &self.hi - &rhs.lo,
            self.prec.max(rhs.prec),
        )
    }
}

impl Mul for &DyadicInterval {
    type Output = DyadicInterval;

    fn mul(self, rhs: &DyadicInterval) -> DyadicInterval {
        let prec = self.prec.max(rhs.prec);
        if !self.lo.is_negative() && !rhs.lo.is_negative() {
            return DyadicInterval::outward(&self.lo * &rhs.lo, &self.hi * &rhs.hi, prec);
        }
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().expect("four").clone();
        let hi = products.iter().max().expect("four").clone();
        DyadicInterval::outward(lo, hi, prec)
    }
}

impl Neg for &DyadicInterval {
    type Output = DyadicInterval;

    fn neg(self) -> DyadicInterval {
        DyadicInterval {
            lo: -&self.hi,
            hi: -&self.lo,
            prec: self.prec,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for DyadicInterval {
            type Output = DyadicInterval;
            fn $m(self, rhs: DyadicInterval) -> DyadicInterval {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for DyadicInterval {
    type Output = DyadicInterval;

    fn neg(self) -> DyadicInterval {
        (&self).neg()
    }
}

impl fmt::Debug for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]@{}", self.lo, self.hi, self.prec)
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(12);
        let (lo, hi) = self.to_decimal_pair(digits);
        write!(f, "[{lo}, {hi}]")
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn iv(a: (i64, i64), b: (i64, i64), prec: u32) -> DyadicInterval {
        let lo = DyadicInterval::from_rational(&rat(a.0, a.1), prec);
        let hi = DyadicInterval::from_rational(&rat(b.0, b.1), prec);
        DyadicInterval::new(lo.lo, hi.hi, prec)
    }

    #[test]
    fn sqrt_two_encloses() {
        let s = DyadicInterval::from_int(2, 128).sqrt().unwrap();
        let sq = s.square();
        assert!(sq.contains(&Dyadic::from_int(2)));
        assert!(s.width_log2().unwrap() <= -126);
    }

    #[test]
    fn division_by_zero_interval() {
        let x = iv((-1, 1), (1, 1), 32);
        assert_eq!(
            DyadicInterval::from_int(1, 32).div(&x),
            Err(Error::DivisionByZero)
        );
        assert_eq!(x.recip(), Err(Error::DivisionByZero));
        assert_eq!(x.powi(-2), Err(Error::DivisionByZero));
        assert_eq!(x.sqrt(), Err(Error::NegativeSqrt));
    }

    #[test]
    fn certain_comparisons() {
        let a = iv((1, 3), (1, 2), 64);
        let b = iv((2, 3), (1, 1), 64);
        assert_eq!(a.certain_cmp(&b), Some(Ordering::Less));
        assert_eq!(b.certain_cmp(&a), Some(Ordering::Greater));
        let c = iv((1, 4), (3, 4), 64);
        assert_eq!(a.certain_cmp(&c), None);
        let one = DyadicInterval::from_int(1, 8);
        assert_eq!(one.certain_cmp(&one), Some(Ordering::Equal));
    }

    #[test]
    fn straddling_power() {
        let x = iv((-1, 2), (1, 1), 64);
        let p = x.powi(3).unwrap();
        assert!(p.contains_rational(&rat(-1, 8)));
        assert!(p.contains_rational(&rat(1, 1)));
        assert!(x.square().lo().is_zero());
    }

    #[test]
    fn decimal_pair_encloses() {
        let third = DyadicInterval::from_rational(&rat(1, 3), 64);
        let (lo, hi) = third.to_decimal_pair(5);
        assert_eq!((lo.as_str(), hi.as_str()), ("0.33333", "0.33334"));
        assert_eq!(format!("{:.2}", -third), "[-0.34, -0.33]");
    }

    fn arb_interval() -> impl Strategy<Value = (DyadicInterval, BigRational)> {
        (-1000i64..1000, 1i64..50, 0i64..1000, 1i64..50, 0u64..=1000).prop_map(
            |(a, da, w, dw, t)| {
                let lo = rat(a, da);
                let hi = &lo + rat(w, dw);
                // A rational point inside [lo, hi].
                let x = &lo + (&hi - &lo) * rat(t as i64, 1000);
                let l = DyadicInterval::from_rational(&lo, 40);
                let h = DyadicInterval::from_rational(&hi, 40);
                (DyadicInterval::new(l.lo, h.hi, 40), x)
            },
        )
    }

    proptest! {
        #[test]
        fn operations_contain_exact_results(
            (a, x) in arb_interval(),
            (b, y) in arb_interval(),
            n in -4i64..6,
        ) {
            prop_assert!((&a + &b).contains_rational(&(&x + &y)));
            prop_assert!((&a - &b).contains_rational(&(&x - &y)));
            prop_assert!((&a * &b).contains_rational(&(&x * &y)));
            prop_assert!(a.square().contains_rational(&(&x * &x)));
            if let Ok(q) = a.div(&b) {
                prop_assert!(q.contains_rational(&(&x / &y)));
            }
            if let Ok(p) = a.powi(n) {
                prop_assert!(p.contains_rational(&num_traits::Pow::pow(&x, n as i32)));
            }
            let mid = a.midpoint().to_rational();
            prop_assert!(a.contains_rational(&mid));
            prop_assert!(a.abs().contains_rational(&num_traits::Signed::abs(&x)));
        }

        #[test]
        fn sqrt_contains(num in 0i64..100_000, den in 1i64..1000) {
            let r = rat(num, den);
            let s = DyadicInterval::from_rational(&r, 60).sqrt().unwrap();
            let lo = s.lo().to_rational();
            let hi = s.hi().to_rational();
            prop_assert!(&lo * &lo <= r && r <= &hi * &hi);
        }
    }
}
