use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dyadic::{Dyadic, Rounding};
use super::float::{BigFloat, Scalar};
use super::interval::DyadicInterval;
use super::roots::{
    all_roots, dominant_root, RootEnclosure, RootSet, ESCALATION_FACTOR, GUARD_BITS,
};
use crate::error::{Error, Result};
use crate::exact::term_definition;
use crate::params::{SequenceParams, TermIndex};

/// Output width targeted by [`binet_dominant`] and [`error_term`]: `2^-32`.
pub const OUTPUT_WIDTH_BITS: u32 = 32;

/// Exact range of `D(x) = (k+1)x^2 - (q+1)k·x + (q-1)(k-1)` over `[lo, hi]`.
fn denominator_range(params: &SequenceParams, x: &DyadicInterval) -> (BigRational, BigRational) {
    let (q, k) = (BigInt::from(params.q()), BigInt::from(params.k()));
    let a = &k + 1u32;
    let b = -(&q + 1u32) * &k;
    let c = (&q - 1u32) * (&k - 1u32);
    let eval = |t: &BigRational| {
        BigRational::from_integer(a.clone()) * t * t
            + BigRational::from_integer(b.clone()) * t
            + BigRational::from_integer(c.clone())
    };
    let lo = x.lo().to_rational();
    let hi = x.hi().to_rational();
    let (d_lo, d_hi) = (eval(&lo), eval(&hi));
    let vertex = BigRational::new(-b.clone(), &a * 2u32);
    let max = d_lo.clone().max(d_hi.clone());
    let min = if lo <= vertex && vertex <= hi {
        eval(&vertex)
    } else {
        d_lo.min(d_hi)
    };
    (min, max)
}

/// Interval image of the Binet weight
/// `g(x) = (x - 1) / ((k+1)x^2 - (q+1)k·x + (q-1)(k-1))`.
///
/// The denominator's range over `x` is computed exactly; if it reaches zero
/// the call fails with [`Error::PoleInInterval`].
pub fn g_eval(params: &SequenceParams, x: &DyadicInterval) -> Result<DyadicInterval> {
    let (min, max) = denominator_range(params, x);
    if !(min.is_positive_strict() || max.is_negative_strict()) {
        return Err(Error::PoleInInterval {
            lo: x.lo().to_decimal(12, Rounding::Floor),
            hi: x.hi().to_decimal(12, Rounding::Ceil),
        });
    }
    let prec = x.prec();
    let den = DyadicInterval::new(
        Dyadic::from_rational(&min, prec, Rounding::Floor),
        Dyadic::from_rational(&max, prec, Rounding::Ceil),
        prec,
    );
    let num = x - &DyadicInterval::from_int(1, prec);
    num.div(&den)
}

trait StrictSign {
    fn is_positive_strict(&self) -> bool;
    fn is_negative_strict(&self) -> bool;
}

impl StrictSign for BigRational {
    fn is_positive_strict(&self) -> bool {
        self > &BigRational::zero()
    }

    fn is_negative_strict(&self) -> bool {
        self < &BigRational::zero()
    }
}

/// Enclosure of the dominant Binet term `g(γ)·γ^n`.
#[derive(Debug, Clone)]
pub struct DominantTerm {
    pub n: i64,
    pub interval: DyadicInterval,
    /// Root precision that produced the interval.
    pub bits_used: u32,
    /// Set when the escalation cap was reached before the width target.
    pub capped: bool,
}

/// Enclosure of `E(n) = F(n) - g(γ)·γ^n`.
#[derive(Debug, Clone)]
pub struct ErrorEnclosure {
    pub n: TermIndex,
    pub interval: DyadicInterval,
    pub bits_used: u32,
    pub capped: bool,
}

/// Dominant-root state for one parameter pair, refined on demand.
///
/// Reusing one of these across many `n` avoids re-isolating the root.
#[derive(Debug, Clone)]
pub struct DominantTerms {
    params: SequenceParams,
    enclosure: RootEnclosure,
}

impl DominantTerms {
    /// Requires `q >= 3`.
    pub fn new(params: &SequenceParams, bits: u32) -> Result<Self> {
        params.require_certified("dominant Binet term")?;
        Ok(Self {
            params: *params,
            enclosure: dominant_root(params, bits)?,
        })
    }

    pub fn params(&self) -> &SequenceParams {
        &self.params
    }

    /// The root enclosure, refined to width at most `2^-bits` if needed.
    pub fn enclosure(&mut self, bits: u32) -> Result<&RootEnclosure> {
        if self.enclosure.accuracy_bits() < i64::from(bits) {
            self.enclosure = self.enclosure.refine(bits)?;
        }
        Ok(&self.enclosure)
    }

    /// γ as an interval computing at `bits` plus guard bits.
    pub fn gamma(&mut self, bits: u32) -> Result<DyadicInterval> {
        Ok(self
            .enclosure(bits)?
            .interval()
            .with_prec(bits + GUARD_BITS))
    }

    /// `g(γ)`.
    pub fn weight(&mut self, bits: u32) -> Result<DyadicInterval> {
        let gamma = self.gamma(bits)?;
        g_eval(&self.params, &gamma)
    }

    /// `g(γ)·γ^n` at a fixed root precision.
    pub fn term_at(&mut self, n: i64, bits: u32) -> Result<DyadicInterval> {
        let gamma = self.gamma(bits)?;
        let g = g_eval(&self.params, &gamma)?;
        Ok(&g * &gamma.powi(n)?)
    }

    /// `g(γ)·γ^n`, doubling the precision from `bits` until the width is at
    /// most `2^-32` or the precision reaches `16·bits`.
    pub fn term(&mut self, n: i64, bits: u32) -> Result<DominantTerm> {
        self.params
            .check_index("binet_dominant", n, self.params.min_index())?;
        let cap = bits.saturating_mul(ESCALATION_FACTOR);
        let mut w = bits;
        loop {
            let interval = self.term_at(n, w)?;
            let done = interval
                .width_log2()
                .is_none_or(|e| e < -i64::from(OUTPUT_WIDTH_BITS));
            if done || w.saturating_mul(2) > cap {
                return Ok(DominantTerm {
                    n,
                    interval,
                    bits_used: w,
                    capped: !done,
                });
            }
            w *= 2;
        }
    }

    /// `E(n) = F(n) - g(γ)γ^n` given the exact `F(n)`.
    pub fn error(&mut self, n: i64, exact: &BigInt, bits: u32) -> Result<ErrorEnclosure> {
        let term = self.term(n, bits)?;
        let f = DyadicInterval::from_int(exact.clone(), term.interval.prec());
        Ok(ErrorEnclosure {
            n: self.params.index(n)?,
            interval: &f - &term.interval,
            bits_used: term.bits_used,
            capped: term.capped,
        })
    }
}

/// Enclosure of `g(γ)·γ^n` for the dominant root γ. Requires `q >= 3`.
pub fn binet_dominant(params: &SequenceParams, n: i64, bits: u32) -> Result<DominantTerm> {
    params.check_index("binet_dominant", n, params.min_index())?;
    DominantTerms::new(params, bits)?.term(n, bits)
}

/// Enclosure of `E(n) = F(n) - g(γ)·γ^n`. Requires `q >= 3`.
pub fn error_term(params: &SequenceParams, n: i64, bits: u32) -> Result<ErrorEnclosure> {
    let exact: BigInt = term_definition(params, n)?;
    DominantTerms::new(params, bits)?.error(n, &exact, bits)
}

/// Outcome of summing the full Binet formula.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub n: i64,
    /// The real part rounded to the nearest integer.
    pub value: BigInt,
    /// Distance of the real part from `value`.
    pub residual: BigFloat,
    /// Absolute value of the imaginary part.
    pub imag: BigFloat,
    /// Estimated `log2` of the absolute error of the sum.
    pub error_log2: f64,
}

fn complex_powi(z: &Complex<BigFloat>, n: i64) -> Complex<BigFloat> {
    let mut result = Complex::<BigFloat>::one();
    let mut base = z.clone();
    let mut e = n.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            result = result * base.clone();
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
        }
    }
    if n < 0 {
        Complex::<BigFloat>::one() / result
    } else {
        result
    }
}

/// `g(z)` in complex arithmetic.
pub fn g_complex(params: &SequenceParams, z: &Complex<BigFloat>) -> Complex<BigFloat> {
    let (q, k) = (i64::from(params.q()), i64::from(params.k()));
    let c = |v: i64| Complex::new(BigFloat::from_int(v, 0), BigFloat::zero());
    let den = c(k + 1) * z.clone() * z.clone() - c((q + 1) * k) * z.clone() + c((q - 1) * (k - 1));
    (z.clone() - c(1)) / den
}

/// Estimated `log2` of the absolute error in `Σ g(z_i)·z_i^n`, from each
/// root's uncertainty radius and the working precision.
fn error_log2(roots: &RootSet, n: i64) -> f64 {
    let params = roots.params();
    let prec = f64::from(roots.working_prec());
    let dominant_radius = roots
        .dominant()
        .interval()
        .width_log2()
        .map_or(f64::NEG_INFINITY, |e| e as f64);
    let radii = std::iter::once(dominant_radius).chain(roots.secondary().iter().map(|r| {
        r.inclusion_radius
            .log2_floor()
            .map_or(f64::NEG_INFINITY, |e| e as f64 + 1.0)
    }));
    let steps = (n.unsigned_abs() as f64 + 8.0).log2();
    let terms: Vec<f64> = roots
        .all_values()
        .iter()
        .zip(radii)
        .map(|(z, radius)| {
            let modulus = z.norm_sqr().to_f64().sqrt();
            let weight = g_complex(params, z).norm_sqr().to_f64().sqrt();
            let magnitude = weight.log2() + n as f64 * modulus.log2();
            let relative = (radius - modulus.log2()).max(-prec) + 1.0;
            magnitude + steps + relative
        })
        .collect();
    let worst = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    worst + (terms.len() as f64).log2()
}

/// Sum `Σ g(γ_i)·γ_i^n` over all roots in `roots` and round to an integer.
///
/// Fails unless the estimated error of the sum is below 1/4, the real part
/// is within 1/4 of an integer and the imaginary part is below 1/4.
pub fn reconstruct(roots: &RootSet, n: i64) -> Result<Reconstruction> {
    let params = roots.params();
    params.check_index("binet_reconstruct", n, params.min_index())?;
    let sum = roots
        .all_values()
        .iter()
        .map(|z| g_complex(params, z) * complex_powi(z, n))
        .fold(Complex::<BigFloat>::zero(), |acc, t| acc + t);
    let value = sum.re.round_to_integer();
    let residual = (sum.re.clone() - BigFloat::from_int(value.clone(), 0)).abs();
    let imag = sum.im.abs();
    let error_log2 = error_log2(roots, n);
    let quarter = BigFloat::exact(Dyadic::pow2(-2));
    if residual >= quarter || imag >= quarter || error_log2.is_nan() || error_log2 >= -2.0 {
        return Err(Error::ReconstructionResidual {
            n,
            residual: residual.to_f64(),
            imag: imag.to_f64(),
        });
    }
    Ok(Reconstruction {
        n,
        value,
        residual,
        imag,
        error_log2,
    })
}

/// `F(n)` from the full Binet formula at `bits` of root precision.
pub fn binet_reconstruct(params: &SequenceParams, n: i64, bits: u32) -> Result<Reconstruction> {
    params.check_index("binet_reconstruct", n, params.min_index())?;
    reconstruct(&all_roots(params, bits)?, n)
}

/// Interval evaluation of the closed form
/// `U(n) = [((q-3)+s)α^n + ((3-q)+s)β^n] / (2(q-1)s)`, `s = sqrt(q^2-2q+5)`.
/// Requires `q >= 3`, `n >= 1`.
pub fn u_closed_form(q: u32, n: i64, bits: u32) -> Result<DyadicInterval> {
    if q < 3 {
        return Err(Error::Regime {
            op: "u_closed_form",
            q,
        });
    }
    if n < 1 {
        return Err(Error::IndexBelowDomain {
            op: "u_closed_form",
            n,
            min: 1,
        });
    }
    let prec = bits + GUARD_BITS;
    let qi = i64::from(q);
    let int = |v: i64| DyadicInterval::from_int(v, prec);
    let s = int(qi * qi - 2 * qi + 5).sqrt()?;
    let half = DyadicInterval::point(Dyadic::pow2(-1), prec);
    let alpha = &(&int(qi + 1) + &s) * &half;
    let beta = &(&int(qi + 1) - &s) * &half;
    let num =
        &(&(&int(qi - 3) + &s) * &alpha.powi(n)?) + &(&(&int(3 - qi) + &s) * &beta.powi(n)?);
    let den = &int(2 * (qi - 1)) * &s;
    num.div(&den)
}
