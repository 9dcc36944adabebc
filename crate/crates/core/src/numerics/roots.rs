use num_bigint::{BigInt, Sign};
use num_complex::Complex;
use num_traits::{One, Zero};

use super::aberth::{aberth_refine, eval_with_derivative, initial_guesses, log2_modulus};
use super::dyadic::Dyadic;
use super::float::{BigFloat, Scalar};
use super::interval::DyadicInterval;
use super::poly::{CharPoly, IntPoly};
use crate::error::{Error, Result};
use crate::params::{Regime, SequenceParams};

/// Guard bits carried by interval and float computations beyond the target.
/// Extra bits carried by interval computations beyond the requested accuracy.
pub const GUARD_BITS: u32 = 32;

/// Maximum precision reached by escalation, relative to the request.
pub const ESCALATION_FACTOR: u32 = 16;

/// A certified enclosure of the dominant root of Φ.
#[derive(Debug, Clone, PartialEq)]
pub struct RootEnclosure {
    params: SequenceParams,
    interval: DyadicInterval,
    /// Signs of Φ at `lo` and `hi`, evaluated exactly.
    sign_certificate: (Sign, Sign),
}

impl RootEnclosure {
    pub fn params(&self) -> &SequenceParams {
        &self.params
    }

    pub fn interval(&self) -> &DyadicInterval {
        &self.interval
    }

    pub fn sign_certificate(&self) -> (Sign, Sign) {
        self.sign_certificate
    }

    /// `-floor(log2 width)`: the number of certified binary digits.
    pub fn accuracy_bits(&self) -> i64 {
        self.interval.width_log2().map_or(i64::MAX, |e| -e)
    }

    /// Continue bisecting until the width is at most `2^-bits`.
    pub fn refine(&self, bits: u32) -> Result<Self> {
        let phi = CharPoly::new(&self.params);
        bisect(
            &self.params,
            phi.as_ref(),
            self.interval.lo().clone(),
            self.interval.hi().clone(),
            bits,
        )
    }

    /// Re-verify the sign certificate from scratch.
    pub fn verify(&self) -> bool {
        let phi = CharPoly::new(&self.params);
        let lo = phi.as_ref().eval_dyadic(self.interval.lo());
        let hi = phi.as_ref().eval_dyadic(self.interval.hi());
        lo.is_negative() && hi.is_positive()
    }
}

fn bracket(params: &SequenceParams) -> (Dyadic, Dyadic) {
    let q = i64::from(params.q());
    match params.regime() {
        Regime::BoundsCertified => (Dyadic::from_int(q), Dyadic::from_int(q + 1)),
        Regime::ComputeOnly => (Dyadic::one(), Dyadic::from_int(q + 1)),
    }
}

fn bisect(
    params: &SequenceParams,
    phi: &IntPoly,
    mut lo: Dyadic,
    mut hi: Dyadic,
    bits: u32,
) -> Result<RootEnclosure> {
    let failure = || Error::BracketFailure {
        q: params.q(),
        k: params.k(),
    };
    if !phi.eval_dyadic(&lo).is_negative() || !phi.eval_dyadic(&hi).is_positive() {
        return Err(failure());
    }
    let (floor, ceil) = bracket(params);
    let target = -i64::from(bits);
    loop {
        let width = &hi - &lo;
        let narrow =
            width.log2_floor().is_some_and(|e| e < target) || width == Dyadic::pow2(target);
        // The bracket endpoints themselves are never roots, so keep going
        // until both have moved strictly inside.
        if narrow && lo > floor && hi < ceil {
            break;
        }
        let sum = &lo + &hi;
        let mid = Dyadic::new(sum.mantissa().clone(), sum.exponent() - 1);
        match phi.eval_dyadic(&mid).sign() {
            Sign::Minus => lo = mid,
            Sign::Plus => hi = mid,
            // Φ has no rational roots besides ±1, neither of which is bracketed.
            Sign::NoSign => return Err(failure()),
        }
    }
    let prec = lo.bits().max(hi.bits()) as u32 + GUARD_BITS;
    Ok(RootEnclosure {
        params: *params,
        interval: DyadicInterval::new(lo, hi, prec),
        sign_certificate: (Sign::Minus, Sign::Plus),
    })
}

/// Certified enclosure of the dominant root of Φ with width at most
/// `2^-bits`, by bisection with exact sign tests.
///
/// For `q >= 3` the search starts from `(q, q+1)`; for `q` in `{1, 2}`
/// from `(1, q+1)`.
pub fn dominant_root(params: &SequenceParams, bits: u32) -> Result<RootEnclosure> {
    let phi = CharPoly::new(params);
    let (lo, hi) = bracket(params);
    bisect(params, phi.as_ref(), lo, hi, bits)
}

/// Enclosures of the roots `α > β` of `t^2 - (q+1)t + (q-1)`.
#[derive(Debug, Clone)]
pub struct QuadraticRoots {
    pub q: u32,
    pub alpha: DyadicInterval,
    pub beta: DyadicInterval,
    /// Enclosure of `sqrt(q^2 - 2q + 5)`.
    pub discriminant_sqrt: DyadicInterval,
}

fn width_at_most(x: &DyadicInterval, bits: u32) -> bool {
    x.width_log2().is_none_or(|e| e < -i64::from(bits))
}

/// `α` and `β` with widths at most `2^-bits`. Requires `q >= 3`.
pub fn quadratic_roots(q: u32, bits: u32) -> Result<QuadraticRoots> {
    if q < 3 {
        return Err(Error::Regime {
            op: "quadratic_roots",
            q,
        });
    }
    let qi = i64::from(q);
    let mut prec = bits + GUARD_BITS;
    loop {
        let disc = DyadicInterval::from_int(qi * qi - 2 * qi + 5, prec).sqrt()?;
        let q1 = DyadicInterval::from_int(qi + 1, prec);
        let half = DyadicInterval::point(Dyadic::pow2(-1), prec);
        let alpha = &(&q1 + &disc) * &half;
        let beta = &(&q1 - &disc) * &half;
        if width_at_most(&alpha, bits) && width_at_most(&beta, bits) {
            return Ok(QuadraticRoots {
                q,
                alpha,
                beta,
                discriminant_sqrt: disc,
            });
        }
        prec *= 2;
    }
}

/// Enclosure of the larger zero of the denominator of `g`,
/// `((q+1)k + sqrt(k^2(q^2-2q+5) + 4(q-1))) / (2(k+1))`. Requires `q >= 3`.
pub fn asymptote_c(params: &SequenceParams, bits: u32) -> Result<DyadicInterval> {
    params.require_certified("asymptote_c")?;
    let (q, k) = (i64::from(params.q()), i64::from(params.k()));
    let radicand = BigInt::from(k * k) * (q * q - 2 * q + 5) + 4 * (q - 1);
    let mut prec = bits + GUARD_BITS;
    loop {
        let root = DyadicInterval::from_int(radicand.clone(), prec).sqrt()?;
        let num = &DyadicInterval::from_int((q + 1) * k, prec) + &root;
        let c = num.div(&DyadicInterval::from_int(2 * (k + 1), prec))?;
        if width_at_most(&c, bits) {
            return Ok(c);
        }
        prec *= 2;
    }
}

/// A complex root approximation with a residual certificate.
#[derive(Debug, Clone)]
pub struct ApproxRoot {
    pub value: Complex<BigFloat>,
    /// `|Φ(z)|`.
    pub residual: BigFloat,
    /// `k·|Φ(z)/Φ'(z)|`; the disk of this radius around `value` contains a root.
    pub inclusion_radius: BigFloat,
}

impl ApproxRoot {
    pub fn modulus(&self) -> BigFloat {
        self.value.norm_sqr().sqrt()
    }

    /// Upper bound for the modulus of the root this approximates.
    pub fn modulus_bound(&self) -> BigFloat {
        self.modulus() + self.inclusion_radius.clone()
    }
}

/// All roots of Φ: the certified dominant root plus `k-1` approximations.
#[derive(Debug, Clone)]
pub struct RootSet {
    params: SequenceParams,
    bits: u32,
    working_prec: u32,
    dominant: RootEnclosure,
    secondary: Vec<ApproxRoot>,
    iterations: usize,
}

impl RootSet {
    pub fn params(&self) -> &SequenceParams {
        &self.params
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn working_prec(&self) -> u32 {
        self.working_prec
    }

    pub fn dominant(&self) -> &RootEnclosure {
        &self.dominant
    }

    pub fn secondary(&self) -> &[ApproxRoot] {
        &self.secondary
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// The dominant root (enclosure midpoint) followed by the secondary
    /// approximations, at the working precision.
    pub fn all_values(&self) -> Vec<Complex<BigFloat>> {
        let mid = BigFloat::new(self.dominant.interval.midpoint(), self.working_prec);
        std::iter::once(Complex::new(mid, BigFloat::zero()))
            .chain(self.secondary.iter().map(|r| r.value.clone()))
            .collect()
    }

    /// Largest `|z| + radius` over the secondary roots.
    pub fn max_secondary_modulus(&self) -> BigFloat {
        self.secondary
            .iter()
            .map(ApproxRoot::modulus_bound)
            .fold(BigFloat::zero(), |a, b| if b > a { b } else { a })
    }
}

fn to_big(z: &Complex<f64>, prec: u32) -> Complex<BigFloat> {
    Complex::new(
        BigFloat::from_f64(z.re, prec),
        BigFloat::from_f64(z.im, prec),
    )
}

fn below_pow2(x: &BigFloat, e: i64) -> bool {
    x.log2_floor().is_none_or(|l| l < e)
}

/// Dominant root by [`dominant_root`] and the remaining `k-1` roots by
/// Aberth–Ehrlich iteration, seeded in `f64` and refined at `bits` plus
/// guard bits.
///
/// Fails if the iteration does not converge, a residual `|Φ(z)|` exceeds
/// `2^-(bits/2)`, two roots are closer than `2^-(bits/4)`, or a secondary
/// root lies outside the unit circle by more than `2^-(bits/4)`.
pub fn all_roots(params: &SequenceParams, bits: u32) -> Result<RootSet> {
    const SEED_ITERATIONS: usize = 500;
    const REFINE_ITERATIONS: usize = 80;

    let dominant = dominant_root(params, bits)?;
    let phi = CharPoly::new(params);
    let coeffs = phi.as_ref().coeffs();
    let k = params.k() as usize;

    let seed_coeffs: Vec<f64> = coeffs.iter().map(|c| f64::from_int_like(c, &0.0)).collect();
    let seed = aberth_refine(
        &seed_coeffs,
        initial_guesses(&seed_coeffs),
        SEED_ITERATIONS,
        48,
    );

    let prec = bits + 2 * GUARD_BITS;
    let like = BigFloat::from_int(0, prec);
    let big_coeffs: Vec<BigFloat> = coeffs
        .iter()
        .map(|c| BigFloat::from_int_like(c, &like))
        .collect();
    let start = seed.roots.iter().map(|z| to_big(z, prec)).collect();
    let refined = aberth_refine(&big_coeffs, start, REFINE_ITERATIONS, bits + GUARD_BITS);
    let iterations = seed.iterations + refined.iterations;

    let mut scored: Vec<(Complex<BigFloat>, BigFloat, BigFloat)> = refined
        .roots
        .into_iter()
        .map(|z| {
            let (p, dp) = eval_with_derivative(&big_coeffs, &z);
            let residual = p.norm_sqr().sqrt();
            let radius =
                BigFloat::from_int(k as i64, prec) * residual.clone() / dp.norm_sqr().sqrt();
            (z, residual, radius)
        })
        .collect();

    let worst = scored
        .iter()
        .filter_map(|(_, r, _)| r.log2_floor())
        .max()
        .unwrap_or(i64::MIN);
    if !refined.converged || worst >= -i64::from(bits / 2) {
        return Err(Error::NonConvergence {
            iterations,
            worst_residual_log2: worst,
        });
    }

    // The dominant root is the one of largest modulus; swap in the certified
    // enclosure for it and check the approximation agrees.
    let dom_idx = (0..scored.len())
        .max_by(|&a, &b| {
            scored[a]
                .0
                .norm_sqr()
                .partial_cmp(&scored[b].0.norm_sqr())
                .expect("finite")
        })
        .expect("k >= 2 roots");
    let (dom_approx, _, _) = scored.swap_remove(dom_idx);
    let mid = BigFloat::new(dominant.interval().midpoint(), prec);
    let gap = (dom_approx - Complex::new(mid, BigFloat::zero()))
        .norm_sqr()
        .sqrt();
    if !below_pow2(&gap, -i64::from(bits / 2)) {
        return Err(Error::NonConvergence {
            iterations,
            worst_residual_log2: gap.log2_floor().unwrap_or(i64::MIN),
        });
    }

    let secondary: Vec<ApproxRoot> = scored
        .into_iter()
        .map(|(value, residual, inclusion_radius)| ApproxRoot {
            value,
            residual,
            inclusion_radius,
        })
        .collect();

    let set = RootSet {
        params: *params,
        bits,
        working_prec: prec,
        dominant,
        secondary,
        iterations,
    };

    let separation = bits / 4;
    let values = set.all_values();
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let d = log2_modulus(&(values[i].clone() - values[j].clone()));
            if d.is_none_or(|e| e < -i64::from(separation)) {
                return Err(Error::RootsNotSeparated {
                    i,
                    j,
                    tolerance_bits: separation,
                });
            }
        }
    }
    let limit = BigFloat::one() + BigFloat::new(Dyadic::pow2(-i64::from(separation)), prec);
    for (index, root) in set.secondary.iter().enumerate() {
        let m = root.modulus();
        if m >= limit {
            return Err(Error::OutsideUnitCircle {
                index,
                modulus: m.to_f64(),
            });
        }
    }
    Ok(set)
}
