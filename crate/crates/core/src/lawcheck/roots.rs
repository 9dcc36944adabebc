use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{cap_for, chain_lt, run_cells, settle, Grid, LawId, LawReport, Tally};
use crate::error::{Error, Result};
use crate::numerics::{
    all_roots, asymptote_c, dominant_root, g_eval, quadratic_roots, BigFloat, DyadicInterval,
    GUARD_BITS,
};
use crate::params::SequenceParams;

fn gamma(params: &SequenceParams, bits: u32) -> Result<DyadicInterval> {
    Ok(dominant_root(params, bits)?
        .interval()
        .with_prec(bits + GUARD_BITS))
}

fn show(x: &DyadicInterval) -> String {
    format!("{x:.20}")
}

/// Run a chained strict comparison with escalation and record it.
fn record_chain(
    tally: &mut Tally,
    params: &SequenceParams,
    bits: u32,
    labels: &[&str],
    build: impl Fn(u32) -> Result<Vec<DyadicInterval>>,
) {
    let mut last = (None, Vec::new());
    let outcome = settle(bits, cap_for(bits), |b| {
        let values = build(b)?;
        let pairs: Vec<_> = values.windows(2).map(|w| (&w[0], &w[1])).collect();
        let (value, link) = chain_lt(&pairs);
        last = (link, values);
        Ok(value)
    });
    match outcome {
        Ok(s) => {
            let (link, values) = last;
            tally.settled(params, None, s, || {
                let i = link.unwrap_or(0);
                format!(
                    "{} < {} not certified: {} vs {}",
                    labels[i],
                    labels[i + 1],
                    show(&values[i]),
                    show(&values[i + 1])
                )
            })
        }
        Err(e) => tally.error(params, None, &e),
    }
}

/// Interval laws about the roots of the characteristic polynomial, for
/// every `(q, k)` in the grid (the `n` range is ignored):
///
/// - `lemma1-monotone`: `γ(k) < γ(k+1)` whenever both are in the grid.
/// - `lemma1-sandwich`: `α(1 - q^-k) < γ < α`.
/// - `lemma2-sandwich`: `1/(q+1) < g(γ) < 1/q`.
/// - `dominant-bracket`: `q < γ < q+1` and `c < γ`.
/// - `unit-circle`: every other root has modulus below 1.
///
/// Requires every `q >= 3`.
pub fn check_root_laws(grid: &Grid, bits: u32) -> Result<Vec<LawReport>> {
    grid.require_certified("check_root_laws")?;
    let laws = [
        LawId::Lemma1Monotone,
        LawId::Lemma1Sandwich,
        LawId::Lemma2Sandwich,
        LawId::DominantBracket,
        LawId::UnitCircle,
    ];
    run_cells(grid, laws, |params| {
        let mut tallies: [Tally; 5] = Default::default();
        let (q, k) = (params.q(), params.k());
        let int = |v: u32, b: u32| DyadicInterval::from_int(v, b + GUARD_BITS);
        let rat = |r: BigRational, b: u32| DyadicInterval::from_rational(&r, b + GUARD_BITS);

        if k < grid.k_max {
            let next = SequenceParams::new(q, k + 1)?;
            record_chain(&mut tallies[0], params, bits, &["γ(k)", "γ(k+1)"], |b| {
                Ok(vec![gamma(params, b)?, gamma(&next, b)?])
            });
        }

        record_chain(
            &mut tallies[1],
            params,
            bits,
            &["α(1-q^-k)", "γ", "α"],
            |b| {
                let alpha = quadratic_roots(q, b)?.alpha.with_prec(b + GUARD_BITS);
                let shrink =
                    BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(q).pow(k));
                let lower = &alpha * &rat(shrink, b);
                Ok(vec![lower, gamma(params, b)?, alpha])
            },
        );

        record_chain(
            &mut tallies[2],
            params,
            bits,
            &["1/(q+1)", "g(γ)", "1/q"],
            |b| {
                let g = g_eval(params, &gamma(params, b)?)?;
                let recip = |d: u32| rat(BigRational::new(BigInt::one(), d.into()), b);
                Ok(vec![recip(q + 1), g, recip(q)])
            },
        );

        record_chain(&mut tallies[3], params, bits, &["q", "γ", "q+1"], |b| {
            Ok(vec![int(q, b), gamma(params, b)?, int(q + 1, b)])
        });
        record_chain(&mut tallies[3], params, bits, &["c", "γ"], |b| {
            Ok(vec![asymptote_c(params, b)?, gamma(params, b)?])
        });

        check_unit_circle(&mut tallies[4], params, bits);
        Ok(tallies)
    })
}

fn check_unit_circle(tally: &mut Tally, params: &SequenceParams, bits: u32) {
    let one = BigFloat::from_int(1, 0);
    let mut worst = String::new();
    let outcome = settle(bits, cap_for(bits), |b| {
        let roots = match all_roots(params, b) {
            Ok(r) => r,
            Err(Error::OutsideUnitCircle { index, modulus }) => {
                worst = format!("root {index} has modulus {modulus}");
                return Ok(Some(false));
            }
            Err(e) => return Err(e),
        };
        let mut certified = true;
        for (i, r) in roots.secondary().iter().enumerate() {
            let bound = r.modulus_bound();
            if bound >= one {
                certified = false;
                worst = format!("root {i}: |z| + radius = {}", bound.to_f64());
                if r.modulus() - r.inclusion_radius.clone() >= one {
                    return Ok(Some(false));
                }
            }
        }
        Ok(certified.then_some(true))
    });
    match outcome {
        Ok(s) => tally.settled(params, None, s, || worst.clone()),
        Err(e) => tally.error(params, None, &e),
    }
}
