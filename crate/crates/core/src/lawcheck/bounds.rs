use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{cap_for, chain_lt, run_cells, settle, Grid, LawId, LawReport, Settled, Tally};
use crate::error::Result;
use crate::exact::definition_row;
use crate::numerics::{all_roots, reconstruct, DominantTerms, DyadicInterval, RootSet, GUARD_BITS};

enum Bound {
    Strict,
    Closed,
    Outside,
    Unknown,
}

fn classify(e: &DyadicInterval, bound: &BigRational) -> Bound {
    let (lo, hi) = (e.lo().to_rational(), e.hi().to_rational());
    let neg = -bound.clone();
    if &lo > bound || hi < neg {
        Bound::Outside
    } else if lo > neg && &hi < bound {
        Bound::Strict
    } else if lo >= neg && &hi <= bound {
        Bound::Closed
    } else {
        Bound::Unknown
    }
}

/// Certified term bounds on every grid cell:
///
/// - `error-bound`: `|F(n) - g(γ)γ^n| <= 1/q` for every `n` in range; the
///   report notes how many points also certified the strict form.
/// - `growth-bounds`: `γ^(n-2) < γ^(n-1)(q-1)/q < F(n) < γ^(n-1)(q+2)/q < γ^n`
///   for `n >= 1`.
///
/// Requires every `q >= 3`.
pub fn check_term_bounds(grid: &Grid, bits: u32) -> Result<Vec<LawReport>> {
    grid.require_certified("check_term_bounds")?;
    let cap = cap_for(bits);
    run_cells(grid, [LawId::ErrorBound, LawId::GrowthBounds], |params| {
        let mut tallies: [Tally; 2] = Default::default();
        let range = grid.n_range(params);
        if range.is_empty() {
            return Ok(tallies);
        }
        let q = params.q();
        let row = definition_row::<BigInt>(params, *range.end())?;
        let mut ctx = DominantTerms::new(params, bits)?;
        let bound = BigRational::new(BigInt::one(), q.into());
        let third = |x: u32, b: u32| {
            DyadicInterval::from_rational(&BigRational::new(x.into(), q.into()), b + GUARD_BITS)
        };

        // Precision needed grows with n, so each n starts where the last settled.
        let (mut w_err, mut w_growth) = (bits, bits);
        for n in range {
            let f = row.get(n).expect("row covers the grid");

            let mut last = None;
            let outcome = settle(w_err, cap, |b| {
                let e =
                    &DyadicInterval::from_int(f.clone(), b + GUARD_BITS) - &ctx.term_at(n, b)?;
                let v = match classify(&e, &bound) {
                    Bound::Strict => Some(true),
                    Bound::Outside => Some(false),
                    Bound::Closed | Bound::Unknown => None,
                };
                last = Some(e);
                Ok(v)
            });
            match outcome {
                Ok(s) => {
                    w_err = s.bits;
                    let e = last.take().expect("evaluated at least once");
                    if s.value.is_none() && matches!(classify(&e, &bound), Bound::Closed) {
                        tallies[0].weak(s.bits);
                    } else {
                        tallies[0]
                            .settled(params, Some(n), s, || format!("E = {e:.24}, bound 1/{q}"));
                    }
                }
                Err(err) => tallies[0].error(params, Some(n), &err),
            }

            if n < 1 {
                continue;
            }
            let labels = ["γ^(n-2)", "γ^(n-1)(q-1)/q", "F(n)", "γ^(n-1)(q+2)/q", "γ^n"];
            let mut last = (None, Vec::new());
            let outcome = settle(w_growth, cap, |b| {
                let gamma = ctx.gamma(b)?;
                let g1 = gamma.powi(n - 1)?;
                let values = vec![
                    gamma.powi(n - 2)?,
                    &g1 * &third(q - 1, b),
                    DyadicInterval::from_int(f.clone(), b + GUARD_BITS),
                    &g1 * &third(q + 2, b),
                    gamma.powi(n)?,
                ];
                let pairs: Vec<_> = values.windows(2).map(|w| (&w[0], &w[1])).collect();
                let (v, link) = chain_lt(&pairs);
                last = (link, values);
                Ok(v)
            });
            match outcome {
                Ok(s) => {
                    w_growth = s.bits;
                    let (link, values) = &last;
                    tallies[1].settled(params, Some(n), s, || {
                        let i = link.unwrap_or(0);
                        format!(
                            "{} < {} not certified: {:.24} vs {:.24}",
                            labels[i],
                            labels[i + 1],
                            values[i],
                            values[i + 1]
                        )
                    });
                }
                Err(err) => tallies[1].error(params, Some(n), &err),
            }
        }
        Ok(tallies)
    })
}

/// Check that the rounded full Binet sum equals the exact term at every grid
/// point. Precision doubles from `bits` whenever the rounding guard cannot
/// certify the result; points still unguarded at the cap are inconclusive.
///
/// Requires every `q >= 3`.
pub fn check_reconstruction(grid: &Grid, bits: u32) -> Result<Vec<LawReport>> {
    grid.require_certified("check_reconstruction")?;
    let cap = cap_for(bits);
    run_cells(grid, [LawId::Reconstruction], |params| {
        let mut tally = Tally::default();
        let range = grid.n_range(params);
        if range.is_empty() {
            return Ok([tally]);
        }
        let row = definition_row::<BigInt>(params, *range.end())?;
        let mut cache: BTreeMap<u32, Result<RootSet>> = BTreeMap::new();
        let mut w = bits;
        for n in range {
            let exact = row.get(n).expect("row covers the grid");
            let mut b = w;
            loop {
                let attempt = match cache.entry(b).or_insert_with(|| all_roots(params, b)) {
                    Ok(roots) => reconstruct(roots, n),
                    Err(e) => Err(e.clone()),
                };
                match attempt {
                    Ok(r) => {
                        w = b;
                        let s = Settled {
                            value: Some(&r.value == exact),
                            bits: b,
                        };
                        tally.settled(params, Some(n), s, || {
                            format!(
                                "binet {}, exact {exact}, residual {:e}, imag {:e}",
                                r.value,
                                r.residual.to_f64(),
                                r.imag.to_f64()
                            )
                        });
                        break;
                    }
                    Err(e) if b.saturating_mul(2) > cap => {
                        let s = Settled {
                            value: None,
                            bits: b,
                        };
                        tally.settled(params, Some(n), s, || e.to_string());
                        break;
                    }
                    Err(_) => b *= 2,
                }
            }
        }
        Ok([tally])
    })
}

/// Parameters of the decay heuristic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayCheck {
    /// First index of the monotonicity window.
    pub from: i64,
    /// Index where the magnitude is tested against `threshold`.
    pub at: i64,
    pub threshold: f64,
}

impl Default for DecayCheck {
    fn default() -> Self {
        Self {
            from: 10,
            at: 40,
            threshold: 1e-6,
        }
    }
}

fn error_magnitude(ctx: &mut DominantTerms, n: i64, exact: &BigInt, bits: u32) -> Result<f64> {
    let w = bits.max(exact.bits() as u32 + 96);
    let e = &DyadicInterval::from_int(exact.clone(), w + GUARD_BITS) - &ctx.term_at(n, w)?;
    Ok(e.midpoint().to_f64().abs())
}

/// Heuristic evidence that `E(n) -> 0`, which has no finite certificate.
///
/// For each cell, `[from, at]` is cut into blocks of `k+1` consecutive
/// indices; the largest `|E(n)|` per block must strictly decrease from block
/// to block, and `|E(at)|` must be below `threshold`. Magnitudes are interval
/// midpoints, not certified values. The grid's `n` range is ignored.
pub fn check_error_decay(grid: &Grid, bits: u32, check: DecayCheck) -> Result<LawReport> {
    grid.require_certified("check_error_decay")?;
    let mut reports = run_cells(grid, [LawId::ErrorDecay], |params| {
        let mut tally = Tally::default();
        let from = check.from.max(params.min_index());
        if from > check.at {
            return Ok([tally]);
        }
        let row = definition_row::<BigInt>(params, check.at)?;
        let mut ctx = DominantTerms::new(params, bits)?;
        let magnitudes = (from..=check.at)
            .map(|n| error_magnitude(&mut ctx, n, row.get(n).expect("row covers"), bits))
            .collect::<Result<Vec<f64>>>()?;
        let block = params.k() as usize + 1;
        let envelope: Vec<f64> = magnitudes
            .chunks(block)
            .map(|c| c.iter().cloned().fold(0.0, f64::max))
            .collect();
        match envelope.windows(2).position(|w| w[1] >= w[0]) {
            Some(j) => tally.fail(
                params,
                Some(from + ((j + 1) * block) as i64),
                format!(
                    "block maximum {:e} does not drop below {:e}",
                    envelope[j + 1],
                    envelope[j]
                ),
            ),
            None => tally.exact(params, from, true, String::new),
        }
        let last = *magnitudes.last().expect("window is non-empty");
        tally.exact(params, check.at, last < check.threshold, || {
            format!("|E| = {last:e}, threshold {:e}", check.threshold)
        });
        Ok([tally])
    })?;
    let mut report = reports.pop().expect("one law");
    report.heuristic = true;
    Ok(report)
}
