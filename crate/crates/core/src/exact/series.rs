use std::ops::Neg;

use super::{lift, TermScalar};
use crate::error::{Error, Result};
use crate::params::SequenceParams;

/// First `count` coefficients of the power series `numerator / denominator`
/// (coefficients in ascending order), by long division.
///
/// The constant term of `denominator` must be a unit of `T` so every
/// division step is exact.
pub fn series_divide<T: TermScalar>(numerator: &[T], denominator: &[T], count: usize) -> Vec<T> {
    let lead = denominator
        .first()
        .expect("denominator must have a constant term")
        .clone();
    assert!(
        (T::one() / lead.clone()) * lead.clone() == T::one(),
        "constant term of the denominator must be a unit"
    );
    let mut out: Vec<T> = Vec::with_capacity(count);
    for n in 0..count {
        let mut acc = numerator.get(n).cloned().unwrap_or_else(T::zero);
        for (j, d) in denominator.iter().enumerate().skip(1).take(n) {
            if d.is_zero() {
                continue;
            }
            acc = acc - d.clone() * out[n - j].clone();
        }
        out.push(acc / lead.clone());
    }
    out
}

/// Coefficients `c(0..count)` of `x / (1 - q·x - x^2 - ... - x^k)`.
pub fn series_coefficients<T>(params: &SequenceParams, count: usize) -> Result<Vec<T>>
where
    T: TermScalar + Neg<Output = T>,
{
    if count == 0 {
        return Err(Error::EmptyCount);
    }
    let numerator = [T::zero(), T::one()];
    let mut denominator = vec![T::one(), -lift::<T>(params.q())];
    denominator.extend(std::iter::repeat_with(|| -T::one()).take(params.k() as usize - 1));
    Ok(series_divide(&numerator, &denominator, count))
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use proptest::prelude::*;

    use super::*;
    use crate::exact::definition_row;

    fn p(q: u32, k: u32) -> SequenceParams {
        SequenceParams::new(q, k).unwrap()
    }

    #[test]
    fn series_examples() {
        let c: Vec<i64> = series_coefficients(&p(4, 3), 6).unwrap();
        assert_eq!(c, [0, 1, 4, 17, 73, 313]);
        let c: Vec<i64> = series_coefficients(&p(3, 2), 3).unwrap();
        assert_eq!(c, [0, 1, 3]);
        assert_eq!(
            series_coefficients::<i64>(&p(3, 2), 0),
            Err(Error::EmptyCount)
        );
    }

    #[test]
    fn divide_geometric() {
        // 1 / (1 - 2x) = Σ 2^n x^n
        let c = series_divide(&[1i64], &[1, -2], 6);
        assert_eq!(c, [1, 2, 4, 8, 16, 32]);
        // (1 + x) / (1 + x) = 1
        let c = series_divide(&[1i64, 1], &[1, 1], 4);
        assert_eq!(c, [1, 0, 0, 0]);
    }

    #[test]
    fn q3_k4_against_recurrence() {
        let params = p(3, 4);
        let c: Vec<BigInt> = series_coefficients(&params, 10).unwrap();
        let row = definition_row::<BigInt>(&params, 9).unwrap();
        for (n, value) in c.iter().enumerate() {
            assert_eq!(value, row.get(n as i64).unwrap());
        }
    }

    proptest! {
        #[test]
        fn series_matches_definition(q in 1u32..=10, k in 2u32..=16) {
            let params = p(q, k);
            let c: Vec<BigInt> = series_coefficients(&params, 65).unwrap();
            let row = definition_row::<BigInt>(&params, 64).unwrap();
            for (n, value) in c.iter().enumerate() {
                prop_assert_eq!(value, row.get(n as i64).unwrap());
            }
        }
    }
}
