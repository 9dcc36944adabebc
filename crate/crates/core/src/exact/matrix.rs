use super::{lift, TermScalar};
use crate::error::Result;
use crate::params::SequenceParams;

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompanionMatrix<T> {
    dim: usize,
    entries: Vec<T>,
}

impl<T: TermScalar> CompanionMatrix<T> {
    /// The k×k companion matrix with first row `(q, 1, ..., 1)` and ones on
    /// the subdiagonal. It maps `(F(n-1), ..., F(n-k))` to `(F(n), ..., F(n-k+1))`.
    pub fn for_params(params: &SequenceParams) -> Self {
        let k = params.k() as usize;
        let mut entries = vec![T::zero(); k * k];
        entries[0] = lift(params.q());
        for e in entries.iter_mut().take(k).skip(1) {
            *e = T::one();
        }
        for row in 1..k {
            entries[row * k + row - 1] = T::one();
        }
        Self { dim: k, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.entries[row * self.dim + col]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let d = self.dim;
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = T::zero();
                for l in 0..d {
                    let (a, b) = (self.get(i, l), rhs.get(l, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc + a.clone() * b.clone();
                }
                entries.push(acc);
            }
        }
        Self { dim: d, entries }
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        (0..self.dim)
            .map(|i| {
                v.iter().enumerate().fold(T::zero(), |acc, (j, x)| {
                    let a = self.get(i, j);
                    if a.is_zero() || x.is_zero() {
                        acc
                    } else {
                        acc + a.clone() * x.clone()
                    }
                })
            })
            .collect()
    }
}

/// `F(n)` for `n >= 1` by binary powering of the companion matrix applied to
/// the state `(F(1), F(0), ..., F(2-k)) = (1, 0, ..., 0)`.
pub fn term_fast<T: TermScalar>(params: &SequenceParams, n: i64) -> Result<T> {
    params.check_index("term_fast", n, 1)?;
    let k = params.k() as usize;
    let mut state = vec![T::zero(); k];
    state[0] = T::one();

    // Powers of one matrix commute, so bits can be consumed low to high
    // with only matrix-vector products on the state.
    let mut exp = (n - 1) as u64;
    let mut base = CompanionMatrix::for_params(params);
    while exp > 0 {
        if exp & 1 == 1 {
            state = base.apply(&state);
        }
        exp >>= 1;
        if exp > 0 {
            base = base.mul(&base);
        }
    }
    Ok(state.swap_remove(0))
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use proptest::prelude::*;

    use super::*;
    use crate::exact::{term_definition, term_shortcut};

    fn p(q: u32, k: u32) -> SequenceParams {
        SequenceParams::new(q, k).unwrap()
    }

    #[test]
    fn fast_examples() {
        assert_eq!(term_fast::<BigInt>(&p(3, 2), 6).unwrap(), 360.into());
        // Pell by direct recurrence: 1, 2, 5, 12, 29.
        let mut pell = (1i64, 2i64);
        for _ in 0..3 {
            pell = (pell.1, 2 * pell.1 + pell.0);
        }
        assert_eq!(term_fast::<i64>(&p(2, 2), 5).unwrap(), pell.1);
        assert_eq!(
            term_fast::<BigInt>(&p(5, 3), 40).unwrap(),
            term_definition::<BigInt>(&p(5, 3), 40).unwrap()
        );
    }

    #[test]
    fn fast_rejects_nonpositive_index() {
        assert!(term_fast::<BigInt>(&p(3, 2), 0).is_err());
        assert_eq!(term_fast::<BigInt>(&p(3, 2), 1).unwrap(), 1.into());
    }

    #[test]
    fn companion_shape() {
        let m = CompanionMatrix::<i64>::for_params(&p(4, 3));
        assert_eq!(m.entries, vec![4, 1, 1, 1, 0, 0, 0, 1, 0]);
    }

    #[test]
    fn large_index_spot_check() {
        let params = p(3, 2);
        assert_eq!(
            term_fast::<BigInt>(&params, 10_000).unwrap(),
            term_shortcut::<BigInt>(&params, 10_000).unwrap()
        );
    }

    proptest! {
        #[test]
        fn fast_matches_definition(q in 1u32..=8, k in 2u32..=12, n in 1i64..300) {
            let params = p(q, k);
            prop_assert_eq!(
                term_fast::<BigInt>(&params, n).unwrap(),
                term_definition::<BigInt>(&params, n).unwrap()
            );
        }
    }
}
