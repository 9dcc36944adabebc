use serde::{Deserialize, Serialize};

use super::{lift, TermRow, TermScalar};
use crate::error::{Error, Result};
use crate::params::SequenceParams;

/// The two order-2 sequences `X(n) = (q+1)X(n-1) - (q-1)X(n-2)` that
/// describe the early terms of every row with the same `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CompanionKind {
    /// Seeds `(1, q)`.
    U,
    /// Seeds `(1, q + 1)`.
    V,
}

impl CompanionKind {
    fn seeds<T: TermScalar>(self, q: u32) -> (T, T) {
        match self {
            CompanionKind::U => (T::one(), lift(q)),
            CompanionKind::V => (T::one(), lift(q + 1)),
        }
    }
}

/// `X(1..=n_max)` for the given companion kind. Requires `q >= 3`.
pub fn companion_row<T: TermScalar>(q: u32, kind: CompanionKind, n_max: i64) -> Result<TermRow<T>> {
    if q < 3 {
        return Err(Error::Regime {
            op: "companion_term",
            q,
        });
    }
    if n_max < 1 {
        return Ok(TermRow::new(1, Vec::new()));
    }
    let (a, b): (T, T) = kind.seeds(q);
    let (q_plus, q_minus): (T, T) = (lift(q + 1), lift(q - 1));
    let mut values = Vec::with_capacity(n_max as usize);
    values.push(a);
    if n_max >= 2 {
        values.push(b);
    }
    while values.len() < n_max as usize {
        let len = values.len();
        let next =
            q_plus.clone() * values[len - 1].clone() - q_minus.clone() * values[len - 2].clone();
        values.push(next);
    }
    Ok(TermRow::new(1, values))
}

/// `U(q, n)` or `V(q, n)` for `n >= 1`. Requires `q >= 3`.
pub fn companion_term<T: TermScalar>(q: u32, kind: CompanionKind, n: i64) -> Result<T> {
    if q < 3 {
        return Err(Error::Regime {
            op: "companion_term",
            q,
        });
    }
    if n < 1 {
        return Err(Error::IndexBelowDomain {
            op: "companion_term",
            n,
            min: 1,
        });
    }
    let row = companion_row::<T>(q, kind, n)?;
    Ok(row.values()[row.len() - 1].clone())
}

/// `F(1..=n_max)` from the U/V convolution identity:
/// `F(n) = U(n)` for `n <= k+1`, and
/// `F(n) = U(n) - Σ_{j=1}^{n-k-1} V(j)·F(n-k-j)` beyond.
///
/// Earlier terms of the row feed the convolution, so the row never touches
/// the defining recurrence.
pub fn theorem3_row<T: TermScalar>(params: &SequenceParams, n_max: i64) -> Result<TermRow<T>> {
    params.require_certified("theorem3_term")?;
    if n_max < 1 {
        return Ok(TermRow::new(1, Vec::new()));
    }
    let u = companion_row::<T>(params.q(), CompanionKind::U, n_max)?;
    let v = companion_row::<T>(params.q(), CompanionKind::V, n_max)?;
    let k = i64::from(params.k());
    let mut f: Vec<T> = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let un = u.get(n).expect("row covers 1..=n_max").clone();
        let value = if n <= k + 1 {
            un
        } else {
            let conv = (1..=n - k - 1).fold(T::zero(), |acc, j| {
                let vj = v.get(j).expect("row covers 1..=n_max").clone();
                acc + vj * f[(n - k - j - 1) as usize].clone()
            });
            un - conv
        };
        f.push(value);
    }
    Ok(TermRow::new(1, f))
}

/// `F(n)` for `n >= 1` via [`theorem3_row`]. Requires `q >= 3`.
pub fn theorem3_term<T: TermScalar>(params: &SequenceParams, n: i64) -> Result<T> {
    params.require_certified("theorem3_term")?;
    params.check_index("theorem3_term", n, 1)?;
    let row = theorem3_row::<T>(params, n)?;
    Ok(row.values()[row.len() - 1].clone())
}
