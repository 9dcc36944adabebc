use std::collections::VecDeque;

use super::{lift, TermRow, TermScalar};
use crate::error::Result;
use crate::params::SequenceParams;

/// Iterator over `F(2-k), F(3-k), ...` by the defining order-k recurrence.
///
/// Holds only the last `k` terms.
#[derive(Debug, Clone)]
pub struct DefinitionTerms<T> {
    q: T,
    window: VecDeque<T>,
    next: i64,
}

impl<T: TermScalar> DefinitionTerms<T> {
    pub fn new(params: &SequenceParams) -> Self {
        let k = params.k() as usize;
        let mut window: VecDeque<T> = std::iter::repeat_with(T::zero).take(k - 1).collect();
        window.push_back(T::one());
        Self {
            q: lift(params.q()),
            window,
            next: params.min_index(),
        }
    }
}

impl<T: TermScalar> Iterator for DefinitionTerms<T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        let n = self.next;
        self.next += 1;
        if n <= 1 {
            // Still inside the initial conditions F(2-k..=1).
            let k = self.window.len() as i64;
            return Some(self.window[(n - (2 - k)) as usize].clone());
        }
        let mut terms = self.window.iter().rev();
        let last = terms.next().expect("window holds k >= 2 terms").clone();
        let tail = terms.fold(T::zero(), |acc, t| acc + t.clone());
        let value = self.q.clone() * last + tail;
        self.window.pop_front();
        self.window.push_back(value.clone());
        Some(value)
    }
}

/// `F(n)` by the defining recurrence `F(n) = q·F(n-1) + F(n-2) + ... + F(n-k)`.
pub fn term_definition<T: TermScalar>(params: &SequenceParams, n: i64) -> Result<T> {
    params.check_index("term_definition", n, params.min_index())?;
    let skip = (n - params.min_index()) as usize;
    Ok(DefinitionTerms::new(params)
        .nth(skip)
        .expect("iterator is infinite"))
}

/// `F(2-k..=n_max)` by the defining recurrence, in one pass.
pub fn definition_row<T: TermScalar>(params: &SequenceParams, n_max: i64) -> Result<TermRow<T>> {
    let start = params.min_index();
    params.check_index("definition_row", n_max, start)?;
    let len = (n_max - start + 1) as usize;
    Ok(TermRow::new(
        start,
        DefinitionTerms::new(params).take(len).collect(),
    ))
}

/// Iterator over `F(2-k), F(3-k), ...` using the order-(k+1) relation
/// `F(n) = (q+1)F(n-1) - (q-1)F(n-2) - F(n-k-1)`, valid for `n >= 3`.
///
/// Terms up to `F(2)` are taken from [`DefinitionTerms`].
#[derive(Debug, Clone)]
pub struct ShortcutTerms<T> {
    q_plus: T,
    q_minus: T,
    window: VecDeque<T>,
    next: i64,
}

impl<T: TermScalar> ShortcutTerms<T> {
    pub fn new(params: &SequenceParams) -> Self {
        let seeds = params.k() as usize + 1;
        Self {
            q_plus: lift(params.q() + 1),
            q_minus: lift(params.q() - 1),
            window: DefinitionTerms::new(params).take(seeds).collect(),
            next: params.min_index(),
        }
    }
}

impl<T: TermScalar> Iterator for ShortcutTerms<T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        let n = self.next;
        self.next += 1;
        let len = self.window.len() as i64;
        if n <= 2 {
            // F(2-k..=2) are the stored seeds; window[0] is F(2-k) = F(3 - len).
            return Some(self.window[(n - (3 - len)) as usize].clone());
        }
        let prev = self.window[self.window.len() - 1].clone();
        let prev2 = self.window[self.window.len() - 2].clone();
        let oldest = self.window.pop_front().expect("window holds k+1 terms");
        let value = self.q_plus.clone() * prev - self.q_minus.clone() * prev2 - oldest;
        self.window.push_back(value.clone());
        Some(value)
    }
}

/// `F(n)` by the order-(k+1) shortcut relation.
pub fn term_shortcut<T: TermScalar>(params: &SequenceParams, n: i64) -> Result<T> {
    params.check_index("term_shortcut", n, params.min_index())?;
    let skip = (n - params.min_index()) as usize;
    Ok(ShortcutTerms::new(params)
        .nth(skip)
        .expect("iterator is infinite"))
}

pub fn shortcut_row<T: TermScalar>(params: &SequenceParams, n_max: i64) -> Result<TermRow<T>> {
    let start = params.min_index();
    params.check_index("shortcut_row", n_max, start)?;
    let len = (n_max - start + 1) as usize;
    Ok(TermRow::new(
        start,
        ShortcutTerms::new(params).take(len).collect(),
    ))
}
