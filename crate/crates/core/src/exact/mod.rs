//! Exact term engines.
//!
//! Every engine is generic over the integer type. Fixed-width types work as
//! long as the values fit; [`crate::Term`] never overflows.

mod companion;
mod matrix;
mod recurrence;
mod series;

pub use companion::{companion_row, companion_term, theorem3_row, theorem3_term, CompanionKind};
pub use matrix::{term_fast, CompanionMatrix};
pub use recurrence::{
    definition_row, shortcut_row, term_definition, term_shortcut, DefinitionTerms, ShortcutTerms,
};
pub use series::{series_coefficients, series_divide};

use num_traits::{FromPrimitive, Num};

/// Integer-like scalar the term engines compute with.
pub trait TermScalar: Clone + Num + FromPrimitive {}

impl<T: Clone + Num + FromPrimitive> TermScalar for T {}

pub(crate) fn lift<T: TermScalar>(v: u32) -> T {
    T::from_u32(v).expect("small constant must be representable")
}

/// Consecutive terms `F(start), F(start + 1), ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermRow<T> {
    start: i64,
    values: Vec<T>,
}

impl<T> TermRow<T> {
    pub(crate) fn new(start: i64, values: Vec<T>) -> Self {
        Self { start, values }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last index held, or `start - 1` when empty.
    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    pub fn get(&self, n: i64) -> Option<&T> {
        let offset = usize::try_from(n.checked_sub(self.start)?).ok()?;
        self.values.get(offset)
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &T)> + '_ {
        (self.start..).zip(self.values.iter())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
