use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which claims can be made for a parameter pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// q >= 3: root bounds, the U/V identities and the error bound apply.
    BoundsCertified,
    /// q in {1, 2}: terms and roots can be computed, nothing is certified.
    ComputeOnly,
}

/// The weight `q >= 1` and order `k >= 2` of a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SequenceParams {
    q: u32,
    k: u32,
}

impl SequenceParams {
    pub fn new(q: u32, k: u32) -> Result<Self> {
        if q < 1 || k < 2 {
            return Err(Error::InvalidParams {
                q: q.into(),
                k: k.into(),
            });
        }
        Ok(Self { q, k })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn regime(&self) -> Regime {
        if self.q >= 3 {
            Regime::BoundsCertified
        } else {
            Regime::ComputeOnly
        }
    }

    /// Fails with a regime error unless `q >= 3`.
    pub fn require_certified(&self, op: &'static str) -> Result<()> {
        match self.regime() {
            Regime::BoundsCertified => Ok(()),
            Regime::ComputeOnly => Err(Error::Regime { op, q: self.q }),
        }
    }

    /// Smallest valid index, `2 - k`.
    pub fn min_index(&self) -> i64 {
        2 - i64::from(self.k)
    }

    pub fn index(&self, n: i64) -> Result<TermIndex> {
        TermIndex::new(self, n)
    }

    pub(crate) fn check_index(&self, op: &'static str, n: i64, min: i64) -> Result<()> {
        if n < min {
            Err(Error::IndexBelowDomain { op, n, min })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for SequenceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q={}, k={})", self.q, self.k)
    }
}

/// An index `n >= 2 - k`, validated against its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TermIndex(i64);

impl TermIndex {
    pub fn new(params: &SequenceParams, n: i64) -> Result<Self> {
        params.check_index("term index", n, params.min_index())?;
        Ok(Self(n))
    }

    pub fn get(self) -> i64 {
        self.0
    }
}

impl From<TermIndex> for i64 {
    fn from(n: TermIndex) -> i64 {
        n.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_parameters() {
        assert!(SequenceParams::new(0, 2).is_err());
        assert!(SequenceParams::new(3, 1).is_err());
        assert!(SequenceParams::new(1, 2).is_ok());
    }

    #[test]
    fn regime_split_at_three() {
        assert_eq!(
            SequenceParams::new(2, 5).unwrap().regime(),
            Regime::ComputeOnly
        );
        assert_eq!(
            SequenceParams::new(3, 2).unwrap().regime(),
            Regime::BoundsCertified
        );
        assert!(SequenceParams::new(1, 2)
            .unwrap()
            .require_certified("x")
            .is_err());
    }

    #[test]
    fn index_domain() {
        let p = SequenceParams::new(7, 5).unwrap();
        assert_eq!(p.min_index(), -3);
        assert!(p.index(-3).is_ok());
        assert_eq!(
            p.index(-4),
            Err(Error::IndexBelowDomain {
                op: "term index",
                n: -4,
                min: -3
            })
        );
    }
}
