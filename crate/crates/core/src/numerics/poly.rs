use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dyadic::Dyadic;
use crate::params::SequenceParams;

/// Polynomial with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Horner evaluation in any ring the coefficients embed into.
    pub fn eval_in<R, F>(&self, x: &R, lift: F) -> R
    where
        R: Clone + Add<Output = R> + Mul<Output = R>,
        F: Fn(&BigInt) -> R,
    {
        let mut it = self.coeffs.iter().rev();
        let mut acc = lift(it.next().expect("polynomial has a coefficient"));
        for c in it {
            acc = acc * x.clone() + lift(c);
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.eval_in(x, |c| BigRational::from_integer(c.clone()))
    }

    pub fn eval_dyadic(&self, x: &Dyadic) -> Dyadic {
        self.eval_in(x, |c| Dyadic::from_int(c.clone()))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
}

/// `Φ(t) = t^k - q·t^(k-1) - t^(k-2) - ... - t - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    params: SequenceParams,
    poly: IntPoly,
}

impl CharPoly {
    pub fn new(params: &SequenceParams) -> Self {
        let k = params.k() as usize;
        let mut coeffs = vec![-BigInt::one(); k - 1];
        coeffs.push(-BigInt::from(params.q()));
        coeffs.push(BigInt::one());
        Self {
            params: *params,
            poly: IntPoly::new(coeffs),
        }
    }

    pub fn params(&self) -> &SequenceParams {
        &self.params
    }
}

/// `h(t) = t^(k+1) - (q+1)t^k + (q-1)t^(k-1) + 1`, which equals `(t-1)Φ(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxPoly {
    params: SequenceParams,
    poly: IntPoly,
}

impl AuxPoly {
    pub fn new(params: &SequenceParams) -> Self {
        let k = params.k() as usize;
        let q = BigInt::from(params.q());
        let mut coeffs = vec![BigInt::zero(); k + 2];
        coeffs[0] = BigInt::one();
        coeffs[k - 1] += &q - 1u32;
        coeffs[k] = -(&q + 1u32);
        coeffs[k + 1] = BigInt::one();
        Self {
            params: *params,
            poly: IntPoly::new(coeffs),
        }
    }

    pub fn params(&self) -> &SequenceParams {
        &self.params
    }
}

impl AsRef<IntPoly> for CharPoly {
    fn as_ref(&self) -> &IntPoly {
        &self.poly
    }
}

impl AsRef<IntPoly> for AuxPoly {
    fn as_ref(&self) -> &IntPoly {
        &self.poly
    }
}

impl AsRef<IntPoly> for IntPoly {
    fn as_ref(&self) -> &IntPoly {
        self
    }
}

/// Exact value of `poly` at a rational point.
pub fn eval_poly(poly: &impl AsRef<IntPoly>, point: &BigRational) -> BigRational {
    poly.as_ref().eval_rational(point)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: u32, k: u32) -> SequenceParams {
        SequenceParams::new(q, k).unwrap()
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn evaluation_examples() {
        let phi = CharPoly::new(&p(3, 2));
        assert_eq!(eval_poly(&phi, &r(3)), r(-1));
        assert_eq!(eval_poly(&phi, &r(4)), r(16 - 12 - 1));
        assert_eq!(eval_poly(&AuxPoly::new(&p(3, 2)), &r(1)), r(0));
    }

    #[test]
    fn phi_at_q_is_minus_geometric_sum() {
        for (q, k) in [(3u32, 2u32), (3, 5), (7, 4), (1, 3)] {
            let want: i64 = -(0..k - 1).map(|i| i64::from(q).pow(i)).sum::<i64>();
            assert_eq!(eval_poly(&CharPoly::new(&p(q, k)), &r(q.into())), r(want));
        }
    }

    #[test]
    fn shapes() {
        let phi = CharPoly::new(&p(4, 3));
        let c: Vec<i64> = phi
            .as_ref()
            .coeffs()
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect();
        assert_eq!(c, [-1, -1, -4, 1]);
        let h = AuxPoly::new(&p(4, 2));
        let c: Vec<i64> = h
            .as_ref()
            .coeffs()
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect();
        assert_eq!(c, [1, 3, -5, 1]);
    }

    #[test]
    fn aux_is_shifted_char_poly() {
        let t_minus_one = IntPoly::new(vec![(-1).into(), 1.into()]);
        for q in 1..=10 {
            for k in 2..=16 {
                let params = p(q, k);
                let product = t_minus_one.mul(CharPoly::new(&params).as_ref());
                assert_eq!(&product, AuxPoly::new(&params).as_ref(), "q={q} k={k}");
            }
        }
    }

    #[test]
    fn dyadic_and_rational_agree() {
        let phi = CharPoly::new(&p(5, 6));
        let x = Dyadic::new(BigInt::from(21), -2);
        assert_eq!(
            phi.as_ref().eval_dyadic(&x).to_rational(),
            eval_poly(&phi, &x.to_rational())
        );
    }
}
