use num_complex::Complex;
use num_traits::{One, Zero};

use super::float::Scalar;

/// Result of a simultaneous iteration.
#[derive(Debug, Clone)]
pub struct AberthOutcome<T> {
    pub roots: Vec<Complex<T>>,
    pub iterations: usize,
    pub converged: bool,
}

/// `(p(z), p'(z))` by Horner's rule; `coeffs` ascending.
pub fn eval_with_derivative<T: Scalar>(coeffs: &[T], z: &Complex<T>) -> (Complex<T>, Complex<T>) {
    let mut p = Complex::<T>::zero();
    let mut dp = Complex::<T>::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z.clone() + p.clone();
        p = p * z.clone() + Complex::new(c.clone(), T::zero());
    }
    (p, dp)
}

/// `log2 |z|` rounded down, `None` for zero.
pub fn log2_modulus<T: Scalar>(z: &Complex<T>) -> Option<i64> {
    z.norm_sqr().log2_floor().map(|e| e.div_euclid(2))
}

/// Starting points on a circle enclosing all roots (Cauchy bound), rotated
/// off the real axis so conjugate pairs can separate.
pub fn initial_guesses(coeffs: &[f64]) -> Vec<Complex<f64>> {
    let degree = coeffs.len() - 1;
    let lead = coeffs[degree];
    let radius = 1.0
        + coeffs[..degree]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0, f64::max);
    (0..degree)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / degree as f64 + 0.4;
            Complex::from_polar(radius * 0.9, theta)
        })
        .collect()
}

/// Refine all roots of the real polynomial `coeffs` (ascending) in place
/// with the Aberth–Ehrlich correction
/// `z_i -= w_i / (1 - w_i Σ_{j≠i} 1/(z_i - z_j))`, `w_i = p(z_i)/p'(z_i)`.
///
/// Stops once every correction is below `2^-tol_bits` relative to
/// `max(1, |z_i|)`, or after `max_iter` sweeps.
pub fn aberth_refine<T: Scalar>(
    coeffs: &[T],
    roots: Vec<Complex<T>>,
    max_iter: usize,
    tol_bits: u32,
) -> AberthOutcome<T> {
    let mut roots = roots;
    let one = Complex::<T>::one();
    let tol = -i64::from(tol_bits);
    for iter in 1..=max_iter {
        let mut worst = i64::MIN;
        for i in 0..roots.len() {
            let z = roots[i].clone();
            let (p, dp) = eval_with_derivative(coeffs, &z);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion = roots
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(Complex::<T>::zero(), |acc, (_, zj)| {
                    acc + one.clone() / (z.clone() - zj.clone())
                });
            let step = ratio.clone() / (one.clone() - ratio * repulsion);
            let scale = log2_modulus(&z).unwrap_or(0).max(0);
            if let Some(e) = log2_modulus(&step) {
                worst = worst.max(e - scale);
            }
            roots[i] = z - step;
        }
        if worst < tol {
            return AberthOutcome {
                roots,
                iterations: iter,
                converged: true,
            };
        }
    }
    AberthOutcome {
        roots,
        iterations: max_iter,
        converged: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::BigFloat;

    #[test]
    fn cubic_in_f64() {
        // (z - 1)(z - 2)(z + 3) = z^3 - 7z + 6
        let coeffs = [6.0, -7.0, 0.0, 1.0];
        let out = aberth_refine(&coeffs, initial_guesses(&coeffs), 100, 45);
        assert!(out.converged);
        let mut re: Vec<f64> = out.roots.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        for (got, want) in re.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn complex_pair_to_high_precision() {
        // z^2 + 1
        let coeffs = [1.0, 0.0, 1.0];
        let seed = aberth_refine(&coeffs, initial_guesses(&coeffs), 100, 45);
        let hp_coeffs: Vec<BigFloat> = coeffs.iter().map(|c| BigFloat::from_f64(*c, 300)).collect();
        let start = seed
            .roots
            .iter()
            .map(|z| Complex::new(BigFloat::from_f64(z.re, 300), BigFloat::from_f64(z.im, 300)))
            .collect();
        let out = aberth_refine(&hp_coeffs, start, 50, 280);
        assert!(out.converged);
        for z in &out.roots {
            assert!(z.re.log2_floor().is_none_or(|e| e < -280));
            let err = Scalar::abs(&z.im) - BigFloat::one();
            assert!(err.log2_floor().is_none_or(|e| e < -280));
        }
    }
}
