use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact form of `L_D^{(k)}(t)` for `t ≠ 0`:
///
/// ```text
/// L_D^{(k)}(t) = constant + P_k(u) + b_k / t^k,   u = 1/(e^t - 1)
/// ```
///
/// `P_1(u) = u` with constant 1, `P_{k+1}(u) = P_k'(u)·(-u - u²)` (since
/// `du/dt = -u - u²`), and `b_k = (-1)^k (k-1)!`.
#[derive(Debug, Clone, PartialEq)]
pub struct CgfDerivRepr {
    order: usize,
    constant: BigRational,
    u_poly: Vec<BigInt>,
    t_pow_coeff: BigRational,
}

impl CgfDerivRepr {
    pub fn first() -> Self {
        CgfDerivRepr {
            order: 1,
            constant: BigRational::one(),
            u_poly: vec![BigInt::zero(), BigInt::one()],
            t_pow_coeff: -BigRational::one(),
        }
    }

    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "derivative order must be positive");
        let mut repr = Self::first();
        while repr.order < order {
            repr = repr.next();
        }
        repr
    }

    /// Representation of the next derivative.
    pub fn next(&self) -> Self {
        // P'(u)·(-u - u²): coefficient c_i u^i  ->  -i c_i (u^i + u^{i+1}).
        let mut poly = vec![BigInt::zero(); self.u_poly.len() + 1];
        for (i, c) in self.u_poly.iter().enumerate().skip(1) {
            let d = c * BigInt::from(i as u64);
            poly[i] -= &d;
            poly[i + 1] -= d;
        }
        let k = self.order as i64;
        CgfDerivRepr {
            order: self.order + 1,
            constant: BigRational::zero(),
            u_poly: poly,
            t_pow_coeff: &self.t_pow_coeff * BigRational::from_integer(BigInt::from(-k)),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn constant(&self) -> &BigRational {
        &self.constant
    }

    /// Coefficients of `P_k`, index = power of `u`.
    pub fn u_poly(&self) -> &[BigInt] {
        &self.u_poly
    }

    pub fn t_pow_coeff(&self) -> &BigRational {
        &self.t_pow_coeff
    }

    pub fn u_poly_f64(&self) -> Vec<f64> {
        self.u_poly
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    pub fn eval(&self, t: f64) -> f64 {
        let u = 1.0 / t.exp_m1();
        let poly = horner(&self.u_poly_f64(), u);
        let c = self.constant.to_f64().unwrap_or(0.0);
        let b = self.t_pow_coeff.to_f64().unwrap_or(f64::NAN);
        c + poly + b / t.powi(self.order as i32)
    }
}

pub(crate) fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// `a_{k,ℓ} = (1/ℓ) Σ_{i=1}^{ℓ} (-1)^{ℓ-i} C(ℓ,i) i^k`, the coefficients of
/// the literature closed form `Σ_ℓ a_{k,ℓ}/(e^t - 1)^ℓ + b_k/t^k`.
///
/// They agree with [`CgfDerivRepr::u_poly`] only up to the sign
/// `(-1)^{k+1}`, and that form carries no constant at `k = 1`; kept for the
/// diagnostic comparison.
pub fn literature_coefficients(order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero()];
    for l in 1..=order {
        let mut s = BigInt::zero();
        let mut binom = BigInt::one();
        for i in 1..=l {
            binom = binom * BigInt::from((l - i + 1) as u64) / BigInt::from(i as u64);
            let term = &binom * BigInt::from(i as u64).pow(order as u32);
            if (l - i) % 2 == 0 {
                s += term;
            } else {
                s -= term;
            }
        }
        debug_assert!((&s % BigInt::from(l as u64)).is_zero());
        out.push(s / BigInt::from(l as u64));
    }
    out
}

/// True when every `u`-coefficient of the recurrence form is positive.
pub fn all_positive(repr: &CgfDerivRepr) -> bool {
    repr.u_poly.iter().skip(1).all(|c| c.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn first_orders() {
        let d2 = CgfDerivRepr::new(2);
        assert_eq!(d2.u_poly(), ints(&[0, -1, -1]).as_slice());
        assert_eq!(
            d2.t_pow_coeff(),
            &BigRational::from_integer(BigInt::from(1))
        );
        assert!(d2.constant().is_zero());
        let d3 = CgfDerivRepr::new(3);
        assert_eq!(d3.u_poly(), ints(&[0, 1, 3, 2]).as_slice());
        assert_eq!(
            d3.t_pow_coeff(),
            &BigRational::from_integer(BigInt::from(-2))
        );
    }

    #[test]
    fn degree_and_valuation() {
        for k in 1..=12 {
            let r = CgfDerivRepr::new(k);
            assert_eq!(r.u_poly().len(), k + 1);
            assert!(r.u_poly()[0].is_zero());
            assert!(!r.u_poly()[1].is_zero());
            assert!(!r.u_poly()[k].is_zero());
            let b = BigRational::from_integer(
                BigInt::from(if k % 2 == 0 { 1 } else { -1 })
                    * (1..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i as u64)),
            );
            assert_eq!(r.t_pow_coeff(), &b);
        }
    }

    // The literature closed form has all-positive a_{k,ℓ}; the exact
    // recurrence flips the sign of the whole u-part at even k, and the
    // first derivative needs the constant 1 that the closed form omits.
    #[test]
    fn literature_form_differs_in_sign_and_constant() {
        for k in 1..=10 {
            let printed = literature_coefficients(k);
            let exact = CgfDerivRepr::new(k);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            for (l, c) in printed.iter().enumerate().take(k + 1).skip(1) {
                assert_eq!(c * BigInt::from(sign), exact.u_poly()[l], "k={k} l={l}");
            }
            assert_eq!(all_positive(&exact), k % 2 == 1);
        }
        // k = 1 at t = 1: exact L_D' vs the literature form without the constant.
        let t: f64 = 1.0;
        let direct = 1.0 + 1.0 / t.exp_m1() - 1.0 / t;
        let lit = 1.0 / t.exp_m1() - 1.0 / t;
        assert!((CgfDerivRepr::new(1).eval(t) - direct).abs() < 1e-15);
        assert!((direct - lit - 1.0).abs() < 1e-15);
        // k = 2: the literature a_{2,1} = +1, direct differentiation gives -1.
        assert_eq!(literature_coefficients(2)[1], BigInt::from(1));
        assert_eq!(CgfDerivRepr::new(2).u_poly()[1], BigInt::from(-1));
    }
}
