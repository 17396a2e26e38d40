use num_complex::Complex64;

/// Polynomial in one variable with complex coefficients, index = power.
pub type Poly = Vec<Complex64>;

pub(crate) fn poly_add(a: &[Complex64], b: &[Complex64]) -> Poly {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    out
}

pub(crate) fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Monomial `c·v^power`.
pub fn monomial(c: Complex64, power: usize) -> Poly {
    let mut p = vec![Complex64::new(0.0, 0.0); power + 1];
    p[power] = c;
    p
}

/// Truncated power series in a small parameter `ε` (here `n^{-1/2}`) whose
/// coefficients are polynomials in the integration variable.
///
/// `terms[k]` is the polynomial multiplying `ε^k`; every product is
/// truncated at `ε^order`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySeries {
    terms: Vec<Poly>,
}

impl PolySeries {
    pub fn zero(order: usize) -> Self {
        PolySeries {
            terms: vec![Vec::new(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.terms[0] = vec![Complex64::new(1.0, 0.0)];
        s
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, k: usize) -> &[Complex64] {
        self.terms.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn coefficient(&self, k: usize, power: usize) -> Complex64 {
        self.term(k).get(power).copied().unwrap_or_default()
    }

    /// Adds `poly·ε^k` (ignored beyond the truncation order).
    pub fn add_term(&mut self, k: usize, poly: &[Complex64]) {
        if k < self.terms.len() {
            self.terms[k] = poly_add(&self.terms[k], poly);
        }
    }

    pub fn add(&self, other: &PolySeries) -> PolySeries {
        let order = self.order().min(other.order());
        PolySeries {
            terms: (0..=order)
                .map(|k| poly_add(self.term(k), other.term(k)))
                .collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> PolySeries {
        PolySeries {
            terms: self
                .terms
                .iter()
                .map(|p| p.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &PolySeries) -> PolySeries {
        let order = self.order().min(other.order());
        let mut out = PolySeries::zero(order);
        for i in 0..=order {
            if self.term(i).is_empty() {
                continue;
            }
            for j in 0..=(order - i) {
                if other.term(j).is_empty() {
                    continue;
                }
                let prod = poly_mul(self.term(i), other.term(j));
                out.terms[i + j] = poly_add(&out.terms[i + j], &prod);
            }
        }
        out
    }

    /// `exp(self)` for a series without an `ε^0` term, via the truncated
    /// Taylor sum `1 + u + … + u^order/order!` (exact at this truncation
    /// since `u^{order+1} = O(ε^{order+1})`).
    pub fn exp(&self) -> PolySeries {
        assert!(
            self.term(0).iter().all(|c| c.norm() == 0.0),
            "exp of a series with a constant term"
        );
        let order = self.order();
        let mut out = PolySeries::one(order);
        let mut power = PolySeries::one(order);
        for m in 1..=order {
            power = power.mul(self).scale(Complex64::new(1.0 / m as f64, 0.0));
            out = out.add(&power);
        }
        out
    }

    /// Highest power of the variable with a coefficient above `tol`.
    pub fn degree(&self, k: usize, tol: f64) -> Option<usize> {
        self.term(k).iter().rposition(|c| c.norm() > tol)
    }

    /// Lowest power of the variable with a coefficient above `tol`.
    pub fn valuation(&self, k: usize, tol: f64) -> Option<usize> {
        self.term(k).iter().position(|c| c.norm() > tol)
    }
}
