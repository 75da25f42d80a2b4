//! Dense real polynomials, coefficients in ascending order.

use nalgebra::DMatrix;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Poly(pub Vec<f64>);

impl Poly {
    pub fn constant(c: f64) -> Self {
        Self(vec![c])
    }

    pub fn linear(c0: f64, c1: f64) -> Self {
        Self(vec![c0, c1])
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self((0..n).map(|i| self.coef(i) + other.coef(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![0.0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self(out)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.iter().map(|c| c * s).collect())
    }

    fn coef(&self, i: usize) -> f64 {
        self.0.get(i).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return Self::constant(0.0);
        }
        Self(self.0.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect())
    }

    /// Drops leading coefficients that are negligible relative to the largest.
    fn trimmed(&self) -> Self {
        let big = self.0.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let mut v = self.0.clone();
        while v.len() > 1 && v.last().is_some_and(|c| c.abs() <= 1e-14 * big) {
            v.pop();
        }
        Self(v)
    }

    /// Approximately real roots, from the companion-matrix eigenvalues, each
    /// polished by a few Newton steps.
    pub fn real_roots(&self, im_tol: f64) -> Vec<f64> {
        let p = self.trimmed();
        let n = p.0.len() - 1;
        if n == 0 {
            return Vec::new();
        }
        let lead = p.0[n];
        let mut companion = DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            companion[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            companion[(i, n - 1)] = -p.0[i] / lead;
        }
        let dp = p.derivative();
        companion
            .complex_eigenvalues()
            .iter()
            .filter(|z| z.im.abs() <= im_tol * (1.0 + z.re.abs()))
            .map(|z| {
                let mut x = z.re;
                for _ in 0..3 {
                    let d = dp.eval(x);
                    if d == 0.0 {
                        break;
                    }
                    let step = p.eval(x) / d;
                    if !step.is_finite() {
                        break;
                    }
                    x -= step;
                }
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = Poly::linear(1.0, 1.0).mul(&Poly::linear(-2.0, 1.0));
        assert_eq!(p.0, vec![-2.0, -1.0, 1.0]);
        assert_eq!(p.eval(2.0), 0.0);
        assert_eq!(p.sub(&p).eval(3.0), 0.0);
    }

    #[test]
    fn roots_of_product() {
        let p = [1.0, -2.0, 0.5, 3.0]
            .iter()
            .fold(Poly::constant(1.0), |acc, r| acc.mul(&Poly::linear(-r, 1.0)));
        let q = p.mul(&Poly(vec![1.0, 0.0, 1.0]));
        let mut roots = q.real_roots(1e-6);
        roots.sort_by(f64::total_cmp);
        let want = [-2.0, 0.5, 1.0, 3.0];
        assert_eq!(roots.len(), 4);
        for (r, w) in roots.iter().zip(want) {
            assert!((r - w).abs() < 1e-12, "{roots:?}");
        }
    }
}
