//! Truncated Taylor jets in the arc-length parameter.
//!
//! Covariant powers of the tangent for non-constant curvatures are built by
//! repeated differentiation of frame-coefficient functions. Carrying each
//! coefficient as a jet makes that differentiation exact in structure: no
//! finite differences of curve points ever enter.

/// Taylor polynomial `Σ c_p (s - s₀)^p` valid through degree `c.len() - 1`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Jet {
    c: Vec<f64>,
}

impl Jet {
    pub fn constant(value: f64, degree: usize) -> Self {
        let mut c = vec![0.0; degree + 1];
        c[0] = value;
        Jet { c }
    }

    /// Builds a jet from derivative values `f, f', f'', ...` at the base
    /// point, truncated to `degree`.
    pub fn from_derivatives(derivs: &[f64], degree: usize) -> Self {
        let mut c = vec![0.0; degree + 1];
        let mut factorial = 1.0;
        for (p, slot) in c.iter_mut().enumerate() {
            if p > 0 {
                factorial *= p as f64;
            }
            if let Some(d) = derivs.get(p) {
                *slot = d / factorial;
            }
        }
        Jet { c }
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// d/ds, valid one degree lower. Degree-zero jets differentiate to the
    /// zero constant, which keeps helix computations exact at any order.
    pub fn derivative(&self) -> Jet {
        if self.c.len() == 1 {
            return Jet::constant(0.0, 0);
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(p, v)| p as f64 * v)
            .collect();
        Jet { c }
    }

    pub fn add(&self, other: &Jet) -> Jet {
        let len = self.c.len().min(other.c.len());
        Jet {
            c: (0..len).map(|i| self.c[i] + other.c[i]).collect(),
        }
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        let len = self.c.len().min(other.c.len());
        let mut c = vec![0.0; len];
        for i in 0..len {
            for j in 0..len - i {
                c[i + j] += self.c[i] * other.c[j];
            }
        }
        Jet { c }
    }

    pub fn scale(&self, factor: f64) -> Jet {
        Jet {
            c: self.c.iter().map(|v| factor * v).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_and_product_follow_polynomials() {
        // f(s) = 2 + 3s + s², g(s) = 1 - s
        let f = Jet {
            c: vec![2.0, 3.0, 1.0],
        };
        let g = Jet {
            c: vec![1.0, -1.0, 0.0],
        };
        assert_eq!(f.derivative().c, vec![3.0, 2.0]);
        // (fg)(s) = 2 + s - 2s² truncated to degree 2
        assert_eq!(f.mul(&g).c, vec![2.0, 1.0, -2.0]);
        assert_eq!(f.add(&g).c, vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn from_derivatives_divides_by_factorials() {
        let j = Jet::from_derivatives(&[1.0, 2.0, 6.0, 24.0], 3);
        assert_eq!(j.c, vec![1.0, 2.0, 3.0, 4.0]);
        let short = Jet::from_derivatives(&[1.0, 2.0, 6.0, 24.0], 1);
        assert_eq!(short.c, vec![1.0, 2.0]);
    }

    #[test]
    fn constant_jets_survive_any_number_of_derivatives() {
        let j = Jet::constant(5.0, 0);
        assert_eq!(j.derivative().value(), 0.0);
        assert_eq!(j.derivative().derivative().value(), 0.0);
    }
}
