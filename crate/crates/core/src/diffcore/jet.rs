//! Second-order jets: a value together with its exact gradient and Hessian.
//!
//! Every arithmetic rule below is the closed-form sum, product or chain rule,
//! so no truncation error is introduced at any stage.

use nalgebra::{DMatrix, DVector};

use crate::error::GeometryError;

/// Value, gradient and (row-major, symmetric) Hessian of a scalar at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    value: f64,
    grad: Vec<f64>,
    hess: Vec<f64>,
}

impl Jet {
    pub fn constant(dim: usize, value: f64) -> Self {
        Self {
            value,
            grad: vec![0.0; dim],
            hess: vec![0.0; dim * dim],
        }
    }

    /// The jet of the `index`-th coordinate function evaluated at `value`.
    pub fn variable(dim: usize, index: usize, value: f64) -> Self {
        let mut jet = Self::constant(dim, value);
        jet.grad[index] = 1.0;
        jet
    }

    pub fn dim(&self) -> usize {
        self.grad.len()
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn gradient(&self) -> &[f64] {
        &self.grad
    }

    pub fn partial(&self, i: usize) -> f64 {
        self.grad[i]
    }

    pub fn hessian(&self, i: usize, j: usize) -> f64 {
        self.hess[i * self.dim() + j]
    }

    pub fn gradient_vector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.grad)
    }

    pub fn hessian_matrix(&self) -> DMatrix<f64> {
        let d = self.dim();
        DMatrix::from_row_slice(d, d, &self.hess)
    }

    pub fn add(&self, other: &Jet) -> Jet {
        Jet {
            value: self.value + other.value,
            grad: zip_with(&self.grad, &other.grad, |a, b| a + b),
            hess: zip_with(&self.hess, &other.hess, |a, b| a + b),
        }
    }

    pub fn sub(&self, other: &Jet) -> Jet {
        Jet {
            value: self.value - other.value,
            grad: zip_with(&self.grad, &other.grad, |a, b| a - b),
            hess: zip_with(&self.hess, &other.hess, |a, b| a - b),
        }
    }

    pub fn scale(&self, factor: f64) -> Jet {
        Jet {
            value: factor * self.value,
            grad: self.grad.iter().map(|g| factor * g).collect(),
            hess: self.hess.iter().map(|h| factor * h).collect(),
        }
    }

    /// Product rule: `H(ab) = a H(b) + b H(a) + ∇a ∇bᵀ + ∇b ∇aᵀ`.
    pub fn mul(&self, other: &Jet) -> Jet {
        let d = self.dim();
        let (a, b) = (self.value, other.value);
        let grad = zip_with(&self.grad, &other.grad, |ga, gb| a * gb + b * ga);
        let mut hess = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let k = i * d + j;
                hess.push(
                    a * other.hess[k]
                        + b * self.hess[k]
                        + self.grad[i] * other.grad[j]
                        + other.grad[i] * self.grad[j],
                );
            }
        }
        Jet {
            value: a * b,
            grad,
            hess,
        }
    }

    /// Chain rule through a scalar function with derivatives `(f, f', f'')`
    /// at `self.value`: `∇f = f' ∇u`, `H f = f' H u + f'' ∇u ∇uᵀ`.
    fn chain(&self, f: f64, df: f64, d2f: f64) -> Jet {
        let d = self.dim();
        let grad = self.grad.iter().map(|g| df * g).collect();
        let mut hess = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                hess.push(df * self.hess[i * d + j] + d2f * self.grad[i] * self.grad[j]);
            }
        }
        Jet {
            value: f,
            grad,
            hess,
        }
    }

    /// Square root; defined for strictly positive values only.
    ///
    /// `(√u)' = 1 / (2√u)`, `(√u)'' = −1 / (4 u^{3/2})`.
    pub fn sqrt(&self) -> Result<Jet, GeometryError> {
        if !(self.value > 0.0) {
            return Err(GeometryError::Domain(format!(
                "square root of non-positive value {}",
                self.value
            )));
        }
        let r = self.value.sqrt();
        Ok(self.chain(r, 0.5 / r, -0.25 / (r * self.value)))
    }

    /// Reciprocal; `(1/u)' = −1/u²`, `(1/u)'' = 2/u³`.
    pub fn recip(&self) -> Result<Jet, GeometryError> {
        if self.value == 0.0 || !self.value.is_finite() {
            return Err(GeometryError::Domain(format!(
                "reciprocal of {}",
                self.value
            )));
        }
        let inv = 1.0 / self.value;
        Ok(self.chain(inv, -inv * inv, 2.0 * inv * inv * inv))
    }
}

fn zip_with(a: &[f64], b: &[f64], f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
}

/// Jets of the entries of `A⁻¹` given the jets of a square matrix `A`
/// (row-major, `n × n`).
///
/// With `B = A⁻¹`:
/// `∂_a B = −B (∂_a A) B` and
/// `∂_a ∂_b B = B A_a B A_b B + B A_b B A_a B − B A_ab B`.
pub fn inverse_jets(entries: &[Jet], n: usize) -> Result<Vec<Jet>, GeometryError> {
    assert_eq!(entries.len(), n * n, "inverse_jets: expected {n}x{n} entries");
    let d = entries.first().map_or(0, Jet::dim);
    let value = DMatrix::from_fn(n, n, |r, c| entries[r * n + c].value);
    let inv = value
        .clone()
        .try_inverse()
        .ok_or_else(|| GeometryError::Singular(format!("{n}x{n} matrix is not invertible")))?;
    if inv.iter().any(|v| !v.is_finite()) {
        return Err(GeometryError::Singular(format!(
            "{n}x{n} matrix inverse is not finite"
        )));
    }

    let first: Vec<DMatrix<f64>> = (0..d)
        .map(|a| DMatrix::from_fn(n, n, |r, c| entries[r * n + c].grad[a]))
        .collect();
    // B (∂_a A) B, reused by both derivative orders.
    let sandwiched: Vec<DMatrix<f64>> = first.iter().map(|da| &inv * da * &inv).collect();

    let mut grads = vec![vec![0.0; d]; n * n];
    let mut hess = vec![vec![0.0; d * d]; n * n];
    for a in 0..d {
        for (idx, g) in grads.iter_mut().enumerate() {
            g[a] = -sandwiched[a][(idx / n, idx % n)];
        }
        for b in a..d {
            let dab = DMatrix::from_fn(n, n, |r, c| entries[r * n + c].hess[a * d + b]);
            let second = &sandwiched[a] * &first[b] * &inv + &sandwiched[b] * &first[a] * &inv
                - &inv * dab * &inv;
            for (idx, h) in hess.iter_mut().enumerate() {
                let v = second[(idx / n, idx % n)];
                h[a * d + b] = v;
                h[b * d + a] = v;
            }
        }
    }

    Ok((0..n * n)
        .map(|idx| Jet {
            value: inv[(idx / n, idx % n)],
            grad: std::mem::take(&mut grads[idx]),
            hess: std::mem::take(&mut hess[idx]),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(x: f64, y: f64) -> (Jet, Jet) {
        (Jet::variable(2, 0, x), Jet::variable(2, 1, y))
    }

    #[test]
    fn product_rule_on_x_squared_y() {
        let (x, y) = xy(1.0, 2.0);
        let f = x.mul(&x).mul(&y);
        assert_eq!(f.value(), 2.0);
        assert_eq!(f.gradient(), &[4.0, 1.0]);
        assert_eq!(f.hessian(0, 0), 4.0);
        assert_eq!(f.hessian(0, 1), 2.0);
        assert_eq!(f.hessian(1, 0), 2.0);
        assert_eq!(f.hessian(1, 1), 0.0);
    }

    #[test]
    fn sqrt_and_recip_rules() {
        let (x, _) = xy(4.0, 0.0);
        let r = x.sqrt().unwrap();
        assert_eq!(r.value(), 2.0);
        assert!((r.partial(0) - 0.25).abs() < 1e-15);
        assert!((r.hessian(0, 0) + 1.0 / 32.0).abs() < 1e-15);

        let inv = x.recip().unwrap();
        assert!((inv.partial(0) + 1.0 / 16.0).abs() < 1e-15);
        assert!((inv.hessian(0, 0) - 2.0 / 64.0).abs() < 1e-15);

        assert!(Jet::constant(1, -1.0).sqrt().is_err());
        assert!(Jet::constant(1, 0.0).recip().is_err());
    }

    #[test]
    fn inverse_of_one_by_one_matches_reciprocal() {
        let (x, y) = xy(1.5, -0.5);
        let a = x.mul(&x).add(&y.mul(&y)).add(&Jet::constant(2, 1.0));
        let via_matrix = inverse_jets(std::slice::from_ref(&a), 1).unwrap();
        let via_recip = a.recip().unwrap();
        for (p, q) in via_matrix[0].gradient().iter().zip(via_recip.gradient()) {
            assert!((p - q).abs() < 1e-14);
        }
        for i in 0..2 {
            for j in 0..2 {
                assert!((via_matrix[0].hessian(i, j) - via_recip.hessian(i, j)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn singular_inverse_is_an_error() {
        let zero = Jet::constant(1, 0.0);
        let entries = vec![zero.clone(), zero.clone(), zero.clone(), zero];
        assert!(matches!(
            inverse_jets(&entries, 2),
            Err(GeometryError::Singular(_))
        ));
    }
}
