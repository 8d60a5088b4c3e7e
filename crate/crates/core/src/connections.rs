//! Affine connections given by Christoffel fields `Γ^k_ij`, with
//! `∇_{∂_i} ∂_j = Γ^k_ij ∂_k`.
//!
//! Besides the Levi-Civita connection, two semi-symmetric connections built
//! from an S-structure are provided:
//!
//! * metric: `∇*_X Y = ∇_X Y + Σ_α η^α(Y) X − Σ_α g(X,Y) ξ_α`;
//! * non-metric: `∇̃_X Y = ∇_X Y + Σ_α η^α(Y) X`.
//!
//! Both have torsion `T(X,Y) = Σ_α (η^α(Y) X − η^α(X) Y)`.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::check::worst;
use crate::diffcore::{Chart, Evaluator, Point, ScalarField};
use crate::error::{GeometryError, Result};
use crate::fstructure::MetricFStructure;
use crate::tensorfield::{lie_bracket, MetricField, TangentVector, VectorField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnectionKind {
    Riemannian,
    SemiSymmetricMetric,
    SemiSymmetricNonMetric,
}

impl ConnectionKind {
    /// Short tag used in reports and on the command line.
    pub fn tag(self) -> &'static str {
        match self {
            Self::Riemannian => "riemannian",
            Self::SemiSymmetricMetric => "ssm",
            Self::SemiSymmetricNonMetric => "ssnm",
        }
    }

    pub fn is_metric(self) -> bool {
        !matches!(self, Self::SemiSymmetricNonMetric)
    }
}

impl fmt::Display for ConnectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug)]
pub struct AffineConnection {
    chart: Chart,
    gamma: Vec<ScalarField>,
    kind: ConnectionKind,
}

/// Christoffel values and first derivatives at a point.
#[derive(Clone, Debug)]
pub struct ConnectionAt {
    dim: usize,
    gamma: Vec<f64>,
    dgamma: Vec<f64>,
}

impl ConnectionAt {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `Γ^k_ij`.
    pub fn gamma(&self, k: usize, i: usize, j: usize) -> f64 {
        let d = self.dim;
        self.gamma[(k * d + i) * d + j]
    }

    /// `∂_m Γ^k_ij`.
    pub fn dgamma(&self, m: usize, k: usize, i: usize, j: usize) -> f64 {
        let d = self.dim;
        self.dgamma[((k * d + i) * d + j) * d + m]
    }

    /// `(∇_u v)^k` for constant-coefficient `u`, `v` at this point.
    pub fn apply(&self, u: &TangentVector, v: &TangentVector) -> TangentVector {
        let d = self.dim;
        DVector::from_fn(d, |k, _| {
            let mut s = 0.0;
            for i in 0..d {
                for j in 0..d {
                    s += self.gamma(k, i, j) * u[i] * v[j];
                }
            }
            s
        })
    }

    /// `T(u,v)^k = (Γ^k_ij − Γ^k_ji) u^i v^j`.
    pub fn torsion(&self, u: &TangentVector, v: &TangentVector) -> TangentVector {
        self.apply(u, v) - self.apply(v, u)
    }
}

fn idx3(d: usize, k: usize, i: usize, j: usize) -> usize {
    (k * d + i) * d + j
}

impl AffineConnection {
    /// Connection from Christoffel fields indexed `[(k * dim + i) * dim + j]`.
    pub fn from_christoffel(chart: &Chart, gamma: Vec<ScalarField>, kind: ConnectionKind) -> Result<Self> {
        let d = chart.dim();
        if gamma.len() != d * d * d {
            return Err(GeometryError::DimensionMismatch(format!(
                "{} Christoffel fields for dimension {d}",
                gamma.len()
            )));
        }
        for g in &gamma {
            chart.ensure_same(g.chart(), "christoffel field")?;
        }
        Ok(Self {
            chart: chart.clone(),
            gamma,
            kind,
        })
    }

    /// `Γ^k_ij = ½ g^{kl} (∂_i g_jl + ∂_j g_il − ∂_l g_ij)`.
    pub fn levi_civita(g: &MetricField) -> Result<Self> {
        let chart = g.chart().clone();
        let d = chart.dim();
        let dg = g.partials()?;
        let dgc = |m: usize, i: usize, j: usize| &dg[m][i * d + j];
        // Christoffel symbols of the first kind, [ij, l].
        let mut first = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    let v = &(dgc(i, j, l) + dgc(j, i, l)) - dgc(l, i, j);
                    first.push(v.scale(0.5));
                }
            }
        }
        let mut gamma = Vec::with_capacity(d * d * d);
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    let terms = (0..d)
                        .filter(|&l| !first[(i * d + j) * d + l].is_zero())
                        .map(|l| g.inverse_component(k, l) * &first[(i * d + j) * d + l]);
                    gamma.push(ScalarField::sum(&chart, terms)?);
                }
            }
        }
        Ok(Self {
            chart,
            gamma,
            kind: ConnectionKind::Riemannian,
        })
    }

    /// `Γ*^k_ij = Γ^k_ij + Σ_α η^α_j δ^k_i − Σ_α g_ij ξ^k_α`.
    pub fn semi_symmetric_metric(s: &MetricFStructure, lc: &AffineConnection) -> Result<Self> {
        let base = Self::semi_symmetric_non_metric(s, lc)?;
        let chart = base.chart.clone();
        let d = chart.dim();
        let xi_sum = sum_xi(s)?;
        let mut gamma = base.gamma;
        for k in 0..d {
            if xi_sum[k].is_zero() {
                continue;
            }
            for i in 0..d {
                for j in 0..d {
                    let corr = s.g().component(i, j) * &xi_sum[k];
                    let entry = &mut gamma[idx3(d, k, i, j)];
                    *entry = &*entry - &corr;
                }
            }
        }
        Ok(Self {
            chart,
            gamma,
            kind: ConnectionKind::SemiSymmetricMetric,
        })
    }

    /// `Γ̃^k_ij = Γ^k_ij + Σ_α η^α_j δ^k_i`.
    pub fn semi_symmetric_non_metric(s: &MetricFStructure, lc: &AffineConnection) -> Result<Self> {
        lc.chart.ensure_same(s.chart(), "semi-symmetric connection")?;
        let chart = lc.chart.clone();
        let d = chart.dim();
        let eta_sum = sum_eta(s)?;
        let mut gamma = lc.gamma.clone();
        for i in 0..d {
            for j in 0..d {
                let entry = &mut gamma[idx3(d, i, i, j)];
                *entry = &*entry + &eta_sum[j];
            }
        }
        Ok(Self {
            chart,
            gamma,
            kind: ConnectionKind::SemiSymmetricNonMetric,
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn kind(&self) -> ConnectionKind {
        self.kind
    }

    pub fn christoffel(&self, k: usize, i: usize, j: usize) -> &ScalarField {
        &self.gamma[idx3(self.chart.dim(), k, i, j)]
    }

    pub fn at(&self, p: &Point) -> Result<ConnectionAt> {
        self.at_with(&mut Evaluator::new(p))
    }

    pub fn at_with(&self, ev: &mut Evaluator) -> Result<ConnectionAt> {
        let d = self.chart.dim();
        let jets = ev.eval_all(&self.gamma)?;
        let mut gamma = Vec::with_capacity(jets.len());
        let mut dgamma = Vec::with_capacity(jets.len() * d);
        for j in &jets {
            gamma.push(j.value());
            dgamma.extend_from_slice(j.gradient());
        }
        Ok(ConnectionAt { dim: d, gamma, dgamma })
    }

    /// `(∇_X Y)^k = X^i ∂_i Y^k + Γ^k_ij X^i Y^j`.
    pub fn covariant_derivative(&self, x: &VectorField, y: &VectorField) -> Result<VectorField> {
        self.chart.ensure_same(x.chart(), "covariant derivative")?;
        self.chart.ensure_same(y.chart(), "covariant derivative")?;
        let d = self.chart.dim();
        let components = (0..d)
            .map(|k| {
                let mut terms = vec![x.derivative_of(y.component(k))?];
                for i in 0..d {
                    if x.component(i).is_zero() {
                        continue;
                    }
                    for j in 0..d {
                        let gk = self.christoffel(k, i, j);
                        if y.component(j).is_zero() || gk.is_zero() {
                            continue;
                        }
                        terms.push(&(gk * x.component(i)) * y.component(j));
                    }
                }
                ScalarField::sum(&self.chart, terms)
            })
            .collect::<Result<_>>()?;
        VectorField::new(&self.chart, components)
    }

    /// `T(X,Y) = ∇_X Y − ∇_Y X − [X,Y]` at `p`.
    pub fn torsion(&self, x: &VectorField, y: &VectorField, p: &Point) -> Result<TangentVector> {
        let t = self
            .covariant_derivative(x, y)?
            .sub(&self.covariant_derivative(y, x)?)?
            .sub(&lie_bracket(x, y)?)?;
        t.at(p)
    }

    /// Largest `|X g(Y,Z) − g(∇_X Y, Z) − g(Y, ∇_X Z)|` over coordinate
    /// triples and points.
    pub fn metric_compat_residual(&self, g: &MetricField, points: &[Point]) -> Result<f64> {
        let mut res = 0.0f64;
        for p in points {
            res = worst(res, self.nonmetricity_at(g, p)?.iter().fold(0.0, |a: f64, v| worst(a, v.abs())));
        }
        Ok(res)
    }

    /// `(∇_i g)_jk = ∂_i g_jk − Γ^l_ij g_lk − Γ^l_ik g_jl`, indexed
    /// `[(i * dim + j) * dim + k]`.
    pub fn nonmetricity_at(&self, g: &MetricField, p: &Point) -> Result<Vec<f64>> {
        self.chart.ensure_same(g.chart(), "non-metricity")?;
        let d = self.chart.dim();
        let mut ev = Evaluator::new(p);
        let gj = ev.eval_all(g.components())?;
        let c = self.at_with(&mut ev)?;
        let gv = DMatrix::from_fn(d, d, |i, j| gj[i * d + j].value());
        let mut out = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut v = gj[j * d + k].partial(i);
                    for l in 0..d {
                        v -= c.gamma(l, i, j) * gv[(l, k)] + c.gamma(l, i, k) * gv[(j, l)];
                    }
                    out.push(v);
                }
            }
        }
        Ok(out)
    }
}

fn sum_eta(s: &MetricFStructure) -> Result<Vec<ScalarField>> {
    let chart = s.chart();
    (0..chart.dim())
        .map(|j| ScalarField::sum(chart, s.eta().iter().map(|e| e.component(j).clone())))
        .collect()
}

fn sum_xi(s: &MetricFStructure) -> Result<Vec<ScalarField>> {
    let chart = s.chart();
    (0..chart.dim())
        .map(|k| ScalarField::sum(chart, s.xi().iter().map(|x| x.component(k).clone())))
        .collect()
}

/// `Σ_α (η^α(v) u − η^α(u) v)`, the torsion shared by both semi-symmetric
/// connections.
pub fn semi_symmetric_torsion(eta: &[DVector<f64>], u: &TangentVector, v: &TangentVector) -> TangentVector {
    let mut t = DVector::zeros(u.len());
    for e in eta {
        t += u * e.dot(v) - v * e.dot(u);
    }
    t
}
