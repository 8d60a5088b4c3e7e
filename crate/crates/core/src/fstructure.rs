//! Metric f-structures `(f, ξ_α, η^α, g)`, the axioms they satisfy, normality,
//! the S-manifold condition and f-bases.

use nalgebra::{DMatrix, DVector};

use crate::check::{worst, Check, ValidationReport};
use crate::diffcore::{Chart, Evaluator, Point, ScalarField};
use crate::error::{GeometryError, Result};
use crate::tensorfield::{
    exterior_d_at, nijenhuis_coordinate_at, pair_at, EndomorphismField, MetricField, OneForm,
    TangentVector, TwoForm, VectorField,
};

const STRUCTURE: &str = "structure";

/// Projections of the coordinate frame below this norm are skipped when
/// seeding an f-basis.
const SEED_MIN_NORM: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct MetricFStructure {
    chart: Chart,
    s: usize,
    n: usize,
    f: EndomorphismField,
    xi: Vec<VectorField>,
    eta: Vec<OneForm>,
    g: MetricField,
}

/// All structure tensors evaluated at one point.
#[derive(Clone, Debug)]
pub struct StructureAt {
    pub g: DMatrix<f64>,
    pub f: DMatrix<f64>,
    pub xi: Vec<TangentVector>,
    pub eta: Vec<DVector<f64>>,
}

impl StructureAt {
    pub fn pair(&self, u: &TangentVector, v: &TangentVector) -> f64 {
        pair_at(&self.g, u, v)
    }

    pub fn norm(&self, u: &TangentVector) -> f64 {
        self.pair(u, u).max(0.0).sqrt()
    }

    /// Component of `v` in 𝓛: `v − Σ_α η^α(v) ξ_α`.
    pub fn project_l(&self, v: &TangentVector) -> TangentVector {
        let mut out = v.clone();
        for (eta, xi) in self.eta.iter().zip(&self.xi) {
            out -= xi * eta.dot(v);
        }
        out
    }

    pub fn apply_f(&self, v: &TangentVector) -> TangentVector {
        &self.f * v
    }

    /// `Φ(u,v) = g(u, f v)`.
    pub fn phi(&self, u: &TangentVector, v: &TangentVector) -> f64 {
        self.pair(u, &self.apply_f(v))
    }

    /// `Σ_α ξ_α ⊗ η^α` as a matrix, i.e. `X ↦ Σ η^α(X) ξ_α`.
    pub fn eta_xi(&self) -> DMatrix<f64> {
        let d = self.g.nrows();
        let mut m = DMatrix::zeros(d, d);
        for (eta, xi) in self.eta.iter().zip(&self.xi) {
            m += xi * eta.transpose();
        }
        m
    }
}

impl MetricFStructure {
    pub fn new(
        chart: &Chart,
        f: EndomorphismField,
        xi: Vec<VectorField>,
        eta: Vec<OneForm>,
        g: MetricField,
    ) -> Result<Self> {
        let s = xi.len();
        if s == 0 || eta.len() != s {
            return Err(GeometryError::DimensionMismatch(format!(
                "{} structure vector fields and {} one-forms",
                s,
                eta.len()
            )));
        }
        let dim = chart.dim();
        if dim <= s || !(dim - s).is_multiple_of(2) {
            return Err(GeometryError::DimensionMismatch(format!(
                "chart dimension {dim} minus structure count {s} must be even and positive"
            )));
        }
        chart.ensure_same(f.chart(), "structure tensor f")?;
        chart.ensure_same(g.chart(), "structure metric")?;
        for x in &xi {
            chart.ensure_same(x.chart(), "structure vector field")?;
        }
        for e in &eta {
            chart.ensure_same(e.chart(), "structure one-form")?;
        }
        Ok(Self {
            chart: chart.clone(),
            s,
            n: (dim - s) / 2,
            f,
            xi,
            eta,
            g,
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    /// Number of structure vector fields.
    pub fn s(&self) -> usize {
        self.s
    }

    /// Half the rank of `f`; `dim = 2n + s`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn f(&self) -> &EndomorphismField {
        &self.f
    }

    pub fn xi(&self) -> &[VectorField] {
        &self.xi
    }

    pub fn eta(&self) -> &[OneForm] {
        &self.eta
    }

    pub fn g(&self) -> &MetricField {
        &self.g
    }

    /// Same structure with `ξ_α`, `η^α` replaced (used to build deliberately
    /// broken variants in tests and by the deformation of examples).
    pub fn with_parts(
        &self,
        f: EndomorphismField,
        xi: Vec<VectorField>,
        eta: Vec<OneForm>,
        g: MetricField,
    ) -> Result<Self> {
        Self::new(&self.chart, f, xi, eta, g)
    }

    pub fn at(&self, p: &Point) -> Result<StructureAt> {
        let mut ev = Evaluator::new(p);
        self.at_with(&mut ev)
    }

    pub fn at_with(&self, ev: &mut Evaluator) -> Result<StructureAt> {
        Ok(StructureAt {
            g: self.g.at_with(ev)?,
            f: self.f.at_with(ev)?,
            xi: self
                .xi
                .iter()
                .map(|x| x.at_with(ev))
                .collect::<Result<_>>()?,
            eta: self
                .eta
                .iter()
                .map(|e| e.at_with(ev))
                .collect::<Result<_>>()?,
        })
    }

    /// `Φ_ij = Σ_k g_ik f^k_j`, i.e. `Φ(X,Y) = g(X, fY)`.
    pub fn fundamental_form(&self) -> Result<TwoForm> {
        let d = self.chart.dim();
        let components = (0..d * d)
            .map(|idx| {
                let (i, j) = (idx / d, idx % d);
                ScalarField::sum(
                    &self.chart,
                    (0..d).map(|k| self.g.component(i, k) * self.f.component(k, j)),
                )
            })
            .collect::<Result<_>>()?;
        TwoForm::new(&self.chart, components)
    }

    /// Residuals of the metric f-structure axioms at each point, maximised over
    /// all coordinate-field arguments.
    pub fn validate_axioms(&self, points: &[Point], tol: f64) -> Result<ValidationReport> {
        let d = self.chart.dim();
        let id = DMatrix::<f64>::identity(d, d);
        let mut r = [0.0f64; 8];
        for p in points {
            let st = self.at(p)?;
            let exi = st.eta_xi();
            let f2 = &st.f * &st.f;
            r[0] = worst(r[0], (&f2 + &id - &exi).amax());
            for (a, eta) in st.eta.iter().enumerate() {
                for (b, xi) in st.xi.iter().enumerate() {
                    let delta = if a == b { 1.0 } else { 0.0 };
                    r[1] = worst(r[1], (eta.dot(xi) - delta).abs());
                }
                r[3] = worst(r[3], (st.f.transpose() * eta).amax());
            }
            for xi in &st.xi {
                r[2] = worst(r[2], (&st.f * xi).amax());
            }
            let mut eta_eta = DMatrix::zeros(d, d);
            for eta in &st.eta {
                eta_eta += eta * eta.transpose();
            }
            let compat = st.f.transpose() * &st.g * &st.f - &st.g + eta_eta;
            r[4] = worst(r[4], compat.amax());
            for (eta, xi) in st.eta.iter().zip(&st.xi) {
                r[5] = worst(r[5], (eta - &st.g * xi).amax());
            }
            r[6] = worst(r[6], (&st.g * &st.f + st.f.transpose() * &st.g).amax());
            r[7] = worst(r[7], (&f2 * &st.f + &st.f).amax());
        }
        let names: [(&str, &str); 8] = [
            ("f_squared", "f^2=-I+sum_a eta^a(x)xi_a"),
            ("eta_xi_duality", "eta^a(xi_b)=delta_ab"),
            ("f_xi_zero", "f xi_a=0"),
            ("eta_f_zero", "eta^a o f=0"),
            ("metric_compatibility", "g(fX,fY)=g(X,Y)-sum_a eta^a(X)eta^a(Y)"),
            ("eta_is_g_xi", "eta^a(X)=g(X,xi_a)"),
            ("f_skew", "g(X,fY)=-g(fX,Y)"),
            ("f_cubed_plus_f", "f^3+f=0"),
        ];
        Ok(ValidationReport {
            checks: names
                .iter()
                .zip(r)
                .map(|((name, anchor), res)| Check::below(*name, STRUCTURE, *anchor, res, tol))
                .collect(),
        })
    }

    /// Residual of `[f,f] + 2 Σ dη^α ⊗ ξ_α` on all coordinate pairs.
    pub fn check_normality(&self, points: &[Point], tol: f64) -> Result<ValidationReport> {
        let d = self.chart.dim();
        let mut res = 0.0f64;
        for p in points {
            let nij = nijenhuis_coordinate_at(&self.f, p)?;
            let deta = self
                .eta
                .iter()
                .map(|e| exterior_d_at(e, p))
                .collect::<Result<Vec<_>>>()?;
            let xi = self
                .xi
                .iter()
                .map(|x| x.at(p))
                .collect::<Result<Vec<_>>>()?;
            for a in 0..d {
                for b in (a + 1)..d {
                    let mut v = nij[a * d + b].clone();
                    for (de, x) in deta.iter().zip(&xi) {
                        v += x * (2.0 * de[(a, b)]);
                    }
                    res = worst(res, v.amax());
                }
            }
        }
        Ok(ValidationReport {
            checks: vec![Check::below(
                "normality",
                STRUCTURE,
                "[f,f]+2 sum_a d eta^a (x) xi_a=0",
                res,
                tol,
            )],
        })
    }

    /// `dη^α = Φ` for every α, plus the frame-rank surrogate for the
    /// non-degeneracy of `η¹∧…∧η^s∧(dη^α)^n`: the f-basis at each point must be
    /// orthonormal (hence a basis).
    pub fn check_s_manifold(&self, points: &[Point], tol: f64) -> Result<ValidationReport> {
        let phi = self.fundamental_form()?;
        let mut res = 0.0f64;
        let mut gram_dev = 0.0f64;
        let mut min_sv = f64::INFINITY;
        for p in points {
            let phi_p = phi.at(p)?;
            for e in &self.eta {
                res = worst(res, (exterior_d_at(e, p)? - &phi_p).amax());
            }
            let st = self.at(p)?;
            let frame = match self.f_basis_unchecked(&st) {
                Ok(frame) => frame,
                Err(_) => {
                    min_sv = 0.0;
                    continue;
                }
            };
            let m = frame_matrix(&frame);
            let gram = m.transpose() * &st.g * &m;
            let d = gram.nrows();
            gram_dev = worst(gram_dev, (gram - DMatrix::identity(d, d)).amax());
            let sv = m.singular_values().min();
            min_sv = if sv.is_nan() { f64::NAN } else { min_sv.min(sv) };
        }
        Ok(ValidationReport {
            checks: vec![
                Check::below("d_eta_equals_phi", STRUCTURE, "Phi=d eta^a", res, tol),
                Check::below(
                    "f_basis_orthonormal",
                    STRUCTURE,
                    "f-basis {E_i, fE_i, xi_a} orthonormal",
                    gram_dev,
                    tol,
                ),
                Check::above(
                    "f_basis_rank",
                    STRUCTURE,
                    "eta^1^...^eta^s^(d eta)^n != 0 (frame rank surrogate)",
                    min_sv,
                    1e-6,
                ),
            ],
        })
    }

    /// Ordered orthonormal basis `{E_1..E_n, fE_1..fE_n, ξ_1..ξ_s}` at `p`.
    ///
    /// Seeds are the coordinate fields `∂_1, ∂_2, …` in chart order, projected
    /// onto 𝓛 and orthogonalised against the vectors chosen so far.
    pub fn f_basis(&self, p: &Point, tol: f64) -> Result<Vec<TangentVector>> {
        let st = self.at(p)?;
        let frame = self.f_basis_unchecked(&st)?;
        let d = self.chart.dim();
        let m = frame_matrix(&frame);
        let dev = (m.transpose() * &st.g * &m - DMatrix::identity(d, d)).amax();
        if !(dev < tol) {
            return Err(GeometryError::DegenerateBasis(format!(
                "frame deviates from orthonormal by {dev:e}"
            )));
        }
        Ok(frame)
    }

    fn f_basis_unchecked(&self, st: &StructureAt) -> Result<Vec<TangentVector>> {
        let d = self.chart.dim();
        let mut es: Vec<TangentVector> = Vec::with_capacity(self.n);
        let mut fes: Vec<TangentVector> = Vec::with_capacity(self.n);
        for i in 0..d {
            if es.len() == self.n {
                break;
            }
            let seed = DVector::from_fn(d, |k, _| if k == i { 1.0 } else { 0.0 });
            let mut v = st.project_l(&seed);
            for u in es.iter().chain(&fes) {
                v -= u * st.pair(u, &v);
            }
            // re-orthogonalise once to clean round-off
            for u in es.iter().chain(&fes) {
                v -= u * st.pair(u, &v);
            }
            let norm = st.norm(&v);
            if norm < SEED_MIN_NORM {
                continue;
            }
            let e = v / norm;
            let fe = st.apply_f(&e);
            es.push(e);
            fes.push(fe);
        }
        if es.len() < self.n {
            return Err(GeometryError::DegenerateBasis(format!(
                "found {} of {} vectors in L",
                es.len(),
                self.n
            )));
        }
        let mut frame: Vec<TangentVector> = es;
        frame.extend(fes);
        frame.extend(st.xi.iter().cloned());
        Ok(frame)
    }
}

/// Columns are the frame vectors.
pub fn frame_matrix(frame: &[TangentVector]) -> DMatrix<f64> {
    DMatrix::from_columns(frame)
}
