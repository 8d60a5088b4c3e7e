//! Concrete S-manifolds.
//!
//! * [`flat_example`]: the standard S-structure on ℝ^{2m+t} with coordinates
//!   `(x_1..x_m, y_1..y_m, z_1..z_t)`, constant f-sectional curvature `−3t`.
//! * [`sphere_example`]: `S^{2n+1}(2) × ℝ^{s−1}` inside the flat structure on
//!   ℝ^{2n+2+(s−1)}, with the extra structure field `ξ_s` and the deformation
//!   `ξ̃ = sξ`, `η̃ = η/s`, `g̃ = g/s + (1−s)/s² Σ η^α⊗η^α`, which has constant
//!   f-sectional curvature `s`.
//!
//! The hypersurface uses the graph chart
//! `x_{n+1} = +√(4 − Σ_{i≤n}(x_i² + y_i²) − y_{n+1}²)` on the patch where the
//! radicand exceeds [`SPHERE_PATCH_MIN_RADICAND`].

use nalgebra::DVector;
use rand::Rng;

use crate::check::worst;
use crate::diffcore::{Chart, Evaluator, Point, ScalarField};
use crate::error::{GeometryError, Result};
use crate::fstructure::MetricFStructure;
use crate::tensorfield::{EndomorphismField, MetricField, OneForm, VectorField};

pub const SPHERE_PATCH_MIN_RADICAND: f64 = 0.25;

/// Sphere-chart coordinates are sampled in `(−SPHERE_SAMPLE_HALF_WIDTH, +…)`.
pub const SPHERE_SAMPLE_HALF_WIDTH: f64 = 0.5;

/// Tangency residual allowed when pulling structure fields back.
pub const TANGENCY_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleTag {
    Flat { m: usize, t: usize },
    Sphere { n: usize, s: usize },
}

impl ExampleTag {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Flat { .. } => "flat",
            Self::Sphere { .. } => "sphere",
        }
    }

    pub fn build(&self) -> Result<NamedExample> {
        match *self {
            Self::Flat { m, t } => flat_example(m, t),
            Self::Sphere { n, s } => sphere_example(n, s),
        }
    }
}

impl std::fmt::Display for ExampleTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Flat { m, t } => write!(f, "flat:{m},{t}"),
            Self::Sphere { n, s } => write!(f, "sphere:{n},{s}"),
        }
    }
}

/// Closed-form values expected for an S-space-form `M(c)` of dimension
/// `2n + s`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpectedConstants {
    pub n: usize,
    pub s: usize,
    /// Constant f-sectional curvature of the Riemannian connection.
    pub c: f64,
}

impl ExpectedConstants {
    fn nf(&self) -> f64 {
        self.n as f64
    }

    fn sf(&self) -> f64 {
        self.s as f64
    }

    /// `τ = n(n−1)(c+3s)/2 + n(c+2s)`.
    pub fn tau(&self) -> f64 {
        let (n, s, c) = (self.nf(), self.sf(), self.c);
        n * (n - 1.0) * (c + 3.0 * s) / 2.0 + n * (c + 2.0 * s)
    }

    /// `τ* = (n(n+1)(c−s) + (4ns + s(s−1))(2−s)) / 2`.
    pub fn tau_star(&self) -> f64 {
        let (n, s, c) = (self.nf(), self.sf(), self.c);
        (n * (n + 1.0) * (c - s) + (4.0 * n * s + s * (s - 1.0)) * (2.0 - s)) / 2.0
    }

    /// `τ̃ = (n(n+1)(c+3s) + s(s−1)) / 2`.
    pub fn tau_tilde(&self) -> f64 {
        let (n, s, c) = (self.nf(), self.sf(), self.c);
        (n * (n + 1.0) * (c + 3.0 * s) + s * (s - 1.0)) / 2.0
    }

    /// `K_𝓛` is constant exactly when `c = s` (or trivially when `n = 1`).
    pub fn kl_constant(&self) -> Option<f64> {
        if self.n == 1 {
            Some(self.c)
        } else if (self.c - self.sf()).abs() < 1e-12 {
            Some(self.sf())
        } else {
            None
        }
    }
}

/// A ready-to-check S-manifold with its expected constants.
#[derive(Clone, Debug)]
pub struct NamedExample {
    pub tag: ExampleTag,
    pub structure: MetricFStructure,
    pub expected: ExpectedConstants,
    /// Present for pulled-back examples.
    pub embedding: Option<Embedding>,
    /// Ambient components of each `ξ_α`, as fields on the chart.
    ambient_xi: Vec<Vec<ScalarField>>,
}

impl NamedExample {
    pub fn chart(&self) -> &Chart {
        self.structure.chart()
    }

    /// A chart point, rejected if it leaves the example's coordinate patch.
    pub fn point(&self, coords: Vec<f64>) -> Result<Point> {
        let p = self.chart().point(coords)?;
        if let ExampleTag::Sphere { n, .. } = self.tag {
            let r = sphere_radicand(n, p.coords());
            if !(r > SPHERE_PATCH_MIN_RADICAND) {
                return Err(GeometryError::Domain(format!(
                    "chart point outside the sphere patch (radicand {r})"
                )));
            }
        }
        Ok(p)
    }

    /// Uniform samples from the example's sampling box.
    pub fn sample_points<R: Rng>(&self, rng: &mut R, count: usize) -> Result<Vec<Point>> {
        let d = self.chart().dim();
        (0..count)
            .map(|_| {
                let coords = match self.tag {
                    ExampleTag::Flat { .. } => (0..d).map(|_| rng.random_range(-1.0..1.0)).collect(),
                    ExampleTag::Sphere { n, .. } => (0..d)
                        .map(|i| {
                            if i < 2 * n + 1 {
                                rng.random_range(-SPHERE_SAMPLE_HALF_WIDTH..SPHERE_SAMPLE_HALF_WIDTH)
                            } else {
                                rng.random_range(-1.0..1.0)
                            }
                        })
                        .collect(),
                };
                self.point(coords)
            })
            .collect()
    }

    /// Largest `|J ξ_pulled − ξ_ambient|` over the points (zero for examples
    /// that are not pulled back).
    pub fn tangency_residual(&self, points: &[Point]) -> Result<f64> {
        let Some(e) = &self.embedding else {
            return Ok(0.0);
        };
        let mut res = 0.0f64;
        for p in points {
            let mut ev = Evaluator::new(p);
            let jac = e.jacobian_with(&mut ev)?;
            for (pulled, ambient) in self.structure.xi().iter().zip(&self.ambient_xi) {
                let v = pulled.at_with(&mut ev)?;
                let target = DVector::from_vec(ev.values(ambient)?);
                res = worst(res, (&jac * v - target).amax());
            }
        }
        Ok(res)
    }
}

fn sphere_radicand(n: usize, u: &[f64]) -> f64 {
    // chart order: x_1..x_n, y_1..y_{n+1}, z_…
    4.0 - u[..2 * n + 1].iter().map(|v| v * v).sum::<f64>()
}

struct FlatParts {
    chart: Chart,
    f: EndomorphismField,
    xi: Vec<VectorField>,
    eta: Vec<OneForm>,
    g: MetricField,
}

fn flat_parts(m: usize, t: usize) -> Result<FlatParts> {
    let names = (1..=m)
        .map(|i| format!("x{i}"))
        .chain((1..=m).map(|i| format!("y{i}")))
        .chain((1..=t).map(|a| format!("z{a}")));
    let chart = Chart::new(names)?;
    let d = 2 * m + t;
    let zero = ScalarField::zero(&chart);
    let y = |i: usize| ScalarField::coordinate(&chart, m + i);

    // η^α = ½(dz_α − Σ_i y_i dx_i)
    let eta = (0..t)
        .map(|a| {
            let mut c = vec![zero.clone(); d];
            for (i, ci) in c.iter_mut().take(m).enumerate() {
                *ci = y(i)?.scale(-0.5);
            }
            c[2 * m + a] = ScalarField::constant(&chart, 0.5);
            OneForm::new(&chart, c)
        })
        .collect::<Result<Vec<_>>>()?;

    // ξ_α = 2 ∂/∂z_α
    let xi = (0..t)
        .map(|a| {
            let mut c = vec![0.0; d];
            c[2 * m + a] = 2.0;
            VectorField::constant(&chart, &c)
        })
        .collect::<Vec<_>>();

    // f ∂x_i = −∂y_i, f ∂y_i = ∂x_i + y_i Σ_α ∂z_α
    let mut f = vec![zero.clone(); d * d];
    for i in 0..m {
        f[(m + i) * d + i] = ScalarField::constant(&chart, -1.0);
        f[i * d + (m + i)] = ScalarField::constant(&chart, 1.0);
        for a in 0..t {
            f[(2 * m + a) * d + (m + i)] = y(i)?;
        }
    }
    let f = EndomorphismField::new(&chart, f)?;

    // g = Σ_α η^α ⊗ η^α + ¼ Σ_i (dx_i² + dy_i²)
    let mut g = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let mut terms: Vec<ScalarField> = eta
                .iter()
                .map(|e| e.component(i) * e.component(j))
                .collect();
            if i == j && i < 2 * m {
                terms.push(ScalarField::constant(&chart, 0.25));
            }
            g.push(ScalarField::sum(&chart, terms)?);
        }
    }
    let g = MetricField::new(&chart, g)?;
    Ok(FlatParts { chart, f, xi, eta, g })
}

/// The standard S-structure on ℝ^{2m+t}.
pub fn flat_example(m: usize, t: usize) -> Result<NamedExample> {
    if m == 0 || t == 0 {
        return Err(GeometryError::InvalidConfig(format!(
            "flat example needs m ≥ 1 and t ≥ 1, got m={m}, t={t}"
        )));
    }
    let parts = flat_parts(m, t)?;
    let xi = parts.xi.iter().map(|x| x.components().to_vec()).collect();
    let structure = MetricFStructure::new(&parts.chart, parts.f, parts.xi, parts.eta, parts.g)?;
    Ok(NamedExample {
        tag: ExampleTag::Flat { m, t },
        structure,
        expected: ExpectedConstants {
            n: m,
            s: t,
            c: -3.0 * t as f64,
        },
        embedding: None,
        ambient_xi: xi,
    })
}

/// An immersion of a domain chart into an ambient chart.
#[derive(Clone, Debug)]
pub struct Embedding {
    domain: Chart,
    ambient: Chart,
    components: Vec<ScalarField>,
    /// `J_ai = ∂_i e_a`, row-major `ambient × domain`.
    jacobian: Vec<ScalarField>,
}

impl Embedding {
    pub fn new(domain: &Chart, ambient: &Chart, components: Vec<ScalarField>) -> Result<Self> {
        if components.len() != ambient.dim() || ambient.dim() < domain.dim() {
            return Err(GeometryError::DimensionMismatch(format!(
                "embedding of a {}-chart into a {}-chart with {} components",
                domain.dim(),
                ambient.dim(),
                components.len()
            )));
        }
        for c in &components {
            domain.ensure_same(c.chart(), "embedding component")?;
        }
        let d = domain.dim();
        let per_var = (0..d)
            .map(|i| ScalarField::partials(&components, i))
            .collect::<Result<Vec<_>>>()?;
        let jacobian = (0..ambient.dim() * d)
            .map(|idx| per_var[idx % d][idx / d].clone())
            .collect();
        Ok(Self {
            domain: domain.clone(),
            ambient: ambient.clone(),
            components,
            jacobian,
        })
    }

    pub fn identity(chart: &Chart) -> Result<Self> {
        let comps = (0..chart.dim())
            .map(|i| ScalarField::coordinate(chart, i))
            .collect::<Result<_>>()?;
        Self::new(chart, chart, comps)
    }

    pub fn domain(&self) -> &Chart {
        &self.domain
    }

    pub fn ambient(&self) -> &Chart {
        &self.ambient
    }

    pub fn components(&self) -> &[ScalarField] {
        &self.components
    }

    fn jac(&self, a: usize, i: usize) -> &ScalarField {
        &self.jacobian[a * self.domain.dim() + i]
    }

    pub fn jacobian_at(&self, p: &Point) -> Result<nalgebra::DMatrix<f64>> {
        self.jacobian_with(&mut Evaluator::new(p))
    }

    fn jacobian_with(&self, ev: &mut Evaluator) -> Result<nalgebra::DMatrix<f64>> {
        let (na, d) = (self.ambient.dim(), self.domain.dim());
        Ok(nalgebra::DMatrix::from_row_slice(na, d, &ev.values(&self.jacobian)?))
    }

    /// Smallest singular value of the Jacobian at `p`.
    pub fn min_singular_value(&self, p: &Point) -> Result<f64> {
        Ok(self.jacobian_at(p)?.singular_values().min())
    }
}

/// Ambient structure tensors to be restricted to a submanifold.
#[derive(Clone, Debug)]
pub struct AmbientStructure {
    pub f: EndomorphismField,
    pub xi: Vec<VectorField>,
    pub eta: Vec<OneForm>,
    pub g: MetricField,
}

/// Restricts an ambient structure to the image of `e`.
///
/// `g` and `η` are pulled back (`JᵀGJ`, `ηJ`). Vector-valued data is mapped to
/// chart components with the `G`-orthogonal tangential projector
/// `P = (JᵀGJ)⁻¹ JᵀG`: `ξ_pulled = P ξ`, `f_pulled = P F J`. For tangent `ξ`
/// this is the unique solution of `J ξ_pulled = ξ`. The ambient `f` does not
/// preserve the tangent space of a hypersurface (it maps the new structure
/// field onto the normal), so `f_pulled` is the tangential part of `F J`,
/// the usual induced structure.
pub fn pullback_structure(e: &Embedding, ambient: &AmbientStructure) -> Result<MetricFStructure> {
    let dom = e.domain.clone();
    let (na, d) = (e.ambient.dim(), dom.dim());
    let args = e.components.clone();
    let g_amb = ScalarField::compose_all(ambient.g.components(), &dom, &args)?;
    let f_amb = ScalarField::compose_all(ambient.f.components(), &dom, &args)?;
    let gv = |a: usize, b: usize| &g_amb[a * na + b];

    // (G J)_aj
    let gj = (0..na * d)
        .map(|idx| {
            let (a, j) = (idx / d, idx % d);
            ScalarField::sum(&dom, (0..na).map(|b| gv(a, b) * e.jac(b, j)))
        })
        .collect::<Result<Vec<_>>>()?;
    let g_pulled = (0..d * d)
        .map(|idx| {
            let (i, j) = (idx / d, idx % d);
            ScalarField::sum(&dom, (0..na).map(|a| e.jac(a, i) * &gj[a * d + j]))
        })
        .collect::<Result<Vec<_>>>()?;
    let metric = MetricField::new(&dom, g_pulled)?;

    // Jᵀ G w for an ambient vector w given by fields on the domain.
    let jt_g = |w: &[ScalarField]| -> Result<Vec<ScalarField>> {
        (0..d)
            .map(|i| ScalarField::sum(&dom, (0..na).map(|b| &gj[b * d + i] * &w[b])))
            .collect()
    };
    let project = |v: &[ScalarField]| -> Result<Vec<ScalarField>> {
        (0..d)
            .map(|k| ScalarField::sum(&dom, (0..d).map(|i| metric.inverse_component(k, i) * &v[i])))
            .collect()
    };

    let xi = ambient
        .xi
        .iter()
        .map(|x| {
            let w = ScalarField::compose_all(x.components(), &dom, &args)?;
            VectorField::new(&dom, project(&jt_g(&w)?)?)
        })
        .collect::<Result<Vec<_>>>()?;

    let eta = ambient
        .eta
        .iter()
        .map(|form| {
            let w = ScalarField::compose_all(form.components(), &dom, &args)?;
            let comps = (0..d)
                .map(|i| ScalarField::sum(&dom, (0..na).map(|a| &w[a] * e.jac(a, i))))
                .collect::<Result<Vec<_>>>()?;
            OneForm::new(&dom, comps)
        })
        .collect::<Result<Vec<_>>>()?;

    // f_pulled column j = P (F J e_j)
    let mut f_cols = Vec::with_capacity(d);
    for j in 0..d {
        let fj = (0..na)
            .map(|a| ScalarField::sum(&dom, (0..na).map(|b| &f_amb[a * na + b] * e.jac(b, j))))
            .collect::<Result<Vec<_>>>()?;
        f_cols.push(project(&jt_g(&fj)?)?);
    }
    let f_comps = (0..d * d).map(|idx| f_cols[idx % d][idx / d].clone()).collect();
    let f = EndomorphismField::new(&dom, f_comps)?;

    MetricFStructure::new(&dom, f, xi, eta, metric)
}

/// `S^{2n+1}(2) × ℝ^{s−1}` with its deformed S-structure of constant
/// f-sectional curvature `s`.
pub fn sphere_example(n: usize, s: usize) -> Result<NamedExample> {
    if n == 0 || s < 2 {
        return Err(GeometryError::InvalidConfig(format!(
            "sphere example needs n ≥ 1 and s ≥ 2, got n={n}, s={s}"
        )));
    }
    let (m, t) = (n + 1, s - 1);
    let amb = flat_parts(m, t)?;
    let ac = amb.chart.clone();
    let na = ac.dim();
    let coord = |i: usize| ScalarField::coordinate(&ac, i);

    // ξ_s = Σ_i (−y_i ∂x_i + x_i ∂y_i) − Σ_i y_i² Σ_α ∂z_α
    let mut xs = vec![ScalarField::zero(&ac); na];
    for i in 0..m {
        xs[i] = -coord(m + i)?;
        xs[m + i] = coord(i)?;
    }
    let y_sq = ScalarField::sum(&ac, (0..m).map(|i| coord(m + i).map(|y| &y * &y)).collect::<Result<Vec<_>>>()?)?;
    for a in 0..t {
        xs[2 * m + a] = -&y_sq;
    }
    let xi_s = VectorField::new(&ac, xs)?;
    let eta_s = amb.g.lower(&xi_s)?;

    let mut xi_all = amb.xi.clone();
    xi_all.push(xi_s);
    let mut eta_all = amb.eta.clone();
    eta_all.push(eta_s);

    // deformation, applied in the ambient space
    let sf = s as f64;
    let xi_def: Vec<VectorField> = xi_all.iter().map(|x| x.scale(sf)).collect();
    let eta_def: Vec<OneForm> = eta_all.iter().map(|e| e.scale(1.0 / sf)).collect();
    let mut g_def = Vec::with_capacity(na * na);
    for i in 0..na {
        for j in 0..na {
            let extra = ScalarField::sum(
                &ac,
                eta_all.iter().map(|e| e.component(i) * e.component(j)),
            )?;
            g_def.push(&amb.g.component(i, j).scale(1.0 / sf) + &extra.scale((1.0 - sf) / (sf * sf)));
        }
    }
    let ambient = AmbientStructure {
        f: amb.f.clone(),
        xi: xi_def,
        eta: eta_def,
        g: MetricField::new(&ac, g_def)?,
    };

    // graph chart over (x_1..x_n, y_1..y_{n+1}, z_1..z_t)
    let names = (1..=n)
        .map(|i| format!("x{i}"))
        .chain((1..=m).map(|i| format!("y{i}")))
        .chain((1..=t).map(|a| format!("z{a}")));
    let dom = Chart::new(names)?;
    let u = |i: usize| ScalarField::coordinate(&dom, i);
    let sum_sq = ScalarField::sum(&dom, (0..2 * n + 1).map(|i| u(i).map(|v| &v * &v)).collect::<Result<Vec<_>>>()?)?;
    let x_last = (ScalarField::constant(&dom, 4.0) - sum_sq).sqrt();
    let mut comps = Vec::with_capacity(na);
    for i in 0..n {
        comps.push(u(i)?);
    }
    comps.push(x_last);
    for i in 0..m {
        comps.push(u(n + i)?);
    }
    for a in 0..t {
        comps.push(u(2 * n + 1 + a)?);
    }
    let embedding = Embedding::new(&dom, &ac, comps)?;
    let structure = pullback_structure(&embedding, &ambient)?;
    let ambient_xi = ambient
        .xi
        .iter()
        .map(|x| ScalarField::compose_all(x.components(), &dom, embedding.components()))
        .collect::<Result<Vec<_>>>()?;

    Ok(NamedExample {
        tag: ExampleTag::Sphere { n, s },
        structure,
        expected: ExpectedConstants { n, s, c: sf },
        embedding: Some(embedding),
        ambient_xi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connections::AffineConnection;
    use crate::curvature::{f_sectional, riemann_tensor, scalar_curvature};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pts(ex: &NamedExample, k: usize) -> Vec<Point> {
        ex.sample_points(&mut ChaCha8Rng::seed_from_u64(7), k).unwrap()
    }

    #[test]
    fn flat_validates() {
        let ex = flat_example(1, 1).unwrap();
        let p = pts(&ex, 5);
        let s = &ex.structure;
        assert!(s.validate_axioms(&p, 1e-12).unwrap().pass());
        assert!(s.check_normality(&p, 1e-12).unwrap().pass());
        assert!(s.check_s_manifold(&p, 1e-12).unwrap().pass());
    }

    #[test]
    fn flat_structure_fields() {
        let ex = flat_example(2, 2).unwrap();
        let p = ex.point(vec![0.1, -0.3, 0.7, 0.2, 0.5, -0.9]).unwrap();
        let st = ex.structure.at(&p).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((st.pair(&st.xi[a], &st.xi[b]) - want).abs() < 1e-15);
            }
        }
        // f(∂y_1) = ∂x_1 + y_1 Σ ∂z_α
        let fy = st.apply_f(&DVector::from_vec(crate::tensorfield::unit(6, 2)));
        let want = DVector::from_vec(vec![1.0, 0.0, 0.0, 0.0, 0.7, 0.7]);
        assert!((fy - want).amax() < 1e-15);
    }

    #[test]
    fn flat_curvature_values() {
        let ex = flat_example(1, 2).unwrap();
        let s = &ex.structure;
        let lc = AffineConnection::levi_civita(s.g()).unwrap();
        let p = pts(&ex, 1).remove(0);
        let rp = riemann_tensor(&lc, s.g(), &p).unwrap();
        let st = s.at(&p).unwrap();
        let frame = s.f_basis(&p, 1e-10).unwrap();
        let k = f_sectional(&rp, &st, &frame[0]).unwrap();
        assert!((k - ex.expected.c).abs() < 1e-9, "{k}");
        let tau = scalar_curvature(&rp, &frame);
        assert!((tau - ex.expected.tau()).abs() < 1e-9, "{tau}");
    }

    #[test]
    fn sphere_is_s_manifold() {
        let ex = sphere_example(1, 2).unwrap();
        let p = pts(&ex, 3);
        let s = &ex.structure;
        assert!(ex.tangency_residual(&p).unwrap() < TANGENCY_TOL);
        for r in [
            s.validate_axioms(&p, 1e-9).unwrap(),
            s.check_normality(&p, 1e-9).unwrap(),
            s.check_s_manifold(&p, 1e-9).unwrap(),
        ] {
            assert!(r.pass(), "{:?}", r.failures().collect::<Vec<_>>());
        }
        for q in &p {
            let st = s.at(q).unwrap();
            for x in &st.xi {
                assert!((st.pair(x, x) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sphere_f_sectional_is_s() {
        let ex = sphere_example(1, 2).unwrap();
        let s = &ex.structure;
        let lc = AffineConnection::levi_civita(s.g()).unwrap();
        let p = pts(&ex, 1).remove(0);
        let rp = riemann_tensor(&lc, s.g(), &p).unwrap();
        let st = s.at(&p).unwrap();
        let frame = s.f_basis(&p, 1e-10).unwrap();
        let k = f_sectional(&rp, &st, &frame[0]).unwrap();
        assert!((k - 2.0).abs() < 1e-7, "{k}");
        let tau = scalar_curvature(&rp, &frame);
        assert!((tau - ex.expected.tau()).abs() < 1e-6, "{tau}");
    }

    #[test]
    fn identity_pullback_is_noop() {
        let parts = flat_parts(1, 1).unwrap();
        let e = Embedding::identity(&parts.chart).unwrap();
        let amb = AmbientStructure {
            f: parts.f.clone(),
            xi: parts.xi.clone(),
            eta: parts.eta.clone(),
            g: parts.g.clone(),
        };
        let pulled = pullback_structure(&e, &amb).unwrap();
        let p = parts.chart.point(vec![0.3, -0.4, 0.8]).unwrap();
        let a = pulled.at(&p).unwrap();
        let b = MetricFStructure::new(&parts.chart, parts.f, parts.xi, parts.eta, parts.g)
            .unwrap()
            .at(&p)
            .unwrap();
        assert!((&a.g - &b.g).amax() < 1e-14);
        assert!((&a.f - &b.f).amax() < 1e-14);
        assert!((&a.xi[0] - &b.xi[0]).amax() < 1e-14);
        assert!((&a.eta[0] - &b.eta[0]).amax() < 1e-14);
    }

    #[test]
    fn expected_constants() {
        let flat = ExpectedConstants { n: 2, s: 3, c: -9.0 };
        assert_eq!(flat.tau(), -6.0);
        assert_eq!(flat.tau_tilde(), 3.0);
        let sph = ExpectedConstants { n: 2, s: 2, c: 2.0 };
        assert_eq!(sph.tau(), 20.0);
        assert_eq!(sph.tau_tilde(), 25.0);
        assert_eq!(sph.kl_constant(), Some(2.0));
        assert_eq!(flat.kl_constant(), None);
    }

    #[test]
    fn bad_parameters_and_patch() {
        assert!(flat_example(0, 1).is_err());
        assert!(sphere_example(1, 1).is_err());
        let ex = sphere_example(1, 2).unwrap();
        assert!(matches!(ex.point(vec![1.95, 0.0, 0.0, 0.0]), Err(GeometryError::Domain(_))));
    }
}
