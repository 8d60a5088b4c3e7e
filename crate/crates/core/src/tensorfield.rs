//! Vector fields, forms, endomorphisms and metrics over a chart, and the
//! operators built from them: Lie bracket, exterior derivative of a 1-form and
//! the Nijenhuis torsion of a (1,1)-tensor.
//!
//! Components are stored densely as [`ScalarField`]s. Pointwise values are
//! returned as `nalgebra` vectors and matrices.
//!
//! Exterior derivative convention: `dη(X,Y) = ½(X η(Y) − Y η(X) − η([X,Y]))`,
//! so `(dη)_ij = ½(∂_i η_j − ∂_j η_i)`. With this factor the standard flat
//! S-structure satisfies `dη^α = Φ`; without it every S-manifold check would
//! be off by a factor of two.

use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};

use crate::diffcore::{Chart, Evaluator, Point, ScalarField};
use crate::error::{GeometryError, Result};

pub type TangentVector = DVector<f64>;

fn check_len(what: &str, chart: &Chart, len: usize, expected: usize) -> Result<()> {
    if len != expected {
        return Err(GeometryError::DimensionMismatch(format!(
            "{what}: {len} components on a {}-dimensional chart",
            chart.dim()
        )));
    }
    Ok(())
}

fn check_chart(chart: &Chart, comps: &[ScalarField], what: &str) -> Result<()> {
    comps.iter().try_for_each(|c| chart.ensure_same(c.chart(), what))
}

/// Contravariant vector field `X = X^i ∂_i`.
#[derive(Clone, Debug)]
pub struct VectorField {
    chart: Chart,
    components: Vec<ScalarField>,
}

impl VectorField {
    pub fn new(chart: &Chart, components: Vec<ScalarField>) -> Result<Self> {
        check_len("vector field", chart, components.len(), chart.dim())?;
        check_chart(chart, &components, "vector field")?;
        Ok(Self {
            chart: chart.clone(),
            components,
        })
    }

    pub fn zero(chart: &Chart) -> Self {
        Self {
            chart: chart.clone(),
            components: vec![ScalarField::zero(chart); chart.dim()],
        }
    }

    /// The coordinate field `∂_i`.
    pub fn coordinate(chart: &Chart, i: usize) -> Result<Self> {
        if i >= chart.dim() {
            return Err(GeometryError::IndexOutOfRange {
                index: i,
                dim: chart.dim(),
            });
        }
        Ok(Self::constant(chart, &unit(chart.dim(), i)))
    }

    /// Field with constant components.
    pub fn constant(chart: &Chart, components: &[f64]) -> Self {
        Self {
            chart: chart.clone(),
            components: components
                .iter()
                .map(|&c| ScalarField::constant(chart, c))
                .collect(),
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn components(&self) -> &[ScalarField] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &ScalarField {
        &self.components[i]
    }

    pub fn add(&self, other: &VectorField) -> Result<Self> {
        self.chart.ensure_same(&other.chart, "vector add")?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            chart: self.chart.clone(),
            components,
        })
    }

    pub fn sub(&self, other: &VectorField) -> Result<Self> {
        self.chart.ensure_same(&other.chart, "vector sub")?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            chart: self.chart.clone(),
            components,
        })
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            chart: self.chart.clone(),
            components: self.components.iter().map(|c| c.scale(k)).collect(),
        }
    }

    /// Pointwise product `φ X`.
    pub fn times(&self, phi: &ScalarField) -> Result<Self> {
        self.chart.ensure_same(phi.chart(), "vector times scalar")?;
        Ok(Self {
            chart: self.chart.clone(),
            components: self.components.iter().map(|c| c * phi).collect(),
        })
    }

    /// `X(φ) = X^i ∂_i φ`.
    pub fn derivative_of(&self, phi: &ScalarField) -> Result<ScalarField> {
        self.chart.ensure_same(phi.chart(), "directional derivative")?;
        let terms = (0..self.chart.dim())
            .filter(|&i| !self.components[i].is_zero())
            .map(|i| Ok(&self.components[i] * &phi.partial(i)?))
            .collect::<Result<Vec<_>>>()?;
        ScalarField::sum(&self.chart, terms)
    }

    pub fn at(&self, p: &Point) -> Result<TangentVector> {
        let mut ev = Evaluator::new(p);
        self.at_with(&mut ev)
    }

    pub fn at_with(&self, ev: &mut Evaluator) -> Result<TangentVector> {
        Ok(DVector::from_vec(ev.values(&self.components)?))
    }
}

pub(crate) fn unit(dim: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; dim];
    v[i] = 1.0;
    v
}

/// Covariant 1-form `η = η_i du^i`.
#[derive(Clone, Debug)]
pub struct OneForm {
    chart: Chart,
    components: Vec<ScalarField>,
}

impl OneForm {
    pub fn new(chart: &Chart, components: Vec<ScalarField>) -> Result<Self> {
        check_len("one-form", chart, components.len(), chart.dim())?;
        check_chart(chart, &components, "one-form")?;
        Ok(Self {
            chart: chart.clone(),
            components,
        })
    }

    /// `dφ = ∂_i φ du^i`.
    pub fn differential(phi: &ScalarField) -> Result<Self> {
        let chart = phi.chart().clone();
        let components = (0..chart.dim())
            .map(|i| phi.partial(i))
            .collect::<Result<_>>()?;
        Ok(Self { chart, components })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn components(&self) -> &[ScalarField] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &ScalarField {
        &self.components[i]
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            chart: self.chart.clone(),
            components: self.components.iter().map(|c| c.scale(k)).collect(),
        }
    }

    pub fn times(&self, phi: &ScalarField) -> Result<Self> {
        self.chart.ensure_same(phi.chart(), "one-form times scalar")?;
        Ok(Self {
            chart: self.chart.clone(),
            components: self.components.iter().map(|c| c * phi).collect(),
        })
    }

    /// `η(X) = η_i X^i`.
    pub fn apply(&self, x: &VectorField) -> Result<ScalarField> {
        self.chart.ensure_same(&x.chart, "one-form apply")?;
        ScalarField::sum(
            &self.chart,
            self.components
                .iter()
                .zip(&x.components)
                .map(|(a, b)| a * b),
        )
    }

    pub fn at(&self, p: &Point) -> Result<DVector<f64>> {
        self.at_with(&mut Evaluator::new(p))
    }

    pub fn at_with(&self, ev: &mut Evaluator) -> Result<DVector<f64>> {
        Ok(DVector::from_vec(ev.values(&self.components)?))
    }
}

/// Antisymmetric covariant 2-tensor, components `ω_ij` (row-major).
#[derive(Clone, Debug)]
pub struct TwoForm {
    chart: Chart,
    components: Vec<ScalarField>,
}

impl TwoForm {
    /// Builds from row-major components. Antisymmetry is a pointwise property
    /// and is checked by [`TwoForm::antisymmetry_residual`], not here.
    pub fn new(chart: &Chart, components: Vec<ScalarField>) -> Result<Self> {
        let d = chart.dim();
        check_len("two-form", chart, components.len(), d * d)?;
        check_chart(chart, &components, "two-form")?;
        Ok(Self {
            chart: chart.clone(),
            components,
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn component(&self, i: usize, j: usize) -> &ScalarField {
        &self.components[i * self.chart.dim() + j]
    }

    pub fn components(&self) -> &[ScalarField] {
        &self.components
    }

    pub fn at(&self, p: &Point) -> Result<DMatrix<f64>> {
        self.at_with(&mut Evaluator::new(p))
    }

    pub fn at_with(&self, ev: &mut Evaluator) -> Result<DMatrix<f64>> {
        let d = self.chart.dim();
        Ok(DMatrix::from_row_slice(d, d, &ev.values(&self.components)?))
    }

    /// `ω(X,Y)` at `p` for tangent vectors at `p`.
    pub fn apply_at(&self, p: &Point, x: &TangentVector, y: &TangentVector) -> Result<f64> {
        Ok(x.dot(&(self.at(p)? * y)))
    }

    pub fn antisymmetry_residual(&self, p: &Point) -> Result<f64> {
        let w = self.at(p)?;
        Ok((&w + w.transpose()).amax())
    }
}

/// Mixed (1,1)-tensor `f`, stored row-major as `f^k_j` so that
/// `(fX)^k = f^k_j X^j`.
#[derive(Clone, Debug)]
pub struct EndomorphismField {
    chart: Chart,
    components: Vec<ScalarField>,
}

impl EndomorphismField {
    pub fn new(chart: &Chart, components: Vec<ScalarField>) -> Result<Self> {
        let d = chart.dim();
        check_len("endomorphism", chart, components.len(), d * d)?;
        check_chart(chart, &components, "endomorphism")?;
        Ok(Self {
            chart: chart.clone(),
            components,
        })
    }

    pub fn identity(chart: &Chart) -> Self {
        let d = chart.dim();
        let components = (0..d * d)
            .map(|idx| ScalarField::constant(chart, if idx / d == idx % d { 1.0 } else { 0.0 }))
            .collect();
        Self {
            chart: chart.clone(),
            components,
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn component(&self, k: usize, j: usize) -> &ScalarField {
        &self.components[k * self.chart.dim() + j]
    }

    pub fn components(&self) -> &[ScalarField] {
        &self.components
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            chart: self.chart.clone(),
            components: self.components.iter().map(|c| c.scale(k)).collect(),
        }
    }

    /// `fX`.
    pub fn apply(&self, x: &VectorField) -> Result<VectorField> {
        self.chart.ensure_same(&x.chart, "endomorphism apply")?;
        let d = self.chart.dim();
        let components = (0..d)
            .map(|k| {
                ScalarField::sum(
                    &self.chart,
                    (0..d).map(|j| self.component(k, j) * x.component(j)),
                )
            })
            .collect::<Result<_>>()?;
        Ok(VectorField {
            chart: self.chart.clone(),
            components,
        })
    }

    /// The composition `self ∘ other`.
    pub fn compose(&self, other: &EndomorphismField) -> Result<Self> {
        self.chart.ensure_same(&other.chart, "endomorphism compose")?;
        let d = self.chart.dim();
        let components = (0..d * d)
            .map(|idx| {
                let (k, j) = (idx / d, idx % d);
                ScalarField::sum(
                    &self.chart,
                    (0..d).map(|m| self.component(k, m) * other.component(m, j)),
                )
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            chart: self.chart.clone(),
            components,
        })
    }

    pub fn at(&self, p: &Point) -> Result<DMatrix<f64>> {
        self.at_with(&mut Evaluator::new(p))
    }

    pub fn at_with(&self, ev: &mut Evaluator) -> Result<DMatrix<f64>> {
        let d = self.chart.dim();
        Ok(DMatrix::from_row_slice(d, d, &ev.values(&self.components)?))
    }
}

/// Riemannian metric `g_ij`, with inverse components as exact fields.
#[derive(Clone)]
pub struct MetricField {
    chart: Chart,
    components: Vec<ScalarField>,
    inverse: Vec<ScalarField>,
    partials: OnceLock<Vec<Vec<ScalarField>>>,
}

impl std::fmt::Debug for MetricField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MetricField(dim {})", self.chart.dim())
    }
}

impl MetricField {
    /// Builds the metric from row-major components. Symmetry and positive
    /// definiteness are pointwise properties checked by [`MetricField::at`].
    pub fn new(chart: &Chart, components: Vec<ScalarField>) -> Result<Self> {
        let d = chart.dim();
        check_len("metric", chart, components.len(), d * d)?;
        check_chart(chart, &components, "metric")?;
        let inverse = ScalarField::inverse_matrix(chart, &components, d)?;
        Ok(Self {
            chart: chart.clone(),
            components,
            inverse,
            partials: OnceLock::new(),
        })
    }

    pub fn euclidean(chart: &Chart) -> Self {
        let id = EndomorphismField::identity(chart);
        Self::new(chart, id.components).expect("identity metric is well-formed")
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn component(&self, i: usize, j: usize) -> &ScalarField {
        &self.components[i * self.chart.dim() + j]
    }

    pub fn components(&self) -> &[ScalarField] {
        &self.components
    }

    /// `g^{ij}` as fields.
    pub fn inverse_component(&self, i: usize, j: usize) -> &ScalarField {
        &self.inverse[i * self.chart.dim() + j]
    }

    /// `∂_k g_ij`, indexed `[k][i*dim + j]`.
    pub fn partials(&self) -> Result<&[Vec<ScalarField>]> {
        if self.partials.get().is_none() {
            let computed = (0..self.chart.dim())
                .map(|k| ScalarField::partials(&self.components, k))
                .collect::<Result<Vec<_>>>()?;
            let _ = self.partials.set(computed);
        }
        Ok(self.partials.get().expect("initialised above"))
    }

    /// `g(X,Y)` as a field.
    pub fn pair(&self, x: &VectorField, y: &VectorField) -> Result<ScalarField> {
        self.chart.ensure_same(&x.chart, "metric pair")?;
        self.chart.ensure_same(&y.chart, "metric pair")?;
        let d = self.chart.dim();
        let mut terms = Vec::new();
        for i in 0..d {
            for j in 0..d {
                if x.components[i].is_zero() || y.components[j].is_zero() {
                    continue;
                }
                terms.push(&(self.component(i, j) * x.component(i)) * y.component(j));
            }
        }
        ScalarField::sum(&self.chart, terms)
    }

    /// `X^♭ = g(X, ·)`.
    pub fn lower(&self, x: &VectorField) -> Result<OneForm> {
        self.chart.ensure_same(&x.chart, "metric lower")?;
        let d = self.chart.dim();
        let components = (0..d)
            .map(|j| {
                ScalarField::sum(
                    &self.chart,
                    (0..d).map(|i| self.component(i, j) * x.component(i)),
                )
            })
            .collect::<Result<_>>()?;
        OneForm::new(&self.chart, components)
    }

    /// Metric matrix at `p`; fails unless it is symmetric positive definite.
    pub fn at(&self, p: &Point) -> Result<DMatrix<f64>> {
        self.at_with(&mut Evaluator::new(p))
    }

    pub fn at_with(&self, ev: &mut Evaluator) -> Result<DMatrix<f64>> {
        let d = self.chart.dim();
        let g = DMatrix::from_row_slice(d, d, &ev.values(&self.components)?);
        let scale = g.amax().max(1.0);
        if (&g - g.transpose()).amax() > 1e-12 * scale {
            return Err(GeometryError::Singular(
                "metric is not symmetric at the evaluation point".into(),
            ));
        }
        if g.clone().cholesky().is_none() {
            return Err(GeometryError::Singular(
                "metric is not positive definite at the evaluation point".into(),
            ));
        }
        Ok(g)
    }

    /// `g^{-1}` at `p`.
    pub fn inverse_at(&self, p: &Point) -> Result<DMatrix<f64>> {
        let g = self.at(p)?;
        g.cholesky()
            .map(|c| c.inverse())
            .ok_or_else(|| GeometryError::Singular("metric inverse".into()))
    }
}

/// `g(u, v)` for tangent vectors at a point with metric matrix `g`.
pub fn pair_at(g: &DMatrix<f64>, u: &TangentVector, v: &TangentVector) -> f64 {
    u.dot(&(g * v))
}

/// `[X,Y]^k = X^i ∂_i Y^k − Y^i ∂_i X^k`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    x.chart.ensure_same(&y.chart, "lie bracket")?;
    let components = (0..x.chart.dim())
        .map(|k| Ok(&x.derivative_of(y.component(k))? - &y.derivative_of(x.component(k))?))
        .collect::<Result<_>>()?;
    Ok(VectorField {
        chart: x.chart.clone(),
        components,
    })
}

/// `(dη)_ij = ½(∂_i η_j − ∂_j η_i)`; see the module note on the ½ factor.
pub fn exterior_d(eta: &OneForm) -> Result<TwoForm> {
    let chart = eta.chart.clone();
    let d = chart.dim();
    let partials = (0..d)
        .map(|i| ScalarField::partials(&eta.components, i))
        .collect::<Result<Vec<_>>>()?;
    let components = (0..d * d)
        .map(|idx| {
            let (i, j) = (idx / d, idx % d);
            (&partials[i][j] - &partials[j][i]).scale(0.5)
        })
        .collect();
    TwoForm::new(&chart, components)
}

/// `[f,f](X,Y) = f²[X,Y] + [fX,fY] − f[fX,Y] − f[X,fY]` evaluated at `p`.
pub fn nijenhuis(
    f: &EndomorphismField,
    x: &VectorField,
    y: &VectorField,
    p: &Point,
) -> Result<TangentVector> {
    f.chart.ensure_same(&x.chart, "nijenhuis")?;
    f.chart.ensure_same(&y.chart, "nijenhuis")?;
    let fx = f.apply(x)?;
    let fy = f.apply(y)?;
    let mut ev = Evaluator::new(p);
    let fm = f.at_with(&mut ev)?;
    let xy = lie_bracket(x, y)?.at_with(&mut ev)?;
    let fxfy = lie_bracket(&fx, &fy)?.at_with(&mut ev)?;
    let fx_y = lie_bracket(&fx, y)?.at_with(&mut ev)?;
    let x_fy = lie_bracket(x, &fy)?.at_with(&mut ev)?;
    Ok(&fm * (&fm * xy) + fxfy - &fm * fx_y - &fm * x_fy)
}

/// `[f,f](∂_a, ∂_b)` for every coordinate pair at `p`, indexed `[a * dim + b]`.
///
/// Coordinate fields commute, so only the first-derivative terms of `f`
/// survive; this is the same tensor as [`nijenhuis`] evaluated from jets in one
/// pass.
pub fn nijenhuis_coordinate_at(f: &EndomorphismField, p: &Point) -> Result<Vec<TangentVector>> {
    f.chart.ensure_same(p.chart(), "nijenhuis evaluation point")?;
    let d = f.chart.dim();
    let jets = Evaluator::new(p).eval_all(&f.components)?;
    let val = |k: usize, j: usize| jets[k * d + j].value();
    let der = |i: usize, k: usize, j: usize| jets[k * d + j].partial(i);
    let mut out = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            let v = DVector::from_fn(d, |k, _| {
                let mut s = 0.0;
                for i in 0..d {
                    s += val(i, a) * der(i, k, b) - val(i, b) * der(i, k, a);
                    s += val(k, i) * (der(b, i, a) - der(a, i, b));
                }
                s
            });
            out.push(v);
        }
    }
    Ok(out)
}

/// `dη` at `p` from the jets of `η` (same convention as [`exterior_d`]).
pub fn exterior_d_at(eta: &OneForm, p: &Point) -> Result<DMatrix<f64>> {
    eta.chart.ensure_same(p.chart(), "exterior derivative evaluation point")?;
    let d = eta.chart.dim();
    let jets = Evaluator::new(p).eval_all(&eta.components)?;
    Ok(DMatrix::from_fn(d, d, |i, j| {
        0.5 * (jets[j].partial(i) - jets[i].partial(j))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart(d: usize) -> Chart {
        Chart::euclidean(d).unwrap()
    }

    fn coord(c: &Chart, i: usize) -> ScalarField {
        ScalarField::coordinate(c, i).unwrap()
    }

    #[test]
    fn coordinate_fields_commute() {
        let c = chart(3);
        let b = lie_bracket(
            &VectorField::coordinate(&c, 0).unwrap(),
            &VectorField::coordinate(&c, 1).unwrap(),
        )
        .unwrap();
        let p = c.point(vec![0.1, 0.2, 0.3]).unwrap();
        assert!(b.at(&p).unwrap().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn bracket_of_x2_d1_with_d2() {
        let c = chart(2);
        let x = VectorField::new(&c, vec![coord(&c, 1), ScalarField::zero(&c)]).unwrap();
        let y = VectorField::coordinate(&c, 1).unwrap();
        let b = lie_bracket(&x, &y).unwrap();
        let p = c.point(vec![0.4, -2.0]).unwrap();
        assert_eq!(b.at(&p).unwrap().as_slice(), &[-1.0, 0.0]);
    }

    #[test]
    fn closed_coordinate_form() {
        let c = chart(3);
        let dx = OneForm::differential(&coord(&c, 0)).unwrap();
        let w = exterior_d(&dx).unwrap();
        let p = c.point(vec![1.0, 2.0, 3.0]).unwrap();
        assert!(w.at(&p).unwrap().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn d_of_phi_dphi_vanishes() {
        let c = chart(3);
        let phi = coord(&c, 0);
        let form = OneForm::differential(&phi).unwrap().times(&phi).unwrap();
        let w = exterior_d(&form).unwrap();
        let p = c.point(vec![0.7, -0.2, 1.1]).unwrap();
        assert!(w.at(&p).unwrap().amax() < 1e-15);
    }

    #[test]
    fn d_carries_half_factor() {
        // η = ½(dz − y dx) on (x, y, z): dη(∂_x, ∂_y) = ½ · ½(∂_x η_y − ∂_y η_x) · 2 = ¼.
        let c = chart(3);
        let y = coord(&c, 1);
        let eta = OneForm::new(
            &c,
            vec![y.scale(-0.5), ScalarField::zero(&c), ScalarField::constant(&c, 0.5)],
        )
        .unwrap();
        let w = exterior_d(&eta).unwrap();
        let p = c.point(vec![0.3, 2.0, -1.0]).unwrap();
        let m = w.at(&p).unwrap();
        assert!((m[(0, 1)] - 0.25).abs() < 1e-15);
        assert!((m[(1, 0)] + 0.25).abs() < 1e-15);
        assert!(w.antisymmetry_residual(&p).unwrap() < 1e-15);
    }

    #[test]
    fn nijenhuis_of_identity_vanishes() {
        let c = chart(2);
        let id = EndomorphismField::identity(&c);
        let x = VectorField::new(&c, vec![&coord(&c, 0) * &coord(&c, 1), coord(&c, 0)]).unwrap();
        let y = VectorField::new(&c, vec![ScalarField::constant(&c, 1.0), &coord(&c, 1) * &coord(&c, 1)])
            .unwrap();
        let p = c.point(vec![0.5, -1.5]).unwrap();
        assert!(nijenhuis(&id, &x, &y, &p).unwrap().amax() < 1e-14);
    }

    #[test]
    fn euclidean_metric_pairs() {
        let c = chart(3);
        let g = MetricField::euclidean(&c);
        let p = c.point(vec![0.0; 3]).unwrap();
        let v = g
            .pair(
                &VectorField::coordinate(&c, 0).unwrap(),
                &VectorField::coordinate(&c, 1).unwrap(),
            )
            .unwrap()
            .value(&p)
            .unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn non_positive_metric_is_rejected() {
        let c = chart(2);
        let x = coord(&c, 0);
        let g = MetricField::new(
            &c,
            vec![x.clone(), ScalarField::zero(&c), ScalarField::zero(&c), ScalarField::constant(&c, 1.0)],
        )
        .unwrap();
        let bad = c.point(vec![-1.0, 0.0]).unwrap();
        assert!(matches!(g.at(&bad), Err(GeometryError::Singular(_))));
        let good = c.point(vec![2.0, 0.0]).unwrap();
        let inv = g.inverse_at(&good).unwrap();
        let prod = g.at(&good).unwrap() * inv;
        assert!((prod - DMatrix::identity(2, 2)).amax() < 1e-12);
    }

    #[test]
    fn shape_mismatch_errors() {
        let c = chart(3);
        assert!(VectorField::new(&c, vec![ScalarField::zero(&c)]).is_err());
        let other = chart(2);
        let x = VectorField::coordinate(&c, 0).unwrap();
        let y = VectorField::coordinate(&other, 0).unwrap();
        assert!(matches!(lie_bracket(&x, &y), Err(GeometryError::ChartMismatch(_))));
    }
}
