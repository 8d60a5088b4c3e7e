//! Charts, points and differentiable scalar fields.
//!
//! A [`ScalarField`] is a shared expression graph over the coordinate
//! functions of a [`Chart`]. Evaluating it propagates [`Jet`]s forward through
//! the graph, so the value, gradient and Hessian at a point are exact.
//!
//! Rule set: constants, coordinates, `+`, `−`, `×`, scalar multiples, plus
//! three rules needed by the hypersurface chart and by metric inverses:
//!
//! * `sqrt(u)`: `∇ = ∇u / (2√u)`, `H = Hu / (2√u) − ∇u∇uᵀ / (4u^{3/2})`;
//! * `recip(u)`: `∇ = −∇u / u²`, `H = −Hu / u² + 2∇u∇uᵀ / u³`;
//! * entries of `A⁻¹` for a square matrix of fields `A`, with
//!   `∂B = −B (∂A) B` and the matching second-order rule (see
//!   [`inverse_jets`]).
//!
//! [`ScalarField::partial`] builds the derivative of a field as a new field
//! by the same rules, which is what lets derived quantities (Christoffel
//! symbols, pulled-back metrics) keep exact second derivatives.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::jet::{inverse_jets, Jet};
use crate::error::{GeometryError, Result};

#[derive(Debug, PartialEq, Eq)]
struct ChartData {
    names: Vec<String>,
}

/// A coordinate chart; only its dimension and coordinate names matter.
#[derive(Clone, Debug)]
pub struct Chart(Arc<ChartData>);

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Chart {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(GeometryError::InvalidConfig(
                "a chart needs at least one coordinate".into(),
            ));
        }
        Ok(Self(Arc::new(ChartData { names })))
    }

    /// ℝ^dim with coordinates `u0, u1, …`.
    pub fn euclidean(dim: usize) -> Result<Self> {
        Self::new((0..dim).map(|i| format!("u{i}")))
    }

    pub fn dim(&self) -> usize {
        self.0.names.len()
    }

    pub fn coord_names(&self) -> &[String] {
        &self.0.names
    }

    pub fn point(&self, coords: impl Into<Vec<f64>>) -> Result<Point> {
        let coords = coords.into();
        if coords.len() != self.dim() {
            return Err(GeometryError::DimensionMismatch(format!(
                "point has {} coordinates, chart has dimension {}",
                coords.len(),
                self.dim()
            )));
        }
        Ok(Point {
            chart: self.clone(),
            coords,
        })
    }

    pub(crate) fn ensure_same(&self, other: &Chart, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(GeometryError::ChartMismatch(format!(
                "{what}: {:?} vs {:?}",
                self.coord_names(),
                other.coord_names()
            )))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    chart: Chart,
    coords: Vec<f64>,
}

impl Point {
    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

pub(crate) struct SquareBlock {
    n: usize,
    entries: Vec<Arc<Node>>,
}

pub(crate) enum Node {
    Const(f64),
    Coord(usize),
    Add(Arc<Node>, Arc<Node>),
    Sub(Arc<Node>, Arc<Node>),
    Mul(Arc<Node>, Arc<Node>),
    Scale(f64, Arc<Node>),
    Sqrt(Arc<Node>),
    Recip(Arc<Node>),
    InverseEntry {
        block: Arc<SquareBlock>,
        row: usize,
        col: usize,
    },
}

fn key(node: &Arc<Node>) -> usize {
    Arc::as_ptr(node) as usize
}

fn constant_of(node: &Node) -> Option<f64> {
    match node {
        Node::Const(v) => Some(*v),
        _ => None,
    }
}

fn mk_const(v: f64) -> Arc<Node> {
    Arc::new(Node::Const(v))
}

fn mk_add(a: Arc<Node>, b: Arc<Node>) -> Arc<Node> {
    match (constant_of(&a), constant_of(&b)) {
        (Some(x), Some(y)) => mk_const(x + y),
        (Some(0.0), _) => b,
        (_, Some(0.0)) => a,
        _ => Arc::new(Node::Add(a, b)),
    }
}

fn mk_sub(a: Arc<Node>, b: Arc<Node>) -> Arc<Node> {
    match (constant_of(&a), constant_of(&b)) {
        (Some(x), Some(y)) => mk_const(x - y),
        (Some(0.0), _) => mk_scale(-1.0, b),
        (_, Some(0.0)) => a,
        _ => Arc::new(Node::Sub(a, b)),
    }
}

fn mk_mul(a: Arc<Node>, b: Arc<Node>) -> Arc<Node> {
    match (constant_of(&a), constant_of(&b)) {
        (Some(x), Some(y)) => mk_const(x * y),
        (Some(x), _) => mk_scale(x, b),
        (_, Some(y)) => mk_scale(y, a),
        _ => Arc::new(Node::Mul(a, b)),
    }
}

fn mk_scale(factor: f64, a: Arc<Node>) -> Arc<Node> {
    if factor == 0.0 {
        return mk_const(0.0);
    }
    if factor == 1.0 {
        return a;
    }
    match &*a {
        Node::Const(v) => mk_const(factor * v),
        Node::Scale(inner, b) => mk_scale(factor * inner, b.clone()),
        _ => Arc::new(Node::Scale(factor, a)),
    }
}

fn is_zero(node: &Node) -> bool {
    constant_of(node) == Some(0.0)
}

/// A smooth real function on a chart with exact first and second derivatives.
#[derive(Clone)]
pub struct ScalarField {
    chart: Chart,
    node: Arc<Node>,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match constant_of(&self.node) {
            Some(v) => write!(f, "ScalarField(const {v})"),
            None => write!(f, "ScalarField(dim {})", self.chart.dim()),
        }
    }
}

impl ScalarField {
    pub fn constant(chart: &Chart, value: f64) -> Self {
        Self {
            chart: chart.clone(),
            node: mk_const(value),
        }
    }

    pub fn zero(chart: &Chart) -> Self {
        Self::constant(chart, 0.0)
    }

    pub fn coordinate(chart: &Chart, index: usize) -> Result<Self> {
        if index >= chart.dim() {
            return Err(GeometryError::IndexOutOfRange {
                index,
                dim: chart.dim(),
            });
        }
        Ok(Self {
            chart: chart.clone(),
            node: Arc::new(Node::Coord(index)),
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    /// True when the field is structurally the zero constant.
    pub fn is_zero(&self) -> bool {
        is_zero(&self.node)
    }

    pub fn as_constant(&self) -> Option<f64> {
        constant_of(&self.node)
    }

    fn wrap(&self, node: Arc<Node>) -> Self {
        Self {
            chart: self.chart.clone(),
            node,
        }
    }

    pub fn checked_add(&self, other: &ScalarField) -> Result<Self> {
        self.chart.ensure_same(&other.chart, "add")?;
        Ok(self.wrap(mk_add(self.node.clone(), other.node.clone())))
    }

    pub fn checked_sub(&self, other: &ScalarField) -> Result<Self> {
        self.chart.ensure_same(&other.chart, "sub")?;
        Ok(self.wrap(mk_sub(self.node.clone(), other.node.clone())))
    }

    pub fn checked_mul(&self, other: &ScalarField) -> Result<Self> {
        self.chart.ensure_same(&other.chart, "mul")?;
        Ok(self.wrap(mk_mul(self.node.clone(), other.node.clone())))
    }

    pub fn scale(&self, factor: f64) -> Self {
        self.wrap(mk_scale(factor, self.node.clone()))
    }

    pub fn sqrt(&self) -> Self {
        match constant_of(&self.node) {
            Some(v) if v >= 0.0 => self.wrap(mk_const(v.sqrt())),
            _ => self.wrap(Arc::new(Node::Sqrt(self.node.clone()))),
        }
    }

    pub fn recip(&self) -> Self {
        match constant_of(&self.node) {
            Some(v) if v != 0.0 => self.wrap(mk_const(1.0 / v)),
            _ => self.wrap(Arc::new(Node::Recip(self.node.clone()))),
        }
    }

    /// Sum of fields, combined pairwise to keep the graph shallow.
    pub fn sum(chart: &Chart, terms: impl IntoIterator<Item = ScalarField>) -> Result<Self> {
        let mut layer: Vec<Arc<Node>> = Vec::new();
        for term in terms {
            chart.ensure_same(&term.chart, "sum")?;
            if !is_zero(&term.node) {
                layer.push(term.node);
            }
        }
        if layer.is_empty() {
            return Ok(Self::zero(chart));
        }
        while layer.len() > 1 {
            let mut next = Vec::with_capacity(layer.len().div_ceil(2));
            let mut it = layer.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(mk_add(a, b)),
                    None => next.push(a),
                }
            }
            layer = next;
        }
        Ok(Self {
            chart: chart.clone(),
            node: layer.pop().expect("non-empty"),
        })
    }

    /// Entries (row-major) of the inverse of the `n × n` matrix of fields.
    pub fn inverse_matrix(chart: &Chart, entries: &[ScalarField], n: usize) -> Result<Vec<Self>> {
        if entries.len() != n * n {
            return Err(GeometryError::DimensionMismatch(format!(
                "inverse_matrix: {} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        for e in entries {
            chart.ensure_same(&e.chart, "inverse_matrix")?;
        }
        let block = Arc::new(SquareBlock {
            n,
            entries: entries.iter().map(|e| e.node.clone()).collect(),
        });
        Ok((0..n * n)
            .map(|idx| Self {
                chart: chart.clone(),
                node: Arc::new(Node::InverseEntry {
                    block: block.clone(),
                    row: idx / n,
                    col: idx % n,
                }),
            })
            .collect())
    }

    /// The partial derivative `∂φ/∂u_var` as a field.
    pub fn partial(&self, var: usize) -> Result<Self> {
        Ok(Self::partials(std::slice::from_ref(self), var)?.remove(0))
    }

    /// Partial derivatives of several fields with respect to one coordinate,
    /// sharing common subgraphs between the results.
    pub fn partials(fields: &[ScalarField], var: usize) -> Result<Vec<Self>> {
        let Some(first) = fields.first() else {
            return Ok(Vec::new());
        };
        let chart = first.chart.clone();
        if var >= chart.dim() {
            return Err(GeometryError::IndexOutOfRange {
                index: var,
                dim: chart.dim(),
            });
        }
        let mut d = Differentiator {
            var,
            memo: HashMap::new(),
        };
        fields
            .iter()
            .map(|f| {
                chart.ensure_same(&f.chart, "partials")?;
                Ok(Self {
                    chart: chart.clone(),
                    node: d.diff(&f.node),
                })
            })
            .collect()
    }

    /// Substitute `args[i]` (fields on `target`) for coordinate `i`.
    pub fn compose(&self, target: &Chart, args: &[ScalarField]) -> Result<Self> {
        Ok(Self::compose_all(std::slice::from_ref(self), target, args)?.remove(0))
    }

    /// [`compose`](Self::compose) for several fields sharing one substitution.
    pub fn compose_all(
        fields: &[ScalarField],
        target: &Chart,
        args: &[ScalarField],
    ) -> Result<Vec<Self>> {
        let mut sub = Substitution {
            args: Vec::with_capacity(args.len()),
            memo: HashMap::new(),
            blocks: HashMap::new(),
        };
        for a in args {
            target.ensure_same(&a.chart, "compose argument")?;
            sub.args.push(a.node.clone());
        }
        fields
            .iter()
            .map(|f| {
                if f.chart.dim() != args.len() {
                    return Err(GeometryError::DimensionMismatch(format!(
                        "compose: field on a {}-dimensional chart, {} arguments",
                        f.chart.dim(),
                        args.len()
                    )));
                }
                Ok(Self {
                    chart: target.clone(),
                    node: sub.apply(&f.node),
                })
            })
            .collect()
    }

    /// Value, gradient and Hessian at `p`.
    pub fn jet(&self, p: &Point) -> Result<Jet> {
        Evaluator::new(p).eval(self)
    }

    pub fn value(&self, p: &Point) -> Result<f64> {
        Ok(self.jet(p)?.value())
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&ScalarField> for &ScalarField {
            type Output = ScalarField;
            /// Panics on chart mismatch; use the `checked_*` form to get an error.
            fn $method(self, rhs: &ScalarField) -> ScalarField {
                self.$checked(rhs).expect(concat!(stringify!($method), " across charts"))
            }
        }
        impl $trait<ScalarField> for ScalarField {
            type Output = ScalarField;
            fn $method(self, rhs: ScalarField) -> ScalarField {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ScalarField> for ScalarField {
            type Output = ScalarField;
            fn $method(self, rhs: &ScalarField) -> ScalarField {
                (&self).$method(rhs)
            }
        }
    };
}

binary_op!(Add, add, checked_add);
binary_op!(Sub, sub, checked_sub);
binary_op!(Mul, mul, checked_mul);

impl Mul<&ScalarField> for f64 {
    type Output = ScalarField;
    fn mul(self, rhs: &ScalarField) -> ScalarField {
        rhs.scale(self)
    }
}

impl Mul<ScalarField> for f64 {
    type Output = ScalarField;
    fn mul(self, rhs: ScalarField) -> ScalarField {
        rhs.scale(self)
    }
}

impl Neg for &ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        self.scale(-1.0)
    }
}

impl Neg for ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        self.scale(-1.0)
    }
}

struct Differentiator {
    var: usize,
    memo: HashMap<usize, (Arc<Node>, Arc<Node>)>,
}

impl Differentiator {
    fn diff(&mut self, node: &Arc<Node>) -> Arc<Node> {
        if let Some((_, d)) = self.memo.get(&key(node)) {
            return d.clone();
        }
        let d = match &**node {
            Node::Const(_) => mk_const(0.0),
            Node::Coord(i) => mk_const(if *i == self.var { 1.0 } else { 0.0 }),
            Node::Add(a, b) => {
                let (da, db) = (self.diff(a), self.diff(b));
                mk_add(da, db)
            }
            Node::Sub(a, b) => {
                let (da, db) = (self.diff(a), self.diff(b));
                mk_sub(da, db)
            }
            Node::Mul(a, b) => {
                let (da, db) = (self.diff(a), self.diff(b));
                mk_add(mk_mul(da, b.clone()), mk_mul(a.clone(), db))
            }
            Node::Scale(k, a) => {
                let da = self.diff(a);
                mk_scale(*k, da)
            }
            Node::Sqrt(a) => {
                let da = self.diff(a);
                if is_zero(&da) {
                    da
                } else {
                    let inv = Arc::new(Node::Recip(node.clone()));
                    mk_scale(0.5, mk_mul(da, inv))
                }
            }
            Node::Recip(a) => {
                let da = self.diff(a);
                if is_zero(&da) {
                    da
                } else {
                    mk_scale(-1.0, mk_mul(da, mk_mul(node.clone(), node.clone())))
                }
            }
            Node::InverseEntry { block, row, col } => self.diff_inverse(block, *row, *col),
        };
        self.memo.insert(key(node), (node.clone(), d.clone()));
        d
    }

    /// `∂B_rc = −Σ_ab B_ra ∂A_ab B_bc`.
    fn diff_inverse(&mut self, block: &Arc<SquareBlock>, row: usize, col: usize) -> Arc<Node> {
        let n = block.n;
        let entry = |r: usize, c: usize| {
            Arc::new(Node::InverseEntry {
                block: block.clone(),
                row: r,
                col: c,
            })
        };
        let mut terms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let da = self.diff(&block.entries[a * n + b]);
                if is_zero(&da) {
                    continue;
                }
                terms.push(mk_mul(mk_mul(entry(row, a), da), entry(b, col)));
            }
        }
        let sum = terms
            .into_iter()
            .reduce(mk_add)
            .unwrap_or_else(|| mk_const(0.0));
        mk_scale(-1.0, sum)
    }
}

struct Substitution {
    args: Vec<Arc<Node>>,
    memo: HashMap<usize, (Arc<Node>, Arc<Node>)>,
    blocks: HashMap<usize, (Arc<SquareBlock>, Arc<SquareBlock>)>,
}

impl Substitution {
    fn apply(&mut self, node: &Arc<Node>) -> Arc<Node> {
        if let Some((_, s)) = self.memo.get(&key(node)) {
            return s.clone();
        }
        let s = match &**node {
            Node::Const(v) => mk_const(*v),
            Node::Coord(i) => self.args[*i].clone(),
            Node::Add(a, b) => {
                let (a, b) = (self.apply(a), self.apply(b));
                mk_add(a, b)
            }
            Node::Sub(a, b) => {
                let (a, b) = (self.apply(a), self.apply(b));
                mk_sub(a, b)
            }
            Node::Mul(a, b) => {
                let (a, b) = (self.apply(a), self.apply(b));
                mk_mul(a, b)
            }
            Node::Scale(k, a) => {
                let a = self.apply(a);
                mk_scale(*k, a)
            }
            Node::Sqrt(a) => Arc::new(Node::Sqrt(self.apply(a))),
            Node::Recip(a) => Arc::new(Node::Recip(self.apply(a))),
            Node::InverseEntry { block, row, col } => {
                let bkey = Arc::as_ptr(block) as usize;
                let new_block = match self.blocks.get(&bkey) {
                    Some((_, b)) => b.clone(),
                    None => {
                        let entries = block.entries.iter().map(|e| self.apply(e)).collect();
                        let b = Arc::new(SquareBlock {
                            n: block.n,
                            entries,
                        });
                        self.blocks.insert(bkey, (block.clone(), b.clone()));
                        b
                    }
                };
                Arc::new(Node::InverseEntry {
                    block: new_block,
                    row: *row,
                    col: *col,
                })
            }
        };
        self.memo.insert(key(node), (node.clone(), s.clone()));
        s
    }
}

/// Evaluates many fields at one point, reusing jets of shared subgraphs.
pub struct Evaluator {
    point: Point,
    memo: HashMap<usize, (Arc<Node>, Jet)>,
    inverses: HashMap<usize, (Arc<SquareBlock>, Vec<Jet>)>,
}

impl Evaluator {
    pub fn new(point: &Point) -> Self {
        Self {
            point: point.clone(),
            memo: HashMap::new(),
            inverses: HashMap::new(),
        }
    }

    pub fn point(&self) -> &Point {
        &self.point
    }

    pub fn eval(&mut self, field: &ScalarField) -> Result<Jet> {
        field
            .chart
            .ensure_same(&self.point.chart, "evaluation point")?;
        self.eval_node(&field.node)
    }

    pub fn eval_all(&mut self, fields: &[ScalarField]) -> Result<Vec<Jet>> {
        fields.iter().map(|f| self.eval(f)).collect()
    }

    pub fn values(&mut self, fields: &[ScalarField]) -> Result<Vec<f64>> {
        fields.iter().map(|f| Ok(self.eval(f)?.value())).collect()
    }

    fn eval_node(&mut self, node: &Arc<Node>) -> Result<Jet> {
        let dim = self.point.dim();
        match &**node {
            Node::Const(v) => return Ok(Jet::constant(dim, *v)),
            Node::Coord(i) => return Ok(Jet::variable(dim, *i, self.point.coords[*i])),
            _ => {}
        }
        if let Some((_, j)) = self.memo.get(&key(node)) {
            return Ok(j.clone());
        }
        let jet = match &**node {
            Node::Const(_) | Node::Coord(_) => unreachable!(),
            Node::Add(a, b) => self.eval_node(a)?.add(&self.eval_node(b)?),
            Node::Sub(a, b) => self.eval_node(a)?.sub(&self.eval_node(b)?),
            Node::Mul(a, b) => self.eval_node(a)?.mul(&self.eval_node(b)?),
            Node::Scale(k, a) => self.eval_node(a)?.scale(*k),
            Node::Sqrt(a) => self.eval_node(a)?.sqrt()?,
            Node::Recip(a) => self.eval_node(a)?.recip()?,
            Node::InverseEntry { block, row, col } => {
                let bkey = Arc::as_ptr(block) as usize;
                if !self.inverses.contains_key(&bkey) {
                    let entries = block
                        .entries
                        .iter()
                        .map(|e| self.eval_node(e))
                        .collect::<Result<Vec<_>>>()?;
                    let inv = inverse_jets(&entries, block.n)?;
                    self.inverses.insert(bkey, (block.clone(), inv));
                }
                self.inverses[&bkey].1[row * block.n + col].clone()
            }
        };
        self.memo.insert(key(node), (node.clone(), jet.clone()));
        Ok(jet)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(dim: usize) -> Chart {
        Chart::euclidean(dim).unwrap()
    }

    #[test]
    fn constant_field_has_zero_derivatives() {
        let c = r(3);
        let p = c.point(vec![1.0, 2.0, 3.0]).unwrap();
        let j = ScalarField::constant(&c, 5.0).jet(&p).unwrap();
        assert_eq!(j.value(), 5.0);
        assert_eq!(j.gradient(), &[0.0, 0.0, 0.0]);

        let c5 = r(5);
        let p5 = c5.point(vec![0.3, -1.0, 2.0, 0.0, 7.0]).unwrap();
        let h = ScalarField::constant(&c5, -3.0)
            .jet(&p5)
            .unwrap()
            .hessian_matrix();
        assert!(h.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn zero_is_additive_identity() {
        let c = r(3);
        let x = ScalarField::coordinate(&c, 0).unwrap();
        let y = ScalarField::coordinate(&c, 1).unwrap();
        let phi = &(&x * &x) * &y;
        let p = c.point(vec![0.7, -1.3, 2.0]).unwrap();
        let lhs = (&ScalarField::zero(&c) + &phi).jet(&p).unwrap();
        assert_eq!(lhs, phi.jet(&p).unwrap());
        let one = ScalarField::constant(&c, 1.0);
        assert_eq!((&phi * &one).jet(&p).unwrap(), phi.jet(&p).unwrap());
    }

    #[test]
    fn coordinate_fields() {
        let c = r(3);
        let p = c.point(vec![4.0, 5.0, 6.0]).unwrap();
        assert_eq!(ScalarField::coordinate(&c, 0).unwrap().value(&p).unwrap(), 4.0);
        let z = ScalarField::coordinate(&c, 2).unwrap().jet(&p).unwrap();
        assert_eq!(z.gradient(), &[0.0, 0.0, 1.0]);

        let q = c.point(vec![2.0, 3.0, -1.0]).unwrap();
        let prod = ScalarField::coordinate(&c, 0).unwrap() * ScalarField::coordinate(&c, 1).unwrap();
        let j = prod.jet(&q).unwrap();
        assert_eq!(j.value(), 6.0);
        assert_eq!(j.gradient(), &[3.0, 2.0, 0.0]);

        assert!(matches!(
            ScalarField::coordinate(&c, 3),
            Err(GeometryError::IndexOutOfRange { index: 3, dim: 3 })
        ));
    }

    #[test]
    fn chart_mismatch_is_reported() {
        let a = ScalarField::coordinate(&r(2), 0).unwrap();
        let b = ScalarField::coordinate(&r(3), 0).unwrap();
        assert!(matches!(
            a.checked_add(&b),
            Err(GeometryError::ChartMismatch(_))
        ));
        assert!(a.checked_mul(&b).is_err());
        let p = r(3).point(vec![0.0; 3]).unwrap();
        assert!(a.jet(&p).is_err());
    }

    #[test]
    fn point_dimension_is_checked() {
        assert!(r(3).point(vec![1.0, 2.0]).is_err());
        assert!(Chart::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn symbolic_partial_agrees_with_jet_gradient() {
        let c = r(2);
        let x = ScalarField::coordinate(&c, 0).unwrap();
        let y = ScalarField::coordinate(&c, 1).unwrap();
        let radicand = ScalarField::constant(&c, 4.0) - &x * &x - &y * &y;
        let f = radicand.sqrt() * &x;
        let p = c.point(vec![0.3, -0.4]).unwrap();
        let j = f.jet(&p).unwrap();
        for v in 0..2 {
            let dj = f.partial(v).unwrap().jet(&p).unwrap();
            assert!((dj.value() - j.partial(v)).abs() < 1e-14);
            for w in 0..2 {
                assert!((dj.partial(w) - j.hessian(v, w)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn inverse_matrix_fields_invert() {
        let c = r(2);
        let x = ScalarField::coordinate(&c, 0).unwrap();
        let y = ScalarField::coordinate(&c, 1).unwrap();
        let one = ScalarField::constant(&c, 1.0);
        let a = vec![&one + &(&x * &x), x.clone(), x.clone(), &one + &(&y * &y)];
        let inv = ScalarField::inverse_matrix(&c, &a, 2).unwrap();
        let p = c.point(vec![0.5, 1.5]).unwrap();
        let mut ev = Evaluator::new(&p);
        let av = ev.values(&a).unwrap();
        let iv = ev.values(&inv).unwrap();
        for r_ in 0..2 {
            for c_ in 0..2 {
                let s: f64 = (0..2).map(|k| av[r_ * 2 + k] * iv[k * 2 + c_]).sum();
                assert!((s - if r_ == c_ { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
        // derivative field of an inverse entry against the jet gradient
        let d = inv[1].partial(0).unwrap().value(&p).unwrap();
        assert!((d - inv[1].jet(&p).unwrap().partial(0)).abs() < 1e-14);
    }

    #[test]
    fn compose_substitutes_coordinates() {
        let src = r(2);
        let dst = r(1);
        let t = ScalarField::coordinate(&dst, 0).unwrap();
        let u = ScalarField::coordinate(&src, 0).unwrap();
        let v = ScalarField::coordinate(&src, 1).unwrap();
        let f = &u * &v;
        // (t, t²) ↦ t³
        let g = f.compose(&dst, &[t.clone(), &t * &t]).unwrap();
        let p = dst.point(vec![2.0]).unwrap();
        let j = g.jet(&p).unwrap();
        assert_eq!(j.value(), 8.0);
        assert_eq!(j.partial(0), 12.0);
        assert_eq!(j.hessian(0, 0), 12.0);
    }

    #[test]
    fn sqrt_outside_domain_errors() {
        let c = r(1);
        let x = ScalarField::coordinate(&c, 0).unwrap();
        let p = c.point(vec![-1.0]).unwrap();
        assert!(matches!(x.sqrt().jet(&p), Err(GeometryError::Domain(_))));
    }
}
