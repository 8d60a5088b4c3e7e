//! Curvature of an arbitrary affine connection at a point.
//!
//! Convention: `R(X,Y)Z = ∇_X ∇_Y Z − ∇_Y ∇_X Z − ∇_{[X,Y]} Z` and
//! `R(X,Y,Z,W) = g(R(X,Y)Z, W)`, so the sectional curvature of a plane is
//! `R(X,Y,Y,X) / (g(X,X)g(Y,Y) − g(X,Y)²)` and is positive on round spheres.
//! In coordinates
//!
//! ```text
//! R(∂_a,∂_b)∂_c = (∂_a Γ^l_bc − ∂_b Γ^l_ac + Γ^m_bc Γ^l_am − Γ^m_ac Γ^l_bm) ∂_l
//! ```
//!
//! Only the antisymmetry in the first pair holds for every connection; no
//! other symmetry is assumed when storing or contracting the tensor. For a
//! non-metric connection the "sectional curvature" below is simply the
//! quotient above in the order written, and `K(X,Y)` may differ from
//! `K(Y,X)`.

use nalgebra::{DMatrix, DVector};

use crate::connections::AffineConnection;
use crate::diffcore::{Evaluator, Point};
use crate::error::{GeometryError, Result};
use crate::fstructure::StructureAt;
use crate::tensorfield::{pair_at, TangentVector};

/// Planes whose Gram determinant falls below this are rejected.
pub const MIN_GRAM_DET: f64 = 1e-12;

/// Vectors whose 𝓜-component exceeds this (in `max |η^α(X)|`) are not in 𝓛.
pub const L_MEMBERSHIP_TOL: f64 = 1e-8;

/// The full curvature tensor at one point.
#[derive(Clone, Debug)]
pub struct CurvatureAt {
    point: Point,
    dim: usize,
    /// `R(∂_a,∂_b)∂_c` component `l`, at `((a*d + b)*d + c)*d + l`.
    mixed: Vec<f64>,
    /// `R(∂_a,∂_b,∂_c,∂_e)` at `((a*d + b)*d + c)*d + e`.
    lowered: Vec<f64>,
    g: DMatrix<f64>,
}

impl CurvatureAt {
    pub fn point(&self) -> &Point {
        &self.point
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric(&self) -> &DMatrix<f64> {
        &self.g
    }

    /// Always false: no pair or last-pair symmetry is used anywhere.
    pub fn symmetry_assumed(&self) -> bool {
        false
    }

    /// `R(∂_a, ∂_b, ∂_c, ∂_e)`.
    pub fn component(&self, a: usize, b: usize, c: usize, e: usize) -> f64 {
        let d = self.dim;
        self.lowered[((a * d + b) * d + c) * d + e]
    }

    pub fn lowered(&self) -> &[f64] {
        &self.lowered
    }

    /// `R(X,Y,Z,W)` for tangent vectors at the point.
    pub fn eval(&self, x: &TangentVector, y: &TangentVector, z: &TangentVector, w: &TangentVector) -> f64 {
        let d = self.dim;
        let mut s = 0.0;
        for a in 0..d {
            if x[a] == 0.0 {
                continue;
            }
            for b in 0..d {
                let xy = x[a] * y[b];
                if xy == 0.0 {
                    continue;
                }
                for c in 0..d {
                    let xyz = xy * z[c];
                    if xyz == 0.0 {
                        continue;
                    }
                    let base = ((a * d + b) * d + c) * d;
                    for e in 0..d {
                        s += xyz * self.lowered[base + e] * w[e];
                    }
                }
            }
        }
        s
    }

    /// The vector `R(X,Y)Z`.
    pub fn operator(&self, x: &TangentVector, y: &TangentVector, z: &TangentVector) -> TangentVector {
        let d = self.dim;
        let mut out = DVector::zeros(d);
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let k = x[a] * y[b] * z[c];
                    if k == 0.0 {
                        continue;
                    }
                    let base = ((a * d + b) * d + c) * d;
                    for l in 0..d {
                        out[l] += k * self.mixed[base + l];
                    }
                }
            }
        }
        out
    }
}

/// Curvature tensor of `conn` at `p`, lowered with the metric matrix `g`.
pub fn riemann_tensor(conn: &AffineConnection, g: &crate::tensorfield::MetricField, p: &Point) -> Result<CurvatureAt> {
    let mut ev = Evaluator::new(p);
    let gm = g.at_with(&mut ev)?;
    let c = conn.at_with(&mut ev)?;
    let d = c.dim();
    let mut mixed = vec![0.0; d * d * d * d];
    for a in 0..d {
        for b in 0..d {
            if a == b {
                continue;
            }
            for cc in 0..d {
                let base = ((a * d + b) * d + cc) * d;
                for l in 0..d {
                    let mut v = c.dgamma(a, l, b, cc) - c.dgamma(b, l, a, cc);
                    for m in 0..d {
                        v += c.gamma(m, b, cc) * c.gamma(l, a, m) - c.gamma(m, a, cc) * c.gamma(l, b, m);
                    }
                    mixed[base + l] = v;
                }
            }
        }
    }
    let mut lowered = vec![0.0; d * d * d * d];
    for abc in 0..d * d * d {
        let base = abc * d;
        for e in 0..d {
            let mut v = 0.0;
            for l in 0..d {
                v += mixed[base + l] * gm[(l, e)];
            }
            lowered[base + e] = v;
        }
    }
    Ok(CurvatureAt {
        point: p.clone(),
        dim: d,
        mixed,
        lowered,
        g: gm,
    })
}

/// `R(X,Y,Y,X) / (g(X,X)g(Y,Y) − g(X,Y)²)`, order as written.
pub fn sectional(rp: &CurvatureAt, x: &TangentVector, y: &TangentVector) -> Result<f64> {
    let gxx = pair_at(&rp.g, x, x);
    let gyy = pair_at(&rp.g, y, y);
    let gxy = pair_at(&rp.g, x, y);
    let det = gxx * gyy - gxy * gxy;
    let scale = (gxx * gyy).max(f64::MIN_POSITIVE);
    if !(det > MIN_GRAM_DET * scale.max(1.0)) {
        return Err(GeometryError::DegeneratePlane(det));
    }
    Ok(rp.eval(x, y, y, x) / det)
}

fn ensure_in_l(st: &StructureAt, v: &TangentVector) -> Result<()> {
    let worst = st.eta.iter().map(|e| e.dot(v).abs()).fold(0.0, f64::max);
    let norm = st.norm(v).max(1.0);
    if worst > L_MEMBERSHIP_TOL * norm {
        return Err(GeometryError::DimensionMismatch(format!(
            "vector is not in L: |eta(X)| = {worst:e}"
        )));
    }
    Ok(())
}

/// Sectional curvature of the f-section spanned by `X ∈ 𝓛` and `fX`.
pub fn f_sectional(rp: &CurvatureAt, st: &StructureAt, x: &TangentVector) -> Result<f64> {
    ensure_in_l(st, x)?;
    sectional(rp, x, &st.apply_f(x))
}

/// Sectional curvature of a plane in 𝓛.
pub fn l_sectional(rp: &CurvatureAt, st: &StructureAt, x: &TangentVector, y: &TangentVector) -> Result<f64> {
    ensure_in_l(st, x)?;
    ensure_in_l(st, y)?;
    sectional(rp, x, y)
}

/// `τ = ½ Σ_{i≠j} R(e_i, e_j, e_j, e_i)` over an orthonormal frame, summing
/// ordered pairs exactly as written.
pub fn scalar_curvature(rp: &CurvatureAt, frame: &[TangentVector]) -> f64 {
    let mut s = 0.0;
    for (i, ei) in frame.iter().enumerate() {
        for (j, ej) in frame.iter().enumerate() {
            if i != j {
                s += rp.eval(ei, ej, ej, ei);
            }
        }
    }
    0.5 * s
}

/// Curvature tensor of an S-space-form of constant f-sectional curvature `c`:
///
/// ```text
/// R(X,Y,Z,W) = Σ_{α,β} { g(fX,fW)η^α(Y)η^β(Z) − g(fX,fZ)η^α(Y)η^β(W)
///                      + g(fY,fZ)η^α(X)η^β(W) − g(fY,fW)η^α(X)η^β(Z) }
///            + (c+3s)/4 { g(fX,fW)g(fY,fZ) − g(fX,fZ)g(fY,fW) }
///            + (c−s)/4 { Φ(X,W)Φ(Y,Z) − Φ(X,Z)Φ(Y,W) − 2Φ(X,Y)Φ(Z,W) }
/// ```
pub fn space_form_tensor(
    c: f64,
    st: &StructureAt,
    x: &TangentVector,
    y: &TangentVector,
    z: &TangentVector,
    w: &TangentVector,
) -> f64 {
    let s = st.xi.len() as f64;
    let (fx, fy, fz, fw) = (st.apply_f(x), st.apply_f(y), st.apply_f(z), st.apply_f(w));
    let gff = |a: &TangentVector, b: &TangentVector| st.pair(a, b);
    // Σ_{α,β} η^α(U) η^β(V) = (Σ_α η^α(U)) (Σ_β η^β(V))
    let eta_sum = |v: &TangentVector| st.eta.iter().map(|e| e.dot(v)).sum::<f64>();
    let (ex, ey, ez, ew) = (eta_sum(x), eta_sum(y), eta_sum(z), eta_sum(w));
    let eta_block = gff(&fx, &fw) * ey * ez - gff(&fx, &fz) * ey * ew + gff(&fy, &fz) * ex * ew
        - gff(&fy, &fw) * ex * ez;
    let g_block = gff(&fx, &fw) * gff(&fy, &fz) - gff(&fx, &fz) * gff(&fy, &fw);
    let phi_block = st.phi(x, w) * st.phi(y, z) - st.phi(x, z) * st.phi(y, w) - 2.0 * st.phi(x, y) * st.phi(z, w);
    eta_block + (c + 3.0 * s) / 4.0 * g_block + (c - s) / 4.0 * phi_block
}

/// `K_𝓛(X,Y) = (c+3s)/4 + 3(c−s)/4 · g(X,fY)²` for orthonormal `X, Y ∈ 𝓛`
/// in an S-space-form.
pub fn kl_closed_form(c: f64, s: usize, st: &StructureAt, x: &TangentVector, y: &TangentVector) -> f64 {
    let s = s as f64;
    let gxfy = st.phi(x, y);
    (c + 3.0 * s) / 4.0 + 3.0 * (c - s) / 4.0 * gxfy * gxfy
}

/// How a plane sits relative to the splitting `𝓛 ⊕ 𝓜`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectionKind {
    /// Spanned by `X ∈ 𝓛` and `fX`.
    FSection,
    /// Both vectors in 𝓛.
    LSection,
    /// Both vectors in 𝓜.
    Structure,
    Mixed,
}

#[derive(Clone, Debug)]
pub struct PlaneSection {
    pub x: TangentVector,
    pub y: TangentVector,
    pub kind: SectionKind,
}

impl PlaneSection {
    pub fn new(st: &StructureAt, x: TangentVector, y: TangentVector) -> Result<Self> {
        let gxx = st.pair(&x, &x);
        let gyy = st.pair(&y, &y);
        let gxy = st.pair(&x, &y);
        let det = gxx * gyy - gxy * gxy;
        if !(det > MIN_GRAM_DET) {
            return Err(GeometryError::DegeneratePlane(det));
        }
        let in_l = |v: &TangentVector| st.eta.iter().all(|e| e.dot(v).abs() <= L_MEMBERSHIP_TOL * st.norm(v).max(1.0));
        let in_m = |v: &TangentVector| st.norm(&st.project_l(v)) <= L_MEMBERSHIP_TOL * st.norm(v).max(1.0);
        let kind = if in_l(&x) && in_l(&y) {
            // the plane is an f-section iff fX lies in span(X, Y)
            let fx = st.apply_f(&x);
            let cx = (gyy * st.pair(&fx, &x) - gxy * st.pair(&fx, &y)) / det;
            let cy = (gxx * st.pair(&fx, &y) - gxy * st.pair(&fx, &x)) / det;
            let rest = &fx - &x * cx - &y * cy;
            if st.norm(&rest) <= 1e-8 * st.norm(&fx).max(1.0) {
                SectionKind::FSection
            } else {
                SectionKind::LSection
            }
        } else if in_m(&x) && in_m(&y) {
            SectionKind::Structure
        } else {
            SectionKind::Mixed
        };
        Ok(Self { x, y, kind })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffcore::{Chart, ScalarField};
    use crate::tensorfield::MetricField;

    #[test]
    fn euclidean_space_is_flat() {
        let c = Chart::euclidean(3).unwrap();
        let g = MetricField::euclidean(&c);
        let lc = AffineConnection::levi_civita(&g).unwrap();
        let p = c.point(vec![1.0, -2.0, 0.5]).unwrap();
        let r = riemann_tensor(&lc, &g, &p).unwrap();
        assert!(r.lowered().iter().all(|&v| v == 0.0));
        assert!(!r.symmetry_assumed());
    }

    #[test]
    fn round_sphere_has_curvature_one_over_radius_squared() {
        // Graph chart of the radius-2 sphere in ℝ³ over (x, y).
        let c = Chart::new(["x", "y"]).unwrap();
        let x = ScalarField::coordinate(&c, 0).unwrap();
        let y = ScalarField::coordinate(&c, 1).unwrap();
        let w = (ScalarField::constant(&c, 4.0) - &x * &x - &y * &y).recip();
        let one = ScalarField::constant(&c, 1.0);
        let g = MetricField::new(
            &c,
            vec![
                &one + &(&(&x * &x) * &w),
                &(&x * &y) * &w,
                &(&x * &y) * &w,
                &one + &(&(&y * &y) * &w),
            ],
        )
        .unwrap();
        let lc = AffineConnection::levi_civita(&g).unwrap();
        let p = c.point(vec![0.3, -0.6]).unwrap();
        let r = riemann_tensor(&lc, &g, &p).unwrap();
        let e0 = DVector::from_vec(vec![1.0, 0.0]);
        let e1 = DVector::from_vec(vec![0.0, 1.0]);
        let k = sectional(&r, &e0, &e1).unwrap();
        assert!((k - 0.25).abs() < 1e-12, "{k}");
        // reversing the order of a metric connection's plane changes nothing
        assert!((sectional(&r, &e1, &e0).unwrap() - k).abs() < 1e-13);
        assert!(matches!(sectional(&r, &e0, &e0), Err(GeometryError::DegeneratePlane(_))));
    }
}
