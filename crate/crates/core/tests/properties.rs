use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

use smanifold::connections::AffineConnection;
use smanifold::diffcore::{Chart, Point, ScalarField};
use smanifold::tensorfield::{
    exterior_d, exterior_d_at, lie_bracket, nijenhuis, nijenhuis_coordinate_at, EndomorphismField, MetricField,
    OneForm, VectorField,
};

const D: usize = 3;

fn chart() -> Chart {
    Chart::euclidean(D).unwrap()
}

fn u(c: &Chart, i: usize) -> ScalarField {
    ScalarField::coordinate(c, i).unwrap()
}

/// A smooth field from a small family, using every rule (sqrt, recip,
/// products, inverse entries).
fn field(c: &Chart, k: &[f64; 6]) -> ScalarField {
    let (x, y, z) = (u(c, 0), u(c, 1), u(c, 2));
    let one = ScalarField::constant(c, 1.0);
    let sq = (ScalarField::constant(c, 2.0) + &x * &x + &y * &y).sqrt();
    let rc = (ScalarField::constant(c, 1.5) + &z * &z).recip();
    let m = [
        ScalarField::constant(c, 2.0) + &x * &x,
        y.scale(0.3),
        z.scale(0.2),
        ScalarField::constant(c, 3.0) + &y * &z,
    ];
    let inv = ScalarField::inverse_matrix(c, &m, 2).unwrap();
    one.scale(k[0])
        + x.scale(k[1])
        + (&y * &z).scale(k[2])
        + sq.scale(k[3])
        + (&rc * &x).scale(k[4])
        + inv[1].scale(k[5])
}

fn coeffs() -> impl Strategy<Value = [f64; 6]> {
    prop::array::uniform6(-2.0..2.0f64)
}

fn coords() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-0.8..0.8f64, D)
}

fn vfield(c: &Chart, ks: &[[f64; 6]; 3]) -> VectorField {
    VectorField::new(c, ks.iter().map(|k| field(c, k)).collect()).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn shifted(p: &Point, i: usize, h: f64) -> Point {
    let mut c = p.coords().to_vec();
    c[i] += h;
    p.chart().point(c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jets_match_finite_differences(k in coeffs(), pc in coords()) {
        let c = chart();
        let f = field(&c, &k);
        let p = c.point(pc).unwrap();
        let j = f.jet(&p).unwrap();
        let h = 1e-5;
        for i in 0..D {
            let fd = (f.value(&shifted(&p, i, h)).unwrap() - f.value(&shifted(&p, i, -h)).unwrap()) / (2.0 * h);
            prop_assert!(rel(j.partial(i), fd) < 1e-6, "grad {i}: {} vs {fd}", j.partial(i));
            let gp = f.jet(&shifted(&p, i, h)).unwrap();
            let gm = f.jet(&shifted(&p, i, -h)).unwrap();
            for l in 0..D {
                let fd2 = (gp.partial(l) - gm.partial(l)) / (2.0 * h);
                prop_assert!(rel(j.hessian(i, l), fd2) < 1e-6, "hess {i}{l}");
            }
        }
    }

    #[test]
    fn hessian_is_symmetric(k in coeffs(), pc in coords()) {
        let c = chart();
        let j = field(&c, &k).jet(&c.point(pc).unwrap()).unwrap();
        let h = j.hessian_matrix();
        prop_assert!((&h - h.transpose()).amax() <= 1e-12 * h.amax().max(1.0));
    }

    #[test]
    fn symbolic_partial_matches_jet(k in coeffs(), pc in coords(), i in 0..D) {
        let c = chart();
        let f = field(&c, &k);
        let p = c.point(pc).unwrap();
        let j = f.jet(&p).unwrap();
        let dj = f.partial(i).unwrap().jet(&p).unwrap();
        prop_assert!(rel(dj.value(), j.partial(i)) < 1e-12);
        for l in 0..D {
            prop_assert!(rel(dj.partial(l), j.hessian(i, l)) < 1e-12);
        }
    }

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi(
        a in prop::array::uniform3(coeffs()),
        b in prop::array::uniform3(coeffs()),
        e in prop::array::uniform3(coeffs()),
        pc in coords(),
    ) {
        let c = chart();
        let (x, y, z) = (vfield(&c, &a), vfield(&c, &b), vfield(&c, &e));
        let p = c.point(pc).unwrap();
        let xy = lie_bracket(&x, &y).unwrap().at(&p).unwrap();
        let yx = lie_bracket(&y, &x).unwrap().at(&p).unwrap();
        prop_assert!((&xy + &yx).amax() < 1e-12 * xy.amax().max(1.0));
        let jac = lie_bracket(&x, &lie_bracket(&y, &z).unwrap()).unwrap().at(&p).unwrap()
            + lie_bracket(&y, &lie_bracket(&z, &x).unwrap()).unwrap().at(&p).unwrap()
            + lie_bracket(&z, &lie_bracket(&x, &y).unwrap()).unwrap().at(&p).unwrap();
        prop_assert!(jac.amax() < 1e-9, "{}", jac.amax());
    }

    #[test]
    fn d_of_exact_form_vanishes(k in coeffs(), pc in coords()) {
        let c = chart();
        let df = OneForm::differential(&field(&c, &k)).unwrap();
        let p = c.point(pc).unwrap();
        prop_assert!(exterior_d(&df).unwrap().at(&p).unwrap().amax() < 1e-12);
        prop_assert!(exterior_d_at(&df, &p).unwrap().amax() < 1e-12);
    }

    #[test]
    fn exterior_d_paths_agree(ks in prop::array::uniform3(coeffs()), pc in coords()) {
        let c = chart();
        let eta = OneForm::new(&c, ks.iter().map(|k| field(&c, k)).collect()).unwrap();
        let p = c.point(pc).unwrap();
        let a = exterior_d(&eta).unwrap().at(&p).unwrap();
        let b = exterior_d_at(&eta, &p).unwrap();
        prop_assert!((&a - &b).amax() < 1e-12 * a.amax().max(1.0));
        prop_assert!((&a + a.transpose()).amax() < 1e-12 * a.amax().max(1.0));
    }

    #[test]
    fn nijenhuis_is_tensorial(
        fk in prop::array::uniform9(coeffs()),
        a in prop::array::uniform3(coeffs()),
        b in prop::array::uniform3(coeffs()),
        phi in coeffs(),
        pc in coords(),
    ) {
        let c = chart();
        let f = EndomorphismField::new(&c, fk.iter().map(|k| field(&c, k)).collect()).unwrap();
        let (x, y) = (vfield(&c, &a), vfield(&c, &b));
        let phi = field(&c, &phi);
        let p = c.point(pc).unwrap();
        let n = nijenhuis(&f, &x, &y, &p).unwrap();
        let scaled = nijenhuis(&f, &x.times(&phi).unwrap(), &y, &p).unwrap();
        let pv = phi.value(&p).unwrap();
        prop_assert!((&scaled - &n * pv).amax() < 1e-9 * n.amax().max(1.0));

        // pointwise contraction of the coordinate tensor
        let coord = nijenhuis_coordinate_at(&f, &p).unwrap();
        let (xv, yv) = (x.at(&p).unwrap(), y.at(&p).unwrap());
        let mut contracted = DVector::zeros(D);
        for i in 0..D {
            for j in 0..D {
                contracted += &coord[i * D + j] * (xv[i] * yv[j]);
            }
        }
        prop_assert!((&contracted - &n).amax() < 1e-9 * n.amax().max(1.0));
    }

    #[test]
    fn levi_civita_matches_difference_oracle(k in prop::array::uniform3(coeffs()), pc in coords()) {
        let c = chart();
        let (x, y, z) = (u(&c, 0), u(&c, 1), u(&c, 2));
        // g = I·3 + small symmetric perturbation, positive definite on the box
        let a = field(&c, &k[0]).scale(0.05);
        let b = field(&c, &k[1]).scale(0.05);
        let e = field(&c, &k[2]).scale(0.05);
        let three = ScalarField::constant(&c, 3.0);
        let comps = vec![
            &three + &(&x * &x), a.clone(), b.clone(),
            a, &three + &(&y * &z).scale(0.5), e.clone(),
            b, e, three.clone() + (&z * &z).scale(0.5),
        ];
        let g = MetricField::new(&c, comps).unwrap();
        let lc = AffineConnection::levi_civita(&g).unwrap();
        let p = c.point(pc).unwrap();
        let at = lc.at(&p).unwrap();

        let h = 1e-5;
        let gm = |q: &Point| g.at(q).unwrap();
        let dg: Vec<DMatrix<f64>> = (0..D)
            .map(|m| (gm(&shifted(&p, m, h)) - gm(&shifted(&p, m, -h))) / (2.0 * h))
            .collect();
        let ginv = gm(&p).try_inverse().unwrap();
        for kk in 0..D {
            for i in 0..D {
                for j in 0..D {
                    let mut want = 0.0;
                    for l in 0..D {
                        want += 0.5 * ginv[(kk, l)] * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]);
                    }
                    prop_assert!(rel(at.gamma(kk, i, j), want) < 1e-6);
                }
            }
        }
        prop_assert!(lc.metric_compat_residual(&g, std::slice::from_ref(&p)).unwrap() < 1e-12);
    }

    #[test]
    fn covariant_derivative_leibniz_and_tensoriality(
        a in prop::array::uniform3(coeffs()),
        b in prop::array::uniform3(coeffs()),
        phi in coeffs(),
        pc in coords(),
    ) {
        let c = chart();
        let (x, y) = (u(&c, 0), u(&c, 1));
        let g = MetricField::new(&c, vec![
            ScalarField::constant(&c, 1.0) + &x * &x, x.scale(0.2), ScalarField::zero(&c),
            x.scale(0.2), ScalarField::constant(&c, 2.0) + &y * &y, ScalarField::zero(&c),
            ScalarField::zero(&c), ScalarField::zero(&c), ScalarField::constant(&c, 1.0),
        ]).unwrap();
        let lc = AffineConnection::levi_civita(&g).unwrap();
        let (xf, yf) = (vfield(&c, &a), vfield(&c, &b));
        let phi = field(&c, &phi);
        let p = c.point(pc).unwrap();
        let pv = phi.value(&p).unwrap();
        let base = lc.covariant_derivative(&xf, &yf).unwrap().at(&p).unwrap();
        let lhs = lc.covariant_derivative(&xf, &yf.times(&phi).unwrap()).unwrap().at(&p).unwrap();
        let xphi = xf.derivative_of(&phi).unwrap().value(&p).unwrap();
        let rhs = yf.at(&p).unwrap() * xphi + &base * pv;
        prop_assert!((&lhs - &rhs).amax() < 1e-9 * rhs.amax().max(1.0));
        let tens = lc.covariant_derivative(&xf.times(&phi).unwrap(), &yf).unwrap().at(&p).unwrap();
        prop_assert!((&tens - &base * pv).amax() < 1e-9 * base.amax().max(1.0));
        let t = lc.torsion(&xf, &yf, &p).unwrap();
        prop_assert!(t.amax() < 1e-9 * base.amax().max(1.0));
    }
}
