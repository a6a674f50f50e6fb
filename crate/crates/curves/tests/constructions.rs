use std::collections::BTreeMap;

use cm3_core::homology::graded_coker_dims;
use cm3_core::{Ideal, Polynomial, Ring, QQ};
use cm3_curves::construct::{intersection_length, quasiprimitive_h2, zw};
use cm3_curves::witness::{pure_power_quasiprimitive, witness_components, witness_filtrant};
use cm3_curves::*;
use proptest::prelude::*;

fn poly(s: &str) -> Polynomial<QQ> {
    Polynomial::parse(s, Ring::geometric()).unwrap()
}

fn ideal(gens: &[&str]) -> Ideal<QQ> {
    Ideal::parse(Ring::geometric(), gens).unwrap()
}

/// `dim (k[z,w]/(z^i, w^j))_m`, by counting exponent pairs.
fn binary_quotient_dim(i: i64, j: i64, m: i64) -> usize {
    (0..=m.max(-1)).filter(|&e| e < i && m - e < j).count()
}

fn nonzero(f: impl Fn(i32) -> usize, lo: i32, hi: i32) -> BTreeMap<i32, usize> {
    (lo..=hi).map(|n| (n, f(n))).filter(|&(_, d)| d > 0).collect()
}

#[test]
fn double_lines_match_the_monomial_count() {
    for a in -1..=2i64 {
        let rec = double_line(&DoubleLineSpec::<QQ>::standard(a).unwrap()).unwrap();
        assert_eq!((rec.degree, rec.genus), (2, -1 - a));
        let e = (a + 1) as usize;
        let expected = ideal(&["x^2", "x*y", "y^2", &format!("x*w^{} - y*z^{}", e, e)]);
        assert!(rec.ideal.equals(&expected));
        let oracle = nonzero(|n| binary_quotient_dim(a + 1, a + 1, n as i64 + a), -20, 20);
        assert_eq!(rec.rao.nonzero(), oracle, "a = {}", a);
        assert!(rec.certificates.locally_cm && rec.certificates.saturated);
    }
}

#[test]
fn double_line_examples() {
    let planar = double_line(&DoubleLineSpec::new(-1, poly("1"), poly("0")).unwrap()).unwrap();
    assert!(planar.ideal.equals(&ideal(&["x^2", "y"])));
    assert_eq!(planar.genus, 0);
    let a1 = double_line(&DoubleLineSpec::new(1, poly("z^2"), poly("w^2")).unwrap()).unwrap();
    assert_eq!(a1.rao.nonzero(), BTreeMap::from([(-1, 1), (0, 2), (1, 1)]));
}

#[test]
fn planar_base_triple_lines() {
    for b in [0i64, 1, 2, 3, 5] {
        let spec = TripleLineSpecPlanarBase::<QQ>::standard(b).unwrap();
        let rec = triple_line_planar_base(&spec).unwrap();
        assert_eq!((rec.degree, rec.genus), (3, 1 - b));
        // p = z^(b-1), q = w^b; for b = 0 the quotient is zero
        let oracle = if b == 0 {
            BTreeMap::new()
        } else {
            nonzero(|n| binary_quotient_dim(b - 1, b, n as i64 + b - 2), -20, 20)
        };
        assert_eq!(rec.rao.nonzero(), oracle, "b = {}", b);
    }
    let nbhd = triple_line_planar_base(&TripleLineSpecPlanarBase::<QQ>::neighbourhood()).unwrap();
    assert!(nbhd.ideal.equals(&ideal(&["x^2", "x*y", "y^2"])));
    assert_eq!(nbhd.genus, 0);
    let w = triple_line_planar_base(&TripleLineSpecPlanarBase::new(2, poly("z"), poly("w^2")).unwrap()).unwrap();
    assert!(w.ideal.equals(&ideal(&["x^2", "x*y", "y^3", "x*w^2 - y^2*z"])));
    assert_eq!(w.rao.nonzero(), BTreeMap::from([(0, 1), (1, 1)]));
}

#[test]
fn quasiprimitive_triple_lines() {
    for a in 0..=2i64 {
        for b in 0..=2i64 {
            let spec = pure_power_quasiprimitive::<QQ>(a, b).unwrap();
            let rec = triple_line_quasiprimitive(&spec).unwrap();
            assert_eq!((rec.degree, rec.genus), (3, -2 - 3 * a - b), "type ({}, {})", a, b);
            assert!(rec.certificates.locally_cm);
            assert!(verify_cm_filtrant(&rec, &spec.filtrant().ideal()).unwrap());
            for l in -2 * a - b - 3..=0 {
                let h = rec.cohomology(l as i32).unwrap();
                assert_eq!(h[2], quasiprimitive_h2(a, b, l), "h2 at l = {} for ({}, {})", l, a, b);
            }
            if b >= 1 {
                let (lo, hi) = rec.rao.window;
                let coker = graded_coker_dims(&spec.psi().unwrap(), lo..=hi);
                assert_eq!(coker, rec.rao.dims, "psi for ({}, {})", a, b);
            }
        }
    }
}

#[test]
fn quasiprimitive_examples() {
    let s00 = TripleLineSpecQuasiprimitive::new(0, 0, poly("z"), poly("w"), poly("1"), poly("z^2"), None).unwrap();
    let r00 = triple_line_quasiprimitive(&s00).unwrap();
    let expected = ideal(&["x^3", "x^2*y", "x*y^2", "y^3", "x*(x*w - y*z)", "y*(x*w - y*z)", "x*w - y*z - x^2"]);
    assert!(r00.ideal.equals(&expected));
    // the Rao function of three skew lines, as for every curve in H_0
    assert_eq!(r00.rao.nonzero(), BTreeMap::from([(0, 2), (1, 2)]));
    assert!(!r00.certificates.extremal);

    let s01 = TripleLineSpecQuasiprimitive::new(0, 1, poly("z"), poly("w"), poly("z"), poly("w^3"), None).unwrap();
    assert_eq!(triple_line_quasiprimitive(&s01).unwrap().genus, -3);

    let s10 = TripleLineSpecQuasiprimitive::new(1, 0, poly("z^2"), poly("w^2"), poly("1"), poly("z^5"), None).unwrap();
    let r10 = triple_line_quasiprimitive(&s10).unwrap();
    assert_eq!(r10.genus, -5);
    assert_eq!(r10.rao_generators.len(), 2);
}

#[test]
fn cm_filtrants() {
    let s01 = TripleLineSpecQuasiprimitive::new(0, 1, poly("z"), poly("w"), poly("z"), poly("w^3"), None).unwrap();
    let r01 = triple_line_quasiprimitive(&s01).unwrap();
    assert!(verify_cm_filtrant(&r01, &ideal(&["x^2", "x*y", "y^2", "x*w - y*z"])).unwrap());
    let nbhd = triple_line_planar_base(&TripleLineSpecPlanarBase::<QQ>::neighbourhood()).unwrap();
    assert!(!verify_cm_filtrant(&nbhd, &ideal(&["x^2", "x*y", "y^2", "x*w - y*z"])).unwrap());
    let w = triple_line_planar_base(&TripleLineSpecPlanarBase::new(2, poly("z"), poly("w^2")).unwrap()).unwrap();
    assert!(verify_cm_filtrant(&w, &ideal(&["x", "y^2"])).unwrap());
}

#[test]
fn unions() {
    let skew = union_curve(&ideal(&["x", "y"]), &ideal(&["z", "w"])).unwrap();
    assert_eq!((skew.degree, skew.genus), (2, -1));
    let fam2 = union_curve(&ideal(&["x^2", "x*y", "y^2", "x*w^2 - y*z^2"]), &ideal(&["z", "w"])).unwrap();
    assert_eq!(fam2.genus, -3);
    let j = ideal(&["x^2*z", "x^2*w", "x*y*z", "x*y*w", "y^2*z", "y^2*w", "x*w^2 - y*z^2"]);
    assert!(fam2.ideal.equals(&j));
    let fam1 = union_curve(&ideal(&["x^2", "x*y", "y^2", "x*w^3 - y*z^3"]), &ideal(&["x", "z"])).unwrap();
    assert_eq!(fam1.genus, -2);
    assert!(fam1.certificates.extremal);
}

#[test]
fn invariants_of_unsaturated_and_extremal_ideals() {
    // skew lines times the irrelevant ideal
    let skew = ideal(&["x*z", "x*w", "y*z", "y*w"]);
    let m = ideal(&["x", "y", "z", "w"]);
    let rec = curve_invariants(&skew.product(&m), Provenance::new("test")).unwrap();
    assert!(!rec.certificates.input_saturated);
    assert!(rec.certificates.saturated && rec.certificates.locally_cm);
    assert!(rec.ideal.equals(&skew));
    assert_eq!((rec.degree, rec.genus), (2, -1));
    let z = curve_invariants(&ideal(&["x^2", "x*y", "y^2", "x*w - y*z"]), Provenance::new("test")).unwrap();
    assert!(z.certificates.extremal);
    assert!(matches!(
        curve_invariants(&ideal(&["x", "y", "z"]), Provenance::new("point")),
        Err(CurveError::Algebra(_))
    ));
}

#[test]
fn two_lines_times_each_other_keep_an_embedded_point() {
    // (x,y)(x,z) has an embedded point at (0:0:0:1), which saturation keeps
    let product = ideal(&["x^2", "x*y", "x*z", "y*z"]);
    assert!(product.is_saturated().unwrap());
    assert!(matches!(curve_invariants(&product, Provenance::new("test")), Err(CurveError::NotLocallyCm(_))));
    let pair = curve_invariants(&ideal(&["x", "y*z"]), Provenance::new("test")).unwrap();
    assert_eq!((pair.degree, pair.genus), (2, 0));
}

#[test]
fn scalar_multiples_give_equal_ideals() {
    let a = DoubleLineSpec::new(1, poly("z^2 + w^2"), poly("z*w")).unwrap().ideal();
    let b = DoubleLineSpec::new(1, poly("3*z^2 + 3*w^2"), poly("3*z*w")).unwrap().ideal();
    assert!(a.equals(&b));
}

#[test]
fn union_witnesses_add_genus() {
    for g in [-2i64, -3, -5] {
        for label in [WitnessLabel::FamIa, WitnessLabel::FamIb, WitnessLabel::FamIIa] {
            let (c1, c2) = witness_components::<QQ>(g, label).unwrap().unwrap();
            let p1 = cm3_core::hilbert::hilbert_polynomial(&c1).unwrap().genus;
            let p2 = cm3_core::hilbert::hilbert_polynomial(&c2).unwrap().genus;
            let len = intersection_length(&c1, &c2).unwrap().unwrap();
            let rec = witness::<QQ>(g, label).unwrap();
            assert_eq!(rec.genus, p1 + p2 + len - 1, "{} at g = {}", label, g);
        }
    }
}

#[test]
fn triple_witnesses_have_their_filtrants() {
    for (g, label) in [(-2, WitnessLabel::FamIc), (-3, WitnessLabel::FamIIb), (-8, WitnessLabel::Ha(1))] {
        let rec = witness::<QQ>(g, label).unwrap();
        let z = witness_filtrant::<QQ>(g, label).unwrap().unwrap();
        assert!(verify_cm_filtrant(&rec, &z).unwrap(), "{} at g = {}", label, g);
    }
}

#[test]
fn witnesses_and_their_genus_ranges() {
    let w = witness::<QQ>(-2, WitnessLabel::FamIa).unwrap();
    assert!(w.certificates.extremal);
    let h1 = witness::<QQ>(-5, WitnessLabel::Ha(1)).unwrap();
    assert_eq!(h1.genus, -5);
    assert_eq!(h1.provenance.params["b"], "0");
    assert!(witness::<QQ>(-1, WitnessLabel::FamIa).is_err());
    assert!(witness::<QQ>(-4, WitnessLabel::Ha(1)).is_err());
    assert!(witness::<QQ>(0, WitnessLabel::PlaneCubic).is_err());
    for s in ["famI-a", "Ha(3)", "g-1-conic-line"] {
        assert_eq!(s.parse::<WitnessLabel>().unwrap().to_string(), s);
    }
}

#[test]
fn witnesses_obey_the_rao_bounds() {
    for g in [1i64, 0, -1] {
        let label = cm3_curves::witness::small_genus_label(g).unwrap();
        let w = witness::<QQ>(g, label).unwrap();
        assert!(w.bounds().holds_for(&w.rao));
    }
    for g in [-2i64, -3, -5, -8] {
        let mut labels = vec![WitnessLabel::FamIa, WitnessLabel::FamIb, WitnessLabel::FamIc];
        labels.extend([WitnessLabel::FamIIa, WitnessLabel::FamIIb]);
        for label in labels {
            let w = witness::<QQ>(g, label).unwrap();
            assert!(w.bounds().holds_for(&w.rao), "{} at g = {}", label, g);
        }
        for g in [-2i64, -3, -5] {
            for label in [WitnessLabel::FamIa, WitnessLabel::FamIb, WitnessLabel::FamIc] {
                assert!(witness::<QQ>(g, label).unwrap().certificates.extremal, "{} at g = {}", label, g);
            }
        }
    }
}

#[test]
fn famii_unions_and_triple_lines_share_hilbert_functions() {
    for g in [-3i64, -4, -6] {
        let a = witness::<QQ>(g, WitnessLabel::FamIIa).unwrap();
        let b = witness::<QQ>(g, WitnessLabel::FamIIb).unwrap();
        for n in 0..=10 {
            assert_eq!(
                cm3_core::hilbert::hilbert_function(&a.ideal, n).unwrap(),
                cm3_core::hilbert::hilbert_function(&b.ideal, n).unwrap(),
                "g = {}, n = {}",
                g,
                n
            );
        }
        assert_eq!(a.rao.nonzero(), b.rao.nonzero());
    }
}

#[test]
fn liaison_of_the_extremal_witness() {
    let w = witness::<QQ>(-2, WitnessLabel::FamIa).unwrap();
    let linked = w.ideal.liaison(&poly("x^2"), &poly("y^2*z")).unwrap();
    let rec = curve_invariants(&linked, Provenance::new("linked")).unwrap();
    assert_eq!((rec.degree, rec.genus), (3, -2));
    assert!(rec.certificates.extremal);
}

#[test]
fn json_is_deterministic_and_sorted() {
    let rec = witness::<QQ>(-3, WitnessLabel::FamIIb).unwrap();
    let a = serde_json::to_string(&rec.to_json()).unwrap();
    let b = serde_json::to_string(&witness::<QQ>(-3, WitnessLabel::FamIIb).unwrap().to_json()).unwrap();
    assert_eq!(a, b);
    let keys: Vec<String> = rec.to_json().as_object().unwrap().keys().cloned().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(rec.to_json()["genus"], -3);
}

#[test]
fn prime_field_agrees_with_rationals() {
    use cm3_core::Fp32003;
    for (g, label) in [(-3, WitnessLabel::FamIIb), (-2, WitnessLabel::FamIa), (-8, WitnessLabel::Ha(1))] {
        let q = witness::<QQ>(g, label).unwrap();
        let p = witness::<Fp32003>(g, label).unwrap();
        assert_eq!(q.rao.dims, p.rao.dims);
        assert_eq!(q.betti, p.betti);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn double_line_ideal_is_invariant_under_scaling(c in 1i64..50, neg in any::<bool>(), a in 0i64..3) {
        let c = if neg { -c } else { c };
        let e = (a + 1) as u16;
        let f = &zw::<QQ>(e, 0) + &zw(0, e);
        let g = zw::<QQ>(1, a as u16);
        let scale = |p: &Polynomial<QQ>| p.scale(&QQ::from_integer(c.into()));
        let s1 = DoubleLineSpec::new(a, f.clone(), g.clone()).unwrap();
        let s2 = DoubleLineSpec::new(a, scale(&f), scale(&g)).unwrap();
        prop_assert!(s1.ideal().equals(&s2.ideal()));
        let rec = double_line(&s1).unwrap();
        prop_assert_eq!(rec.genus, -1 - a);
    }

    #[test]
    fn quadratic_combinations_reproduce_q(coeffs in proptest::collection::vec(-5i64..6, 4), a in 0i64..2) {
        // q of degree 2(a+1) + 1 with f = z^(a+1), g = w^(a+1)
        let e = (a + 1) as u16;
        let d = 2 * e + 1;
        let mut q = Polynomial::<QQ>::zero(Ring::geometric());
        for (k, c) in coeffs.iter().enumerate() {
            let i = (k as u16 * d) / 3;
            q = &q + &zw::<QQ>(i, d - i).scale(&QQ::from_integer((*c).into()));
        }
        let (f, g) = (zw::<QQ>(e, 0), zw::<QQ>(0, e));
        let [al, be, ga] = solve_quadratic_combination(&q, &f, &g).unwrap();
        let combo = &(&(&al * &(&f * &f)) + &(&be * &(&f * &g))) + &(&ga * &(&g * &g));
        prop_assert_eq!(combo, q);
    }
}
