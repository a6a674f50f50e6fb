use cm3_core::{Ideal, Ring, QQ};
use cm3_curves::atlas::*;

fn labels(g: i64) -> Vec<ComponentLabel> {
    enumerate_components::<QQ>(g).unwrap().iter().map(|c| c.label).collect()
}

#[test]
fn small_genera_have_one_component() {
    for g in [1, 0, -1] {
        let cs = enumerate_components::<QQ>(g).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].dimension_paramcount, 12);
        assert!(cs[0].verified());
    }
    assert!(enumerate_components::<QQ>(0).unwrap()[0].witness.rao.is_zero());
    assert!(enumerate_components::<QQ>(2).is_err());
}

#[test]
fn genus_minus_two() {
    let cs = enumerate_components::<QQ>(-2).unwrap();
    let dims: Vec<(ComponentLabel, i64)> = cs.iter().map(|c| (c.label, c.dimension_paper)).collect();
    assert_eq!(dims, vec![(ComponentLabel::H(-1), 13), (ComponentLabel::H(0), 12)]);
    assert!(cs[0].witness.certificates.extremal && !cs[1].witness.certificates.extremal);
    let obs = distinguish_components::<QQ>(-2).unwrap();
    assert_eq!(obs.len(), 1);
    assert_eq!(obs[0].h1_minus_one, (1, 0));
    assert!(obs[0].holds());
}

#[test]
fn component_counts_follow_the_strict_range() {
    for g in -12i64..=-3 {
        let expected = 2 + (1..).take_while(|a| 3 * a < -2 - g).count();
        assert_eq!(labels(g).len(), expected, "g = {}", g);
    }
    assert_eq!(labels(-8), vec![ComponentLabel::H(-1), ComponentLabel::H(0), ComponentLabel::H(1)]);
}

#[test]
fn dimensions() {
    let cs = enumerate_components::<QQ>(-11).unwrap();
    let paper: Vec<i64> = cs.iter().map(|c| c.dimension_paper).collect();
    let count: Vec<i64> = cs.iter().map(|c| c.dimension_paramcount).collect();
    assert_eq!(paper, vec![31, 29, 35, 34]);
    assert_eq!(count, vec![31, 29, 27, 26]);
    assert!(count.windows(2).all(|w| w[0] > w[1]));
    assert!(!cs[2].dimensions_agree());
    let five = enumerate_components::<QQ>(-5).unwrap();
    assert_eq!(five.iter().map(|c| c.dimension_paper).collect::<Vec<_>>(), vec![19, 17]);
    for c in &cs {
        assert_eq!(c.witness.homology.hilbert.polynomial(5), 3 * 5 + 1 + 11);
    }
}

#[test]
fn rao_generators_separate_components() {
    for g in [-5i64, -8, -11] {
        let obs = distinguish_components::<QQ>(g).unwrap();
        assert!(obs.iter().all(|o| o.holds()), "g = {}", g);
        let cs = enumerate_components::<QQ>(g).unwrap();
        for c in &cs {
            let ComponentLabel::H(a) = c.label else { unreachable!() };
            assert_eq!(c.witness.min_rao_generator(), Some((g + 2 + a) as i32), "{} at g = {}", c.label, g);
        }
    }
}

#[test]
fn common_limits() {
    let l2 = common_limit_curve::<QQ>(-2).unwrap();
    let expected = Ideal::parse(Ring::geometric(), &["x^2", "x*y", "y^3", "x*z^3 - y^2*w^2"]).unwrap();
    assert!(l2.ideal.equals(&expected));
    assert!(l2.certificates.extremal);
    let l5 = common_limit_curve::<QQ>(-5).unwrap();
    let expected = Ideal::parse(Ring::geometric(), &["x^2", "x*y", "y^3", "x*z^6 - y^2*w^5"]).unwrap();
    assert!(l5.ideal.equals(&expected));
    assert!(common_limit_curve::<QQ>(-1).is_err());
}

#[test]
fn connectedness() {
    for g in [1i64, 0, -1, -2, -3, -5, -8, -11] {
        let r = connectedness_certificate::<QQ>(g).unwrap();
        assert!(r.connected, "g = {}", g);
        assert_eq!(r.edges.len(), r.components.len() - 1);
        for e in &r.edges {
            assert!(e.verified() && e.limit_is_common);
            assert_eq!(e.b, -2 - 3 * e.a - g);
        }
    }
    let r = connectedness_certificate::<QQ>(-8).unwrap();
    let params: Vec<(i64, i64)> = r.edges.iter().map(|e| (e.a, e.b)).collect();
    assert_eq!(params, vec![(0, 6), (1, 3)]);
}

#[test]
fn dot_and_json_output() {
    let r = connectedness_certificate::<QQ>(-8).unwrap();
    let dot = r.to_dot();
    assert_eq!(dot.matches("[label=\"H_").count(), 3);
    assert_eq!(dot.matches("->").count(), 2);
    assert!(dot.contains("\"H_1\" -> \"H_-1\" [label=\"(1,3)\"]"));
    let json = r.to_json();
    assert_eq!(json["schema"], "cm3/1");
    assert_eq!(json["connected"], true);
    assert_eq!(json["components"][2]["dimension_flag"], "discrepancy");
    assert_eq!(r.to_dot(), connectedness_certificate::<QQ>(-8).unwrap().to_dot());
}

#[test]
fn h40_example() {
    let h = h40_report::<QQ>().unwrap();
    assert!(h.ok());
    assert_eq!(h.limit.rao.nonzero().into_iter().collect::<Vec<_>>(), vec![(0, 1), (1, 1), (2, 1)]);
    assert_eq!((h.fiber.degree, h.fiber.genus), (4, 0));
}
