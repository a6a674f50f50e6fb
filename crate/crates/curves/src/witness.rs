//! Fixed witness curves for every family of degree-3 curves.

use std::fmt;
use std::str::FromStr;

use cm3_core::{Field, Ideal, Var};

use crate::construct::{
    ring, triple_line_planar_base, triple_line_quasiprimitive, union_curve, var, zw, DoubleLineSpec,
    TripleLineSpecPlanarBase, TripleLineSpecQuasiprimitive,
};
use crate::error::{CurveError, Result};
use crate::record::{curve_invariants, CurveRecord, Provenance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WitnessLabel {
    PlaneCubic,
    TwistedCubic,
    ConicLine,
    FamIa,
    FamIb,
    FamIc,
    FamIIa,
    FamIIb,
    Ha(i64),
}

impl fmt::Display for WitnessLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessLabel::PlaneCubic => write!(f, "g1-plane-cubic"),
            WitnessLabel::TwistedCubic => write!(f, "g0-twisted-cubic"),
            WitnessLabel::ConicLine => write!(f, "g-1-conic-line"),
            WitnessLabel::FamIa => write!(f, "famI-a"),
            WitnessLabel::FamIb => write!(f, "famI-b"),
            WitnessLabel::FamIc => write!(f, "famI-c"),
            WitnessLabel::FamIIa => write!(f, "famII-a"),
            WitnessLabel::FamIIb => write!(f, "famII-b"),
            WitnessLabel::Ha(a) => write!(f, "Ha({})", a),
        }
    }
}

impl FromStr for WitnessLabel {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self> {
        let label = match s {
            "g1-plane-cubic" => WitnessLabel::PlaneCubic,
            "g0-twisted-cubic" => WitnessLabel::TwistedCubic,
            "g-1-conic-line" => WitnessLabel::ConicLine,
            "famI-a" => WitnessLabel::FamIa,
            "famI-b" => WitnessLabel::FamIb,
            "famI-c" => WitnessLabel::FamIc,
            "famII-a" => WitnessLabel::FamIIa,
            "famII-b" => WitnessLabel::FamIIb,
            _ => {
                let a = s
                    .strip_prefix("Ha(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|n| n.trim().parse::<i64>().ok())
                    .ok_or_else(|| CurveError::Spec(format!("unknown witness label '{}'", s)))?;
                WitnessLabel::Ha(a)
            }
        };
        Ok(label)
    }
}

impl WitnessLabel {
    /// Checks the genus range of the family.
    pub fn check_genus(self, g: i64) -> Result<()> {
        let reason = match self {
            WitnessLabel::PlaneCubic if g != 1 => Some("needs g = 1"),
            WitnessLabel::TwistedCubic if g != 0 => Some("needs g = 0"),
            WitnessLabel::ConicLine if g != -1 => Some("needs g = -1"),
            WitnessLabel::FamIa
            | WitnessLabel::FamIb
            | WitnessLabel::FamIc
            | WitnessLabel::FamIIa
            | WitnessLabel::FamIIb
                if g > -2 =>
            {
                Some("needs g <= -2")
            }
            WitnessLabel::Ha(a) if !(a > 0 && 3 * a <= -2 - g) => Some("needs 0 < a <= (-2-g)/3"),
            _ => None,
        };
        match reason {
            Some(r) => Err(CurveError::Label { label: self.to_string(), genus: g, reason: r.to_string() }),
            None => Ok(()),
        }
    }
}

fn parse<F: Field>(gens: &[&str]) -> Ideal<F> {
    Ideal::parse(ring(), gens).expect("witness generators parse")
}

fn line<F: Field>(a: Var, b: Var) -> Ideal<F> {
    Ideal::of_vars(ring(), &[a, b])
}

/// `(x², xy, y², x w^e - y z^e)`, a double line of type `e - 1`.
fn double_line_ideal<F: Field>(e: i64) -> Ideal<F> {
    DoubleLineSpec { a: e - 1, f: zw(e as u16, 0), g: zw(0, e as u16) }.ideal()
}

/// The quasiprimitive triple line with `f = z^(a+1), g = w^(a+1)`,
/// `p = z^b`, `q = w^(3a+b+2)`.
pub fn pure_power_quasiprimitive<F: Field>(a: i64, b: i64) -> Result<TripleLineSpecQuasiprimitive<F>> {
    let e = (a + 1) as u16;
    TripleLineSpecQuasiprimitive::new(a, b, zw(e, 0), zw(0, e), zw(b as u16, 0), zw(0, (3 * a + b + 2) as u16), None)
}

/// The witness curve of `label` in genus `g`.
pub fn witness<F: Field>(g: i64, label: WitnessLabel) -> Result<CurveRecord<F>> {
    label.check_genus(g)?;
    let prov = Provenance::new(&label.to_string()).with("genus", g);
    let mut rec = match label {
        WitnessLabel::PlaneCubic => curve_invariants(&parse(&["x", "y^3 + z^3 + w^3"]), prov.clone())?,
        WitnessLabel::TwistedCubic => curve_invariants(&parse(&["x*z - y^2", "y*w - z^2", "x*w - y*z"]), prov.clone())?,
        WitnessLabel::ConicLine | WitnessLabel::FamIa | WitnessLabel::FamIb | WitnessLabel::FamIIa => {
            let (c1, c2) = witness_components(g, label)?.expect("union label");
            union_curve(&c1, &c2)?
        }
        WitnessLabel::FamIc => {
            let spec = TripleLineSpecPlanarBase::new(1 - g, zw((-g) as u16, 0), zw(0, (1 - g) as u16))?;
            triple_line_planar_base(&spec)?
        }
        WitnessLabel::FamIIb => triple_line_quasiprimitive(&pure_power_quasiprimitive(0, -2 - g)?)?,
        WitnessLabel::Ha(a) => triple_line_quasiprimitive(&pure_power_quasiprimitive(a, -2 - 3 * a - g)?)?,
    };
    if rec.genus != g || rec.degree != 3 {
        return Err(CurveError::Invariant(format!(
            "{} witness has (d, g) = ({}, {}), expected (3, {})",
            label, rec.degree, rec.genus, g
        )));
    }
    let mut params = rec.provenance.params.clone();
    params.extend(prov.params);
    rec.provenance = Provenance { tag: prov.tag, params };
    rec.provenance.params.insert("construction".into(), construction_tag(label).into());
    Ok(rec)
}

fn construction_tag(label: WitnessLabel) -> &'static str {
    match label {
        WitnessLabel::PlaneCubic | WitnessLabel::TwistedCubic => "ideal",
        WitnessLabel::ConicLine | WitnessLabel::FamIa | WitnessLabel::FamIb | WitnessLabel::FamIIa => "union",
        WitnessLabel::FamIc => "triple-line-planar",
        WitnessLabel::FamIIb | WitnessLabel::Ha(_) => "triple-line-quasiprimitive",
    }
}

/// The double line a triple-line witness is built on, if any.
pub fn witness_filtrant<F: Field>(g: i64, label: WitnessLabel) -> Result<Option<Ideal<F>>> {
    label.check_genus(g)?;
    Ok(match label {
        WitnessLabel::FamIc => {
            // planar base: the filtrant is (x, y²)
            let (x, y) = (var::<F>(Var::X), var::<F>(Var::Y));
            Some(Ideal::new_unchecked(ring(), vec![x, &y * &y]))
        }
        WitnessLabel::FamIIb => Some(pure_power_quasiprimitive::<F>(0, -2 - g)?.filtrant().ideal()),
        WitnessLabel::Ha(a) => Some(pure_power_quasiprimitive::<F>(a, -2 - 3 * a - g)?.filtrant().ideal()),
        _ => None,
    })
}

/// The union witnesses as pairs of component ideals.
pub fn witness_components<F: Field>(g: i64, label: WitnessLabel) -> Result<Option<(Ideal<F>, Ideal<F>)>> {
    label.check_genus(g)?;
    Ok(match label {
        WitnessLabel::ConicLine => Some((parse(&["x", "y^2 - z*w"]), line(Var::Z, Var::W))),
        WitnessLabel::FamIa => Some((double_line_ideal(1 - g), line(Var::X, Var::Z))),
        WitnessLabel::FamIb => Some((double_line_ideal(-g), line(Var::Y, Var::Z))),
        WitnessLabel::FamIIa => Some((double_line_ideal(-g - 1), line(Var::Z, Var::W))),
        _ => None,
    })
}

/// The single-component genera and their witness label.
pub fn small_genus_label(g: i64) -> Option<WitnessLabel> {
    match g {
        1 => Some(WitnessLabel::PlaneCubic),
        0 => Some(WitnessLabel::TwistedCubic),
        -1 => Some(WitnessLabel::ConicLine),
        _ => None,
    }
}
