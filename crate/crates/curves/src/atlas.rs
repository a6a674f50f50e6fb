//! Components of `H(3, g)`, the obstructions separating them and the
//! specializations that connect them.

use std::fmt;

use cm3_core::{Field, Ideal, Ring};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{CurveError, Result};
use crate::family::{h40_family, spec_family, spec_limit, verify_specialization, FlattenReport, SpecializationCheck};
use crate::record::{curve_invariants, CurveRecord, Provenance};
use crate::witness::{small_genus_label, witness, WitnessLabel};
use crate::SCHEMA;

/// `H_a` by its type parameter; `-1` is the extremal component. `Whole`
/// is the irreducible `H(3, g)` for `g ≥ -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentLabel {
    Whole,
    H(i64),
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentLabel::Whole => write!(f, "H"),
            ComponentLabel::H(a) => write!(f, "H_{}", a),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ComponentDescriptor<F: Field> {
    pub label: ComponentLabel,
    pub genus: i64,
    /// The dimension as stated in the classification (may disagree, see `dimensions_agree`).
    pub dimension_paper: i64,
    /// Dimension from counting parameters of the family.
    pub dimension_paramcount: i64,
    pub witness_label: WitnessLabel,
    pub witness: CurveRecord<F>,
    pub expected_extremal: bool,
    pub description: String,
}

impl<F: Field> ComponentDescriptor<F> {
    pub fn dimensions_agree(&self) -> bool {
        self.dimension_paper == self.dimension_paramcount
    }

    /// The witness has the expected genus, degree and extremality.
    pub fn verified(&self) -> bool {
        let w = &self.witness;
        w.degree == 3
            && w.genus == self.genus
            && w.certificates.locally_cm
            && w.certificates.extremal == self.expected_extremal
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label.to_string(),
            "genus": self.genus,
            "dimension_paper": self.dimension_paper,
            "dimension_paramcount": self.dimension_paramcount,
            "dimension_flag": if self.dimensions_agree() { "agree" } else { "discrepancy" },
            "family": self.description,
            "witness_label": self.witness_label.to_string(),
            "expected_extremal": self.expected_extremal,
            "verified": self.verified(),
            "witness": self.witness.to_json(),
        })
    }
}

/// `(label, witness, dim printed, dim by parameter count, extremal, text)`.
type Plan = (ComponentLabel, WitnessLabel, i64, i64, bool, String);

fn plan(g: i64) -> Result<Vec<Plan>> {
    if g > 1 {
        return Err(CurveError::Spec(format!("H(3,{}) is empty: degree-3 curves have genus at most 1", g)));
    }
    if let Some(label) = small_genus_label(g) {
        let text = match g {
            1 => "plane cubics",
            0 => "twisted cubics and their degenerations",
            _ => "a conic and a disjoint line",
        };
        return Ok(vec![(ComponentLabel::Whole, label, 12, 12, g == -1, text.to_string())]);
    }
    let mut out = vec![(
        ComponentLabel::H(-1),
        WitnessLabel::FamIa,
        9 - 2 * g,
        9 - 2 * g,
        true,
        format!("extremal curves: double line of genus {} with a line meeting it in a double point", g - 1),
    )];
    if g == -2 {
        out.push((
            ComponentLabel::H(0),
            WitnessLabel::FamIIa,
            12,
            12,
            false,
            "closure of three disjoint lines".to_string(),
        ));
        return Ok(out);
    }
    out.push((
        ComponentLabel::H(0),
        WitnessLabel::FamIIa,
        7 - 2 * g,
        7 - 2 * g,
        false,
        format!("double line of genus {} with a disjoint line", g + 1),
    ));
    let mut a = 1;
    while 3 * a < -2 - g {
        out.push((
            ComponentLabel::H(a),
            WitnessLabel::Ha(a),
            14 - 2 * g - a,
            6 - 2 * g - a,
            false,
            format!("quasiprimitive triple lines of type ({}, {})", a, -2 - 3 * a - g),
        ));
        a += 1;
    }
    Ok(out)
}

/// The irreducible components of `H(3, g)` with verified witnesses.
pub fn enumerate_components<F: Field>(g: i64) -> Result<Vec<ComponentDescriptor<F>>> {
    plan(g)?
        .into_par_iter()
        .map(|(label, wl, dp, dc, ext, description)| {
            let w = witness::<F>(g, wl)?;
            Ok(ComponentDescriptor {
                label,
                genus: g,
                dimension_paper: dp,
                dimension_paramcount: dc,
                witness_label: wl,
                witness: w,
                expected_extremal: ext,
                description,
            })
        })
        .collect()
}

/// Why no curve of `from` specializes to a general curve of `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub from: ComponentLabel,
    pub to: ComponentLabel,
    pub dim_from: i64,
    pub dim_to: i64,
    pub min_rao_generator_from: Option<i32>,
    pub min_rao_generator_to: Option<i32>,
    pub extremal_from: bool,
    pub extremal_to: bool,
    /// `h^1(I_C(-1))` of both witnesses.
    pub h1_minus_one: (usize, usize),
}

impl Obstruction {
    pub fn dimension_drops(&self) -> bool {
        self.dim_from > self.dim_to
    }

    /// The Rao module of `from` starts strictly earlier.
    pub fn rao_separates(&self) -> bool {
        match (self.min_rao_generator_from, self.min_rao_generator_to) {
            (Some(a), Some(b)) => a < b,
            _ => false,
        }
    }

    pub fn holds(&self) -> bool {
        self.dimension_drops() && self.rao_separates()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "from": self.from.to_string(),
            "to": self.to.to_string(),
            "dim_from": self.dim_from,
            "dim_to": self.dim_to,
            "min_rao_generator_from": self.min_rao_generator_from,
            "min_rao_generator_to": self.min_rao_generator_to,
            "extremal_from": self.extremal_from,
            "extremal_to": self.extremal_to,
            "h1_minus_one": [self.h1_minus_one.0, self.h1_minus_one.1],
            "holds": self.holds(),
        })
    }
}

pub fn obstructions<F: Field>(components: &[ComponentDescriptor<F>]) -> Vec<Obstruction> {
    let mut out = Vec::new();
    for (i, c) in components.iter().enumerate() {
        for d in &components[i + 1..] {
            out.push(Obstruction {
                from: c.label,
                to: d.label,
                dim_from: c.dimension_paramcount,
                dim_to: d.dimension_paramcount,
                min_rao_generator_from: c.witness.min_rao_generator(),
                min_rao_generator_to: d.witness.min_rao_generator(),
                extremal_from: c.witness.certificates.extremal,
                extremal_to: d.witness.certificates.extremal,
                h1_minus_one: (c.witness.h1(-1), d.witness.h1(-1)),
            });
        }
    }
    out
}

/// Pairwise obstructions between the components of `H(3, g)`, `g ≤ -2`.
pub fn distinguish_components<F: Field>(g: i64) -> Result<Vec<Obstruction>> {
    if g > -2 {
        return Err(CurveError::Spec(format!("H(3,{}) is irreducible", g)));
    }
    Ok(obstructions(&enumerate_components::<F>(g)?))
}

/// `(x², xy, y³, x z^(1-g) - y² w^(-g))`, in the closure of every component.
pub fn common_limit_curve<F: Field>(g: i64) -> Result<CurveRecord<F>> {
    if g > -2 {
        return Err(CurveError::Spec(format!("no common limit needed for g = {}", g)));
    }
    let ideal = Ideal::parse(Ring::geometric(), &["x^2", "x*y", "y^3", &format!("x*z^{} - y^2*w^{}", 1 - g, -g)])?;
    curve_invariants(&ideal, Provenance::new("common-limit").with("genus", g))
}

#[derive(Clone, Debug)]
pub struct SpecializationEdge<F: Field> {
    pub from: ComponentLabel,
    pub to: ComponentLabel,
    pub a: i64,
    pub b: i64,
    pub check: SpecializationCheck<F>,
    pub limit_is_common: bool,
}

impl<F: Field> SpecializationEdge<F> {
    pub fn verified(&self) -> bool {
        self.check.ok() && self.limit_is_common && self.check.limit.certificates.extremal
    }

    pub fn to_json(&self) -> Value {
        json!({
            "from": self.from.to_string(),
            "to": self.to.to_string(),
            "family": {"a": self.a, "b": self.b},
            "verdict": self.check.report.verdict(),
            "limit_matches": self.check.limit_matches,
            "generic_matches": self.check.generic_matches,
            "limit_extremal": self.check.limit.certificates.extremal,
            "limit_is_common": self.limit_is_common,
            "verified": self.verified(),
            "flatten": self.check.report.to_json(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct AtlasReport<F: Field> {
    pub genus: i64,
    pub components: Vec<ComponentDescriptor<F>>,
    pub edges: Vec<SpecializationEdge<F>>,
    pub common_limit: Option<CurveRecord<F>>,
    pub connected: bool,
}

fn graph_connected(nodes: &[ComponentLabel], edges: &[(ComponentLabel, ComponentLabel)]) -> bool {
    let Some(&root) = nodes.first() else {
        return false;
    };
    let mut seen = vec![root];
    let mut grew = true;
    while grew {
        grew = false;
        for &(a, b) in edges {
            for (u, v) in [(a, b), (b, a)] {
                if seen.contains(&u) && !seen.contains(&v) {
                    seen.push(v);
                    grew = true;
                }
            }
        }
    }
    nodes.iter().all(|n| seen.contains(n))
}

/// Components of `H(3, g)` joined by the flat families that degenerate
/// each `H_a` to the common extremal limit.
pub fn connectedness_certificate<F: Field>(g: i64) -> Result<AtlasReport<F>> {
    let components = enumerate_components::<F>(g)?;
    if g > -2 {
        let connected = components.len() == 1 && components[0].verified();
        return Ok(AtlasReport { genus: g, components, edges: Vec::new(), common_limit: None, connected });
    }
    let common = common_limit_curve::<F>(g)?;
    let edges: Vec<SpecializationEdge<F>> = components
        .par_iter()
        .filter_map(|c| match c.label {
            ComponentLabel::H(a) if a >= 0 => Some((c, a)),
            _ => None,
        })
        .map(|(c, a)| {
            let b = -2 - 3 * a - g;
            let family = spec_family::<F>(a, b)?;
            // the general fiber is the quasiprimitive type (a, b) line
            let generic = if a == 0 { witness::<F>(g, WitnessLabel::FamIIb)? } else { c.witness.clone() };
            let check = verify_specialization(&family, &spec_limit::<F>(a, b), &generic)?;
            let limit_is_common = check.limit.ideal.equals(&common.ideal);
            Ok(SpecializationEdge { from: c.label, to: ComponentLabel::H(-1), a, b, check, limit_is_common })
        })
        .collect::<Result<Vec<_>>>()?;
    let nodes: Vec<ComponentLabel> = components.iter().map(|c| c.label).collect();
    let arcs: Vec<(ComponentLabel, ComponentLabel)> =
        edges.iter().filter(|e| e.verified()).map(|e| (e.from, e.to)).collect();
    let connected = components.iter().all(|c| c.verified()) && graph_connected(&nodes, &arcs);
    Ok(AtlasReport { genus: g, components, edges, common_limit: Some(common), connected })
}

impl<F: Field> AtlasReport<F> {
    pub fn obstructions(&self) -> Vec<Obstruction> {
        obstructions(&self.components)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "genus": self.genus,
            "components": self.components.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| e.to_json()).collect::<Vec<_>>(),
            "common_limit": self.common_limit.as_ref().map(|c| c.to_json()),
            "connected": self.connected,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph \"H(3,{})\" {{\n", self.genus);
        for c in &self.components {
            let dim = if c.dimensions_agree() {
                format!("dim {}", c.dimension_paramcount)
            } else {
                format!("dim {}, printed {}", c.dimension_paramcount, c.dimension_paper)
            };
            s.push_str(&format!("  \"{}\" [label=\"{} ({})\"];\n", c.label, c.label, dim));
        }
        for e in &self.edges {
            let style = if e.verified() { "" } else { ", style=dashed" };
            s.push_str(&format!("  \"{}\" -> \"{}\" [label=\"({},{})\"{}];\n", e.from, e.to, e.a, e.b, style));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("H(3,{}): {} component(s)\n", self.genus, self.components.len());
        for c in &self.components {
            s.push_str(&format!(
                "  {}: {} | dim {} (printed {}) | witness {} | verified {}\n",
                c.label,
                c.description,
                c.dimension_paramcount,
                c.dimension_paper,
                c.witness_label,
                c.verified()
            ));
        }
        for e in &self.edges {
            s.push_str(&format!(
                "  edge {} -> {} via family ({}, {}): {}, limit common {}, verified {}\n",
                e.from,
                e.to,
                e.a,
                e.b,
                e.check.report.verdict(),
                e.limit_is_common,
                e.verified()
            ));
        }
        if let Some(c) = &self.common_limit {
            let gens: Vec<String> = c.generators.iter().map(|p| p.to_string()).collect();
            s.push_str(&format!("common limit: ({})\n", gens.join(", ")));
        }
        s.push_str(&format!("connected: {}\n", self.connected));
        s
    }
}

/// The `H(4,0)` example: a family from curves with Rao module `k` in
/// degree 1 to an extremal quadruple line.
#[derive(Clone, Debug)]
pub struct H40Report<F: Field> {
    pub report: FlattenReport<F>,
    pub limit: CurveRecord<F>,
    pub fiber: CurveRecord<F>,
    /// The limit equals the saturation of `(x², xy, y⁴, y³w + xz³)`.
    pub limit_matches: bool,
}

impl<F: Field> H40Report<F> {
    pub fn limit_extremal(&self) -> bool {
        self.limit.certificates.extremal
    }

    /// Rao module of the general fiber is one-dimensional in degree 1.
    pub fn fiber_rao_is_k1(&self) -> bool {
        self.fiber.rao.nonzero().into_iter().collect::<Vec<_>>() == vec![(1, 1)]
    }

    pub fn ok(&self) -> bool {
        self.report.is_flat() && self.limit_matches && self.limit_extremal() && self.fiber_rao_is_k1()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "flatten": self.report.to_json(),
            "limit": self.limit.to_json(),
            "fiber": self.fiber.to_json(),
            "limit_matches": self.limit_matches,
            "limit_extremal": self.limit_extremal(),
            "fiber_rao_is_k1": self.fiber_rao_is_k1(),
            "connected": self.ok(),
        })
    }

    pub fn to_dot(&self) -> String {
        let style = if self.ok() { "" } else { ", style=dashed" };
        format!(
            "digraph \"H(4,0)\" {{\n  \"H_1\" [label=\"H_1 (extremal)\"];\n  \"H_2\" [label=\"H_2 (Rao k in degree 1)\"];\n  \"H_2\" -> \"H_1\" [label=\"h40\"{}];\n}}\n",
            style
        )
    }

    pub fn to_text(&self) -> String {
        let mut s = self.report.to_text();
        s.push_str(&format!("limit equals (x^2, xy, y^4, y^3 w + x z^3) saturated: {}\n", self.limit_matches));
        s.push_str(&format!("limit extremal: {}\n", self.limit_extremal()));
        s.push_str(&format!("fiber t = 1 has Rao module k in degree 1: {}\n", self.fiber_rao_is_k1()));
        s.push_str(&format!("connected: {}\n", self.ok()));
        s
    }
}

pub fn h40_report<F: Field>() -> Result<H40Report<F>> {
    let family = h40_family::<F>();
    let samples = crate::family::default_samples::<F>();
    let report = crate::family::flatten(&family, &samples)?;
    let limit = curve_invariants(&report.limit, Provenance::new("h40-limit"))?;
    let expected = Ideal::parse(Ring::geometric(), &["x^2", "x*y", "y^4", "y^3*w + x*z^3"])?.saturate_irrelevant()?;
    let limit_matches = limit.ideal.equals(&expected);
    let fiber = curve_invariants(&family.fiber(&samples[0]), Provenance::new("h40-fiber").with("t", &samples[0]))?;
    Ok(H40Report { report, limit, fiber, limit_matches })
}
