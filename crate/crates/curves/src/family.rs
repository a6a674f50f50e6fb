//! One-parameter families over `k[t]` and their flat limits.

use cm3_core::hilbert::{hilbert_polynomial, CurveHilbert};
use cm3_core::{Field, Ideal, Polynomial, Ring, Var};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{CurveError, Result};
use crate::record::{curve_invariants, CurveRecord, Provenance};

/// An ideal of `k[t][x,y,z,w]` with generators homogeneous in x, y, z, w.
#[derive(Clone, Debug)]
pub struct FamilyIdeal<F: Field> {
    pub ideal: Ideal<F>,
    pub name: String,
}

impl<F: Field> FamilyIdeal<F> {
    pub fn new(name: &str, gens: Vec<Polynomial<F>>) -> Result<Self> {
        if gens.is_empty() {
            return Err(CurveError::Degenerate("a family needs generators".into()));
        }
        let ring = Ring::family();
        let gens = gens.into_iter().map(|g| g.to_ring(ring)).collect::<cm3_core::Result<Vec<_>>>()?;
        Ok(FamilyIdeal { ideal: Ideal::new(ring, gens)?, name: name.to_string() })
    }

    pub fn parse(name: &str, gens: &[&str]) -> Result<Self> {
        let ideal = Ideal::parse(Ring::family(), gens)?;
        FamilyIdeal::new(name, ideal.gens().to_vec())
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        self.ideal.gens()
    }

    /// The fiber over `t = c`, as an ideal of `k[x,y,z,w]`.
    pub fn fiber(&self, c: &F) -> Ideal<F> {
        self.ideal.specialize(Var::T, c)
    }
}

#[derive(Clone, Debug)]
pub struct FiberSample<F: Field> {
    pub value: F,
    pub hilbert: CurveHilbert,
}

#[derive(Clone, Debug)]
pub struct FlattenReport<F: Field> {
    pub family: FamilyIdeal<F>,
    /// `I : t^∞`, as a reduced basis.
    pub flat: Ideal<F>,
    /// Basis elements of the flat ideal missing from the input ideal.
    pub added: Vec<Polynomial<F>>,
    /// The saturated special fiber.
    pub limit: Ideal<F>,
    pub limit_hilbert: CurveHilbert,
    pub fibers: Vec<FiberSample<F>>,
    pub torsion_free: bool,
}

impl<F: Field> FlattenReport<F> {
    /// Torsion-free over `k[t]` and every sampled fiber shares the limit's
    /// Hilbert polynomial.
    pub fn is_flat(&self) -> bool {
        let key = |h: &CurveHilbert| (h.degree, h.genus);
        self.torsion_free && self.fibers.iter().all(|f| key(&f.hilbert) == key(&self.limit_hilbert))
    }

    pub fn verdict(&self) -> &'static str {
        if self.is_flat() {
            "flat"
        } else {
            "inconsistent"
        }
    }

    pub fn to_json(&self) -> Value {
        let fibers: Vec<Value> = self
            .fibers
            .iter()
            .map(|f| json!({"t": f.value.to_string(), "degree": f.hilbert.degree, "genus": f.hilbert.genus}))
            .collect();
        json!({
            "family": self.family.name,
            "input": self.family.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "added": self.added.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "limit": self.limit.grevlex().polys().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "limit_degree": self.limit_hilbert.degree,
            "limit_genus": self.limit_hilbert.genus,
            "fibers": fibers,
            "torsion_free": self.torsion_free,
            "verdict": self.verdict(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("family: {}\ninput:\n", self.family.name);
        for g in self.family.generators() {
            s.push_str(&format!("  {}\n", g));
        }
        s.push_str("added by t-saturation:\n");
        for g in &self.added {
            s.push_str(&format!("  {}\n", g));
        }
        s.push_str("limit (t = 0, saturated):\n");
        for g in self.limit.grevlex().polys() {
            s.push_str(&format!("  {}\n", g));
        }
        s.push_str(&format!("limit (d, g) = ({}, {})\n", self.limit_hilbert.degree, self.limit_hilbert.genus));
        for f in &self.fibers {
            s.push_str(&format!("fiber t = {}: (d, g) = ({}, {})\n", f.value, f.hilbert.degree, f.hilbert.genus));
        }
        s.push_str(&format!("verdict: {}\n", self.verdict()));
        s
    }
}

/// Default fiber samples.
pub fn default_samples<F: Field>() -> Vec<F> {
    vec![F::one(), F::from_i64(2), F::from_i64(-1)]
}

fn fiber_hilbert<F: Field>(family: &FamilyIdeal<F>, c: &F) -> Result<CurveHilbert> {
    let fiber = family.fiber(c).saturate_irrelevant()?;
    hilbert_polynomial(&fiber).map_err(|e| CurveError::Degenerate(format!("fiber t = {}: {}", c, e)))
}

/// Saturates the family by `t` and compares the special fiber with sampled
/// general fibers.
pub fn flatten<F: Field>(family: &FamilyIdeal<F>, samples: &[F]) -> Result<FlattenReport<F>> {
    if samples.iter().any(|c| c.is_zero()) {
        return Err(CurveError::Spec("fiber samples must be nonzero".into()));
    }
    let t = Polynomial::var(Ring::family(), Var::T);
    let (flat, fibers) = rayon::join(
        || family.ideal.saturate(&t),
        || {
            samples
                .par_iter()
                .map(|c| Ok(FiberSample { value: c.clone(), hilbert: fiber_hilbert(family, c)? }))
                .collect::<Result<Vec<_>>>()
        },
    );
    let flat = flat?.reduced();
    let fibers = fibers?;
    let torsion_free = flat.contains_ideal(&flat.quotient(&t)?);
    let added: Vec<Polynomial<F>> = flat.grevlex().polys().into_iter().filter(|p| !family.ideal.contains(p)).collect();
    let limit = flat.specialize(Var::T, &F::zero()).saturate_irrelevant()?;
    let limit_hilbert =
        hilbert_polynomial(&limit).map_err(|e| CurveError::Degenerate(format!("special fiber: {}", e)))?;
    Ok(FlattenReport { family: family.clone(), flat, added, limit, limit_hilbert, fibers, torsion_free })
}

/// The family of a quasiprimitive triple line of type `(a, b)` degenerating
/// to a triple line with planar base:
/// `x³, x²y, xy², y³, xh, yh, z^b t² h - x² w^(a+b)` with
/// `h = x z^(a+1) - t y w^(a+1)`.
pub fn spec_family<F: Field>(a: i64, b: i64) -> Result<FamilyIdeal<F>> {
    if a < 0 || b < 0 {
        return Err(CurveError::Spec(format!("family ({}, {}) needs a, b >= 0", a, b)));
    }
    let ring = Ring::family();
    let v = |x: Var| Polynomial::<F>::var(ring, x);
    let (x, y, z, w, t) = (v(Var::X), v(Var::Y), v(Var::Z), v(Var::W), v(Var::T));
    let h = &(&x * &z.pow((a + 1) as u32)) - &(&(&t * &y) * &w.pow((a + 1) as u32));
    let last = &(&(&z.pow(b as u32) * &t.pow(2)) * &h) - &(&x.pow(2) * &w.pow((a + b) as u32));
    let gens = vec![x.pow(3), &x.pow(2) * &y, &x * &y.pow(2), y.pow(3), &x * &h, &y * &h, last];
    FamilyIdeal::new(&format!("spec({},{})", a, b), gens)
}

/// The family in `H(4,0)` joining curves with Rao module `k` in degree 1
/// to an extremal curve.
pub fn h40_family<F: Field>() -> FamilyIdeal<F> {
    FamilyIdeal::parse("h40", &["x^2", "x*y^2", "t*y^3 - x*y*z", "x*y*w - t*z*(y^2*t - x*z)"])
        .expect("fixed generators")
}

/// The special fiber predicted for `spec_family(a, b)`:
/// `(x², xy, y³, x z^(3a+b+3) - y² w^(3a+b+2))`.
pub fn spec_limit<F: Field>(a: i64, b: i64) -> Ideal<F> {
    let n = 3 * a + b + 3;
    Ideal::parse(Ring::geometric(), &["x^2", "x*y", "y^3", &format!("x*z^{} - y^2*w^{}", n, n - 1)])
        .expect("fixed generators")
}

#[derive(Clone, Debug)]
pub struct SpecializationCheck<F: Field> {
    pub report: FlattenReport<F>,
    pub limit: CurveRecord<F>,
    pub generic: CurveRecord<F>,
    pub limit_matches: bool,
    pub generic_matches: bool,
}

impl<F: Field> SpecializationCheck<F> {
    pub fn ok(&self) -> bool {
        self.report.is_flat() && self.limit_matches && self.generic_matches
    }
}

/// Flattens `family` and checks the limit against `expected_limit` (as
/// ideals) and the fiber at the first sample against `expected_generic`
/// (degree, genus and Rao function).
pub fn verify_specialization<F: Field>(
    family: &FamilyIdeal<F>,
    expected_limit: &Ideal<F>,
    expected_generic: &CurveRecord<F>,
) -> Result<SpecializationCheck<F>> {
    let samples = default_samples::<F>();
    let report = flatten(family, &samples)?;
    let limit = curve_invariants(&report.limit, Provenance::new("limit").with("family", &family.name))?;
    let limit_matches = limit.ideal.equals(&expected_limit.saturate_irrelevant()?);
    let generic = curve_invariants(
        &family.fiber(&samples[0]),
        Provenance::new("fiber").with("family", &family.name).with("t", &samples[0]),
    )?;
    let generic_matches = generic.degree == expected_generic.degree
        && generic.genus == expected_generic.genus
        && generic.rao.nonzero() == expected_generic.rao.nonzero();
    Ok(SpecializationCheck { report, limit, generic, limit_matches, generic_matches })
}
