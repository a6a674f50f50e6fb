//! Curve records: a saturated ideal with its verified invariants.

use std::collections::BTreeMap;

use cm3_core::homology::{CurveHomology, ExtremalBounds, RaoProfile};
use cm3_core::resolution::{minimal_ideal_generators, BettiTable};
use cm3_core::{Field, Ideal, Polynomial};
use serde_json::{json, Value};

use crate::error::{CurveError, Result};

/// Which construction produced a curve, with its parameters as text.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Provenance {
    pub tag: String,
    pub params: BTreeMap<String, String>,
}

impl Provenance {
    pub fn new(tag: &str) -> Self {
        Provenance { tag: tag.to_string(), params: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certificates {
    /// The stored ideal equals its saturation.
    pub saturated: bool,
    /// Whether the ideal handed in was already saturated.
    pub input_saturated: bool,
    /// `Ext^3(S/I, S)` has finite length.
    pub locally_cm: bool,
    /// All three Rao bounds attained (numerical check).
    pub extremal: bool,
}

/// A locally CM curve with its invariants. Built only by
/// [`curve_invariants`], so every field is reproducible from `ideal`.
#[derive(Clone, Debug)]
pub struct CurveRecord<F: Field> {
    pub ideal: Ideal<F>,
    pub generators: Vec<Polynomial<F>>,
    pub degree: i64,
    pub genus: i64,
    pub rao: RaoProfile,
    pub rao_generators: Vec<i32>,
    pub betti: BettiTable,
    pub certificates: Certificates,
    pub provenance: Provenance,
    pub homology: CurveHomology<F>,
}

impl<F: Field> CurveRecord<F> {
    pub fn bounds(&self) -> ExtremalBounds {
        ExtremalBounds::new(self.degree, self.genus)
    }

    /// Smallest degree of a minimal Rao generator, if the curve is not ACM.
    pub fn min_rao_generator(&self) -> Option<i32> {
        self.rao_generators.first().copied()
    }

    /// `h^1(I_C(n))`.
    pub fn h1(&self, n: i32) -> usize {
        self.homology.ext3.dim(-n - 4)
    }

    /// `(h^0, h^1, h^2, h^3)` of `I_C(n)`.
    pub fn cohomology(&self, n: i32) -> Result<[i64; 4]> {
        Ok(cm3_core::homology::sheaf_cohomology_with(&self.ideal, &self.homology, n)?)
    }

    pub fn to_json(&self) -> Value {
        let rao: BTreeMap<String, usize> = self.rao.nonzero().into_iter().map(|(n, d)| (n.to_string(), d)).collect();
        json!({
            "ideal": self.generators.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "degree": self.degree,
            "genus": self.genus,
            "rao": {
                "rao": rao,
                "ra": self.rao.ra,
                "ro": self.rao.ro,
                "window": [self.rao.window.0, self.rao.window.1],
                "generators": self.rao_generators,
            },
            "betti": self.betti.entries(),
            "certificates": {
                "saturated": self.certificates.saturated,
                "input_saturated": self.certificates.input_saturated,
                "locally_cm": self.certificates.locally_cm,
                "extremal": self.certificates.extremal,
            },
            "provenance": {
                "tag": self.provenance.tag,
                "params": self.provenance.params,
            },
        })
    }

    /// Human-readable summary, one fact per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("curve: {}\n", self.provenance.tag));
        for (k, v) in &self.provenance.params {
            s.push_str(&format!("  {} = {}\n", k, v));
        }
        s.push_str("ideal:\n");
        for g in &self.generators {
            s.push_str(&format!("  {}\n", g));
        }
        s.push_str(&format!("degree: {}\ngenus: {}\n", self.degree, self.genus));
        let rao = self.rao.nonzero();
        if rao.is_empty() {
            s.push_str("rao: 0 (ACM)\n");
        } else {
            let parts: Vec<String> = rao.iter().map(|(n, d)| format!("{}:{}", n, d)).collect();
            s.push_str(&format!("rao: {}\n", parts.join(" ")));
            s.push_str(&format!("rao generators in degrees: {:?}\n", self.rao_generators));
        }
        s.push_str(&format!("betti:\n{}\n", self.betti));
        let c = &self.certificates;
        s.push_str(&format!(
            "saturated: {}\nlocally CM: {}\nextremal (numerical): {}\n",
            c.saturated, c.locally_cm, c.extremal
        ));
        s
    }
}

/// Saturates `ideal` and computes every invariant of the curve it defines.
pub fn curve_invariants<F: Field>(ideal: &Ideal<F>, provenance: Provenance) -> Result<CurveRecord<F>> {
    // rejects non-curves before the (costlier) saturation
    cm3_core::hilbert::hilbert_polynomial(ideal)?;
    let sat = ideal.saturate_irrelevant()?;
    let input_saturated = ideal.contains_ideal(&sat);
    let saturated = sat.is_saturated()?;
    let homology = CurveHomology::new(&sat)?;
    let hilbert = homology.hilbert;
    if hilbert.degree < 1 {
        return Err(CurveError::Invariant(format!("degree {} is not positive", hilbert.degree)));
    }
    let locally_cm = homology.locally_cm();
    if !locally_cm {
        return Err(CurveError::NotLocallyCm(sat.to_string()));
    }
    let rao = homology.rao_profile()?;
    let rao_generators = homology.rao_generator_degrees();
    let betti = homology.resolution.betti_table();
    let extremal = ExtremalBounds::new(hilbert.degree, hilbert.genus).is_extremal(&rao);
    let generators = minimal_ideal_generators(&sat).iter().map(|p| p.monic()).collect();
    Ok(CurveRecord {
        ideal: sat,
        generators,
        degree: hilbert.degree,
        genus: hilbert.genus,
        rao,
        rao_generators,
        betti,
        certificates: Certificates { saturated, input_saturated, locally_cm, extremal },
        provenance,
        homology,
    })
}
