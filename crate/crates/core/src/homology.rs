//! Rao modules and cohomology tables of space curves.
//!
//! For a curve ideal `I` with minimal resolution `F_0 <- F_1 <- F_2`, local
//! duality gives `ρ(n) = h^1(I_C(n)) = dim Ext^3(S/I, S)_{-n-4}` and
//! `Ext^3(S/I, S) = coker(F_1^∨ -> F_2^∨)`. The cokernel is presented by a
//! module Groebner basis, which also yields the finite-length test and the
//! socle (dual to the generators of the Rao module).

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{groebner_basis, Reducer, Term, TermOrder, Vector};
use crate::hilbert::{hilbert_function, hilbert_polynomial, CurveHilbert};
use crate::ideal::Ideal;
use crate::linalg::{rank, SparseRow};
use crate::monomial::{monomials_of_degree, MonomialOrder};
use crate::resolution::{dim_s, free_resolution, FreeResolution, HomMap};

/// Degrees beyond which a Rao window is not widened.
pub const WINDOW_CAP: i32 = 96;

/// Margin kept on each side of a Rao window.
pub const MARGIN: i32 = 2;

/// A graded module `⊕ S(-shift_j) / N` with `N` given by a Groebner basis.
#[derive(Clone, Debug)]
pub struct PresentedModule<F: Field> {
    pub shifts: Vec<i32>,
    ord: TermOrder,
    gb: Vec<Vector<F>>,
}

impl<F: Field> PresentedModule<F> {
    /// The cokernel of `map`.
    pub fn coker(map: &HomMap<F>) -> Self {
        let shifts = map.target.degrees.clone();
        let ord = TermOrder::module(MonomialOrder::Grevlex, shifts.clone());
        let gb = groebner_basis(&map.columns(&ord), &ord);
        PresentedModule { shifts, ord, gb }
    }

    fn leads_in(&self, comp: usize) -> Vec<crate::monomial::Monomial> {
        self.gb.iter().map(|v| v.terms[0].0).filter(|t| t.comp as usize == comp).map(|t| t.mono).collect()
    }

    /// Standard terms of degree `s`; they form a basis of the degree-`s` part.
    pub fn basis(&self, s: i32) -> Vec<Term> {
        let red = Reducer::new(&self.gb, &self.ord);
        let mut out = Vec::new();
        for (j, &a) in self.shifts.iter().enumerate() {
            if s - a < 0 {
                continue;
            }
            for m in monomials_of_degree(4, (s - a) as u32) {
                let t = Term::new(j as u32, m);
                if !red.is_reducible(&t) {
                    out.push(t);
                }
            }
        }
        out
    }

    pub fn dim(&self, s: i32) -> usize {
        self.basis(s).len()
    }

    /// Finite length holds iff every component's leading terms contain a
    /// pure power of each variable (its Hilbert polynomial is then zero).
    pub fn is_finite_length(&self) -> bool {
        (0..self.shifts.len()).all(|j| {
            let leads = self.leads_in(j);
            (0..4).all(|v| leads.iter().any(|m| m.total_degree() == m.exp(v) as u32))
        })
    }

    /// The smallest and largest degrees with nonzero part, for a module of
    /// finite length. `None` for the zero module.
    pub fn support(&self) -> Option<(i32, i32)> {
        assert!(self.is_finite_length(), "support of a module of infinite length");
        let mut lo = i32::MAX;
        let mut hi = i32::MIN;
        for (j, &a) in self.shifts.iter().enumerate() {
            let leads = self.leads_in(j);
            if leads.iter().any(|m| m.is_one()) {
                continue;
            }
            let top: u32 = (0..4)
                .map(|v| {
                    leads.iter().filter(|m| m.total_degree() == m.exp(v) as u32).map(|m| m.exp(v) as u32).min().unwrap()
                        - 1
                })
                .sum();
            lo = lo.min(a);
            hi = hi.max(a + top as i32);
        }
        if lo > hi {
            return None;
        }
        // trim to degrees that are actually nonzero
        while lo <= hi && self.dim(lo) == 0 {
            lo += 1;
        }
        while hi >= lo && self.dim(hi) == 0 {
            hi -= 1;
        }
        if lo > hi {
            None
        } else {
            Some((lo, hi))
        }
    }

    fn coords(&self, v: &Vector<F>, index: &HashMap<Term, usize>, offset: usize) -> SparseRow<F> {
        let mut row: SparseRow<F> = v.terms.iter().map(|(t, c)| (offset + index[t], c.clone())).collect();
        row.sort_by_key(|(c, _)| *c);
        row
    }

    /// `dim` of the socle `{m : x_i m = 0 for all i}` in degree `s`.
    pub fn socle_dim(&self, s: i32) -> usize {
        let here = self.basis(s);
        if here.is_empty() {
            return 0;
        }
        let next = self.basis(s + 1);
        let index: HashMap<Term, usize> = next.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        let red = Reducer::new(&self.gb, &self.ord);
        let rows = here.iter().map(|t| {
            let mut row = Vec::new();
            for v in 0..4 {
                let prod =
                    Vector { terms: vec![(*t, F::one())] }.mul_monomial(&crate::monomial::Monomial::var(v), &F::one());
                row.extend(self.coords(&red.reduce(&prod), &index, v * next.len()));
            }
            row
        });
        here.len() - rank(rows)
    }
}

/// Minimal resolution of a saturated curve ideal, with Ext^3 presented.
fn ext3_presentation<F: Field>(res: &FreeResolution<F>) -> Result<PresentedModule<F>> {
    if res.modules.len() > 3 {
        return Err(AlgebraError::Invalid("resolution has length 3; saturate first".into()));
    }
    match res.maps.get(1) {
        Some(d2) => Ok(PresentedModule::coker(&d2.dual())),
        None => {
            // no second syzygies: Ext^3 vanishes
            let empty = HomMap { source: Default::default(), target: Default::default(), entries: Vec::new() };
            Ok(PresentedModule::coker(&empty))
        }
    }
}

/// `dim Ext^3(S/I, S)_s` for each `s` in `window`, from the dual complex by
/// degreewise linear algebra. Works for any homogeneous ideal.
pub fn ext3_dims_linear<F: Field>(
    res: &FreeResolution<F>,
    window: std::ops::RangeInclusive<i32>,
) -> BTreeMap<i32, usize> {
    let d2 = res.maps.get(1).map(|d| d.dual());
    let d3 = res.maps.get(2).map(|d| d.dual());
    window
        .map(|s| {
            let dim = res.module(2).dual().dim(s);
            let im = d2.as_ref().map(|d| d.rank_in_degree(s)).unwrap_or(0);
            let out = d3.as_ref().map(|d| d.rank_in_degree(s)).unwrap_or(0);
            (s, dim - im - out)
        })
        .collect()
}

/// `dim Ext^3(S/I, S)_s` on a window, through the Groebner presentation.
pub fn ext3_dims<F: Field>(ideal: &Ideal<F>, window: std::ops::RangeInclusive<i32>) -> Result<BTreeMap<i32, usize>> {
    let res = free_resolution(ideal)?;
    if res.modules.len() > 3 {
        return Ok(ext3_dims_linear(&res, window));
    }
    let e = ext3_presentation(&res)?;
    Ok(window.map(|s| (s, e.dim(s))).collect())
}

/// The numerical bounds `l = d - 2`, `a = (d-2)(d-3)/2 - g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalBounds {
    pub degree: i64,
    pub genus: i64,
    pub a: i64,
    pub l: i64,
}

impl ExtremalBounds {
    pub fn new(degree: i64, genus: i64) -> Self {
        ExtremalBounds { degree, genus, a: (degree - 2) * (degree - 3) / 2 - genus, l: degree - 2 }
    }

    /// `ρ ≤ a` on `[0, l]` and `ρ = 0` off `[1 - a, a + l - 1]`.
    pub fn holds_for(&self, rao: &RaoProfile) -> bool {
        rao.dims.iter().all(|(&n, &r)| {
            let r = r as i64;
            let n = n as i64;
            let inside = (1 - self.a..self.a + self.l).contains(&n);
            r == 0 || (inside && (!(0..=self.l).contains(&n) || r <= self.a))
        })
    }

    /// All three bounds attained: `r_a = 1 - a`, `r_o = a + l - 1` and
    /// `ρ ≡ a` on `[0, l]`.
    pub fn is_extremal(&self, rao: &RaoProfile) -> bool {
        self.a >= 1
            && self.holds_for(rao)
            && rao.ra.map(|x| x as i64) == Some(1 - self.a)
            && rao.ro.map(|x| x as i64) == Some(self.a + self.l - 1)
            && (0..=self.l).all(|n| rao.dim(n as i32) as i64 == self.a)
    }

    /// The window `[1 - a, a + l - 1]` with margins; never empty.
    pub fn window(&self) -> (i32, i32) {
        let lo = (1 - self.a).min(0) as i32 - MARGIN;
        let hi = (self.a + self.l - 1).max(0) as i32 + MARGIN;
        (lo, hi)
    }
}

/// `ρ(n) = h^1(I_C(n))` on a window whose margins are certified zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RaoProfile {
    pub window: (i32, i32),
    pub dims: BTreeMap<i32, usize>,
    pub ra: Option<i32>,
    pub ro: Option<i32>,
}

impl RaoProfile {
    pub fn dim(&self, n: i32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total() == 0
    }

    /// The nonzero values, `n -> ρ(n)`.
    pub fn nonzero(&self) -> BTreeMap<i32, usize> {
        self.dims.iter().filter(|(_, &d)| d > 0).map(|(&n, &d)| (n, d)).collect()
    }

    fn from_fn(window: (i32, i32), f: impl Fn(i32) -> usize) -> Self {
        let dims: BTreeMap<i32, usize> = (window.0..=window.1).map(|n| (n, f(n))).collect();
        let ra = dims.iter().find(|(_, &d)| d > 0).map(|(&n, _)| n);
        let ro = dims.iter().rev().find(|(_, &d)| d > 0).map(|(&n, _)| n);
        RaoProfile { window, dims, ra, ro }
    }

    /// Margins of width [`MARGIN`] at both ends vanish.
    pub fn margins_vanish(&self) -> bool {
        let (lo, hi) = self.window;
        (lo..lo + MARGIN).chain(hi - MARGIN + 1..=hi).all(|n| self.dim(n) == 0)
    }
}

/// All the graded data of a curve derived from one resolution.
#[derive(Clone, Debug)]
pub struct CurveHomology<F: Field> {
    pub hilbert: CurveHilbert,
    pub resolution: FreeResolution<F>,
    pub ext3: PresentedModule<F>,
}

impl<F: Field> CurveHomology<F> {
    /// Computes the resolution and Ext presentation of a saturated curve
    /// ideal.
    pub fn new(ideal: &Ideal<F>) -> Result<Self> {
        let hilbert = hilbert_polynomial(ideal)?;
        let mut resolution = free_resolution(ideal)?;
        if resolution.modules.len() > 3 {
            // Ext^3 is unchanged by saturation
            resolution = free_resolution(&ideal.saturate_irrelevant()?)?;
        }
        let ext3 = ext3_presentation(&resolution)?;
        Ok(CurveHomology { hilbert, resolution, ext3 })
    }

    pub fn bounds(&self) -> ExtremalBounds {
        ExtremalBounds::new(self.hilbert.degree, self.hilbert.genus)
    }

    pub fn locally_cm(&self) -> bool {
        self.ext3.is_finite_length()
    }

    pub fn rao_profile(&self) -> Result<RaoProfile> {
        if !self.locally_cm() {
            return Err(AlgebraError::NotACurve("Ext^3 has infinite length: not locally Cohen-Macaulay".into()));
        }
        let (mut lo, mut hi) = self.bounds().window();
        if let Some((slo, shi)) = self.ext3.support() {
            // Ext degree s is Rao degree -s-4
            let (rlo, rhi) = (-shi - 4, -slo - 4);
            lo = lo.min(rlo - MARGIN);
            hi = hi.max(rhi + MARGIN);
        }
        if hi - lo > WINDOW_CAP {
            return Err(AlgebraError::WindowCap { cap: WINDOW_CAP });
        }
        let p = RaoProfile::from_fn((lo, hi), |n| self.ext3.dim(-n - 4));
        debug_assert!(p.margins_vanish());
        Ok(p)
    }

    /// Degrees of a minimal generating set of the Rao module, ascending.
    pub fn rao_generator_degrees(&self) -> Vec<i32> {
        let Some((lo, hi)) = self.ext3.support() else { return Vec::new() };
        let mut out = Vec::new();
        for s in (lo..=hi).rev() {
            for _ in 0..self.ext3.socle_dim(s) {
                out.push(-s - 4);
            }
        }
        out
    }
}

pub fn rao_profile<F: Field>(ideal: &Ideal<F>) -> Result<RaoProfile> {
    CurveHomology::new(ideal)?.rao_profile()
}

pub fn rao_generator_degrees<F: Field>(ideal: &Ideal<F>) -> Result<Vec<i32>> {
    let h = CurveHomology::new(ideal)?;
    if !h.locally_cm() {
        return Err(AlgebraError::NotACurve("Rao module has infinite length".into()));
    }
    Ok(h.rao_generator_degrees())
}

/// `(h^0, h^1, h^2, h^3)` of `I_C(n)` for a saturated curve ideal.
pub fn sheaf_cohomology<F: Field>(ideal: &Ideal<F>, n: i32) -> Result<[i64; 4]> {
    let h = CurveHomology::new(ideal)?;
    sheaf_cohomology_with(ideal, &h, n)
}

pub fn sheaf_cohomology_with<F: Field>(ideal: &Ideal<F>, h: &CurveHomology<F>, n: i32) -> Result<[i64; 4]> {
    let h0 = dim_s(n) as i64 - hilbert_function(ideal, n as i64)?;
    let h1 = h.ext3.dim(-n - 4) as i64;
    let h3 = dim_s(-n - 4) as i64;
    let m = n as i64;
    let chi = (m + 3) * (m + 2) * (m + 1) / 6 - (h.hilbert.degree * m + 1 - h.hilbert.genus);
    let h2 = chi - h0 + h1 + h3;
    Ok([h0, h1, h2, h3])
}

/// `dim coker(map)` in each degree of `window`.
pub fn graded_coker_dims<F: Field>(map: &HomMap<F>, window: std::ops::RangeInclusive<i32>) -> BTreeMap<i32, usize> {
    window.map(|e| (e, map.coker_dim(e))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Ring;
    use crate::QQ;

    fn ideal(gens: &[&str]) -> Ideal<QQ> {
        Ideal::parse(Ring::geometric(), gens).unwrap()
    }

    fn nonzero(p: &RaoProfile) -> Vec<(i32, usize)> {
        p.nonzero().into_iter().collect()
    }

    #[test]
    fn ext3_of_complete_intersection_vanishes() {
        let d = ext3_dims(&ideal(&["x", "y"]), -8..=4).unwrap();
        assert!(d.values().all(|&v| v == 0));
    }

    #[test]
    fn ext3_of_skew_lines_agrees_with_linear_algebra() {
        let i = ideal(&["x*z", "x*w", "y*z", "y*w"]);
        let gb = ext3_dims(&i, -8..=2).unwrap();
        let lin = ext3_dims_linear(&free_resolution(&i).unwrap(), -8..=2);
        assert_eq!(gb, lin);
        assert_eq!(gb.values().sum::<usize>(), 1);
        assert_eq!(gb[&-4], 1);
    }

    #[test]
    fn double_line_rao_profiles() {
        let z0 = rao_profile(&ideal(&["x^2", "x*y", "y^2", "x*w - y*z"])).unwrap();
        assert_eq!(nonzero(&z0), vec![(0, 1)]);
        let z1 = rao_profile(&ideal(&["x^2", "x*y", "y^2", "x*w^2 - y*z^2"])).unwrap();
        assert_eq!(nonzero(&z1), vec![(-1, 1), (0, 2), (1, 1)]);
        assert!(z1.margins_vanish());
    }

    #[test]
    fn triple_line_rao_profile() {
        let w = rao_profile(&ideal(&["x^2", "x*y", "y^3", "x*w^2 - y^2*z"])).unwrap();
        assert_eq!(nonzero(&w), vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn twisted_cubic_is_acm() {
        let i = ideal(&["x*z - y^2", "y*w - z^2", "x*w - y*z"]);
        assert!(rao_profile(&i).unwrap().is_zero());
        assert!(rao_generator_degrees(&i).unwrap().is_empty());
    }

    #[test]
    fn skew_lines_rao_generator() {
        assert_eq!(rao_generator_degrees(&ideal(&["x*z", "x*w", "y*z", "y*w"])).unwrap(), vec![0]);
    }

    #[test]
    fn unsaturated_input_is_handled() {
        // skew lines times the irrelevant ideal
        let i = ideal(&["x*z", "x*w", "y*z", "y*w"]).product(&ideal(&["x", "y", "z", "w"]));
        let h = CurveHomology::new(&i).unwrap();
        assert!(h.locally_cm());
        assert_eq!(nonzero(&h.rao_profile().unwrap()), vec![(0, 1)]);
    }

    #[test]
    fn line_cohomology() {
        let i = ideal(&["x", "y"]);
        assert_eq!(sheaf_cohomology(&i, 0).unwrap(), [0, 0, 0, 0]);
        assert_eq!(sheaf_cohomology(&i, 5).unwrap()[1..], [0, 0, 0]);
        // h^2(I_L(-2)) = h^1(O_L(-2)) = 1
        assert_eq!(sheaf_cohomology(&i, -2).unwrap(), [0, 0, 1, 0]);
    }

    #[test]
    fn extremal_bounds_of_double_line() {
        let i = ideal(&["x^2", "x*y", "y^2", "x*w - y*z"]);
        let h = CurveHomology::new(&i).unwrap();
        let b = h.bounds();
        assert_eq!((b.a, b.l), (1, 0));
        assert!(b.is_extremal(&h.rao_profile().unwrap()));
    }

    #[test]
    fn non_cm_curve_is_detected() {
        // a line with an embedded point that survives saturation would need
        // a non-saturated ideal; instead take a plane curve union a point
        let i = ideal(&["x", "y"]).intersect(&ideal(&["x", "z", "w"])).unwrap();
        let h = CurveHomology::new(&i).unwrap();
        assert!(!h.locally_cm());
    }
}
