//! Homogeneous ideals and the ideal calculus: membership, intersection,
//! quotients, saturation, elimination and linkage.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{groebner_basis, Reducer, TermOrder, Vector};
use crate::hilbert;
use crate::monomial::{Monomial, MonomialOrder, Ring, Var, VarSet};
use crate::poly::Polynomial;

/// A reduced Groebner basis with respect to one monomial order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F> {
    ring: Ring,
    order: TermOrder,
    elems: Vec<Vector<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn order(&self) -> &MonomialOrder {
        &self.order.mono
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Basis polynomials, ascending by leading monomial.
    pub fn polys(&self) -> Vec<Polynomial<F>> {
        self.elems.iter().map(|v| v.component(0, self.ring)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().map(|v| v.terms[0].0.mono).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.elems.len() == 1 && self.elems[0].terms[0].0.mono.is_one()
    }

    pub fn normal_form(&self, p: &Polynomial<F>) -> Polynomial<F> {
        let v = Vector::from_poly(p, 0, &self.order);
        Reducer::new(&self.elems, &self.order).reduce(&v).component(0, self.ring)
    }

    pub fn reduces_to_zero(&self, p: &Polynomial<F>) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Buchberger's criterion on the stored basis.
    pub fn check_buchberger(&self) -> bool {
        crate::groebner::satisfies_buchberger(&self.elems, &self.order)
    }

    pub fn check_reduced(&self) -> bool {
        crate::groebner::is_reduced(&self.elems, &self.order)
    }
}

/// An ideal given by generators, with a per-order cache of reduced
/// Groebner bases. The cache is behind a mutex so ideals can be shared
/// across threads; every exposed operation behaves as a pure function.
pub struct Ideal<F: Field> {
    ring: Ring,
    gens: Vec<Polynomial<F>>,
    cache: Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis<F>>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().expect("cache poisoned").clone();
        Ideal { ring: self.ring, gens: self.gens.clone(), cache: Mutex::new(cache) }
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g)?;
        }
        write!(f, ")")
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<F: Field> Ideal<F> {
    /// An ideal with generators homogeneous in the geometric grading.
    pub fn new(ring: Ring, gens: Vec<Polynomial<F>>) -> Result<Self> {
        for g in &gens {
            if g.ring() != ring {
                return Err(AlgebraError::RingMismatch(g.ring().to_string(), ring.to_string()));
            }
            if !g.homogeneity().is_homogeneous() {
                return Err(AlgebraError::NotHomogeneous(g.to_string()));
            }
        }
        Ok(Self::new_unchecked(ring, gens))
    }

    /// Skips the homogeneity check; elimination examples use affine input.
    pub fn new_unchecked(ring: Ring, gens: Vec<Polynomial<F>>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring, gens, cache: Mutex::new(HashMap::new()) }
    }

    /// Parses a list of polynomial strings.
    pub fn parse(ring: Ring, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|s| Polynomial::parse(s, ring)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    pub fn unit(ring: Ring) -> Self {
        Self::new_unchecked(ring, vec![Polynomial::one(ring)])
    }

    pub fn zero(ring: Ring) -> Self {
        Self::new_unchecked(ring, Vec::new())
    }

    /// The ideal generated by a set of variables.
    pub fn of_vars(ring: Ring, vars: &[Var]) -> Self {
        Self::new_unchecked(ring, vars.iter().map(|&v| Polynomial::var(ring, v)).collect())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.homogeneity().is_homogeneous())
    }

    fn is_standard_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_standard_homogeneous())
    }

    pub fn groebner(&self, order: &MonomialOrder) -> Arc<GroebnerBasis<F>> {
        if let Some(gb) = self.cache.lock().expect("cache poisoned").get(order) {
            return gb.clone();
        }
        let ord = TermOrder::ideal(order.clone());
        let vecs: Vec<Vector<F>> = self.gens.iter().map(|g| Vector::from_poly(g, 0, &ord)).collect();
        let elems = groebner_basis(&vecs, &ord);
        let gb = Arc::new(GroebnerBasis { ring: self.ring, order: ord, elems });
        self.cache.lock().expect("cache poisoned").insert(order.clone(), gb.clone());
        gb
    }

    pub fn grevlex(&self) -> Arc<GroebnerBasis<F>> {
        self.groebner(&MonomialOrder::Grevlex)
    }

    pub fn normal_form(&self, p: &Polynomial<F>) -> Polynomial<F> {
        self.grevlex().normal_form(p)
    }

    pub fn contains(&self, p: &Polynomial<F>) -> bool {
        p.ring() == self.ring && self.grevlex().reduces_to_zero(p)
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> bool {
        let gb = self.grevlex();
        other.ring == self.ring && other.gens.iter().all(|g| gb.reduces_to_zero(g))
    }

    /// Equality as ideals, by two-way membership.
    pub fn equals(&self, other: &Ideal<F>) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn is_unit(&self) -> bool {
        self.grevlex().is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// The ideal generated by the reduced grevlex basis.
    pub fn reduced(&self) -> Ideal<F> {
        let gb = self.grevlex();
        let out = Ideal::new_unchecked(self.ring, gb.polys());
        out.cache.lock().expect("cache poisoned").insert(MonomialOrder::Grevlex, gb);
        out
    }

    /// Reduced grevlex basis in the ideal text format: one polynomial per
    /// line, ascending by leading monomial.
    pub fn to_text(&self) -> String {
        crate::parse::format_generators(&self.grevlex().polys())
    }

    pub fn sum(&self, other: &Ideal<F>) -> Ideal<F> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new_unchecked(self.ring, gens)
    }

    pub fn product(&self, other: &Ideal<F>) -> Ideal<F> {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::new_unchecked(self.ring, gens)
    }

    pub fn to_ring(&self, target: Ring) -> Result<Ideal<F>> {
        let gens = self.gens.iter().map(|g| g.to_ring(target)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new_unchecked(target, gens))
    }

    /// Sets `v = value` in every generator; the result lives in the ring
    /// without `v`.
    pub fn specialize(&self, v: Var, value: &F) -> Ideal<F> {
        let target = self.ring.without(v);
        Ideal::new_unchecked(target, self.gens.iter().map(|g| g.substitute(v, value)).collect())
    }

    /// `I ∩ k[remaining variables]`, via a block elimination order.
    pub fn eliminate(&self, vars: &[Var]) -> Ideal<F> {
        let set: VarSet = self.ring.var_set(vars);
        let gb = self.groebner(&MonomialOrder::Elimination(set));
        let mut target = self.ring;
        for &v in vars {
            target = target.without(v);
        }
        let kept: Vec<Polynomial<F>> = gb
            .polys()
            .into_iter()
            .filter(|p| p.terms().iter().all(|(m, _)| m.degree_in(set) == 0))
            .map(|p| p.to_ring(target).expect("eliminated variables are absent"))
            .collect();
        Ideal::new_unchecked(target, kept)
    }

    fn check_same_ring(&self, other: &Ideal<F>) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch(self.ring.to_string(), other.ring.to_string()))
        }
    }

    /// `I ∩ J` as the u-free part of `u·I + (1-u)·J`.
    pub fn intersect(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_same_ring(other)?;
        if self.ring.index_of(Var::U).is_some() {
            return Err(AlgebraError::Invalid("intersection needs a ring without u".into()));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(self.ring));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() || self.contains_ideal(other) {
            return Ok(if other.is_unit() { self.clone() } else { other.clone() });
        }
        if other.contains_ideal(self) {
            return Ok(self.clone());
        }
        let big = self.ring.with(Var::U);
        let u = Polynomial::var(big, Var::U);
        let one_minus_u = &Polynomial::one(big) - &u;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&u * &g.to_ring(big)?);
        }
        for h in &other.gens {
            gens.push(&one_minus_u * &h.to_ring(big)?);
        }
        Ok(Ideal::new_unchecked(big, gens).eliminate(&[Var::U]))
    }

    /// `I : f`, from `I ∩ (f)` by exact division.
    pub fn quotient(&self, f: &Polynomial<F>) -> Result<Ideal<F>> {
        if f.is_zero() {
            return Err(AlgebraError::Invalid("quotient by zero".into()));
        }
        if f.is_unit() {
            return Ok(self.clone());
        }
        let principal = Ideal::new_unchecked(self.ring, vec![f.clone()]);
        let meet = self.intersect(&principal)?;
        let gens = meet
            .gens
            .iter()
            .map(|g| g.div_exact(f).ok_or_else(|| AlgebraError::Invalid("inexact division in quotient".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new_unchecked(self.ring, gens).reduced())
    }

    /// `I : J`.
    pub fn quotient_ideal(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_same_ring(other)?;
        let mut acc: Option<Ideal<F>> = None;
        for g in &other.gens {
            let q = self.quotient(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(self.ring)))
    }

    /// `I : f^∞` by iterating quotients until they stabilize.
    pub fn saturate(&self, f: &Polynomial<F>) -> Result<Ideal<F>> {
        let mut cur = self.reduced();
        loop {
            let next = cur.quotient(f)?;
            if cur.contains_ideal(&next) {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `I : f^∞` as the elimination of u from `I + (1 - u·f)`.
    pub fn saturate_rabinowitsch(&self, f: &Polynomial<F>) -> Result<Ideal<F>> {
        if self.ring.index_of(Var::U).is_some() {
            return Err(AlgebraError::Invalid("Rabinowitsch needs a ring without u".into()));
        }
        let big = self.ring.with(Var::U);
        let mut gens = self.gens.iter().map(|g| g.to_ring(big)).collect::<Result<Vec<_>>>()?;
        let uf = &Polynomial::var(big, Var::U) * &f.to_ring(big)?;
        gens.push(&Polynomial::one(big) - &uf);
        Ok(Ideal::new_unchecked(big, gens).eliminate(&[Var::U]))
    }

    /// `I : v^∞` for a variable, using a grevlex basis with `v` in the last
    /// slot: for standard-graded ideals the saturation is generated by the
    /// basis elements with all powers of `v` stripped.
    pub fn saturate_by_var(&self, v: Var) -> Result<Ideal<F>> {
        let slot = self.ring.index_of(v).ok_or_else(|| AlgebraError::Invalid(format!("{} not in {}", v, self.ring)))?;
        if !self.is_standard_homogeneous() {
            return self.saturate(&Polynomial::var(self.ring, v));
        }
        let last = self.ring.nvars() - 1;
        let swapped = Ideal::new_unchecked(self.ring, self.gens.iter().map(|g| g.swap_slots(slot, last)).collect());
        let gb = swapped.grevlex();
        let gens: Vec<Polynomial<F>> = gb
            .polys()
            .into_iter()
            .map(|p| {
                let e = p.var_valuation(last);
                p.strip_var(last, e).swap_slots(slot, last)
            })
            .collect();
        Ok(Ideal::new_unchecked(self.ring, gens).reduced())
    }

    /// `I : (x,y,z,w)^∞` as the intersection of the four variable
    /// saturations.
    pub fn saturate_irrelevant(&self) -> Result<Ideal<F>> {
        if !self.ring.is_geometric() {
            return Err(AlgebraError::Invalid(format!("irrelevant saturation needs k[x,y,z,w], got {}", self.ring)));
        }
        if !self.is_homogeneous() {
            return Err(AlgebraError::NotHomogeneous(format!("{}", self)));
        }
        let mut acc: Option<Ideal<F>> = None;
        for v in [Var::X, Var::Y, Var::Z, Var::W] {
            let s = self.saturate_by_var(v)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s)?,
            });
        }
        Ok(acc.expect("four variables").reduced())
    }

    pub fn is_saturated(&self) -> Result<bool> {
        Ok(self.contains_ideal(&self.saturate_irrelevant()?))
    }

    /// The linked ideal `(F,G) : I` of a curve inside the complete
    /// intersection of `f` and `g`.
    pub fn liaison(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Ideal<F>> {
        if !self.ring.is_geometric() {
            return Err(AlgebraError::Liaison("liaison needs k[x,y,z,w]".into()));
        }
        for (name, p) in [("F", f), ("G", g)] {
            if !self.contains(p) {
                return Err(AlgebraError::Liaison(format!("{} = {} is not in the ideal", name, p)));
            }
        }
        let (Some(df), Some(dg)) = (f.geometric_degree(), g.geometric_degree()) else {
            return Err(AlgebraError::Liaison("zero form".into()));
        };
        let ci = Ideal::new(self.ring, vec![f.clone(), g.clone()])?;
        if !hilbert::is_complete_intersection_curve(&ci, df, dg) {
            return Err(AlgebraError::Liaison(format!("({}, {}) is not a complete intersection curve", f, g)));
        }
        let linked = ci.quotient_ideal(self)?;
        if linked.is_unit() {
            return Err(AlgebraError::Liaison("residual curve is empty".into()));
        }
        Ok(linked)
    }
}

impl<F: Field> Ideal<F> {
    /// Scales every generator to have leading coefficient one.
    pub fn normalized(&self) -> Ideal<F> {
        Ideal::new_unchecked(self.ring, self.gens.iter().map(|g| g.monic()).collect())
    }
}

/// Convenience: `c` as a field element.
pub fn scalar<F: Field>(c: i64) -> F {
    if c == 1 {
        F::one()
    } else if c == 0 {
        F::zero()
    } else {
        F::from_i64(c)
    }
}
