//! Sparse multivariate polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::{monomials_of_degree, Monomial, MonomialOrder, Ring, Var};

/// Homogeneity of a polynomial in the geometric grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial is homogeneous of every degree.
    Any,
    Degree(u32),
    Inhomogeneous,
}

impl Homogeneity {
    pub fn is_homogeneous(self) -> bool {
        !matches!(self, Homogeneity::Inhomogeneous)
    }
}

/// A polynomial over `F` in the variables of `ring`. Terms are kept sorted
/// by descending grevlex with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<F> {
    ring: Ring,
    terms: Vec<(Monomial, F)>,
}

fn desc_grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    MonomialOrder::Grevlex.cmp(b, a)
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: Ring) -> Self {
        Polynomial { ring, terms: Vec::new() }
    }

    pub fn constant(ring: Ring, c: F) -> Self {
        Self::term(ring, Monomial::one(), c)
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, F::one())
    }

    pub fn term(ring: Ring, m: Monomial, c: F) -> Self {
        if c.is_zero() {
            Self::zero(ring)
        } else {
            Polynomial { ring, terms: vec![(m, c)] }
        }
    }

    /// The variable `v`. Panics if `v` is not in the ring.
    pub fn var(ring: Ring, v: Var) -> Self {
        let slot = ring.index_of(v).unwrap_or_else(|| panic!("{} not in {}", v, ring));
        Self::term(ring, Monomial::var(slot), F::one())
    }

    /// Builds a polynomial from arbitrary terms, collecting like terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, F)>>(ring: Ring, terms: I) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(e) => *e = e.add_ref(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| desc_grevlex(&a.0, &b.0));
        Polynomial { ring, terms }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    /// Leading term under grevlex.
    pub fn leading_term(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms
            .binary_search_by(|(t, _)| desc_grevlex(t, m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| F::zero())
    }

    /// Largest geometric degree of a term.
    pub fn geometric_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.geometric_degree()).max()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degs = self.terms.iter().map(|(m, _)| m.geometric_degree());
        match degs.next() {
            None => Homogeneity::Any,
            Some(d) => {
                if degs.all(|e| e == d) {
                    Homogeneity::Degree(d)
                } else {
                    Homogeneity::Inhomogeneous
                }
            }
        }
    }

    /// `(true, Some(d))` for homogeneous of degree d, `(true, None)` for zero.
    pub fn is_homogeneous(&self) -> (bool, Option<u32>) {
        match self.homogeneity() {
            Homogeneity::Any => (true, None),
            Homogeneity::Degree(d) => (true, Some(d)),
            Homogeneity::Inhomogeneous => (false, None),
        }
    }

    /// Homogeneous in the standard grading where every variable has weight one.
    pub fn is_standard_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.total_degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn uses_var(&self, v: Var) -> bool {
        match self.ring.index_of(v) {
            None => false,
            Some(s) => self.terms.iter().any(|(m, _)| m.exp(s) > 0),
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch(self.ring.to_string(), other.ring.to_string()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.combine(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.combine(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match desc_grevlex(ma, mb) {
                Ordering::Less => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((*mb, if negate { -cb.clone() } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca.sub_ref(cb) } else { ca.add_ref(cb) };
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (*m, if negate { -c.clone() } else { c.clone() })));
        Polynomial { ring: self.ring, terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ring);
        }
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul_ref(cb);
                match acc.get_mut(&m) {
                    Some(e) => *e = e.add_ref(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| desc_grevlex(&a.0, &b.0));
        Polynomial { ring: self.ring, terms }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring);
        }
        Polynomial { ring: self.ring, terms: self.terms.iter().map(|(m, a)| (*m, a.mul_ref(c))).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring);
        }
        Polynomial { ring: self.ring, terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.mul_ref(c))).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ring);
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv();
                self.scale(&inv)
            }
        }
    }

    /// Sets `v = value` and returns the result in the ring without `v`.
    pub fn substitute(&self, v: Var, value: &F) -> Self {
        let slot = match self.ring.index_of(v) {
            Some(s) => s,
            None => return self.clone(),
        };
        let target = self.ring.without(v);
        let n = self.ring.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let e = m.exp(slot);
            let mut out = Monomial::one();
            let mut k = 0;
            for i in 0..n {
                if i != slot {
                    out.set_exp(k, m.exp(i));
                    k += 1;
                }
            }
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff = coeff.mul_ref(value);
            }
            (out, coeff)
        });
        Polynomial::from_terms(target, terms)
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    /// Fails if a used variable is missing from `target`.
    pub fn to_ring(&self, target: Ring) -> Result<Self> {
        if target == self.ring {
            return Ok(self.clone());
        }
        let mut map = Vec::new();
        for (i, v) in self.ring.vars().iter().enumerate() {
            map.push((i, target.index_of(*v), *v));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut out = Monomial::one();
            for &(i, j, v) in &map {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                match j {
                    Some(j) => out.set_exp(j, e),
                    None => {
                        return Err(AlgebraError::RingMismatch(
                            format!("{} (uses {})", self.ring, v),
                            target.to_string(),
                        ))
                    }
                }
            }
            terms.push((out, c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Exchanges two variable slots.
    pub fn swap_slots(&self, i: usize, j: usize) -> Self {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out = *m;
            out.set_exp(i, m.exp(j));
            out.set_exp(j, m.exp(i));
            (out, c.clone())
        });
        Polynomial::from_terms(self.ring, terms)
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (lm, lc) = d.terms.first()?;
        let lc_inv = lc.inv();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let q = lm.quotient_of(&m)?;
            let qc = c.mul_ref(&lc_inv);
            rem = rem.combine(&d.mul_monomial(&q, &qc), true);
            quot.push((q, qc));
        }
        Some(Polynomial::from_terms(self.ring, quot))
    }

    /// Largest power of the variable in `slot` dividing every term.
    pub fn var_valuation(&self, slot: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(slot)).min().unwrap_or(0)
    }

    /// Divides every term by `slot^e`. Caller guarantees divisibility.
    pub fn strip_var(&self, slot: usize, e: u16) -> Self {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out = *m;
            out.set_exp(slot, m.exp(slot) - e);
            (out, c.clone())
        });
        Polynomial::from_terms(self.ring, terms)
    }

    /// Coefficients of the degree-`n` part on the monomial basis `basis`.
    pub fn coefficients_on(&self, basis: &[Monomial]) -> Vec<F> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }
}

/// Monomials of geometric degree `n` in x, y, z, w; there are C(n+3,3).
pub fn monomial_basis(n: u32) -> Vec<Monomial> {
    monomials_of_degree(4, n)
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, o: &Polynomial<F>) -> Polynomial<F> {
        self.checked_add(o).expect("ring mismatch in add")
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, o: &Polynomial<F>) -> Polynomial<F> {
        self.checked_sub(o).expect("ring mismatch in sub")
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, o: &Polynomial<F>) -> Polynomial<F> {
        self.checked_mul(o).expect("ring mismatch in mul")
    }
}

impl<F: Field> Add for Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, o: Polynomial<F>) -> Polynomial<F> {
        &self + &o
    }
}

impl<F: Field> Sub for Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, o: Polynomial<F>) -> Polynomial<F> {
        &self - &o
    }
}

impl<F: Field> Mul for Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, o: Polynomial<F>) -> Polynomial<F> {
        &self * &o
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial { ring: self.ring, terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let q = c.to_rational();
            let neg = q.is_negative();
            let abs = q.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", m.fmt_in(&self.ring))?;
            } else {
                write!(f, "{}*{}", abs, m.fmt_in(&self.ring))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
