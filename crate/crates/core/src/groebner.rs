//! Buchberger's algorithm for ideals and for submodules of free modules.
//!
//! Module elements are sparse vectors of terms `(component, monomial)`
//! ordered position-over-term with component 0 largest; ideals are the
//! rank-one case. Pairs are selected by sugar and pruned with the
//! Gebauer-Moller criteria.

use std::cmp::Ordering;

use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder, Ring};
use crate::poly::Polynomial;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub comp: u32,
    pub mono: Monomial,
}

impl Term {
    pub fn new(comp: u32, mono: Monomial) -> Self {
        Term { comp, mono }
    }

    fn mul(&self, m: &Monomial) -> Term {
        Term { comp: self.comp, mono: self.mono.mul(m) }
    }
}

/// A monomial order extended position-over-term to free modules. `shifts`
/// are the degrees of the basis vectors and only feed the sugar heuristic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    pub mono: MonomialOrder,
    pub shifts: Vec<i32>,
}

impl TermOrder {
    pub fn ideal(mono: MonomialOrder) -> Self {
        TermOrder { mono, shifts: Vec::new() }
    }

    pub fn module(mono: MonomialOrder, shifts: Vec<i32>) -> Self {
        TermOrder { mono, shifts }
    }

    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        b.comp.cmp(&a.comp).then_with(|| self.mono.cmp(&a.mono, &b.mono))
    }

    fn sugar_of(&self, t: &Term) -> i64 {
        t.mono.total_degree() as i64 + self.shifts.get(t.comp as usize).copied().unwrap_or(0) as i64
    }
}

/// A sparse module element, terms sorted descending under some [`TermOrder`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector<F> {
    pub terms: Vec<(Term, F)>,
}

impl<F: Field> Vector<F> {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first().map(|(t, _)| t)
    }

    /// Collects arbitrary terms, combining duplicates, and sorts under `ord`.
    pub fn from_terms(mut terms: Vec<(Term, F)>, ord: &TermOrder) -> Self {
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<(Term, F)> = Vec::with_capacity(terms.len());
        for (t, c) in terms {
            match out.last_mut() {
                Some((lt, lc)) if *lt == t => *lc = lc.add_ref(&c),
                _ => out.push((t, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Vector { terms: out }
    }

    pub fn from_poly(p: &Polynomial<F>, comp: u32, ord: &TermOrder) -> Self {
        let mut terms: Vec<(Term, F)> = p.terms().iter().map(|(m, c)| (Term::new(comp, *m), c.clone())).collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Vector { terms }
    }

    /// Component `comp` as a polynomial in `ring`.
    pub fn component(&self, comp: u32, ring: Ring) -> Polynomial<F> {
        Polynomial::from_terms(
            ring,
            self.terms.iter().filter(|(t, _)| t.comp == comp).map(|(t, c)| (t.mono, c.clone())),
        )
    }

    pub fn max_comp(&self) -> Option<u32> {
        self.terms.iter().map(|(t, _)| t.comp).max()
    }

    fn monic(mut self) -> Self {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.inv();
                for (_, a) in self.terms.iter_mut() {
                    *a = a.mul_ref(&inv);
                }
            }
        }
        self
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector { terms: self.terms.iter().map(|(t, a)| (*t, a.mul_ref(c))).collect() }
    }

    pub fn add(&self, other: &Self, ord: &TermOrder) -> Self {
        Vector { terms: sub_scaled(&self.terms, &other.terms, &-F::one(), &Monomial::one(), ord) }
    }

    /// `self - c * m * other`.
    pub fn sub_mul(&self, other: &Self, c: &F, m: &Monomial, ord: &TermOrder) -> Self {
        Vector { terms: sub_scaled(&self.terms, &other.terms, c, m, ord) }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &F) -> Self {
        Vector { terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.mul_ref(c))).collect() }
    }
}

/// `a - c * m * b`, both sorted descending.
fn sub_scaled<F: Field>(a: &[(Term, F)], b: &[(Term, F)], c: &F, m: &Monomial, ord: &TermOrder) -> Vec<(Term, F)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let tb = b[j].0.mul(m);
        match ord.cmp(&a[i].0, &tb) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((tb, -c.mul_ref(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = a[i].1.sub_ref(&c.mul_ref(&b[j].1));
                if !v.is_zero() {
                    out.push((tb, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (t, v) in &b[j..] {
        out.push((t.mul(m), -c.mul_ref(v)));
    }
    out
}

struct Elem<F> {
    v: Vector<F>,
    lead: Term,
    mask: u8,
    sugar: i64,
    active: bool,
}

/// Reduction against a fixed list of monic elements with distinct leads.
pub struct Reducer<'a, F> {
    ord: &'a TermOrder,
    elems: Vec<(&'a Vector<F>, Term, u8)>,
}

impl<'a, F: Field> Reducer<'a, F> {
    pub fn new(basis: &'a [Vector<F>], ord: &'a TermOrder) -> Self {
        let elems = basis
            .iter()
            .filter(|v| !v.is_zero())
            .map(|v| {
                let lead = v.terms[0].0;
                (v, lead, lead.mono.support_mask())
            })
            .collect();
        Reducer { ord, elems }
    }

    fn divisor(&self, t: &Term) -> Option<usize> {
        let mask = t.mono.support_mask();
        self.elems.iter().position(|(_, lead, m)| lead.comp == t.comp && m & !mask == 0 && lead.mono.divides(&t.mono))
    }

    /// Full normal form.
    pub fn reduce(&self, v: &Vector<F>) -> Vector<F> {
        full_reduce(v.terms.clone(), self.ord, |t| {
            self.divisor(t).map(|i| {
                let (g, lead, _) = &self.elems[i];
                (*g, lead.mono.quotient_of(&t.mono).expect("divides"))
            })
        })
        .0
    }

    pub fn is_reducible(&self, t: &Term) -> bool {
        self.divisor(t).is_some()
    }
}

/// Repeatedly cancels the first reducible term. `find` returns the monic
/// reductor and the cofactor monomial for a term. Also returns the largest
/// sugar cofactor degree used.
fn full_reduce<'b, F: Field>(
    terms: Vec<(Term, F)>,
    ord: &TermOrder,
    mut find: impl FnMut(&Term) -> Option<(&'b Vector<F>, Monomial)>,
) -> (Vector<F>, Vec<(&'b Vector<F>, Monomial)>) {
    let mut done: Vec<(Term, F)> = Vec::new();
    let mut rest = terms;
    let mut start = 0;
    let mut used = Vec::new();
    while start < rest.len() {
        let (t, c) = rest[start].clone();
        match find(&t) {
            Some((g, q)) => {
                let tail = &g.terms[1..];
                rest = sub_scaled(&rest[start + 1..], tail, &c, &q, ord);
                start = 0;
                used.push((g, q));
            }
            None => {
                done.push((t, c));
                start += 1;
            }
        }
    }
    (Vector { terms: done }, used)
}

#[derive(Clone, Copy)]
enum Task {
    Input(usize),
    Pair(usize, usize),
}

struct Pending {
    task: Task,
    sugar: i64,
    lcm: Term,
}

/// Computes the reduced Groebner basis of the submodule generated by `gens`.
/// The output is monic and sorted by ascending leading term.
pub fn groebner_basis<F: Field>(gens: &[Vector<F>], ord: &TermOrder) -> Vec<Vector<F>> {
    let module = gens.iter().any(|g| g.terms.iter().any(|(t, _)| t.comp != 0));
    let mut inputs: Vec<Vector<F>> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            inputs.push(g.clone());
        }
    }
    let mut elems: Vec<Elem<F>> = Vec::new();
    let mut pending: Vec<Pending> = inputs
        .iter()
        .enumerate()
        .map(|(i, v)| Pending {
            task: Task::Input(i),
            sugar: v.terms.iter().map(|(t, _)| ord.sugar_of(t)).max().unwrap_or(0),
            lcm: v.terms[0].0,
        })
        .collect();

    while !pending.is_empty() {
        // lowest sugar first, then smallest lcm; inputs before pairs on ties
        let mut best = 0;
        for k in 1..pending.len() {
            let (a, b) = (&pending[k], &pending[best]);
            let better = match a.sugar.cmp(&b.sugar) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => match ord.cmp(&a.lcm, &b.lcm) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => matches!(a.task, Task::Input(_)) && matches!(b.task, Task::Pair(..)),
                },
            };
            if better {
                best = k;
            }
        }
        let Pending { task, sugar, .. } = pending.swap_remove(best);
        let start = match task {
            Task::Input(i) => inputs[i].clone(),
            Task::Pair(i, j) => spoly(&elems[i], &elems[j], ord),
        };
        let (h, sugar) = reduce_active(&elems, start, sugar, ord);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        let lead = h.terms[0].0;
        if !module && lead.mono.is_one() {
            return vec![h];
        }
        let idx = elems.len();
        elems.push(Elem { mask: lead.mono.support_mask(), v: h, lead, sugar, active: true });
        update(&mut elems, &mut pending, idx, module);
    }

    let active: Vec<Vector<F>> = elems.into_iter().filter(|e| e.active).map(|e| e.v).collect();
    interreduce(active, ord)
}

fn spoly<F: Field>(a: &Elem<F>, b: &Elem<F>, ord: &TermOrder) -> Vector<F> {
    let l = a.lead.mono.lcm(&b.lead.mono);
    let qa = a.lead.mono.quotient_of(&l).expect("lcm");
    let qb = b.lead.mono.quotient_of(&l).expect("lcm");
    let left: Vec<(Term, F)> = a.v.terms[1..].iter().map(|(t, c)| (t.mul(&qa), c.clone())).collect();
    Vector { terms: sub_scaled(&left, &b.v.terms[1..], &F::one(), &qb, ord) }
}

fn reduce_active<F: Field>(elems: &[Elem<F>], v: Vector<F>, mut sugar: i64, ord: &TermOrder) -> (Vector<F>, i64) {
    let find = |t: &Term| {
        let mask = t.mono.support_mask();
        elems
            .iter()
            .find(|e| e.active && e.lead.comp == t.comp && e.mask & !mask == 0 && e.lead.mono.divides(&t.mono))
            .map(|e| (&e.v, e.lead.mono.quotient_of(&t.mono).expect("divides")))
    };
    let (out, used) = full_reduce(v.terms, ord, find);
    for (g, q) in used {
        let gs = elems.iter().find(|e| std::ptr::eq(&e.v, g)).map(|e| e.sugar).unwrap_or(0);
        sugar = sugar.max(gs + q.total_degree() as i64);
    }
    (out, sugar)
}

fn update<F: Field>(elems: &mut [Elem<F>], pending: &mut Vec<Pending>, h: usize, module: bool) {
    let hl = elems[h].lead;
    let coprime = |a: &Term, b: &Term| !module && a.mono.is_coprime(&b.mono);

    let mut c: Vec<(usize, Monomial)> = elems
        .iter()
        .enumerate()
        .filter(|(i, e)| *i != h && e.active && e.lead.comp == hl.comp)
        .map(|(i, e)| (i, e.lead.mono.lcm(&hl.mono)))
        .collect();
    let mut d: Vec<(usize, Monomial)> = Vec::new();
    while let Some((g, l)) = c.pop() {
        let keep = coprime(&elems[g].lead, &hl) || !c.iter().chain(d.iter()).any(|(_, other)| other.divides(&l));
        if keep {
            d.push((g, l));
        }
    }
    let fresh: Vec<(usize, Monomial)> = d.into_iter().filter(|(g, _)| !coprime(&elems[*g].lead, &hl)).collect();

    // chain criterion on old pairs
    pending.retain(|p| match p.task {
        Task::Input(_) => true,
        Task::Pair(i, j) => {
            if p.lcm.comp != hl.comp || !hl.mono.divides(&p.lcm.mono) {
                return true;
            }
            let li = elems[i].lead.mono.lcm(&hl.mono);
            let lj = elems[j].lead.mono.lcm(&hl.mono);
            li == p.lcm.mono || lj == p.lcm.mono
        }
    });

    for (g, l) in fresh {
        let ge = &elems[g];
        let qa = ge.lead.mono.quotient_of(&l).expect("lcm");
        let qb = hl.mono.quotient_of(&l).expect("lcm");
        let sugar = (ge.sugar + qa.total_degree() as i64).max(elems[h].sugar + qb.total_degree() as i64);
        pending.push(Pending { task: Task::Pair(g, h), sugar, lcm: Term::new(hl.comp, l) });
    }

    for (i, e) in elems.iter_mut().enumerate() {
        if i != h && e.active && e.lead.comp == hl.comp && hl.mono.divides(&e.lead.mono) {
            e.active = false;
        }
    }
}

/// Turns a minimal basis into the reduced one and sorts by leading term.
fn interreduce<F: Field>(mut basis: Vec<Vector<F>>, ord: &TermOrder) -> Vec<Vector<F>> {
    basis.sort_by(|a, b| ord.cmp(&a.terms[0].0, &b.terms[0].0));
    let mut out = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let others: Vec<Vector<F>> =
            basis.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
        let red = Reducer::new(&others, ord);
        let head = basis[i].terms[0].clone();
        let tail = red.reduce(&Vector { terms: basis[i].terms[1..].to_vec() });
        let mut terms = vec![head];
        terms.extend(tail.terms);
        out.push(Vector { terms });
    }
    out
}

/// Buchberger's criterion: every S-pair of `basis` reduces to zero.
pub fn satisfies_buchberger<F: Field>(basis: &[Vector<F>], ord: &TermOrder) -> bool {
    let elems: Vec<Elem<F>> = basis
        .iter()
        .map(|v| {
            let v = v.clone().monic();
            let lead = v.terms[0].0;
            Elem { mask: lead.mono.support_mask(), v, lead, sugar: 0, active: true }
        })
        .collect();
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            if elems[i].lead.comp != elems[j].lead.comp {
                continue;
            }
            let s = spoly(&elems[i], &elems[j], ord);
            if !reduce_active(&elems, s, 0, ord).0.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Reducedness: monic, and no term of any element is divisible by the
/// leading term of another.
pub fn is_reduced<F: Field>(basis: &[Vector<F>], ord: &TermOrder) -> bool {
    for (i, v) in basis.iter().enumerate() {
        if v.is_zero() || !v.terms[0].1.is_one() {
            return false;
        }
        let others: Vec<Vector<F>> =
            basis.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
        let red = Reducer::new(&others, ord);
        if v.terms.iter().any(|(t, _)| red.is_reducible(t)) {
            return false;
        }
    }
    true
}
