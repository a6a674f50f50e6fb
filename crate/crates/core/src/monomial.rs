//! Variables, ring contexts, monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Number of exponent slots in a [`Monomial`].
pub const MAX_VARS: usize = 8;

/// The variables a ring may carry. `X..W` are the coordinates of P^3 and
/// have weight one in the geometric grading; the deformation parameter `T`
/// and the auxiliary elimination variable `U` have weight zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    X,
    Y,
    Z,
    W,
    T,
    U,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::X, Var::Y, Var::Z, Var::W, Var::T, Var::U];

    pub fn name(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
            Var::W => 'w',
            Var::T => 't',
            Var::U => 'u',
        }
    }

    pub fn from_name(c: char) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == c)
    }

    pub fn geometric_weight(self) -> u32 {
        match self {
            Var::T | Var::U => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// An ordered list of variables. The coordinates `x,y,z,w` always occupy the
/// first four slots; `t` and `u` may be appended.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ring {
    len: u8,
    vars: [Var; MAX_VARS],
}

impl Ring {
    /// k[x,y,z,w], the homogeneous coordinate ring of P^3.
    pub fn geometric() -> Ring {
        Ring::from_vars(&[Var::X, Var::Y, Var::Z, Var::W])
    }

    /// k[t][x,y,z,w] with t stored in the fifth slot.
    pub fn family() -> Ring {
        Ring::geometric().with(Var::T)
    }

    pub fn from_vars(vars: &[Var]) -> Ring {
        assert!(vars.len() <= MAX_VARS);
        let mut slots = [Var::X; MAX_VARS];
        slots[..vars.len()].copy_from_slice(vars);
        let ring = Ring { len: vars.len() as u8, vars: slots };
        for (i, v) in vars.iter().enumerate() {
            assert!(!vars[..i].contains(v), "duplicate variable {}", v);
        }
        ring
    }

    /// This ring with `v` appended (no-op if already present).
    pub fn with(&self, v: Var) -> Ring {
        if self.index_of(v).is_some() {
            return *self;
        }
        let mut vars = self.vars().to_vec();
        vars.push(v);
        Ring::from_vars(&vars)
    }

    /// This ring with `v` removed; later slots shift down.
    pub fn without(&self, v: Var) -> Ring {
        let vars: Vec<Var> = self.vars().iter().copied().filter(|&w| w != v).collect();
        Ring::from_vars(&vars)
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars[..self.len as usize]
    }

    pub fn nvars(&self) -> usize {
        self.len as usize
    }

    pub fn index_of(&self, v: Var) -> Option<usize> {
        self.vars().iter().position(|&w| w == v)
    }

    pub fn var(&self, i: usize) -> Var {
        self.vars()[i]
    }

    /// True when the ring is exactly k[x,y,z,w].
    pub fn is_geometric(&self) -> bool {
        *self == Ring::geometric()
    }

    pub fn var_set(&self, vars: &[Var]) -> VarSet {
        let mut s = VarSet::default();
        for &v in vars {
            if let Some(i) = self.index_of(v) {
                s.0 |= 1 << i;
            }
        }
        s
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k[")?;
        for (i, v) in self.vars().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A set of variable slots, as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct VarSet(pub u8);

impl VarSet {
    pub fn contains(self, slot: usize) -> bool {
        self.0 & (1 << slot) != 0
    }
}

/// A monomial as a fixed array of exponents; slots beyond the ring's
/// variable count stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn from_exps(exps: &[u16]) -> Monomial {
        assert!(exps.len() <= MAX_VARS);
        let mut m = Monomial::default();
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn var(slot: usize) -> Monomial {
        let mut m = Monomial::default();
        m.exps[slot] = 1;
        m
    }

    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn exp(&self, slot: usize) -> u16 {
        self.exps[slot]
    }

    pub fn set_exp(&mut self, slot: usize, e: u16) {
        self.exps[slot] = e;
    }

    /// Total degree over all slots.
    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Degree in the geometric grading: x, y, z, w only.
    pub fn geometric_degree(&self) -> u32 {
        self.exps[..4].iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += other.exps[i];
        }
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        let mut m = Monomial::default();
        for i in 0..MAX_VARS {
            if self.exps[i] > other.exps[i] {
                return None;
            }
            m.exps[i] = other.exps[i] - self.exps[i];
        }
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::default();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
        }
        m
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::default();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(other.exps[i]);
        }
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Bit i set when slot i has a positive exponent; a cheap divisibility
    /// pre-filter.
    pub fn support_mask(&self) -> u8 {
        let mut mask = 0u8;
        for i in 0..MAX_VARS {
            if self.exps[i] > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Degree restricted to the slots of `set`.
    pub fn degree_in(&self, set: VarSet) -> u32 {
        (0..MAX_VARS).filter(|&i| set.contains(i)).map(|i| self.exps[i] as u32).sum()
    }

    /// Writes the monomial with the ring's variable names, e.g. `x^2*z`.
    pub fn fmt_in(&self, ring: &Ring) -> String {
        let mut parts = Vec::new();
        for (i, v) in ring.vars().iter().enumerate() {
            match self.exps[i] {
                0 => {}
                1 => parts.push(v.name().to_string()),
                e => parts.push(format!("{}^{}", v.name(), e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_in(&Ring::from_vars(&Var::ALL)))
    }
}

/// Monomial orders used by the Groebner engine.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic on the ring's slot order.
    Grevlex,
    /// Lexicographic, slot 0 largest.
    Lex,
    /// Degree in the eliminated block first, then grevlex. An elimination
    /// order for the variables in the set.
    Elimination(VarSet),
    /// Weighted degree first, then grevlex.
    Weighted(Vec<u32>),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Elimination(set) => a.degree_in(*set).cmp(&b.degree_in(*set)).then_with(|| grevlex(a, b)),
            MonomialOrder::Weighted(w) => {
                let wa: u64 = w.iter().zip(a.exps.iter()).map(|(&w, &e)| w as u64 * e as u64).sum();
                let wb: u64 = w.iter().zip(b.exps.iter()).map(|(&w, &e)| w as u64 * e as u64).sum();
                wa.cmp(&wb).then_with(|| grevlex(a, b))
            }
        }
    }

    /// Short tag used in reports and cache keys.
    pub fn tag(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Elimination(s) => format!("elim({:#04x})", s.0),
            MonomialOrder::Weighted(w) => format!("weighted{:?}", w),
        }
    }
}

fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.total_degree().cmp(&b.total_degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..MAX_VARS).rev() {
        if a.exps[i] != b.exps[i] {
            // smaller exponent in the last differing slot is larger
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

/// All monomials of degree `n` in the first `nvars` slots, descending grevlex.
pub fn monomials_of_degree(nvars: usize, n: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = Monomial::default();
    fill(nvars, 0, n, &mut cur, &mut out);
    out.sort_by(|a, b| grevlex(b, a));
    out
}

fn fill(nvars: usize, slot: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
    if slot + 1 == nvars {
        cur.exps[slot] = left as u16;
        out.push(*cur);
        cur.exps[slot] = 0;
        return;
    }
    if nvars == 0 {
        if left == 0 {
            out.push(*cur);
        }
        return;
    }
    for e in (0..=left).rev() {
        cur.exps[slot] = e as u16;
        fill(nvars, slot + 1, left - e, cur, out);
    }
    cur.exps[slot] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        let z = Monomial::var(2);
        let o = MonomialOrder::Grevlex;
        assert_eq!(o.cmp(&x, &y), Ordering::Greater);
        // x*z < y^2 in grevlex
        assert_eq!(o.cmp(&x.mul(&z), &y.mul(&y)), Ordering::Less);
        assert_eq!(o.cmp(&x, &x.mul(&x)), Ordering::Less);
    }

    #[test]
    fn elimination_puts_block_first() {
        let r = Ring::geometric().with(Var::U);
        let o = MonomialOrder::Elimination(r.var_set(&[Var::U]));
        let u = Monomial::var(4);
        let x3 = Monomial::from_exps(&[3]);
        assert_eq!(o.cmp(&u, &x3), Ordering::Greater);
    }

    #[test]
    fn degree_counts() {
        assert_eq!(monomials_of_degree(4, 0).len(), 1);
        assert_eq!(monomials_of_degree(4, 1).len(), 4);
        assert_eq!(monomials_of_degree(4, 2).len(), 10);
        assert_eq!(monomials_of_degree(2, 5).len(), 6);
    }

    #[test]
    fn ring_edits() {
        let r = Ring::family();
        assert_eq!(r.nvars(), 5);
        assert_eq!(r.index_of(Var::T), Some(4));
        assert_eq!(r.without(Var::T), Ring::geometric());
        assert_eq!(format!("{}", r), "k[x,y,z,w,t]");
    }
}
