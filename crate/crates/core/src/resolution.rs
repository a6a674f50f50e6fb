//! Graded free modules, homogeneous maps between them and minimal free
//! resolutions of ideals.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{groebner_basis, Reducer, Term, TermOrder, Vector};
use crate::hilbert::IntPoly;
use crate::ideal::Ideal;
use crate::linalg::{rank, Echelon, SparseRow};
use crate::monomial::{monomials_of_degree, Monomial, MonomialOrder, Ring};
use crate::poly::Polynomial;

/// `⊕ S(-a_i)`, stored as the generator degrees `a_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GradedFreeModule {
    pub degrees: Vec<i32>,
}

impl GradedFreeModule {
    pub fn new(mut degrees: Vec<i32>) -> Self {
        degrees.sort();
        GradedFreeModule { degrees }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `dim_k` of the degree-`e` part.
    pub fn dim(&self, e: i32) -> usize {
        self.degrees.iter().map(|&a| dim_s(e - a)).sum()
    }

    pub fn dual(&self) -> GradedFreeModule {
        GradedFreeModule { degrees: self.degrees.iter().map(|a| -a).collect() }
    }
}

impl fmt::Display for GradedFreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degrees.is_empty() {
            return write!(f, "0");
        }
        let mut counts: BTreeMap<i32, usize> = BTreeMap::new();
        for &a in &self.degrees {
            *counts.entry(a).or_default() += 1;
        }
        let parts: Vec<String> = counts
            .iter()
            .map(|(&a, &n)| {
                let base = if a == 0 { "S".to_string() } else { format!("S({})", -a) };
                if n == 1 {
                    base
                } else {
                    format!("{}^{}", base, n)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// `dim_k S_n` for `S = k[x,y,z,w]`.
pub fn dim_s(n: i32) -> usize {
    if n < 0 {
        0
    } else {
        let n = n as usize;
        (n + 3) * (n + 2) * (n + 1) / 6
    }
}

/// Monomials of `S_n` with their positions.
struct DegreeBasis {
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    fn new(n: i32) -> Self {
        let monos = if n < 0 { Vec::new() } else { monomials_of_degree(4, n as u32) };
        let index = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        DegreeBasis { monos, index }
    }
}

/// A homogeneous (degree-preserving) map `source -> target` of graded free
/// modules over `k[x,y,z,w]`. `entries[i][j]` maps basis vector `j` of the
/// source to its coordinate on basis vector `i` of the target, so a nonzero
/// entry is a form of degree `source[j] - target[i]`.
#[derive(Clone, Debug)]
pub struct HomMap<F: Field> {
    pub source: GradedFreeModule,
    pub target: GradedFreeModule,
    pub entries: Vec<Vec<Polynomial<F>>>,
}

impl<F: Field> HomMap<F> {
    /// Checks the degree bookkeeping. Source and target degrees are taken
    /// in the given order, not sorted.
    pub fn new(source: Vec<i32>, target: Vec<i32>, entries: Vec<Vec<Polynomial<F>>>) -> Result<Self> {
        if entries.len() != target.len() || entries.iter().any(|r| r.len() != source.len()) {
            return Err(AlgebraError::InconsistentTwists(format!(
                "matrix shape does not match {} x {}",
                target.len(),
                source.len()
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let want = source[j] - target[i];
                let ok = p.ring().is_geometric()
                    && p.is_standard_homogeneous()
                    && p.geometric_degree().map(|d| d as i32) == Some(want);
                if !ok {
                    return Err(AlgebraError::InconsistentTwists(format!(
                        "entry ({}, {}) = {} should be a form of degree {}",
                        i, j, p, want
                    )));
                }
            }
        }
        Ok(HomMap {
            source: GradedFreeModule { degrees: source },
            target: GradedFreeModule { degrees: target },
            entries,
        })
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i][j]
    }

    /// The transpose, a map `target^∨ -> source^∨`.
    pub fn dual(&self) -> HomMap<F> {
        let (r, c) = (self.target.rank(), self.source.rank());
        let entries = (0..c).map(|j| (0..r).map(|i| self.entries[i][j].clone()).collect()).collect();
        HomMap { source: self.target.dual(), target: self.source.dual(), entries }
    }

    /// Images of the degree-`e` monomial basis of the source, as sparse rows
    /// over the degree-`e` monomial basis of the target.
    pub fn degree_rows(&self, e: i32) -> Vec<SparseRow<F>> {
        let tbases: Vec<DegreeBasis> = self.target.degrees.iter().map(|&b| DegreeBasis::new(e - b)).collect();
        let mut offsets = Vec::with_capacity(tbases.len());
        let mut acc = 0;
        for b in &tbases {
            offsets.push(acc);
            acc += b.monos.len();
        }
        let mut rows = Vec::new();
        for (j, &a) in self.source.degrees.iter().enumerate() {
            for m in DegreeBasis::new(e - a).monos {
                let mut row: SparseRow<F> = Vec::new();
                for (i, tb) in tbases.iter().enumerate() {
                    for (tm, c) in self.entries[i][j].terms() {
                        let col = offsets[i] + tb.index[&tm.mul(&m)];
                        row.push((col, c.clone()));
                    }
                }
                row.sort_by_key(|(c, _)| *c);
                rows.push(row);
            }
        }
        rows
    }

    pub fn rank_in_degree(&self, e: i32) -> usize {
        rank(self.degree_rows(e))
    }

    /// `dim coker` in degree `e`.
    pub fn coker_dim(&self, e: i32) -> usize {
        self.target.dim(e) - self.rank_in_degree(e)
    }

    /// `dim ker` in degree `e`.
    pub fn ker_dim(&self, e: i32) -> usize {
        self.source.dim(e) - self.rank_in_degree(e)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &HomMap<F>) -> Result<HomMap<F>> {
        if self.source != inner.target {
            return Err(AlgebraError::InconsistentTwists("maps are not composable".into()));
        }
        let ring = Ring::geometric();
        let mut entries = vec![vec![Polynomial::zero(ring); inner.source.rank()]; self.target.rank()];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                for k in 0..self.source.rank() {
                    let p = &self.entries[i][k] * &inner.entries[k][j];
                    *e = &*e + &p;
                }
            }
        }
        Ok(HomMap { source: inner.source.clone(), target: self.target.clone(), entries })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|p| p.is_zero()))
    }

    /// Columns as module vectors in the target.
    pub(crate) fn columns(&self, ord: &TermOrder) -> Vec<Vector<F>> {
        (0..self.source.rank())
            .map(|j| {
                let mut terms = Vec::new();
                for i in 0..self.target.rank() {
                    for (m, c) in self.entries[i][j].terms() {
                        terms.push((Term::new(i as u32, *m), c.clone()));
                    }
                }
                Vector::from_terms(terms, ord)
            })
            .collect()
    }
}

/// Degree of a homogeneous vector.
fn vector_degree<F: Field>(v: &Vector<F>, shifts: &[i32]) -> i32 {
    let (t, _) = &v.terms[0];
    t.mono.total_degree() as i32 + shifts[t.comp as usize]
}

/// A minimal generating set of the submodule generated by `gens`, chosen
/// greedily by degree. Inputs must be homogeneous.
pub(crate) fn minimal_generators<F: Field>(gens: &[Vector<F>], shifts: &[i32]) -> Vec<Vector<F>> {
    let ord = TermOrder::module(MonomialOrder::Grevlex, shifts.to_vec());
    let mut cands: Vec<&Vector<F>> = gens.iter().filter(|v| !v.is_zero()).collect();
    cands.sort_by_key(|v| vector_degree(v, shifts));
    let mut kept: Vec<Vector<F>> = Vec::new();
    let mut k = 0;
    while k < cands.len() {
        let deg = vector_degree(cands[k], shifts);
        let gb = groebner_basis(&kept, &ord);
        let red = Reducer::new(&gb, &ord);
        let mut ech = Echelon::new();
        let mut cols: HashMap<Term, usize> = HashMap::new();
        while k < cands.len() && vector_degree(cands[k], shifts) == deg {
            let nf = red.reduce(cands[k]);
            let mut row: SparseRow<F> = nf
                .terms
                .iter()
                .map(|(t, c)| {
                    let n = cols.len();
                    (*cols.entry(*t).or_insert(n), c.clone())
                })
                .collect();
            row.sort_by_key(|(c, _)| *c);
            if ech.insert(row) {
                kept.push(cands[k].clone());
            }
            k += 1;
        }
    }
    kept
}

/// Generators of the syzygies of `cols` (vectors in a free module with
/// generator degrees `target`), as vectors over the source basis.
pub(crate) fn syzygies<F: Field>(cols: &[Vector<F>], target: &[i32], source: &[i32]) -> Vec<Vector<F>> {
    let r = target.len() as u32;
    let mut shifts = target.to_vec();
    shifts.extend_from_slice(source);
    let ord = TermOrder::module(MonomialOrder::Grevlex, shifts);
    let gens: Vec<Vector<F>> = cols
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let mut terms = c.terms.clone();
            terms.push((Term::new(r + j as u32, Monomial::one()), F::one()));
            Vector::from_terms(terms, &ord)
        })
        .collect();
    let sub_ord = TermOrder::module(MonomialOrder::Grevlex, source.to_vec());
    groebner_basis(&gens, &ord)
        .into_iter()
        .filter(|v| v.terms[0].0.comp >= r)
        .map(|v| {
            let terms = v.terms.into_iter().map(|(t, c)| (Term::new(t.comp - r, t.mono), c)).collect();
            Vector::from_terms(terms, &sub_ord)
        })
        .collect()
}

/// A minimal graded free resolution `0 <- I <- F_0 <- F_1 <- ...` of a
/// homogeneous ideal of `k[x,y,z,w]`. `maps[k]` is `F_{k+1} -> F_k`.
#[derive(Clone, Debug)]
pub struct FreeResolution<F: Field> {
    pub generators: Vec<Polynomial<F>>,
    pub modules: Vec<GradedFreeModule>,
    pub maps: Vec<HomMap<F>>,
}

/// Betti numbers `(i, a) -> rank of S(-a) in F_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BettiTable(pub BTreeMap<(usize, i32), usize>);

impl BettiTable {
    pub fn get(&self, i: usize, a: i32) -> usize {
        self.0.get(&(i, a)).copied().unwrap_or(0)
    }

    /// `[[i, a, rank], ...]` in index order.
    pub fn entries(&self) -> Vec<[i64; 3]> {
        self.0.iter().map(|(&(i, a), &n)| [i as i64, a as i64, n as i64]).collect()
    }

    pub fn from_entries(entries: &[(usize, i32, usize)]) -> Self {
        BettiTable(entries.iter().map(|&(i, a, n)| ((i, a), n)).collect())
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut by_index: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (&(i, a), &n) in &self.0 {
            by_index.entry(i).or_default().push(format!("{}x({})", n, a));
        }
        let lines: Vec<String> = by_index.iter().map(|(i, parts)| format!("F{}: {}", i, parts.join(", "))).collect();
        write!(f, "{}", lines.join("\n"))
    }
}

impl<F: Field> FreeResolution<F> {
    pub fn length(&self) -> usize {
        self.modules.len().saturating_sub(1)
    }

    pub fn module(&self, i: usize) -> GradedFreeModule {
        self.modules.get(i).cloned().unwrap_or_default()
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut t = BTreeMap::new();
        for (i, m) in self.modules.iter().enumerate() {
            for &a in &m.degrees {
                *t.entry((i, a)).or_insert(0) += 1;
            }
        }
        BettiTable(t)
    }

    /// `F_0 -> S`, sending basis vectors to the generators.
    pub fn augmentation(&self) -> HomMap<F> {
        HomMap {
            source: self.modules[0].clone(),
            target: GradedFreeModule { degrees: vec![0] },
            entries: vec![self.generators.clone()],
        }
    }

    /// `1 - Σ t^a (F_0) + Σ t^a (F_1) - ...`, which equals the Hilbert
    /// series numerator of S/I.
    pub fn euler_numerator(&self) -> IntPoly {
        let top = self.modules.iter().flat_map(|m| m.degrees.iter()).copied().max().unwrap_or(0).max(0);
        let mut out = vec![0i64; top as usize + 1];
        out[0] = 1;
        for (i, m) in self.modules.iter().enumerate() {
            let sign = if i % 2 == 0 { -1 } else { 1 };
            for &a in &m.degrees {
                out[a as usize] += sign;
            }
        }
        while out.len() > 1 && *out.last().unwrap() == 0 {
            out.pop();
        }
        out
    }

    /// Every consecutive composite vanishes, including the augmentation.
    pub fn is_complex(&self) -> bool {
        let mut prev = self.augmentation();
        for d in &self.maps {
            match prev.compose(d) {
                Ok(c) if c.is_zero() => {}
                _ => return false,
            }
            prev = d.clone();
        }
        true
    }

    /// `dim` of the homology at `F_i` in degree `e`: the kernel of the
    /// outgoing map modulo the image of the incoming one.
    pub fn homology_dim(&self, i: usize, e: i32) -> usize {
        let ker = if i == 0 { self.augmentation().ker_dim(e) } else { self.maps[i - 1].ker_dim(e) };
        let im = self.maps.get(i).map(|d| d.rank_in_degree(e)).unwrap_or(0);
        ker - im
    }

    pub fn is_exact_on(&self, window: std::ops::RangeInclusive<i32>) -> bool {
        window.into_iter().all(|e| (0..self.modules.len()).all(|i| self.homology_dim(i, e) == 0))
    }

    /// No entry of a differential is a nonzero constant.
    pub fn is_minimal(&self) -> bool {
        self.maps
            .iter()
            .all(|d| d.entries.iter().all(|r| r.iter().all(|p| p.is_zero() || p.geometric_degree() != Some(0))))
    }
}

/// The minimal graded free resolution of a homogeneous ideal of
/// `k[x,y,z,w]`, by iterated syzygies of minimal generating sets.
pub fn free_resolution<F: Field>(ideal: &Ideal<F>) -> Result<FreeResolution<F>> {
    if !ideal.ring().is_geometric() || !ideal.gens().iter().all(|g| g.is_standard_homogeneous()) {
        return Err(AlgebraError::NotHomogeneous(ideal.to_string()));
    }
    let ring = ideal.ring();
    let ord0 = TermOrder::module(MonomialOrder::Grevlex, vec![0]);
    let vecs: Vec<Vector<F>> = ideal.gens().iter().map(|g| Vector::from_poly(g, 0, &ord0)).collect();
    let mut cols = minimal_generators(&vecs, &[0]);
    let generators: Vec<Polynomial<F>> = cols.iter().map(|v| v.component(0, ring)).collect();
    let mut source: Vec<i32> = cols.iter().map(|v| vector_degree(v, &[0])).collect();
    let mut target = vec![0];
    let mut modules = vec![GradedFreeModule { degrees: source.clone() }];
    let mut maps = Vec::new();
    // a module over four variables has projective dimension at most four
    for _ in 0..5 {
        if cols.is_empty() {
            break;
        }
        let syz = syzygies(&cols, &target, &source);
        let min = minimal_generators(&syz, &source);
        if min.is_empty() {
            break;
        }
        let degs: Vec<i32> = min.iter().map(|v| vector_degree(v, &source)).collect();
        let entries: Vec<Vec<Polynomial<F>>> =
            (0..source.len()).map(|i| min.iter().map(|v| v.component(i as u32, ring)).collect()).collect();
        maps.push(HomMap {
            source: GradedFreeModule { degrees: degs.clone() },
            target: GradedFreeModule { degrees: source.clone() },
            entries,
        });
        modules.push(GradedFreeModule { degrees: degs.clone() });
        target = source;
        source = degs;
        cols = min;
    }
    Ok(FreeResolution { generators, modules, maps })
}

/// Minimal homogeneous generators of an ideal.
pub fn minimal_ideal_generators<F: Field>(ideal: &Ideal<F>) -> Vec<Polynomial<F>> {
    let ord0 = TermOrder::module(MonomialOrder::Grevlex, vec![0]);
    let vecs: Vec<Vector<F>> = ideal.gens().iter().map(|g| Vector::from_poly(g, 0, &ord0)).collect();
    minimal_generators(&vecs, &[0]).iter().map(|v| v.component(0, ideal.ring())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::hilbert_numerator;
    use crate::QQ;

    fn ideal(gens: &[&str]) -> Ideal<QQ> {
        Ideal::parse(Ring::geometric(), gens).unwrap()
    }

    fn numerator(i: &Ideal<QQ>) -> IntPoly {
        hilbert_numerator(&i.grevlex().leading_monomials())
    }

    #[test]
    fn koszul_complex_of_two_variables() {
        let res = free_resolution(&ideal(&["x", "y"])).unwrap();
        assert_eq!(res.betti_table(), BettiTable::from_entries(&[(0, 1, 2), (1, 2, 1)]));
        assert!(res.is_complex() && res.is_minimal());
        assert!(res.is_exact_on(0..=4));
    }

    #[test]
    fn union_of_double_line_and_line() {
        // genus -4: the quartic binomial gives the S(-4) summand
        let j = ideal(&["x^2*z", "x^2*w", "x*y*z", "x*y*w", "y^2*z", "y^2*w", "x*w^3 - y*z^3"]);
        let res = free_resolution(&j).unwrap();
        let expected = BettiTable::from_entries(&[(0, 3, 6), (0, 4, 1), (1, 4, 7), (1, 5, 2), (2, 5, 2), (2, 6, 1)]);
        assert_eq!(res.betti_table(), expected);
        assert!(res.is_complex());
        assert!(res.is_exact_on(0..=7));
        assert_eq!(res.euler_numerator(), numerator(&j));

        // genus -3: the binomial is a cubic and joins the cubic block
        let j = ideal(&["x^2*z", "x^2*w", "x*y*z", "x*y*w", "y^2*z", "y^2*w", "x*w^2 - y*z^2"]);
        let res = free_resolution(&j).unwrap();
        assert_eq!(res.betti_table(), BettiTable::from_entries(&[(0, 3, 7), (1, 4, 9), (2, 5, 3)]));
        assert_eq!(res.euler_numerator(), numerator(&j));
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let i = ideal(&["x", "y", "x + y", "x*z"]);
        let res = free_resolution(&i).unwrap();
        assert_eq!(res.modules[0].degrees, vec![1, 1]);
    }

    #[test]
    fn twisted_cubic_betti_table() {
        let res = free_resolution(&ideal(&["x*z - y^2", "y*w - z^2", "x*w - y*z"])).unwrap();
        assert_eq!(res.betti_table(), BettiTable::from_entries(&[(0, 2, 3), (1, 3, 2)]));
    }

    #[test]
    fn unsaturated_ideal_has_length_three() {
        let i = ideal(&["x^2", "x*y", "x*z", "x*w"]);
        let res = free_resolution(&i).unwrap();
        assert_eq!(res.length(), 3);
        assert!(res.is_exact_on(0..=5));
        assert_eq!(res.euler_numerator(), numerator(&i));
    }

    #[test]
    fn inconsistent_twists_are_rejected() {
        let r = Ring::geometric();
        let x: Polynomial<QQ> = Polynomial::parse("x", r).unwrap();
        assert!(HomMap::new(vec![1], vec![0], vec![vec![x.clone()]]).is_ok());
        assert!(matches!(HomMap::new(vec![2], vec![0], vec![vec![x]]), Err(AlgebraError::InconsistentTwists(_))));
    }

    #[test]
    fn coker_of_multiplication_by_x() {
        let r = Ring::geometric();
        let x: Polynomial<QQ> = Polynomial::parse("x", r).unwrap();
        let m = HomMap::new(vec![1], vec![0], vec![vec![x]]).unwrap();
        let dims: Vec<usize> = (0..4).map(|e| m.coker_dim(e)).collect();
        assert_eq!(dims, vec![1, 3, 6, 10]);
        let zero: HomMap<QQ> = HomMap::new(vec![0], vec![0], vec![vec![Polynomial::zero(r)]]).unwrap();
        assert_eq!(zero.coker_dim(2), 10);
    }
}
