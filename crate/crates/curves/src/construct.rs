//! Double and triple structures on the line `Y = V(x, y)`, and unions.
//!
//! All data `f, g, p, q, α, β, γ` live in `k[z,w]`, viewed inside
//! `S = k[x,y,z,w]`.

use cm3_core::hilbert::hilbert_series;
use cm3_core::linalg::solve_dense;
use cm3_core::resolution::HomMap;
use cm3_core::{Field, Ideal, Monomial, Polynomial, Ring, Var};

use crate::error::{CurveError, Result};
use crate::record::{curve_invariants, CurveRecord, Provenance};

pub(crate) fn ring() -> Ring {
    Ring::geometric()
}

pub(crate) fn var<F: Field>(v: Var) -> Polynomial<F> {
    Polynomial::var(ring(), v)
}

/// `z^i w^j`.
pub fn zw<F: Field>(i: u16, j: u16) -> Polynomial<F> {
    Polynomial::term(ring(), Monomial::from_exps(&[0, 0, i, j]), F::one())
}

/// Monomials `z^i w^(d-i)`, highest power of z first.
fn binary_monomials(d: i64) -> Vec<Monomial> {
    if d < 0 {
        return Vec::new();
    }
    (0..=d as u16).rev().map(|i| Monomial::from_exps(&[0, 0, i, d as u16 - i])).collect()
}

/// Checks that `p` is a form of degree `d` in `k[z,w]` (zero allowed).
fn check_binary<F: Field>(name: &str, p: &Polynomial<F>, d: i64) -> Result<()> {
    if p.ring() != ring() {
        return Err(CurveError::Spec(format!("{} must live in k[x,y,z,w]", name)));
    }
    if p.uses_var(Var::X) || p.uses_var(Var::Y) {
        return Err(CurveError::Spec(format!("{} = {} must be a form in z, w", name, p)));
    }
    if p.is_zero() {
        return Ok(());
    }
    let (homog, deg) = p.is_homogeneous();
    if !homog || deg != Some(d as u32) {
        return Err(CurveError::Spec(format!("{} = {} must be homogeneous of degree {}", name, p, d)));
    }
    Ok(())
}

/// True when the forms have no common zero on `Y`: `S/(x, y, forms)` has
/// finite length.
pub fn no_common_zero_on_line<F: Field>(forms: &[&Polynomial<F>]) -> bool {
    let mut gens = vec![var::<F>(Var::X), var(Var::Y)];
    gens.extend(forms.iter().map(|p| (*p).clone()));
    let ideal = Ideal::new_unchecked(ring(), gens);
    if ideal.is_unit() {
        return true;
    }
    match hilbert_series(&ideal) {
        Ok(hs) => hs.dim == 0,
        Err(_) => false,
    }
}

fn require_coprime<F: Field>(names: &str, forms: &[&Polynomial<F>]) -> Result<()> {
    if no_common_zero_on_line(forms) {
        Ok(())
    } else {
        let shown: Vec<String> = forms.iter().map(|p| p.to_string()).collect();
        Err(CurveError::CommonZero(format!("{} = ({})", names, shown.join(", "))))
    }
}

/// A double structure on `Y` of type `a`: `I_Z = (x², xy, y², xg - yf)`.
#[derive(Clone, Debug)]
pub struct DoubleLineSpec<F: Field> {
    pub a: i64,
    pub f: Polynomial<F>,
    pub g: Polynomial<F>,
}

impl<F: Field> DoubleLineSpec<F> {
    pub fn new(a: i64, f: Polynomial<F>, g: Polynomial<F>) -> Result<Self> {
        if a < -1 {
            return Err(CurveError::Spec(format!("a = {} must be at least -1", a)));
        }
        check_binary("f", &f, a + 1)?;
        check_binary("g", &g, a + 1)?;
        if f.is_zero() && g.is_zero() {
            return Err(CurveError::Spec("f and g are both zero".into()));
        }
        require_coprime("f, g", &[&f, &g])?;
        Ok(DoubleLineSpec { a, f, g })
    }

    /// `z^(a+1), w^(a+1)`.
    pub fn standard(a: i64) -> Result<Self> {
        let e = (a + 1) as u16;
        DoubleLineSpec::new(a, zw(e, 0), zw(0, e))
    }

    /// `xg - yf`.
    pub fn binomial(&self) -> Polynomial<F> {
        &(&var(Var::X) * &self.g) - &(&var(Var::Y) * &self.f)
    }

    pub fn ideal(&self) -> Ideal<F> {
        let (x, y) = (var::<F>(Var::X), var::<F>(Var::Y));
        Ideal::new_unchecked(ring(), vec![&x * &x, &x * &y, &y * &y, self.binomial()])
    }
}

pub fn double_line<F: Field>(spec: &DoubleLineSpec<F>) -> Result<CurveRecord<F>> {
    let prov = Provenance::new("double-line").with("a", spec.a).with("f", &spec.f).with("g", &spec.g);
    curve_invariants(&spec.ideal(), prov)
}

/// A triple line of type `(-1, b)` with planar base:
/// `I_W = (x², xy, y³, xq - y²p)`.
#[derive(Clone, Debug)]
pub struct TripleLineSpecPlanarBase<F: Field> {
    pub b: i64,
    pub p: Polynomial<F>,
    pub q: Polynomial<F>,
}

impl<F: Field> TripleLineSpecPlanarBase<F> {
    pub fn new(b: i64, p: Polynomial<F>, q: Polynomial<F>) -> Result<Self> {
        if b < 0 {
            return Err(CurveError::Spec(format!("b = {} must be nonnegative", b)));
        }
        if b == 0 && !p.is_zero() {
            return Err(CurveError::Spec("p must be zero when b = 0".into()));
        }
        check_binary("p", &p, b - 1)?;
        check_binary("q", &q, b)?;
        require_coprime("p, q", &[&p, &q])?;
        Ok(TripleLineSpecPlanarBase { b, p, q })
    }

    /// `p = z^(b-1)`, `q = w^b` (and `p = 0, q = 1` for `b = 0`).
    pub fn standard(b: i64) -> Result<Self> {
        let p = if b == 0 { Polynomial::zero(ring()) } else { zw((b - 1) as u16, 0) };
        TripleLineSpecPlanarBase::new(b, p, zw(0, b as u16))
    }

    /// The first infinitesimal neighbourhood `Y^(2)`: `b = 1, p = 1, q = 0`.
    pub fn neighbourhood() -> Self {
        TripleLineSpecPlanarBase { b: 1, p: Polynomial::one(ring()), q: Polynomial::zero(ring()) }
    }

    pub fn ideal(&self) -> Ideal<F> {
        let (x, y) = (var::<F>(Var::X), var::<F>(Var::Y));
        let last = &(&x * &self.q) - &(&(&y * &y) * &self.p);
        Ideal::new_unchecked(ring(), vec![&x * &x, &x * &y, y.pow(3), last])
    }
}

pub fn triple_line_planar_base<F: Field>(spec: &TripleLineSpecPlanarBase<F>) -> Result<CurveRecord<F>> {
    let prov = Provenance::new("triple-line-planar").with("b", spec.b).with("p", &spec.p).with("q", &spec.q);
    curve_invariants(&spec.ideal(), prov)
}

/// Coefficients `(α, β, γ)` of degree `deg q - 2 deg f` with
/// `q = αf² + βfg + γg²` in `k[z,w]`.
///
/// Unknowns are ordered α, β, γ, each by descending power of z; the
/// solver prefers the leftmost pivots and sets free unknowns to zero.
pub fn solve_quadratic_combination<F: Field>(
    q: &Polynomial<F>,
    f: &Polynomial<F>,
    g: &Polynomial<F>,
) -> Result<[Polynomial<F>; 3]> {
    let df = f.geometric_degree().ok_or_else(|| CurveError::Spec("f is zero".into()))? as i64;
    check_binary("g", g, df)?;
    check_binary("f", f, df)?;
    let dq = if q.is_zero() { 2 * df } else { q.geometric_degree().unwrap_or(0) as i64 };
    check_binary("q", q, dq)?;
    let d = dq - 2 * df;
    if d < 0 {
        return Err(CurveError::Spec(format!("deg q = {} is below 2 deg f = {}", dq, 2 * df)));
    }
    let unknowns = binary_monomials(d);
    let rows = binary_monomials(dq);
    let products = [f * f, f * g, g * g];
    // column (k, m) holds the coefficients of m * products[k]
    let mut columns = Vec::new();
    for prod in &products {
        for m in &unknowns {
            let c = prod.mul_monomial(m, &F::one());
            columns.push(c.coefficients_on(&rows));
        }
    }
    let a: Vec<Vec<F>> = (0..rows.len()).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    let rhs = q.coefficients_on(&rows);
    let sol = solve_dense(&a, &rhs).ok_or_else(|| CurveError::Congruence(format!("{} is not in (f², fg, g²)", q)))?;
    let n = unknowns.len();
    let coeff = |k: usize| {
        Polynomial::from_terms(ring(), unknowns.iter().enumerate().map(|(i, m)| (*m, sol[k * n + i].clone())))
    };
    Ok([coeff(0), coeff(1), coeff(2)])
}

/// A quasiprimitive triple line of type `(a, b)`.
#[derive(Clone, Debug)]
pub struct TripleLineSpecQuasiprimitive<F: Field> {
    pub a: i64,
    pub b: i64,
    pub f: Polynomial<F>,
    pub g: Polynomial<F>,
    pub p: Polynomial<F>,
    pub q: Polynomial<F>,
    pub alpha: Polynomial<F>,
    pub beta: Polynomial<F>,
    pub gamma: Polynomial<F>,
}

impl<F: Field> TripleLineSpecQuasiprimitive<F> {
    /// Validates the data; solves for `(α, β, γ)` when not given.
    pub fn new(
        a: i64,
        b: i64,
        f: Polynomial<F>,
        g: Polynomial<F>,
        p: Polynomial<F>,
        q: Polynomial<F>,
        coefficients: Option<[Polynomial<F>; 3]>,
    ) -> Result<Self> {
        if a < 0 || b < 0 {
            return Err(CurveError::Spec(format!("type ({}, {}) needs a, b >= 0", a, b)));
        }
        check_binary("f", &f, a + 1)?;
        check_binary("g", &g, a + 1)?;
        check_binary("p", &p, b)?;
        check_binary("q", &q, 3 * a + b + 2)?;
        require_coprime("f, g", &[&f, &g])?;
        require_coprime("p, q", &[&p, &q])?;
        let [alpha, beta, gamma] = match coefficients {
            Some(c) => c,
            None => solve_quadratic_combination(&q, &f, &g)?,
        };
        for (name, c) in [("α", &alpha), ("β", &beta), ("γ", &gamma)] {
            check_binary(name, c, a + b)?;
        }
        let combo = &(&(&alpha * &(&f * &f)) + &(&beta * &(&f * &g))) + &(&gamma * &(&g * &g));
        if combo != q {
            return Err(CurveError::Congruence(format!("αf² + βfg + γg² = {} but q = {}", combo, q)));
        }
        Ok(TripleLineSpecQuasiprimitive { a, b, f, g, p, q, alpha, beta, gamma })
    }

    /// The second CM filtrant, a double line of type `a`.
    pub fn filtrant(&self) -> DoubleLineSpec<F> {
        DoubleLineSpec { a: self.a, f: self.f.clone(), g: self.g.clone() }
    }

    pub fn genus(&self) -> i64 {
        -2 - 3 * self.a - self.b
    }

    pub fn ideal(&self) -> Ideal<F> {
        let (x, y) = (var::<F>(Var::X), var::<F>(Var::Y));
        let h = self.filtrant().binomial();
        let last = &(&self.p * &h)
            - &(&(&(&self.alpha * &(&x * &x)) + &(&self.beta * &(&x * &y))) + &(&self.gamma * &(&y * &y)));
        let gens = vec![x.pow(3), &x.pow(2) * &y, &x * &y.pow(2), y.pow(3), &x * &h, &y * &h, last];
        Ideal::new_unchecked(ring(), gens)
    }

    /// The presentation `ψ: S(2a+b-1)² ⊕ S(a-1)² ⊕ S(-1)² -> S(2a+b) ⊕ S(a)`
    /// whose cokernel is the Rao module when `b ≥ 1`.
    pub fn psi(&self) -> Result<HomMap<F>> {
        let (a, b) = (self.a as i32, self.b as i32);
        let (x, y) = (var::<F>(Var::X), var::<F>(Var::Y));
        let zero = Polynomial::zero(ring());
        let (f, g, p) = (&self.f, &self.g, &self.p);
        let row0 =
            vec![x.clone(), y.clone(), f * p, g * p, -(g * &self.gamma), -(&(f * &self.alpha) + &(g * &self.beta))];
        let row1 = vec![zero.clone(), zero, x, y, f.clone(), g.clone()];
        let source = vec![-2 * a - b + 1, -2 * a - b + 1, -a + 1, -a + 1, 1, 1];
        let target = vec![-2 * a - b, -a];
        Ok(HomMap::new(source, target, vec![row0, row1])?)
    }
}

pub fn triple_line_quasiprimitive<F: Field>(spec: &TripleLineSpecQuasiprimitive<F>) -> Result<CurveRecord<F>> {
    let prov = Provenance::new("triple-line-quasiprimitive")
        .with("a", spec.a)
        .with("b", spec.b)
        .with("f", &spec.f)
        .with("g", &spec.g)
        .with("p", &spec.p)
        .with("q", &spec.q)
        .with("alpha", &spec.alpha)
        .with("beta", &spec.beta)
        .with("gamma", &spec.gamma);
    curve_invariants(&spec.ideal(), prov)
}

/// `h²(I_W(l)) = h¹(O_Y(l)) + h¹(O_Y(a+l)) + h¹(O_Y(2a+b+l))` for a
/// quasiprimitive triple line of type `(a, b)`.
pub fn quasiprimitive_h2(a: i64, b: i64, l: i64) -> i64 {
    let h1_line = |m: i64| (-m - 1).max(0);
    h1_line(l) + h1_line(a + l) + h1_line(2 * a + b + l)
}

/// Length of `C₁ ∩ C₂`: the eventual value of the Hilbert function of
/// `S/(I₁ + I₂)`. `None` when the curves share a component.
pub fn intersection_length<F: Field>(i1: &Ideal<F>, i2: &Ideal<F>) -> Result<Option<i64>> {
    let hs = hilbert_series(&i1.sum(i2))?;
    Ok(match hs.dim {
        0 => Some(0),
        1 => Some(hs.h.iter().sum()),
        _ => None,
    })
}

/// The union of two curves, with the meet length recorded.
pub fn union_curve<F: Field>(i1: &Ideal<F>, i2: &Ideal<F>) -> Result<CurveRecord<F>> {
    let meet = intersection_length(i1, i2)?;
    let prov = Provenance::new("union")
        .with("first", i1)
        .with("second", i2)
        .with("meet_length", meet.map_or("shared component".to_string(), |l| l.to_string()));
    curve_invariants(&i1.intersect(i2)?, prov)
}

/// True when `Z` is the second CM filtrant of `W`: `I_W : I_Y = I_Z`.
///
/// The colon is unmixed and agrees with `I_W + I_Y²` at the generic point
/// of `Y`, so it is the sum with its embedded points removed.
pub fn verify_cm_filtrant<F: Field>(w: &CurveRecord<F>, z: &Ideal<F>) -> Result<bool> {
    let line = Ideal::of_vars(ring(), &[Var::X, Var::Y]);
    Ok(w.ideal.quotient_ideal(&line)?.equals(z))
}
