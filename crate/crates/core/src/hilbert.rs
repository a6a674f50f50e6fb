//! Hilbert functions, series and polynomials of graded quotients S/I.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::monomial::{monomials_of_degree, Monomial};

/// Integer polynomial in t, lowest coefficient first.
pub type IntPoly = Vec<i64>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

fn sub_shifted(a: &IntPoly, b: &IntPoly, shift: usize) -> IntPoly {
    let mut out = a.clone();
    out.resize(out.len().max(b.len() + shift), 0);
    for (i, c) in b.iter().enumerate() {
        out[i + shift] -= c;
    }
    trim(out)
}

pub fn mul_poly(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.total_degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator `N(t)` of the Hilbert series `N(t)/(1-t)^n` of the quotient by
/// a monomial ideal (standard grading), via
/// `N(M + (m)) = N(M) - t^deg(m) N(M : m)`.
pub fn hilbert_numerator(gens: &[Monomial]) -> IntPoly {
    numerator(minimalize(gens.to_vec()))
}

fn numerator(gens: Vec<Monomial>) -> IntPoly {
    if gens.is_empty() {
        return vec![1];
    }
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        return gens.iter().fold(vec![1], |acc, m| {
            let mut f = vec![0; m.total_degree() as usize + 1];
            f[0] = 1;
            f[m.total_degree() as usize] -= 1;
            mul_poly(&acc, &f)
        });
    }
    let mut rest = gens;
    let m = rest.pop().expect("nonempty");
    let colon: Vec<Monomial> = rest.iter().map(|g| g.gcd(&m).quotient_of(g).expect("gcd divides")).collect();
    let a = numerator(rest);
    let b = numerator(minimalize(colon));
    sub_shifted(&a, &b, m.total_degree() as usize)
}

/// The reduced Hilbert series `h(t)/(1-t)^dim` of S/I.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    pub h: IntPoly,
    /// Krull dimension of S/I.
    pub dim: usize,
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

impl HilbertSeries {
    pub fn from_numerator(n: &IntPoly, nvars: usize) -> Self {
        let mut h = n.clone();
        let mut dim = nvars;
        // divide by (1 - t) while h(1) = 0
        while dim > 0 && h.iter().sum::<i64>() == 0 && h.iter().any(|&c| c != 0) {
            let mut q = vec![0; h.len() - 1];
            let mut acc = 0;
            for i in 0..q.len() {
                acc += h[i];
                q[i] = acc;
            }
            h = trim(q);
            dim -= 1;
        }
        HilbertSeries { h, dim }
    }

    /// Coefficient of `t^n`.
    pub fn value(&self, n: i64) -> i64 {
        if self.dim == 0 {
            return if n >= 0 { self.h.get(n as usize).copied().unwrap_or(0) } else { 0 };
        }
        let d = self.dim as i64;
        self.h.iter().enumerate().map(|(i, c)| c * binom(n - i as i64 + d - 1, d - 1)).sum()
    }
}

fn check_geometric<F: Field>(i: &Ideal<F>) -> Result<()> {
    if !i.ring().is_geometric() {
        return Err(AlgebraError::Invalid(format!("Hilbert series need k[x,y,z,w], got {}", i.ring())));
    }
    if !i.is_homogeneous() {
        return Err(AlgebraError::NotHomogeneous(i.to_string()));
    }
    Ok(())
}

pub fn hilbert_series<F: Field>(i: &Ideal<F>) -> Result<HilbertSeries> {
    check_geometric(i)?;
    let leads = i.grevlex().leading_monomials();
    Ok(HilbertSeries::from_numerator(&hilbert_numerator(&leads), 4))
}

/// `dim (S/I)_n`, counting standard monomials of the grevlex basis.
pub fn hilbert_function<F: Field>(i: &Ideal<F>, n: i64) -> Result<i64> {
    check_geometric(i)?;
    if n < 0 {
        return Ok(0);
    }
    let leads = i.grevlex().leading_monomials();
    Ok(monomials_of_degree(4, n as u32).iter().filter(|m| !leads.iter().any(|l| l.divides(m))).count() as i64)
}

/// Degree, arithmetic genus and the index from which the Hilbert function
/// agrees with `d*n + 1 - g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CurveHilbert {
    pub degree: i64,
    pub genus: i64,
    pub stable_from: i64,
}

impl CurveHilbert {
    pub fn polynomial(&self, n: i64) -> i64 {
        self.degree * n + 1 - self.genus
    }
}

pub fn hilbert_polynomial<F: Field>(i: &Ideal<F>) -> Result<CurveHilbert> {
    let hs = hilbert_series(i)?;
    if hs.dim != 2 {
        return Err(AlgebraError::NotACurve(format!("Hilbert polynomial has degree {}", hs.dim as i64 - 1)));
    }
    let degree: i64 = hs.h.iter().sum();
    let genus = 1 - hs.h.iter().enumerate().map(|(k, c)| c * (1 - k as i64)).sum::<i64>();
    let ch = CurveHilbert { degree, genus, stable_from: 0 };
    // scan down from the bound deg h - 1 for the first disagreement
    let mut from = hs.h.len() as i64 - 1;
    while from > 0 && hs.value(from - 1) == ch.polynomial(from - 1) {
        from -= 1;
    }
    Ok(CurveHilbert { stable_from: from, ..ch })
}

/// True when the forms generating `ci` (of degrees `a`, `b`) form a regular
/// sequence: the Hilbert series is exactly `(1-t^a)(1-t^b)/(1-t)^4`.
pub fn is_complete_intersection_curve<F: Field>(ci: &Ideal<F>, a: u32, b: u32) -> bool {
    if a == 0 || b == 0 {
        return false;
    }
    let leads = ci.grevlex().leading_monomials();
    let mut fa = vec![0; a as usize + 1];
    fa[0] = 1;
    fa[a as usize] = -1;
    let mut fb = vec![0; b as usize + 1];
    fb[0] = 1;
    fb[b as usize] = -1;
    hilbert_numerator(&leads) == mul_poly(&fa, &fb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Ring;
    use crate::QQ;

    fn ideal(gens: &[&str]) -> Ideal<QQ> {
        Ideal::parse(Ring::geometric(), gens).unwrap()
    }

    #[test]
    fn hilbert_function_examples() {
        assert_eq!(hilbert_function(&ideal(&["x", "y"]), 3).unwrap(), 4);
        let tc = ideal(&["x*z - y^2", "y*w - z^2", "x*w - y*z"]);
        assert_eq!(hilbert_function(&tc, 2).unwrap(), 7);
        assert_eq!(hilbert_function(&ideal(&["x^2", "x*y", "y^2", "x*w - y*z"]), 1).unwrap(), 4);
    }

    #[test]
    fn series_matches_counting() {
        let i = ideal(&["x^2", "x*y", "y^3", "x*w^2 - y^2*z"]);
        let hs = hilbert_series(&i).unwrap();
        for n in 0..12 {
            assert_eq!(hs.value(n), hilbert_function(&i, n).unwrap());
        }
    }

    #[test]
    fn curve_polynomials() {
        let line = hilbert_polynomial(&ideal(&["x", "y"])).unwrap();
        assert_eq!((line.degree, line.genus), (1, 0));
        let z = hilbert_polynomial(&ideal(&["x^2", "x*y", "y^2", "x*w^2 - y*z^2"])).unwrap();
        assert_eq!((z.degree, z.genus), (2, -2));
        let w = hilbert_polynomial(&ideal(&["x^2", "x*y", "y^3", "x*w^2 - y^2*z"])).unwrap();
        assert_eq!((w.degree, w.genus), (3, -1));
        let tc = hilbert_polynomial(&ideal(&["x*z - y^2", "y*w - z^2", "x*w - y*z"])).unwrap();
        assert_eq!((tc.degree, tc.genus), (3, 0));
    }

    #[test]
    fn non_curves_are_rejected() {
        assert!(matches!(hilbert_polynomial(&ideal(&["x"])), Err(AlgebraError::NotACurve(_))));
        assert!(matches!(hilbert_polynomial(&ideal(&["x", "y", "z"])), Err(AlgebraError::NotACurve(_))));
        assert!(matches!(hilbert_polynomial(&ideal(&["x", "y", "z", "w"])), Err(AlgebraError::NotACurve(_))));
    }

    #[test]
    fn stabilization_index() {
        // skew lines: HF(0) = 1 but the polynomial gives 2
        let skew = hilbert_polynomial(&ideal(&["x*z", "x*w", "y*z", "y*w"])).unwrap();
        assert_eq!((skew.degree, skew.genus, skew.stable_from), (2, -1, 1));
    }

    #[test]
    fn numerator_of_monomial_ideals() {
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        assert_eq!(hilbert_numerator(&[x, y]), vec![1, -2, 1]);
        assert_eq!(hilbert_numerator(&[x.mul(&x), x.mul(&y)]), vec![1, 0, -2, 1]);
    }
}
