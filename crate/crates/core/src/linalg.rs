//! Exact sparse linear algebra for degreewise computations.

use std::collections::HashMap;

use crate::field::Field;

/// A sparse row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow<F> = Vec<(usize, F)>;

/// Incremental row-echelon form. Every stored row is monic with a distinct
/// pivot column (its first entry).
#[derive(Clone, Debug, Default)]
pub struct Echelon<F> {
    rows: Vec<SparseRow<F>>,
    pivot_of: HashMap<usize, usize>,
}

fn axpy<F: Field>(v: &[(usize, F)], c: &F, row: &[(usize, F)]) -> SparseRow<F> {
    // v - c * row
    let mut out = Vec::with_capacity(v.len() + row.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() && j < row.len() {
        if v[i].0 < row[j].0 {
            out.push(v[i].clone());
            i += 1;
        } else if v[i].0 > row[j].0 {
            out.push((row[j].0, -c.mul_ref(&row[j].1)));
            j += 1;
        } else {
            let x = v[i].1.sub_ref(&c.mul_ref(&row[j].1));
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&v[i..]);
    for (col, x) in &row[j..] {
        out.push((*col, -c.mul_ref(x)));
    }
    out
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Echelon { rows: Vec::new(), pivot_of: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates pivot columns until the first entry is a non-pivot column.
    pub fn reduce_head(&self, mut v: SparseRow<F>) -> SparseRow<F> {
        let mut k = 0;
        while k < v.len() {
            let col = v[k].0;
            match self.pivot_of.get(&col) {
                Some(&r) => {
                    let c = v[k].1.clone();
                    let head: SparseRow<F> = v[..k].to_vec();
                    let tail = axpy(&v[k..], &c, &self.rows[r]);
                    v = head;
                    v.extend(tail);
                }
                None => return v,
            }
            let _ = &mut k;
        }
        v
    }

    /// Eliminates every pivot column.
    pub fn reduce_full(&self, mut v: SparseRow<F>) -> SparseRow<F> {
        let mut k = 0;
        while k < v.len() {
            let col = v[k].0;
            if let Some(&r) = self.pivot_of.get(&col) {
                let c = v[k].1.clone();
                let head: SparseRow<F> = v[..k].to_vec();
                let tail = axpy(&v[k..], &c, &self.rows[r]);
                v = head;
                v.extend(tail);
            } else {
                k += 1;
            }
        }
        v
    }

    /// Adds `v` to the row space; true when it was independent.
    pub fn insert(&mut self, v: SparseRow<F>) -> bool {
        let v = self.reduce_head(v);
        if v.is_empty() {
            return false;
        }
        let inv = v[0].1.inv();
        let v: SparseRow<F> = v.into_iter().map(|(c, x)| (c, x.mul_ref(&inv))).collect();
        self.pivot_of.insert(v[0].0, self.rows.len());
        self.rows.push(v);
        true
    }

    pub fn contains(&self, v: SparseRow<F>) -> bool {
        self.reduce_head(v).is_empty()
    }
}

/// Rank of a list of sparse rows.
pub fn rank<F: Field>(rows: impl IntoIterator<Item = SparseRow<F>>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Solves `a * x = b` for dense `a` (rows = equations). Pivots are taken at
/// the leftmost available columns and free unknowns are set to zero, so the
/// answer is deterministic. `None` if inconsistent.
pub fn solve_dense<F: Field>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let nrows = a.len();
    let ncols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b.iter())
        .map(|(r, x)| {
            let mut row = r.clone();
            row.push(x.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            *x = x.mul_ref(&inv);
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                #[allow(clippy::needless_range_loop)]
                for k in 0..=ncols {
                    let t = f.mul_ref(&m[r][k]);
                    m[i][k] = m[i][k].sub_ref(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![F::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QQ;

    fn q(n: i64) -> QQ {
        QQ::from_i64(n)
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![vec![(0, q(1)), (1, q(2))], vec![(0, q(2)), (1, q(4))], vec![(1, q(1)), (3, q(1))]];
        assert_eq!(rank(rows), 2);
    }

    #[test]
    fn solve_prefers_leftmost_pivots() {
        // x0 + x1 = 1 has the solution (1, 0)
        let x = solve_dense(&[vec![q(1), q(1)]], &[q(1)]).unwrap();
        assert_eq!(x, vec![q(1), q(0)]);
        assert!(solve_dense(&[vec![q(0), q(0)]], &[q(1)]).is_none());
    }

    #[test]
    fn full_reduction_is_canonical() {
        let mut e = Echelon::new();
        e.insert(vec![(0, q(1)), (2, q(1))]);
        e.insert(vec![(1, q(1)), (2, q(1))]);
        let a = e.reduce_full(vec![(0, q(1)), (1, q(1))]);
        assert_eq!(a, vec![(2, q(-2))]);
    }
}
