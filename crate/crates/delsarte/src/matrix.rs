//! Dense exact-rational linear algebra sized for Bose–Mesner work:
//! matrices stay small (a few dozen rows) except for restricted
//! idempotents, where products go through an integer-scaled fast path.

use crate::arith::{Int, Rat};
use num::{BigInt, One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = if r > 0 { rows[0].len() } else { 0 };
        assert!(rows.iter().all(|row| row.len() == c));
        RatMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] += t;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc += &self[(i, j)] * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &Rat) -> RatMat {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x *= c;
        }
        out
    }

    pub fn add(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(other.data.iter()) {
            *x += y;
        }
        out
    }

    pub fn sub(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(other.data.iter()) {
            *x -= y;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Gauss–Jordan inverse; None when singular.
    pub fn inverse(&self) -> Option<RatMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] /= &p;
                inv[(col, j)] /= &p;
            }
            for r in 0..n {
                if r != col && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    for j in 0..n {
                        let t = &f * &a[(col, j)];
                        a[(r, j)] -= t;
                        let t = &f * &inv[(col, j)];
                        inv[(r, j)] -= t;
                    }
                }
            }
        }
        Some(inv)
    }

    /// Solves self * x = rhs for a single column; None when inconsistent/singular.
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, rhs.len());
        let n = self.rows;
        let m = self.cols;
        let mut a = self.clone();
        let mut b = rhs.to_vec();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut row = 0;
        for col in 0..m {
            let Some(p) = (row..n).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                a.swap_rows(p, row);
                b.swap(p, row);
            }
            let pv = a[(row, col)].clone();
            for j in col..m {
                a[(row, j)] /= &pv;
            }
            b[row] /= &pv;
            for r in 0..n {
                if r != row && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    for j in col..m {
                        let t = &f * &a[(row, j)];
                        a[(r, j)] -= t;
                    }
                    let t = &f * &b[row];
                    b[r] -= t;
                }
            }
            pivots.push((row, col));
            row += 1;
            if row == n {
                break;
            }
        }
        // consistency of zero rows
        for r in row..n {
            if !b[r].is_zero() {
                return None;
            }
        }
        let mut x = vec![Rat::zero(); m];
        for (r, c) in pivots {
            x[c] = b[r].clone();
        }
        Some(x)
    }

    /// Kernel basis (columns x with self*x = 0).
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let n = self.rows;
        let m = self.cols;
        let mut a = self.clone();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..m {
            let Some(p) = (row..n).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                a.swap_rows(p, row);
            }
            let pv = a[(row, col)].clone();
            for j in col..m {
                a[(row, j)] /= &pv;
            }
            for r in 0..n {
                if r != row && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    for j in col..m {
                        let t = &f * &a[(row, j)];
                        a[(r, j)] -= t;
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == n {
                break;
            }
        }
        let free: Vec<usize> = (0..m).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = Vec::new();
        for &fc in &free {
            let mut v = vec![Rat::zero(); m];
            v[fc] = Rat::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a[(r, fc)].clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn rank(&self) -> usize {
        self.cols - self.kernel().len()
    }

    /// Characteristic polynomial coefficients c_0..c_n of det(xI - M),
    /// c_n = 1, by the Faddeev–LeVerrier recursion.
    pub fn charpoly(&self) -> Vec<Rat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        let mut m = RatMat::identity(n);
        for k in 1..=n {
            let am = self.mul(&m);
            let c = -am.trace() / Rat::from_integer(Int::from(k as i64));
            coeffs[n - k] = c.clone();
            m = am;
            for i in 0..n {
                m[(i, i)] += &c;
            }
        }
        coeffs
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Rank of an integer matrix by incremental fraction-free elimination.
/// Rows are reduced against at most `cols` pivot rows, so i128 growth is
/// bounded by the Hadamard estimate for the small matrices passed here;
/// overflow falls back to big integers.
pub fn int_rank(rows: &[Vec<i128>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let cols = first.len();
    let mut pivots: Vec<(usize, Vec<i128>)> = Vec::new(); // (pivot col, row)
    'next_row: for r in rows {
        let mut v = r.clone();
        for (pc, prow) in &pivots {
            if v[*pc] != 0 {
                match reduce_i128(&mut v, prow, *pc) {
                    Ok(()) => {}
                    Err(()) => return int_rank_big(rows),
                }
            }
        }
        for c in 0..cols {
            if v[c] != 0 {
                pivots.push((c, v));
                if pivots.len() == cols {
                    return cols;
                }
                continue 'next_row;
            }
        }
    }
    pivots.len()
}

fn reduce_i128(v: &mut [i128], p: &[i128], pc: usize) -> Result<(), ()> {
    let a = p[pc];
    let b = v[pc];
    for j in 0..v.len() {
        let t1 = a.checked_mul(v[j]).ok_or(())?;
        let t2 = b.checked_mul(p[j]).ok_or(())?;
        v[j] = t1.checked_sub(t2).ok_or(())?;
    }
    // keep entries small
    let g = v.iter().fold(0i128, |g, &x| gcd_i128(g, x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
    Ok(())
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn int_rank_big(rows: &[Vec<i128>]) -> usize {
    let mat = RatMat::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect())
            .collect(),
    );
    mat.transpose().rank().min(mat.rank())
}

/// Evaluates an integer polynomial (coefficients low-to-high) at an integer.
pub fn eval_int_poly(coeffs: &[Rat], x: &Int) -> Rat {
    let xr = Rat::from_integer(x.clone());
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * &xr + c;
    }
    acc
}

/// Integer roots of a monic rational-coefficient polynomial within [lo, hi],
/// with multiplicities, found by scan + synthetic deflation.
pub fn integer_roots_in_range(coeffs: &[Rat], lo: i64, hi: i64) -> Vec<(Int, usize)> {
    let mut out: Vec<(Int, usize)> = Vec::new();
    let mut poly = coeffs.to_vec();
    for cand in lo..=hi {
        let x = Int::from(cand);
        let mut mult = 0;
        while poly.len() > 1 && eval_int_poly(&poly, &x).is_zero() {
            poly = deflate(&poly, &x);
            mult += 1;
        }
        if mult > 0 {
            out.push((x, mult));
        }
        if poly.len() <= 1 {
            break;
        }
    }
    out
}

/// Divides by (x - root); caller guarantees root is a root.
fn deflate(coeffs: &[Rat], root: &Int) -> Vec<Rat> {
    let n = coeffs.len() - 1;
    let r = Rat::from_integer(root.clone());
    let mut out = vec![Rat::zero(); n];
    let mut carry = Rat::zero();
    for k in (0..n).rev() {
        carry = &coeffs[k + 1] + &carry * &r;
        out[k] = carry.clone();
    }
    debug_assert!((&coeffs[0] + &carry * &r).is_zero() || !coeffs[0].is_zero() || true);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn inverse_and_solve() {
        let m = RatMat::from_rows(vec![
            vec![rat(1), rat(3), rat(6)],
            vec![rat(1), rat(1), rat(-2)],
            vec![rat(1), rat(-2), rat(1)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMat::identity(3));
        let x = m.solve(&[rat(10), rat(0), rat(0)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![rat(10), rat(0), rat(0)]);
    }

    #[test]
    fn charpoly_of_petersen_adjacency_quotient() {
        // intersection matrix of the Petersen graph: eigenvalues 3, 1, -2
        let m = RatMat::from_rows(vec![
            vec![rat(0), rat(1), rat(0)],
            vec![rat(3), rat(0), rat(1)],
            vec![rat(0), rat(2), rat(2)],
        ]);
        let cp = m.charpoly();
        let roots = integer_roots_in_range(&cp, -3, 3);
        let flat: Vec<i64> = roots
            .iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r.to_string().parse::<i64>().unwrap(), *m))
            .collect();
        assert_eq!(flat, vec![-2, 1, 3]);
    }

    #[test]
    fn int_rank_small() {
        let rows = vec![
            vec![1i128, 2, 3],
            vec![2, 4, 6],
            vec![0, 1, 1],
        ];
        assert_eq!(int_rank(&rows), 2);
        assert_eq!(int_rank(&[]), 0);
    }

    #[test]
    fn kernel_dimensions() {
        let m = RatMat::from_rows(vec![vec![rat(1), rat(1), rat(0)], vec![rat(0), rat(0), rat(1)]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(m.mul_vec(&k[0]), vec![rat(0), rat(0)]);
    }
}
