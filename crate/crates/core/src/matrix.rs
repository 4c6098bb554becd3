//! Exact integer matrices, Smith normal form, and GF(2) rank — the
//! reduction pipeline shared by block and cubical homology.
//!
//! Entries are arbitrary-precision integers; pivots are chosen by minimal
//! absolute value to limit entry growth during reduction.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix over Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &BigInt) {
        self.data[r * self.cols + c] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let prod = a * b;
                        out.add_to(i, j, &prod);
                    }
                }
            }
        }
        out
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = BigInt::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        s += a * x;
                    }
                }
                s
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c).clone();
            self.set(r, c, v);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(src, c) * q;
            self.add_to(dst, c, &v);
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, src) * q;
            self.add_to(r, dst, &v);
        }
    }
}

/// Smith normal form S = U·A·V with unimodular U, V. `diag` holds the
/// nonzero invariant factors d₁ | d₂ | …; `rank` is their count.
pub struct SmithNormalForm {
    pub diag: Vec<BigInt>,
    pub rank: usize,
    pub row_trans: Option<IntMatrix>,
    pub col_trans: Option<IntMatrix>,
}

impl SmithNormalForm {
    /// Invariant factors exceeding 1, as torsion coefficients.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag
            .iter()
            .filter(|d| **d > BigInt::one())
            .cloned()
            .collect()
    }
}

/// Reduces a copy of `a` to Smith normal form, optionally accumulating the
/// row and column transforms.
pub fn smith_normal_form(a: &IntMatrix, want_rows: bool, want_cols: bool) -> SmithNormalForm {
    let mut m = a.clone();
    let mut u = want_rows.then(|| IntMatrix::identity(m.rows));
    let mut v = want_cols.then(|| IntMatrix::identity(m.cols));
    let steps = m.rows.min(m.cols);
    let mut t = 0;
    while t < steps {
        // minimal-absolute-value pivot in the trailing submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                if m.get(i, j).is_zero() {
                    continue;
                }
                match pivot {
                    Some((pi, pj)) if m.get(pi, pj).abs() <= m.get(i, j).abs() => {}
                    _ => pivot = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap_rows(t, pi);
        if let Some(u) = u.as_mut() {
            u.swap_rows(t, pi);
        }
        m.swap_cols(t, pj);
        if let Some(v) = v.as_mut() {
            v.swap_cols(t, pj);
        }
        if m.get(t, t).is_negative() {
            m.negate_row(t);
            if let Some(u) = u.as_mut() {
                u.negate_row(t);
            }
        }

        let mut dirty = false;
        for i in (t + 1)..m.rows {
            let q = -(m.get(i, t) / m.get(t, t));
            m.add_row_multiple(i, t, &q);
            if let Some(u) = u.as_mut() {
                u.add_row_multiple(i, t, &q);
            }
            if !m.get(i, t).is_zero() {
                dirty = true;
            }
        }
        for j in (t + 1)..m.cols {
            let q = -(m.get(t, j) / m.get(t, t));
            m.add_col_multiple(j, t, &q);
            if let Some(v) = v.as_mut() {
                v.add_col_multiple(j, t, &q);
            }
            if !m.get(t, j).is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue; // remainders left; pick a smaller pivot next round
        }

        // enforce the divisibility chain: pull in any entry the pivot
        // does not divide and re-reduce
        let mut fixed = true;
        'scan: for i in (t + 1)..m.rows {
            for j in (t + 1)..m.cols {
                if !(m.get(i, j) % m.get(t, t)).is_zero() {
                    let one = BigInt::one();
                    m.add_row_multiple(t, i, &one);
                    if let Some(u) = u.as_mut() {
                        u.add_row_multiple(t, i, &one);
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            t += 1;
        }
    }

    let mut diag = Vec::new();
    for i in 0..steps {
        let d = m.get(i, i).clone();
        if d.is_zero() {
            break;
        }
        diag.push(d);
    }
    let rank = diag.len();
    SmithNormalForm {
        diag,
        rank,
        row_trans: u,
        col_trans: v,
    }
}

/// Rank of `a` over Z (via SNF without transforms).
pub fn rank_z(a: &IntMatrix) -> usize {
    smith_normal_form(a, false, false).rank
}

/// Dense GF(2) matrix with bit-packed rows.
#[derive(Clone, Debug)]
pub struct Bitrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl Bitrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Bitrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let idx = r * self.words + c / 64;
        if v {
            self.data[idx] |= 1 << (c % 64);
        } else {
            self.data[idx] &= !(1 << (c % 64));
        }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        let mut b = Bitrix::zeros(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if (m.get(r, c) % 2u8).is_zero() {
                    continue;
                }
                b.set(r, c, true);
            }
        }
        b
    }

    /// Rank over GF(2) by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut data = self.data.clone();
        let w = self.words;
        let mut rank = 0;
        for col in 0..self.cols {
            let word = col / 64;
            let bit = 1u64 << (col % 64);
            let Some(pivot) = (rank..self.rows).find(|&r| data[r * w + word] & bit != 0) else {
                continue;
            };
            for k in 0..w {
                data.swap(rank * w + k, pivot * w + k);
            }
            for r in 0..self.rows {
                if r != rank && data[r * w + word] & bit != 0 {
                    for k in 0..w {
                        data[r * w + k] ^= data[rank * w + k];
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_i64(rows: &[&[i64]]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    fn check_transforms(a: &IntMatrix) {
        let snf = smith_normal_form(a, true, true);
        let u = snf.row_trans.as_ref().unwrap();
        let v = snf.col_trans.as_ref().unwrap();
        let s = u.mul(a).mul(v);
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                let expect = if i == j && i < snf.rank {
                    snf.diag[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(*s.get(i, j), expect, "at ({i},{j})");
            }
        }
        for w in snf.diag.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisibility chain");
        }
    }

    #[test]
    fn snf_known_forms() {
        // classic example with torsion 2
        let a = from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let snf = smith_normal_form(&a, true, true);
        let d: Vec<i64> = snf.diag.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(d, vec![2, 2, 156]);
        check_transforms(&a);

        let a = from_i64(&[&[1, 0], &[0, 1]]);
        assert_eq!(smith_normal_form(&a, false, false).rank, 2);

        let a = from_i64(&[&[0, 0], &[0, 0]]);
        assert_eq!(smith_normal_form(&a, false, false).rank, 0);

        // boundary-like matrix of a 4-cycle has rank 3
        let a = from_i64(&[
            &[-1, -1, 0, 0],
            &[1, 0, -1, 0],
            &[0, 1, 0, -1],
            &[0, 0, 1, 1],
        ]);
        assert_eq!(rank_z(&a), 3);
        check_transforms(&a);
    }

    #[test]
    fn snf_torsion_example() {
        // projective-plane-like relation: diag (1, 2)
        let a = from_i64(&[&[1, 1], &[1, -1]]);
        let snf = smith_normal_form(&a, true, true);
        let d: Vec<i64> = snf.diag.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(d, vec![1, 2]);
        assert_eq!(
            snf.torsion(),
            vec![BigInt::from(2)],
            "single torsion factor 2"
        );
        check_transforms(&a);
    }

    #[test]
    fn snf_rectangular() {
        let a = from_i64(&[&[2, 6, 4, 8], &[4, 12, 8, 16]]);
        let snf = smith_normal_form(&a, true, true);
        assert_eq!(snf.rank, 1);
        assert_eq!(snf.diag[0], BigInt::from(2));
        check_transforms(&a);
    }

    #[test]
    fn snf_random_matrices() {
        // deterministic pseudo-random sweep: transforms reproduce S, the
        // diagonal is a divisibility chain, and GF(2) rank never exceeds
        // the integer rank
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..60 {
            let rows = (next() % 6 + 1) as usize;
            let cols = (next() % 6 + 1) as usize;
            let mut m = IntMatrix::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m.set(i, j, BigInt::from(next() % 19) - 9);
                }
            }
            check_transforms(&m);
            let snf = smith_normal_form(&m, false, false);
            assert!(Bitrix::from_int(&m).rank() <= snf.rank);
        }
    }

    #[test]
    fn bit_rank() {
        let a = from_i64(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        // over GF(2) the three rows sum to zero
        assert_eq!(Bitrix::from_int(&a).rank(), 2);
        assert_eq!(rank_z(&a), 3);

        let mut b = Bitrix::zeros(70, 70);
        for i in 0..70 {
            b.set(i, i, true);
        }
        assert_eq!(b.rank(), 70);
    }
}
