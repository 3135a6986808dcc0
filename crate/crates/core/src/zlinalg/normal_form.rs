//! Hermite and Smith normal forms with transformation matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Row-style Hermite normal form: returns `(H, U)` with `U·A = H`, `U` unimodular.
///
/// `H` is in row echelon form, pivots are positive and every entry above a
/// pivot lies in `[0, pivot)`.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == m {
            break;
        }
        loop {
            // smallest nonzero entry at or below the pivot row
            let best = (pivot_row..m)
                .filter(|&i| !h.get(i, col).is_zero())
                .min_by(|&i, &j| h.get(i, col).abs().cmp(&h.get(j, col).abs()));
            let Some(best) = best else { break };
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            let mut clean = true;
            for i in pivot_row + 1..m {
                if h.get(i, col).is_zero() {
                    continue;
                }
                let q = -h.get(i, col).div_floor(h.get(pivot_row, col));
                h.add_row_multiple(i, pivot_row, &q);
                u.add_row_multiple(i, pivot_row, &q);
                if !h.get(i, col).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(pivot_row, col).is_zero() {
            continue;
        }
        if h.get(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        let p = h.get(pivot_row, col).clone();
        for i in 0..pivot_row {
            let q = -h.get(i, col).div_floor(&p);
            h.add_row_multiple(i, pivot_row, &q);
            u.add_row_multiple(i, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Result of [`snf`]: `U·A·V = D` with `D` diagonal and `d_1 | d_2 | …`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    /// Inverse of `u`, maintained alongside it.
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1, …, d_min(rows, cols)`; zeros trail.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

struct SmithState {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl SmithState {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    /// row[target] += f * row[source], keeping `u_inv` in sync.
    fn add_row(&mut self, target: usize, source: usize, f: &BigInt) {
        self.a.add_row_multiple(target, source, f);
        self.u.add_row_multiple(target, source, f);
        self.u_inv.add_col_multiple(source, target, &-f);
    }

    fn add_col(&mut self, target: usize, source: usize, f: &BigInt) {
        self.a.add_col_multiple(target, source, f);
        self.v.add_col_multiple(target, source, f);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        let cols = self.u_inv.rows();
        for r in 0..cols {
            let x = std::mem::take(self.u_inv.get_mut(r, i));
            *self.u_inv.get_mut(r, i) = -x;
        }
    }

    /// Moves the smallest nonzero entry of the trailing block to `(t, t)`.
    fn pivot_block(&mut self, t: usize) -> bool {
        let (m, n) = (self.a.rows(), self.a.cols());
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        match best {
            Some((i, j)) => {
                self.swap_rows(t, i);
                self.swap_cols(t, j);
                true
            }
            None => false,
        }
    }

    /// Moves the smallest nonzero entry of row `t` / column `t` to `(t, t)`.
    fn pivot_cross(&mut self, t: usize) {
        let (m, n) = (self.a.rows(), self.a.cols());
        let mut best = (t, t);
        let mut best_abs = self.a.get(t, t).abs();
        for i in t..m {
            let x = self.a.get(i, t);
            if !x.is_zero() && (best_abs.is_zero() || x.abs() < best_abs) {
                best = (i, t);
                best_abs = x.abs();
            }
        }
        for j in t..n {
            let x = self.a.get(t, j);
            if !x.is_zero() && (best_abs.is_zero() || x.abs() < best_abs) {
                best = (t, j);
                best_abs = x.abs();
            }
        }
        self.swap_rows(t, best.0);
        self.swap_cols(t, best.1);
    }
}

/// Smith normal form by minimum-absolute-value pivoting.
pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut st = SmithState {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
    };
    for t in 0..m.min(n) {
        if !st.pivot_block(t) {
            break;
        }
        loop {
            let p = st.a.get(t, t).clone();
            let mut residue = false;
            for i in t + 1..m {
                if st.a.get(i, t).is_zero() {
                    continue;
                }
                let q = -st.a.get(i, t).div_floor(&p);
                st.add_row(i, t, &q);
                residue |= !st.a.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if st.a.get(t, j).is_zero() {
                    continue;
                }
                let q = -st.a.get(t, j).div_floor(&p);
                st.add_col(j, t, &q);
                residue |= !st.a.get(t, j).is_zero();
            }
            if residue {
                st.pivot_cross(t);
                continue;
            }
            // divisibility d_t | rest of the trailing block
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !st.a.get(i, j).is_multiple_of(&p))
            });
            match offender {
                Some(i) => st.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if st.a.get(t, t).is_negative() {
            st.negate_row(t);
        }
    }
    SmithDecomposition {
        u: st.u,
        u_inv: st.u_inv,
        v: st.v,
        d: st.a,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check_smith(a: &IntMatrix) -> SmithDecomposition {
        let s = snf(a);
        let uav = s.u.checked_mul(a).unwrap().checked_mul(&s.v).unwrap();
        assert_eq!(uav, s.d, "U·A·V must equal D");
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        assert_eq!(
            s.u.checked_mul(&s.u_inv).unwrap(),
            IntMatrix::identity(a.rows())
        );
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if w[1].is_zero() {
                continue;
            }
            assert!(!w[0].is_zero(), "zeros must trail");
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(diag.iter().all(|d| !d.is_negative()));
        s
    }

    fn diag_i64(s: &SmithDecomposition) -> Vec<i64> {
        s.diagonal().iter().map(|d| d.try_into().unwrap()).collect()
    }

    #[test]
    fn hnf_of_row_vector() {
        // gcd(4, 2) = 2 lands in the single pivot
        let (h, u) = hnf(&IntMatrix::from_i64(1, 2, &[4, 2]));
        assert_eq!(h, IntMatrix::from_i64(1, 2, &[4, 2]));
        assert_eq!(u, IntMatrix::identity(1));
        let (h, u) = hnf(&IntMatrix::from_i64(2, 1, &[4, 2]));
        assert_eq!(h, IntMatrix::from_i64(2, 1, &[2, 0]));
        assert_eq!(u.checked_mul(&IntMatrix::from_i64(2, 1, &[4, 2])).unwrap(), h);
        assert!(u.is_unimodular());
    }

    #[test]
    fn hnf_identity_and_zero() {
        let id = IntMatrix::identity(3);
        let (h, u) = hnf(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
        let z = IntMatrix::zeros(2, 3);
        let (h, u) = hnf(&z);
        assert_eq!(h, z);
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let a = IntMatrix::from_i64(3, 3, &[2, 3, 5, 0, 4, 1, 7, 1, 0]);
        let (h, u) = hnf(&a);
        assert_eq!(u.checked_mul(&a).unwrap(), h);
        let mut pivot_col = 0;
        for i in 0..3 {
            while pivot_col < 3 && h.get(i, pivot_col).is_zero() {
                pivot_col += 1;
            }
            let p = h.get(i, pivot_col).clone();
            assert!(p.is_positive());
            for r in 0..i {
                let x = h.get(r, pivot_col);
                assert!(!x.is_negative() && *x < p);
            }
        }
    }

    #[test]
    fn snf_small_cases() {
        assert_eq!(diag_i64(&check_smith(&IntMatrix::from_i64(1, 2, &[4, 2]))), vec![2]);
        assert_eq!(
            diag_i64(&check_smith(&IntMatrix::diagonal(2, 2, [6, 4]))),
            vec![2, 12]
        );
        let s = check_smith(&IntMatrix::zeros(3, 2));
        assert_eq!(diag_i64(&s), vec![0, 0]);
        let s = check_smith(&IntMatrix::zeros(3, 0));
        assert!(s.diagonal().is_empty());
    }

    #[test]
    fn snf_of_five_cycle_incidence() {
        // vertex-edge incidence of 1-2-4-5-3-1
        let edges = [(0, 1), (1, 3), (3, 4), (2, 4), (0, 2)];
        let mut a = IntMatrix::zeros(5, 5);
        for (e, &(x, y)) in edges.iter().enumerate() {
            a.set(e, x, 1);
            a.set(e, y, 1);
        }
        assert_eq!(diag_i64(&check_smith(&a)), vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn snf_normalizes_negative_pivots() {
        let s = check_smith(&IntMatrix::from_i64(2, 2, &[-3, 0, 0, -5]));
        assert_eq!(diag_i64(&s), vec![1, 15]);
        assert!(s.u.get(0, 0).abs().is_one() || !s.u.get(0, 0).is_zero());
    }

    #[test]
    fn snf_handles_large_entries() {
        let big = BigInt::from(1u64 << 62) * BigInt::from(1u64 << 62);
        let a = IntMatrix::from_rows(2, &[vec![big.clone(), BigInt::from(3)], vec![BigInt::from(6), big]]).unwrap();
        check_smith(&a);
    }
}
