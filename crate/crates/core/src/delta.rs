//! Exact permanents and determinants of small integer matrices, and the
//! Kronecker-delta matrix of two index words.

/// Square integer matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix { n, data: rows.into_iter().flatten().collect() }
    }

    /// `M[j][k] = 1` when `left[j] == right[k]`, else 0.
    pub fn delta(left: &[usize], right: &[usize]) -> Self {
        assert_eq!(left.len(), right.len(), "delta matrix needs words of equal length");
        let n = left.len();
        let data = left
            .iter()
            .flat_map(|a| right.iter().map(move |b| i64::from(a == b)))
            .collect();
        IntMatrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.data[row * self.n + col]
    }

    /// Permanent by dynamic programming over column subsets, `O(n 2^n)`.
    pub fn permanent(&self) -> i128 {
        let n = self.n;
        assert!(n < 32, "permanent limited to n < 32");
        // ways[mask]: sum over assignments of the first popcount(mask) rows
        // to exactly the columns in mask
        let mut ways = vec![0i128; 1 << n];
        ways[0] = 1;
        for mask in 0usize..(1 << n) {
            let w = ways[mask];
            if w == 0 {
                continue;
            }
            let row = mask.count_ones() as usize;
            if row == n {
                continue;
            }
            for col in 0..n {
                if mask & (1 << col) == 0 {
                    let entry = self.get(row, col) as i128;
                    if entry != 0 {
                        ways[mask | (1 << col)] += w * entry;
                    }
                }
            }
        }
        ways[(1 << n) - 1]
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i128 {
        let n = self.n;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k * n + k] == 0 {
                match (k + 1..n).find(|&r| a[r * n + k] != 0) {
                    Some(r) => {
                        for c in 0..n {
                            a.swap(k * n + c, r * n + c);
                        }
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            let pivot = a[k * n + k];
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] = (a[i * n + j] * pivot - a[i * n + k] * a[k * n + j]) / prev;
                }
            }
            prev = pivot;
        }
        sign * a[n * n - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_permanents() {
        assert_eq!(IntMatrix::from_rows(vec![]).permanent(), 1);
        assert_eq!(IntMatrix::from_rows(vec![vec![1, 1], vec![1, 1]]).permanent(), 2);
        let m = IntMatrix::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        // 1(5*9+6*8) + 2(4*9+6*7) + 3(4*8+5*7)
        assert_eq!(m.permanent(), 93 + 2 * 78 + 3 * 67);
    }

    #[test]
    fn small_determinants() {
        assert_eq!(IntMatrix::from_rows(vec![]).determinant(), 1);
        assert_eq!(IntMatrix::from_rows(vec![vec![1, 1], vec![1, 1]]).determinant(), 0);
        let m = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(m.determinant(), -1);
        let m = IntMatrix::from_rows(vec![vec![2, -1, 0], vec![1, 3, 4], vec![0, 5, -2]]);
        // 2(-6-20) + 1(-2-0) = -54
        assert_eq!(m.determinant(), -54);
    }

    #[test]
    fn delta_matrix_of_repeated_word() {
        let m = IntMatrix::delta(&[1, 1], &[1, 1]);
        assert_eq!(m.permanent(), 2);
        assert_eq!(m.determinant(), 0);
        let m = IntMatrix::delta(&[1, 2, 2, 3], &[1, 2, 2, 3]);
        assert_eq!(m.permanent(), 2);
        assert_eq!(m.determinant(), 0);
    }
}
