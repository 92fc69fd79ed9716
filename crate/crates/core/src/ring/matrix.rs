use std::fmt;

use super::LaurentPoly2;

/// Square matrix over `Z[t^±1, s^±1]`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<LaurentPoly2>,
}

impl PolyMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, entries: vec![LaurentPoly2::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = LaurentPoly2::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly2>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self { n, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> LaurentPoly2) -> Self {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly2] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// `diag(self, other)`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        Self::from_fn(n, |i, j| match (i < self.n, j < self.n) {
            (true, true) => self[(i, j)].clone(),
            (false, false) => other[(i - self.n, j - self.n)].clone(),
            _ => LaurentPoly2::zero(),
        })
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        for i in 0..self.n {
            self.entries.swap(i * self.n + a, i * self.n + b);
        }
    }

    /// The matrix with rows and columns both reindexed by `perm`:
    /// `out[i][j] = self[perm[i]][perm[j]]`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Self {
        Self::from_fn(self.n, |i, j| self[(perm[i], perm[j])].clone())
    }
}

impl std::ops::Index<(usize, usize)> for PolyMatrix {
    type Output = LaurentPoly2;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly2 {
        &self.entries[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly2 {
        &mut self.entries[i * self.n + j]
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.n).map(|i| self.row(i).iter().map(|p| p.to_string()).collect()).collect();
        f.debug_list().entries(rows).finish()
    }
}

/// Square 0/1 matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl BitMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, bits: vec![false; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Panics unless every row has length `rows.len()` and holds only 0 or 1.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                assert!(v <= 1, "entries must be 0 or 1");
                m.set(i, j, v == 1);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[i * self.n + j] = v;
    }

    pub fn to_poly_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.n, |i, j| {
            if self.get(i, j) {
                LaurentPoly2::one()
            } else {
                LaurentPoly2::zero()
            }
        })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<u8>> =
            (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) as u8).collect()).collect();
        f.debug_list().entries(rows).finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetMethod {
    /// Bareiss elimination with exact division in the Laurent ring.
    FractionFree,
    /// Laplace expansion along the first row.
    Cofactor,
}

pub fn det(m: &PolyMatrix, method: DetMethod) -> LaurentPoly2 {
    match method {
        DetMethod::FractionFree => det_bareiss(m),
        DetMethod::Cofactor => {
            let cols: Vec<usize> = (0..m.n).collect();
            det_cofactor(m, 0, &cols)
        }
    }
}

fn det_bareiss(m: &PolyMatrix) -> LaurentPoly2 {
    let n = m.n;
    if n == 0 {
        return LaurentPoly2::one();
    }
    let mut a: Vec<Vec<LaurentPoly2>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut negate = false;
    let mut prev = LaurentPoly2::one();

    for k in 0..n {
        // Sparsest nonzero pivot; `min_by_key` keeps the first (lowest row) on ties.
        let Some(pivot) = (k..n)
            .filter(|&r| !a[r][k].is_zero())
            .min_by_key(|&r| a[r][k].num_terms())
        else {
            return LaurentPoly2::zero();
        };
        if pivot != k {
            a.swap(pivot, k);
            negate = !negate;
        }
        let (upper, lower) = a.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        for row in lower.iter_mut() {
            for j in k + 1..n {
                let num = &(&pivot_row[k] * &row[j]) - &(&row[k] * &pivot_row[j]);
                row[j] = num.exact_div(&prev).expect("fraction-free elimination divides exactly");
            }
            row[k] = LaurentPoly2::zero();
        }
        prev = a[k][k].clone();
    }

    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn det_cofactor(m: &PolyMatrix, row: usize, cols: &[usize]) -> LaurentPoly2 {
    if cols.is_empty() {
        return LaurentPoly2::one();
    }
    let mut total = LaurentPoly2::zero();
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &m[(row, c)];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * &det_cofactor(m, row + 1, &rest);
        if pos % 2 == 0 {
            total += &term;
        } else {
            total -= &term;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> LaurentPoly2 {
        text.parse().unwrap()
    }

    fn matrix(rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(rows.iter().map(|r| r.iter().map(|e| p(e)).collect()).collect())
    }

    fn both(m: &PolyMatrix) -> LaurentPoly2 {
        let ff = det(m, DetMethod::FractionFree);
        assert_eq!(ff, det(m, DetMethod::Cofactor));
        ff
    }

    #[test]
    fn empty_and_identity() {
        assert!(both(&PolyMatrix::zeros(0)).is_one());
        assert!(both(&PolyMatrix::identity(2)).is_one());
        assert!(both(&PolyMatrix::zeros(3)).is_zero());
    }

    #[test]
    fn singular_left_t_matrix() {
        let m = matrix(&[
            &["t - 1", "0", "0", "-t"],
            &["t^-1 - 1", "1", "0", "0"],
            &["0", "-t", "t - 1", "0"],
            &["0", "0", "t^-1 - 1", "1"],
        ]);
        assert!(both(&m).is_zero());
    }

    #[test]
    fn nonsingular_right_t_matrix() {
        let m = matrix(&[
            &["1", "0", "0", "-t^-1"],
            &["0", "1", "t^-1 - 1", "0"],
            &["0", "-t^-1", "0", "t^-1 - 1"],
            &["0", "t^-1 - 1", "-t^-1", "1"],
        ]);
        assert_eq!(both(&m), p("t^-3 - t^-2 + t^-1 - 1"));
    }

    #[test]
    fn pivoting_with_zero_leading_entry() {
        let m = matrix(&[&["0", "s"], &["t", "5"]]);
        assert_eq!(both(&m), p("-t*s"));
    }

    #[test]
    fn block_diagonal_is_multiplicative() {
        let a = matrix(&[&["t", "-t*s^-1"], &["-t*s", "t + 1"]]);
        let b = matrix(&[&["s - 1"]]);
        assert_eq!(both(&a.block_diag(&b)), both(&a) * both(&b));
    }
}
