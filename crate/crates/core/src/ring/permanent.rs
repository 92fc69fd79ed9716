use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::BitMatrix;

/// Exact permanent of a 0/1 matrix.
///
/// Rows or columns with a single entry are peeled off first (the permanent
/// equals that of the minor), then the bipartite row/column graph is split
/// into connected blocks, over which the permanent is multiplicative. Each
/// block goes through Ryser's inclusion-exclusion formula in Gray-code order.
pub fn permanent(m: &BitMatrix) -> BigUint {
    let dense: Vec<Vec<bool>> =
        (0..m.dim()).map(|i| (0..m.dim()).map(|j| m.get(i, j)).collect()).collect();
    let Some(core) = peel_forced(dense) else {
        return BigUint::zero();
    };
    let mut result = BigUint::from(1u32);
    for (rows, cols) in blocks(&core) {
        if rows.len() != cols.len() {
            return BigUint::zero();
        }
        let block: Vec<Vec<bool>> =
            rows.iter().map(|&i| cols.iter().map(|&j| core[i][j]).collect()).collect();
        let value = ryser(&block);
        if value.is_zero() {
            return value;
        }
        result *= value;
    }
    result
}

/// Repeatedly deletes a row or column holding exactly one entry together
/// with the line through that entry. `None` when an empty line shows up.
fn peel_forced(mut a: Vec<Vec<bool>>) -> Option<Vec<Vec<bool>>> {
    loop {
        let n = a.len();
        let mut forced = None;
        for i in 0..n {
            let ones: Vec<usize> = (0..n).filter(|&j| a[i][j]).collect();
            match ones.len() {
                0 => return None,
                1 => {
                    forced = Some((i, ones[0]));
                    break;
                }
                _ => {}
            }
        }
        if forced.is_none() {
            for j in 0..n {
                let ones: Vec<usize> = (0..n).filter(|&i| a[i][j]).collect();
                match ones.len() {
                    0 => return None,
                    1 => {
                        forced = Some((ones[0], j));
                        break;
                    }
                    _ => {}
                }
            }
        }
        let Some((r, c)) = forced else {
            return Some(a);
        };
        a.remove(r);
        for row in &mut a {
            row.remove(c);
        }
    }
}

/// Connected components of the bipartite incidence graph, as sorted
/// (row indices, column indices).
fn blocks(a: &[Vec<bool>]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = a.len();
    // Vertices 0..n are rows, n..2n are columns.
    let mut parent: Vec<usize> = (0..2 * n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in 0..n {
            if a[i][j] {
                let (x, y) = (find(&mut parent, i), find(&mut parent, n + j));
                parent[x] = y;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, (Vec<usize>, Vec<usize>)> = Default::default();
    for v in 0..2 * n {
        let root = find(&mut parent, v);
        let entry = groups.entry(root).or_default();
        if v < n {
            entry.0.push(v);
        } else {
            entry.1.push(v - n);
        }
    }
    groups.into_values().collect()
}

fn ryser(a: &[Vec<bool>]) -> BigUint {
    let n = a.len();
    if n == 0 {
        return BigUint::from(1u32);
    }
    assert!(n < 63, "permanent block too large for subset enumeration");

    // per(A) = (-1)^n * sum over nonempty column subsets S of
    //          (-1)^|S| * prod_i (sum_{j in S} a_ij)
    let mut row_sums = vec![0i64; n];
    let mut total = BigInt::zero();
    let mut small_total: i128 = 0;
    let mut gray: u64 = 0;
    for step in 1u64..(1u64 << n) {
        let col = step.trailing_zeros() as usize;
        let next = gray ^ (1 << col);
        let delta = if next & (1 << col) != 0 { 1 } else { -1 };
        for (sum, row) in row_sums.iter_mut().zip(a) {
            if row[col] {
                *sum += delta;
            }
        }
        gray = next;

        if row_sums.contains(&0) {
            continue;
        }
        let negative = gray.count_ones() % 2 == 1;
        match row_sums.iter().try_fold(1i128, |acc, &s| acc.checked_mul(s as i128)) {
            Some(prod) => {
                let signed = if negative { -prod } else { prod };
                match small_total.checked_add(signed) {
                    Some(v) => small_total = v,
                    None => {
                        total += BigInt::from(small_total) + BigInt::from(signed);
                        small_total = 0;
                    }
                }
            }
            None => {
                let prod: BigInt = row_sums.iter().map(|&s| BigInt::from(s)).product();
                if negative {
                    total -= prod;
                } else {
                    total += prod;
                }
            }
        }
    }
    total += BigInt::from(small_total);
    if n % 2 == 1 {
        total = -total;
    }
    total.to_biguint().expect("permanent of a 0/1 matrix is nonnegative")
}

/// Permanent by direct expansion over all permutations; only practical for
/// small `n`, used to cross-check [`permanent`].
pub fn permanent_naive(m: &BitMatrix) -> BigUint {
    fn expand(m: &BitMatrix, col: usize, used: &mut Vec<bool>) -> u128 {
        if col == m.dim() {
            return 1;
        }
        let mut total = 0;
        for row in 0..m.dim() {
            if !used[row] && m.get(row, col) {
                used[row] = true;
                total += expand(m, col + 1, used);
                used[row] = false;
            }
        }
        total
    }
    BigUint::from(expand(m, 0, &mut vec![false; m.dim()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn to_u64(v: &BigUint) -> Option<u64> {
        v.to_u64()
    }

    fn per(rows: &[&[u8]]) -> u64 {
        let m = BitMatrix::from_rows(rows);
        let fast = permanent(&m);
        assert_eq!(fast, permanent_naive(&m));
        to_u64(&fast).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(per(&[]), 1);
        assert_eq!(per(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 1);
        assert_eq!(per(&[&[1, 1], &[1, 0]]), 1);
        assert_eq!(per(&[&[1, 1], &[1, 1]]), 2);
        assert_eq!(per(&[&[0, 1], &[0, 1]]), 0);
    }

    #[test]
    fn all_ones_is_factorial() {
        for n in 1..=8usize {
            let ones = vec![vec![1u8; n]; n];
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(to_u64(&permanent(&BitMatrix::from_rows(&ones))), Some(fact));
        }
    }

    #[test]
    fn block_structure() {
        // Two 2x2 all-ones blocks interleaved.
        let m = BitMatrix::from_rows(&[[1u8, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1]]);
        assert_eq!(to_u64(&permanent(&m)), Some(4));
    }

    #[test]
    fn banded_matrices() {
        let n = 40;
        let mut m = BitMatrix::identity(n);
        for i in 0..n - 1 {
            m.set(i, i + 1, true);
        }
        assert_eq!(to_u64(&permanent(&m)), Some(1));
        // Closing the band into a cycle leaves no forced line: one 18-wide
        // Ryser block with exactly two perfect matchings.
        let n = 18;
        let mut m = BitMatrix::identity(n);
        for i in 0..n {
            m.set(i, (i + 1) % n, true);
        }
        assert_eq!(to_u64(&permanent(&m)), Some(2));
    }
}
