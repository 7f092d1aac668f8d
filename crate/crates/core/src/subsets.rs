//! Small combinatorics helpers shared by the learner, the game, and the
//! verification routines.

use itertools::Itertools;

/// All subsets of `pool` with size in `1..=max_size`, each sorted, listed in
/// lexicographic order of the sorted vectors.
pub fn nonempty_subsets_up_to(pool: &[usize], max_size: usize) -> Vec<Vec<usize>> {
    let mut pool = pool.to_vec();
    pool.sort_unstable();
    let mut out: Vec<Vec<usize>> = (1..=max_size.min(pool.len()))
        .flat_map(|k| pool.iter().copied().combinations(k))
        .collect();
    out.sort();
    out
}

/// All `k`-subsets of `pool`, sorted.
pub fn subsets_of_size(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut pool = pool.to_vec();
    pool.sort_unstable();
    pool.into_iter().combinations(k).collect()
}

/// Binomial coefficient as a float; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Sorted union of two sorted, disjoint-or-not index lists.
pub fn union_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_listing() {
        let s = nonempty_subsets_up_to(&[3, 1, 2], 2);
        assert_eq!(
            s,
            vec![vec![1], vec![1, 2], vec![1, 3], vec![2], vec![2, 3], vec![3]]
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(3, 0), 1.0);
        assert_eq!(binomial(1, 2), 0.0);
        assert_eq!(binomial(6, 3), 20.0);
    }
}
