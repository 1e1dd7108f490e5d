//! Brute-force ground truth, straight from the definitions.

use num_bigint::BigUint;

use super::AssocKind;
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Largest ground-set size the oracle accepts (9! = 362880 permutations).
pub const ORACLE_MAX_N: usize = 9;

/// Counts set partitions (`Partition`) or permutations (`Derangement`) of
/// `{0..n}` with exactly `k` blocks/cycles, each of size at least `r`.
pub fn enumerate_oracle(
    r: usize,
    n: usize,
    k: usize,
    kind: AssocKind,
    exec: Execution,
) -> Result<BigUint> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be >= 1".into()));
    }
    if n > ORACLE_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "enumeration oracle is limited to n <= {ORACLE_MAX_N}, got {n}"
        )));
    }
    let count = match kind {
        AssocKind::Partition => count_partitions(r, n, k),
        AssocKind::Derangement => count_permutations(r, n, k, exec),
    };
    Ok(BigUint::from(count))
}

/// Walks every restricted growth string of length `n`.
fn count_partitions(r: usize, n: usize, k: usize) -> usize {
    fn walk(pos: usize, n: usize, sizes: &mut Vec<usize>, r: usize, k: usize) -> usize {
        if pos == n {
            return usize::from(sizes.len() == k && sizes.iter().all(|&s| s >= r));
        }
        let mut total = 0;
        for b in 0..sizes.len() {
            sizes[b] += 1;
            total += walk(pos + 1, n, sizes, r, k);
            sizes[b] -= 1;
        }
        sizes.push(1);
        total += walk(pos + 1, n, sizes, r, k);
        sizes.pop();
        total
    }
    walk(0, n, &mut Vec::new(), r, k)
}

fn count_permutations(r: usize, n: usize, k: usize, exec: Execution) -> usize {
    let total: usize = (1..=n).product();
    exec.count_range(total, |index| {
        let perm = decode_lehmer(index, n);
        cycle_profile_ok(&perm, r, k)
    })
}

/// The `index`-th permutation of `0..n` in lexicographic order.
fn decode_lehmer(mut index: usize, n: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let radix: usize = (1..n - i).product();
        let d = index / radix;
        index %= radix;
        out.push(pool.remove(d));
    }
    out
}

fn cycle_profile_ok(perm: &[usize], r: usize, k: usize) -> bool {
    let mut seen = 0u32;
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen & (1 << start) != 0 {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while seen & (1 << i) == 0 {
            seen |= 1 << i;
            i = perm[i];
            len += 1;
        }
        if len < r {
            return false;
        }
        cycles += 1;
    }
    cycles == k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(r: usize, n: usize, k: usize, kind: AssocKind) -> u64 {
        enumerate_oracle(r, n, k, kind, Execution::default())
            .unwrap()
            .try_into()
            .unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(oracle(3, 6, 2, AssocKind::Partition), 10);
        assert_eq!(oracle(3, 6, 2, AssocKind::Derangement), 40);
        assert_eq!(oracle(3, 2, 1, AssocKind::Partition), 0);
        assert_eq!(oracle(3, 2, 1, AssocKind::Derangement), 0);
        assert_eq!(oracle(3, 0, 0, AssocKind::Partition), 1);
        assert_eq!(oracle(3, 0, 0, AssocKind::Derangement), 1);
    }

    #[test]
    fn guards() {
        assert!(enumerate_oracle(3, 10, 2, AssocKind::Partition, Execution::Sequential).is_err());
        assert!(enumerate_oracle(0, 4, 2, AssocKind::Derangement, Execution::Sequential).is_err());
    }

    #[test]
    fn lehmer_covers_all_permutations() {
        let n = 5;
        let mut all: Vec<Vec<usize>> = (0..120).map(|i| decode_lehmer(i, n)).collect();
        assert_eq!(all[0], vec![0, 1, 2, 3, 4]);
        assert_eq!(all[119], vec![4, 3, 2, 1, 0]);
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 120);
    }

    #[test]
    fn total_counts() {
        // r = 1: every permutation / partition is counted once across k.
        let perms: u64 = (0..=6)
            .map(|k| oracle(1, 6, k, AssocKind::Derangement))
            .sum();
        assert_eq!(perms, 720);
        let bell: u64 = (0..=6).map(|k| oracle(1, 6, k, AssocKind::Partition)).sum();
        assert_eq!(bell, 203);
    }

    #[test]
    fn sequential_matches_parallel() {
        for k in 0..=3 {
            assert_eq!(
                enumerate_oracle(2, 8, k, AssocKind::Derangement, Execution::Sequential).unwrap(),
                enumerate_oracle(2, 8, k, AssocKind::Derangement, Execution::Parallel).unwrap()
            );
        }
    }
}
