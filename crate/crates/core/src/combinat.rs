//! Exact combinatorial sequences built from their recurrences.
//!
//! Sign conventions at this boundary:
//! * [`odd_cycle_counts`] returns **absolute values** `a(k, j)` of the
//!   coefficients of `(t-1)(t-3)...(t-(2k-1))`, i.e. counts.
//! * [`boxed_coeffs`] returns the **signed** coefficients `b(k, j)` of
//!   `(t-3)(t-5)...(t-(2k+1))`.
//! * [`signed_odd_coeffs`] returns the signed version of the former.

use num_traits::{One, Signed, Zero};

use crate::exactmath::{factorial, BigInt, Polynomial};

/// Memoized Stirling, ordered Bell and Eulerian tables up to a fixed `n_max`.
///
/// Built once from the recurrences and read-only afterwards.
#[derive(Clone, Debug)]
pub struct SequenceTable {
    n_max: usize,
    stirling: Vec<Vec<BigInt>>,
    eulerian: Vec<Vec<BigInt>>,
    ordered_bell: Vec<BigInt>,
}

impl SequenceTable {
    pub fn new(n_max: usize) -> Self {
        let mut stirling = vec![vec![BigInt::one()]];
        for n in 1..=n_max {
            let prev = &stirling[n - 1];
            let row: Vec<BigInt> = (0..=n)
                .map(|k| {
                    let stay = if k < n { BigInt::from(k) * &prev[k] } else { BigInt::zero() };
                    let new_block = if k >= 1 { prev[k - 1].clone() } else { BigInt::zero() };
                    stay + new_block
                })
                .collect();
            stirling.push(row);
        }

        // A(0,0) = 1; row n has entries k = 0..n-1.
        let mut eulerian = vec![vec![BigInt::one()]];
        for n in 1..=n_max {
            let prev = &eulerian[n - 1];
            let get = |k: isize| -> BigInt {
                if k < 0 {
                    BigInt::zero()
                } else {
                    prev.get(k as usize).cloned().unwrap_or_default()
                }
            };
            let row: Vec<BigInt> = (0..n)
                .map(|k| {
                    if k == 0 {
                        BigInt::one()
                    } else {
                        BigInt::from(n - k) * get(k as isize - 1) + BigInt::from(k + 1) * get(k as isize)
                    }
                })
                .collect();
            eulerian.push(row);
        }

        let ordered_bell = stirling
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(k, s)| factorial(k) * s)
                    .sum::<BigInt>()
            })
            .collect();

        SequenceTable {
            n_max,
            stirling,
            eulerian,
            ordered_bell,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    fn check(&self, n: usize) {
        assert!(
            n <= self.n_max,
            "sequence table built to n = {}, asked for n = {}",
            self.n_max,
            n
        );
    }

    /// `S(n, k)`; zero for `k > n` and for `k = 0 < n`.
    pub fn stirling2(&self, n: usize, k: usize) -> BigInt {
        self.check(n);
        self.stirling[n].get(k).cloned().unwrap_or_default()
    }

    /// `a(n) = Σ_k k! S(n, k)`.
    pub fn ordered_bell(&self, n: usize) -> BigInt {
        self.check(n);
        self.ordered_bell[n].clone()
    }

    /// `A(n, k)`, the number of permutations of `[n]` with `k` descents.
    pub fn eulerian(&self, n: usize, k: i64) -> BigInt {
        self.check(n);
        if k < 0 {
            return BigInt::zero();
        }
        self.eulerian[n].get(k as usize).cloned().unwrap_or_default()
    }
}

pub fn stirling2(n: usize, k: usize) -> BigInt {
    SequenceTable::new(n).stirling2(n, k)
}

pub fn ordered_bell(n: usize) -> BigInt {
    SequenceTable::new(n).ordered_bell(n)
}

pub fn eulerian(n: usize, k: i64) -> BigInt {
    SequenceTable::new(n).eulerian(n, k)
}

/// `(t-1)(t-3)...(t-(2k-1))`.
pub fn odd_chain(k: usize) -> Polynomial {
    let roots: Vec<BigInt> = (1..=k).map(|i| BigInt::from(2 * i - 1)).collect();
    Polynomial::product_chain(&roots)
}

/// `(t-3)(t-5)...(t-(2k+1))`.
pub fn boxed_chain(k: usize) -> Polynomial {
    let roots: Vec<BigInt> = (1..=k).map(|i| BigInt::from(2 * i + 1)).collect();
    Polynomial::product_chain(&roots)
}

fn padded(p: &Polynomial, k: usize) -> Vec<BigInt> {
    (0..=k).map(|j| p.coeff(j)).collect()
}

/// Signed coefficients of `(t-1)(t-3)...(t-(2k-1))`, index `j = 0..=k`.
pub fn signed_odd_coeffs(k: usize) -> Vec<BigInt> {
    padded(&odd_chain(k), k)
}

/// `a(k, j)` for `j = 0..=k`: absolute values of [`signed_odd_coeffs`], the
/// number of signed permutations of `[k]` with `j` odd cycles.
pub fn odd_cycle_counts(k: usize) -> Vec<BigInt> {
    signed_odd_coeffs(k).into_iter().map(|c| c.abs()).collect()
}

/// `b(k, j)` for `j = 0..=k`: signed coefficients of `(t-3)...(t-(2k+1))`.
pub fn boxed_coeffs(k: usize) -> Vec<BigInt> {
    padded(&boxed_chain(k), k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// All set partitions of `[n]` as restricted growth strings.
    fn set_partitions(n: usize) -> Vec<Vec<usize>> {
        fn go(i: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i == n {
                out.push(cur.clone());
                return;
            }
            let max = cur.iter().copied().max().map_or(0, |m| m + 1);
            for b in 0..=max {
                cur.push(b);
                go(i + 1, n, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(0, n, &mut Vec::new(), &mut out);
        out
    }

    fn brute_stirling(n: usize, k: usize) -> usize {
        set_partitions(n)
            .iter()
            .filter(|rgs| rgs.iter().copied().max().map_or(0, |m| m + 1) == k)
            .count()
    }

    /// Ordered set partitions counted as surjections `[n] -> [k]`.
    fn brute_ordered_bell(n: usize) -> usize {
        let mut total = if n == 0 { 1 } else { 0 };
        for k in 1..=n {
            let mut f = vec![0usize; n];
            loop {
                let mut hit = vec![false; k];
                f.iter().for_each(|&v| hit[v] = true);
                if hit.iter().all(|&h| h) {
                    total += 1;
                }
                let mut i = 0;
                while i < n {
                    f[i] += 1;
                    if f[i] < k {
                        break;
                    }
                    f[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
        total
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n);
                out.push(q);
            }
        }
        out
    }

    fn brute_eulerian(n: usize, k: usize) -> usize {
        permutations(n)
            .iter()
            .filter(|p| p.windows(2).filter(|w| w[0] > w[1]).count() == k)
            .count()
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(brute_stirling(3, 2), 3);
        assert_eq!(brute_stirling(4, 2), 7);
        assert_eq!(stirling2(3, 2), big(3));
        assert_eq!(stirling2(4, 2), big(7));
        for n in 0..8 {
            assert_eq!(stirling2(n, n), big(1));
        }
        assert_eq!(stirling2(3, 0), big(0));
        assert_eq!(stirling2(2, 5), big(0));
    }

    #[test]
    fn stirling_matches_enumeration() {
        let t = SequenceTable::new(7);
        for n in 0..=7 {
            for k in 0..=n {
                assert_eq!(t.stirling2(n, k), big(brute_stirling(n, k) as i64), "S({n},{k})");
            }
        }
    }

    #[test]
    fn ordered_bell_examples() {
        assert_eq!(brute_ordered_bell(3), 13);
        assert_eq!(brute_ordered_bell(4), 75);
        assert_eq!(ordered_bell(0), big(1));
        assert_eq!(ordered_bell(3), big(13));
        assert_eq!(ordered_bell(4), big(75));
        let t = SequenceTable::new(6);
        for n in 0..=6 {
            assert_eq!(t.ordered_bell(n), big(brute_ordered_bell(n) as i64));
        }
    }

    #[test]
    fn eulerian_examples() {
        assert_eq!(brute_eulerian(3, 1), 4);
        assert_eq!(brute_eulerian(4, 2), 11);
        assert_eq!(eulerian(3, 1), big(4));
        assert_eq!(eulerian(4, 2), big(11));
        for n in 0..9 {
            assert_eq!(eulerian(n, 0), big(1));
            assert_eq!(eulerian(n, -1), big(0));
        }
        for n in 1..9 {
            assert_eq!(eulerian(n, n as i64), big(0));
        }
        let t = SequenceTable::new(7);
        for n in 1..=7 {
            assert_eq!(t.eulerian(n, n as i64 - 1), big(1));
            for k in 0..n {
                assert_eq!(t.eulerian(n, k as i64), big(brute_eulerian(n, k) as i64));
            }
        }
    }

    #[test]
    fn ordered_bell_identities() {
        let t = SequenceTable::new(12);
        for n in 0..=12 {
            let via_stirling: BigInt = (0..=n).map(|k| factorial(k) * t.stirling2(n, k)).sum();
            assert_eq!(via_stirling, t.ordered_bell(n));
        }
        for n in 1..=12 {
            let via_eulerian: BigInt = (0..n)
                .map(|k| (BigInt::one() << k) * t.eulerian(n, k as i64))
                .sum();
            assert_eq!(via_eulerian, t.ordered_bell(n), "n = {n}");
        }
    }

    #[test]
    fn odd_cycle_count_examples() {
        assert_eq!(odd_cycle_counts(2), vec![big(3), big(4), big(1)]);
        assert_eq!(odd_cycle_counts(0), vec![big(1)]);
        assert_eq!(odd_cycle_counts(2).iter().sum::<BigInt>(), big(8));
        for k in 0..=8 {
            let total: BigInt = odd_cycle_counts(k).iter().sum();
            assert_eq!(total, (BigInt::one() << k) * factorial(k), "k = {k}");
        }
    }

    #[test]
    fn boxed_coeff_examples() {
        assert_eq!(boxed_coeffs(1), vec![big(-3), big(1)]);
        assert_eq!(boxed_coeffs(2), vec![big(15), big(-8), big(1)]);
        assert_eq!(boxed_coeffs(0), vec![big(1)]);
    }

    #[test]
    fn boxed_coeffs_are_negated_prefix_sums_of_signed_odd_coeffs() {
        for k in 0..=8 {
            let b = boxed_coeffs(k);
            let c = signed_odd_coeffs(k + 1);
            for j in 0..=k {
                let prefix: BigInt = c[..=j].iter().sum();
                assert_eq!(b[j], -prefix, "k = {k}, j = {j}");
            }
        }
        // with absolute values the relation fails already at k = 1
        let abs = odd_cycle_counts(2);
        assert_ne!(boxed_coeffs(1)[1], -(&abs[0] + &abs[1]));
    }
}
