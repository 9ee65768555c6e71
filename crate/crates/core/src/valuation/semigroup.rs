use crate::Int;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Above this target the boolean table gives way to the residue table.
const TABLE_LIMIT: usize = 1 << 22;

/// Whether `n` is a non-negative integer combination of `gens`.
///
/// Non-positive generators are ignored; `0` is always contained.
pub fn semigroup_contains(gens: &[Int], n: &Int) -> bool {
    if n.is_zero() {
        return true;
    }
    if n.is_negative() {
        return false;
    }
    let gens: Vec<&Int> = gens.iter().filter(|g| g.is_positive()).collect();
    if gens.is_empty() {
        return false;
    }
    let g = gens.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    if !(n % &g).is_zero() {
        return false;
    }
    let gens: Vec<Int> = gens.iter().map(|x| *x / &g).collect();
    let n = n / &g;
    match n.to_usize() {
        Some(target) if target <= TABLE_LIMIT => contains_by_table(&gens, target),
        _ => contains_by_residues(&gens, &n),
    }
}

/// `reachable[k]` for every `k <= n`.
fn contains_by_table(gens: &[Int], n: usize) -> bool {
    let small: Vec<usize> = gens.iter().filter_map(|x| x.to_usize()).filter(|&x| x <= n).collect();
    let mut reachable = vec![false; n + 1];
    reachable[0] = true;
    for k in 1..=n {
        reachable[k] = small.iter().any(|&a| a <= k && reachable[k - a]);
    }
    reachable[n]
}

/// Least element of the semigroup in each residue class modulo the smallest
/// generator (shortest paths on the residues); `n` is contained iff it is at
/// least the least element of its class.
fn contains_by_residues(gens: &[Int], n: &Int) -> bool {
    let a = gens.iter().min().expect("non-empty").clone();
    let Some(size) = a.to_usize() else {
        return gens.iter().any(|x| x == n);
    };
    let mut least: Vec<Option<Int>> = vec![None; size];
    least[0] = Some(Int::zero());
    let mut done = vec![false; size];
    loop {
        let next = (0..size).filter(|&r| !done[r]).filter_map(|r| least[r].clone().map(|w| (w, r))).min();
        let Some((w, r)) = next else { break };
        done[r] = true;
        for x in gens {
            let cand = &w + x;
            let idx = (&cand % &a).to_usize().expect("residue fits");
            if least[idx].as_ref().is_none_or(|cur| &cand < cur) {
                least[idx] = Some(cand);
            }
        }
    }
    let idx = (n % &a).to_usize().expect("residue fits");
    least[idx].as_ref().is_some_and(|w| w <= n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn obstruction_values() {
        assert!(!semigroup_contains(&ints(&[16, 12]), &Int::from(20)));
        assert!(!semigroup_contains(&ints(&[4, 3]), &Int::from(5)));
        assert!(semigroup_contains(&ints(&[4, 3]), &Int::from(6)));
        assert!(semigroup_contains(&ints(&[7, 9]), &Int::from(0)));
        assert!(semigroup_contains(&[], &Int::from(0)));
        assert!(!semigroup_contains(&[], &Int::from(3)));
    }

    fn brute(gens: &[i64], n: i64) -> bool {
        if n == 0 {
            return true;
        }
        gens.iter().any(|&g| g > 0 && g <= n && brute(gens, n - g))
    }

    #[test]
    fn agrees_with_recursion() {
        for gens in [[3i64, 5, 0], [4, 6, 9], [6, 10, 15], [2, 2, 7]] {
            let big = ints(&gens);
            for n in 0..60 {
                assert_eq!(semigroup_contains(&big, &Int::from(n)), brute(&gens, n), "{gens:?} {n}");
            }
        }
    }

    #[test]
    fn residue_method_matches_table() {
        for gens in [[3i64, 5], [7, 11], [12, 18]] {
            let big = ints(&gens);
            for n in 0..200 {
                let n = Int::from(n);
                let g = big.iter().fold(Int::zero(), |a, x| a.gcd(x));
                let expect = (&n % &g).is_zero() && {
                    let red: Vec<Int> = big.iter().map(|x| x / &g).collect();
                    contains_by_table(&red, (&n / &g).to_usize().unwrap())
                };
                let red: Vec<Int> = big.iter().map(|x| x / &g).collect();
                let got = (&n % &g).is_zero() && contains_by_residues(&red, &(&n / &g));
                assert_eq!(got, expect);
            }
        }
    }

    #[test]
    fn huge_targets() {
        let gens = ints(&[1000, 1001]);
        let n: Int = Int::from(10).pow(30);
        assert!(semigroup_contains(&gens, &n));
        assert!(!semigroup_contains(&gens, &Int::from(1999)));
    }
}
