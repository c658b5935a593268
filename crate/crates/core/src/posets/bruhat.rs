use std::collections::HashMap;

use crate::error::{guard, Result};
use crate::limits::Limits;

use super::FinitePoset;

/// A sequence listing the elements of a finite set of coordinates.
pub type Permutation = Vec<u8>;

pub fn perm_label(p: &[u8]) -> String {
    if p.is_empty() {
        return "()".into();
    }
    if p.iter().all(|&x| x < 10) {
        p.iter().map(|x| x.to_string()).collect()
    } else {
        p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Pairs `(u, v)` with `u < v` and `v` listed before `u`.
pub fn inversions(p: &[u8]) -> Vec<(u8, u8)> {
    let mut out = Vec::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                out.push((p[j], p[i]));
            }
        }
    }
    out.sort_unstable();
    out
}

fn permutations(items: &[u8]) -> Vec<Permutation> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Bruhat poset on the orderings of `set`, generated by swapping an
/// adjacent pair `a_i > a_{i+1}` into increasing position. The decreasing
/// sequence is least and the increasing one greatest.
pub fn bruhat(set: &[u8]) -> Result<(FinitePoset, Vec<Permutation>)> {
    bruhat_limited(set, Limits::global().max_poset)
}

pub fn bruhat_limited(set: &[u8], limit: usize) -> Result<(FinitePoset, Vec<Permutation>)> {
    guard("|A| for Bruhat", "MAX_POSET", set.len(), limit)?;
    let mut items = set.to_vec();
    items.sort_unstable();
    items.dedup();
    let perms = permutations(&items);
    let index: HashMap<&[u8], usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    let mut gens = Vec::new();
    for (x, p) in perms.iter().enumerate() {
        for i in 0..p.len().saturating_sub(1) {
            if p[i] > p[i + 1] {
                let mut q = p.clone();
                q.swap(i, i + 1);
                gens.push((x, index[q.as_slice()]));
            }
        }
    }
    let labels = perms.iter().map(|p| perm_label(p)).collect();
    let poset = FinitePoset::from_generators(labels, &gens)?;
    Ok((poset, perms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: u8) -> Vec<u8> {
        (1..=n).collect()
    }

    #[test]
    fn golden_three() {
        let (p, _) = bruhat(&set(3)).unwrap();
        let mut got: Vec<(String, String)> = p
            .covers()
            .iter()
            .map(|&(x, y)| (p.label(x).to_string(), p.label(y).to_string()))
            .collect();
        got.sort();
        let mut want: Vec<(String, String)> = [
            ("321", "231"),
            ("321", "312"),
            ("231", "213"),
            ("312", "132"),
            ("213", "123"),
            ("132", "123"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn inversion_oracle_agrees() {
        for n in 0..=5u8 {
            let (p, perms) = bruhat(&set(n)).unwrap();
            let inv: Vec<Vec<(u8, u8)>> = perms.iter().map(|x| inversions(x)).collect();
            for x in 0..p.len() {
                for y in 0..p.len() {
                    let oracle = inv[y].iter().all(|e| inv[x].contains(e));
                    assert_eq!(p.leq(x, y), oracle, "{} vs {}", p.label(x), p.label(y));
                }
            }
        }
    }

    #[test]
    fn bounds_and_sizes() {
        for n in 0..=5u8 {
            let (p, perms) = bruhat(&set(n)).unwrap();
            assert_eq!(p.len(), (1..=n as usize).product::<usize>());
            let lo = p.least().unwrap();
            let hi = p.greatest().unwrap();
            assert!(perms[lo].windows(2).all(|w| w[0] > w[1]));
            assert!(perms[hi].windows(2).all(|w| w[0] < w[1]));
            assert_eq!(p.longest_chain(), n as usize * (n as usize).saturating_sub(1) / 2 + 1);
        }
        assert!(bruhat_limited(&set(7), 6).is_err());
    }

    #[test]
    fn arbitrary_coordinate_sets() {
        let (p, perms) = bruhat(&[2, 5]).unwrap();
        assert_eq!(perms[p.least().unwrap()], vec![5, 2]);
        assert_eq!(p.covers().len(), 1);
    }
}
