use std::collections::HashMap;
use std::fmt;

use crate::error::{guard, Result};
use crate::limits::Limits;

use super::FinitePoset;

/// An ordered partition `(A_1; …; A_k)` of a finite set of coordinates,
/// each block stored as a bitmask (bit `i-1` for coordinate `i`).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct OrderedPartition(pub Vec<u32>);

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .0
            .iter()
            .map(|&b| {
                (1..=32)
                    .filter(|i| b >> (i - 1) & 1 == 1)
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "({})", blocks.join(";"))
    }
}

fn all_ordered(universe: u32) -> Vec<OrderedPartition> {
    if universe == 0 {
        return vec![OrderedPartition(vec![])];
    }
    let mut out = Vec::new();
    // nonempty submasks of `universe` as first block
    let mut sub = universe;
    loop {
        if sub != 0 {
            for mut rest in all_ordered(universe & !sub) {
                rest.0.insert(0, sub);
                out.push(rest);
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & universe;
    }
    out
}

/// Ordered partitions of `{1..n}`, with `coarser ≥ finer`: covers merge two
/// adjacent blocks.
pub fn ordered_partitions(n: usize) -> Result<(FinitePoset, Vec<OrderedPartition>)> {
    ordered_partitions_limited(n, Limits::global().max_poset)
}

pub fn ordered_partitions_limited(
    n: usize,
    limit: usize,
) -> Result<(FinitePoset, Vec<OrderedPartition>)> {
    guard("n for ordered partitions", "MAX_POSET", n, limit)?;
    let universe = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    partitions_of(universe)
}

/// Ordered partitions of an arbitrary coordinate set.
pub(crate) fn partitions_of(universe: u32) -> Result<(FinitePoset, Vec<OrderedPartition>)> {
    let mut parts = all_ordered(universe);
    parts.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.cmp(b)));
    let index: HashMap<&OrderedPartition, usize> =
        parts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut gens = Vec::new();
    for (x, p) in parts.iter().enumerate() {
        for i in 0..p.0.len().saturating_sub(1) {
            let mut q = p.0.clone();
            let merged = q[i] | q[i + 1];
            q.splice(i..i + 2, [merged]);
            gens.push((x, index[&OrderedPartition(q)]));
        }
    }
    let labels = parts.iter().map(|p| p.to_string()).collect();
    let poset = FinitePoset::from_generators(labels, &gens)?;
    Ok((poset, parts))
}

/// The Boolean lattice of subsets of `]i, j[`. A point when `j <= i + 1`
/// and empty when `i > j`.
pub fn interval_lattice(i: usize, j: usize) -> FinitePoset {
    if i > j {
        return FinitePoset::empty();
    }
    let inner: Vec<usize> = (i + 1..j).collect();
    let k = inner.len();
    let labels: Vec<String> = (0u32..1 << k)
        .map(|m| {
            let xs: Vec<String> = (0..k)
                .filter(|t| m >> t & 1 == 1)
                .map(|t| inner[t].to_string())
                .collect();
            format!("{{{}}}", xs.join(","))
        })
        .collect();
    let mut gens = Vec::new();
    for m in 0u32..1 << k {
        for t in 0..k {
            if m >> t & 1 == 0 {
                gens.push((m as usize, (m | 1 << t) as usize));
            }
        }
    }
    FinitePoset::from_generators(labels, &gens).expect("boolean lattice")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fubini_counts_and_extremes() {
        let fubini = [1usize, 1, 3, 13, 75, 541];
        for n in 0..=5 {
            let (p, parts) = ordered_partitions(n).unwrap();
            assert_eq!(p.len(), fubini[n]);
            if n == 0 {
                continue;
            }
            let top = p.greatest().unwrap();
            assert_eq!(parts[top].0.len(), 1);
            let mins = p.minimal_elements();
            assert_eq!(mins.len(), (1..=n).product::<usize>());
            assert!(mins.iter().all(|&m| parts[m].0.len() == n));
        }
    }

    #[test]
    fn all_lubs_exist() {
        let (p, _) = ordered_partitions(3).unwrap();
        for x in 0..p.len() {
            for y in 0..p.len() {
                assert!(p.lub(&[x, y]).is_some());
            }
        }
    }

    #[test]
    fn intervals() {
        assert_eq!(interval_lattice(2, 3).len(), 1);
        assert_eq!(interval_lattice(3, 3).len(), 1);
        assert_eq!(interval_lattice(4, 3).len(), 0);
        let l = interval_lattice(0, 4);
        assert_eq!(l.len(), 8);
        assert_eq!(l.label(l.greatest().unwrap()), "{1,2,3}");
    }

    #[test]
    fn display() {
        assert_eq!(OrderedPartition(vec![0b001, 0b110]).to_string(), "(1;2,3)");
    }
}
