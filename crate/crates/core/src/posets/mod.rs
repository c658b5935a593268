//! Finite posets: relation matrix, Hasse covers and the constructions used
//! by the rigidification (Bruhat orders, ordered partitions, intervals).

mod bruhat;
mod nerve;
mod partitions;

use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};

pub use bruhat::{bruhat, bruhat_limited, inversions, perm_label, Permutation};
pub use nerve::{nerve, nerve_map, Nerve};
pub use partitions::{interval_lattice, ordered_partitions, ordered_partitions_limited, OrderedPartition};

/// A finite poset. `up[x]` holds every `y` with `x ≤ y`.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    labels: Vec<String>,
    up: Vec<FixedBitSet>,
    covers: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct PosetJson<'a> {
    elements: &'a [String],
    covers: &'a [(usize, usize)],
}

impl FinitePoset {
    /// Reflexive-transitive closure of `gens`; fails on a directed cycle.
    pub fn from_generators(labels: Vec<String>, gens: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(x, y) in gens {
            if x >= n || y >= n {
                return Err(Error::IndexOutOfRange(format!("relation ({x},{y}) on {n} elements")));
            }
            if x != y {
                succ[x].push(y);
            }
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        let mut indeg = vec![0usize; n];
        for s in &succ {
            for &y in s {
                indeg[y] += 1;
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in &succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    stack.push(y);
                }
            }
        }
        if order.len() != n {
            return Err(Error::NotAPartialOrder("generating relation has a cycle".into()));
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &x in order.iter().rev() {
            let mut s = FixedBitSet::with_capacity(n);
            s.insert(x);
            for &y in &succ[x] {
                s.union_with(&up[y]);
            }
            up[x] = s;
        }
        let mut covers = Vec::new();
        for x in 0..n {
            for &y in &succ[x] {
                // y covers x unless some other generator successor z of x has z < y
                let covered = succ[x].iter().any(|&z| z != y && up[z].contains(y));
                if !covered {
                    covers.push((x, y));
                }
            }
        }
        covers.sort_unstable();
        Ok(FinitePoset { labels, up, covers })
    }

    /// Builds a poset from a relation predicate, checking the axioms.
    pub fn from_relation(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for x in 0..n {
            for y in 0..n {
                if leq(x, y) {
                    up[x].insert(y);
                }
            }
        }
        for x in 0..n {
            if !up[x].contains(x) {
                return Err(Error::NotAPartialOrder(format!("{} ≰ itself", labels[x])));
            }
            for y in up[x].ones() {
                if y != x && up[y].contains(x) {
                    return Err(Error::NotAPartialOrder(format!(
                        "{} and {} are distinct but equivalent",
                        labels[x], labels[y]
                    )));
                }
                if !up[y].is_subset(&up[x]) {
                    return Err(Error::NotAPartialOrder("relation is not transitive".into()));
                }
            }
        }
        let covers = reduction(&up);
        Ok(FinitePoset { labels, up, covers })
    }

    pub fn empty() -> Self {
        FinitePoset {
            labels: vec![],
            up: vec![],
            covers: vec![],
        }
    }

    pub fn point() -> Self {
        FinitePoset::from_generators(vec!["*".into()], &[]).expect("point")
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        let gens: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        FinitePoset::from_generators((0..n).map(|i| i.to_string()).collect(), &gens)
            .expect("chain")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// Hasse covers `(x, y)` with `x ⋖ y`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&y| !(0..self.len()).any(|x| self.lt(x, y)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.up[x].count_ones(..) == 1)
            .collect()
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.len()).find(|&x| self.up[x].count_ones(..) == self.len())
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.len()).find(|&y| (0..self.len()).all(|x| self.leq(x, y)))
    }

    pub fn is_bounded(&self) -> bool {
        self.least().is_some() && self.greatest().is_some()
    }

    /// Least upper bound of a nonempty set, if it exists.
    pub fn lub(&self, xs: &[usize]) -> Option<usize> {
        let mut common = FixedBitSet::with_capacity(self.len());
        common.insert_range(..);
        for &x in xs {
            common.intersect_with(&self.up[x]);
        }
        common
            .ones()
            .find(|&u| common.ones().all(|v| self.leq(u, v)))
    }

    /// Number of elements in a longest chain.
    pub fn longest_chain(&self) -> usize {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        // sorting by the size of the up-set is a linear extension
        order.sort_by_key(|&x| std::cmp::Reverse(self.up[x].count_ones(..)));
        let mut best = vec![0usize; n];
        for &y in &order {
            let b = (0..n)
                .filter(|&x| self.lt(x, y))
                .map(|x| best[x])
                .max()
                .unwrap_or(0);
            best[y] = b + 1;
        }
        best.into_iter().max().unwrap_or(0)
    }

    pub fn opposite(&self) -> Self {
        FinitePoset::from_relation(self.labels.clone(), |x, y| self.leq(y, x)).expect("opposite")
    }

    /// Induced subposet on `elems`, in the given order.
    pub fn subposet(&self, elems: &[usize]) -> Self {
        let labels = elems.iter().map(|&x| self.labels[x].clone()).collect();
        FinitePoset::from_relation(labels, |i, j| self.leq(elems[i], elems[j]))
            .expect("induced order")
    }

    /// Product order; element `(p, q)` has index `p * other.len() + q`.
    pub fn product(&self, other: &FinitePoset) -> Self {
        let m = other.len();
        let mut labels = Vec::with_capacity(self.len() * m);
        for p in 0..self.len() {
            for q in 0..m {
                labels.push(format!("{}|{}", self.labels[p], other.labels[q]));
            }
        }
        let mut gens = Vec::new();
        for &(p, p2) in &self.covers {
            for q in 0..m {
                gens.push((p * m + q, p2 * m + q));
            }
        }
        for p in 0..self.len() {
            for &(q, q2) in &other.covers {
                gens.push((p * m + q, p * m + q2));
            }
        }
        FinitePoset::from_generators(labels, &gens).expect("product of posets")
    }

    /// Product of a list of posets; the empty product is a point.
    pub fn product_all(ps: &[FinitePoset]) -> Self {
        let mut acc = FinitePoset::point();
        let mut first = true;
        for p in ps {
            acc = if first { p.clone() } else { acc.product(p) };
            first = false;
        }
        acc
    }

    /// Glue the top of `self` to the bottom of `other`. Elements of `self`
    /// come first; `other`'s bottom is identified with `self`'s top.
    pub fn wedge(&self, other: &FinitePoset) -> Result<Self> {
        let top = self.greatest().ok_or(Error::Unbounded)?;
        let bot = other.least().ok_or(Error::Unbounded)?;
        self.least().ok_or(Error::Unbounded)?;
        other.greatest().ok_or(Error::Unbounded)?;
        let mut map = Vec::with_capacity(other.len());
        let mut labels = self.labels.clone();
        for q in 0..other.len() {
            if q == bot {
                map.push(top);
            } else {
                map.push(labels.len());
                labels.push(other.labels[q].clone());
            }
        }
        let mut gens: Vec<(usize, usize)> = self.covers.clone();
        gens.extend(other.covers.iter().map(|&(x, y)| (map[x], map[y])));
        FinitePoset::from_generators(labels, &gens)
    }

    pub fn is_downward_closed(&self, set: &[usize]) -> bool {
        let mut mark = vec![false; self.len()];
        for &x in set {
            mark[x] = true;
        }
        set.iter()
            .all(|&y| (0..self.len()).all(|x| !self.leq(x, y) || mark[x]))
    }

    pub fn is_upward_closed(&self, set: &[usize]) -> bool {
        let mut mark = vec![false; self.len()];
        for &x in set {
            mark[x] = true;
        }
        set.iter().all(|&x| self.up[x].ones().all(|y| mark[y]))
    }

    /// Smallest downward-closed set containing `set`, sorted.
    pub fn down_closure(&self, set: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| set.iter().any(|&y| self.leq(x, y)))
            .collect()
    }

    /// Checks that `f` is an order isomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &FinitePoset, f: &[usize]) -> bool {
        if f.len() != self.len() || other.len() != self.len() {
            return false;
        }
        let mut seen = vec![false; other.len()];
        for &y in f {
            if y >= other.len() || seen[y] {
                return false;
            }
            seen[y] = true;
        }
        (0..self.len()).all(|x| {
            (0..self.len()).all(|y| self.leq(x, y) == other.leq(f[x], f[y]))
        })
    }

    /// Graphviz rendering with nodes and edges in index order.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", name.replace('"', "'"));
        let _ = writeln!(s, "  rankdir=BT;");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", l.replace('"', "'"));
        }
        for &(x, y) in &self.covers {
            let _ = writeln!(s, "  n{x} -> n{y};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PosetJson {
            elements: &self.labels,
            covers: &self.covers,
        })
        .expect("poset json")
    }

    pub fn label_index(&self) -> HashMap<&str, usize> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect()
    }
}

fn reduction(up: &[FixedBitSet]) -> Vec<(usize, usize)> {
    let n = up.len();
    let mut covers = Vec::new();
    for x in 0..n {
        let mut strict = up[x].clone();
        strict.set(x, false);
        let mut above = FixedBitSet::with_capacity(n);
        for z in strict.ones() {
            let mut s = up[z].clone();
            s.set(z, false);
            above.union_with(&s);
        }
        for y in strict.difference(&above) {
            covers.push((x, y));
        }
    }
    covers.sort_unstable();
    covers
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_is_rejected() {
        let r = FinitePoset::from_generators(vec!["a".into(), "b".into()], &[(0, 1), (1, 0)]);
        assert!(matches!(r, Err(Error::NotAPartialOrder(_))));
    }

    #[test]
    fn generators_versus_relation() {
        // a < b < c plus the redundant a < c
        let p = FinitePoset::from_generators(
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 1), (1, 2), (0, 2)],
        )
        .unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        let q = FinitePoset::from_relation(p.labels().to_vec(), |x, y| x <= y).unwrap();
        assert_eq!(q.covers(), p.covers());
        assert_eq!(p.longest_chain(), 3);
    }

    #[test]
    fn wedge_and_product() {
        let c2 = FinitePoset::chain(2);
        let c3 = FinitePoset::chain(3);
        let w = c2.wedge(&c3).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.longest_chain(), 4);
        let p = c2.product(&c3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.covers().len(), 7);
        assert!(p.is_bounded());
        let anti = FinitePoset::from_generators(vec!["x".into(), "y".into()], &[]).unwrap();
        assert!(matches!(anti.wedge(&c2), Err(Error::Unbounded)));
    }

    #[test]
    fn closures() {
        let c3 = FinitePoset::chain(3);
        assert!(c3.is_downward_closed(&[0, 1]));
        assert!(!c3.is_downward_closed(&[1]));
        assert!(c3.is_upward_closed(&[1, 2]));
        assert_eq!(c3.down_closure(&[1]), vec![0, 1]);
    }
}
