use std::collections::HashMap;

use crate::error::{guard, Result};
use crate::limits::Limits;
use crate::sset::{Element, SSetMap, SimplexOp, TruncSSet};

use super::FinitePoset;

/// The nerve of a poset. Nondegenerate `k`-simplices are strict chains
/// `x_0 < … < x_k`; weakly increasing chains are their degeneracies.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub sset: TruncSSet,
    chains: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
}

impl Nerve {
    pub fn chain(&self, k: usize, x: usize) -> &[u32] {
        &self.chains[k][x]
    }

    /// The simplex given by a weakly increasing chain.
    pub fn element(&self, chain: &[u32]) -> Option<Element> {
        let (distinct, op) = SimplexOp::collapse(chain);
        let k = distinct.len() - 1;
        let cell = *self.index.get(k)?.get(&distinct)?;
        Some(Element { dim: k, cell, op })
    }
}

/// Nerve truncated at `top`, which defaults to the number of elements of a
/// longest chain (one above the highest nondegenerate simplex).
pub fn nerve(p: &FinitePoset, top: Option<usize>) -> Result<Nerve> {
    let top = top.unwrap_or_else(|| p.longest_chain());
    let limit = Limits::global().max_simplices;
    let n = p.len();
    let succ: Vec<Vec<u32>> = (0..n)
        .map(|x| p.up_set(x).ones().filter(|&y| y != x).map(|y| y as u32).collect())
        .collect();
    let mut chains: Vec<Vec<Vec<u32>>> = vec![Vec::new(); top + 1];
    let mut total = 0usize;
    let mut stack: Vec<Vec<u32>> = (0..n as u32).rev().map(|x| vec![x]).collect();
    while let Some(c) = stack.pop() {
        let k = c.len() - 1;
        total += 1;
        guard("nerve simplices", "MAX_SIMPLICES", total, limit)?;
        let last = *c.last().expect("nonempty") as usize;
        if k < top {
            for &y in succ[last].iter().rev() {
                let mut d = c.clone();
                d.push(y);
                stack.push(d);
            }
        }
        chains[k].push(c);
    }
    for layer in &mut chains {
        layer.sort_unstable();
    }
    let mut sset = TruncSSet::new(top);
    let mut index: Vec<HashMap<Vec<u32>, usize>> = vec![HashMap::new(); top + 1];
    for k in 0..=top {
        for c in &chains[k] {
            let label = c
                .iter()
                .map(|&x| p.label(x as usize))
                .collect::<Vec<_>>()
                .join("<");
            let faces = if k == 0 {
                vec![]
            } else {
                (0..=k)
                    .map(|i| {
                        let mut d = c.clone();
                        d.remove(i);
                        Element::nondegenerate(k - 1, index[k - 1][&d])
                    })
                    .collect()
            };
            let id = sset.add_simplex(k, label, faces)?;
            index[k].insert(c.clone(), id);
        }
    }
    Ok(Nerve {
        sset,
        chains,
        index,
    })
}

/// The simplicial map induced by a monotone map of elements.
pub fn nerve_map(src: &Nerve, dst: &Nerve, f: impl Fn(usize) -> usize) -> SSetMap {
    let images = (0..=src.sset.top_dim())
        .map(|k| {
            src.chains[k]
                .iter()
                .map(|c| {
                    let img: Vec<u32> = c.iter().map(|&x| f(x as usize) as u32).collect();
                    dst.element(&img).expect("monotone map into the target nerve")
                })
                .collect()
        })
        .collect();
    SSetMap { images }
}
