//! Colimits of diagrams of truncated simplicial sets, dimension by dimension.

use super::{Element, SSetMap, TruncSSet};
use crate::error::{Error, Result};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the smaller index as root.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// The colimit together with its legs `objects[o] -> colimit`.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub sset: TruncSSet,
    pub legs: Vec<SSetMap>,
}

/// Colimit of `objects` along `arrows` `(from, to, map)`.
///
/// A nondegenerate simplex of the colimit is a class of nondegenerate
/// simplices of the objects that no arrow sends to a degenerate one; a class
/// containing such an image is degenerate and is resolved through the
/// classes one dimension down.
pub fn colimit(objects: &[TruncSSet], arrows: &[(usize, usize, SSetMap)]) -> Result<Colimit> {
    let top = objects.first().map_or(0, |o| o.top_dim());
    for o in objects {
        if o.top_dim() != top {
            return Err(Error::BoundMismatch(top, o.top_dim()));
        }
    }
    for (from, to, _) in arrows {
        if *from >= objects.len() || *to >= objects.len() {
            return Err(Error::IndexOutOfRange(format!("arrow {from} -> {to}")));
        }
    }
    let mut out = TruncSSet::new(top);
    // std[k][o][x] = standard form in the colimit of simplex x of object o
    let mut std: Vec<Vec<Vec<Element>>> = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let mut offset = Vec::with_capacity(objects.len());
        let mut total = 0usize;
        for o in objects {
            offset.push(total);
            total += o.count(k);
        }
        let mut uf = UnionFind::new(total);
        let mut degenerate: Vec<Option<(usize, Element)>> = vec![None; total];
        for (from, to, f) in arrows {
            for x in 0..objects[*from].count(k) {
                let img = &f.images[k][x];
                let node = offset[*from] + x;
                if img.is_degenerate() {
                    degenerate[node] = Some((*to, img.clone()));
                } else {
                    uf.union(node, offset[*to] + img.cell);
                }
            }
        }
        // resolve degenerate marks to colimit standard forms
        let mut class_std: Vec<Option<Element>> = vec![None; total];
        for node in 0..total {
            if let Some((to, img)) = &degenerate[node] {
                let lower = &std[img.dim][*to][img.cell];
                let e = Element {
                    dim: lower.dim,
                    cell: lower.cell,
                    op: lower.op.after(&img.op),
                };
                let root = uf.find(node);
                match &class_std[root] {
                    Some(prev) if prev != &e => {
                        return Err(Error::Invalid(format!(
                            "inconsistent degenerate images in dimension {k}"
                        )))
                    }
                    _ => class_std[root] = Some(e),
                }
            }
        }
        let mut cell_of_root: Vec<Option<usize>> = vec![None; total];
        let mut layer: Vec<Vec<Element>> = objects.iter().map(|o| Vec::with_capacity(o.count(k))).collect();
        for (o, obj) in objects.iter().enumerate() {
            for x in 0..obj.count(k) {
                let node = offset[o] + x;
                let root = uf.find(node);
                if let Some(e) = &class_std[root] {
                    layer[o].push(e.clone());
                    continue;
                }
                let cell = match cell_of_root[root] {
                    Some(c) => c,
                    None => {
                        let faces = if k == 0 {
                            vec![]
                        } else {
                            (0..=k)
                                .map(|i| {
                                    let fr = obj.face(k, x, i);
                                    let lower = &std[fr.dim][o][fr.cell];
                                    Element {
                                        dim: lower.dim,
                                        cell: lower.cell,
                                        op: lower.op.after(&fr.op),
                                    }
                                })
                                .collect()
                        };
                        let c = out.add_simplex(k, obj.label(k, x).to_string(), faces)?;
                        cell_of_root[root] = Some(c);
                        c
                    }
                };
                layer[o].push(Element::nondegenerate(k, cell));
            }
        }
        std.push(layer);
    }
    let legs = (0..objects.len())
        .map(|o| SSetMap {
            images: (0..=top).map(|k| std[k][o].clone()).collect(),
        })
        .collect();
    Ok(Colimit { sset: out, legs })
}
