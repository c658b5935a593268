//! Paths in a loop-free cubical complex and the preorder generated by
//! exchanging the two boundary paths of a square.

use std::collections::{BTreeMap, HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::cubeset::{CubeElement, CubicalComplex, SubcomplexOfCube};
use crate::error::{guard, Error, Result};
use crate::limits::Limits;
use crate::posets::{bruhat, FinitePoset, Permutation};
use crate::vertex::Vertex;

/// Fails with `LoopDetected` when the nondegenerate edges contain a
/// directed cycle (self-loops included).
pub fn check_loop_free(c: &CubicalComplex) -> Result<()> {
    let nv = c.count(0);
    let mut indeg = vec![0usize; nv];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for e in 0..c.count(1) {
        let (s, t) = c.edge_ends(e);
        out[s].push(t);
        indeg[t] += 1;
    }
    let mut queue: VecDeque<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop_front() {
        seen += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    if seen < nv {
        return Err(Error::LoopDetected(format!(
            "{} vertices lie on directed cycles of edges",
            nv - seen
        )));
    }
    Ok(())
}

fn edge_step(e: &CubeElement) -> Option<usize> {
    (e.dim == 1).then_some(e.cell)
}

/// The two boundary paths of a square `q`, with degenerate steps dropped:
/// `(q∂_{1,0} · q∂_{2,1}, q∂_{2,0} · q∂_{1,1})`. The first leads to the
/// second.
pub fn square_move(c: &CubicalComplex, q: usize) -> (Vec<usize>, Vec<usize>) {
    let f = |i, e| c.face(2, q, i, e);
    let src = [f(1, false), f(2, true)].into_iter().filter_map(edge_step).collect();
    let dst = [f(2, false), f(1, true)].into_iter().filter_map(edge_step).collect();
    (src, dst)
}

/// All paths `a -> b` as sequences of nondegenerate edges, sorted.
pub fn paths(c: &CubicalComplex, a: usize, b: usize) -> Result<Vec<Vec<usize>>> {
    check_loop_free(c)?;
    if a >= c.count(0) || b >= c.count(0) {
        return Err(Error::IndexOutOfRange(format!("vertices {a}, {b}")));
    }
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); c.count(0)];
    for e in 0..c.count(1) {
        out_edges[c.edge_ends(e).0].push(e);
    }
    let limit = Limits::global().max_simplices;
    let mut found = Vec::new();
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(a, vec![])];
    while let Some((v, acc)) = stack.pop() {
        if v == b {
            found.push(acc.clone());
            guard("paths", "MAX_SIMPLICES", found.len(), limit)?;
        }
        for &e in &out_edges[v] {
            let mut next = acc.clone();
            next.push(e);
            stack.push((c.edge_ends(e).1, next));
        }
    }
    found.sort();
    Ok(found)
}

/// The paths from `a` to `b` with the reflexive transitive closure of the
/// square moves.
#[derive(Clone, Debug)]
pub struct PathPreorder {
    pub a: usize,
    pub b: usize,
    paths: Vec<Vec<usize>>,
    vertices: Vec<Vec<usize>>,
    moves: Vec<(usize, usize)>,
    reach: Vec<FixedBitSet>,
    labels: Vec<String>,
}

impl PathPreorder {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn path(&self, i: usize) -> &[usize] {
        &self.paths[i]
    }

    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    /// Vertices visited by path `i`, endpoints included.
    pub fn vertex_sequence(&self, i: usize) -> &[usize] {
        &self.vertices[i]
    }

    pub fn index_of(&self, edges: &[usize]) -> Option<usize> {
        self.paths.binary_search_by(|p| p.as_slice().cmp(edges)).ok()
    }

    /// Single square moves `(from, to)`.
    pub fn moves(&self) -> &[(usize, usize)] {
        &self.moves
    }

    pub fn leadsto(&self, i: usize, j: usize) -> bool {
        self.reach[i].contains(j)
    }

    pub fn is_partial_order(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| i == j || !(self.leadsto(i, j) && self.leadsto(j, i))))
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn to_poset(&self) -> Result<FinitePoset> {
        if !self.is_partial_order() {
            return Err(Error::NotAPartialOrder("two distinct paths lead to each other".into()));
        }
        FinitePoset::from_relation(self.labels.clone(), |i, j| self.leadsto(i, j))
    }
}

/// The preorder `⤳` on paths `a -> b`.
pub fn leadsto_closure(c: &CubicalComplex, a: usize, b: usize) -> Result<PathPreorder> {
    let ps = paths(c, a, b)?;
    let index: HashMap<&[usize], usize> = ps.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let squares: Vec<(Vec<usize>, Vec<usize>)> = (0..c.count(2))
        .map(|q| square_move(c, q))
        .filter(|(s, t)| !s.is_empty() && s != t)
        .collect();
    let mut moves = Vec::new();
    for (i, p) in ps.iter().enumerate() {
        for (s, t) in &squares {
            if s.len() > p.len() {
                continue;
            }
            for k in 0..=p.len() - s.len() {
                if p[k..k + s.len()] == s[..] {
                    let mut q = p[..k].to_vec();
                    q.extend_from_slice(t);
                    q.extend_from_slice(&p[k + s.len()..]);
                    let j = *index.get(q.as_slice()).expect("a move yields a path");
                    moves.push((i, j));
                }
            }
        }
    }
    moves.sort_unstable();
    moves.dedup();
    let n = ps.len();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(i, j) in &moves {
        succ[i].push(j);
    }
    let reach = (0..n)
        .map(|i| {
            let mut seen = FixedBitSet::with_capacity(n);
            let mut stack = vec![i];
            seen.insert(i);
            while let Some(x) = stack.pop() {
                for &y in &succ[x] {
                    if !seen.contains(y) {
                        seen.insert(y);
                        stack.push(y);
                    }
                }
            }
            seen
        })
        .collect();
    let vertices: Vec<Vec<usize>> = ps
        .iter()
        .map(|p| {
            let mut v = vec![a];
            v.extend(p.iter().map(|&e| c.edge_ends(e).1));
            v
        })
        .collect();
    let base: Vec<String> = vertices
        .iter()
        .map(|vs| vs.iter().map(|&v| c.vertex_names()[v].clone()).collect::<Vec<_>>().join("-"))
        .collect();
    // parallel edges give equal vertex sequences; name the edges then
    let labels = base
        .iter()
        .zip(&ps)
        .map(|(l, p)| {
            if base.iter().filter(|m| *m == l).count() > 1 {
                let edges: Vec<String> = p.iter().map(|e| format!("e{e}")).collect();
                format!("{l} via {}", edges.join(","))
            } else {
                l.clone()
            }
        })
        .collect();
    Ok(PathPreorder {
        a,
        b,
        paths: ps,
        vertices,
        moves,
        reach,
        labels,
    })
}

/// Removes repeated consecutive vertices from a weakly increasing sequence,
/// giving the canonical representative of a path in a cube.
pub fn kappa(seq: &[Vertex]) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = Vec::with_capacity(seq.len());
    for &v in seq {
        if out.last() != Some(&v) {
            out.push(v);
        }
    }
    out
}

/// Coordinates switched on at each step of a path of cube vertices.
pub fn step_sequence(seq: &[Vertex]) -> Permutation {
    seq.windows(2)
        .map(|w| (w[1].bits() & !w[0].bits()).trailing_zeros() as u8 + 1)
        .collect()
}

/// The comparison between paths `a -> b` in `□^n` and orderings of `b∖a`.
#[derive(Clone, Debug)]
pub struct BruhatComparison {
    pub paths: PathPreorder,
    pub path_poset: FinitePoset,
    pub bruhat: FinitePoset,
    pub perms: Vec<Permutation>,
    /// `psi[i]` is the Bruhat element of path `i`.
    pub psi: Vec<usize>,
    pub is_isomorphism: bool,
}

/// Builds `Ψ` for `a ≼ b` in `□^n` and checks that it is an order
/// isomorphism. Returns `None` when `a ⋠ b`.
pub fn bruhat_compare(n: usize, a: Vertex, b: Vertex) -> Result<Option<BruhatComparison>> {
    guard("cube dimension", "MAX_CUBE", n, Limits::global().max_cube)?;
    if !a.leq(&b) {
        return Ok(None);
    }
    let (c, labels) = SubcomplexOfCube::standard(n).to_complex();
    let at = |v: Vertex| labels.iter().position(|&w| w == v).expect("vertex of the cube");
    let pre = leadsto_closure(&c, at(a), at(b))?;
    let path_poset = pre.to_poset()?;
    let coords: Vec<u8> = (1..=n as u8).filter(|&i| b.get(i as usize) && !a.get(i as usize)).collect();
    let (bru, perms) = bruhat(&coords)?;
    let pos: HashMap<&Permutation, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let psi: Vec<usize> = (0..pre.len())
        .map(|i| {
            let vs: Vec<Vertex> = pre.vertex_sequence(i).iter().map(|&v| labels[v]).collect();
            pos[&step_sequence(&vs)]
        })
        .collect();
    let is_isomorphism = path_poset.is_isomorphism(&bru, &psi);
    Ok(Some(BruhatComparison {
        paths: pre,
        path_poset,
        bruhat: bru,
        perms,
        psi,
        is_isomorphism,
    }))
}

/// Objects, hom preorders and composition by concatenation.
#[derive(Clone, Debug)]
pub struct PathCategory {
    pub objects: usize,
    homs: BTreeMap<(usize, usize), PathPreorder>,
}

impl PathCategory {
    pub fn hom(&self, a: usize, b: usize) -> &PathPreorder {
        &self.homs[&(a, b)]
    }

    pub fn identity(&self, a: usize) -> usize {
        self.hom(a, a).index_of(&[]).expect("constant path")
    }

    /// `g ∘ f` for `f ∈ hom(a, b)` and `g ∈ hom(b, c)`.
    pub fn compose(&self, a: usize, b: usize, c: usize, f: usize, g: usize) -> usize {
        let mut p = self.hom(a, b).path(f).to_vec();
        p.extend_from_slice(self.hom(b, c).path(g));
        self.hom(a, c).index_of(&p).expect("concatenation is a path")
    }
}

pub fn path_category(c: &CubicalComplex) -> Result<PathCategory> {
    check_loop_free(c)?;
    let nv = c.count(0);
    let mut homs = BTreeMap::new();
    for a in 0..nv {
        for b in 0..nv {
            homs.insert((a, b), leadsto_closure(c, a, b)?);
        }
    }
    Ok(PathCategory { objects: nv, homs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubeset::counterexample_x;
    use crate::necklace::Necklace;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn cube_path_counts() {
        for n in 0..=4 {
            let (c, _) = SubcomplexOfCube::standard(n).to_complex();
            let (a, b) = (0, c.count(0) - 1);
            let pre = leadsto_closure(&c, a, b).unwrap();
            assert_eq!(pre.len(), factorial(n));
            assert!(pre.is_partial_order());
            assert_eq!(paths(&c, a, a).unwrap(), vec![Vec::<usize>::new()]);
        }
    }

    #[test]
    fn square_has_one_move() {
        let cmp = bruhat_compare(2, Vertex::alpha(2), Vertex::omega(2)).unwrap().unwrap();
        assert_eq!(cmp.paths.moves().len(), 1);
        let (from, to) = cmp.paths.moves()[0];
        assert_eq!(cmp.perms[cmp.psi[from]], vec![2, 1]);
        assert_eq!(cmp.perms[cmp.psi[to]], vec![1, 2]);
    }

    #[test]
    fn cubes_give_bruhat_orders() {
        for n in 1..=3 {
            for a in crate::vertex::vertices(n) {
                for b in crate::vertex::vertices(n) {
                    match bruhat_compare(n, a, b).unwrap() {
                        Some(cmp) => assert!(cmp.is_isomorphism, "{a} {b}"),
                        None => assert!(!a.leq(&b)),
                    }
                }
            }
        }
    }

    #[test]
    fn loops_are_rejected() {
        let mut c = CubicalComplex::new();
        c.add_vertex("x");
        c.add_cell(1, vec![CubeElement::nondegenerate(0, 0); 2]).unwrap();
        assert!(matches!(paths(&c, 0, 0), Err(Error::LoopDetected(_))));
    }

    #[test]
    fn counterexample_chain() {
        let x = counterexample_x().unwrap();
        let pre = leadsto_closure(&x.complex, x.source, x.target).unwrap();
        assert_eq!(pre.len(), 3);
        let u = pre.index_of(&[x.u]).unwrap();
        let v = pre.index_of(&[x.v]).unwrap();
        let w = pre.index_of(&[x.w]).unwrap();
        assert!(pre.leadsto(u, v) && pre.leadsto(v, w) && pre.leadsto(u, w));
        assert!(!pre.leadsto(w, u));
    }

    #[test]
    fn kappa_removes_repeats() {
        let v = |s| Vertex::parse(s).unwrap();
        assert_eq!(
            kappa(&[v("00"), v("00"), v("10"), v("10"), v("11")]),
            vec![v("00"), v("10"), v("11")]
        );
    }

    #[test]
    fn composition_is_monotone_in_the_three_cube() {
        let (c, _) = SubcomplexOfCube::standard(3).to_complex();
        let pc = path_category(&c).unwrap();
        let nv = pc.objects;
        for a in 0..nv {
            for b in 0..nv {
                for d in 0..nv {
                    let (f, g) = (pc.hom(a, b), pc.hom(b, d));
                    for f1 in 0..f.len() {
                        for f2 in 0..f.len() {
                            if !f.leadsto(f1, f2) {
                                continue;
                            }
                            for g1 in 0..g.len() {
                                for g2 in 0..g.len() {
                                    if g.leadsto(g1, g2) {
                                        let l = pc.compose(a, b, d, f1, g1);
                                        let r = pc.compose(a, b, d, f2, g2);
                                        assert!(pc.hom(a, d).leadsto(l, r));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            let id = pc.identity(a);
            assert!(pc.hom(a, a).path(id).is_empty());
        }
    }

    #[test]
    fn necklace_paths_split_over_joints() {
        let t = Necklace::new(vec![2, 1, 2]).unwrap();
        let (c, labels) = t.to_complex();
        let at = |v: Vertex| labels.iter().position(|&w| w == v).unwrap();
        let whole = leadsto_closure(&c, at(t.alpha()), at(t.omega())).unwrap();
        assert_eq!(whole.len(), 2 * 1 * 2);
        let poset = whole.to_poset().unwrap();
        let beads: Vec<FinitePoset> = t.beads().iter().map(|&m| {
            let coords: Vec<u8> = (1..=m as u8).collect();
            bruhat(&coords).unwrap().0
        }).collect();
        let prod = FinitePoset::product_all(&beads);
        assert_eq!(poset.covers().len(), prod.covers().len());
    }
}
