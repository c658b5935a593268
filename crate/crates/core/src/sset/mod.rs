//! Truncated simplicial sets.
//!
//! Only nondegenerate simplices are stored. Every simplex is written
//! uniquely as `y·s` with `y` nondegenerate and `s` a surjection of the
//! simplex category (an [`Element`]); each face record of a nondegenerate
//! simplex is such a pair. Degeneracies act by precomposing `s`, so they
//! are available in every dimension up to the bound.

mod colimit;
mod homology;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use colimit::{colimit, Colimit};
pub use homology::{DegreeHomology, HomologyReport};

/// A monotone map `[p] -> [q]`, stored by its list of images.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SimplexOp {
    target: u8,
    images: SmallVec<[u8; 16]>,
}

impl SimplexOp {
    pub fn new(images: &[u8], target: usize) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::Invalid("simplex operator needs a nonempty source".into()));
        }
        if images.iter().any(|&x| x as usize > target) || !images.windows(2).all(|w| w[0] <= w[1]) {
            return Err(Error::Invalid(format!(
                "{images:?} is not a monotone map into [{target}]"
            )));
        }
        Ok(SimplexOp {
            target: target as u8,
            images: images.into(),
        })
    }

    pub fn identity(k: usize) -> Self {
        SimplexOp {
            target: k as u8,
            images: (0..=k as u8).collect(),
        }
    }

    /// `δ_i: [k-1] -> [k]`, missing `i`.
    pub fn face(k: usize, i: usize) -> Self {
        SimplexOp {
            target: k as u8,
            images: (0..=k as u8).filter(|&t| t as usize != i).collect(),
        }
    }

    /// `σ_i: [k+1] -> [k]`, hitting `i` twice.
    pub fn degeneracy(k: usize, i: usize) -> Self {
        SimplexOp {
            target: k as u8,
            images: (0..=k as u8 + 1)
                .map(|t| if t as usize <= i { t } else { t - 1 })
                .collect(),
        }
    }

    pub fn src_dim(&self) -> usize {
        self.images.len() - 1
    }

    pub fn target_dim(&self) -> usize {
        self.target as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.src_dim() == self.target_dim() && self.is_surjective()
    }

    pub fn is_surjective(&self) -> bool {
        self.images[0] == 0
            && *self.images.last().expect("nonempty") == self.target
            && self.images.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SimplexOp) -> SimplexOp {
        debug_assert_eq!(first.target_dim(), self.src_dim());
        SimplexOp {
            target: self.target,
            images: first.images.iter().map(|&t| self.images[t as usize]).collect(),
        }
    }

    /// Collapses repeated entries: for a list of values returns the distinct
    /// values and the surjection onto their positions.
    pub fn collapse<T: PartialEq + Clone>(values: &[T]) -> (Vec<T>, SimplexOp) {
        let mut distinct: Vec<T> = Vec::new();
        let mut images = SmallVec::new();
        for v in values {
            if distinct.last() != Some(v) {
                distinct.push(v.clone());
            }
            images.push((distinct.len() - 1) as u8);
        }
        let target = (distinct.len() - 1) as u8;
        (distinct, SimplexOp { target, images })
    }
}

impl fmt::Display for SimplexOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]->[{}]", xs.join(""), self.target)
    }
}

/// The simplex `cell·op` where `cell` is nondegenerate of dimension `dim`
/// and `op` a surjection onto `[dim]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Element {
    pub dim: usize,
    pub cell: usize,
    pub op: SimplexOp,
}

impl Element {
    pub fn nondegenerate(dim: usize, cell: usize) -> Self {
        Element {
            dim,
            cell,
            op: SimplexOp::identity(dim),
        }
    }

    pub fn simplex_dim(&self) -> usize {
        self.op.src_dim()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.op.is_identity()
    }
}

/// A simplicial set truncated at `top_dim`, stored by nondegenerate simplices.
#[derive(Clone, Debug)]
pub struct TruncSSet {
    top: usize,
    labels: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<Element>>>,
}

#[derive(Serialize, Deserialize)]
struct SimplexJson {
    label: String,
    /// `[dim, id, images...]` for each face.
    faces: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct SSetJson {
    top_dim: usize,
    simplices: Vec<Vec<SimplexJson>>,
}

impl TruncSSet {
    pub fn new(top: usize) -> Self {
        TruncSSet {
            top,
            labels: vec![Vec::new(); top + 1],
            faces: vec![Vec::new(); top + 1],
        }
    }

    pub fn point(top: usize) -> Self {
        let mut s = TruncSSet::new(top);
        s.add_vertex("*".into());
        s
    }

    pub fn add_vertex(&mut self, label: String) -> usize {
        self.labels[0].push(label);
        self.faces[0].push(Vec::new());
        self.labels[0].len() - 1
    }

    /// Adds a nondegenerate `k`-simplex with faces `d_0 … d_k`.
    pub fn add_simplex(&mut self, k: usize, label: String, faces: Vec<Element>) -> Result<usize> {
        if k > self.top {
            return Err(Error::DimensionMismatch(format!(
                "{k}-simplex above truncation {}",
                self.top
            )));
        }
        if k == 0 {
            return Ok(self.add_vertex(label));
        }
        if faces.len() != k + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{k}-simplex needs {} faces, got {}",
                k + 1,
                faces.len()
            )));
        }
        for e in &faces {
            if e.simplex_dim() != k - 1 || e.dim >= k || !e.op.is_surjective() {
                return Err(Error::Invalid(format!("bad face record {e:?} for a {k}-simplex")));
            }
            if e.cell >= self.count(e.dim) {
                return Err(Error::IndexOutOfRange(format!(
                    "face target {}-simplex #{} missing",
                    e.dim, e.cell
                )));
            }
        }
        self.labels[k].push(label);
        self.faces[k].push(faces);
        Ok(self.labels[k].len() - 1)
    }

    pub fn top_dim(&self) -> usize {
        self.top
    }

    /// Number of nondegenerate `k`-simplices.
    pub fn count(&self, k: usize) -> usize {
        self.labels.get(k).map_or(0, |l| l.len())
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..=self.top).map(|k| self.count(k)).collect()
    }

    /// Number of all `k`-simplices, degenerate ones included.
    pub fn total_count(&self, k: usize) -> u128 {
        (0..=k.min(self.top))
            .map(|j| self.count(j) as u128 * binomial(k as u128, j as u128))
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.count(0) == 0
    }

    pub fn label(&self, k: usize, x: usize) -> &str {
        &self.labels[k][x]
    }

    pub fn face(&self, k: usize, x: usize, i: usize) -> &Element {
        &self.faces[k][x][i]
    }

    /// Highest dimension with a nondegenerate simplex.
    pub fn dimension(&self) -> Option<usize> {
        (0..=self.top).rev().find(|&k| self.count(k) > 0)
    }

    pub fn is_one_skeletal(&self) -> bool {
        (2..=self.top).all(|k| self.count(k) == 0)
    }

    /// `x·θ` for a nondegenerate `k`-simplex `x` and `θ: [p] -> [k]`.
    pub fn act(&self, k: usize, x: usize, theta: &SimplexOp) -> Element {
        debug_assert_eq!(theta.target_dim(), k);
        let mut present = [false; 256];
        for &t in theta.images() {
            present[t as usize] = true;
        }
        match (0..=k).find(|&i| !present[i]) {
            None => Element {
                dim: k,
                cell: x,
                op: theta.clone(),
            },
            Some(i) => {
                // θ = δ_i ∘ θ'
                let images: SmallVec<[u8; 16]> = theta
                    .images()
                    .iter()
                    .map(|&t| if (t as usize) < i { t } else { t - 1 })
                    .collect();
                let rest = SimplexOp {
                    target: (k - 1) as u8,
                    images,
                };
                let rec = &self.faces[k][x][i];
                self.act(rec.dim, rec.cell, &rec.op.after(&rest))
            }
        }
    }

    pub fn act_element(&self, e: &Element, theta: &SimplexOp) -> Element {
        self.act(e.dim, e.cell, &e.op.after(theta))
    }

    pub fn element_face(&self, e: &Element, i: usize) -> Element {
        self.act_element(e, &SimplexOp::face(e.simplex_dim(), i))
    }

    pub fn element_degeneracy(&self, e: &Element, i: usize) -> Element {
        self.act_element(e, &SimplexOp::degeneracy(e.simplex_dim(), i))
    }

    /// Checks the record shapes and `d_i d_j = d_{j-1} d_i` for `i < j`.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for k in 1..=self.top {
            for x in 0..self.count(k) {
                for (i, e) in self.faces[k][x].iter().enumerate() {
                    if e.dim >= k || e.cell >= self.count(e.dim) || e.simplex_dim() != k - 1 {
                        out.push(format!("{k}-simplex #{x}: face {i} record {e:?} malformed"));
                    }
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for k in 2..=self.top {
            for x in 0..self.count(k) {
                let me = Element::nondegenerate(k, x);
                for j in 0..=k {
                    for i in 0..j {
                        let lhs = self.element_face(&self.element_face(&me, j), i);
                        let rhs = self.element_face(&self.element_face(&me, i), j - 1);
                        if lhs != rhs {
                            out.push(format!(
                                "{k}-simplex #{x} ({}): d{i}d{j} != d{}d{i}",
                                self.labels[k][x],
                                j - 1
                            ));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.top)
            .map(|k| if k % 2 == 0 { self.count(k) as i64 } else { -(self.count(k) as i64) })
            .sum()
    }

    /// Integer homology of the normalized chain complex.
    pub fn homology(&self) -> Result<HomologyReport> {
        homology::homology(self)
    }

    pub fn is_contractible_homologically(&self) -> Result<bool> {
        Ok(self.homology()?.is_point())
    }

    pub fn is_sphere_homologically(&self, n: usize) -> Result<bool> {
        Ok(self.homology()?.is_sphere(n))
    }

    /// Dimensionwise product; nondegenerate simplices are pairs
    /// `(x·σ, y·τ)` with `(σ, τ)` jointly injective.
    pub fn product(&self, other: &TruncSSet) -> Result<TruncSSet> {
        if self.top != other.top {
            return Err(Error::BoundMismatch(self.top, other.top));
        }
        let top = self.top;
        let mut out = TruncSSet::new(top);
        type Key = (usize, usize, SimplexOp, usize, usize, SimplexOp);
        let mut index: Vec<HashMap<Key, usize>> = vec![HashMap::new(); top + 1];
        for k in 0..=top {
            let mut cells: Vec<Key> = Vec::new();
            for p in 0..=k {
                let sp = surjections(k, p);
                for q in 0..=k {
                    let sq = surjections(k, q);
                    for s in &sp {
                        for t in &sq {
                            let joint = (0..k).all(|u| {
                                s.images[u] != s.images[u + 1] || t.images[u] != t.images[u + 1]
                            });
                            if !joint {
                                continue;
                            }
                            for x in 0..self.count(p) {
                                for y in 0..other.count(q) {
                                    cells.push((p, x, s.clone(), q, y, t.clone()));
                                }
                            }
                        }
                    }
                }
            }
            cells.sort();
            for key in cells {
                let (p, x, s, q, y, t) = key.clone();
                let label = format!(
                    "({}·{},{}·{})",
                    self.labels[p][x], s, other.labels[q][y], t
                );
                let faces = if k == 0 {
                    vec![]
                } else {
                    (0..=k)
                        .map(|i| {
                            let d = SimplexOp::face(k, i);
                            let a = self.act(p, x, &s.after(&d));
                            let b = other.act(q, y, &t.after(&d));
                            pair_standard_form(&a, &b, &index)
                        })
                        .collect()
                };
                let id = out.add_simplex(k, label, faces)?;
                index[k].insert(key, id);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let simplices = (0..=self.top)
            .map(|k| {
                (0..self.count(k))
                    .map(|x| SimplexJson {
                        label: self.labels[k][x].clone(),
                        faces: self.faces[k][x]
                            .iter()
                            .map(|e| {
                                let mut v = vec![e.dim, e.cell];
                                v.extend(e.op.images().iter().map(|&t| t as usize));
                                v
                            })
                            .collect(),
                    })
                    .collect()
            })
            .collect();
        serde_json::to_value(SSetJson {
            top_dim: self.top,
            simplices,
        })
        .expect("sset json")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: SSetJson = serde_json::from_value(v.clone())?;
        if j.simplices.len() != j.top_dim + 1 {
            return Err(Error::Invalid("simplices must list every dimension".into()));
        }
        let mut s = TruncSSet::new(j.top_dim);
        for (k, layer) in j.simplices.into_iter().enumerate() {
            for simp in layer {
                let faces = simp
                    .faces
                    .iter()
                    .map(|f| {
                        if f.len() < 3 {
                            return Err(Error::Invalid(format!("face record {f:?}")));
                        }
                        let imgs: Vec<u8> = f[2..].iter().map(|&t| t as u8).collect();
                        Ok(Element {
                            dim: f[0],
                            cell: f[1],
                            op: SimplexOp::new(&imgs, f[0])?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                s.add_simplex(k, simp.label, faces)?;
            }
        }
        let bad = s.validate();
        if !bad.is_empty() {
            return Err(Error::Invalid(bad.join("; ")));
        }
        Ok(s)
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut r = 1u128;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Surjections `[k] -> [p]`, ordered by images.
pub fn surjections(k: usize, p: usize) -> Vec<SimplexOp> {
    if p > k {
        return vec![];
    }
    let mut out = Vec::new();
    // choose which of the k steps t -> t+1 increase the value
    fn go(k: usize, p: usize, t: usize, cur: &mut Vec<u8>, out: &mut Vec<SimplexOp>) {
        if t == k {
            if *cur.last().expect("nonempty") as usize == p {
                out.push(SimplexOp {
                    target: p as u8,
                    images: cur.as_slice().into(),
                });
            }
            return;
        }
        let last = *cur.last().expect("nonempty");
        cur.push(last);
        go(k, p, t + 1, cur, out);
        cur.pop();
        if (last as usize) < p {
            cur.push(last + 1);
            go(k, p, t + 1, cur, out);
            cur.pop();
        }
    }
    go(k, p, 0, &mut vec![0], &mut out);
    out.sort();
    out
}

type PairKey = (usize, usize, SimplexOp, usize, usize, SimplexOp);

fn pair_standard_form(a: &Element, b: &Element, index: &[HashMap<PairKey, usize>]) -> Element {
    let k = a.simplex_dim();
    let pairs: Vec<(u8, u8)> = (0..=k).map(|t| (a.op.images[t], b.op.images[t])).collect();
    let (distinct, rho) = SimplexOp::collapse(&pairs);
    let r = distinct.len() - 1;
    let s = SimplexOp {
        target: a.op.target,
        images: distinct.iter().map(|p| p.0).collect(),
    };
    let t = SimplexOp {
        target: b.op.target,
        images: distinct.iter().map(|p| p.1).collect(),
    };
    let key = (a.dim, a.cell, s, b.dim, b.cell, t);
    let cell = *index[r].get(&key).expect("lower-dimensional pair present");
    Element {
        dim: r,
        cell,
        op: rho,
    }
}

/// A simplicial map, given on nondegenerate simplices.
#[derive(Clone, Debug, Default)]
pub struct SSetMap {
    pub images: Vec<Vec<Element>>,
}

impl SSetMap {
    pub fn apply(&self, dst: &TruncSSet, e: &Element) -> Element {
        let img = &self.images[e.dim][e.cell];
        dst.act_element(img, &e.op)
    }

    /// Injective in every dimension. By uniqueness of the standard form this
    /// holds iff nondegenerate simplices go injectively to nondegenerate ones.
    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        for layer in &self.images {
            for e in layer {
                if e.is_degenerate() || !seen.insert((e.dim, e.cell)) {
                    return false;
                }
            }
        }
        true
    }

    /// Commutes with faces.
    pub fn is_simplicial(&self, src: &TruncSSet, dst: &TruncSSet) -> bool {
        for k in 1..=src.top_dim() {
            for x in 0..src.count(k) {
                for i in 0..=k {
                    let lhs = self.apply(dst, src.face(k, x, i));
                    let rhs = dst.element_face(&self.images[k][x], i);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Nondegenerate simplices of the target hit by nondegenerate simplices.
    pub fn image_cells(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for e in self.images.iter().flatten() {
            if e.is_degenerate() {
                continue;
            }
            if out.len() <= e.dim {
                out.resize(e.dim + 1, Vec::new());
            }
            out[e.dim].push(e.cell);
        }
        for v in &mut out {
            v.sort_unstable();
            v.dedup();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Boundary of the 2-simplex as a hand-built simplicial set.
    fn triangle_boundary() -> TruncSSet {
        let mut s = TruncSSet::new(2);
        for v in ["0", "1", "2"] {
            s.add_vertex(v.into());
        }
        let e = |a: usize, b: usize| vec![Element::nondegenerate(0, b), Element::nondegenerate(0, a)];
        s.add_simplex(1, "01".into(), e(0, 1)).unwrap();
        s.add_simplex(1, "02".into(), e(0, 2)).unwrap();
        s.add_simplex(1, "12".into(), e(1, 2)).unwrap();
        s
    }

    #[test]
    fn operators() {
        let d = SimplexOp::face(2, 1);
        assert_eq!(d.images(), &[0, 2]);
        let s = SimplexOp::degeneracy(1, 0);
        assert_eq!(s.images(), &[0, 0, 1]);
        assert!(s.is_surjective());
        assert_eq!(s.after(&SimplexOp::face(2, 0)).images(), &[0, 1]);
        assert_eq!(surjections(3, 1).len(), 3);
        assert_eq!(surjections(4, 2).len(), 6);
    }

    #[test]
    fn degenerate_faces_are_resolved() {
        let s = triangle_boundary();
        let e = Element::nondegenerate(1, 0);
        let dege = s.element_degeneracy(&e, 0);
        assert_eq!(dege.op.images(), &[0, 0, 1]);
        assert_eq!(s.element_face(&dege, 0), e);
        assert_eq!(s.element_face(&dege, 1), e);
        assert_eq!(s.element_face(&dege, 2), s.element_degeneracy(&Element::nondegenerate(0, 0), 0));
        assert!(s.validate().is_empty());
        assert_eq!(s.total_count(2), 3 * 1 + 3 * 2);
    }

    #[test]
    fn circle_homology() {
        let s = triangle_boundary();
        let h = s.homology().unwrap();
        assert!(h.is_sphere(1));
        assert!(!h.is_point());
        assert_eq!(s.euler_characteristic(), 0);
    }

    #[test]
    fn product_counts() {
        let s = triangle_boundary();
        let p = s.product(&TruncSSet::point(2)).unwrap();
        assert_eq!(p.counts(), s.counts());
        let sq = s.product(&s).unwrap();
        assert!(sq.validate().is_empty());
        for k in 0..=2 {
            assert_eq!(sq.total_count(k), s.total_count(k) * s.total_count(k));
        }
    }

    #[test]
    fn json_roundtrip() {
        let s = triangle_boundary();
        let t = TruncSSet::from_json(&s.to_json()).unwrap();
        assert_eq!(t.counts(), s.counts());
        assert_eq!(t.to_json(), s.to_json());
    }
}
