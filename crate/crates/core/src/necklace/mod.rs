//! Necklaces `□^{n_1} ∨ … ∨ □^{n_k}` and the maps between them.
//!
//! A necklace is held in its standard embedding in `□^n`, `n = Σ n_i`: bead
//! `i` spans the coordinates after the first `n_1 + … + n_{i-1}`, and a
//! vertex is the set of coordinates it has switched on. Joints are the
//! prefixes `{1..n_1 + … + n_i}`.

mod subneck;

use std::collections::BTreeSet;
use std::fmt;

use crate::boxcat::{enumerate_maps, BoxMap};
use crate::cubeset::{CubicalComplex, SubcomplexOfCube};
use crate::error::{guard, Error, Result};
use crate::limits::Limits;
use crate::vertex::{Vertex, MAX_DIM};

pub use subneck::{lub_flags, subneck_poset, Flag, SubNeckPoset};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct Necklace {
    beads: Vec<usize>,
}

impl Necklace {
    pub fn new(beads: Vec<usize>) -> Result<Self> {
        if beads.contains(&0) {
            return Err(Error::Invalid("beads must be positive".into()));
        }
        let total: usize = beads.iter().sum();
        if total > MAX_DIM {
            return Err(Error::Invalid(format!("total dimension {total} exceeds {MAX_DIM}")));
        }
        Ok(Necklace { beads })
    }

    /// The point `□^0`, the only necklace with `α = ω`.
    pub fn point() -> Self {
        Necklace { beads: vec![] }
    }

    /// Parses `"2,1,3"`, `"(2,1,3)"` or `"()"`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() {
            return Ok(Necklace::point());
        }
        let beads = t
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Invalid(format!("bad bead {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Necklace::new(beads)
    }

    pub fn beads(&self) -> &[usize] {
        &self.beads
    }

    pub fn len(&self) -> usize {
        self.beads.len()
    }

    pub fn is_point(&self) -> bool {
        self.beads.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.beads.iter().sum()
    }

    /// Number of coordinates before bead `i`.
    pub fn offset(&self, i: usize) -> usize {
        self.beads[..i].iter().sum()
    }

    fn prefix(&self, k: usize) -> Vertex {
        Vertex::raw(self.total_dim(), ((1u64 << k) - 1) as u32)
    }

    pub fn alpha(&self) -> Vertex {
        Vertex::alpha(self.total_dim())
    }

    pub fn omega(&self) -> Vertex {
        Vertex::omega(self.total_dim())
    }

    /// `α`, the joints, then `ω`.
    pub fn joints(&self) -> Vec<Vertex> {
        (0..=self.len()).map(|i| self.prefix(self.offset(i))).collect()
    }

    pub fn bead_alpha(&self, i: usize) -> Vertex {
        self.prefix(self.offset(i))
    }

    pub fn bead_omega(&self, i: usize) -> Vertex {
        self.prefix(self.offset(i + 1))
    }

    pub fn in_bead(&self, v: Vertex, i: usize) -> bool {
        v.dim() == self.total_dim() && self.bead_alpha(i).leq(&v) && v.leq(&self.bead_omega(i))
    }

    /// Beads containing `v`: one, or two at an inner joint.
    pub fn beads_of(&self, v: Vertex) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.in_bead(v, i)).collect()
    }

    pub fn is_vertex(&self, v: Vertex) -> bool {
        if self.is_point() {
            return v.dim() == 0;
        }
        !self.beads_of(v).is_empty()
    }

    /// Coordinates of `v` inside bead `i`.
    pub fn local(&self, v: Vertex, i: usize) -> Vertex {
        let o = self.offset(i);
        let mask = ((1u64 << self.beads[i]) - 1) as u32;
        Vertex::raw(self.beads[i], (v.bits() >> o) & mask)
    }

    /// The vertex of the necklace with local coordinates `w` in bead `i`.
    pub fn embed(&self, i: usize, w: Vertex) -> Vertex {
        let o = self.offset(i);
        Vertex::raw(self.total_dim(), self.bead_alpha(i).bits() | (w.bits() << o))
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        if self.is_point() {
            return vec![Vertex::alpha(0)];
        }
        let mut out = BTreeSet::new();
        for i in 0..self.len() {
            for w in crate::vertex::vertices(self.beads[i]) {
                out.insert(self.embed(i, w));
            }
        }
        out.into_iter().collect()
    }

    /// The necklace as a subcomplex of `□^n` in its standard embedding.
    pub fn to_subcomplex(&self) -> SubcomplexOfCube {
        let j = self.joints();
        let gens: Vec<(Vertex, Vertex)> = j.windows(2).map(|w| (w[0], w[1])).collect();
        if gens.is_empty() {
            return SubcomplexOfCube::standard(0);
        }
        SubcomplexOfCube::generated_by(self.total_dim(), &gens).expect("beads are faces")
    }

    pub fn to_complex(&self) -> (CubicalComplex, Vec<Vertex>) {
        self.to_subcomplex().to_complex()
    }

    /// `T_{[a,b]}` with its embedding into `self`, given by the flag of
    /// joints `a ≺ … ≺ b` it passes through. A joint `a` is read in the
    /// bead to its right and a joint `b` in the bead to its left.
    pub fn subnecklace(&self, a: Vertex, b: Vertex) -> Result<(Necklace, Vec<Vertex>)> {
        if !self.is_vertex(a) || !self.is_vertex(b) {
            return Err(Error::Invalid(format!("{a} or {b} is not a vertex of {self}")));
        }
        if !a.leq(&b) {
            return Err(Error::Invalid(format!("{a} is not below {b}")));
        }
        if a == b {
            return Ok((Necklace::point(), vec![a]));
        }
        let i = *self.beads_of(a).last().expect("vertex");
        let j = self.beads_of(b)[0];
        if i == j {
            let d = a.distance(&b).expect("a ≼ b");
            return Ok((Necklace::new(vec![d])?, vec![a, b]));
        }
        let mut beads = vec![a.distance(&self.bead_omega(i)).expect("in bead")];
        let mut flag = vec![a];
        for m in i + 1..j {
            flag.push(self.bead_alpha(m));
            beads.push(self.beads[m]);
        }
        flag.push(self.bead_alpha(j));
        beads.push(self.bead_alpha(j).distance(&b).expect("in bead"));
        flag.push(b);
        Ok((Necklace::new(beads)?, flag))
    }

    /// `self ∨ other`.
    pub fn wedge(&self, other: &Necklace) -> Necklace {
        let mut beads = self.beads.clone();
        beads.extend_from_slice(&other.beads);
        Necklace { beads }
    }

    /// Bead dimensions, with the point read as one bead of dimension 0.
    fn slots(&self) -> Vec<usize> {
        if self.is_point() {
            vec![0]
        } else {
            self.beads.clone()
        }
    }

    fn slot_vertex(&self, j: usize, w: Vertex) -> Vertex {
        if self.is_point() {
            Vertex::alpha(0)
        } else {
            self.embed(j, w)
        }
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.beads.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A morphism of necklaces: bead `i` of the source goes to bead
/// `components[i].0` of the target by the box map `components[i].1`.
///
/// Components are kept canonical: a constant component sitting on an inner
/// joint is assigned to the bead on the right of that joint.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct NecMorphism {
    src: Necklace,
    dst: Necklace,
    components: Vec<(usize, BoxMap)>,
}

impl NecMorphism {
    pub fn new(src: &Necklace, dst: &Necklace, components: Vec<(usize, BoxMap)>) -> Result<Self> {
        if components.len() != src.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} components for {} beads",
                components.len(),
                src.len()
            )));
        }
        if src.is_point() && !dst.is_point() {
            return Err(Error::Invalid("the point has no map onto a nontrivial necklace".into()));
        }
        let slots = dst.slots();
        for (i, (j, f)) in components.iter().enumerate() {
            if *j >= slots.len() || f.src_dim() != src.beads[i] || f.dst_dim() != slots[*j] {
                return Err(Error::DimensionMismatch(format!("component {i} does not fit")));
            }
        }
        let m = NecMorphism {
            src: src.clone(),
            dst: dst.clone(),
            components,
        }
        .canonical();
        if m.components.is_empty() {
            return Ok(m);
        }
        let ends: Vec<(Vertex, Vertex)> = m
            .components
            .iter()
            .map(|(j, f)| (dst.slot_vertex(*j, f.image_alpha()), dst.slot_vertex(*j, f.image_omega())))
            .collect();
        let ok_start = ends[0].0 == dst.joints()[0];
        let ok_end = ends.last().expect("nonempty").1 == *dst.joints().last().expect("ω");
        let ok_chain = ends.windows(2).all(|w| w[0].1 == w[1].0);
        if !(ok_start && ok_chain && ok_end) {
            return Err(Error::Invalid("components do not chain from α to ω".into()));
        }
        Ok(m)
    }

    fn canonical(mut self) -> Self {
        let last = self.dst.len().saturating_sub(1);
        for (j, f) in self.components.iter_mut() {
            if *j < last && f.is_constant() && f.image_alpha() == Vertex::omega(f.dst_dim()) {
                let n = f.src_dim();
                *j += 1;
                *f = BoxMap::constant(n, Vertex::alpha(self.dst.beads[*j]));
            }
        }
        self
    }

    pub fn identity(t: &Necklace) -> Self {
        NecMorphism {
            src: t.clone(),
            dst: t.clone(),
            components: t.beads.iter().enumerate().map(|(i, &n)| (i, BoxMap::identity(n))).collect(),
        }
    }

    pub fn src(&self) -> &Necklace {
        &self.src
    }

    pub fn dst(&self) -> &Necklace {
        &self.dst
    }

    pub fn components(&self) -> &[(usize, BoxMap)] {
        &self.components
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        if self.src.is_point() {
            return self.dst.alpha();
        }
        let i = self.src.beads_of(v)[0];
        let (j, f) = &self.components[i];
        self.dst.slot_vertex(*j, f.apply(self.src.local(v, i)))
    }

    /// The vertex function, listed over the sorted source vertices.
    pub fn vertex_map(&self) -> Vec<(Vertex, Vertex)> {
        self.src.vertices().into_iter().map(|v| (v, self.apply(v))).collect()
    }

    /// Injective on every bead, the monomorphism criterion for necklaces.
    pub fn is_mono(&self) -> bool {
        self.components.iter().all(|(_, f)| f.is_mono())
    }

    /// `f ∨ g : S ∨ T -> U ∨ V`.
    pub fn wedge(&self, other: &NecMorphism) -> NecMorphism {
        let shift = self.dst.len();
        let mut components = self.components.clone();
        components.extend(other.components.iter().map(|(j, f)| (j + shift, f.clone())));
        NecMorphism {
            src: self.src.wedge(&other.src),
            dst: self.dst.wedge(&other.dst),
            components,
        }
        .canonical()
    }

    /// Target beads hit by each source bead, read from the vertex function.
    pub fn bead_images(&self) -> Vec<Vec<usize>> {
        (0..self.src.len())
            .map(|i| {
                let verts: Vec<Vertex> = crate::vertex::vertices(self.src.beads[i])
                    .map(|w| self.apply(self.src.embed(i, w)))
                    .collect();
                (0..self.dst.len())
                    .filter(|&j| verts.iter().all(|&v| self.dst.in_bead(v, j)))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for NecMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(j, m)| format!("B{}·[{}]", j + 1, m.normal_form()))
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Chains `φ_1 * … * φ_k : (n_1,…,n_k) -> (m)` with `φ_1(α) = α`,
/// `φ_i(ω) = φ_{i+1}(α)` and `φ_k(ω) = ω`.
fn chains_into_cube(block: &[usize], m: usize, cache: &mut Vec<Option<Vec<BoxMap>>>) -> Result<Vec<Vec<BoxMap>>> {
    let mut out = Vec::new();
    let mut stack: Vec<(Vertex, Vec<BoxMap>)> = vec![(Vertex::alpha(m), vec![])];
    while let Some((at, acc)) = stack.pop() {
        let i = acc.len();
        if i == block.len() {
            if at == Vertex::omega(m) {
                out.push(acc);
            }
            continue;
        }
        let n = block[i];
        if cache[n].is_none() {
            cache[n] = Some(enumerate_maps(n, m)?);
        }
        for f in cache[n].as_ref().expect("filled") {
            if f.image_alpha() == at {
                let mut next = acc.clone();
                next.push(f.clone());
                stack.push((f.image_omega(), next));
            }
        }
    }
    Ok(out)
}

fn compositions(len: usize, parts: usize) -> Vec<Vec<usize>> {
    // cut points 0 < c_1 < … < c_{parts-1} < len
    fn go(start: usize, len: usize, left: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 1 {
            if start < len {
                let mut a = acc.clone();
                a.push(len - start);
                out.push(a);
            }
            return;
        }
        for size in 1..=len.saturating_sub(start) {
            acc.push(size);
            go(start + size, len, left - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if len == 0 {
            out.push(vec![]);
        }
        return out;
    }
    go(0, len, parts, &mut Vec::new(), &mut out);
    out
}

/// All morphisms `T -> U`, from the decompositions of `T` into one block per
/// bead of `U`. Maps with constant beads arise from several decompositions
/// and are deduplicated through their canonical form.
pub fn hom_nec(t: &Necklace, u: &Necklace) -> Result<Vec<NecMorphism>> {
    let limits = Limits::global();
    guard(
        "necklace dimensions",
        "MAX_BOX",
        t.beads.iter().max().copied().unwrap_or(0) + u.beads.iter().max().copied().unwrap_or(0),
        limits.max_box,
    )?;
    if t.is_point() {
        return Ok(if u.is_point() {
            vec![NecMorphism::identity(t)]
        } else {
            vec![]
        });
    }
    let slots = u.slots();
    let mut caches: Vec<Vec<Option<Vec<BoxMap>>>> = slots.iter().map(|_| vec![None; MAX_DIM + 1]).collect();
    let mut found = BTreeSet::new();
    for sizes in compositions(t.len(), slots.len()) {
        let mut start = 0;
        let mut per_block: Vec<Vec<Vec<BoxMap>>> = Vec::new();
        for (j, &size) in sizes.iter().enumerate() {
            let block = &t.beads[start..start + size];
            per_block.push(chains_into_cube(block, slots[j], &mut caches[j])?);
            start += size;
        }
        if per_block.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut idx = vec![0usize; per_block.len()];
        'odometer: loop {
            let mut components = Vec::with_capacity(t.len());
            for (j, &c) in idx.iter().enumerate() {
                components.extend(per_block[j][c].iter().map(|f| (j, f.clone())));
            }
            found.insert(NecMorphism::new(t, u, components)?);
            for p in 0..idx.len() {
                idx[p] += 1;
                if idx[p] < per_block[p].len() {
                    continue 'odometer;
                }
                idx[p] = 0;
            }
            break;
        }
    }
    Ok(found.into_iter().collect())
}
