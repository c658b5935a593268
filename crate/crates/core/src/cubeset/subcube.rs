use std::collections::{BTreeSet, HashMap};

use crate::boxcat::BoxMap;
use crate::error::{Error, Result};
use crate::vertex::{vertices, Vertex};

use super::{face_slot, CubeElement, CubicalComplex};

/// A subcomplex of `□^n`, as the set of faces `ι_{a,b}` it contains.
/// Closed under subfaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcomplexOfCube {
    n: usize,
    faces: BTreeSet<(Vertex, Vertex)>,
}

impl SubcomplexOfCube {
    /// Closure under subfaces of the given faces.
    pub fn generated_by(n: usize, gens: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut faces = BTreeSet::new();
        for &(a, b) in gens {
            if a.dim() != n || b.dim() != n || !a.leq(&b) {
                return Err(Error::Invalid(format!("({a}, {b}) is not a face of □^{n}")));
            }
            // every sub-interval [a', b'] of [a, b]
            let free = b.bits() & !a.bits();
            let mut s = free;
            loop {
                let lo = a.bits() | s;
                let mut t = free & !s;
                loop {
                    faces.insert((Vertex::raw(n, lo), Vertex::raw(n, lo | t)));
                    if t == 0 {
                        break;
                    }
                    t = (t - 1) & (free & !s);
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & free;
            }
        }
        Ok(SubcomplexOfCube { n, faces })
    }

    pub fn standard(n: usize) -> Self {
        SubcomplexOfCube::generated_by(n, &[(Vertex::alpha(n), Vertex::omega(n))])
            .expect("the cube")
    }

    /// `∂□^n`: every face except the top one.
    pub fn boundary(n: usize) -> Self {
        let mut s = SubcomplexOfCube::standard(n);
        s.faces.remove(&(Vertex::alpha(n), Vertex::omega(n)));
        s
    }

    /// `⊓^n_{i,ε}`: the boundary without the face `∂_{i,ε}`.
    pub fn open_box(n: usize, i: usize, eps: bool) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange(format!("open box face {i} of □^{n}")));
        }
        let mut s = SubcomplexOfCube::boundary(n);
        let (a, b) = face_pair(n, i, eps);
        s.faces.remove(&(a, b));
        Ok(s)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn contains(&self, a: Vertex, b: Vertex) -> bool {
        self.faces.contains(&(a, b))
    }

    pub fn faces(&self) -> impl Iterator<Item = &(Vertex, Vertex)> {
        self.faces.iter()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        vertices(self.n).filter(|&v| self.contains(v, v)).collect()
    }

    /// Faces of dimension `k`, sorted.
    pub fn cells_of_dim(&self, k: usize) -> Vec<(Vertex, Vertex)> {
        self.faces
            .iter()
            .filter(|(a, b)| a.distance(b) == Some(k))
            .copied()
            .collect()
    }

    /// Id of the face `(a, b)` in [`to_complex`](Self::to_complex).
    pub fn cell_index(&self, a: Vertex, b: Vertex) -> Option<usize> {
        let k = a.distance(&b)?;
        self.cells_of_dim(k).iter().position(|&p| p == (a, b))
    }

    pub fn cell(&self, a: Vertex, b: Vertex) -> Option<CubeElement> {
        let k = a.distance(&b)?;
        Some(CubeElement::nondegenerate(k, self.cell_index(a, b)?))
    }

    pub fn is_closed(&self) -> bool {
        let c = SubcomplexOfCube::generated_by(self.n, &self.faces.iter().copied().collect::<Vec<_>>())
            .expect("faces are well formed");
        c.faces == self.faces
    }

    /// The cubical set with one nondegenerate cell per face, and the cube
    /// vertex of each 0-cell.
    pub fn to_complex(&self) -> (CubicalComplex, Vec<Vertex>) {
        let mut cx = CubicalComplex::new();
        let mut index: HashMap<(Vertex, Vertex), usize> = HashMap::new();
        let verts = self.cells_of_dim(0);
        for &(a, _) in &verts {
            let id = cx.add_vertex(a.to_string());
            index.insert((a, a), id);
        }
        for k in 1..=self.n {
            for (a, b) in self.cells_of_dim(k) {
                let free: Vec<usize> = (1..=self.n).filter(|&c| b.get(c) && !a.get(c)).collect();
                let mut faces = vec![CubeElement::nondegenerate(0, 0); 2 * k];
                for (t, &c) in free.iter().enumerate() {
                    let bit = 1u32 << (c - 1);
                    let lo = (a, Vertex::raw(self.n, b.bits() & !bit));
                    let hi = (Vertex::raw(self.n, a.bits() | bit), b);
                    faces[face_slot(t + 1, false)] = CubeElement::nondegenerate(k - 1, index[&lo]);
                    faces[face_slot(t + 1, true)] = CubeElement::nondegenerate(k - 1, index[&hi]);
                }
                let id = cx.push_cell(k, faces);
                index.insert((a, b), id);
            }
        }
        (cx, verts.into_iter().map(|(a, _)| a).collect())
    }

    /// Recovers a subcomplex from a complex whose vertices are labelled by
    /// cube vertices, checking every cell is the face it claims to be.
    pub fn from_complex(cx: &CubicalComplex, n: usize, labels: &[Vertex]) -> Result<Self> {
        if labels.len() != cx.count(0) {
            return Err(Error::DimensionMismatch("one label per vertex".into()));
        }
        let mut gens = Vec::new();
        for k in 0..=cx.dim() {
            for x in 0..cx.count(k) {
                let me = CubeElement::nondegenerate(k, x);
                let a = labels[cx.corner(&me, Vertex::alpha(k))];
                let b = labels[cx.corner(&me, Vertex::omega(k))];
                if a.distance(&b) != Some(k) {
                    return Err(Error::Invalid(format!("{k}-cell #{x} spans {a}..{b}")));
                }
                let iota = BoxMap::iota(a, b)?;
                for v in vertices(k) {
                    if labels[cx.corner(&me, v)] != iota.apply(v) {
                        return Err(Error::Invalid(format!("{k}-cell #{x} is not the face {a}..{b}")));
                    }
                }
                gens.push((a, b));
            }
        }
        let s = SubcomplexOfCube::generated_by(n, &gens)?;
        if s.faces.len() != gens.len() {
            return Err(Error::Invalid("complex has faces missing or repeated".into()));
        }
        Ok(s)
    }
}

/// Endpoints of the face `∂_{i,ε}` of `□^n`.
pub(crate) fn face_pair(n: usize, i: usize, eps: bool) -> (Vertex, Vertex) {
    let bit = 1u32 << (i - 1);
    if eps {
        (Vertex::raw(n, bit), Vertex::omega(n))
    } else {
        (Vertex::alpha(n), Vertex::raw(n, Vertex::omega(n).bits() & !bit))
    }
}
