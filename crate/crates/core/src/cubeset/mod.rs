//! Finite cubical sets with connections, stored by nondegenerate cells.
//!
//! A `k`-cell keeps one record per face `∂_{i,ε}`: the face written as
//! `y·e` with `y` nondegenerate and `e` an epimorphism of the box category.
//! Any cell of any dimension is such a pair ([`CubeElement`]); acting by a
//! box map factors it as mono after epi and walks the face records.

mod builders;
mod json;
mod pushout;
mod subcube;

use std::collections::HashSet;
use std::fmt;

use crate::boxcat::{enumerate_epis, BoxMap};
use crate::error::{Error, Result};
use crate::vertex::Vertex;

pub use builders::{
    counterexample_x, inner_cube, inner_open_box, k_complex, q_complex, tilde_square, wedge,
    BipointedComplex, CounterexampleX, QComplex, Wedge,
};
pub use pushout::{pushout, Pushout};
pub use subcube::SubcomplexOfCube;

/// The cell `cell·epi` of dimension `epi.src_dim()`, where `cell` is a
/// nondegenerate `dim`-cell.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CubeElement {
    pub dim: usize,
    pub cell: usize,
    pub epi: BoxMap,
}

impl CubeElement {
    pub fn nondegenerate(dim: usize, cell: usize) -> Self {
        CubeElement {
            dim,
            cell,
            epi: BoxMap::identity(dim),
        }
    }

    pub fn cube_dim(&self) -> usize {
        self.epi.src_dim()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.epi.is_identity()
    }
}

impl fmt::Display for CubeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_degenerate() {
            write!(f, "c{}#{}·({})", self.dim, self.cell, self.epi.normal_form())
        } else {
            write!(f, "c{}#{}", self.dim, self.cell)
        }
    }
}

pub(crate) fn face_slot(i: usize, eps: bool) -> usize {
    2 * (i - 1) + eps as usize
}

#[derive(Clone, Debug, Default)]
pub struct CubicalComplex {
    vertex_names: Vec<String>,
    /// `faces[k][x][2(i-1)+ε]` for `k >= 1`.
    faces: Vec<Vec<Vec<CubeElement>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub dim: usize,
    pub cell: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for v in &self.violations {
            writeln!(f, "{}-cell #{}: {}", v.dim, v.cell, v.message)?;
        }
        Ok(())
    }
}

impl CubicalComplex {
    pub fn new() -> Self {
        CubicalComplex {
            vertex_names: Vec::new(),
            faces: vec![Vec::new()],
        }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> usize {
        self.vertex_names.push(name.into());
        self.faces[0].push(Vec::new());
        self.vertex_names.len() - 1
    }

    /// Adds a nondegenerate `k`-cell with its `2k` face records, ordered
    /// `∂_{1,0}, ∂_{1,1}, ∂_{2,0}, …`.
    pub fn add_cell(&mut self, k: usize, faces: Vec<CubeElement>) -> Result<usize> {
        if k == 0 {
            return Ok(self.add_vertex(format!("v{}", self.count(0))));
        }
        if faces.len() != 2 * k {
            return Err(Error::DimensionMismatch(format!(
                "{k}-cell needs {} faces, got {}",
                2 * k,
                faces.len()
            )));
        }
        for e in &faces {
            if e.cube_dim() != k - 1 || !e.epi.is_epi() || e.epi.dst_dim() != e.dim {
                return Err(Error::Invalid(format!("face record {e} is not an epi from [1]^{}", k - 1)));
            }
            if e.cell >= self.count(e.dim) {
                return Err(Error::IndexOutOfRange(format!("face target {e} missing")));
            }
        }
        Ok(self.push_cell(k, faces))
    }

    pub(crate) fn push_cell(&mut self, k: usize, faces: Vec<CubeElement>) -> usize {
        while self.faces.len() <= k {
            self.faces.push(Vec::new());
        }
        self.faces[k].push(faces);
        self.faces[k].len() - 1
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn set_vertex_names(&mut self, names: Vec<String>) {
        assert_eq!(names.len(), self.count(0));
        self.vertex_names = names;
    }

    pub fn vertex_id(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|n| n == name)
    }

    pub fn count(&self, k: usize) -> usize {
        self.faces.get(k).map_or(0, |l| l.len())
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..=self.dim()).map(|k| self.count(k)).collect()
    }

    /// Highest dimension with a cell (0 for the empty complex).
    pub fn dim(&self) -> usize {
        (0..self.faces.len()).rev().find(|&k| self.count(k) > 0).unwrap_or(0)
    }

    pub fn face(&self, k: usize, x: usize, i: usize, eps: bool) -> &CubeElement {
        &self.faces[k][x][face_slot(i, eps)]
    }

    pub fn face_records(&self, k: usize, x: usize) -> &[CubeElement] {
        &self.faces[k][x]
    }

    /// `x·φ` for a nondegenerate `k`-cell `x` and `φ: [1]^p -> [1]^k`.
    pub fn act(&self, k: usize, x: usize, phi: &BoxMap) -> CubeElement {
        debug_assert_eq!(phi.dst_dim(), k);
        let (epi, mono) = phi.epi_mono();
        match mono.split_outer_face() {
            None => CubeElement { dim: k, cell: x, epi },
            Some(((c, e), rest)) => {
                let rec = &self.faces[k][x][face_slot(c, e)];
                let next = rec
                    .epi
                    .after(&rest.after(&epi).expect("composable"))
                    .expect("composable");
                self.act(rec.dim, rec.cell, &next)
            }
        }
    }

    pub fn act_element(&self, e: &CubeElement, phi: &BoxMap) -> CubeElement {
        self.act(e.dim, e.cell, &e.epi.after(phi).expect("composable"))
    }

    pub fn element_face(&self, e: &CubeElement, i: usize, eps: bool) -> CubeElement {
        let d = BoxMap::face(e.cube_dim(), i, eps).expect("face in range");
        self.act_element(e, &d)
    }

    /// Vertex id of the corner `v` of an element.
    pub fn corner(&self, e: &CubeElement, v: Vertex) -> usize {
        let c = BoxMap::iota(v, v).expect("point inclusion");
        let r = self.act_element(e, &c);
        debug_assert_eq!(r.dim, 0);
        r.cell
    }

    /// `(source, target)` vertices of a nondegenerate edge.
    pub fn edge_ends(&self, x: usize) -> (usize, usize) {
        (self.faces[1][x][0].cell, self.faces[1][x][1].cell)
    }

    /// Every cell of dimension `p`, degenerate ones included, in a fixed order.
    pub fn materialize(&self, p: usize) -> Vec<CubeElement> {
        let mut out = Vec::new();
        for j in 0..=p.min(self.dim()) {
            if self.count(j) == 0 {
                continue;
            }
            let epis = enumerate_epis(p, j);
            for x in 0..self.count(j) {
                for e in &epis {
                    out.push(CubeElement {
                        dim: j,
                        cell: x,
                        epi: e.clone(),
                    });
                }
            }
        }
        out
    }

    /// Record shapes, dangling targets and the face identities
    /// `x·∂_{i,ε}·∂_{j,ε'}` computed along both factorisations.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        macro_rules! bad {
            ($dim:expr, $cell:expr, $msg:expr $(,)?) => {
                violations.push(Violation { dim: $dim, cell: $cell, message: $msg })
            };
        }
        for k in 1..self.faces.len() {
            for x in 0..self.count(k) {
                let recs = &self.faces[k][x];
                if recs.len() != 2 * k {
                    bad!(k, x, format!("{} face records, expected {}", recs.len(), 2 * k));
                    continue;
                }
                for (slot, e) in recs.iter().enumerate() {
                    let (i, eps) = (slot / 2 + 1, slot % 2);
                    if e.dim >= k {
                        bad!(k, x, format!("face ∂_{{{i},{eps}}} has dimension {} >= {k}", e.dim));
                    } else if e.cell >= self.count(e.dim) {
                        bad!(k, x, format!("face ∂_{{{i},{eps}}} points to missing {}-cell #{}", e.dim, e.cell));
                    } else if e.cube_dim() != k - 1 || e.epi.dst_dim() != e.dim {
                        bad!(k, x, format!("face ∂_{{{i},{eps}}} has a map of the wrong shape"));
                    } else if !e.epi.is_epi() {
                        bad!(k, x, format!("face ∂_{{{i},{eps}}} record is not an epimorphism"));
                    }
                }
            }
        }
        if !violations.is_empty() {
            return ValidationReport { violations };
        }
        for k in 2..self.faces.len() {
            for x in 0..self.count(k) {
                let me = CubeElement::nondegenerate(k, x);
                for i in 1..=k {
                    for e1 in [false, true] {
                        let first = self.face(k, x, i, e1);
                        for j in 1..k {
                            for e2 in [false, true] {
                                let via_records = self.element_face(first, j, e2);
                                let composite = BoxMap::face(k, i, e1)
                                    .unwrap()
                                    .after(&BoxMap::face(k - 1, j, e2).unwrap())
                                    .unwrap();
                                let direct = self.act_element(&me, &composite);
                                if via_records != direct {
                                    bad!(
                                        k,
                                        x,
                                        format!(
                                            "∂_{{{i},{}}}∂_{{{j},{}}} gives {via_records} but the normal form gives {direct}",
                                            e1 as u8, e2 as u8
                                        ),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Disjoint union with the inclusion of each summand.
    pub fn disjoint_union(parts: &[&CubicalComplex]) -> (CubicalComplex, Vec<ComplexMap>) {
        let top = parts.iter().map(|p| p.dim()).max().unwrap_or(0);
        let mut out = CubicalComplex::new();
        let mut maps = Vec::new();
        let mut offsets = vec![vec![0usize; top + 1]; parts.len()];
        for k in 0..=top {
            for (pi, p) in parts.iter().enumerate() {
                offsets[pi][k] = out.count(k);
                for x in 0..p.count(k) {
                    if k == 0 {
                        out.add_vertex(format!("{pi}:{}", p.vertex_names[x]));
                    } else {
                        let faces = p.faces[k][x]
                            .iter()
                            .map(|e| CubeElement {
                                dim: e.dim,
                                cell: e.cell + offsets[pi][e.dim],
                                epi: e.epi.clone(),
                            })
                            .collect();
                        out.push_cell(k, faces);
                    }
                }
            }
        }
        for (pi, p) in parts.iter().enumerate() {
            maps.push(ComplexMap {
                images: (0..=p.dim())
                    .map(|k| {
                        (0..p.count(k))
                            .map(|x| CubeElement::nondegenerate(k, x + offsets[pi][k]))
                            .collect()
                    })
                    .collect(),
            });
        }
        (out, maps)
    }

    /// The map from the standard cube `□^p` classifying `e`.
    pub fn yoneda(&self, e: &CubeElement) -> (CubicalComplex, ComplexMap) {
        let p = e.cube_dim();
        let (cube, labels) = SubcomplexOfCube::standard(p).to_complex();
        let images = (0..=p)
            .map(|k| {
                let cells = SubcomplexOfCube::standard(p).cells_of_dim(k);
                cells
                    .iter()
                    .map(|&(a, b)| {
                        let iota = BoxMap::iota(a, b).expect("face of the cube");
                        self.act_element(e, &iota)
                    })
                    .collect()
            })
            .collect();
        let _ = labels;
        (cube, ComplexMap { images })
    }
}

/// A map of cubical sets, given by the image of each nondegenerate cell.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComplexMap {
    pub images: Vec<Vec<CubeElement>>,
}

impl ComplexMap {
    pub fn apply(&self, dst: &CubicalComplex, e: &CubeElement) -> CubeElement {
        dst.act_element(&self.images[e.dim][e.cell], &e.epi)
    }

    pub fn vertex(&self, v: usize) -> usize {
        self.images[0][v].cell
    }

    /// Faces commute with the map.
    pub fn is_valid(&self, src: &CubicalComplex, dst: &CubicalComplex) -> bool {
        for k in 1..=src.dim() {
            if self.images.len() <= k || self.images[k].len() != src.count(k) {
                return false;
            }
            for x in 0..src.count(k) {
                for i in 1..=k {
                    for eps in [false, true] {
                        let lhs = self.apply(dst, src.face(k, x, i, eps));
                        let rhs = dst.element_face(&self.images[k][x], i, eps);
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Nondegenerate cells go injectively to nondegenerate cells.
    pub fn is_mono_by_cells(&self) -> bool {
        let mut seen = HashSet::new();
        self.images
            .iter()
            .flatten()
            .all(|e| !e.is_degenerate() && seen.insert((e.dim, e.cell)))
    }

    /// Injective on all cells of dimension at most `top`.
    pub fn is_injective_upto(&self, src: &CubicalComplex, dst: &CubicalComplex, top: usize) -> bool {
        (0..=top).all(|p| {
            let mut seen = HashSet::new();
            src.materialize(p).iter().all(|e| seen.insert(self.apply(dst, e)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_cube_counts_and_validity() {
        let (c, _) = SubcomplexOfCube::standard(3).to_complex();
        assert_eq!(c.counts(), vec![8, 12, 6, 1]);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn dangling_face_is_reported() {
        let mut c = CubicalComplex::new();
        c.add_vertex("a");
        c.push_cell(1, vec![CubeElement::nondegenerate(0, 0), CubeElement::nondegenerate(0, 3)]);
        let r = c.validate();
        assert!(!r.is_ok());
        assert_eq!(r.violations[0].dim, 1);
        assert!(r.violations[0].message.contains("missing"));
    }

    #[test]
    fn incoherent_square_is_reported() {
        // a square whose left and bottom edges disagree at their shared corner
        let mut c = CubicalComplex::new();
        for v in ["p", "q", "r", "s", "t"] {
            c.add_vertex(v);
        }
        let e = |s: usize, t: usize| vec![CubeElement::nondegenerate(0, s), CubeElement::nondegenerate(0, t)];
        let a = c.add_cell(1, e(0, 1)).unwrap();
        let b = c.add_cell(1, e(2, 3)).unwrap();
        let l = c.add_cell(1, e(0, 2)).unwrap();
        let r = c.add_cell(1, e(4, 3)).unwrap();
        let nd = |x| CubeElement::nondegenerate(1, x);
        c.add_cell(2, vec![nd(a), nd(b), nd(l), nd(r)]).unwrap();
        assert!(!c.validate().is_ok());
    }

    #[test]
    fn yoneda_maps_are_valid() {
        let (c, _) = SubcomplexOfCube::standard(2).to_complex();
        for p in 0..=3 {
            for e in c.materialize(p) {
                let (cube, y) = c.yoneda(&e);
                assert!(y.is_valid(&cube, &c));
                let mono_cells = y.is_mono_by_cells();
                let injective = y.is_injective_upto(&cube, &c, p + 1);
                assert_eq!(mono_cells, injective, "{e}");
            }
        }
    }
}
