//! Mapping spaces of the cubical rigidification.
//!
//! On a necklace the space from `a` to `b` is the nerve of the product of
//! the Bruhat orders of the beads of `T_{[a,b]}`. For a subcomplex of a cube
//! it is the colimit of those nerves over the SubNeck poset, and for inner
//! cubes and boxes it is read off the cube with the collapsed edge's pole
//! merged.

mod psi;

use std::collections::HashMap;

use serde::Serialize;

use crate::cubeset::{inner_cube, inner_open_box, SubcomplexOfCube};
use crate::error::{Error, Result};
use crate::necklace::{subneck_poset, Flag, Necklace, SubNeckPoset};
use crate::posets::{bruhat, interval_lattice, nerve, nerve_map, FinitePoset, Nerve, Permutation};
use crate::sset::{colimit, Colimit, HomologyReport, SSetMap, TruncSSet};
use crate::vertex::Vertex;

pub use psi::{gamma_constancy_check, psi_concat_check, psi_monotone_check, psi_tilde, records};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    NecklaceFormula,
    SubneckColimit,
    SConstruction,
    SimplicialNerve,
}

#[derive(Clone, Debug)]
pub struct MappingSpace {
    pub sset: TruncSSet,
    pub provenance: Provenance,
}

impl MappingSpace {
    pub fn homology(&self) -> Result<HomologyReport> {
        self.sset.homology()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "provenance": self.provenance,
            "counts": self.sset.counts(),
            "sset": self.sset.to_json(),
        })
    }
}

/// Product of the Bruhat orders of `blocks`; each element is keyed by the
/// concatenation of its components.
pub fn block_bruhat(blocks: &[Vec<u8>]) -> Result<(FinitePoset, Vec<Permutation>)> {
    let mut posets = Vec::with_capacity(blocks.len());
    let mut keys: Vec<Permutation> = vec![vec![]];
    for b in blocks {
        let (p, perms) = bruhat(b)?;
        keys = keys
            .iter()
            .flat_map(|k| {
                perms.iter().map(move |q| {
                    let mut k = k.clone();
                    k.extend_from_slice(q);
                    k
                })
            })
            .collect();
        posets.push(p);
    }
    Ok((FinitePoset::product_all(&posets), keys))
}

fn flag_blocks(f: &Flag) -> Vec<Vec<u8>> {
    f.blocks()
        .iter()
        .map(|&m| (1..=32u8).filter(|i| m >> (i - 1) & 1 == 1).collect())
        .collect()
}

/// `C(T)(a, b)`, empty when `a ⋠ b`.
pub fn necklace_mapping_space(t: &Necklace, a: Vertex, b: Vertex, top: Option<usize>) -> Result<MappingSpace> {
    if !t.is_vertex(a) || !t.is_vertex(b) {
        return Err(Error::Invalid(format!("{a} or {b} is not a vertex of {t}")));
    }
    let sset = if a.leq(&b) {
        let (_, flag) = t.subnecklace(a, b)?;
        let (p, _) = block_bruhat(&flag_blocks(&Flag::new(flag)?))?;
        nerve(&p, top)?.sset
    } else {
        TruncSSet::new(top.unwrap_or(0))
    };
    Ok(MappingSpace {
        sset,
        provenance: Provenance::NecklaceFormula,
    })
}

/// The diagram `SubNeck(S_{a,b}) -> sSet` sending a flag to the nerve of the
/// Bruhat orders of its beads.
#[derive(Clone, Debug)]
pub struct SubneckDiagram {
    pub subneck: SubNeckPoset,
    pub objects: Vec<Nerve>,
    pub top: usize,
    /// Cover arrows `(finer, coarser, map)`.
    pub arrows: Vec<(usize, usize, SSetMap)>,
}

pub fn subneck_diagram(s: &SubcomplexOfCube, a: Vertex, b: Vertex, top: Option<usize>) -> Result<SubneckDiagram> {
    let sn = subneck_poset(s, a, b)?;
    let mut posets = Vec::with_capacity(sn.len());
    for f in sn.flags() {
        posets.push(block_bruhat(&flag_blocks(f))?);
    }
    let top = top.unwrap_or_else(|| posets.iter().map(|(p, _)| p.longest_chain()).max().unwrap_or(0));
    let objects = posets
        .iter()
        .map(|(p, _)| nerve(p, Some(top)))
        .collect::<Result<Vec<_>>>()?;
    let index: Vec<HashMap<&Permutation, usize>> = posets
        .iter()
        .map(|(_, keys)| keys.iter().enumerate().map(|(i, k)| (k, i)).collect())
        .collect();
    let arrows = sn
        .poset
        .covers()
        .iter()
        .map(|&(x, y)| {
            let keys = &posets[x].1;
            let map = nerve_map(&objects[x], &objects[y], |e| index[y][&keys[e]]);
            (x, y, map)
        })
        .collect();
    Ok(SubneckDiagram {
        subneck: sn,
        objects,
        top,
        arrows,
    })
}

impl SubneckDiagram {
    /// Colimit over the elements `elems`, using the covers among them.
    pub fn colimit_over(&self, elems: &[usize]) -> Result<Colimit> {
        if elems.is_empty() {
            return Ok(Colimit {
                sset: TruncSSet::new(self.top),
                legs: vec![],
            });
        }
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let objs: Vec<TruncSSet> = elems.iter().map(|&e| self.objects[e].sset.clone()).collect();
        let arrows: Vec<(usize, usize, SSetMap)> = self
            .arrows
            .iter()
            .filter_map(|(x, y, m)| Some((*pos.get(x)?, *pos.get(y)?, m.clone())))
            .collect();
        colimit(&objs, &arrows)
    }

    pub fn colimit(&self) -> Result<Colimit> {
        let all: Vec<usize> = (0..self.objects.len()).collect();
        self.colimit_over(&all)
    }

    /// The map `colim_A -> colim` induced by the legs.
    pub fn comparison(&self, elems: &[usize], partial: &Colimit, whole: &Colimit) -> SSetMap {
        let mut images: Vec<Vec<Option<crate::sset::Element>>> =
            (0..=self.top).map(|k| vec![None; partial.sset.count(k)]).collect();
        for (i, &e) in elems.iter().enumerate() {
            for k in 0..=self.top {
                for x in 0..self.objects[e].sset.count(k) {
                    let here = &partial.legs[i].images[k][x];
                    if !here.is_degenerate() && images[k][here.cell].is_none() {
                        images[k][here.cell] = Some(whole.legs[e].images[k][x].clone());
                    }
                }
            }
        }
        SSetMap {
            images: images
                .into_iter()
                .map(|l| l.into_iter().map(|e| e.expect("every simplex has a representative")).collect())
                .collect(),
        }
    }
}

/// `C_t(S)(a, b)` for a subcomplex `S` of a cube.
pub fn subcomplex_mapping_space(s: &SubcomplexOfCube, a: Vertex, b: Vertex, top: Option<usize>) -> Result<MappingSpace> {
    let d = subneck_diagram(s, a, b, top)?;
    Ok(MappingSpace {
        sset: d.colimit()?.sset,
        provenance: Provenance::SubneckColimit,
    })
}

/// Mapping spaces of the inner cube (or inner open box when `open_box`)
/// between the classes of `a` and `b`.
///
/// With `ε = 1` the edge `α -> {i}` is collapsed to a pole `ᾱ`: the space is
/// a point from `ᾱ` to itself, the cube's space from `α` when leaving `ᾱ`,
/// and the cube's space otherwise. With `ε = 0` the pole is `ω̄`, the class
/// of `{1..n}∖{i}` and `ω`, and arriving at it reads the cube's space into
/// `ω`.
pub fn inner_mapping_space(
    n: usize,
    i: usize,
    eps: bool,
    a: Vertex,
    b: Vertex,
    open_box: bool,
    top: Option<usize>,
) -> Result<MappingSpace> {
    if n < 2 || i == 0 || i > n {
        return Err(Error::IndexOutOfRange(format!("inner cube ({n}, {i}, {})", eps as u8)));
    }
    if a.dim() != n || b.dim() != n {
        return Err(Error::DimensionMismatch(format!("vertices of [1]^{n} expected")));
    }
    let full = Vertex::omega(n).bits();
    let bit = 1u32 << (i - 1);
    let pole = if eps {
        [Vertex::alpha(n), Vertex::raw(n, bit)]
    } else {
        [Vertex::raw(n, full & !bit), Vertex::omega(n)]
    };
    let (at_a, at_b) = (pole.contains(&a), pole.contains(&b));
    let base = if open_box {
        SubcomplexOfCube::open_box(n, i, eps)?
    } else {
        SubcomplexOfCube::standard(n)
    };
    let space = |x: Vertex, y: Vertex| -> Result<TruncSSet> { Ok(subcomplex_mapping_space(&base, x, y, top)?.sset) };
    let sset = match (at_a, at_b) {
        (true, true) => TruncSSet::point(top.unwrap_or(1)),
        (true, false) if eps => space(Vertex::alpha(n), b)?,
        (false, true) if !eps => space(a, Vertex::omega(n))?,
        _ => space(a, b)?,
    };
    Ok(MappingSpace {
        sset,
        provenance: Provenance::SConstruction,
    })
}

/// Vertex classes of the inner cube, as the quotient map on cube vertices.
pub fn inner_vertex_classes(n: usize, i: usize, eps: bool, open_box: bool) -> Result<Vec<(Vertex, usize)>> {
    let (p, labels) = if open_box {
        inner_open_box(n, i, eps)?
    } else {
        inner_cube(n, i, eps)?
    };
    Ok(labels.iter().enumerate().map(|(x, &v)| (v, p.left.vertex(x))).collect())
}

/// `C^Δ(Δ^n)(i, j)`: the nerve of the subsets of `]i, j[`.
pub fn simplicial_hom(n: usize, i: usize, j: usize, top: Option<usize>) -> Result<MappingSpace> {
    if i > n || j > n {
        return Err(Error::IndexOutOfRange(format!("objects {i}, {j} of [{n}]")));
    }
    let p = interval_lattice(i, j);
    let sset = if p.is_empty() {
        TruncSSet::new(top.unwrap_or(0))
    } else {
        nerve(&p, top)?.sset
    };
    Ok(MappingSpace {
        sset,
        provenance: Provenance::SimplicialNerve,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nk(b: &[usize]) -> Necklace {
        Necklace::new(b.to_vec()).unwrap()
    }

    #[test]
    fn necklace_spaces() {
        let t = nk(&[1, 1]);
        let m = necklace_mapping_space(&t, t.alpha(), t.omega(), None).unwrap();
        assert_eq!(m.sset.count(0), 1);
        assert_eq!(m.sset.counts().iter().sum::<usize>(), 1);
        let t = nk(&[2, 2]);
        let m = necklace_mapping_space(&t, t.alpha(), t.omega(), None).unwrap();
        assert_eq!(m.sset.count(0), 4);
        let t = nk(&[3]);
        let m = necklace_mapping_space(&t, t.alpha(), t.omega(), None).unwrap();
        let direct = nerve(&bruhat(&[1, 2, 3]).unwrap().0, None).unwrap();
        assert_eq!(m.sset.counts(), direct.sset.counts());
        let b = Vertex::parse("100").unwrap();
        let c = Vertex::parse("010").unwrap();
        assert!(necklace_mapping_space(&t, b, c, None).unwrap().sset.is_empty());
    }

    #[test]
    fn cube_colimit_is_its_top_object() {
        for n in 1..=3 {
            let s = SubcomplexOfCube::standard(n);
            let via = subcomplex_mapping_space(&s, Vertex::alpha(n), Vertex::omega(n), None).unwrap();
            let t = nk(&[n]);
            let direct = necklace_mapping_space(&t, t.alpha(), t.omega(), Some(via.sset.top_dim())).unwrap();
            assert_eq!(via.sset.counts(), direct.sset.counts());
        }
    }

    #[test]
    fn open_square_is_a_point() {
        let s = SubcomplexOfCube::open_box(2, 1, true).unwrap();
        let m = subcomplex_mapping_space(&s, Vertex::alpha(2), Vertex::omega(2), None).unwrap();
        assert_eq!(m.sset.counts()[0], 1);
        assert!(m.homology().unwrap().is_point());
    }

    #[test]
    fn square_boundary_is_two_points() {
        let s = SubcomplexOfCube::boundary(2);
        let m = subcomplex_mapping_space(&s, Vertex::alpha(2), Vertex::omega(2), None).unwrap();
        assert_eq!(m.sset.count(0), 2);
        assert!(m.sset.counts()[1..].iter().all(|&c| c == 0));
    }

    #[test]
    fn boundary_agrees_with_cube_off_the_poles() {
        for n in 2..=3 {
            let bd = SubcomplexOfCube::boundary(n);
            let cube = SubcomplexOfCube::standard(n);
            for a in crate::vertex::vertices(n) {
                for b in crate::vertex::vertices(n) {
                    if !a.leq(&b) || (a == Vertex::alpha(n) && b == Vertex::omega(n)) {
                        continue;
                    }
                    let x = subcomplex_mapping_space(&bd, a, b, Some(4)).unwrap();
                    let y = subcomplex_mapping_space(&cube, a, b, Some(4)).unwrap();
                    assert_eq!(x.sset.counts(), y.sset.counts(), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn inner_square_pole() {
        let (a, w) = (Vertex::alpha(2), Vertex::omega(2));
        let e1 = Vertex::parse("10").unwrap();
        let m = inner_mapping_space(2, 1, true, a, w, false, None).unwrap();
        let sigma2 = nerve(&bruhat(&[1, 2]).unwrap().0, Some(m.sset.top_dim())).unwrap();
        assert_eq!(m.sset.counts(), sigma2.sset.counts());
        let pole = inner_mapping_space(2, 1, true, a, e1, false, None).unwrap();
        assert!(pole.homology().unwrap().is_point());
        assert_eq!(pole.sset.count(0), 1);
        let classes = inner_vertex_classes(2, 1, true, false).unwrap();
        let cls = |v: Vertex| classes.iter().find(|(w, _)| *w == v).unwrap().1;
        assert_eq!(cls(a), cls(e1));
    }

    #[test]
    fn simplicial_homs() {
        assert_eq!(simplicial_hom(3, 0, 1, None).unwrap().sset.count(0), 1);
        assert_eq!(simplicial_hom(3, 0, 3, None).unwrap().sset.count(0), 4);
        assert!(simplicial_hom(3, 2, 1, None).unwrap().sset.is_empty());
    }
}
