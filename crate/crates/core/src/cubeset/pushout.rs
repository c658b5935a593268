use std::collections::HashMap;

use crate::error::{Error, Result};

use super::{face_slot, ComplexMap, CubeElement, CubicalComplex};

/// `P = S ⊔_A T` with its two legs.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub complex: CubicalComplex,
    pub left: ComplexMap,
    pub right: ComplexMap,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Pushout of `S <-f- A -g-> T`, computed on all cells (degenerate ones
/// materialised) up to the top dimension of `S` and `T`.
///
/// A class is degenerate iff it contains a degenerate cell, so the
/// nondegenerate cells of `P` are the classes of nondegenerate cells with
/// no degenerate member.
pub fn pushout(
    s: &CubicalComplex,
    t: &CubicalComplex,
    a: &CubicalComplex,
    f: &ComplexMap,
    g: &ComplexMap,
) -> Result<Pushout> {
    if !f.is_valid(a, s) || !g.is_valid(a, t) {
        return Err(Error::Invalid("pushout legs are not maps of cubical sets".into()));
    }
    let top = s.dim().max(t.dim());
    let mut out = CubicalComplex::new();
    // std_s[p][elem] / std_t: standard form in P of every materialised cell
    let mut std_s: Vec<HashMap<CubeElement, CubeElement>> = Vec::new();
    let mut std_t: Vec<HashMap<CubeElement, CubeElement>> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    for p in 0..=top {
        let es = s.materialize(p);
        let et = t.materialize(p);
        let ns = es.len();
        let idx_s: HashMap<&CubeElement, usize> = es.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let idx_t: HashMap<&CubeElement, usize> = et.iter().enumerate().map(|(i, e)| (e, ns + i)).collect();
        let mut uf = UnionFind((0..ns + et.len()).collect());
        for ea in a.materialize(p) {
            let x = f.apply(s, &ea);
            let y = g.apply(t, &ea);
            uf.union(idx_s[&x], idx_t[&y]);
        }
        let all: Vec<(bool, &CubeElement)> = es
            .iter()
            .map(|e| (true, e))
            .chain(et.iter().map(|e| (false, e)))
            .collect();
        let mut degenerate_member: HashMap<usize, usize> = HashMap::new();
        for (i, (_, e)) in all.iter().enumerate() {
            if e.is_degenerate() {
                let r = uf.find(i);
                degenerate_member.entry(r).or_insert(i);
            }
        }
        let mut class_form: HashMap<usize, CubeElement> = HashMap::new();
        let mut layer_s = HashMap::new();
        let mut layer_t = HashMap::new();
        for (i, &(from_s, e)) in all.iter().enumerate() {
            let r = uf.find(i);
            let form = match class_form.get(&r) {
                Some(c) => c.clone(),
                None => {
                    let c = if let Some(&m) = degenerate_member.get(&r) {
                        let (ms, me) = all[m];
                        // me = y·e with y of lower dimension
                        let lower = if ms {
                            &std_s[me.dim][&CubeElement::nondegenerate(me.dim, me.cell)]
                        } else {
                            &std_t[me.dim][&CubeElement::nondegenerate(me.dim, me.cell)]
                        };
                        CubeElement {
                            dim: lower.dim,
                            cell: lower.cell,
                            epi: lower.epi.after(&me.epi).expect("composable"),
                        }
                    } else {
                        let src = if from_s { s } else { t };
                        let faces: Vec<CubeElement> = if p == 0 {
                            vec![]
                        } else {
                            let mut fs = vec![CubeElement::nondegenerate(0, 0); 2 * p];
                            for k in 1..=p {
                                for eps in [false, true] {
                                    let fr = src.face(p, e.cell, k, eps);
                                    let table = if from_s { &std_s } else { &std_t };
                                    let lower = &table[fr.dim][&CubeElement::nondegenerate(fr.dim, fr.cell)];
                                    fs[face_slot(k, eps)] = CubeElement {
                                        dim: lower.dim,
                                        cell: lower.cell,
                                        epi: lower.epi.after(&fr.epi).expect("composable"),
                                    };
                                }
                            }
                            fs
                        };
                        let id = if p == 0 {
                            let name = if from_s { &s.vertex_names()[e.cell] } else { &t.vertex_names()[e.cell] };
                            names.push(name.clone());
                            out.add_vertex(name.clone())
                        } else {
                            out.push_cell(p, faces)
                        };
                        CubeElement::nondegenerate(p, id)
                    };
                    class_form.insert(r, c.clone());
                    c
                }
            };
            if from_s {
                layer_s.insert(e.clone(), form);
            } else {
                layer_t.insert(e.clone(), form);
            }
        }
        std_s.push(layer_s);
        std_t.push(layer_t);
    }
    let leg = |src: &CubicalComplex, table: &Vec<HashMap<CubeElement, CubeElement>>| ComplexMap {
        images: (0..=src.dim())
            .map(|k| {
                (0..src.count(k))
                    .map(|x| table[k][&CubeElement::nondegenerate(k, x)].clone())
                    .collect()
            })
            .collect(),
    };
    let left = leg(s, &std_s);
    let right = leg(t, &std_t);
    Ok(Pushout {
        complex: out,
        left,
        right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubeset::SubcomplexOfCube;
    use crate::vertex::Vertex;

    fn point() -> CubicalComplex {
        let mut c = CubicalComplex::new();
        c.add_vertex("*");
        c
    }

    #[test]
    fn gluing_two_intervals() {
        let (i1, _) = SubcomplexOfCube::standard(1).to_complex();
        let pt = point();
        // end of the first to the start of the second
        let f = ComplexMap { images: vec![vec![CubeElement::nondegenerate(0, 1)]] };
        let g = ComplexMap { images: vec![vec![CubeElement::nondegenerate(0, 0)]] };
        let p = pushout(&i1, &i1, &pt, &f, &g).unwrap();
        assert_eq!(p.complex.counts(), vec![3, 2]);
        assert!(p.left.is_valid(&i1, &p.complex));
        assert!(p.right.is_valid(&i1, &p.complex));
    }

    #[test]
    fn collapsing_an_edge_of_a_square() {
        let (sq, labels) = SubcomplexOfCube::standard(2).to_complex();
        let (i1, _) = SubcomplexOfCube::standard(1).to_complex();
        // edge α -> (1,0)
        let edge = SubcomplexOfCube::standard(2)
            .cells_of_dim(1)
            .iter()
            .position(|&(a, b)| a == Vertex::alpha(2) && b == Vertex::parse("10").unwrap())
            .unwrap();
        let (_, f) = sq.yoneda(&CubeElement::nondegenerate(1, edge));
        let pt = point();
        let g = ComplexMap {
            images: vec![
                vec![CubeElement::nondegenerate(0, 0); 2],
                vec![CubeElement {
                    dim: 0,
                    cell: 0,
                    epi: crate::boxcat::BoxMap::constant(1, Vertex::alpha(0)),
                }],
            ],
        };
        let p = pushout(&sq, &pt, &i1, &f, &g).unwrap();
        assert_eq!(p.complex.counts(), vec![3, 3, 1]);
        assert!(p.complex.validate().is_ok());
        let alpha = labels.iter().position(|v| *v == Vertex::alpha(2)).unwrap();
        let e1 = labels.iter().position(|v| *v == Vertex::parse("10").unwrap()).unwrap();
        assert_eq!(p.left.vertex(alpha), p.left.vertex(e1));
    }
}
