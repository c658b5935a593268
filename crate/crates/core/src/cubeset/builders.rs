use crate::boxcat::{BoxMap, NormalForm};
use crate::error::{guard, Error, Result};
use crate::limits::Limits;
use crate::vertex::Vertex;

use super::subcube::face_pair;
use super::{pushout, ComplexMap, CubeElement, CubicalComplex, Pushout, SubcomplexOfCube};

fn point() -> CubicalComplex {
    let mut c = CubicalComplex::new();
    c.add_vertex("*");
    c
}

fn point_map(v: usize) -> ComplexMap {
    ComplexMap {
        images: vec![vec![CubeElement::nondegenerate(0, v)]],
    }
}

/// A complex with a source and a target vertex.
#[derive(Clone, Debug)]
pub struct BipointedComplex {
    pub complex: CubicalComplex,
    pub a: usize,
    pub b: usize,
}

impl BipointedComplex {
    pub fn new(complex: CubicalComplex, a: usize, b: usize) -> Result<Self> {
        if a >= complex.count(0) || b >= complex.count(0) {
            return Err(Error::IndexOutOfRange(format!("base points {a}, {b}")));
        }
        Ok(BipointedComplex { complex, a, b })
    }

    pub fn point() -> Self {
        BipointedComplex {
            complex: point(),
            a: 0,
            b: 0,
        }
    }

    /// `□^n` pointed by `α` and `ω`.
    pub fn cube(n: usize) -> Self {
        let (complex, labels) = SubcomplexOfCube::standard(n).to_complex();
        let at = |v: Vertex| labels.iter().position(|&w| w == v).expect("corner");
        BipointedComplex {
            a: at(Vertex::alpha(n)),
            b: at(Vertex::omega(n)),
            complex,
        }
    }
}

/// `S ∨ T` with its two inclusions.
#[derive(Clone, Debug)]
pub struct Wedge {
    pub bipointed: BipointedComplex,
    pub left: ComplexMap,
    pub right: ComplexMap,
}

/// Glues the target of `s` to the source of `t`.
pub fn wedge(s: &BipointedComplex, t: &BipointedComplex) -> Result<Wedge> {
    let p = pushout(&s.complex, &t.complex, &point(), &point_map(s.b), &point_map(t.a))?;
    Ok(Wedge {
        bipointed: BipointedComplex {
            a: p.left.vertex(s.a),
            b: p.right.vertex(t.b),
            complex: p.complex,
        },
        left: p.left,
        right: p.right,
    })
}

/// The map `□^1 -> *`.
fn crush_interval() -> ComplexMap {
    ComplexMap {
        images: vec![
            vec![CubeElement::nondegenerate(0, 0); 2],
            vec![CubeElement {
                dim: 0,
                cell: 0,
                epi: BoxMap::constant(1, Vertex::alpha(0)),
            }],
        ],
    }
}

fn critical_edge(n: usize, i: usize, eps: bool) -> (Vertex, Vertex) {
    let bit = 1u32 << (i - 1);
    if eps {
        (Vertex::alpha(n), Vertex::raw(n, bit))
    } else {
        (Vertex::raw(n, Vertex::omega(n).bits() & !bit), Vertex::omega(n))
    }
}

fn collapse_critical(sub: &SubcomplexOfCube, n: usize, i: usize, eps: bool) -> Result<(Pushout, Vec<Vertex>)> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange(format!("critical edge {i} of □^{n}")));
    }
    let (a, b) = critical_edge(n, i, eps);
    let edge = sub
        .cell(a, b)
        .ok_or_else(|| Error::Invalid(format!("critical edge {a}->{b} not present")))?;
    let (cx, labels) = sub.to_complex();
    let (interval, yon) = cx.yoneda(&edge);
    let p = pushout(&cx, &point(), &interval, &yon, &crush_interval())?;
    Ok((p, labels))
}

/// `□̂^n_{i,ε}`: the cube with its critical edge collapsed. For `ε = 1` the
/// edge is `α -> {i}`, for `ε = 0` it is `{1..n}∖{i} -> ω`. Returns the
/// quotient and the cube vertex of each 0-cell of `□^n`.
pub fn inner_cube(n: usize, i: usize, eps: bool) -> Result<(Pushout, Vec<Vertex>)> {
    guard("cube dimension", "MAX_CUBE", n, Limits::global().max_cube)?;
    collapse_critical(&SubcomplexOfCube::standard(n), n, i, eps)
}

/// `⊓̂^n_{i,ε}`: the open box with its critical edge collapsed (`n >= 2`).
pub fn inner_open_box(n: usize, i: usize, eps: bool) -> Result<(Pushout, Vec<Vertex>)> {
    guard("cube dimension", "MAX_CUBE", n, Limits::global().max_cube)?;
    if n < 2 {
        return Err(Error::Invalid("the open box has no critical edge below dimension 2".into()));
    }
    collapse_critical(&SubcomplexOfCube::open_box(n, i, eps)?, n, i, eps)
}

/// `Qⁿ` with the quotient `□^n -> Qⁿ`.
#[derive(Clone, Debug)]
pub struct QComplex {
    pub complex: CubicalComplex,
    pub quotient: ComplexMap,
    /// Cube vertex of each 0-cell of `□^n`.
    pub cube_vertices: Vec<Vertex>,
    /// `sup` value carried by each vertex of `Qⁿ`.
    pub vertex_sup: Vec<usize>,
}

/// `Qⁿ`: the quotient of `□^n` collapsing each face `∂_{i,1}` onto its last
/// `n - i` coordinates.
pub fn q_complex(n: usize) -> Result<QComplex> {
    guard("cube dimension", "MAX_CUBE", n, Limits::global().max_cube.min(5))?;
    let cube = SubcomplexOfCube::standard(n);
    let (s, labels) = cube.to_complex();
    if n == 0 {
        let quotient = ComplexMap {
            images: vec![vec![CubeElement::nondegenerate(0, 0)]],
        };
        return Ok(QComplex {
            complex: s,
            quotient,
            cube_vertices: labels,
            vertex_sup: vec![0],
        });
    }
    let targets: Vec<CubicalComplex> = (1..=n)
        .map(|i| SubcomplexOfCube::standard(n - i).to_complex().0)
        .collect();
    let sources: Vec<CubicalComplex> = (1..=n)
        .map(|_| SubcomplexOfCube::standard(n - 1).to_complex().0)
        .collect();
    let (t, t_inj) = CubicalComplex::disjoint_union(&targets.iter().collect::<Vec<_>>());
    let (a, _) = CubicalComplex::disjoint_union(&sources.iter().collect::<Vec<_>>());
    let mut f = ComplexMap {
        images: vec![Vec::new(); n],
    };
    let mut g = ComplexMap {
        images: vec![Vec::new(); n],
    };
    for i in 1..=n {
        let (lo, hi) = face_pair(n, i, true);
        let face = cube.cell(lo, hi).expect("face of the cube");
        let (_, fi) = s.yoneda(&face);
        let top = t_inj[i - 1].images[n - i][0].clone();
        let proj = BoxMap::from_normal_form(
            n - 1,
            NormalForm {
                degeneracies: (1..i).collect(),
                ..Default::default()
            },
        )?;
        let elem = CubeElement {
            dim: top.dim,
            cell: top.cell,
            epi: proj,
        };
        let (_, gi) = t.yoneda(&elem);
        for k in 0..n {
            f.images[k].extend(fi.images[k].iter().cloned());
            g.images[k].extend(gi.images[k].iter().cloned());
        }
    }
    let p = pushout(&s, &t, &a, &f, &g)?;
    let mut complex = p.complex;
    let mut vertex_sup = vec![usize::MAX; complex.count(0)];
    for (x, v) in labels.iter().enumerate() {
        let q = p.left.vertex(x);
        if vertex_sup[q] != usize::MAX && vertex_sup[q] != v.sup() {
            return Err(Error::Invalid("quotient mixes vertices with different sup".into()));
        }
        vertex_sup[q] = v.sup();
    }
    complex.set_vertex_names(vertex_sup.iter().map(|s| s.to_string()).collect());
    Ok(QComplex {
        complex,
        quotient: p.left,
        cube_vertices: labels,
        vertex_sup,
    })
}

/// The complex `K`: vertices `0` and `1`, a middle edge `0 -> 1`, two edges
/// `1 -> 0`, and two squares whose remaining faces are degenerate.
///
/// ```text
/// 1 → 0 = 0
/// ‖   ↓   ‖
/// 1 = 1 → 0
/// ```
pub fn k_complex() -> CubicalComplex {
    let mut c = CubicalComplex::new();
    let v0 = c.add_vertex("0");
    let v1 = c.add_vertex("1");
    let nd0 = |x| CubeElement::nondegenerate(0, x);
    let m = c.add_cell(1, vec![nd0(v0), nd0(v1)]).expect("edge");
    let h1 = c.add_cell(1, vec![nd0(v1), nd0(v0)]).expect("edge");
    let h2 = c.add_cell(1, vec![nd0(v1), nd0(v0)]).expect("edge");
    let nd1 = |x| CubeElement::nondegenerate(1, x);
    let flat = |v| CubeElement {
        dim: 0,
        cell: v,
        epi: BoxMap::constant(1, Vertex::alpha(0)),
    };
    // faces in the order ∂_{1,0}, ∂_{1,1}, ∂_{2,0}, ∂_{2,1}
    c.add_cell(2, vec![flat(v1), nd1(m), nd1(h1), flat(v1)]).expect("left square");
    c.add_cell(2, vec![nd1(m), flat(v0), flat(v0), nd1(h2)]).expect("right square");
    c
}

/// `□̃²`: the square with both edges along the second coordinate collapsed.
pub fn tilde_square() -> Result<Pushout> {
    let cube = SubcomplexOfCube::standard(2);
    let (s, _) = cube.to_complex();
    let (interval, _) = SubcomplexOfCube::standard(1).to_complex();
    let mut f = ComplexMap::default();
    let mut parts = Vec::new();
    for eps in [false, true] {
        let (lo, hi) = face_pair(2, 1, eps);
        let (_, y) = s.yoneda(&cube.cell(lo, hi).expect("edge"));
        parts.push(y);
    }
    f.images = (0..=1)
        .map(|k| parts.iter().flat_map(|y| y.images[k].iter().cloned()).collect())
        .collect();
    let (a, _) = CubicalComplex::disjoint_union(&[&interval, &interval]);
    let (t, _) = CubicalComplex::disjoint_union(&[&point(), &point()]);
    let crush = crush_interval();
    let g = ComplexMap {
        images: vec![
            vec![
                CubeElement::nondegenerate(0, 0),
                CubeElement::nondegenerate(0, 0),
                CubeElement::nondegenerate(0, 1),
                CubeElement::nondegenerate(0, 1),
            ],
            vec![
                crush.images[1][0].clone(),
                CubeElement {
                    cell: 1,
                    ..crush.images[1][0].clone()
                },
            ],
        ],
    };
    pushout(&s, &t, &a, &f, &g)
}

/// The counterexample `X = □̃² ⊔_{□^1} □̃²`, glued along `∂_{2,0}` of the
/// first copy and `∂_{2,1}` of the second.
#[derive(Clone, Debug)]
pub struct CounterexampleX {
    pub complex: CubicalComplex,
    pub source: usize,
    pub target: usize,
    /// The three nondegenerate edges, with `u ⤳ v ⤳ w`.
    pub u: usize,
    pub v: usize,
    pub w: usize,
}

pub fn counterexample_x() -> Result<CounterexampleX> {
    let tilde = tilde_square()?;
    let cube = SubcomplexOfCube::standard(2);
    let edge_in_tilde = |eps: bool| {
        let (lo, hi) = face_pair(2, 2, eps);
        tilde.left.images[1][cube.cell_index(lo, hi).expect("edge")].clone()
    };
    let bottom = edge_in_tilde(false);
    let top = edge_in_tilde(true);
    let (interval, f) = tilde.complex.yoneda(&bottom);
    let (_, g) = tilde.complex.yoneda(&top);
    let p = pushout(&tilde.complex, &tilde.complex, &interval, &f, &g)?;
    let u = p.left.images[1][top.cell].cell;
    let v = p.left.images[1][bottom.cell].cell;
    let w = p.right.images[1][bottom.cell].cell;
    let (source, target) = p.complex.edge_ends(v);
    Ok(CounterexampleX {
        complex: p.complex,
        source,
        target,
        u,
        v,
        w,
    })
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_cube_two() {
        let (p, labels) = inner_cube(2, 1, true).unwrap();
        assert_eq!(p.complex.counts(), vec![3, 3, 1]);
        let a = labels.iter().position(|v| *v == Vertex::alpha(2)).unwrap();
        let e1 = labels.iter().position(|v| *v == Vertex::parse("10").unwrap()).unwrap();
        assert_eq!(p.left.vertex(a), p.left.vertex(e1));
        assert!(p.complex.validate().is_ok());
        let (p0, labels0) = inner_cube(3, 2, false).unwrap();
        let w = labels0.iter().position(|v| *v == Vertex::omega(3)).unwrap();
        let c = labels0.iter().position(|v| *v == Vertex::parse("101").unwrap()).unwrap();
        assert_eq!(p0.left.vertex(w), p0.left.vertex(c));
        assert_eq!(p0.complex.count(0), 7);
    }

    #[test]
    fn inner_open_box_is_valid() {
        for n in 2..=3 {
            for i in 1..=n {
                for eps in [false, true] {
                    let (p, _) = inner_open_box(n, i, eps).unwrap();
                    assert!(p.complex.validate().is_ok());
                    assert_eq!(p.complex.count(0), (1 << n) - 1);
                }
            }
        }
    }

    #[test]
    fn q_vertices_are_sups() {
        for n in 0..=4 {
            let q = q_complex(n).unwrap();
            assert_eq!(q.complex.count(0), n + 1);
            assert!(q.complex.validate().is_ok(), "Q^{n}");
            for (x, v) in q.cube_vertices.iter().enumerate() {
                assert_eq!(q.vertex_sup[q.quotient.vertex(x)], v.sup());
            }
        }
        let q1 = q_complex(1).unwrap();
        assert_eq!(q1.complex.counts(), vec![2, 1]);
    }

    #[test]
    fn k_shape() {
        let k = k_complex();
        assert_eq!(k.counts(), vec![2, 3, 2]);
        assert!(k.validate().is_ok(), "{}", k.validate());
    }

    #[test]
    fn counterexample_shape() {
        let t = tilde_square().unwrap();
        assert_eq!(t.complex.counts(), vec![2, 2, 1]);
        let x = counterexample_x().unwrap();
        assert_eq!(x.complex.counts(), vec![2, 3, 2]);
        assert!(x.complex.validate().is_ok());
        let mut e = vec![x.u, x.v, x.w];
        e.sort();
        e.dedup();
        assert_eq!(e.len(), 3);
    }

    #[test]
    fn wedge_of_cubes_counts() {
        let w = wedge(&BipointedComplex::cube(2), &BipointedComplex::cube(3)).unwrap();
        assert_eq!(w.bipointed.complex.counts(), vec![11, 16, 7, 1]);
        assert!(w.bipointed.complex.validate().is_ok());
        let i = wedge(&BipointedComplex::cube(1), &BipointedComplex::cube(1)).unwrap();
        assert_eq!(i.bipointed.complex.counts(), vec![3, 2]);
        let (a, b) = (i.bipointed.a, i.bipointed.b);
        assert_ne!(a, b);
        let unit = wedge(&BipointedComplex::point(), &BipointedComplex::cube(2)).unwrap();
        assert_eq!(unit.bipointed.complex.counts(), vec![4, 4, 1]);
    }
}
