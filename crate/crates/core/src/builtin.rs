//! Named constructors shared by the command line and the C interface.
//!
//! Specs look like `cube:3`, `open-box:3:1:0`, `necklace:2,1,3` or `k`.

use std::fmt;
use std::str::FromStr;

use crate::cubeset::{counterexample_x, inner_cube, inner_open_box, k_complex, q_complex, CubicalComplex, SubcomplexOfCube};
use crate::error::{Error, Result};
use crate::necklace::Necklace;
use crate::posets::{nerve, FinitePoset};
use crate::rigidify::{inner_mapping_space, necklace_mapping_space, simplicial_hom, subcomplex_mapping_space, MappingSpace};
use crate::sset::TruncSSet;
use crate::vertex::Vertex;

pub const NAMES: &[&str] = &[
    "cube:n",
    "boundary:n",
    "open-box:n:i:e",
    "inner-cube:n:i:e",
    "inner-open-box:n:i:e",
    "q:n",
    "k",
    "x",
    "necklace:n1,n2,...",
    "delta:n",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Cube(usize),
    Boundary(usize),
    OpenBox(usize, usize, bool),
    InnerCube(usize, usize, bool),
    InnerOpenBox(usize, usize, bool),
    Q(usize),
    K,
    X,
    Necklace(Necklace),
    Delta(usize),
}

fn num(s: &str, spec: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Invalid(format!("{spec:?}: expected a number, got {s:?}")))
}

fn eps(s: &str, spec: &str) -> Result<bool> {
    match s.trim() {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(Error::Invalid(format!("{spec:?}: ε must be 0 or 1"))),
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let mut parts = spec.trim().splitn(2, ':');
        let head = parts.next().unwrap_or_default();
        let rest = parts.next();
        let args: Vec<&str> = rest.map(|r| r.split(':').collect()).unwrap_or_default();
        let arity = |k: usize| -> Result<()> {
            if args.len() == k {
                Ok(())
            } else {
                Err(Error::Invalid(format!("{spec:?}: {head} takes {k} parameter(s)")))
            }
        };
        let b = match head {
            "cube" => {
                arity(1)?;
                Builtin::Cube(num(args[0], spec)?)
            }
            "boundary" => {
                arity(1)?;
                Builtin::Boundary(num(args[0], spec)?)
            }
            "open-box" | "inner-cube" | "inner-open-box" => {
                arity(3)?;
                let (n, i, e) = (num(args[0], spec)?, num(args[1], spec)?, eps(args[2], spec)?);
                match head {
                    "open-box" => Builtin::OpenBox(n, i, e),
                    "inner-cube" => Builtin::InnerCube(n, i, e),
                    _ => Builtin::InnerOpenBox(n, i, e),
                }
            }
            "q" => {
                arity(1)?;
                Builtin::Q(num(args[0], spec)?)
            }
            "k" => {
                arity(0)?;
                Builtin::K
            }
            "x" => {
                arity(0)?;
                Builtin::X
            }
            "necklace" => {
                arity(1)?;
                Builtin::Necklace(Necklace::parse(args[0])?)
            }
            "delta" => {
                arity(1)?;
                Builtin::Delta(num(args[0], spec)?)
            }
            _ => {
                return Err(Error::Invalid(format!(
                    "unknown constructor {head:?}; known: {}",
                    NAMES.join(", ")
                )))
            }
        };
        Ok(b)
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = |b: &bool| *b as u8;
        match self {
            Builtin::Cube(n) => write!(f, "cube:{n}"),
            Builtin::Boundary(n) => write!(f, "boundary:{n}"),
            Builtin::OpenBox(n, i, b) => write!(f, "open-box:{n}:{i}:{}", e(b)),
            Builtin::InnerCube(n, i, b) => write!(f, "inner-cube:{n}:{i}:{}", e(b)),
            Builtin::InnerOpenBox(n, i, b) => write!(f, "inner-open-box:{n}:{i}:{}", e(b)),
            Builtin::Q(n) => write!(f, "q:{n}"),
            Builtin::K => write!(f, "k"),
            Builtin::X => write!(f, "x"),
            Builtin::Necklace(t) => {
                let beads: Vec<String> = t.beads().iter().map(|b| b.to_string()).collect();
                write!(f, "necklace:{}", beads.join(","))
            }
            Builtin::Delta(n) => write!(f, "delta:{n}"),
        }
    }
}

impl Builtin {
    /// The builtin as a subcomplex of a cube, when it is one.
    pub fn subcomplex(&self) -> Result<Option<SubcomplexOfCube>> {
        Ok(match self {
            Builtin::Cube(n) => Some(cube_guarded(*n)?),
            Builtin::Boundary(n) => {
                cube_guarded(*n)?;
                Some(SubcomplexOfCube::boundary(*n))
            }
            Builtin::OpenBox(n, i, e) => {
                cube_guarded(*n)?;
                Some(SubcomplexOfCube::open_box(*n, *i, *e)?)
            }
            Builtin::Necklace(t) => {
                cube_guarded(t.total_dim())?;
                Some(t.to_subcomplex())
            }
            _ => None,
        })
    }

    pub fn complex(&self) -> Result<CubicalComplex> {
        if let Some(s) = self.subcomplex()? {
            return Ok(s.to_complex().0);
        }
        match self {
            Builtin::InnerCube(n, i, e) => Ok(inner_cube(*n, *i, *e)?.0.complex),
            Builtin::InnerOpenBox(n, i, e) => Ok(inner_open_box(*n, *i, *e)?.0.complex),
            Builtin::Q(n) => Ok(q_complex(*n)?.complex),
            Builtin::K => Ok(k_complex()),
            Builtin::X => Ok(counterexample_x()?.complex),
            Builtin::Delta(_) => Err(Error::Invalid("delta:n is a simplicial set, not a cubical one".into())),
            _ => unreachable!("subcomplexes handled above"),
        }
    }

    /// `Δ^n` for `delta:n`, otherwise an error.
    pub fn simplex(&self, top: Option<usize>) -> Result<TruncSSet> {
        match self {
            Builtin::Delta(n) => Ok(nerve(&FinitePoset::chain(n + 1), top.or(Some(*n)))?.sset),
            _ => Err(Error::Invalid(format!("{self} is not a simplicial set"))),
        }
    }

    /// Ambient cube dimension in which vertices are named.
    fn vertex_dim(&self) -> Option<usize> {
        match self {
            Builtin::Cube(n)
            | Builtin::Boundary(n)
            | Builtin::OpenBox(n, _, _)
            | Builtin::InnerCube(n, _, _)
            | Builtin::InnerOpenBox(n, _, _) => Some(*n),
            Builtin::Necklace(t) => Some(t.total_dim()),
            _ => None,
        }
    }

    /// Reads `alpha`, `omega` or a 0/1 string as a vertex of the ambient cube.
    pub fn vertex(&self, s: &str) -> Result<Vertex> {
        let n = self
            .vertex_dim()
            .ok_or_else(|| Error::Invalid(format!("{self} has no cube coordinates")))?;
        let v = match s.trim() {
            "alpha" | "α" => Vertex::alpha(n),
            "omega" | "ω" => Vertex::omega(n),
            t => Vertex::parse(t)?,
        };
        if v.dim() != n {
            return Err(Error::DimensionMismatch(format!("{s:?} is not a vertex of [1]^{n}")));
        }
        Ok(v)
    }

    /// The rigidification mapping space from `from` to `to`.
    pub fn mapping_space(&self, from: &str, to: &str, top: Option<usize>) -> Result<MappingSpace> {
        match self {
            Builtin::Delta(n) => simplicial_hom(*n, num(from, from)?, num(to, to)?, top),
            Builtin::Necklace(t) => necklace_mapping_space(t, self.vertex(from)?, self.vertex(to)?, top),
            Builtin::InnerCube(n, i, e) | Builtin::InnerOpenBox(n, i, e) => inner_mapping_space(
                *n,
                *i,
                *e,
                self.vertex(from)?,
                self.vertex(to)?,
                matches!(self, Builtin::InnerOpenBox(..)),
                top,
            ),
            Builtin::Q(_) | Builtin::K | Builtin::X => Err(Error::Invalid(format!(
                "mapping spaces of {self} are not computed; try paths order"
            ))),
            _ => {
                let s = self.subcomplex()?.expect("subcomplex");
                subcomplex_mapping_space(&s, self.vertex(from)?, self.vertex(to)?, top)
            }
        }
    }
}

fn cube_guarded(n: usize) -> Result<SubcomplexOfCube> {
    crate::error::guard("cube dimension", "MAX_CUBE", n, crate::limits::Limits::global().max_cube)?;
    Ok(SubcomplexOfCube::standard(n))
}
