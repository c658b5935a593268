//! Monomorphic necklaces inside a subcomplex of a cube, stored as flags.

use std::collections::HashMap;
use std::fmt;

use crate::cubeset::SubcomplexOfCube;
use crate::error::{guard, Error, Result};
use crate::limits::Limits;
use crate::posets::{FinitePoset, OrderedPartition};
use crate::vertex::Vertex;

use super::Necklace;

/// A strictly increasing vertex sequence `a_0 ≺ a_1 ≺ … ≺ a_k`; the
/// necklace it embeds has beads `d(a_{i-1}, a_i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Flag {
    verts: Vec<Vertex>,
}

impl Flag {
    pub fn new(verts: Vec<Vertex>) -> Result<Self> {
        if verts.is_empty() {
            return Err(Error::Invalid("a flag needs at least one vertex".into()));
        }
        for w in verts.windows(2) {
            if w[0] == w[1] || !w[0].leq(&w[1]) {
                return Err(Error::Invalid(format!("{} ⊀ {}", w[0], w[1])));
            }
        }
        Ok(Flag { verts })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.verts
    }

    pub fn start(&self) -> Vertex {
        self.verts[0]
    }

    pub fn end(&self) -> Vertex {
        *self.verts.last().expect("nonempty")
    }

    pub fn necklace(&self) -> Necklace {
        Necklace::new(
            self.verts
                .windows(2)
                .map(|w| w[0].distance(&w[1]).expect("increasing"))
                .collect(),
        )
        .expect("positive beads")
    }

    /// Coordinates switched on by each bead, as bitmasks.
    pub fn blocks(&self) -> Vec<u32> {
        self.verts.windows(2).map(|w| w[1].bits() & !w[0].bits()).collect()
    }

    pub fn to_partition(&self) -> OrderedPartition {
        OrderedPartition(self.blocks())
    }

    /// `self ≤ other`: `other` passes through a subset of the vertices of
    /// `self`.
    pub fn refines(&self, other: &Flag) -> bool {
        other.verts.iter().all(|v| self.verts.binary_search_by(|w| w.bits().cmp(&v.bits())).is_ok())
            && self.start() == other.start()
            && self.end() == other.end()
    }

    pub fn lies_in(&self, s: &SubcomplexOfCube) -> bool {
        self.verts.windows(2).all(|w| s.contains(w[0], w[1]))
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.verts.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("<"))
    }
}

/// Least upper bound: the flag through the common vertices.
pub fn lub_flags(flags: &[Flag]) -> Result<Flag> {
    let first = flags.first().ok_or_else(|| Error::Invalid("lub of no flags".into()))?;
    if flags.iter().any(|f| f.start() != first.start() || f.end() != first.end()) {
        return Err(Error::Invalid("flags with different endpoints".into()));
    }
    let verts = first
        .verts
        .iter()
        .copied()
        .filter(|v| flags.iter().all(|f| f.verts.contains(v)))
        .collect();
    Flag::new(verts)
}

/// The poset of necklaces embedded in `S` from `a` to `b`.
#[derive(Clone, Debug)]
pub struct SubNeckPoset {
    pub poset: FinitePoset,
    flags: Vec<Flag>,
    index: HashMap<Flag, usize>,
}

impl SubNeckPoset {
    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn flag(&self, x: usize) -> &Flag {
        &self.flags[x]
    }

    pub fn index_of(&self, f: &Flag) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    /// The least upper bound inside this poset, when the flag through the
    /// common vertices lies in `S`.
    pub fn lub(&self, xs: &[usize]) -> Option<usize> {
        let fs: Vec<Flag> = xs.iter().map(|&x| self.flags[x].clone()).collect();
        lub_flags(&fs).ok().and_then(|f| self.index_of(&f))
    }
}

/// `SubNeck(S_{a,b})` for a subcomplex `S` of a cube. Flags are listed by
/// number of beads, then vertex sequence; covers drop one inner vertex.
pub fn subneck_poset(s: &SubcomplexOfCube, a: Vertex, b: Vertex) -> Result<SubNeckPoset> {
    let n = s.ambient_dim();
    if a.dim() != n || b.dim() != n {
        return Err(Error::DimensionMismatch(format!("vertices of [1]^{n} expected")));
    }
    let empty = || SubNeckPoset {
        poset: FinitePoset::empty(),
        flags: vec![],
        index: HashMap::new(),
    };
    let Some(d) = a.distance(&b) else {
        return Ok(empty());
    };
    guard("SubNeck span", "MAX_POSET", d, Limits::global().max_poset)?;
    let verts = s.vertices();
    if !verts.contains(&a) || !verts.contains(&b) {
        return Ok(empty());
    }
    let mut flags = Vec::new();
    let mut stack = vec![vec![a]];
    while let Some(path) = stack.pop() {
        let c = *path.last().expect("nonempty");
        if c == b {
            flags.push(Flag { verts: path });
            continue;
        }
        for &v in &verts {
            if v != c && c.leq(&v) && v.leq(&b) && s.contains(c, v) {
                let mut p = path.clone();
                p.push(v);
                stack.push(p);
            }
        }
    }
    flags.sort_by(|x, y| y.verts.len().cmp(&x.verts.len()).then_with(|| x.verts.cmp(&y.verts)));
    let index: HashMap<Flag, usize> = flags.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    let mut gens = Vec::new();
    for (i, f) in flags.iter().enumerate() {
        for k in 1..f.verts.len().saturating_sub(1) {
            let mut coarser = f.verts.clone();
            coarser.remove(k);
            if let Some(&j) = index.get(&Flag { verts: coarser }) {
                gens.push((i, j));
            }
        }
    }
    let labels = flags.iter().map(|f| f.to_string()).collect();
    let poset = FinitePoset::from_generators(labels, &gens)?;
    Ok(SubNeckPoset { poset, flags, index })
}
