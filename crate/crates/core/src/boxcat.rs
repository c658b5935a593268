//! The cube category with faces, degeneracies and negative connections.
//!
//! A morphism `[1]^n -> [1]^m` is stored as its table of vertex images
//! together with its normal form
//! `(∂_{c1,ε1}…∂_{cr,εr})(γ_{b1,0}…γ_{bq,0})(σ_{a1}…σ_{ap})`
//! with `a` and `b` strictly increasing and `c` strictly decreasing.
//! Read right to left: forget the coordinates in `a`, merge the runs
//! of consecutive surviving coordinates glued by `b` with `max`, then
//! insert the constants `ε_j` at output positions `c_j`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{guard, Error, Result};
use crate::limits::Limits;
use crate::vertex::{full, Vertex, MAX_DIM};

/// One generating morphism.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Generator {
    /// `∂_{i,ε}: [1]^{n-1} -> [1]^n`, inserts `ε` at coordinate `i`.
    Face { i: usize, eps: bool },
    /// `σ_i: [1]^n -> [1]^{n-1}`, forgets coordinate `i`.
    Degeneracy { i: usize },
    /// `γ_{i,0}: [1]^n -> [1]^{n-1}`, replaces `x_i, x_{i+1}` by their max.
    Connection { i: usize },
}

/// Normal-form word of a box map.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct NormalForm {
    /// `(c_j, ε_j)` with `c` strictly decreasing.
    pub faces: Vec<(usize, bool)>,
    /// Strictly increasing.
    pub connections: Vec<usize>,
    /// Strictly increasing.
    pub degeneracies: Vec<usize>,
}

impl NormalForm {
    pub fn is_identity(&self) -> bool {
        self.faces.is_empty() && self.connections.is_empty() && self.degeneracies.is_empty()
    }

    /// Target dimension given the source dimension.
    pub fn target_dim(&self, src: usize) -> Option<usize> {
        (src + self.faces.len())
            .checked_sub(self.connections.len() + self.degeneracies.len())
    }

    fn check(&self, src: usize) -> Result<usize> {
        let bad = |m: String| Err(Error::Invalid(format!("normal form {self}: {m}")));
        if !self.degeneracies.windows(2).all(|w| w[0] < w[1]) {
            return bad("degeneracy indices must increase".into());
        }
        if !self.connections.windows(2).all(|w| w[0] < w[1]) {
            return bad("connection indices must increase".into());
        }
        if !self.faces.windows(2).all(|w| w[0].0 > w[1].0) {
            return bad("face indices must decrease".into());
        }
        if self.degeneracies.iter().any(|&a| a == 0 || a > src) {
            return bad(format!("degeneracy index outside 1..={src}"));
        }
        let k = src - self.degeneracies.len();
        if self.connections.iter().any(|&b| b == 0 || b >= k) {
            return bad(format!("connection index outside 1..{k}"));
        }
        let m = k - self.connections.len() + self.faces.len();
        if self.faces.iter().any(|&(c, _)| c == 0 || c > m) {
            return bad(format!("face index outside 1..={m}"));
        }
        Ok(m)
    }

    /// Evaluates the word on a vertex of `[1]^src`.
    fn eval(&self, src: usize, m: usize, v: u32) -> u32 {
        // runs[t] = value of the t-th merged coordinate
        let mut runs: Vec<bool> = Vec::with_capacity(src);
        let mut pos = 0usize;
        let mut di = 0usize;
        let mut ci = 0usize;
        for coord in 1..=src {
            if di < self.degeneracies.len() && self.degeneracies[di] == coord {
                di += 1;
                continue;
            }
            pos += 1;
            let bit = v >> (coord - 1) & 1 == 1;
            // position `pos` joins the previous run when `pos - 1` is a connection index
            let joined = pos > 1
                && ci < self.connections.len()
                && self.connections[ci] == pos - 1;
            if joined {
                ci += 1;
                let last = runs.last_mut().expect("run exists");
                *last |= bit;
            } else {
                runs.push(bit);
            }
        }
        let mut out = 0u32;
        let mut r = runs.into_iter();
        for p in 1..=m {
            let val = match self.faces.iter().find(|&&(c, _)| c == p) {
                Some(&(_, e)) => e,
                None => r.next().expect("enough runs"),
            };
            if val {
                out |= 1 << (p - 1);
            }
        }
        out
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut nf = NormalForm::default();
        let t = s.trim();
        if t.is_empty() || t == "id" {
            return Ok(nf);
        }
        let err = |tok: &str| Error::Invalid(format!("bad generator {tok:?} in {s:?}"));
        for tok in t.split_whitespace() {
            let (head, rest) = tok.split_at(1);
            match head {
                "d" => {
                    let (i, e) = rest.split_once(',').ok_or_else(|| err(tok))?;
                    let i = i.parse().map_err(|_| err(tok))?;
                    let e = match e {
                        "0" => false,
                        "1" => true,
                        _ => return Err(err(tok)),
                    };
                    nf.faces.push((i, e));
                }
                "g" => nf.connections.push(rest.parse().map_err(|_| err(tok))?),
                "s" => nf.degeneracies.push(rest.parse().map_err(|_| err(tok))?),
                _ => return Err(err(tok)),
            }
        }
        Ok(nf)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let mut parts = Vec::new();
        for &(c, e) in &self.faces {
            parts.push(format!("d{c},{}", e as u8));
        }
        for &b in &self.connections {
            parts.push(format!("g{b}"));
        }
        for &a in &self.degeneracies {
            parts.push(format!("s{a}"));
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// A morphism `[1]^src -> [1]^dst` of the box category.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct BoxMap {
    src: u8,
    dst: u8,
    table: Vec<u32>,
    normal: NormalFormKey,
}

// Wrapper so `BoxMap` can derive `Ord` by table first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct NormalFormKey(NormalForm);

impl PartialOrd for NormalFormKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for NormalFormKey {
    fn cmp(&self, _other: &Self) -> std::cmp::Ordering {
        std::cmp::Ordering::Equal
    }
}

fn check_dims(src: usize, dst: usize) -> Result<()> {
    if src > MAX_DIM || dst > MAX_DIM {
        return Err(Error::Invalid(format!(
            "cube dimension above {MAX_DIM}: {src} -> {dst}"
        )));
    }
    Ok(())
}

impl BoxMap {
    /// Builds a map from its vertex table, rejecting non-monotone maps and
    /// monotone maps outside the box category.
    pub fn from_table(src: usize, dst: usize, table: Vec<u32>) -> Result<Self> {
        check_dims(src, dst)?;
        if table.len() != 1usize << src {
            return Err(Error::DimensionMismatch(format!(
                "table of length {} for [1]^{src}",
                table.len()
            )));
        }
        if let Some(x) = table.iter().find(|&&x| x & !full(dst) != 0) {
            return Err(Error::IndexOutOfRange(format!("image {x:#b} outside [1]^{dst}")));
        }
        for v in 0..table.len() as u32 {
            for i in 0..src {
                let w = v | 1 << i;
                if w != v && table[v as usize] & !table[w as usize] != 0 {
                    return Err(Error::NotMonotone(format!(
                        "{} ≼ {} but images {} ⋠ {}",
                        Vertex::raw(src, v),
                        Vertex::raw(src, w),
                        Vertex::raw(dst, table[v as usize]),
                        Vertex::raw(dst, table[w as usize])
                    )));
                }
            }
        }
        let normal = normalize(src, dst, &table)?;
        Ok(BoxMap {
            src: src as u8,
            dst: dst as u8,
            table,
            normal: NormalFormKey(normal),
        })
    }

    /// Builds a map from a function on vertices.
    pub fn from_fn(src: usize, dst: usize, f: impl Fn(Vertex) -> Vertex) -> Result<Self> {
        check_dims(src, dst)?;
        let mut table = Vec::with_capacity(1 << src);
        for v in 0..=full(src) {
            let w = f(Vertex::raw(src, v));
            if w.dim() != dst {
                return Err(Error::DimensionMismatch(format!(
                    "image {w} is not in [1]^{dst}"
                )));
            }
            table.push(w.bits());
        }
        BoxMap::from_table(src, dst, table)
    }

    pub fn from_normal_form(src: usize, nf: NormalForm) -> Result<Self> {
        let m = nf.check(src)?;
        check_dims(src, m)?;
        let table = (0..=full(src)).map(|v| nf.eval(src, m, v)).collect();
        Ok(BoxMap {
            src: src as u8,
            dst: m as u8,
            table,
            normal: NormalFormKey(nf),
        })
    }

    pub fn identity(n: usize) -> Self {
        BoxMap::from_normal_form(n, NormalForm::default()).expect("identity")
    }

    pub fn face(n: usize, i: usize, eps: bool) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange(format!("face ∂_{{{i}}} on [1]^{n}")));
        }
        BoxMap::from_normal_form(
            n - 1,
            NormalForm {
                faces: vec![(i, eps)],
                ..Default::default()
            },
        )
    }

    pub fn degeneracy(n: usize, i: usize) -> Result<Self> {
        BoxMap::from_normal_form(
            n,
            NormalForm {
                degeneracies: vec![i],
                ..Default::default()
            },
        )
    }

    pub fn connection(n: usize, i: usize) -> Result<Self> {
        BoxMap::from_normal_form(
            n,
            NormalForm {
                connections: vec![i],
                ..Default::default()
            },
        )
    }

    pub fn generator(n: usize, g: Generator) -> Result<Self> {
        match g {
            Generator::Face { i, eps } => BoxMap::face(n, i, eps),
            Generator::Degeneracy { i } => BoxMap::degeneracy(n, i),
            Generator::Connection { i } => BoxMap::connection(n, i),
        }
    }

    /// Constant map onto vertex `v`.
    pub fn constant(src: usize, v: Vertex) -> Self {
        let table = vec![v.bits(); 1 << src];
        BoxMap::from_table(src, v.dim(), table).expect("constants are box maps")
    }

    /// The face inclusion `ι^n_{a,b}: [1]^{d(a,b)} -> [1]^n` with
    /// `ι(α) = a` and `ι(ω) = b`.
    pub fn iota(a: Vertex, b: Vertex) -> Result<Self> {
        let d = a.distance(&b).ok_or_else(|| {
            Error::Invalid(format!("ι_{{a,b}} needs a ≼ b, got {a} and {b}"))
        })?;
        let free: Vec<usize> = (1..=a.dim()).filter(|&c| b.get(c) && !a.get(c)).collect();
        let n = a.dim();
        BoxMap::from_fn(d, n, |x| {
            let mut bits = a.bits();
            for (k, &c) in free.iter().enumerate() {
                if x.get(k + 1) {
                    bits |= 1 << (c - 1);
                }
            }
            Vertex::raw(n, bits)
        })
    }

    pub fn src_dim(&self) -> usize {
        self.src as usize
    }

    pub fn dst_dim(&self) -> usize {
        self.dst as usize
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn normal_form(&self) -> &NormalForm {
        &self.normal.0
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        assert_eq!(v.dim(), self.src_dim(), "vertex dimension");
        Vertex::raw(self.dst_dim(), self.table[v.bits() as usize])
    }

    pub fn image_alpha(&self) -> Vertex {
        Vertex::raw(self.dst_dim(), self.table[0])
    }

    pub fn image_omega(&self) -> Vertex {
        Vertex::raw(self.dst_dim(), *self.table.last().expect("nonempty"))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &BoxMap) -> Result<BoxMap> {
        if first.dst != self.src {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose [1]^{} -> [1]^{} after [1]^{} -> [1]^{}",
                self.src, self.dst, first.src, first.dst
            )));
        }
        let table: Vec<u32> = first
            .table
            .iter()
            .map(|&v| self.table[v as usize])
            .collect();
        let normal = normalize(first.src_dim(), self.dst_dim(), &table)
            .expect("composites of box maps are box maps");
        Ok(BoxMap {
            src: first.src,
            dst: self.dst,
            table,
            normal: NormalFormKey(normal),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.normal.0.is_identity()
    }

    /// Monomorphisms are exactly the maps built from faces alone,
    /// equivalently those with `d(φ(α), φ(ω)) = n`.
    pub fn is_mono(&self) -> bool {
        self.image_alpha().distance(&self.image_omega()) == Some(self.src_dim())
    }

    pub fn is_epi(&self) -> bool {
        self.normal.0.faces.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.table.iter().all(|&x| x == self.table[0])
    }

    /// Unique factorisation `self = mono ∘ epi`.
    pub fn epi_mono(&self) -> (BoxMap, BoxMap) {
        let nf = &self.normal.0;
        let epi = BoxMap::from_normal_form(
            self.src_dim(),
            NormalForm {
                faces: vec![],
                connections: nf.connections.clone(),
                degeneracies: nf.degeneracies.clone(),
            },
        )
        .expect("epi part");
        let mono = BoxMap::from_normal_form(
            epi.dst_dim(),
            NormalForm {
                faces: nf.faces.clone(),
                ..Default::default()
            },
        )
        .expect("mono part");
        (epi, mono)
    }

    /// For a mono `∂_{c1,ε1} ∘ rest`, returns `((c1, ε1), rest)`.
    pub(crate) fn split_outer_face(&self) -> Option<((usize, bool), BoxMap)> {
        let nf = &self.normal.0;
        let (&first, rest_faces) = nf.faces.split_first()?;
        if !nf.connections.is_empty() || !nf.degeneracies.is_empty() {
            return None;
        }
        let rest = BoxMap::from_normal_form(
            self.src_dim(),
            NormalForm {
                faces: rest_faces.to_vec(),
                ..Default::default()
            },
        )
        .expect("tail of a normal form");
        Some((first, rest))
    }
}

impl fmt::Display for BoxMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : [1]^{} -> [1]^{}", self.normal.0, self.src, self.dst)
    }
}

/// Reads the normal form off a monotone vertex table.
fn normalize(src: usize, dst: usize, table: &[u32]) -> Result<NormalForm> {
    let alpha = table[0];
    let omega = table[full(src) as usize];
    let mut faces = Vec::new();
    let mut runs: Vec<u32> = Vec::new();
    for j in (1..=dst).rev() {
        let bit = 1u32 << (j - 1);
        if alpha & bit == omega & bit {
            faces.push((j, alpha & bit != 0));
        }
    }
    for j in 1..=dst {
        let bit = 1u32 << (j - 1);
        if alpha & bit == omega & bit {
            continue;
        }
        let mut s = 0u32;
        for i in 0..src {
            if table[1usize << i] & bit != 0 {
                s |= 1 << i;
            }
        }
        runs.push(s);
    }
    let reject = |why: &str| {
        Err(Error::NotInBoxCategory(format!(
            "[1]^{src} -> [1]^{dst} table {table:?}: {why}"
        )))
    };
    if runs.contains(&0) {
        return reject("an output coordinate is not a max of inputs");
    }
    for w in runs.windows(2) {
        let hi = 31 - w[0].leading_zeros();
        let lo = w[1].trailing_zeros();
        if hi >= lo {
            return reject("output coordinates use overlapping or unordered inputs");
        }
    }
    let used = runs.iter().fold(0u32, |a, &s| a | s);
    let degeneracies: Vec<usize> = (1..=src).filter(|&i| used >> (i - 1) & 1 == 0).collect();
    let mut connections = Vec::new();
    let mut pos = 0usize;
    let mut prev_run: Option<usize> = None;
    for i in 1..=src {
        let bit = 1u32 << (i - 1);
        if used & bit == 0 {
            continue;
        }
        pos += 1;
        let r = runs.iter().position(|&s| s & bit != 0).expect("used bit");
        if prev_run == Some(r) {
            connections.push(pos - 1);
        }
        prev_run = Some(r);
    }
    let nf = NormalForm {
        faces,
        connections,
        degeneracies,
    };
    let m = nf.check(src).expect("constructed normal form is well formed");
    debug_assert_eq!(m, dst);
    for v in 0..=full(src) {
        if nf.eval(src, dst, v) != table[v as usize] {
            return reject("table is not a max-of-coordinates map");
        }
    }
    Ok(nf)
}

/// All morphisms `[1]^n -> [1]^m`, sorted by vertex table.
pub fn enumerate_maps(n: usize, m: usize) -> Result<Vec<BoxMap>> {
    enumerate_maps_limited(n, m, Limits::global().max_box)
}

pub fn enumerate_maps_limited(n: usize, m: usize, max_sum: usize) -> Result<Vec<BoxMap>> {
    guard("n + m", "MAX_BOX", n + m, max_sum)?;
    let mut out = Vec::new();
    for_each_normal_form(n, m, false, |nf| {
        out.push(BoxMap::from_normal_form(n, nf).expect("generated normal form"));
    });
    out.sort();
    Ok(out)
}

/// All epimorphisms `[1]^n -> [1]^m`.
pub fn enumerate_epis(n: usize, m: usize) -> Vec<BoxMap> {
    let mut out = Vec::new();
    if m <= n {
        for_each_normal_form(n, m, true, |nf| {
            out.push(BoxMap::from_normal_form(n, nf).expect("generated normal form"));
        });
    }
    out.sort();
    out
}

fn subsets_of_size(universe: &[usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(u: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for idx in start..u.len() {
            if u.len() - idx < k - cur.len() {
                break;
            }
            cur.push(u[idx]);
            go(u, k, idx + 1, cur, f);
            cur.pop();
        }
    }
    go(universe, k, 0, &mut Vec::new(), f);
}

fn for_each_normal_form(n: usize, m: usize, epi_only: bool, mut f: impl FnMut(NormalForm)) {
    let coords: Vec<usize> = (1..=n).collect();
    for p in 0..=n {
        subsets_of_size(&coords, p, &mut |deg| {
            let k = n - p;
            let conn_universe: Vec<usize> = (1..k).collect();
            for q in 0..=conn_universe.len() {
                let kk = k - q;
                if kk > m || (epi_only && kk != m) {
                    continue;
                }
                subsets_of_size(&conn_universe, q, &mut |conn| {
                    let out_coords: Vec<usize> = (1..=m).collect();
                    subsets_of_size(&out_coords, m - kk, &mut |cs| {
                        for signs in 0u32..(1 << cs.len()) {
                            let faces: Vec<(usize, bool)> = cs
                                .iter()
                                .enumerate()
                                .rev()
                                .map(|(t, &c)| (c, signs >> t & 1 == 1))
                                .collect();
                            f(NormalForm {
                                faces,
                                connections: conn.to_vec(),
                                degeneracies: deg.to_vec(),
                            });
                        }
                    });
                });
            }
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashMap};

    fn v(t: &[u8]) -> Vertex {
        Vertex::from_tuple(t).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_maps(0, 0).unwrap().len(), 1);
        assert_eq!(enumerate_maps(1, 1).unwrap().len(), 3);
        let two_one = enumerate_maps(2, 1).unwrap();
        assert_eq!(two_one.len(), 5);
        let max = BoxMap::from_fn(2, 1, |x| Vertex::raw(1, (x.bits() != 0) as u32)).unwrap();
        assert!(two_one.contains(&max));
        assert_eq!(max.normal_form().to_string(), "g1");
    }

    #[test]
    fn min_is_rejected_but_monotone() {
        let min = BoxMap::from_fn(2, 1, |x| Vertex::raw(1, (x.bits() == 3) as u32));
        assert!(matches!(min, Err(Error::NotInBoxCategory(_))));
        let swap = BoxMap::from_fn(1, 1, |x| Vertex::raw(1, 1 - x.bits()));
        assert!(matches!(swap, Err(Error::NotMonotone(_))));
        // the coordinate swap of [1]^2 is monotone but not in the category
        let tw = BoxMap::from_fn(2, 2, |x| {
            let b = x.bits();
            Vertex::raw(2, (b >> 1 & 1) | (b & 1) << 1)
        });
        assert!(matches!(tw, Err(Error::NotInBoxCategory(_))));
    }

    #[test]
    fn iota_example() {
        let a = v(&[1, 0, 0, 0, 0]);
        let b = v(&[1, 0, 1, 0, 1]);
        let i = BoxMap::iota(a, b).unwrap();
        assert_eq!(i.apply(v(&[0, 0])), v(&[1, 0, 0, 0, 0]));
        assert_eq!(i.apply(v(&[1, 0])), v(&[1, 0, 1, 0, 0]));
        assert_eq!(i.apply(v(&[0, 1])), v(&[1, 0, 0, 0, 1]));
        assert_eq!(i.apply(v(&[1, 1])), b);
        assert!(i.is_mono());
        assert_eq!(i.normal_form().to_string(), "d4,0 d2,0 d1,1");
    }

    #[test]
    fn generator_semantics() {
        let d = BoxMap::face(3, 2, true).unwrap();
        assert_eq!(d.apply(v(&[1, 0])), v(&[1, 1, 0]));
        let s = BoxMap::degeneracy(3, 2).unwrap();
        assert_eq!(s.apply(v(&[1, 1, 0])), v(&[1, 0]));
        let g = BoxMap::connection(3, 2).unwrap();
        assert_eq!(g.apply(v(&[0, 0, 1])), v(&[0, 1]));
        assert_eq!(g.apply(v(&[1, 0, 0])), v(&[1, 0]));
        assert!(BoxMap::connection(3, 3).is_err());
        assert!(BoxMap::face(3, 4, false).is_err());
    }

    /// Closure of the generators under composition, computed on tables only.
    fn closure_oracle(max: usize) -> HashMap<(usize, usize), BTreeSet<Vec<u32>>> {
        let mut homs: HashMap<(usize, usize), BTreeSet<Vec<u32>>> = HashMap::new();
        for n in 0..=max {
            homs.entry((n, n))
                .or_default()
                .insert((0..=full(n)).collect());
        }
        let mut gens: Vec<BoxMap> = Vec::new();
        for n in 1..=max {
            for i in 1..=n {
                gens.push(BoxMap::face(n, i, false).unwrap());
                gens.push(BoxMap::face(n, i, true).unwrap());
                gens.push(BoxMap::degeneracy(n, i).unwrap());
            }
            for i in 1..n {
                gens.push(BoxMap::connection(n, i).unwrap());
            }
        }
        loop {
            let mut added = false;
            let snapshot: Vec<((usize, usize), Vec<u32>)> = homs
                .iter()
                .flat_map(|(&k, s)| s.iter().map(move |t| (k, t.clone())))
                .collect();
            for ((p, q), t) in snapshot {
                for g in gens.iter().filter(|g| g.src_dim() == q) {
                    let comp: Vec<u32> = t.iter().map(|&x| g.table()[x as usize]).collect();
                    if homs.entry((p, g.dst_dim())).or_default().insert(comp) {
                        added = true;
                    }
                }
            }
            if !added {
                return homs;
            }
        }
    }

    #[test]
    fn enumeration_matches_generator_closure() {
        let oracle = closure_oracle(3);
        for n in 0..=3 {
            for m in 0..=3 {
                let ours: BTreeSet<Vec<u32>> = enumerate_maps(n, m)
                    .unwrap()
                    .into_iter()
                    .map(|f| f.table().to_vec())
                    .collect();
                let want = oracle.get(&(n, m)).cloned().unwrap_or_default();
                assert_eq!(ours, want, "hom([1]^{n}, [1]^{m})");
            }
        }
    }

    #[test]
    fn frozen_hom_counts() {
        // computed by the generator-closure oracle above
        let counts: Vec<((usize, usize), usize)> = vec![
            ((1, 2), 8),
            ((1, 3), 20),
            ((2, 2), 17),
            ((3, 1), 9),
            ((2, 3), 50),
            ((3, 2), 37),
            ((3, 3), 123),
        ];
        for ((n, m), c) in counts {
            assert_eq!(enumerate_maps(n, m).unwrap().len(), c, "({n},{m})");
        }
    }

    #[test]
    fn guard_refuses_large() {
        assert!(matches!(
            enumerate_maps_limited(5, 4, 8),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn epi_mono_factorisation_is_unique() {
        for n in 0..=3 {
            for m in 0..=3 {
                let homs = enumerate_maps(n, m).unwrap();
                for f in &homs {
                    let (e, mo) = f.epi_mono();
                    assert!(e.is_epi() && mo.is_mono());
                    assert_eq!(&mo.after(&e).unwrap(), f);
                    let mut count = 0;
                    for k in 0..=n.min(m) {
                        for e2 in enumerate_epis(n, k) {
                            for m2 in enumerate_maps(k, m).unwrap().iter().filter(|x| x.is_mono()) {
                                if &m2.after(&e2).unwrap() == f {
                                    count += 1;
                                }
                            }
                        }
                    }
                    assert_eq!(count, 1, "{f}");
                }
            }
        }
    }

    #[test]
    fn mono_iff_full_distance() {
        for n in 0..=3 {
            for m in 0..=4 {
                for f in enumerate_maps(n, m).unwrap() {
                    let d = f.image_alpha().distance(&f.image_omega()).unwrap();
                    assert!(d <= n);
                    let injective = {
                        let mut t = f.table().to_vec();
                        t.sort();
                        t.dedup();
                        t.len() == f.table().len()
                    };
                    assert_eq!(f.is_mono(), injective, "{f}");
                    assert_eq!(f.is_mono(), f.normal_form().connections.is_empty()
                        && f.normal_form().degeneracies.is_empty());
                }
            }
        }
    }

    #[test]
    fn monos_determined_by_endpoints() {
        for n in 0..=3 {
            for m in n..=4 {
                let monos: Vec<BoxMap> = enumerate_maps(n, m)
                    .unwrap()
                    .into_iter()
                    .filter(|f| f.is_mono())
                    .collect();
                let mut ends: Vec<(Vertex, Vertex)> = monos
                    .iter()
                    .map(|f| (f.image_alpha(), f.image_omega()))
                    .collect();
                ends.sort();
                ends.dedup();
                assert_eq!(ends.len(), monos.len());
                for f in &monos {
                    assert_eq!(&BoxMap::iota(f.image_alpha(), f.image_omega()).unwrap(), f);
                }
            }
        }
    }

    #[test]
    fn normal_form_roundtrip() {
        for n in 0..=3 {
            for m in 0..=3 {
                for f in enumerate_maps(n, m).unwrap() {
                    let s = f.normal_form().to_string();
                    let g = BoxMap::from_normal_form(n, NormalForm::parse(&s).unwrap()).unwrap();
                    assert_eq!(f, g);
                    assert_eq!(BoxMap::from_table(n, m, f.table().to_vec()).unwrap(), f);
                }
            }
        }
    }

    fn word(n: usize, gens: &[Generator]) -> Vec<u32> {
        // gens applied right to left, starting in dimension n
        let mut cur = BoxMap::identity(n);
        for g in gens.iter().rev() {
            let d = cur.dst_dim();
            let gm = match *g {
                Generator::Face { .. } => BoxMap::generator(d + 1, *g),
                _ => BoxMap::generator(d, *g),
            }
            .unwrap();
            cur = gm.after(&cur).unwrap();
        }
        cur.table().to_vec()
    }

    #[test]
    fn cubical_identities() {
        use Generator::*;
        let n = 4;
        for i in 1..=n {
            for j in 1..=i {
                for e in [false, true] {
                    for e2 in [false, true] {
                        // ∂_{j,ε'}∂_{i,ε} = ∂_{i+1,ε}∂_{j,ε'} for j <= i
                        assert_eq!(
                            word(n - 1, &[Face { i: j, eps: e2 }, Face { i, eps: e }]),
                            word(n - 1, &[Face { i: i + 1, eps: e }, Face { i: j, eps: e2 }])
                        );
                    }
                }
                // σ_j σ_{i+1} = σ_i σ_j for j <= i
                assert_eq!(
                    word(n + 1, &[Degeneracy { i: j }, Degeneracy { i: i + 1 }]),
                    word(n + 1, &[Degeneracy { i }, Degeneracy { i: j }])
                );
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                for e in [false, true] {
                    let lhs = word(n - 1, &[Degeneracy { i: j }, Face { i, eps: e }]);
                    let rhs = if j < i {
                        word(n - 1, &[Face { i: i - 1, eps: e }, Degeneracy { i: j }])
                    } else if j == i {
                        word(n - 1, &[])
                    } else {
                        word(n - 1, &[Face { i, eps: e }, Degeneracy { i: j - 1 }])
                    };
                    assert_eq!(lhs, rhs, "σ_{j} ∂_{i},{e}");
                }
            }
        }
        // connections against faces, in dimension n
        for i in 1..=n {
            for j in 1..n {
                for e in [false, true] {
                    let lhs = word(n - 1, &[Connection { i: j }, Face { i, eps: e }]);
                    let rhs = if j + 1 < i {
                        word(n - 1, &[Face { i: i - 1, eps: e }, Connection { i: j }])
                    } else if (j == i || j + 1 == i) && !e {
                        word(n - 1, &[])
                    } else if j == i || j + 1 == i {
                        word(n - 1, &[Face { i: j, eps: true }, Degeneracy { i: j }])
                    } else {
                        word(n - 1, &[Face { i, eps: e }, Connection { i: j - 1 }])
                    };
                    assert_eq!(lhs, rhs, "γ_{j} ∂_{i},{e}");
                }
            }
        }
        // connections against degeneracies and each other
        for i in 1..n {
            for j in 1..n {
                let lhs = word(n, &[Degeneracy { i: j }, Connection { i }]);
                let rhs = if j < i {
                    word(n, &[Connection { i: i - 1 }, Degeneracy { i: j }])
                } else if j == i {
                    word(n, &[Degeneracy { i }, Degeneracy { i }])
                } else {
                    word(n, &[Connection { i }, Degeneracy { i: j + 1 }])
                };
                assert_eq!(lhs, rhs, "σ_{j} γ_{i}");
                if j < i {
                    assert_eq!(
                        word(n + 1, &[Connection { i: j }, Connection { i: i + 1 }]),
                        word(n + 1, &[Connection { i }, Connection { i: j }])
                    );
                }
            }
            assert_eq!(
                word(n + 1, &[Connection { i }, Connection { i }]),
                word(n + 1, &[Connection { i }, Connection { i: i + 1 }])
            );
        }
    }
}
