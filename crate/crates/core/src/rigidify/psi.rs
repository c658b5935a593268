//! The poset maps `ψ̃_n(a, b) : Σ_{b∖a} -> P(]sup a, sup b[)` and the
//! checks behind their lifting along the quotient `□^n -> Q^n`.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::posets::bruhat;
use crate::vertex::Vertex;

/// Left-to-right maxima of `x`.
pub fn records(x: &[u8]) -> BTreeSet<u8> {
    let mut best = 0u8;
    let mut out = BTreeSet::new();
    for &v in x {
        if v > best {
            out.insert(v);
            best = v;
        }
    }
    out
}

fn coords_of(v: Vertex) -> Vec<u8> {
    v.coords().into_iter().map(|c| c as u8).collect()
}

/// `ψ̃_n(a, b)(x)`: the records of `x` strictly between `sup a` and `sup b`.
pub fn psi_tilde(n: usize, a: Vertex, b: Vertex, x: &[u8]) -> Result<BTreeSet<u8>> {
    if a.dim() != n || b.dim() != n || !a.leq(&b) {
        return Err(Error::Invalid(format!("{a} ⋠ {b} in [1]^{n}")));
    }
    let mut want: Vec<u8> = coords_of(Vertex::raw(n, b.bits() & !a.bits()));
    let mut got = x.to_vec();
    want.sort_unstable();
    got.sort_unstable();
    if want != got {
        return Err(Error::Invalid(format!("{x:?} does not enumerate b∖a")));
    }
    let (lo, hi) = (a.sup() as u8, b.sup() as u8);
    Ok(records(x).into_iter().filter(|&v| lo < v && v < hi).collect())
}

/// Checks `ψ̃(a,c)(x∗y) = ψ̃(a,b)(x) ∪ {sup b} ∪ ψ̃(b,c)(y)`; requires
/// `a ≼ b ≼ c` and `sup a < sup b < sup c`.
pub fn psi_concat_check(n: usize, a: Vertex, b: Vertex, c: Vertex, x: &[u8], y: &[u8]) -> Result<bool> {
    if !(a.leq(&b) && b.leq(&c)) {
        return Err(Error::Invalid("a ≼ b ≼ c required".into()));
    }
    if !(a.sup() < b.sup() && b.sup() < c.sup()) {
        return Err(Error::Invalid("sup a < sup b < sup c required".into()));
    }
    let mut z = x.to_vec();
    z.extend_from_slice(y);
    let lhs = psi_tilde(n, a, c, &z)?;
    let mut rhs = psi_tilde(n, a, b, x)?;
    rhs.insert(b.sup() as u8);
    rhs.extend(psi_tilde(n, b, c, y)?);
    Ok(lhs == rhs)
}

/// `ψ̃_n(a, b)` is monotone for every `a ≼ b` in `□^n`.
pub fn psi_monotone_check(n: usize) -> Result<bool> {
    for a in crate::vertex::vertices(n) {
        for b in crate::vertex::vertices(n) {
            if !a.leq(&b) {
                continue;
            }
            let (p, perms) = bruhat(&coords_of(Vertex::raw(n, b.bits() & !a.bits())))?;
            let images = perms
                .iter()
                .map(|x| psi_tilde(n, a, b, x))
                .collect::<Result<Vec<_>>>()?;
            if p.covers().iter().any(|&(x, y)| !images[x].is_subset(&images[y])) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn subsets_of(coords: &[u8]) -> Vec<Vec<u8>> {
    (0..1u32 << coords.len())
        .map(|m| {
            coords
                .iter()
                .enumerate()
                .filter(|(k, _)| m >> k & 1 == 1)
                .map(|(_, &c)| c)
                .collect()
        })
        .collect()
}

fn vertex_of(n: usize, coords: &[u8]) -> Vertex {
    Vertex::raw(n, coords.iter().fold(0u32, |m, &c| m | 1 << (c - 1)))
}

/// `ψ_n ∘ ∂_{i,1}` depends only on the part of its input after coordinate
/// `i`: on vertices `sup(a ∪ {i} ∪ a')` is `sup({i} ∪ a')`, and on paths
/// the value is the records of the coordinates above `i` cut to
/// `]sup({i} ∪ a'), sup({i} ∪ b')[`.
pub fn gamma_constancy_check(n: usize, i: usize) -> Result<bool> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange(format!("face {i} of [1]^{n}")));
    }
    let below: Vec<u8> = (1..i as u8).collect();
    let above: Vec<u8> = (i as u8 + 1..=n as u8).collect();
    let lows = subsets_of(&below);
    let highs = subsets_of(&above);
    let face = |lo: &[u8], hi: &[u8]| {
        let mut c = lo.to_vec();
        c.push(i as u8);
        c.extend_from_slice(hi);
        vertex_of(n, &c)
    };
    for hi in &highs {
        let gamma = vertex_of(n, &[&[i as u8][..], hi].concat()).sup();
        if lows.iter().any(|lo| face(lo, hi).sup() != gamma) {
            return Ok(false);
        }
    }
    let mut seen: HashMap<(Vec<u8>, Vec<u8>, Vec<u8>), BTreeSet<u8>> = HashMap::new();
    for a in &lows {
        for b in &lows {
            if !a.iter().all(|c| b.contains(c)) {
                continue;
            }
            for a2 in &highs {
                for b2 in &highs {
                    if !a2.iter().all(|c| b2.contains(c)) {
                        continue;
                    }
                    let (src, dst) = (face(a, a2), face(b, b2));
                    let free: Vec<u8> = (1..=n as u8)
                        .filter(|&c| dst.get(c as usize) && !src.get(c as usize))
                        .collect();
                    let (_, perms) = bruhat(&free)?;
                    let lo = vertex_of(n, &[&[i as u8][..], a2].concat()).sup() as u8;
                    let up = vertex_of(n, &[&[i as u8][..], b2].concat()).sup() as u8;
                    for z in perms {
                        let value = psi_tilde(n, src, dst, &z)?;
                        let y: Vec<u8> = z.iter().copied().filter(|&c| c > i as u8).collect();
                        let lifted: BTreeSet<u8> = records(&y).into_iter().filter(|&v| lo < v && v < up).collect();
                        if value != lifted {
                            return Ok(false);
                        }
                        let key = (a2.clone(), b2.clone(), y);
                        if let Some(prev) = seen.get(&key) {
                            if *prev != value {
                                return Ok(false);
                            }
                        } else {
                            seen.insert(key, value);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_values() {
        let a = Vertex::alpha(3);
        let b = Vertex::omega(3);
        assert_eq!(psi_tilde(3, a, b, &[2, 1, 3]).unwrap(), BTreeSet::from([2]));
        assert_eq!(psi_tilde(3, a, b, &[1, 2, 3]).unwrap(), BTreeSet::from([1, 2]));
        assert!(psi_tilde(3, a, b, &[1, 2]).is_err());
    }

    #[test]
    fn concat_needs_strict_sups() {
        let a = Vertex::alpha(3);
        let b = Vertex::parse("101").unwrap();
        let c = Vertex::omega(3);
        assert!(psi_concat_check(3, a, b, c, &[1, 3], &[2]).is_err());
        let b = Vertex::parse("010").unwrap();
        assert!(psi_concat_check(3, a, b, c, &[2], &[3, 1]).unwrap());
        assert!(psi_concat_check(3, a, b, c, &[2], &[1, 3]).unwrap());
    }

    #[test]
    fn small_batteries() {
        for n in 1..=3 {
            assert!(psi_monotone_check(n).unwrap());
            for i in 1..=n {
                assert!(gamma_constancy_check(n, i).unwrap());
            }
        }
    }
}
