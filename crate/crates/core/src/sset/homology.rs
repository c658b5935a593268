//! Integer homology through Smith normal form.
//!
//! Elimination runs on `i64` with checked arithmetic and is repeated on
//! `BigInt` if an intermediate entry overflows.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::TruncSSet;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<u64>,
    /// False for the truncation degree, where boundaries from above are
    /// unknown and `betti` is only the rank of the cycles.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub top_dim: usize,
    pub degrees: Vec<DegreeHomology>,
    pub euler_characteristic: i64,
}

impl HomologyReport {
    fn exact(&self) -> impl Iterator<Item = &DegreeHomology> {
        self.degrees.iter().filter(|d| d.exact)
    }

    /// `H_0 = ℤ` and every other computed group vanishes.
    pub fn is_point(&self) -> bool {
        self.exact().all(|d| {
            d.torsion.is_empty() && d.betti == if d.degree == 0 { 1 } else { 0 }
        }) && self.degrees.first().map_or(false, |d| d.betti == 1)
    }

    /// Homology of `S^n`, with every degree up to `n` computed exactly.
    pub fn is_sphere(&self, n: usize) -> bool {
        if self.exact().count() <= n {
            return false;
        }
        self.exact().all(|d| {
            let want = match (n, d.degree) {
                (0, 0) => 2,
                (_, 0) => 1,
                (_, k) if k == n => 1,
                _ => 0,
            };
            d.torsion.is_empty() && d.betti == want
        })
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }
}

pub(crate) fn homology(s: &TruncSSet) -> Result<HomologyReport> {
    let top = s.top_dim();
    // factors[k] = invariant factors of ∂_k : C_k -> C_{k-1}
    let factors: Vec<Vec<u64>> = (0..=top)
        .into_par_iter()
        .map(|k| {
            if k == 0 {
                return Ok(vec![]);
            }
            let entries = boundary_entries(s, k);
            invariant_factors(s.count(k - 1), s.count(k), &entries)
        })
        .collect::<Result<_>>()?;
    let rank = |k: usize| factors.get(k).map_or(0, |f| f.len());
    let degrees = (0..=top)
        .map(|k| {
            let exact = k < top;
            let boundaries = if exact { rank(k + 1) } else { 0 };
            DegreeHomology {
                degree: k,
                betti: s.count(k) - rank(k) - boundaries,
                torsion: if exact {
                    factors[k + 1].iter().copied().filter(|&d| d > 1).collect()
                } else {
                    vec![]
                },
                exact,
            }
        })
        .collect();
    Ok(HomologyReport {
        top_dim: top,
        degrees,
        euler_characteristic: s.euler_characteristic(),
    })
}

/// `(row, col, value)` triples of the normalized boundary `∂_k`.
pub(crate) fn boundary_entries(s: &TruncSSet, k: usize) -> Vec<(usize, usize, i64)> {
    let mut out = Vec::new();
    for x in 0..s.count(k) {
        let mut col: Vec<(usize, i64)> = Vec::new();
        for i in 0..=k {
            let f = s.face(k, x, i);
            if f.is_degenerate() {
                continue;
            }
            let sign = if i % 2 == 0 { 1 } else { -1 };
            match col.iter_mut().find(|(r, _)| *r == f.cell) {
                Some(e) => e.1 += sign,
                None => col.push((f.cell, sign)),
            }
        }
        out.extend(col.into_iter().filter(|e| e.1 != 0).map(|(r, v)| (r, x, v)));
    }
    out
}

trait Scalar: Clone + Debug + PartialEq + Send + Sync {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Euclidean division with `|r| < |d|`.
    fn div_rem(&self, d: &Self) -> Option<(Self, Self)>;
    fn abs_lt(&self, o: &Self) -> bool;
    fn to_abs_u64(&self) -> Option<u64>;
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        Some((self.checked_div(*d)?, self.checked_rem(*d)?))
    }
    fn abs_lt(&self, o: &Self) -> bool {
        self.unsigned_abs() < o.unsigned_abs()
    }
    fn to_abs_u64(&self) -> Option<u64> {
        Some(self.unsigned_abs())
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        Some(Integer::div_rem(self, d))
    }
    fn abs_lt(&self, o: &Self) -> bool {
        self.abs() < o.abs()
    }
    fn to_abs_u64(&self) -> Option<u64> {
        self.abs().to_u64()
    }
}

struct Overflow;

/// Nonzero invariant factors (absolute values) of an integer matrix.
pub(crate) fn invariant_factors(
    rows: usize,
    cols: usize,
    entries: &[(usize, usize, i64)],
) -> Result<Vec<u64>> {
    if let Ok(f) = eliminate::<i64>(rows, cols, entries) {
        return Ok(f);
    }
    eliminate::<BigInt>(rows, cols, entries).map_err(|_| Error::Overflow("Smith normal form"))
}

fn eliminate<T: Scalar>(
    rows: usize,
    cols: usize,
    entries: &[(usize, usize, i64)],
) -> std::result::Result<Vec<u64>, Overflow> {
    let mut data: Vec<Vec<(u32, T)>> = vec![Vec::new(); rows];
    let mut col_rows: Vec<HashSet<u32>> = vec![HashSet::new(); cols];
    for &(r, c, v) in entries {
        if v != 0 {
            data[r].push((c as u32, T::from_i64(v)));
            col_rows[c].insert(r as u32);
        }
    }
    for row in &mut data {
        row.sort_by_key(|e| e.0);
    }
    let mut factors: Vec<u64> = Vec::new();
    // rows that may hold a unit entry, keyed by length
    let mut queue: BTreeSet<(usize, u32)> = (0..rows)
        .filter(|&r| !data[r].is_empty())
        .map(|r| (data[r].len(), r as u32))
        .collect();
    while let Some(&(len, r)) = queue.iter().next() {
        queue.remove(&(len, r));
        let r = r as usize;
        let pivot = data[r]
            .iter()
            .filter(|e| e.1.is_unit())
            .min_by_key(|e| col_rows[e.0 as usize].len())
            .cloned();
        let Some((c, p)) = pivot else { continue };
        let pivot_row = std::mem::take(&mut data[r]);
        for &(cc, _) in &pivot_row {
            col_rows[cc as usize].remove(&(r as u32));
        }
        let others: Vec<u32> = col_rows[c as usize].iter().copied().collect();
        for r2 in others {
            let r2 = r2 as usize;
            let v = data[r2]
                .iter()
                .find(|e| e.0 == c)
                .map(|e| e.1.clone())
                .expect("column index consistent");
            // p is ±1 so p⁻¹ = p
            let f = v.mul(&p).ok_or(Overflow)?.neg().ok_or(Overflow)?;
            let old_len = data[r2].len();
            let merged = axpy(&data[r2], &f, &pivot_row)?;
            for &(cc, _) in &pivot_row {
                let had = data[r2].binary_search_by_key(&cc, |e| e.0).is_ok();
                let has = merged.binary_search_by_key(&cc, |e| e.0).is_ok();
                if had && !has {
                    col_rows[cc as usize].remove(&(r2 as u32));
                } else if !had && has {
                    col_rows[cc as usize].insert(r2 as u32);
                }
            }
            queue.remove(&(old_len, r2 as u32));
            data[r2] = merged;
            if !data[r2].is_empty() {
                queue.insert((data[r2].len(), r2 as u32));
            }
        }
        factors.push(1);
    }
    // whatever is left has no unit entries
    let live_rows: Vec<usize> = (0..rows).filter(|&r| !data[r].is_empty()).collect();
    if !live_rows.is_empty() {
        let mut live_cols: Vec<u32> = live_rows
            .iter()
            .flat_map(|&r| data[r].iter().map(|e| e.0))
            .collect();
        live_cols.sort_unstable();
        live_cols.dedup();
        let mut dense: Vec<Vec<T>> = live_rows
            .iter()
            .map(|&r| {
                let mut row = vec![T::from_i64(0); live_cols.len()];
                for (c, v) in &data[r] {
                    let j = live_cols.binary_search(c).expect("live column");
                    row[j] = v.clone();
                }
                row
            })
            .collect();
        for d in dense_snf(&mut dense)? {
            factors.push(d.to_abs_u64().ok_or(Overflow)?);
        }
    }
    factors.sort_unstable();
    Ok(factors)
}

/// `a + f·b` on sorted sparse rows.
fn axpy<T: Scalar>(a: &[(u32, T)], f: &T, b: &[(u32, T)]) -> std::result::Result<Vec<(u32, T)>, Overflow> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f.mul(&b[j].1).ok_or(Overflow)?));
            j += 1;
        } else {
            let v = a[i].1.add(&f.mul(&b[j].1).ok_or(Overflow)?).ok_or(Overflow)?;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

/// Diagonal of the Smith normal form of a dense matrix (nonzero entries).
fn dense_snf<T: Scalar>(a: &mut [Vec<T>]) -> std::result::Result<Vec<T>, Overflow> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry in the lower-right block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs_lt(&a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = a[i][t].div_rem(&a[t][t]).ok_or(Overflow)?;
                let nq = q.neg().ok_or(Overflow)?;
                for j in t..n {
                    let v = a[i][j].add(&nq.mul(&a[t][j]).ok_or(Overflow)?).ok_or(Overflow)?;
                    a[i][j] = v;
                }
                if !r.is_zero() {
                    a.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a[t][j].div_rem(&a[t][t]).ok_or(Overflow)?;
                let nq = q.neg().ok_or(Overflow)?;
                for row in a.iter_mut().skip(t) {
                    let v = row[j].add(&nq.mul(&row[t]).ok_or(Overflow)?).ok_or(Overflow)?;
                    row[j] = v;
                }
                if !r.is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // pivot must divide the remaining block
            let mut fix = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    let (_, r) = a[i][j].div_rem(&a[t][t]).ok_or(Overflow)?;
                    if !r.is_zero() {
                        fix = Some(i);
                        break 'scan;
                    }
                }
            }
            match fix {
                Some(i) => {
                    for j in t..n {
                        let v = a[t][j].add(&a[i][j]).ok_or(Overflow)?;
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].clone());
        t += 1;
    }
    Ok(diag)
}
