//! Verification batteries behind `cubrig verify`.

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::boxcat::{enumerate_maps, BoxMap};
use crate::cubeset::{counterexample_x, tilde_square, SubcomplexOfCube};
use crate::error::{Error, Result};
use crate::necklace::{hom_nec, subneck_poset, NecMorphism, Necklace};
use crate::pathcat::{bruhat_compare, leadsto_closure, path_category, step_sequence};
use crate::posets::{bruhat, nerve, nerve_map, ordered_partitions, perm_label, FinitePoset, OrderedPartition};
use crate::rigidify::{
    gamma_constancy_check, necklace_mapping_space, psi_concat_check, psi_monotone_check, subcomplex_mapping_space,
    subneck_diagram,
};
use crate::sset::colimit;
use crate::vertex::{vertices, Vertex};

pub const SUITES: &[&str] = &[
    "bruhat",
    "boxcat",
    "necklace-homs",
    "subneck",
    "open-box-contractible",
    "partition-spheres",
    "psi",
    "counterexample",
    "downward-closed",
    "formula-consistency",
];

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub claim: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub claims: Vec<Claim>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }
}

type Check = fn(u64) -> Result<(bool, String)>;

fn claim(name: &str, seed: u64, f: Check) -> Claim {
    let start = Instant::now();
    let (passed, detail) = match f(seed) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Claim {
        claim: name.to_string(),
        passed,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

fn checks(suite: &str) -> Option<Vec<(&'static str, Check)>> {
    let list: Vec<(&'static str, Check)> = match suite {
        "bruhat" => vec![
            ("path preorders on cubes are Bruhat orders, n <= 4", bruhat_iso),
            ("Hasse diagram of paths in the 3-cube", bruhat_figure),
            ("|paths(□^n)| = n!, n <= 4", path_counts),
            ("step sequences respect concatenation in □^4", psi_concatenation),
        ],
        "boxcat" => vec![
            ("normal forms are unique, dims <= 3", normal_forms),
            ("composites stay in the category, dims <= 3", composition_closure),
            ("epi-mono factorisation is unique, dims <= 3", epi_mono),
            ("mono iff d(f(α), f(ω)) = n, dims <= 3", mono_distance),
            ("[1]^2 -> [1] has 5 maps and min is excluded", two_to_one),
        ],
        "necklace-homs" => vec![
            ("no map (2,1,3) -> (3,2,1)", no_map_213_321),
            ("maps (2,1,3) -> (2,1) are g ∨ h or the exceptional one", maps_213_21),
        ],
        "subneck" => vec![("SubNeck(□^n) is the ordered partition poset, n <= 4", subneck_partitions)],
        "open-box-contractible" => vec![
            ("nerve of Bruhat(Σ_n) is acyclic, n <= 4", bruhat_nerves),
            ("necklace mapping spaces are acyclic, total dim <= 5", necklace_spaces),
            ("open box mapping spaces are acyclic, n = 2, 3", open_box_spaces),
        ],
        "partition-spheres" => vec![
            ("nerve of ⊓P_n is acyclic, n <= 3", open_partitions),
            ("nerve of ∂P_n is a homology sphere, n <= 3", boundary_partitions),
        ],
        "psi" => vec![
            ("ψ̃ is monotone, n <= 4", psi_monotone),
            ("ψ̃ turns concatenation into union with sup b, n <= 4", psi_concat),
            ("ψ ∘ ∂_{i,1} lifts through the projection, n <= 4", gamma_lift),
        ],
        "counterexample" => vec![
            ("paths of X form the chain u ⤳ v ⤳ w", x_chain),
            ("the nerve of paths of X has a 2-simplex", x_two_simplex),
            ("pushout of the nerves is 1-skeletal", x_pushout),
        ],
        "downward-closed" => vec![("colimits over 200 downward-closed sets inject", downward_closed)],
        "formula-consistency" => vec![("SubNeck colimit equals necklace formula, total dim <= 4", formula_consistency)],
        _ => return None,
    };
    Some(list)
}

/// Runs one suite, or all of them for `"all"`. Reports come back sorted by
/// suite name.
pub fn run_suite(name: &str, seed: u64) -> Result<Vec<SuiteReport>> {
    let names: Vec<&str> = if name == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&name) {
        vec![name]
    } else {
        return Err(Error::Invalid(format!("unknown suite {name:?}; try one of {}, all", SUITES.join(", "))));
    };
    let mut reports: Vec<SuiteReport> = names
        .par_iter()
        .map(|&s| SuiteReport {
            suite: s.to_string(),
            claims: checks(s)
                .expect("registered")
                .into_par_iter()
                .map(|(n, f)| claim(n, seed, f))
                .collect(),
        })
        .collect();
    reports.sort_by(|a, b| a.suite.cmp(&b.suite));
    Ok(reports)
}

fn ok(pass: bool, detail: impl Into<String>) -> Result<(bool, String)> {
    Ok((pass, detail.into()))
}

// bruhat

fn bruhat_iso(_: u64) -> Result<(bool, String)> {
    let mut pairs = 0;
    for n in 1..=4 {
        for a in vertices(n) {
            for b in vertices(n) {
                if let Some(cmp) = bruhat_compare(n, a, b)? {
                    pairs += 1;
                    if !cmp.is_isomorphism {
                        return ok(false, format!("not an isomorphism for {a} -> {b}"));
                    }
                }
            }
        }
    }
    ok(true, format!("{pairs} pairs"))
}

pub(crate) fn figure_covers() -> BTreeSet<(String, String)> {
    [("321", "231"), ("321", "312"), ("231", "213"), ("312", "132"), ("213", "123"), ("132", "123")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect()
}

fn bruhat_figure(_: u64) -> Result<(bool, String)> {
    let cmp = bruhat_compare(3, Vertex::alpha(3), Vertex::omega(3))?.expect("α ≼ ω");
    let got: BTreeSet<(String, String)> = cmp
        .path_poset
        .covers()
        .iter()
        .map(|&(x, y)| (perm_label(&cmp.perms[cmp.psi[x]]), perm_label(&cmp.perms[cmp.psi[y]])))
        .collect();
    ok(got == figure_covers(), format!("{} covers", got.len()))
}

fn path_counts(_: u64) -> Result<(bool, String)> {
    let mut counts = Vec::new();
    for n in 0..=4 {
        let (c, labels) = SubcomplexOfCube::standard(n).to_complex();
        let at = |v: Vertex| labels.iter().position(|&w| w == v).expect("corner");
        counts.push(leadsto_closure(&c, at(Vertex::alpha(n)), at(Vertex::omega(n)))?.len());
    }
    ok(counts == vec![1, 1, 2, 6, 24], format!("{counts:?}"))
}

fn psi_concatenation(_: u64) -> Result<(bool, String)> {
    let (c, labels) = SubcomplexOfCube::standard(4).to_complex();
    let pc = path_category(&c)?;
    let seq = |a: usize, b: usize, i: usize| -> Vec<Vertex> {
        pc.hom(a, b).vertex_sequence(i).iter().map(|&v| labels[v]).collect()
    };
    let nv = c.count(0);
    let mut checked = 0usize;
    for a in 0..nv {
        for b in 0..nv {
            for d in 0..nv {
                let (f, g) = (pc.hom(a, b), pc.hom(b, d));
                for i in 0..f.len() {
                    for j in 0..g.len() {
                        let h = pc.compose(a, b, d, i, j);
                        let mut both = step_sequence(&seq(a, b, i));
                        both.extend(step_sequence(&seq(b, d, j)));
                        if step_sequence(&seq(a, d, h)) != both {
                            return ok(false, format!("fails at {a} -> {b} -> {d}"));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    ok(true, format!("{checked} composites"))
}

// boxcat

fn all_maps() -> Result<Vec<(usize, usize, Vec<BoxMap>)>> {
    let mut out = Vec::new();
    for n in 0..=3 {
        for m in 0..=3 {
            out.push((n, m, enumerate_maps(n, m)?));
        }
    }
    Ok(out)
}

fn normal_forms(_: u64) -> Result<(bool, String)> {
    let mut total = 0;
    for (n, _, maps) in all_maps()? {
        let mut forms = BTreeSet::new();
        for f in &maps {
            let again = BoxMap::from_normal_form(n, f.normal_form().clone())?;
            if again.table() != f.table() || !forms.insert(f.normal_form().to_string()) {
                return ok(false, format!("normal form {} is not unique", f.normal_form()));
            }
            let reparsed = BoxMap::from_table(n, f.dst_dim(), f.table().to_vec())?;
            if reparsed.normal_form() != f.normal_form() {
                return ok(false, "normalising the table changes the word");
            }
        }
        total += maps.len();
    }
    ok(true, format!("{total} maps"))
}

fn composition_closure(_: u64) -> Result<(bool, String)> {
    let maps = all_maps()?;
    let by_dims: HashMap<(usize, usize), BTreeSet<Vec<u32>>> = maps
        .iter()
        .map(|(n, m, fs)| ((*n, *m), fs.iter().map(|f| f.table().to_vec()).collect()))
        .collect();
    let mut count = 0usize;
    for (n, m, fs) in &maps {
        for (m2, p, gs) in &maps {
            if m != m2 {
                continue;
            }
            for f in fs {
                for g in gs {
                    let h = g.after(f)?;
                    if !by_dims[&(*n, *p)].contains(h.table()) {
                        return ok(false, "a composite escaped the enumeration");
                    }
                    count += 1;
                }
            }
        }
    }
    ok(true, format!("{count} composites"))
}

fn epi_mono(_: u64) -> Result<(bool, String)> {
    for (_, _, maps) in all_maps()? {
        for f in &maps {
            let (e, m) = f.epi_mono();
            if !e.is_epi() || !m.is_mono() || m.after(&e)? != *f {
                return ok(false, format!("bad factorisation of {}", f.normal_form()));
            }
            let (e2, m2) = m.after(&e)?.epi_mono();
            if e2 != e || m2 != m {
                return ok(false, "refactoring changed the pair");
            }
            let nf = f.normal_form();
            let mono_word = nf.connections.is_empty() && nf.degeneracies.is_empty();
            if mono_word != f.is_mono() {
                return ok(false, "mono does not match a face-only word");
            }
        }
    }
    ok(true, "all maps")
}

fn mono_distance(_: u64) -> Result<(bool, String)> {
    for (n, _, maps) in all_maps()? {
        let mut by_ends: HashMap<(Vertex, Vertex), usize> = HashMap::new();
        for f in &maps {
            let d = f.image_alpha().distance(&f.image_omega());
            if f.is_mono() != (d == Some(n)) {
                return ok(false, format!("criterion fails for {}", f.normal_form()));
            }
            if f.is_mono() {
                *by_ends.entry((f.image_alpha(), f.image_omega())).or_default() += 1;
            }
        }
        if by_ends.values().any(|&c| c > 1) {
            return ok(false, "two monos share their endpoints");
        }
    }
    ok(true, "all maps")
}

fn two_to_one(_: u64) -> Result<(bool, String)> {
    let maps = enumerate_maps(2, 1)?;
    let min = BoxMap::from_table(2, 1, vec![0, 0, 0, 1]);
    let rejected = matches!(min, Err(Error::NotInBoxCategory(_)));
    ok(maps.len() == 5 && rejected, format!("{} maps, min rejected: {rejected}", maps.len()))
}

// necklaces

fn nk(b: &[usize]) -> Necklace {
    Necklace::new(b.to_vec()).expect("positive beads")
}

fn no_map_213_321(_: u64) -> Result<(bool, String)> {
    let homs = hom_nec(&nk(&[2, 1, 3]), &nk(&[3, 2, 1]))?;
    ok(homs.is_empty(), format!("{} maps", homs.len()))
}

fn maps_213_21(_: u64) -> Result<(bool, String)> {
    let (t, u) = (nk(&[2, 1, 3]), nk(&[2, 1]));
    let homs = hom_nec(&t, &u)?;
    let mut first = BTreeSet::new();
    for g in hom_nec(&nk(&[2, 1]), &nk(&[2]))? {
        for h in hom_nec(&nk(&[3]), &nk(&[1]))? {
            first.insert(g.wedge(&h).vertex_map());
        }
    }
    let odd = NecMorphism::new(
        &t,
        &u,
        vec![
            (0, BoxMap::identity(2)),
            (1, BoxMap::identity(1)),
            (1, BoxMap::constant(3, Vertex::omega(1))),
        ],
    )?
    .vertex_map();
    let unexplained = homs
        .iter()
        .filter(|m| !first.contains(&m.vertex_map()) && m.vertex_map() != odd)
        .count();
    let has_all = first.iter().all(|v| homs.iter().any(|m| m.vertex_map() == *v));
    let has_odd = homs.iter().any(|m| m.vertex_map() == odd) && !first.contains(&odd);
    ok(
        unexplained == 0 && has_all && has_odd && homs.len() == first.len() + 1,
        format!("{} maps: {} of the first kind + 1", homs.len(), first.len()),
    )
}

fn subneck_partitions(_: u64) -> Result<(bool, String)> {
    let mut counts = Vec::new();
    for n in 1..=4 {
        let sn = subneck_poset(&SubcomplexOfCube::standard(n), Vertex::alpha(n), Vertex::omega(n))?;
        let (parts, labels) = ordered_partitions(n)?;
        let pos: HashMap<&OrderedPartition, usize> = labels.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let f: Vec<usize> = sn.flags().iter().map(|fl| pos[&fl.to_partition()]).collect();
        let factorial: usize = (1..=n).product();
        if !sn.poset.is_isomorphism(&parts, &f)
            || sn.poset.greatest().is_none()
            || sn.poset.minimal_elements().len() != factorial
        {
            return ok(false, format!("n = {n}"));
        }
        counts.push(sn.len());
    }
    ok(counts == vec![1, 3, 13, 75], format!("{counts:?}"))
}

// contractibility

fn bruhat_nerves(_: u64) -> Result<(bool, String)> {
    for n in 1..=4u8 {
        let (p, _) = bruhat(&(1..=n).collect::<Vec<_>>())?;
        if !nerve(&p, None)?.sset.homology()?.is_point() {
            return ok(false, format!("Σ_{n}"));
        }
    }
    ok(true, "Σ_1 .. Σ_4")
}

pub(crate) fn compositions_up_to(total: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    while let Some(c) = frontier.pop() {
        let s: usize = c.iter().sum();
        for b in 1..=total - s {
            let mut d = c.clone();
            d.push(b);
            out.push(d.clone());
            frontier.push(d);
        }
    }
    out.sort();
    out
}

fn necklace_spaces(_: u64) -> Result<(bool, String)> {
    // the space depends only on the bead sequence of T_{[a,b]}
    let mut needed: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut pairs = 0usize;
    for beads in compositions_up_to(5) {
        let t = Necklace::new(beads)?;
        let vs = t.vertices();
        for &a in &vs {
            for &b in &vs {
                if a.leq(&b) {
                    needed.insert(t.subnecklace(a, b)?.0.beads().to_vec());
                    pairs += 1;
                }
            }
        }
    }
    let failures: Vec<String> = needed
        .par_iter()
        .filter_map(|beads| {
            let t = Necklace::new(beads.clone()).ok()?;
            let good = necklace_mapping_space(&t, t.alpha(), t.omega(), None)
                .and_then(|m| m.homology())
                .map(|h| h.is_point())
                .unwrap_or(false);
            (!good).then(|| t.to_string())
        })
        .collect();
    ok(
        failures.is_empty(),
        format!("{pairs} pairs, {} distinct spaces, failing: {failures:?}", needed.len()),
    )
}

fn open_box_spaces(_: u64) -> Result<(bool, String)> {
    let mut done = 0;
    for n in 2..=3 {
        for i in 1..=n {
            for eps in [false, true] {
                let s = SubcomplexOfCube::open_box(n, i, eps)?;
                let m = subcomplex_mapping_space(&s, Vertex::alpha(n), Vertex::omega(n), None)?;
                if !m.homology()?.is_point() {
                    return ok(false, format!("⊓^{n}_{{{i},{}}}", eps as u8));
                }
                done += 1;
            }
        }
    }
    ok(true, format!("{done} open boxes"))
}

// partition posets

/// `(P_n, ∂P_n, ⊓P_n)` for ordered partitions of `{1..n+1}`.
pub fn partition_posets(n: usize) -> Result<(FinitePoset, FinitePoset, FinitePoset)> {
    let (p, labels) = ordered_partitions(n + 1)?;
    let top = p.greatest().ok_or(Error::Unbounded)?;
    let last = 1u32 << n;
    let removed = labels
        .iter()
        .position(|q| q.0 == vec![last - 1, last])
        .ok_or_else(|| Error::Invalid("missing partition".into()))?;
    let boundary: Vec<usize> = (0..p.len()).filter(|&x| x != top).collect();
    let open: Vec<usize> = boundary.iter().copied().filter(|&x| x != removed).collect();
    Ok((p.clone(), p.subposet(&boundary), p.subposet(&open)))
}

fn open_partitions(_: u64) -> Result<(bool, String)> {
    let mut sizes = Vec::new();
    for n in 1..=3 {
        let (_, _, open) = partition_posets(n)?;
        let s = SubcomplexOfCube::open_box(n + 1, n + 1, false)?;
        let sn = subneck_poset(&s, Vertex::alpha(n + 1), Vertex::omega(n + 1))?;
        if sn.len() != open.len() || sn.poset.covers().len() != open.covers().len() {
            return ok(false, format!("⊓P_{n} differs from SubNeck of the open box"));
        }
        if !nerve(&open, None)?.sset.homology()?.is_point() {
            return ok(false, format!("⊓P_{n} is not acyclic"));
        }
        sizes.push(open.len());
    }
    ok(true, format!("sizes {sizes:?}"))
}

fn boundary_partitions(_: u64) -> Result<(bool, String)> {
    let mut sizes = Vec::new();
    for n in 1..=3 {
        let (_, boundary, _) = partition_posets(n)?;
        let h = nerve(&boundary, None)?.sset.homology()?;
        if !h.is_sphere(n - 1) {
            return ok(false, format!("∂P_{n}: betti {:?}", h.betti()));
        }
        sizes.push(boundary.len());
    }
    ok(true, format!("sizes {sizes:?}"))
}

// psi

fn psi_monotone(_: u64) -> Result<(bool, String)> {
    for n in 1..=4 {
        if !psi_monotone_check(n)? {
            return ok(false, format!("n = {n}"));
        }
    }
    ok(true, "n = 1 .. 4")
}

fn psi_concat(_: u64) -> Result<(bool, String)> {
    let mut checked = 0usize;
    for n in 1..=4 {
        let vs: Vec<Vertex> = vertices(n).collect();
        for &a in &vs {
            for &b in &vs {
                for &c in &vs {
                    if !(a.leq(&b) && b.leq(&c) && a.sup() < b.sup() && b.sup() < c.sup()) {
                        continue;
                    }
                    let free = |x: Vertex, y: Vertex| -> Vec<u8> {
                        (1..=n as u8).filter(|&i| y.get(i as usize) && !x.get(i as usize)).collect()
                    };
                    let (_, xs) = bruhat(&free(a, b))?;
                    let (_, ys) = bruhat(&free(b, c))?;
                    for x in &xs {
                        for y in &ys {
                            if !psi_concat_check(n, a, b, c, x, y)? {
                                return ok(false, format!("{a} {b} {c} {x:?} {y:?}"));
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    ok(true, format!("{checked} pairs"))
}

fn gamma_lift(_: u64) -> Result<(bool, String)> {
    for n in 1..=4 {
        for i in 1..=n {
            if !gamma_constancy_check(n, i)? {
                return ok(false, format!("n = {n}, i = {i}"));
            }
        }
    }
    ok(true, "n = 1 .. 4, all i")
}

// counterexample

fn x_paths() -> Result<(crate::cubeset::CounterexampleX, crate::pathcat::PathPreorder)> {
    let x = counterexample_x()?;
    let pre = leadsto_closure(&x.complex, x.source, x.target)?;
    Ok((x, pre))
}

fn x_chain(_: u64) -> Result<(bool, String)> {
    let (x, pre) = x_paths()?;
    let idx = |e: usize| pre.index_of(&[e]);
    let (Some(u), Some(v), Some(w)) = (idx(x.u), idx(x.v), idx(x.w)) else {
        return ok(false, "u, v, w are not all paths");
    };
    let chain = pre.leadsto(u, v) && pre.leadsto(v, w) && pre.leadsto(u, w);
    let strict = !pre.leadsto(v, u) && !pre.leadsto(w, v) && !pre.leadsto(w, u);
    ok(pre.len() == 3 && chain && strict, format!("{} paths", pre.len()))
}

fn x_two_simplex(_: u64) -> Result<(bool, String)> {
    let (_, pre) = x_paths()?;
    let n = nerve(&pre.to_poset()?, None)?;
    ok(n.sset.count(2) == 1, format!("counts {:?}", n.sset.counts()))
}

fn x_pushout(_: u64) -> Result<(bool, String)> {
    let tilde = tilde_square()?;
    let c = &tilde.complex;
    let pre = leadsto_closure(c, 0, 1)?;
    let top = 3;
    let piece = nerve(&pre.to_poset()?, Some(top))?;
    let shared = nerve(&FinitePoset::point(), Some(top))?;
    // glue the lower path of one copy to the upper path of the other
    let (lo, hi) = match pre.moves() {
        [(from, to)] => (*to, *from),
        _ => return ok(false, "□̃² should have one move"),
    };
    let into_first = nerve_map(&shared, &piece, |_| pre.index_of(pre.path(lo)).expect("path"));
    let into_second = nerve_map(&shared, &piece, |_| pre.index_of(pre.path(hi)).expect("path"));
    let objs = vec![shared.sset.clone(), piece.sset.clone(), piece.sset.clone()];
    let col = colimit(&objs, &[(0, 1, into_first), (0, 2, into_second)])?;
    let (_, xpre) = x_paths()?;
    let whole = nerve(&xpre.to_poset()?, Some(top))?;
    ok(
        col.sset.is_one_skeletal() && !whole.sset.is_one_skeletal(),
        format!("pushout {:?}, nerve of X paths {:?}", col.sset.counts(), whole.sset.counts()),
    )
}

// colimits

fn downward_closed(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes: Vec<Vec<usize>> = compositions_up_to(4).into_iter().filter(|c| !c.is_empty()).collect();
    let diagrams = shapes
        .iter()
        .map(|b| {
            let t = Necklace::new(b.clone())?;
            let d = subneck_diagram(&t.to_subcomplex(), t.alpha(), t.omega(), None)?;
            let whole = d.colimit()?;
            Ok((d, whole))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut failures = 0;
    let mut trials = 0;
    while trials < 200 {
        let (d, whole) = &diagrams[rng.gen_range(0..diagrams.len())];
        let p = &d.subneck.poset;
        let density: f64 = rng.gen_range(0.05..0.6);
        let pick: Vec<usize> = (0..p.len()).filter(|_| rng.gen_bool(density)).collect();
        let set = p.down_closure(&pick);
        debug_assert!(p.is_downward_closed(&set));
        let partial = d.colimit_over(&set)?;
        if !d.comparison(&set, &partial, whole).is_injective() {
            failures += 1;
        }
        trials += 1;
    }
    ok(failures == 0, format!("{trials} subsets, {failures} failures"))
}

fn formula_consistency(_: u64) -> Result<(bool, String)> {
    let mut checked = 0usize;
    for beads in compositions_up_to(4) {
        if beads.is_empty() {
            continue;
        }
        let t = Necklace::new(beads)?;
        let s = t.to_subcomplex();
        for a in t.vertices() {
            for b in t.vertices() {
                if !a.leq(&b) {
                    continue;
                }
                let d = subneck_diagram(&s, a, b, None)?;
                let via = d.colimit()?;
                let formula = necklace_mapping_space(&t, a, b, Some(d.top))?;
                let top = d.subneck.poset.greatest();
                let iso = top.is_some_and(|g| {
                    via.legs[g].is_injective() && via.sset.counts() == d.objects[g].sset.counts()
                });
                if !iso || via.sset.counts() != formula.sset.counts() {
                    return ok(false, format!("{t} from {a} to {b}"));
                }
                checked += 1;
            }
        }
    }
    ok(true, format!("{checked} pairs"))
}
