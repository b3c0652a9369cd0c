//! Independent cross-checks and seeded generators for the test suite.
//!
//! Everything in this module favours the most obviously correct method over
//! speed: law checking straight off serialized documents with separate
//! string-keyed tables, ranks by plain elimination, Betti numbers from GF(2)
//! boundary ranks, bottleneck distances by exhaustive matching. None of the
//! library proper depends on it; the `oracles` feature (a default) compiles
//! it so `cargo test` can compare fast implementations against slow truths.
//!
//! Generator streams: 21 actions, 22 filtrations, 23 diagrams, 24 symmetric
//! filtrations. These stay clear of the streams the library itself draws on.

use std::collections::{BTreeMap, BTreeSet};

use crate::fincat::{CategoryData, FunctorData, NatData};
use crate::mat::Mat;
use crate::rng::CounterRng;
use crate::sobj::SimplicialObjectData;
use crate::symgrp::{FinGroup, GroupData, Representation, SetAction, SymError};
use crate::topo::{Bar, ComplexAction, Filtration, PersistenceDiagram, SimplicialComplex};

/// Rank of a real matrix given as rows, by Gaussian elimination with partial
/// pivoting; candidate pivots of magnitude at most `tol` are treated as zero.
pub fn real_rank(mut rows: Vec<Vec<f64>>, tol: f64) -> usize {
    let width = rows.first().map_or(0, |r| r.len());
    assert!(rows.iter().all(|r| r.len() == width), "ragged matrix");
    let mut rank = 0;
    for col in 0..width {
        let pivot = (rank..rows.len()).max_by(|&a, &b| {
            rows[a][col].abs().total_cmp(&rows[b][col].abs())
        });
        let Some(p) = pivot else { break };
        if rows[p][col].abs() <= tol {
            continue;
        }
        rows.swap(rank, p);
        for r in rank + 1..rows.len() {
            let factor = rows[r][col] / rows[rank][col];
            for c in col..width {
                rows[r][c] -= factor * rows[rank][c];
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over GF(2) of rows given as bitmasks.
pub fn gf2_rank(rows: Vec<u64>) -> usize {
    let mut pivots: Vec<u64> = Vec::new();
    for mut row in rows {
        for &p in &pivots {
            if row & (1 << (63 - p.leading_zeros())) != 0 {
                row ^= p;
            }
        }
        if row != 0 {
            pivots.push(row);
        }
    }
    pivots.len()
}

fn trace(m: &Mat) -> f64 {
    (0..m.rows.min(m.cols)).map(|i| m.data[i * m.cols + i]).sum()
}

/// Rebuilds every category law straight from the serialized document with
/// its own string-keyed tables: unique names, known endpoints, consistent
/// and endpoint-respecting composition entries, totality on composable
/// pairs, identities with both unit laws, and associativity. Any defect at
/// all makes the document unlawful.
pub fn category_doc_is_lawful(doc: &CategoryData) -> bool {
    let mut objects = BTreeSet::new();
    for o in &doc.objects {
        if !objects.insert(o.as_str()) {
            return false;
        }
    }
    let mut src: BTreeMap<&str, &str> = BTreeMap::new();
    let mut tgt: BTreeMap<&str, &str> = BTreeMap::new();
    for m in &doc.morphisms {
        if src.insert(m.id.as_str(), m.src.as_str()).is_some() {
            return false;
        }
        tgt.insert(m.id.as_str(), m.tgt.as_str());
        if !objects.contains(m.src.as_str()) || !objects.contains(m.tgt.as_str()) {
            return false;
        }
    }
    // comp[(g, f)] = r means r is g after f.
    let mut comp: BTreeMap<(&str, &str), &str> = BTreeMap::new();
    for entry in &doc.composition {
        let (g, f, r) = (entry[0].as_str(), entry[1].as_str(), entry[2].as_str());
        if ![g, f, r].iter().all(|id| src.contains_key(id)) {
            return false;
        }
        if tgt[f] != src[g] || src[r] != src[f] || tgt[r] != tgt[g] {
            return false;
        }
        if let Some(prev) = comp.insert((g, f), r) {
            if prev != r {
                return false;
            }
        }
    }
    let ids: Vec<&str> = doc.morphisms.iter().map(|m| m.id.as_str()).collect();
    for &g in &ids {
        for &f in &ids {
            if tgt[f] == src[g] && !comp.contains_key(&(g, f)) {
                return false;
            }
        }
    }
    for (o, i) in &doc.identities {
        if !objects.contains(o.as_str()) {
            return false;
        }
        let Some(&s) = src.get(i.as_str()) else { return false };
        if s != o.as_str() || tgt[i.as_str()] != o.as_str() {
            return false;
        }
    }
    for &f in &ids {
        let Some(ida) = doc.identities.get(src[f]) else { return false };
        let Some(idb) = doc.identities.get(tgt[f]) else { return false };
        if comp[&(idb.as_str(), f)] != f || comp[&(f, ida.as_str())] != f {
            return false;
        }
    }
    for &h in &ids {
        for &g in &ids {
            if tgt[g] != src[h] {
                continue;
            }
            for &f in &ids {
                if tgt[f] != src[g] {
                    continue;
                }
                if comp[&(comp[&(h, g)], f)] != comp[&(h, comp[&(g, f)])] {
                    return false;
                }
            }
        }
    }
    true
}

/// Every single-entry corruption of a category document: each composition
/// result replaced by each other morphism id, and each identity assignment
/// replaced by each other morphism id. Tags name the corrupted entry.
pub fn category_mutants(doc: &CategoryData) -> Vec<(CategoryData, String)> {
    let ids: Vec<String> = doc.morphisms.iter().map(|m| m.id.clone()).collect();
    let mut out = Vec::new();
    for (k, entry) in doc.composition.iter().enumerate() {
        for m in &ids {
            if *m == entry[2] {
                continue;
            }
            let mut mutant = doc.clone();
            mutant.composition[k][2] = m.clone();
            out.push((
                mutant,
                format!("comp({},{})={} changed to {}", entry[0], entry[1], entry[2], m),
            ));
        }
    }
    for (o, i) in &doc.identities {
        for m in &ids {
            if m == i {
                continue;
            }
            let mut mutant = doc.clone();
            mutant.identities.insert(o.clone(), m.clone());
            out.push((mutant, format!("id({})={} changed to {}", o, i, m)));
        }
    }
    out
}

/// Every single-entry corruption of a group's multiplication table. Any such
/// change breaks a group law: the mutated row duplicates one value and drops
/// another, which no associative unital invertible structure allows.
pub fn group_table_mutants(doc: &GroupData) -> Vec<(GroupData, String)> {
    let n = doc.elements.len();
    let mut out = Vec::new();
    for g in 0..n {
        for h in 0..n {
            for alt in 0..n {
                if alt == doc.table[g][h] {
                    continue;
                }
                let mut mutant = doc.clone();
                mutant.table[g][h] = alt;
                out.push((
                    mutant,
                    format!(
                        "table[{}][{}]={} changed to {}",
                        doc.elements[g], doc.elements[h], doc.elements[doc.table[g][h]], doc.elements[alt]
                    ),
                ));
            }
        }
    }
    out
}

/// Every single-entry corruption of a functor document: each object image
/// replaced by each other target object, each morphism image by each other
/// target morphism.
pub fn functor_mutants(doc: &FunctorData) -> Vec<(FunctorData, String)> {
    let mut out = Vec::new();
    for (x, old) in &doc.object_map {
        for alt in &doc.target.objects {
            if alt == old {
                continue;
            }
            let mut mutant = doc.clone();
            mutant.object_map.insert(x.clone(), alt.clone());
            out.push((mutant, format!("object {} sent to {} instead of {}", x, alt, old)));
        }
    }
    let target_ids: Vec<String> = doc.target.morphisms.iter().map(|m| m.id.clone()).collect();
    for (m, old) in &doc.morphism_map {
        for alt in &target_ids {
            if alt == old {
                continue;
            }
            let mut mutant = doc.clone();
            mutant.morphism_map.insert(m.clone(), alt.clone());
            out.push((mutant, format!("morphism {} sent to {} instead of {}", m, alt, old)));
        }
    }
    out
}

/// Every single-entry corruption of a transformation document's component
/// table: each component replaced by each other target morphism.
pub fn nat_mutants(doc: &NatData) -> Vec<(NatData, String)> {
    let target_ids: Vec<String> = doc.target.morphisms.iter().map(|m| m.id.clone()).collect();
    let mut out = Vec::new();
    for (x, old) in &doc.components {
        for alt in &target_ids {
            if alt == old {
                continue;
            }
            let mut mutant = doc.clone();
            mutant.components.insert(x.clone(), alt.clone());
            out.push((mutant, format!("component at {} set to {} instead of {}", x, alt, old)));
        }
    }
    out
}

/// Every single-entry corruption of a simplicial-object document: each face
/// or degeneracy table entry replaced by each other element index of its
/// target level.
pub fn simplicial_mutants(doc: &SimplicialObjectData) -> Vec<(SimplicialObjectData, String)> {
    let mut out = Vec::new();
    for (kk, group) in doc.faces.iter().enumerate() {
        let target = doc.levels[kk].len();
        for (i, tab) in group.iter().enumerate() {
            for (x, &old) in tab.iter().enumerate() {
                for alt in 0..target {
                    if alt == old {
                        continue;
                    }
                    let mut mutant = doc.clone();
                    mutant.faces[kk][i][x] = alt;
                    out.push((
                        mutant,
                        format!("face k={} i={} at {}: {} changed to {}", kk + 1, i, x, old, alt),
                    ));
                }
            }
        }
    }
    for (kk, group) in doc.degeneracies.iter().enumerate() {
        let target = doc.levels[kk + 1].len();
        for (i, tab) in group.iter().enumerate() {
            for (x, &old) in tab.iter().enumerate() {
                for alt in 0..target {
                    if alt == old {
                        continue;
                    }
                    let mut mutant = doc.clone();
                    mutant.degeneracies[kk][i][x] = alt;
                    out.push((
                        mutant,
                        format!(
                            "degeneracy k={} i={} at {}: {} changed to {}",
                            kk + 1,
                            i,
                            x,
                            old,
                            alt
                        ),
                    ));
                }
            }
        }
    }
    out
}

/// Group families the action generator knows standard transitive blocks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic(usize),
    S3,
}

impl GroupKind {
    pub fn group(&self) -> FinGroup {
        match self {
            GroupKind::Cyclic(n) => FinGroup::cyclic(*n),
            GroupKind::S3 => FinGroup::s3(),
        }
    }
}

fn s3_digits(name: &str) -> Vec<usize> {
    name.chars().map(|c| c as usize - '0' as usize).collect()
}

fn s3_parity(perm: &[usize]) -> usize {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2
}

/// Table of one standard transitive block: for cyclic groups the quotient
/// action on residues modulo a divisor; for the symmetric group the trivial,
/// sign, natural, and regular actions.
fn transitive_block(kind: GroupKind, group: &FinGroup, size: usize) -> Vec<Vec<usize>> {
    let n = group.order();
    match kind {
        GroupKind::Cyclic(_) => {
            (0..n).map(|g| (0..size).map(|x| (x + g) % size).collect()).collect()
        }
        GroupKind::S3 => match size {
            1 => vec![vec![0]; n],
            2 => (0..n)
                .map(|g| {
                    let p = s3_parity(&s3_digits(group.name(g)));
                    (0..2).map(|x| (x + p) % 2).collect()
                })
                .collect(),
            3 => (0..n)
                .map(|g| {
                    let perm = s3_digits(group.name(g));
                    (0..3).map(|x| perm[x]).collect()
                })
                .collect(),
            6 => (0..n).map(|g| (0..6).map(|x| group.mul(g, x)).collect()).collect(),
            _ => unreachable!("no transitive block of size {} on three letters", size),
        },
    }
}

/// A randomized action with an exactly known orbit count: a disjoint union
/// of standard transitive blocks, relabeled by a seeded permutation of the
/// whole point set. Returns the action and its number of blocks, which is
/// its orbit count.
pub fn action_with_known_orbits(
    kind: GroupKind,
    max_points: usize,
    seed: u64,
) -> (SetAction, usize) {
    assert!(max_points >= 1 && max_points <= 64);
    let group = kind.group();
    let sizes: Vec<usize> = match kind {
        GroupKind::Cyclic(n) => (1..=n).filter(|d| n % d == 0).collect(),
        GroupKind::S3 => vec![1, 2, 3, 6],
    };
    let mut rng = CounterRng::stream(seed, 21);
    let mut blocks: Vec<usize> = Vec::new();
    let mut total = 0usize;
    loop {
        let feasible: Vec<usize> =
            sizes.iter().copied().filter(|s| total + s <= max_points).collect();
        if feasible.is_empty() {
            break;
        }
        let pick = feasible[rng.below(feasible.len())];
        blocks.push(pick);
        total += pick;
        if total == max_points || rng.below(4) == 0 {
            break;
        }
    }
    let mut relabel: Vec<usize> = (0..total).collect();
    rng.shuffle(&mut relabel);
    let n = group.order();
    let mut table = vec![vec![0usize; total]; n];
    let mut offset = 0;
    for &size in &blocks {
        let block = transitive_block(kind, &group, size);
        for (g, row) in block.iter().enumerate() {
            for (x, &y) in row.iter().enumerate() {
                table[g][relabel[offset + x]] = relabel[offset + y];
            }
        }
        offset += size;
    }
    let points = (0..total).map(|i| format!("p{}", i)).collect();
    (SetAction { group, points, table }, blocks.len())
}

/// Dimension of the intertwiner space Hom(V_in, V_out) by character
/// averaging: the G-average of T -> rho_out(g) T rho_in(g^{-1}) projects
/// onto the intertwiners, and a projector's trace is its rank, here
/// (1/|G|) sum_g tr(rho_out(g)) tr(rho_in(g^{-1})). The result should sit
/// within rounding error of an integer.
pub fn intertwiner_dim_by_characters(
    rep_in: &Representation,
    rep_out: &Representation,
) -> Result<f64, SymError> {
    let n = rep_in.group.order();
    let mut acc = 0.0;
    for g in 0..n {
        let ginv = rep_in.group.inverse(g)?;
        acc += trace(rep_out.mat(g)) * trace(rep_in.mat(ginv));
    }
    Ok(acc / n as f64)
}

/// The same dimension by brute force: stack the linear constraints
/// rho_out(g) T - T rho_in(g) = 0 for every group element over the
/// dim_out * dim_in unknown entries of T and count the nullity.
pub fn intertwiner_dim_by_elimination(
    rep_in: &Representation,
    rep_out: &Representation,
    tol: f64,
) -> usize {
    let (di, dout) = (rep_in.dim, rep_out.dim);
    let unknowns = dout * di;
    let mut rows = Vec::new();
    for g in 0..rep_in.group.order() {
        let a = rep_out.mat(g);
        let b = rep_in.mat(g);
        for i in 0..dout {
            for j in 0..di {
                let mut row = vec![0.0; unknowns];
                for k in 0..dout {
                    row[k * di + j] += a.data[i * a.cols + k];
                }
                for l in 0..di {
                    row[i * di + l] -= b.data[l * b.cols + j];
                }
                rows.push(row);
            }
        }
    }
    unknowns - real_rank(rows, tol)
}

/// Betti numbers (dimensions 0..=max_dim) of the sublevel complex at `t`,
/// from GF(2) boundary ranks: beta_k = n_k - rank d_k - rank d_{k+1}.
/// Requires a monotone filtration so the sublevel set is face-closed.
pub fn betti_at(f: &Filtration, t: f64, max_dim: usize) -> Vec<usize> {
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); max_dim + 2];
    let mut local: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, s) in f.complex.simplices.iter().enumerate() {
        if f.values[i] <= t {
            let d = s.len() - 1;
            if d < by_dim.len() {
                local.insert(i, by_dim[d].len());
                by_dim[d].push(i);
            }
        }
    }
    assert!(by_dim.iter().all(|level| level.len() <= 64), "bitmask oracle capped at 64");
    let rank_d = |k: usize| -> usize {
        if k == 0 || k >= by_dim.len() {
            return 0;
        }
        let rows: Vec<u64> = by_dim[k]
            .iter()
            .map(|&gi| {
                let mut mask = 0u64;
                for face in SimplicialComplex::faces(&f.complex.simplices[gi]) {
                    let fi = f.complex.position(&face).expect("face-closed complex");
                    mask |= 1 << local[&fi];
                }
                mask
            })
            .collect();
        gf2_rank(rows)
    };
    (0..=max_dim).map(|k| by_dim[k].len() - rank_d(k) - rank_d(k + 1)).collect()
}

/// Bars per dimension alive at `t` (birth <= t < death), for comparison
/// with `betti_at`.
pub fn bars_alive_at(d: &PersistenceDiagram, t: f64, max_dim: usize) -> Vec<usize> {
    let mut counts = vec![0usize; max_dim + 1];
    for b in &d.bars {
        if b.dim <= max_dim && b.birth <= t && t < b.death {
            counts[b.dim] += 1;
        }
    }
    counts
}

fn matching_pair_cost(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

fn matching_diag_cost(a: (f64, f64)) -> f64 {
    (a.1 - a.0) / 2.0
}

fn best_matching(a: &[(f64, f64)], b: &[(f64, f64)], i: usize, used: &mut [bool]) -> f64 {
    if i == a.len() {
        return b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(_, p)| matching_diag_cost(*p))
            .fold(0.0, f64::max);
    }
    let mut best = best_matching(a, b, i + 1, used).max(matching_diag_cost(a[i]));
    for j in 0..b.len() {
        if used[j] {
            continue;
        }
        used[j] = true;
        let rest = best_matching(a, b, i + 1, used).max(matching_pair_cost(a[i], b[j]));
        used[j] = false;
        best = best.min(rest);
    }
    best
}

/// Bottleneck distance in one dimension by exhaustive matching: every point
/// pairs with a point of the other diagram or retires to the diagonal, and
/// the best matching minimizes the worst single cost. The cost atoms are
/// the same expressions the production algorithm compares, so on small
/// diagrams the two agree exactly rather than within a tolerance.
pub fn bottleneck_by_matchings(
    d1: &PersistenceDiagram,
    d2: &PersistenceDiagram,
    dim: usize,
) -> f64 {
    let split = |d: &PersistenceDiagram| {
        let mut finite = Vec::new();
        let mut inf = Vec::new();
        for b in d.bars.iter().filter(|b| b.dim == dim) {
            if b.is_infinite() {
                inf.push(b.birth);
            } else {
                finite.push((b.birth, b.death));
            }
        }
        inf.sort_by(|x: &f64, y| x.total_cmp(y));
        (finite, inf)
    };
    let (fin1, inf1) = split(d1);
    let (fin2, inf2) = split(d2);
    if inf1.len() != inf2.len() {
        return f64::INFINITY;
    }
    let inf_part = inf1.iter().zip(&inf2).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let mut used = vec![false; fin2.len()];
    inf_part.max(best_matching(&fin1, &fin2, 0, &mut used))
}

/// Seeded diagram with up to `max_points` bars in one dimension, coordinates
/// on a quarter-integer grid so ties and exact coincidences occur; roughly
/// one bar in eight is infinite.
pub fn random_diagram(seed: u64, max_points: usize, dim: usize) -> PersistenceDiagram {
    let mut rng = CounterRng::stream(seed, 23);
    let n = rng.below(max_points + 1);
    let mut bars = Vec::new();
    for _ in 0..n {
        let birth = rng.below(8) as f64 * 0.25;
        if rng.below(8) == 0 {
            bars.push(Bar { dim, birth, death: f64::INFINITY });
        } else {
            let death = birth + (rng.below(8) + 1) as f64 * 0.25;
            bars.push(Bar { dim, birth, death });
        }
    }
    PersistenceDiagram::new(bars)
}

/// Seeded face-closed filtration with monotone values: all vertices, then a
/// random subset of edges, then triangles whose three edges all made it,
/// values stepping up a half-integer grid from the maximum over faces.
pub fn random_filtration(seed: u64, max_simplices: usize) -> Filtration {
    assert!(max_simplices >= 2);
    let mut rng = CounterRng::stream(seed, 22);
    let nv = (2 + rng.below(4)).min(max_simplices);
    let mut simplices: Vec<Vec<usize>> = (0..nv).map(|v| vec![v]).collect();
    let mut edges = Vec::new();
    for i in 0..nv {
        for j in i + 1..nv {
            edges.push(vec![i, j]);
        }
    }
    rng.shuffle(&mut edges);
    for e in edges {
        if simplices.len() >= max_simplices {
            break;
        }
        if rng.below(3) > 0 {
            simplices.push(e);
        }
    }
    let present =
        |simplices: &[Vec<usize>], s: &[usize]| simplices.iter().any(|x| x.as_slice() == s);
    let mut triangles = Vec::new();
    for i in 0..nv {
        for j in i + 1..nv {
            for k in j + 1..nv {
                if present(&simplices, &[i, j])
                    && present(&simplices, &[i, k])
                    && present(&simplices, &[j, k])
                {
                    triangles.push(vec![i, j, k]);
                }
            }
        }
    }
    rng.shuffle(&mut triangles);
    for t in triangles {
        if simplices.len() >= max_simplices {
            break;
        }
        if rng.below(2) == 0 {
            simplices.push(t);
        }
    }
    let complex = SimplicialComplex::from_simplices(simplices).expect("closed by construction");
    let mut values = vec![0.0f64; complex.len()];
    for i in 0..complex.len() {
        let base = SimplicialComplex::faces(&complex.simplices[i])
            .iter()
            .map(|f| values[complex.position(f).expect("faces listed before cofaces")])
            .fold(0.0f64, f64::max);
        values[i] = base + rng.below(4) as f64 * 0.5;
    }
    Filtration { complex, values }
}

/// Monotone values constant on simplex orbits: simplices are visited in
/// listed order (faces before cofaces), each unvalued orbit gets the maximum
/// over all its members' faces plus a grid step, applied orbit-wide.
fn orbit_constant_values(
    act: &ComplexAction,
    complex: &SimplicialComplex,
    rng: &mut CounterRng,
) -> Vec<f64> {
    let n = complex.len();
    let mut values = vec![f64::NAN; n];
    for i in 0..n {
        if !values[i].is_nan() {
            continue;
        }
        let orbit: BTreeSet<usize> = (0..act.action.group.order())
            .map(|g| {
                complex
                    .position(&act.map_simplex(g, &complex.simplices[i]))
                    .expect("complex closed under the action")
            })
            .collect();
        let mut base = 0.0f64;
        for &j in &orbit {
            for f in SimplicialComplex::faces(&complex.simplices[j]) {
                let fv = values[complex.position(&f).expect("face-closed complex")];
                assert!(!fv.is_nan(), "faces listed before cofaces");
                base = base.max(fv);
            }
        }
        let v = base + rng.below(3) as f64 * 0.5;
        for &j in &orbit {
            values[j] = v;
        }
    }
    values
}

/// A seeded symmetric filtration with its acting group: either a cycle graph
/// under rotation or a path graph under the end-to-end reflection, with
/// orbit-constant monotone values. Both families keep at least one orbit of
/// top-dimensional simplices with two or more members, so a perturbation
/// that must be caught always has somewhere to live.
pub fn symmetric_filtration(seed: u64) -> (ComplexAction, Filtration) {
    let mut rng = CounterRng::stream(seed, 24);
    let (action, simplices) = if rng.below(2) == 0 {
        let m = 3 + rng.below(4);
        let mut simplices: Vec<Vec<usize>> = (0..m).map(|v| vec![v]).collect();
        for i in 0..m {
            let mut e = vec![i, (i + 1) % m];
            e.sort_unstable();
            simplices.push(e);
        }
        let table = (0..m).map(|g| (0..m).map(|x| (x + g) % m).collect()).collect();
        let points = (0..m).map(|x| x.to_string()).collect();
        (SetAction { group: FinGroup::cyclic(m), points, table }, simplices)
    } else {
        let last = 2 + rng.below(4);
        let mut simplices: Vec<Vec<usize>> = (0..=last).map(|v| vec![v]).collect();
        for i in 0..last {
            simplices.push(vec![i, i + 1]);
        }
        let table = vec![(0..=last).collect(), (0..=last).rev().collect()];
        let points = (0..=last).map(|x| x.to_string()).collect();
        (SetAction { group: FinGroup::cyclic(2), points, table }, simplices)
    };
    let complex = SimplicialComplex::from_simplices(simplices).expect("closed by construction");
    let act = ComplexAction::new(action);
    let values = orbit_constant_values(&act, &complex, &mut rng);
    (act, Filtration { complex, values })
}

/// Some simplex with no cofaces whose orbit has at least two members, if
/// any: raising its value keeps the filtration monotone while breaking
/// orbit-constancy, so it is the right place to plant a perturbation.
pub fn perturbable_simplex(act: &ComplexAction, f: &Filtration) -> Option<usize> {
    let k = &f.complex;
    let mut has_coface = vec![false; k.len()];
    for s in &k.simplices {
        for face in SimplicialComplex::faces(s) {
            if let Some(i) = k.position(&face) {
                has_coface[i] = true;
            }
        }
    }
    (0..k.len()).find(|&i| {
        if has_coface[i] {
            return false;
        }
        let orbit: BTreeSet<usize> = (0..act.action.group.order())
            .map(|g| k.position(&act.map_simplex(g, &k.simplices[i])).expect("simplicial action"))
            .collect();
        orbit.len() >= 2
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{validate_category, FinCategory};
    use crate::symgrp::{burnside_count, intertwiner_basis, orbits, validate_group};
    use crate::topo::{
        bottleneck, check_equivariant_filtration, persistence, validate_complex, ComplexData,
        FiltrationData,
    };

    #[test]
    fn stock_category_documents_are_lawful() {
        for cat in [
            FinCategory::arrow(),
            FinCategory::parallel_pair(),
            FinCategory::discrete(3),
            FinCategory::delooping(&FinGroup::cyclic(2)),
            FinCategory::delooping(&FinGroup::cyclic(3)),
        ] {
            assert!(category_doc_is_lawful(&cat.to_doc()));
            assert!(validate_category(&cat).passed());
        }
    }

    #[test]
    fn the_oracle_and_the_validator_agree_on_every_arrow_mutant() {
        let doc = FinCategory::arrow().to_doc();
        let mutants = category_mutants(&doc);
        assert_eq!(mutants.len(), 12);
        for (mutant, tag) in &mutants {
            let detected = match FinCategory::from_doc(mutant) {
                Err(_) => true,
                Ok(cat) => !validate_category(&cat).passed(),
            };
            assert!(detected, "undetected mutant: {}", tag);
            assert!(!category_doc_is_lawful(mutant), "oracle passed mutant: {}", tag);
        }
    }

    #[test]
    fn the_idempotent_corruption_of_the_two_element_delooping_is_lawful() {
        // Sending the non-identity loop's self-composite to itself instead of
        // to the identity yields the two-element idempotent monoid, which is
        // a perfectly lawful one-object category. Both the oracle and the
        // validator must accept it; only the group-table checker can object.
        let doc = FinCategory::delooping(&FinGroup::cyclic(2)).to_doc();
        let mutants = category_mutants(&doc);
        assert_eq!(mutants.len(), 5);
        let mut lawful = 0;
        for (mutant, tag) in &mutants {
            let oracle = category_doc_is_lawful(mutant);
            let main = match FinCategory::from_doc(mutant) {
                Err(_) => false,
                Ok(cat) => validate_category(&cat).passed(),
            };
            assert_eq!(oracle, main, "disagreement on: {}", tag);
            if oracle {
                lawful += 1;
                assert!(tag.contains("comp(r1,r1)=r0 changed to r1"), "unexpected: {}", tag);
            }
        }
        assert_eq!(lawful, 1);
    }

    #[test]
    fn every_group_table_corruption_breaks_a_group_law() {
        for group in [FinGroup::cyclic(2), FinGroup::cyclic(4), FinGroup::s3()] {
            let doc = group.to_doc();
            for (mutant, tag) in group_table_mutants(&doc) {
                let detected = match FinGroup::from_doc(&mutant) {
                    Err(_) => true,
                    Ok(g) => !validate_group(&g).passed(),
                };
                assert!(detected, "undetected group mutant: {}", tag);
            }
        }
    }

    #[test]
    fn known_orbit_actions_validate_and_count() {
        let kinds =
            [GroupKind::Cyclic(2), GroupKind::Cyclic(3), GroupKind::Cyclic(4), GroupKind::S3];
        for kind in kinds {
            for seed in 0..5 {
                let (action, expected) = action_with_known_orbits(kind, 12, seed);
                assert!(action.validate().passed(), "{:?} seed {}", kind, seed);
                assert_eq!(orbits(&action).len(), expected, "{:?} seed {}", kind, seed);
                assert_eq!(
                    burnside_count(&action).unwrap(),
                    expected as u128,
                    "{:?} seed {}",
                    kind,
                    seed
                );
            }
        }
    }

    #[test]
    fn rank_helpers_count_pivots() {
        let eye = vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ];
        assert_eq!(real_rank(eye, 1e-12), 3);
        assert_eq!(real_rank(vec![vec![1.0, 2.0], vec![2.0, 4.0]], 1e-12), 1);
        assert_eq!(real_rank(Vec::new(), 1e-12), 0);
        assert_eq!(gf2_rank(vec![0b01, 0b10, 0b11]), 2);
        assert_eq!(gf2_rank(vec![0, 0]), 0);
        assert_eq!(gf2_rank(Vec::new()), 0);
    }

    #[test]
    fn intertwiner_dimensions_agree_three_ways() {
        let swap = SetAction {
            group: FinGroup::cyclic(2),
            points: vec!["0".into(), "1".into()],
            table: vec![vec![0, 1], vec![1, 0]],
        };
        let rep = Representation::permutation(&swap);
        let by_char = intertwiner_dim_by_characters(&rep, &rep).unwrap();
        assert!((by_char - 2.0).abs() < 1e-9);
        assert_eq!(intertwiner_dim_by_elimination(&rep, &rep, 1e-9), 2);
        assert_eq!(intertwiner_basis(&rep, &rep).len(), 2);

        let trivial = Representation::trivial(&FinGroup::cyclic(3));
        let by_char = intertwiner_dim_by_characters(&trivial, &trivial).unwrap();
        assert!((by_char - 1.0).abs() < 1e-9);
        assert_eq!(intertwiner_dim_by_elimination(&trivial, &trivial, 1e-9), 1);
        assert_eq!(intertwiner_basis(&trivial, &trivial).len(), 1);
    }

    fn triangle_filtration() -> Filtration {
        Filtration::from_doc(&FiltrationData {
            complex: ComplexData {
                simplices: vec![
                    vec![0],
                    vec![1],
                    vec![2],
                    vec![0, 1],
                    vec![0, 2],
                    vec![1, 2],
                    vec![0, 1, 2],
                ],
            },
            values: vec![0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 2.0],
        })
        .unwrap()
    }

    #[test]
    fn sublevel_betti_numbers_match_the_bars() {
        let f = triangle_filtration();
        let diagram = persistence(&f);
        for (t, expected) in [(0.5, vec![3, 0]), (1.5, vec![1, 1]), (2.5, vec![1, 0])] {
            assert_eq!(betti_at(&f, t, 1), expected, "t={}", t);
            assert_eq!(bars_alive_at(&diagram, t, 1), expected, "t={}", t);
        }
    }

    #[test]
    fn exhaustive_matching_agrees_with_the_production_distance() {
        let single = PersistenceDiagram::new(vec![Bar { dim: 0, birth: 0.0, death: 2.0 }]);
        let moved = PersistenceDiagram::new(vec![Bar { dim: 0, birth: 0.0, death: 2.5 }]);
        let empty = PersistenceDiagram::new(Vec::new());
        assert_eq!(bottleneck_by_matchings(&single, &empty, 0), 1.0);
        assert_eq!(bottleneck_by_matchings(&single, &moved, 0), 0.5);
        for seed in 0..40u64 {
            let d1 = random_diagram(2 * seed, 4, 0);
            let d2 = random_diagram(2 * seed + 1, 4, 0);
            assert_eq!(
                bottleneck(&d1, &d2, 0),
                bottleneck_by_matchings(&d1, &d2, 0),
                "seed {}",
                seed
            );
        }
    }

    #[test]
    fn random_filtrations_are_closed_and_monotone() {
        for seed in 0..20u64 {
            let f = random_filtration(seed, 12);
            assert!(f.complex.len() <= 12);
            assert!(validate_complex(&f.complex).passed(), "seed {}", seed);
            for (i, s) in f.complex.simplices.iter().enumerate() {
                for face in SimplicialComplex::faces(s) {
                    let fi = f.complex.position(&face).unwrap();
                    assert!(f.values[fi] <= f.values[i], "seed {}", seed);
                }
            }
            persistence(&f);
        }
    }

    #[test]
    fn symmetric_filtrations_are_equivariant_until_perturbed() {
        for seed in 0..10u64 {
            let (act, f) = symmetric_filtration(seed);
            assert!(act.validate_on(&f.complex).passed(), "seed {}", seed);
            assert!(
                check_equivariant_filtration(&act, &f).unwrap().passed(),
                "seed {}",
                seed
            );
            let idx = perturbable_simplex(&act, &f).expect("both families keep one");
            let mut perturbed = f.clone();
            perturbed.values[idx] += 0.75;
            assert!(
                !check_equivariant_filtration(&act, &perturbed).unwrap().passed(),
                "seed {}",
                seed
            );
        }
    }

    #[test]
    fn nerve_mutants_enumerate_every_entry_and_all_are_caught() {
        let nerve = crate::sobj::nerve(&FinCategory::arrow(), 2).unwrap();
        let doc = nerve.object.to_doc();
        let mutants = simplicial_mutants(&doc);
        assert_eq!(mutants.len(), 52);
        for (mutant, tag) in &mutants {
            let detected = match crate::sobj::SimplicialObject::from_doc(mutant) {
                Err(_) => true,
                Ok(m) => !crate::sobj::validate_simplicial(&m).passed(),
            };
            assert!(detected, "undetected simplicial mutant: {}", tag);
        }
    }
}
