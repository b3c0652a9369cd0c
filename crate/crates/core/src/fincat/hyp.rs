//! Exhaustive enumeration of the endofunctor 2-truncation of a small
//! category: all endofunctors, all transformations between them, both
//! compositions, and the stability check that singles out identities.

use std::collections::BTreeMap;

use super::category::FinCategory;
use super::functor::FinFunctor;
use super::FincatError;
use crate::report::{LawReport, Violation};

/// Upper bound on the coarse candidate count |O|^|O| * |M|^|M| before
/// enumeration refuses to start.
pub const HYP_BUDGET: f64 = 1e7;

/// The enumerated 2-truncation: every endofunctor of the base and every
/// transformation between each ordered pair of them.
#[derive(Debug, Clone)]
pub struct EndoCat {
    pub base: FinCategory,
    pub endofunctors: Vec<FinFunctor>,
    /// homs[(f, g)] lists the component vectors of all transformations from
    /// endofunctor f to endofunctor g; pairs with no transformations are
    /// absent.
    pub homs: BTreeMap<(usize, usize), Vec<Vec<usize>>>,
}

impl EndoCat {
    pub fn hom(&self, f: usize, g: usize) -> &[Vec<usize>] {
        self.homs.get(&(f, g)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn functor_index(&self, f: &FinFunctor) -> Option<usize> {
        self.endofunctors.iter().position(|e| e == f)
    }

    pub fn nat_index(&self, f: usize, g: usize, components: &[usize]) -> Option<usize> {
        self.hom(f, g).iter().position(|c| c == components)
    }

    /// Component vector of the identity transformation on endofunctor f:
    /// the declared identity at each image object. The base must declare all
    /// identities (enumeration already requires that).
    pub fn identity_nat(&self, f: usize) -> Vec<usize> {
        self.endofunctors[f]
            .obj_map
            .iter()
            .map(|&x| self.base.identities[x].expect("enumeration requires declared identities"))
            .collect()
    }

    /// Stable display name: "identity" for the identity endofunctor,
    /// "collapse_<obj>" for a constant functor, positional otherwise.
    pub fn label(&self, idx: usize) -> String {
        let f = &self.endofunctors[idx];
        if f.is_identity() {
            return "identity".into();
        }
        if let Some(&x) = f.obj_map.first() {
            let constant_obj = f.obj_map.iter().all(|&y| y == x);
            let constant_mor =
                f.mor_map.iter().all(|&m| Some(m) == self.base.identities[x]);
            if constant_obj && constant_mor {
                return format!("collapse_{}", self.base.obj_name(x));
            }
        }
        format!("F{}", idx)
    }

    pub fn describe_nat(&self, components: &[usize]) -> String {
        let names: Vec<&str> = components.iter().map(|&m| self.base.mor_name(m)).collect();
        format!("[{}]", names.join(","))
    }

    fn vertical(&self, beta: &[usize], alpha: &[usize]) -> Option<Vec<usize>> {
        beta.iter()
            .zip(alpha)
            .map(|(&b, &a)| self.base.compose(b, a))
            .collect()
    }

    fn horizontal(
        &self,
        (g, _g2): (usize, usize),
        beta: &[usize],
        (_f, f2): (usize, usize),
        alpha: &[usize],
    ) -> Option<Vec<usize>> {
        let gf = &self.endofunctors[g];
        let f2f = &self.endofunctors[f2];
        (0..alpha.len())
            .map(|x| self.base.compose(beta[f2f.obj_map[x]], gf.mor_map[alpha[x]]))
            .collect()
    }

    /// Checks the whole enumerated structure: identities present in every
    /// endo-hom, both unit laws and associativity of the vertical
    /// composition, closure of both compositions within the enumeration, and
    /// the interchange law between them.
    pub fn check_laws(&self) -> LawReport {
        let mut violations = Vec::new();
        let mut cases = 0u64;
        let nf = self.endofunctors.len();

        for f in 0..nf {
            cases += 1;
            let idn = self.identity_nat(f);
            if self.nat_index(f, f, &idn).is_none() {
                violations.push(Violation::new("hom-identity-present", vec![self.label(f)]));
            }
        }

        // Vertical units and closure.
        for (&(f, g), nats) in &self.homs {
            let id_f = self.identity_nat(f);
            let id_g = self.identity_nat(g);
            for alpha in nats {
                cases += 2;
                if self.vertical(alpha, &id_f).as_deref() != Some(alpha.as_slice()) {
                    violations.push(Violation::new(
                        "vertical-unit-right",
                        vec![self.label(f), self.label(g), self.describe_nat(alpha)],
                    ));
                }
                if self.vertical(&id_g, alpha).as_deref() != Some(alpha.as_slice()) {
                    violations.push(Violation::new(
                        "vertical-unit-left",
                        vec![self.label(f), self.label(g), self.describe_nat(alpha)],
                    ));
                }
            }
        }
        for (&(f, g), nats) in &self.homs {
            for (&(g2, h), nats2) in &self.homs {
                if g2 != g {
                    continue;
                }
                for alpha in nats {
                    for beta in nats2 {
                        cases += 1;
                        match self.vertical(beta, alpha) {
                            Some(ba) => {
                                if self.nat_index(f, h, &ba).is_none() {
                                    violations.push(Violation::new(
                                        "vertical-closure",
                                        vec![
                                            self.label(f),
                                            self.label(h),
                                            self.describe_nat(&ba),
                                        ],
                                    ));
                                }
                            }
                            None => violations.push(Violation::new(
                                "vertical-closure",
                                vec![self.label(f), self.label(h), "<missing entry>".into()],
                            )),
                        }
                    }
                }
            }
        }

        // Vertical associativity.
        for (&(f, g), nats_a) in &self.homs {
            for (&(gg, h), nats_b) in &self.homs {
                if gg != g {
                    continue;
                }
                for (&(hh, k), nats_c) in &self.homs {
                    if hh != h {
                        continue;
                    }
                    for a in nats_a {
                        for b in nats_b {
                            for c in nats_c {
                                cases += 1;
                                let left =
                                    self.vertical(b, a).and_then(|ba| self.vertical(c, &ba));
                                let right =
                                    self.vertical(c, b).and_then(|cb| self.vertical(&cb, a));
                                if left != right || left.is_none() {
                                    violations.push(Violation::new(
                                        "vertical-associativity",
                                        vec![
                                            self.label(f),
                                            self.label(g),
                                            self.label(h),
                                            self.label(k),
                                        ],
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }

        // Endofunctor composition closure.
        for g in 0..nf {
            for f in 0..nf {
                cases += 1;
                let gf = self.endofunctors[g].compose(&self.endofunctors[f]);
                if self.functor_index(&gf).is_none() {
                    violations.push(Violation::new(
                        "composition-closure",
                        vec![self.label(g), self.label(f)],
                    ));
                }
            }
        }

        // Horizontal closure and the interchange law. Skipped (counted as
        // zero cases) when the base is missing identities; enumeration
        // already guarantees they exist.
        for (&(f, f2), nats_a) in &self.homs {
            for (&(g, g2), nats_b) in &self.homs {
                for alpha in nats_a {
                    for beta in nats_b {
                        cases += 1;
                        let Some(ba) = self.horizontal((g, g2), beta, (f, f2), alpha) else {
                            violations.push(Violation::new(
                                "horizontal-closure",
                                vec![self.label(g), self.label(f), "<missing entry>".into()],
                            ));
                            continue;
                        };
                        let src = self.endofunctors[g].compose(&self.endofunctors[f]);
                        let dst = self.endofunctors[g2].compose(&self.endofunctors[f2]);
                        let (Some(si), Some(di)) =
                            (self.functor_index(&src), self.functor_index(&dst))
                        else {
                            continue; // already reported by composition-closure
                        };
                        if self.nat_index(si, di, &ba).is_none() {
                            violations.push(Violation::new(
                                "horizontal-closure",
                                vec![self.label(si), self.label(di), self.describe_nat(&ba)],
                            ));
                        }
                    }
                }
            }
        }
        for (&(f, g), nats_a) in &self.homs {
            for (&(gg, h), nats_a2) in &self.homs {
                if gg != g {
                    continue;
                }
                for (&(f2, g2), nats_b) in &self.homs {
                    for (&(gg2, h2), nats_b2) in &self.homs {
                        if gg2 != g2 {
                            continue;
                        }
                        for alpha in nats_a {
                            for alpha2 in nats_a2 {
                                for beta in nats_b {
                                    for beta2 in nats_b2 {
                                        cases += 1;
                                        // (beta2 . beta) * (alpha2 . alpha)
                                        let lhs = match (
                                            self.vertical(beta2, beta),
                                            self.vertical(alpha2, alpha),
                                        ) {
                                            (Some(bb), Some(aa)) => self
                                                .horizontal((f2, h2), &bb, (f, h), &aa),
                                            _ => None,
                                        };
                                        // (beta2 * alpha2) . (beta * alpha)
                                        let rhs = match (
                                            self.horizontal((g2, h2), beta2, (g, h), alpha2),
                                            self.horizontal((f2, g2), beta, (f, g), alpha),
                                        ) {
                                            (Some(x), Some(y)) => self.vertical(&x, &y),
                                            _ => None,
                                        };
                                        if lhs != rhs || lhs.is_none() {
                                            violations.push(Violation::new(
                                                "interchange",
                                                vec![
                                                    self.label(f),
                                                    self.label(g),
                                                    self.label(h),
                                                    self.describe_nat(alpha),
                                                    self.describe_nat(beta),
                                                ],
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }

        let mut report = LawReport::new("endocat-laws", violations, cases);
        report = report.with_metric("endofunctors", nf as f64);
        let nat_total: usize = self.homs.values().map(Vec::len).sum();
        report.with_metric("transformations", nat_total as f64)
    }
}

/// Enumerates every endofunctor of `cat` and every transformation between
/// each pair, in a deterministic order (object images vary lexicographically,
/// then morphism images, then components). The base category must pass its
/// laws; results on a lawless base are meaningless. Refuses bases whose
/// coarse candidate count exceeds [`HYP_BUDGET`].
pub fn enumerate_hyp(cat: &FinCategory) -> Result<EndoCat, FincatError> {
    let no = cat.n_objects();
    let nm = cat.n_morphisms();
    let estimated = (no.max(1) as f64).powi(no as i32) * (nm.max(1) as f64).powi(nm as i32);
    if estimated > HYP_BUDGET {
        return Err(FincatError::BudgetExceeded { estimated, budget: HYP_BUDGET });
    }
    if cat.identities.iter().any(Option::is_none) {
        return Err(FincatError::MalformedDocument(
            "enumeration needs every object to declare an identity".into(),
        ));
    }

    let mut endofunctors = Vec::new();
    let mut obj_map = vec![0usize; no];
    loop {
        enumerate_mor_maps(cat, &obj_map, &mut endofunctors);
        // Odometer over object images, last position fastest.
        let mut pos = no;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            obj_map[pos] += 1;
            if obj_map[pos] < no {
                break;
            }
            obj_map[pos] = 0;
        }
        if obj_map.iter().all(|&x| x == 0) {
            break;
        }
        if no == 0 {
            break;
        }
    }

    let mut homs = BTreeMap::new();
    for (fi, f) in endofunctors.iter().enumerate() {
        for (gi, g) in endofunctors.iter().enumerate() {
            let nats = enumerate_nats(cat, f, g);
            if !nats.is_empty() {
                homs.insert((fi, gi), nats);
            }
        }
    }

    Ok(EndoCat { base: cat.clone(), endofunctors, homs })
}

/// Backtracks over morphism images consistent with `obj_map`: each morphism
/// must land in the right hom set, identities are forced, and the full
/// assignment must preserve every composition entry.
fn enumerate_mor_maps(cat: &FinCategory, obj_map: &[usize], out: &mut Vec<FinFunctor>) {
    let nm = cat.n_morphisms();
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(nm);
    for m in 0..nm {
        let want_src = obj_map[cat.morphisms[m].src];
        let want_tgt = obj_map[cat.morphisms[m].tgt];
        let identity_of = (0..cat.n_objects()).find(|&x| cat.identities[x] == Some(m));
        let cands: Vec<usize> = match identity_of {
            Some(x) => match cat.identities[obj_map[x]] {
                Some(im) => vec![im],
                None => vec![],
            },
            None => cat.hom(want_src, want_tgt),
        };
        if cands.is_empty() {
            return;
        }
        candidates.push(cands);
    }

    let mut assignment = vec![0usize; nm];
    fn rec(
        cat: &FinCategory,
        obj_map: &[usize],
        candidates: &[Vec<usize>],
        assignment: &mut Vec<usize>,
        depth: usize,
        out: &mut Vec<FinFunctor>,
    ) {
        if depth == candidates.len() {
            // Full assignment: verify composition preservation.
            for (&(g, f), &gf) in &cat.composition {
                if cat.compose(assignment[g], assignment[f]) != Some(assignment[gf]) {
                    return;
                }
            }
            out.push(FinFunctor { obj_map: obj_map.to_vec(), mor_map: assignment.clone() });
            return;
        }
        for &c in &candidates[depth] {
            assignment[depth] = c;
            // Prune early: any completed composition entry among assigned
            // morphisms must already be consistent.
            let ok = cat.composition.iter().all(|(&(g, f), &gf)| {
                if g > depth || f > depth || gf > depth {
                    return true;
                }
                cat.compose(assignment[g], assignment[f]) == Some(assignment[gf])
            });
            if ok {
                rec(cat, obj_map, candidates, assignment, depth + 1, out);
            }
        }
    }
    rec(cat, obj_map, &candidates, &mut assignment, 0, out);
}

/// All component vectors natural from f to g, lexicographic in the hom-set
/// candidate indices.
fn enumerate_nats(cat: &FinCategory, f: &FinFunctor, g: &FinFunctor) -> Vec<Vec<usize>> {
    let no = cat.n_objects();
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(no);
    for x in 0..no {
        let h = cat.hom(f.obj_map[x], g.obj_map[x]);
        if h.is_empty() {
            return vec![];
        }
        candidates.push(h);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; no];
    loop {
        let components: Vec<usize> = idx.iter().enumerate().map(|(x, &i)| candidates[x][i]).collect();
        let natural = (0..cat.n_morphisms()).all(|m| {
            let (x, y) = (cat.morphisms[m].src, cat.morphisms[m].tgt);
            let lhs = cat.compose(g.mor_map[m], components[x]);
            let rhs = cat.compose(components[y], f.mor_map[m]);
            lhs.is_some() && lhs == rhs
        });
        if natural {
            out.push(components);
        }
        let mut pos = no;
        let mut done = true;
        while pos > 0 {
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < candidates[pos].len() {
                done = false;
                break;
            }
            idx[pos] = 0;
        }
        if done {
            break;
        }
    }
    out
}

/// Tests whether a transformation gamma from `functor` to itself absorbs
/// every transformation into `functor`: gamma . beta = beta for all beta
/// from any enumerated endofunctor. Each failing beta is a violation. The
/// outcome is cross-checked against "gamma is the identity transformation";
/// a disagreement would mean the enumeration itself is broken and is
/// reported under its own law name.
pub fn check_stability(
    hyp: &EndoCat,
    functor: &FinFunctor,
    gamma: &[usize],
) -> Result<LawReport, FincatError> {
    let fi = hyp
        .functor_index(functor)
        .ok_or_else(|| FincatError::NotInHyp("endofunctor not in the enumeration".into()))?;
    if hyp.nat_index(fi, fi, gamma).is_none() {
        return Err(FincatError::NotInHyp(format!(
            "no transformation {} from {} to itself",
            hyp.describe_nat(gamma),
            hyp.label(fi)
        )));
    }

    let mut violations = Vec::new();
    let mut cases = 0u64;
    let mut non_identity_examined = 0usize;
    for g in 0..hyp.endofunctors.len() {
        let id_g = hyp.identity_nat(g);
        for beta in hyp.hom(g, fi) {
            cases += 1;
            if !(g == fi && *beta == id_g) {
                non_identity_examined += 1;
            }
            let absorbed = hyp.vertical(gamma, beta);
            if absorbed.as_deref() != Some(beta.as_slice()) {
                violations.push(Violation::new(
                    "stability",
                    vec![hyp.label(g), hyp.describe_nat(beta)],
                ));
            }
        }
    }

    let stable = violations.is_empty();
    let is_identity = gamma == hyp.identity_nat(fi).as_slice();
    if stable != is_identity {
        violations.push(Violation::new(
            "stability-identity-crosscheck",
            vec![hyp.label(fi), hyp.describe_nat(gamma)],
        ));
    }

    let mut report = LawReport::new("stability", violations, cases)
        .with_metric("betas_examined", cases as f64);
    if non_identity_examined == 0 {
        report = report.with_flag("vacuous");
    }
    Ok(report)
}
