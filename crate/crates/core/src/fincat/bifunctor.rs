//! Functors of two variables, given by explicit tables and checked by
//! enumeration over pairs.

use super::category::FinCategory;
use crate::report::{LawReport, Violation};

/// A two-variable assignment from categories A and B into C:
/// `obj[a][b]` is the image object, `mor[f][g]` the image morphism of the
/// morphism pair (f in A, g in B).
#[derive(Debug, Clone)]
pub struct BifunctorTable {
    pub obj: Vec<Vec<usize>>,
    pub mor: Vec<Vec<usize>>,
}

/// Checks that the table is a functor of two variables: image endpoints
/// match, identity pairs map to identities, and composition is preserved
/// pairwise, which also forces the two single-variable restrictions to
/// commute.
pub fn check_bifunctor(
    a: &FinCategory,
    b: &FinCategory,
    c: &FinCategory,
    table: &BifunctorTable,
) -> LawReport {
    let mut violations = Vec::new();
    let mut cases = 0u64;

    let shape_ok = table.obj.len() == a.n_objects()
        && table.obj.iter().all(|row| row.len() == b.n_objects())
        && table.mor.len() == a.n_morphisms()
        && table.mor.iter().all(|row| row.len() == b.n_morphisms());
    if !shape_ok {
        let violations = vec![Violation::new("bifunctor-shape", Vec::<String>::new())];
        return LawReport::new("bifunctor-laws", violations, 1);
    }

    for f in 0..a.n_morphisms() {
        for g in 0..b.n_morphisms() {
            cases += 1;
            let image = &c.morphisms[table.mor[f][g]];
            let want_src = table.obj[a.morphisms[f].src][b.morphisms[g].src];
            let want_tgt = table.obj[a.morphisms[f].tgt][b.morphisms[g].tgt];
            if image.src != want_src || image.tgt != want_tgt {
                violations.push(Violation::new(
                    "bifunctor-endpoints",
                    vec![a.mor_name(f), b.mor_name(g)],
                ));
            }
        }
    }

    for x in 0..a.n_objects() {
        for y in 0..b.n_objects() {
            cases += 1;
            match (a.identities[x], b.identities[y], c.identities[table.obj[x][y]]) {
                (Some(ix), Some(iy), Some(iz)) => {
                    if table.mor[ix][iy] != iz {
                        violations.push(Violation::new(
                            "bifunctor-identity",
                            vec![a.obj_name(x), b.obj_name(y)],
                        ));
                    }
                }
                _ => violations.push(Violation::new(
                    "bifunctor-identity",
                    vec![a.obj_name(x), b.obj_name(y)],
                )),
            }
        }
    }

    for (&(f2, f1), &ff) in &a.composition {
        for (&(g2, g1), &gg) in &b.composition {
            cases += 1;
            let lhs = c.compose(table.mor[f2][g2], table.mor[f1][g1]);
            if lhs != Some(table.mor[ff][gg]) {
                violations.push(Violation::new(
                    "bifunctor-composition",
                    vec![a.mor_name(f2), a.mor_name(f1), b.mor_name(g2), b.mor_name(g1)],
                ));
            }
        }
    }

    LawReport::new("bifunctor-laws", violations, cases)
}
