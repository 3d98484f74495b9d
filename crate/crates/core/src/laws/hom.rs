//! Hom-set sizes against the product formula.

use std::collections::HashSet;

use num_bigint::BigUint;
use serde_json::json;

use super::formulas::{dir_hom_count_by_terms, poly_hom_count_by_positions, Formulas};
use super::{report, Config, Report, Run, Step};
use crate::dir::{self, Dir};
use crate::finset::{Budget, FinSet};
use crate::poly::{self, Poly};

/// Homs up to this size are also checked for duplicates and validity.
const DISTINCT_LIMIT: usize = 4096;

pub fn check_hom_formulas(config: &Config) -> Report {
    let formulas = Formulas::new(config.mutation);
    report("hom", |run| {
        worked_examples(run, &formulas)?;
        poly_grid(run, config, &formulas)?;
        dir_grid(run, config, &formulas)?;
        yoneda(run, config)
    })
}

fn worked_examples(run: &mut Run, formulas: &Formulas) -> Step {
    let (two_y2, y_plus_1) = (Poly::new([2, 2]), Poly::new([1, 0]));
    let (two_2y, one_plus_0y) = (Dir::new([2, 2]), Dir::new([1, 0]));
    for (p, q, expected) in [(&two_y2, &y_plus_1, 9u32), (&y_plus_1, &two_y2, 0)] {
        let inputs = || json!({ "P": p, "Q": q });
        run.eq(
            "Poly count",
            formulas.poly_hom_count(p, q),
            BigUint::from(expected),
            inputs,
        )?;
        let listed = poly::hom_iter(p, q, Budget::default()).map_or(0, Iterator::count);
        run.eq("Poly enumeration", listed, expected as usize, inputs)?;
    }
    for (d, e, expected) in [(&two_2y, &one_plus_0y, 1u32), (&one_plus_0y, &two_2y, 8)] {
        let inputs = || json!({ "D": d, "E": e });
        run.eq(
            "Dir count",
            formulas.dir_hom_count(d, e),
            BigUint::from(expected),
            inputs,
        )?;
        let listed = dir::hom_iter(d, e, Budget::default()).map_or(0, Iterator::count);
        run.eq("Dir enumeration", listed, expected as usize, inputs)?;
    }
    Ok(())
}

fn poly_grid(run: &mut Run, config: &Config, formulas: &Formulas) -> Step {
    let polys = config.grid.polys();
    for p in &polys {
        for q in &polys {
            let inputs = || json!({ "P": p, "Q": q });
            let formula = formulas.poly_hom_count(p, q);
            run.eq(
                "|Poly(P,Q)| by positions",
                poly_hom_count_by_positions(p, q),
                formula.clone(),
                inputs,
            )?;
            let homs = poly::hom_iter(p, q, Budget::UNLIMITED).expect("small tables");
            if formula <= BigUint::from(DISTINCT_LIMIT) {
                let listed: Vec<_> = homs.collect();
                let valid = listed.iter().all(|m| {
                    poly::PolyMorphism::new(
                        m.source().clone(),
                        m.target().clone(),
                        m.on_positions().clone(),
                        m.on_directions().to_vec(),
                    )
                    .is_ok()
                });
                run.holds("enumerated Poly morphisms are valid", valid, inputs)?;
                let distinct: HashSet<_> = listed.iter().collect();
                run.eq(
                    "|Poly(P,Q)| enumerated",
                    BigUint::from(distinct.len()),
                    formula,
                    inputs,
                )?;
            } else {
                run.eq(
                    "|Poly(P,Q)| enumerated",
                    BigUint::from(homs.count()),
                    formula,
                    inputs,
                )?;
            }
        }
    }
    Ok(())
}

fn dir_grid(run: &mut Run, config: &Config, formulas: &Formulas) -> Step {
    let dirs = config.grid.dirs();
    for d in &dirs {
        for e in &dirs {
            let inputs = || json!({ "D": d, "E": e });
            let formula = formulas.dir_hom_count(d, e);
            run.eq(
                "|Dir(D,E)| by terms",
                dir_hom_count_by_terms(d, e),
                formula.clone(),
                inputs,
            )?;
            let homs = dir::hom_iter(d, e, Budget::UNLIMITED).expect("small tables");
            if formula <= BigUint::from(DISTINCT_LIMIT) {
                let listed: Vec<_> = homs.collect();
                let valid = listed.iter().all(|m| {
                    dir::DirMorphism::new(
                        m.source().clone(),
                        m.target().clone(),
                        m.on_terms().clone(),
                        m.on_bases().to_vec(),
                    )
                    .is_ok()
                });
                run.holds("enumerated Dir morphisms are valid", valid, inputs)?;
                let distinct: HashSet<_> = listed.iter().collect();
                run.eq(
                    "|Dir(D,E)| enumerated",
                    BigUint::from(distinct.len()),
                    formula,
                    inputs,
                )?;
            } else {
                run.eq(
                    "|Dir(D,E)| enumerated",
                    BigUint::from(homs.count()),
                    formula,
                    inputs,
                )?;
            }
        }
    }
    Ok(())
}

/// `|Poly(y^k, Q)| = |Q(k)|` and `|Dir(k^y, E)| = |E(k)|`, by enumeration
/// on both sides.
fn yoneda(run: &mut Run, config: &Config) -> Step {
    for k in 0..=config.grid.set {
        for q in &config.grid.polys() {
            let homs = poly::hom_iter(&Poly::monomial(k), q, Budget::UNLIMITED)
                .expect("small")
                .count();
            let values = q
                .eval_obj(FinSet::new(k), Budget::UNLIMITED)
                .expect("small")
                .len();
            run.eq(
                "|Poly(y^k, Q)| = |Q(k)|",
                homs,
                values,
                || json!({ "k": k, "Q": q }),
            )?;
        }
        for e in &config.grid.dirs() {
            let homs = dir::hom_iter(&Dir::representable(k), e, Budget::UNLIMITED)
                .expect("small")
                .count();
            let values = e
                .eval_obj(FinSet::new(k), Budget::UNLIMITED)
                .expect("small")
                .len();
            run.eq(
                "|Dir(k^y, E)| = |E(k)|",
                homs,
                values,
                || json!({ "k": k, "E": e }),
            )?;
        }
    }
    Ok(())
}
