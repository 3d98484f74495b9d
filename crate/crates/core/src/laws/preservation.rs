//! Polynomials preserve wide pullbacks; Dirichlet polynomials send wide
//! pushouts to wide pullbacks; `D(X)` is recovered from `π_D`.
//!
//! Legs are taken up to isomorphism of their free ends: cospan legs
//! `X -> C` are non-decreasing, span legs `C -> X` list their image in order
//! of first appearance followed by unused points.

use std::collections::HashSet;

use num_bigint::BigUint;
use serde_json::json;

use super::formulas::Formulas;
use super::{index_multisets, report, Config, Report, Run, Step};
use crate::bundle::{bun_hom_iter, Bundle};
use crate::finset::{maps, wide_pullback, wide_pushout, Budget, FinFunction, FinSet};
use crate::sum::Evaluation;

pub fn check_preservation(config: &Config) -> Report {
    let formulas = Formulas::new(config.mutation);
    report("preservation", |run| {
        pullbacks(run, config, &formulas)?;
        pushouts(run, config, &formulas)?;
        rebuilt_from_points(run, config)?;
        bundle_maps(run, config, &formulas)
    })
}

/// Non-decreasing maps `X -> c` for `X <= max`.
fn cospan_legs(c: usize, max: usize) -> Vec<FinFunction> {
    (0..=max)
        .flat_map(|x| maps(FinSet::new(x), FinSet::new(c)))
        .filter(|f| f.map().windows(2).all(|w| w[0] <= w[1]))
        .collect()
}

/// Maps `c -> X` for `X <= max`, one per isomorphism class of `X`.
fn span_legs(c: usize, max: usize) -> Vec<FinFunction> {
    let mut out = Vec::new();
    for x in 0..=max {
        for f in maps(FinSet::new(c), FinSet::new(x)) {
            let mut seen = 0;
            let growth = f.map().iter().all(|&v| {
                if v == seen {
                    seen += 1;
                }
                v < seen
            });
            if growth {
                out.push(f);
            }
        }
    }
    out
}

/// `Σ_c Π_j |g_j^{-1}(c)|`: the size of the wide pullback of the `g_j`.
fn limit_size(legs: &[FinFunction]) -> BigUint {
    let c = legs[0].cod().size();
    let counts: Vec<Vec<usize>> = legs
        .iter()
        .map(|g| {
            let mut n = vec![0; c];
            for &v in g.map() {
                n[v] += 1;
            }
            n
        })
        .collect();
    (0..c)
        .map(|v| {
            counts
                .iter()
                .map(|n| BigUint::from(n[v]))
                .product::<BigUint>()
        })
        .sum()
}

/// The mediating map into the limit of `legs` is injective, lands in the
/// limit and reaches all of it.
fn mediating_is_bijective(tuples: &[Vec<usize>], legs: &[FinFunction]) -> bool {
    let lands = tuples.iter().all(|t| {
        t.iter()
            .zip(legs)
            .all(|(&e, g)| g.apply(e) == legs[0].apply(t[0]))
    });
    let distinct: HashSet<&Vec<usize>> = tuples.iter().collect();
    lands && distinct.len() == tuples.len() && BigUint::from(tuples.len()) == limit_size(legs)
}

fn pullbacks(run: &mut Run, config: &Config, formulas: &Formulas) -> Step {
    let polys = config.grid.polys();
    for c in 0..=config.grid.set {
        let legs = cospan_legs(c, config.grid.set);
        for choice in index_multisets(legs.len(), config.grid.legs) {
            let cospan: Vec<FinFunction> = choice.iter().map(|&k| legs[k].clone()).collect();
            let limit = wide_pullback(&cospan).expect("legs share a codomain");
            for p in &polys {
                let inputs = || json!({ "P": p, "legs": cospan });
                let images: Vec<FinFunction> = cospan
                    .iter()
                    .map(|f| p.eval_map(f, Budget::UNLIMITED).expect("small"))
                    .collect();
                run.eq(
                    "|P(lim)| = |lim P|",
                    formulas.poly_eval(p, limit.set.size()),
                    limit_size(&images),
                    inputs,
                )?;
                let at_limit = p.eval_obj(limit.set, Budget::UNLIMITED).expect("small");
                let tables: Vec<Evaluation> = cospan
                    .iter()
                    .map(|f| p.eval_obj(f.dom(), Budget::UNLIMITED).expect("small"))
                    .collect();
                let tuples: Vec<Vec<usize>> = at_limit
                    .elements()
                    .map(|(i, h)| {
                        limit
                            .projections
                            .iter()
                            .zip(&tables)
                            .map(|(proj, t)| {
                                let moved: Vec<usize> =
                                    h.map().iter().map(|&x| proj.apply(x)).collect();
                                t.index_of(i, &moved)
                            })
                            .collect()
                    })
                    .collect();
                run.holds(
                    "P(lim) -> lim P is a bijection",
                    mediating_is_bijective(&tuples, &images),
                    inputs,
                )?;
            }
        }
    }
    Ok(())
}

fn pushouts(run: &mut Run, config: &Config, formulas: &Formulas) -> Step {
    let dirs = config.grid.dirs();
    for c in 0..=config.grid.set {
        let legs = span_legs(c, config.grid.set);
        for choice in index_multisets(legs.len(), config.grid.legs) {
            let span: Vec<FinFunction> = choice.iter().map(|&k| legs[k].clone()).collect();
            let colimit = wide_pushout(&span).expect("legs share a domain");
            for d in &dirs {
                let inputs = || json!({ "D": d, "legs": span });
                let images: Vec<FinFunction> = span
                    .iter()
                    .map(|g| d.eval_map(g, Budget::UNLIMITED).expect("small"))
                    .collect();
                run.eq(
                    "|D(colim)| = |lim D|",
                    formulas.dir_eval(d, colimit.set.size()),
                    limit_size(&images),
                    inputs,
                )?;
                let at_colimit = d.eval_obj(colimit.set, Budget::UNLIMITED).expect("small");
                let tables: Vec<Evaluation> = span
                    .iter()
                    .map(|g| d.eval_obj(g.cod(), Budget::UNLIMITED).expect("small"))
                    .collect();
                let tuples: Vec<Vec<usize>> = at_colimit
                    .elements()
                    .map(|(i, h)| {
                        colimit
                            .injections
                            .iter()
                            .zip(&tables)
                            .map(|(inj, t)| {
                                let pulled: Vec<usize> =
                                    inj.map().iter().map(|&x| h.apply(x)).collect();
                                t.index_of(i, &pulled)
                            })
                            .collect()
                    })
                    .collect();
                run.holds(
                    "D(colim) -> lim D is a bijection",
                    mediating_is_bijective(&tuples, &images),
                    inputs,
                )?;
            }
        }
    }
    Ok(())
}

/// `X` is the wide pushout of its points `0 -> 1`, so `D(X)` is the wide
/// pullback of `X` copies of `π_D`.
fn rebuilt_from_points(run: &mut Run, config: &Config) -> Step {
    for x in 1..=config.grid.set {
        let points = vec![FinFunction::empty(1); x];
        let rebuilt = wide_pushout(&points).expect("nonempty");
        run.eq(
            "X is the wide pushout of its points",
            rebuilt.set.size(),
            x,
            || json!({ "X": x }),
        )?;
        for d in &config.grid.dirs() {
            let pi = d.pi();
            let copies = vec![pi.proj().clone(); x];
            let at_x = d
                .eval_obj(FinSet::new(x), Budget::UNLIMITED)
                .expect("small");
            let at_one = d.eval_obj(FinSet::POINT, Budget::UNLIMITED).expect("small");
            let tuples: Vec<Vec<usize>> = at_x
                .elements()
                .map(|(i, h)| {
                    rebuilt
                        .injections
                        .iter()
                        .map(|inj| at_one.index_of(i, &[h.apply(inj.apply(0))]))
                        .collect()
                })
                .collect();
            run.holds(
                "D(X) -> wide pullback of π_D is a bijection",
                mediating_is_bijective(&tuples, &copies),
                || json!({ "D": d, "X": x }),
            )?;
        }
    }
    Ok(())
}

/// `D(X) ≅ Bun(X!, π_D)` for `X <= set + 1`.
fn bundle_maps(run: &mut Run, config: &Config, formulas: &Formulas) -> Step {
    for d in &config.grid.dirs() {
        let pi = d.pi();
        let local = pi.local_index();
        for x in 0..=config.grid.set + 1 {
            let inputs = || json!({ "D": d, "X": x });
            let table = d
                .eval_obj(FinSet::new(x), Budget::UNLIMITED)
                .expect("small");
            let homs: Vec<_> = bun_hom_iter(&Bundle::bang(x), &pi).collect();
            run.eq(
                "|Bun(X!, π_D)| = |D(X)|",
                BigUint::from(homs.len()),
                formulas.dir_eval(d, x),
                inputs,
            )?;
            let elements: HashSet<usize> = homs
                .iter()
                .map(|m| {
                    let h: Vec<usize> = m.total_map().map().iter().map(|&y| local[y]).collect();
                    table.index_of(m.base_map().apply(0), &h)
                })
                .collect();
            run.eq(
                "Bun(X!, π_D) -> D(X) is a bijection",
                elements.len(),
                table.len(),
                inputs,
            )?;
        }
    }
    Ok(())
}
