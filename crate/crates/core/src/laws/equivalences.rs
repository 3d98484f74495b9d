//! `Bun ≃ Dir` and `Cont ≃ Poly` on small bundles, cartesian morphisms in
//! all four categories, and the two pullback characterizations of
//! cartesian Dirichlet morphisms.

use std::collections::HashSet;

use num_bigint::BigUint;
use serde_json::json;

use super::formulas::Formulas;
use super::{multisets, report, Config, Report, Run, Step};
use crate::bundle::{
    bun_hom_iter, cart_equivalence, compose_bun, compose_cont, cont_hom_iter, dir_of_bundle,
    functor_d, functor_d_inverse_between, functor_p, functor_p_inverse_between, poly_of_bundle,
    AnyMorphism, BunMorphism, Bundle, ContMorphism,
};
use crate::dir::{self, Dir, DirMorphism};
use crate::finset::{is_pullback_square, maps, Budget, FinFunction, FinSet};
use crate::poly::{self, PolyMorphism};

/// Bundles with total and base at most this size.
const LEVEL: usize = 2;

pub fn check_equivalences(config: &Config) -> Report {
    let formulas = Formulas::new(config.mutation);
    report("equivalences", |run| {
        let bundles = Bundle::all_up_to(LEVEL, LEVEL);
        essentially_surjective(run, &bundles)?;
        for pi in &bundles {
            for rho in &bundles {
                bun_dir(run, &formulas, pi, rho)?;
                cont_poly(run, &formulas, pi, rho)?;
            }
        }
        functoriality(run, &bundles)?;
        pullback_characterization(run, config, &formulas)
    })
}

/// Every small `Dir` and `Poly` comes from a bundle in the grid.
fn essentially_surjective(run: &mut Run, bundles: &[Bundle]) -> Step {
    let dirs: HashSet<Dir> = bundles.iter().map(dir_of_bundle).collect();
    for bases in multisets(LEVEL, LEVEL) {
        if bases.iter().sum::<usize>() <= LEVEL {
            let d = Dir::new(bases);
            run.holds(
                "D_- is essentially surjective",
                dirs.contains(&d),
                || json!({ "D": d }),
            )?;
        }
    }
    let polys: HashSet<_> = bundles.iter().map(poly_of_bundle).collect();
    run.eq(
        "P_- hits as many objects as D_-",
        polys.len(),
        dirs.len(),
        || json!({}),
    )
}

fn bun_dir(run: &mut Run, formulas: &Formulas, pi: &Bundle, rho: &Bundle) -> Step {
    let inputs = || json!({ "source": pi, "target": rho });
    let (d, e) = (dir_of_bundle(pi), dir_of_bundle(rho));
    let homs: Vec<BunMorphism> = bun_hom_iter(pi, rho).collect();
    run.eq(
        "|Bun(π,π')| = |Dir(D_π,D_π')|",
        BigUint::from(homs.len()),
        formulas.dir_hom_count(&d, &e),
        inputs,
    )?;

    let images: Vec<DirMorphism> = homs.iter().map(functor_d).collect();
    let distinct: HashSet<&DirMorphism> = images.iter().collect();
    run.eq("D_- is faithful", distinct.len(), homs.len(), inputs)?;
    let targets = dir::hom_enumerate(&d, &e, Budget::default()).expect("small");
    for n in &targets {
        let lifted = functor_d_inverse_between(n, pi, rho).expect("ends match");
        let valid = BunMorphism::new(
            lifted.source().clone(),
            lifted.target().clone(),
            lifted.base_map().clone(),
            lifted.total_map().clone(),
        )
        .is_ok();
        run.holds(
            "D_- is full",
            valid && &functor_d(&lifted) == n,
            || json!({ "source": pi, "target": rho, "n": n }),
        )?;
    }

    let mut cartesian = 0;
    for (m, n) in homs.iter().zip(&images) {
        let minputs = || json!({ "m": m });
        run.eq(
            "Bun cartesian ⇔ pullback square",
            m.is_cartesian(),
            m.is_pullback_square(),
            minputs,
        )?;
        run.eq(
            "Bun cartesian ⇔ Dir cartesian",
            m.is_cartesian(),
            formulas.is_cartesian(n),
            minputs,
        )?;
        if m.is_cartesian() {
            cartesian += 1;
            let across = cart_equivalence(&AnyMorphism::Bun(m.clone())).expect("cartesian");
            let back = cart_equivalence(&across).expect("cartesian");
            run.holds(
                "Bun_cart ≃ Cont_cart round trip",
                back == AnyMorphism::Bun(m.clone()),
                minputs,
            )?;
        }
    }
    let in_dir = targets.iter().filter(|n| formulas.is_cartesian(n)).count();
    run.eq(
        "cartesian counts agree in Bun and Dir",
        cartesian,
        in_dir,
        inputs,
    )
}

fn cont_poly(run: &mut Run, formulas: &Formulas, pi: &Bundle, rho: &Bundle) -> Step {
    let inputs = || json!({ "source": pi, "target": rho });
    let (p, q) = (poly_of_bundle(pi), poly_of_bundle(rho));
    let homs: Vec<ContMorphism> = cont_hom_iter(pi, rho).collect();
    run.eq(
        "|Cont(π,π')| = |Poly(P_π,P_π')|",
        BigUint::from(homs.len()),
        formulas.poly_hom_count(&p, &q),
        inputs,
    )?;

    let images: Vec<PolyMorphism> = homs.iter().map(functor_p).collect();
    let distinct: HashSet<&PolyMorphism> = images.iter().collect();
    run.eq("P_- is faithful", distinct.len(), homs.len(), inputs)?;
    let targets = poly::hom_enumerate(&p, &q, Budget::default()).expect("small");
    for n in &targets {
        let lifted = functor_p_inverse_between(n, pi, rho).expect("ends match");
        let valid = ContMorphism::new(
            lifted.source().clone(),
            lifted.target().clone(),
            lifted.base_map().clone(),
            lifted.pull_maps().to_vec(),
        )
        .is_ok();
        run.holds(
            "P_- is full",
            valid && &functor_p(&lifted) == n,
            || json!({ "source": pi, "target": rho, "n": n }),
        )?;
    }

    let mut cartesian = 0;
    for (m, n) in homs.iter().zip(&images) {
        run.eq(
            "Cont cartesian ⇔ Poly cartesian",
            m.is_cartesian(),
            n.is_cartesian(),
            || json!({ "m": m }),
        )?;
        if m.is_cartesian() {
            cartesian += 1;
            let across = cart_equivalence(&AnyMorphism::Poly(n.clone())).expect("cartesian");
            let dual = match &across {
                AnyMorphism::Dir(d) => formulas.is_cartesian(d),
                _ => false,
            };
            run.holds(
                "Poly_cart → Dir_cart lands in cartesian maps",
                dual,
                || json!({ "m": m }),
            )?;
            let back = cart_equivalence(&across).expect("cartesian");
            run.holds(
                "Poly_cart ≃ Dir_cart round trip",
                back == AnyMorphism::Poly(n.clone()),
                || json!({ "m": m }),
            )?;
        }
    }
    let in_poly = targets.iter().filter(|n| n.is_cartesian()).count();
    run.eq(
        "cartesian counts agree in Cont and Poly",
        cartesian,
        in_poly,
        inputs,
    )
}

fn functoriality(run: &mut Run, bundles: &[Bundle]) -> Step {
    for pi in bundles {
        run.eq(
            "D_- preserves identities",
            functor_d(&BunMorphism::identity(pi)),
            DirMorphism::identity(&dir_of_bundle(pi)),
            || json!({ "π": pi }),
        )?;
        run.eq(
            "P_- preserves identities",
            functor_p(&ContMorphism::identity(pi)),
            PolyMorphism::identity(&poly_of_bundle(pi)),
            || json!({ "π": pi }),
        )?;
    }
    for a in bundles {
        for b in bundles {
            let first: Vec<BunMorphism> = bun_hom_iter(a, b).collect();
            let first_c: Vec<ContMorphism> = cont_hom_iter(a, b).collect();
            for c in bundles {
                for n in bun_hom_iter(b, c) {
                    for m in &first {
                        let lhs = functor_d(&compose_bun(&n, m).expect("composable"));
                        let rhs = dir::compose_morphisms(&functor_d(&n), &functor_d(m))
                            .expect("composable");
                        run.eq(
                            "D_-(n∘m) = D_-(n)∘D_-(m)",
                            lhs,
                            rhs,
                            || json!({ "m": m, "n": n }),
                        )?;
                    }
                }
                for n in cont_hom_iter(b, c) {
                    for m in &first_c {
                        let lhs = functor_p(&compose_cont(&n, m).expect("composable"));
                        let rhs = poly::compose_morphisms(&functor_p(&n), &functor_p(m))
                            .expect("composable");
                        run.eq(
                            "P_-(n∘m) = P_-(n)∘P_-(m)",
                            lhs,
                            rhs,
                            || json!({ "m": m, "n": n }),
                        )?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Dirs with bases `<= 2` and the full term count, plus Dirs with the full
/// base range and at most two terms.
fn square_grid(config: &Config) -> Vec<Dir> {
    let g = config.grid;
    let mut seen = HashSet::new();
    multisets(g.exp.min(2), g.terms)
        .into_iter()
        .chain(multisets(g.exp, g.terms.min(2)))
        .map(Dir::new)
        .filter(|d| seen.insert(d.clone()))
        .collect()
}

/// Cartesian ⇔ the `D(1)/D(0)` square is a pullback ⇔ every naturality
/// square over `g : X -> X'` is a pullback.
fn pullback_characterization(run: &mut Run, config: &Config, formulas: &Formulas) -> Step {
    let top = config.grid.set;
    let arrows: Vec<FinFunction> = (0..=top)
        .flat_map(|x| (0..=top).flat_map(move |y| maps(FinSet::new(x), FinSet::new(y))))
        .collect();
    let dirs = square_grid(config);
    let restrictions: Vec<Vec<FinFunction>> = dirs
        .iter()
        .map(|d| {
            arrows
                .iter()
                .map(|g| d.eval_map(g, Budget::UNLIMITED).expect("small"))
                .collect()
        })
        .collect();
    for (di, d) in dirs.iter().enumerate() {
        for (ei, e) in dirs.iter().enumerate() {
            for m in dir::hom_iter(d, e, Budget::UNLIMITED).expect("small") {
                let components: Vec<FinFunction> = (0..=top)
                    .map(|x| {
                        m.component(FinSet::new(x), Budget::UNLIMITED)
                            .expect("small")
                    })
                    .collect();
                let natural = arrows.iter().enumerate().all(|(k, g)| {
                    is_pullback_square(
                        &components[g.cod().size()],
                        &restrictions[di][k],
                        &restrictions[ei][k],
                        &components[g.dom().size()],
                    )
                    .expect("square lines up")
                });
                let inputs = || json!({ "m": m });
                let cartesian = formulas.is_cartesian(&m);
                run.eq(
                    "cartesian ⇔ D(1)/D(0) square is a pullback",
                    cartesian,
                    m.has_pullback_square(),
                    inputs,
                )?;
                run.eq(
                    "cartesian ⇔ naturality squares are pullbacks",
                    cartesian,
                    natural,
                    inputs,
                )?;
            }
        }
    }
    Ok(())
}
