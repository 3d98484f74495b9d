//! Hom-set bijections: the tensor-hom and cartesian closures of `Poly`, the
//! adjoint strings between `Fin` and `Poly`/`Dir`, the two-variable
//! adjunction in `Dir`, and global sections.
//!
//! Where a canonical map exists it is built and checked to be a bijection;
//! the cartesian closure and the two-variable adjunction are checked by
//! cardinality only.

use std::collections::HashSet;
use std::hash::Hash;

use num_bigint::BigUint;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::formulas::Formulas;
use super::{multisets, report, Config, Report, Run, Step};
use crate::dir::{self, Dir, DirMorphism};
use crate::finset::{big_pow, Budget, FinSet};
use crate::poly::{
    self, compose_morphisms, curry_tensor, tensor_morphisms, uncurry_tensor, Poly, PolyMorphism,
};

/// Explicit transposes are built for hom-sets up to this size.
const EXPLICIT_LIMIT: usize = 2000;
/// Naturality samples per instance.
const SAMPLES: usize = 3;

pub fn check_adjunctions(config: &Config) -> Report {
    let formulas = Formulas::new(config.mutation);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    report("adjunctions", |run| {
        homs_from_internal_hom(run, config, &formulas)?;
        tensor_hom(run, config, &formulas, &mut rng)?;
        cartesian_closure(run, config, &formulas)?;
        global_sections(run, config, &formulas)?;
        poly_string(run, config, &formulas)?;
        dir_string(run, config, &formulas)?;
        inclusions(run, config)?;
        two_variable(run, config, &formulas)
    })
}

/// Polys with exponents and term counts capped at 2.
fn small_polys(config: &Config) -> Vec<Poly> {
    multisets(config.grid.exp.min(2), config.grid.terms.min(2))
        .into_iter()
        .map(Poly::new)
        .collect()
}

fn small_dirs(config: &Config) -> Vec<Dir> {
    multisets(config.grid.exp.min(2), config.grid.terms)
        .into_iter()
        .map(Dir::new)
        .collect()
}

/// `f` is injective on `items` and hits exactly `expected` values.
fn is_bijection_onto<T, K: Eq + Hash>(
    items: &[T],
    f: impl Fn(&T) -> K,
    expected: &BigUint,
) -> bool {
    let image: HashSet<K> = items.iter().map(f).collect();
    image.len() == items.len() && BigUint::from(image.len()) == *expected
}

/// `Poly(P, Q) ≅ Poly(y ⊗ P, Q) ≅ Poly(y, [P, Q]) = [P, Q](1)`.
fn homs_from_internal_hom(run: &mut Run, config: &Config, formulas: &Formulas) -> Step {
    let polys = small_polys(config);
    for p in &polys {
        for q in &polys {
            let ihom = formulas
                .internal_hom(p, q, Budget::default())
                .expect("small");
            run.eq(
                "|Poly(P,Q)| = [P,Q](1)",
                formulas.poly_hom_count(p, q),
                BigUint::from(ihom.positions()),
                || json!({ "P": p, "Q": q }),
            )?;
        }
    }
    Ok(())
}

fn tensor_hom(run: &mut Run, config: &Config, formulas: &Formulas, rng: &mut ChaCha8Rng) -> Step {
    let polys = small_polys(config);
    for p in &polys {
        for a in &polys {
            for q in &polys {
                let inputs = || json!({ "P": p, "A": a, "Q": q });
                let ihom = formulas
                    .internal_hom(a, q, Budget::default())
                    .expect("small");
                let lhs = formulas.poly_hom_count(&formulas.tensor(p, a), q);
                let rhs = formulas.poly_hom_count(p, &ihom);
                run.eq("|Poly(P⊗A,Q)| = |Poly(P,[A,Q])|", lhs, rhs.clone(), inputs)?;

                let size = poly::hom_count(&p.tensor(a), q);
                if size > BigUint::from(EXPLICIT_LIMIT) {
                    continue;
                }
                let homs = poly::hom_enumerate(&p.tensor(a), q, Budget::default()).expect("small");
                let curried: Vec<PolyMorphism> = homs
                    .iter()
                    .map(|m| curry_tensor(m, p, a, Budget::default()).expect("shapes match"))
                    .collect();
                let back = curried
                    .iter()
                    .zip(&homs)
                    .all(|(c, m)| uncurry_tensor(c, a, q, Budget::default()).as_ref() == Ok(m));
                run.holds("uncurry ∘ curry = id", back, inputs)?;
                run.holds(
                    "curry is a bijection",
                    is_bijection_onto(&curried, Clone::clone, &rhs),
                    inputs,
                )?;
                if homs.is_empty() {
                    continue;
                }
                for p2 in &polys {
                    let to_p = poly::hom_enumerate(p2, p, Budget::default()).expect("small");
                    if to_p.is_empty() {
                        continue;
                    }
                    for hi in sample(rng, to_p.len(), SAMPLES.min(to_p.len())) {
                        let h = &to_p[hi];
                        let mi = sample(rng, homs.len(), 1).index(0);
                        let m = &homs[mi];
                        let h_a = tensor_morphisms(h, &PolyMorphism::identity(a));
                        let left = curry_tensor(
                            &compose_morphisms(m, &h_a).expect("composable"),
                            p2,
                            a,
                            Budget::default(),
                        );
                        let right = compose_morphisms(&curried[mi], h);
                        run.holds(
                            "curry is natural in P",
                            left.is_ok() && left == right,
                            || json!({ "P": p, "A": a, "Q": q, "P'": p2, "h": h, "m": m }),
                        )?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn cartesian_closure(run: &mut Run, config: &Config, formulas: &Formulas) -> Step {
    let polys = small_polys(config);
    for p in &polys {
        for a in &polys {
            for q in &polys {
                let power = Poly::power(q, a, Budget::default()).expect("small");
                run.eq(
                    "|Poly(P×A,Q)| = |Poly(P,Q^A)|",
                    formulas.poly_hom_count(&p.multiply(a), q),
                    formulas.poly_hom_count(p, &power),
                    || json!({ "P": p, "A": a, "Q": q }),
                )?;
            }
        }
    }
    Ok(())
}

/// `|Poly(P, y)| = Γ(P)` by enumeration and `|Poly(P, y^n)| = Γ(P)^n`.
fn global_sections(run: &mut Run, config: &Config, formulas: &Formulas) -> Step {
    for p in &config.grid.polys() {
        let gamma = p.global_sections();
        let listed = poly::hom_iter(p, &Poly::y(), Budget::UNLIMITED)
            .expect("small")
            .count();
        run.eq(
            "|Poly(P,y)| = Γ(P)",
            BigUint::from(listed),
            gamma.clone(),
            || json!({ "P": p }),
        )?;
        for n in 0..=config.grid.set {
            run.eq(
                "|Poly(P,y^n)| = Γ(P)^n",
                formulas.poly_hom_count(p, &Poly::monomial(n)),
                gamma.pow(n as u32),
                || json!({ "P": p, "n": n }),
            )?;
        }
    }
    Ok(())
}

/// `ny ⊣ P(1) ⊣ n ⊣ P(0)`, each bijection built from the morphism data.
fn poly_string(run: &mut Run, config: &Config, formulas: &Formulas) -> Step {
    for p in &config.grid.polys() {
        let zero_table = p.eval_obj(FinSet::EMPTY, Budget::UNLIMITED).expect("small");
        for n in 0..=config.grid.set {
            let inputs = || json!({ "P": p, "n": n });
            let (ny, cn) = (Poly::linear(n), Poly::constant(n));

            let expected = big_pow(p.positions(), n);
            run.eq(
                "|Poly(ny,P)| = |Fin(n,P(1))|",
                formulas.poly_hom_count(&ny, p),
                expected.clone(),
                inputs,
            )?;
            let homs = poly::hom_enumerate(&ny, p, Budget::default()).expect("small");
            run.holds(
                "Poly(ny,P) -> Fin(n,P(1)) is bijective",
                is_bijection_onto(&homs, |m| m.on_positions().clone(), &expected),
                inputs,
            )?;

            let expected = big_pow(n, p.positions());
            run.eq(
                "|Poly(P,n)| = |Fin(P(1),n)|",
                formulas.poly_hom_count(p, &cn),
                expected.clone(),
                inputs,
            )?;
            let homs = poly::hom_enumerate(p, &cn, Budget::default()).expect("small");
            run.holds(
                "Poly(P,n) -> Fin(P(1),n) is bijective",
                is_bijection_onto(&homs, |m| m.on_positions().clone(), &expected),
                inputs,
            )?;

            let expected = big_pow(p.constants(), n);
            run.eq(
                "|Poly(n,P)| = |Fin(n,P(0))|",
                formulas.poly_hom_count(&cn, p),
                expected.clone(),
                inputs,
            )?;
            let homs = poly::hom_enumerate(&cn, p, Budget::default()).expect("small");
            let at_zero = |m: &PolyMorphism| -> Vec<usize> {
                (0..n)
                    .map(|i| zero_table.index_of(m.on_positions().apply(i), &[]))
                    .collect()
            };
            run.holds(
                "Poly(n,P) -> Fin(n,P(0)) is bijective",
                is_bijection_onto(&homs, at_zero, &expected),
                inputs,
            )?;
        }
    }
    Ok(())
}

/// The adjoint string between `Fin` and `Dir`.
fn dir_string(run: &mut Run, config: &Config, formulas: &Formulas) -> Step {
    for d in &small_dirs(config) {
        let one_table = d.eval_obj(FinSet::POINT, Budget::UNLIMITED).expect("small");
        for n in 0..=config.grid.set {
            let inputs = || json!({ "D": d, "n": n });

            let source = Dir::zero_content_terms(n);
            let expected = big_pow(d.terms(), n);
            run.eq(
                "|Dir(n·0^y,E)| = |Fin(n,E(0))|",
                formulas.dir_hom_count(&source, d),
                expected.clone(),
                inputs,
            )?;
            let homs = dir::hom_enumerate(&source, d, Budget::default()).expect("small");
            run.holds(
                "Dir(n·0^y,E) -> Fin(n,E(0)) is bijective",
                is_bijection_onto(&homs, |m| m.on_terms().clone(), &expected),
                inputs,
            )?;

            let target = Dir::constant(n);
            let expected = big_pow(n, d.terms());
            run.eq(
                "|Dir(D,n·1^y)| = |Fin(D(0),n)|",
                formulas.dir_hom_count(d, &target),
                expected.clone(),
                inputs,
            )?;
            let homs = dir::hom_enumerate(d, &target, Budget::default()).expect("small");
            run.holds(
                "Dir(D,n·1^y) -> Fin(D(0),n) is bijective",
                is_bijection_onto(&homs, |m| m.on_terms().clone(), &expected),
                inputs,
            )?;

            let expected = big_pow(d.total(), n);
            run.eq(
                "|Dir(n·1^y,E)| = |Fin(n,E(1))|",
                formulas.dir_hom_count(&target, d),
                expected.clone(),
                inputs,
            )?;
            let homs = dir::hom_enumerate(&target, d, Budget::default()).expect("small");
            let at_one = |m: &DirMorphism| -> Vec<usize> {
                (0..n)
                    .map(|i| one_table.index_of(m.on_terms().apply(i), &[m.on_bases()[i].apply(0)]))
                    .collect()
            };
            run.holds(
                "Dir(n·1^y,E) -> Fin(n,E(1)) is bijective",
                is_bijection_onto(&homs, at_one, &expected),
                inputs,
            )?;

            let rep = Dir::representable(n);
            let expected = big_pow(n, d.total());
            run.eq(
                "|Dir(D,n^y)| = |Fin(D(1),n)|",
                formulas.dir_hom_count(d, &rep),
                expected.clone(),
                inputs,
            )?;
            let homs = dir::hom_enumerate(d, &rep, Budget::default()).expect("small");
            let flat = |m: &DirMorphism| -> Vec<usize> {
                m.on_bases()
                    .iter()
                    .flat_map(|b| b.map().iter().copied())
                    .collect()
            };
            run.holds(
                "Dir(D,n^y) -> Fin(D(1),n) is bijective",
                is_bijection_onto(&homs, flat, &expected),
                inputs,
            )?;
        }
    }
    Ok(())
}

/// The five embeddings of `Fin` are fully faithful: each hom-set between
/// images maps bijectively onto `Fin(n, m)`.
fn inclusions(run: &mut Run, config: &Config) -> Step {
    let top = config.grid.set;
    for n in 0..=top {
        for m in 0..=top {
            let inputs = || json!({ "n": n, "m": m });
            let expected = big_pow(m, n);
            let homs = dir::hom_enumerate(
                &Dir::zero_content_terms(n),
                &Dir::zero_content_terms(m),
                Budget::default(),
            )
            .expect("small");
            run.holds(
                "n ↦ n·0^y is fully faithful",
                is_bijection_onto(&homs, |h| h.on_terms().clone(), &expected),
                inputs,
            )?;
            let homs = dir::hom_enumerate(&Dir::constant(n), &Dir::constant(m), Budget::default())
                .expect("small");
            run.holds(
                "n ↦ n·1^y is fully faithful",
                is_bijection_onto(&homs, |h| h.on_terms().clone(), &expected),
                inputs,
            )?;
            let homs = dir::hom_enumerate(
                &Dir::representable(n),
                &Dir::representable(m),
                Budget::default(),
            )
            .expect("small");
            run.holds(
                "n ↦ n^y is fully faithful",
                is_bijection_onto(&homs, |h| h.on_bases()[0].clone(), &expected),
                inputs,
            )?;
            let homs =
                poly::hom_enumerate(&Poly::constant(n), &Poly::constant(m), Budget::default())
                    .expect("small");
            run.holds(
                "n ↦ n is fully faithful",
                is_bijection_onto(&homs, |h| h.on_positions().clone(), &expected),
                inputs,
            )?;
            let homs = poly::hom_enumerate(&Poly::linear(n), &Poly::linear(m), Budget::default())
                .expect("small");
            run.holds(
                "n ↦ ny is fully faithful",
                is_bijection_onto(&homs, |h| h.on_positions().clone(), &expected),
                inputs,
            )?;
        }
    }
    Ok(())
}

/// `|Dir(nD, E)| = |Dir(D, E^n)| = |Fin(n, Dir(D, E))|`.
fn two_variable(run: &mut Run, config: &Config, formulas: &Formulas) -> Step {
    let dirs = small_dirs(config);
    for d in &dirs {
        for e in &dirs {
            let base = formulas.dir_hom_count(d, e);
            for n in 0..=config.grid.set {
                let inputs = || json!({ "D": d, "E": e, "n": n });
                let copower = formulas.dir_hom_count(&d.scale(n), e);
                let power = formulas.dir_hom_count(d, &e.pow(n));
                run.eq("|Dir(nD,E)| = |Dir(D,E^n)|", copower.clone(), power, inputs)?;
                run.eq(
                    "|Dir(nD,E)| = |Dir(D,E)|^n",
                    copower,
                    base.pow(n as u32),
                    inputs,
                )?;
            }
        }
    }
    Ok(())
}
