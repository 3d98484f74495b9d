//! Acceptance criteria. Prints one line per criterion and exits nonzero if
//! any fails. Every comparison is exact: tolerance 0.

use std::collections::HashSet;
use std::panic;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polydir::bundle::{
    bun_hom_iter, bundle_of_dir, bundle_of_poly, compose_bun, compose_cont, cont_hom_iter,
    dir_of_bundle, dirichlet_transform, functor_d, functor_p, inverse_transform, poly_of_bundle,
};
use polydir::finset::{is_pullback_square, maps, pullback, wide_pushout};
use polydir::laws::{self, multisets, Config, Grid, Mutation};
use polydir::topos::{
    self, classify, enumerate_subobjects, exponential, omega, points, product, subobject_of,
};
use polydir::{
    dir, parse_dir, parse_poly, poly, Budget, BunMorphism, Bundle, Dir, FinFunction, FinSet, Poly,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("hom counts of the worked pairs", hom_counts),
        ("evaluation vectors", evaluation_vectors),
        ("bundle correspondence", bundle_correspondence),
        ("bundle/container equivalences", equivalences),
        ("cartesian iff pullback squares", cartesian_characterization),
        ("topos structure", topos_structure),
        ("preservation of wide limits", preservation),
        ("adjunctions", adjunctions),
        ("monoidal transform", monoidal_transform),
        ("mutation guard", mutation_guard),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(check).unwrap_or_else(|e| {
            let message = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {message}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} PASS {name} [exact, {secs:.2}s]: {detail}",
                k + 1
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL {name} [exact, {secs:.2}s]: {detail}",
                    k + 1
                );
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}

fn big(n: usize) -> BigUint {
    BigUint::from(n)
}

fn hom_counts() -> Outcome {
    let (two_y2, y_plus_1) = (parse_poly("2y^2").unwrap(), parse_poly("y+1").unwrap());
    let (two_2y, one_plus_0y) = (parse_dir("2*2^y").unwrap(), parse_dir("1^y + 0^y").unwrap());
    let mut seen = Vec::new();
    for (p, q, want) in [(&two_y2, &y_plus_1, 9), (&y_plus_1, &two_y2, 0)] {
        let count = poly::hom_count(p, q);
        let listed = poly::hom_enumerate(p, q, Budget::default()).unwrap().len();
        ensure!(
            count == big(want) && listed == want,
            "Poly({p}, {q}): count {count}, listed {listed}, want {want}"
        );
        seen.push(want);
    }
    for (d, e, want) in [(&two_2y, &one_plus_0y, 1), (&one_plus_0y, &two_2y, 8)] {
        let count = dir::hom_count(d, e);
        let listed = dir::hom_enumerate(d, e, Budget::default()).unwrap().len();
        ensure!(
            count == big(want) && listed == want,
            "Dir({d}, {e}): count {count}, listed {listed}, want {want}"
        );
        seen.push(want);
    }
    Ok(format!("counts and enumerations {seen:?}"))
}

fn evaluation_vectors() -> Outcome {
    let both = |p: &Poly, x: usize| {
        let n = p.eval_count(x);
        assert_eq!(
            big(p.eval_obj(FinSet::new(x), Budget::default()).unwrap().len()),
            n
        );
        n
    };
    let both_dir = |d: &Dir, x: usize| {
        let n = d.eval_count(x);
        assert_eq!(
            big(d.eval_obj(FinSet::new(x), Budget::default()).unwrap().len()),
            n
        );
        n
    };
    ensure!(both(&Poly::monomial(3), 2) == big(8), "y^3(2) != 8");
    ensure!(both_dir(&Dir::representable(3), 2) == big(9), "3^y(2) != 9");
    let p = parse_poly("y^2+4y+4").unwrap();
    let d = parse_dir("2^y+4+4*0^y").unwrap();
    ensure!(
        both(&p, 1) == big(9) && both_dir(&d, 0) == big(9),
        "P(1) = D(0) = 9 fails"
    );
    let fitted = parse_dir("3*2^y+4*0^y").unwrap();
    let values: Vec<BigUint> = (0..=5).map(|x| both_dir(&fitted, x)).collect();
    let want: Vec<BigUint> = [7usize, 6, 12, 24, 48, 96].into_iter().map(big).collect();
    ensure!(values == want, "fitted table gives {values:?}");
    ensure!(
        fitted.zero_content() == 4,
        "zero content {}",
        fitted.zero_content()
    );
    Ok("8, 9, 9 = 9, (7,6,12,24,48,96) with zero content 4".into())
}

fn bundle_correspondence() -> Outcome {
    let p = parse_poly("2y^3+y^2+3").unwrap();
    let d = parse_dir("2*3^y+2^y+3*0^y").unwrap();
    let (bp, bd) = (bundle_of_poly(&p), bundle_of_dir(&d));
    ensure!(bp == bd, "the two bundles differ: {bp} vs {bd}");
    ensure!(
        bp.total().size() == 8 && bp.base().size() == 6,
        "bundle is {bp}"
    );
    let mut sizes = bp.fiber_sizes();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    ensure!(sizes == [3, 3, 2, 0, 0, 0], "fiber multiset {sizes:?}");
    ensure!(dirichlet_transform(&p) == d, "transform of P is not D");

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..200 {
        let len = rng.gen_range(0..=6);
        let mut sizes: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=4)).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let pi = Bundle::canonical(&sizes);
        let (p, d) = (Poly::new(sizes.clone()), Dir::new(sizes.clone()));
        ensure!(
            bundle_of_poly(&poly_of_bundle(&pi)) == pi,
            "bundle -> poly -> bundle fails on {pi}"
        );
        ensure!(
            bundle_of_dir(&dir_of_bundle(&pi)) == pi,
            "bundle -> dir -> bundle fails on {pi}"
        );
        ensure!(
            poly_of_bundle(&bundle_of_poly(&p)) == p,
            "poly -> bundle -> poly fails on {p}"
        );
        ensure!(
            dir_of_bundle(&bundle_of_dir(&d)) == d,
            "dir -> bundle -> dir fails on {d}"
        );
        ensure!(
            inverse_transform(&dirichlet_transform(&p)) == p,
            "transform roundtrip fails on {p}"
        );
    }
    Ok(
        "both sides give 8 -> 6 with fibers {3,3,2,0,0,0}; 4 roundtrips on 200 seeded instances"
            .into(),
    )
}

/// Commuting squares, found by trying every pair of maps.
fn bun_oracle(a: &Bundle, b: &Bundle) -> usize {
    maps(a.base(), b.base())
        .map(|f| {
            maps(a.total(), b.total())
                .filter(|g| {
                    (0..a.total().size())
                        .all(|x| b.proj().apply(g.apply(x)) == f.apply(a.proj().apply(x)))
                })
                .count()
        })
        .sum()
}

/// For each base map, one map `b^{-1}(f j) -> a^{-1}(j)` per `j`.
fn cont_oracle(a: &Bundle, b: &Bundle) -> usize {
    let (fa, fb) = (a.fibers(), b.fibers());
    maps(a.base(), b.base())
        .map(|f| {
            (0..a.base().size())
                .map(|j| maps(FinSet::new(fb[f.apply(j)].len()), FinSet::new(fa[j].len())).count())
                .product::<usize>()
        })
        .sum()
}

fn equivalences() -> Outcome {
    let bundles = Bundle::all_up_to(2, 2);
    let mut pairs = 0;
    let mut compositions = 0;
    for a in &bundles {
        let (da, pa) = (dir_of_bundle(a), poly_of_bundle(a));
        for b in &bundles {
            let (db, pb) = (dir_of_bundle(b), poly_of_bundle(b));
            let bun: Vec<BunMorphism> = bun_hom_iter(a, b).collect();
            let oracle = bun_oracle(a, b);
            ensure!(
                bun.len() == oracle,
                "|Bun({a}, {b})| = {} but oracle says {oracle}",
                bun.len()
            );
            ensure!(
                dir::hom_count(&da, &db) == big(oracle),
                "|Dir| differs for {a}, {b}"
            );
            ensure!(
                dir::hom_iter(&da, &db, Budget::UNLIMITED).unwrap().count() == oracle,
                "Dir listing differs"
            );
            let images: HashSet<_> = bun.iter().map(functor_d).collect();
            ensure!(
                images.len() == oracle,
                "D is not bijective on Bun({a}, {b})"
            );
            let cart_bun = bun.iter().filter(|m| m.is_cartesian()).count();
            let cart_dir = dir::hom_iter(&da, &db, Budget::UNLIMITED)
                .unwrap()
                .filter(|m| m.is_cartesian())
                .count();
            ensure!(
                cart_bun == cart_dir,
                "cartesian counts {cart_bun} vs {cart_dir} for {a}, {b}"
            );
            for m in &bun {
                ensure!(
                    functor_d(m).is_cartesian() == m.is_cartesian(),
                    "D changes cartesianness of {m:?}"
                );
            }

            let cont: Vec<_> = cont_hom_iter(a, b).collect();
            let oracle = cont_oracle(a, b);
            ensure!(
                cont.len() == oracle,
                "|Cont({a}, {b})| = {} but oracle says {oracle}",
                cont.len()
            );
            ensure!(
                poly::hom_count(&pa, &pb) == big(oracle),
                "|Poly| differs for {a}, {b}"
            );
            let images: HashSet<_> = cont.iter().map(functor_p).collect();
            ensure!(
                images.len() == oracle,
                "P is not bijective on Cont({a}, {b})"
            );
            let cart_cont = cont.iter().filter(|m| m.is_cartesian()).count();
            let cart_poly = poly::hom_iter(&pa, &pb, Budget::UNLIMITED)
                .unwrap()
                .filter(|m| m.is_cartesian())
                .count();
            ensure!(
                cart_cont == cart_poly,
                "cartesian counts {cart_cont} vs {cart_poly} for {a}, {b}"
            );
            pairs += 1;

            for c in &bundles {
                for m in &bun {
                    for n in bun_hom_iter(b, c) {
                        let whole = functor_d(&compose_bun(&n, m).unwrap());
                        let parts = dir::compose_morphisms(&functor_d(&n), &functor_d(m)).unwrap();
                        ensure!(whole == parts, "D does not preserve a composite");
                        compositions += 1;
                    }
                }
                for m in &cont {
                    for n in cont_hom_iter(b, c) {
                        let whole = functor_p(&compose_cont(&n, m).unwrap());
                        let parts = poly::compose_morphisms(&functor_p(&n), &functor_p(m)).unwrap();
                        ensure!(whole == parts, "P does not preserve a composite");
                        compositions += 1;
                    }
                }
            }
        }
        ensure!(
            functor_d(&BunMorphism::identity(a)) == polydir::DirMorphism::identity(&da),
            "D does not preserve the identity of {a}"
        );
        ensure!(
            functor_p(&polydir::ContMorphism::identity(a)) == polydir::PolyMorphism::identity(&pa),
            "P does not preserve the identity of {a}"
        );
    }
    Ok(format!(
        "{} bundles, {pairs} pairs, {compositions} composites",
        bundles.len()
    ))
}

fn cartesian_characterization() -> Outcome {
    let mut shapes: Vec<Vec<usize>> = multisets(2, 3);
    shapes.extend(multisets(3, 2));
    shapes.sort();
    shapes.dedup();
    let dirs: Vec<Dir> = shapes.into_iter().map(Dir::new).collect();
    let tests: Vec<FinFunction> = (0..=3)
        .flat_map(|x| (0..=3).flat_map(move |x2| maps(FinSet::new(x), FinSet::new(x2))))
        .collect();
    let to_point = FinFunction::empty(1);
    let at = |d: &Dir, g: &FinFunction| d.eval_map(g, Budget::UNLIMITED).unwrap();
    let (mut morphisms, mut cartesian) = (0u64, 0u64);
    for d in &dirs {
        let d_maps: Vec<FinFunction> = tests.iter().map(|g| at(d, g)).collect();
        for e in &dirs {
            let e_maps: Vec<FinFunction> = tests.iter().map(|g| at(e, g)).collect();
            for m in dir::hom_iter(d, e, Budget::UNLIMITED).unwrap() {
                let comp: Vec<FinFunction> = (0..=3)
                    .map(|x| m.component(FinSet::new(x), Budget::UNLIMITED).unwrap())
                    .collect();
                let square =
                    is_pullback_square(&comp[1], &at(d, &to_point), &at(e, &to_point), &comp[0])
                        .unwrap();
                let natural = tests.iter().enumerate().all(|(k, g)| {
                    let (x, x2) = (g.dom().size(), g.cod().size());
                    is_pullback_square(&comp[x2], &d_maps[k], &e_maps[k], &comp[x]).unwrap()
                });
                ensure!(
                    square == natural,
                    "square at 1/0 is {square}, naturality squares {natural}: {m}"
                );
                ensure!(
                    square == m.is_cartesian(),
                    "cartesian flag disagrees on {m}"
                );
                morphisms += 1;
                cartesian += u64::from(square);
            }
        }
    }
    Ok(format!(
        "{} Dirs, {morphisms} morphisms ({cartesian} cartesian), {} test maps",
        dirs.len(),
        tests.len()
    ))
}

/// Pairs `(S, T)` with `π(S) ⊆ T`, by bitmask.
fn sub_oracle(pi: &Bundle) -> usize {
    let (s, t) = (pi.total().size(), pi.base().size());
    let mut n = 0;
    for tm in 0u32..(1 << t) {
        for sm in 0u32..(1 << s) {
            if (0..s).all(|x| sm >> x & 1 == 0 || tm >> pi.proj().apply(x) & 1 == 1) {
                n += 1;
            }
        }
    }
    n
}

fn product_map(h: &BunMorphism, f: &Bundle) -> BunMorphism {
    let (sf, tf) = (f.total().size(), f.base().size());
    let source = product(h.source(), f).object;
    let target = product(h.target(), f).object;
    let total = (0..source.total().size())
        .map(|z| h.total_map().apply(z / sf) * sf + z % sf)
        .collect();
    let base = (0..source.base().size())
        .map(|z| h.base_map().apply(z / tf) * tf + z % tf)
        .collect();
    let (ts, tt) = (source.total().size(), target.total().size());
    let (bs, bt) = (source.base().size(), target.base().size());
    BunMorphism::new(
        source,
        target,
        FinFunction::new(bs, bt, base).unwrap(),
        FinFunction::new(ts, tt, total).unwrap(),
    )
    .unwrap()
}

fn topos_structure() -> Outcome {
    let o = omega();
    let budget = Budget::default();

    let levels3 = Bundle::all_up_to(3, 3);
    let mut characteristic = 0;
    for f in &levels3 {
        let subs = enumerate_subobjects(f, budget).unwrap();
        let oracle = sub_oracle(f);
        ensure!(
            subs.len() == oracle,
            "|Sub({f})| = {} but oracle says {oracle}",
            subs.len()
        );
        let chis: Vec<BunMorphism> = bun_hom_iter(f, &o.bundle).collect();
        ensure!(
            chis.len() == oracle,
            "|Bun({f}, Ω)| = {} but |Sub| = {oracle}",
            chis.len()
        );
        let mut hit = HashSet::new();
        for chi in &chis {
            let w = subobject_of(chi).unwrap();
            ensure!(&classify(&w) == chi, "classify(χ^*(true)) != χ on {f}");
            let incl = w.inclusion();
            let bang_total = FinFunction::bang(incl.source().total().size());
            let bang_base = FinFunction::bang(incl.source().base().size());
            let total_square = is_pullback_square(
                incl.total_map(),
                &bang_total,
                chi.total_map(),
                o.truth.total_map(),
            )
            .unwrap();
            let base_square = is_pullback_square(
                incl.base_map(),
                &bang_base,
                chi.base_map(),
                o.truth.base_map(),
            )
            .unwrap();
            ensure!(
                total_square && base_square,
                "χ^*(true) is not a levelwise pullback on {f}"
            );
            hit.insert(w);
            characteristic += 1;
        }
        ensure!(
            hit.len() == subs.len(),
            "pullback of truth misses subobjects of {f}"
        );
        for w in &subs {
            ensure!(
                &subobject_of(&classify(w)).unwrap() == w,
                "χ^*(true) != S on {f}"
            );
        }
    }

    let levels2 = Bundle::all_up_to(2, 2);
    let mut curried = 0;
    let mut natural = 0;
    for e in &levels2 {
        for f in &levels2 {
            let x = exponential(e, f, budget).unwrap();
            let id = BunMorphism::identity(x.object());
            ensure!(
                &x.uncurry(&id).unwrap() == x.eval(),
                "uncurry(id) != ev for {e}, {f}"
            );
            for g in &levels2 {
                let paired = product(g, f).object;
                let ms: Vec<BunMorphism> = bun_hom_iter(&paired, e).collect();
                let ns: HashSet<BunMorphism> = ms.iter().map(|m| x.curry(g, m).unwrap()).collect();
                ensure!(
                    ns.len() == ms.len(),
                    "curry is not injective for G={g}, F={f}, E={e}"
                );
                ensure!(
                    ns.len() == bun_hom_iter(g, x.object()).count(),
                    "|Bun(G×F, E)| != |Bun(G, E^F)| for G={g}, F={f}, E={e}"
                );
                for m in &ms {
                    let n = x.curry(g, m).unwrap();
                    ensure!(&x.uncurry(&n).unwrap() == m, "uncurry ∘ curry != id");
                }
                curried += ms.len();
                for g2 in &levels2 {
                    for h in bun_hom_iter(g2, g) {
                        let hf = product_map(&h, f);
                        for m in &ms {
                            let left = x.curry(g2, &compose_bun(m, &hf).unwrap()).unwrap();
                            let right = compose_bun(&x.curry(g, m).unwrap(), &h).unwrap();
                            ensure!(left == right, "currying is not natural in G");
                            natural += 1;
                        }
                    }
                }
            }
        }
    }

    let mut candidates = Vec::new();
    for t in 0..=3 {
        for sizes in multisets(4, t) {
            if sizes.len() == t && sizes.iter().sum::<usize>() <= 4 {
                candidates.push(Bundle::canonical(&sizes));
            }
        }
    }
    let mut classifiers = Vec::new();
    for c in &candidates {
        for (k, truth) in points(c).iter().enumerate() {
            if topos::is_classifier(c, truth, &levels2, budget).unwrap() {
                classifiers.push((c.clone(), k));
            }
        }
    }
    let found: HashSet<&Bundle> = classifiers.iter().map(|(c, _)| c).collect();
    ensure!(
        found.len() == 1 && found.contains(&o.bundle),
        "classifying candidates: {:?}",
        classifiers
            .iter()
            .map(|(c, k)| format!("{c} at {k}"))
            .collect::<Vec<_>>()
    );
    ensure!(
        classifiers.iter().any(|(_, k)| *k == topos::NOW),
        "truth at now does not classify"
    );
    Ok(format!(
        "{} bundles with |Sub| = |Bun(F,Ω)| ({characteristic} maps), {curried} curried maps, \
         {natural} naturality checks; among {} candidates only {} classifies ({} truth points)",
        levels3.len(),
        candidates.len(),
        o.bundle,
        classifiers.len()
    ))
}

fn preservation() -> Outcome {
    let report = laws::run_suite("preservation", &Config::default()).unwrap();
    ensure!(report.passed(), "{report}");

    let small = Grid {
        exp: 2,
        terms: 2,
        set: 2,
        legs: 2,
    };
    let mut squares = 0;
    for a in 0..=2 {
        for b in 0..=2 {
            for c in 0..=2 {
                for f in maps(FinSet::new(a), FinSet::new(c)) {
                    for g in maps(FinSet::new(b), FinSet::new(c)) {
                        let limit = pullback(&f, &g).unwrap();
                        for p in &small.polys() {
                            let (pf, pg) = (
                                p.eval_map(&f, Budget::UNLIMITED).unwrap(),
                                p.eval_map(&g, Budget::UNLIMITED).unwrap(),
                            );
                            let pairs = (0..pf.dom().size())
                                .flat_map(|u| (0..pg.dom().size()).map(move |v| (u, v)))
                                .filter(|&(u, v)| pf.apply(u) == pg.apply(v))
                                .count();
                            ensure!(
                                p.eval_count(limit.set.size()) == big(pairs),
                                "P = {p} misses a pullback"
                            );
                            squares += 1;
                        }
                    }
                }
                for f in maps(FinSet::new(c), FinSet::new(a)) {
                    for g in maps(FinSet::new(c), FinSet::new(b)) {
                        let colimit = wide_pushout(&[f.clone(), g.clone()]).unwrap();
                        for d in &small.dirs() {
                            let (df, dg) = (
                                d.eval_map(&f, Budget::UNLIMITED).unwrap(),
                                d.eval_map(&g, Budget::UNLIMITED).unwrap(),
                            );
                            let pairs = (0..df.dom().size())
                                .flat_map(|u| (0..dg.dom().size()).map(move |v| (u, v)))
                                .filter(|&(u, v)| df.apply(u) == dg.apply(v))
                                .count();
                            ensure!(
                                d.eval_count(colimit.set.size()) == big(pairs),
                                "D = {d} misses a pushout"
                            );
                            squares += 1;
                        }
                    }
                }
            }
        }
    }

    let mut rebuilt = 0;
    for d in Grid::DEFAULT.dirs() {
        let pi = d.pi();
        for x in 0..=4 {
            let oracle = if x == 0 {
                pi.base().size()
            } else {
                maps(FinSet::new(x), pi.total())
                    .filter(|h| {
                        h.map()
                            .iter()
                            .all(|&y| pi.proj().apply(y) == pi.proj().apply(h.apply(0)))
                    })
                    .count()
            };
            let listed = bun_hom_iter(&Bundle::bang(x), &pi).count();
            ensure!(
                listed == oracle && d.eval_count(x) == big(oracle),
                "|D(X)| != |Bun(X!, π_D)| for D = {d}, X = {x}"
            );
            rebuilt += 1;
        }
    }
    Ok(format!(
        "suite {} instances; {squares} brute-force binary squares; {rebuilt} reconstructions up to X = 4",
        report.instances
    ))
}

fn adjunctions() -> Outcome {
    let report = laws::run_suite("adjunctions", &Config::default()).unwrap();
    ensure!(report.passed(), "{report}");
    let small = Grid {
        exp: 2,
        terms: 2,
        set: 2,
        legs: 2,
    };
    let mut checked = 0;
    for p in &Grid::DEFAULT.polys() {
        let gamma = poly::hom_iter(p, &Poly::y(), Budget::UNLIMITED)
            .unwrap()
            .count();
        let product: usize = p.exponents().iter().product();
        ensure!(
            gamma == product && p.global_sections() == big(product),
            "Γ({p}) != {product}"
        );
        checked += 1;
    }
    for p in &small.polys() {
        for q in &small.polys() {
            let ihom = poly::Poly::internal_hom(p, q, Budget::UNLIMITED).unwrap();
            let listed = poly::hom_iter(p, q, Budget::UNLIMITED).unwrap().count();
            ensure!(
                ihom.eval_count(1) == big(listed),
                "[{p}, {q}](1) != |Poly({p}, {q})|"
            );
            checked += 1;
        }
    }
    Ok(format!(
        "suite {} instances; {checked} brute-force Γ and [P,Q](1) checks",
        report.instances
    ))
}

fn monoidal_transform() -> Outcome {
    let polys = Grid::DEFAULT.polys();
    let mut pairs = 0;
    for p in &polys {
        for q in &polys {
            let left = dirichlet_transform(&p.tensor(q));
            let right = dirichlet_transform(p).multiply(&dirichlet_transform(q));
            let mut oracle: Vec<usize> = p
                .exponents()
                .iter()
                .flat_map(|a| q.exponents().iter().map(move |b| a * b))
                .collect();
            oracle.sort_unstable_by(|a, b| b.cmp(a));
            ensure!(
                left == right,
                "transform({p} ⊗ {q}) = {left} but the product is {right}"
            );
            ensure!(
                left.bases() == oracle.as_slice(),
                "transform({p} ⊗ {q}) = {left}, oracle {oracle:?}"
            );
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn mutation_guard() -> Outcome {
    let breaking = [
        ("hom", Mutation::HomSumInsteadOfProduct),
        ("adjunctions", Mutation::InternalHomDropsMultiplicity),
        ("preservation", Mutation::ZeroToTheZeroIsZero),
        ("equivalences", Mutation::CartesianTestInjectiveOnly),
        ("algebra", Mutation::TensorAddsExponents),
    ];
    ensure!(
        laws::SUITES
            .iter()
            .all(|s| breaking.iter().any(|(b, _)| b == s)),
        "a suite has no breaking mutation"
    );
    let mut caught = Vec::new();
    for (suite, mutation) in breaking {
        let config = Config::default().mutated(mutation);
        let report = laws::run_suite(suite, &config).unwrap();
        ensure!(!report.passed(), "{suite} passes under {mutation}");
        let Some(c) = &report.counterexample else {
            return Err(format!(
                "{suite} fails under {mutation} without a counterexample"
            ));
        };
        ensure!(!c.law.is_empty(), "{suite} reports an unnamed law");
        let again = laws::run_suite(suite, &config).unwrap();
        ensure!(
            again == report,
            "{suite} is not deterministic under {mutation}"
        );
        caught.push(format!("{suite}/{mutation}: {}", c.law));
    }
    Ok(caught.join("; "))
}
