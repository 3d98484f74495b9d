//! Algebraic identities: pointwise sums and products, distributivity, units,
//! monoidality of the transform and the decompositions.

use serde_json::json;

use super::formulas::Formulas;
use super::{multisets, report, Config, Report, Run, Step};
use crate::bundle::dirichlet_transform;
use crate::dir::Dir;
use crate::poly::Poly;

pub fn check_algebra(config: &Config) -> Report {
    let formulas = Formulas::new(config.mutation);
    report("algebra", |run| {
        units(run, config, &formulas)?;
        pointwise(run, config)?;
        distributivity(run, config, &formulas)?;
        substitution(run, config)?;
        monoidal_transform(run, config, &formulas)?;
        decompositions(run, config)
    })
}

fn units(run: &mut Run, config: &Config, formulas: &Formulas) -> Step {
    for p in &config.grid.polys() {
        let inputs = || json!({ "P": p });
        run.eq(
            "P ⊗ y = P",
            formulas.tensor(p, &Poly::y()),
            p.clone(),
            inputs,
        )?;
        run.eq(
            "y ⊗ P = P",
            formulas.tensor(&Poly::y(), p),
            p.clone(),
            inputs,
        )?;
        run.eq("P × 1 = P", p.multiply(&Poly::one()), p.clone(), inputs)?;
        run.eq("P + 0 = P", p.add(&Poly::zero()), p.clone(), inputs)?;
        run.eq("P ∘ y = P", p.substitute(&Poly::y()), p.clone(), inputs)?;
        run.eq("y ∘ P = P", Poly::y().substitute(p), p.clone(), inputs)?;
    }
    for d in &config.grid.dirs() {
        let inputs = || json!({ "D": d });
        run.eq("D × 1^y = D", d.multiply(&Dir::one()), d.clone(), inputs)?;
        run.eq("D + 0 = D", d.add(&Dir::zero()), d.clone(), inputs)?;
    }
    Ok(())
}

/// `+` and `×` are computed pointwise, for `X <= set + 1`.
fn pointwise(run: &mut Run, config: &Config) -> Step {
    let top = config.grid.set + 1;
    let polys = config.grid.polys();
    for p in &polys {
        for q in &polys {
            let (sum, product) = (p.add(q), p.multiply(q));
            for x in 0..=top {
                let inputs = || json!({ "P": p, "Q": q, "X": x });
                run.eq(
                    "(P+Q)(X) = P(X)+Q(X)",
                    sum.eval_count(x),
                    p.eval_count(x) + q.eval_count(x),
                    inputs,
                )?;
                run.eq(
                    "(P×Q)(X) = P(X)·Q(X)",
                    product.eval_count(x),
                    p.eval_count(x) * q.eval_count(x),
                    inputs,
                )?;
            }
            run.eq("P+Q = Q+P", sum, q.add(p), || json!({ "P": p, "Q": q }))?;
            run.eq(
                "P×Q = Q×P",
                product,
                q.multiply(p),
                || json!({ "P": p, "Q": q }),
            )?;
        }
    }
    let dirs = config.grid.dirs();
    for d in &dirs {
        for e in &dirs {
            let (sum, product) = (d.add(e), d.multiply(e));
            for x in 0..=top {
                let inputs = || json!({ "D": d, "E": e, "X": x });
                run.eq(
                    "(D+E)(X) = D(X)+E(X)",
                    sum.eval_count(x),
                    d.eval_count(x) + e.eval_count(x),
                    inputs,
                )?;
                run.eq(
                    "(D×E)(X) = D(X)·E(X)",
                    product.eval_count(x),
                    d.eval_count(x) * e.eval_count(x),
                    inputs,
                )?;
            }
        }
    }
    Ok(())
}

fn distributivity(run: &mut Run, config: &Config, formulas: &Formulas) -> Step {
    let polys = config.grid.polys();
    for p in &polys {
        for q in &polys {
            run.eq(
                "P⊗Q = Q⊗P",
                formulas.tensor(p, q),
                formulas.tensor(q, p),
                || json!({ "P": p, "Q": q }),
            )?;
            for r in &polys {
                let inputs = || json!({ "P": p, "Q": q, "R": r });
                let qr = q.add(r);
                run.eq(
                    "P⊗(Q+R) = P⊗Q + P⊗R",
                    formulas.tensor(p, &qr),
                    formulas.tensor(p, q).add(&formulas.tensor(p, r)),
                    inputs,
                )?;
                run.eq(
                    "P×(Q+R) = P×Q + P×R",
                    p.multiply(&qr),
                    p.multiply(q).add(&p.multiply(r)),
                    inputs,
                )?;
                run.eq(
                    "(P⊗Q)⊗R = P⊗(Q⊗R)",
                    formulas.tensor(&formulas.tensor(p, q), r),
                    formulas.tensor(p, &formulas.tensor(q, r)),
                    inputs,
                )?;
                run.eq(
                    "(P×Q)×R = P×(Q×R)",
                    p.multiply(q).multiply(r),
                    p.multiply(&q.multiply(r)),
                    inputs,
                )?;
            }
        }
    }
    Ok(())
}

/// `(P∘Q)(X) = P(Q(X))`, and `∘` is associative on a smaller grid.
fn substitution(run: &mut Run, config: &Config) -> Step {
    let polys = config.grid.polys();
    for p in &polys {
        for q in &polys {
            let composite = p.substitute(q);
            for x in 0..=config.grid.set {
                run.eq(
                    "(P∘Q)(X) = P(Q(X))",
                    composite.eval_count(x),
                    p.eval_count(usize::try_from(q.eval_count(x)).expect("small")),
                    || json!({ "P": p, "Q": q, "X": x }),
                )?;
            }
        }
    }
    let small: Vec<Poly> = multisets(config.grid.exp.min(2), config.grid.terms.min(2))
        .into_iter()
        .map(Poly::new)
        .collect();
    for p in &small {
        for q in &small {
            for r in &small {
                run.eq(
                    "(P∘Q)∘R = P∘(Q∘R)",
                    p.substitute(q).substitute(r),
                    p.substitute(&q.substitute(r)),
                    || json!({ "P": p, "Q": q, "R": r }),
                )?;
            }
        }
    }
    Ok(())
}

fn monoidal_transform(run: &mut Run, config: &Config, formulas: &Formulas) -> Step {
    run.eq(
        "transform(y) = 1^y",
        dirichlet_transform(&Poly::y()),
        Dir::one(),
        || json!({}),
    )?;
    let polys = config.grid.polys();
    for p in &polys {
        for q in &polys {
            run.eq(
                "transform(P⊗Q) = transform(P)×transform(Q)",
                dirichlet_transform(&formulas.tensor(p, q)),
                dirichlet_transform(p).multiply(&dirichlet_transform(q)),
                || json!({ "P": p, "Q": q }),
            )?;
        }
    }
    Ok(())
}

fn decompositions(run: &mut Run, config: &Config) -> Step {
    for p in &config.grid.polys() {
        let parts = p.decompose();
        let each = parts
            .iter()
            .all(|(i, part)| part == &Poly::monomial(p.exponent(*i)));
        run.holds("parts of P are y^{p_i}", each, || json!({ "P": p }))?;
        let resum = parts
            .iter()
            .fold(Poly::zero(), |acc, (_, part)| acc.add(part));
        run.eq("Σ parts = P", resum, p.clone(), || json!({ "P": p }))?;
    }
    for d in &config.grid.dirs() {
        let parts = d.decompose();
        let each = parts
            .iter()
            .all(|(i, part)| part == &Dir::representable(d.base(*i)));
        run.holds("parts of D are d_i^y", each, || json!({ "D": d }))?;
        let resum = parts
            .iter()
            .fold(Dir::zero(), |acc, (_, part)| acc.add(part));
        run.eq("Σ parts = D", resum, d.clone(), || json!({ "D": d }))?;
    }
    Ok(())
}
