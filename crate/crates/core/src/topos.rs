//! Topos structure on bundles, computed levelwise on the total and base sets.
//!
//! `Dir` inherits all of this through `D_-`.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bundle::{bun_hom_count, bun_hom_iter, BunMorphism, Bundle};
use crate::error::{mismatch, Error, Result};
use crate::finset::{self, big_pow, maps, Budget, FinFunction, FinSet};

/// A finite diagram of bundles whose (co)limit is wanted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagram {
    Terminal,
    Initial,
    Product(Bundle, Bundle),
    Coproduct(Bundle, Bundle),
    /// Two morphisms with a common target.
    Pullback(BunMorphism, BunMorphism),
    /// Two parallel morphisms.
    Equalizer(BunMorphism, BunMorphism),
}

/// A (co)limit object with its structure maps: projections for limits,
/// injections for colimits, the inclusion for equalizers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universal {
    pub object: Bundle,
    pub maps: Vec<BunMorphism>,
}

fn square(source: &Bundle, target: &Bundle, base: FinFunction, total: FinFunction) -> BunMorphism {
    debug_assert!(
        BunMorphism::new(source.clone(), target.clone(), base.clone(), total.clone()).is_ok()
    );
    BunMorphism::from_parts_unchecked(source.clone(), target.clone(), base, total)
}

pub fn limits_bun(diagram: &Diagram) -> Result<Universal> {
    match diagram {
        Diagram::Terminal => Ok(Universal {
            object: Bundle::identity(1),
            maps: Vec::new(),
        }),
        Diagram::Initial => Ok(Universal {
            object: Bundle::identity(0),
            maps: Vec::new(),
        }),
        Diagram::Product(a, b) => Ok(product(a, b)),
        Diagram::Coproduct(a, b) => {
            let object = a.coproduct(b);
            let total = finset::coproduct(a.total(), b.total());
            let base = finset::coproduct(a.base(), b.base());
            Ok(Universal {
                maps: vec![
                    square(a, &object, base.inj_a, total.inj_a),
                    square(b, &object, base.inj_b, total.inj_b),
                ],
                object,
            })
        }
        Diagram::Pullback(f, g) => {
            if f.target() != g.target() {
                return Err(Error::IllFormedDiagram(
                    "pullback legs need a common target".into(),
                ));
            }
            let base = finset::pullback(f.base_map(), g.base_map())?;
            let total = finset::pullback(f.total_map(), g.total_map())?;
            let (pf, pg) = (f.source().proj(), g.source().proj());
            let proj = total
                .tuples
                .iter()
                .map(|t| {
                    base.index_of(&[pf.apply(t[0]), pg.apply(t[1])])
                        .expect("square commutes")
                })
                .collect();
            let object = Bundle::new(FinFunction::from_parts_unchecked(
                total.set.size(),
                base.set.size(),
                proj,
            ));
            Ok(Universal {
                maps: vec![
                    square(
                        &object,
                        f.source(),
                        base.projections[0].clone(),
                        total.projections[0].clone(),
                    ),
                    square(
                        &object,
                        g.source(),
                        base.projections[1].clone(),
                        total.projections[1].clone(),
                    ),
                ],
                object,
            })
        }
        Diagram::Equalizer(f, g) => {
            if f.source() != g.source() || f.target() != g.target() {
                return Err(Error::IllFormedDiagram(
                    "equalizer needs parallel morphisms".into(),
                ));
            }
            let base = finset::equalizer(f.base_map(), g.base_map())?;
            let total = finset::equalizer(f.total_map(), g.total_map())?;
            let position: HashMap<usize, usize> = base
                .inclusion
                .map()
                .iter()
                .enumerate()
                .map(|(k, &b)| (b, k))
                .collect();
            let pi = f.source().proj();
            let proj = total
                .inclusion
                .map()
                .iter()
                .map(|&x| position[&pi.apply(x)])
                .collect();
            let object = Bundle::new(FinFunction::from_parts_unchecked(
                total.set.size(),
                base.set.size(),
                proj,
            ));
            Ok(Universal {
                maps: vec![square(&object, f.source(), base.inclusion, total.inclusion)],
                object,
            })
        }
    }
}

/// Levelwise product; totals pair as `x·s_b + y`, bases as `j·t_b + k`.
pub fn product(a: &Bundle, b: &Bundle) -> Universal {
    let total = finset::product(a.total(), b.total());
    let base = finset::product(a.base(), b.base());
    let tb = b.base().size();
    let proj = total
        .proj_a
        .map()
        .iter()
        .zip(total.proj_b.map())
        .map(|(&x, &y)| a.proj().apply(x) * tb + b.proj().apply(y))
        .collect();
    let object = Bundle::new(FinFunction::from_parts_unchecked(
        total.set.size(),
        base.set.size(),
        proj,
    ));
    Universal {
        maps: vec![
            square(&object, a, base.proj_a, total.proj_a),
            square(&object, b, base.proj_b, total.proj_b),
        ],
        object,
    }
}

/// `E^F` with its evaluation map.
///
/// Total elements are the morphisms `F -> E` in [`bun_hom_iter`] order; base
/// elements are maps `t_F -> t_E` in lexicographic order.
#[derive(Clone, Debug)]
pub struct Exponential {
    base_of: Bundle,
    exponent: Bundle,
    object: Bundle,
    eval: BunMorphism,
    homs: Vec<BunMorphism>,
    lookup: HashMap<(FinFunction, FinFunction), usize>,
}

pub fn exponential(e: &Bundle, f: &Bundle, budget: Budget) -> Result<Exponential> {
    let count = bun_hom_count(f, e);
    budget.check(&count)?;
    budget.check(
        &(big_pow(e.base().size(), f.base().size()) * BigUint::from(f.total().size().max(1))),
    )?;
    let homs: Vec<BunMorphism> = bun_hom_iter(f, e).collect();
    let base_size = e
        .base()
        .size()
        .pow(u32::try_from(f.base().size()).expect("small base"));
    let proj = homs.iter().map(|m| m.base_map().lex_rank()).collect();
    let object = Bundle::new(FinFunction::from_parts_unchecked(
        homs.len(),
        base_size,
        proj,
    ));
    let lookup = homs
        .iter()
        .enumerate()
        .map(|(k, m)| ((m.base_map().clone(), m.total_map().clone()), k))
        .collect();

    let paired = product(&object, f).object;
    let eval_total = (0..paired.total().size())
        .map(|z| {
            let (m, x) = (z / f.total().size(), z % f.total().size());
            homs[m].total_map().apply(x)
        })
        .collect();
    let eval_base = (0..paired.base().size())
        .map(|z| {
            let (r, j) = (z / f.base().size(), z % f.base().size());
            FinFunction::from_lex_rank(f.base().size(), e.base().size(), r).apply(j)
        })
        .collect();
    let eval = square(
        &paired,
        e,
        FinFunction::from_parts_unchecked(paired.base().size(), e.base().size(), eval_base),
        FinFunction::from_parts_unchecked(paired.total().size(), e.total().size(), eval_total),
    );
    Ok(Exponential {
        base_of: e.clone(),
        exponent: f.clone(),
        object,
        eval,
        homs,
        lookup,
    })
}

impl Exponential {
    pub fn object(&self) -> &Bundle {
        &self.object
    }

    /// `ev : E^F × F -> E`.
    pub fn eval(&self) -> &BunMorphism {
        &self.eval
    }

    /// The morphism `F -> E` named by a total element.
    pub fn hom(&self, index: usize) -> &BunMorphism {
        &self.homs[index]
    }

    /// `m : G × F -> E` to its transpose `G -> E^F`.
    pub fn curry(&self, g: &Bundle, m: &BunMorphism) -> Result<BunMorphism> {
        let paired = product(g, &self.exponent).object;
        if m.source() != &paired || m.target() != &self.base_of {
            return Err(mismatch("curry expects a morphism G × F -> E"));
        }
        let (f, e) = (&self.exponent, &self.base_of);
        let (sf, tf) = (f.total().size(), f.base().size());
        let base_rows: Vec<FinFunction> = (0..g.base().size())
            .map(|b| {
                let row = (0..tf).map(|j| m.base_map().apply(b * tf + j)).collect();
                FinFunction::from_parts_unchecked(tf, e.base().size(), row)
            })
            .collect();
        let total = (0..g.total().size())
            .map(|x| {
                let row = (0..sf).map(|y| m.total_map().apply(x * sf + y)).collect();
                let key = (
                    base_rows[g.proj().apply(x)].clone(),
                    FinFunction::from_parts_unchecked(sf, e.total().size(), row),
                );
                self.lookup[&key]
            })
            .collect();
        let base = base_rows.iter().map(FinFunction::lex_rank).collect();
        Ok(square(
            g,
            &self.object,
            FinFunction::from_parts_unchecked(g.base().size(), self.object.base().size(), base),
            FinFunction::from_parts_unchecked(g.total().size(), self.object.total().size(), total),
        ))
    }

    /// `n : G -> E^F` to `G × F -> E`.
    pub fn uncurry(&self, n: &BunMorphism) -> Result<BunMorphism> {
        if n.target() != &self.object {
            return Err(mismatch("uncurry expects a morphism into the exponential"));
        }
        let g = n.source();
        let (f, e) = (&self.exponent, &self.base_of);
        let (sf, tf) = (f.total().size(), f.base().size());
        let paired = product(g, f).object;
        let total = (0..paired.total().size())
            .map(|z| {
                self.homs[n.total_map().apply(z / sf.max(1))]
                    .total_map()
                    .apply(z % sf)
            })
            .collect();
        let base = (0..paired.base().size())
            .map(|z| {
                FinFunction::from_lex_rank(tf, e.base().size(), n.base_map().apply(z / tf))
                    .apply(z % tf)
            })
            .collect();
        Ok(square(
            &paired,
            e,
            FinFunction::from_parts_unchecked(paired.base().size(), e.base().size(), base),
            FinFunction::from_parts_unchecked(paired.total().size(), e.total().size(), total),
        ))
    }
}

pub const NOW: usize = 0;
pub const LATER: usize = 1;
pub const NEVER: usize = 2;
pub const TRUE: usize = 0;
pub const FALSE: usize = 1;

/// The subobject classifier with its truth point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Omega {
    pub bundle: Bundle,
    pub truth: BunMorphism,
}

/// `{now, later, never} -> {true, false}`, with `now, later ↦ true`.
pub fn omega() -> Omega {
    let bundle = Bundle::from_map(3, 2, vec![TRUE, TRUE, FALSE]).expect("valid");
    let truth = square(
        &Bundle::identity(1),
        &bundle,
        FinFunction::from_parts_unchecked(1, 2, vec![TRUE]),
        FinFunction::from_parts_unchecked(1, 3, vec![NOW]),
    );
    Omega { bundle, truth }
}

pub fn is_mono(m: &BunMorphism) -> bool {
    m.is_mono()
}

/// A monomorphism into `F`, kept in canonical form: the source's total and
/// base are the image subsets listed in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubobjectWitness {
    inclusion: BunMorphism,
}

impl SubobjectWitness {
    /// The canonical witness for `S ⊆ total`, `T ⊆ base` of `F`.
    pub fn from_sets(f: &Bundle, total: &[usize], base: &[usize]) -> Result<Self> {
        let mut s = total.to_vec();
        let mut t = base.to_vec();
        s.sort_unstable();
        s.dedup();
        t.sort_unstable();
        t.dedup();
        if s.iter().any(|&x| x >= f.total().size()) || t.iter().any(|&b| b >= f.base().size()) {
            return Err(mismatch("subset leaves the bundle"));
        }
        let proj = s
            .iter()
            .map(|&x| {
                t.binary_search(&f.proj().apply(x))
                    .map_err(|_| mismatch("total subset is not over the base subset"))
            })
            .collect::<Result<Vec<_>>>()?;
        let sub = Bundle::new(FinFunction::from_parts_unchecked(s.len(), t.len(), proj));
        Ok(SubobjectWitness {
            inclusion: square(
                &sub,
                f,
                FinFunction::from_parts_unchecked(t.len(), f.base().size(), t),
                FinFunction::from_parts_unchecked(s.len(), f.total().size(), s),
            ),
        })
    }

    /// The canonical witness for the subobject represented by `m`.
    pub fn from_mono(m: &BunMorphism) -> Result<Self> {
        if !m.is_mono() {
            return Err(Error::NotMono);
        }
        SubobjectWitness::from_sets(m.target(), m.total_map().map(), m.base_map().map())
    }

    pub fn inclusion(&self) -> &BunMorphism {
        &self.inclusion
    }

    pub fn ambient(&self) -> &Bundle {
        self.inclusion.target()
    }

    pub fn total_subset(&self) -> &[usize] {
        self.inclusion.total_map().map()
    }

    pub fn base_subset(&self) -> &[usize] {
        self.inclusion.base_map().map()
    }
}

/// The characteristic map `F -> Ω` of a subobject.
pub fn classify(w: &SubobjectWitness) -> BunMorphism {
    let f = w.ambient();
    let mut base = vec![FALSE; f.base().size()];
    for &b in w.base_subset() {
        base[b] = TRUE;
    }
    let mut total: Vec<usize> = f
        .proj()
        .map()
        .iter()
        .map(|&b| if base[b] == TRUE { LATER } else { NEVER })
        .collect();
    for &x in w.total_subset() {
        total[x] = NOW;
    }
    let o = omega();
    square(
        f,
        &o.bundle,
        FinFunction::from_parts_unchecked(f.base().size(), 2, base),
        FinFunction::from_parts_unchecked(f.total().size(), 3, total),
    )
}

/// The pullback of `truth` along `χ`, as a morphism into `F`.
pub fn pullback_of_truth(chi: &BunMorphism) -> Result<BunMorphism> {
    let o = omega();
    if chi.target() != &o.bundle {
        return Err(mismatch("characteristic maps land in Ω"));
    }
    let limit = limits_bun(&Diagram::Pullback(chi.clone(), o.truth))?;
    Ok(limit.maps[0].clone())
}

pub fn subobject_of(chi: &BunMorphism) -> Result<SubobjectWitness> {
    SubobjectWitness::from_mono(&pullback_of_truth(chi)?)
}

/// Every subobject of `F`, ordered by base subset mask and then total
/// subset mask.
pub fn enumerate_subobjects(f: &Bundle, budget: Budget) -> Result<Vec<SubobjectWitness>> {
    let (s, t) = (f.total().size(), f.base().size());
    budget.check(&big_pow(2, s + t))?;
    let proj = f.proj().map();
    let mut out = Vec::new();
    for tmask in 0u64..(1 << t) {
        for smask in 0u64..(1 << s) {
            let closed = (0..s).all(|x| smask >> x & 1 == 0 || tmask >> proj[x] & 1 == 1);
            if closed {
                let total: Vec<usize> = (0..s).filter(|&x| smask >> x & 1 == 1).collect();
                let base: Vec<usize> = (0..t).filter(|&b| tmask >> b & 1 == 1).collect();
                out.push(SubobjectWitness::from_sets(f, &total, &base)?);
            }
        }
    }
    Ok(out)
}

/// Whether `truth : 1 -> candidate` classifies subobjects of every test
/// object: `χ ↦ χ^*(truth)` must be a bijection `Bun(F, candidate) -> Sub(F)`.
pub fn is_classifier(
    candidate: &Bundle,
    truth: &BunMorphism,
    tests: &[Bundle],
    budget: Budget,
) -> Result<bool> {
    for f in tests {
        budget.check(&bun_hom_count(f, candidate))?;
        let subs = enumerate_subobjects(f, budget)?;
        let mut hit = vec![false; subs.len()];
        let index: HashMap<&SubobjectWitness, usize> =
            subs.iter().enumerate().map(|(k, w)| (w, k)).collect();
        for chi in bun_hom_iter(f, candidate) {
            let limit = limits_bun(&Diagram::Pullback(chi, truth.clone()))?;
            let w = SubobjectWitness::from_mono(&limit.maps[0])?;
            match index.get(&w) {
                Some(&k) if !hit[k] => hit[k] = true,
                _ => return Ok(false),
            }
        }
        if hit.iter().any(|h| !h) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Truth points `1 -> π`: one per total element.
pub fn points(pi: &Bundle) -> Vec<BunMorphism> {
    let one = Bundle::identity(1);
    maps(FinSet::POINT, pi.total())
        .map(|x| {
            let b = pi.proj().apply(x.apply(0));
            square(
                &one,
                pi,
                FinFunction::from_parts_unchecked(1, pi.base().size(), vec![b]),
                x,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn terminal_and_initial() {
        assert_eq!(
            limits_bun(&Diagram::Terminal).unwrap().object,
            Bundle::identity(1)
        );
        assert_eq!(
            limits_bun(&Diagram::Initial).unwrap().object,
            Bundle::identity(0)
        );
    }

    #[test]
    fn products_are_levelwise() {
        let a = Bundle::canonical(&[2]);
        let p = product(&a, &Bundle::identity(1));
        assert_eq!(p.object, Bundle::canonical(&[2]));
        let q = product(&Bundle::canonical(&[2, 1]), &Bundle::canonical(&[1, 0]));
        assert_eq!((q.object.total().size(), q.object.base().size()), (3, 4));
        assert_eq!(q.object.fiber_sizes(), vec![2, 0, 1, 0]);
    }

    #[test]
    fn pullbacks_and_equalizers() {
        let pi = Bundle::canonical(&[2, 1]);
        let one = Bundle::identity(1);
        let [p0, _, p2] = <[BunMorphism; 3]>::try_from(points(&pi)).unwrap();
        let meet = limits_bun(&Diagram::Pullback(p0.clone(), p2)).unwrap();
        assert_eq!(meet.object, Bundle::identity(0));
        let same = limits_bun(&Diagram::Pullback(p0.clone(), p0.clone())).unwrap();
        assert_eq!(same.object, one);
        let id = BunMorphism::identity(&pi);
        let eq = limits_bun(&Diagram::Equalizer(id.clone(), id)).unwrap();
        assert_eq!(eq.object, pi);
        assert!(limits_bun(&Diagram::Pullback(p0, BunMorphism::identity(&one))).is_err());
    }

    #[test]
    fn exponential_sizes() {
        let e = Bundle::canonical(&[2, 1]);
        let f = Bundle::canonical(&[1]);
        let x = exponential(&e, &f, budget()).unwrap();
        assert_eq!(x.object().total().size(), 3);
        assert_eq!(x.object().base().size(), 2);
        assert_eq!(x.object().fiber_sizes(), vec![2, 1]);
        let y = exponential(&e, &Bundle::identity(0), budget()).unwrap();
        assert_eq!(y.object(), &Bundle::identity(1));
    }

    #[test]
    fn curry_roundtrip() {
        let e = Bundle::canonical(&[2, 1]);
        let f = Bundle::from_map(2, 2, vec![1, 1]).unwrap();
        let x = exponential(&e, &f, budget()).unwrap();
        for g in Bundle::all_up_to(2, 2) {
            let paired = product(&g, &f).object;
            for m in bun_hom_iter(&paired, &e) {
                let n = x.curry(&g, &m).unwrap();
                assert_eq!(x.uncurry(&n).unwrap(), m);
            }
            for n in bun_hom_iter(&g, x.object()) {
                assert_eq!(x.curry(&g, &x.uncurry(&n).unwrap()).unwrap(), n);
            }
        }
    }

    #[test]
    fn subobject_counts() {
        let count = |pi: Bundle| enumerate_subobjects(&pi, budget()).unwrap().len();
        assert_eq!(count(Bundle::identity(1)), 3);
        assert_eq!(count(Bundle::canonical(&[0])), 2);
        assert_eq!(count(Bundle::identity(0)), 1);
        assert_eq!(count(Bundle::canonical(&[2])), 5);
    }

    #[test]
    fn characteristic_maps() {
        let one = Bundle::identity(1);
        let o = omega();
        assert_eq!(o.bundle.fiber_sizes(), vec![2, 1]);
        let whole = SubobjectWitness::from_sets(&one, &[0], &[0]).unwrap();
        let chi = classify(&whole);
        assert_eq!(chi, o.truth);
        let empty = SubobjectWitness::from_sets(&one, &[], &[]).unwrap();
        assert_eq!(classify(&empty).total_map().map(), &[NEVER]);
        assert_eq!(classify(&empty).base_map().map(), &[FALSE]);
        let later = SubobjectWitness::from_sets(&one, &[], &[0]).unwrap();
        assert_eq!(classify(&later).total_map().map(), &[LATER]);
        assert_eq!(classify(&later).base_map().map(), &[TRUE]);
        for w in [whole, empty, later] {
            assert_eq!(subobject_of(&classify(&w)).unwrap(), w);
        }
    }

    #[test]
    fn witnesses_reject_bad_input() {
        let pi = Bundle::canonical(&[2, 1]);
        assert!(SubobjectWitness::from_sets(&pi, &[2], &[0]).is_err());
        assert!(SubobjectWitness::from_sets(&pi, &[5], &[0]).is_err());
        let fold = BunMorphism::new(
            pi.clone(),
            Bundle::identity(1),
            FinFunction::new(2, 1, vec![0, 0]).unwrap(),
            FinFunction::new(3, 1, vec![0, 0, 0]).unwrap(),
        )
        .unwrap();
        assert!(!is_mono(&fold));
        assert_eq!(SubobjectWitness::from_mono(&fold), Err(Error::NotMono));
    }

    #[test]
    fn omega_classifies_small_bundles() {
        let o = omega();
        let tests = Bundle::all_up_to(2, 2);
        assert!(is_classifier(&o.bundle, &o.truth, &tests, budget()).unwrap());
        let two = Bundle::identity(2);
        let truth = points(&two).remove(0);
        assert!(!is_classifier(&two, &truth, &tests, budget()).unwrap());
    }
}
