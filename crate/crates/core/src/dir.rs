//! The category of Dirichlet functors `Fin^op -> Fin`.
//!
//! `D = Σ_i d_i^y` is stored as its bases in descending order. A morphism
//! `D -> E` sends each term `i` to a term `f(i)` of `E` and pushes the base
//! forward along `f_♯i : d_i -> e_{f(i)}`.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bundle::Bundle;
use crate::error::{mismatch, Error, Result};
use crate::finset::{self, big_pow, compose, Budget, FinFunction, FinSet, MixedRadix};
use crate::poly::run_lengths;
use crate::sum::{sorted_desc, Evaluation};

#[derive(Serialize, Deserialize)]
struct RawDir {
    dir: Vec<usize>,
}

/// A Dirichlet polynomial, as a descending multiset of bases.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "RawDir", into = "RawDir")]
pub struct Dir {
    bases: Vec<usize>,
}

impl From<RawDir> for Dir {
    fn from(raw: RawDir) -> Self {
        Dir::new(raw.dir)
    }
}

impl From<Dir> for RawDir {
    fn from(d: Dir) -> Self {
        RawDir { dir: d.bases }
    }
}

impl Dir {
    pub fn new(bases: impl IntoIterator<Item = usize>) -> Self {
        Dir {
            bases: sorted_desc(bases.into_iter().collect()),
        }
    }

    /// The initial object. Not the same as `0^y`.
    pub fn zero() -> Self {
        Dir::default()
    }

    /// `1^y`: terminal, and the unit for `×`.
    pub fn one() -> Self {
        Dir::representable(1)
    }

    /// `n^y`.
    pub fn representable(n: usize) -> Self {
        Dir { bases: vec![n] }
    }

    /// `n = n·1^y`.
    pub fn constant(n: usize) -> Self {
        Dir { bases: vec![1; n] }
    }

    /// `n·0^y`.
    pub fn zero_content_terms(n: usize) -> Self {
        Dir { bases: vec![0; n] }
    }

    pub fn bases(&self) -> &[usize] {
        &self.bases
    }

    pub fn base(&self, term: usize) -> usize {
        self.bases[term]
    }

    /// `D(0)`, the number of terms.
    pub fn terms(&self) -> usize {
        self.bases.len()
    }

    /// `D(1) = Σ_i d_i`.
    pub fn total(&self) -> usize {
        self.bases.iter().sum()
    }

    /// Coefficient of `0^y`.
    pub fn zero_content(&self) -> usize {
        self.bases.iter().filter(|&&d| d == 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.bases.is_empty()
    }

    /// `(base, coefficient)` pairs, largest base first.
    pub fn coefficients(&self) -> Vec<(usize, usize)> {
        run_lengths(&self.bases)
    }

    /// `|D(X)| = Σ_i d_i^X`.
    pub fn eval_count(&self, x: usize) -> BigUint {
        self.bases.iter().map(|&d| big_pow(d, x)).sum()
    }

    /// `D(X)`; element `(i, h)` has `h : X -> d_i`.
    pub fn eval_obj(&self, x: FinSet, budget: Budget) -> Result<Evaluation> {
        Evaluation::new(self.bases.iter().map(|&d| (x.size(), d)), budget)
    }

    /// `D(g) : D(X') -> D(X)` for `g : X -> X'`, by precomposition.
    pub fn eval_map(&self, g: &FinFunction, budget: Budget) -> Result<FinFunction> {
        let from = self.eval_obj(g.cod(), budget)?;
        let to = self.eval_obj(g.dom(), budget)?;
        let map = from
            .elements()
            .map(|(i, h)| {
                let pulled: Vec<usize> = g.map().iter().map(|&x| h.apply(x)).collect();
                to.index_of(i, &pulled)
            })
            .collect();
        FinFunction::new(from.len(), to.len(), map)
    }

    pub fn add(&self, other: &Dir) -> Dir {
        Dir::new(self.bases.iter().chain(&other.bases).copied())
    }

    /// Product: `d^y · e^y = (d·e)^y`.
    pub fn multiply(&self, other: &Dir) -> Dir {
        Dir::new(
            self.bases
                .iter()
                .flat_map(|&d| other.bases.iter().map(move |&e| d * e)),
        )
    }

    /// `n`-fold coproduct.
    pub fn scale(&self, n: usize) -> Dir {
        Dir::new((0..n).flat_map(|_| self.bases.iter().copied()))
    }

    /// `n`-fold product; `D^0 = 1^y`.
    pub fn pow(&self, n: usize) -> Dir {
        (0..n).fold(Dir::one(), |acc, _| acc.multiply(self))
    }

    /// `π_D = D(0!) : D(1) -> D(0)`, the bundle with fiber `d_i` over term `i`.
    pub fn pi(&self) -> Bundle {
        let proj = self
            .eval_map(&FinFunction::empty(1), Budget::UNLIMITED)
            .expect("D(1) is small");
        Bundle::new(proj)
    }

    /// The unit `η_D : D -> D(0)` onto the constant Dirichlet polynomial on terms.
    pub fn term_unit(&self) -> DirMorphism {
        let n = self.terms();
        DirMorphism {
            source: self.clone(),
            target: Dir::constant(n),
            on_terms: FinFunction::identity(n),
            on_bases: self.bases.iter().map(|&d| FinFunction::bang(d)).collect(),
        }
    }

    /// Splits `D` as `Σ_i D ×_{D(0)} 'i'`. The `i`-th part is `(d_i)^y`.
    pub fn decompose(&self) -> Vec<(usize, Dir)> {
        let unit = self.term_unit();
        (0..self.terms())
            .map(|i| {
                let point = DirMorphism {
                    source: Dir::one(),
                    target: unit.target.clone(),
                    on_terms: FinFunction::from_parts_unchecked(1, self.terms(), vec![i]),
                    on_bases: vec![FinFunction::identity(1)],
                };
                (
                    i,
                    pullback_dir(&unit, &point).expect("cospan over D(0)").apex,
                )
            })
            .collect()
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::print_dir(self))
    }
}

#[derive(Serialize, Deserialize)]
struct RawDirMorphism {
    source: Dir,
    target: Dir,
    on_terms: FinFunction,
    on_bases: Vec<FinFunction>,
}

/// A natural transformation `D -> E`: a term map and a forward base map
/// `d_i -> e_{f(i)}` per term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDirMorphism", into = "RawDirMorphism")]
pub struct DirMorphism {
    source: Dir,
    target: Dir,
    on_terms: FinFunction,
    on_bases: Vec<FinFunction>,
}

impl TryFrom<RawDirMorphism> for DirMorphism {
    type Error = Error;

    fn try_from(raw: RawDirMorphism) -> Result<Self> {
        DirMorphism::new(raw.source, raw.target, raw.on_terms, raw.on_bases)
    }
}

impl From<DirMorphism> for RawDirMorphism {
    fn from(m: DirMorphism) -> Self {
        RawDirMorphism {
            source: m.source,
            target: m.target,
            on_terms: m.on_terms,
            on_bases: m.on_bases,
        }
    }
}

impl DirMorphism {
    pub fn new(
        source: Dir,
        target: Dir,
        on_terms: FinFunction,
        on_bases: Vec<FinFunction>,
    ) -> Result<Self> {
        if on_terms.dom().size() != source.terms() || on_terms.cod().size() != target.terms() {
            return Err(mismatch("term map does not go D(0) -> E(0)"));
        }
        if on_bases.len() != source.terms() {
            return Err(mismatch("need one base map per source term"));
        }
        for (i, b) in on_bases.iter().enumerate() {
            let j = on_terms.apply(i);
            if b.dom().size() != source.base(i) || b.cod().size() != target.base(j) {
                return Err(mismatch(format!(
                    "base map at term {} must go {} -> {}",
                    i + 1,
                    source.base(i),
                    target.base(j)
                )));
            }
        }
        Ok(DirMorphism {
            source,
            target,
            on_terms,
            on_bases,
        })
    }

    pub(crate) fn from_parts_unchecked(
        source: Dir,
        target: Dir,
        on_terms: FinFunction,
        on_bases: Vec<FinFunction>,
    ) -> Self {
        DirMorphism {
            source,
            target,
            on_terms,
            on_bases,
        }
    }

    pub fn identity(d: &Dir) -> Self {
        DirMorphism {
            source: d.clone(),
            target: d.clone(),
            on_terms: FinFunction::identity(d.terms()),
            on_bases: d.bases.iter().map(|&b| FinFunction::identity(b)).collect(),
        }
    }

    pub fn source(&self) -> &Dir {
        &self.source
    }

    pub fn target(&self) -> &Dir {
        &self.target
    }

    pub fn on_terms(&self) -> &FinFunction {
        &self.on_terms
    }

    pub fn on_bases(&self) -> &[FinFunction] {
        &self.on_bases
    }

    /// The `X`-component `D(X) -> E(X)`: `(i, h) ↦ (f(i), f_♯i ∘ h)`.
    pub fn component(&self, x: FinSet, budget: Budget) -> Result<FinFunction> {
        let from = self.source.eval_obj(x, budget)?;
        let to = self.target.eval_obj(x, budget)?;
        let map = from
            .elements()
            .map(|(i, h)| {
                let pushed = compose(&self.on_bases[i], &h).expect("base shapes");
                to.index_of(self.on_terms.apply(i), pushed.map())
            })
            .collect();
        FinFunction::new(from.len(), to.len(), map)
    }

    /// Every base map is a bijection.
    pub fn is_cartesian(&self) -> bool {
        self.on_bases.iter().all(FinFunction::is_bijective)
    }

    /// Whether the square formed by the components at `1` and `0` and the
    /// bundles `π_D`, `π_E` is a pullback.
    pub fn has_pullback_square(&self) -> bool {
        let top = self
            .component(FinSet::POINT, Budget::UNLIMITED)
            .expect("small");
        let bottom = self
            .component(FinSet::EMPTY, Budget::UNLIMITED)
            .expect("small");
        finset::is_pullback_square(
            &top,
            self.source.pi().proj(),
            self.target.pi().proj(),
            &bottom,
        )
        .expect("square shapes line up")
    }
}

impl fmt::Display for DirMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} :", self.source, self.target)?;
        for (i, b) in self.on_bases.iter().enumerate() {
            write!(f, " [{}->{} ", i + 1, self.on_terms.apply(i) + 1)?;
            let pushed: Vec<String> = b.map().iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})]", pushed.join(" "))?;
        }
        Ok(())
    }
}

/// `n ∘ m`.
pub fn compose_morphisms(n: &DirMorphism, m: &DirMorphism) -> Result<DirMorphism> {
    if m.target != n.source {
        return Err(mismatch("morphisms are not composable"));
    }
    let on_terms = compose(&n.on_terms, &m.on_terms)?;
    let on_bases = (0..m.source.terms())
        .map(|i| compose(&n.on_bases[m.on_terms.apply(i)], &m.on_bases[i]))
        .collect::<Result<_>>()?;
    Ok(DirMorphism {
        source: m.source.clone(),
        target: n.target.clone(),
        on_terms,
        on_bases,
    })
}

/// `|Dir(D, E)| = Π_i |E(d_i)|`.
pub fn hom_count(d: &Dir, e: &Dir) -> BigUint {
    d.bases.iter().map(|&b| e.eval_count(b)).product()
}

/// Lazily enumerates `Dir(D, E)`, one element of `E(d_i)` per term.
pub fn hom_iter(d: &Dir, e: &Dir, budget: Budget) -> Result<impl Iterator<Item = DirMorphism>> {
    let tables: Vec<Evaluation> = d
        .bases
        .iter()
        .map(|&b| e.eval_obj(FinSet::new(b), budget))
        .collect::<Result<_>>()?;
    let radices = tables.iter().map(Evaluation::len).collect();
    let (source, target) = (d.clone(), e.clone());
    Ok(MixedRadix::new(radices).map(move |digits| {
        let mut terms = Vec::with_capacity(digits.len());
        let mut bases = Vec::with_capacity(digits.len());
        for (table, k) in tables.iter().zip(digits) {
            let (j, h) = table.element(k);
            terms.push(j);
            bases.push(h);
        }
        DirMorphism {
            source: source.clone(),
            target: target.clone(),
            on_terms: FinFunction::from_parts_unchecked(terms.len(), target.terms(), terms),
            on_bases: bases,
        }
    }))
}

pub fn hom_enumerate(d: &Dir, e: &Dir, budget: Budget) -> Result<Vec<DirMorphism>> {
    budget.check(&hom_count(d, e))?;
    Ok(hom_iter(d, e, budget)?.collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirPullback {
    pub apex: Dir,
    pub left: DirMorphism,
    pub right: DirMorphism,
}

/// Pullback of `f : D -> H` and `g : E -> H`: terms are pairs over a common
/// term of `H`, with bases the pullback of the two base maps.
pub fn pullback_dir(f: &DirMorphism, g: &DirMorphism) -> Result<DirPullback> {
    if f.target != g.target {
        return Err(mismatch("pullback legs need a common target"));
    }
    let pairs = finset::pullback(&f.on_terms, &g.on_terms)?;
    let bases = pairs
        .tuples
        .iter()
        .map(|t| finset::pullback(&f.on_bases[t[0]], &g.on_bases[t[1]]))
        .collect::<Result<Vec<_>>>()?;
    let sizes: Vec<usize> = bases.iter().map(|b| b.set.size()).collect();
    let (sorted, _, labels) = crate::sum::canonical_order(&sizes);
    let apex = Dir { bases: sorted };
    let project = |side: usize, leg: &Dir| DirMorphism {
        source: apex.clone(),
        target: leg.clone(),
        on_terms: FinFunction::from_parts_unchecked(
            labels.len(),
            leg.terms(),
            labels.iter().map(|&l| pairs.tuples[l][side]).collect(),
        ),
        on_bases: labels
            .iter()
            .map(|&l| bases[l].projections[side].clone())
            .collect(),
    };
    Ok(DirPullback {
        left: project(0, &f.source),
        right: project(1, &g.source),
        apex: apex.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(b: &[usize]) -> Dir {
        Dir::new(b.iter().copied())
    }

    fn counts(x: &Dir, upto: usize) -> Vec<u64> {
        (0..=upto)
            .map(|k| u64::try_from(x.eval_count(k)).unwrap())
            .collect()
    }

    #[test]
    fn evaluation_counts() {
        assert_eq!(Dir::representable(3).eval_count(2), BigUint::from(9u32));
        assert_eq!(counts(&Dir::representable(0), 2), vec![1, 0, 0]);
        let table = d(&[2, 2, 2, 0, 0, 0, 0]);
        assert_eq!(counts(&table, 5), vec![7, 6, 12, 24, 48, 96]);
        assert_eq!(table.zero_content(), 4);
        assert_eq!(
            d(&[2, 1, 1, 1, 1, 0, 0, 0, 0]).eval_count(0),
            BigUint::from(9u32)
        );
    }

    #[test]
    fn eval_map_is_contravariant() {
        let x = d(&[3, 2, 0]);
        let g = FinFunction::new(2, 3, vec![2, 0]).unwrap();
        let h = FinFunction::new(3, 1, vec![0, 0, 0]).unwrap();
        let b = Budget::default();
        let hg = compose(&h, &g).unwrap();
        let lhs = x.eval_map(&hg, b).unwrap();
        let rhs = compose(&x.eval_map(&g, b).unwrap(), &x.eval_map(&h, b).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let id = x.eval_map(&FinFunction::identity(2), b).unwrap();
        assert_eq!(id, FinFunction::identity(id.dom().size()));
    }

    #[test]
    fn worked_hom_counts() {
        let (a, b) = (d(&[2, 2]), d(&[1, 0]));
        assert_eq!(hom_count(&a, &b), BigUint::from(1u32));
        assert_eq!(hom_count(&b, &a), BigUint::from(8u32));
        assert_eq!(hom_enumerate(&b, &a, Budget::default()).unwrap().len(), 8);
        assert_eq!(hom_count(&Dir::zero(), &a), BigUint::from(1u32));

        let m = &hom_enumerate(&a, &b, Budget::default()).unwrap()[0];
        let at0 = m.component(FinSet::EMPTY, Budget::default()).unwrap();
        assert_eq!((at0.dom().size(), at0.cod().size()), (2, 2));
        let at1 = m.component(FinSet::POINT, Budget::default()).unwrap();
        assert_eq!((at1.dom().size(), at1.cod().size()), (4, 1));
    }

    #[test]
    fn components_are_natural() {
        let (a, b) = (d(&[2, 0]), d(&[3, 1]));
        let g = FinFunction::new(2, 3, vec![1, 1]).unwrap();
        let bud = Budget::default();
        for m in hom_enumerate(&a, &b, bud).unwrap() {
            let lhs = compose(
                &m.component(FinSet::new(2), bud).unwrap(),
                &a.eval_map(&g, bud).unwrap(),
            )
            .unwrap();
            let rhs = compose(
                &b.eval_map(&g, bud).unwrap(),
                &m.component(FinSet::new(3), bud).unwrap(),
            )
            .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn arithmetic() {
        assert_eq!(
            Dir::representable(2).multiply(&Dir::representable(3)),
            Dir::representable(6)
        );
        let s = Dir::representable(0).add(&Dir::one());
        assert_eq!((s.terms(), s.total()), (2, 1));
        let x = d(&[3, 2, 0]);
        assert_eq!(x.multiply(&Dir::one()), x);
        assert_eq!(x.pow(0), Dir::one());
        assert_eq!(x.scale(2), x.add(&x));
    }

    #[test]
    fn bundles() {
        let pi = d(&[3, 3, 2, 0, 0, 0]).pi();
        assert_eq!((pi.total().size(), pi.base().size()), (8, 6));
        assert_eq!(pi.fiber_sizes(), vec![3, 3, 2, 0, 0, 0]);
        assert_eq!(Dir::constant(3).pi().proj(), &FinFunction::identity(3));
        let zero = Dir::representable(0).pi();
        assert_eq!((zero.total().size(), zero.base().size()), (0, 1));
    }

    #[test]
    fn decomposition() {
        let parts: Vec<Dir> = d(&[2, 2]).decompose().into_iter().map(|(_, x)| x).collect();
        assert_eq!(parts, vec![Dir::representable(2); 2]);
        let parts: Vec<Dir> = d(&[1, 0]).decompose().into_iter().map(|(_, x)| x).collect();
        assert_eq!(parts, vec![Dir::one(), Dir::representable(0)]);
    }

    #[test]
    fn cartesian_morphisms() {
        let id = DirMorphism::identity(&d(&[2, 1]));
        assert!(id.is_cartesian() && id.has_pullback_square());

        let include = DirMorphism::new(
            Dir::representable(2),
            Dir::representable(3),
            FinFunction::identity(1),
            vec![FinFunction::new(2, 3, vec![0, 1]).unwrap()],
        )
        .unwrap();
        assert!(!include.is_cartesian() && !include.has_pullback_square());

        let collapse = DirMorphism::new(
            d(&[2, 2]),
            Dir::representable(2),
            FinFunction::bang(2),
            vec![
                FinFunction::identity(2),
                FinFunction::new(2, 2, vec![1, 0]).unwrap(),
            ],
        )
        .unwrap();
        assert!(collapse.is_cartesian() && collapse.has_pullback_square());
    }

    #[test]
    fn pullbacks() {
        let x = d(&[2, 1]);
        let id = DirMorphism::identity(&x);
        assert_eq!(pullback_dir(&id, &id).unwrap().apex, x);
        // 2^y -> 1^y <- 3^y: bases pull back to 2 × 3
        let f = DirMorphism::new(
            Dir::representable(2),
            Dir::one(),
            FinFunction::identity(1),
            vec![FinFunction::bang(2)],
        )
        .unwrap();
        let g = DirMorphism::new(
            Dir::representable(3),
            Dir::one(),
            FinFunction::identity(1),
            vec![FinFunction::bang(3)],
        )
        .unwrap();
        assert_eq!(pullback_dir(&f, &g).unwrap().apex, Dir::representable(6));
    }

    #[test]
    fn json_and_display() {
        let x: Dir = serde_json::from_str(r#"{"dir":[0,2,2,0,2,0,0]}"#).unwrap();
        assert_eq!(x.to_string(), "3*2^y + 4*0^y");
        assert_eq!(
            serde_json::to_string(&x).unwrap(),
            r#"{"dir":[2,2,2,0,0,0,0]}"#
        );
        let bad = r#"{"source":{"dir":[1]},"target":{"dir":[1]},"on_terms":{"dom":1,"cod":1,"map":[0]},"on_bases":[{"dom":1,"cod":2,"map":[0]}]}"#;
        assert!(serde_json::from_str::<DirMorphism>(bad).is_err());
    }
}
