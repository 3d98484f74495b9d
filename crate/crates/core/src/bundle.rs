//! Functions `π : s -> t` viewed as bundles of fibers, with the two notions
//! of morphism between them.
//!
//! A bundle morphism is a commuting square; a container morphism is a base
//! map together with, for each base point `j`, a map from the target fiber
//! over `f(j)` back into the fiber over `j`. Bundles correspond to Dirichlet
//! polynomials (fiber sizes become bases) and to polynomials (fiber sizes
//! become exponents), and the two morphism notions match `Dir` and `Poly`.
//!
//! Fibers are addressed by local index: the `l`-th element of the fiber over
//! `j` is the `l`-th smallest `x` with `π(x) = j`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::dir::{Dir, DirMorphism};
use crate::error::{mismatch, Error, Result};
use crate::finset::{self, big_pow, compose, maps, Budget, FinFunction, FinSet, MixedRadix};
use crate::poly::{Poly, PolyMorphism};
use crate::sum::canonical_order;

#[derive(Serialize, Deserialize)]
struct RawBundle {
    total: usize,
    base: usize,
    proj: Vec<usize>,
}

/// A function `π : s -> t` between finite sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawBundle", into = "RawBundle")]
pub struct Bundle {
    proj: FinFunction,
}

impl TryFrom<RawBundle> for Bundle {
    type Error = Error;

    fn try_from(raw: RawBundle) -> Result<Self> {
        Bundle::from_map(raw.total, raw.base, raw.proj)
    }
}

impl From<Bundle> for RawBundle {
    fn from(b: Bundle) -> Self {
        RawBundle {
            total: b.total().size(),
            base: b.base().size(),
            proj: b.proj.into_map(),
        }
    }
}

impl Bundle {
    pub fn new(proj: FinFunction) -> Self {
        Bundle { proj }
    }

    pub fn from_map(total: usize, base: usize, proj: Vec<usize>) -> Result<Self> {
        FinFunction::new(total, base, proj).map(Bundle::new)
    }

    /// The canonical bundle with the given fiber sizes: fibers in descending
    /// size order, each a consecutive block.
    pub fn canonical(fiber_sizes: &[usize]) -> Self {
        let mut sizes = fiber_sizes.to_vec();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let proj: Vec<usize> = sizes
            .iter()
            .enumerate()
            .flat_map(|(j, &k)| std::iter::repeat(j).take(k))
            .collect();
        Bundle {
            proj: FinFunction::from_parts_unchecked(proj.len(), sizes.len(), proj),
        }
    }

    /// `X! : X -> 1`.
    pub fn bang(x: usize) -> Self {
        Bundle {
            proj: FinFunction::bang(x),
        }
    }

    /// The identity `n -> n`.
    pub fn identity(n: usize) -> Self {
        Bundle {
            proj: FinFunction::identity(n),
        }
    }

    pub fn total(&self) -> FinSet {
        self.proj.dom()
    }

    pub fn base(&self) -> FinSet {
        self.proj.cod()
    }

    pub fn proj(&self) -> &FinFunction {
        &self.proj
    }

    pub fn fibers(&self) -> Vec<Vec<usize>> {
        self.proj.fibers()
    }

    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.base().size()];
        for &j in self.proj.map() {
            sizes[j] += 1;
        }
        sizes
    }

    /// Position of each total element inside its fiber.
    pub fn local_index(&self) -> Vec<usize> {
        let mut seen = vec![0; self.base().size()];
        self.proj
            .map()
            .iter()
            .map(|&j| {
                seen[j] += 1;
                seen[j] - 1
            })
            .collect()
    }

    pub fn is_canonical(&self) -> bool {
        let sorted_proj = self.proj.map().windows(2).all(|w| w[0] <= w[1]);
        let sizes = self.fiber_sizes();
        sorted_proj && sizes.windows(2).all(|w| w[0] >= w[1])
    }

    /// The canonical representative of this bundle's isomorphism class.
    pub fn canonical_form(&self) -> Bundle {
        Bundle::canonical(&self.fiber_sizes())
    }

    /// Levelwise coproduct `(s + s') -> (t + t')`.
    pub fn coproduct(&self, other: &Bundle) -> Bundle {
        let shift = self.base().size();
        let proj: Vec<usize> = self
            .proj
            .map()
            .iter()
            .copied()
            .chain(other.proj.map().iter().map(|&j| j + shift))
            .collect();
        Bundle {
            proj: FinFunction::from_parts_unchecked(proj.len(), shift + other.base().size(), proj),
        }
    }

    /// Every bundle with `total <= max_total` and `base <= max_base`.
    pub fn all_up_to(max_total: usize, max_base: usize) -> Vec<Bundle> {
        let mut out = Vec::new();
        for s in 0..=max_total {
            for t in 0..=max_base {
                out.extend(maps(FinSet::new(s), FinSet::new(t)).map(Bundle::new));
            }
        }
        out
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} fibers (", self.total(), self.base())?;
        let sizes: Vec<String> = self.fiber_sizes().iter().map(usize::to_string).collect();
        write!(f, "{})", sizes.join(","))
    }
}

/// `Σ y^{k_i} ↦ Σ k_i^y`.
pub fn dirichlet_transform(p: &Poly) -> Dir {
    Dir::new(p.exponents().iter().copied())
}

pub fn inverse_transform(d: &Dir) -> Poly {
    Poly::new(d.bases().iter().copied())
}

pub fn dir_of_bundle(pi: &Bundle) -> Dir {
    Dir::new(pi.fiber_sizes())
}

pub fn poly_of_bundle(pi: &Bundle) -> Poly {
    Poly::new(pi.fiber_sizes())
}

/// `π_D`, already canonical.
pub fn bundle_of_dir(d: &Dir) -> Bundle {
    d.pi()
}

pub fn bundle_of_poly(p: &Poly) -> Bundle {
    Bundle::canonical(p.exponents())
}

#[derive(Serialize, Deserialize)]
struct RawBunMorphism {
    source: Bundle,
    target: Bundle,
    base_map: FinFunction,
    total_map: FinFunction,
}

/// A commuting square from `π` to `π'`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBunMorphism", into = "RawBunMorphism")]
pub struct BunMorphism {
    source: Bundle,
    target: Bundle,
    base_map: FinFunction,
    total_map: FinFunction,
}

impl TryFrom<RawBunMorphism> for BunMorphism {
    type Error = Error;

    fn try_from(raw: RawBunMorphism) -> Result<Self> {
        BunMorphism::new(raw.source, raw.target, raw.base_map, raw.total_map)
    }
}

impl From<BunMorphism> for RawBunMorphism {
    fn from(m: BunMorphism) -> Self {
        RawBunMorphism {
            source: m.source,
            target: m.target,
            base_map: m.base_map,
            total_map: m.total_map,
        }
    }
}

impl BunMorphism {
    pub fn new(
        source: Bundle,
        target: Bundle,
        base_map: FinFunction,
        total_map: FinFunction,
    ) -> Result<Self> {
        if base_map.dom() != source.base() || base_map.cod() != target.base() {
            return Err(mismatch("base map does not go t -> t'"));
        }
        if total_map.dom() != source.total() || total_map.cod() != target.total() {
            return Err(mismatch("total map does not go s -> s'"));
        }
        let commutes = source
            .total()
            .elements()
            .all(|x| target.proj.apply(total_map.apply(x)) == base_map.apply(source.proj.apply(x)));
        if !commutes {
            return Err(mismatch("square does not commute"));
        }
        Ok(BunMorphism {
            source,
            target,
            base_map,
            total_map,
        })
    }

    pub(crate) fn from_parts_unchecked(
        source: Bundle,
        target: Bundle,
        base_map: FinFunction,
        total_map: FinFunction,
    ) -> Self {
        BunMorphism {
            source,
            target,
            base_map,
            total_map,
        }
    }

    pub fn identity(pi: &Bundle) -> Self {
        BunMorphism {
            source: pi.clone(),
            target: pi.clone(),
            base_map: FinFunction::identity(pi.base().size()),
            total_map: FinFunction::identity(pi.total().size()),
        }
    }

    pub fn source(&self) -> &Bundle {
        &self.source
    }

    pub fn target(&self) -> &Bundle {
        &self.target
    }

    pub fn base_map(&self) -> &FinFunction {
        &self.base_map
    }

    pub fn total_map(&self) -> &FinFunction {
        &self.total_map
    }

    /// The total map restricted to each fiber, in local indices:
    /// `fiber(j) -> fiber'(f(j))`.
    pub fn fiber_maps(&self) -> Vec<FinFunction> {
        let fibers = self.source.fibers();
        let local = self.target.local_index();
        let sizes = self.target.fiber_sizes();
        fibers
            .iter()
            .enumerate()
            .map(|(j, fib)| {
                let map = fib
                    .iter()
                    .map(|&x| local[self.total_map.apply(x)])
                    .collect();
                FinFunction::from_parts_unchecked(fib.len(), sizes[self.base_map.apply(j)], map)
            })
            .collect()
    }

    /// The comparison `π -> f^*(π')` is a bijection, i.e. every fiber map is.
    pub fn is_cartesian(&self) -> bool {
        self.fiber_maps().iter().all(FinFunction::is_bijective)
    }

    /// Whether the square is a pullback, checked directly on the sets.
    pub fn is_pullback_square(&self) -> bool {
        finset::is_pullback_square(
            &self.total_map,
            &self.source.proj,
            &self.target.proj,
            &self.base_map,
        )
        .expect("square shapes line up")
    }

    pub fn is_mono(&self) -> bool {
        self.base_map.is_injective() && self.total_map.is_injective()
    }
}

impl fmt::Display for BunMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "base {} total {}", self.base_map, self.total_map)
    }
}

/// `n ∘ m`, pasting squares.
pub fn compose_bun(n: &BunMorphism, m: &BunMorphism) -> Result<BunMorphism> {
    if m.target != n.source {
        return Err(mismatch("bundle morphisms are not composable"));
    }
    Ok(BunMorphism {
        source: m.source.clone(),
        target: n.target.clone(),
        base_map: compose(&n.base_map, &m.base_map)?,
        total_map: compose(&n.total_map, &m.total_map)?,
    })
}

/// `|Bun(π, π')|`, summing over base maps.
pub fn bun_hom_count(pi: &Bundle, rho: &Bundle) -> BigUint {
    let sizes = rho.fiber_sizes();
    maps(pi.base(), rho.base())
        .map(|f| {
            pi.proj
                .map()
                .iter()
                .map(|&j| BigUint::from(sizes[f.apply(j)]))
                .product::<BigUint>()
        })
        .fold(BigUint::zero(), |acc, n| acc + n)
}

/// Enumerates `Bun(π, π')` ordered by base map, then total map.
pub fn bun_hom_iter(pi: &Bundle, rho: &Bundle) -> impl Iterator<Item = BunMorphism> {
    let (pi, rho) = (pi.clone(), rho.clone());
    let target_fibers = rho.fibers();
    maps(pi.base(), rho.base()).flat_map(move |f| {
        let choices: Vec<&Vec<usize>> = pi
            .proj
            .map()
            .iter()
            .map(|&j| &target_fibers[f.apply(j)])
            .collect();
        let radices = choices.iter().map(|c| c.len()).collect();
        let total: Vec<Vec<usize>> = MixedRadix::new(radices)
            .map(|digits| digits.iter().zip(&choices).map(|(&d, c)| c[d]).collect())
            .collect();
        let (pi, rho) = (pi.clone(), rho.clone());
        total.into_iter().map(move |map| BunMorphism {
            source: pi.clone(),
            target: rho.clone(),
            base_map: f.clone(),
            total_map: FinFunction::from_parts_unchecked(map.len(), rho.total().size(), map),
        })
    })
}

pub fn bun_hom_enumerate(pi: &Bundle, rho: &Bundle, budget: Budget) -> Result<Vec<BunMorphism>> {
    budget.check(&bun_hom_count(pi, rho))?;
    Ok(bun_hom_iter(pi, rho).collect())
}

#[derive(Serialize, Deserialize)]
struct RawContMorphism {
    source: Bundle,
    target: Bundle,
    base_map: FinFunction,
    pull_maps: Vec<FinFunction>,
}

/// A base map `f : t -> t'` with maps `fiber'(f(j)) -> fiber(j)` in local
/// indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawContMorphism", into = "RawContMorphism")]
pub struct ContMorphism {
    source: Bundle,
    target: Bundle,
    base_map: FinFunction,
    pull_maps: Vec<FinFunction>,
}

impl TryFrom<RawContMorphism> for ContMorphism {
    type Error = Error;

    fn try_from(raw: RawContMorphism) -> Result<Self> {
        ContMorphism::new(raw.source, raw.target, raw.base_map, raw.pull_maps)
    }
}

impl From<ContMorphism> for RawContMorphism {
    fn from(m: ContMorphism) -> Self {
        RawContMorphism {
            source: m.source,
            target: m.target,
            base_map: m.base_map,
            pull_maps: m.pull_maps,
        }
    }
}

impl ContMorphism {
    pub fn new(
        source: Bundle,
        target: Bundle,
        base_map: FinFunction,
        pull_maps: Vec<FinFunction>,
    ) -> Result<Self> {
        if base_map.dom() != source.base() || base_map.cod() != target.base() {
            return Err(mismatch("base map does not go t -> t'"));
        }
        if pull_maps.len() != source.base().size() {
            return Err(mismatch("need one pull map per base point"));
        }
        let (own, theirs) = (source.fiber_sizes(), target.fiber_sizes());
        for (j, g) in pull_maps.iter().enumerate() {
            if g.dom().size() != theirs[base_map.apply(j)] || g.cod().size() != own[j] {
                return Err(mismatch(format!(
                    "pull map over {} must go {} -> {}",
                    j + 1,
                    theirs[base_map.apply(j)],
                    own[j]
                )));
            }
        }
        Ok(ContMorphism {
            source,
            target,
            base_map,
            pull_maps,
        })
    }

    pub fn identity(pi: &Bundle) -> Self {
        ContMorphism {
            source: pi.clone(),
            target: pi.clone(),
            base_map: FinFunction::identity(pi.base().size()),
            pull_maps: pi
                .fiber_sizes()
                .into_iter()
                .map(FinFunction::identity)
                .collect(),
        }
    }

    pub fn source(&self) -> &Bundle {
        &self.source
    }

    pub fn target(&self) -> &Bundle {
        &self.target
    }

    pub fn base_map(&self) -> &FinFunction {
        &self.base_map
    }

    pub fn pull_maps(&self) -> &[FinFunction] {
        &self.pull_maps
    }

    pub fn is_cartesian(&self) -> bool {
        self.pull_maps.iter().all(FinFunction::is_bijective)
    }
}

/// `n ∘ m`; pull maps compose contravariantly.
pub fn compose_cont(n: &ContMorphism, m: &ContMorphism) -> Result<ContMorphism> {
    if m.target != n.source {
        return Err(mismatch("container morphisms are not composable"));
    }
    let pull_maps = (0..m.source.base().size())
        .map(|j| compose(&m.pull_maps[j], &n.pull_maps[m.base_map.apply(j)]))
        .collect::<Result<_>>()?;
    Ok(ContMorphism {
        source: m.source.clone(),
        target: n.target.clone(),
        base_map: compose(&n.base_map, &m.base_map)?,
        pull_maps,
    })
}

/// `|Cont(π, π')|`, summing over base maps.
pub fn cont_hom_count(pi: &Bundle, rho: &Bundle) -> BigUint {
    let (own, theirs) = (pi.fiber_sizes(), rho.fiber_sizes());
    maps(pi.base(), rho.base())
        .map(|f| {
            (0..own.len())
                .map(|j| big_pow(own[j], theirs[f.apply(j)]))
                .product::<BigUint>()
        })
        .fold(BigUint::zero(), |acc, n| acc + n)
}

pub fn cont_hom_iter(pi: &Bundle, rho: &Bundle) -> impl Iterator<Item = ContMorphism> {
    let (pi, rho) = (pi.clone(), rho.clone());
    let (own, theirs) = (pi.fiber_sizes(), rho.fiber_sizes());
    maps(pi.base(), rho.base()).flat_map(move |f| {
        let shapes: Vec<(usize, usize)> = (0..own.len())
            .map(|j| (theirs[f.apply(j)], own[j]))
            .collect();
        let radices = shapes
            .iter()
            .map(|&(d, c)| c.pow(u32::try_from(d).expect("small fiber")))
            .collect();
        let (pi, rho) = (pi.clone(), rho.clone());
        MixedRadix::new(radices).map(move |digits| ContMorphism {
            source: pi.clone(),
            target: rho.clone(),
            base_map: f.clone(),
            pull_maps: digits
                .iter()
                .zip(&shapes)
                .map(|(&r, &(d, c))| FinFunction::from_lex_rank(d, c, r))
                .collect(),
        })
    })
}

pub fn cont_hom_enumerate(pi: &Bundle, rho: &Bundle, budget: Budget) -> Result<Vec<ContMorphism>> {
    budget.check(&cont_hom_count(pi, rho))?;
    Ok(cont_hom_iter(pi, rho).collect())
}

/// Term order of a bundle's base points in `D_π` / `P_π`.
struct TermOrder {
    sizes: Vec<usize>,
    /// Term index of each base point.
    position: Vec<usize>,
    /// Base point at each term index.
    labels: Vec<usize>,
}

impl TermOrder {
    fn of(pi: &Bundle) -> Self {
        let (sizes, position, labels) = canonical_order(&pi.fiber_sizes());
        TermOrder {
            sizes,
            position,
            labels,
        }
    }
}

/// `D_- : Bun -> Dir` on morphisms.
pub fn functor_d(m: &BunMorphism) -> DirMorphism {
    let (src, tgt) = (TermOrder::of(&m.source), TermOrder::of(&m.target));
    let fiber_maps = m.fiber_maps();
    let on_terms = src
        .labels
        .iter()
        .map(|&j| tgt.position[m.base_map.apply(j)])
        .collect();
    let on_bases = src.labels.iter().map(|&j| fiber_maps[j].clone()).collect();
    DirMorphism::from_parts_unchecked(
        Dir::new(src.sizes.clone()),
        Dir::new(tgt.sizes.clone()),
        FinFunction::from_parts_unchecked(src.labels.len(), tgt.labels.len(), on_terms),
        on_bases,
    )
}

/// The bundle morphism `source -> target` that `D_-` sends to `n`.
pub fn functor_d_inverse_between(
    n: &DirMorphism,
    source: &Bundle,
    target: &Bundle,
) -> Result<BunMorphism> {
    if &dir_of_bundle(source) != n.source() || &dir_of_bundle(target) != n.target() {
        return Err(mismatch("bundles do not match the morphism's ends"));
    }
    let (src, tgt) = (TermOrder::of(source), TermOrder::of(target));
    let target_fibers = target.fibers();
    let base_map: Vec<usize> = (0..source.base().size())
        .map(|j| tgt.labels[n.on_terms().apply(src.position[j])])
        .collect();
    let local = source.local_index();
    let total_map = source
        .proj
        .map()
        .iter()
        .zip(&local)
        .map(|(&j, &l)| {
            let pushed = n.on_bases()[src.position[j]].apply(l);
            target_fibers[base_map[j]][pushed]
        })
        .collect();
    Ok(BunMorphism::from_parts_unchecked(
        source.clone(),
        target.clone(),
        FinFunction::from_parts_unchecked(source.base().size(), target.base().size(), base_map),
        FinFunction::from_parts_unchecked(source.total().size(), target.total().size(), total_map),
    ))
}

/// Inverse of [`functor_d`] onto the canonical bundles of the two ends.
pub fn functor_d_inverse(n: &DirMorphism) -> BunMorphism {
    functor_d_inverse_between(n, &bundle_of_dir(n.source()), &bundle_of_dir(n.target()))
        .expect("canonical bundles match")
}

/// `P_- : Cont -> Poly` on morphisms.
pub fn functor_p(m: &ContMorphism) -> PolyMorphism {
    let (src, tgt) = (TermOrder::of(&m.source), TermOrder::of(&m.target));
    let on_positions = src
        .labels
        .iter()
        .map(|&j| tgt.position[m.base_map.apply(j)])
        .collect();
    let on_directions = src.labels.iter().map(|&j| m.pull_maps[j].clone()).collect();
    PolyMorphism::from_parts_unchecked(
        Poly::new(src.sizes.clone()),
        Poly::new(tgt.sizes.clone()),
        FinFunction::from_parts_unchecked(src.labels.len(), tgt.labels.len(), on_positions),
        on_directions,
    )
}

pub fn functor_p_inverse_between(
    n: &PolyMorphism,
    source: &Bundle,
    target: &Bundle,
) -> Result<ContMorphism> {
    if &poly_of_bundle(source) != n.source() || &poly_of_bundle(target) != n.target() {
        return Err(mismatch("bundles do not match the morphism's ends"));
    }
    let (src, tgt) = (TermOrder::of(source), TermOrder::of(target));
    let base_map: Vec<usize> = (0..source.base().size())
        .map(|j| tgt.labels[n.on_positions().apply(src.position[j])])
        .collect();
    let pull_maps = (0..source.base().size())
        .map(|j| n.on_directions()[src.position[j]].clone())
        .collect();
    Ok(ContMorphism {
        source: source.clone(),
        target: target.clone(),
        base_map: FinFunction::from_parts_unchecked(
            source.base().size(),
            target.base().size(),
            base_map,
        ),
        pull_maps,
    })
}

pub fn functor_p_inverse(n: &PolyMorphism) -> ContMorphism {
    functor_p_inverse_between(n, &bundle_of_poly(n.source()), &bundle_of_poly(n.target()))
        .expect("canonical bundles match")
}

/// A morphism in any of the four equivalent categories.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnyMorphism {
    Poly(PolyMorphism),
    Dir(DirMorphism),
    Bun(BunMorphism),
    Cont(ContMorphism),
}

impl AnyMorphism {
    pub fn is_cartesian(&self) -> bool {
        match self {
            AnyMorphism::Poly(m) => m.is_cartesian(),
            AnyMorphism::Dir(m) => m.is_cartesian(),
            AnyMorphism::Bun(m) => m.is_cartesian(),
            AnyMorphism::Cont(m) => m.is_cartesian(),
        }
    }
}

/// Moves a cartesian morphism across `Poly_cart ≃ Dir_cart` or
/// `Bun_cart ≃ Cont_cart`, keeping the base map and inverting the fiber
/// bijections.
pub fn cart_equivalence(m: &AnyMorphism) -> Result<AnyMorphism> {
    if !m.is_cartesian() {
        return Err(Error::NotCartesian);
    }
    let invert = |fs: &[FinFunction]| -> Vec<FinFunction> {
        fs.iter()
            .map(|g| g.inverse().expect("cartesian maps are bijective"))
            .collect()
    };
    Ok(match m {
        AnyMorphism::Poly(p) => AnyMorphism::Dir(DirMorphism::from_parts_unchecked(
            dirichlet_transform(p.source()),
            dirichlet_transform(p.target()),
            p.on_positions().clone(),
            invert(p.on_directions()),
        )),
        AnyMorphism::Dir(d) => AnyMorphism::Poly(PolyMorphism::from_parts_unchecked(
            inverse_transform(d.source()),
            inverse_transform(d.target()),
            d.on_terms().clone(),
            invert(d.on_bases()),
        )),
        AnyMorphism::Bun(b) => AnyMorphism::Cont(ContMorphism {
            source: b.source.clone(),
            target: b.target.clone(),
            base_map: b.base_map.clone(),
            pull_maps: invert(&b.fiber_maps()),
        }),
        AnyMorphism::Cont(c) => {
            let target_fibers = c.target.fibers();
            let pushes = invert(&c.pull_maps);
            let local = c.source.local_index();
            let total_map = c
                .source
                .proj
                .map()
                .iter()
                .zip(&local)
                .map(|(&j, &l)| target_fibers[c.base_map.apply(j)][pushes[j].apply(l)])
                .collect();
            AnyMorphism::Bun(BunMorphism {
                source: c.source.clone(),
                target: c.target.clone(),
                base_map: c.base_map.clone(),
                total_map: FinFunction::from_parts_unchecked(
                    c.source.total().size(),
                    c.target.total().size(),
                    total_map,
                ),
            })
        }
    })
}

/// `f^*(π')` for `f : t -> t'`: elements are pairs `(j, x')` with
/// `f(j) = π'(x')`, lexicographically ordered.
pub fn pullback_bundle(f: &FinFunction, rho: &Bundle) -> Result<(Bundle, finset::WidePullback)> {
    let square = finset::pullback(f, &rho.proj)?;
    let bundle = Bundle::new(square.projections[0].clone());
    Ok((bundle, square))
}

/// Vertical/cartesian factorization of a bundle morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// `π -> f^*(π')` over the identity of `t`.
    pub vertical: BunMorphism,
    /// `f^*(π') -> π'` over `f`.
    pub cartesian: BunMorphism,
}

/// Factors `m` through the pullback `f^*(π')`.
pub fn factorize(m: &BunMorphism) -> Factorization {
    let (middle, square) = pullback_bundle(&m.base_map, &m.target).expect("f and π' share t'");
    let vertical_total = m
        .source
        .proj
        .map()
        .iter()
        .zip(m.total_map.map())
        .map(|(&j, &x)| square.index_of(&[j, x]).expect("square commutes"))
        .collect();
    let vertical = BunMorphism {
        source: m.source.clone(),
        target: middle.clone(),
        base_map: FinFunction::identity(m.source.base().size()),
        total_map: FinFunction::from_parts_unchecked(
            m.source.total().size(),
            middle.total().size(),
            vertical_total,
        ),
    };
    let cartesian = BunMorphism {
        source: middle,
        target: m.target.clone(),
        base_map: m.base_map.clone(),
        total_map: square.projections[1].clone(),
    };
    Factorization {
        vertical,
        cartesian,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq10() -> Bundle {
        Bundle::canonical(&[3, 3, 2, 0, 0, 0])
    }

    #[test]
    fn transform() {
        assert_eq!(
            dirichlet_transform(&Poly::new([3, 3, 2, 0, 0, 0])),
            Dir::new([3, 3, 2, 0, 0, 0])
        );
        assert_eq!(dirichlet_transform(&Poly::y()), Dir::one());
        assert_eq!(inverse_transform(&Dir::one()), Poly::y());
    }

    #[test]
    fn object_correspondence() {
        let pi = eq10();
        assert_eq!((pi.total().size(), pi.base().size()), (8, 6));
        assert_eq!(dir_of_bundle(&pi), Dir::new([3, 3, 2, 0, 0, 0]));
        assert_eq!(poly_of_bundle(&pi), Poly::new([3, 3, 2, 0, 0, 0]));
        assert_eq!(bundle_of_dir(&dir_of_bundle(&pi)), pi);
        assert_eq!(bundle_of_poly(&poly_of_bundle(&pi)), pi);
        assert_eq!(dir_of_bundle(&Bundle::bang(3)), Dir::representable(3));
        assert_eq!(poly_of_bundle(&Bundle::bang(3)), Poly::monomial(3));
        assert_eq!(dir_of_bundle(&Bundle::identity(0)), Dir::zero());
        assert!(pi.is_canonical());
        assert!(!Bundle::from_map(2, 2, vec![1, 0]).unwrap().is_canonical());
        assert!(!Bundle::from_map(3, 2, vec![0, 1, 1])
            .unwrap()
            .is_canonical());
    }

    #[test]
    fn fibers_and_local_indices() {
        let pi = Bundle::from_map(4, 2, vec![1, 0, 1, 1]).unwrap();
        assert_eq!(pi.fibers(), vec![vec![1], vec![0, 2, 3]]);
        assert_eq!(pi.local_index(), vec![0, 0, 1, 2]);
        assert_eq!(pi.canonical_form(), Bundle::canonical(&[3, 1]));
    }

    #[test]
    fn hom_sets_from_the_point_bundles() {
        let pi = eq10();
        assert_eq!(cont_hom_iter(&Bundle::bang(2), &pi).count(), 23);
        assert_eq!(bun_hom_iter(&Bundle::bang(2), &pi).count(), 22);
        assert_eq!(cont_hom_count(&Bundle::bang(2), &pi), BigUint::from(23u32));
        assert_eq!(bun_hom_count(&Bundle::bang(2), &pi), BigUint::from(22u32));
    }

    #[test]
    fn hom_counts_match_the_other_side() {
        let bundles = Bundle::all_up_to(2, 2);
        for a in &bundles {
            for b in &bundles {
                assert_eq!(
                    bun_hom_count(a, b),
                    crate::dir::hom_count(&dir_of_bundle(a), &dir_of_bundle(b))
                );
                assert_eq!(
                    cont_hom_count(a, b),
                    crate::poly::hom_count(&poly_of_bundle(a), &poly_of_bundle(b))
                );
            }
        }
    }

    #[test]
    fn cartesian_bundle_maps() {
        let pi = Bundle::canonical(&[2, 1]);
        assert!(BunMorphism::identity(&pi).is_cartesian());
        let swap = BunMorphism::new(
            pi.clone(),
            pi.clone(),
            FinFunction::identity(2),
            FinFunction::new(3, 3, vec![1, 0, 2]).unwrap(),
        )
        .unwrap();
        assert!(swap.is_cartesian() && swap.is_pullback_square());
        let collapse = BunMorphism::new(
            pi.clone(),
            pi.clone(),
            FinFunction::identity(2),
            FinFunction::new(3, 3, vec![0, 0, 2]).unwrap(),
        )
        .unwrap();
        assert!(!collapse.is_cartesian() && !collapse.is_pullback_square());
        let broken = BunMorphism::new(
            pi.clone(),
            pi,
            FinFunction::identity(2),
            FinFunction::new(3, 3, vec![2, 0, 1]).unwrap(),
        );
        assert!(broken.is_err());
    }

    #[test]
    fn factorization() {
        for a in Bundle::all_up_to(3, 2) {
            for b in Bundle::all_up_to(2, 2) {
                for m in bun_hom_iter(&a, &b) {
                    let Factorization {
                        vertical,
                        cartesian,
                    } = factorize(&m);
                    assert_eq!(vertical.base_map(), &FinFunction::identity(a.base().size()));
                    assert!(cartesian.is_cartesian());
                    assert_eq!(compose_bun(&cartesian, &vertical).unwrap(), m);
                    if m.is_cartesian() {
                        assert!(vertical.is_cartesian());
                    }
                }
            }
        }
    }

    #[test]
    fn functors_invert() {
        let bundles = Bundle::all_up_to(2, 2);
        for a in &bundles {
            for b in &bundles {
                for m in bun_hom_iter(a, b) {
                    assert_eq!(functor_d_inverse_between(&functor_d(&m), a, b).unwrap(), m);
                }
                for m in cont_hom_iter(a, b) {
                    assert_eq!(functor_p_inverse_between(&functor_p(&m), a, b).unwrap(), m);
                }
            }
        }
        let n = DirMorphism::identity(&Dir::new([2, 1]));
        assert_eq!(functor_d(&functor_d_inverse(&n)), n);
        let wrong = functor_d_inverse_between(&n, &Bundle::bang(3), &Bundle::bang(3));
        assert!(wrong.is_err());
    }

    #[test]
    fn cartesian_transfer() {
        // 1 -> 2 into a two-term bundle, cartesian over f = ['2']
        let one = Bundle::canonical(&[1]);
        let two = Bundle::canonical(&[2, 1]);
        let m = BunMorphism::new(
            one.clone(),
            two.clone(),
            FinFunction::new(1, 2, vec![1]).unwrap(),
            FinFunction::new(1, 3, vec![2]).unwrap(),
        )
        .unwrap();
        let d = functor_d(&m);
        assert!(d.is_cartesian());
        assert_eq!(d.on_terms().map(), &[1]);
        let AnyMorphism::Poly(p) = cart_equivalence(&AnyMorphism::Dir(d.clone())).unwrap() else {
            panic!("expected a Poly morphism");
        };
        assert_eq!(p.on_positions().map(), &[1]);
        assert!(p.is_cartesian());
        assert_eq!(
            cart_equivalence(&AnyMorphism::Poly(p)).unwrap(),
            AnyMorphism::Dir(d)
        );

        let not = BunMorphism::new(
            Bundle::canonical(&[2]),
            two,
            FinFunction::new(1, 2, vec![0]).unwrap(),
            FinFunction::new(2, 3, vec![0, 0]).unwrap(),
        )
        .unwrap();
        assert_eq!(
            cart_equivalence(&AnyMorphism::Bun(not)),
            Err(Error::NotCartesian)
        );
        let id = AnyMorphism::Cont(ContMorphism::identity(&one));
        assert_eq!(
            cart_equivalence(&id).unwrap(),
            AnyMorphism::Bun(BunMorphism::identity(&one))
        );
    }

    #[test]
    fn coproducts_sum_pointwise() {
        let (a, b) = (
            Bundle::canonical(&[2, 0]),
            Bundle::from_map(3, 2, vec![1, 1, 0]).unwrap(),
        );
        let s = a.coproduct(&b);
        assert_eq!(dir_of_bundle(&s), dir_of_bundle(&a).add(&dir_of_bundle(&b)));
        assert_eq!(
            poly_of_bundle(&s),
            poly_of_bundle(&a).add(&poly_of_bundle(&b))
        );
    }

    #[test]
    fn json_forms() {
        let pi: Bundle = serde_json::from_str(r#"{"total":3,"base":2,"proj":[0,0,1]}"#).unwrap();
        assert_eq!(pi, Bundle::canonical(&[2, 1]));
        assert!(serde_json::from_str::<Bundle>(r#"{"total":2,"base":1,"proj":[0,1]}"#).is_err());
        let m = ContMorphism::identity(&pi);
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<ContMorphism>(&text).unwrap(), m);
        let b = BunMorphism::identity(&pi);
        let text = serde_json::to_string(&b).unwrap();
        assert!(text.contains("total_map") && text.contains("base_map"));
        assert_eq!(serde_json::from_str::<BunMorphism>(&text).unwrap(), b);
    }
}
