//! The skeletal category of finite sets.
//!
//! A finite set is just its size `n`, with elements `0..n`. Functions are
//! stored as their value tables. Every construction here produces its
//! elements in a fixed canonical order (lexicographic for maps and tuples,
//! least representative for quotients) so results can be compared as values.
//! Human-facing output shifts indices by one, so element `0` prints as `'1'`.

use std::fmt;
use std::ops::Range;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{mismatch, Error, Result};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Upper bound on the number of items an enumeration may produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub const UNLIMITED: Budget = Budget(u64::MAX);

    /// Returns `needed` as a `usize` if it fits in the budget.
    pub fn check(self, needed: &BigUint) -> Result<usize> {
        let fits = needed.to_u64().is_some_and(|n| n <= self.0);
        match (fits, needed.to_usize()) {
            (true, Some(n)) => Ok(n),
            _ => Err(Error::BudgetExceeded {
                needed: needed.clone(),
                budget: self.0,
            }),
        }
    }
}

/// `base^exp` with `0^0 = 1`.
pub fn big_pow(base: usize, exp: usize) -> BigUint {
    let exp = u32::try_from(exp).expect("exponent fits in u32");
    BigUint::from(base).pow(exp)
}

/// The finite set `{0, .., n-1}`.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FinSet(usize);

impl FinSet {
    pub const EMPTY: FinSet = FinSet(0);
    pub const POINT: FinSet = FinSet(1);

    pub const fn new(size: usize) -> Self {
        FinSet(size)
    }

    pub const fn size(self) -> usize {
        self.0
    }

    pub fn elements(self) -> Range<usize> {
        0..self.0
    }

    pub fn contains(self, x: usize) -> bool {
        x < self.0
    }

    /// Display label of an element: `0` is shown as `'1'`.
    pub fn label(x: usize) -> String {
        format!("'{}'", x + 1)
    }
}

impl From<usize> for FinSet {
    fn from(n: usize) -> Self {
        FinSet(n)
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Serialize, Deserialize)]
struct RawFinFunction {
    dom: usize,
    cod: usize,
    map: Vec<usize>,
}

/// A total function between finite sets, stored as its table of values.
///
/// The derived ordering compares `(dom, cod)` first and then the value table
/// lexicographically, which is the order [`enumerate_maps`] produces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawFinFunction", into = "RawFinFunction")]
pub struct FinFunction {
    dom: FinSet,
    cod: FinSet,
    map: Vec<usize>,
}

impl TryFrom<RawFinFunction> for FinFunction {
    type Error = Error;

    fn try_from(raw: RawFinFunction) -> Result<Self> {
        FinFunction::new(raw.dom, raw.cod, raw.map)
    }
}

impl From<FinFunction> for RawFinFunction {
    fn from(f: FinFunction) -> Self {
        RawFinFunction {
            dom: f.dom.0,
            cod: f.cod.0,
            map: f.map,
        }
    }
}

impl FinFunction {
    pub fn new(dom: usize, cod: usize, map: Vec<usize>) -> Result<Self> {
        if map.len() != dom {
            return Err(Error::DomainMismatch {
                expected: dom,
                found: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= cod) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                size: cod,
            });
        }
        Ok(Self::from_parts_unchecked(dom, cod, map))
    }

    /// A function whose domain is the length of `map`.
    pub fn from_map(cod: usize, map: Vec<usize>) -> Result<Self> {
        Self::new(map.len(), cod, map)
    }

    pub(crate) fn from_parts_unchecked(dom: usize, cod: usize, map: Vec<usize>) -> Self {
        debug_assert_eq!(map.len(), dom);
        debug_assert!(map.iter().all(|&v| v < cod));
        FinFunction {
            dom: FinSet(dom),
            cod: FinSet(cod),
            map,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_parts_unchecked(n, n, (0..n).collect())
    }

    /// The unique map `X -> 1`.
    pub fn bang(dom: usize) -> Self {
        Self::from_parts_unchecked(dom, 1, vec![0; dom])
    }

    /// The unique map `0 -> X`.
    pub fn empty(cod: usize) -> Self {
        Self::from_parts_unchecked(0, cod, Vec::new())
    }

    pub fn constant(dom: usize, cod: usize, value: usize) -> Result<Self> {
        Self::new(dom, cod, vec![value; dom])
    }

    pub fn dom(&self) -> FinSet {
        self.dom
    }

    pub fn cod(&self) -> FinSet {
        self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn into_map(self) -> Vec<usize> {
        self.map
    }

    /// Value at `x`. Panics if `x` is outside the domain.
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.map.get(x).copied()
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &FinFunction) -> Result<FinFunction> {
        compose(self, f)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.0];
        self.map
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.0];
        for &v in &self.map {
            hit[v] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom == self.cod && self.is_injective()
    }

    pub fn inverse(&self) -> Option<FinFunction> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.dom.0];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(Self::from_parts_unchecked(self.cod.0, self.dom.0, inv))
    }

    /// Sorted, deduplicated image.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// Position of this function in the lexicographic enumeration of
    /// `Fin(dom, cod)`. The caller must know `cod^dom` fits in a `usize`.
    pub fn lex_rank(&self) -> usize {
        lex_rank(&self.map, self.cod.0)
    }

    pub fn from_lex_rank(dom: usize, cod: usize, mut rank: usize) -> Self {
        let mut map = vec![0; dom];
        for slot in map.iter_mut().rev() {
            *slot = rank % cod;
            rank /= cod;
        }
        Self::from_parts_unchecked(dom, cod, map)
    }

    /// Fibers over every element of the codomain, each in increasing order.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); self.cod.0];
        for (x, &y) in self.map.iter().enumerate() {
            fibers[y].push(x);
        }
        fibers
    }
}

impl fmt::Display for FinFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (x, &y) in self.map.iter().enumerate() {
            if x > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}->{}", x + 1, y + 1)?;
        }
        write!(f, "}} : {} -> {}", self.dom, self.cod)
    }
}

pub(crate) fn lex_rank(map: &[usize], cod: usize) -> usize {
    map.iter().fold(0, |acc, &v| acc * cod + v)
}

/// Mixed-radix counter: yields every digit vector with `digits[k] < radices[k]`
/// in lexicographic order, the first digit most significant.
#[derive(Clone, Debug)]
pub struct MixedRadix {
    radices: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl MixedRadix {
    pub fn new(radices: Vec<usize>) -> Self {
        let next = if radices.contains(&0) {
            None
        } else {
            Some(vec![0; radices.len()])
        };
        MixedRadix { radices, next }
    }

    pub fn count(radices: &[usize]) -> BigUint {
        radices.iter().map(|&r| BigUint::from(r)).product()
    }
}

impl Iterator for MixedRadix {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for k in (0..succ.len()).rev() {
            succ[k] += 1;
            if succ[k] < self.radices[k] {
                self.next = Some(succ);
                return Some(current);
            }
            succ[k] = 0;
        }
        Some(current)
    }
}

/// Lazily enumerates `Fin(a, b)` in lexicographic order.
pub fn maps(a: FinSet, b: FinSet) -> impl Iterator<Item = FinFunction> {
    MixedRadix::new(vec![b.0; a.0])
        .map(move |digits| FinFunction::from_parts_unchecked(a.0, b.0, digits))
}

/// All `b^a` functions `a -> b`, lexicographically ordered.
pub fn enumerate_maps(a: FinSet, b: FinSet, budget: Budget) -> Result<Vec<FinFunction>> {
    budget.check(&big_pow(b.0, a.0))?;
    Ok(maps(a, b).collect())
}

/// `g ∘ f`.
pub fn compose(g: &FinFunction, f: &FinFunction) -> Result<FinFunction> {
    if f.cod != g.dom {
        return Err(Error::DomainMismatch {
            expected: g.dom.0,
            found: f.cod.0,
        });
    }
    let map = f.map.iter().map(|&x| g.map[x]).collect();
    Ok(FinFunction::from_parts_unchecked(f.dom.0, g.cod.0, map))
}

/// The preimage of a point together with its inclusion into the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub set: FinSet,
    pub embedding: FinFunction,
}

pub fn fiber(f: &FinFunction, y: usize) -> Result<Fiber> {
    if !f.cod.contains(y) {
        return Err(Error::IndexOutOfRange {
            index: y,
            size: f.cod.0,
        });
    }
    let members: Vec<usize> = (0..f.dom.0).filter(|&x| f.map[x] == y).collect();
    Ok(Fiber {
        set: FinSet(members.len()),
        embedding: FinFunction::from_parts_unchecked(members.len(), f.dom.0, members),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    pub set: FinSet,
    pub proj_a: FinFunction,
    pub proj_b: FinFunction,
}

impl Product {
    /// Index of the pair `(x, y)`.
    pub fn pair(&self, x: usize, y: usize) -> usize {
        x * self.proj_b.cod().0 + y
    }
}

/// `a × b` with `(x, y) ↦ x·b + y`.
pub fn product(a: FinSet, b: FinSet) -> Product {
    let n = a.0 * b.0;
    let proj_a = (0..n).map(|z| z / b.0).collect();
    let proj_b = (0..n).map(|z| z % b.0).collect();
    Product {
        set: FinSet(n),
        proj_a: FinFunction::from_parts_unchecked(n, a.0, proj_a),
        proj_b: FinFunction::from_parts_unchecked(n, b.0, proj_b),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coproduct {
    pub set: FinSet,
    pub inj_a: FinFunction,
    pub inj_b: FinFunction,
}

/// `a + b` with the `a` block first.
pub fn coproduct(a: FinSet, b: FinSet) -> Coproduct {
    let n = a.0 + b.0;
    Coproduct {
        set: FinSet(n),
        inj_a: FinFunction::from_parts_unchecked(a.0, n, (0..a.0).collect()),
        inj_b: FinFunction::from_parts_unchecked(b.0, n, (a.0..n).collect()),
    }
}

/// Limit of a family of maps into a common codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidePullback {
    pub set: FinSet,
    pub projections: Vec<FinFunction>,
    /// Element `k` is the tuple `tuples[k]`; tuples are lexicographically sorted.
    pub tuples: Vec<Vec<usize>>,
}

impl WidePullback {
    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.tuples
            .binary_search_by(|t| t.as_slice().cmp(tuple))
            .ok()
    }
}

pub fn wide_pullback(legs: &[FinFunction]) -> Result<WidePullback> {
    let first = legs.first().ok_or(Error::EmptyLegList)?;
    let apex = first.cod;
    if let Some(bad) = legs.iter().find(|l| l.cod != apex) {
        return Err(mismatch(format!(
            "wide pullback legs have codomains {} and {}",
            apex, bad.cod
        )));
    }
    let fibers: Vec<Vec<Vec<usize>>> = legs.iter().map(FinFunction::fibers).collect();
    let mut tuples = Vec::new();
    let mut current = Vec::with_capacity(legs.len());
    for x in first.dom.elements() {
        current.push(x);
        extend_tuples(&fibers[1..], first.map[x], &mut current, &mut tuples);
        current.pop();
    }
    let n = tuples.len();
    let projections = legs
        .iter()
        .enumerate()
        .map(|(k, leg)| {
            let map = tuples.iter().map(|t| t[k]).collect();
            FinFunction::from_parts_unchecked(n, leg.dom.0, map)
        })
        .collect();
    Ok(WidePullback {
        set: FinSet(n),
        projections,
        tuples,
    })
}

fn extend_tuples(
    fibers: &[Vec<Vec<usize>>],
    over: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    match fibers.split_first() {
        None => out.push(current.clone()),
        Some((head, rest)) => {
            for &x in &head[over] {
                current.push(x);
                extend_tuples(rest, over, current, out);
                current.pop();
            }
        }
    }
}

/// Binary pullback of `f` and `g`.
pub fn pullback(f: &FinFunction, g: &FinFunction) -> Result<WidePullback> {
    wide_pullback(&[f.clone(), g.clone()])
}

/// Colimit of a family of maps out of a common domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidePushout {
    pub set: FinSet,
    pub injections: Vec<FinFunction>,
}

pub fn wide_pushout(legs: &[FinFunction]) -> Result<WidePushout> {
    let first = legs.first().ok_or(Error::EmptyLegList)?;
    let source = first.dom;
    if let Some(bad) = legs.iter().find(|l| l.dom != source) {
        return Err(mismatch(format!(
            "wide pushout legs have domains {} and {}",
            source, bad.dom
        )));
    }
    let mut offsets = Vec::with_capacity(legs.len());
    let mut total = 0;
    for leg in legs {
        offsets.push(total);
        total += leg.cod.0;
    }
    let mut classes = UnionFind::new(total);
    for x in source.elements() {
        let anchor = offsets[0] + first.map[x];
        for (leg, &off) in legs.iter().zip(&offsets).skip(1) {
            classes.union(anchor, off + leg.map[x]);
        }
    }
    let (n, labels) = classes.canonical_labels();
    let injections = legs
        .iter()
        .zip(&offsets)
        .map(|(leg, &off)| {
            let map = (0..leg.cod.0).map(|y| labels[off + y]).collect();
            FinFunction::from_parts_unchecked(leg.cod.0, n, map)
        })
        .collect();
    Ok(WidePushout {
        set: FinSet(n),
        injections,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equalizer {
    pub set: FinSet,
    pub inclusion: FinFunction,
}

pub fn equalizer(f: &FinFunction, g: &FinFunction) -> Result<Equalizer> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(mismatch("equalizer of maps with different shapes"));
    }
    let members: Vec<usize> = f.dom.elements().filter(|&x| f.map[x] == g.map[x]).collect();
    Ok(Equalizer {
        set: FinSet(members.len()),
        inclusion: FinFunction::from_parts_unchecked(members.len(), f.dom.0, members),
    })
}

/// Whether the commuting square
///
/// ```text
/// A --top--> B
/// |          |
/// left     right
/// v          v
/// C -bottom-> D
/// ```
///
/// is a pullback. A square that does not commute is not a pullback.
pub fn is_pullback_square(
    top: &FinFunction,
    left: &FinFunction,
    right: &FinFunction,
    bottom: &FinFunction,
) -> Result<bool> {
    if top.dom != left.dom
        || top.cod != right.dom
        || left.cod != bottom.dom
        || right.cod != bottom.cod
    {
        return Err(mismatch("square edges do not line up"));
    }
    let commutes = (0..top.dom.0).all(|a| right.map[top.map[a]] == bottom.map[left.map[a]]);
    if !commutes {
        return Ok(false);
    }
    let mut right_count = vec![0usize; right.cod.0];
    for &d in &right.map {
        right_count[d] += 1;
    }
    let corner: usize = bottom.map.iter().map(|&d| right_count[d]).sum();
    if corner != top.dom.0 {
        return Ok(false);
    }
    let width = left.cod.0;
    let mut codes: Vec<usize> = (0..top.dom.0)
        .map(|a| top.map[a] * width + left.map[a])
        .collect();
    codes.sort_unstable();
    Ok(codes.windows(2).all(|w| w[0] != w[1]))
}

/// Disjoint sets over `0..n` with union by size and path halving.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    /// Class count and a class label per element; classes are numbered in
    /// order of their least member.
    pub fn canonical_labels(&mut self) -> (usize, Vec<usize>) {
        let n = self.parent.len();
        let mut label_of_root = vec![usize::MAX; n];
        let mut labels = Vec::with_capacity(n);
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if label_of_root[r] == usize::MAX {
                label_of_root[r] = next;
                next += 1;
            }
            labels.push(label_of_root[r]);
        }
        (next, labels)
    }
}
