//! The category of polynomial functors `Fin -> Fin`.
//!
//! A polynomial `Σ_i y^{p_i}` is stored as its exponents in descending
//! order, so isomorphic polynomials are equal values. A morphism `P -> Q`
//! sends each position `i` of `P` to a position `f(i)` of `Q` and pulls the
//! directions back along `f♯_i : q_{f(i)} -> p_i`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{mismatch, Error, Result};
use crate::finset::{self, big_pow, compose, Budget, FinFunction, FinSet, MixedRadix};
use crate::sum::{canonical_order, sorted_desc, Evaluation};

#[derive(Serialize, Deserialize)]
struct RawPoly {
    poly: Vec<usize>,
}

/// A polynomial functor, as a descending multiset of exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "RawPoly", into = "RawPoly")]
pub struct Poly {
    exponents: Vec<usize>,
}

impl From<RawPoly> for Poly {
    fn from(raw: RawPoly) -> Self {
        Poly::new(raw.poly)
    }
}

impl From<Poly> for RawPoly {
    fn from(p: Poly) -> Self {
        RawPoly { poly: p.exponents }
    }
}

impl Poly {
    pub fn new(exponents: impl IntoIterator<Item = usize>) -> Self {
        Poly {
            exponents: sorted_desc(exponents.into_iter().collect()),
        }
    }

    /// The initial object: no terms.
    pub fn zero() -> Self {
        Poly::default()
    }

    /// The constant `1 = y^0`, terminal and the unit for `×`.
    pub fn one() -> Self {
        Poly::monomial(0)
    }

    /// `y`, the unit for `∘` and `⊗`.
    pub fn y() -> Self {
        Poly::monomial(1)
    }

    /// `y^k`.
    pub fn monomial(k: usize) -> Self {
        Poly { exponents: vec![k] }
    }

    /// The constant polynomial `n`.
    pub fn constant(n: usize) -> Self {
        Poly {
            exponents: vec![0; n],
        }
    }

    /// `n·y`.
    pub fn linear(n: usize) -> Self {
        Poly {
            exponents: vec![1; n],
        }
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn exponent(&self, position: usize) -> usize {
        self.exponents[position]
    }

    /// `P(1)`.
    pub fn positions(&self) -> usize {
        self.exponents.len()
    }

    /// `P(0)`, the constant term.
    pub fn constants(&self) -> usize {
        self.exponents.iter().filter(|&&p| p == 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.exponents.is_empty()
    }

    /// `(exponent, coefficient)` pairs, highest exponent first.
    pub fn coefficients(&self) -> Vec<(usize, usize)> {
        run_lengths(&self.exponents)
    }

    /// `|P(X)| = Σ_i X^{p_i}`.
    pub fn eval_count(&self, x: usize) -> BigUint {
        self.exponents.iter().map(|&p| big_pow(x, p)).sum()
    }

    /// `P(X)` with its element table; element `(i, h)` has `h : p_i -> X`.
    pub fn eval_obj(&self, x: FinSet, budget: Budget) -> Result<Evaluation> {
        Evaluation::new(self.exponents.iter().map(|&p| (p, x.size())), budget)
    }

    /// `P(g) : P(X) -> P(Y)`, sending `(i, h)` to `(i, g∘h)`.
    pub fn eval_map(&self, g: &FinFunction, budget: Budget) -> Result<FinFunction> {
        let from = self.eval_obj(g.dom(), budget)?;
        let to = self.eval_obj(g.cod(), budget)?;
        let map = from
            .elements()
            .map(|(i, h)| {
                let moved: Vec<usize> = h.map().iter().map(|&x| g.apply(x)).collect();
                to.index_of(i, &moved)
            })
            .collect();
        FinFunction::new(from.len(), to.len(), map)
    }

    /// Coproduct: multiset union.
    pub fn add(&self, other: &Poly) -> Poly {
        Poly::new(self.exponents.iter().chain(&other.exponents).copied())
    }

    /// Product: `y^a · y^b = y^{a+b}` termwise.
    pub fn multiply(&self, other: &Poly) -> Poly {
        Poly::new(
            self.exponents
                .iter()
                .flat_map(|&p| other.exponents.iter().map(move |&q| p + q)),
        )
    }

    /// `n`-fold coproduct `nP`.
    pub fn scale(&self, n: usize) -> Poly {
        Poly::new((0..n).flat_map(|_| self.exponents.iter().copied()))
    }

    /// `n`-fold product `P^n`; `P^0 = 1`.
    pub fn pow(&self, n: usize) -> Poly {
        (0..n).fold(Poly::one(), |acc, _| acc.multiply(self))
    }

    /// Composition product `P ∘ Q = Σ_i Q^{p_i}`.
    pub fn substitute(&self, q: &Poly) -> Poly {
        let mut out = Poly::zero();
        for &p in &self.exponents {
            out = out.add(&q.pow(p));
        }
        out
    }

    /// Dirichlet product `P ⊗ Q = Σ_{i,j} y^{p_i q_j}`.
    pub fn tensor(&self, other: &Poly) -> Poly {
        Poly::new(
            self.exponents
                .iter()
                .flat_map(|&p| other.exponents.iter().map(move |&q| p * q)),
        )
    }

    /// `Q ∘ (a·y)`: every term `y^{q_j}` picks up coefficient `a^{q_j}`.
    pub fn substitute_scaled(&self, a: usize, budget: Budget) -> Result<Poly> {
        let count: BigUint = self.exponents.iter().map(|&q| big_pow(a, q)).sum();
        budget.check(&count)?;
        Ok(Poly::new(self.exponents.iter().flat_map(|&q| {
            std::iter::repeat(q).take(a.pow(u32::try_from(q).expect("small exponent")))
        })))
    }

    /// Internal hom for `⊗`: `[A, Q] = Π_i Q ∘ (a_i·y)`.
    pub fn internal_hom(a: &Poly, q: &Poly, budget: Budget) -> Result<Poly> {
        budget.check(&hom_count(a, q))?;
        a.exponents.iter().try_fold(Poly::one(), |acc, &ai| {
            Ok(acc.multiply(&q.substitute_scaled(ai, budget)?))
        })
    }

    /// Cartesian exponential `Q^A = Π_i Q ∘ (a_i + y)`.
    pub fn power(q: &Poly, a: &Poly, budget: Budget) -> Result<Poly> {
        let mut count = BigUint::one();
        for &ai in &a.exponents {
            count *= q.eval_count(ai + 1);
        }
        budget.check(&count)?;
        Ok(a.exponents.iter().fold(Poly::one(), |acc, &ai| {
            let shifted = Poly::constant(ai).add(&Poly::y());
            acc.multiply(&q.substitute(&shifted))
        }))
    }

    /// `Γ(P) = Π_i p_i`, the number of maps `P -> y`.
    pub fn global_sections(&self) -> BigUint {
        self.exponents.iter().map(|&p| BigUint::from(p)).product()
    }

    /// The unit `η_P : P -> P(1)` onto the constant polynomial on positions.
    pub fn position_unit(&self) -> PolyMorphism {
        let n = self.positions();
        PolyMorphism {
            source: self.clone(),
            target: Poly::constant(n),
            on_positions: FinFunction::identity(n),
            on_directions: self
                .exponents
                .iter()
                .map(|&p| FinFunction::empty(p))
                .collect(),
        }
    }

    /// Splits `P` as `Σ_i P ×_{P(1)} 'i'`: the `i`-th part is the pullback
    /// of the position unit along the point `'i' : 1 -> P(1)`.
    pub fn decompose(&self) -> Vec<(usize, Poly)> {
        let unit = self.position_unit();
        (0..self.positions())
            .map(|i| {
                let point = PolyMorphism {
                    source: Poly::one(),
                    target: unit.target.clone(),
                    on_positions: FinFunction::from_parts_unchecked(1, self.positions(), vec![i]),
                    on_directions: vec![FinFunction::empty(0)],
                };
                let part = pullback_poly(&unit, &point).expect("cospan over P(1)");
                (i, part.apex)
            })
            .collect()
    }
}

pub(crate) fn run_lengths(sorted: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &e in sorted {
        match out.last_mut() {
            Some((last, count)) if *last == e => *count += 1,
            _ => out.push((e, 1)),
        }
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::print_poly(self))
    }
}

#[derive(Serialize, Deserialize)]
struct RawPolyMorphism {
    source: Poly,
    target: Poly,
    on_positions: FinFunction,
    on_directions: Vec<FinFunction>,
}

/// A natural transformation `P -> Q`, as a position map plus a backwards
/// direction map `q_{f(i)} -> p_i` at every position `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPolyMorphism", into = "RawPolyMorphism")]
pub struct PolyMorphism {
    source: Poly,
    target: Poly,
    on_positions: FinFunction,
    on_directions: Vec<FinFunction>,
}

impl TryFrom<RawPolyMorphism> for PolyMorphism {
    type Error = Error;

    fn try_from(raw: RawPolyMorphism) -> Result<Self> {
        PolyMorphism::new(raw.source, raw.target, raw.on_positions, raw.on_directions)
    }
}

impl From<PolyMorphism> for RawPolyMorphism {
    fn from(m: PolyMorphism) -> Self {
        RawPolyMorphism {
            source: m.source,
            target: m.target,
            on_positions: m.on_positions,
            on_directions: m.on_directions,
        }
    }
}

impl PolyMorphism {
    pub fn new(
        source: Poly,
        target: Poly,
        on_positions: FinFunction,
        on_directions: Vec<FinFunction>,
    ) -> Result<Self> {
        if on_positions.dom().size() != source.positions()
            || on_positions.cod().size() != target.positions()
        {
            return Err(mismatch("position map does not go P(1) -> Q(1)"));
        }
        if on_directions.len() != source.positions() {
            return Err(mismatch("need one direction map per source position"));
        }
        for (i, d) in on_directions.iter().enumerate() {
            let j = on_positions.apply(i);
            if d.dom().size() != target.exponent(j) || d.cod().size() != source.exponent(i) {
                return Err(mismatch(format!(
                    "direction map at position {} must go {} -> {}",
                    i + 1,
                    target.exponent(j),
                    source.exponent(i)
                )));
            }
        }
        Ok(PolyMorphism {
            source,
            target,
            on_positions,
            on_directions,
        })
    }

    pub(crate) fn from_parts_unchecked(
        source: Poly,
        target: Poly,
        on_positions: FinFunction,
        on_directions: Vec<FinFunction>,
    ) -> Self {
        PolyMorphism {
            source,
            target,
            on_positions,
            on_directions,
        }
    }

    pub fn identity(p: &Poly) -> Self {
        PolyMorphism {
            source: p.clone(),
            target: p.clone(),
            on_positions: FinFunction::identity(p.positions()),
            on_directions: p
                .exponents
                .iter()
                .map(|&e| FinFunction::identity(e))
                .collect(),
        }
    }

    pub fn source(&self) -> &Poly {
        &self.source
    }

    pub fn target(&self) -> &Poly {
        &self.target
    }

    pub fn on_positions(&self) -> &FinFunction {
        &self.on_positions
    }

    pub fn on_directions(&self) -> &[FinFunction] {
        &self.on_directions
    }

    /// The `X`-component `P(X) -> Q(X)`: `(i, h) ↦ (f(i), h ∘ f♯_i)`.
    pub fn component(&self, x: FinSet, budget: Budget) -> Result<FinFunction> {
        let from = self.source.eval_obj(x, budget)?;
        let to = self.target.eval_obj(x, budget)?;
        let map = from
            .elements()
            .map(|(i, h)| {
                let pulled = compose(&h, &self.on_directions[i]).expect("direction shapes");
                to.index_of(self.on_positions.apply(i), pulled.map())
            })
            .collect();
        FinFunction::new(from.len(), to.len(), map)
    }

    /// Every direction map is a bijection.
    pub fn is_cartesian(&self) -> bool {
        self.on_directions.iter().all(FinFunction::is_bijective)
    }
}

impl fmt::Display for PolyMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} :", self.source, self.target)?;
        for (i, d) in self.on_directions.iter().enumerate() {
            write!(f, " [{}->{} ", i + 1, self.on_positions.apply(i) + 1)?;
            let pulled: Vec<String> = d.map().iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})]", pulled.join(" "))?;
        }
        Ok(())
    }
}

/// `n ∘ m`: positions compose forwards, directions backwards.
pub fn compose_morphisms(n: &PolyMorphism, m: &PolyMorphism) -> Result<PolyMorphism> {
    if m.target != n.source {
        return Err(mismatch("morphisms are not composable"));
    }
    let on_positions = compose(&n.on_positions, &m.on_positions)?;
    let on_directions = (0..m.source.positions())
        .map(|i| {
            compose(
                &m.on_directions[i],
                &n.on_directions[m.on_positions.apply(i)],
            )
        })
        .collect::<Result<_>>()?;
    Ok(PolyMorphism {
        source: m.source.clone(),
        target: n.target.clone(),
        on_positions,
        on_directions,
    })
}

/// `|Poly(P, Q)| = Π_i |Q(p_i)|`.
pub fn hom_count(p: &Poly, q: &Poly) -> BigUint {
    p.exponents.iter().map(|&e| q.eval_count(e)).product()
}

/// Lazily enumerates `Poly(P, Q)`: one element of `Q(p_i)` per position,
/// the first position varying slowest.
pub fn hom_iter(p: &Poly, q: &Poly, budget: Budget) -> Result<impl Iterator<Item = PolyMorphism>> {
    let tables: Vec<Evaluation> = p
        .exponents
        .iter()
        .map(|&e| q.eval_obj(FinSet::new(e), budget))
        .collect::<Result<_>>()?;
    let radices = tables.iter().map(Evaluation::len).collect();
    let (source, target) = (p.clone(), q.clone());
    Ok(MixedRadix::new(radices).map(move |digits| {
        let mut positions = Vec::with_capacity(digits.len());
        let mut directions = Vec::with_capacity(digits.len());
        for (table, d) in tables.iter().zip(digits) {
            let (j, h) = table.element(d);
            positions.push(j);
            directions.push(h);
        }
        PolyMorphism {
            source: source.clone(),
            target: target.clone(),
            on_positions: FinFunction::from_parts_unchecked(
                positions.len(),
                target.positions(),
                positions,
            ),
            on_directions: directions,
        }
    }))
}

pub fn hom_enumerate(p: &Poly, q: &Poly, budget: Budget) -> Result<Vec<PolyMorphism>> {
    budget.check(&hom_count(p, q))?;
    Ok(hom_iter(p, q, budget)?.collect())
}

/// A pullback in `Poly` with its two projections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyPullback {
    pub apex: Poly,
    pub left: PolyMorphism,
    pub right: PolyMorphism,
}

/// Pullback of `f : P -> H` and `g : Q -> H`. Positions are pairs `(i, j)`
/// over the same position of `H`; the directions at `(i, j)` are the pushout
/// of `f♯_i` and `g♯_j`.
pub fn pullback_poly(f: &PolyMorphism, g: &PolyMorphism) -> Result<PolyPullback> {
    if f.target != g.target {
        return Err(mismatch("pullback legs need a common target"));
    }
    let pairs = finset::pullback(&f.on_positions, &g.on_positions)?;
    let pushouts = pairs
        .tuples
        .iter()
        .map(|t| {
            finset::wide_pushout(&[f.on_directions[t[0]].clone(), g.on_directions[t[1]].clone()])
        })
        .collect::<Result<Vec<_>>>()?;
    let sizes: Vec<usize> = pushouts.iter().map(|w| w.set.size()).collect();
    let (exponents, _, labels) = canonical_order(&sizes);
    let apex = Poly { exponents };
    let project = |side: usize, leg: &Poly| {
        let on_positions = labels.iter().map(|&l| pairs.tuples[l][side]).collect();
        PolyMorphism {
            source: apex.clone(),
            target: leg.clone(),
            on_positions: FinFunction::from_parts_unchecked(
                labels.len(),
                leg.positions(),
                on_positions,
            ),
            on_directions: labels
                .iter()
                .map(|&l| pushouts[l].injections[side].clone())
                .collect(),
        }
    };
    Ok(PolyPullback {
        left: project(0, &f.source),
        right: project(1, &g.source),
        apex: apex.clone(),
    })
}

/// `P ⊗ Q` together with the canonical position of each labelled pair
/// `(i, k) ↦ i·|Q(1)| + k`.
pub(crate) fn tensor_labelled(p: &Poly, q: &Poly) -> (Poly, Vec<usize>) {
    let products: Vec<usize> = p
        .exponents
        .iter()
        .flat_map(|&a| q.exponents.iter().map(move |&b| a * b))
        .collect();
    let (exponents, position, _) = canonical_order(&products);
    (Poly { exponents }, position)
}

/// `m ⊗ n : P ⊗ A -> Q ⊗ B`.
pub fn tensor_morphisms(m: &PolyMorphism, n: &PolyMorphism) -> PolyMorphism {
    let (source, src_pos) = tensor_labelled(&m.source, &n.source);
    let (target, tgt_pos) = tensor_labelled(&m.target, &n.target);
    let (ps, qs) = (m.source.positions(), n.source.positions());
    let qt = n.target.positions();
    let mut on_positions = vec![0; ps * qs];
    let mut on_directions = vec![FinFunction::empty(0); ps * qs];
    for i in 0..ps {
        for k in 0..qs {
            let (mi, nk) = (m.on_positions.apply(i), n.on_positions.apply(k));
            let here = src_pos[i * qs + k];
            on_positions[here] = tgt_pos[mi * qt + nk];
            let (md, nd) = (&m.on_directions[i], &n.on_directions[k]);
            let width = nd.dom().size();
            let out_width = nd.cod().size();
            let map = (0..md.dom().size() * width)
                .map(|z| md.apply(z / width) * out_width + nd.apply(z % width))
                .collect();
            on_directions[here] = FinFunction::from_parts_unchecked(
                md.dom().size() * width,
                md.cod().size() * out_width,
                map,
            );
        }
    }
    PolyMorphism {
        on_positions: FinFunction::from_parts_unchecked(ps * qs, target.positions(), on_positions),
        source,
        target,
        on_directions,
    }
}

/// `[A, Q]` with its positions labelled: each position is a tuple of
/// elements `e_k ∈ Q(a_k)`, one per position `k` of `A`.
struct LabelledInternalHom {
    poly: Poly,
    tables: Vec<Evaluation>,
    /// Canonical position of each mixed-radix label.
    position: Vec<usize>,
    /// Mixed-radix label at each canonical position.
    labels: Vec<usize>,
}

impl LabelledInternalHom {
    fn new(a: &Poly, q: &Poly, budget: Budget) -> Result<Self> {
        budget.check(&hom_count(a, q))?;
        let tables: Vec<Evaluation> = a
            .exponents
            .iter()
            .map(|&e| q.eval_obj(FinSet::new(e), budget))
            .collect::<Result<_>>()?;
        let radices: Vec<usize> = tables.iter().map(Evaluation::len).collect();
        let sizes: Vec<usize> = MixedRadix::new(radices)
            .map(|digits| {
                digits
                    .iter()
                    .zip(&tables)
                    .map(|(&d, t)| q.exponent(t.term_of(d)))
                    .sum()
            })
            .collect();
        let (exponents, position, labels) = canonical_order(&sizes);
        Ok(LabelledInternalHom {
            poly: Poly { exponents },
            tables,
            position,
            labels,
        })
    }

    fn encode(&self, digits: &[usize]) -> usize {
        let label = digits
            .iter()
            .zip(&self.tables)
            .fold(0, |acc, (&d, t)| acc * t.len() + d);
        self.position[label]
    }

    fn decode(&self, position: usize) -> Vec<usize> {
        let mut label = self.labels[position];
        let mut digits = vec![0; self.tables.len()];
        for (slot, t) in digits.iter_mut().zip(&self.tables).rev() {
            *slot = label % t.len();
            label /= t.len();
        }
        digits
    }
}

/// Transposes `m : P ⊗ A -> Q` to `P -> [A, Q]`.
pub fn curry_tensor(m: &PolyMorphism, p: &Poly, a: &Poly, budget: Budget) -> Result<PolyMorphism> {
    if m.source != p.tensor(a) {
        return Err(mismatch("source is not P ⊗ A"));
    }
    let q = m.target();
    let ihom = LabelledInternalHom::new(a, q, budget)?;
    let (_, tensor_pos) = tensor_labelled(p, a);
    let ka = a.positions();
    let mut on_positions = Vec::with_capacity(p.positions());
    let mut on_directions = Vec::with_capacity(p.positions());
    for i in 0..p.positions() {
        let mut digits = Vec::with_capacity(ka);
        let mut dirs = Vec::new();
        for k in 0..ka {
            let t = tensor_pos[i * ka + k];
            let ak = a.exponent(k);
            let j = m.on_positions.apply(t);
            let d = &m.on_directions[t];
            let choice: Vec<usize> = d.map().iter().map(|&z| z % ak).collect();
            digits.push(ihom.tables[k].index_of(j, &choice));
            dirs.extend(d.map().iter().map(|&z| z / ak));
        }
        on_positions.push(ihom.encode(&digits));
        on_directions.push(FinFunction::from_parts_unchecked(
            dirs.len(),
            p.exponent(i),
            dirs,
        ));
    }
    PolyMorphism::new(
        p.clone(),
        ihom.poly.clone(),
        FinFunction::from_parts_unchecked(p.positions(), ihom.poly.positions(), on_positions),
        on_directions,
    )
}

/// Inverse of [`curry_tensor`]: `n : P -> [A, Q]` becomes `P ⊗ A -> Q`.
pub fn uncurry_tensor(
    n: &PolyMorphism,
    a: &Poly,
    q: &Poly,
    budget: Budget,
) -> Result<PolyMorphism> {
    let ihom = LabelledInternalHom::new(a, q, budget)?;
    if n.target != ihom.poly {
        return Err(mismatch("target is not [A, Q]"));
    }
    let p = n.source();
    let (tensor, tensor_pos) = tensor_labelled(p, a);
    let ka = a.positions();
    let mut on_positions = vec![0; tensor.positions()];
    let mut on_directions = vec![FinFunction::empty(0); tensor.positions()];
    for i in 0..p.positions() {
        let digits = ihom.decode(n.on_positions.apply(i));
        let dirs = n.on_directions[i].map();
        let mut start = 0;
        for (k, &e) in digits.iter().enumerate() {
            let (j, choice) = ihom.tables[k].element(e);
            let ak = a.exponent(k);
            let block = &dirs[start..start + choice.dom().size()];
            start += choice.dom().size();
            let t = tensor_pos[i * ka + k];
            on_positions[t] = j;
            let map = block
                .iter()
                .zip(choice.map())
                .map(|(&d, &c)| d * ak + c)
                .collect();
            on_directions[t] =
                FinFunction::from_parts_unchecked(block.len(), p.exponent(i) * ak, map);
        }
    }
    PolyMorphism::new(
        tensor.clone(),
        q.clone(),
        FinFunction::from_parts_unchecked(tensor.positions(), q.positions(), on_positions),
        on_directions,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(e: &[usize]) -> Poly {
        Poly::new(e.iter().copied())
    }

    #[test]
    fn evaluation_counts() {
        assert_eq!(Poly::monomial(3).eval_count(2), BigUint::from(8u32));
        assert_eq!(
            p(&[2, 1, 1, 1, 1, 0, 0, 0, 0]).eval_count(1),
            BigUint::from(9u32)
        );
        assert_eq!(Poly::zero().eval_count(3), BigUint::from(0u32));
        let table = p(&[3, 3, 1, 0])
            .eval_obj(FinSet::new(2), Budget::default())
            .unwrap();
        assert_eq!(table.len(), 8 + 8 + 2 + 1);
    }

    #[test]
    fn eval_map_examples() {
        let q = p(&[2, 1, 0]);
        let id = q
            .eval_map(&FinFunction::identity(3), Budget::default())
            .unwrap();
        assert_eq!(
            id,
            FinFunction::identity(q.eval_count(3).try_into().unwrap())
        );
        let g = FinFunction::new(3, 2, vec![1, 0, 1]).unwrap();
        assert_eq!(Poly::y().eval_map(&g, Budget::default()).unwrap(), g);
        let h = p(&[2, 2])
            .eval_map(&FinFunction::identity(1), Budget::default())
            .unwrap();
        assert_eq!(h, FinFunction::identity(2));
    }

    #[test]
    fn worked_hom_counts() {
        let (a, b) = (p(&[2, 2]), p(&[1, 0]));
        assert_eq!(hom_count(&a, &b), BigUint::from(9u32));
        assert_eq!(hom_count(&b, &a), BigUint::from(0u32));
        assert_eq!(hom_enumerate(&a, &b, Budget::default()).unwrap().len(), 9);
        assert!(hom_enumerate(&b, &a, Budget::default()).unwrap().is_empty());
        assert_eq!(hom_count(&Poly::zero(), &a), BigUint::from(1u32));
        let yy = hom_enumerate(&Poly::y(), &Poly::y(), Budget::default()).unwrap();
        assert_eq!(yy, vec![PolyMorphism::identity(&Poly::y())]);
    }

    #[test]
    fn enumeration_respects_budget() {
        let big = p(&[3, 3, 3]);
        assert!(matches!(
            hom_enumerate(&big, &big, Budget(1000)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn components() {
        let (a, b) = (p(&[2, 2]), p(&[1, 0]));
        for m in hom_enumerate(&a, &b, Budget::default()).unwrap() {
            let c = m.component(FinSet::new(2), Budget::default()).unwrap();
            assert_eq!((c.dom().size(), c.cod().size()), (8, 3));
            // nothing in 2y^2 survives at 0
            assert_eq!(
                m.component(FinSet::EMPTY, Budget::default())
                    .unwrap()
                    .dom()
                    .size(),
                0
            );
        }
        let id = PolyMorphism::identity(&a);
        assert_eq!(
            id.component(FinSet::new(3), Budget::default()).unwrap(),
            FinFunction::identity(18)
        );
    }

    #[test]
    fn composition_matches_components() {
        let (a, b, c) = (p(&[2, 1]), p(&[1, 0]), p(&[2, 0]));
        for m in hom_enumerate(&a, &b, Budget::default()).unwrap() {
            assert_eq!(
                compose_morphisms(&m, &PolyMorphism::identity(&a)).unwrap(),
                m
            );
            for n in hom_enumerate(&b, &c, Budget::default()).unwrap() {
                let nm = compose_morphisms(&n, &m).unwrap();
                let x = FinSet::new(2);
                let lhs = nm.component(x, Budget::default()).unwrap();
                let rhs = compose(
                    &n.component(x, Budget::default()).unwrap(),
                    &m.component(x, Budget::default()).unwrap(),
                )
                .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        assert!(
            compose_morphisms(&PolyMorphism::identity(&a), &PolyMorphism::identity(&b)).is_err()
        );
    }

    #[test]
    fn arithmetic() {
        assert_eq!(Poly::y().add(&Poly::y()), Poly::linear(2));
        assert_eq!(Poly::y().multiply(&Poly::y()), Poly::monomial(2));
        assert_eq!(p(&[1, 0]).multiply(&p(&[1, 0])), p(&[2, 1, 1, 0]));
        assert_eq!(Poly::y().substitute(&p(&[2, 0])), p(&[2, 0]));
        assert_eq!(Poly::monomial(2).substitute(&p(&[1, 0])), p(&[2, 1, 1, 0]));
        assert_eq!(p(&[1, 0]).substitute(&Poly::zero()), Poly::one());
        assert_eq!(
            Poly::monomial(2).tensor(&Poly::monomial(3)),
            Poly::monomial(6)
        );
        assert_eq!(p(&[1, 0]).tensor(&p(&[1, 0])), p(&[1, 0, 0, 0]));
        assert_eq!(p(&[3, 1]).tensor(&Poly::y()), p(&[3, 1]));
        assert_eq!(Poly::y().pow(0), Poly::one());
        assert_eq!(p(&[1]).scale(3), Poly::linear(3));
    }

    #[test]
    fn closed_structures() {
        let b = Budget::default();
        assert_eq!(
            Poly::internal_hom(&Poly::linear(2), &Poly::y(), b).unwrap(),
            Poly::monomial(2)
        );
        assert_eq!(
            Poly::internal_hom(&Poly::monomial(2), &Poly::y(), b).unwrap(),
            Poly::linear(2)
        );
        let q = p(&[2, 1, 0]);
        assert_eq!(Poly::internal_hom(&Poly::y(), &q, b).unwrap(), q);
        assert_eq!(Poly::power(&q, &Poly::one(), b).unwrap(), q);
        assert_eq!(Poly::power(&Poly::y(), &Poly::y(), b).unwrap(), p(&[1, 0]));
        assert_eq!(
            Poly::power(&p(&[1, 0]), &Poly::y(), b).unwrap(),
            p(&[1, 0, 0])
        );
    }

    #[test]
    fn global_sections() {
        assert_eq!(Poly::monomial(3).global_sections(), BigUint::from(3u32));
        assert_eq!(p(&[1, 0]).global_sections(), BigUint::from(0u32));
        assert_eq!(Poly::zero().global_sections(), BigUint::from(1u32));
    }

    #[test]
    fn decomposition() {
        let parts: Vec<Poly> = p(&[3, 3, 0])
            .decompose()
            .into_iter()
            .map(|(_, q)| q)
            .collect();
        assert_eq!(
            parts,
            vec![Poly::monomial(3), Poly::monomial(3), Poly::one()]
        );
        assert!(Poly::zero().decompose().is_empty());
    }

    #[test]
    fn pullbacks() {
        let a = p(&[2, 1]);
        let id = PolyMorphism::identity(&a);
        assert_eq!(pullback_poly(&id, &id).unwrap().apex, a);

        // y^2 -> y <- y^2 along the two points 1 -> 2: the pushout 2 +_1 2 = 3
        let f = PolyMorphism::new(
            Poly::monomial(2),
            Poly::y(),
            FinFunction::identity(1),
            vec![FinFunction::new(1, 2, vec![0]).unwrap()],
        )
        .unwrap();
        let g = PolyMorphism::new(
            Poly::monomial(2),
            Poly::y(),
            FinFunction::identity(1),
            vec![FinFunction::new(1, 2, vec![1]).unwrap()],
        )
        .unwrap();
        let pb = pullback_poly(&f, &g).unwrap();
        assert_eq!(pb.apex, Poly::monomial(3));
        for x in 0..4usize {
            let x3 = x.pow(3);
            assert_eq!(pb.apex.eval_count(x), BigUint::from(x3));
        }

        let c2 = PolyMorphism::new(
            Poly::constant(2),
            Poly::one(),
            FinFunction::bang(2),
            vec![FinFunction::empty(0), FinFunction::empty(0)],
        )
        .unwrap();
        let c3 = PolyMorphism::new(
            Poly::constant(3),
            Poly::one(),
            FinFunction::bang(3),
            vec![FinFunction::empty(0); 3],
        )
        .unwrap();
        assert_eq!(pullback_poly(&c2, &c3).unwrap().apex, Poly::constant(6));
    }

    #[test]
    fn cartesian_morphisms() {
        assert!(PolyMorphism::identity(&p(&[2, 1])).is_cartesian());
        let from_zero = hom_enumerate(&Poly::zero(), &p(&[1]), Budget::default()).unwrap();
        assert!(from_zero[0].is_cartesian());
        let squash = PolyMorphism::new(
            Poly::monomial(2),
            Poly::y(),
            FinFunction::identity(1),
            vec![FinFunction::new(1, 2, vec![0]).unwrap()],
        )
        .unwrap();
        assert!(!squash.is_cartesian());
    }

    #[test]
    fn tensor_transpose_round_trips() {
        let (a, q) = (p(&[2, 0]), p(&[1, 0]));
        let src = p(&[1, 1]);
        let b = Budget::default();
        let homs = hom_enumerate(&src.tensor(&a), &q, b).unwrap();
        let ihom = Poly::internal_hom(&a, &q, b).unwrap();
        assert_eq!(BigUint::from(homs.len()), hom_count(&src, &ihom));
        for m in &homs {
            let c = curry_tensor(m, &src, &a, b).unwrap();
            assert_eq!(c.target(), &ihom);
            assert_eq!(&uncurry_tensor(&c, &a, &q, b).unwrap(), m);
        }
    }

    #[test]
    fn rejects_malformed_morphisms() {
        let bad = PolyMorphism::new(Poly::y(), Poly::y(), FinFunction::identity(1), vec![]);
        assert!(bad.is_err());
        let wrong_shape = PolyMorphism::new(
            Poly::y(),
            Poly::monomial(2),
            FinFunction::identity(1),
            vec![FinFunction::identity(1)],
        );
        assert!(wrong_shape.is_err());
    }

    #[test]
    fn json_forms() {
        let q: Poly = serde_json::from_str(r#"{"poly":[0,3,1,3]}"#).unwrap();
        assert_eq!(q.exponents(), &[3, 3, 1, 0]);
        assert_eq!(serde_json::to_string(&q).unwrap(), r#"{"poly":[3,3,1,0]}"#);
        let m = PolyMorphism::identity(&q);
        let back: PolyMorphism = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
        let broken = r#"{"source":{"poly":[1]},"target":{"poly":[1]},"on_positions":{"dom":1,"cod":1,"map":[0]},"on_directions":[]}"#;
        assert!(serde_json::from_str::<PolyMorphism>(broken).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[3, 3, 1, 0, 0, 0, 0, 0]).to_string(), "2y^3 + y + 5");
    }
}
