//! The closed-form side of each law, with optional corruption.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::Mutation;
use crate::dir::{Dir, DirMorphism};
use crate::error::Result;
use crate::finset::{big_pow, maps, Budget, FinFunction, FinSet};
use crate::poly::Poly;

pub(crate) struct Formulas {
    mutation: Option<Mutation>,
}

impl Formulas {
    pub(crate) fn new(mutation: Option<Mutation>) -> Self {
        Formulas { mutation }
    }

    fn is(&self, m: Mutation) -> bool {
        self.mutation == Some(m)
    }

    fn power(&self, base: usize, exp: usize) -> BigUint {
        if self.is(Mutation::ZeroToTheZeroIsZero) && base == 0 {
            BigUint::zero()
        } else {
            big_pow(base, exp)
        }
    }

    fn combine(&self, factors: impl Iterator<Item = BigUint>) -> BigUint {
        if self.is(Mutation::HomSumInsteadOfProduct) {
            factors.fold(BigUint::zero(), |a, b| a + b)
        } else {
            factors.fold(BigUint::one(), |a, b| a * b)
        }
    }

    /// `Σ_i X^{p_i}`.
    pub(crate) fn poly_eval(&self, p: &Poly, x: usize) -> BigUint {
        p.exponents().iter().map(|&e| self.power(x, e)).sum()
    }

    /// `Σ_i d_i^X`.
    pub(crate) fn dir_eval(&self, d: &Dir, x: usize) -> BigUint {
        d.bases().iter().map(|&b| self.power(b, x)).sum()
    }

    /// `Π_i Q(p_i)`.
    pub(crate) fn poly_hom_count(&self, p: &Poly, q: &Poly) -> BigUint {
        self.combine(p.exponents().iter().map(|&e| q.eval_count(e)))
    }

    /// `Π_i E(d_i)`.
    pub(crate) fn dir_hom_count(&self, d: &Dir, e: &Dir) -> BigUint {
        self.combine(d.bases().iter().map(|&b| e.eval_count(b)))
    }

    pub(crate) fn tensor(&self, p: &Poly, q: &Poly) -> Poly {
        if self.is(Mutation::TensorAddsExponents) {
            Poly::new(
                p.exponents()
                    .iter()
                    .flat_map(|&a| q.exponents().iter().map(move |&b| a + b)),
            )
        } else {
            p.tensor(q)
        }
    }

    pub(crate) fn internal_hom(&self, a: &Poly, q: &Poly, budget: Budget) -> Result<Poly> {
        if self.is(Mutation::InternalHomDropsMultiplicity) {
            Ok(a.exponents()
                .iter()
                .fold(Poly::one(), |acc, _| acc.multiply(q)))
        } else {
            Poly::internal_hom(a, q, budget)
        }
    }

    pub(crate) fn is_cartesian(&self, m: &DirMorphism) -> bool {
        if self.is(Mutation::CartesianTestInjectiveOnly) {
            m.on_bases().iter().all(FinFunction::is_injective)
        } else {
            m.is_cartesian()
        }
    }
}

/// `Σ_f Π_i p_i^{q_{f(i)}}`, summing over position maps: a second count of
/// `Poly(P, Q)` that does not go through evaluation.
pub(crate) fn poly_hom_count_by_positions(p: &Poly, q: &Poly) -> BigUint {
    maps(FinSet::new(p.positions()), FinSet::new(q.positions()))
        .map(|f| {
            (0..p.positions())
                .map(|i| big_pow(p.exponent(i), q.exponent(f.apply(i))))
                .product::<BigUint>()
        })
        .sum()
}

/// `Σ_f Π_i e_{f(i)}^{d_i}`, summing over term maps.
pub(crate) fn dir_hom_count_by_terms(d: &Dir, e: &Dir) -> BigUint {
    maps(FinSet::new(d.terms()), FinSet::new(e.terms()))
        .map(|f| {
            (0..d.terms())
                .map(|i| big_pow(e.base(f.apply(i)), d.base(i)))
                .product::<BigUint>()
        })
        .sum()
}
