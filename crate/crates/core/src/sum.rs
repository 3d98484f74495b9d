//! Sums of hom-sets, the common shape of `P(X) = Σ Fin(p_i, X)` and
//! `D(X) = Σ Fin(X, d_i)`.

use num_bigint::BigUint;

use crate::error::Result;
use crate::finset::{big_pow, lex_rank, Budget, FinFunction, FinSet};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Block {
    dom: usize,
    cod: usize,
    offset: usize,
    len: usize,
}

/// The finite set `Σ_i Fin(dom_i, cod_i)`, with its elements `(i, h)` listed
/// by term index first and then lexicographically in `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    set: FinSet,
    blocks: Vec<Block>,
}

impl Evaluation {
    /// Builds the table for the given `(dom, cod)` pairs, refusing to go past
    /// `budget` elements.
    pub(crate) fn new(
        shapes: impl IntoIterator<Item = (usize, usize)>,
        budget: Budget,
    ) -> Result<Self> {
        let shapes: Vec<(usize, usize)> = shapes.into_iter().collect();
        let total: BigUint = shapes.iter().map(|&(d, c)| big_pow(c, d)).sum();
        budget.check(&total)?;
        let mut offset = 0;
        let blocks = shapes
            .into_iter()
            .map(|(dom, cod)| {
                let len = cod.pow(u32::try_from(dom).expect("small exponent"));
                let block = Block {
                    dom,
                    cod,
                    offset,
                    len,
                };
                offset += len;
                block
            })
            .collect();
        Ok(Evaluation {
            set: FinSet::new(offset),
            blocks,
        })
    }

    pub fn set(&self) -> FinSet {
        self.set
    }

    pub fn len(&self) -> usize {
        self.set.size()
    }

    pub fn is_empty(&self) -> bool {
        self.set.size() == 0
    }

    /// Number of summands.
    pub fn terms(&self) -> usize {
        self.blocks.len()
    }

    /// Offset of the block belonging to term `i`.
    pub fn offset(&self, term: usize) -> usize {
        self.blocks[term].offset
    }

    pub fn term_of(&self, index: usize) -> usize {
        self.blocks.partition_point(|b| b.offset + b.len <= index)
    }

    /// The element at `index` as `(term, map)`.
    pub fn element(&self, index: usize) -> (usize, FinFunction) {
        let term = self.term_of(index);
        let b = &self.blocks[term];
        (
            term,
            FinFunction::from_lex_rank(b.dom, b.cod, index - b.offset),
        )
    }

    /// Index of `(term, map)`. The map must have the block's shape.
    pub fn index_of(&self, term: usize, map: &[usize]) -> usize {
        let b = &self.blocks[term];
        debug_assert_eq!(map.len(), b.dom);
        b.offset + lex_rank(map, b.cod)
    }

    pub fn elements(&self) -> impl Iterator<Item = (usize, FinFunction)> + '_ {
        (0..self.len()).map(|k| self.element(k))
    }
}

/// Stable descending sort of term sizes.
///
/// Returns the sorted sizes, the canonical position of each original label,
/// and the original label at each canonical position.
pub(crate) fn canonical_order(sizes: &[usize]) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let mut labels: Vec<usize> = (0..sizes.len()).collect();
    labels.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]));
    let mut position = vec![0; sizes.len()];
    for (pos, &label) in labels.iter().enumerate() {
        position[label] = pos;
    }
    let sorted = labels.iter().map(|&l| sizes[l]).collect();
    (sorted, position, labels)
}

pub(crate) fn sorted_desc(mut terms: Vec<usize>) -> Vec<usize> {
    terms.sort_unstable_by(|a, b| b.cmp(a));
    terms
}
