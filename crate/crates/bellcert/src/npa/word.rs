//! Words over the +1-outcome projectors and their canonical form.
//!
//! The moment matrix is indexed by products of projectors `A_i`, `B_j`. Two
//! rewrite rules make the indexing finite and unambiguous: operators of
//! different parties commute (they act on different tensor factors), so every
//! word can be written with all Alice symbols first; and projectors are
//! idempotent, so adjacent repetitions collapse. Within one party nothing
//! commutes — `A₁A₂A₁` is irreducible.

use std::cmp::Ordering;

/// One projector symbol. The derived order (`A(0) < A(1) < … < B(0) < …`)
/// fixes the lexicographic word order used everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    A(usize),
    B(usize),
}

impl Symbol {
    fn is_a(&self) -> bool {
        matches!(self, Symbol::A(_))
    }
}

/// A product of projectors in canonical form: the Alice block, then the Bob
/// block, with no adjacent equal symbols. The empty word is the identity
/// operator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialWord {
    symbols: Vec<Symbol>,
}

impl MonomialWord {
    pub fn identity() -> Self {
        MonomialWord {
            symbols: Vec::new(),
        }
    }

    pub fn single(symbol: Symbol) -> Self {
        MonomialWord {
            symbols: vec![symbol],
        }
    }

    /// Canonicalizes an arbitrary symbol sequence.
    pub fn from_symbols(symbols: impl IntoIterator<Item = Symbol>) -> Self {
        let mut a_block = Vec::new();
        let mut b_block = Vec::new();
        for s in symbols {
            // party commutation: stable-partition into the two blocks
            if s.is_a() {
                push_idempotent(&mut a_block, s);
            } else {
                push_idempotent(&mut b_block, s);
            }
        }
        a_block.extend(b_block);
        MonomialWord { symbols: a_block }
    }

    pub fn is_identity(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Number of projector factors after reduction.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Canonical operator product `self · other`.
    pub fn concat(&self, other: &MonomialWord) -> MonomialWord {
        MonomialWord::from_symbols(
            self.symbols
                .iter()
                .chain(other.symbols.iter())
                .copied(),
        )
    }

    /// The adjoint reverses the factor order; projectors are self-adjoint, so
    /// in canonical form each party block is simply reversed in place.
    pub fn adjoint(&self) -> MonomialWord {
        let split = self.symbols.iter().take_while(|s| s.is_a()).count();
        let mut symbols = Vec::with_capacity(self.symbols.len());
        symbols.extend(self.symbols[..split].iter().rev());
        symbols.extend(self.symbols[split..].iter().rev());
        MonomialWord { symbols }
    }
}

/// Graded lexicographic: by length, then by symbol sequence.
impl Ord for MonomialWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.symbols
            .len()
            .cmp(&other.symbols.len())
            .then_with(|| self.symbols.cmp(&other.symbols))
    }
}

impl PartialOrd for MonomialWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn push_idempotent(block: &mut Vec<Symbol>, s: Symbol) {
    if block.last() != Some(&s) {
        block.push(s);
    }
}

/// The canonical word labelling moment-matrix entry `(row, col)`, i.e.
/// `row† · col` — with the adjoint absorbed: a moment and its adjoint moment
/// carry the same (real) value, so the smaller of `w` and `w†` represents
/// both. This is what makes the entry map symmetric in `(row, col)`.
pub fn entry_word(row: &MonomialWord, col: &MonomialWord) -> MonomialWord {
    let w = row.adjoint().concat(col);
    let wt = w.adjoint();
    if wt < w {
        wt
    } else {
        w
    }
}
