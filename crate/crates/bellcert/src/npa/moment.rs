//! Moment-matrix structure for a scenario and hierarchy level.
//!
//! A level-`k` certificate is a positive semidefinite matrix indexed by all
//! canonical words of length at most `k`, whose `(u, v)` entry depends only on
//! the canonical word of `u†v`. Words of length ≤ 2 that mix at most one
//! symbol per party are *behavior-backed*: their moments are the observable
//! probabilities. Everything else is an unconstrained moment, tied across
//! entries only by sharing its word. This module computes the index: the
//! generating words, the entry → word map, and each word's role.

use super::word::{entry_word, MonomialWord, Symbol};
use crate::error::{Error, Result};
use crate::scenario::Scenario;
use crate::solver::svec_index;
use std::collections::HashMap;

/// Dimension cap for moment matrices (keeps accidental `level = 6` requests
/// from allocating gigabytes before the solver would choke anyway).
pub const MOMENT_DIM_CAP: usize = 2000;

/// Hierarchy level: either all words up to a length, or the intermediate
/// level with all one-party words plus the joint products.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NpaLevel {
    /// Words of length ≤ k, k ≥ 1.
    Level(u32),
    /// Words of length ≤ 1 plus the products `A_iB_j`.
    OnePlusAb,
}

impl std::fmt::Display for NpaLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NpaLevel::Level(k) => write!(f, "{k}"),
            NpaLevel::OnePlusAb => write!(f, "1+AB"),
        }
    }
}

/// What a distinct canonical word means for the optimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordRole {
    /// The empty word: moment fixed to 1.
    Identity,
    /// `A_i`: moment is `pA_i`.
    SingleA(usize),
    /// `B_j`: moment is `pB_j`.
    SingleB(usize),
    /// `A_iB_j`: moment is `pAB_ij`.
    Joint(usize, usize),
    /// Any longer word: a free moment, shared wherever the word recurs.
    Free,
}

/// The combinatorial skeleton of a level-`k` moment matrix.
#[derive(Debug, Clone)]
pub struct MomentStructure {
    scenario: Scenario,
    level: NpaLevel,
    generating_words: Vec<MonomialWord>,
    /// Upper triangle in svec (column-major) layout; values index `distinct_words`.
    entry_word_ids: Vec<usize>,
    distinct_words: Vec<MonomialWord>,
    roles: Vec<WordRole>,
}

impl MomentStructure {
    /// Enumerates the generating words of `level` and the canonical word of
    /// every matrix entry.
    pub fn build(scenario: Scenario, level: NpaLevel) -> Result<Self> {
        let generating_words = generating_words(scenario, level)?;
        let dim = generating_words.len();
        if dim > MOMENT_DIM_CAP {
            return Err(Error::SizeExceeded {
                dim,
                cap: MOMENT_DIM_CAP,
            });
        }
        let mut ids: HashMap<MonomialWord, usize> = HashMap::new();
        let mut distinct_words: Vec<MonomialWord> = Vec::new();
        let mut entry_word_ids = vec![0usize; dim * (dim + 1) / 2];
        for j in 0..dim {
            for i in 0..=j {
                let word = entry_word(&generating_words[i], &generating_words[j]);
                let next_id = distinct_words.len();
                let id = *ids.entry(word.clone()).or_insert_with(|| {
                    distinct_words.push(word);
                    next_id
                });
                entry_word_ids[svec_index(i, j)] = id;
            }
        }
        let roles = distinct_words.iter().map(classify).collect();
        Ok(MomentStructure {
            scenario,
            level,
            generating_words,
            entry_word_ids,
            distinct_words,
            roles,
        })
    }

    pub fn scenario(&self) -> Scenario {
        self.scenario
    }

    pub fn level(&self) -> NpaLevel {
        self.level
    }

    /// Matrix dimension = number of generating words.
    pub fn dimension(&self) -> usize {
        self.generating_words.len()
    }

    pub fn generating_words(&self) -> &[MonomialWord] {
        &self.generating_words
    }

    /// Index (into [`Self::distinct_words`]) of the canonical word at entry
    /// `(r, c)`; symmetric in its arguments.
    pub fn entry_word_id(&self, r: usize, c: usize) -> usize {
        let (i, j) = if r <= c { (r, c) } else { (c, r) };
        self.entry_word_ids[svec_index(i, j)]
    }

    /// All distinct canonical words appearing in the matrix.
    pub fn distinct_words(&self) -> &[MonomialWord] {
        &self.distinct_words
    }

    /// Role of each distinct word, parallel to [`Self::distinct_words`].
    pub fn roles(&self) -> &[WordRole] {
        &self.roles
    }
}

fn classify(word: &MonomialWord) -> WordRole {
    match *word.symbols() {
        [] => WordRole::Identity,
        [Symbol::A(i)] => WordRole::SingleA(i),
        [Symbol::B(j)] => WordRole::SingleB(j),
        [Symbol::A(i), Symbol::B(j)] => WordRole::Joint(i, j),
        _ => WordRole::Free,
    }
}

fn generating_words(scenario: Scenario, level: NpaLevel) -> Result<Vec<MonomialWord>> {
    let max_len = match level {
        NpaLevel::Level(0) => {
            return Err(Error::InvalidInput(
                "level 0 is the nonsignalling polytope; use the dedicated operations".into(),
            ))
        }
        NpaLevel::Level(k) => k as usize,
        NpaLevel::OnePlusAb => 2,
    };
    let (n, m) = (scenario.n(), scenario.m());
    let mut words = vec![MonomialWord::identity()];
    for len in 1..=max_len {
        let mut layer: Vec<MonomialWord> = Vec::new();
        for a_len in 0..=len {
            let b_len = len - a_len;
            if matches!(level, NpaLevel::OnePlusAb) && len == 2 && (a_len != 1 || b_len != 1) {
                continue;
            }
            for a_block in party_blocks(n, a_len, true) {
                for b_block in party_blocks(m, b_len, false) {
                    layer.push(MonomialWord::from_symbols(
                        a_block.iter().chain(b_block.iter()).copied(),
                    ));
                }
            }
        }
        layer.sort();
        words.extend(layer);
    }
    Ok(words)
}

/// All length-`len` sequences over one party's settings with no two adjacent
/// symbols equal — exactly the canonical one-party blocks.
fn party_blocks(settings: usize, len: usize, party_a: bool) -> Vec<Vec<Symbol>> {
    let make = |idx: usize| {
        if party_a {
            Symbol::A(idx)
        } else {
            Symbol::B(idx)
        }
    };
    let mut blocks: Vec<Vec<Symbol>> = vec![Vec::new()];
    for _ in 0..len {
        let mut grown = Vec::new();
        for block in &blocks {
            for idx in 0..settings {
                if block.last() != Some(&make(idx)) {
                    let mut next = block.clone();
                    next.push(make(idx));
                    grown.push(next);
                }
            }
        }
        blocks = grown;
    }
    blocks
}
