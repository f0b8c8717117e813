//! Graded enveloping algebra of the rank-n Heisenberg Lie algebra at `k = 1`.
//!
//! Elements are finite sums of PBW-normal-ordered words: creation modes
//! `H_i t^a` (`a < 0`) on the left, zero modes in the middle and annihilation
//! modes (`a > 0`) on the right. The only nonzero bracket is
//! `[H_i t^a, H_i t^{-a}] = a`, so normal ordering is driven entirely by
//! moving creators left past annihilators.

mod apoly;
mod identity;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub use apoly::APoly;
pub use identity::{
    pairing, phil_rank_certificate, strong_identity, u_element, ubar_element, verify_strong_identity, IdentityTerm,
    RankCertificate, StrongIdentity, StrongIdentityReport,
};

/// The mode `H_generator t^exponent`; generators are numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode {
    pub generator: usize,
    pub exponent: i64,
}

impl Mode {
    pub fn new(generator: usize, exponent: i64) -> Self {
        Self { generator, exponent }
    }

    pub fn degree(&self) -> i64 {
        -self.exponent
    }

    pub fn is_creator(&self) -> bool {
        self.exponent < 0
    }

    pub fn is_annihilator(&self) -> bool {
        self.exponent > 0
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        if self.generator == 0 || self.generator > rank {
            return Err(Error::GeneratorOutOfRange {
                index: self.generator,
                rank,
            });
        }
        Ok(())
    }

    fn block_key(&self) -> (usize, std::cmp::Reverse<u64>) {
        (self.generator, std::cmp::Reverse(self.exponent.unsigned_abs()))
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{}t^{}", self.generator, self.exponent)
    }
}

/// `[m1, m2]` as a multiple of the central element (set to 1).
pub fn commutator(m1: &Mode, m2: &Mode) -> Rational {
    if m1.generator == m2.generator && m1.exponent + m2.exponent == 0 {
        rational::q(m1.exponent)
    } else {
        Rational::zero()
    }
}

/// Rank-checked [`commutator`].
pub fn commutator_checked(rank: usize, m1: &Mode, m2: &Mode) -> Result<Rational> {
    m1.check_rank(rank)?;
    m2.check_rank(rank)?;
    Ok(commutator(m1, m2))
}

/// A PBW-normal-ordered word. Within each block modes are sorted by
/// generator, then by decreasing `|exponent|`, so equality is structural.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalWord {
    creators: Vec<Mode>,
    zero_modes: Vec<usize>,
    annihilators: Vec<Mode>,
}

impl NormalWord {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a word from blocks; blocks are sorted, signs are checked.
    pub fn new(mut creators: Vec<Mode>, mut zero_modes: Vec<usize>, mut annihilators: Vec<Mode>) -> Result<Self> {
        if let Some(m) = creators.iter().find(|m| !m.is_creator()) {
            return Err(Error::Parse(format!("{m} is not a creation mode")));
        }
        if let Some(m) = annihilators.iter().find(|m| !m.is_annihilator()) {
            return Err(Error::Parse(format!("{m} is not an annihilation mode")));
        }
        creators.sort_by_key(Mode::block_key);
        zero_modes.sort_unstable();
        annihilators.sort_by_key(Mode::block_key);
        Ok(Self {
            creators,
            zero_modes,
            annihilators,
        })
    }

    pub fn creators(&self) -> &[Mode] {
        &self.creators
    }

    pub fn zero_modes(&self) -> &[usize] {
        &self.zero_modes
    }

    pub fn annihilators(&self) -> &[Mode] {
        &self.annihilators
    }

    pub fn is_empty(&self) -> bool {
        self.creators.is_empty() && self.zero_modes.is_empty() && self.annihilators.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.creators.iter().chain(&self.annihilators).map(Mode::degree).sum()
    }

    /// Modes left to right.
    pub fn modes(&self) -> impl Iterator<Item = Mode> + '_ {
        self.creators
            .iter()
            .copied()
            .chain(self.zero_modes.iter().map(|&g| Mode::new(g, 0)))
            .chain(self.annihilators.iter().copied())
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        self.modes().try_for_each(|m| m.check_rank(rank))
    }

    fn insert_sorted(block: &mut Vec<Mode>, m: Mode) {
        let key = m.block_key();
        let pos = block.partition_point(|x| x.block_key() <= key);
        block.insert(pos, m);
    }
}

impl fmt::Display for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.modes().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// JSON form of one term: `{coeff, creators: [[i,a]..], zeros: [i..], annihilators: [[i,a]..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordTerm {
    #[serde(with = "crate::rational::serde_str")]
    pub coeff: Rational,
    pub creators: Vec<(usize, i64)>,
    pub zeros: Vec<usize>,
    pub annihilators: Vec<(usize, i64)>,
}

/// Finite linear combination of normal words with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UElement {
    rank: usize,
    terms: BTreeMap<NormalWord, Rational>,
}

impl UElement {
    pub fn zero(rank: usize) -> Self {
        Self {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::from_word(rank, NormalWord::empty())
    }

    fn from_word(rank: usize, word: NormalWord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(word, Rational::one());
        Self { rank, terms }
    }

    pub fn word(rank: usize, word: NormalWord) -> Result<Self> {
        word.check_rank(rank)?;
        Ok(Self::from_word(rank, word))
    }

    pub fn mode(rank: usize, m: Mode) -> Result<Self> {
        Self::from_modes(rank, &[m])
    }

    /// The product `m_1 m_2 ... m_k` of arbitrary modes, normal ordered.
    pub fn from_modes(rank: usize, modes: &[Mode]) -> Result<Self> {
        let mut acc = Self::one(rank);
        for m in modes {
            m.check_rank(rank)?;
            acc = acc.mul_mode_right(m);
        }
        Ok(acc)
    }

    pub fn from_terms(rank: usize, terms: &[WordTerm]) -> Result<Self> {
        let mut acc = Self::zero(rank);
        for t in terms {
            let mk = |v: &[(usize, i64)]| v.iter().map(|&(g, a)| Mode::new(g, a)).collect::<Vec<_>>();
            let w = NormalWord::new(mk(&t.creators), t.zeros.clone(), mk(&t.annihilators))?;
            w.check_rank(rank)?;
            acc.add_term(w, t.coeff.clone());
        }
        Ok(acc)
    }

    pub fn to_terms(&self) -> Vec<WordTerm> {
        let pairs = |v: &[Mode]| v.iter().map(|m| (m.generator, m.exponent)).collect();
        self.terms
            .iter()
            .map(|(w, c)| WordTerm {
                coeff: c.clone(),
                creators: pairs(&w.creators),
                zeros: w.zero_modes.clone(),
                annihilators: pairs(&w.annihilators),
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<NormalWord, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, w: &NormalWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: NormalWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Common degree of all terms; `None` for the zero element.
    pub fn homogeneous_degree(&self) -> Result<Option<i64>> {
        let mut deg = None;
        for w in self.terms.keys() {
            let d = w.degree();
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(Error::MixedDegree(e, d)),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        Self {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_rank(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    fn same_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(())
    }

    /// Right multiplication by a single mode. A creator is moved left past
    /// each annihilator in turn; every transposition contributes the bracket
    /// times the word with both modes removed.
    fn mul_mode_right(&self, m: &Mode) -> Self {
        let mut out = Self::zero(self.rank);
        for (w, c) in &self.terms {
            let mut moved = w.clone();
            if m.exponent > 0 {
                NormalWord::insert_sorted(&mut moved.annihilators, *m);
            } else if m.exponent == 0 {
                let pos = moved.zero_modes.partition_point(|&g| g <= m.generator);
                moved.zero_modes.insert(pos, m.generator);
            } else {
                for (idx, a) in w.annihilators.iter().enumerate().rev() {
                    let bracket = commutator(a, m);
                    if bracket.is_zero() {
                        continue;
                    }
                    let mut contracted = w.clone();
                    contracted.annihilators.remove(idx);
                    out.add_term(contracted, c * bracket);
                }
                NormalWord::insert_sorted(&mut moved.creators, *m);
            }
            out.add_term(moved, c.clone());
        }
        out
    }

    /// Normal-ordered product `self * other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (w, c) in &other.terms {
            let mut acc = self.clone();
            for m in w.modes() {
                acc = acc.mul_mode_right(&m);
            }
            for (w2, c2) in acc.terms {
                out.add_term(w2, c2 * c);
            }
        }
        Ok(out)
    }

    /// Image in `A = Q[h_1..h_n]` of a degree-0 element: words with an
    /// annihilator lie in `U * U_{<=-1}` and are dropped, the remaining
    /// zero-mode words map to monomials.
    pub fn star_to_a(&self) -> Result<APoly> {
        if let Some(d) = self.homogeneous_degree()? {
            if d != 0 {
                return Err(Error::WrongDegree { expected: 0, found: d });
            }
        }
        let mut out = APoly::zero(self.rank);
        for (w, c) in &self.terms {
            if !w.annihilators.is_empty() {
                continue;
            }
            debug_assert!(w.creators.is_empty());
            let mut exps = vec![0u32; self.rank];
            for &g in &w.zero_modes {
                exps[g - 1] += 1;
            }
            out = out.add(&APoly::monomial(exps, c.clone()))?;
        }
        Ok(out)
    }
}

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                if w.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    w.to_string()
                } else {
                    format!("{c}*{w}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for UElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_terms().serialize(s)
    }
}
