use std::collections::BTreeMap;

use super::word::Word;
use crate::scalar::Scalar;

/// A finite linear combination of words. Arithmetic that needs the
/// relations (products, normal forms) lives on [`Algebra`](super::Algebra).
#[derive(Clone, Debug, PartialEq)]
pub struct NcPoly<S> {
    terms: BTreeMap<Word, S>,
}

impl<S: Scalar> Default for NcPoly<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> NcPoly<S> {
    pub fn zero() -> Self {
        NcPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn term(w: Word, c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NcPoly { terms }
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, S::one())
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Word, S)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in it {
            p.add_term(w, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &S)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, S)> {
        self.terms.into_iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> S {
        self.terms.get(w).cloned().unwrap_or_else(S::zero)
    }

    pub fn as_constant(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, other: &NcPoly<S>, c: &S) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x.clone() * c);
        }
    }

    pub fn add(&self, other: &NcPoly<S>) -> NcPoly<S> {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NcPoly<S>) -> NcPoly<S> {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> NcPoly<S> {
        NcPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, c: &S) -> NcPoly<S> {
        if c.is_zero() {
            return Self::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(w, x)| (w.clone(), x.clone() * c)).collect() }
    }

    /// Largest word under the length-then-lex order.
    pub fn leading_term(&self) -> Option<(&Word, &S)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn pop_last(&mut self) -> Option<(Word, S)> {
        self.terms.pop_last()
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Word) -> bool) -> NcPoly<S> {
        NcPoly { terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }
}
