use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::{Arc, RwLock};

use super::poly::NcPoly;
use super::word::Word;
use crate::error::{Error, Result};
use crate::parse::{self, EvalRing, ScalarLit};
use crate::scalar::{write_scaled, Scalar};

/// Step budget for the literal leftmost rewriter.
pub const REWRITE_BUDGET: usize = 1_000_000;

/// An oriented relation `lhs → rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule<S> {
    pub lhs: Word,
    pub rhs: NcPoly<S>,
}

/// A rational function `numerator(t) / Π (1 - t^e)` given by its integer
/// numerator coefficients and denominator exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub numerator: Vec<i64>,
    pub denominator: Vec<u32>,
}

impl HilbertSeries {
    /// Polynomial ring on generators of the given degrees.
    pub fn polynomial_ring(degrees: &[u32]) -> Self {
        HilbertSeries { numerator: vec![1], denominator: degrees.to_vec() }
    }

    /// Power-series coefficients of degrees `0..=upto`.
    pub fn coefficients(&self, upto: usize) -> Vec<i64> {
        let mut c = vec![0i64; upto + 1];
        for (i, &a) in self.numerator.iter().enumerate().take(upto + 1) {
            c[i] = a;
        }
        for &e in &self.denominator {
            let e = e as usize;
            for i in e..=upto {
                c[i] += c[i - e];
            }
        }
        c
    }

    /// `self / other` when it is a polynomial, as coefficient list.
    pub fn divide(&self, other: &HilbertSeries) -> Option<Vec<i64>> {
        // self/other = self.num * Π(1-t^f) / (other.num * Π(1-t^e))
        let mut num = self.numerator.clone();
        for &f in &other.denominator {
            let mut next = vec![0i64; num.len() + f as usize];
            for (i, &a) in num.iter().enumerate() {
                next[i] += a;
                next[i + f as usize] -= a;
            }
            num = next;
        }
        let mut den = other.numerator.clone();
        for &e in &self.denominator {
            let mut next = vec![0i64; den.len() + e as usize];
            for (i, &a) in den.iter().enumerate() {
                next[i] += a;
                next[i + e as usize] -= a;
            }
            den = next;
        }
        poly_div_exact(&num, &den)
    }
}

fn trim_i64(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Option<Vec<i64>> {
    let num = trim_i64(num.to_vec());
    let den = trim_i64(den.to_vec());
    let lead = *den.last()?;
    if lead == 0 {
        return None;
    }
    if num.len() < den.len() {
        return num.iter().all(|&x| x == 0).then(|| vec![0]);
    }
    let mut rem = num.clone();
    let mut quot = vec![0i64; num.len() - den.len() + 1];
    for k in (0..quot.len()).rev() {
        let top = rem[k + den.len() - 1];
        if top % lead != 0 {
            return None;
        }
        let q = top / lead;
        quot[k] = q;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= q * d;
        }
    }
    rem.iter().all(|&x| x == 0).then(|| trim_i64(quot))
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num = String::new();
        for (i, &c) in self.numerator.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            let sign = if c < 0 { "-" } else { "+" };
            if !num.is_empty() {
                num.push_str(&format!(" {sign} "));
            } else if c < 0 {
                num.push('-');
            }
            let a = c.unsigned_abs();
            num.push_str(&match (a, mono.is_empty()) {
                (_, true) => a.to_string(),
                (1, false) => mono,
                (_, false) => format!("{a}*{mono}"),
            });
        }
        let mut counts: Vec<(u32, usize)> = Vec::new();
        for &e in &self.denominator {
            match counts.iter_mut().find(|(x, _)| *x == e) {
                Some(c) => c.1 += 1,
                None => counts.push((e, 1)),
            }
        }
        counts.sort_unstable();
        let den: Vec<String> = counts
            .iter()
            .map(|&(e, k)| {
                let base = if e == 1 { "(1-t)".to_string() } else { format!("(1-t^{e})") };
                if k == 1 {
                    base
                } else {
                    format!("{base}^{k}")
                }
            })
            .collect();
        if den.is_empty() {
            write!(f, "{num}")
        } else if self.numerator.iter().filter(|&&c| c != 0).count() > 1 {
            write!(f, "({num})/({})", den.join("*"))
        } else {
            write!(f, "{num}/({})", den.join("*"))
        }
    }
}

/// Normal words of one degree, sorted in the monomial order, with a reverse index.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    pub words: Vec<Word>,
    pub index: HashMap<Word, usize>,
}

/// An overlap whose two reductions reach different normal forms.
#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPair<S> {
    pub word: Word,
    pub left: NcPoly<S>,
    pub right: NcPoly<S>,
}

/// Per-degree comparison of normal-word counts against the expected series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertReport {
    /// `(degree, computed, expected)`.
    pub rows: Vec<(u32, usize, i64)>,
    pub first_mismatch: Option<u32>,
}

struct Inner<S> {
    names: Vec<String>,
    degrees: Vec<u32>,
    rules: Vec<Rule<S>>,
    hilbert: Option<HilbertSeries>,
    /// `skew[i][j]` for `i < j`: the scalar in `x_j x_i = skew[i][j] x_i x_j`.
    skew: Option<Vec<Vec<S>>>,
    fast_path: AtomicBool,
    append_cache: RwLock<HashMap<(Word, u8), NcPoly<S>>>,
    basis_cache: RwLock<HashMap<u32, Arc<DegreeBasis>>>,
}

/// A graded algebra given by generators and oriented homogeneous relations.
/// Cloning is cheap; caches are shared between clones.
#[derive(Clone)]
pub struct Algebra<S: Scalar> {
    inner: Arc<Inner<S>>,
}

impl<S: Scalar> fmt::Debug for Algebra<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("names", &self.inner.names)
            .field("degrees", &self.inner.degrees)
            .field("rules", &self.inner.rules.len())
            .finish()
    }
}

fn validate_names(names: &[String], degrees: &[u32]) -> Result<()> {
    if names.is_empty() {
        return Err(Error::InvalidPresentation("no generators".into()));
    }
    if names.len() > 255 {
        return Err(Error::InvalidPresentation("too many generators".into()));
    }
    if names.len() != degrees.len() {
        return Err(Error::InvalidPresentation("one degree per generator is required".into()));
    }
    if degrees.contains(&0) {
        return Err(Error::InvalidPresentation("generator degrees must be positive".into()));
    }
    for (i, n) in names.iter().enumerate() {
        let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok || n == "zeta" || n == "i" {
            return Err(Error::InvalidPresentation(format!("invalid generator name `{n}`")));
        }
        if names[..i].contains(n) {
            return Err(Error::InvalidPresentation(format!("duplicate generator name `{n}`")));
        }
    }
    Ok(())
}

impl<S: Scalar> Algebra<S> {
    /// The free algebra on the given generators.
    pub fn free(names: Vec<String>, degrees: Vec<u32>) -> Result<Self> {
        Self::from_rules(names, degrees, Vec::new(), None)
    }

    /// Builds an algebra from already-oriented rules, checking that each rule
    /// is homogeneous and strictly decreasing in the monomial order.
    pub fn from_rules(
        names: Vec<String>,
        degrees: Vec<u32>,
        rules: Vec<Rule<S>>,
        hilbert: Option<HilbertSeries>,
    ) -> Result<Self> {
        validate_names(&names, &degrees)?;
        let n = names.len();
        let deg = |w: &Word| -> u32 { w.letters().iter().map(|&l| degrees[l as usize]).sum() };
        let cmp = |a: &Word, b: &Word| deg(a).cmp(&deg(b)).then_with(|| a.letters().cmp(b.letters()));
        for r in &rules {
            if r.lhs.len() < 2 {
                return Err(Error::InvalidPresentation("rule left-hand sides need length at least 2".into()));
            }
            if r.lhs.letters().iter().chain(r.rhs.terms().flat_map(|(w, _)| w.letters())).any(|&l| l as usize >= n) {
                return Err(Error::InvalidPresentation("rule mentions an unknown generator".into()));
            }
            let d = deg(&r.lhs);
            for (w, _) in r.rhs.terms() {
                if deg(w) != d {
                    return Err(Error::InvalidPresentation(format!(
                        "rule for `{}` is not homogeneous",
                        r.lhs.render(&names)
                    )));
                }
                if cmp(w, &r.lhs) != Ordering::Less {
                    return Err(Error::InvalidPresentation(format!(
                        "rule for `{}` is not decreasing in the monomial order",
                        r.lhs.render(&names)
                    )));
                }
            }
        }
        let skew = detect_skew(n, &rules);
        Ok(Algebra {
            inner: Arc::new(Inner {
                names,
                degrees,
                rules,
                hilbert,
                skew,
                fast_path: AtomicBool::new(true),
                append_cache: RwLock::new(HashMap::new()),
                basis_cache: RwLock::new(HashMap::new()),
            }),
        })
    }

    /// Orients each homogeneous relation by its leading word.
    pub fn from_relations(
        names: Vec<String>,
        degrees: Vec<u32>,
        relations: Vec<NcPoly<S>>,
        hilbert: Option<HilbertSeries>,
    ) -> Result<Self> {
        validate_names(&names, &degrees)?;
        let free = Self::free(names.clone(), degrees.clone())?;
        let mut rules = Vec::new();
        for rel in relations {
            if rel.is_zero() {
                continue;
            }
            let lead = rel.terms().map(|(w, _)| w.clone()).max_by(|a, b| free.cmp_words(a, b)).unwrap();
            let c = rel.coeff(&lead);
            let inv = c.inv().ok_or(Error::DivisionByZero)?;
            let rhs = NcPoly::from_terms(
                rel.terms().filter(|(w, _)| **w != lead).map(|(w, x)| (w.clone(), -(x.clone() * &inv))),
            );
            rules.push(Rule { lhs: lead, rhs });
        }
        Self::from_rules(names, degrees, rules, hilbert)
    }

    /// Parses relations written as `lhs = rhs` or as a single polynomial.
    pub fn parse_relations<T: AsRef<str>>(
        names: Vec<String>,
        degrees: Vec<u32>,
        relations: &[T],
        hilbert: Option<HilbertSeries>,
    ) -> Result<Self> {
        let free = Self::free(names.clone(), degrees.clone())?;
        let mut polys = Vec::new();
        for text in relations {
            let text = text.as_ref();
            let p = match text.split_once('=') {
                Some((l, r)) => {
                    let lhs = free.parse(l)?;
                    let rhs = free.parse(r).map_err(|e| shift_error(e, l.len() + 1))?;
                    lhs.sub(&rhs)
                }
                None => free.parse(text)?,
            };
            polys.push(p);
        }
        Self::from_relations(names, degrees, polys, hilbert)
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.inner.degrees
    }

    pub fn num_gens(&self) -> usize {
        self.inner.names.len()
    }

    pub fn rules(&self) -> &[Rule<S>] {
        &self.inner.rules
    }

    pub fn hilbert(&self) -> Option<&HilbertSeries> {
        self.inner.hilbert.as_ref()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.inner.names.iter().position(|n| n == name)
    }

    pub fn generator(&self, i: usize) -> NcPoly<S> {
        NcPoly::word(Word::letter(i))
    }

    /// True when every relation has the form `x_j x_i = c·x_i x_j`, one per pair.
    pub fn is_skew_polynomial(&self) -> bool {
        self.inner.skew.is_some()
    }

    /// The commutation scalar `c` in `x_j x_i = c·x_i x_j` (`i < j`).
    pub fn skew_scalar(&self, i: usize, j: usize) -> Option<&S> {
        self.inner.skew.as_ref().map(|s| &s[i][j])
    }

    /// Enables or disables the closed-form product for skew polynomial rings.
    pub fn set_fast_path(&self, on: bool) {
        self.inner.fast_path.store(on, AtomicOrdering::Relaxed);
    }

    fn use_fast_path(&self) -> bool {
        self.inner.skew.is_some() && self.inner.fast_path.load(AtomicOrdering::Relaxed)
    }

    pub fn word_degree(&self, w: &Word) -> u32 {
        w.letters().iter().map(|&l| self.inner.degrees[l as usize]).sum()
    }

    /// Weighted degree first, then lexicographic with `x1 < x2 < ...`.
    pub fn cmp_words(&self, a: &Word, b: &Word) -> Ordering {
        self.word_degree(a).cmp(&self.word_degree(b)).then_with(|| a.letters().cmp(b.letters()))
    }

    /// The common degree of all terms, `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self, p: &NcPoly<S>) -> Option<u32> {
        let mut it = p.terms().map(|(w, _)| self.word_degree(w));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn homogeneous_part(&self, p: &NcPoly<S>, d: u32) -> NcPoly<S> {
        p.filter(|w| self.word_degree(w) == d)
    }

    pub fn degrees_present(&self, p: &NcPoly<S>) -> Vec<u32> {
        let mut ds: Vec<u32> = p.terms().map(|(w, _)| self.word_degree(w)).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// The largest word in the monomial order and its coefficient.
    pub fn leading_term<'a>(&self, p: &'a NcPoly<S>) -> Option<(&'a Word, &'a S)> {
        p.terms().max_by(|a, b| self.cmp_words(a.0, b.0))
    }

    /// `p` divided by the coefficient of its leading word.
    pub fn canonical_up_to_scalar(&self, p: &NcPoly<S>) -> Result<NcPoly<S>> {
        let (_, c) = self.leading_term(p).ok_or(Error::DivisionByZero)?;
        Ok(p.scale(&c.inv().ok_or(Error::DivisionByZero)?))
    }

    pub fn eq_up_to_scalar(&self, a: &NcPoly<S>, b: &NcPoly<S>) -> bool {
        match (self.canonical_up_to_scalar(a), self.canonical_up_to_scalar(b)) {
            (Ok(x), Ok(y)) => x == y,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }

    // ---- rewriting -------------------------------------------------------

    fn leftmost_redex(&self, w: &Word) -> Option<(usize, usize)> {
        let letters = w.letters();
        for pos in 0..letters.len() {
            for (ri, r) in self.inner.rules.iter().enumerate() {
                if letters[pos..].starts_with(r.lhs.letters()) {
                    return Some((pos, ri));
                }
            }
        }
        None
    }

    fn apply_rule_at(&self, w: &Word, pos: usize, rule: usize) -> NcPoly<S> {
        let r = &self.inner.rules[rule];
        let pre = &w.letters()[..pos];
        let post = &w.letters()[pos + r.lhs.len()..];
        NcPoly::from_terms(r.rhs.terms().map(|(rw, c)| {
            let mut v = Vec::with_capacity(pre.len() + rw.len() + post.len());
            v.extend_from_slice(pre);
            v.extend_from_slice(rw.letters());
            v.extend_from_slice(post);
            (Word(v), c.clone())
        }))
    }

    /// Normal form by repeatedly rewriting the leftmost redex, with a step budget.
    pub fn normal_form_with_budget(&self, p: &NcPoly<S>, budget: usize) -> Result<NcPoly<S>> {
        let mut work = p.clone();
        let mut done = NcPoly::zero();
        let mut steps = 0usize;
        while let Some((w, c)) = work.pop_last() {
            match self.leftmost_redex(&w) {
                None => done.add_term(w, c),
                Some((pos, ri)) => {
                    steps += 1;
                    if steps > budget {
                        return Err(Error::RewriteBudget { word: w.render(self.names()) });
                    }
                    work.add_scaled(&self.apply_rule_at(&w, pos, ri), &c);
                }
            }
        }
        Ok(done)
    }

    pub fn normal_form(&self, p: &NcPoly<S>) -> Result<NcPoly<S>> {
        self.normal_form_with_budget(p, REWRITE_BUDGET)
    }

    pub fn is_normal_word(&self, w: &Word) -> bool {
        self.leftmost_redex(w).is_none()
    }

    /// `w·x` reduced, for a normal word `w`. Any redex in `w·x` is a suffix.
    fn append_letter(&self, w: &Word, x: u8) -> NcPoly<S> {
        let wx = w.push(x);
        let mut best: Option<&Rule<S>> = None;
        for r in &self.inner.rules {
            if wx.ends_with(&r.lhs) && best.is_none_or(|b| r.lhs.len() > b.lhs.len()) {
                best = Some(r);
            }
        }
        let Some(rule) = best else { return NcPoly::word(wx) };
        let key = (w.clone(), x);
        if let Some(hit) = self.inner.append_cache.read().unwrap().get(&key) {
            return hit.clone();
        }
        let prefix = Word(wx.letters()[..wx.len() - rule.lhs.len()].to_vec());
        let mut out = NcPoly::zero();
        for (rw, c) in rule.rhs.terms() {
            let t = self.append_word(&NcPoly::word(prefix.clone()), rw);
            out.add_scaled(&t, c);
        }
        self.inner.append_cache.write().unwrap().insert(key, out.clone());
        out
    }

    fn append_word(&self, p: &NcPoly<S>, v: &Word) -> NcPoly<S> {
        let mut cur = p.clone();
        for &x in v.letters() {
            let mut next = NcPoly::zero();
            for (w, c) in cur.terms() {
                next.add_scaled(&self.append_letter(w, x), c);
            }
            cur = next;
        }
        cur
    }

    fn skew_product(&self, u: &Word, v: &Word) -> NcPoly<S> {
        let skew = self.inner.skew.as_ref().unwrap();
        let n = self.num_gens();
        let a = u.exponents(n);
        let b = v.exponents(n);
        let mut c = S::one();
        for i in 0..n {
            for j in i + 1..n {
                let e = a[j] as u64 * b[i] as u64;
                if e > 0 {
                    c = c * &skew[i][j].pow(e);
                }
            }
        }
        let mut letters = Vec::with_capacity(u.len() + v.len());
        for (i, (x, y)) in a.iter().zip(&b).enumerate() {
            letters.extend(std::iter::repeat_n(i as u8, (x + y) as usize));
        }
        NcPoly::term(Word(letters), c)
    }

    /// Product of two normal words, reduced.
    pub fn mul_words(&self, u: &Word, v: &Word) -> NcPoly<S> {
        if self.use_fast_path() {
            return self.skew_product(u, v);
        }
        self.append_word(&NcPoly::word(u.clone()), v)
    }

    /// Product of two normal-form polynomials.
    pub fn mul(&self, p: &NcPoly<S>, q: &NcPoly<S>) -> NcPoly<S> {
        let mut out = NcPoly::zero();
        if self.use_fast_path() {
            for (u, a) in p.terms() {
                for (v, b) in q.terms() {
                    out.add_scaled(&self.skew_product(u, v), &(a.clone() * b));
                }
            }
            return out;
        }
        for (v, b) in q.terms() {
            out.add_scaled(&self.append_word(p, v), b);
        }
        out
    }

    pub fn pow(&self, p: &NcPoly<S>, mut e: u32) -> NcPoly<S> {
        let mut acc = NcPoly::one();
        let mut base = p.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Reduces an arbitrary combination of words by multiplying letters in.
    pub fn reduce(&self, p: &NcPoly<S>) -> NcPoly<S> {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            out.add_scaled(&self.append_word(&NcPoly::one(), w), c);
        }
        out
    }

    pub fn commutator(&self, a: &NcPoly<S>, b: &NcPoly<S>) -> NcPoly<S> {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    // ---- confluence and bases -------------------------------------------

    /// Overlaps of rule left-hand sides up to `degree_bound` whose two
    /// one-step reductions have different normal forms.
    pub fn check_local_confluence(&self, degree_bound: u32) -> Vec<CriticalPair<S>> {
        let rules = &self.inner.rules;
        let mut candidates: Vec<(Word, NcPoly<S>, NcPoly<S>)> = Vec::new();
        for (i, r1) in rules.iter().enumerate() {
            for (j, r2) in rules.iter().enumerate() {
                let (l1, l2) = (r1.lhs.letters(), r2.lhs.letters());
                let contained = i != j && (l2.len() < l1.len() || (l2.len() == l1.len() && i < j));
                if contained {
                    let mut from = 0;
                    while let Some(pos) = r1.lhs.find(&r2.lhs, from) {
                        let w = r1.lhs.clone();
                        candidates.push((w.clone(), self.apply_rule_at(&w, 0, i), self.apply_rule_at(&w, pos, j)));
                        from = pos + 1;
                    }
                }
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] == l2[..k] {
                        let w = Word([l1, &l2[k..]].concat());
                        let pos = l1.len() - k;
                        candidates.push((w.clone(), self.apply_rule_at(&w, 0, i), self.apply_rule_at(&w, pos, j)));
                    }
                }
            }
        }
        let mut failures = Vec::new();
        for (w, a, b) in candidates {
            if self.word_degree(&w) > degree_bound {
                continue;
            }
            let na = self.normal_form(&a);
            let nb = self.normal_form(&b);
            match (na, nb) {
                (Ok(x), Ok(y)) if x == y => {}
                (x, y) => failures.push(CriticalPair { word: w, left: x.unwrap_or_default(), right: y.unwrap_or_default() }),
            }
        }
        failures
    }

    /// Normal words of weighted degree `d`, sorted in the monomial order.
    pub fn basis(&self, d: u32) -> Arc<DegreeBasis> {
        if let Some(b) = self.inner.basis_cache.read().unwrap().get(&d) {
            return b.clone();
        }
        let mut words = Vec::new();
        let mut stack = vec![(Word::empty(), 0u32)];
        while let Some((w, deg)) = stack.pop() {
            if deg == d {
                words.push(w);
                continue;
            }
            for (x, &dx) in self.inner.degrees.iter().enumerate() {
                if deg + dx > d {
                    continue;
                }
                let wx = w.push(x as u8);
                if self.inner.rules.iter().any(|r| wx.ends_with(&r.lhs)) {
                    continue;
                }
                stack.push((wx, deg + dx));
            }
        }
        words.sort_by(|a, b| self.cmp_words(a, b));
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let b = Arc::new(DegreeBasis { words, index });
        self.inner.basis_cache.write().unwrap().insert(d, b.clone());
        b
    }

    pub fn monomial_basis(&self, d: u32) -> Vec<Word> {
        self.basis(d).words.clone()
    }

    pub fn dimension(&self, d: u32) -> usize {
        self.basis(d).words.len()
    }

    /// Coordinates of a normal-form element in the degree-`d` word basis.
    /// Terms of other degrees are ignored.
    pub fn coords(&self, p: &NcPoly<S>, d: u32) -> Vec<S> {
        let b = self.basis(d);
        let mut v = vec![S::zero(); b.words.len()];
        for (w, c) in p.terms() {
            if let Some(&i) = b.index.get(w) {
                v[i] = c.clone();
            }
        }
        v
    }

    pub fn from_coords(&self, d: u32, v: &[S]) -> NcPoly<S> {
        let b = self.basis(d);
        NcPoly::from_terms(b.words.iter().cloned().zip(v.iter().cloned()))
    }

    pub fn hilbert_check(&self, upto: u32) -> Option<HilbertReport> {
        let series = self.inner.hilbert.as_ref()?;
        let expected = series.coefficients(upto as usize);
        let mut rows = Vec::new();
        let mut first = None;
        for d in 0..=upto {
            let got = self.dimension(d);
            if first.is_none() && got as i64 != expected[d as usize] {
                first = Some(d);
            }
            rows.push((d, got, expected[d as usize]));
        }
        Some(HilbertReport { rows, first_mismatch: first })
    }

    // ---- text ------------------------------------------------------------

    pub fn parse(&self, text: &str) -> Result<NcPoly<S>> {
        self.parse_with(text, &[])
    }

    /// Parses with extra named elements (for example central generators).
    pub fn parse_with(&self, text: &str, bindings: &[(String, NcPoly<S>)]) -> Result<NcPoly<S>> {
        let expr = parse::parse(text)?;
        expr.eval(&AlgebraRing { alg: self, bindings })
    }

    /// Renders terms in ascending monomial order, e.g. `x^2 + 2*x*y + y^2`.
    pub fn render(&self, p: &NcPoly<S>) -> String {
        RenderNc { alg: self, p }.to_string()
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            "1".to_string()
        } else {
            w.render(self.names())
        }
    }

    pub fn render_words(&self, d: u32) -> Vec<String> {
        self.basis(d).words.iter().map(|w| self.render_word(w)).collect()
    }
}

fn shift_error(e: Error, by: usize) -> Error {
    match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos: pos + by, msg },
        Error::NegativeExponent(p) => Error::NegativeExponent(p + by),
        other => other,
    }
}

fn detect_skew<S: Scalar>(n: usize, rules: &[Rule<S>]) -> Option<Vec<Vec<S>>> {
    if rules.len() != n * (n - 1) / 2 {
        return None;
    }
    let mut table = vec![vec![S::one(); n]; n];
    let mut seen = vec![vec![false; n]; n];
    for r in rules {
        let l = r.lhs.letters();
        if l.len() != 2 || l[0] <= l[1] || r.rhs.num_terms() != 1 {
            return None;
        }
        let (j, i) = (l[0] as usize, l[1] as usize);
        let (w, c) = r.rhs.terms().next().unwrap();
        if w.letters() != [i as u8, j as u8] || seen[i][j] {
            return None;
        }
        seen[i][j] = true;
        table[i][j] = c.clone();
    }
    Some(table)
}

struct AlgebraRing<'a, S: Scalar> {
    alg: &'a Algebra<S>,
    bindings: &'a [(String, NcPoly<S>)],
}

impl<S: Scalar> EvalRing for AlgebraRing<'_, S> {
    type Value = NcPoly<S>;

    fn scalar(&self, lit: &ScalarLit, pos: usize) -> Result<NcPoly<S>> {
        Ok(NcPoly::constant(lit.to_scalar(pos)?))
    }

    fn ident(&self, name: &str, _pos: usize) -> Result<NcPoly<S>> {
        if let Some(i) = self.alg.generator_index(name) {
            return Ok(self.alg.generator(i));
        }
        self.bindings
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p.clone())
            .ok_or_else(|| Error::UnknownIdentifier(name.to_string()))
    }

    fn add(&self, a: &NcPoly<S>, b: &NcPoly<S>) -> NcPoly<S> {
        a.add(b)
    }

    fn sub(&self, a: &NcPoly<S>, b: &NcPoly<S>) -> NcPoly<S> {
        a.sub(b)
    }

    fn mul(&self, a: &NcPoly<S>, b: &NcPoly<S>) -> NcPoly<S> {
        self.alg.mul(a, b)
    }

    fn neg(&self, a: &NcPoly<S>) -> NcPoly<S> {
        a.neg()
    }

    fn one(&self) -> NcPoly<S> {
        NcPoly::one()
    }

    fn pow(&self, a: &NcPoly<S>, e: u32) -> NcPoly<S> {
        self.alg.pow(a, e)
    }
}

struct RenderNc<'a, S: Scalar> {
    alg: &'a Algebra<S>,
    p: &'a NcPoly<S>,
}

impl<S: Scalar> fmt::Display for RenderNc<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Word, &S)> = self.p.terms().collect();
        terms.sort_by(|a, b| self.alg.cmp_words(a.0, b.0));
        for (i, (w, c)) in terms.into_iter().enumerate() {
            write_scaled(f, c, &w.render(self.alg.names()), i == 0)?;
        }
        Ok(())
    }
}
