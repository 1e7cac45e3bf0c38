//! Commutative multivariate polynomials in named variables and exact
//! determinants of matrices with polynomial entries.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{write_scaled, Scalar};

/// Exponent vector aligned with the owning polynomial's variable list.
/// Ordered graded-lex: total degree first, then the exponent of the first
/// variable, then the second, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divide(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders names so that `x2 < x10`: a common prefix is compared as text and
/// trailing digit runs numerically.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn split(s: &str) -> (&str, Option<u64>) {
        let idx = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        (&s[..idx], s[idx..].parse().ok())
    }
    let (pa, na) = split(a);
    let (pb, nb) = split(b);
    pa.cmp(pb).then(na.cmp(&nb)).then(a.cmp(b))
}

fn sorted_vars(names: impl IntoIterator<Item = String>) -> Arc<[String]> {
    let mut v: Vec<String> = names.into_iter().collect();
    v.sort_by(|a, b| natural_cmp(a, b));
    v.dedup();
    v.into()
}

/// A polynomial with coefficients in `S` over a sorted list of variable names.
#[derive(Clone, Debug)]
pub struct CommPoly<S> {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> CommPoly<S> {
    pub fn zero<T: AsRef<str>>(vars: &[T]) -> Self {
        CommPoly { vars: sorted_vars(vars.iter().map(|s| s.as_ref().to_string())), terms: BTreeMap::new() }
    }

    pub fn constant<T: AsRef<str>>(vars: &[T], c: S) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(p.vars.len()), c);
        }
        p
    }

    pub fn one<T: AsRef<str>>(vars: &[T]) -> Self {
        Self::constant(vars, S::one())
    }

    /// The variable `name`, which is added to the variable list if absent.
    pub fn var<T: AsRef<str>>(vars: &[T], name: &str) -> Self {
        let mut names: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        names.push(name.to_string());
        let mut p = Self::zero(&names);
        let mut e = vec![0; p.vars.len()];
        e[p.index_of(name).unwrap()] = 1;
        p.terms.insert(Monomial(e), S::one());
        p
    }

    /// Builds `c · Π vars[i]^exps[i]` in the given (sorted) variable context.
    pub fn monomial<T: AsRef<str>>(vars: &[T], exps: &[(String, u32)], c: S) -> Self {
        let mut p = Self::zero(vars);
        let mut e = vec![0; p.vars.len()];
        for (name, k) in exps {
            let i = p.index_of(name).expect("variable present");
            e[i] += k;
        }
        if !c.is_zero() {
            p.terms.insert(Monomial(e), c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, when the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &S)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Weighted degree with one weight per variable.
    pub fn weighted_degrees(&self, weights: &[u32]) -> Vec<u32> {
        let mut ds: Vec<u32> = self
            .terms
            .keys()
            .map(|m| m.0.iter().zip(weights).map(|(e, w)| e * w).sum())
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Re-expresses the polynomial over a superset of its variables.
    pub fn aligned(&self, vars: &Arc<[String]>) -> Self {
        if Arc::ptr_eq(&self.vars, vars) || *self.vars == **vars {
            return CommPoly { vars: vars.clone(), terms: self.terms.clone() };
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("variable missing from target context"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; vars.len()];
                for (i, k) in m.0.iter().enumerate() {
                    e[map[i]] = *k;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        CommPoly { vars: vars.clone(), terms }
    }

    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        if Arc::ptr_eq(&a.vars, &b.vars) || *a.vars == *b.vars {
            return (a.clone(), b.clone());
        }
        let vars = sorted_vars(a.vars.iter().chain(b.vars.iter()).cloned());
        (a.aligned(&vars), b.aligned(&vars))
    }

    fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add_ref(&self, other: &Self) -> Self {
        if !(Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars) {
            let (a, b) = Self::unify(self, other);
            return a.add_ref(&b);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        CommPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return CommPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        CommPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c)).collect(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if !(Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars) {
            let (a, b) = Self::unify(self, other);
            return a.mul_ref(&b);
        }
        let mut out = CommPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CommPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        acc.terms.insert(Monomial::one(self.vars.len()), S::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// `q` with `self = q·g`, or [`Error::NotDivisible`].
    pub fn exact_divide(&self, g: &Self) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut rem, g) = Self::unify(self, g);
        let (gm, gc) = g.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let gc_inv = gc.inv().ok_or(Error::DivisionByZero)?;
        let mut quot = CommPoly { vars: rem.vars.clone(), terms: BTreeMap::new() };
        while let Some((rm, rc)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let Some(qm) = rm.divide(&gm) else {
                return Err(Error::NotDivisible(format!("{self} by {g}")));
            };
            let qc = rc * &gc_inv;
            for (m, c) in &g.terms {
                rem.add_term(m.mul(&qm), -(c.clone() * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Self> {
        let i = self.index_of(var).ok_or_else(|| Error::UnknownIdentifier(var.to_string()))?;
        let mut out = CommPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            let k = m.0[i];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[i] -= 1;
            out.add_term(Monomial(e), c.clone() * &S::from_i64(k as i64));
        }
        Ok(out)
    }

    /// `self` divided by its graded-lex leading coefficient.
    pub fn canonical_up_to_scalar(&self) -> Result<Self> {
        let (_, c) = self.leading_term().ok_or(Error::DivisionByZero)?;
        let inv = c.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.scale(&inv))
    }

    /// Equality up to a nonzero scalar factor.
    pub fn eq_up_to_scalar(&self, other: &Self) -> bool {
        match (self.canonical_up_to_scalar(), other.canonical_up_to_scalar()) {
            (Ok(a), Ok(b)) => a == b,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }

    /// Replaces every variable by a polynomial (missing entries stay as is).
    pub fn substitute(&self, images: &[(String, CommPoly<S>)]) -> Self {
        let mut acc: Option<CommPoly<S>> = None;
        let mut cache: Vec<Vec<CommPoly<S>>> = vec![Vec::new(); self.vars.len()];
        let image_of = |name: &str| -> CommPoly<S> {
            images
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, p)| p.clone())
                .unwrap_or_else(|| CommPoly::var(&self.vars, name))
        };
        for (m, c) in &self.terms {
            let mut term: Option<CommPoly<S>> = None;
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if cache[i].is_empty() {
                    let base = image_of(&self.vars[i]);
                    cache[i].push(base.pow(0));
                    cache[i].push(base);
                }
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap().mul_ref(&cache[i][1]);
                    cache[i].push(next);
                }
                let f = cache[i][k as usize].clone();
                term = Some(match term {
                    None => f,
                    Some(t) => t.mul_ref(&f),
                });
            }
            let term = match term {
                Some(t) => t.scale(c),
                None => CommPoly::constant(&self.vars, c.clone()),
            };
            acc = Some(match acc {
                None => term,
                Some(a) => a.add_ref(&term),
            });
        }
        acc.unwrap_or_else(|| CommPoly { vars: self.vars.clone(), terms: BTreeMap::new() })
    }

    /// Parses an expression whose identifiers are among `vars`.
    pub fn parse<T: AsRef<str>>(text: &str, vars: &[T]) -> Result<Self> {
        let expr = crate::parse::parse(text)?;
        let ctx = CommPoly::<S>::zero(vars);
        expr.eval(&CommRing { vars: ctx.vars.clone(), _scalar: std::marker::PhantomData })
    }

    /// Writes a monomial as `X^2*Y`, or an empty string for 1.
    pub fn render_monomial(vars: &[String], m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (v, &k) in vars.iter().zip(&m.0) {
            match k {
                0 => {}
                1 => parts.push(v.clone()),
                _ => parts.push(format!("{v}^{k}")),
            }
        }
        parts.join("*")
    }
}

impl<S: Scalar> PartialEq for CommPoly<S> {
    fn eq(&self, other: &Self) -> bool {
        if *self.vars == *other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = Self::unify(self, other);
        a.terms == b.terms
    }
}

impl<S: Scalar> fmt::Display for CommPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            write_scaled(f, c, &Self::render_monomial(&self.vars, m), i == 0)?;
        }
        Ok(())
    }
}

impl<S: Scalar> Add for &CommPoly<S> {
    type Output = CommPoly<S>;
    fn add(self, rhs: Self) -> CommPoly<S> {
        self.add_ref(rhs)
    }
}

impl<S: Scalar> Sub for &CommPoly<S> {
    type Output = CommPoly<S>;
    fn sub(self, rhs: Self) -> CommPoly<S> {
        self.sub_ref(rhs)
    }
}

impl<S: Scalar> Mul for &CommPoly<S> {
    type Output = CommPoly<S>;
    fn mul(self, rhs: Self) -> CommPoly<S> {
        self.mul_ref(rhs)
    }
}

impl<S: Scalar> Neg for &CommPoly<S> {
    type Output = CommPoly<S>;
    fn neg(self) -> CommPoly<S> {
        self.neg_ref()
    }
}

struct CommRing<S> {
    vars: Arc<[String]>,
    _scalar: std::marker::PhantomData<S>,
}

impl<S: Scalar> crate::parse::EvalRing for CommRing<S> {
    type Value = CommPoly<S>;

    fn scalar(&self, lit: &crate::parse::ScalarLit, pos: usize) -> Result<CommPoly<S>> {
        Ok(CommPoly::constant(&self.vars, lit.to_scalar(pos)?))
    }

    fn ident(&self, name: &str, _pos: usize) -> Result<CommPoly<S>> {
        if !self.vars.iter().any(|v| v == name) {
            return Err(Error::UnknownIdentifier(name.to_string()));
        }
        Ok(CommPoly::var(&self.vars, name))
    }

    fn add(&self, a: &CommPoly<S>, b: &CommPoly<S>) -> CommPoly<S> {
        a.add_ref(b)
    }

    fn sub(&self, a: &CommPoly<S>, b: &CommPoly<S>) -> CommPoly<S> {
        a.sub_ref(b)
    }

    fn mul(&self, a: &CommPoly<S>, b: &CommPoly<S>) -> CommPoly<S> {
        a.mul_ref(b)
    }

    fn neg(&self, a: &CommPoly<S>) -> CommPoly<S> {
        a.neg_ref()
    }

    fn one(&self) -> CommPoly<S> {
        CommPoly::one(&self.vars)
    }
}

/// Puts every entry of a matrix over one common variable list.
fn unify_matrix<S: Scalar>(m: &[Vec<CommPoly<S>>]) -> Vec<Vec<CommPoly<S>>> {
    let vars = sorted_vars(m.iter().flatten().flat_map(|p| p.vars.iter().cloned()));
    m.iter().map(|row| row.iter().map(|p| p.aligned(&vars)).collect()).collect()
}

/// Determinant by Laplace expansion along the first row.
pub fn cofactor_determinant<S: Scalar>(m: &[Vec<CommPoly<S>>]) -> CommPoly<S> {
    let m = unify_matrix(m);
    cofactor_rec(&m)
}

fn cofactor_rec<S: Scalar>(m: &[Vec<CommPoly<S>>]) -> CommPoly<S> {
    let n = m.len();
    match n {
        0 => panic!("empty matrix has no variable context"),
        1 => return m[0][0].clone(),
        2 => return m[0][0].mul_ref(&m[1][1]).sub_ref(&m[0][1].mul_ref(&m[1][0])),
        _ => {}
    }
    let mut acc = CommPoly { vars: m[0][0].vars.clone(), terms: BTreeMap::new() };
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<CommPoly<S>>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let t = m[0][j].mul_ref(&cofactor_rec(&minor));
        acc = if j % 2 == 0 { acc.add_ref(&t) } else { acc.sub_ref(&t) };
    }
    acc
}

/// Fraction-free Bareiss elimination with exact division. Pivots are chosen
/// among the nonzero candidates in the current column with the fewest terms.
pub fn bareiss_determinant<S: Scalar>(m: &[Vec<CommPoly<S>>]) -> Result<CommPoly<S>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidPresentation("determinant of a non-square matrix".into()));
    }
    let mut a = unify_matrix(m);
    let vars = a[0][0].vars.clone();
    let zero = CommPoly { vars: vars.clone(), terms: BTreeMap::new() };
    let mut prev = CommPoly::constant(&vars, S::one());
    let mut negate = false;
    for k in 0..n.saturating_sub(1) {
        let pivot = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| (a[i][k].num_terms(), i));
        let Some(p) = pivot else { return Ok(zero) };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let prev_ref = &prev;
        tail.par_iter_mut().try_for_each(|row| -> Result<()> {
            for j in k + 1..n {
                let lhs = pivot_row[k].mul_ref(&row[j]);
                let rhs = row[k].mul_ref(&pivot_row[j]);
                let num = lhs.sub_ref(&rhs);
                row[j] = num.exact_divide(prev_ref)?;
            }
            row[k] = CommPoly { vars: pivot_row[k].vars.clone(), terms: BTreeMap::new() };
            Ok(())
        })?;
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.neg_ref() } else { d })
}

/// Exact determinant: cofactor expansion up to 4×4, Bareiss beyond.
pub fn determinant<S: Scalar>(m: &[Vec<CommPoly<S>>]) -> Result<CommPoly<S>> {
    if m.iter().any(|r| r.len() != m.len()) {
        return Err(Error::InvalidPresentation("determinant of a non-square matrix".into()));
    }
    if m.len() <= 4 {
        Ok(cofactor_determinant(m))
    } else {
        bareiss_determinant(m)
    }
}
