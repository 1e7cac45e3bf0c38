//! Graded algebras that are free of finite rank over a commutative
//! subalgebra generated by named homogeneous elements: decompositions,
//! Hattori-Stallings traces, discriminants and Frobenius data.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use rayon::prelude::*;

use crate::commpoly::{determinant, CommPoly, Monomial};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Solution, Solver};
use crate::ncpoly::{Algebra, HilbertSeries, NcPoly, Word};
use crate::scalar::Scalar;

/// Which side the subalgebra coefficients sit on in a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `a = Σ b_k · r_k`
    Right,
    /// `a = Σ r_k · b_k`
    Left,
}

#[derive(Clone, Debug)]
pub struct CentralGenerator<S> {
    pub name: String,
    pub definition: NcPoly<S>,
    pub degree: u32,
}

/// A commutative subalgebra `R` of `A` generated by named homogeneous
/// elements, treated as a polynomial ring in those names.
pub struct CentralSubalgebra<S: Scalar> {
    alg: Algebra<S>,
    /// Sorted in the variable order of [`CommPoly`].
    gens: Vec<CentralGenerator<S>>,
    vars: Vec<String>,
    expand_cache: RwLock<HashMap<Vec<u32>, NcPoly<S>>>,
}

impl<S: Scalar> CentralSubalgebra<S> {
    pub fn new(alg: &Algebra<S>, gens: Vec<(String, NcPoly<S>)>) -> Result<Self> {
        let mut out = Vec::new();
        for (name, def) in gens {
            if alg.generator_index(&name).is_some() {
                return Err(Error::InvalidPresentation(format!(
                    "subalgebra generator `{name}` clashes with an algebra generator"
                )));
            }
            if out.iter().any(|g: &CentralGenerator<S>| g.name == name) {
                return Err(Error::InvalidPresentation(format!("duplicate subalgebra generator `{name}`")));
            }
            let degree = alg.homogeneous_degree(&def).ok_or_else(|| {
                Error::InvalidPresentation(format!("subalgebra generator `{name}` is zero or not homogeneous"))
            })?;
            if degree == 0 {
                return Err(Error::InvalidPresentation(format!("subalgebra generator `{name}` has degree 0")));
            }
            out.push(CentralGenerator { name, definition: def, degree });
        }
        out.sort_by(|a, b| crate::commpoly::natural_cmp(&a.name, &b.name));
        let vars = out.iter().map(|g| g.name.clone()).collect();
        Ok(CentralSubalgebra { alg: alg.clone(), gens: out, vars, expand_cache: RwLock::new(HashMap::new()) })
    }

    /// Parses `(name, expression)` definitions in the algebra's language.
    pub fn parse<T: AsRef<str>>(alg: &Algebra<S>, defs: &[(T, T)]) -> Result<Self> {
        let mut gens = Vec::new();
        for (name, text) in defs {
            gens.push((name.as_ref().to_string(), alg.parse(text.as_ref())?));
        }
        Self::new(alg, gens)
    }

    /// The trivial subalgebra `𝕜` (no generators).
    pub fn trivial(alg: &Algebra<S>) -> Self {
        CentralSubalgebra { alg: alg.clone(), gens: Vec::new(), vars: Vec::new(), expand_cache: RwLock::new(HashMap::new()) }
    }

    pub fn algebra(&self) -> &Algebra<S> {
        &self.alg
    }

    pub fn generators(&self) -> &[CentralGenerator<S>] {
        &self.gens
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> Vec<u32> {
        self.gens.iter().map(|g| g.degree).collect()
    }

    pub fn zero(&self) -> CommPoly<S> {
        CommPoly::zero(&self.vars)
    }

    pub fn constant(&self, c: S) -> CommPoly<S> {
        CommPoly::constant(&self.vars, c)
    }

    pub fn monomial_poly(&self, m: &Monomial, c: S) -> CommPoly<S> {
        let exps: Vec<(String, u32)> = self.vars.iter().cloned().zip(m.0.iter().copied()).collect();
        CommPoly::monomial(&self.vars, &exps, c)
    }

    /// Hilbert series of the polynomial ring on the generators.
    pub fn hilbert(&self) -> HilbertSeries {
        HilbertSeries::polynomial_ring(&self.weights())
    }

    /// Parses an expression in the subalgebra's variable names.
    pub fn parse_poly(&self, text: &str) -> Result<CommPoly<S>> {
        CommPoly::parse(text, &self.vars)
    }

    /// Pairs `(subalgebra generator, algebra generator)` that fail to commute.
    pub fn noncentral_pairs(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for g in &self.gens {
            for i in 0..self.alg.num_gens() {
                let x = self.alg.generator(i);
                if !self.alg.commutator(&g.definition, &x).is_zero() {
                    out.push((g.name.clone(), self.alg.names()[i].clone()));
                }
            }
        }
        out
    }

    pub fn verify_central(&self) -> bool {
        self.noncentral_pairs().is_empty()
    }

    /// Exponent vectors of weighted degree `d`.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        fn rec(w: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == w.len() {
                if left == 0 {
                    out.push(Monomial(cur.clone()));
                }
                return;
            }
            let mut k = 0;
            while k * w[i] <= left {
                cur.push(k);
                rec(w, i + 1, left - k * w[i], cur, out);
                cur.pop();
                k += 1;
            }
        }
        let mut out = Vec::new();
        rec(&self.weights(), 0, d, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.gens).map(|(e, g)| e * g.degree).sum()
    }

    /// The element of `A` a subalgebra monomial stands for.
    pub fn expand(&self, m: &Monomial) -> NcPoly<S> {
        if let Some(p) = self.expand_cache.read().unwrap().get(&m.0) {
            return p.clone();
        }
        let p = match m.0.iter().rposition(|&e| e > 0) {
            None => NcPoly::one(),
            Some(i) => {
                let mut smaller = m.0.clone();
                smaller[i] -= 1;
                let rest = self.expand(&Monomial(smaller));
                self.alg.mul(&rest, &self.gens[i].definition)
            }
        };
        self.expand_cache.write().unwrap().insert(m.0.clone(), p.clone());
        p
    }

    pub fn expand_poly(&self, f: &CommPoly<S>) -> NcPoly<S> {
        let f = f.aligned(&self.vars.clone().into());
        let mut out = NcPoly::zero();
        for (m, c) in f.terms() {
            out.add_scaled(&self.expand(m), c);
        }
        out
    }
}

struct DegreeSolver<S> {
    unknowns: Vec<(usize, Monomial)>,
    solver: Solver<S>,
    rows: usize,
}

/// One row of a free-basis verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeBasisRow {
    pub degree: u32,
    /// `dim A_d`
    pub dimension: usize,
    /// `Σ_k #{subalgebra monomials of degree d - deg b_k}`
    pub expected: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeBasisReport {
    pub rows: Vec<FreeBasisRow>,
    pub first_failure: Option<u32>,
}

impl FreeBasisReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// The functional `θ` dual to the unique top-degree basis element.
#[derive(Clone, Debug)]
pub struct FrobeniusTheta<S> {
    pub top: usize,
    pub degree: u32,
    /// `det[θ(b_i b_j)]`
    pub pairing_det: CommPoly<S>,
    /// True when the pairing determinant is a nonzero scalar.
    pub valid: bool,
}

type Table<S> = Vec<Vec<Vec<CommPoly<S>>>>;

/// `A` together with a homogeneous basis over a subalgebra `R`.
pub struct FreeModule<S: Scalar> {
    alg: Algebra<S>,
    central: Arc<CentralSubalgebra<S>>,
    basis: Vec<NcPoly<S>>,
    degrees: Vec<u32>,
    solvers: RwLock<HashMap<(Side, u32), Arc<DegreeSolver<S>>>>,
    table: Mutex<Option<Arc<Table<S>>>>,
    is_central: OnceLock<bool>,
}

impl<S: Scalar> FreeModule<S> {
    pub fn new(central: Arc<CentralSubalgebra<S>>, basis: Vec<NcPoly<S>>) -> Result<Self> {
        let alg = central.algebra().clone();
        let mut degrees = Vec::new();
        for b in &basis {
            degrees.push(alg.homogeneous_degree(b).ok_or_else(|| {
                Error::InvalidPresentation(format!("basis element `{}` is zero or not homogeneous", alg.render(b)))
            })?);
        }
        Ok(FreeModule { alg, central, basis, degrees, solvers: RwLock::new(HashMap::new()), table: Mutex::new(None), is_central: OnceLock::new() })
    }

    pub fn parse_basis<T: AsRef<str>>(central: Arc<CentralSubalgebra<S>>, basis: &[T]) -> Result<Self> {
        let alg = central.algebra().clone();
        let elems = basis.iter().map(|t| alg.parse(t.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::new(central, elems)
    }

    /// Greedy search: in each degree, keep the normal words that are not
    /// already in the span of subalgebra multiples of earlier picks.
    pub fn find_basis(central: Arc<CentralSubalgebra<S>>, degree_bound: u32) -> Result<Self> {
        let alg = central.algebra().clone();
        let target = alg.hilbert().and_then(|h| h.divide(&central.hilbert()));
        let max_deg = target.as_ref().map_or(degree_bound, |t| (t.len() - 1) as u32);
        let mut picks: Vec<(Word, u32)> = Vec::new();
        for d in 0..=max_deg {
            let mut ech = Echelon::new();
            for (w, dw) in &picks {
                for m in central.monomials_of_degree(d - dw) {
                    let col = alg.mul(&NcPoly::word(w.clone()), &central.expand(&m));
                    ech.insert(alg.coords(&col, d));
                }
            }
            let mut found = 0i64;
            for w in alg.monomial_basis(d) {
                if ech.insert(alg.coords(&NcPoly::word(w.clone()), d)) {
                    picks.push((w, d));
                    found += 1;
                }
            }
            if let Some(t) = &target {
                if found != t[d as usize] {
                    return Err(Error::Verification(format!(
                        "degree {d}: found {found} new basis elements, Hilbert series predicts {}",
                        t[d as usize]
                    )));
                }
            }
        }
        let basis = picks.into_iter().map(|(w, _)| NcPoly::word(w)).collect();
        Self::new(central, basis)
    }

    pub fn algebra(&self) -> &Algebra<S> {
        &self.alg
    }

    pub fn central(&self) -> &Arc<CentralSubalgebra<S>> {
        &self.central
    }

    pub fn basis(&self) -> &[NcPoly<S>] {
        &self.basis
    }

    pub fn basis_degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn top_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    fn solver(&self, side: Side, d: u32) -> Arc<DegreeSolver<S>> {
        if let Some(s) = self.solvers.read().unwrap().get(&(side, d)) {
            return s.clone();
        }
        let mut unknowns = Vec::new();
        let mut columns = Vec::new();
        for (k, b) in self.basis.iter().enumerate() {
            if self.degrees[k] > d {
                continue;
            }
            for m in self.central.monomials_of_degree(d - self.degrees[k]) {
                let r = self.central.expand(&m);
                let col = match side {
                    Side::Right => self.alg.mul(b, &r),
                    Side::Left => self.alg.mul(&r, b),
                };
                columns.push(self.alg.coords(&col, d));
                unknowns.push((k, m));
            }
        }
        let rows = self.alg.dimension(d);
        let matrix: Vec<Vec<S>> = (0..rows).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
        let solver = Solver::new(matrix, unknowns.len());
        let s = Arc::new(DegreeSolver { unknowns, solver, rows });
        self.solvers.write().unwrap().insert((side, d), s.clone());
        s
    }

    /// Coefficients `r_k ∈ R` with `a = Σ b_k r_k` (or `Σ r_k b_k`).
    pub fn decompose(&self, a: &NcPoly<S>, side: Side) -> Result<Vec<CommPoly<S>>> {
        let mut out = vec![self.central.zero(); self.rank()];
        for d in self.alg.degrees_present(a) {
            let ds = self.solver(side, d);
            let x = match ds.solver.solve(&self.alg.coords(a, d)) {
                Solution::Unique(x) => x,
                Solution::Many(_) => return Err(Error::NonUnique { degree: d }),
                Solution::Inconsistent => return Err(Error::NoSolution { degree: d }),
            };
            for ((k, m), c) in ds.unknowns.iter().zip(x) {
                if !c.is_zero() {
                    out[*k] = out[*k].add_ref(&self.central.monomial_poly(m, c));
                }
            }
        }
        Ok(out)
    }

    /// Rebuilds `Σ b_k r_k` in `A`.
    pub fn recompose(&self, coeffs: &[CommPoly<S>], side: Side) -> NcPoly<S> {
        let mut out = NcPoly::zero();
        for (b, r) in self.basis.iter().zip(coeffs) {
            let e = self.central.expand_poly(r);
            let t = match side {
                Side::Right => self.alg.mul(b, &e),
                Side::Left => self.alg.mul(&e, b),
            };
            out = out.add(&t);
        }
        out
    }

    /// Compares `dim A_d` with the count predicted by the basis degrees and
    /// checks that the decomposition system is square and invertible.
    pub fn verify(&self, degree_bound: u32) -> FreeBasisReport {
        let mut rows = Vec::new();
        let mut first_failure = None;
        for d in 0..=degree_bound {
            let ds = self.solver(Side::Right, d);
            let row = FreeBasisRow { degree: d, dimension: ds.rows, expected: ds.unknowns.len(), rank: ds.solver.rank() };
            if first_failure.is_none() && !(row.dimension == row.expected && row.rank == row.expected) {
                first_failure = Some(d);
            }
            rows.push(row);
        }
        FreeBasisReport { rows, first_failure }
    }

    /// Right decompositions of all products `b_i b_j`.
    pub fn decomposition_table(&self) -> Result<Arc<Table<S>>> {
        if let Some(t) = self.table.lock().unwrap().as_ref() {
            return Ok(t.clone());
        }
        let n = self.rank();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let entries: Vec<Vec<CommPoly<S>>> = pairs
            .par_iter()
            .map(|&(i, j)| self.decompose(&self.alg.mul(&self.basis[i], &self.basis[j]), Side::Right))
            .collect::<Result<_>>()?;
        let mut it = entries.into_iter();
        let table: Table<S> = (0..n).map(|_| (0..n).map(|_| it.next().unwrap()).collect()).collect();
        let table = Arc::new(table);
        *self.table.lock().unwrap() = Some(table.clone());
        Ok(table)
    }

    /// `tr(a) = Σ_k b_k^*(a b_k)`.
    pub fn hs_trace(&self, a: &NcPoly<S>) -> Result<CommPoly<S>> {
        let mut acc = self.central.zero();
        for (k, b) in self.basis.iter().enumerate() {
            let r = self.decompose(&self.alg.mul(a, b), Side::Right)?;
            acc = acc.add_ref(&r[k]);
        }
        Ok(acc)
    }

    /// Traces of the basis elements, read from the decomposition table.
    pub fn basis_traces(&self) -> Result<Vec<CommPoly<S>>> {
        let t = self.decomposition_table()?;
        Ok((0..self.rank())
            .map(|l| (0..self.rank()).fold(self.central.zero(), |acc, k| acc.add_ref(&t[l][k][k])))
            .collect())
    }

    /// Whether the subalgebra commutes with `A`, computed once.
    pub fn subalgebra_is_central(&self) -> bool {
        *self.is_central.get_or_init(|| self.central.verify_central())
    }

    /// `[tr(b_i b_j)]`. For a central subalgebra this uses
    /// `tr(b_i b_j) = Σ_l r_l tr(b_l)`; otherwise every entry is a direct trace.
    pub fn trace_matrix(&self) -> Result<Vec<Vec<CommPoly<S>>>> {
        let n = self.rank();
        let flat: Vec<CommPoly<S>> = if self.subalgebra_is_central() {
            let t = self.decomposition_table()?;
            let traces = self.basis_traces()?;
            (0..n * n)
                .into_par_iter()
                .map(|ij| {
                    let (i, j) = (ij / n, ij % n);
                    t[i][j].iter().zip(&traces).fold(self.central.zero(), |acc, (r, tl)| acc.add_ref(&r.mul_ref(tl)))
                })
                .collect()
        } else {
            (0..n * n)
                .into_par_iter()
                .map(|ij| self.hs_trace(&self.alg.mul(&self.basis[ij / n], &self.basis[ij % n])))
                .collect::<Result<_>>()?
        };
        Ok(flat.chunks(n).map(|c| c.to_vec()).collect())
    }

    /// `det[tr(b_i b_j)]` without normalisation; zero for a degenerate trace form.
    pub fn discriminant_raw(&self) -> Result<CommPoly<S>> {
        let m = self.trace_matrix()?;
        if m.is_empty() {
            return Ok(self.central.constant(S::one()));
        }
        determinant(&m)
    }

    /// The discriminant up to a scalar, or `None` when the trace form is degenerate.
    pub fn discriminant(&self) -> Result<Option<CommPoly<S>>> {
        let d = self.discriminant_raw()?;
        if d.is_zero() {
            return Ok(None);
        }
        Ok(Some(d.canonical_up_to_scalar()?))
    }

    /// Matrix of left multiplication by `a` in the basis: column `j` is `decompose(a b_j)`.
    pub fn left_multiplication_matrix(&self, a: &NcPoly<S>) -> Result<Vec<Vec<CommPoly<S>>>> {
        let cols: Vec<Vec<CommPoly<S>>> = self
            .basis
            .par_iter()
            .map(|b| self.decompose(&self.alg.mul(a, b), Side::Right))
            .collect::<Result<_>>()?;
        let n = self.rank();
        Ok((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
    }

    /// Determinant of left multiplication by `a`.
    pub fn norm(&self, a: &NcPoly<S>) -> Result<CommPoly<S>> {
        let m = self.left_multiplication_matrix(a)?;
        if m.is_empty() {
            return Ok(self.central.constant(S::one()));
        }
        determinant(&m)
    }

    /// The functional dual to the unique basis element of top degree.
    pub fn frobenius_theta(&self) -> Result<FrobeniusTheta<S>> {
        let top_deg = self.top_degree();
        let tops: Vec<usize> = (0..self.rank()).filter(|&k| self.degrees[k] == top_deg).collect();
        if tops.len() != 1 {
            return Err(Error::Verification(format!(
                "{} basis elements share the top degree {top_deg}; θ needs exactly one",
                tops.len()
            )));
        }
        let top = tops[0];
        let t = self.decomposition_table()?;
        let n = self.rank();
        let pairing: Vec<Vec<CommPoly<S>>> = (0..n).map(|i| (0..n).map(|j| t[i][j][top].clone()).collect()).collect();
        let pairing_det = if n == 0 { self.central.constant(S::one()) } else { determinant(&pairing)? };
        let valid = pairing_det.as_constant().is_some_and(|c| !c.is_zero());
        Ok(FrobeniusTheta { top, degree: top_deg, pairing_det, valid })
    }

    /// `θ(a)`: the coefficient of the top basis element.
    pub fn theta(&self, theta: &FrobeniusTheta<S>, a: &NcPoly<S>) -> Result<CommPoly<S>> {
        Ok(self.decompose(a, Side::Right)?.swap_remove(theta.top))
    }

    /// Finds the unique homogeneous element `x` of degree `d` with
    /// `F(x) = target`, for a linear map `F` into tuples of subalgebra elements.
    pub fn solve_for_element<F>(&self, d: u32, target: &[CommPoly<S>], f: F) -> Result<NcPoly<S>>
    where
        F: Fn(&NcPoly<S>) -> Result<Vec<CommPoly<S>>> + Sync,
    {
        let words = self.alg.monomial_basis(d);
        let images: Vec<Vec<CommPoly<S>>> =
            words.par_iter().map(|w| f(&NcPoly::word(w.clone()))).collect::<Result<_>>()?;
        match solve_commpoly_system(&images, target) {
            Solution::Unique(x) => Ok(NcPoly::from_terms(words.into_iter().zip(x))),
            Solution::Many(_) => Err(Error::NonUnique { degree: d }),
            Solution::Inconsistent => Err(Error::NoSolution { degree: d }),
        }
    }

    /// The different: the homogeneous `ω` with `θ(ω b) = tr(b)` for every basis element `b`.
    pub fn different(&self, theta: &FrobeniusTheta<S>) -> Result<NcPoly<S>> {
        let traces = self.basis_traces()?;
        self.solve_for_element(theta.degree, &traces, |w| {
            self.basis.iter().map(|b| self.theta(theta, &self.alg.mul(w, b))).collect()
        })
    }

    /// `μ(g)` for each generator, determined by `θ(μ(g) b) = θ(b g)`.
    pub fn nakayama(&self, theta: &FrobeniusTheta<S>) -> Result<Vec<NcPoly<S>>> {
        let mut out = Vec::new();
        for i in 0..self.alg.num_gens() {
            let g = self.alg.generator(i);
            let target: Vec<CommPoly<S>> =
                self.basis.iter().map(|b| self.theta(theta, &self.alg.mul(b, &g))).collect::<Result<_>>()?;
            let d = self.alg.degrees()[i];
            out.push(self.solve_for_element(d, &target, |w| {
                self.basis.iter().map(|b| self.theta(theta, &self.alg.mul(w, b))).collect()
            })?);
        }
        Ok(out)
    }

    /// Applies the algebra endomorphism sending generator `i` to `images[i]`.
    pub fn apply_endomorphism(&self, images: &[NcPoly<S>], a: &NcPoly<S>) -> NcPoly<S> {
        let mut out = NcPoly::zero();
        for (w, c) in a.terms() {
            let mut t = NcPoly::one();
            for &l in w.letters() {
                t = self.alg.mul(&t, &images[l as usize]);
            }
            out.add_scaled(&t, c);
        }
        out
    }

    /// Relations violated by the generator images (as rendered rule left-hand sides).
    pub fn endomorphism_violations(&self, images: &[NcPoly<S>]) -> Vec<String> {
        self.alg
            .rules()
            .iter()
            .filter(|r| {
                let lhs = self.apply_endomorphism(images, &NcPoly::word(r.lhs.clone()));
                let rhs = self.apply_endomorphism(images, &r.rhs);
                lhs != rhs
            })
            .map(|r| self.alg.render_word(&r.lhs))
            .collect()
    }

    /// Generators `g` with `μ(g) ω ≠ ω g`.
    pub fn mu_normality_failures(&self, mu: &[NcPoly<S>], omega: &NcPoly<S>) -> Vec<String> {
        (0..self.alg.num_gens())
            .filter(|&i| self.alg.mul(&mu[i], omega) != self.alg.mul(omega, &self.alg.generator(i)))
            .map(|i| self.alg.names()[i].clone())
            .collect()
    }
}

/// Solves `Σ_i x_i · columns[i] = target` over the scalars, where each
/// column is a tuple of polynomials; equations are per (position, monomial).
pub fn solve_commpoly_system<S: Scalar>(columns: &[Vec<CommPoly<S>>], target: &[CommPoly<S>]) -> Solution<S> {
    let mut names: Vec<String> = Vec::new();
    for p in columns.iter().flatten().chain(target) {
        names.extend(p.vars().iter().cloned());
    }
    let vars: Arc<[String]> = CommPoly::<S>::zero(&names).vars().to_vec().into();
    let mut keys: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut flatten = |tuple: &[CommPoly<S>]| -> Vec<(usize, S)> {
        let mut e = Vec::new();
        for (pos, p) in tuple.iter().enumerate() {
            for (m, c) in p.aligned(&vars).terms() {
                let n = keys.len();
                let r = *keys.entry((pos, m.clone())).or_insert(n);
                e.push((r, c.clone()));
            }
        }
        e
    };
    let entries: Vec<Vec<(usize, S)>> = columns.iter().map(|c| flatten(c)).collect();
    let rhs = flatten(target);
    let rows = keys.len();
    let mut matrix = vec![vec![S::zero(); columns.len()]; rows];
    for (j, e) in entries.into_iter().enumerate() {
        for (r, c) in e {
            matrix[r][j] = c;
        }
    }
    let mut b = vec![S::zero(); rows];
    for (r, c) in rhs {
        b[r] = c;
    }
    Solver::new(matrix, columns.len()).solve(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::HilbertSeries;
    use crate::scalar::Rational;

    type Q = Rational;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn quantum_plane() -> FreeModule<Q> {
        let alg = Algebra::parse_relations(
            names(&["x", "y"]),
            vec![1, 1],
            &["y*x = -x*y"],
            Some(HilbertSeries::polynomial_ring(&[1, 1])),
        )
        .unwrap();
        let central = Arc::new(CentralSubalgebra::parse(&alg, &[("X", "x^2"), ("Y", "y^2")]).unwrap());
        FreeModule::parse_basis(central, &["1", "x", "y", "x*y"]).unwrap()
    }

    fn line_over_square() -> FreeModule<Q> {
        let alg = Algebra::parse_relations(
            names(&["x"]),
            vec![1],
            &[] as &[&str],
            Some(HilbertSeries::polynomial_ring(&[1])),
        )
        .unwrap();
        let central = Arc::new(CentralSubalgebra::parse(&alg, &[("X", "x^2")]).unwrap());
        FreeModule::find_basis(central, 4).unwrap()
    }

    fn poly(m: &FreeModule<Q>, text: &str) -> CommPoly<Q> {
        m.central().parse_poly(text).unwrap()
    }

    #[test]
    fn centrality_checks() {
        let m = quantum_plane();
        assert!(m.central().verify_central());
        let alg = m.algebra().clone();
        let bad = CentralSubalgebra::parse(&alg, &[("T", "x")]).unwrap();
        assert!(!bad.verify_central());
    }

    #[test]
    fn decompose_basis_element_and_cube() {
        let m = quantum_plane();
        let alg = m.algebra().clone();
        let r = m.decompose(&alg.parse("x*y").unwrap(), Side::Right).unwrap();
        assert_eq!(r, vec![m.central().zero(), m.central().zero(), m.central().zero(), poly(&m, "1")]);
        let r = m.decompose(&alg.parse("x^3").unwrap(), Side::Right).unwrap();
        assert_eq!(r[1], poly(&m, "X"));
        assert!(r[0].is_zero() && r[2].is_zero() && r[3].is_zero());
        let back = m.recompose(&r, Side::Right);
        assert_eq!(back, alg.parse("x^3").unwrap());
    }

    #[test]
    fn decompose_reports_missing_span() {
        let m = quantum_plane();
        let alg = m.algebra().clone();
        let central = m.central().clone();
        let thin = FreeModule::new(central, vec![NcPoly::one(), alg.parse("x").unwrap()]).unwrap();
        assert_eq!(thin.decompose(&alg.parse("y").unwrap(), Side::Right), Err(Error::NoSolution { degree: 1 }));
    }

    #[test]
    fn free_basis_verification() {
        assert!(quantum_plane().verify(8).passed());
        let m = quantum_plane();
        let alg = m.algebra().clone();
        let wrong = FreeModule::parse_basis(m.central().clone(), &["1", "x", "y", "x^2"]).unwrap();
        let rep = wrong.verify(8);
        assert!(matches!(rep.first_failure, Some(1) | Some(2)));
        let _ = alg;
    }

    #[test]
    fn found_basis_of_line_over_square() {
        let m = line_over_square();
        let alg = m.algebra().clone();
        assert_eq!(m.basis().iter().map(|b| alg.render(b)).collect::<Vec<_>>(), vec!["1", "x"]);
        assert!(m.verify(6).passed());
    }

    #[test]
    fn traces_on_the_quantum_plane() {
        let m = quantum_plane();
        let alg = m.algebra().clone();
        assert_eq!(m.hs_trace(&NcPoly::one()).unwrap(), poly(&m, "4"));
        assert!(m.hs_trace(&alg.parse("x").unwrap()).unwrap().is_zero());
        assert_eq!(m.hs_trace(&alg.parse("x^2").unwrap()).unwrap(), poly(&m, "4*X"));
        let t = m.trace_matrix().unwrap();
        let expected = [
            ["4", "0", "0", "0"],
            ["0", "4*X", "0", "0"],
            ["0", "0", "4*Y", "0"],
            ["0", "0", "0", "-4*X*Y"],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(t[i][j], poly(&m, expected[i][j]), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn trace_matrix_matches_direct_traces() {
        let m = quantum_plane();
        let alg = m.algebra().clone();
        let t = m.trace_matrix().unwrap();
        for (i, bi) in m.basis().iter().enumerate() {
            for (j, bj) in m.basis().iter().enumerate() {
                assert_eq!(t[i][j], m.hs_trace(&alg.mul(bi, bj)).unwrap());
            }
        }
    }

    #[test]
    fn discriminants() {
        assert_eq!(quantum_plane().discriminant().unwrap().unwrap(), poly(&quantum_plane(), "X^2*Y^2"));
        let l = line_over_square();
        assert_eq!(l.trace_matrix().unwrap(), vec![vec![poly(&l, "2"), poly(&l, "0")], vec![poly(&l, "0"), poly(&l, "2*X")]]);
        assert_eq!(l.discriminant().unwrap().unwrap(), poly(&l, "X"));
    }

    #[test]
    fn rank_one_module() {
        let alg = Algebra::<Q>::parse_relations(names(&["x"]), vec![1], &[] as &[&str], None).unwrap();
        let central = Arc::new(CentralSubalgebra::parse(&alg, &[("X", "x")]).unwrap());
        let m = FreeModule::parse_basis(central, &["1"]).unwrap();
        assert_eq!(m.trace_matrix().unwrap(), vec![vec![poly(&m, "1")]]);
        assert_eq!(m.discriminant().unwrap().unwrap(), poly(&m, "1"));
        let theta = m.frobenius_theta().unwrap();
        assert!(theta.valid);
        assert_eq!(m.different(&theta).unwrap(), NcPoly::one());
        let mu = m.nakayama(&theta).unwrap();
        assert_eq!(mu, vec![m.algebra().generator(0)]);
    }

    #[test]
    fn frobenius_data_on_the_quantum_plane() {
        let m = quantum_plane();
        let alg = m.algebra().clone();
        let theta = m.frobenius_theta().unwrap();
        assert_eq!(theta.top, 3);
        assert!(theta.valid);
        let omega = m.different(&theta).unwrap();
        assert!(alg.eq_up_to_scalar(&omega, &alg.parse("x*y").unwrap()));
        let mu = m.nakayama(&theta).unwrap();
        assert_eq!(mu[0], alg.parse("-x").unwrap());
        assert_eq!(mu[1], alg.parse("-y").unwrap());
        assert!(m.endomorphism_violations(&mu).is_empty());
        assert!(m.mu_normality_failures(&mu, &omega).is_empty());
        let norm = m.norm(&omega).unwrap();
        assert!(norm.eq_up_to_scalar(&m.discriminant().unwrap().unwrap()));
        assert_eq!(m.norm(&NcPoly::one()).unwrap(), poly(&m, "1"));
        let x2 = alg.parse("x^2").unwrap();
        assert_eq!(m.norm(&x2).unwrap(), poly(&m, "X^4"));
    }

    #[test]
    fn commutative_nakayama_is_identity() {
        let l = line_over_square();
        let theta = l.frobenius_theta().unwrap();
        let mu = l.nakayama(&theta).unwrap();
        assert_eq!(mu, vec![l.algebra().generator(0)]);
        let _ = q(0);
    }
}
