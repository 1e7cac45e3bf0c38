//! Smash products `B = A#H`, their trace forms over the fixed ring, and the
//! Frobenius system coming from the canonical `H`-Galois structure of
//! `A ⊆ A#H`.
//!
//! An element of `B` is stored as `Σ_k a_k # h_k` over the basis of `H`.
//! Multiplication is `(a#h)(b#k) = Σ a(h₁⊳b) # h₂k`, and the right
//! `H`-coaction is `a#h ↦ Σ (a#h₁) ⊗ h₂`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::check::Check;
use crate::commpoly::{determinant, CommPoly};
use crate::error::{Error, Result};
use crate::graded::{FreeModule, Side};
use crate::hopf::{pair, HopfAction, HopfAlgebra, HopfElement};
use crate::instances::Instance;
use crate::linalg::Echelon;
use crate::ncpoly::{Algebra, NcPoly};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct SmashElement<S> {
    pub components: BTreeMap<usize, NcPoly<S>>,
}

impl<S: Scalar> SmashElement<S> {
    pub fn zero() -> Self {
        SmashElement { components: BTreeMap::new() }
    }

    /// `a # h_k`.
    pub fn pure(a: NcPoly<S>, k: usize) -> Self {
        let mut s = Self::zero();
        s.add_component(k, &a);
        s
    }

    /// `1 # h` for an arbitrary element of `H`.
    pub fn from_hopf(h: &[S]) -> Self {
        let mut s = Self::zero();
        for (k, c) in h.iter().enumerate() {
            if !c.is_zero() {
                s.add_component(k, &NcPoly::constant(c.clone()));
            }
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, k: usize) -> NcPoly<S> {
        self.components.get(&k).cloned().unwrap_or_else(NcPoly::zero)
    }

    fn add_component(&mut self, k: usize, a: &NcPoly<S>) {
        let e = self.components.entry(k).or_insert_with(NcPoly::zero);
        *e = e.add(a);
        if e.is_zero() {
            self.components.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, a) in &other.components {
            out.add_component(*k, a);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SmashElement { components: self.components.iter().map(|(k, a)| (*k, a.scale(c))).collect() }
    }
}

/// `(x_i, y_i)` with `β(Σ x_i ⊗ y_i) = 1 ⊗ t`, and the functional `α` with
/// `⟨α, t⟩ = 1` defining `θ(b) = α⊳b`.
#[derive(Clone, Debug)]
pub struct GaloisData<S> {
    pub t: HopfElement<S>,
    pub alpha: Vec<S>,
    pub pairs: Vec<(SmashElement<S>, SmashElement<S>)>,
}

/// `A#H` for an instance with a Hopf action. Traces are taken over the fixed
/// ring of the instance, acting on the right.
pub struct SmashProduct<'a, S: Scalar> {
    action: &'a HopfAction<S>,
    module: &'a FreeModule<S>,
    commutators: Mutex<HashMap<u32, Arc<Echelon<S>>>>,
}

impl<'a, S: Scalar> SmashProduct<'a, S> {
    pub fn new(inst: &'a Instance<S>) -> Result<Self> {
        let action = inst
            .action
            .as_ref()
            .ok_or_else(|| Error::Verification(format!("{} has no Hopf action", inst.name)))?;
        Ok(SmashProduct { action, module: &inst.module, commutators: Mutex::new(HashMap::new()) })
    }

    pub fn algebra(&self) -> &Algebra<S> {
        self.action.algebra()
    }

    pub fn hopf(&self) -> &HopfAlgebra<S> {
        self.action.hopf()
    }

    /// `rank_R(A) · dim H`.
    pub fn rank(&self) -> usize {
        self.module.rank() * self.hopf().dim()
    }

    pub fn multiply(&self, s: &SmashElement<S>, t: &SmashElement<S>) -> SmashElement<S> {
        let h = self.hopf();
        let alg = self.algebra();
        let mut acc: BTreeMap<usize, NcPoly<S>> = BTreeMap::new();
        for (i, a) in &s.components {
            for (j, b) in &t.components {
                for (p, q, c) in h.comul_basis(*i) {
                    let moved = self.action.act_basis(*p, b);
                    if moved.is_zero() {
                        continue;
                    }
                    let prod = alg.mul(a, &moved);
                    for (l, d) in h.mul_basis(*q, *j) {
                        let e = acc.entry(*l).or_insert_with(NcPoly::zero);
                        e.add_scaled(&prod, &(c.clone() * d));
                    }
                }
            }
        }
        acc.retain(|_, a| !a.is_zero());
        SmashElement { components: acc }
    }

    pub fn commutator(&self, s: &SmashElement<S>, t: &SmashElement<S>) -> SmashElement<S> {
        self.multiply(s, t).sub(&self.multiply(t, s))
    }

    /// `ρ(b) ∈ B ⊗ H`, keyed by the `H` basis index of the right factor.
    pub fn coaction(&self, s: &SmashElement<S>) -> BTreeMap<usize, SmashElement<S>> {
        let mut out: BTreeMap<usize, SmashElement<S>> = BTreeMap::new();
        for (k, a) in &s.components {
            for (p, q, c) in self.hopf().comul_basis(*k) {
                let e = out.entry(*q).or_insert_with(SmashElement::zero);
                *e = e.add(&SmashElement::pure(a.scale(c), *p));
            }
        }
        out.retain(|_, e| !e.is_zero());
        out
    }

    /// `β(Σ b′ ⊗ b) = Σ b′b₀ ⊗ b₁`.
    pub fn beta(&self, pairs: &[(SmashElement<S>, SmashElement<S>)]) -> BTreeMap<usize, SmashElement<S>> {
        let mut out: BTreeMap<usize, SmashElement<S>> = BTreeMap::new();
        for (x, y) in pairs {
            for (k, y0) in self.coaction(y) {
                let e = out.entry(k).or_insert_with(SmashElement::zero);
                *e = e.add(&self.multiply(x, &y0));
            }
        }
        out.retain(|_, e| !e.is_zero());
        out
    }

    /// The dual-basis candidate `Σ (1#S(t₁)) ⊗ (1#t₂)`, checked against `β`.
    pub fn galois_data(&self) -> Result<GaloisData<S>> {
        let h = self.hopf();
        let t = h.right_integral()?;
        let alpha = h.dual_left_integral(&t)?;
        let mut pairs = Vec::new();
        for ((i, j), c) in h.comul(&t) {
            let si = h.antipode(&h.basis_element(i));
            pairs.push((SmashElement::from_hopf(&si).scale(&c), SmashElement::pure(NcPoly::one(), j)));
        }
        let got = self.beta(&pairs);
        let want: BTreeMap<usize, SmashElement<S>> = t
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, SmashElement::pure(NcPoly::constant(c.clone()), h.unit_index())))
            .collect();
        if got != want {
            return Err(Error::Verification("β(Σ x_i ⊗ y_i) ≠ 1 ⊗ t".into()));
        }
        Ok(GaloisData { t, alpha, pairs })
    }

    /// `θ(Σ a_k # h_k) = Σ ⟨α, h_k⟩ a_k`.
    pub fn theta(&self, data: &GaloisData<S>, s: &SmashElement<S>) -> NcPoly<S> {
        let mut out = NcPoly::zero();
        for (k, a) in &s.components {
            if !data.alpha[*k].is_zero() {
                out.add_scaled(a, &data.alpha[*k]);
            }
        }
        out
    }

    /// `tr_{B_A}(b) = Σ θ(y_i b x_i)`.
    pub fn trace_over_algebra(&self, data: &GaloisData<S>, s: &SmashElement<S>) -> NcPoly<S> {
        let mut out = NcPoly::zero();
        for (x, y) in &data.pairs {
            out = out.add(&self.theta(data, &self.multiply(&self.multiply(y, s), x)));
        }
        out
    }

    /// Failures of `Σ x_i θ(y_i b) = b = Σ θ(b x_i) y_i` on `w # h_k`,
    /// `w` a normal word of degree at most `bound`.
    pub fn frobenius_failures(&self, data: &GaloisData<S>, bound: u32) -> Vec<String> {
        let mut bad = Vec::new();
        for b in self.basis_elements(bound) {
            let mut left = SmashElement::zero();
            let mut right = SmashElement::zero();
            for (x, y) in &data.pairs {
                let l = SmashElement::pure(self.theta(data, &self.multiply(y, &b)), self.hopf().unit_index());
                left = left.add(&self.multiply(x, &l));
                let r = SmashElement::pure(self.theta(data, &self.multiply(&b, x)), self.hopf().unit_index());
                right = right.add(&self.multiply(&r, y));
            }
            if left != b || right != b {
                bad.push(self.render(&b));
            }
        }
        bad
    }

    /// `w # h_k` for all normal words of degree at most `bound`.
    pub fn basis_elements(&self, bound: u32) -> Vec<SmashElement<S>> {
        let alg = self.algebra();
        let m = self.hopf().dim();
        (0..=bound)
            .flat_map(|d| alg.monomial_basis(d))
            .flat_map(|w| (0..m).map(move |k| SmashElement::pure(NcPoly::word(w.clone()), k)))
            .collect()
    }

    pub fn render(&self, s: &SmashElement<S>) -> String {
        if s.is_zero() {
            return "0".into();
        }
        let labels = self.hopf().labels();
        s.components
            .iter()
            .map(|(k, a)| format!("({})#{}", self.algebra().render(a), labels[*k]))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn coords(&self, s: &SmashElement<S>, d: u32) -> Vec<S> {
        let alg = self.algebra();
        let dim = alg.dimension(d);
        let mut v = vec![S::zero(); dim * self.hopf().dim()];
        for (k, a) in &s.components {
            for (i, c) in alg.coords(a, d).into_iter().enumerate() {
                v[k * dim + i] = c;
            }
        }
        v
    }

    /// Span of `[B, B]` in degree `d`. Since `[ab, c] = [a, bc] + [b, ca]`,
    /// commutators of algebra generators and `1#h_k` with basis elements suffice.
    fn commutator_span(&self, d: u32) -> Arc<Echelon<S>> {
        if let Some(e) = self.commutators.lock().unwrap().get(&d) {
            return e.clone();
        }
        let alg = self.algebra();
        let m = self.hopf().dim();
        let unit = self.hopf().unit_index();
        let mut gens: Vec<(SmashElement<S>, u32)> = (0..alg.num_gens())
            .map(|g| (SmashElement::pure(alg.generator(g), unit), alg.degrees()[g]))
            .collect();
        gens.extend((0..m).map(|k| (SmashElement::pure(NcPoly::one(), k), 0)));
        let mut ech = Echelon::new();
        let full = alg.dimension(d) * m;
        'outer: for (g, e) in &gens {
            if *e > d {
                continue;
            }
            for w in alg.monomial_basis(d - e) {
                for k in 0..m {
                    let c = self.commutator(g, &SmashElement::pure(NcPoly::word(w.clone()), k));
                    ech.insert(self.coords(&c, d));
                    if ech.rank() == full {
                        break 'outer;
                    }
                }
            }
        }
        let ech = Arc::new(ech);
        self.commutators.lock().unwrap().insert(d, ech.clone());
        ech
    }

    /// Membership of a homogeneous-by-parts element in `[B, B]`.
    pub fn in_commutator_span(&self, s: &SmashElement<S>) -> bool {
        let alg = self.algebra();
        let mut degrees: Vec<u32> = s.components.values().flat_map(|a| alg.degrees_present(a)).collect();
        degrees.sort_unstable();
        degrees.dedup();
        degrees.into_iter().all(|d| {
            let part = SmashElement {
                components: s
                    .components
                    .iter()
                    .map(|(k, a)| (*k, alg.homogeneous_part(a, d)))
                    .filter(|(_, a)| !a.is_zero())
                    .collect(),
            };
            self.commutator_span(d).contains(&self.coords(&part, d))
        })
    }

    /// `tr_{B_R}(s) = Σ_{i,k} (b_i#h_k)^*(s · (b_i#h_k))`.
    pub fn trace_over_fixed_ring(&self, s: &SmashElement<S>) -> Result<CommPoly<S>> {
        let central = self.module.central();
        let mut acc = central.zero();
        for (i, b) in self.module.basis().iter().enumerate() {
            for k in 0..self.hopf().dim() {
                let prod = self.multiply(s, &SmashElement::pure(b.clone(), k));
                let comp = prod.component(k);
                if comp.is_zero() {
                    continue;
                }
                let r = self.module.decompose(&comp, Side::Right)?;
                acc = acc.add_ref(&r[i]);
            }
        }
        Ok(acc)
    }

    /// `b_i # h_k` in the order used by the trace matrix.
    pub fn free_basis(&self) -> Vec<SmashElement<S>> {
        let m = self.hopf().dim();
        self.module
            .basis()
            .iter()
            .flat_map(|b| (0..m).map(move |k| SmashElement::pure(b.clone(), k)))
            .collect()
    }

    pub fn trace_matrix(&self) -> Result<Vec<Vec<CommPoly<S>>>> {
        let basis = self.free_basis();
        let n = basis.len();
        let upper: Vec<((usize, usize), CommPoly<S>)> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(i, j)| Ok(((i, j), self.trace_over_fixed_ring(&self.multiply(&basis[i], &basis[j]))?)))
            .collect::<Result<_>>()?;
        let zero = self.module.central().zero();
        let mut m = vec![vec![zero; n]; n];
        for ((i, j), v) in upper {
            m[j][i] = v.clone();
            m[i][j] = v;
        }
        Ok(m)
    }

    /// Canonical `det[tr(X_I X_J)]`, or `None` when it vanishes.
    pub fn discriminant(&self) -> Result<Option<CommPoly<S>>> {
        if !self.module.subalgebra_is_central() {
            return Err(Error::Verification("the fixed ring is not central; the trace matrix is not symmetric".into()));
        }
        let d = determinant(&self.trace_matrix()?)?;
        if d.is_zero() {
            return Ok(None);
        }
        Ok(Some(d.canonical_up_to_scalar()?))
    }

    /// Checks of the trace lemma for Hopf-Galois extensions on every
    /// `w # h_k` with `deg w ≤ bound`.
    pub fn galois_trace_checks(&self, data: &GaloisData<S>, bound: u32) -> Vec<Check> {
        let h = self.hopf();
        let unit = h.unit_index();
        let eps_t = h.counit(&data.t);
        let elems = self.basis_elements(bound);
        let results: Vec<(bool, bool, bool, String)> = elems
            .par_iter()
            .map(|b| {
                let tr = SmashElement::pure(self.trace_over_algebra(data, b), unit);
                let th = SmashElement::pure(self.theta(data, b), unit).scale(&eps_t);
                let diff = tr.sub(&th);
                let exact = diff.is_zero();
                let modc = exact || self.in_commutator_span(&diff);
                let consistent = match (
                    self.trace_over_fixed_ring(b),
                    self.module.hs_trace(&tr.component(unit)),
                ) {
                    (Ok(x), Ok(y)) => x == y,
                    _ => false,
                };
                (exact, modc, consistent, self.render(b))
            })
            .collect();
        let first = |f: &dyn Fn(&(bool, bool, bool, String)) -> bool| {
            results.iter().find(|r| !f(r)).map(|r| format!("fails at {}", r.3)).unwrap_or_default()
        };
        let n = results.len();
        let exact = results.iter().filter(|r| r.0).count();
        vec![
            Check::new(
                format!("tr_B/A(b) ≡ ε(t)·θ(b) mod [B, B] for deg ≤ {bound}"),
                results.iter().all(|r| r.1),
                match first(&|r| r.1) {
                    f if f.is_empty() => format!("{n} elements"),
                    f => format!("{n} elements; {f}"),
                },
            ),
            Check::new(
                format!("tr_B/R = tr_A/R ∘ tr_B/A for deg ≤ {bound}"),
                results.iter().all(|r| r.2),
                first(&|r| r.2),
            ),
            Check::pass("tr_B/A(b) = ε(t)·θ(b) exactly", format!("{exact} of {n} elements (not required: A is not central in B)")),
        ]
    }

    /// Every check on `A#H` and its `H`-Galois structure. `jacobian` is the
    /// generator of the `hdet⁻¹`-semi-invariants of `A`.
    pub fn verify(&self, jacobian: &NcPoly<S>, bound: u32) -> Vec<Check> {
        let alg = self.algebra();
        let h = self.hopf();
        let mut out = Vec::new();
        let data = match self.galois_data() {
            Ok(d) => {
                out.push(Check::pass("β(Σ x_i ⊗ y_i) = 1 ⊗ t", ""));
                d
            }
            Err(e) => {
                out.push(Check::fail("β(Σ x_i ⊗ y_i) = 1 ⊗ t", e.to_string()));
                return out;
            }
        };
        let at = pair(&data.alpha, &data.t);
        out.push(Check::new("⟨α, t⟩ = 1", at == S::one(), format!("{at}")));
        let fb = self.frobenius_failures(&data, bound.min(4));
        out.push(Check::new(
            format!("Frobenius system identities for deg ≤ {}", bound.min(4)),
            fb.is_empty(),
            fb.join("; "),
        ));
        out.extend(self.galois_trace_checks(&data, bound));
        let m = h.dim() as u32;
        let nm = self.rank() as u32;
        match self.discriminant() {
            Ok(Some(d)) => {
                let central = self.module.central();
                let in_a = alg.canonical_up_to_scalar(&central.expand_poly(&d));
                let want = alg.canonical_up_to_scalar(&alg.pow(jacobian, nm));
                out.push(Check::new(
                    format!("d(A#H, R) = 𝔧^{nm}"),
                    matches!((&in_a, &want), (Ok(a), Ok(b)) if a == b),
                    format!("d = {d}"),
                ));
                let da = self.module.discriminant();
                out.push(match da {
                    Ok(Some(da)) => {
                        let pow = da.pow(m).canonical_up_to_scalar();
                        Check::new(format!("d(A#H, R) = d(A, R)^{m}"), pow.as_ref() == Ok(&d), format!("d(A, R) = {da}"))
                    }
                    other => Check::fail(format!("d(A#H, R) = d(A, R)^{m}"), format!("{other:?}")),
                });
            }
            Ok(None) => out.push(Check::fail(format!("d(A#H, R) = 𝔧^{nm}"), "trace form is degenerate")),
            Err(e) => out.push(Check::fail(format!("d(A#H, R) = 𝔧^{nm}"), e.to_string())),
        }
        out
    }
}

/// Whether every monomial of `p` fails to commute with some generator, which
/// places `p` in the commutator span of the quantum torus (the localisation
/// at the generators). Requires a skew polynomial presentation.
pub fn in_torus_commutator_span<S: Scalar>(alg: &Algebra<S>, p: &NcPoly<S>) -> Result<bool> {
    if !alg.is_skew_polynomial() {
        return Err(Error::InvalidPresentation("torus commutators need a skew polynomial algebra".into()));
    }
    Ok(p.terms().all(|(w, _)| {
        let m = NcPoly::word(w.clone());
        (0..alg.num_gens()).any(|g| {
            let x = alg.generator(g);
            alg.mul(&x, &m) != alg.mul(&m, &x)
        })
    }))
}

/// The trace identity for a fixed ring that is not central: compares
/// `tr(b)` over `R = A^H` with `(n/ε(t))·t⊳b` on every normal word of degree
/// at most `bound`, exactly and modulo torus commutators.
pub fn noncentral_trace_checks<S: Scalar>(inst: &Instance<S>, bound: u32) -> Result<Vec<Check>> {
    let action = inst
        .action
        .as_ref()
        .ok_or_else(|| Error::Verification(format!("{} has no Hopf action", inst.name)))?;
    let alg = inst.algebra();
    let h = action.hopf();
    let t = action.integral()?;
    let scale = S::from_i64(inst.module.rank() as i64) * &h.counit(t).inv().ok_or(Error::DivisionByZero)?;
    let mut first_exact = None;
    let mut modc = true;
    let mut count = 0;
    for d in 0..=bound {
        for w in alg.monomial_basis(d) {
            count += 1;
            let b = NcPoly::word(w);
            let tr = inst.central().expand_poly(&inst.module.hs_trace(&b)?);
            let tb = action.act(t, &b).scale(&scale);
            let diff = tr.sub(&tb);
            if !diff.is_zero() {
                first_exact.get_or_insert_with(|| {
                    format!("b = {}: tr(b) = {}, (n/ε(t))·t⊳b = {}", alg.render(&b), alg.render(&tr), alg.render(&tb))
                });
                modc &= in_torus_commutator_span(alg, &diff)?;
            }
        }
    }
    let central = inst.module.subalgebra_is_central();
    Ok(vec![
        Check::new("fixed ring is not central", !central, ""),
        Check::new(
            format!("tr(b) ≡ (n/ε(t))·t⊳b modulo torus commutators for deg ≤ {bound}"),
            modc,
            format!("{count} words"),
        ),
        Check::new(
            "exact identity tr(b) = (n/ε(t))·t⊳b fails",
            first_exact.is_some(),
            first_exact.unwrap_or_else(|| "holds on every tested word".into()),
        ),
    ])
}

/// `tr(a)` over the fixed ring, pushed into `A`, and `t⊳a` for the given `t`.
pub fn trace_and_integral_action<S: Scalar>(inst: &Instance<S>, t: &[S], a: &NcPoly<S>) -> Result<(NcPoly<S>, NcPoly<S>)> {
    let action = inst
        .action
        .as_ref()
        .ok_or_else(|| Error::Verification(format!("{} has no Hopf action", inst.name)))?;
    let tr = inst.central().expand_poly(&inst.module.hs_trace(a)?);
    Ok((tr, action.act(t, a)))
}

/// `(1 + x)(1 + y)(1 + z)`-style products of `1 + g` in `H`.
pub fn product_of_one_plus<S: Scalar>(h: &HopfAlgebra<S>, labels: &[&str]) -> Result<HopfElement<S>> {
    let mut acc = h.one();
    for l in labels {
        let k = h.index_of(l).ok_or_else(|| Error::UnknownIdentifier(l.to_string()))?;
        let f = h.one().iter().zip(h.basis_element(k)).map(|(a, b)| a.clone() + &b).collect::<Vec<_>>();
        acc = h.mul(&acc, &f);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{quantum_affine, symmetric_polynomials, with_diagonal_action};
    use crate::{Cyclotomic, Rational};
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn s2() -> Instance<Rational> {
        symmetric_polynomials(2).unwrap()
    }

    fn sign_plane() -> Instance<Cyclotomic> {
        let q = quantum_affine(&["x", "y"], &[(0, 1, Cyclotomic::integer(-1))], &[2, 2]).unwrap();
        with_diagonal_action(q, &[2, 2]).unwrap()
    }

    #[test]
    fn embeddings_multiply() {
        let inst = s2();
        let b = SmashProduct::new(&inst).unwrap();
        let alg = b.algebra();
        let x1 = alg.generator(0);
        let x2 = alg.generator(1);
        let e = b.hopf().unit_index();
        let got = b.multiply(&SmashElement::pure(x1.clone(), e), &SmashElement::pure(x2.clone(), e));
        assert_eq!(got, SmashElement::pure(alg.mul(&x1, &x2), e));
        let sigma = b.hopf().index_of("[2,1]").unwrap();
        // (1#σ)(x1#1) = x2#σ
        let got = b.multiply(&SmashElement::pure(NcPoly::one(), sigma), &SmashElement::pure(x1.clone(), e));
        assert_eq!(got, SmashElement::pure(x2.clone(), sigma));
        // (x1#σ)(x1#σ) = x1 x2 # 1
        let xs = SmashElement::pure(x1.clone(), sigma);
        assert_eq!(b.multiply(&xs, &xs), SmashElement::pure(alg.mul(&x1, &x2), e));
    }

    #[test]
    fn associativity_on_random_triples() {
        let inst = sign_plane();
        let b = SmashProduct::new(&inst).unwrap();
        let alg = b.algebra();
        let m = b.hopf().dim();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let random = |rng: &mut ChaCha8Rng| {
            let mut s = SmashElement::zero();
            for _ in 0..3 {
                let d = rng.gen_range(0..=3);
                let words = alg.monomial_basis(d);
                let w = words[rng.gen_range(0..words.len())].clone();
                let c = Cyclotomic::integer(rng.gen_range(-3..=3));
                s = s.add(&SmashElement::pure(NcPoly::term(w, c), rng.gen_range(0..m)));
            }
            s
        };
        for _ in 0..20 {
            let (x, y, z) = (random(&mut rng), random(&mut rng), random(&mut rng));
            assert_eq!(b.multiply(&b.multiply(&x, &y), &z), b.multiply(&x, &b.multiply(&y, &z)));
        }
    }

    #[test]
    fn galois_data_for_group_algebra() {
        let inst = s2();
        let b = SmashProduct::new(&inst).unwrap();
        let data = b.galois_data().unwrap();
        assert_eq!(pair(&data.alpha, &data.t), Rational::one());
        assert!(b.frobenius_failures(&data, 3).is_empty());
        // tr_B/A(1) = dim H for a group algebra
        let one = SmashElement::pure(NcPoly::one(), b.hopf().unit_index());
        let tr = b.trace_over_algebra(&data, &one);
        let eps = b.hopf().counit(&data.t);
        assert_eq!(tr, NcPoly::constant(Rational::from_integer(2.into())));
        assert_eq!(tr, NcPoly::constant(eps * &data.alpha[b.hopf().unit_index()]));
    }

    #[test]
    fn h8_galois_candidate_passes_beta() {
        let inst = crate::instances::h8_noncentral::<Cyclotomic>().unwrap();
        let b = SmashProduct::new(&inst).unwrap();
        let data = b.galois_data().unwrap();
        assert_eq!(pair(&data.alpha, &data.t), Cyclotomic::one());
        assert!(b.frobenius_failures(&data, 1).is_empty());
    }

    #[test]
    fn group_element_trace_lies_in_commutators() {
        let inst = s2();
        let b = SmashProduct::new(&inst).unwrap();
        let data = b.galois_data().unwrap();
        let sigma = b.hopf().index_of("[2,1]").unwrap();
        let x = SmashElement::pure(b.algebra().generator(0), sigma);
        assert!(b.theta(&data, &x).is_zero());
        let tr = b.trace_over_algebra(&data, &x);
        assert!(b.in_commutator_span(&SmashElement::pure(tr, b.hopf().unit_index())));
        // a central invariant is not a commutator
        let p1 = b.algebra().parse("x1 + x2").unwrap();
        assert!(!b.in_commutator_span(&SmashElement::pure(p1, b.hopf().unit_index())));
    }

    #[test]
    fn s2_smash_discriminant() {
        let inst = s2();
        let b = SmashProduct::new(&inst).unwrap();
        let d = b.discriminant().unwrap().unwrap();
        let alg = inst.algebra();
        let want = alg.canonical_up_to_scalar(&alg.parse("(x1 - x2)^4").unwrap()).unwrap();
        assert_eq!(alg.canonical_up_to_scalar(&inst.central().expand_poly(&d)).unwrap(), want);
        let j = inst.jacobian(4).unwrap();
        let checks = b.verify(&j, 3);
        assert!(checks.iter().all(|c| c.passed), "{checks:#?}");
    }

    #[test]
    fn torus_commutators() {
        let inst = crate::instances::h8_noncentral::<Cyclotomic>().unwrap();
        let alg = inst.algebra();
        assert!(in_torus_commutator_span(alg, &alg.parse("u^2 + v^2").unwrap()).unwrap());
        assert!(!in_torus_commutator_span(alg, &alg.parse("u^4").unwrap()).unwrap());
    }
}
