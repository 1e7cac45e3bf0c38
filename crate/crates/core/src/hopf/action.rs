use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::algebra::{extend_by_generators, Character, HopfAlgebra, HopfElement};
use crate::error::{Error, Result};
use crate::ncpoly::{Algebra, NcPoly, Word};
use crate::scalar::Scalar;

/// A left action of a Hopf algebra on a presented algebra, given by
/// degree-preserving linear maps on the generators and extended to words
/// through iterated comultiplication.
pub struct HopfAction<S: Scalar> {
    hopf: Arc<HopfAlgebra<S>>,
    alg: Algebra<S>,
    /// `images[k][g] = h_k ⊳ x_g`
    images: Vec<Vec<NcPoly<S>>>,
    cache: RwLock<HashMap<(usize, Word), NcPoly<S>>>,
    integral: OnceLock<HopfElement<S>>,
}

impl<S: Scalar> HopfAction<S> {
    /// `images[k][g]` must be a linear combination of generators of the
    /// same degree as `x_g`.
    pub fn new(hopf: Arc<HopfAlgebra<S>>, alg: Algebra<S>, images: Vec<Vec<NcPoly<S>>>) -> Result<Self> {
        if images.len() != hopf.dim() || images.iter().any(|r| r.len() != alg.num_gens()) {
            return Err(Error::InvalidAction("need one image per Hopf basis element and generator".into()));
        }
        for (k, row) in images.iter().enumerate() {
            check_linear(&alg, &hopf.labels()[k], row)?;
        }
        Ok(HopfAction { hopf, alg, images, cache: RwLock::new(HashMap::new()), integral: OnceLock::new() })
    }

    /// Builds the action from the action of algebra generators of `H`,
    /// composing `(b g) ⊳ x = b ⊳ (g ⊳ x)`.
    pub fn from_generators(hopf: Arc<HopfAlgebra<S>>, alg: Algebra<S>, gens: Vec<(usize, Vec<NcPoly<S>>)>) -> Result<Self> {
        let n = alg.num_gens();
        for (k, row) in &gens {
            if row.len() != n {
                return Err(Error::InvalidAction("need one image per generator".into()));
            }
            check_linear(&alg, &hopf.labels()[*k], row)?;
        }
        let identity: Vec<NcPoly<S>> = (0..n).map(|g| alg.generator(g)).collect();
        let substitute = |outer: &Vec<NcPoly<S>>, inner: &Vec<NcPoly<S>>| -> Vec<NcPoly<S>> {
            inner
                .iter()
                .map(|p| {
                    let mut out = NcPoly::zero();
                    for (w, c) in p.terms() {
                        out.add_scaled(&outer[w.letters()[0] as usize], c);
                    }
                    out
                })
                .collect()
        };
        let images = extend_by_generators(&hopf, gens, identity, substitute, |v, c| {
            v.into_iter().map(|p| p.scale(c)).collect()
        })?;
        Self::new(hopf, alg, images)
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra<S>> {
        &self.hopf
    }

    pub fn algebra(&self) -> &Algebra<S> {
        &self.alg
    }

    pub fn generator_image(&self, k: usize, g: usize) -> &NcPoly<S> {
        &self.images[k][g]
    }

    /// `h_k ⊳ w` for a word, not necessarily normal.
    pub fn act_word(&self, k: usize, w: &[u8]) -> NcPoly<S> {
        match w.len() {
            0 => return NcPoly::constant(self.hopf.counit_basis(k).clone()),
            1 => return self.images[k][w[0] as usize].clone(),
            _ => {}
        }
        let key = (k, Word(w.to_vec()));
        if let Some(p) = self.cache.read().unwrap().get(&key) {
            return p.clone();
        }
        let mut out = NcPoly::zero();
        for (i, j, c) in self.hopf.comul_basis(k) {
            let head = &self.images[*i][w[0] as usize];
            if head.is_zero() {
                continue;
            }
            let tail = self.act_word(*j, &w[1..]);
            out.add_scaled(&self.alg.mul(head, &tail), c);
        }
        self.cache.write().unwrap().insert(key, out.clone());
        out
    }

    pub fn act_basis(&self, k: usize, a: &NcPoly<S>) -> NcPoly<S> {
        let mut out = NcPoly::zero();
        for (w, c) in a.terms() {
            out.add_scaled(&self.act_word(k, w.letters()), c);
        }
        out
    }

    pub fn act(&self, h: &[S], a: &NcPoly<S>) -> NcPoly<S> {
        let mut out = NcPoly::zero();
        for (k, x) in h.iter().enumerate() {
            if !x.is_zero() {
                out.add_scaled(&self.act_basis(k, a), x);
            }
        }
        out
    }

    /// The right integral `t` used by [`HopfAction::reynolds`].
    pub fn integral(&self) -> Result<&HopfElement<S>> {
        if let Some(t) = self.integral.get() {
            return Ok(t);
        }
        let t = self.hopf.right_integral()?;
        Ok(self.integral.get_or_init(|| t))
    }

    /// `t ⊳ a / ε(t)`, the projection onto the invariants.
    pub fn reynolds(&self, a: &NcPoly<S>) -> Result<NcPoly<S>> {
        let t = self.integral()?;
        let inv = self
            .hopf
            .counit(t)
            .inv()
            .ok_or_else(|| Error::InvalidHopf("ε(t) = 0: the Hopf algebra is not semisimple".into()))?;
        Ok(self.act(t, a).scale(&inv))
    }

    /// Itemised failures of the module-algebra axioms on generators and relations.
    pub fn verify(&self) -> Vec<String> {
        let h = &self.hopf;
        let alg = &self.alg;
        let n = alg.num_gens();
        let mut bad = Vec::new();
        for g in 0..n {
            if self.images[h.unit_index()][g] != alg.generator(g) {
                bad.push(format!("1 ⊳ {} ≠ {}", alg.names()[g], alg.names()[g]));
            }
        }
        for i in 0..h.dim() {
            for j in 0..h.dim() {
                for g in 0..n {
                    let inner = &self.images[j][g];
                    let lhs = self.act_basis(i, inner);
                    let mut rhs = NcPoly::zero();
                    for (k, c) in h.mul_basis(i, j) {
                        rhs.add_scaled(&self.images[*k][g], c);
                    }
                    if lhs != rhs {
                        bad.push(format!(
                            "({}·{}) ⊳ {} ≠ {} ⊳ ({} ⊳ {})",
                            h.labels()[i],
                            h.labels()[j],
                            alg.names()[g],
                            h.labels()[i],
                            h.labels()[j],
                            alg.names()[g]
                        ));
                    }
                }
            }
        }
        for k in 0..h.dim() {
            for rule in alg.rules() {
                if self.act_word(k, rule.lhs.letters()) != self.act_basis(k, &rule.rhs) {
                    bad.push(format!(
                        "{} ⊳ ({} − rhs) ≠ 0",
                        h.labels()[k],
                        alg.render_word(&rule.lhs)
                    ));
                }
            }
            for g1 in 0..n {
                for g2 in 0..n {
                    let prod = alg.mul(&alg.generator(g1), &alg.generator(g2));
                    let lhs = self.act_basis(k, &prod);
                    let mut rhs = NcPoly::zero();
                    for (i, j, c) in h.comul_basis(k) {
                        rhs.add_scaled(&alg.mul(&self.images[*i][g1], &self.images[*j][g2]), c);
                    }
                    if lhs != rhs {
                        bad.push(format!(
                            "{} ⊳ ({}{}) violates the module-algebra law",
                            h.labels()[k],
                            alg.names()[g1],
                            alg.names()[g2]
                        ));
                    }
                }
            }
        }
        bad
    }

    /// Matrix of `a ↦ h_k ⊳ a − χ(h_k) a` on `A_d`, one block per basis element.
    fn eigen_system(&self, chi: &Character<S>, d: u32) -> Vec<Vec<S>> {
        let words = self.alg.monomial_basis(d);
        let dim = words.len();
        let mut rows = Vec::new();
        for k in 0..self.hopf.dim() {
            let mut block = vec![vec![S::zero(); dim]; dim];
            for (col, w) in words.iter().enumerate() {
                let img = self.act_word(k, w.letters());
                for (row, x) in self.alg.coords(&img, d).into_iter().enumerate() {
                    block[row][col] = x;
                }
                block[col][col] = block[col][col].clone() - &chi.values[k];
            }
            rows.extend(block);
        }
        rows
    }

    /// A basis of `A^χ_d = {a ∈ A_d : h ⊳ a = χ(h) a}`.
    pub fn relative_invariants(&self, chi: &Character<S>, d: u32) -> Vec<NcPoly<S>> {
        let dim = self.alg.dimension(d);
        let rows = self.eigen_system(chi, d);
        crate::linalg::nullspace(&rows, dim).into_iter().map(|v| self.alg.from_coords(d, &v)).collect()
    }

    pub fn invariant_basis(&self, d: u32) -> Vec<NcPoly<S>> {
        self.relative_invariants(&Character::counit(&self.hopf), d)
    }

    pub fn relative_invariant_dimension(&self, chi: &Character<S>, d: u32) -> usize {
        self.relative_invariants(chi, d).len()
    }
}

fn check_linear<S: Scalar>(alg: &Algebra<S>, label: &str, row: &[NcPoly<S>]) -> Result<()> {
    for (g, img) in row.iter().enumerate() {
        let ok = img.terms().all(|(w, _)| w.len() == 1 && alg.degrees()[w.letters()[0] as usize] == alg.degrees()[g]);
        if !ok {
            return Err(Error::InvalidAction(format!(
                "{label} ⊳ {} = {} is not a combination of generators of the same degree",
                alg.names()[g],
                alg.render(img)
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::HilbertSeries;
    use crate::{Cyclotomic, Rational};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn commutative2() -> Algebra<Rational> {
        Algebra::parse_relations(
            names(&["x1", "x2"]),
            vec![1, 1],
            &["x2*x1 = x1*x2"],
            Some(HilbertSeries::polynomial_ring(&[1, 1])),
        )
        .unwrap()
    }

    fn swap_action() -> HopfAction<Rational> {
        let alg = commutative2();
        let h = Arc::new(HopfAlgebra::symmetric_group(2).unwrap());
        let s = h.index_of("[2,1]").unwrap();
        HopfAction::from_generators(h, alg.clone(), vec![(s, vec![alg.generator(1), alg.generator(0)])]).unwrap()
    }

    #[test]
    fn swap_action_is_valid_and_averages() {
        let a = swap_action();
        assert!(a.verify().is_empty());
        let alg = a.algebra().clone();
        let x1 = alg.generator(0);
        assert_eq!(a.reynolds(&x1).unwrap(), alg.parse("1/2*x1 + 1/2*x2").unwrap());
        let one = a.hopf().one();
        assert_eq!(a.act(&one, &alg.parse("x1^2*x2").unwrap()), alg.parse("x1^2*x2").unwrap());
    }

    #[test]
    fn grouplike_acts_multiplicatively() {
        let a = swap_action();
        let alg = a.algebra().clone();
        let s = a.hopf().index_of("[2,1]").unwrap();
        let p = alg.parse("x1^2 + 3*x2").unwrap();
        let q = alg.parse("x1*x2 - x2^3").unwrap();
        let lhs = a.act_basis(s, &alg.mul(&p, &q));
        assert_eq!(lhs, alg.mul(&a.act_basis(s, &p), &a.act_basis(s, &q)));
    }

    #[test]
    fn sign_eigenspace_of_the_swap() {
        let a = swap_action();
        let alg = a.algebra().clone();
        let h = a.hopf().clone();
        let sign = Character::from_generators(&h, &[(h.index_of("[2,1]").unwrap(), -Rational::from_i64(1))]).unwrap();
        let v = a.relative_invariants(&sign, 1);
        assert_eq!(v.len(), 1);
        assert!(alg.eq_up_to_scalar(&v[0], &alg.parse("x1 - x2").unwrap()));
        assert_eq!(a.invariant_basis(2).len(), 2);
        assert_eq!(a.relative_invariants(&Character::counit(&h), 1).len(), 1);
    }

    #[test]
    fn reynolds_is_idempotent() {
        let a = swap_action();
        let alg = a.algebra().clone();
        for w in alg.monomial_basis(3) {
            let r = a.reynolds(&NcPoly::word(w)).unwrap();
            assert_eq!(a.reynolds(&r).unwrap(), r);
        }
    }

    #[test]
    fn rejects_nonlinear_images() {
        let alg = commutative2();
        let h = Arc::new(HopfAlgebra::symmetric_group(2).unwrap());
        let s = h.index_of("[2,1]").unwrap();
        let r = HopfAction::from_generators(h, alg.clone(), vec![(s, vec![alg.parse("x2^2").unwrap(), alg.generator(0)])]);
        assert!(matches!(r, Err(Error::InvalidAction(_))));
    }

    #[test]
    fn relation_violations_are_reported() {
        // x1 ↦ x1, x2 ↦ -x2 on the quantum plane y x = -x y is fine;
        // x1 ↦ x2, x2 ↦ x1 is not an automorphism of y x = 2 x y.
        let alg = Algebra::<Cyclotomic>::parse_relations(names(&["x", "y"]), vec![1, 1], &["y*x = 2*x*y"], None).unwrap();
        let h = Arc::new(HopfAlgebra::symmetric_group(2).unwrap());
        let s = h.index_of("[2,1]").unwrap();
        let a = HopfAction::from_generators(h, alg.clone(), vec![(s, vec![alg.generator(1), alg.generator(0)])]).unwrap();
        assert!(!a.verify().is_empty());
    }
}
