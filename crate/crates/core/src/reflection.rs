//! Finite matrix groups acting linearly on `𝕜[x_1, …, x_d]`: closure,
//! reflecting hyperplanes, and the Jacobian computed both as a determinant
//! of partial derivatives and as a product over the hyperplane arrangement.
//!
//! A matrix `g` acts on the degree-one part by `g⊳x_j = Σ_i g[i][j] x_i`.

use std::sync::{Arc, OnceLock};

use crate::check::Check;
use crate::commpoly::{determinant, CommPoly};
use crate::error::{Error, Result};
use crate::hopf::{Character, HopfAction, HopfAlgebra};
use crate::instances::{symmetric_polynomials, Instance};
use crate::linalg::{det, identity, mat_mul, rank};
use crate::ncpoly::{Algebra, NcPoly};
use crate::scalar::Scalar;

pub type Matrix<S> = Vec<Vec<S>>;

pub const DEFAULT_CAP: usize = 10_000;

/// A reflecting hyperplane `U`, recorded through the eigenvector `α_U` (first
/// nonzero coordinate 1) of its reflections and the order `e_U` of its
/// pointwise stabiliser.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperplaneDatum<S> {
    pub alpha: Vec<S>,
    /// Normal of the fixed hyperplane `U = {v : normal · v = 0}`.
    pub normal: Vec<S>,
    pub order: usize,
}

/// The group generated by a list of invertible `d × d` matrices.
pub struct ReflectionGroup<S> {
    dim: usize,
    vars: Vec<String>,
    generators: Vec<Matrix<S>>,
    cap: usize,
    elements: OnceLock<std::result::Result<Vec<Matrix<S>>, Error>>,
}

impl<S: Scalar> ReflectionGroup<S> {
    pub fn new(generators: Vec<Matrix<S>>) -> Result<Self> {
        Self::with_cap(generators, DEFAULT_CAP)
    }

    pub fn with_cap(generators: Vec<Matrix<S>>, cap: usize) -> Result<Self> {
        let dim = generators.first().map_or(0, Vec::len);
        if dim == 0 {
            return Err(Error::InvalidPresentation("need at least one nonempty generator matrix".into()));
        }
        for (k, g) in generators.iter().enumerate() {
            if g.len() != dim || g.iter().any(|r| r.len() != dim) {
                return Err(Error::InvalidPresentation(format!("generator {k} is not {dim}×{dim}")));
            }
            if det(g).is_zero() {
                return Err(Error::InvalidPresentation(format!("generator {k} is singular")));
            }
        }
        let vars = (1..=dim).map(|i| format!("x{i}")).collect();
        Ok(ReflectionGroup { dim, vars, generators, cap, elements: OnceLock::new() })
    }

    /// Renames the coordinates (default `x1, …, xd`).
    pub fn with_vars(mut self, vars: Vec<String>) -> Result<Self> {
        if vars.len() != self.dim {
            return Err(Error::InvalidPresentation(format!("{} variable names for dimension {}", vars.len(), self.dim)));
        }
        self.vars = vars;
        Ok(self)
    }

    /// The trivial group on `d` coordinates.
    pub fn trivial(d: usize) -> Result<Self> {
        Self::new(vec![identity(d)])
    }

    /// `S_n` permuting the coordinates, generated by adjacent transpositions.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n < 2 {
            return Self::trivial(n.max(1));
        }
        let gens = (0..n - 1)
            .map(|k| {
                let mut m = identity::<S>(n);
                m.swap(k, k + 1);
                m
            })
            .collect();
        Self::new(gens)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Matrix<S>] {
        &self.generators
    }

    pub fn vars(&self) -> Vec<String> {
        self.vars.clone()
    }

    pub fn elements(&self) -> Result<&[Matrix<S>]> {
        self.elements
            .get_or_init(|| group_closure(&self.generators, self.cap))
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }

    /// The reflections, i.e. elements whose fixed space has codimension one.
    pub fn reflections(&self) -> Result<Vec<&Matrix<S>>> {
        Ok(self.elements()?.iter().filter(|g| rank(&minus_identity(g)) == 1).collect())
    }

    /// True when the reflections alone generate the whole group.
    pub fn is_generated_by_reflections(&self) -> Result<bool> {
        let refl: Vec<Matrix<S>> = self.reflections()?.into_iter().cloned().collect();
        if refl.is_empty() {
            return Ok(self.order()? == 1);
        }
        Ok(group_closure(&refl, self.cap)?.len() == self.order()?)
    }

    pub fn hyperplanes(&self) -> Result<Vec<HyperplaneDatum<S>>> {
        let mut out: Vec<HyperplaneDatum<S>> = Vec::new();
        for g in self.reflections()? {
            let m = minus_identity(g);
            let normal = normalize(m.iter().find(|r| r.iter().any(|x| !x.is_zero())).expect("rank one").clone());
            let jcol = (0..self.dim).find(|&j| m.iter().any(|r| !r[j].is_zero())).expect("rank one");
            let alpha = normalize(m.iter().map(|r| r[jcol].clone()).collect());
            match out.iter_mut().find(|h| h.normal == normal) {
                Some(h) => h.order += 1,
                None => out.push(HyperplaneDatum { alpha, normal, order: 2 }),
            }
        }
        Ok(out)
    }

    /// The linear form `Σ α_i x_i`.
    pub fn linear_form(&self, alpha: &[S]) -> CommPoly<S> {
        let vars = self.vars();
        let mut f = CommPoly::zero(&vars);
        for (i, c) in alpha.iter().enumerate() {
            if !c.is_zero() {
                f = f.add_ref(&CommPoly::var(&vars, &vars[i]).scale(c));
            }
        }
        f
    }

    /// `g⊳f` for a polynomial in `x1, …, xd`.
    pub fn act(&self, g: &Matrix<S>, f: &CommPoly<S>) -> CommPoly<S> {
        let vars = self.vars();
        let images: Vec<(String, CommPoly<S>)> = (0..self.dim)
            .map(|j| (vars[j].clone(), self.linear_form(&g.iter().map(|r| r[j].clone()).collect::<Vec<_>>())))
            .collect();
        f.aligned(&vars.clone().into()).substitute(&images)
    }

    /// `χ` with `g⊳f = χ(g) f` for each generator, if `f` is semi-invariant.
    pub fn semi_invariant_character(&self, f: &CommPoly<S>) -> Option<Vec<S>> {
        let f = f.aligned(&self.vars().into());
        let (m, c) = f.leading_term()?;
        self.generators
            .iter()
            .map(|g| {
                let gf = self.act(g, &f);
                let lambda = gf.terms().find(|(w, _)| *w == m).map(|(_, x)| x.clone())? * &c.inv()?;
                (gf == f.scale(&lambda)).then_some(lambda)
            })
            .collect()
    }

    pub fn is_invariant(&self, f: &CommPoly<S>) -> bool {
        let f = f.aligned(&self.vars().into());
        self.generators.iter().all(|g| self.act(g, &f) == f)
    }

    fn arrangement_product(&self, exponent: impl Fn(usize) -> u32) -> Result<CommPoly<S>> {
        let vars = self.vars();
        let mut acc = CommPoly::one(&vars);
        for h in self.hyperplanes()? {
            acc = acc.mul_ref(&self.linear_form(&h.alpha).pow(exponent(h.order)));
        }
        acc.canonical_up_to_scalar()
    }

    /// `∏ α_U^{e_U − 1}`.
    pub fn jacobian_from_arrangement(&self) -> Result<CommPoly<S>> {
        self.arrangement_product(|e| e as u32 - 1)
    }

    /// `∏ α_U`.
    pub fn arrangement_poly(&self) -> Result<CommPoly<S>> {
        self.arrangement_product(|_| 1)
    }

    /// `∏ α_U^{e_U}`, checked to be invariant.
    pub fn discriminant_poly(&self) -> Result<CommPoly<S>> {
        let d = self.arrangement_product(|e| e as u32)?;
        if !self.is_invariant(&d) {
            return Err(Error::Verification(format!("{d} is not invariant under the group")));
        }
        Ok(d)
    }

    /// The group algebra on labels `g0 = 1, g1, …` in closure order.
    pub fn group_algebra(&self) -> Result<HopfAlgebra<S>> {
        let els = self.elements()?;
        let labels = (0..els.len()).map(|i| format!("g{i}")).collect();
        let table = els
            .iter()
            .map(|a| {
                els.iter()
                    .map(|b| {
                        let ab = mat_mul(a, b);
                        els.iter().position(|c| *c == ab).ok_or(Error::ClosureCap(self.cap))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        HopfAlgebra::group_algebra(labels, &table)
    }

    /// The linear action on an algebra whose generators are the coordinates,
    /// together with the determinant character.
    pub fn linear_action(&self, alg: &Algebra<S>) -> Result<(HopfAction<S>, Character<S>)> {
        if alg.num_gens() != self.dim {
            return Err(Error::InvalidAction(format!("{} generators for {}×{} matrices", alg.num_gens(), self.dim, self.dim)));
        }
        let hopf = Arc::new(self.group_algebra()?);
        let els = self.elements()?;
        let images = els
            .iter()
            .map(|g| {
                (0..self.dim)
                    .map(|j| {
                        let mut p = NcPoly::zero();
                        for i in 0..self.dim {
                            p.add_scaled(&alg.generator(i), &g[i][j]);
                        }
                        p
                    })
                    .collect()
            })
            .collect();
        let action = HopfAction::new(hopf, alg.clone(), images)?;
        let hdet = Character { values: els.iter().map(|g| det(g)).collect() };
        Ok((action, hdet))
    }

    /// The checks behind `verify reflection`, given basic invariants.
    pub fn verify(&self, invariants: &[CommPoly<S>]) -> Vec<Check> {
        let mut out = Vec::new();
        let order = match self.order() {
            Ok(n) => {
                out.push(Check::pass("group closure", format!("order {n}")));
                n
            }
            Err(e) => {
                out.push(Check::fail("group closure", e.to_string()));
                return out;
            }
        };
        match self.is_generated_by_reflections() {
            Ok(b) => out.push(Check::new("generated by reflections", b, "")),
            Err(e) => out.push(Check::fail("generated by reflections", e.to_string())),
        }
        let vars = self.vars();
        let fs: Vec<CommPoly<S>> = invariants.iter().map(|f| f.aligned(&vars.clone().into())).collect();
        let bad: Vec<String> = fs.iter().filter(|f| !self.is_invariant(f)).map(|f| f.to_string()).collect();
        out.push(Check::new("inputs are invariant", bad.is_empty(), bad.join("; ")));
        let degs: Vec<u32> = fs.iter().map(|f| f.degree().unwrap_or(0)).collect();
        let prod: usize = degs.iter().map(|&d| d as usize).product();
        out.push(Check::new(
            "product of invariant degrees equals the group order",
            fs.len() == self.dim && prod == order,
            format!("degrees {degs:?}, |G| = {order}"),
        ));
        let hyper = self.hyperplanes().unwrap_or_default();
        let reflections: usize = hyper.iter().map(|h| h.order - 1).sum();
        let exps: u32 = degs.iter().map(|d| d.saturating_sub(1)).sum();
        out.push(Check::new(
            "number of reflections equals Σ (d_i − 1)",
            reflections as u32 == exps,
            format!("{reflections} reflections, {} hyperplanes", hyper.len()),
        ));
        let jd = jacobian_det(&fs);
        let ja = self.jacobian_from_arrangement();
        match (&jd, &ja) {
            (Ok(a), Ok(b)) => out.push(Check::new("∂-Jacobian equals ∏ α_U^(e_U − 1)", a == b, format!("𝔧 = {a}"))),
            _ => out.push(Check::fail("∂-Jacobian equals ∏ α_U^(e_U − 1)", format!("{jd:?} / {ja:?}"))),
        }
        match self.arrangement_poly() {
            Ok(a) => out.push(Check::new(
                "∏ α_U is semi-invariant",
                self.semi_invariant_character(&a).is_some(),
                format!("𝔞 = {a}"),
            )),
            Err(e) => out.push(Check::fail("∏ α_U is semi-invariant", e.to_string())),
        }
        match self.discriminant_poly() {
            Ok(d) => out.push(Check::pass("∏ α_U^(e_U) is invariant", format!("δ = {d}"))),
            Err(e) => out.push(Check::fail("∏ α_U^(e_U) is invariant", e.to_string())),
        }
        out
    }
}

fn minus_identity<S: Scalar>(g: &Matrix<S>) -> Matrix<S> {
    let mut m = g.clone();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = row[i].clone() - &S::one();
    }
    m
}

fn normalize<S: Scalar>(v: Vec<S>) -> Vec<S> {
    let Some(lead) = v.iter().find(|x| !x.is_zero()) else { return v };
    let inv = lead.inv().expect("nonzero");
    v.into_iter().map(|x| x * &inv).collect()
}

/// All products of `gens`, including the identity. Fails past `cap` elements.
pub fn group_closure<S: Scalar>(gens: &[Matrix<S>], cap: usize) -> Result<Vec<Matrix<S>>> {
    let d = gens.first().map_or(0, Vec::len);
    let mut elements = vec![identity::<S>(d)];
    let mut frontier = 0;
    while frontier < elements.len() {
        let g = elements[frontier].clone();
        frontier += 1;
        for s in gens {
            let h = mat_mul(&g, s);
            if !elements.contains(&h) {
                if elements.len() == cap {
                    return Err(Error::ClosureCap(cap));
                }
                elements.push(h);
            }
        }
    }
    Ok(elements)
}

/// `det(∂f_i/∂x_j)` made monic, for `d` polynomials in the variables they share.
pub fn jacobian_det<S: Scalar>(fs: &[CommPoly<S>]) -> Result<CommPoly<S>> {
    let Some(first) = fs.first() else {
        return Err(Error::InvalidPresentation("no invariants given".into()));
    };
    let vars: Vec<String> = first.vars().to_vec();
    if vars.len() != fs.len() {
        return Err(Error::InvalidPresentation(format!("{} polynomials in {} variables", fs.len(), vars.len())));
    }
    let m = fs
        .iter()
        .map(|f| vars.iter().map(|v| f.aligned(&vars.clone().into()).partial_derivative(v)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    determinant(&m)?.canonical_up_to_scalar()
}

/// Power sums `p_k = Σ x_i^k`, `k = 1..n`, in `x1, …, xn`.
pub fn power_sums<S: Scalar>(n: usize) -> Vec<CommPoly<S>> {
    let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    (1..=n)
        .map(|k| {
            vars.iter().fold(CommPoly::zero(&vars), |acc, v| {
                acc.add_ref(&CommPoly::monomial(&vars, &[(v.clone(), k as u32)], S::one()))
            })
        })
        .collect()
}

/// `∏_{i<j} (x_i − x_j)` made monic.
pub fn vandermonde<S: Scalar>(n: usize) -> CommPoly<S> {
    let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut acc = CommPoly::one(&vars);
    for i in 0..n {
        for j in i + 1..n {
            acc = acc.mul_ref(&CommPoly::var(&vars, &vars[i]).sub_ref(&CommPoly::var(&vars, &vars[j])));
        }
    }
    acc.canonical_up_to_scalar().expect("nonzero")
}

/// `𝕜[x_1, …, x_n]` over the power sums with the staircase basis and the
/// `S_n` permutation action.
pub fn sn_instance<S: Scalar>(n: usize) -> Result<Instance<S>> {
    symmetric_polynomials(n)
}
