//! Ready-made algebras, subalgebras, bases and actions used throughout the
//! test suites and the command-line tool.

use std::sync::Arc;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::graded::{CentralSubalgebra, FreeModule};
use crate::hopf::invariants::{jacobian, verify_main_theorem, MainTheoremReport};
use crate::hopf::{Character, HopfAction, HopfAlgebra};
use crate::ncpoly::{Algebra, HilbertSeries, NcPoly, Word};
use crate::scalar::Scalar;

/// An algebra presented as a free module over a subalgebra, optionally with
/// a Hopf action whose fixed ring is that subalgebra.
pub struct Instance<S: Scalar> {
    pub name: String,
    pub module: FreeModule<S>,
    pub action: Option<HopfAction<S>>,
    pub hdet: Option<Character<S>>,
}

/// The discriminant computed three ways, each canonical and written in the
/// generators of `A`.
pub struct Pipelines<S: Scalar> {
    pub trace_determinant: Result<NcPoly<S>>,
    pub norm_of_different: Result<NcPoly<S>>,
    /// `𝔧ⁿ` when a Hopf action is attached, otherwise `ωⁿ`.
    pub power: Result<NcPoly<S>>,
    pub power_label: &'static str,
}

impl<S: Scalar> Pipelines<S> {
    pub fn agree(&self) -> bool {
        match (&self.trace_determinant, &self.norm_of_different, &self.power) {
            (Ok(a), Ok(b), Ok(c)) => a == b && b == c,
            _ => false,
        }
    }
}

impl<S: Scalar> Instance<S> {
    pub fn new(name: impl Into<String>, module: FreeModule<S>) -> Self {
        Instance { name: name.into(), module, action: None, hdet: None }
    }

    pub fn with_action(mut self, action: HopfAction<S>, hdet: Character<S>) -> Self {
        self.action = Some(action);
        self.hdet = Some(hdet);
        self
    }

    pub fn algebra(&self) -> &Algebra<S> {
        self.module.algebra()
    }

    pub fn central(&self) -> &Arc<CentralSubalgebra<S>> {
        self.module.central()
    }

    /// The canonical discriminant pushed into `A`.
    pub fn discriminant_in_algebra(&self) -> Result<NcPoly<S>> {
        let d = self.module.discriminant()?.ok_or_else(|| Error::Verification("trace form is degenerate".into()))?;
        self.algebra().canonical_up_to_scalar(&self.central().expand_poly(&d))
    }

    pub fn jacobian(&self, bound: u32) -> Result<NcPoly<S>> {
        match (&self.action, &self.hdet) {
            (Some(a), Some(h)) => jacobian(a, h, self.central(), self.module.top_degree(), bound),
            _ => Err(Error::Verification(format!("{} has no Hopf action", self.name))),
        }
    }

    pub fn pipelines(&self, bound: u32) -> Pipelines<S> {
        let alg = self.algebra();
        let n = self.module.rank() as u32;
        let trace_determinant = self.discriminant_in_algebra();
        let theta = self.module.frobenius_theta().and_then(|t| {
            if t.valid {
                Ok(t)
            } else {
                Err(Error::Verification("θ pairing is not unimodular".into()))
            }
        });
        let omega = theta.and_then(|t| self.module.different(&t));
        let norm_of_different = omega.as_ref().map_err(Clone::clone).and_then(|w| {
            let nr = self.module.norm(w)?;
            if nr.is_zero() {
                return Err(Error::Verification("norm of the different is zero".into()));
            }
            alg.canonical_up_to_scalar(&self.central().expand_poly(&nr.canonical_up_to_scalar()?))
        });
        let (power, power_label) = if self.action.is_some() {
            (self.jacobian(bound).and_then(|j| alg.canonical_up_to_scalar(&alg.pow(&j, n))), "𝔧ⁿ")
        } else {
            (omega.and_then(|w| alg.canonical_up_to_scalar(&alg.pow(&w, n))), "ωⁿ")
        };
        Pipelines { trace_determinant, norm_of_different, power, power_label }
    }

    pub fn main_theorem(&self, bound: u32) -> Result<MainTheoremReport<S>> {
        match (&self.action, &self.hdet) {
            (Some(a), Some(h)) => Ok(verify_main_theorem(&self.module, a, h, bound)),
            _ => Err(Error::Verification(format!("{} has no Hopf action", self.name))),
        }
    }

    /// Structural checks: confluence, Hilbert series, centrality, free basis, action axioms.
    pub fn sanity_checks(&self, bound: u32) -> Vec<Check> {
        let alg = self.algebra();
        let mut out = Vec::new();
        let pairs = alg.check_local_confluence(bound);
        out.push(Check::new(
            format!("local confluence up to degree {bound}"),
            pairs.is_empty(),
            format!("{} unresolved", pairs.len()),
        ));
        if let Some(h) = alg.hilbert_check(bound) {
            out.push(Check::new(
                format!("Hilbert series up to degree {bound}"),
                h.first_mismatch.is_none(),
                h.first_mismatch.map(|d| format!("first mismatch in degree {d}")).unwrap_or_default(),
            ));
        }
        let nc = self.central().noncentral_pairs();
        out.push(Check::new(
            "subalgebra is central",
            nc.is_empty(),
            nc.iter().map(|(r, g)| format!("{r} does not commute with {g}")).collect::<Vec<_>>().join("; "),
        ));
        let fb = self.module.verify(bound);
        out.push(Check::new(
            format!("free basis of rank {} up to degree {bound}", self.module.rank()),
            fb.passed(),
            fb.first_failure.map(|d| format!("fails in degree {d}")).unwrap_or_default(),
        ));
        if let Some(a) = &self.action {
            let hb = a.hopf().verify();
            out.push(Check::new("Hopf axioms", hb.is_empty(), hb.join("; ")));
            let ab = a.verify();
            out.push(Check::new("module-algebra axioms", ab.is_empty(), ab.join("; ")));
            out.extend(crate::hopf::invariants::fixed_ring_checks(a, self.central(), bound));
        }
        if let (Some(a), Some(h)) = (&self.action, &self.hdet) {
            let bad = h.violations(a.hopf());
            out.push(Check::new("hdet is a character", bad.is_empty(), bad.join("; ")));
        }
        out
    }
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn root<S: Scalar>(order: u32, exponent: i64) -> Result<S> {
    S::root_of_unity(order, exponent)
        .ok_or_else(|| Error::InvalidPresentation(format!("the scalar field has no {order}-th root of unity")))
}

/// Quantum affine space `𝕜_{p_ij}[x_1, …, x_n]` (`x_j x_i = p_ij x_i x_j`
/// for `i < j`) over `𝕜[x_1^{l_1}, …, x_n^{l_n}]` with basis
/// `x_1^{a_1}⋯x_n^{a_n}`, `a_i < l_i`. Pairs absent from `p` commute.
/// The subalgebra is named by upper-casing the generator names.
pub fn quantum_affine<S: Scalar>(gen_names: &[&str], p: &[(usize, usize, S)], l: &[u32]) -> Result<Instance<S>> {
    let n = gen_names.len();
    if l.len() != n || l.iter().any(|&e| e == 0) {
        return Err(Error::InvalidPresentation("need one positive exponent per generator".into()));
    }
    let mut scalars = vec![vec![S::one(); n]; n];
    for (i, j, c) in p {
        if !(i < j && *j < n) {
            return Err(Error::InvalidPresentation(format!("skew scalar index ({i}, {j}) must satisfy i < j < n")));
        }
        scalars[*i][*j] = c.clone();
    }
    let mut rels = Vec::new();
    for j in 0..n {
        for i in 0..j {
            let lhs = NcPoly::word(Word(vec![j as u8, i as u8]));
            let rhs = NcPoly::term(Word(vec![i as u8, j as u8]), scalars[i][j].clone());
            rels.push(lhs.sub(&rhs));
        }
    }
    let alg = Algebra::from_relations(names(gen_names), vec![1; n], rels, Some(HilbertSeries::polynomial_ring(&vec![1; n])))?;
    let defs: Vec<(String, NcPoly<S>)> = (0..n)
        .map(|i| (gen_names[i].to_uppercase(), NcPoly::word(Word(vec![i as u8; l[i] as usize]))))
        .collect();
    let central = Arc::new(CentralSubalgebra::new(&alg, defs)?);
    let mut basis = vec![Word::empty()];
    for i in 0..n {
        basis = basis
            .into_iter()
            .flat_map(|w| (0..l[i]).map(move |e| w.concat(&Word(vec![i as u8; e as usize]))))
            .collect();
    }
    basis.sort_by(|a, b| alg.cmp_words(a, b));
    let module = FreeModule::new(central, basis.into_iter().map(NcPoly::word).collect())?;
    Ok(Instance::new(format!("quantum affine space, l = {l:?}"), module))
}

/// Adds the diagonal action of `ℤ/l_1 × ⋯ × ℤ/l_n`, the `i`-th factor
/// scaling `x_i` by `ζ_{l_i}`; `hdet` is the product of the eigenvalues.
/// Group generators are named `g1, …, gn`.
pub fn with_diagonal_action<S: Scalar>(inst: Instance<S>, l: &[u32]) -> Result<Instance<S>> {
    let alg = inst.algebra().clone();
    let n = alg.num_gens();
    let gnames: Vec<String> = (1..=n).map(|i| format!("g{i}")).collect();
    let hopf = Arc::new(HopfAlgebra::abelian(&gnames, l)?);
    let mut gens = Vec::new();
    let mut hd = Vec::new();
    for i in (0..n).filter(|&i| l[i] > 1) {
        let z: S = root(l[i], 1)?;
        let k = hopf.index_of(&gnames[i]).expect("generator label");
        let images = (0..n).map(|g| if g == i { alg.generator(g).scale(&z) } else { alg.generator(g) }).collect();
        gens.push((k, images));
        hd.push((k, z));
    }
    let action = HopfAction::from_generators(hopf.clone(), alg, gens)?;
    let hdet = Character::from_generators(&hopf, &hd)?;
    Ok(inst.with_action(action, hdet))
}

/// The cubic AS-regular algebra `𝕜⟨x, y⟩/(y²x − xy², yx² + x²y)` over
/// `𝕜[X = x⁴, Y = y², Z = (xy)² + (yx)²]`, with a basis found by search.
pub fn cubic<S: Scalar>() -> Result<Instance<S>> {
    let alg = Algebra::parse_relations(
        names(&["x", "y"]),
        vec![1, 1],
        &["y^2*x - x*y^2", "y*x^2 + x^2*y"],
        Some(HilbertSeries { numerator: vec![1], denominator: vec![1, 1, 2] }),
    )?;
    let central = Arc::new(CentralSubalgebra::parse(&alg, &[("X", "x^4"), ("Y", "y^2"), ("Z", "(x*y)^2 + (y*x)^2")])?);
    let module = FreeModule::find_basis(central, 8)?;
    Ok(Instance::new("cubic AS-regular algebra", module))
}

/// The skew plane `𝕜⟨u, v⟩/(vu − p^{i²−j²} uv)` with the action of
/// `H_{2n²}` (`p = ζ_{2n}^{n+1}`, `q = ζ_n`)
/// `x⊳u = qⁱu, x⊳v = qʲv, y⊳u = qʲu, y⊳v = qⁱv, z⊳u = q^{ij}v, z⊳v = u`,
/// over `𝕜[U = uⁿ + vⁿ, W = uⁿvⁿ]` with a basis found by search.
pub fn h2n2_plane<S: Scalar>(n: u32, i: u32, j: u32) -> Result<Instance<S>> {
    if i >= n || j >= n {
        return Err(Error::InvalidPresentation("need 0 ≤ i, j < n".into()));
    }
    let (ni, i, j) = (n as i64, i as i64, j as i64);
    let p = |e: i64| root::<S>(2 * n, ((n as i64 + 1) * e).rem_euclid(2 * ni));
    let q = |e: i64| root::<S>(n, e.rem_euclid(ni));
    let u = Word(vec![0]);
    let v = Word(vec![1]);
    let rel = NcPoly::word(Word(vec![1, 0])).sub(&NcPoly::term(Word(vec![0, 1]), p(i * i - j * j)?));
    let alg = Algebra::from_relations(names(&["u", "v"]), vec![1, 1], vec![rel], Some(HilbertSeries::polynomial_ring(&[1, 1])))?;
    let un = NcPoly::word(Word(vec![0; n as usize]));
    let vn = NcPoly::word(Word(vec![1; n as usize]));
    let central = Arc::new(CentralSubalgebra::new(&alg, vec![("U".into(), un.add(&vn)), ("W".into(), alg.mul(&un, &vn))])?);
    let module = FreeModule::find_basis(central, 2 * n + 2)?;
    let hopf = Arc::new(HopfAlgebra::h2n2(n as u32)?);
    let idx = |l: &str| hopf.index_of(l).expect("H_{2n²} label");
    let (x, y, z) = (idx("x"), idx("y"), idx("z"));
    let t = |w: &Word, c: S| NcPoly::term(w.clone(), c);
    let gens = vec![
        (x, vec![t(&u, q(i)?), t(&v, q(j)?)]),
        (y, vec![t(&u, q(j)?), t(&v, q(i)?)]),
        (z, vec![t(&v, q(i * j)?), t(&u, S::one())]),
    ];
    let action = HopfAction::from_generators(hopf.clone(), alg, gens)?;
    let hd = [(x, q(i + j)?), (y, q(i + j)?), (z, -p((i + j) * (i + j))?)];
    let hdet = Character::from_generators(&hopf, &hd)?;
    Ok(Instance::new(format!("H_{{2n²}} acting on a skew plane, n = {n}, i = {i}, j = {j}"), module).with_action(action, hdet))
}

/// `𝕜[x_1, …, x_n]` with the permutation action of `S_n`, over the power
/// sums `p_k = Σ x_i^k`, with the staircase basis `x^a`, `a_i ≤ n − i`, and
/// `hdet` the sign character.
pub fn symmetric_polynomials<S: Scalar>(n: usize) -> Result<Instance<S>> {
    if n == 0 || n > 9 {
        return Err(Error::InvalidPresentation("need 1 ≤ n ≤ 9".into()));
    }
    let gnames: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut rels = Vec::new();
    for j in 0..n {
        for i in 0..j {
            rels.push(NcPoly::word(Word(vec![j as u8, i as u8])).sub(&NcPoly::word(Word(vec![i as u8, j as u8]))));
        }
    }
    let alg = Algebra::from_relations(gnames, vec![1; n], rels, Some(HilbertSeries::polynomial_ring(&vec![1; n])))?;
    let defs = (1..=n)
        .map(|k| {
            let mut p = NcPoly::zero();
            for i in 0..n {
                p = p.add(&NcPoly::word(Word(vec![i as u8; k])));
            }
            (format!("p{k}"), p)
        })
        .collect();
    let central = Arc::new(CentralSubalgebra::new(&alg, defs)?);
    let mut basis = vec![Word::empty()];
    for i in 0..n {
        basis = basis
            .into_iter()
            .flat_map(|w| (0..n - i).map(move |e| w.concat(&Word(vec![i as u8; e]))))
            .collect();
    }
    basis.sort_by(|a, b| alg.cmp_words(a, b));
    let module = FreeModule::new(central, basis.into_iter().map(NcPoly::word).collect())?;
    let (action, hdet) = permutation_action(&alg)?;
    Ok(Instance::new(format!("symmetric polynomials, n = {n}"), module).with_action(action, hdet))
}

/// `S_n` permuting the `n` generators of `alg` (`σ⊳x_j = x_{σ(j)}`), with
/// the sign character.
pub fn permutation_action<S: Scalar>(alg: &Algebra<S>) -> Result<(HopfAction<S>, Character<S>)> {
    let n = alg.num_gens();
    let hopf = Arc::new(HopfAlgebra::symmetric_group(n)?);
    let mut images = Vec::new();
    let mut signs = Vec::new();
    for label in hopf.labels() {
        let perm: Vec<usize> = label[1..label.len() - 1].split(',').map(|s| s.parse::<usize>().unwrap() - 1).collect();
        images.push((0..n).map(|j| alg.generator(perm[j])).collect());
        signs.push(S::from_i64(permutation_sign(&perm)));
    }
    let action = HopfAction::new(hopf, alg.clone(), images)?;
    Ok((action, Character { values: signs }))
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// The skew plane `𝕜⟨u, v⟩/(vu − i·uv)` with the `H_8` action
/// `x⊳u = −u, x⊳v = v, y⊳u = u, y⊳v = −v, z⊳u = v, z⊳v = u`, over the
/// non-central fixed ring `𝕜[P = u² + v², Q = u²v²]` with basis
/// `1, u, v, u², uv, u³, u²v, u³v`.
pub fn h8_noncentral<S: Scalar>() -> Result<Instance<S>> {
    let i: S = root(4, 1)?;
    let rel = NcPoly::word(Word(vec![1, 0])).sub(&NcPoly::term(Word(vec![0, 1]), i));
    let alg = Algebra::from_relations(names(&["u", "v"]), vec![1, 1], vec![rel], Some(HilbertSeries::polynomial_ring(&[1, 1])))?;
    let central = Arc::new(CentralSubalgebra::parse(&alg, &[("P", "u^2 + v^2"), ("Q", "u^2*v^2")])?);
    let module = FreeModule::parse_basis(central, &["1", "u", "v", "u^2", "u*v", "u^3", "u^2*v", "u^3*v"])?;
    let hopf = Arc::new(HopfAlgebra::h2n2(2)?);
    let idx = |l: &str| hopf.index_of(l).expect("H_8 label");
    let (u, v) = (alg.generator(0), alg.generator(1));
    let gens = vec![
        (idx("x"), vec![u.neg(), v.clone()]),
        (idx("y"), vec![u.clone(), v.neg()]),
        (idx("z"), vec![v.clone(), u.clone()]),
    ];
    let action = HopfAction::from_generators(hopf.clone(), alg, gens)?;
    let minus_one = -S::one();
    let hdet = Character::from_generators(&hopf, &[(idx("x"), minus_one.clone()), (idx("y"), minus_one), (idx("z"), root(4, 3)?)])?;
    Ok(Instance::new("H_8 acting on a skew plane with non-central fixed ring", module).with_action(action, hdet))
}
