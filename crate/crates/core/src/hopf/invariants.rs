//! Relative invariants of a Hopf action (Jacobian, reflection arrangement,
//! invariant discriminant) and the checks tying them to the trace
//! discriminant of `A` over its fixed ring.

use super::action::HopfAction;
use super::algebra::Character;
use crate::check::Check;
use crate::commpoly::CommPoly;
use crate::error::{Error, Result};
use crate::graded::{CentralSubalgebra, FreeModule, Side};
use crate::linalg::{solve, Solution};
use crate::ncpoly::{Algebra, NcPoly};
use crate::scalar::Scalar;

/// Solves `f = a·g` (`Side::Left`) or `f = g·a` (`Side::Right`) for a
/// homogeneous `a`.
pub fn homogeneous_divide<S: Scalar>(alg: &Algebra<S>, f: &NcPoly<S>, g: &NcPoly<S>, side: Side) -> Result<NcPoly<S>> {
    let dg = alg
        .homogeneous_degree(g)
        .ok_or_else(|| Error::NotDivisible("divisor is zero or not homogeneous".into()))?;
    if f.is_zero() {
        return Ok(NcPoly::zero());
    }
    let df = alg
        .homogeneous_degree(f)
        .ok_or_else(|| Error::NotDivisible("dividend is not homogeneous".into()))?;
    if df < dg {
        return Err(Error::NotDivisible(format!("degree {df} is below the divisor degree {dg}")));
    }
    let d = df - dg;
    let words = alg.monomial_basis(d);
    let cols: Vec<Vec<S>> = words
        .iter()
        .map(|w| {
            let w = NcPoly::word(w.clone());
            let p = match side {
                Side::Left => alg.mul(&w, g),
                Side::Right => alg.mul(g, &w),
            };
            alg.coords(&p, df)
        })
        .collect();
    let rows = alg.dimension(df);
    let matrix: Vec<Vec<S>> = (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    match solve(&matrix, &alg.coords(f, df)) {
        Solution::Unique(x) | Solution::Many(x) => Ok(NcPoly::from_terms(words.into_iter().zip(x))),
        Solution::Inconsistent => Err(Error::NotDivisible(format!(
            "{} is not a {} multiple of {}",
            alg.render(f),
            if side == Side::Left { "left" } else { "right" },
            alg.render(g)
        ))),
    }
}

/// `c` with `a_k = c · b_k` for every pair, when such a nonzero `c` exists.
pub fn proportionality<S: Scalar>(pairs: &[(CommPoly<S>, CommPoly<S>)]) -> Option<S> {
    let (a, b) = pairs.iter().find(|(_, b)| !b.is_zero())?;
    let (_, cb) = b.leading_term()?;
    let (_, ca) = a.leading_term()?;
    let c = ca.clone() * &cb.inv()?;
    pairs.iter().all(|(a, b)| a == &b.scale(&c)).then_some(c)
}

/// Compares `dim A^χ_d` with `dim R_{d − e}` for `d ≤ bound`, i.e. checks
/// that `A^χ` looks like a free rank-one `R`-module on a generator of degree `e`.
pub fn freeness_mismatches<S: Scalar>(
    action: &HopfAction<S>,
    chi: &Character<S>,
    central: &CentralSubalgebra<S>,
    generator_degree: u32,
    bound: u32,
) -> Vec<(u32, usize, usize)> {
    let mut out = Vec::new();
    for d in 0..=bound {
        let got = action.relative_invariant_dimension(chi, d);
        let want = if d >= generator_degree { central.monomials_of_degree(d - generator_degree).len() } else { 0 };
        if got != want {
            out.push((d, got, want));
        }
    }
    out
}

fn single_generator<S: Scalar>(
    action: &HopfAction<S>,
    chi: &Character<S>,
    central: &CentralSubalgebra<S>,
    degree: u32,
    bound: u32,
    what: &str,
) -> Result<NcPoly<S>> {
    let alg = action.algebra();
    let space = action.relative_invariants(chi, degree);
    if space.len() != 1 {
        return Err(Error::Verification(format!(
            "{what}: relative invariants of degree {degree} span dimension {}, expected 1",
            space.len()
        )));
    }
    let bad = freeness_mismatches(action, chi, central, degree, bound.max(degree));
    if let Some((d, got, want)) = bad.first() {
        return Err(Error::Verification(format!(
            "{what}: degree {d} has {got} relative invariants but a free module on a degree-{degree} generator has {want}"
        )));
    }
    alg.canonical_up_to_scalar(&space[0])
}

/// The Jacobian `𝔧`: the generator of `A^{hdet⁻¹}`, expected in degree `degree`
/// (the top degree of a homogeneous free basis of `A` over `R`).
pub fn jacobian<S: Scalar>(
    action: &HopfAction<S>,
    hdet: &Character<S>,
    central: &CentralSubalgebra<S>,
    degree: u32,
    bound: u32,
) -> Result<NcPoly<S>> {
    let chi = hdet.inverse(action.hopf());
    single_generator(action, &chi, central, degree, bound, "Jacobian")
}

/// The reflection arrangement `𝔞`: the generator of `A^{hdet}`, located at
/// the first degree where that space is nonzero.
pub fn arrangement<S: Scalar>(
    action: &HopfAction<S>,
    hdet: &Character<S>,
    central: &CentralSubalgebra<S>,
    scan_bound: u32,
    bound: u32,
) -> Result<NcPoly<S>> {
    let d = (0..=scan_bound)
        .find(|&d| action.relative_invariant_dimension(hdet, d) > 0)
        .ok_or_else(|| Error::Verification(format!("arrangement: no relative invariants up to degree {scan_bound}")))?;
    single_generator(action, hdet, central, d, bound, "arrangement")
}

/// `δ = 𝔞𝔧`, after checking `𝔞𝔧 =_{𝕜×} 𝔧𝔞`.
pub fn discriminant_invariant<S: Scalar>(alg: &Algebra<S>, j: &NcPoly<S>, a: &NcPoly<S>) -> Result<NcPoly<S>> {
    let left = alg.mul(a, j);
    let right = alg.mul(j, a);
    if !alg.eq_up_to_scalar(&left, &right) {
        return Err(Error::Verification(format!(
            "𝔞𝔧 = {} and 𝔧𝔞 = {} differ by more than a scalar",
            alg.render(&left),
            alg.render(&right)
        )));
    }
    alg.canonical_up_to_scalar(&left)
}

/// Checks that each subalgebra generator is invariant and that
/// `dim A^H_d = dim R_d` for `d ≤ bound`.
pub fn fixed_ring_checks<S: Scalar>(action: &HopfAction<S>, central: &CentralSubalgebra<S>, bound: u32) -> Vec<Check> {
    let alg = action.algebra();
    let h = action.hopf();
    let mut out = Vec::new();
    for g in central.generators() {
        let moved: Vec<&str> = (0..h.dim())
            .filter(|&k| action.act_basis(k, &g.definition) != g.definition.scale(h.counit_basis(k)))
            .map(|k| h.labels()[k].as_str())
            .collect();
        out.push(Check::new(
            format!("{} = {} is invariant", g.name, alg.render(&g.definition)),
            moved.is_empty(),
            if moved.is_empty() { String::new() } else { format!("moved by {}", moved.join(", ")) },
        ));
    }
    let eps = Character::counit(h);
    let bad = freeness_mismatches(action, &eps, central, 0, bound);
    out.push(Check::new(
        format!("dim A^H_d = dim R_d for d ≤ {bound}"),
        bad.is_empty(),
        bad.iter().map(|(d, got, want)| format!("degree {d}: {got} invariants, {want} in R")).collect::<Vec<_>>().join("; "),
    ));
    out
}

/// The pieces computed while checking `d(A, R; tr) =_{𝕜×} 𝔧ⁿ`.
pub struct MainTheoremReport<S: Scalar> {
    pub rank: usize,
    pub discriminant: Option<CommPoly<S>>,
    pub jacobian: Option<NcPoly<S>>,
    pub arrangement: Option<NcPoly<S>>,
    pub delta: Option<NcPoly<S>>,
    pub checks: Vec<Check>,
}

impl<S: Scalar> MainTheoremReport<S> {
    pub fn passed(&self) -> bool {
        crate::check::all_passed(&self.checks)
    }
}

/// Runs the itemised comparison between the trace discriminant and the
/// invariants of a Hopf action whose fixed ring is the subalgebra of `module`.
pub fn verify_main_theorem<S: Scalar>(
    module: &FreeModule<S>,
    action: &HopfAction<S>,
    hdet: &Character<S>,
    bound: u32,
) -> MainTheoremReport<S> {
    let alg = module.algebra();
    let central = module.central();
    let h = action.hopf();
    let n = module.rank();
    let mut checks = Vec::new();
    let mut report = MainTheoremReport { rank: n, discriminant: None, jacobian: None, arrangement: None, delta: None, checks: vec![] };
    let fail = |checks: &mut Vec<Check>, name: &str, e: Error| checks.push(Check::fail(name, e.to_string()));

    let hdet_bad = hdet.violations(h);
    checks.push(Check::new("hdet is a character", hdet_bad.is_empty(), hdet_bad.join("; ")));

    let disc = match module.discriminant() {
        Ok(Some(d)) => Some(d),
        Ok(None) => {
            checks.push(Check::fail("discriminant", "trace form is degenerate"));
            None
        }
        Err(e) => {
            fail(&mut checks, "discriminant", e);
            None
        }
    };
    let j = match jacobian(action, hdet, central, module.top_degree(), bound) {
        Ok(j) => Some(j),
        Err(e) => {
            fail(&mut checks, "Jacobian", e);
            None
        }
    };
    let a = match arrangement(action, hdet, central, bound.max(module.top_degree()), bound) {
        Ok(a) => Some(a),
        Err(e) => {
            fail(&mut checks, "arrangement", e);
            None
        }
    };
    let delta = match (&j, &a) {
        (Some(j), Some(a)) => match discriminant_invariant(alg, j, a) {
            Ok(d) => Some(d),
            Err(e) => {
                fail(&mut checks, "δ = 𝔞𝔧 =_{𝕜×} 𝔧𝔞", e);
                None
            }
        },
        _ => None,
    };
    if let (Some(j), Some(a)) = (&j, &a) {
        let ok = homogeneous_divide(alg, j, a, Side::Left).is_ok() && homogeneous_divide(alg, j, a, Side::Right).is_ok();
        checks.push(Check::new("𝔞 divides 𝔧", ok, ""));
    }

    let d_in_a = disc.as_ref().map(|d| central.expand_poly(d));
    if let (Some(d), Some(j)) = (&d_in_a, &j) {
        let jn = alg.pow(j, n as u32);
        let ok = alg.eq_up_to_scalar(d, &jn);
        checks.push(Check::new(
            format!("(i) d(A,R;tr) =_𝕜× 𝔧^{n}"),
            ok,
            if ok { String::new() } else { format!("d has {} terms, 𝔧^{n} has {}", d.num_terms(), jn.num_terms()) },
        ));
    }
    if let (Some(d), Some(delta)) = (&d_in_a, &delta) {
        let ok = homogeneous_divide(alg, d, delta, Side::Left).is_ok() && homogeneous_divide(alg, d, delta, Side::Right).is_ok();
        checks.push(Check::new("(ii) δ divides d on both sides", ok, ""));
        let dn = alg.pow(delta, n as u32);
        let ok = homogeneous_divide(alg, &dn, d, Side::Left).is_ok() && homogeneous_divide(alg, &dn, d, Side::Right).is_ok();
        checks.push(Check::new(format!("(iii) d divides δ^{n}"), ok, ""));
    }

    match (module.frobenius_theta(), module.basis_traces()) {
        (Ok(theta), Ok(traces)) if theta.valid => {
            if let Some(j) = &j {
                let pairs: Result<Vec<_>> = module
                    .basis()
                    .iter()
                    .zip(&traces)
                    .map(|(b, t)| Ok((t.clone(), module.theta(&theta, &alg.mul(j, b))?)))
                    .collect();
                match pairs {
                    Ok(p) => {
                        let c = proportionality(&p);
                        checks.push(Check::new("(iv) tr =_𝕜× θ·𝔧", c.is_some(), ""));
                    }
                    Err(e) => fail(&mut checks, "(iv) tr =_𝕜× θ·𝔧", e),
                }
            }
            let mut bad = Vec::new();
            for k in 0..h.dim() {
                let s_inv = match h.antipode_inverse(&h.basis_element(k)) {
                    Ok(s) => s,
                    Err(e) => {
                        bad.push(e.to_string());
                        break;
                    }
                };
                for b in module.basis() {
                    let lhs = module.theta(&theta, &action.act(&s_inv, b));
                    let rhs = module.theta(&theta, b).map(|t| t.scale(&hdet.values[k]));
                    match (lhs, rhs) {
                        (Ok(l), Ok(r)) if l == r => {}
                        (Ok(_), Ok(_)) => bad.push(format!("{} on {}", h.labels()[k], alg.render(b))),
                        (Err(e), _) | (_, Err(e)) => bad.push(e.to_string()),
                    }
                }
            }
            checks.push(Check::new("(v) h ⊳ θ = hdet(h) θ", bad.is_empty(), bad.join("; ")));
            let mut bad = Vec::new();
            for k in 0..h.dim() {
                for (b, tb) in module.basis().iter().zip(&traces) {
                    match module.hs_trace(&action.act_basis(k, b)) {
                        Ok(t) if t == tb.scale(h.counit_basis(k)) => {}
                        Ok(_) => bad.push(format!("{} on {}", h.labels()[k], alg.render(b))),
                        Err(e) => bad.push(e.to_string()),
                    }
                }
            }
            checks.push(Check::new("(vi) tr(h ⊳ a) = ε(h) tr(a)", bad.is_empty(), bad.join("; ")));
        }
        (Ok(_), Ok(_)) => checks.push(Check::fail("Frobenius form", "θ pairing is not unimodular")),
        (Err(e), _) | (_, Err(e)) => fail(&mut checks, "Frobenius form", e),
    }

    report.discriminant = disc;
    report.jacobian = j;
    report.arrangement = a;
    report.delta = delta;
    report.checks = checks;
    report
}
