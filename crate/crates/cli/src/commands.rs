use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use ncdisc::bundle::{expect_algebra, Bundle, Field};
use ncdisc::check::Check;
use ncdisc::hopf::invariants::{arrangement, discriminant_invariant};
use ncdisc::instances::Instance;
use ncdisc::reflection::jacobian_det;
use ncdisc::report::Report;
use ncdisc::smash::{noncentral_trace_checks, SmashProduct};
use ncdisc::{CommPoly, Cyclotomic, Rational, Scalar};

use crate::{Cli, Command, Suite};

pub struct Outcome {
    pub report: Report,
    pub text: String,
}

impl Outcome {
    fn from_report(report: Report) -> Self {
        let text = report.to_text();
        Outcome { report, text }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let path = match &cli.command {
        Command::Nf { bundle, .. }
        | Command::Confluence { bundle }
        | Command::Hilbert { bundle }
        | Command::Disc { bundle }
        | Command::NormDifferent { bundle }
        | Command::Jacobian { bundle }
        | Command::Verify { bundle, .. } => bundle,
    };
    let bundle = Bundle::load(path)?;
    let start = Instant::now();
    let out = match bundle.field {
        Field::Rational => run_with::<Rational>(cli, &bundle),
        Field::Cyclotomic => run_with::<Cyclotomic>(cli, &bundle),
    };
    eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    out
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Nf { .. } => "nf".into(),
        Command::Confluence { .. } => "confluence".into(),
        Command::Hilbert { .. } => "hilbert".into(),
        Command::Disc { .. } => "disc".into(),
        Command::NormDifferent { .. } => "norm-different".into(),
        Command::Jacobian { .. } => "jacobian".into(),
        Command::Verify { suite, .. } => format!("verify {}", suite_name(*suite)),
    }
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Main => "main",
        Suite::Smash => "smash",
        Suite::Galois => "galois",
        Suite::Reflection => "reflection",
    }
}

fn run_with<S: Scalar>(cli: &Cli, bundle: &Bundle) -> Result<Outcome> {
    let degree = cli.degree.unwrap_or(bundle.verify.degree);
    let mut report = Report::new(command_name(&cli.command), bundle.name.clone(), bundle.field.as_str());
    match &cli.command {
        Command::Nf { expr, .. } => {
            let alg = bundle.algebra::<S>()?;
            alg.set_fast_path(!cli.no_fast_path);
            let p = alg.parse(expr).with_context(|| format!("parsing `{expr}`"))?;
            let nf = alg.render(&alg.normal_form(&p)?);
            report.value("normal_form", nf.clone());
            Ok(Outcome { report, text: format!("{nf}\n") })
        }
        Command::Confluence { .. } => {
            let alg = bundle.algebra::<S>()?;
            alg.set_fast_path(!cli.no_fast_path);
            let pairs = alg.check_local_confluence(degree);
            let mut text = if pairs.is_empty() {
                format!("OK: 0 unresolved (degree ≤ {degree})\n")
            } else {
                format!("FAILED: {} unresolved (degree ≤ {degree})\n", pairs.len())
            };
            for p in &pairs {
                text.push_str(&format!("  {p:?}\n"));
            }
            report.check(Check::new(
                format!("local confluence up to degree {degree}"),
                pairs.is_empty(),
                format!("{} unresolved", pairs.len()),
            ));
            Ok(Outcome { report, text })
        }
        Command::Hilbert { .. } => {
            let alg = bundle.algebra::<S>()?;
            alg.set_fast_path(!cli.no_fast_path);
            let dims: Vec<String> = (0..=degree).map(|d| alg.dimension(d).to_string()).collect();
            report.value("dimensions", dims.join(" "));
            match alg.hilbert_check(degree) {
                Some(h) => {
                    let want: Vec<String> = h.rows.iter().map(|r| r.2.to_string()).collect();
                    report.value("series", want.join(" "));
                    report.check(Check::new(
                        format!("dimensions match the Hilbert series up to degree {degree}"),
                        h.first_mismatch.is_none(),
                        h.first_mismatch.map(|d| format!("first mismatch in degree {d}")).unwrap_or_default(),
                    ));
                }
                None => report.check(Check::pass("no Hilbert series declared", "")),
            }
            Ok(Outcome::from_report(report))
        }
        Command::Disc { .. } => {
            let inst = build::<S>(bundle, cli)?;
            disc(&inst, bundle, &mut report)?;
            Ok(Outcome::from_report(report))
        }
        Command::NormDifferent { .. } => {
            let inst = build::<S>(bundle, cli)?;
            norm_different(&inst, bundle, &mut report)?;
            Ok(Outcome::from_report(report))
        }
        Command::Jacobian { .. } => {
            let inst = build::<S>(bundle, cli)?;
            jacobian(&inst, bundle, degree, &mut report)?;
            Ok(Outcome::from_report(report))
        }
        Command::Verify { suite, .. } => {
            let inst = build::<S>(bundle, cli)?;
            match suite {
                Suite::Main => verify_main(&inst, bundle, degree, &mut report)?,
                Suite::Smash => verify_smash(&inst, bundle, degree, &mut report)?,
                Suite::Galois => verify_galois(&inst, bundle, degree, &mut report)?,
                Suite::Reflection => verify_reflection(&inst, bundle, &mut report)?,
            }
            Ok(Outcome::from_report(report))
        }
    }
}

fn build<S: Scalar>(bundle: &Bundle, cli: &Cli) -> Result<Instance<S>> {
    let inst = bundle.build::<S>()?;
    inst.algebra().set_fast_path(!cli.no_fast_path);
    Ok(inst)
}

fn expect_central<S: Scalar>(inst: &Instance<S>, name: &str, got: &CommPoly<S>, want: &Option<String>) -> Option<Check> {
    let want = want.as_ref()?;
    Some(match inst.central().parse_poly(want) {
        Ok(w) => {
            let ok = got.eq_up_to_scalar(&w);
            Check::new(format!("expected {name}"), ok, if ok { want.clone() } else { format!("expected {want}, got {got}") })
        }
        Err(e) => Check::fail(format!("expected {name}"), format!("cannot parse `{want}`: {e}")),
    })
}

fn disc<S: Scalar>(inst: &Instance<S>, bundle: &Bundle, report: &mut Report) -> Result<()> {
    let alg = inst.algebra();
    let n = inst.module.rank();
    report.value("rank", n.to_string());
    report.value("subalgebra_central", inst.module.subalgebra_is_central().to_string());
    if let Some(r) = bundle.expected.rank {
        report.check(Check::new("expected rank", r == n, format!("expected {r}, got {n}")));
    }
    match inst.module.discriminant()? {
        Some(d) => {
            report.value("discriminant", d.to_string());
            let in_a = alg.canonical_up_to_scalar(&inst.central().expand_poly(&d))?;
            report.value("discriminant_in_algebra", alg.render(&in_a));
            report.check(Check::pass("trace form is nondegenerate", ""));
            report.checks(expect_central(inst, "discriminant", &d, &bundle.expected.discriminant));
            report.checks(expect_algebra(alg, "discriminant in algebra generators", &in_a, &bundle.expected.discriminant_in_algebra));
        }
        None => {
            report.value("discriminant", "0");
            report.check(Check::fail("trace form is nondegenerate", "det[tr(b_i b_j)] = 0"));
        }
    }
    Ok(())
}

fn norm_different<S: Scalar>(inst: &Instance<S>, bundle: &Bundle, report: &mut Report) -> Result<()> {
    let alg = inst.algebra();
    let m = &inst.module;
    let theta = m.frobenius_theta()?;
    report.value("theta_top_basis_element", alg.render(&m.basis()[theta.top]));
    report.check(Check::new("θ pairing is unimodular", theta.valid, format!("det = {}", theta.pairing_det)));
    if !theta.valid {
        return Ok(());
    }
    let omega = m.different(&theta)?;
    report.value("omega", alg.render(&alg.canonical_up_to_scalar(&omega)?));
    let mu = m.nakayama(&theta)?;
    report.value(
        "nakayama",
        alg.names().iter().zip(&mu).map(|(g, p)| format!("{g} -> {}", alg.render(p))).collect::<Vec<_>>().join(", "),
    );
    let bad = m.endomorphism_violations(&mu);
    report.check(Check::new("μ respects the relations", bad.is_empty(), bad.join("; ")));
    let bad = m.mu_normality_failures(&mu, &omega);
    report.check(Check::new("ω is μ-normal", bad.is_empty(), bad.join("; ")));
    let nr = m.norm(&omega)?;
    if nr.is_zero() {
        report.check(Check::fail("N(ω) is nonzero", ""));
    } else {
        let nr = nr.canonical_up_to_scalar()?;
        report.value("norm_of_omega", nr.to_string());
        if let Some(d) = m.discriminant()? {
            report.check(Check::new("N(ω) = d(A, R) up to a scalar", d == nr, format!("d = {d}")));
        }
    }
    report.checks(expect_algebra(alg, "ω", &omega, &bundle.expected.omega));
    if let Some(want) = &bundle.expected.nakayama {
        for ((g, got), w) in alg.names().iter().zip(&mu).zip(want) {
            let c = match alg.parse(w) {
                Ok(p) => Check::new(format!("expected μ({g})"), &p == got, format!("expected {w}, got {}", alg.render(got))),
                Err(e) => Check::fail(format!("expected μ({g})"), e.to_string()),
            };
            report.check(c);
        }
    }
    Ok(())
}

fn jacobian<S: Scalar>(inst: &Instance<S>, bundle: &Bundle, degree: u32, report: &mut Report) -> Result<()> {
    let alg = inst.algebra();
    let (action, hdet) = match (&inst.action, &inst.hdet) {
        (Some(a), Some(h)) => (a, h),
        _ => bail!("bundle `{}` has no [hopf] section", bundle.name),
    };
    let bound = degree.max(inst.module.top_degree() + 2);
    let j = inst.jacobian(bound)?;
    report.value("jacobian", alg.render(&j));
    report.checks(expect_algebra(alg, "𝔧", &j, &bundle.expected.jacobian));
    let a = arrangement(action, hdet, inst.central(), inst.module.top_degree(), bound)?;
    report.value("arrangement", alg.render(&a));
    report.checks(expect_algebra(alg, "𝔞", &a, &bundle.expected.arrangement));
    let delta = discriminant_invariant(alg, &j, &a)?;
    report.value("delta", alg.render(&delta));
    report.checks(expect_algebra(alg, "δ", &delta, &bundle.expected.delta));
    Ok(())
}

fn verify_main<S: Scalar>(inst: &Instance<S>, bundle: &Bundle, degree: u32, report: &mut Report) -> Result<()> {
    let alg = inst.algebra();
    report.checks(inst.sanity_checks(degree));
    disc(inst, bundle, report)?;
    let bound = degree.max(inst.module.top_degree() + 2);
    if inst.action.is_some() {
        let mt = inst.main_theorem(bound)?;
        if let Some(j) = &mt.jacobian {
            report.value("jacobian", alg.render(j));
            report.checks(expect_algebra(alg, "𝔧", j, &bundle.expected.jacobian));
        }
        if let Some(a) = &mt.arrangement {
            report.value("arrangement", alg.render(a));
            report.checks(expect_algebra(alg, "𝔞", a, &bundle.expected.arrangement));
        }
        if let Some(d) = &mt.delta {
            report.value("delta", alg.render(d));
            report.checks(expect_algebra(alg, "δ", d, &bundle.expected.delta));
        }
        report.checks(mt.checks);
    }
    let p = inst.pipelines(bound);
    let show = |r: &ncdisc::Result<ncdisc::NcPoly<S>>| match r {
        Ok(x) => alg.render(x),
        Err(e) => format!("error: {e}"),
    };
    let agree = p.agree();
    report.check(Check::new(
        format!("trace determinant = norm of different = {}", p.power_label),
        agree,
        if agree { String::new() } else { format!(
            "trace determinant {}; norm of different {}; {} {}",
            show(&p.trace_determinant),
            show(&p.norm_of_different),
            p.power_label,
            show(&p.power)
        ) },
    ));
    Ok(())
}

fn verify_smash<S: Scalar>(inst: &Instance<S>, bundle: &Bundle, degree: u32, report: &mut Report) -> Result<()> {
    if !bundle.smash {
        bail!("bundle `{}` is not marked `smash = true`", bundle.name);
    }
    let alg = inst.algebra();
    let b = SmashProduct::new(inst)?;
    let j = inst.jacobian(degree.max(inst.module.top_degree() + 2))?;
    report.value("jacobian", alg.render(&j));
    report.value("rank", b.rank().to_string());
    let checks = b.verify(&j, degree);
    report.checks(checks);
    if bundle.expected.smash_discriminant.is_some() {
        let d = b.discriminant()?.ok_or_else(|| anyhow!("smash trace form is degenerate"))?;
        let in_a = alg.canonical_up_to_scalar(&inst.central().expand_poly(&d))?;
        report.value("smash_discriminant", alg.render(&in_a));
        report.checks(expect_algebra(alg, "d(A#H, R)", &in_a, &bundle.expected.smash_discriminant));
    }
    Ok(())
}

fn verify_galois<S: Scalar>(inst: &Instance<S>, bundle: &Bundle, degree: u32, report: &mut Report) -> Result<()> {
    if bundle.noncentral || !inst.module.subalgebra_is_central() {
        report.checks(noncentral_trace_checks(inst, degree)?);
        return Ok(());
    }
    let b = SmashProduct::new(inst)?;
    let data = b.galois_data()?;
    report.check(Check::pass("β(Σ x_i ⊗ y_i) = 1 ⊗ t", ""));
    let fb = b.frobenius_failures(&data, degree.min(4));
    report.check(Check::new(format!("Frobenius system identities for deg ≤ {}", degree.min(4)), fb.is_empty(), fb.join("; ")));
    report.checks(b.galois_trace_checks(&data, degree));
    Ok(())
}

fn verify_reflection<S: Scalar>(inst: &Instance<S>, bundle: &Bundle, report: &mut Report) -> Result<()> {
    let alg = inst.algebra();
    let group = bundle.reflection_group::<S>()?;
    let names = alg.names().to_vec();
    let invs = bundle
        .invariant_texts()
        .iter()
        .map(|t| CommPoly::<S>::parse(t, &names))
        .collect::<ncdisc::Result<Vec<_>>>()?;
    report.value("group_order", group.order()?.to_string());
    report.checks(group.verify(&invs));
    let j = jacobian_det(&invs)?;
    report.value("jacobian", j.to_string());
    let order = group.order()? as u32;
    let jn = alg.parse(&j.to_string())?;
    let want = alg.canonical_up_to_scalar(&alg.pow(&jn, order))?;
    match inst.discriminant_in_algebra() {
        Ok(d) => {
            report.value("discriminant_in_algebra", alg.render(&d));
            report.check(Check::new(format!("d(A, R) = 𝔧^|G| with |G| = {order}"), d == want, ""));
        }
        Err(e) => report.check(Check::fail(format!("d(A, R) = 𝔧^|G| with |G| = {order}"), e.to_string())),
    }
    Ok(())
}
