//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits nonzero if any fail.

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ncdisc::bundle::{Bundle, Field};
use ncdisc::commpoly::{bareiss_determinant, cofactor_determinant};
use ncdisc::hopf::HopfAlgebra;
use ncdisc::instances::{cubic, h2n2_plane, quantum_affine, symmetric_polynomials, with_diagonal_action, Instance};
use ncdisc::reflection::{jacobian_det, power_sums, vandermonde, ReflectionGroup};
use ncdisc::smash::{noncentral_trace_checks, product_of_one_plus, trace_and_integral_action, SmashProduct};
use ncdisc::{CommPoly, Cyclotomic, NcPoly, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const QUANTUM_AFFINE_LIMIT: Duration = Duration::from_secs(5);
const CUBIC_LIMIT: Duration = Duration::from_secs(600);
const H2N2_LIMIT: Duration = Duration::from_secs(600);
const S3_LIMIT: Duration = Duration::from_secs(120);
const SMASH_LIMIT: Duration = Duration::from_secs(300);
const GALOIS_DEGREE: u32 = 6;
const CONFLUENCE_DEGREE: u32 = 8;
const RANDOM_DETERMINANTS: usize = 200;

type Cyc = Cyclotomic;

/// Collects failures for one criterion.
#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn within(&mut self, what: &str, took: Duration, limit: Duration) {
        self.note(format!("{what} {:.2}s (limit {}s)", took.as_secs_f64(), limit.as_secs()));
        self.require(took < limit, format!("{what} took {:.1}s, limit {}s", took.as_secs_f64(), limit.as_secs()));
    }

    fn result<T>(&mut self, what: &str, r: ncdisc::Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.failures.push(format!("{what}: {e}"));
                None
            }
        }
    }
}

/// `got` equals the canonical form of `want` parsed in the algebra of `inst`.
fn same_in_algebra<S: Scalar>(inst: &Instance<S>, got: &NcPoly<S>, want: &str) -> bool {
    let alg = inst.algebra();
    let w = alg.parse(want).expect("expected value parses");
    match (alg.canonical_up_to_scalar(got), alg.canonical_up_to_scalar(&w)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

fn sign_plane() -> ncdisc::Result<Instance<Cyc>> {
    with_diagonal_action(quantum_affine(&["x", "y"], &[(0, 1, Cyc::integer(-1))], &[2, 2])?, &[2, 2])
}

fn i_plane(l: [u32; 2]) -> ncdisc::Result<Instance<Cyc>> {
    quantum_affine(&["x", "y"], &[(0, 1, Cyc::zeta(4, 1))], &l)
}

fn quantum_affine_discriminants() -> Outcome {
    let mut o = Outcome::default();
    let cases: [(&str, i64, [u32; 2], &str); 2] =
        [("p=-1, l=(2,2)", -1, [2, 2], "(x*y)^4"), ("p=i, l=(2,4)", 0, [2, 4], "(x*y^3)^8")];
    for (label, p, l, want) in cases {
        let start = Instant::now();
        let inst = if p == -1 {
            quantum_affine(&["x", "y"], &[(0, 1, Cyc::integer(-1))], &l)
        } else {
            i_plane(l)
        };
        let Some(inst) = o.result(label, inst) else { continue };
        match inst.discriminant_in_algebra() {
            Ok(d) => {
                let ok = same_in_algebra(&inst, &d, want);
                o.require(ok, format!("{label}: got {}, expected {want}", inst.algebra().render(&d)));
            }
            Err(e) => {
                let central = inst.module.subalgebra_is_central();
                o.failures.push(format!("{label}: {e} (subalgebra central: {central})"));
            }
        }
        o.within(label, start.elapsed(), QUANTUM_AFFINE_LIMIT);
    }
    o
}

fn cubic_example() -> Outcome {
    let mut o = Outcome::default();
    let start = Instant::now();
    let Some(inst) = o.result("cubic", cubic::<Rational>()) else { return o };
    let m = &inst.module;
    let alg = inst.algebra();
    o.require(m.rank() == 16, format!("rank {} ≠ 16", m.rank()));
    if let Some(theta) = o.result("θ", m.frobenius_theta()) {
        o.require(theta.valid, "θ pairing not unimodular");
        if let Some(omega) = o.result("ω", m.different(&theta)) {
            o.require(same_in_algebra(&inst, &omega, "x^2*((x*y)^2 - (y*x)^2)"), format!("ω = {}", alg.render(&omega)));
        }
        if let Some(mu) = o.result("μ", m.nakayama(&theta)) {
            let want = [alg.parse("-x").unwrap(), alg.parse("y").unwrap()];
            o.require(mu[..] == want[..], "μ(x) = -x, μ(y) = y");
        }
    }
    if let Some(d) = o.result("discriminant", inst.discriminant_in_algebra()) {
        let want = "(x^4*(((x*y)^2 + (y*x)^2)^2 + 4*x^4*y^4))^8";
        o.require(same_in_algebra(&inst, &d, want), "discriminant ≠ (x⁴(z² + 4x⁴y⁴))⁸");
    }
    o.within("cubic", start.elapsed(), CUBIC_LIMIT);
    o
}

fn h2n2_example() -> Outcome {
    let mut o = Outcome::default();
    let start = Instant::now();
    let Some(inst) = o.result("H_18 instance", h2n2_plane::<Cyc>(3, 2, 0)) else { return o };
    let bound = inst.module.top_degree() + 2;
    if let Some(mt) = o.result("invariants", inst.main_theorem(bound)) {
        let check = |o: &mut Outcome, name: &str, got: &Option<NcPoly<Cyc>>, want: &str| match got {
            Some(g) => o.require(same_in_algebra(&inst, g, want), format!("{name} = {}", inst.algebra().render(g))),
            None => o.failures.push(format!("{name} missing")),
        };
        check(&mut o, "𝔧", &mt.jacobian, "u^2*v^2*(u^3 - v^3)");
        check(&mut o, "𝔞", &mt.arrangement, "u*v*(u^3 - v^3)");
        check(&mut o, "δ", &mt.delta, "u^3*v^3*(u^3 - v^3)^2");
    }
    if let Some(d) = o.result("discriminant", inst.discriminant_in_algebra()) {
        o.require(same_in_algebra(&inst, &d, "(u*v)^36*(u^3 - v^3)^18"), "d ≠ (uv)³⁶(u³ − v³)¹⁸");
    }
    o.within("n=3", start.elapsed(), H2N2_LIMIT);
    o
}

fn pipelines_agree() -> Outcome {
    let mut o = Outcome::default();
    fn one<S: Scalar>(o: &mut Outcome, label: &str, inst: ncdisc::Result<Instance<S>>) {
        let Some(inst) = o.result(label, inst) else { return };
        let p = inst.pipelines(inst.module.top_degree() + 2);
        let agree = p.agree();
        o.require(agree, format!("{label}: pipelines disagree ({})", pipeline_summary(&inst, &p)));
        if agree {
            o.note(format!("{label} ok"));
        }
    }
    one(&mut o, "p=-1 l=(2,2)", quantum_affine(&["x", "y"], &[(0, 1, Cyc::integer(-1))], &[2, 2]));
    one(&mut o, "p=i l=(2,4)", i_plane([2, 4]).and_then(|i| with_diagonal_action(i, &[2, 4])));
    one(&mut o, "cubic", cubic::<Rational>());
    one(&mut o, "H_18", h2n2_plane::<Cyc>(3, 2, 0));
    one(&mut o, "(Z/2)^2 plane", sign_plane());
    o
}

fn pipeline_summary<S: Scalar>(inst: &Instance<S>, p: &ncdisc::instances::Pipelines<S>) -> String {
    let show = |r: &ncdisc::Result<NcPoly<S>>| match r {
        Ok(x) => inst.algebra().render(x),
        Err(e) => format!("error: {e}"),
    };
    format!("trace det {}; norm {}; {} {}", show(&p.trace_determinant), show(&p.norm_of_different), p.power_label, show(&p.power))
}

fn symmetric_and_reflection() -> Outcome {
    let mut o = Outcome::default();
    for n in [2usize, 3] {
        let start = Instant::now();
        let Some(inst) = o.result("S_n", symmetric_polynomials::<Rational>(n)) else { continue };
        if let Some(d) = o.result("discriminant", inst.discriminant_in_algebra()) {
            let fact: u32 = (1..=n as u32).product();
            let v = inst.algebra().parse(&vandermonde::<Rational>(n).to_string()).unwrap();
            let want = inst.algebra().canonical_up_to_scalar(&inst.algebra().pow(&v, fact)).unwrap();
            o.require(d == want, format!("S_{n}: d ≠ ∏(x_i − x_j)^{fact}"));
        }
        if n == 3 {
            o.within("S_3", start.elapsed(), S3_LIMIT);
        }
    }
    let groups: Vec<(&str, ncdisc::Result<ReflectionGroup<Cyc>>, Vec<CommPoly<Cyc>>)> = vec![
        ("S_2", ReflectionGroup::symmetric(2), power_sums(2)),
        ("S_3", ReflectionGroup::symmetric(3), power_sums(3)),
        ("Z/3", diagonal_z3(), vec![CommPoly::parse("x1^3", &["x1", "x2"]).unwrap(), CommPoly::parse("x2", &["x1", "x2"]).unwrap()]),
    ];
    for (label, g, invs) in groups {
        let Some(g) = o.result(label, g) else { continue };
        let (Some(dj), Some(hj)) = (o.result(label, jacobian_det(&invs)), o.result(label, g.jacobian_from_arrangement())) else {
            continue;
        };
        o.require(dj.eq_up_to_scalar(&hj), format!("{label}: ∂-Jacobian {dj} vs hyperplane product {hj}"));
    }
    o
}

fn diagonal_z3() -> ncdisc::Result<ReflectionGroup<Cyc>> {
    let m = vec![vec![Cyc::zeta(3, 1), Cyc::integer(0)], vec![Cyc::integer(0), Cyc::integer(1)]];
    ReflectionGroup::new(vec![m])?.with_vars(vec!["x1".into(), "x2".into()])
}

fn smash_discriminants() -> Outcome {
    let mut o = Outcome::default();
    fn one<S: Scalar>(o: &mut Outcome, label: &str, inst: ncdisc::Result<Instance<S>>, want: &str) {
        let start = Instant::now();
        let Some(inst) = o.result(label, inst) else { return };
        let alg = inst.algebra();
        let Some(b) = o.result(label, SmashProduct::new(&inst)) else { return };
        let Some(j) = o.result(label, inst.jacobian(inst.module.top_degree() + 2)) else { return };
        match b.discriminant() {
            Ok(Some(d)) => {
                let d = inst.central().expand_poly(&d);
                let nm = (inst.module.rank() * inst.action.as_ref().unwrap().hopf().dim()) as u32;
                o.require(same_in_algebra(&inst, &d, want), format!("{label}: d = {}", alg.render(&d)));
                o.require(alg.eq_up_to_scalar(&d, &alg.pow(&j, nm)), format!("{label}: d ≠ 𝔧^{nm}"));
            }
            Ok(None) => o.failures.push(format!("{label}: smash trace form degenerate")),
            Err(e) => o.failures.push(format!("{label}: {e}")),
        }
        o.within(label, start.elapsed(), SMASH_LIMIT);
    }
    one(&mut o, "k[x1,x2]#kS_2", symmetric_polynomials::<Rational>(2), "(x1 - x2)^4");
    one(&mut o, "k_-1[x,y]#k(Z/2)^2", sign_plane(), "(x*y)^16");
    o
}

fn galois_trace() -> Outcome {
    let mut o = Outcome::default();
    fn smash<S: Scalar>(o: &mut Outcome, label: &str, inst: ncdisc::Result<Instance<S>>) {
        let Some(inst) = o.result(label, inst) else { return };
        let Some(b) = o.result(label, SmashProduct::new(&inst)) else { return };
        let Some(data) = o.result(label, b.galois_data()) else { return };
        let checks = b.galois_trace_checks(&data, GALOIS_DEGREE);
        let modc = checks.iter().find(|c| c.name.contains("mod [B, B]")).expect("mod-commutator check");
        o.require(modc.passed, format!("{label}: {}", modc.detail));
        o.note(format!("{label}: {}", modc.detail));
    }
    smash(&mut o, "S_2", symmetric_polynomials::<Rational>(2));
    smash(&mut o, "(Z/2)^2", sign_plane());

    let Some(inst) = o.result("H_8", ncdisc::instances::h8_noncentral::<Cyc>()) else { return o };
    if let Some(checks) = o.result("H_8", noncentral_trace_checks(&inst, GALOIS_DEGREE)) {
        for c in &checks {
            o.require(c.passed, format!("H_8: {} {}", c.name, c.detail));
        }
    }
    let alg = inst.algebra();
    let hopf: &HopfAlgebra<Cyc> = inst.action.as_ref().unwrap().hopf();
    if let Some(t) = o.result("t", product_of_one_plus(hopf, &["x", "y", "z"])) {
        let u2 = alg.parse("u^2").unwrap();
        if let Some((tr, tu)) = o.result("tr(u²)", trace_and_integral_action(&inst, &t, &u2)) {
            o.require(tr.is_zero(), format!("tr(u²) = {}", alg.render(&tr)));
            o.require(tu == alg.parse("4*(u^2 + v^2)").unwrap(), format!("t⊳u² = {}", alg.render(&tu)));
            o.note(format!("tr(u²) = {}, t⊳u² = {}", alg.render(&tr), alg.render(&tu)));
        }
    }
    o
}

fn shipped_bundles() -> Vec<Bundle> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../bundles");
    let mut paths: Vec<_> = std::fs::read_dir(dir).expect("bundles directory").map(|e| e.unwrap().path()).collect();
    paths.sort();
    paths.iter().map(|p| Bundle::load(p).expect("bundle loads")).collect()
}

fn property_suites() -> Outcome {
    let mut o = Outcome::default();
    for b in shipped_bundles() {
        match b.field {
            Field::Rational => bundle_properties::<Rational>(&mut o, &b),
            Field::Cyclotomic => bundle_properties::<Cyc>(&mut o, &b),
        }
    }
    random_determinants(&mut o);
    for n in [2, 3] {
        if let Some(h) = o.result("h2n2", HopfAlgebra::<Cyc>::h2n2(n)) {
            let bad = h.verify();
            o.require(bad.is_empty(), format!("H_{} axioms: {}", 2 * n * n, bad.join("; ")));
        }
    }
    o
}

fn bundle_properties<S: Scalar>(o: &mut Outcome, b: &Bundle) {
    let name = &b.name;
    let Some(alg) = o.result(name, b.algebra::<S>()) else { return };
    let pairs = alg.check_local_confluence(CONFLUENCE_DEGREE);
    o.require(pairs.is_empty(), format!("{name}: {} unresolved overlaps", pairs.len()));
    let Some(inst) = o.result(name, b.build::<S>()) else { return };
    if let Some(a) = &inst.action {
        let bad = a.hopf().verify();
        o.require(bad.is_empty(), format!("{name}: Hopf axioms {}", bad.join("; ")));
    }
    let m = &inst.module;
    if !m.subalgebra_is_central() {
        return;
    }
    let n = m.rank();
    let one = alg.parse("1").unwrap();
    if let Some(t1) = o.result(name, m.hs_trace(&one)) {
        o.require(t1.as_constant() == Some(S::from_i64(n as i64)), format!("{name}: tr(1) = {t1}"));
    }
    let basis = m.basis();
    for (i, x) in basis.iter().enumerate() {
        for y in &basis[i + 1..] {
            let (Some(a), Some(c)) = (o.result(name, m.hs_trace(&alg.mul(x, y))), o.result(name, m.hs_trace(&alg.mul(y, x)))) else {
                return;
            };
            o.require(a == c, format!("{name}: tr({0}{1}) ≠ tr({1}{0})", alg.render(x), alg.render(y)));
        }
    }
    let Some(theta) = o.result(name, m.frobenius_theta()) else { return };
    if theta.valid {
        if let (Some(omega), Some(mu)) = (o.result(name, m.different(&theta)), o.result(name, m.nakayama(&theta))) {
            let bad = m.mu_normality_failures(&mu, &omega);
            o.require(bad.is_empty(), format!("{name}: ω not μ-normal: {}", bad.join("; ")));
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, vars: &[&str]) -> CommPoly<Rational> {
    let mut p = CommPoly::zero(vars);
    for _ in 0..rng.gen_range(0..4) {
        let exps: Vec<(String, u32)> = vars.iter().map(|v| (v.to_string(), rng.gen_range(0..3))).collect();
        let c = Rational::from_integer(rng.gen_range(-5i64..=5).into());
        p = &p + &CommPoly::monomial(vars, &exps, c);
    }
    p
}

fn random_determinants(o: &mut Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let vars = ["a", "b"];
    let mut mismatches = 0;
    for k in 0..RANDOM_DETERMINANTS {
        let n = if k % 2 == 0 { 3 } else { 4 };
        let m: Vec<Vec<CommPoly<Rational>>> = (0..n).map(|_| (0..n).map(|_| random_poly(&mut rng, &vars)).collect()).collect();
        match bareiss_determinant(&m) {
            Ok(d) if d == cofactor_determinant(&m) => {}
            _ => mismatches += 1,
        }
    }
    o.require(mismatches == 0, format!("{mismatches} Bareiss/cofactor mismatches"));
    o.note(format!("{RANDOM_DETERMINANTS} random determinants"));
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 quantum affine discriminants", quantum_affine_discriminants),
        ("2 cubic AS-regular algebra", cubic_example),
        ("3 H_2n² plane, n=3 i=2 j=0", h2n2_example),
        ("4 three discriminant pipelines agree", pipelines_agree),
        ("5 symmetric groups and reflection Jacobians", symmetric_and_reflection),
        ("6 smash product discriminants", smash_discriminants),
        ("7 Hopf-Galois trace identity", galois_trace),
        ("8 property suites", property_suites),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let o = f();
        let secs = start.elapsed().as_secs_f64();
        if o.failures.is_empty() {
            println!("[PASS] criterion {name} ({secs:.2}s): {}", o.notes.join("; "));
        } else {
            failed += 1;
            let notes = if o.notes.is_empty() { String::new() } else { format!(" [{}]", o.notes.join("; ")) };
            println!("[FAIL] criterion {name} ({secs:.2}s): {}{notes}", o.failures.join("; "));
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
