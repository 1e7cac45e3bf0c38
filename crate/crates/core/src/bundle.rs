//! Instance bundles: a TOML file describing an algebra, a central
//! subalgebra, a basis, an optional Hopf action and the expected results.
//! The grammar is documented in `docs/bundle-format.md`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::check::Check;
use crate::commpoly::CommPoly;
use crate::error::{Error, Result};
use crate::graded::{CentralSubalgebra, FreeModule};
use crate::hopf::{Character, HopfAction, HopfAlgebra};
use crate::instances::{permutation_action, Instance};
use crate::ncpoly::{Algebra, HilbertSeries, NcPoly};
use crate::reflection::{Matrix, ReflectionGroup};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    #[default]
    Rational,
    Cyclotomic,
}

impl Field {
    pub fn as_str(self) -> &'static str {
        match self {
            Field::Rational => "rational",
            Field::Cyclotomic => "cyclotomic",
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bundle {
    pub name: String,
    #[serde(default)]
    pub field: Field,
    /// Marks bundles whose smash product `A#H` is meant to be examined.
    #[serde(default)]
    pub smash: bool,
    /// Marks bundles whose subalgebra is deliberately not central.
    #[serde(default)]
    pub noncentral: bool,
    pub algebra: AlgebraSpec,
    pub central: CentralSpec,
    #[serde(default)]
    pub basis: BasisSpec,
    pub hopf: Option<HopfSpec>,
    /// Hopf generator label → images of the algebra generators.
    #[serde(default)]
    pub action: BTreeMap<String, Vec<String>>,
    /// Hopf generator label → value of `hdet`.
    #[serde(default)]
    pub hdet: BTreeMap<String, String>,
    pub reflection: Option<ReflectionSpec>,
    #[serde(default)]
    pub expected: Expected,
    #[serde(default)]
    pub verify: VerifySpec,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub generators: Vec<String>,
    pub degrees: Option<Vec<u32>>,
    #[serde(default)]
    pub relations: Vec<String>,
    pub hilbert: Option<HilbertSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HilbertSpec {
    pub numerator: Vec<i64>,
    pub denominator: Vec<u32>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CentralSpec {
    /// `[name, expression]` pairs.
    pub generators: Vec<(String, String)>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSpec {
    pub elements: Option<Vec<String>>,
    pub search_degree: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HopfKind {
    Trivial,
    Abelian,
    Symmetric,
    H2n2,
    MatrixGroup,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfSpec {
    pub kind: HopfKind,
    #[serde(default)]
    pub names: Vec<String>,
    #[serde(default)]
    pub orders: Vec<u32>,
    pub n: Option<u32>,
    /// Generator matrices for `matrix-group`; column `j` is the image of generator `j`.
    pub matrices: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReflectionSpec {
    pub matrices: Option<Vec<Vec<Vec<String>>>>,
    /// Basic invariants, in the algebra generators.
    pub invariants: Option<Vec<String>>,
}

/// Expected results. Polynomials are compared up to a nonzero scalar.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub rank: Option<usize>,
    /// In the subalgebra generators.
    pub discriminant: Option<String>,
    /// The discriminant written in the algebra generators.
    pub discriminant_in_algebra: Option<String>,
    pub jacobian: Option<String>,
    pub arrangement: Option<String>,
    pub delta: Option<String>,
    pub omega: Option<String>,
    pub nakayama: Option<Vec<String>>,
    /// `d(A#H, R)`, in the algebra generators.
    pub smash_discriminant: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySpec {
    #[serde(default = "default_degree")]
    pub degree: u32,
}

impl Default for VerifySpec {
    fn default() -> Self {
        VerifySpec { degree: default_degree() }
    }
}

fn default_degree() -> u32 {
    6
}

fn bundle_err(msg: impl Into<String>) -> Error {
    Error::Bundle(msg.into())
}

/// A scalar written in the expression grammar, e.g. `-1`, `1/2`, `zeta(4,1)`.
pub fn parse_scalar<S: Scalar>(text: &str) -> Result<S> {
    let no_vars: [&str; 0] = [];
    CommPoly::<S>::parse(text, &no_vars)?
        .as_constant()
        .ok_or_else(|| bundle_err(format!("`{text}` is not a scalar")))
}

fn parse_matrices<S: Scalar>(ms: &[Vec<Vec<String>>]) -> Result<Vec<Matrix<S>>> {
    ms.iter()
        .map(|m| m.iter().map(|r| r.iter().map(|x| parse_scalar(x)).collect()).collect())
        .collect()
}

impl Bundle {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| bundle_err(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| bundle_err(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn algebra<S: Scalar>(&self) -> Result<Algebra<S>> {
        let a = &self.algebra;
        let degrees = a.degrees.clone().unwrap_or_else(|| vec![1; a.generators.len()]);
        let hilbert = a.hilbert.as_ref().map(|h| HilbertSeries { numerator: h.numerator.clone(), denominator: h.denominator.clone() });
        Algebra::parse_relations(a.generators.clone(), degrees, &a.relations, hilbert)
    }

    /// Builds the instance: algebra, subalgebra, basis and action.
    pub fn build<S: Scalar>(&self) -> Result<Instance<S>> {
        let alg = self.algebra::<S>()?;
        let central = Arc::new(CentralSubalgebra::parse(&alg, &self.central.generators)?);
        let module = match (&self.basis.elements, self.basis.search_degree) {
            (Some(els), _) => FreeModule::parse_basis(central, els)?,
            (None, Some(d)) => FreeModule::find_basis(central, d)?,
            (None, None) => return Err(bundle_err("[basis] needs `elements` or `search_degree`")),
        };
        let inst = Instance::new(self.name.clone(), module);
        match &self.hopf {
            None => Ok(inst),
            Some(spec) => {
                let (action, hdet) = self.action_for(spec, &alg)?;
                Ok(inst.with_action(action, hdet))
            }
        }
    }

    fn action_for<S: Scalar>(&self, spec: &HopfSpec, alg: &Algebra<S>) -> Result<(HopfAction<S>, Character<S>)> {
        let hopf = match spec.kind {
            HopfKind::Trivial => HopfAlgebra::trivial(),
            HopfKind::Abelian => HopfAlgebra::abelian(&spec.names, &spec.orders)?,
            HopfKind::H2n2 => HopfAlgebra::h2n2(spec.n.ok_or_else(|| bundle_err("h2n2 needs `n`"))?)?,
            HopfKind::Symmetric => {
                if self.action.is_empty() {
                    let (action, sign) = permutation_action(alg)?;
                    let hdet = self.hdet_or(action.hopf(), sign)?;
                    return Ok((action, hdet));
                }
                HopfAlgebra::symmetric_group(spec.n.ok_or_else(|| bundle_err("symmetric needs `n`"))? as usize)?
            }
            HopfKind::MatrixGroup => {
                let ms = spec.matrices.as_ref().ok_or_else(|| bundle_err("matrix-group needs `matrices`"))?;
                let group = ReflectionGroup::new(parse_matrices(ms)?)?.with_vars(alg.names().to_vec())?;
                let (action, det) = group.linear_action(alg)?;
                let hdet = self.hdet_or(action.hopf(), det)?;
                return Ok((action, hdet));
            }
        };
        let hopf = Arc::new(hopf);
        let gens = self
            .action
            .iter()
            .map(|(label, images)| {
                let k = hopf.index_of(label).ok_or_else(|| bundle_err(format!("unknown Hopf label `{label}`")))?;
                if images.len() != alg.num_gens() {
                    return Err(bundle_err(format!("[action] `{label}` needs {} images", alg.num_gens())));
                }
                let ims = images.iter().map(|t| alg.parse(t)).collect::<Result<Vec<_>>>()?;
                Ok((k, ims))
            })
            .collect::<Result<Vec<_>>>()?;
        let action = HopfAction::from_generators(hopf.clone(), alg.clone(), gens)?;
        let hdet = self.hdet_or(&hopf, Character::counit(&hopf))?;
        Ok((action, hdet))
    }

    /// The `[hdet]` table when present, else `fallback`.
    fn hdet_or<S: Scalar>(&self, hopf: &HopfAlgebra<S>, fallback: Character<S>) -> Result<Character<S>> {
        if self.hdet.is_empty() {
            return Ok(fallback);
        }
        let gens = self
            .hdet
            .iter()
            .map(|(label, v)| {
                let k = hopf.index_of(label).ok_or_else(|| bundle_err(format!("unknown Hopf label `{label}` in [hdet]")))?;
                Ok((k, parse_scalar(v)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Character::from_generators(hopf, &gens)
    }

    /// The matrix group for `verify reflection`: `[reflection].matrices`,
    /// else the `matrix-group` or `symmetric` Hopf spec.
    pub fn reflection_group<S: Scalar>(&self) -> Result<ReflectionGroup<S>> {
        let names = self.algebra.generators.clone();
        let from_spec = self.reflection.as_ref().and_then(|r| r.matrices.as_ref());
        let group = match (from_spec, &self.hopf) {
            (Some(ms), _) => ReflectionGroup::new(parse_matrices(ms)?)?,
            (None, Some(HopfSpec { kind: HopfKind::MatrixGroup, matrices: Some(ms), .. })) => {
                ReflectionGroup::new(parse_matrices(ms)?)?
            }
            (None, Some(HopfSpec { kind: HopfKind::Symmetric, .. })) => ReflectionGroup::symmetric(names.len())?,
            _ => return Err(bundle_err("no matrix group: add [reflection] matrices or a matrix-group/symmetric [hopf]")),
        };
        group.with_vars(names)
    }

    /// Basic invariants for `verify reflection`: `[reflection].invariants`,
    /// else the subalgebra generators.
    pub fn invariant_texts(&self) -> Vec<String> {
        self.reflection
            .as_ref()
            .and_then(|r| r.invariants.clone())
            .unwrap_or_else(|| self.central.generators.iter().map(|(_, e)| e.clone()).collect())
    }
}

/// Compares `got` with an expected expression in `alg`, up to a scalar.
pub fn expect_algebra<S: Scalar>(alg: &Algebra<S>, name: &str, got: &NcPoly<S>, want: &Option<String>) -> Option<Check> {
    let want = want.as_ref()?;
    Some(match alg.parse(want) {
        Ok(w) => {
            let ok = alg.eq_up_to_scalar(got, &w);
            let detail = if ok { want.clone() } else { format!("expected {want}, got {}", alg.render(got)) };
            Check::new(format!("expected {name}"), ok, detail)
        }
        Err(e) => Check::fail(format!("expected {name}"), format!("cannot parse `{want}`: {e}")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Cyclotomic, Rational};

    const SIGN_PLANE: &str = r#"
name = "sign plane"
field = "cyclotomic"
smash = true

[algebra]
generators = ["x", "y"]
relations = ["y*x = -x*y"]
hilbert = { numerator = [1], denominator = [1, 1] }

[central]
generators = [["X", "x^2"], ["Y", "y^2"]]

[basis]
elements = ["1", "x", "y", "x*y"]

[hopf]
kind = "abelian"
names = ["g1", "g2"]
orders = [2, 2]

[action]
g1 = ["-x", "y"]
g2 = ["x", "-y"]

[hdet]
g1 = "-1"
g2 = "-1"

[expected]
discriminant = "X^2*Y^2"
jacobian = "x*y"
"#;

    #[test]
    fn builds_sign_plane() {
        let b = Bundle::parse(SIGN_PLANE).unwrap();
        assert_eq!(b.field, Field::Cyclotomic);
        assert!(b.smash);
        let inst = b.build::<Cyclotomic>().unwrap();
        assert_eq!(inst.module.rank(), 4);
        let d = inst.module.discriminant().unwrap().unwrap();
        assert_eq!(d, inst.central().parse_poly("X^2*Y^2").unwrap());
        let j = inst.jacobian(4).unwrap();
        assert!(inst.algebra().eq_up_to_scalar(&j, &inst.algebra().parse("x*y").unwrap()));
    }

    #[test]
    fn rejects_unknown_fields() {
        let text = SIGN_PLANE.replace("smash = true", "smash = true\ncolour = 3");
        assert!(matches!(Bundle::parse(&text), Err(Error::Bundle(_))));
    }

    #[test]
    fn unknown_hopf_label() {
        let text = SIGN_PLANE.replace("g2 = [\"x\", \"-y\"]", "g9 = [\"x\", \"-y\"]");
        let b = Bundle::parse(&text).unwrap();
        assert!(b.build::<Cyclotomic>().is_err());
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar::<Rational>("-3/4").unwrap(), Rational::new((-3).into(), 4.into()));
        assert_eq!(parse_scalar::<Cyclotomic>("zeta(4,1)^2").unwrap(), Cyclotomic::integer(-1));
        assert!(parse_scalar::<Rational>("zeta(3,1)").is_err());
    }

    #[test]
    fn matrix_group_bundle() {
        let text = r#"
name = "diagonal Z/3"
field = "cyclotomic"
[algebra]
generators = ["x1", "x2"]
relations = ["x2*x1 = x1*x2"]
[central]
generators = [["P", "x1^3"], ["Q", "x2"]]
[basis]
elements = ["1", "x1", "x1^2"]
[hopf]
kind = "matrix-group"
matrices = [[["zeta(3,1)", "0"], ["0", "1"]]]
"#;
        let b = Bundle::parse(text).unwrap();
        let inst = b.build::<Cyclotomic>().unwrap();
        assert_eq!(inst.action.as_ref().unwrap().hopf().dim(), 3);
        let j = inst.jacobian(4).unwrap();
        assert!(inst.algebra().eq_up_to_scalar(&j, &inst.algebra().parse("x1^2").unwrap()));
        let g = b.reflection_group::<Cyclotomic>().unwrap();
        assert_eq!(g.order().unwrap(), 3);
        assert_eq!(b.invariant_texts(), vec!["x1^3".to_string(), "x2".to_string()]);
    }

    #[test]
    fn symmetric_default_action() {
        let text = r#"
name = "S2"
[algebra]
generators = ["x1", "x2"]
relations = ["x2*x1 = x1*x2"]
[central]
generators = [["p1", "x1 + x2"], ["p2", "x1^2 + x2^2"]]
[basis]
elements = ["1", "x1"]
[hopf]
kind = "symmetric"
n = 2
"#;
        let inst = Bundle::parse(text).unwrap().build::<Rational>().unwrap();
        let checks = inst.sanity_checks(4);
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }
}
