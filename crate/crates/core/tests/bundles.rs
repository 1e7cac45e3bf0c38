//! Shipped bundles agree with the ready-made instances they describe.

use std::path::{Path, PathBuf};

use ncdisc::bundle::Bundle;
use ncdisc::instances::{cubic, h2n2_plane, h8_noncentral, symmetric_polynomials, Instance};
use ncdisc::{Cyclotomic, Rational, Scalar};

fn path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../bundles").join(format!("{name}.toml"))
}

fn load<S: Scalar>(name: &str) -> Instance<S> {
    Bundle::load(&path(name)).unwrap().build().unwrap()
}

fn same_discriminant<S: Scalar>(a: &Instance<S>, b: &Instance<S>) {
    assert_eq!(a.module.rank(), b.module.rank());
    let (da, db) = (a.discriminant_in_algebra().unwrap(), b.discriminant_in_algebra().unwrap());
    assert_eq!(a.algebra().render(&da), b.algebra().render(&db));
}

#[test]
fn cubic_bundle_matches_constructor() {
    same_discriminant(&load::<Rational>("cubic"), &cubic::<Rational>().unwrap());
}

#[test]
fn h18_bundle_matches_constructor() {
    let b = load::<Cyclotomic>("h18-plane");
    let c = h2n2_plane::<Cyclotomic>(3, 2, 0).unwrap();
    same_discriminant(&b, &c);
    let (jb, jc) = (b.jacobian(8).unwrap(), c.jacobian(8).unwrap());
    assert!(b.algebra().eq_up_to_scalar(&jb, &jc));
}

#[test]
fn symmetric_bundles_match_constructor() {
    same_discriminant(&load::<Rational>("symmetric-2"), &symmetric_polynomials::<Rational>(2).unwrap());
    same_discriminant(&load::<Rational>("symmetric-3"), &symmetric_polynomials::<Rational>(3).unwrap());
}

#[test]
fn h8_bundle_matches_constructor() {
    let b = load::<Cyclotomic>("h8-noncentral");
    let c = h8_noncentral::<Cyclotomic>().unwrap();
    assert!(!b.module.subalgebra_is_central());
    let hb = b.hdet.as_ref().unwrap();
    let hc = c.hdet.as_ref().unwrap();
    assert_eq!(hb.values, hc.values);
    for w in ["u^2", "u*v", "u^3*v"] {
        let p = b.algebra().parse(w).unwrap();
        assert_eq!(b.module.hs_trace(&p).unwrap(), c.module.hs_trace(&p).unwrap(), "{w}");
    }
}

#[test]
fn every_bundle_builds() {
    for entry in std::fs::read_dir(path("x").parent().unwrap()).unwrap() {
        let p = entry.unwrap().path();
        let b = Bundle::load(&p).unwrap();
        let rank = match b.field {
            ncdisc::bundle::Field::Rational => b.build::<Rational>().map(|i| i.module.rank()),
            ncdisc::bundle::Field::Cyclotomic => b.build::<Cyclotomic>().map(|i| i.module.rank()),
        };
        let rank = rank.unwrap_or_else(|e| panic!("{}: {e}", p.display()));
        if let Some(r) = b.expected.rank {
            assert_eq!(r, rank, "{}", p.display());
        }
    }
}
