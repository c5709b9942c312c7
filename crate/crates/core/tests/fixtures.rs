//! The shipped Cayley tables must match the in-code constructors, and
//! the shipped decomposition must certify end to end.

use std::fs;
use std::path::PathBuf;

use bigyro_core::finite::{
    build_tables, check_all_theorems, load_group, verify_bigyrotransversal, verify_bitransversal,
    verify_symmetry, verify_twisted_subgroup, FiniteGroup, GroupFile,
};
use bigyro_core::report::all_hold;

fn fixture(name: &str) -> GroupFile {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    load_group(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn shipped_tables_match_the_constructors() {
    for n in 1..=16 {
        assert_eq!(fixture(&format!("c{n}.json")).group, FiniteGroup::cyclic(n));
    }
    for n in 2..=8 {
        assert_eq!(fixture(&format!("d{n}.json")).group, FiniteGroup::dihedral(n));
    }
    assert_eq!(fixture("q8.json").group, FiniteGroup::quaternion(8));
    assert_eq!(fixture("q16.json").group, FiniteGroup::quaternion(16));
    assert_eq!(fixture("s3.json").group, FiniteGroup::symmetric(3));
    assert_eq!(fixture("s4.json").group, FiniteGroup::symmetric(4));
}

#[test]
fn the_decomposition_fixture_certifies_end_to_end() {
    let f = fixture("s3_decomposition.json");
    let (hl, b, hr) = (f.hl.unwrap(), f.b.unwrap(), f.hr.unwrap());
    let d = verify_bitransversal(&f.group, &hl, &b, &hr).unwrap();
    assert!(all_hold(&verify_bigyrotransversal(&d)));
    assert!(all_hold(&verify_twisted_subgroup(&f.group, &b).unwrap()));
    let t = build_tables(&d).unwrap();
    assert!(all_hold(&verify_symmetry(&d, &t)));
    assert!(check_all_theorems(&t).all_required_hold());
}
