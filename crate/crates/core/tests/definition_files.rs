use std::path::PathBuf;

use hopf_forge::definition::{Body, DefError, DefinitionFile};
use hopf_forge::finalg::AlgebraError;
use hopf_forge::fixtures;
use hopf_forge::presentations::presets;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn shipped() -> Vec<(String, String)> {
    let mut names: Vec<String> = fixtures::NAMES.iter().map(|s| s.to_string()).collect();
    names.extend(presets::NAMES.iter().filter(|n| presets::definition(n).is_some()).map(|s| s.to_string()));
    names
        .into_iter()
        .map(|n| {
            let text = std::fs::read_to_string(fixture_dir().join(format!("{n}.qg"))).unwrap();
            (n, text)
        })
        .collect()
}

#[test]
fn every_shipped_file_round_trips_byte_identically() {
    let files = shipped();
    assert_eq!(files.len(), 8);
    for (name, text) in files {
        let def = DefinitionFile::parse(&text).unwrap();
        assert_eq!(def.to_canonical_string().unwrap(), text, "{name}");
    }
}

#[test]
fn shipped_files_match_the_builtin_definitions() {
    for (name, text) in shipped() {
        let builtin = fixtures::fixture(&name).or_else(|| presets::definition(&name)).unwrap();
        assert_eq!(builtin.to_canonical_string().unwrap(), text, "{name}");
    }
}

#[test]
fn c_z2_loads_as_a_two_dimensional_structure() {
    let text = std::fs::read_to_string(fixture_dir().join("c_z2.qg")).unwrap();
    let def = DefinitionFile::parse(&text).unwrap();
    let Body::StructureConstants(s) = def.body else { panic!("c_z2 is structure constants") };
    assert_eq!(s.to_structure().unwrap().algebra.dim(), 2);
}

#[test]
fn non_associative_mutation_is_rejected_with_a_witness() {
    let mut def = fixtures::fixture("group_s3").unwrap();
    let Body::StructureConstants(s) = &mut def.body else { unreachable!() };
    // u(01)·u(01) = ue becomes u(01)·u(01) = u(012).
    let entry = s.mul.iter_mut().find(|(i, j, k, _)| (*i, *j, *k) == (1, 1, 0)).unwrap();
    entry.2 = 4;
    let text = def.to_canonical_string().unwrap();
    let reloaded = DefinitionFile::parse(&text).unwrap();
    let Body::StructureConstants(s) = reloaded.body else { unreachable!() };
    match s.to_structure() {
        Err(DefError::Algebra(AlgebraError::Associativity { i, j, k })) => assert!(i < 6 && j < 6 && k < 6),
        other => panic!("expected an associativity witness, got {other:?}"),
    }
}

#[test]
fn version_mismatch_is_reported() {
    let text = std::fs::read_to_string(fixture_dir().join("c_z2.qg"))
        .unwrap()
        .replace("\"format_version\": 1", "\"format_version\": 7");
    assert_eq!(DefinitionFile::parse(&text), Err(DefError::Version(7)));
}

#[test]
fn malformed_literal_names_its_location() {
    let text = std::fs::read_to_string(fixture_dir().join("c_z4.qg")).unwrap();
    let def = DefinitionFile::parse(&text.replacen("\"1\"", "\"1 +* s\"", 1)).unwrap();
    let Body::StructureConstants(s) = def.body else { unreachable!() };
    match s.to_structure() {
        Err(DefError::Scalar { location, .. }) => assert!(location.starts_with("mul"), "{location}"),
        other => panic!("expected a literal error, got {other:?}"),
    }
}

#[test]
fn presentation_definitions_assemble() {
    for name in ["uq-su2", "suq2"] {
        let def = presets::definition(name).unwrap();
        let Body::Presentation(p) = &def.body else { unreachable!() };
        let h = p.to_hopf(name).unwrap();
        assert!(h.run_checks().passes(), "{name}");
    }
}
