//! The shipped example corpus, generated from group tables and small hand-written
//! Hopf algebras.

use crate::definition::{Body, DefinitionFile, NamedBasis, NamedVector, StructureDef, FORMAT_VERSION};

pub const NAMES: [&str; 6] = ["c_z2", "c_z4", "c_s3", "group_s3", "sweedler_h4", "semilattice2"];

pub fn fixture(name: &str) -> Option<DefinitionFile> {
    let (description, body) = match name {
        "c_z2" => ("functions on the cyclic group of order 2", function_algebra(&cyclic(2))),
        "c_z4" => ("functions on the cyclic group of order 4, with the subgroup {0,2}", c_z4()),
        "c_s3" => ("functions on the symmetric group S3", function_algebra(&s3())),
        "group_s3" => ("group algebra of the symmetric group S3", group_algebra(&s3())),
        "sweedler_h4" => ("Sweedler's four-dimensional Hopf algebra, star g*=g, x*=x", sweedler()),
        "semilattice2" => ("two-point semilattice: a coassociative morphism whose T-maps are singular", semilattice()),
        _ => return None,
    };
    Some(DefinitionFile {
        format_version: FORMAT_VERSION,
        name: name.to_string(),
        description: description.to_string(),
        body: Body::StructureConstants(body),
    })
}

/// A finite group as labels plus a multiplication table of indices; element 0 is the identity.
struct Group {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl Group {
    fn order(&self) -> usize {
        self.labels.len()
    }

    fn inverse(&self, g: usize) -> usize {
        (0..self.order()).find(|&h| self.table[g][h] == 0).expect("group")
    }
}

fn cyclic(n: usize) -> Group {
    Group {
        labels: (0..n).map(|k| format!("e{k}")).collect(),
        table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
    }
}

fn s3() -> Group {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
    let labels = ["e", "(01)", "(02)", "(12)", "(012)", "(021)"];
    let table = perms
        .iter()
        .map(|g| {
            perms
                .iter()
                .map(|h| {
                    let gh = [g[h[0]], g[h[1]], g[h[2]]];
                    perms.iter().position(|p| *p == gh).unwrap()
                })
                .collect()
        })
        .collect();
    Group { labels: labels.iter().map(|s| s.to_string()).collect(), table }
}

fn one() -> String {
    "1".into()
}

fn indicator(n: usize, support: &[usize]) -> Vec<String> {
    (0..n).map(|i| if support.contains(&i) { one() } else { "0".into() }).collect()
}

/// C(G): pointwise product, Δ(δ_g) = Σ_{hk=g} δ_h⊗δ_k.
fn function_algebra(g: &Group) -> StructureDef {
    let n = g.order();
    let mut coproduct = Vec::new();
    for a in 0..n {
        for h in 0..n {
            for k in 0..n {
                if g.table[h][k] == a {
                    coproduct.push((a, h, k, one()));
                }
            }
        }
    }
    StructureDef {
        basis: g.labels.clone(),
        mul: (0..n).map(|i| (i, i, i, one())).collect(),
        unit: vec![one(); n],
        star: Some((0..n).map(|i| (i, i, one())).collect()),
        coproduct,
        counit: None,
        antipode: None,
        subalgebras: Vec::new(),
        grouplike_projections: Vec::new(),
    }
}

/// ℂ[G]: u_g u_h = u_{gh}, u_g* = u_{g⁻¹}, Δ(u_g) = u_g⊗u_g.
fn group_algebra(g: &Group) -> StructureDef {
    let n = g.order();
    let mut mul = Vec::new();
    for a in 0..n {
        for b in 0..n {
            mul.push((a, b, g.table[a][b], one()));
        }
    }
    StructureDef {
        basis: g.labels.iter().map(|l| format!("u{l}")).collect(),
        mul,
        unit: indicator(n, &[0]),
        star: Some((0..n).map(|a| (a, g.inverse(a), one())).collect()),
        coproduct: (0..n).map(|a| (a, a, a, one())).collect(),
        counit: None,
        antipode: None,
        subalgebras: vec![NamedBasis { name: "trivial".into(), basis: vec![indicator(n, &[0])] }],
        grouplike_projections: vec![NamedVector { name: "unit".into(), vector: indicator(n, &[0]) }],
    }
}

fn c_z4() -> StructureDef {
    let mut def = function_algebra(&cyclic(4));
    def.subalgebras =
        vec![NamedBasis { name: "C(H), H={0,2}".into(), basis: vec![indicator(4, &[0]), indicator(4, &[2])] }];
    def.grouplike_projections =
        vec![NamedVector { name: "indicator of H={0,2}".into(), vector: indicator(4, &[0, 2]) }];
    def
}

/// Basis 1, g, x, gx with g² = 1, x² = 0, xg = −gx; Δ(g) = g⊗g, Δ(x) = x⊗1 + g⊗x.
fn sweedler() -> StructureDef {
    let m = |i, j, k, v: &str| (i, j, k, v.to_string());
    let mul = vec![
        m(0, 0, 0, "1"),
        m(0, 1, 1, "1"),
        m(0, 2, 2, "1"),
        m(0, 3, 3, "1"),
        m(1, 0, 1, "1"),
        m(1, 1, 0, "1"),
        m(1, 2, 3, "1"),
        m(1, 3, 2, "1"),
        m(2, 0, 2, "1"),
        m(2, 1, 3, "-1"),
        m(3, 0, 3, "1"),
        m(3, 1, 2, "-1"),
    ];
    let coproduct =
        vec![m(0, 0, 0, "1"), m(1, 1, 1, "1"), m(2, 1, 2, "1"), m(2, 2, 0, "1"), m(3, 0, 3, "1"), m(3, 3, 1, "1")];
    StructureDef {
        basis: vec!["1".into(), "g".into(), "x".into(), "gx".into()],
        mul,
        unit: indicator(4, &[0]),
        star: Some(vec![(0, 0, one()), (1, 1, one()), (2, 2, one()), (3, 3, "-1".into())]),
        coproduct,
        counit: None,
        antipode: None,
        subalgebras: Vec::new(),
        grouplike_projections: Vec::new(),
    }
}

fn semilattice() -> StructureDef {
    let mut def = function_algebra(&cyclic(2));
    def.coproduct = vec![(0, 0, 0, one()), (1, 1, 1, one())];
    def
}

/// Parsed and algebra-checked objects of a shipped fixture.
pub fn structure(name: &str) -> Option<crate::definition::Structure> {
    match fixture(name)?.body {
        Body::StructureConstants(s) => Some(s.to_structure().expect("shipped fixtures are valid")),
        Body::Presentation(_) => None,
    }
}
