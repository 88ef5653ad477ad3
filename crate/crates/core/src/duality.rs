//! The dual quantum group on `{φ(·a)}`, biduality, `δ̂ = ε∘κ`, and the dual
//! imbedding of a sub-quantum group.

use thiserror::Error;

use crate::finalg::linalg::unit_vec;
use crate::finalg::{apply_tensor, flip, outer, FinAlgebra, Functional, Matrix, MulEntry, Vector};
use crate::haar::{HaarError, ModularData};
use crate::mhopf::{attach_coproduct, HasCoproduct, MhopfError, QGData, SubReport};
use crate::scalars::Scalar;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DualError {
    #[error("the pairing ⟨φ(·e_i), e_j⟩ is degenerate (φ is not faithful)")]
    Degenerate,
    #[error("dual fails the Hopf suite: {0}")]
    Mhopf(#[from] MhopfError),
    #[error("dual Haar: {0}")]
    Haar(#[from] HaarError),
    #[error("derived dual {0} differs from the transported one")]
    Transport(&'static str),
    #[error("{0}")]
    Map(String),
    #[error("restriction of φ to the subalgebra {0}")]
    Restriction(&'static str),
}

pub type Result<T> = std::result::Result<T, DualError>;

/// `Â` on the basis `ω_i = φ(·e_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualQG {
    pub qg: QGData,
    /// `pairing[i][x] = ⟨ω_i, e_x⟩ = φ(e_x e_i)`.
    pub pairing: Matrix,
    /// The functional defining the basis.
    pub phi: Functional,
}

impl DualQG {
    /// Values on the basis of `A` of the dual element with coordinates `c`.
    pub fn values(&self, c: &[Scalar]) -> Vector {
        self.pairing.apply_left(c)
    }

    /// `⟨ω, x⟩` for dual coordinates `w` and `x ∈ A`.
    pub fn pair(&self, w: &[Scalar], x: &[Scalar]) -> Scalar {
        crate::finalg::linalg::dot(&self.values(w), x)
    }
}

/// Builds `Â` from `A` and a faithful functional `φ` (the left Haar functional,
/// or its restriction for a sub-quantum group) and re-runs the Hopf suite.
pub fn build_dual(q: &QGData, phi: &Functional) -> Result<DualQG> {
    let n = q.dim();
    let a = q.algebra();
    let pairing =
        Matrix::from_rows((0..n).map(|i| (0..n).map(|x| phi.eval(&a.basis_product_vec(x, i))).collect()).collect());
    // Functional values → ω-coordinates.
    let to_coords = pairing.transpose().inverse().ok_or(DualError::Degenerate)?;
    let rows: Vec<Vector> = (0..n).map(|i| pairing.row(i).to_vec()).collect();
    let mut mul = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let values = q.coproduct().apply_left(&outer(&rows[i], &rows[j]));
            for (k, c) in to_coords.apply(&values).into_iter().enumerate() {
                if !c.is_zero() {
                    mul.push(MulEntry { i, j, k, value: c });
                }
            }
        }
    }
    let unit = to_coords.apply(q.counit().values());
    let star = a.star_matrix().map(|_| {
        let cols: Vec<Vector> = (0..n)
            .map(|j| {
                let values: Vector = (0..n)
                    .map(|x| {
                        let sx = q.antipode().col(x);
                        Functional(rows[j].clone()).eval(&a.star_vec(&sx).unwrap()).conj()
                    })
                    .collect();
                to_coords.apply(&values)
            })
            .collect();
        Matrix::from_cols(n, &cols)
    });
    let labels = a.labels().iter().map(|l| format!("φ(·{l})")).collect();
    let algebra = FinAlgebra::build(labels, &mul, Some(unit), star).map_err(|e| DualError::Map(e.to_string()))?;
    // Δ̂(ω_i)(e_x⊗e_y) = ω_i(e_y e_x).
    let cols: Vec<Vector> = (0..n)
        .map(|i| {
            let w: Vector = (0..n * n)
                .map(|idx| Functional(rows[i].clone()).eval(&a.basis_product_vec(idx % n, idx / n)))
                .collect();
            apply_tensor(&to_coords, &to_coords, &w)
        })
        .collect();
    let coproduct = Matrix::from_cols(n * n, &cols);
    let qg = attach_coproduct(algebra, coproduct)?.derive_counit_antipode()?;
    // Cross-check against the transported formulas ε̂(ω) = ω(1), Ŝ(ω) = ω∘S⁻¹
    // (S⁻¹ because Δ̂ is the transpose of the opposite product).
    let one = q.one();
    let eps: Vector = rows.iter().map(|r| Functional(r.clone()).eval(&one)).collect();
    if qg.counit().values() != &eps[..] {
        return Err(DualError::Transport("counit"));
    }
    let s_inv = q.antipode().inverse().ok_or(DualError::Transport("antipode"))?;
    let s_cols: Vec<Vector> = rows.iter().map(|r| to_coords.apply(&s_inv.apply_left(r))).collect();
    if qg.antipode() != &Matrix::from_cols(n, &s_cols) {
        return Err(DualError::Transport("antipode"));
    }
    Ok(DualQG { qg, pairing, phi: phi.clone() })
}

/// Checks that `f: A → B` (columns = images of basis vectors) is a bijective
/// quantum-group morphism, or an anti-isomorphism
/// of algebras and coalgebras when `anti` is set (the star is then not checked).
pub fn check_qg_map(a: &QGData, b: &QGData, f: &Matrix, anti: bool) -> std::result::Result<(), String> {
    let n = a.dim();
    if b.dim() != n || f.rows() != n || f.cols() != n || f.rank() < n {
        return Err("not a bijection".into());
    }
    if f.apply(&a.one()) != b.one() {
        return Err("unit not preserved".into());
    }
    let img = f.columns();
    for i in 0..n {
        for j in 0..n {
            let lhs = f.apply(&a.algebra().basis_product_vec(i, j));
            let rhs = if anti { b.mul(&img[j], &img[i]) } else { b.mul(&img[i], &img[j]) };
            if lhs != rhs {
                return Err(format!("product not preserved at (e{i}, e{j})"));
            }
        }
    }
    for (i, fi) in img.iter().enumerate() {
        let pushed = apply_tensor(f, f, &a.delta_basis(i));
        let target = b.delta(fi);
        let target = if anti { flip(&target, n, n) } else { target };
        if pushed != target {
            return Err(format!("coproduct not intertwined at e{i}"));
        }
        if b.counit().eval(fi) != a.counit().values()[i] {
            return Err(format!("counit not preserved at e{i}"));
        }
        if b.antipode().apply(fi) != f.apply(&a.antipode().col(i)) {
            return Err(format!("antipode not intertwined at e{i}"));
        }
        // Plain evaluation only satisfies ev_a* = ev_{S⁻²(a*)}, so anti maps skip the star.
        if anti {
            continue;
        }
        if let (Some(x), Some(y)) = (a.algebra().star_vec(&unit_vec(n, i)), b.algebra().star_vec(fi)) {
            if f.apply(&x) != y {
                return Err(format!("star not preserved at e{i}"));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BidualityReport {
    pub dual_haar: ModularData,
    /// `a ↦ ev_{S(a)}` in bidual coordinates.
    pub canonical: Matrix,
    pub canonical_iso: std::result::Result<(), String>,
    /// Plain evaluation `a ↦ ev_a`, which reverses both product and coproduct.
    pub evaluation: Matrix,
    pub evaluation_anti_iso: std::result::Result<(), String>,
}

impl BidualityReport {
    pub fn passes(&self) -> bool {
        self.canonical_iso.is_ok() && self.evaluation_anti_iso.is_ok()
    }
}

/// Solves the Haar functional of `Â` from scratch, builds the bidual and checks
/// the canonical map `A → Â̂`.
pub fn dual_haar_and_biduality(q: &QGData, d: &DualQG) -> Result<BidualityReport> {
    let n = q.dim();
    let dual_haar = ModularData::compute(&d.qg)?;
    let bidual = build_dual(&d.qg, &dual_haar.phi)?;
    let to_coords = bidual.pairing.transpose().inverse().ok_or(DualError::Degenerate)?;
    // ev_a(ω_j) = ⟨ω_j, a⟩.
    let ev_cols: Vec<Vector> = (0..n).map(|x| to_coords.apply(&d.pairing.col(x))).collect();
    let evaluation = Matrix::from_cols(n, &ev_cols);
    let canonical = evaluation.mul(q.antipode());
    let canonical_iso = check_qg_map(q, &bidual.qg, &canonical, false);
    let evaluation_anti_iso = check_qg_map(q, &bidual.qg, &evaluation, true);
    Ok(BidualityReport { dual_haar, canonical, canonical_iso, evaluation, evaluation_anti_iso })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualModularReport {
    /// The solved modular element of `Â`, as values on the basis of `A`.
    pub delta_hat_values: Vector,
    /// `ε∘κ` on the basis of `A`.
    pub eps_kappa: Vector,
    pub matches: bool,
    /// First `(i, x)` with `⟨ω_i δ̂, e_x⟩ != ⟨ω_i, κ(e_x)⟩`.
    pub action_failure: Option<(usize, usize)>,
}

impl DualModularReport {
    pub fn passes(&self) -> bool {
        self.matches && self.action_failure.is_none()
    }
}

/// Compares the modular element of `Â` with `ε∘κ`, both as a functional and
/// through `⟨ωδ̂, x⟩ = ⟨ω, κ(x)⟩`.
pub fn dual_modular_check(q: &QGData, md: &ModularData, d: &DualQG, dual_md: &ModularData) -> DualModularReport {
    let n = q.dim();
    let delta_hat_values = d.values(&dual_md.delta);
    let eps_kappa = md.kappa.apply_left(q.counit().values());
    let matches = delta_hat_values == eps_kappa;
    let mut action_failure = None;
    'outer: for i in 0..n {
        let prod = d.qg.mul(&unit_vec(n, i), &dual_md.delta);
        for x in 0..n {
            let ex = unit_vec(n, x);
            if d.pair(&prod, &ex) != d.pair(&unit_vec(n, i), &md.kappa.apply(&ex)) {
                action_failure = Some((i, x));
                break 'outer;
            }
        }
    }
    DualModularReport { delta_hat_values, eps_kappa, matches, action_failure }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImbeddingReport {
    /// `j: Â₀ → Â` in dual coordinates (columns = images of `φ₀(·u_p)`).
    pub j: Matrix,
    /// `φ|A₀` is a multiple of the independently solved Haar functional of `A₀`.
    pub restriction_is_haar: bool,
    pub failures: Vec<String>,
}

impl ImbeddingReport {
    pub fn passes(&self) -> bool {
        self.restriction_is_haar && self.failures.is_empty()
    }
}

/// The map `j: φ₀(·a) ↦ φ(·a)` for a sub-quantum group `A₀` with `φ₀ = φ|A₀`.
pub fn dual_imbedding(md: &ModularData, d: &DualQG, sub: &SubReport) -> Result<ImbeddingReport> {
    let q0 = sub.induced.as_ref().ok_or(DualError::Restriction("has no unit of its own"))?;
    let u = &sub.basis;
    let m = u.cols();
    let phi0 = Functional(u.apply_left(md.phi.values()));
    if phi0.is_zero() {
        return Err(DualError::Restriction("vanishes"));
    }
    let solved = crate::haar::solve_left_haar(q0)?.phi;
    let restriction_is_haar = crate::haar::normalize(phi0.clone(), &q0.one()) == solved;
    let d0 = build_dual(q0, &phi0)?;
    // φ₀(·u_p) = φ(·u_p) = Σ_i (u_p)_i φ(·e_i): j is the inclusion matrix itself.
    let j = u.clone();
    let mut failures = Vec::new();
    if j.rank() < m {
        failures.push("j is not injective".into());
    }
    let img = j.columns();
    let (one0, one) = (d0.qg.one(), d.qg.one());
    for p in 0..m {
        for r in 0..m {
            let lhs = j.apply(&d0.qg.mul(&unit_vec(m, p), &unit_vec(m, r)));
            if lhs != d.qg.mul(&img[p], &img[r]) {
                failures.push(format!("j not multiplicative at (ω{p}, ω{r})"));
            }
            let dp0 = d0.qg.delta_basis(p);
            let dp = d.qg.delta(&img[p]);
            let l1 = apply_tensor(&j, &j, &d0.qg.mul2(&dp0, &outer(&one0, &unit_vec(m, r))));
            if l1 != d.qg.mul2(&dp, &outer(&one, &img[r])) {
                failures.push(format!("(j⊗j)(Δ̂₀(ω₁)(1⊗ω₂)) != Δ̂(jω₁)(1⊗jω₂) at (ω{p}, ω{r})"));
            }
            let l2 = apply_tensor(&j, &j, &d0.qg.mul2(&dp0, &outer(&unit_vec(m, r), &one0)));
            if l2 != d.qg.mul2(&dp, &outer(&img[r], &one)) {
                failures.push(format!("(j⊗j)(Δ̂₀(ω₁)(ω₂⊗1)) != Δ̂(jω₁)(jω₂⊗1) at (ω{p}, ω{r})"));
            }
        }
        if let (Some(x), Some(y)) = (d0.qg.algebra().star_vec(&unit_vec(m, p)), d.qg.algebra().star_vec(&img[p])) {
            if j.apply(&x) != y {
                failures.push(format!("j does not preserve the star at ω{p}"));
            }
        }
    }
    Ok(ImbeddingReport { j, restriction_is_haar, failures })
}

/// Searches for a basis permutation `π` such that `e_i ↦ e_{π(i)}` is a
/// quantum-group isomorphism `A → B`. Exhaustive with pruning on products.
pub fn find_permutation_isomorphism(a: &QGData, b: &QGData) -> Option<Vec<usize>> {
    let n = a.dim();
    if b.dim() != n {
        return None;
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(a, b, &mut perm, &mut used)
}

fn search(a: &QGData, b: &QGData, perm: &mut Vec<usize>, used: &mut [bool]) -> Option<Vec<usize>> {
    let n = a.dim();
    if perm.len() == n {
        let mut f = Matrix::zeros(n, n);
        for (i, &p) in perm.iter().enumerate() {
            f.set(p, i, Scalar::one());
        }
        return check_qg_map(a, b, &f, false).ok().map(|_| perm.clone());
    }
    let k = perm.len();
    for cand in 0..n {
        if used[cand] || a.counit().values()[k] != b.counit().values()[cand] {
            continue;
        }
        perm.push(cand);
        used[cand] = true;
        if consistent(a, b, perm) {
            if let Some(found) = search(a, b, perm, used) {
                return Some(found);
            }
        }
        perm.pop();
        used[cand] = false;
    }
    None
}

/// Products among already-assigned basis elements must match, as far as their
/// supports are assigned.
fn consistent(a: &QGData, b: &QGData, perm: &[usize]) -> bool {
    let k = perm.len() - 1;
    let aa = a.algebra();
    let bb = b.algebra();
    for i in 0..=k {
        for (x, y) in [(i, k), (k, i)] {
            let lhs = aa.basis_product(x, y);
            let rhs = bb.basis_product(perm[x], perm[y]);
            if lhs.len() != rhs.len() {
                return false;
            }
            for (t, c) in lhs {
                if let Some(&pt) = perm.get(*t) {
                    if !rhs.iter().any(|(r, v)| *r == pt && v == c) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::structure;
    use crate::mhopf::attach_coproduct;

    fn qg(name: &str) -> QGData {
        let s = structure(name).unwrap();
        attach_coproduct(s.algebra, s.coproduct).unwrap().derive_counit_antipode().unwrap()
    }

    fn dual_of(name: &str) -> (QGData, ModularData, DualQG) {
        let q = qg(name);
        let md = ModularData::compute(&q).unwrap();
        let d = build_dual(&q, &md.phi).unwrap();
        (q, md, d)
    }

    #[test]
    fn dual_of_group_algebra_is_function_algebra() {
        let (q, _, d) = dual_of("group_s3");
        assert!(d.qg.algebra().is_commutative());
        assert!(!d.qg.is_cocommutative());
        let perm = find_permutation_isomorphism(&d.qg, &qg("c_s3")).expect("isomorphic");
        assert_eq!(perm.len(), 6);
        assert!(find_permutation_isomorphism(&d.qg, &q).is_none());
    }

    #[test]
    fn dual_of_cyclic_two_is_group_algebra() {
        let (q, md, d) = dual_of("c_z2");
        assert!(d.qg.is_cocommutative());
        // Grouplike elements of Â: the characters ε and the sign.
        let one = d.qg.one();
        assert_eq!(d.values(&one), q.counit().values());
        let report = dual_haar_and_biduality(&q, &d).unwrap();
        assert!(report.passes(), "{report:?}");
        // Identity up to the factor carried by the two Haar normalizations.
        assert_eq!(report.canonical, Matrix::identity(2).scale(&Scalar::from_int(2)));
        let dm = dual_modular_check(&q, &md, &d, &report.dual_haar);
        assert!(dm.passes());
    }

    #[test]
    fn biduality_on_all_hopf_fixtures() {
        for name in ["c_z4", "c_s3", "group_s3", "sweedler_h4"] {
            let (q, md, d) = dual_of(name);
            let report = dual_haar_and_biduality(&q, &d).unwrap();
            assert!(report.passes(), "{name}: {report:?}");
            let dm = dual_modular_check(&q, &md, &d, &report.dual_haar);
            assert!(dm.passes(), "{name}: {dm:?}");
        }
    }

    #[test]
    fn subgroup_imbedding() {
        let (q, md, d) = dual_of("c_z4");
        let s = structure("c_z4").unwrap();
        let sub = q.check_sub_mha(&s.subalgebras[0].1).unwrap();
        let r = dual_imbedding(&md, &d, &sub).unwrap();
        assert!(r.passes(), "{r:?}");

        let whole: Vec<Vector> = (0..4).map(|i| unit_vec(4, i)).collect();
        let sub = q.check_sub_mha(&whole).unwrap();
        let r = dual_imbedding(&md, &d, &sub).unwrap();
        assert!(r.passes());
        assert_eq!(r.j, Matrix::identity(4));

        let (g, gmd, gd) = dual_of("group_s3");
        let sub = g.check_sub_mha(&structure("group_s3").unwrap().subalgebras[0].1).unwrap();
        let r = dual_imbedding(&gmd, &gd, &sub).unwrap();
        assert!(r.passes(), "{r:?}");
        // The trivial dual maps onto φ(·1) = φ.
        assert_eq!(gd.values(&r.j.col(0)), gmd.phi.values());
    }
}
