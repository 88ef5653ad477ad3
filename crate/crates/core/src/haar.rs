//! Haar functionals and the modular data φ, ψ, σ, σ′, δ, δ^{1/2}, μ, κ, ρ.

use thiserror::Error;

use crate::finalg::linalg::{span_rank, unit_vec, zero_vec};
use crate::finalg::{
    apply_tensor, eigensplit_matrix, gram_psd, outer, slice_left, slice_right, solve_affine, EigenError, Eigenspace,
    FinAlgebra, Functional, GramCertificate, GramError, LinearSystem, Matrix, Vector,
};
use crate::mhopf::{HasCoproduct, QGData};
use crate::scalars::{Scalar, SpecPoints};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum HaarError {
    #[error("no nonzero left invariant functional")]
    NoHaar,
    #[error("left invariant functionals form a space of dimension {0}, expected 1")]
    NotUnique(usize),
    #[error("{which} invariance fails at (e{a}, e{b})")]
    Invariance { which: &'static str, a: usize, b: usize },
    #[error("{0} is not faithful: the form ω(ab) is singular")]
    NotFaithful(&'static str),
    #[error("{which} is not a unital automorphism (fails at e{i}, e{j})")]
    NotAutomorphism { which: &'static str, i: usize, j: usize },
    #[error("modular element equations have no solution")]
    DeltaInconsistent,
    #[error("modular element equation `{which}` fails at (e{a}, e{b})")]
    DeltaEquation { which: &'static str, a: usize, b: usize },
    #[error("modular element is not self-adjoint")]
    DeltaNotSelfAdjoint,
    #[error("no scaling constant: φ∘S² is not proportional to φ (fails at e{0})")]
    MuInconsistent(usize),
    #[error("{0} and {1} do not commute")]
    NotCommuting(&'static str, &'static str),
    #[error("{map}: {source}")]
    Eigen { map: &'static str, source: EigenError },
    #[error("simultaneous refinement lost dimensions ({0} of {1})")]
    Refinement(usize, usize),
    #[error(transparent)]
    Gram(#[from] GramError),
    #[error("identity ψ(a*b) = φ(a*bδ) fails at (e{0}, e{1})")]
    PsiIdentity(usize, usize),
}

pub type Result<T> = std::result::Result<T, HaarError>;

/// The left Haar functional together with the dimension of the invariant space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HaarSolution {
    pub phi: Functional,
    pub dimension: usize,
}

/// Solves `(ι⊗φ)(Δ(a)(b⊗1)) = φ(a)b` over all basis pairs; the space must be a line.
pub fn solve_left_haar(q: &QGData) -> Result<HaarSolution> {
    let n = q.dim();
    let mut sys = LinearSystem::new(n);
    for a in 0..n {
        let da = q.delta_basis(a);
        for b in 0..n {
            let x = q.mul2(&da, &outer(&unit_vec(n, b), &q.one()));
            // Coordinate k: Σ_r x[k·n + r] φ_r − φ_a [b = k] = 0.
            for k in 0..n {
                let mut row: Vector = x[k * n..(k + 1) * n].to_vec();
                if b == k {
                    row[a] = &row[a] - &Scalar::one();
                }
                sys.push(row, Scalar::zero());
            }
        }
    }
    let sol = solve_affine(&sys);
    let dimension = sol.kernel.len();
    match dimension {
        0 => Err(HaarError::NoHaar),
        1 => Ok(HaarSolution { phi: normalize(Functional(sol.kernel[0].clone()), &q.one()), dimension }),
        d => Err(HaarError::NotUnique(d)),
    }
}

/// `φ(1) = 1` when possible, else the first nonzero basis value is 1.
pub fn normalize(phi: Functional, one: &[Scalar]) -> Functional {
    let at_one = phi.eval(one);
    let c = if !at_one.is_zero() {
        at_one
    } else {
        phi.values().iter().find(|v| !v.is_zero()).cloned().unwrap_or_else(Scalar::one)
    };
    phi.scale(&c.inv().expect("nonzero"))
}

/// Checks `(ι⊗φ)(Δ(a)(b⊗1)) = φ(a)b` on all basis pairs.
pub fn check_left_invariance(q: &QGData, phi: &Functional) -> Result<()> {
    let n = q.dim();
    for a in 0..n {
        let da = q.delta_basis(a);
        for b in 0..n {
            let eb = unit_vec(n, b);
            let x = q.mul2(&da, &outer(&eb, &q.one()));
            let expected: Vector = eb.iter().map(|v| v * &phi.values()[a]).collect();
            if slice_right(phi.values(), &x, n) != expected {
                return Err(HaarError::Invariance { which: "left", a, b });
            }
        }
    }
    Ok(())
}

/// `ψ = φ∘S`, checked right invariant: `(ψ⊗ι)(Δ(a)(1⊗b)) = ψ(a)b`.
pub fn right_haar(q: &QGData, phi: &Functional) -> Result<Functional> {
    let psi = phi.compose(q.antipode());
    let n = q.dim();
    for a in 0..n {
        let da = q.delta_basis(a);
        for b in 0..n {
            let eb = unit_vec(n, b);
            let x = q.mul2(&da, &outer(&q.one(), &eb));
            let expected: Vector = eb.iter().map(|v| v * &psi.values()[a]).collect();
            if slice_left(psi.values(), &x, n) != expected {
                return Err(HaarError::Invariance { which: "right", a, b });
            }
        }
    }
    Ok(psi)
}

/// The unique σ with `ω(ab) = ω(bσ(a))`: with `B[a][b] = ω(e_a e_b)`, `σ = B⁻¹Bᵀ`.
pub fn modular_automorphism(a: &FinAlgebra, omega: &Functional, which: &'static str) -> Result<Matrix> {
    let n = a.dim();
    let b =
        Matrix::from_rows((0..n).map(|i| (0..n).map(|j| omega.eval(&a.basis_product_vec(i, j))).collect()).collect());
    let binv = b.inverse().ok_or(HaarError::NotFaithful(which))?;
    let sigma = binv.mul(&b.transpose());
    check_automorphism(a, &sigma, which)?;
    Ok(sigma)
}

fn check_automorphism(a: &FinAlgebra, m: &Matrix, which: &'static str) -> Result<()> {
    let n = a.dim();
    if let Some(u) = a.unit() {
        if &m.apply(u) != u {
            return Err(HaarError::NotAutomorphism { which, i: 0, j: 0 });
        }
    }
    if m.rank() < n {
        return Err(HaarError::NotAutomorphism { which, i: 0, j: 0 });
    }
    let cols = m.columns();
    for i in 0..n {
        for j in 0..n {
            if m.apply(&a.basis_product_vec(i, j)) != a.mul(&cols[i], &cols[j]) {
                return Err(HaarError::NotAutomorphism { which, i, j });
            }
        }
    }
    Ok(())
}

/// Solves `(φ⊗ι)(Δ(a)(1⊗b)) = φ(a)δb` for δ at one `a` with `φ(a) ≠ 0`, then
/// verifies both defining equations on every basis pair.
pub fn modular_element(q: &QGData, phi: &Functional) -> Result<Vector> {
    let n = q.dim();
    let a = q.algebra();
    let one = q.one();
    let i0 = phi.values().iter().position(|v| !v.is_zero()).ok_or(HaarError::NoHaar)?;
    let phi_a = &phi.values()[i0];
    let d0 = q.delta_basis(i0);
    let mut sys = LinearSystem::new(n);
    for b in 0..n {
        let eb = unit_vec(n, b);
        let lhs = slice_left(phi.values(), &q.mul2(&d0, &outer(&one, &eb)), n);
        // (δ b)_k = Σ_r δ_r (e_r b)_k
        let rb = a.right_mult(&eb);
        for (k, l) in lhs.iter().enumerate() {
            sys.push(rb.row(k).iter().map(|x| x * phi_a).collect(), l.clone());
        }
    }
    let sol = solve_affine(&sys);
    let delta = sol.particular.ok_or(HaarError::DeltaInconsistent)?;
    for x in 0..n {
        let dx = q.delta_basis(x);
        let px = &phi.values()[x];
        for b in 0..n {
            let eb = unit_vec(n, b);
            let l1 = slice_left(phi.values(), &q.mul2(&dx, &outer(&one, &eb)), n);
            let r1: Vector = a.mul(&delta, &eb).iter().map(|v| v * px).collect();
            if l1 != r1 {
                return Err(HaarError::DeltaEquation { which: "(φ⊗ι)(Δ(a)(1⊗b)) = φ(a)δb", a: x, b });
            }
            let l2 = slice_left(phi.values(), &q.mul2(&outer(&one, &eb), &dx), n);
            let r2: Vector = a.mul(&eb, &delta).iter().map(|v| v * px).collect();
            if l2 != r2 {
                return Err(HaarError::DeltaEquation { which: "(φ⊗ι)((1⊗b)Δ(a)) = φ(a)bδ", a: x, b });
            }
        }
    }
    if let Some(ds) = a.star_vec(&delta) {
        if ds != delta {
            return Err(HaarError::DeltaNotSelfAdjoint);
        }
    }
    Ok(delta)
}

/// The square root of δ with positive square roots taken eigenvalue-wise, built
/// as `Σ_k √λ_k P_k(δ)` from the Lagrange idempotents of the eigenvalues of `L_δ`.
pub fn delta_half(q: &QGData, delta: &[Scalar], sigma: &Matrix) -> std::result::Result<Vector, String> {
    let a = q.algebra();
    let one = q.one();
    let ld = a.left_mult(delta);
    let spaces = eigensplit_matrix(&ld).map_err(|e| format!("left multiplication by δ: {e}"))?;
    let values: Vec<Scalar> = spaces.iter().map(|e| e.value.clone()).collect();
    let mut half = zero_vec(q.dim());
    for (k, lk) in values.iter().enumerate() {
        let root = lk.positive_sqrt().ok_or_else(|| format!("eigenvalue {lk} of δ has no positive square root"))?;
        let mut p = one.clone();
        for (j, lj) in values.iter().enumerate() {
            if j == k {
                continue;
            }
            let shifted: Vector = delta.iter().zip(&one).map(|(d, u)| d - &(u * lj)).collect();
            let c = (lk - lj).inv().expect("distinct eigenvalues");
            p = a.mul(&p, &shifted).iter().map(|x| x * &c).collect();
        }
        for (h, x) in half.iter_mut().zip(&p) {
            *h = &*h + &(x * &root);
        }
    }
    if a.mul(&half, &half) != delta {
        return Err("δ^{1/2} squared differs from δ".into());
    }
    if sigma.apply(&half) != half {
        return Err("σ(δ^{1/2}) != δ^{1/2}".into());
    }
    Ok(half)
}

/// `μ` with `φ∘S² = μφ`.
pub fn scaling_constant(q: &QGData, phi: &Functional) -> Result<Scalar> {
    let s2phi = phi.compose(&q.antipode_squared());
    let i0 = phi.values().iter().position(|v| !v.is_zero()).ok_or(HaarError::NoHaar)?;
    let mu = &s2phi.values()[i0] / &phi.values()[i0];
    for i in 0..q.dim() {
        if s2phi.values()[i] != &mu * &phi.values()[i] {
            return Err(HaarError::MuInconsistent(i));
        }
    }
    Ok(mu)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularData {
    pub phi: Functional,
    pub haar_dimension: usize,
    pub psi: Functional,
    pub sigma: Matrix,
    pub sigma_prime: Matrix,
    pub delta: Vector,
    /// The positive square root of δ, or the reason it does not exist.
    pub delta_half: std::result::Result<Vector, String>,
    pub mu: Scalar,
    pub s2: Matrix,
    pub kappa: Matrix,
    pub rho: Matrix,
}

impl ModularData {
    pub fn compute(q: &QGData) -> Result<Self> {
        let HaarSolution { phi, dimension } = solve_left_haar(q)?;
        check_left_invariance(q, &phi)?;
        let psi = right_haar(q, &phi)?;
        let sigma = modular_automorphism(q.algebra(), &phi, "φ")?;
        let sigma_prime = modular_automorphism(q.algebra(), &psi, "ψ")?;
        let delta = modular_element(q, &phi)?;
        let delta_half = delta_half(q, &delta, &sigma);
        let mu = scaling_constant(q, &phi)?;
        let s2 = q.antipode_squared();
        let kappa = sigma.inverse().expect("automorphism").mul(&s2);
        let rho = sigma_prime.mul(&s2);
        Ok(ModularData {
            phi,
            haar_dimension: dimension,
            psi,
            sigma,
            sigma_prime,
            delta,
            delta_half,
            mu,
            s2,
            kappa,
            rho,
        })
    }

    /// The five maps of the simultaneous diagonalization, in table order.
    pub fn five_maps(&self, q: &QGData) -> [(&'static str, Matrix); 5] {
        let a = q.algebra();
        [
            ("σ", self.sigma.clone()),
            ("σ′", self.sigma_prime.clone()),
            ("S²", self.s2.clone()),
            ("L_δ", a.left_mult(&self.delta)),
            ("R_δ", a.right_mult(&self.delta)),
        ]
    }
}

/// `Δ∘σ = (S²⊗σ)∘Δ`; returns the first failing basis index.
pub fn check_sigma_coproduct(q: &QGData, md: &ModularData) -> std::result::Result<(), usize> {
    for i in 0..q.dim() {
        let lhs = q.delta(&md.sigma.apply(&unit_vec(q.dim(), i)));
        if lhs != apply_tensor(&md.s2, &md.sigma, &q.delta_basis(i)) {
            return Err(i);
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    /// A basis of the span of `κⁿ(a)`, `n ∈ ℤ`.
    pub span: Vec<Vector>,
    /// Iterations (in each direction) until the span stopped growing.
    pub steps: usize,
    /// `(n, b)` pairs with `b*(σ′ⁿS²ⁿ)(b) = 0`; empty when the check holds.
    pub vanishing: Vec<(i64, usize)>,
}

/// κ-orbit span of `a`, plus the check `b*(σ′ⁿS²ⁿ)(b) ≠ 0` for basis `b`, even `|n| ≤ window`.
pub fn orbit_analysis(q: &QGData, md: &ModularData, a: &[Scalar], window: i64) -> OrbitReport {
    let kinv = md.kappa.inverse().expect("κ invertible");
    let mut span = vec![a.to_vec()];
    let mut fwd = a.to_vec();
    let mut bwd = a.to_vec();
    let mut steps = 0;
    let mut rank = span_rank(&span);
    for _ in 0..q.dim() {
        fwd = md.kappa.apply(&fwd);
        bwd = kinv.apply(&bwd);
        span.push(fwd.clone());
        span.push(bwd.clone());
        let r = span_rank(&span);
        if r == rank {
            break;
        }
        rank = r;
        steps += 1;
    }
    let span = independent(span);
    let mut vanishing = Vec::new();
    let alg = q.algebra();
    if alg.has_star() {
        let sp_inv = md.sigma_prime.inverse().expect("automorphism");
        let s2_inv = md.s2.inverse().expect("S² invertible");
        for n in (-window..=window).filter(|n| n % 2 == 0) {
            let k = n.unsigned_abs() as u32;
            let m = if n >= 0 { md.sigma_prime.pow(k).mul(&md.s2.pow(k)) } else { sp_inv.pow(k).mul(&s2_inv.pow(k)) };
            for b in 0..q.dim() {
                let eb = unit_vec(q.dim(), b);
                let bs = alg.star_vec(&eb).unwrap();
                if alg.mul(&bs, &m.apply(&eb)).iter().all(Scalar::is_zero) {
                    vanishing.push((n, b));
                }
            }
        }
    }
    OrbitReport { span, steps, vanishing }
}

fn independent(vs: Vec<Vector>) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for v in vs {
        out.push(v);
        if span_rank(&out) < out.len() {
            out.pop();
        }
    }
    out
}

/// One block of the simultaneous eigendecomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenBlock {
    /// Eigenvalues of σ, σ′, S², L_δ, R_δ.
    pub values: [Scalar; 5],
    pub basis: Vec<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigentable {
    pub blocks: Vec<EigenBlock>,
    /// `(map, eigenvalue)` pairs that are not positive at every SpecPoint.
    pub non_positive: Vec<(&'static str, Scalar)>,
}

impl Eigentable {
    pub fn all_positive(&self) -> bool {
        self.non_positive.is_empty()
    }
}

/// Basis of `span(V) ∩ span(W)`.
fn intersect(v: &[Vector], w: &[Vector]) -> Vec<Vector> {
    let n = v[0].len();
    let mut cols: Vec<Vector> = v.to_vec();
    cols.extend(w.iter().map(|x| x.iter().map(|c| -c).collect::<Vector>()));
    let m = Matrix::from_cols(n, &cols);
    m.kernel()
        .into_iter()
        .map(|k| {
            let mut out = zero_vec(n);
            for (c, vi) in k.iter().zip(v) {
                if !c.is_zero() {
                    for (o, x) in out.iter_mut().zip(vi) {
                        *o = &*o + &(c * x);
                    }
                }
            }
            out
        })
        .collect()
}

/// Common eigenbasis of σ, σ′, S², L_δ, R_δ; records eigenvalues that fail to
/// be positive at the given points.
pub fn simultaneous_eigenbasis(q: &QGData, md: &ModularData, points: &SpecPoints) -> Result<Eigentable> {
    let n = q.dim();
    let maps = md.five_maps(q);
    for (i, (ni, mi)) in maps.iter().enumerate() {
        for (nj, mj) in &maps[i + 1..] {
            if mi.mul(mj) != mj.mul(mi) {
                return Err(HaarError::NotCommuting(ni, nj));
            }
        }
    }
    let mut blocks: Vec<(Vec<Scalar>, Vec<Vector>)> = vec![(Vec::new(), (0..n).map(|i| unit_vec(n, i)).collect())];
    for (name, m) in &maps {
        let spaces: Vec<Eigenspace> = eigensplit_matrix(m).map_err(|source| HaarError::Eigen { map: name, source })?;
        let mut next = Vec::new();
        for (vals, basis) in &blocks {
            for e in &spaces {
                let common = intersect(basis, &e.basis);
                if !common.is_empty() {
                    let mut v = vals.clone();
                    v.push(e.value.clone());
                    next.push((v, common));
                }
            }
        }
        blocks = next;
    }
    let total: usize = blocks.iter().map(|(_, b)| b.len()).sum();
    if total != n {
        return Err(HaarError::Refinement(total, n));
    }
    let mut non_positive = Vec::new();
    for (vals, _) in &blocks {
        for (v, (name, _)) in vals.iter().zip(&maps) {
            let ok = v.is_self_adjoint() && v.is_positive_at(points);
            if !ok && !non_positive.iter().any(|(m, x)| m == name && x == v) {
                non_positive.push((*name, v.clone()));
            }
        }
    }
    let blocks = blocks
        .into_iter()
        .map(|(vals, basis)| EigenBlock { values: vals.try_into().expect("five maps"), basis })
        .collect();
    Ok(Eigentable { blocks, non_positive })
}

/// Eigenvalues of each of the five maps separately: the fallback when the maps
/// do not commute (no positive Haar functional). Each entry is the map name,
/// its eigenspaces (or the splitting failure), and the eigenvalues that are not
/// positive at the given points.
pub type MapSpectrum = (&'static str, std::result::Result<Vec<Eigenspace>, EigenError>, Vec<Scalar>);

pub fn per_map_spectra(q: &QGData, md: &ModularData, points: &SpecPoints) -> Vec<MapSpectrum> {
    md.five_maps(q)
        .into_iter()
        .map(|(name, m)| {
            let spaces = eigensplit_matrix(&m);
            let bad = spaces
                .as_ref()
                .map(|sp| {
                    sp.iter()
                        .map(|e| e.value.clone())
                        .filter(|v| !(v.is_self_adjoint() && v.is_positive_at(points)))
                        .collect()
                })
                .unwrap_or_default();
            (name, spaces, bad)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiCertificate {
    pub gram: GramCertificate,
}

/// Checks `ψ(e_i*e_j) = φ(e_i*e_jδ)` on all pairs and certifies the ψ-Gram form.
pub fn psi_positivity(q: &QGData, md: &ModularData, points: &SpecPoints) -> Result<PsiCertificate> {
    let a = q.algebra();
    let n = q.dim();
    for i in 0..n {
        let si = a.star_vec(&unit_vec(n, i)).ok_or(GramError::NoStar)?;
        for j in 0..n {
            let x = a.mul(&si, &unit_vec(n, j));
            if md.psi.eval(&x) != md.phi.eval(&a.mul(&x, &md.delta)) {
                return Err(HaarError::PsiIdentity(i, j));
            }
        }
    }
    Ok(PsiCertificate { gram: gram_psd(a, &md.psi, points)? })
}

/// The φ-Gram certificate (convenience wrapper).
pub fn phi_gram(q: &QGData, md: &ModularData, points: &SpecPoints) -> Result<GramCertificate> {
    Ok(gram_psd(q.algebra(), &md.phi, points)?)
}
