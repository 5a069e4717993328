//! Pointwise G2 linear algebra on R⁷ with orthonormal coframe e¹…e⁷ and
//! volume form e^{1…7}.
//!
//! φ₀ = e⁵⁶⁷ + ω₁∧e⁵ + ω₂∧e⁶ + ω₃∧e⁷,
//! ψ₀ = e¹²³⁴ − ω₁∧e⁶⁷ − ω₂∧e⁷⁵ − ω₃∧e⁵⁶,
//! with ω₁ = e¹² − e³⁴, ω₂ = e¹³ − e⁴², ω₃ = e¹⁴ − e²³.

mod linalg;
mod multivector;
mod selftest;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::polyring::Rational;

pub use linalg::{poly_from_roots, poly_mul, root_multiplicity, Matrix};
pub use multivector::{MultiVector, DIM};
pub use selftest::{run_selftest, SelfTestItem, SelfTestReport, DEFAULT_SAMPLES, DEFAULT_SEED};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum G2Error {
    #[error("operation requires a homogeneous form")]
    NotHomogeneous,
    #[error("expected a form of degree {expected}, found {found:?}")]
    WrongDegree { expected: usize, found: Option<usize> },
    #[error("3-form is degenerate: its bilinear form is not definite")]
    Degenerate,
    #[error("induced metric is not rational: det B = {0} has no rational ninth root")]
    IrrationalMetric(String),
    #[error("assembled pair is outside the orthonormal model frame: induced metric ≠ identity")]
    NotOrthonormal,
    #[error("ψ ≠ ∗φ in the induced orientation")]
    PsiMismatch,
}

fn e(idx: &[usize]) -> MultiVector {
    MultiVector::basis(idx)
}

pub fn omega1() -> MultiVector {
    e(&[1, 2]) - e(&[3, 4])
}

pub fn omega2() -> MultiVector {
    e(&[1, 3]) - e(&[4, 2])
}

pub fn omega3() -> MultiVector {
    e(&[1, 4]) - e(&[2, 3])
}

pub fn phi0() -> MultiVector {
    phi0_ref().clone()
}

pub fn psi0() -> MultiVector {
    psi0_ref().clone()
}

fn phi0_ref() -> &'static MultiVector {
    static PHI0: OnceLock<MultiVector> = OnceLock::new();
    PHI0.get_or_init(|| {
        e(&[5, 6, 7]) + omega1().wedge(&e(&[5])) + omega2().wedge(&e(&[6])) + omega3().wedge(&e(&[7]))
    })
}

fn psi0_ref() -> &'static MultiVector {
    static PSI0: OnceLock<MultiVector> = OnceLock::new();
    PSI0.get_or_init(|| {
        e(&[1, 2, 3, 4])
            - omega1().wedge(&e(&[6, 7]))
            - omega2().wedge(&e(&[7, 5]))
            - omega3().wedge(&e(&[5, 6]))
    })
}

fn unit(i: usize) -> [Rational; DIM] {
    std::array::from_fn(|k| if k == i { Rational::one() } else { Rational::zero() })
}

fn require_degree(a: &MultiVector, k: usize) -> Result<(), G2Error> {
    if a.is_zero() || a.degree() == Some(k) {
        Ok(())
    } else {
        Err(G2Error::WrongDegree {
            expected: k,
            found: a.degree(),
        })
    }
}

/// Coefficient of e^{1…7} in (1/6)(u⌟φ)∧(v⌟φ)∧φ.
pub fn bilinear_from_phi(phi: &MultiVector, u: &[Rational; DIM], v: &[Rational; DIM]) -> Rational {
    let top = phi.contract(u).wedge(&phi.contract(v)).wedge(phi).top_coefficient();
    top / Rational::from_integer(6.into())
}

/// The contraction formula evaluated on φ₀.
pub fn metric_from_phi(u: &[Rational; DIM], v: &[Rational; DIM]) -> Rational {
    bilinear_from_phi(phi0_ref(), u, v)
}

/// The 7×7 matrix B(eᵢ, eⱼ) of the contraction formula.
pub fn gram_matrix(phi: &MultiVector) -> Matrix {
    let mut b = Matrix::zeros(DIM);
    for i in 0..DIM {
        for j in i..DIM {
            let x = bilinear_from_phi(phi, &unit(i), &unit(j));
            b.set(i, j, x.clone());
            b.set(j, i, x);
        }
    }
    b
}

fn exact_root(x: &BigInt, k: u32) -> Option<BigInt> {
    let r = x.nth_root(k);
    (&r.pow(k) == x).then_some(r)
}

/// Metric and orientation determined by a 3-form: g = B / det(B)^{1/9}, and
/// the orientation in which the contraction formula is positive (+1 for
/// e^{1…7}, −1 for its opposite).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMetric {
    pub gram: Matrix,
    pub metric: Matrix,
    pub orientation: i8,
}

pub fn induced_metric(phi: &MultiVector) -> Result<InducedMetric, G2Error> {
    require_degree(phi, 3)?;
    let gram = gram_matrix(phi);
    let det = gram.determinant();
    if det.is_zero() {
        return Err(G2Error::Degenerate);
    }
    let root = exact_root(det.numer(), 9)
        .zip(exact_root(det.denom(), 9))
        .map(|(n, d)| Rational::new(n, d))
        .ok_or_else(|| G2Error::IrrationalMetric(det.to_string()))?;
    let metric = gram.scale(&(Rational::one() / root));
    // positive definite ⇔ all leading principal minors positive
    let definite = (1..=DIM).all(|k| {
        let mut minor = Matrix::zeros(k);
        for i in 0..k {
            for j in 0..k {
                minor.set(i, j, metric.get(i, j).clone());
            }
        }
        minor.determinant().is_positive()
    });
    if !definite {
        return Err(G2Error::Degenerate);
    }
    let orientation = if gram.get(0, 0).is_positive() { 1 } else { -1 };
    Ok(InducedMetric {
        gram,
        metric,
        orientation,
    })
}

/// T(η) = ∗(η∧φ₀).
pub fn t_phi(eta: &MultiVector) -> Result<MultiVector, G2Error> {
    require_degree(eta, 2)?;
    eta.wedge(phi0_ref()).hodge_star()
}

/// Index pairs (i, j), i < j, in lexicographic order: the basis of Λ².
pub fn two_form_basis() -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(21);
    for i in 1..=DIM {
        for j in i + 1..=DIM {
            out.push((i, j));
        }
    }
    out
}

/// Matrix of T on Λ² in the basis of [`two_form_basis`] (column c is T(e^{pair c})).
pub fn t_phi_matrix() -> Matrix {
    let basis = two_form_basis();
    let mut m = Matrix::zeros(basis.len());
    for (c, &(i, j)) in basis.iter().enumerate() {
        let img = t_phi(&e(&[i, j])).expect("degree 2");
        for (r, &(k, l)) in basis.iter().enumerate() {
            m.set(r, c, img.coefficient(&[k, l]));
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoFormDecomposition {
    pub part7: MultiVector,
    pub part14: MultiVector,
}

/// η = η₇ + η₁₄ with η₇ = (η − Tη)/3 and η₁₄ = (Tη + 2η)/3.
pub fn decompose_two_form(eta: &MultiVector) -> Result<TwoFormDecomposition, G2Error> {
    let t = t_phi(eta)?;
    let third = Rational::new(1.into(), 3.into());
    let two = Rational::from_integer(2.into());
    Ok(TwoFormDecomposition {
        part7: (eta - &t).scale(&third),
        part14: (&t + &eta.scale(&two)).scale(&third),
    })
}

/// η∧ψ₀ = 0.
pub fn instanton_test(eta: &MultiVector) -> Result<bool, G2Error> {
    require_degree(eta, 2)?;
    Ok(eta.wedge(psi0_ref()).is_zero())
}

/// The three instanton characterizations evaluated separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstantonConditions {
    pub wedge_psi_vanishes: bool,
    pub part7_vanishes: bool,
    pub star_equals_wedge_phi: bool,
}

impl InstantonConditions {
    pub fn consistent(&self) -> bool {
        self.wedge_psi_vanishes == self.part7_vanishes && self.part7_vanishes == self.star_equals_wedge_phi
    }
}

pub fn instanton_conditions(eta: &MultiVector) -> Result<InstantonConditions, G2Error> {
    Ok(InstantonConditions {
        wedge_psi_vanishes: instanton_test(eta)?,
        part7_vanishes: decompose_two_form(eta)?.part7.is_zero(),
        star_equals_wedge_phi: eta.hodge_star()? == eta.wedge(phi0_ref()),
    })
}

/// Both sides of ⟨η, Tη⟩ = −2|η₇|² + |η₁₄|², plus the Pythagorean check
/// |η|² = |η₇|² + |η₁₄|².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergyIdentity {
    pub lhs: Rational,
    pub rhs: Rational,
    pub norm_squared: Rational,
    pub split_norm_squared: Rational,
}

impl EnergyIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.norm_squared == self.split_norm_squared
    }
}

pub fn energy_identity_check(eta: &MultiVector) -> Result<EnergyIdentity, G2Error> {
    let d = decompose_two_form(eta)?;
    let n7 = d.part7.norm_squared();
    let n14 = d.part14.norm_squared();
    Ok(EnergyIdentity {
        lhs: eta.inner(&t_phi(eta)?),
        rhs: &n14 - Rational::from_integer(2.into()) * &n7,
        norm_squared: eta.norm_squared(),
        split_norm_squared: n7 + n14,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Su3Assembly {
    pub phi: MultiVector,
    pub psi: MultiVector,
    pub metric: InducedMetric,
}

/// φ = θ∧ω + Im ε, ψ = ½ω∧ω + θ∧Re ε. Requires the induced metric to be the
/// identity in the coframe e¹…e⁷ and checks ψ = ∗φ in the induced
/// orientation.
pub fn assemble_su3(
    theta: &MultiVector,
    omega: &MultiVector,
    re_eps: &MultiVector,
    im_eps: &MultiVector,
) -> Result<Su3Assembly, G2Error> {
    require_degree(theta, 1)?;
    require_degree(omega, 2)?;
    require_degree(re_eps, 3)?;
    require_degree(im_eps, 3)?;
    let phi = &theta.wedge(omega) + im_eps;
    let half = Rational::new(1.into(), 2.into());
    let psi = &omega.wedge(omega).scale(&half) + &theta.wedge(re_eps);
    let metric = induced_metric(&phi)?;
    if metric.metric != Matrix::identity(DIM) {
        return Err(G2Error::NotOrthonormal);
    }
    let star = phi.hodge_star()?;
    let star = if metric.orientation > 0 { star } else { -star };
    if star != psi {
        return Err(G2Error::PsiMismatch);
    }
    Ok(Su3Assembly { phi, psi, metric })
}
