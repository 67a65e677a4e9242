//! Symmetrization of finite chain states and position-averaged structure
//! factors, plus the witness-violation-to-block-size bound.
//!
//! Symmetrizing an n-site state over its n cyclic translations produces a
//! state whose r-site marginal is translation invariant; the classical and
//! quantum branches share the same formula, differing only in how windows are
//! taken (marginalization vs. partial trace) and composed (product vs. tensor
//! product).

use serde::{Deserialize, Serialize};

use crate::linalg::DensityMatrix;
use crate::marginals::JointDistribution;
use crate::{Error, Result};

/// A finite chain state: classical probability table or quantum density
/// matrix with uniform site dimension.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum ChainState {
    Classical(JointDistribution),
    Quantum(DensityMatrix),
}

impl ChainState {
    pub fn sites(&self) -> usize {
        match self {
            ChainState::Classical(p) => p.window(),
            ChainState::Quantum(rho) => rho.sites(),
        }
    }

    /// Marginal on the consecutive window `[start, start+len)`.
    pub fn window(&self, start: usize, len: usize) -> Result<ChainState> {
        match self {
            ChainState::Classical(p) => Ok(ChainState::Classical(p.window_marginal(start, len)?)),
            ChainState::Quantum(rho) => {
                let keep: Vec<usize> = (start..start + len).collect();
                Ok(ChainState::Quantum(rho.partial_trace(&keep)?))
            }
        }
    }

    /// Marginal on the site pair (i, j), i < j.
    pub fn pair(&self, i: usize, j: usize) -> Result<ChainState> {
        match self {
            ChainState::Classical(p) => Ok(ChainState::Classical(p.pair_marginal(i, j)?)),
            ChainState::Quantum(rho) => Ok(ChainState::Quantum(rho.partial_trace(&[i, j])?)),
        }
    }

    /// Composition law: product of distributions / tensor product of states.
    pub fn compose(&self, other: &ChainState) -> Result<ChainState> {
        match (self, other) {
            (ChainState::Classical(a), ChainState::Classical(b)) => {
                Ok(ChainState::Classical(a.product(b)?))
            }
            (ChainState::Quantum(a), ChainState::Quantum(b)) => {
                Ok(ChainState::Quantum(a.kron(b)))
            }
            _ => Err(Error::DimensionMismatch(
                "cannot compose classical and quantum states".into(),
            )),
        }
    }

    fn add_scaled(acc: Option<ChainState>, term: &ChainState, w: f64) -> Result<ChainState> {
        match (acc, term) {
            (None, t) => t.scale(w),
            (Some(ChainState::Classical(a)), ChainState::Classical(b)) => {
                let probs: Vec<f64> = a
                    .probs()
                    .iter()
                    .zip(b.probs())
                    .map(|(x, y)| x + w * y)
                    .collect();
                Ok(ChainState::Classical(JointDistribution::raw(
                    a.alphabet(),
                    a.window(),
                    probs,
                )))
            }
            (Some(ChainState::Quantum(a)), ChainState::Quantum(b)) => Ok(ChainState::Quantum(
                DensityMatrix::raw(a.matrix().add(&b.matrix().scale_re(w)), a.site_dims().to_vec()),
            )),
            _ => Err(Error::DimensionMismatch("mixed state kinds in sum".into())),
        }
    }

    fn scale(&self, w: f64) -> Result<ChainState> {
        Ok(match self {
            ChainState::Classical(p) => ChainState::Classical(JointDistribution::raw(
                p.alphabet(),
                p.window(),
                p.probs().iter().map(|x| w * x).collect(),
            )),
            ChainState::Quantum(rho) => ChainState::Quantum(DensityMatrix::raw(
                rho.matrix().scale_re(w),
                rho.site_dims().to_vec(),
            )),
        })
    }

    /// Revalidate the underlying object (after accumulating weighted sums).
    fn validated(self) -> Result<ChainState> {
        match self {
            ChainState::Classical(p) => Ok(ChainState::Classical(JointDistribution::new(
                p.alphabet(),
                p.window(),
                p.probs().to_vec(),
            )?)),
            ChainState::Quantum(rho) => Ok(ChainState::Quantum(DensityMatrix::new_with_tol(
                rho.matrix().clone(),
                rho.site_dims().to_vec(),
                1e-8,
            )?)),
        }
    }

    /// Largest deviation between the two (r−1)-site marginals of an r-site
    /// state: zero for states arising from a TI chain.
    pub fn ti_consistency_defect(&self) -> Result<f64> {
        let r = self.sites();
        if r <= 1 {
            return Ok(0.0);
        }
        match self {
            ChainState::Classical(p) => Ok(p.consistency_defect()),
            ChainState::Quantum(rho) => {
                let left = rho.partial_trace(&(0..r - 1).collect::<Vec<_>>())?;
                let right = rho.partial_trace(&(1..r).collect::<Vec<_>>())?;
                Ok(left.matrix().sub(right.matrix()).frobenius_norm())
            }
        }
    }

    /// ℓ1 / trace-norm-style distance on raw entries (classical: sum of
    /// absolute differences; quantum: sum of absolute eigenvalues of the
    /// difference).
    pub fn l1_distance(&self, other: &ChainState) -> Result<f64> {
        match (self, other) {
            (ChainState::Classical(a), ChainState::Classical(b)) => {
                if a.alphabet() != b.alphabet() || a.window() != b.window() {
                    return Err(Error::DimensionMismatch("distribution shapes differ".into()));
                }
                Ok(a.probs()
                    .iter()
                    .zip(b.probs())
                    .map(|(x, y)| (x - y).abs())
                    .sum())
            }
            (ChainState::Quantum(a), ChainState::Quantum(b)) => {
                let diff = a.matrix().sub(b.matrix());
                let (eigs, _) = crate::linalg::herm_eig_with_tol(&diff, 1e-8)?;
                Ok(eigs.iter().map(|e| e.abs()).sum())
            }
            _ => Err(Error::DimensionMismatch("mixed state kinds".into())),
        }
    }
}

/// The r-site marginal of the symmetrization of an n-site state:
/// (1/n)(Σ_{k=1}^{n−r+1} ω_{k..r+k−1} + Σ_{k=1}^{r−1} ω_{n−r+k+1..n} ⊗ ω_{1..k}).
///
/// The output satisfies the TI consistency condition between its own
/// (r−1)-site marginals.
pub fn symmetrize_marginal(omega: &ChainState, r: usize) -> Result<ChainState> {
    let n = omega.sites();
    if r == 0 || r > n {
        return Err(Error::OutOfRange(format!("marginal size {r} not in 1..={n}")));
    }
    let w = 1.0 / n as f64;
    let mut acc: Option<ChainState> = None;

    // In-window translates.
    for start in 0..=(n - r) {
        let term = omega.window(start, r)?;
        acc = Some(ChainState::add_scaled(acc, &term, w)?);
    }
    // Wrap-around translates: right tail of length r−k composed with left
    // head of length k.
    for k in 1..r {
        let tail = omega.window(n - r + k, r - k)?;
        let head = omega.window(0, k)?;
        let term = tail.compose(&head)?;
        acc = Some(ChainState::add_scaled(acc, &term, w)?);
    }
    acc.expect("r >= 1 produces at least one term").validated()
}

/// Position-averaged distance-r pair state:
/// (1/(n−r+1)) Σ_{k=1}^{n−r+1} ω_{k,k+r−1}.
///
/// For r ≥ 2 the result is a 2-site state; r = 1 averages the single-site
/// marginals.
pub fn structure_factor(omega: &ChainState, r: usize) -> Result<ChainState> {
    let n = omega.sites();
    if r == 0 || r > n {
        return Err(Error::OutOfRange(format!("distance {r} not in 1..={n}")));
    }
    let terms = n - r + 1;
    let w = 1.0 / terms as f64;
    let mut acc: Option<ChainState> = None;
    for k in 0..terms {
        let term = if r == 1 {
            omega.window(k, 1)?
        } else {
            omega.pair(k, k + r - 1)?
        };
        acc = Some(ChainState::add_scaled(acc, &term, w)?);
    }
    acc.expect("at least one term").validated()
}

/// Largest block size not yet excluded by a witness violation:
/// floor((S − boundary_term)/Δ + 1), clamped at zero.
///
/// `s` is the witness bound, `delta` the observed violation, and
/// `boundary_term` the witness value on the product of single-site marginals.
pub fn size_bound(s: f64, delta: f64, boundary_term: f64) -> Result<usize> {
    if delta <= 0.0 {
        return Err(Error::OutOfRange(format!("violation {delta} must be positive")));
    }
    let raw = (s - boundary_term) / delta + 1.0;
    Ok(raw.floor().max(0.0) as usize)
}
