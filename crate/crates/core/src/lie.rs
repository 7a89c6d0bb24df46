//! Orbit labels, dominant weights and dimension formulas for unitary groups.
//!
//! A coadjoint orbit of `U(N)` is labelled by the spectrum `λ` of the
//! diagonal element `i·diag(λ)` it passes through, sorted weakly decreasing
//! so that labels that differ by a Weyl-group permutation compare equal.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{HoweError, Result};

/// Absolute tolerance used when comparing floating spectra.
pub const LABEL_TOL: f64 = 1e-9;

/// A coadjoint orbit of `U(N)` through `i·diag(spectrum)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoadjointOrbitLabel {
    group_rank: usize,
    spectrum: Vec<f64>,
}

impl CoadjointOrbitLabel {
    /// Builds a label for `U(group_rank)`, sorting the spectrum weakly decreasing.
    pub fn new(group_rank: usize, mut spectrum: Vec<f64>) -> Result<Self> {
        if group_rank == 0 {
            return Err(HoweError::InvalidLabel("group rank must be positive".into()));
        }
        if spectrum.len() != group_rank {
            return Err(HoweError::InvalidLabel(format!(
                "spectrum has {} entries for U({group_rank})",
                spectrum.len()
            )));
        }
        if spectrum.iter().any(|x| !x.is_finite()) {
            return Err(HoweError::NonFinite("orbit spectrum"));
        }
        spectrum.sort_by(|a, b| b.total_cmp(a));
        // -0.0 and 0.0 are the same orbit
        for x in &mut spectrum {
            if *x == 0.0 {
                *x = 0.0;
            }
        }
        Ok(Self { group_rank, spectrum })
    }

    /// Label whose rank is the length of `spectrum`.
    pub fn from_spectrum(spectrum: Vec<f64>) -> Result<Self> {
        Self::new(spectrum.len(), spectrum)
    }

    /// The point orbit through zero.
    pub fn zero(group_rank: usize) -> Result<Self> {
        Self::new(group_rank, vec![0.0; group_rank])
    }

    pub fn group_rank(&self) -> usize {
        self.group_rank
    }

    pub fn spectrum(&self) -> &[f64] {
        &self.spectrum
    }

    /// The label of the orbit through `-α`.
    pub fn negated(&self) -> Self {
        let spectrum = self.spectrum.iter().rev().map(|x| -x).collect();
        // reversal keeps the canonical order, so no re-sort is needed
        Self::new(self.group_rank, spectrum).expect("negation preserves validity")
    }

    /// Largest entrywise deviation from `other`, or `None` for different ranks.
    pub fn max_deviation(&self, other: &Self) -> Option<f64> {
        if self.group_rank != other.group_rank {
            return None;
        }
        Some(
            self.spectrum
                .iter()
                .zip(&other.spectrum)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max),
        )
    }

    /// Multiplicities of the distinct spectrum values, in spectrum order.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        let mut last: Option<f64> = None;
        for &x in &self.spectrum {
            match last {
                Some(prev) if (prev - x).abs() <= LABEL_TOL => {
                    *out.last_mut().unwrap() += 1;
                }
                _ => out.push(1),
            }
            last = Some(x);
        }
        out
    }
}

impl PartialEq for CoadjointOrbitLabel {
    fn eq(&self, other: &Self) -> bool {
        self.max_deviation(other).is_some_and(|d| d <= LABEL_TOL)
    }
}

impl fmt::Display for CoadjointOrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U({})[", self.group_rank)?;
        for (i, x) in self.spectrum.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// A dominant integral weight of `U(N)`: weakly decreasing integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DominantWeight {
    entries: Vec<i64>,
}

impl DominantWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(HoweError::InvalidLabel("weight rank must be positive".into()));
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(HoweError::NotDominant(entries));
        }
        Ok(Self { entries })
    }

    pub fn zero(rank: usize) -> Result<Self> {
        Self::new(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// The orbit label `[λ]` attached to this weight. No ρ-shift is applied.
    pub fn to_label(&self) -> CoadjointOrbitLabel {
        CoadjointOrbitLabel::from_spectrum(self.entries.iter().map(|&x| x as f64).collect())
            .expect("weights have positive rank")
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.entries)
    }
}

/// A partition: weakly decreasing positive parts. The empty partition has weight 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(HoweError::InvalidPartition(parts));
        }
        Ok(Self { parts })
    }

    /// Drops trailing zeros before validating.
    pub fn from_padded(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The partition as a `U(rank)` weight, or `None` if it has more than `rank` parts.
    pub fn padded(&self, rank: usize) -> Option<DominantWeight> {
        if self.parts.len() > rank || rank == 0 {
            return None;
        }
        let mut entries: Vec<i64> = self.parts.iter().map(|&p| p as i64).collect();
        entries.resize(rank, 0);
        Some(DominantWeight { entries })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Whether the orbit admits a stabilizer character, i.e. whether every
/// spectrum entry is an integer (within [`LABEL_TOL`]).
pub fn is_integral(label: &CoadjointOrbitLabel) -> bool {
    label
        .spectrum
        .iter()
        .all(|x| (x - x.round()).abs() <= LABEL_TOL)
}

/// Real dimension of the orbit: `N² − Σ mᵢ²` over the multiplicities of the
/// distinct spectrum values.
pub fn orbit_dimension(label: &CoadjointOrbitLabel) -> usize {
    let n = label.group_rank;
    n * n - label.multiplicities().iter().map(|m| m * m).sum::<usize>()
}

/// Dimension of the irreducible `U(N)`-representation with highest weight `λ`:
/// `∏_{i<j} (λᵢ − λⱼ + j − i) / (j − i)`, evaluated exactly.
pub fn weyl_dimension(weight: &DominantWeight) -> BigUint {
    let e = &weight.entries;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..e.len() {
        for j in (i + 1)..e.len() {
            let gap = (j - i) as u64;
            // dominance makes every factor positive
            let shifted = (e[i] - e[j]) as u64 + gap;
            num *= shifted;
            den *= gap;
        }
    }
    debug_assert!((&num % &den) == BigUint::from(0u8));
    num / den
}

/// Highest weight of the dual representation: `(−λ_N, …, −λ₁)`.
pub fn dual_weight(weight: &DominantWeight) -> DominantWeight {
    DominantWeight {
        entries: weight.entries.iter().rev().map(|x| -x).collect(),
    }
}
