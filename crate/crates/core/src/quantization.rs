//! Degree-by-degree decomposition of the holomorphic quantizations of the
//! matrix model `Mat(n×m; ℂ)` and of `(ℙⁿ, k·ω_FS)`.
//!
//! Multiplicities are not assumed: they are recovered from the torus weight
//! multiplicities of the polynomial space by peeling off irreducible
//! characters (Kostka numbers) in decreasing dominance order. The resulting
//! rows are then compared against closed-form dimension counts and against
//! the orbit correspondence.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::combinatorics::{binomial, contingency_count, kostka, partitions};
use crate::correspondence::{lambda_matrix, lambda_projective, Model, SigmaVector};
use crate::error::{HoweError, Result};
use crate::lie::{dual_weight, weyl_dimension, DominantWeight, Partition};

fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn as_decimal_int<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

/// One isotypic component `V_source ⊗ V_target` with its multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionRow {
    pub source: DominantWeight,
    pub target: DominantWeight,
    #[serde(serialize_with = "as_decimal_int")]
    pub multiplicity: BigInt,
    #[serde(serialize_with = "as_decimal")]
    pub source_dim: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub target_dim: BigUint,
}

/// The decomposition of one graded piece.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionTable {
    pub model: Model,
    /// Rank of the source group (`n` for the matrix model, `1` for `U(1)`).
    pub source_rank: usize,
    /// Rank of the target group.
    pub target_rank: usize,
    /// Polynomial degree (matrix model) or level `k` (projective model).
    pub degree: u32,
    pub rows: Vec<DecompositionRow>,
    /// Dimension of the whole graded piece, from a binomial count.
    #[serde(serialize_with = "as_decimal")]
    pub lhs_dimension: BigUint,
    /// `Σ multiplicity · dim source · dim target` over the rows.
    #[serde(serialize_with = "as_decimal")]
    pub rhs_dimension: BigUint,
    /// Closed-form sum over the expected pairs, computed without the rows.
    #[serde(serialize_with = "as_decimal")]
    pub closed_form_sum: BigUint,
    /// Every row's weight pair matches the label pair produced by `Λ`.
    pub lambda_consistent: bool,
}

impl DecompositionTable {
    pub fn identity_holds(&self) -> bool {
        self.lhs_dimension == self.rhs_dimension && self.rhs_dimension == self.closed_form_sum
    }

    pub fn multiplicity_free(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.multiplicity.is_zero() || r.multiplicity == BigInt::from(1))
    }

    /// No two occurring rows share a source or a target.
    pub fn pairing_injective(&self) -> bool {
        let mut occurring = self.rows.iter().filter(|r| !r.multiplicity.is_zero());
        let mut sources = HashSet::new();
        let mut targets = HashSet::new();
        occurring.all(|r| sources.insert(&r.source) && targets.insert(&r.target))
    }

    pub fn passed(&self) -> bool {
        self.identity_holds()
            && self.multiplicity_free()
            && self.pairing_injective()
            && self.lambda_consistent
    }
}

/// `dim S_λ(ℂⁿ)`; zero when `λ` has more than `n` parts.
pub fn schur_dimension(lambda: &Partition, n: usize) -> BigUint {
    match lambda.padded(n) {
        Some(w) => weyl_dimension(&w),
        None => BigUint::zero(),
    }
}

/// `Σ_{λ ⊢ k, ℓ(λ) ≤ m} dim S_λ(ℂⁿ) · dim S_λ(ℂᵐ)`.
pub fn cauchy_sum(n: usize, m: usize, k: u32) -> BigUint {
    partitions(k, n.min(m))
        .iter()
        .map(|l| schur_dimension(l, n) * schur_dimension(l, m))
        .sum()
}

fn pad(p: &Partition, len: usize) -> Vec<u32> {
    let mut v = p.parts().to_vec();
    v.resize(len, 0);
    v
}

fn to_bigint(v: BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, v)
}

/// Multiplicities `c(λ, μ)` of `S_λ(ℂⁿ) ⊗ S_μ(ℂᵐ)` in `Sym^k(ℂⁿ ⊗ ℂᵐ)`,
/// recovered from weight multiplicities (contingency tables) by Kostka peeling.
/// Only nonzero multiplicities are returned, in decreasing lexicographic order.
pub fn gl_pair_multiplicities(n: usize, m: usize, k: u32) -> Vec<(Partition, Partition, BigInt)> {
    let left = partitions(k, n);
    let right = partitions(k, m);
    let mut found: Vec<(usize, usize, BigInt)> = Vec::new();
    let mut out = Vec::new();
    for (a, alpha) in left.iter().enumerate() {
        let alpha_w = pad(alpha, n);
        for (b, beta) in right.iter().enumerate() {
            let beta_w = pad(beta, m);
            let mut c = to_bigint(contingency_count(&alpha_w, &beta_w));
            for (i, j, cij) in &found {
                if *i < a || (*i == a && *j < b) {
                    let ka = kostka(left[*i].parts(), &alpha_w);
                    if ka.is_zero() {
                        continue;
                    }
                    let kb = kostka(right[*j].parts(), &beta_w);
                    c -= cij * to_bigint(ka * kb);
                }
            }
            if !c.is_zero() {
                found.push((a, b, c.clone()));
                out.push((alpha.clone(), beta.clone(), c));
            }
        }
    }
    out
}

/// Decomposes `Sym^k(ℂⁿ ⊗ ℂᵐ)` under `U(n) × U(m)` and checks
/// `binomial(nm + k − 1, k) = Σ_λ dim S_λ(ℂⁿ) · dim S_λ(ℂᵐ)`.
pub fn gl_duality_check(n: usize, m: usize, k: u32) -> Result<DecompositionTable> {
    if m == 0 || n < m {
        return Err(HoweError::BadDimensions { n, m });
    }
    let mut rows = Vec::new();
    let mut lambda_consistent = true;
    for (lambda, mu, c) in gl_pair_multiplicities(n, m, k) {
        let source = lambda.padded(n).expect("at most n parts");
        let target = dual_weight(&mu.padded(m).expect("at most m parts"));
        lambda_consistent &= matches_lambda_matrix(&source, &target, n, m);
        rows.push(DecompositionRow {
            source_dim: weyl_dimension(&source),
            target_dim: weyl_dimension(&target),
            source,
            target,
            multiplicity: c,
        });
    }
    let rhs = rows_total(&rows);
    Ok(DecompositionTable {
        model: Model::Matrix,
        source_rank: n,
        target_rank: m,
        degree: k,
        rows,
        lhs_dimension: binomial((n * m) as u64 + k as u64 - 1, k as u64),
        rhs_dimension: rhs,
        closed_form_sum: cauchy_sum(n, m, k),
        lambda_consistent,
    })
}

fn rows_total(rows: &[DecompositionRow]) -> BigUint {
    let total: BigInt = rows
        .iter()
        .map(|r| &r.multiplicity * to_bigint(&r.source_dim * &r.target_dim))
        .sum();
    total.to_biguint().unwrap_or_default()
}

// the weights (source, target) must be the label pair Λ gives at ½σ² = source
fn matches_lambda_matrix(source: &DominantWeight, target: &DominantWeight, n: usize, m: usize) -> bool {
    let e = source.entries();
    if e.iter().any(|&x| x < 0) || e[m..].iter().any(|&x| x != 0) {
        return false;
    }
    let half: Vec<f64> = e[..m].iter().map(|&x| x as f64).collect();
    let Ok(sigma) = SigmaVector::from_half_squares(&half) else {
        return false;
    };
    match lambda_matrix(&sigma, n) {
        Ok(pair) => pair.source == source.to_label() && pair.target == target.to_label(),
        Err(_) => false,
    }
}

/// Degree tables `k = 0..=k_max` for the matrix model.
pub fn matrix_quantization_table(n: usize, m: usize, k_max: u32) -> Result<Vec<DecompositionTable>> {
    (0..=k_max).map(|k| gl_duality_check(n, m, k)).collect()
}

/// Decomposes `ℂ_k[z₀, …, zₙ]` under `U(1) × U(n)` and checks
/// `binomial(k + n, n) = Σ_{d=0}^{k} binomial(k − d + n − 1, n − 1)`.
/// The `U(1)` weight of `z₀^d` is recorded as `−d`.
pub fn projective_decomposition_check(n: usize, k: u32) -> Result<DecompositionTable> {
    if n == 0 {
        return Err(HoweError::InvalidParameter("n must be positive".into()));
    }
    let mut rows = Vec::new();
    let mut lambda_consistent = true;
    for d in 0..=k {
        let source = DominantWeight::new(vec![-(d as i64)])?;
        // ℂ_{k−d}[z₁, …, zₙ] = Sym^{k−d}(ℂⁿ ⊗ ℂ¹)
        for (nu, _, c) in gl_pair_multiplicities(n, 1, k - d) {
            let target = nu.padded(n).expect("at most n parts");
            if k > 0 {
                lambda_consistent &= match lambda_projective(-(d as f64), k, n) {
                    Ok(pair) => pair.source == source.to_label() && pair.target == target.to_label(),
                    Err(_) => false,
                };
            }
            rows.push(DecompositionRow {
                source_dim: weyl_dimension(&source),
                target_dim: weyl_dimension(&target),
                source: source.clone(),
                target,
                multiplicity: c,
            });
        }
    }
    let closed_form_sum = (0..=k as u64)
        .map(|d| binomial(k as u64 - d + n as u64 - 1, n as u64 - 1))
        .sum();
    Ok(DecompositionTable {
        model: Model::Projective,
        source_rank: 1,
        target_rank: n,
        degree: k,
        rhs_dimension: rows_total(&rows),
        rows,
        lhs_dimension: binomial(k as u64 + n as u64, n as u64),
        closed_form_sum,
        lambda_consistent,
    })
}

/// Multiplicity (0 or 1 in a multiplicity-free table) of the component whose
/// source weight is `source`. Shorter weights are zero-padded to the table's
/// source rank; longer ones match only if their extra entries are zero.
pub fn multiplicity_query(source: &DominantWeight, table: &DecompositionTable) -> u8 {
    let rank = table.source_rank;
    let e = source.entries();
    if e.len() > rank && e[rank..].iter().any(|&x| x != 0) {
        return 0;
    }
    let mut padded: Vec<i64> = e.iter().take(rank).copied().collect();
    padded.resize(rank, 0);
    let Ok(w) = DominantWeight::new(padded) else {
        return 0;
    };
    table
        .rows
        .iter()
        .find(|r| r.source == w)
        .and_then(|r| r.multiplicity.to_u8())
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn weight(v: &[i64]) -> DominantWeight {
        DominantWeight::new(v.to_vec()).unwrap()
    }

    #[test]
    fn schur_dimensions() {
        for n in 1..6 {
            assert_eq!(schur_dimension(&part(&[1]), n), (n as u32).into());
        }
        assert_eq!(schur_dimension(&part(&[2]), 2), 3u32.into());
        assert_eq!(schur_dimension(&part(&[1, 1]), 2), 1u32.into());
        assert_eq!(schur_dimension(&part(&[1, 1, 1]), 2), BigUint::zero());
        assert_eq!(schur_dimension(&part(&[2, 1]), 3), 8u32.into());
    }

    #[test]
    fn duality_examples() {
        let t = gl_duality_check(2, 2, 2).unwrap();
        assert_eq!(t.lhs_dimension, 10u32.into());
        assert!(t.passed());
        assert_eq!(t.rows.len(), 2);

        for k in 0..5 {
            let t = gl_duality_check(1, 1, k).unwrap();
            assert_eq!(t.lhs_dimension, 1u32.into());
            assert!(t.passed());
        }

        let t = gl_duality_check(3, 2, 3).unwrap();
        assert_eq!(t.lhs_dimension, 56u32.into());
        let dims: Vec<(u32, u32)> = t
            .rows
            .iter()
            .map(|r| (r.source_dim.to_u32().unwrap(), r.target_dim.to_u32().unwrap()))
            .collect();
        assert_eq!(dims, vec![(10, 4), (8, 2)]);
        assert!(t.passed());

        assert!(gl_duality_check(2, 3, 1).is_err());
    }

    #[test]
    fn peeling_finds_only_diagonal_pairs() {
        let c = gl_pair_multiplicities(3, 3, 4);
        assert_eq!(c.len(), partitions(4, 3).len());
        for (l, mu, mult) in c {
            assert_eq!(l, mu);
            assert_eq!(mult, BigInt::from(1));
        }
    }

    #[test]
    fn projective_examples() {
        let t = projective_decomposition_check(2, 2).unwrap();
        assert_eq!(t.lhs_dimension, 6u32.into());
        let dims: Vec<u32> = t.rows.iter().map(|r| r.target_dim.to_u32().unwrap()).collect();
        assert_eq!(dims, vec![3, 2, 1]);
        let sources: Vec<i64> = t.rows.iter().map(|r| r.source.entries()[0]).collect();
        assert_eq!(sources, vec![0, -1, -2]);
        assert!(t.passed());

        let t = projective_decomposition_check(1, 5).unwrap();
        assert_eq!(t.lhs_dimension, 6u32.into());
        assert!(t.passed());

        let t = projective_decomposition_check(3, 0).unwrap();
        assert_eq!(t.lhs_dimension, 1u32.into());
        assert_eq!(t.rows.len(), 1);
        assert!(t.passed());
    }

    #[test]
    fn quantization_tables() {
        let tables = matrix_quantization_table(2, 1, 2).unwrap();
        assert_eq!(tables.len(), 3);
        for (k, t) in tables.iter().enumerate() {
            assert_eq!(t.rows.len(), 1);
            assert_eq!(t.rows[0].source_dim, BigUint::from(k as u32 + 1));
            assert_eq!(t.rows[0].target_dim, BigUint::from(1u32));
            assert_eq!(t.lhs_dimension, binomial(k as u64 + 1, k as u64));
        }

        let t = &matrix_quantization_table(3, 2, 2).unwrap()[2];
        let rows: Vec<(Vec<i64>, Vec<i64>, u32, u32)> = t
            .rows
            .iter()
            .map(|r| {
                (
                    r.source.entries().to_vec(),
                    r.target.entries().to_vec(),
                    r.source_dim.to_u32().unwrap(),
                    r.target_dim.to_u32().unwrap(),
                )
            })
            .collect();
        assert_eq!(
            rows,
            vec![
                (vec![2, 0, 0], vec![0, -2], 6, 3),
                (vec![1, 1, 0], vec![-1, -1], 3, 1),
            ]
        );
        assert_eq!(t.lhs_dimension, 21u32.into());
    }

    #[test]
    fn queries() {
        let t = gl_duality_check(2, 2, 2).unwrap();
        assert_eq!(multiplicity_query(&weight(&[2]), &t), 1);
        assert_eq!(multiplicity_query(&weight(&[2, 0]), &t), 1);
        assert_eq!(multiplicity_query(&weight(&[1]), &t), 0);
        assert_eq!(multiplicity_query(&weight(&[1, 1, 1]), &t), 0);
        let t = gl_duality_check(3, 2, 3).unwrap();
        assert_eq!(multiplicity_query(&weight(&[1, 1, 1]), &t), 0);
    }

    #[test]
    fn tampered_tables_fail() {
        let mut t = gl_duality_check(2, 2, 2).unwrap();
        t.rows[0].multiplicity = BigInt::from(2);
        assert!(!t.multiplicity_free());
        let mut t = gl_duality_check(2, 2, 2).unwrap();
        let dup = t.rows[0].clone();
        t.rows.push(dup);
        assert!(!t.pairing_injective());
        assert!(!matches_lambda_matrix(&weight(&[2, 0]), &weight(&[-1, -1]), 2, 2));
    }
}
