//! Representative flags, Gram matrices and rank conditions, and the
//! rewriting of classes as formulas for degeneracy loci.
//!
//! For a vector bundle `V` of rank `N` with a nondegenerate form and a flag
//! of subbundles `F_1 ⊂ ... ⊂ F_N = V`, the locus where
//! `rank(γ|F_i × F_j) <= r_b(i, j)` for all `i, j` has class obtained from
//! the orbit class by `x_i ↦ c_1(F_i/F_{i-1})` and `y_1 ... y_n ↦ e`, the
//! Euler class of `V` (defined up to sign), assuming the flag is in
//! general position.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{rank_count, Component, Family, Permutation, SymmetricPairConfig};
use crate::error::{Error, Result};
use crate::localization::check_orbit_parameter;
use crate::polyring::Polynomial;
use crate::render::{factor, render_expanded, Notation};
use crate::weak_order::OrbitParameter;

/// An ordered basis `v_1, ..., v_N`; `F_i` is the span of the first `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlagBasis {
    vectors: Vec<Vec<i64>>,
}

impl FlagBasis {
    pub fn new(vectors: Vec<Vec<i64>>) -> Result<Self> {
        let len = vectors.len();
        if vectors.iter().any(|v| v.len() != len) || exact_rank(&vectors) != len {
            return Err(Error::RankMismatch {
                expected: len,
                actual: exact_rank(&vectors),
            });
        }
        Ok(FlagBasis { vectors })
    }

    /// The coordinate flag `⟨e_{w(1)}, ..., e_{w(N)}⟩`.
    pub fn coordinate(w: &Permutation) -> Self {
        let len = w.len();
        let vectors = (1..=len)
            .map(|i| {
                let mut v = vec![0; len];
                v[w.apply(i) - 1] = 1;
                v
            })
            .collect();
        FlagBasis { vectors }
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `w` if this is the coordinate flag of `w`.
    pub fn as_coordinate_flag(&self) -> Option<Permutation> {
        let mut word = Vec::with_capacity(self.len());
        for v in &self.vectors {
            let mut support = v.iter().enumerate().filter(|(_, &c)| c != 0);
            match (support.next(), support.next()) {
                (Some((k, _)), None) => word.push(k + 1),
                _ => return None,
            }
        }
        Permutation::new(word).ok()
    }

    fn swap_coordinates(&mut self, a: usize, b: usize) {
        for v in &mut self.vectors {
            v.swap(a - 1, b - 1);
        }
    }
}

impl fmt::Display for FlagBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        for (k, v) in self.vectors.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            let mut first = true;
            for (idx, &c) in v.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let sign = if c < 0 {
                    "-"
                } else if first {
                    ""
                } else {
                    "+"
                };
                let mag = if c.abs() == 1 {
                    String::new()
                } else {
                    c.abs().to_string()
                };
                write!(f, "{sign}{mag}e{}", idx + 1)?;
                first = false;
            }
        }
        f.write_str("⟩")
    }
}

/// A basis of a flag in the orbit with parameter `b`: each 2-cycle
/// `i < b(i)` takes a fresh pair of isotropic vectors, the fixed points take
/// non-isotropic ones.
pub fn representative_flag(b: &Permutation, config: &SymmetricPairConfig) -> Result<FlagBasis> {
    check_orbit_parameter(b, config)?;
    let big = config.ambient();
    let n = config.rank;
    let e = |k: usize| {
        let mut v = vec![0; big];
        v[k - 1] = 1;
        v
    };
    let mut vectors = vec![Vec::new(); big];
    let mut k = 1;
    for i in 1..=big {
        let j = b.apply(i);
        if i < j {
            vectors[i - 1] = e(k);
            vectors[j - 1] = e(big + 1 - k);
            k += 1;
        }
    }
    let mut fixed = b.fixed_points().into_iter();
    if config.family == Family::OOdd {
        let centre = fixed
            .next()
            .ok_or_else(|| Error::Internal(format!("{b} has no fixed point")))?;
        vectors[centre - 1] = e(n + 1);
    }
    let fixed: Vec<usize> = fixed.collect();
    if fixed.len() % 2 == 1 {
        return Err(Error::Internal(format!(
            "{b} leaves an odd number of fixed points"
        )));
    }
    for pair in fixed.chunks(2) {
        let (plus, minus) = (e(k), e(big + 1 - k));
        vectors[pair[0] - 1] = plus.iter().zip(&minus).map(|(a, c)| a + c).collect();
        vectors[pair[1] - 1] = plus.iter().zip(&minus).map(|(a, c)| a - c).collect();
        k += 1;
    }
    Ok(FlagBasis { vectors })
}

/// A flag in the orbit of `param`; for the `-` component of a split `SO(2n)`
/// orbit this is the `+` flag moved by the reflection exchanging `e_n` and
/// `e_{n+1}`.
pub fn parameter_flag(param: &OrbitParameter, config: &SymmetricPairConfig) -> Result<FlagBasis> {
    let mut flag = representative_flag(param.involution(), config)?;
    if param.component() == Some(Component::Minus) {
        flag.swap_coordinates(config.rank, config.rank + 1);
    }
    Ok(flag)
}

/// `γ(u, v)`: `δ_{i, N+1-j}` on basis vectors for the orthogonal families,
/// and `±δ_{i, 2n+1-j}` (plus for `i <= n`) for `Sp`.
pub fn form(u: &[i64], v: &[i64], config: &SymmetricPairConfig) -> i64 {
    let big = config.ambient();
    (0..big)
        .map(|k| {
            let sign = if config.family == Family::Sp && k >= config.rank {
                -1
            } else {
                1
            };
            sign * u[k] * v[big - 1 - k]
        })
        .sum()
}

pub fn gram_matrix(basis: &FlagBasis, config: &SymmetricPairConfig) -> Vec<Vec<i64>> {
    let vs = basis.vectors();
    vs.iter()
        .map(|u| vs.iter().map(|v| form(u, v, config)).collect())
        .collect()
}

/// Rank over the rationals, by fraction-free elimination.
pub fn exact_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&c| c as i128).collect())
        .collect();
    let width = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..width {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..m.len() {
            for c in col + 1..width {
                m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
    }
    rank
}

/// `rank(γ|F_i × F_j)` for all `1 <= i, j <= N`, as an `(N+1) x (N+1)`
/// table with a zero border.
pub fn rank_profile(basis: &FlagBasis, config: &SymmetricPairConfig) -> Vec<Vec<usize>> {
    let gram = gram_matrix(basis, config);
    let big = gram.len();
    let mut table = vec![vec![0; big + 1]; big + 1];
    for i in 1..=big {
        for j in 1..=big {
            let block: Vec<Vec<i64>> = gram[..i].iter().map(|row| row[..j].to_vec()).collect();
            table[i][j] = exact_rank(&block);
        }
    }
    table
}

/// The permutation `π` if `matrix` has exactly the nonzero entries `(i, π(i))`.
pub fn monomial_pattern(matrix: &[Vec<i64>]) -> Option<Permutation> {
    let mut word = Vec::with_capacity(matrix.len());
    for row in matrix {
        let mut nonzero = row.iter().enumerate().filter(|(_, &c)| c != 0);
        match (nonzero.next(), nonzero.next()) {
            (Some((j, _)), None) => word.push(j + 1),
            _ => return None,
        }
    }
    Permutation::new(word).ok()
}

/// Whether the flag lies in the orbit of `b`: every rank equals `r_b(i, j)`.
pub fn verify_orbit_membership(
    basis: &FlagBasis,
    b: &Permutation,
    config: &SymmetricPairConfig,
) -> Result<bool> {
    check_orbit_parameter(b, config)?;
    let table = rank_profile(basis, config);
    let big = b.len();
    Ok((1..=big).all(|i| (1..=big).all(|j| table[i][j] == rank_count(b, i, j))))
}

/// Whether the flag lies in the closure of the orbit of `b`.
pub fn satisfies_closure(
    basis: &FlagBasis,
    b: &Permutation,
    config: &SymmetricPairConfig,
) -> Result<bool> {
    check_orbit_parameter(b, config)?;
    let table = rank_profile(basis, config);
    let big = b.len();
    Ok((1..=big).all(|i| (1..=big).all(|j| table[i][j] <= rank_count(b, i, j))))
}

/// `rank(γ|F_i × F_j) <= bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCondition {
    pub i: usize,
    pub j: usize,
    pub bound: usize,
}

impl fmt::Display for RankCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank(γ|F_{} × F_{}) <= {}", self.i, self.j, self.bound)
    }
}

/// The closure conditions of `b` that are not automatic, for `i <= j` (the
/// form is symmetric or antisymmetric, so the table is symmetric). A bound
/// is automatic when it is at least `min(i, j)`, or for `Sp` on `F_i × F_i`
/// when it is at least the largest even number `<= i`.
pub fn closure_conditions(
    b: &Permutation,
    config: &SymmetricPairConfig,
) -> Result<Vec<RankCondition>> {
    check_orbit_parameter(b, config)?;
    let big = b.len();
    let mut out = Vec::new();
    for i in 1..=big {
        for j in i..=big {
            let bound = rank_count(b, i, j);
            let automatic = if config.family == Family::Sp && i == j {
                i - i % 2
            } else {
                i.min(j)
            };
            if bound < automatic {
                out.push(RankCondition { i, j, bound });
            }
        }
    }
    Ok(out)
}

/// A class rewritten in the Chern classes `c_1(F_i/F_{i-1})` of the flag
/// and the Euler class `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernFormula {
    class: Polynomial,
    rank: usize,
}

pub fn to_chern_formula(p: &Polynomial, config: &SymmetricPairConfig) -> Result<ChernFormula> {
    let n = config.rank;
    for pattern in p.y_patterns() {
        let ok = pattern.iter().all(|&e| e == 0)
            || (pattern.len() == n && pattern.iter().all(|&e| e == 1));
        if !ok {
            return Err(Error::YDiscipline(p.to_string()));
        }
    }
    Ok(ChernFormula {
        class: p.clone(),
        rank: n,
    })
}

impl ChernFormula {
    pub fn polynomial(&self) -> &Polynomial {
        &self.class
    }

    /// Cohomological degree, with `e` of degree `n`.
    pub fn degree(&self) -> Option<u32> {
        self.class.total_degree()
    }

    pub fn mentions_euler_class(&self) -> bool {
        self.class.has_y()
    }

    /// Factored plain text with tokens `c1(F_i/F_{i-1})` and `e`.
    pub fn to_text(&self) -> String {
        factor(&self.class).render(Notation::Chern)
    }

    pub fn to_expanded_text(&self) -> String {
        render_expanded(&self.class, Notation::Chern, false)
    }

    pub fn to_latex(&self) -> String {
        factor(&self.class).render(Notation::ChernLatex)
    }
}

impl fmt::Display for ChernFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Ring;

    fn cfg(family: Family, rank: usize) -> SymmetricPairConfig {
        SymmetricPairConfig::new(family, rank).unwrap()
    }

    fn perm(s: &str, len: usize) -> Permutation {
        Permutation::parse(s, len).unwrap()
    }

    #[test]
    fn worked_flags() {
        let config = cfg(Family::OOdd, 2);
        let b = Permutation::parse("(2,4)", 5).unwrap();
        let flag = representative_flag(&b, &config).unwrap();
        assert_eq!(flag.to_string(), "⟨e3,e1,e2+e4,e5,e2-e4⟩");
        let gram = gram_matrix(&flag, &config);
        assert_eq!(
            gram,
            vec![
                vec![1, 0, 0, 0, 0],
                vec![0, 0, 0, 1, 0],
                vec![0, 0, 2, 0, 0],
                vec![0, 1, 0, 0, 0],
                vec![0, 0, 0, 0, -2],
            ]
        );
        let b = Permutation::parse("(1,3)(2,5)", 5).unwrap();
        let flag = representative_flag(&b, &config).unwrap();
        assert_eq!(flag.to_string(), "⟨e1,e2,e5,e3,e4⟩");
        assert_eq!(monomial_pattern(&gram_matrix(&flag, &config)), Some(b));
    }

    #[test]
    fn standard_flag() {
        let config = cfg(Family::OOdd, 1);
        let flag = FlagBasis::coordinate(&Permutation::identity(3));
        assert_eq!(
            monomial_pattern(&gram_matrix(&flag, &config)),
            Some(Permutation::longest(3))
        );
        assert!(verify_orbit_membership(&flag, &Permutation::longest(3), &config).unwrap());
        assert!(!verify_orbit_membership(&flag, &Permutation::identity(3), &config).unwrap());
        assert!(satisfies_closure(&flag, &Permutation::identity(3), &config).unwrap());
    }

    #[test]
    fn symplectic_form_signs() {
        let config = cfg(Family::Sp, 2);
        let flag = FlagBasis::coordinate(&Permutation::identity(4));
        let gram = gram_matrix(&flag, &config);
        assert_eq!(gram[0][3], 1);
        assert_eq!(gram[3][0], -1);
        assert_eq!(gram[1][2], 1);
        assert_eq!(gram[2][1], -1);
        let b = perm("(1,2)(3,4)", 4);
        let flag = representative_flag(&b, &config).unwrap();
        assert_eq!(flag.to_string(), "⟨e1,e4,e2,e3⟩");
        assert!(verify_orbit_membership(&flag, &b, &config).unwrap());
    }

    #[test]
    fn minus_component_flag() {
        let config = cfg(Family::SoEven, 2);
        let param = OrbitParameter::parse("-(1,2)(3,4)", &config).unwrap();
        assert_eq!(
            parameter_flag(&param, &config).unwrap().to_string(),
            "⟨e1,e4,e3,e2⟩"
        );
    }

    #[test]
    fn ranks() {
        assert_eq!(exact_rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(exact_rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(
            exact_rank(&[vec![0, 1, 2], vec![1, 0, 3], vec![1, 1, 5]]),
            2
        );
        assert_eq!(
            exact_rank(&[vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]]),
            3
        );
        assert!(FlagBasis::new(vec![vec![1, 1], vec![2, 2]]).is_err());
    }

    #[test]
    fn closure_condition_listing() {
        let config = cfg(Family::OOdd, 1);
        let conds = closure_conditions(&perm("(1,3)", 3), &config).unwrap();
        let shown: Vec<String> = conds.iter().map(ToString::to_string).collect();
        assert_eq!(
            shown,
            [
                "rank(γ|F_1 × F_1) <= 0",
                "rank(γ|F_1 × F_2) <= 0",
                "rank(γ|F_2 × F_2) <= 1"
            ]
        );
        assert!(closure_conditions(&Permutation::identity(3), &config)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn chern_rewriting() {
        let config = cfg(Family::SoEven, 2);
        let ring = Ring::for_config(&config);
        let q = Polynomial::parse("2(x1+x2)", ring).unwrap();
        assert_eq!(
            to_chern_formula(&q, &config).unwrap().to_text(),
            "2(c1(F_1)+c1(F_2/F_1))"
        );
        let q = Polynomial::parse("2(y1y2+x1x2)(x1+x2)", ring).unwrap();
        let formula = to_chern_formula(&q, &config).unwrap();
        assert_eq!(
            formula.to_expanded_text(),
            "2*c1(F_1)^2*c1(F_2/F_1) + 2*c1(F_1)*c1(F_2/F_1)^2 + 2*c1(F_1)*e + 2*c1(F_2/F_1)*e"
        );
        assert_eq!(formula.degree(), Some(3));
        assert_eq!(
            to_chern_formula(&Polynomial::one(ring), &config)
                .unwrap()
                .to_text(),
            "1"
        );
        let bad = Polynomial::parse("y1 x1", ring).unwrap();
        assert!(matches!(
            to_chern_formula(&bad, &config),
            Err(Error::YDiscipline(_))
        ));
    }
}
