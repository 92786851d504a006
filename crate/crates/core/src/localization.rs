//! Restriction to torus-fixed points and the localization oracle.
//!
//! The torus `S` of `K` is identified with the diagonal torus
//! `diag(Y_1, ..., Y_n, [0,] -Y_n, ..., -Y_1)`, so the coordinate map
//! `ρ` sends every `X_i` to `±Y_k` or `0`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    permutations, rank_count, weyl_k_fixed_points, Component, Family, Permutation,
    SymmetricPairConfig,
};
use crate::error::{Error, Result};
use crate::polyring::{restrict_packed, LinearWeight, PackedTerms, Polynomial, Ring};

/// `ρ(X_i)` for every `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionMap {
    images: Vec<LinearWeight>,
}

impl RestrictionMap {
    pub fn for_config(config: &SymmetricPairConfig) -> Self {
        let n = config.rank;
        let big = config.ambient();
        let mut images = vec![LinearWeight::zero(n); big];
        for i in 1..=n {
            images[i - 1] = LinearWeight::basis(n, i, 1);
            images[big - i] = LinearWeight::basis(n, i, -1);
        }
        RestrictionMap { images }
    }

    /// `ρ(X_i)`, 1-based.
    pub fn image(&self, i: usize) -> &LinearWeight {
        &self.images[i - 1]
    }

    pub fn images(&self) -> &[LinearWeight] {
        &self.images
    }
}

/// The roots `Φ_K` of `K`, as weights of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemK {
    roots: Vec<LinearWeight>,
}

impl RootSystemK {
    pub fn for_config(config: &SymmetricPairConfig) -> Self {
        let n = config.rank;
        let e = |k: usize, c: i64| LinearWeight::basis(n, k, c);
        let mut roots = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    roots.push(&e(i, a) + &e(j, b));
                }
            }
            match config.family {
                Family::OOdd => {
                    roots.push(e(i, 1));
                    roots.push(e(i, -1));
                }
                Family::Sp => {
                    roots.push(e(i, 2));
                    roots.push(e(i, -2));
                }
                Family::OEven | Family::SoEven => {}
            }
        }
        roots.sort();
        RootSystemK { roots }
    }

    pub fn roots(&self) -> &[LinearWeight] {
        &self.roots
    }

    pub fn contains(&self, weight: &LinearWeight) -> bool {
        self.roots.binary_search(weight).is_ok()
    }
}

fn check_closed_fixed_point(
    w: &Permutation,
    config: &SymmetricPairConfig,
    selector: Option<Component>,
) -> Result<()> {
    let changes = config
        .sign_changes_of(w)
        .ok_or_else(|| Error::NotInClosedOrbit(w.one_line()))?;
    let wanted = match (config.family, selector) {
        (Family::SoEven, Some(Component::Plus)) => Some(0),
        (Family::SoEven, Some(Component::Minus)) => Some(1),
        _ => None,
    };
    match wanted {
        Some(parity) if changes % 2 != parity => Err(Error::NotInClosedOrbit(w.one_line())),
        _ => Ok(()),
    }
}

/// Weights of `S` on the normal space to the closed orbit at the fixed
/// point `w`: `ρ(wΦ^+)` with one occurrence of each root of `K` removed.
pub fn normal_weights(
    w: &Permutation,
    config: &SymmetricPairConfig,
    selector: Option<Component>,
) -> Result<Vec<LinearWeight>> {
    check_closed_fixed_point(w, config, selector)?;
    let rho = RestrictionMap::for_config(config);
    let phi_k = RootSystemK::for_config(config);
    let big = config.ambient();
    let mut weights = Vec::with_capacity(big * (big - 1) / 2);
    for i in 1..=big {
        for j in i + 1..=big {
            weights.push(rho.image(w.apply(i)) - rho.image(w.apply(j)));
        }
    }
    for root in phi_k.roots() {
        if let Some(pos) = weights.iter().position(|x| x == root) {
            weights.remove(pos);
        }
    }
    assert!(
        weights.iter().all(|x| !x.is_zero()),
        "zero normal weight at {w} for {config}"
    );
    weights.sort();
    Ok(weights)
}

/// Number of normal weights at any fixed point of a closed orbit, i.e. its
/// codimension: `n^2 + n` for `O_ODD`, `n^2` for the even orthogonal pairs
/// and `n^2 - n` for `Sp`.
pub fn closed_orbit_codimension(config: &SymmetricPairConfig) -> usize {
    let n = config.rank;
    match config.family {
        Family::OOdd => n * n + n,
        Family::OEven | Family::SoEven => n * n,
        Family::Sp => n * n - n,
    }
}

/// Product of the normal weights at `w`, as a polynomial in the y's.
pub fn normal_weight_product(
    w: &Permutation,
    config: &SymmetricPairConfig,
    selector: Option<Component>,
) -> Result<Polynomial> {
    let ring = Ring::for_config(config);
    let weights = normal_weights(w, config, selector)?;
    Ok(weights.iter().fold(Polynomial::one(ring), |acc, x| {
        &acc * &x.to_polynomial(ring)
    }))
}

pub(crate) fn check_orbit_parameter(b: &Permutation, config: &SymmetricPairConfig) -> Result<()> {
    let invalid = |reason: String| Error::InvalidParameter {
        family: config.family.to_string(),
        reason,
    };
    if b.len() != config.ambient() {
        return Err(invalid(format!("{b} is not in S_{}", config.ambient())));
    }
    if !b.is_involution() {
        return Err(Error::NotInvolution(b.one_line()));
    }
    if config.family == Family::Sp && !b.is_fixed_point_free() {
        return Err(invalid(format!("{} has fixed points", b.cycle_notation())));
    }
    Ok(())
}

/// Rank of `γ` on `F_i × F_j` for the coordinate flag of `w`. The Gram
/// matrix of a coordinate flag is monomial with pattern `w^{-1} w_0 w`.
pub(crate) fn coordinate_gram_pattern(w: &Permutation) -> Permutation {
    w.inverse()
        .compose(&Permutation::longest(w.len()))
        .compose(w)
}

/// Whether the coordinate flag of `w` satisfies every closure inequality
/// `rank(γ|F_i × F_j) <= r_b(i, j)`.
pub fn fixed_point_in_orbit_closure(
    w: &Permutation,
    b: &Permutation,
    config: &SymmetricPairConfig,
) -> Result<bool> {
    check_orbit_parameter(b, config)?;
    if w.len() != b.len() {
        return Err(Error::InvalidPermutation {
            word: w.word().to_vec(),
            len: b.len(),
        });
    }
    let pattern = coordinate_gram_pattern(w);
    let big = b.len();
    Ok((1..=big).all(|i| (1..=big).all(|j| rank_count(&pattern, i, j) <= rank_count(b, i, j))))
}

/// One fixed point checked by the oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRow {
    pub w: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// Per-fixed-point outcome of a localization check, ordered by `w`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub rows: Vec<VerificationRow>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

fn row(w: &Permutation, expected: &Polynomial, actual: &Polynomial) -> VerificationRow {
    VerificationRow {
        w: w.one_line(),
        expected: expected.to_string(),
        actual: actual.to_string(),
        pass: expected == actual,
    }
}

/// Checks a proposed closed-orbit class at every `w ∈ S_N`: the restriction
/// must be the normal-weight product at fixed points of the orbit and zero
/// elsewhere.
pub fn verify_closed_orbit_class(
    p: &Polynomial,
    config: &SymmetricPairConfig,
    selector: Option<Component>,
) -> VerificationReport {
    let rho = RestrictionMap::for_config(config);
    let ring = Ring::for_config(config);
    let fixed = weyl_k_fixed_points(config, selector);
    let packed = PackedTerms::new(p);
    let rows = permutations(config.ambient())
        .par_iter()
        .map(|w| {
            let expected = if fixed.binary_search(w).is_ok() {
                normal_weight_product(w, config, selector).expect("w is a fixed point")
            } else {
                Polynomial::zero(ring)
            };
            row(w, &expected, &restrict_packed(p, packed.as_ref(), w, &rho))
        })
        .collect();
    VerificationReport { rows }
}

/// Checks that `p` restricts to zero at every coordinate flag outside the
/// closure of the orbit with parameter `b`.
pub fn verify_vanishing_outside_closure(
    p: &Polynomial,
    b: &Permutation,
    config: &SymmetricPairConfig,
) -> Result<VerificationReport> {
    check_orbit_parameter(b, config)?;
    let rho = RestrictionMap::for_config(config);
    let zero = Polynomial::zero(Ring::for_config(config));
    let packed = PackedTerms::new(p);
    let rows = permutations(config.ambient())
        .par_iter()
        .filter(|w| !fixed_point_in_orbit_closure(w, b, config).expect("b validated"))
        .map(|w| row(w, &zero, &restrict_packed(p, packed.as_ref(), w, &rho)))
        .collect();
    Ok(VerificationReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(family: Family, rank: usize) -> SymmetricPairConfig {
        SymmetricPairConfig::new(family, rank).unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn restriction_maps() {
        let rho = RestrictionMap::for_config(&cfg(Family::OOdd, 2));
        let shown: Vec<String> = rho.images().iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["Y1", "Y2", "0", "-Y2", "-Y1"]);
        let rho = RestrictionMap::for_config(&cfg(Family::Sp, 2));
        let shown: Vec<String> = rho.images().iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["Y1", "Y2", "-Y2", "-Y1"]);
    }

    #[test]
    fn root_system_sizes() {
        assert_eq!(
            RootSystemK::for_config(&cfg(Family::OOdd, 3)).roots().len(),
            18
        );
        assert_eq!(
            RootSystemK::for_config(&cfg(Family::SoEven, 3))
                .roots()
                .len(),
            12
        );
        assert_eq!(
            RootSystemK::for_config(&cfg(Family::Sp, 3)).roots().len(),
            18
        );
    }

    #[test]
    fn normal_weights_o_odd_identity() {
        let config = cfg(Family::OOdd, 1);
        let weights = normal_weights(&Permutation::identity(3), &config, None).unwrap();
        let shown: Vec<String> = weights.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["Y1", "2Y1"]);
        let ring = Ring::for_config(&config);
        assert_eq!(
            normal_weight_product(&Permutation::identity(3), &config, None).unwrap(),
            Polynomial::parse("2y1^2", ring).unwrap()
        );
    }

    #[test]
    fn normal_weights_sp_identity() {
        let config = cfg(Family::Sp, 2);
        let ring = Ring::for_config(&config);
        assert_eq!(
            normal_weight_product(&Permutation::identity(4), &config, None).unwrap(),
            Polynomial::parse("(y1+y2)(y1-y2)", ring).unwrap()
        );
    }

    #[test]
    fn normal_weights_reject_other_points() {
        let config = cfg(Family::SoEven, 2);
        assert!(normal_weights(&perm("2134"), &config, None).is_err());
        assert!(normal_weights(&perm("1324"), &config, Some(Component::Plus)).is_err());
        assert!(normal_weights(&perm("1324"), &config, Some(Component::Minus)).is_ok());
    }

    #[test]
    fn closure_membership_examples() {
        let config = cfg(Family::OOdd, 1);
        let w0 = Permutation::longest(3);
        let id = Permutation::identity(3);
        // every coordinate flag lies in the closure of the dense orbit
        for w in permutations(3) {
            assert!(fixed_point_in_orbit_closure(&w, &id, &config).unwrap());
        }
        assert!(fixed_point_in_orbit_closure(&id, &w0, &config).unwrap());
        assert!(!fixed_point_in_orbit_closure(&perm("132"), &perm("132"), &config).unwrap());
        assert!(fixed_point_in_orbit_closure(&perm("132"), &perm("213"), &config).unwrap());
        assert!(fixed_point_in_orbit_closure(&id, &perm("213"), &config).unwrap());
    }

    #[test]
    fn closure_rejects_bad_parameters() {
        let sp = cfg(Family::Sp, 2);
        assert!(fixed_point_in_orbit_closure(&perm("1234"), &perm("1234"), &sp).is_err());
        let odd = cfg(Family::OOdd, 1);
        assert!(fixed_point_in_orbit_closure(&perm("123"), &perm("231"), &odd).is_err());
    }

    #[test]
    fn corrupted_class_fails() {
        let config = cfg(Family::OOdd, 1);
        let ring = Ring::for_config(&config);
        let good = Polynomial::parse("-2(x1+x2)(x2+x3)", ring).unwrap();
        assert!(verify_closed_orbit_class(&good, &config, None).passed());
        let bad = -good;
        let report = verify_closed_orbit_class(&bad, &config, None);
        assert!(!report.passed());
        assert_eq!(report.len(), 6);
    }

    #[test]
    fn vanishing_examples() {
        let config = cfg(Family::OOdd, 1);
        let ring = Ring::for_config(&config);
        let top = verify_vanishing_outside_closure(
            &Polynomial::one(ring),
            &Permutation::identity(3),
            &config,
        )
        .unwrap();
        assert!(top.is_empty());
        let q = Polynomial::parse("2(x1+x2)", ring).unwrap();
        let report = verify_vanishing_outside_closure(&q, &perm("132"), &config).unwrap();
        assert!(!report.is_empty() && report.passed());

        let sp = cfg(Family::Sp, 2);
        let q = Polynomial::parse("x1+x2", Ring::for_config(&sp)).unwrap();
        let report = verify_vanishing_outside_closure(&q, &perm("3412"), &sp).unwrap();
        assert!(!report.is_empty() && report.passed());
    }
}
