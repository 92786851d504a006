//! Explicit classes of the closed orbits, the seeds of the recursion.

use crate::combinatorics::{
    weyl_k_fixed_points, Component, Family, Permutation, SymmetricPairConfig,
};
use crate::polyring::{Polynomial, Ring};
use crate::weak_order::OrbitParameter;

/// A closed orbit with its class and torus-fixed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedOrbitDatum {
    pub parameter: OrbitParameter,
    pub class: Polynomial,
    pub fixed_points: Vec<Permutation>,
}

fn sum2(ring: Ring, a: usize, b: usize) -> Polynomial {
    Polynomial::x_sum(ring, &[a, b])
}

/// `∏_{i<j<=n} (x_i + x_j)(x_i + x_{m-j})`, shared by every family.
fn pair_product(ring: Ring, n: usize, m: usize) -> Polynomial {
    let mut p = Polynomial::one(ring);
    for i in 1..=n {
        for j in i + 1..=n {
            p = &p * &(&sum2(ring, i, j) * &sum2(ring, i, m - j));
        }
    }
    p
}

fn x_monomial(ring: Ring, n: usize) -> Polynomial {
    (1..=n).fold(Polynomial::one(ring), |acc, i| {
        &acc * &Polynomial::x(ring, i)
    })
}

fn y_monomial(ring: Ring, n: usize) -> Polynomial {
    (1..=n).fold(Polynomial::one(ring), |acc, i| {
        &acc * &Polynomial::y(ring, i)
    })
}

fn odd_class(ring: Ring, n: usize) -> Polynomial {
    let mid = n + 1;
    let mut p = Polynomial::integer(ring, (-2i64).pow(n as u32));
    for i in 1..=n {
        p = &p * &(&sum2(ring, i, mid) * &sum2(ring, mid, 2 * n + 2 - i));
    }
    &p * &pair_product(ring, n, 2 * n + 2)
}

/// The closed-orbit classes of the family: one seed for `OOdd`, `OEven`
/// and `Sp`, two (`+` and `-`) for `SoEven`.
pub fn closed_orbit_classes(config: &SymmetricPairConfig) -> Vec<ClosedOrbitDatum> {
    let n = config.rank;
    let big = config.ambient();
    let ring = Ring::for_config(config);
    let w0 = Permutation::longest(big);
    let datum = |component: Option<Component>, class: Polynomial| ClosedOrbitDatum {
        parameter: OrbitParameter::new_unchecked(w0.clone(), component),
        class,
        fixed_points: weyl_k_fixed_points(config, component),
    };
    let even_scale = Polynomial::integer(ring, 1i64 << (n - 1));
    let signed = |sign: i64| {
        let inner =
            &x_monomial(ring, n) + &y_monomial(ring, n).scale(&crate::polyring::rational(sign));
        &(&even_scale * &inner) * &pair_product(ring, n, 2 * n + 1)
    };
    match config.family {
        Family::OOdd => vec![datum(None, odd_class(ring, n))],
        Family::OEven => {
            let class = &signed(1) + &signed(-1);
            vec![datum(None, class)]
        }
        Family::SoEven => vec![
            datum(Some(Component::Plus), signed(1)),
            datum(Some(Component::Minus), signed(-1)),
        ],
        Family::Sp => vec![datum(None, pair_product(ring, n, 2 * n + 1))],
    }
}

/// The other `O_ODD` representative,
/// `(-2)^n ∏ (x_{n+1} + y_i)(x_{n+1} - y_i) ∏_{i<j} (x_i + x_j)(x_i + x_{2n+2-j})`,
/// which differs from the canonical one by an element of the kernel of
/// every restriction.
pub fn alternate_odd_class(rank: usize) -> Polynomial {
    let ring = Ring::new(2 * rank + 1, rank);
    let mid = Polynomial::x(ring, rank + 1);
    let mut p = Polynomial::integer(ring, (-2i64).pow(rank as u32));
    for i in 1..=rank {
        let y = Polynomial::y(ring, i);
        p = &p * &(&(&mid + &y) * &(&mid - &y));
    }
    &p * &pair_product(ring, rank, 2 * rank + 2)
}
