//! Exact sparse polynomials in `x_1..x_N, y_1..y_n` over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors ordered graded
//! lexicographically with `x_1 > ... > x_N > y_1 > ... > y_n`; zero
//! coefficients are never stored, so structural equality is polynomial
//! equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{check_simple_index, Permutation, SymmetricPairConfig};
use crate::error::{Error, Result};
use crate::localization::RestrictionMap;

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Variable counts: `nx` x-variables followed by `ny` y-variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    pub nx: usize,
    pub ny: usize,
}

impl Ring {
    pub fn new(nx: usize, ny: usize) -> Self {
        Ring { nx, ny }
    }

    pub fn for_config(config: &SymmetricPairConfig) -> Self {
        Ring {
            nx: config.ambient(),
            ny: config.rank,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nx + self.ny
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x1..x{}, y1..y{}]", self.nx, self.ny)
    }
}

/// Exponent vector, x slots first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(ring: Ring) -> Self {
        Monomial(vec![0; ring.nvars()])
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// An integer linear form in `Y_1..Y_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinearWeight(pub Vec<i64>);

impl LinearWeight {
    pub fn zero(rank: usize) -> Self {
        LinearWeight(vec![0; rank])
    }

    /// `coeff * Y_k`, 1-based.
    pub fn basis(rank: usize, k: usize, coeff: i64) -> Self {
        let mut w = Self::zero(rank);
        w.0[k - 1] = coeff;
        w
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn to_polynomial(&self, ring: Ring) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        for (k, &c) in self.0.iter().enumerate() {
            if c != 0 {
                p = &p + &Polynomial::y(ring, k + 1).scale(&rational(c));
            }
        }
        p
    }
}

impl Add for &LinearWeight {
    type Output = LinearWeight;
    fn add(self, rhs: &LinearWeight) -> LinearWeight {
        LinearWeight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LinearWeight {
    type Output = LinearWeight;
    fn sub(self, rhs: &LinearWeight) -> LinearWeight {
        LinearWeight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LinearWeight {
    type Output = LinearWeight;
    fn neg(self) -> LinearWeight {
        LinearWeight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LinearWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
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
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}Y{}", k + 1)?;
            } else {
                write!(f, "{sign}{mag}Y{}", k + 1)?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: Ring) -> Self {
        Polynomial {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: Ring, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring), c);
        }
        p
    }

    pub fn integer(ring: Ring, c: i64) -> Self {
        Self::constant(ring, rational(c))
    }

    /// The variable `x_i`, 1-based.
    pub fn x(ring: Ring, i: usize) -> Self {
        assert!(i >= 1 && i <= ring.nx, "x{i} outside {ring}");
        Self::variable(ring, i - 1)
    }

    /// The variable `y_i`, 1-based.
    pub fn y(ring: Ring, i: usize) -> Self {
        assert!(i >= 1 && i <= ring.ny, "y{i} outside {ring}");
        Self::variable(ring, ring.nx + i - 1)
    }

    fn variable(ring: Ring, slot: usize) -> Self {
        let mut m = Monomial::one(ring);
        m.0[slot] = 1;
        let mut p = Self::zero(ring);
        p.terms.insert(m, Rational::one());
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, merging
    /// repeated monomials.
    pub fn from_terms<I>(ring: Ring, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Vec<u16>)>,
    {
        let mut p = Self::zero(ring);
        for (c, exps) in terms {
            if exps.len() != ring.nvars() {
                return Err(Error::AmbientMismatch {
                    left: ring.to_string(),
                    right: format!("exponent vector of length {}", exps.len()),
                });
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    /// Product of `x_a + x_b + ...` over the listed 1-based indices.
    pub fn x_sum(ring: Ring, indices: &[usize]) -> Self {
        indices
            .iter()
            .fold(Self::zero(ring), |acc, &i| &acc + &Self::x(ring, i))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.degree() == 0 && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the leading one down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.iter().next_back().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn has_x(&self) -> bool {
        self.terms
            .keys()
            .any(|m| m.0[..self.ring.nx].iter().any(|&e| e > 0))
    }

    pub fn has_y(&self) -> bool {
        self.terms
            .keys()
            .any(|m| m.0[self.ring.nx..].iter().any(|&e| e > 0))
    }

    /// The y-parts of the exponent vectors occurring in `self`.
    pub fn y_patterns(&self) -> Vec<Vec<u16>> {
        let mut out: Vec<Vec<u16>> = self
            .terms
            .keys()
            .map(|m| m.0[self.ring.nx..].to_vec())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let mut out = Polynomial::zero(self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut out = Polynomial::one(self.ring);
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    pub fn product<'a, I>(ring: Ring, factors: I) -> Polynomial
    where
        I: IntoIterator<Item = &'a Polynomial>,
    {
        factors
            .into_iter()
            .fold(Polynomial::one(ring), |acc, f| &acc * f)
    }

    /// Exchanges `x_i` and `x_{i+1}`; y exponents are untouched.
    pub fn swap_x(&self, i: usize) -> Result<Polynomial> {
        check_simple_index(self.ring.nx, i)?;
        let mut out = Polynomial::zero(self.ring);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.swap(i - 1, i);
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    pub fn is_symmetric_in(&self, i: usize) -> Result<bool> {
        Ok(self.swap_x(i)? == *self)
    }

    /// `∂_i(p) = (p - s_i p) / (x_i - x_{i+1})`, with the division carried
    /// out explicitly and its remainder checked.
    pub fn divided_difference(&self, i: usize) -> Result<Polynomial> {
        let numerator = self.checked_sub(&self.swap_x(i)?)?;
        let divisor = &Polynomial::x(self.ring, i) - &Polynomial::x(self.ring, i + 1);
        numerator.exact_div_linear(&divisor)
    }

    /// Exact division by a homogeneous linear polynomial, by synthetic
    /// division in one of its variables. Fails if the remainder is nonzero.
    pub fn exact_div_linear(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.same_ring(divisor)?;
        let inexact = || Error::InexactDivision {
            divisor: divisor.to_string(),
        };
        if !divisor.is_homogeneous() || divisor.total_degree() != Some(1) {
            return Err(inexact());
        }
        // pivot on the leading variable of the divisor
        let (pivot_mono, pivot_coeff) = divisor.terms.iter().next_back().unwrap();
        let slot = pivot_mono.0.iter().position(|&e| e == 1).unwrap();
        let mut rest = divisor.clone();
        rest.terms.remove(pivot_mono);
        let inv = pivot_coeff.recip();

        // self = Σ_k p_k v^k with p_k free of v
        let mut slices: BTreeMap<u16, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.0[slot];
            let mut e = m.0.clone();
            e[slot] = 0;
            slices
                .entry(k)
                .or_insert_with(|| Polynomial::zero(self.ring))
                .terms
                .insert(Monomial(e), c.clone());
        }
        let Some(&top) = slices.keys().next_back() else {
            return Ok(Polynomial::zero(self.ring));
        };
        if top == 0 {
            return if self.is_zero() {
                Ok(self.clone())
            } else {
                Err(inexact())
            };
        }
        // q_{k-1} = (p_k - rest * q_k) / c, descending from k = top
        let mut quotient = Polynomial::zero(self.ring);
        let mut carry = Polynomial::zero(self.ring);
        for k in (1..=top).rev() {
            let p_k = slices
                .remove(&k)
                .unwrap_or_else(|| Polynomial::zero(self.ring));
            let q = (&p_k - &(&rest * &carry)).scale(&inv);
            for (m, c) in &q.terms {
                let mut e = m.0.clone();
                e[slot] = k - 1;
                quotient.terms.insert(Monomial(e), c.clone());
            }
            carry = q;
        }
        let p_0 = slices
            .remove(&0)
            .unwrap_or_else(|| Polynomial::zero(self.ring));
        let remainder = &p_0 - &(&rest * &carry);
        if !remainder.is_zero() {
            return Err(inexact());
        }
        Ok(quotient)
    }

    /// Replaces every `x_i` by the linear form `images[i-1]` in the y's.
    pub fn substitute_x(&self, images: &[LinearWeight]) -> Polynomial {
        let ring = self.ring;
        assert_eq!(images.len(), ring.nx, "one image per x variable");
        let simple = images
            .iter()
            .all(|w| w.0.iter().filter(|&&c| c != 0).count() <= 1);
        let mut out = Polynomial::zero(ring);
        if simple {
            // each x maps to c*Y_k or 0, so each term maps to a single term
            let images: Vec<Option<(usize, i64)>> = images
                .iter()
                .map(|w| w.0.iter().position(|&c| c != 0).map(|k| (k, w.0[k])))
                .collect();
            'terms: for (m, c) in &self.terms {
                let mut e = vec![0u16; ring.nvars()];
                e[ring.nx..].copy_from_slice(&m.0[ring.nx..]);
                let mut factor: i64 = 1;
                for (slot, &exp) in m.0[..ring.nx].iter().enumerate() {
                    if exp == 0 {
                        continue;
                    }
                    match images[slot] {
                        None => continue 'terms,
                        Some((k, coeff)) => {
                            e[ring.nx + k] += exp;
                            factor *= coeff.pow(exp as u32);
                        }
                    }
                }
                out.add_term(Monomial(e), c * rational(factor));
            }
            return out;
        }
        let linear: Vec<Polynomial> = images.iter().map(|w| w.to_polynomial(ring)).collect();
        for (m, c) in &self.terms {
            let mut e = vec![0u16; ring.nvars()];
            e[ring.nx..].copy_from_slice(&m.0[ring.nx..]);
            let mut term = Polynomial::zero(ring);
            term.terms.insert(Monomial(e), c.clone());
            for (slot, &exp) in m.0[..ring.nx].iter().enumerate() {
                if exp > 0 {
                    term = &term * &linear[slot].pow(exp as u32);
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Evaluates at a rational point given for every variable (x's, then y's).
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.nvars());
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= v;
                }
            }
            total += t;
        }
        total
    }

    /// Greatest common divisor of the (integral) coefficients, carrying
    /// the sign of the leading coefficient. `None` if zero or non-integral.
    pub fn integer_content(&self) -> Option<BigInt> {
        if self.is_zero() || !self.is_integral() {
            return None;
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num_integer::Integer::gcd(&g, c.numer());
        }
        if self.leading_coefficient().unwrap().is_negative() {
            g = -g;
        }
        Some(g)
    }

    /// Parses the text syntax: rational constants, `x1..xN`, `y1..yn`,
    /// `+ - * / ^`, parentheses and implicit multiplication
    /// (`-2(x1+x2)(x2+x3)`).
    pub fn parse(text: &str, ring: Ring) -> Result<Polynomial> {
        Parser::new(text, ring).parse_all()
    }

    /// Expanded JSON form: a list of `{coefficient, exponents}` records.
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms()
            .map(|(m, c)| TermRecord {
                coefficient: c.to_string(),
                exponents: m.0.clone(),
            })
            .collect()
    }

    pub fn from_records(ring: Ring, records: &[TermRecord]) -> Result<Polynomial> {
        let terms = records
            .iter()
            .map(|r| {
                let c: Rational = r
                    .coefficient
                    .parse()
                    .map_err(|_| Error::parse(0, format!("bad coefficient {:?}", r.coefficient)))?;
                Ok((c, r.exponents.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Polynomial::from_terms(ring, terms)
    }

    pub(crate) fn write_monomial(&self, m: &Monomial, out: &mut String) {
        let mut first = true;
        for (slot, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            if slot < self.ring.nx {
                out.push_str(&format!("x{}", slot + 1));
            } else {
                out.push_str(&format!("y{}", slot - self.ring.nx + 1));
            }
            if e > 1 {
                out.push_str(&format!("^{e}"));
            }
        }
    }
}

/// Serialized term of an expanded polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coefficient: String,
    pub exponents: Vec<u16>,
}

/// Restriction to the torus-fixed point `w`: `x_i ↦ ρ(X_{w(i)})`, `y_i ↦ Y_i`.
/// The result has no x's; `Y_i` is written as `y_i`.
pub fn restrict_at_fixed_point(
    p: &Polynomial,
    w: &Permutation,
    config: &SymmetricPairConfig,
) -> Polynomial {
    let rho = RestrictionMap::for_config(config);
    restrict_with(p, w, &rho)
}

pub(crate) fn restrict_with(p: &Polynomial, w: &Permutation, rho: &RestrictionMap) -> Polynomial {
    assert_eq!(
        w.len(),
        p.ring().nx,
        "fixed point outside the ambient group"
    );
    let images: Vec<LinearWeight> = (1..=w.len())
        .map(|i| rho.image(w.apply(i)).clone())
        .collect();
    p.substitute_x(&images)
}

/// A polynomial prepared for restriction to many fixed points: integer
/// coefficients and the y-exponents packed eight bits per variable.
pub(crate) struct PackedTerms {
    ring: Ring,
    terms: Vec<(i64, Vec<u16>, u64)>,
}

impl PackedTerms {
    /// `None` if the coefficients are not machine integers or the
    /// exponents do not fit the packing.
    pub(crate) fn new(p: &Polynomial) -> Option<Self> {
        let ring = p.ring;
        if ring.ny > 8 || p.total_degree().unwrap_or(0) > u8::MAX as u32 {
            return None;
        }
        let mut terms = Vec::with_capacity(p.terms.len());
        for (m, c) in &p.terms {
            if !c.is_integer() {
                return None;
            }
            let coeff = c.numer().to_i64()?;
            let packed = m.0[ring.nx..]
                .iter()
                .enumerate()
                .fold(0u64, |acc, (k, &e)| acc + (u64::from(e) << (8 * k)));
            terms.push((coeff, m.0[..ring.nx].to_vec(), packed));
        }
        Some(PackedTerms { ring, terms })
    }

    /// Restriction along images that are all `±Y_k` or `0`, as sorted
    /// `(packed y-exponents, coefficient)` pairs; `None` for other images.
    fn restrict(&self, images: &[&LinearWeight]) -> Option<Vec<(u64, i128)>> {
        let mut simple = Vec::with_capacity(images.len());
        for w in images {
            let mut nonzero = w.0.iter().enumerate().filter(|(_, &c)| c != 0);
            simple.push(match (nonzero.next(), nonzero.next()) {
                (None, _) => None,
                (Some((k, &c)), None) if c.abs() == 1 => Some((k, c < 0)),
                _ => return None,
            });
        }
        let mut acc: Vec<(u64, i128)> = Vec::with_capacity(self.terms.len());
        'terms: for (c, xs, ys) in &self.terms {
            let mut packed = *ys;
            let mut negative = false;
            for (slot, &e) in xs.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let Some((k, minus)) = simple[slot] else {
                    continue 'terms;
                };
                packed += u64::from(e) << (8 * k);
                negative ^= minus && e % 2 == 1;
            }
            acc.push((
                packed,
                if negative {
                    -i128::from(*c)
                } else {
                    i128::from(*c)
                },
            ));
        }
        acc.sort_unstable_by_key(|t| t.0);
        let mut merged: Vec<(u64, i128)> = Vec::with_capacity(acc.len());
        for (key, c) in acc {
            match merged.last_mut() {
                Some(last) if last.0 == key => last.1 += c,
                _ => merged.push((key, c)),
            }
        }
        merged.retain(|t| t.1 != 0);
        Some(merged)
    }

    fn unpack(&self, terms: &[(u64, i128)]) -> Polynomial {
        let ring = self.ring;
        let mut out = Polynomial::zero(ring);
        for &(key, c) in terms {
            let mut e = vec![0u16; ring.nvars()];
            for k in 0..ring.ny {
                e[ring.nx + k] = ((key >> (8 * k)) & 0xff) as u16;
            }
            out.terms
                .insert(Monomial(e), Rational::from_integer(BigInt::from(c)));
        }
        out
    }
}

/// [`restrict_with`], through `packed` when it applies.
pub(crate) fn restrict_packed(
    p: &Polynomial,
    packed: Option<&PackedTerms>,
    w: &Permutation,
    rho: &RestrictionMap,
) -> Polynomial {
    if let Some(packed) = packed {
        let images: Vec<&LinearWeight> = (1..=w.len()).map(|i| rho.image(w.apply(i))).collect();
        if let Some(terms) = packed.restrict(&images) {
            return packed.unpack(&terms);
        }
    }
    restrict_with(p, w, rho)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if m.degree() == 0 {
                out.push_str(&mag.to_string());
                continue;
            }
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            self.write_monomial(m, &mut out);
        }
        f.write_str(&out)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;

            /// Panics if the operands live in different rings.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial ring mismatch")
            }
        }

        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    X(usize),
    Y(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    ring: Ring,
    error: Option<Error>,
}

impl Parser {
    fn new(text: &str, ring: Ring) -> Self {
        let mut tokens = Vec::new();
        let mut error = None;
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut k = 0;
        while k < chars.len() {
            let (at, c) = chars[k];
            k += 1;
            let tok = match c {
                c if c.is_whitespace() => continue,
                '+' => Token::Plus,
                '-' | '−' => Token::Minus,
                '*' | '·' => Token::Star,
                '/' => Token::Slash,
                '^' => Token::Caret,
                '(' => Token::Open,
                ')' => Token::Close,
                'x' | 'y' | 'X' | 'Y' => {
                    if k < chars.len() && chars[k].1 == '_' {
                        k += 1;
                    }
                    let start = k;
                    while k < chars.len() && chars[k].1.is_ascii_digit() {
                        k += 1;
                    }
                    let digits: String = chars[start..k].iter().map(|&(_, d)| d).collect();
                    match digits.parse::<usize>() {
                        Ok(i) if c == 'x' || c == 'X' => Token::X(i),
                        Ok(i) => Token::Y(i),
                        Err(_) => {
                            error.get_or_insert(Error::parse(at, "variable without index"));
                            break;
                        }
                    }
                }
                d if d.is_ascii_digit() => {
                    let start = k - 1;
                    while k < chars.len() && chars[k].1.is_ascii_digit() {
                        k += 1;
                    }
                    let digits: String = chars[start..k].iter().map(|&(_, d)| d).collect();
                    Token::Num(digits.parse().unwrap())
                }
                other => {
                    error.get_or_insert(Error::parse(at, format!("unexpected {other:?}")));
                    break;
                }
            };
            tokens.push((at, tok));
        }
        Parser {
            tokens,
            pos: 0,
            ring,
            error,
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(usize::MAX, |(o, _)| *o)
    }

    fn parse_all(mut self) -> Result<Polynomial> {
        if let Some(e) = self.error.take() {
            return Err(e);
        }
        if self.tokens.is_empty() {
            return Err(Error::parse(0, "empty polynomial"));
        }
        let p = self.expr()?;
        if self.pos != self.tokens.len() {
            return Err(Error::parse(self.offset(), "trailing input"));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        match self.peek() {
            Some(Token::Minus) => {
                negate = true;
                self.pos += 1;
            }
            Some(Token::Plus) => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let at = self.offset();
                    match self.tokens.get(self.pos) {
                        Some((_, Token::Num(d))) if !d.is_zero() => {
                            let d = d.clone();
                            self.pos += 1;
                            acc = acc.scale(&Rational::from_integer(d).recip());
                        }
                        _ => return Err(Error::parse(at, "expected nonzero integer divisor")),
                    }
                }
                Some(Token::Num(_) | Token::X(_) | Token::Y(_) | Token::Open) => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            let at = self.offset();
            match self.tokens.get(self.pos) {
                Some((_, Token::Num(e))) => {
                    let e = e
                        .to_u32()
                        .ok_or_else(|| Error::parse(at, "exponent too large"))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(Error::parse(at, "expected exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let at = self.offset();
        let Some((_, tok)) = self.tokens.get(self.pos).cloned() else {
            return Err(Error::parse(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Token::Num(n) => Ok(Polynomial::constant(self.ring, Rational::from_integer(n))),
            Token::X(i) if i >= 1 && i <= self.ring.nx => Ok(Polynomial::x(self.ring, i)),
            Token::Y(i) if i >= 1 && i <= self.ring.ny => Ok(Polynomial::y(self.ring, i)),
            Token::X(i) | Token::Y(i) => {
                Err(Error::parse(at, format!("variable index {i} out of range")))
            }
            Token::Open => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::Close) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(Error::parse(self.offset(), "expected ')'")),
                }
            }
            Token::Minus => Ok(-self.factor()?),
            _ => Err(Error::parse(at, "unexpected token")),
        }
    }
}
