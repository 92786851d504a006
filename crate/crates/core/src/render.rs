//! Display-time factoring and notation for polynomials.
//!
//! Factoring is a heuristic for readability: the content and any factors of
//! the form `x_a + x_b + ...` (at most four summands) are pulled out, the
//! rest is printed expanded. Equality is only ever decided on expansions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::polyring::{Monomial, Polynomial, Rational};

/// How variables, products and coefficients are spelled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Notation {
    /// `x1`, `y2`.
    Plain,
    /// `x_{1}`, `y_{2}`.
    Latex,
    /// `c1(F_2/F_1)` for `x_2`, `e` for `y_1 ... y_n`.
    Chern,
    /// `c_1(F_{2}/F_{1})`, `e`.
    ChernLatex,
}

impl Notation {
    fn is_latex(self) -> bool {
        matches!(self, Notation::Latex | Notation::ChernLatex)
    }

    fn x(self, i: usize) -> String {
        match self {
            Notation::Plain => format!("x{i}"),
            Notation::Latex => format!("x_{{{i}}}"),
            Notation::Chern if i == 1 => "c1(F_1)".to_string(),
            Notation::Chern => format!("c1(F_{i}/F_{})", i - 1),
            Notation::ChernLatex if i == 1 => "c_1(F_{1})".to_string(),
            Notation::ChernLatex => format!("c_1(F_{{{i}}}/F_{{{}}})", i - 1),
        }
    }

    fn y(self, i: usize) -> String {
        if self.is_latex() {
            format!("y_{{{i}}}")
        } else {
            format!("y{i}")
        }
    }

    fn power(self, base: String, e: u16) -> String {
        match e {
            1 => base,
            _ if self.is_latex() => format!("{base}^{{{e}}}"),
            _ => format!("{base}^{e}"),
        }
    }

    fn number(self, c: &Rational) -> String {
        if self.is_latex() && !c.is_integer() {
            format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
        } else {
            c.to_string()
        }
    }

    fn chern(self) -> bool {
        matches!(self, Notation::Chern | Notation::ChernLatex)
    }
}

fn monomial_factors(m: &Monomial, nx: usize, notation: Notation) -> Vec<String> {
    let exps = m.exponents();
    let mut parts = Vec::new();
    let ys = &exps[nx..];
    let euler = notation.chern() && !ys.is_empty() && ys.iter().all(|&e| e == 1);
    for (slot, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if slot < nx {
            parts.push(notation.power(notation.x(slot + 1), e));
        } else if !euler {
            parts.push(notation.power(notation.y(slot - nx + 1), e));
        }
    }
    if euler {
        parts.push("e".to_string());
    }
    parts
}

/// Renders the expanded form. `compact` juxtaposes factors and drops the
/// spaces around signs (`2x1x2+y1`); otherwise `2*x1*x2 + y1`.
pub fn render_expanded(p: &Polynomial, notation: Notation, compact: bool) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let nx = p.ring().nx;
    let join = if compact || notation.is_latex() {
        ""
    } else {
        "*"
    };
    let join = if notation == Notation::ChernLatex {
        " "
    } else {
        join
    };
    let mut out = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        let negative = c.is_negative();
        match (k, compact) {
            (0, _) if negative => out.push('-'),
            (0, _) => {}
            (_, true) => out.push(if negative { '-' } else { '+' }),
            (_, false) => out.push_str(if negative { " - " } else { " + " }),
        }
        let mag = c.abs();
        let factors = monomial_factors(m, nx, notation);
        if factors.is_empty() {
            out.push_str(&notation.number(&mag));
            continue;
        }
        if !mag.is_one() {
            out.push_str(&notation.number(&mag));
            out.push_str(join);
        }
        out.push_str(&factors.join(join));
    }
    out
}

/// `content * ∏ factor^exponent`, with the factors in the order found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: Rational,
    pub factors: Vec<(Polynomial, u32)>,
}

fn signed_content(p: &Polynomial) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (_, c) in p.terms() {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    let content = Rational::new(num, den);
    if p.leading_coefficient().is_some_and(|c| c.is_negative()) {
        -content
    } else {
        content
    }
}

fn index_subsets(nx: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, nx: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..=nx {
            cur.push(i);
            go(i + 1, nx, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, nx, size, &mut Vec::new(), &mut out);
    out
}

pub fn factor(p: &Polynomial) -> Factorization {
    let ring = p.ring();
    if p.is_zero() {
        return Factorization {
            content: Rational::zero(),
            factors: Vec::new(),
        };
    }
    let content = signed_content(p);
    let mut rest = p.scale(&content.recip());
    let mut factors: Vec<(Polynomial, u32)> = Vec::new();
    for size in 1..=4.min(ring.nx) {
        for subset in index_subsets(ring.nx, size) {
            if rest.total_degree() == Some(0) {
                break;
            }
            let linear = Polynomial::x_sum(ring, &subset);
            let mut power = 0;
            while let Ok(q) = rest.exact_div_linear(&linear) {
                rest = q;
                power += 1;
            }
            if power > 0 {
                factors.push((linear, power));
            }
        }
    }
    if !rest.is_one() {
        factors.push((rest, 1));
    }
    Factorization { content, factors }
}

impl Factorization {
    pub fn expand(&self) -> Polynomial {
        let ring = match self.factors.first() {
            Some((f, _)) => f.ring(),
            None => {
                return Polynomial::constant(crate::polyring::Ring::new(0, 0), self.content.clone())
            }
        };
        self.factors.iter().fold(
            Polynomial::constant(ring, self.content.clone()),
            |acc, (f, e)| &acc * &f.pow(*e),
        )
    }

    pub fn render(&self, notation: Notation) -> String {
        if self.content.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        if self.factors.is_empty() {
            if self.content.is_negative() {
                out.push('-');
            }
            out.push_str(&notation.number(&self.content.abs()));
            return out;
        }
        if self.content == -Rational::one() {
            out.push('-');
        } else if !self.content.is_one() {
            out.push_str(&notation.number(&self.content));
        }
        if self.content.is_one() && self.factors.len() == 1 && self.factors[0].1 == 1 {
            return render_expanded(&self.factors[0].0, notation, true);
        }
        let separator = if notation == Notation::ChernLatex {
            " "
        } else {
            ""
        };
        let mut first = true;
        for (f, e) in &self.factors {
            let single = f.num_terms() == 1;
            let body = render_expanded(f, notation, true);
            let body = if single { body } else { format!("({body})") };
            if !first || !(out.is_empty() || out == "-") {
                out.push_str(separator);
            }
            first = false;
            out.push_str(&notation.power(body, *e as u16));
        }
        out
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Plain))
    }
}
