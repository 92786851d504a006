//! Permutations, signed permutations and involutions.
//!
//! Permutations are kept in one-line notation with 1-based values: the word
//! `[2, 3, 1, 4]` is the permutation `2314` sending `1 -> 2`, `2 -> 3`,
//! `3 -> 1` and `4 -> 4`. Cycle notation exists only for display and parsing.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{1, ..., N}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let len = word.len();
        let mut seen = vec![false; len + 1];
        for &v in &word {
            if v == 0 || v > len || seen[v] {
                return Err(Error::InvalidPermutation { word, len });
            }
            seen[v] = true;
        }
        Ok(Permutation { word })
    }

    pub fn identity(len: usize) -> Self {
        Permutation {
            word: (1..=len).collect(),
        }
    }

    /// The longest element `w_0 = N (N-1) ... 1`.
    pub fn longest(len: usize) -> Self {
        Permutation {
            word: (1..=len).rev().collect(),
        }
    }

    /// The simple transposition `s_i = (i, i+1)` in `S_len`.
    pub fn simple(len: usize, i: usize) -> Result<Self> {
        check_simple_index(len, i)?;
        let mut p = Self::identity(len);
        p.word.swap(i - 1, i);
        Ok(p)
    }

    /// Builds a permutation from disjoint cycles; unlisted letters are fixed.
    pub fn from_cycles(len: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut word: Vec<usize> = (1..=len).collect();
        let mut touched = vec![false; len + 1];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a == 0 || a > len || b == 0 || b > len || touched[a] {
                    return Err(Error::InvalidPermutation { word, len });
                }
                touched[a] = true;
                word[a - 1] = b;
            }
        }
        Self::new(word)
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Image of the 1-based letter `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { word: inv }
    }

    /// The composite `self ∘ other`, i.e. `i -> self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(
            self.len(),
            other.len(),
            "composing permutations of different sizes"
        );
        Permutation {
            word: other.word.iter().map(|&v| self.word[v - 1]).collect(),
        }
    }

    /// `s_i ∘ self`: exchanges the values `i` and `i+1`.
    pub fn left_mul_simple(&self, i: usize) -> Self {
        let word = self
            .word
            .iter()
            .map(|&v| match v {
                v if v == i => i + 1,
                v if v == i + 1 => i,
                v => v,
            })
            .collect();
        Permutation { word }
    }

    /// `self ∘ s_i`: exchanges the entries at positions `i` and `i+1`.
    pub fn right_mul_simple(&self, i: usize) -> Self {
        let mut word = self.word.clone();
        word.swap(i - 1, i);
        Permutation { word }
    }

    /// `s_i ∘ self ∘ s_i`.
    pub fn conjugate_simple(&self, i: usize) -> Self {
        self.left_mul_simple(i).right_mul_simple(i)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.word;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn is_involution(&self) -> bool {
        self.word
            .iter()
            .enumerate()
            .all(|(i, &v)| self.word[v - 1] == i + 1)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&i| self.apply(i) == i).collect()
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v != i + 1)
    }

    /// Nontrivial cycles, each starting at its smallest letter, ordered by
    /// that letter.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len() + 1];
        let mut out = Vec::new();
        for start in 1..=self.len() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.apply(cur);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle notation, `id` for the identity.
    pub fn cycle_notation(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "id".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("({})", inner.join(","))
            })
            .collect()
    }

    /// One-line notation. Words of size at most 9 are written without
    /// delimiters, longer ones space-separated.
    pub fn one_line(&self) -> String {
        if self.len() <= 9 {
            self.word.iter().map(|v| v.to_string()).collect()
        } else {
            let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
            parts.join(" ")
        }
    }

    /// Parses one-line (`2314`, or space separated) or cycle (`(1,2,3)`, `id`)
    /// notation. Cycle notation needs the ambient size `len`.
    pub fn parse(text: &str, len: usize) -> Result<Self> {
        let text = text.trim();
        if text == "id" || text == "1" && len == 1 {
            return Ok(Self::identity(len));
        }
        if text.starts_with('(') {
            let cycles = parse_cycles(text)?;
            return Self::from_cycles(len, &cycles);
        }
        let p: Permutation = text.parse()?;
        if p.len() != len {
            return Err(Error::RankMismatch {
                expected: len,
                actual: p.len(),
            });
        }
        Ok(p)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.one_line())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let word: Vec<usize> = if s.contains(char::is_whitespace) || s.contains(',') {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::parse(0, format!("bad letter {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .enumerate()
                .map(|(k, c)| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::parse(k, format!("unexpected {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(word)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(word: Vec<usize>) -> Result<Self> {
        Permutation::new(word)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.word
    }
}

fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = text;
    let mut offset = 0;
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| Error::parse(offset, "expected '('"))?;
        if !rest[..open].trim().is_empty() {
            return Err(Error::parse(offset, "junk between cycles"));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::parse(offset + open, "unclosed cycle"))?;
        let cycle = rest[open + 1..close]
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(offset + open, format!("bad letter {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        cycles.push(cycle);
        offset += close + 1;
        rest = &rest[close + 1..];
        if rest.trim().is_empty() {
            break;
        }
    }
    Ok(cycles)
}

pub(crate) fn check_simple_index(len: usize, i: usize) -> Result<()> {
    if i == 0 || i >= len {
        Err(Error::IndexOutOfRange {
            index: i,
            max: len.saturating_sub(1),
        })
    } else {
        Ok(())
    }
}

/// A signed permutation of `{1, ..., n}`: entry `k` is `±π(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPermutation {
    word: Vec<i64>,
}

impl SignedPermutation {
    pub fn new(word: Vec<i64>) -> Result<Self> {
        let len = word.len();
        let mut seen = vec![false; len + 1];
        for &v in &word {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > len || seen[a] {
                return Err(Error::InvalidSignedPermutation { word, len });
            }
            seen[a] = true;
        }
        Ok(SignedPermutation { word })
    }

    pub fn identity(rank: usize) -> Self {
        SignedPermutation {
            word: (1..=rank as i64).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[i64] {
        &self.word
    }

    pub fn sign_changes(&self) -> usize {
        self.word.iter().filter(|&&v| v < 0).count()
    }

    pub fn absolute_value(&self) -> Permutation {
        Permutation {
            word: self
                .word
                .iter()
                .map(|v| v.unsigned_abs() as usize)
                .collect(),
        }
    }

    /// Image in `S_N` under `σ(i) = π(i)` or `N+1-|π(i)|`, extended by
    /// `σ(N+1-i) = N+1-σ(i)`; an odd ambient fixes the middle letter.
    pub fn embed(&self, config: &SymmetricPairConfig) -> Result<Permutation> {
        if self.rank() != config.rank {
            return Err(Error::RankMismatch {
                expected: config.rank,
                actual: self.rank(),
            });
        }
        let big = config.ambient();
        let mut word = vec![0; big];
        for (k, &v) in self.word.iter().enumerate() {
            let image = if v > 0 {
                v as usize
            } else {
                big + 1 - v.unsigned_abs() as usize
            };
            word[k] = image;
            word[big - 1 - k] = big + 1 - image;
        }
        if big % 2 == 1 {
            word[config.rank] = config.rank + 1;
        }
        Permutation::new(word)
    }

    /// All `2^n n!` signed permutations, ordered lexicographically by
    /// their embedding in `S_{2n}`.
    pub fn all(rank: usize) -> Vec<SignedPermutation> {
        let mut out = Vec::new();
        for p in permutations(rank) {
            for mask in 0u64..(1 << rank) {
                let word = p
                    .word
                    .iter()
                    .enumerate()
                    .map(|(k, &v)| {
                        if mask >> k & 1 == 1 {
                            -(v as i64)
                        } else {
                            v as i64
                        }
                    })
                    .collect();
                out.push(SignedPermutation { word });
            }
        }
        out
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.rank() > 9 { " " } else { "" };
        let parts: Vec<String> = self
            .word
            .iter()
            .map(|&v| {
                if v < 0 {
                    format!("{}-", -v)
                } else {
                    v.to_string()
                }
            })
            .collect();
        f.write_str(&parts.join(sep))
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    /// Accepts `13-2-` or `1 3- 2-`; a trailing `-` negates the entry.
    fn from_str(s: &str) -> Result<Self> {
        let mut word = Vec::new();
        let mut chars = s.trim().char_indices().peekable();
        while let Some((k, c)) = chars.next() {
            if c.is_whitespace() || c == ',' {
                continue;
            }
            let mut digits = c
                .to_digit(10)
                .ok_or_else(|| Error::parse(k, format!("unexpected {c:?}")))?
                as i64;
            if s.contains(char::is_whitespace) || s.contains(',') {
                while let Some(&(_, d)) = chars.peek() {
                    match d.to_digit(10) {
                        Some(x) => {
                            digits = digits * 10 + x as i64;
                            chars.next();
                        }
                        None => break,
                    }
                }
            }
            if let Some(&(_, '-')) = chars.peek() {
                chars.next();
                digits = -digits;
            }
            word.push(digits);
        }
        SignedPermutation::new(word)
    }
}

/// All permutations of `{1..len}` in lexicographic order.
pub fn permutations(len: usize) -> Vec<Permutation> {
    let mut word: Vec<usize> = (1..=len).collect();
    let mut out = vec![Permutation { word: word.clone() }];
    // next-permutation walk
    while let Some(i) = (1..len).rev().find(|&i| word[i - 1] < word[i]) {
        let j = (i..len).rev().find(|&j| word[j] > word[i - 1]).unwrap();
        word.swap(i - 1, j);
        word[i..].reverse();
        out.push(Permutation { word: word.clone() });
    }
    out
}

/// The symmetric pair families handled by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `(GL(2n+1), O(2n+1))`, equivalently `(SL(2n+1), SO(2n+1))`.
    #[serde(rename = "o-odd")]
    OOdd,
    /// `(GL(2n), O(2n))`.
    #[serde(rename = "o-even")]
    OEven,
    /// `(SL(2n), SO(2n))`; orbits of fixed-point-free involutions split.
    #[serde(rename = "so-even")]
    SoEven,
    /// `(SL(2n), Sp(2n))`.
    #[serde(rename = "sp")]
    Sp,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::OOdd, Family::OEven, Family::SoEven, Family::Sp];

    pub fn name(self) -> &'static str {
        match self {
            Family::OOdd => "o-odd",
            Family::OEven => "o-even",
            Family::SoEven => "so-even",
            Family::Sp => "sp",
        }
    }

    pub fn is_orthogonal(self) -> bool {
        self != Family::Sp
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "o-odd" => Ok(Family::OOdd),
            "o-even" => Ok(Family::OEven),
            "so-even" => Ok(Family::SoEven),
            "sp" => Ok(Family::Sp),
            other => Err(Error::parse(0, format!("unknown family {other:?}"))),
        }
    }
}

/// A family together with its rank `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymmetricPairConfig {
    pub family: Family,
    pub rank: usize,
}

impl SymmetricPairConfig {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::IndexOutOfRange { index: 0, max: 0 });
        }
        Ok(SymmetricPairConfig { family, rank })
    }

    /// Size `N` of the ambient `GL(N)`.
    pub fn ambient(&self) -> usize {
        match self.family {
            Family::OOdd => 2 * self.rank + 1,
            _ => 2 * self.rank,
        }
    }

    /// Number of sign changes of the signed permutation `w` embeds, if `w`
    /// lies in the image of the signed-permutation embedding at all.
    pub fn sign_changes_of(&self, w: &Permutation) -> Option<usize> {
        let big = self.ambient();
        if w.len() != big {
            return None;
        }
        if (1..=big).any(|i| w.apply(big + 1 - i) != big + 1 - w.apply(i)) {
            return None;
        }
        let bound = if big % 2 == 1 {
            self.rank + 1
        } else {
            self.rank
        };
        Some((1..=self.rank).filter(|&i| w.apply(i) > bound).count())
    }
}

impl fmt::Display for SymmetricPairConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={}", self.family, self.rank)
    }
}

/// Sign of an `SO(2n)` component of a split orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Component {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Component {
    pub fn flip(self) -> Self {
        match self {
            Component::Plus => Component::Minus,
            Component::Minus => Component::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Component::Plus => '+',
            Component::Minus => '-',
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// `r_b(i, j) = #{k <= i : b(k) <= j}` for an involution `b`.
pub fn rank_number(b: &Permutation, i: usize, j: usize) -> Result<usize> {
    if !b.is_involution() {
        return Err(Error::NotInvolution(b.one_line()));
    }
    let len = b.len();
    for idx in [i, j] {
        if idx == 0 || idx > len {
            return Err(Error::IndexOutOfRange {
                index: idx,
                max: len,
            });
        }
    }
    Ok(rank_count(b, i, j))
}

pub(crate) fn rank_count(p: &Permutation, i: usize, j: usize) -> usize {
    p.word[..i].iter().filter(|&&v| v <= j).count()
}

/// Full `(N+1) x (N+1)` table of rank numbers, including the zero border
/// row and column, for an arbitrary permutation.
pub fn rank_table(p: &Permutation) -> Vec<Vec<usize>> {
    let len = p.len();
    let mut table = vec![vec![0; len + 1]; len + 1];
    for i in 1..=len {
        for j in 1..=len {
            table[i][j] = table[i - 1][j] + usize::from(p.apply(i) <= j);
        }
    }
    table
}

/// Recovers a permutation from its rank table: `p(i)` is the unique `j`
/// where the table steps up in both directions.
pub fn permutation_from_rank_table(table: &[Vec<usize>]) -> Result<Permutation> {
    let len = table.len() - 1;
    let mut word = Vec::with_capacity(len);
    for i in 1..=len {
        let j = (1..=len)
            .find(|&j| table[i][j] - table[i - 1][j] == 1 && table[i][j - 1] == table[i - 1][j - 1])
            .unwrap_or(0);
        word.push(j);
    }
    Permutation::new(word)
}

/// All involutions of `S_len`, lexicographic on one-line words.
pub fn involutions(len: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut word = vec![0; len];
    build_involutions(&mut word, false, &mut out);
    out.sort();
    out
}

/// All fixed-point-free involutions of `S_len`; `len` must be even.
pub fn fpf_involutions(len: usize) -> Result<Vec<Permutation>> {
    if len % 2 == 1 {
        return Err(Error::OddAmbient(len));
    }
    let mut out = Vec::new();
    let mut word = vec![0; len];
    build_involutions(&mut word, true, &mut out);
    out.sort();
    Ok(out)
}

fn build_involutions(word: &mut [usize], fpf: bool, out: &mut Vec<Permutation>) {
    let Some(first) = word.iter().position(|&v| v == 0) else {
        out.push(Permutation {
            word: word.to_vec(),
        });
        return;
    };
    if !fpf {
        word[first] = first + 1;
        build_involutions(word, fpf, out);
        word[first] = 0;
    }
    for partner in first + 1..word.len() {
        if word[partner] == 0 {
            word[first] = partner + 1;
            word[partner] = first + 1;
            build_involutions(word, fpf, out);
            word[first] = 0;
            word[partner] = 0;
        }
    }
}

/// Torus-fixed points of the selected closed orbit, as elements of `S_N`
/// sorted lexicographically.
///
/// For `SoEven`, `Some(Plus)` selects the signed permutations with an even
/// number of sign changes and `Some(Minus)` those with an odd number; `None`
/// returns both. The selector is ignored for the other families.
pub fn weyl_k_fixed_points(
    config: &SymmetricPairConfig,
    selector: Option<Component>,
) -> Vec<Permutation> {
    let parity = match (config.family, selector) {
        (Family::SoEven, Some(Component::Plus)) => Some(0),
        (Family::SoEven, Some(Component::Minus)) => Some(1),
        _ => None,
    };
    let mut out: Vec<Permutation> = SignedPermutation::all(config.rank)
        .into_iter()
        .filter(|s| parity.is_none_or(|p| s.sign_changes() % 2 == p))
        .map(|s| s.embed(config).expect("rank matches by construction"))
        .collect();
    out.sort();
    out
}
