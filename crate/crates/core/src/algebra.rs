//! Graded noncommutative polynomials over F2 in the generators `H`, `S`, `T`, `Y`.
//!
//! A [`Word`] is a plain letter sequence; degrees and levels are read off an
//! [`AlgebraSignature`] on demand, so the same word type serves every
//! presentation (odd and even `n`, original and augmented).

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("generator {letter} is not in the alphabet for n = {n}")]
    AlphabetMismatch { letter: Gen, n: u32 },
    #[error("n must be at least 1")]
    InvalidDimension,
    #[error("cannot parse {0:?} as a word or polynomial")]
    Parse(String),
}

/// Generator symbol. The derived order `H < T < S < Y` is the lexicographic
/// tie-break used by the monomial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    H,
    T,
    S,
    Y,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::H, Gen::T, Gen::S, Gen::Y];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> char {
        match self {
            Gen::H => 'H',
            Gen::T => 'T',
            Gen::S => 'S',
            Gen::Y => 'Y',
        }
    }

    fn from_char(c: char) -> Option<Gen> {
        match c {
            'H' => Some(Gen::H),
            'T' => Some(Gen::T),
            'S' => Some(Gen::S),
            'Y' => Some(Gen::Y),
            _ => None,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityClass {
    /// n ≡ 1 mod 4
    Odd1,
    /// n ≡ 3 mod 4
    Odd3,
    Even,
}

impl ParityClass {
    pub fn of(n: u32) -> ParityClass {
        match n % 4 {
            1 => ParityClass::Odd1,
            3 => ParityClass::Odd3,
            _ => ParityClass::Even,
        }
    }

    pub fn is_odd(self) -> bool {
        !matches!(self, ParityClass::Even)
    }
}

/// Generators, degrees and levels of the presented algebra for a given `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraSignature {
    n: u32,
    parity: ParityClass,
    alphabet: Vec<Gen>,
}

impl AlgebraSignature {
    pub fn new(n: u32) -> Result<Self, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::InvalidDimension);
        }
        let parity = ParityClass::of(n);
        let alphabet = if parity.is_odd() {
            vec![Gen::H, Gen::S, Gen::Y]
        } else {
            vec![Gen::H, Gen::T, Gen::Y]
        };
        Ok(AlgebraSignature { n, parity, alphabet })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn parity(&self) -> ParityClass {
        self.parity
    }

    pub fn alphabet(&self) -> &[Gen] {
        &self.alphabet
    }

    /// The second generator besides `H` and `Y`: `S` for odd `n`, `T` for even.
    pub fn middle(&self) -> Gen {
        self.alphabet[1]
    }

    pub fn contains(&self, g: Gen) -> bool {
        self.alphabet.contains(&g)
    }

    /// Shifted degree of a generator: |H| = -1, |S| = 1, |T| = 0, |Y| = n.
    pub fn degree(&self, g: Gen) -> i64 {
        match g {
            Gen::H => -1,
            Gen::S => 1,
            Gen::T => 0,
            Gen::Y => self.n as i64,
        }
    }

    /// Number of π/2 units a generator contributes to the critical level.
    pub fn level(&self, g: Gen) -> u32 {
        match g {
            Gen::H => 0,
            _ => 1,
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<(), AlgebraError> {
        match w.letters().iter().find(|g| !self.contains(**g)) {
            Some(&letter) => Err(AlgebraError::AlphabetMismatch { letter, n: self.n }),
            None => Ok(()),
        }
    }

    pub fn check_poly(&self, p: &Polynomial) -> Result<(), AlgebraError> {
        p.terms().try_for_each(|w| self.check_word(w))
    }

    pub fn word_degree(&self, w: &Word) -> Result<i64, AlgebraError> {
        self.check_word(w)?;
        Ok(w.letters().iter().map(|g| self.degree(*g)).sum())
    }

    /// Degree in the homology of the path space itself, i.e. shifted degree + n.
    pub fn unshifted_degree(&self, w: &Word) -> Result<i64, AlgebraError> {
        Ok(self.word_degree(w)? + self.n as i64)
    }

    /// Degree without alphabet validation, for words already known to be valid.
    pub(crate) fn degree_unchecked(&self, w: &Word) -> i64 {
        w.letters().iter().map(|g| self.degree(*g)).sum()
    }

    /// The five defining relations of the presentation for this `n`.
    pub fn defining_relations(&self) -> Vec<Relation> {
        use Gen::*;
        let n = self.n as usize;
        let w = |s: &[Gen]| Word::from_letters(s.to_vec());
        let hpow = |k: usize| Word::power(H, k);
        let rel = |name: &str, lead: Word, rest: Vec<Word>| Relation {
            name: name.to_string(),
            lead,
            rest: rest.into_iter().collect(),
        };
        match self.parity {
            ParityClass::Odd1 | ParityClass::Odd3 => {
                let sy_correction = if self.parity == ParityClass::Odd1 {
                    vec![w(&[S, Y]), hpow(n - 1).concat(&Word::power(Y, 2))]
                } else {
                    vec![w(&[S, Y])]
                };
                vec![
                    rel("[H,S]=1", w(&[S, H]), vec![w(&[H, S]), Word::one()]),
                    rel("[H,Y]=0", w(&[Y, H]), vec![w(&[H, Y])]),
                    rel(
                        if self.parity == ParityClass::Odd1 { "[S,Y]=H^(n-1)Y^2" } else { "[S,Y]=0" },
                        w(&[Y, S]),
                        sy_correction,
                    ),
                    rel("S^2=0", w(&[S, S]), vec![]),
                    rel("H^(n+1)=0", hpow(n + 1), vec![]),
                ]
            }
            ParityClass::Even => vec![
                rel("[H,T]=H", w(&[T, H]), vec![w(&[H, T]), w(&[H])]),
                rel("[H,Y]=0", w(&[Y, H]), vec![w(&[H, Y])]),
                rel("[T,Y]=Y", w(&[Y, T]), vec![w(&[T, Y]), w(&[Y])]),
                rel("T^2=T", w(&[T, T]), vec![w(&[T])]),
                rel("H^(n+1)=0", hpow(n + 1), vec![]),
            ],
        }
    }
}

/// A defining relation `lead = rest`, with `lead` the word intended as the
/// left-hand side of the oriented rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub name: String,
    pub lead: Word,
    pub rest: Polynomial,
}

impl Relation {
    /// The relation as a single polynomial that vanishes in the quotient.
    pub fn as_polynomial(&self) -> Polynomial {
        &Polynomial::from(self.lead.clone()) + &self.rest
    }
}

/// A finite sequence of generators. The empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word(Vec<Gen>);

impl Word {
    pub fn one() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Gen>) -> Word {
        Word(letters)
    }

    pub fn power(g: Gen, k: usize) -> Word {
        Word(vec![g; k])
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn push(&mut self, g: Gen) {
        self.0.push(g);
    }

    pub fn pop(&mut self) -> Option<Gen> {
        self.0.pop()
    }

    /// Number of `S`, `T` and `Y` letters.
    pub fn level(&self) -> u32 {
        self.0.iter().filter(|g| **g != Gen::H).count() as u32
    }

    /// Index of the first occurrence of `pattern` at or after `from`.
    pub fn find(&self, pattern: &Word, from: usize) -> Option<usize> {
        if pattern.len() > self.len() {
            return None;
        }
        (from..=self.len() - pattern.len()).find(|&i| self.0[i..].starts_with(&pattern.0))
    }

    pub fn contains_factor(&self, pattern: &Word) -> bool {
        self.find(pattern, 0).is_some()
    }

    pub fn ends_with(&self, pattern: &Word) -> bool {
        self.0.ends_with(&pattern.0)
    }

    /// `self[..start] · middle · self[start + len..]`
    pub fn splice(&self, start: usize, len: usize, middle: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() - len + middle.len());
        v.extend_from_slice(&self.0[..start]);
        v.extend_from_slice(&middle.0);
        v.extend_from_slice(&self.0[start + len..]);
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    /// Apply a letter substitution.
    pub fn map_letters(&self, f: impl Fn(Gen) -> Gen) -> Word {
        Word(self.0.iter().map(|g| f(*g)).collect())
    }
}

impl From<Vec<Gen>> for Word {
    fn from(v: Vec<Gen>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    /// Run-length notation: `H^2SY^3`; the unit prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let run = self.0[i..].iter().take_while(|x| **x == g).count();
            if run == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = AlgebraError;

    /// Accepts `1`, and letters with optional `^k` exponents (`H^2SY^3`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::one());
        }
        let err = || AlgebraError::Parse(s.to_string());
        let mut letters = Vec::new();
        let mut chars = s.chars().filter(|c| !c.is_whitespace() && *c != '*').peekable();
        if chars.peek().is_none() {
            return Err(err());
        }
        while let Some(c) = chars.next() {
            let g = Gen::from_char(c).ok_or_else(err)?;
            let mut exp = 1usize;
            if chars.peek() == Some(&'^') {
                chars.next();
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                exp = digits.parse().map_err(|_| err())?;
            }
            letters.extend(std::iter::repeat_n(g, exp));
        }
        Ok(Word(letters))
    }
}

/// An F2-linear combination of words, stored as a sorted set of terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Polynomial(BTreeSet<Word>);

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial(BTreeSet::new())
    }

    pub fn one() -> Polynomial {
        Polynomial::from(Word::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Word> + '_ {
        self.0.iter()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.0.contains(w)
    }

    /// Add a single term, cancelling it if already present.
    pub fn toggle(&mut self, w: Word) {
        if !self.0.remove(&w) {
            self.0.insert(w);
        }
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        for w in other.terms() {
            self.toggle(w.clone());
        }
    }

    pub fn reversed(&self) -> Polynomial {
        self.terms().map(Word::reversed).collect()
    }

    pub fn mul_word_left(&self, left: &Word) -> Polynomial {
        self.terms().map(|w| left.concat(w)).collect()
    }

    pub fn mul_word_right(&self, right: &Word) -> Polynomial {
        self.terms().map(|w| w.concat(right)).collect()
    }

    pub fn map_letters(&self, f: impl Fn(Gen) -> Gen + Copy) -> Polynomial {
        self.terms().map(|w| w.map_letters(f)).collect()
    }

    pub fn into_words(self) -> BTreeSet<Word> {
        self.0
    }
}

impl From<Word> for Polynomial {
    fn from(w: Word) -> Self {
        Polynomial(BTreeSet::from([w]))
    }
}

/// Collecting toggles, so repeated words cancel in pairs.
impl FromIterator<Word> for Polynomial {
    fn from_iter<I: IntoIterator<Item = Word>>(iter: I) -> Self {
        let mut p = Polynomial::zero();
        for w in iter {
            p.toggle(w);
        }
        p
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial(self.0.symmetric_difference(&rhs.0).cloned().collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.terms()
            .flat_map(|a| rhs.terms().map(move |b| a.concat(b)))
            .collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        // largest words first reads more naturally (HS + 1 rather than 1 + HS)
        let mut terms: Vec<&Word> = self.0.iter().collect();
        terms.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        for (i, w) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(Polynomial::zero());
        }
        s.split('+').map(str::parse::<Word>).collect::<Result<Vec<_>, _>>().map(|ws| ws.into_iter().collect())
    }
}
