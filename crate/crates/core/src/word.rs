//! Words in the involutions `s_x, s_y, s_z`.
//!
//! A [`Word`] stores letters in composition order: the string `"zy"` is
//! `s_z ∘ s_y`, so the right-most letter acts first. Words are kept reduced
//! at all times. The even-length words form the subgroup Γ generated by
//!
//! ```text
//! g_x = s_z s_y,   g_y = s_x s_z,   g_z = s_y s_x,   g_z g_y g_x = 1,
//! ```
//!
//! which is free on `g_x, g_y` and maps isomorphically onto the
//! Sanov-type subgroup of Γ(2) through [`to_sl2`].

use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// One of the three involution symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[repr(u8)]
pub enum Letter {
    X = 0,
    Y = 1,
    Z = 2,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Letter {
        Letter::ALL[i % 3]
    }

    /// The other two axes, in cyclic order after `self`.
    #[inline]
    pub fn others(self) -> (usize, usize) {
        let i = self.index();
        ((i + 1) % 3, (i + 2) % 3)
    }

    pub fn vertex(self) -> InfinityVertex {
        match self {
            Letter::X => InfinityVertex::V1,
            Letter::Y => InfinityVertex::V2,
            Letter::Z => InfinityVertex::V3,
        }
    }

    pub fn to_char(self) -> char {
        ['x', 'y', 'z'][self.index()]
    }
}

impl FromStr for Letter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Letter> {
        match s {
            "x" | "X" => Ok(Letter::X),
            "y" | "Y" => Ok(Letter::Y),
            "z" | "Z" => Ok(Letter::Z),
            _ => Err(Error::Parse(format!("unknown axis '{s}'"))),
        }
    }
}

/// The three vertices of the triangle at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InfinityVertex {
    #[serde(rename = "v1")]
    V1,
    #[serde(rename = "v2")]
    V2,
    #[serde(rename = "v3")]
    V3,
}

impl InfinityVertex {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> InfinityVertex {
        [InfinityVertex::V1, InfinityVertex::V2, InfinityVertex::V3][i % 3]
    }
}

impl fmt::Display for InfinityVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.index() + 1)
    }
}

/// A reduced word in `s_x, s_y, s_z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Word {
        Word { letters: Vec::new() }
    }

    pub fn letter(l: Letter) -> Word {
        Word { letters: vec![l] }
    }

    /// Reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Word {
        let mut w = Word::identity();
        for l in raw {
            w.push(l);
        }
        w
    }

    /// Appends a letter on the right (it will act before the current word),
    /// cancelling against the last letter when equal.
    #[inline]
    pub fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.letters.len() % 2 == 0
    }

    /// Letters in the order they act on a point.
    pub fn application_order(&self) -> impl Iterator<Item = Letter> + '_ {
        self.letters.iter().rev().copied()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().copied().collect() }
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &Word) -> Word {
        let mut w = self.clone();
        for &l in &rhs.letters {
            w.push(l);
        }
        w
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.compose(&base);
        }
        w
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().compose(&b.inverse()).compose(a).compose(b)
    }

    /// `u ∘ self ∘ u⁻¹`.
    pub fn conjugate_by(&self, u: &Word) -> Word {
        u.compose(self).compose(&u.inverse())
    }

    pub fn gx() -> Word {
        Word { letters: vec![Letter::Z, Letter::Y] }
    }

    pub fn gy() -> Word {
        Word { letters: vec![Letter::X, Letter::Z] }
    }

    pub fn gz() -> Word {
        Word { letters: vec![Letter::Y, Letter::X] }
    }

    /// The parabolic generator preserving the given coordinate.
    pub fn g(axis: Letter) -> Word {
        match axis {
            Letter::X => Word::gx(),
            Letter::Y => Word::gy(),
            Letter::Z => Word::gz(),
        }
    }

    /// Presentation in the alphabet `a = g_x, b = g_y, c = g_z` (uppercase
    /// for inverses). `None` for odd words.
    pub fn to_g_string(&self) -> Option<String> {
        if !self.is_even() {
            return None;
        }
        let s = self
            .letters
            .chunks(2)
            .map(|p| match (p[0], p[1]) {
                (Letter::Z, Letter::Y) => 'a',
                (Letter::Y, Letter::Z) => 'A',
                (Letter::X, Letter::Z) => 'b',
                (Letter::Z, Letter::X) => 'B',
                (Letter::Y, Letter::X) => 'c',
                (Letter::X, Letter::Y) => 'C',
                _ => unreachable!("reduced words have distinct neighbours"),
            })
            .collect();
        Some(s)
    }

    /// Cyclic rotation `l_k … l_n l_1 … l_{k-1}` (a conjugate of `self`).
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let k = k % self.len();
        Word::reduce(self.letters[k..].iter().chain(&self.letters[..k]).copied())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts `x,y,z` letters, the `a,b,c,A,B,C` alphabet, or a mix; spaces,
    /// `*`, `·` and `s_` prefixes are ignored. `""`, `"1"`, `"e"` and `"id"`
    /// denote the identity.
    fn from_str(s: &str) -> Result<Word> {
        let t = s.trim();
        if t.is_empty() || t == "1" || t == "e" || t == "id" {
            return Ok(Word::identity());
        }
        let mut w = Word::identity();
        let cleaned = t.replace("s_", "");
        for ch in cleaned.chars() {
            let piece: &[Letter] = match ch {
                'x' => &[Letter::X],
                'y' => &[Letter::Y],
                'z' => &[Letter::Z],
                'a' => &[Letter::Z, Letter::Y],
                'A' => &[Letter::Y, Letter::Z],
                'b' => &[Letter::X, Letter::Z],
                'B' => &[Letter::Z, Letter::X],
                'c' => &[Letter::Y, Letter::X],
                'C' => &[Letter::X, Letter::Y],
                ' ' | '*' | '·' | '∘' | '_' => &[],
                _ => return Err(Error::Parse(format!("unexpected character '{ch}' in word"))),
            };
            for &l in piece {
                w.push(l);
            }
        }
        Ok(w)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl std::ops::Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.compose(rhs)
    }
}

/// Reduced form of a raw letter sequence.
pub fn reduce(raw: &[Letter]) -> Word {
    Word::reduce(raw.iter().copied())
}

/// Splits `w = conjugator ∘ core ∘ conjugator⁻¹` with `core` cyclically reduced.
pub fn cyclic_reduce(w: &Word) -> (Word, Word) {
    let l = w.letters();
    let (mut i, mut j) = (0usize, l.len());
    while j >= i + 2 && l[i] == l[j - 1] {
        i += 1;
        j -= 1;
    }
    let core = Word { letters: l[i..j].to_vec() };
    let conj = Word { letters: l[..i].to_vec() };
    (core, conj)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ElementKind {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementClass {
    pub kind: ElementKind,
    /// Conjugator bringing the word to its cyclic core, when non-trivial.
    pub witness: Option<Word>,
}

/// Conjugacy type of a word, read off its cyclic core.
pub fn classify(w: &Word) -> ElementClass {
    let (core, conj) = cyclic_reduce(w);
    let mut seen = [false; 3];
    for l in core.letters() {
        seen[l.index()] = true;
    }
    let kind = match seen.iter().filter(|&&b| b).count() {
        0 => ElementKind::Identity,
        1 => ElementKind::Elliptic,
        2 => ElementKind::Parabolic,
        _ => ElementKind::Hyperbolic,
    };
    ElementClass { kind, witness: if conj.is_empty() { None } else { Some(conj) } }
}

/// Indeterminacy and attracting vertices of an algebraically stable word:
/// `Ind` comes from the right-most letter, `Attr` from the left-most.
pub fn ind_attr(w: &Word) -> Result<(InfinityVertex, InfinityVertex)> {
    let (core, conj) = cyclic_reduce(w);
    if !conj.is_empty() || w.len() < 2 || classify(&core).kind != ElementKind::Hyperbolic {
        return Err(Error::NotAlgebraicallyStable);
    }
    let l = w.letters();
    Ok((l[l.len() - 1].vertex(), l[0].vertex()))
}

/// True iff `a` and `b` commute in the free product.
pub fn commutes(a: &Word, b: &Word) -> bool {
    a.compose(b).compose(&a.inverse()).compose(&b.inverse()).is_empty()
}

/// Integer 2×2 matrix with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix2 {
    pub m11: BigInt,
    pub m12: BigInt,
    pub m21: BigInt,
    pub m22: BigInt,
}

impl IntegerMatrix2 {
    pub fn new(m11: i64, m12: i64, m21: i64, m22: i64) -> Self {
        IntegerMatrix2 { m11: m11.into(), m12: m12.into(), m21: m21.into(), m22: m22.into() }
    }

    /// Checks `det = 1` and the Γ(2) parity conditions.
    pub fn checked(m11: i64, m12: i64, m21: i64, m22: i64) -> Result<Self> {
        let m = Self::new(m11, m12, m21, m22);
        if m.is_gamma2() {
            Ok(m)
        } else {
            Err(Error::NotInGamma2)
        }
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    /// Image of `g_x`.
    pub fn gx() -> Self {
        Self::new(1, 0, -2, 1)
    }

    /// Image of `g_y`.
    pub fn gy() -> Self {
        Self::new(1, 2, 0, 1)
    }

    /// Image of `g_z`.
    pub fn gz() -> Self {
        Self::new(1, -2, 2, -3)
    }

    pub fn det(&self) -> BigInt {
        &self.m11 * &self.m22 - &self.m12 * &self.m21
    }

    pub fn trace(&self) -> BigInt {
        &self.m11 + &self.m22
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> Self {
        IntegerMatrix2 { m11: self.m22.clone(), m12: -&self.m12, m21: -&self.m21, m22: self.m11.clone() }
    }

    pub fn neg(&self) -> Self {
        IntegerMatrix2 { m11: -&self.m11, m12: -&self.m12, m21: -&self.m21, m22: -&self.m22 }
    }

    pub fn is_gamma2(&self) -> bool {
        let two = BigInt::from(2);
        self.det().is_one()
            && !(&self.m11 % &two).is_zero()
            && !(&self.m22 % &two).is_zero()
            && (&self.m12 % &two).is_zero()
            && (&self.m21 % &two).is_zero()
    }

    /// Entries as `f64`, row-major.
    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        use num_traits::ToPrimitive;
        let f = |b: &BigInt| b.to_f64().unwrap_or(f64::NAN);
        [[f(&self.m11), f(&self.m12)], [f(&self.m21), f(&self.m22)]]
    }

    /// Entries as `i64` when they fit.
    pub fn to_i64(&self) -> Option<[[i64; 2]; 2]> {
        use num_traits::ToPrimitive;
        Some([[self.m11.to_i64()?, self.m12.to_i64()?], [self.m21.to_i64()?, self.m22.to_i64()?]])
    }

    pub fn max_abs_entry(&self) -> BigInt {
        [&self.m11, &self.m12, &self.m21, &self.m22].iter().map(|b| b.abs()).max().unwrap()
    }
}

impl std::ops::Mul for &IntegerMatrix2 {
    type Output = IntegerMatrix2;
    fn mul(self, b: &IntegerMatrix2) -> IntegerMatrix2 {
        IntegerMatrix2 {
            m11: &self.m11 * &b.m11 + &self.m12 * &b.m21,
            m12: &self.m11 * &b.m12 + &self.m12 * &b.m22,
            m21: &self.m21 * &b.m11 + &self.m22 * &b.m21,
            m22: &self.m21 * &b.m12 + &self.m22 * &b.m22,
        }
    }
}

impl fmt::Display for IntegerMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.m11, self.m12, self.m21, self.m22)
    }
}

impl Serialize for IntegerMatrix2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = [[self.m11.to_string(), self.m12.to_string()], [self.m21.to_string(), self.m22.to_string()]];
        rows.serialize(s)
    }
}

/// Matrix of an even word: product of the generator images, left to right.
pub fn to_sl2(w: &Word) -> Result<IntegerMatrix2> {
    if !w.is_even() {
        return Err(Error::OddLengthWord);
    }
    let mut m = IntegerMatrix2::identity();
    for p in w.letters().chunks(2) {
        let g = match (p[0], p[1]) {
            (Letter::Z, Letter::Y) => IntegerMatrix2::gx(),
            (Letter::Y, Letter::Z) => IntegerMatrix2::gx().inverse(),
            (Letter::X, Letter::Z) => IntegerMatrix2::gy(),
            (Letter::Z, Letter::X) => IntegerMatrix2::gy().inverse(),
            (Letter::Y, Letter::X) => IntegerMatrix2::gz(),
            (Letter::X, Letter::Y) => IntegerMatrix2::gz().inverse(),
            _ => unreachable!("reduced words have distinct neighbours"),
        };
        m = &m * &g;
    }
    Ok(m)
}

/// A word whose matrix is `±m`, for `m ∈ Γ(2)`.
///
/// Runs the Euclid-type descent on the first column using powers of the
/// images of `g_y` (upper unipotent) and `g_x⁻¹` (lower unipotent).
pub fn word_for_matrix(m: &IntegerMatrix2) -> Result<Word> {
    if !m.is_gamma2() {
        return Err(Error::NotInGamma2);
    }
    let two = BigInt::from(2);
    let mut a = m.m11.clone();
    let mut b = m.m12.clone();
    let mut c = m.m21.clone();
    let mut d = m.m22.clone();
    // factors collected left to right
    let mut factors: Vec<(Word, BigInt)> = Vec::new();
    let round_div = |num: &BigInt, den: &BigInt| -> BigInt {
        let q: BigInt = num / den;
        [&q - 1, q.clone(), &q + 1].into_iter().min_by_key(|k| (num - k * den).abs()).unwrap()
    };
    while !c.is_zero() {
        if a.abs() > c.abs() {
            // left-multiply by U^{-k}: a -= 2kc, b -= 2kd
            let k = round_div(&a, &(&c * &two));
            a -= &k * &c * &two;
            b -= &k * &d * &two;
            factors.push((Word::gy(), k));
        } else {
            // left-multiply by L^{-k}: c -= 2ka, d -= 2kb
            let k = round_div(&c, &(&a * &two));
            c -= &k * &a * &two;
            d -= &k * &b * &two;
            factors.push((Word::gx().inverse(), k));
        }
    }
    // remaining matrix is ±[[1, 2n],[0, 1]]
    let n = &b / (&a * &two);
    factors.push((Word::gy(), n));
    let mut w = Word::identity();
    for (g, k) in factors {
        use num_traits::ToPrimitive;
        let k = k.to_i64().ok_or_else(|| Error::InvalidInput("matrix entries too large".into()))?;
        w = w.compose(&g.pow(k));
    }
    Ok(w)
}

/// Which group the enumeration ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Even words only.
    Gamma,
    /// All reduced words.
    GammaStar,
}

/// Every reduced word of length at most `max_len`, in length-lexicographic
/// order (`x < y < z`).
pub fn enumerate_words(max_len: usize, parity: Parity) -> impl Iterator<Item = Word> {
    WordIter { max_len, parity, len: 0, index: 0 }
}

struct WordIter {
    max_len: usize,
    parity: Parity,
    len: usize,
    index: u64,
}

impl Iterator for WordIter {
    type Item = Word;
    fn next(&mut self) -> Option<Word> {
        loop {
            if self.len > self.max_len {
                return None;
            }
            if self.parity == Parity::Gamma && self.len % 2 == 1 {
                self.len += 1;
                self.index = 0;
                continue;
            }
            let count = if self.len == 0 { 1 } else { 3u64 << (self.len - 1) };
            if self.index >= count {
                self.len += 1;
                self.index = 0;
                continue;
            }
            let w = decode(self.len, self.index);
            self.index += 1;
            return Some(w);
        }
    }
}

/// Mixed-radix decoding: the first digit picks one of three letters, every
/// later binary digit picks one of the two letters differing from its
/// predecessor (in increasing letter order).
fn decode(len: usize, index: u64) -> Word {
    if len == 0 {
        return Word::identity();
    }
    let tail_bits = len - 1;
    let first = (index >> tail_bits) as usize;
    let mut letters = Vec::with_capacity(len);
    let mut prev = Letter::from_index(first);
    letters.push(prev);
    for k in (0..tail_bits).rev() {
        let bit = ((index >> k) & 1) as usize;
        let choices: [Letter; 2] = match prev {
            Letter::X => [Letter::Y, Letter::Z],
            Letter::Y => [Letter::X, Letter::Z],
            Letter::Z => [Letter::X, Letter::Y],
        };
        prev = choices[bit];
        letters.push(prev);
    }
    Word { letters }
}

/// Number of reduced words of length at most `max_len` for the given parity.
pub fn count_words(max_len: usize, parity: Parity) -> u64 {
    (0..=max_len)
        .filter(|l| parity == Parity::GammaStar || l % 2 == 0)
        .map(|l| if l == 0 { 1 } else { 3u64 << (l - 1) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn hx() -> Word {
        w("zyzy")
    }
    fn hy() -> Word {
        w("xzxz")
    }
    fn hz() -> Word {
        w("yxyx")
    }

    #[test]
    fn cancellation_examples() {
        assert!(reduce(&[Letter::X, Letter::X]).is_empty());
        assert_eq!(reduce(&[Letter::X, Letter::Y, Letter::Y, Letter::Z]), w("xz"));
    }

    #[test]
    fn commutator_of_squares_is_the_fourteen_letter_word() {
        let c = Word::commutator(&hx(), &hz());
        assert_eq!(c.to_string(), "yzyzxyxyzyzxyx");
        let (core, conj) = cyclic_reduce(&c);
        assert_eq!(core.len(), 14);
        assert!(conj.is_empty());
        assert_eq!(ind_attr(&c).unwrap(), (InfinityVertex::V1, InfinityVertex::V2));
        assert_eq!(ind_attr(&c.inverse()).unwrap(), (InfinityVertex::V2, InfinityVertex::V1));
    }

    #[test]
    fn cyclic_reduction_examples() {
        let (core, conj) = cyclic_reduce(&w("xyx"));
        assert_eq!((core, conj), (w("y"), w("x")));
        let (core, conj) = cyclic_reduce(&w("xyz"));
        assert_eq!((core, conj), (w("xyz"), Word::identity()));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&Word::gx()).kind, ElementKind::Parabolic);
        assert_eq!(classify(&w("x")).kind, ElementKind::Elliptic);
        assert_eq!(classify(&w("xyz")).kind, ElementKind::Hyperbolic);
        assert_eq!(classify(&Word::identity()).kind, ElementKind::Identity);
        assert_eq!(ind_attr(&w("xyz")).unwrap(), (InfinityVertex::V3, InfinityVertex::V1));
        assert_eq!(ind_attr(&w("xyx")), Err(Error::NotAlgebraicallyStable));
        assert_eq!(ind_attr(&Word::gx()), Err(Error::NotAlgebraicallyStable));
    }

    #[test]
    fn generator_matrices() {
        assert_eq!(to_sl2(&Word::gx()).unwrap(), IntegerMatrix2::new(1, 0, -2, 1));
        assert_eq!(to_sl2(&Word::gz()).unwrap(), IntegerMatrix2::new(1, -2, 2, -3));
        assert_eq!(to_sl2(&Word::identity()).unwrap(), IntegerMatrix2::identity());
        assert_eq!(to_sl2(&w("x")), Err(Error::OddLengthWord));
        // the relation g_z g_y g_x = 1 holds both in words and in matrices
        assert!(Word::gz().compose(&Word::gy()).compose(&Word::gx()).is_empty());
        let prod = &(&IntegerMatrix2::gz() * &IntegerMatrix2::gy()) * &IntegerMatrix2::gx();
        assert_eq!(prod, IntegerMatrix2::identity());
    }

    #[test]
    fn commutation_examples() {
        assert!(commutes(&Word::gx(), &Word::gx().pow(3)));
        assert!(!commutes(&Word::gx(), &Word::gy()));
        let inv = Word::commutator(&hx().inverse(), &hz().inverse());
        assert!(!commutes(&Word::commutator(&hx(), &hz()), &inv));
        assert!(!commutes(&hx(), &hy()));
    }

    #[test]
    fn enumeration_counts_and_order() {
        let all: Vec<Word> = enumerate_words(0, Parity::GammaStar).collect();
        assert_eq!(all, vec![Word::identity()]);
        let one: Vec<String> = enumerate_words(1, Parity::GammaStar).map(|w| w.to_string()).collect();
        assert_eq!(one, vec!["1", "x", "y", "z"]);
        assert_eq!(enumerate_words(2, Parity::GammaStar).count(), 10);
        for l in 0..9 {
            assert_eq!(enumerate_words(l, Parity::GammaStar).count() as u64, 1 + 3 * ((1u64 << l) - 1));
            assert_eq!(enumerate_words(l, Parity::Gamma).count() as u64, count_words(l, Parity::Gamma));
        }
        let two: Vec<String> = enumerate_words(2, Parity::Gamma).map(|w| w.to_string()).collect();
        assert_eq!(two, vec!["1", "xy", "xz", "yx", "yz", "zx", "zy"]);
    }

    #[test]
    fn g_alphabet_round_trip() {
        let x = w("aBcA");
        assert_eq!(x.to_g_string().unwrap(), "aBcA");
        assert_eq!(w("a"), Word::gx());
        assert_eq!(w("aA"), Word::identity());
        assert_eq!(w("s_z s_y"), Word::gx());
        assert!("xq".parse::<Word>().is_err());
    }

    #[test]
    fn matrix_decomposition_inverts_to_sl2() {
        for s in ["a", "b", "c", "abAB", "aabBcbA", "CCabba", "bbbbbaaaaac"] {
            let m = to_sl2(&w(s)).unwrap();
            let back = to_sl2(&word_for_matrix(&m).unwrap()).unwrap();
            assert!(back == m || back == m.neg(), "{s}");
        }
        let m = IntegerMatrix2::new(1, 2, 2, 5);
        let back = to_sl2(&word_for_matrix(&m).unwrap()).unwrap();
        assert!(back == m || back == m.neg());
    }
}
