//! Truncated free associative algebra on a finite alphabet, Lyndon bases of
//! the free Lie ring inside it, and the Baker-Campbell-Hausdorff series.
//!
//! Coefficients are generic over [`Coefficient`]; the exact work uses
//! [`PLocalRat`], and `f64` is available for quick numerical experiments.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};
use serde::Serialize;
use thiserror::Error;

use crate::ring::PLocalRat;

/// Scalar bundle accepted by [`FreeAssoc`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Num + Neg<Output = Self> + FromPrimitive {}

impl<T> Coefficient for T where T: Clone + PartialEq + fmt::Debug + Num + Neg<Output = T> + FromPrimitive {}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeLieError {
    #[error("exp needs a zero constant term")]
    NonzeroConstant,
    #[error("log needs constant term 1")]
    ConstantNotOne,
    #[error("not a Lie element: residual at weight {weight}")]
    NotLie { weight: usize },
    #[error("alphabet size and weight must be at least 1")]
    EmptyRange,
}

pub type Word = Vec<u8>;

/// Letter names used when printing: `x, y, z, w` for small alphabets,
/// `x0, x1, ...` otherwise.
pub fn letter_name(letter: u8, alphabet: usize) -> String {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    if alphabet <= NAMES.len() {
        NAMES[letter as usize].to_string()
    } else {
        format!("x{letter}")
    }
}

pub fn word_string(w: &[u8], alphabet: usize) -> String {
    w.iter().map(|&l| letter_name(l, alphabet)).collect()
}

/// A bracketed word: a letter or a bracket of two bracketings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bracketing {
    Letter(u8),
    Pair(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    pub fn weight(&self) -> usize {
        match self {
            Bracketing::Letter(_) => 1,
            Bracketing::Pair(a, b) => a.weight() + b.weight(),
        }
    }

    pub fn pair(a: Bracketing, b: Bracketing) -> Bracketing {
        Bracketing::Pair(Box::new(a), Box::new(b))
    }

    /// Expand into the associative algebra, `[u,v] = uv - vu`.
    pub fn expand<S: Coefficient>(&self, cutoff: usize) -> FreeAssoc<S> {
        match self {
            Bracketing::Letter(l) => FreeAssoc::letter(*l, cutoff),
            Bracketing::Pair(a, b) => a.expand(cutoff).bracket(&b.expand(cutoff)),
        }
    }

    /// Evaluate in any structure with a bracket.
    pub fn evaluate<T: Clone>(&self, gens: &[T], bracket: &mut impl FnMut(&T, &T) -> T) -> T {
        match self {
            Bracketing::Letter(l) => gens[*l as usize].clone(),
            Bracketing::Pair(a, b) => {
                let u = a.evaluate(gens, bracket);
                let v = b.evaluate(gens, bracket);
                bracket(&u, &v)
            }
        }
    }

    pub fn display(&self, alphabet: usize) -> String {
        match self {
            Bracketing::Letter(l) => letter_name(*l, alphabet),
            Bracketing::Pair(a, b) => format!("[{},{}]", a.display(alphabet), b.display(alphabet)),
        }
    }
}

pub fn is_lyndon(w: &[u8]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|i| {
        let rot: Vec<u8> = w[i..].iter().chain(&w[..i]).copied().collect();
        w < rot.as_slice()
    })
}

/// Standard factorization `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[u8]) -> (Word, Word) {
    assert!(w.len() >= 2);
    for i in 1..w.len() {
        if is_lyndon(&w[i..]) {
            return (w[..i].to_vec(), w[i..].to_vec());
        }
    }
    unreachable!("the last letter is always Lyndon")
}

pub fn standard_bracketing(w: &[u8]) -> Bracketing {
    if w.len() == 1 {
        return Bracketing::Letter(w[0]);
    }
    let (u, v) = standard_factorization(w);
    Bracketing::pair(standard_bracketing(&u), standard_bracketing(&v))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LyndonWord {
    pub word: Word,
    pub bracketing: Bracketing,
}

impl LyndonWord {
    pub fn new(word: Word) -> Self {
        debug_assert!(is_lyndon(&word));
        let bracketing = standard_bracketing(&word);
        LyndonWord { word, bracketing }
    }

    pub fn weight(&self) -> usize {
        self.word.len()
    }
}

/// All Lyndon words of weight at most `max_weight`, ordered by length and
/// then lexicographically.
pub fn lyndon_basis(alphabet_size: usize, max_weight: usize) -> Vec<LyndonWord> {
    if alphabet_size == 0 || max_weight == 0 {
        return Vec::new();
    }
    // Duval's generator
    let k = alphabet_size as u8;
    let mut out: Vec<Word> = Vec::new();
    let mut w: Word = vec![0];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_weight {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == k - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(l) => *l += 1,
            None => break,
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out.into_iter().map(LyndonWord::new).collect()
}

/// Number of Lyndon words of length `n` over `k` letters (Witt's formula).
pub fn necklace_count(k: usize, n: usize) -> usize {
    let mut total: i64 = 0;
    for d in 1..=n {
        if n % d == 0 {
            total += mobius(d) * (k as i64).pow((n / d) as u32);
        }
    }
    (total / n as i64) as usize
}

fn mobius(mut n: usize) -> i64 {
    let mut m = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            m = -m;
        }
        d += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

/// Element of the free associative algebra truncated above weight `cutoff`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeAssoc<S> {
    terms: BTreeMap<Word, S>,
    cutoff: usize,
}

impl<S: Coefficient> FreeAssoc<S> {
    pub fn zero(cutoff: usize) -> Self {
        FreeAssoc { terms: BTreeMap::new(), cutoff }
    }

    pub fn one(cutoff: usize) -> Self {
        Self::monomial(Vec::new(), S::one(), cutoff)
    }

    pub fn letter(l: u8, cutoff: usize) -> Self {
        Self::monomial(vec![l], S::one(), cutoff)
    }

    pub fn monomial(w: Word, c: S, cutoff: usize) -> Self {
        let mut out = Self::zero(cutoff);
        out.add_term(w, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, S)>, cutoff: usize) -> Self {
        let mut out = Self::zero(cutoff);
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn with_cutoff(&self, cutoff: usize) -> Self {
        Self::from_terms(self.terms.clone(), cutoff)
    }

    pub fn add_term(&mut self, w: Word, c: S) {
        if w.len() > self.cutoff || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[u8]) -> S {
        self.terms.get(w).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> S {
        self.coeff(&[])
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Homogeneous component of the given weight.
    pub fn component(&self, weight: usize) -> Self {
        Self::from_terms(
            self.terms.iter().filter(|(w, _)| w.len() == weight).map(|(w, c)| (w.clone(), c.clone())),
            self.cutoff,
        )
    }

    pub fn min_weight(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).min()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.cutoff = self.cutoff.min(other.cutoff);
        out.terms.retain(|w, _| w.len() <= out.cutoff);
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), x.clone() * c.clone())), self.cutoff)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cutoff = self.cutoff.min(other.cutoff);
        let mut out = Self::zero(cutoff);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                if w1.len() + w2.len() > cutoff {
                    continue;
                }
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    fn factorial(k: usize) -> S {
        let f: u64 = (1..=k as u64).product();
        S::from_u64(f).expect("factorial fits the coefficient type")
    }

    pub fn exp_trunc(&self) -> Result<Self, FreeLieError> {
        if !self.constant_term().is_zero() {
            return Err(FreeLieError::NonzeroConstant);
        }
        let mut out = Self::one(self.cutoff);
        let mut power = Self::one(self.cutoff);
        for k in 1..=self.cutoff {
            power = power.mul(self);
            if power.is_zero() {
                break;
            }
            out = out.add(&power.scale(&(S::one() / Self::factorial(k))));
        }
        Ok(out)
    }

    pub fn log_trunc(&self) -> Result<Self, FreeLieError> {
        if self.constant_term() != S::one() {
            return Err(FreeLieError::ConstantNotOne);
        }
        let a = self.sub(&Self::one(self.cutoff));
        let mut out = Self::zero(self.cutoff);
        let mut power = Self::one(self.cutoff);
        for k in 1..=self.cutoff {
            power = power.mul(&a);
            if power.is_zero() {
                break;
            }
            let n = S::from_u64(k as u64).unwrap();
            let c = if k % 2 == 1 { S::one() / n } else { -(S::one() / n) };
            out = out.add(&power.scale(&c));
        }
        Ok(out)
    }

    /// Inverse of a group-like element (constant term 1).
    pub fn group_inverse(&self) -> Result<Self, FreeLieError> {
        self.log_trunc()?.neg().exp_trunc()
    }

    pub fn alphabet_size(&self) -> usize {
        self.terms.keys().flat_map(|w| w.iter()).map(|&l| l as usize + 1).max().unwrap_or(1)
    }

    pub fn display(&self, alphabet: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                if w.is_empty() {
                    format!("{c:?}")
                } else {
                    format!("{c:?}*{}", word_string(w, alphabet))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Coordinates of a Lie element on the Lyndon basis; entries with zero
/// coefficient are omitted.
pub type LieCoords<S> = Vec<(LyndonWord, S)>;

/// Express `a` on bracketed Lyndon words of weight at most `max_weight`.
///
/// Within each weight the lexicographically smallest monomial of a Lie
/// element is a Lyndon word `w`, occurring with the coefficient of `w`'s
/// bracketing; subtracting and repeating is a back-substitution.
pub fn project_to_lie<S: Coefficient>(
    a: &FreeAssoc<S>,
    max_weight: usize,
) -> Result<LieCoords<S>, FreeLieError> {
    project_with_alphabet(a, a.alphabet_size(), max_weight)
}

pub fn project_with_alphabet<S: Coefficient>(
    a: &FreeAssoc<S>,
    alphabet: usize,
    max_weight: usize,
) -> Result<LieCoords<S>, FreeLieError> {
    if !a.constant_term().is_zero() {
        return Err(FreeLieError::NotLie { weight: 0 });
    }
    let cutoff = max_weight.min(a.cutoff());
    if let Some(w) = a.terms().map(|(w, _)| w.len()).find(|&l| l > cutoff) {
        return Err(FreeLieError::NotLie { weight: w });
    }
    let mut residual = a.with_cutoff(cutoff);
    let mut out: Vec<(LyndonWord, S)> = Vec::new();
    let mut cache: BTreeMap<Word, FreeAssoc<S>> = BTreeMap::new();
    for weight in 1..=cutoff {
        loop {
            let lead = residual.terms().find(|(w, _)| w.len() == weight).map(|(w, c)| (w.clone(), c.clone()));
            let Some((w, c)) = lead else { break };
            if !is_lyndon(&w) || w.iter().any(|&l| l as usize >= alphabet) {
                return Err(FreeLieError::NotLie { weight });
            }
            let lw = LyndonWord::new(w.clone());
            let exp = cache.entry(w).or_insert_with(|| lw.bracketing.expand(cutoff)).clone();
            residual = residual.sub(&exp.scale(&c));
            out.push((lw, c));
        }
    }
    out.sort_by(|x, y| x.0.word.len().cmp(&y.0.word.len()).then(x.0.word.cmp(&y.0.word)));
    Ok(out)
}

/// Substitute bracketings back into the associative algebra.
pub fn lie_to_assoc<S: Coefficient>(coords: &[(LyndonWord, S)], cutoff: usize) -> FreeAssoc<S> {
    let mut out = FreeAssoc::zero(cutoff);
    for (w, c) in coords {
        out = out.add(&w.bracketing.expand::<S>(cutoff).scale(c));
    }
    out
}

/// `log(exp x * exp y)` truncated at weight `class` with `x, y` letters 0, 1.
pub fn bch_series<S: Coefficient>(class: usize) -> FreeAssoc<S> {
    let x = FreeAssoc::<S>::letter(0, class);
    let y = FreeAssoc::<S>::letter(1, class);
    let e = x.exp_trunc().unwrap().mul(&y.exp_trunc().unwrap());
    e.log_trunc().unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BchEntry {
    pub word: String,
    pub bracketing: String,
    pub numerator: i128,
    pub denominator: i128,
}

/// `H(x, y)` on bracketed Lyndon words up to weight `class`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BchTable {
    pub class: usize,
    pub terms: Vec<(LyndonWord, PLocalRat)>,
}

impl BchTable {
    pub fn coefficient(&self, word: &[u8]) -> PLocalRat {
        self.terms
            .iter()
            .find(|(w, _)| w.word == word)
            .map(|(_, c)| *c)
            .unwrap_or_else(|| PLocalRat::from_integer(0))
    }

    pub fn to_assoc(&self) -> FreeAssoc<PLocalRat> {
        lie_to_assoc(&self.terms, self.class)
    }

    pub fn entries(&self) -> Vec<BchEntry> {
        self.terms
            .iter()
            .map(|(w, c)| BchEntry {
                word: word_string(&w.word, 2),
                bracketing: w.bracketing.display(2),
                numerator: *c.numer(),
                denominator: *c.denom(),
            })
            .collect()
    }

    /// Largest prime dividing a denominator, or 1.
    pub fn worst_denominator_prime(&self) -> u64 {
        let mut worst = 1;
        for (_, c) in &self.terms {
            let mut d = c.denom().unsigned_abs() as u64;
            let mut q = 2;
            while d > 1 {
                while d % q == 0 {
                    d /= q;
                    worst = worst.max(q);
                }
                q += 1;
            }
        }
        worst
    }
}

pub fn bch_table(class: usize) -> BchTable {
    let class = class.max(1);
    let series = bch_series::<PLocalRat>(class);
    let terms = project_with_alphabet(&series, 2, class).expect("BCH series is a Lie element");
    BchTable { class, terms }
}

/// Iterated group commutators `[g, h] = g h g^-1 h^-1` in two generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CommWord {
    Gen(u8),
    Comm(Box<CommWord>, Box<CommWord>),
}

impl CommWord {
    pub fn from_bracketing(b: &Bracketing) -> CommWord {
        match b {
            Bracketing::Letter(l) => CommWord::Gen(*l),
            Bracketing::Pair(u, v) => {
                CommWord::Comm(Box::new(Self::from_bracketing(u)), Box::new(Self::from_bracketing(v)))
            }
        }
    }

    pub fn comm(a: CommWord, b: CommWord) -> CommWord {
        CommWord::Comm(Box::new(a), Box::new(b))
    }

    /// Evaluate in any group given by closures.
    pub fn evaluate<T: Clone, E>(
        &self,
        gens: &[T],
        mul: &impl Fn(&T, &T) -> Result<T, E>,
        inv: &impl Fn(&T) -> Result<T, E>,
    ) -> Result<T, E> {
        match self {
            CommWord::Gen(l) => Ok(gens[*l as usize].clone()),
            CommWord::Comm(a, b) => {
                let g = a.evaluate(gens, mul, inv)?;
                let h = b.evaluate(gens, mul, inv)?;
                let gh = mul(&g, &h)?;
                let gi = inv(&g)?;
                let hi = inv(&h)?;
                mul(&mul(&gh, &gi)?, &hi)
            }
        }
    }
}

impl fmt::Display for CommWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommWord::Gen(l) => write!(f, "{}", letter_name(*l, 2)),
            CommWord::Comm(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// A product `w_1^{q_1} w_2^{q_2} ...` of commutator words with rational
/// exponents, evaluated left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupWord {
    pub factors: Vec<(CommWord, PLocalRat)>,
}

impl GroupWord {
    pub fn evaluate<T: Clone, E>(
        &self,
        gens: &[T],
        mul: &impl Fn(&T, &T) -> Result<T, E>,
        inv: &impl Fn(&T) -> Result<T, E>,
        pow: &impl Fn(&T, &PLocalRat) -> Result<T, E>,
        identity: T,
    ) -> Result<T, E> {
        let mut acc = identity;
        for (w, q) in &self.factors {
            let g = w.evaluate(gens, mul, inv)?;
            acc = mul(&acc, &pow(&g, q)?)?;
        }
        Ok(acc)
    }

    /// The word evaluated on `exp x, exp y` in the free algebra.
    pub fn to_assoc(&self, cutoff: usize) -> FreeAssoc<PLocalRat> {
        let gens = [
            FreeAssoc::<PLocalRat>::letter(0, cutoff).exp_trunc().unwrap(),
            FreeAssoc::<PLocalRat>::letter(1, cutoff).exp_trunc().unwrap(),
        ];
        let mul = |a: &FreeAssoc<PLocalRat>, b: &FreeAssoc<PLocalRat>| Ok::<_, FreeLieError>(a.mul(b));
        let inv = |a: &FreeAssoc<PLocalRat>| a.group_inverse();
        let pow = |a: &FreeAssoc<PLocalRat>, q: &PLocalRat| a.log_trunc()?.scale(q).exp_trunc();
        self.evaluate(&gens, &mul, &inv, &pow, FreeAssoc::one(cutoff)).unwrap()
    }

    pub fn max_denominator(&self) -> i128 {
        self.factors.iter().map(|(_, q)| *q.denom()).max().unwrap_or(1)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|(w, q)| format!("{w}^({q})")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Group words `h1, h2` with `h1(exp x, exp y) = exp(x + y)` and
/// `h2(exp x, exp y) = exp([x, y])` up to weight `class`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseBch {
    pub class: usize,
    pub h1: GroupWord,
    pub h2: GroupWord,
}

fn correct_word(start: GroupWord, target: &FreeAssoc<PLocalRat>, class: usize) -> GroupWord {
    let mut word = start;
    for weight in 1..=class {
        let current = word.to_assoc(class).log_trunc().unwrap();
        let diff = current.sub(target).component(weight);
        if diff.is_zero() {
            continue;
        }
        let coords = project_with_alphabet(&diff, 2, weight).expect("discrepancy is a Lie element");
        for (w, c) in coords {
            word.factors.push((CommWord::from_bracketing(&w.bracketing), -c));
        }
    }
    word
}

pub fn inverse_bch(class: usize) -> InverseBch {
    let class = class.max(1);
    let one = PLocalRat::from_integer(1);
    let x = FreeAssoc::<PLocalRat>::letter(0, class);
    let y = FreeAssoc::<PLocalRat>::letter(1, class);
    let h1 = correct_word(
        GroupWord { factors: vec![(CommWord::Gen(0), one), (CommWord::Gen(1), one)] },
        &x.add(&y),
        class,
    );
    let h2 = if class >= 2 {
        correct_word(
            GroupWord { factors: vec![(CommWord::comm(CommWord::Gen(0), CommWord::Gen(1)), one)] },
            &x.bracket(&y),
            class,
        )
    } else {
        GroupWord { factors: vec![] }
    };
    InverseBch { class, h1, h2 }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightCheck {
    pub weight: usize,
    pub h1: bool,
    pub h2: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InverseBchReport {
    pub class: usize,
    pub weights: Vec<WeightCheck>,
    pub pass: bool,
}

/// Check `h1(exp x, exp y) = exp(x + y)` and `h2(exp x, exp y) = exp([x,y])`
/// weight by weight.
pub fn inverse_bch_identities(class: usize) -> InverseBchReport {
    let class = class.max(1);
    let words = inverse_bch(class);
    let x = FreeAssoc::<PLocalRat>::letter(0, class);
    let y = FreeAssoc::<PLocalRat>::letter(1, class);
    let want1 = x.add(&y).exp_trunc().unwrap();
    let want2 = x.bracket(&y).exp_trunc().unwrap();
    let got1 = words.h1.to_assoc(class);
    let got2 = words.h2.to_assoc(class);
    let d1 = got1.sub(&want1);
    let d2 = got2.sub(&want2);
    let weights: Vec<WeightCheck> = (1..=class)
        .map(|w| WeightCheck { weight: w, h1: d1.component(w).is_zero(), h2: d2.component(w).is_zero() })
        .collect();
    let pass = weights.iter().all(|c| c.h1 && c.h2) && d1.constant_term() == PLocalRat::from_integer(0);
    InverseBchReport { class, weights, pass }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128, d: i128) -> PLocalRat {
        PLocalRat::new(n, d)
    }

    #[test]
    fn lyndon_small() {
        let words: Vec<Word> = lyndon_basis(2, 3).into_iter().map(|w| w.word).collect();
        assert_eq!(words, vec![vec![0], vec![1], vec![0, 1], vec![0, 0, 1], vec![0, 1, 1]]);
        assert_eq!(lyndon_basis(2, 1).len(), 2);
        assert_eq!(lyndon_basis(1, 3).len(), 1);
        for n in 1..=6 {
            let count = lyndon_basis(3, 6).iter().filter(|w| w.weight() == n).count();
            assert_eq!(count, necklace_count(3, n));
        }
    }

    #[test]
    fn exp_examples() {
        let x = FreeAssoc::<PLocalRat>::letter(0, 3);
        let e = x.exp_trunc().unwrap();
        assert_eq!(e.coeff(&[]), q(1, 1));
        assert_eq!(e.coeff(&[0, 0]), q(1, 2));
        assert_eq!(e.coeff(&[0, 0, 0]), q(1, 6));
        assert_eq!(e.log_trunc().unwrap(), x);
        assert_eq!(FreeAssoc::<PLocalRat>::zero(4).exp_trunc().unwrap(), FreeAssoc::one(4));
        assert!(FreeAssoc::<PLocalRat>::one(3).exp_trunc().is_err());
        assert!(x.log_trunc().is_err());
    }

    #[test]
    fn bch_low_weights() {
        let t = bch_table(3);
        assert_eq!(t.coefficient(&[0]), q(1, 1));
        assert_eq!(t.coefficient(&[1]), q(1, 1));
        assert_eq!(t.coefficient(&[0, 1]), q(1, 2));
        assert_eq!(t.coefficient(&[0, 0, 1]), q(1, 12));
        // [[x,y],y] = -[y,[x,y]]
        assert_eq!(t.coefficient(&[0, 1, 1]), q(1, 12));
        assert_eq!(t.to_assoc(), bch_series::<PLocalRat>(3));
    }

    #[test]
    fn projection_rejects_non_lie() {
        let xy = FreeAssoc::<PLocalRat>::monomial(vec![0, 1], q(1, 1), 3);
        assert!(project_to_lie(&xy, 3).is_err());
        let b = FreeAssoc::<PLocalRat>::letter(0, 3).bracket(&FreeAssoc::letter(1, 3));
        let c = project_to_lie(&b, 3).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].0.word, vec![0, 1]);
    }

    #[test]
    fn inverse_bch_passes() {
        for c in 1..=5 {
            assert!(inverse_bch_identities(c).pass, "class {c}");
        }
    }

    #[test]
    fn float_coefficients() {
        let s = bch_series::<f64>(2);
        assert!((s.coeff(&[0, 1]) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn narrow_rationals_agree() {
        let wide = bch_series::<PLocalRat>(4);
        let narrow = bch_series::<num_rational::Ratio<i64>>(4);
        assert_eq!(wide.len(), narrow.len());
        for (w, c) in wide.terms() {
            let d = narrow.coeff(w);
            assert_eq!((*d.numer() as i128, *d.denom() as i128), (*c.numer(), *c.denom()));
        }
    }
}
