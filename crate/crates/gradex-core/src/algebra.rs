//! The extension algebra and its exact normal forms.
//!
//! Generators x^a_i (base generator a in tensor slot i) obey the quantum
//! commutation relations x^a_i x^b_j = b^{ij} x^b_j x^a_i for distinct slots,
//! the exterior sign within a slot, and base nilpotency. Elements are stored
//! as canonical-word -> coefficient maps, so equality and zero detection are
//! structural and exact.

use std::collections::BTreeMap;
use std::fmt;

use crate::bicharacter::CommutationFactor;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::scalar::{QSpec, Scalar};

/// The base algebra A: m generators theta^a with (theta^a)^k = 0 and the
/// exterior sign between distinct generators. Defaults m = 1, k = 2
/// (one Grassmann variable).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BaseAlgebraSpec {
    pub generators: usize,
    pub nilpotency: u32,
}

impl BaseAlgebraSpec {
    pub fn grassmann(generators: usize) -> Result<BaseAlgebraSpec> {
        BaseAlgebraSpec::new(generators, 2)
    }

    pub fn new(generators: usize, nilpotency: u32) -> Result<BaseAlgebraSpec> {
        if generators == 0 {
            return Err(Error::InvalidSpec("base needs at least one generator".into()));
        }
        if nilpotency < 2 {
            return Err(Error::InvalidSpec("nilpotency order must be >= 2".into()));
        }
        Ok(BaseAlgebraSpec { generators, nilpotency })
    }
}

impl Default for BaseAlgebraSpec {
    fn default() -> Self {
        BaseAlgebraSpec { generators: 1, nilpotency: 2 }
    }
}

/// The extension algebra A^ext: base algebra data plus the commutation
/// factor that twists slot exchanges.
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    pub base: BaseAlgebraSpec,
    pub cf: CommutationFactor,
}

impl AlgebraSpec {
    pub fn new(base: BaseAlgebraSpec, cf: CommutationFactor) -> AlgebraSpec {
        AlgebraSpec { base, cf }
    }

    pub fn rank(&self) -> usize {
        self.cf.rank()
    }

    pub fn modulus(&self) -> u32 {
        self.cf.modulus()
    }

    pub fn qspec(&self) -> QSpec {
        self.cf.qspec()
    }
}

/// One generator x^a_i, ordered by (slot, base). Both indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub slot: usize,
    pub base: usize,
}

impl Letter {
    pub fn new(slot: usize, base: usize) -> Letter {
        Letter { slot, base }
    }
}

pub type Word = Vec<Letter>;

/// A canonical monomial: nonzero coefficient times an ordered word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Scalar,
    pub word: Word,
}

/// A finite sum of canonical monomials with distinct words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    qspec: QSpec,
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero(qspec: QSpec) -> Element {
        Element { qspec, terms: BTreeMap::new() }
    }

    pub fn one(qspec: QSpec) -> Element {
        Element::from_monomial(Vec::new(), Scalar::one(qspec))
    }

    pub fn from_monomial(word: Word, coeff: Scalar) -> Element {
        let qspec = coeff.qspec();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        Element { qspec, terms }
    }

    pub fn qspec(&self) -> QSpec {
        self.qspec
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms
            .iter()
            .map(|(w, c)| Monomial { coeff: c.clone(), word: w.clone() })
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        if self.qspec != other.qspec {
            return Err(Error::QspecMismatch(self.qspec, other.qspec));
        }
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            match terms.get_mut(w) {
                Some(existing) => {
                    *existing = existing.checked_add(c)?;
                    if existing.is_zero() {
                        terms.remove(w);
                    }
                }
                None => {
                    terms.insert(w.clone(), c.clone());
                }
            }
        }
        Ok(Element { qspec: self.qspec, terms })
    }

    pub fn scale(&self, s: &Scalar) -> Result<Element> {
        if self.qspec != s.qspec() {
            return Err(Error::QspecMismatch(self.qspec, s.qspec()));
        }
        if s.is_zero() {
            return Ok(Element::zero(self.qspec));
        }
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            let sc = c.checked_mul(s)?;
            if !sc.is_zero() {
                terms.insert(w.clone(), sc);
            }
        }
        Ok(Element { qspec: self.qspec, terms })
    }
}

fn check_letters(spec: &AlgebraSpec, word: &[Letter]) -> Result<()> {
    for l in word {
        if l.slot < 1 || l.slot > spec.rank() {
            return Err(Error::IndexOutOfRange { index: l.slot, limit: spec.rank() });
        }
        if l.base < 1 || l.base > spec.base.generators {
            return Err(Error::IndexOutOfRange {
                index: l.base,
                limit: spec.base.generators,
            });
        }
    }
    Ok(())
}

/// Factor picked up when x_p x_l is rewritten to x_l x_p (p > l).
fn swap_factor(spec: &AlgebraSpec, p: &Letter, l: &Letter) -> Result<Scalar> {
    if p.slot != l.slot {
        spec.cf.eval_generators(p.slot, l.slot)
    } else {
        Ok(Scalar::from_integer(-1, spec.qspec()))
    }
}

/// Whether a repeated letter annihilates: always at run length k, and at
/// length 2 whenever b^{ii} != 1 (then x^2 = b^{ii} x^2 forces x^2 = 0).
fn square_is_zero(spec: &AlgebraSpec, letter: &Letter) -> Result<bool> {
    if spec.base.nilpotency == 2 {
        return Ok(true);
    }
    Ok(!spec.cf.eval_generators(letter.slot, letter.slot)?.is_one())
}

/// Rewrite coeff * (product of raw word letters) to canonical form.
pub fn normal_form(spec: &AlgebraSpec, raw_word: &[Letter], coeff: Scalar) -> Result<Element> {
    check_letters(spec, raw_word)?;
    if coeff.qspec() != spec.qspec() {
        return Err(Error::QspecMismatch(coeff.qspec(), spec.qspec()));
    }
    let mut coeff = coeff;
    let mut word: Word = Vec::with_capacity(raw_word.len());
    // Insertion sort; each leftward move of a letter past a greater one
    // multiplies the coefficient by the exchange factor. Confluence of the
    // rewrite system (b(g,h)b(h,g) = 1) makes the insertion order immaterial.
    for letter in raw_word {
        let mut pos = word.len();
        while pos > 0 && word[pos - 1] > *letter {
            coeff = coeff.checked_mul(&swap_factor(spec, &word[pos - 1], letter)?)?;
            pos -= 1;
        }
        word.insert(pos, *letter);
    }
    // Nilpotency on sorted runs.
    let mut run = 1usize;
    for i in 1..word.len() {
        if word[i] == word[i - 1] {
            run += 1;
            if run >= spec.base.nilpotency as usize
                || (run >= 2 && square_is_zero(spec, &word[i])?)
            {
                return Ok(Element::zero(spec.qspec()));
            }
        } else {
            run = 1;
        }
    }
    Ok(Element::from_monomial(word, coeff))
}

/// Bilinear product: distribute, concatenate, normal-form, collect.
pub fn multiply(spec: &AlgebraSpec, u: &Element, v: &Element) -> Result<Element> {
    let mut out = Element::zero(spec.qspec());
    for (wu, cu) in u.terms() {
        for (wv, cv) in v.terms() {
            let mut raw = wu.clone();
            raw.extend_from_slice(wv);
            let term = normal_form(spec, &raw, cu.checked_mul(cv)?)?;
            out = out.add(&term)?;
        }
    }
    Ok(out)
}

/// Group degree of a word: the composition of xi^{slot} over its letters.
pub fn word_degree(spec: &AlgebraSpec, word: &[Letter]) -> Result<GroupElement> {
    let mut deg = spec.cf.identity();
    for l in word {
        deg = deg.compose(&spec.cf.generator(l.slot)?)?;
    }
    Ok(deg)
}

pub fn monomial_degree(spec: &AlgebraSpec, m: &Monomial) -> Result<GroupElement> {
    word_degree(spec, &m.word)
}

/// Split an element into homogeneous components keyed by degree.
pub fn degree_components(
    spec: &AlgebraSpec,
    e: &Element,
) -> Result<BTreeMap<GroupElement, Element>> {
    let mut out: BTreeMap<GroupElement, Element> = BTreeMap::new();
    for (w, c) in e.terms() {
        let deg = word_degree(spec, w)?;
        let part = Element::from_monomial(w.clone(), c.clone());
        match out.remove(&deg) {
            Some(existing) => {
                out.insert(deg, existing.add(&part)?);
            }
            None => {
                out.insert(deg, part);
            }
        }
    }
    Ok(out)
}

/// Maximum multiplicity of a letter in a canonical word.
fn letter_capacity(spec: &AlgebraSpec, letter: &Letter) -> Result<usize> {
    if square_is_zero(spec, letter)? {
        Ok(1)
    } else {
        Ok(spec.base.nilpotency as usize - 1)
    }
}

/// All canonical basis words of length <= max_len (None: no length cap
/// beyond the nilpotency bounds), in lexicographic order.
pub fn basis_words(spec: &AlgebraSpec, max_len: Option<usize>) -> Result<Vec<Word>> {
    let mut letters = Vec::new();
    for slot in 1..=spec.rank() {
        for base in 1..=spec.base.generators {
            letters.push(Letter::new(slot, base));
        }
    }
    let caps: Vec<usize> = letters
        .iter()
        .map(|l| letter_capacity(spec, l))
        .collect::<Result<_>>()?;
    let natural_max: usize = caps.iter().sum();
    let cap_len = max_len.map_or(natural_max, |m| m.min(natural_max));
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Word> = vec![Vec::new()];
    for _ in 0..cap_len {
        let mut next = Vec::new();
        for w in &frontier {
            let start = w.last().map_or(0, |l| letters.iter().position(|x| x == l).unwrap());
            for (idx, letter) in letters.iter().enumerate().skip(start) {
                let count = w.iter().filter(|x| **x == *letter).count();
                if count < caps[idx] {
                    let mut nw = w.clone();
                    nw.push(*letter);
                    next.push(nw);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Report from the quantum commutativity check
/// (u v = b(|u|, |v|) v u over basis monomials).
#[derive(Clone, Debug)]
pub struct QcReport {
    pub pairs_checked: usize,
    pub failures: Vec<(Word, Word)>,
}

impl QcReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn quantum_commutativity_check(spec: &AlgebraSpec, max_len: usize) -> Result<QcReport> {
    if max_len < 1 {
        return Err(Error::InvalidSpec("max_len must be >= 1".into()));
    }
    let words = basis_words(spec, Some(max_len))?;
    let one = Scalar::one(spec.qspec());
    let mut failures = Vec::new();
    let mut pairs = 0usize;
    for wu in &words {
        for wv in &words {
            pairs += 1;
            let u = Element::from_monomial(wu.clone(), one.clone());
            let v = Element::from_monomial(wv.clone(), one.clone());
            let lhs = multiply(spec, &u, &v)?;
            let b = spec
                .cf
                .eval(&word_degree(spec, wu)?, &word_degree(spec, wv)?)?;
            let rhs = multiply(spec, &v, &u)?.scale(&b)?;
            if lhs != rhs {
                failures.push((wu.clone(), wv.clone()));
            }
        }
    }
    Ok(QcReport { pairs_checked: pairs, failures })
}

/// Word syntax shared with the CLI: `x<i>` when m = 1, `x<a>_<i>` when m > 1;
/// `1` denotes the empty word.
pub fn format_word(spec: &AlgebraSpec, word: &[Letter]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    word.iter()
        .map(|l| {
            if spec.base.generators == 1 {
                format!("x{}", l.slot)
            } else {
                format!("x{}_{}", l.base, l.slot)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn format_element(spec: &AlgebraSpec, e: &Element) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    e.terms()
        .iter()
        .map(|(w, c)| {
            let word = format_word(spec, w);
            if c.is_one() && !w.is_empty() {
                word
            } else if w.is_empty() {
                format!("{c}")
            } else if *c == Scalar::from_integer(-1, c.qspec()) {
                format!("-1 * {word}")
            } else if c.terms().len() > 1 {
                format!("({c}) * {word}")
            } else {
                format!("{c} * {word}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}_{}", self.base, self.slot)
    }
}
