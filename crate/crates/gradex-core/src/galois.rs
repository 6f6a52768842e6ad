//! The Galois map beta, its iterates, and the strong-grading decision.
//!
//! For group algebras the extension is Galois iff it is strongly graded
//! (A_g A_h = A_{gh} for all g, h), which turns the abstract bijectivity of
//! beta into finite exact linear algebra: per-pair span comparisons by row
//! reduction, plus explicit preimage witnesses for surjectivity.

use std::collections::BTreeMap;

use crate::algebra::{
    basis_words, degree_components, multiply, word_degree, AlgebraSpec, Element, Word,
};
use crate::bicharacter::CommutationFactor;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::hopf::base_words;
use crate::scalar::{QSpec, Scalar};

/// beta(a (x) b) = (a (x) 1) delta(b): decompose b by degree and
/// left-multiply each homogeneous part.
pub fn beta(
    spec: &AlgebraSpec,
    a: &Element,
    b: &Element,
) -> Result<Vec<(Element, GroupElement)>> {
    let mut out = Vec::new();
    for (g, part) in degree_components(spec, b)? {
        let prod = multiply(spec, a, &part)?;
        if !prod.is_zero() {
            out.push((prod, g));
        }
    }
    Ok(out)
}

/// beta^n on n+1 elements, folded from the innermost pair outward:
/// (beta (x) id^{n-1}) o ... o (id^{n-1} (x) beta). Returns summands
/// (element, [g_1, ..., g_n]) keyed by the group legs.
pub fn beta_n(
    spec: &AlgebraSpec,
    elems: &[Element],
) -> Result<Vec<(Element, Vec<GroupElement>)>> {
    if elems.len() < 2 {
        return Err(Error::InvalidSpec(
            "beta_n needs at least two elements (n >= 1)".into(),
        ));
    }
    let n = elems.len() - 1;
    let mut summands: Vec<(Element, Vec<GroupElement>)> =
        vec![(elems[n].clone(), Vec::new())];
    for i in (0..n).rev() {
        let mut next: BTreeMap<Vec<GroupElement>, Element> = BTreeMap::new();
        for (el, tail) in &summands {
            for (prod, g) in beta(spec, &elems[i], el)? {
                let mut legs = Vec::with_capacity(tail.len() + 1);
                legs.push(g);
                legs.extend(tail.iter().cloned());
                match next.remove(&legs) {
                    Some(acc) => {
                        next.insert(legs, acc.add(&prod)?);
                    }
                    None => {
                        next.insert(legs, prod);
                    }
                }
            }
        }
        summands = next
            .into_iter()
            .filter(|(_, el)| !el.is_zero())
            .map(|(legs, el)| (el, legs))
            .collect();
    }
    Ok(summands)
}

/// A graded algebra presented by finite per-degree bases with an exact
/// structure-constant product. The two modes exercised here: the full
/// extension A (x) kG, and the Pauli quotient of the generator algebra.
pub trait GradedAlgebra {
    type Basis: Clone + Ord + std::fmt::Debug;

    fn qspec(&self) -> QSpec;
    fn degrees(&self) -> Result<Vec<GroupElement>>;
    fn component_basis(&self, g: &GroupElement) -> Result<Vec<Self::Basis>>;
    /// Product of two basis vectors as a linear combination of basis
    /// vectors (all in the component of the composed degree).
    fn mul_basis(
        &self,
        u: &Self::Basis,
        v: &Self::Basis,
    ) -> Result<Vec<(Self::Basis, Scalar)>>;
}

/// The full extension A (x) kG: one copy of the base
/// algebra per group element, componentwise product.
#[derive(Clone, Debug)]
pub struct FullExtension {
    pub base_generators: usize,
    pub nilpotency: u32,
    pub cf: CommutationFactor,
}

impl FullExtension {
    pub fn new(spec: &AlgebraSpec) -> FullExtension {
        FullExtension {
            base_generators: spec.base.generators,
            nilpotency: spec.base.nilpotency,
            cf: spec.cf.clone(),
        }
    }

    /// Exterior product of base words: sign from transpositions, zero at
    /// nilpotency order.
    fn base_mul(&self, u: &[usize], v: &[usize]) -> Option<(i64, Vec<usize>)> {
        let mut word = u.to_vec();
        word.extend_from_slice(v);
        let mut sign = 1i64;
        for i in 1..word.len() {
            let mut j = i;
            while j > 0 && word[j - 1] > word[j] {
                word.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        let mut run = 1usize;
        for i in 1..word.len() {
            if word[i] == word[i - 1] {
                run += 1;
                if run >= self.nilpotency as usize {
                    return None;
                }
            } else {
                run = 1;
            }
        }
        Some((sign, word))
    }
}

impl GradedAlgebra for FullExtension {
    type Basis = (Vec<usize>, GroupElement);

    fn qspec(&self) -> QSpec {
        self.cf.qspec()
    }

    fn degrees(&self) -> Result<Vec<GroupElement>> {
        GroupElement::enumerate(self.cf.rank(), self.cf.modulus())
    }

    fn component_basis(&self, g: &GroupElement) -> Result<Vec<Self::Basis>> {
        Ok(base_words(self.base_generators, self.nilpotency)
            .into_iter()
            .map(|w| (w, g.clone()))
            .collect())
    }

    fn mul_basis(
        &self,
        u: &Self::Basis,
        v: &Self::Basis,
    ) -> Result<Vec<(Self::Basis, Scalar)>> {
        let degree = u.1.compose(&v.1)?;
        match self.base_mul(&u.0, &v.0) {
            Some((sign, word)) => Ok(vec![(
                (word, degree),
                Scalar::from_integer(sign, self.qspec()),
            )]),
            None => Ok(Vec::new()),
        }
    }
}

/// The subalgebra generated by the x^a_i inside the Pauli quotient: basis
/// words containing a zeroed pair of letters are killed.
#[derive(Clone, Debug)]
pub struct PauliQuotient {
    pub spec: AlgebraSpec,
    /// Unordered zeroed generator pairs, stored with both orientations.
    zeroed: std::collections::BTreeSet<(crate::algebra::Letter, crate::algebra::Letter)>,
}

impl PauliQuotient {
    pub fn new(
        spec: AlgebraSpec,
        pairs: &[(crate::algebra::Letter, crate::algebra::Letter)],
    ) -> PauliQuotient {
        let mut zeroed = std::collections::BTreeSet::new();
        for (p, q) in pairs {
            zeroed.insert((*p, *q));
            zeroed.insert((*q, *p));
        }
        PauliQuotient { spec, zeroed }
    }

    fn word_survives(&self, word: &Word) -> bool {
        for (i, p) in word.iter().enumerate() {
            for q in &word[i..] {
                if self.zeroed.contains(&(*p, *q)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn surviving_words(&self) -> Result<Vec<Word>> {
        Ok(basis_words(&self.spec, None)?
            .into_iter()
            .filter(|w| self.word_survives(w))
            .collect())
    }
}

impl GradedAlgebra for PauliQuotient {
    type Basis = Word;

    fn qspec(&self) -> QSpec {
        self.spec.qspec()
    }

    fn degrees(&self) -> Result<Vec<GroupElement>> {
        GroupElement::enumerate(self.spec.rank(), self.spec.modulus())
    }

    fn component_basis(&self, g: &GroupElement) -> Result<Vec<Self::Basis>> {
        let mut out = Vec::new();
        for w in self.surviving_words()? {
            if word_degree(&self.spec, &w)? == *g {
                out.push(w);
            }
        }
        Ok(out)
    }

    fn mul_basis(&self, u: &Self::Basis, v: &Self::Basis) -> Result<Vec<(Self::Basis, Scalar)>> {
        let one = Scalar::one(self.qspec());
        let prod = multiply(
            &self.spec,
            &Element::from_monomial(u.clone(), one.clone()),
            &Element::from_monomial(v.clone(), one),
        )?;
        Ok(prod
            .terms()
            .iter()
            .filter(|(w, _)| self.word_survives(w))
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect())
    }
}

// ---------------------------------------------------------------------------
// Exact linear algebra over Scalar.

/// Row-reduce in place; returns the rank. Pivots must be invertible
/// scalars (always true over a cyclotomic field).
#[allow(clippy::needless_range_loop)]
fn row_reduce(rows: &mut [Vec<Scalar>]) -> Result<usize> {
    if rows.is_empty() {
        return Ok(0);
    }
    let ncols = rows[0].len();
    let mut rank = 0usize;
    for col in 0..ncols {
        let pivot = (rank..rows.len()).find(|r| {
            !rows[*r][col].is_zero() && rows[*r][col].inverse().is_ok()
        });
        let Some(p) = pivot else {
            if (rank..rows.len()).any(|r| !rows[r][col].is_zero()) {
                return Err(Error::NotInvertible(
                    "no invertible pivot in column (formal multi-term scalar)".into(),
                ));
            }
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inverse()?;
        for c in col..ncols {
            rows[rank][c] = rows[rank][c].checked_mul(&inv)?;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let delta = factor.checked_mul(&rows[rank][c])?;
                    rows[r][c] = rows[r][c].checked_sub(&delta)?;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    Ok(rank)
}

/// Solve sum_i x_i rows[i] = target exactly; None when inconsistent.
#[allow(clippy::needless_range_loop)]
fn solve_combination(
    rows: &[Vec<Scalar>],
    target: &[Scalar],
    qspec: QSpec,
) -> Result<Option<Vec<Scalar>>> {
    // Transpose to a standard linear system A x = b with one column per row
    // vector, then eliminate with an augmented tableau tracking coefficients.
    let n = rows.len();
    let m = target.len();
    if n == 0 {
        return Ok(if target.iter().all(|c| c.is_zero()) {
            Some(Vec::new())
        } else {
            None
        });
    }
    // augmented: [A | b] with A (m x n)
    let mut aug: Vec<Vec<Scalar>> = (0..m)
        .map(|r| {
            let mut row: Vec<Scalar> = (0..n).map(|c| rows[c][r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots: Vec<Option<usize>> = vec![None; n];
    let mut rank = 0usize;
    for col in 0..n {
        let pivot = (rank..m).find(|r| {
            !aug[*r][col].is_zero() && aug[*r][col].inverse().is_ok()
        });
        let Some(p) = pivot else {
            if (rank..m).any(|r| !aug[r][col].is_zero()) {
                return Err(Error::NotInvertible(
                    "no invertible pivot while solving".into(),
                ));
            }
            continue;
        };
        aug.swap(rank, p);
        let inv = aug[rank][col].inverse()?;
        for c in col..=n {
            aug[rank][c] = aug[rank][c].checked_mul(&inv)?;
        }
        for r in 0..m {
            if r != rank && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in col..=n {
                    let delta = factor.checked_mul(&aug[rank][c])?;
                    aug[r][c] = aug[r][c].checked_sub(&delta)?;
                }
            }
        }
        pivots[col] = Some(rank);
        rank += 1;
        if rank == m {
            break;
        }
    }
    // Inconsistent if a zero row has nonzero rhs.
    for r in 0..m {
        if aug[r][..n].iter().all(|c| c.is_zero()) && !aug[r][n].is_zero() {
            return Ok(None);
        }
    }
    let mut solution = vec![Scalar::zero(qspec); n];
    for (col, pivot) in pivots.iter().enumerate() {
        if let Some(r) = pivot {
            solution[col] = aug[*r][n].clone();
        }
    }
    Ok(Some(solution))
}

// ---------------------------------------------------------------------------

/// Per-degree component basis, as named in reports.
#[derive(Clone, Debug)]
pub struct GradedComponentBasis<B> {
    pub degree: GroupElement,
    pub basis: Vec<B>,
}

#[derive(Clone, Debug)]
pub struct PairFailure {
    pub g: GroupElement,
    pub h: GroupElement,
    pub span_dim: usize,
    pub target_dim: usize,
}

#[derive(Clone, Debug)]
pub struct StrongGradingReport {
    pub pairs_checked: usize,
    pub failures: Vec<PairFailure>,
}

impl StrongGradingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every (g, h): the span of pairwise products of the component bases
/// must equal the full component at gh (dimension match after exact row
/// reduction). Collects per-pair dimension deficits.
pub fn strong_grading_check<A: GradedAlgebra>(alg: &A) -> Result<StrongGradingReport> {
    let degrees = alg.degrees()?;
    let components: BTreeMap<GroupElement, Vec<A::Basis>> = degrees
        .iter()
        .map(|g| Ok((g.clone(), alg.component_basis(g)?)))
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    let mut pairs = 0usize;
    for g in &degrees {
        for h in &degrees {
            pairs += 1;
            let gh = g.compose(h)?;
            let target = components
                .get(&gh)
                .ok_or_else(|| Error::MissingComponent(gh.to_string()))?;
            let index: BTreeMap<&A::Basis, usize> =
                target.iter().enumerate().map(|(i, b)| (b, i)).collect();
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for u in &components[g] {
                for v in &components[h] {
                    let mut row = vec![Scalar::zero(alg.qspec()); target.len()];
                    for (basis, coeff) in alg.mul_basis(u, v)? {
                        let idx = index.get(&basis).ok_or_else(|| {
                            Error::MissingComponent(format!(
                                "product lands outside component {gh}: {basis:?}"
                            ))
                        })?;
                        row[*idx] = row[*idx].checked_add(&coeff)?;
                    }
                    if row.iter().any(|c| !c.is_zero()) {
                        rows.push(row);
                    }
                }
            }
            let span_dim = row_reduce(&mut rows)?;
            if span_dim != target.len() {
                failures.push(PairFailure {
                    g: g.clone(),
                    h: h.clone(),
                    span_dim,
                    target_dim: target.len(),
                });
            }
        }
    }
    Ok(StrongGradingReport { pairs_checked: pairs, failures })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaloisVerdict {
    Galois,
    NotGalois,
}

#[derive(Clone, Debug)]
pub struct GaloisReport {
    pub verdict: GaloisVerdict,
    pub grading: StrongGradingReport,
}

/// Galois iff strongly graded (the group-algebra criterion).
pub fn galois_verdict<A: GradedAlgebra>(alg: &A) -> Result<GaloisReport> {
    let grading = strong_grading_check(alg)?;
    let verdict = if grading.passed() {
        GaloisVerdict::Galois
    } else {
        GaloisVerdict::NotGalois
    };
    Ok(GaloisReport { verdict, grading })
}

/// A preimage witness for one target (basis vector v, group leg g):
/// coefficients over the product pairs A_{deg(v) g^{-1}} x A_g.
#[derive(Clone, Debug)]
pub struct PreimageWitness<B> {
    pub target: (B, GroupElement),
    pub combination: Vec<((B, B), Scalar)>,
}

#[derive(Clone, Debug)]
pub struct SurjectivityReport<B> {
    pub witnesses: Vec<PreimageWitness<B>>,
    pub missing: Vec<(B, GroupElement)>,
}

impl<B> SurjectivityReport<B> {
    pub fn surjective(&self) -> bool {
        self.missing.is_empty()
    }
}

/// Degree-by-degree surjectivity of beta: for every component basis vector
/// v and every group leg g, solve for a preimage in
/// A_{deg(v) g^{-1}} (x) A_g by exact linear algebra.
pub fn beta_surjectivity_check<A: GradedAlgebra>(alg: &A) -> Result<SurjectivityReport<A::Basis>> {
    let degrees = alg.degrees()?;
    let mut witnesses = Vec::new();
    let mut missing = Vec::new();
    for d in &degrees {
        let target_basis = alg.component_basis(d)?;
        if target_basis.is_empty() {
            continue;
        }
        let index: BTreeMap<&A::Basis, usize> =
            target_basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
        for g in &degrees {
            let left = alg.component_basis(&d.compose(&g.inverse())?)?;
            let right = alg.component_basis(g)?;
            let mut pairs = Vec::new();
            let mut rows = Vec::new();
            for a in &left {
                for b in &right {
                    let mut row = vec![Scalar::zero(alg.qspec()); target_basis.len()];
                    for (basis, coeff) in alg.mul_basis(a, b)? {
                        if let Some(idx) = index.get(&basis) {
                            row[*idx] = row[*idx].checked_add(&coeff)?;
                        }
                    }
                    pairs.push((a.clone(), b.clone()));
                    rows.push(row);
                }
            }
            for (vi, v) in target_basis.iter().enumerate() {
                let mut target = vec![Scalar::zero(alg.qspec()); target_basis.len()];
                target[vi] = Scalar::one(alg.qspec());
                match solve_combination(&rows, &target, alg.qspec())? {
                    Some(coeffs) => witnesses.push(PreimageWitness {
                        target: (v.clone(), g.clone()),
                        combination: pairs
                            .iter()
                            .cloned()
                            .zip(coeffs)
                            .filter(|(_, c)| !c.is_zero())
                            .collect(),
                    }),
                    None => missing.push((v.clone(), g.clone())),
                }
            }
        }
    }
    Ok(SurjectivityReport { witnesses, missing })
}
