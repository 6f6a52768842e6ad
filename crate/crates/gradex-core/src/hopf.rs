//! The group Hopf algebra kG and the Hopf-module structure on the extension.
//!
//! For group-likes: coproduct g -> g (x) g, counit 1, antipode g^{-1}. The
//! module picture uses the basis x^a_g = (base word) (x) g with the
//! degree-shift right action and the grading coaction.

use std::collections::BTreeMap;

use crate::algebra::{degree_components, AlgebraSpec, Element};
use crate::bicharacter::CommutationFactor;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::scalar::{QSpec, Scalar};

/// An element of the group algebra kG.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupAlgebraElement {
    pub terms: BTreeMap<GroupElement, Scalar>,
}

impl GroupAlgebraElement {
    pub fn group_like(g: GroupElement, qspec: QSpec) -> GroupAlgebraElement {
        let mut terms = BTreeMap::new();
        terms.insert(g, Scalar::one(qspec));
        GroupAlgebraElement { terms }
    }
}

pub fn coproduct(g: &GroupElement) -> (GroupElement, GroupElement) {
    (g.clone(), g.clone())
}

pub fn counit(_g: &GroupElement, qspec: QSpec) -> Scalar {
    Scalar::one(qspec)
}

pub fn antipode(g: &GroupElement) -> GroupElement {
    g.inverse()
}

/// An element of M (x) H: homogeneous parts paired with their group legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoactionResult {
    pub pairs: Vec<(Element, GroupElement)>,
}

/// The grading coaction: each homogeneous part of degree g maps to
/// (part, g); the unit is coinvariant.
pub fn coaction(spec: &AlgebraSpec, e: &Element) -> Result<CoactionResult> {
    let pairs = degree_components(spec, e)?
        .into_iter()
        .map(|(g, part)| (part, g))
        .collect();
    Ok(CoactionResult { pairs })
}

/// A basis vector x^a_g = (canonical base word) (x) g of the Hopf module
/// A (x) kG, with a scalar coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMonomial {
    /// Sorted multiset of base-generator indices (1-based).
    pub base_word: Vec<usize>,
    pub degree: GroupElement,
    pub coeff: Scalar,
}

impl ModuleMonomial {
    pub fn basis(base_word: Vec<usize>, degree: GroupElement, qspec: QSpec) -> ModuleMonomial {
        ModuleMonomial { base_word, degree, coeff: Scalar::one(qspec) }
    }
}

/// Right action: degree shift x^a_g <| h = x^a_{gh}.
pub fn right_action(m: &ModuleMonomial, h: &GroupElement) -> Result<ModuleMonomial> {
    Ok(ModuleMonomial {
        base_word: m.base_word.clone(),
        degree: m.degree.compose(h)?,
        coeff: m.coeff.clone(),
    })
}

/// Left action: h |> x_g = b(g, h) x_{gh}.
pub fn left_action(
    cf: &CommutationFactor,
    h: &GroupElement,
    m: &ModuleMonomial,
) -> Result<ModuleMonomial> {
    let shifted = right_action(m, h)?;
    Ok(ModuleMonomial {
        coeff: shifted.coeff.checked_mul(&cf.eval(&m.degree, h)?)?,
        ..shifted
    })
}

/// Canonical base words of A (sorted multisets of generator indices with
/// per-generator multiplicity < nilpotency order).
pub fn base_words(generators: usize, nilpotency: u32) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for g in 1..=generators {
        let mut next = Vec::new();
        for w in &out {
            for mult in 0..nilpotency as usize {
                let mut nw = w.clone();
                nw.extend(std::iter::repeat_n(g, mult));
                next.push(nw);
            }
        }
        out = next;
    }
    out.sort();
    out
}

#[derive(Clone, Debug)]
pub struct HopfModuleReport {
    pub pairs_checked: usize,
    pub failures: Vec<String>,
}

impl HopfModuleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exhaustively verifies that the coaction is a right H-module map:
/// delta(m <| h) = (m_(0) <| h_(1)) (x) (m_(1) h_(2)) with
/// Delta(h) = h (x) h, over every module basis vector and every h in G.
pub fn hopf_module_check(spec: &AlgebraSpec) -> Result<HopfModuleReport> {
    if spec.modulus() < 2 {
        return Err(Error::InfiniteGroup);
    }
    let all_g = GroupElement::enumerate(spec.rank(), spec.modulus())?;
    let words = base_words(spec.base.generators, spec.base.nilpotency);
    let qspec = spec.qspec();
    let mut failures = Vec::new();
    let mut pairs = 0usize;
    for word in &words {
        for g in &all_g {
            let m = ModuleMonomial::basis(word.clone(), g.clone(), qspec);
            for h in &all_g {
                pairs += 1;
                // LHS: coaction of (m <| h) == pair (m <| h, deg(m <| h)).
                let acted = right_action(&m, h)?;
                let lhs = (acted.clone(), acted.degree.clone());
                // RHS: m_(0) <| h_(1) (x) m_(1) h_(2) with Delta(h) = (h, h).
                let (h1, h2) = coproduct(h);
                let rhs_vec = right_action(&m, &h1)?;
                let rhs_leg = m.degree.compose(&h2)?;
                if lhs != (rhs_vec, rhs_leg) {
                    failures.push(format!(
                        "basis {:?} at degree {} with h = {}",
                        word, g, h
                    ));
                }
            }
        }
    }
    Ok(HopfModuleReport { pairs_checked: pairs, failures })
}

/// Degree-identity components of the given elements; nonzero ones only.
/// For the full extension this realizes the coinvariant subalgebra A (x) e.
pub fn coinvariants(spec: &AlgebraSpec, elems: &[Element]) -> Result<Vec<Element>> {
    let e = spec.cf.identity();
    let mut out = Vec::new();
    for elem in elems {
        if let Some(part) = degree_components(spec, elem)?.remove(&e) {
            if !part.is_zero() {
                out.push(part);
            }
        }
    }
    Ok(out)
}

/// Coinvariant filter on module basis vectors: those of degree e.
pub fn module_coinvariants(basis: &[ModuleMonomial]) -> Vec<ModuleMonomial> {
    basis.iter().filter(|m| m.degree.is_identity()).cloned().collect()
}
