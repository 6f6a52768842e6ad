//! JSON algebra specification documents and the element grammar shared with
//! the CLI.
//!
//! Documents are strict: unknown keys are rejected so a typo in a matrix
//! name cannot silently fall back to a default.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::{normal_form, AlgebraSpec, BaseAlgebraSpec, Element, Letter};
use crate::bicharacter::CommutationFactor;
use crate::error::{Error, Result};
use crate::scalar::{QSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    pub rank: usize,
    pub modulus: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QSection {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseSection {
    pub kind: String,
    #[serde(default = "default_generators")]
    pub generators: usize,
    #[serde(default = "default_nilpotency")]
    pub nilpotency: u32,
}

fn default_generators() -> usize {
    1
}

fn default_nilpotency() -> u32 {
    2
}

impl Default for BaseSection {
    fn default() -> Self {
        BaseSection {
            kind: "grassmann".into(),
            generators: 1,
            nilpotency: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetSection {
    pub kind: String,
    #[serde(rename = "N")]
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<QSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<BaseSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<PresetSection>,
}

impl SpecDocument {
    pub fn flux_preset(n: usize) -> SpecDocument {
        SpecDocument {
            preset: Some(PresetSection { kind: "flux".into(), n }),
            ..Default::default()
        }
    }

    pub fn from_json(text: &str) -> Result<SpecDocument> {
        let doc: SpecDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.check_document()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec documents always serialize")
    }

    fn check_document(&self) -> Result<()> {
        let explicit =
            self.sigma.is_some() || self.omega.is_some() || self.q.is_some() || self.group.is_some();
        match (&self.preset, explicit) {
            (Some(_), true) => Err(Error::Parse(
                "preset and explicit (group, q, sigma, omega) are mutually exclusive".into(),
            )),
            (None, false) => Err(Error::Parse(
                "spec needs either a preset or explicit (group, q, sigma, omega)".into(),
            )),
            (Some(p), false) => {
                if p.kind != "flux" {
                    return Err(Error::Parse(format!(
                        "preset.kind: unknown preset '{}'",
                        p.kind
                    )));
                }
                if p.n == 0 {
                    return Err(Error::Parse("preset.N: must be >= 1".into()));
                }
                Ok(())
            }
            (None, true) => {
                let group = self
                    .group
                    .as_ref()
                    .ok_or_else(|| Error::Parse("group: missing".into()))?;
                let rank = group.rank;
                if rank == 0 {
                    return Err(Error::Parse("group.rank: must be >= 1".into()));
                }
                if group.modulus == 1 {
                    return Err(Error::Parse(
                        "group.modulus: must be 0 (for Z^N) or >= 2".into(),
                    ));
                }
                for (name, m) in [("sigma", &self.sigma), ("omega", &self.omega)] {
                    let m = m
                        .as_ref()
                        .ok_or_else(|| Error::Parse(format!("{name}: missing")))?;
                    if m.len() != rank || m.iter().any(|row| row.len() != rank) {
                        return Err(Error::Parse(format!("{name}: must be {rank}x{rank}")));
                    }
                }
                let q = self
                    .q
                    .as_ref()
                    .ok_or_else(|| Error::Parse("q: missing".into()))?;
                match q.kind.as_str() {
                    "formal" => {
                        if q.order.is_some() {
                            return Err(Error::Parse(
                                "q.order: not allowed for formal q".into(),
                            ));
                        }
                    }
                    "root_of_unity" => {
                        let order = q
                            .order
                            .ok_or_else(|| Error::Parse("q.order: required".into()))?;
                        if order < 2 {
                            return Err(Error::Parse("q.order: must be >= 2".into()));
                        }
                    }
                    other => {
                        return Err(Error::Parse(format!("q.kind: unknown kind '{other}'")));
                    }
                }
                if let Some(base) = &self.base {
                    if base.kind != "grassmann" {
                        return Err(Error::Parse(format!(
                            "base.kind: unknown kind '{}'",
                            base.kind
                        )));
                    }
                    if base.generators == 0 {
                        return Err(Error::Parse("base.generators: must be >= 1".into()));
                    }
                    if base.nilpotency < 2 {
                        return Err(Error::Parse("base.nilpotency: must be >= 2".into()));
                    }
                }
                Ok(())
            }
        }
    }

    fn qspec(&self) -> Result<QSpec> {
        if let Some(p) = &self.preset {
            let _ = p;
            return Ok(QSpec::RootOfUnity(2));
        }
        let q = self.q.as_ref().expect("checked");
        Ok(match q.kind.as_str() {
            "formal" => QSpec::Formal,
            _ => QSpec::root_of_unity(q.order.expect("checked"))?,
        })
    }

    fn base_spec(&self) -> Result<BaseAlgebraSpec> {
        match &self.base {
            Some(b) => BaseAlgebraSpec::new(b.generators, b.nilpotency),
            None => Ok(BaseAlgebraSpec::default()),
        }
    }

    /// Unvalidated commutation factor, for the `validate` workflow.
    pub fn to_commutation_factor_raw(&self) -> Result<CommutationFactor> {
        if let Some(p) = &self.preset {
            return CommutationFactor::from_flux(p.n);
        }
        let group = self.group.as_ref().expect("checked");
        CommutationFactor::raw(
            self.sigma.clone().expect("checked"),
            self.omega.clone().expect("checked"),
            self.qspec()?,
            group.rank,
            group.modulus,
        )
    }

    /// Validated commutation factor; construction invariants are hard errors.
    pub fn to_commutation_factor(&self) -> Result<CommutationFactor> {
        if let Some(p) = &self.preset {
            return CommutationFactor::from_flux(p.n);
        }
        let group = self.group.as_ref().expect("checked");
        CommutationFactor::new(
            self.sigma.clone().expect("checked"),
            self.omega.clone().expect("checked"),
            self.qspec()?,
            group.rank,
            group.modulus,
        )
    }

    pub fn to_algebra_spec(&self) -> Result<AlgebraSpec> {
        Ok(AlgebraSpec::new(self.base_spec()?, self.to_commutation_factor()?))
    }

    pub fn is_flux_preset(&self) -> Option<usize> {
        self.preset.as_ref().filter(|p| p.kind == "flux").map(|p| p.n)
    }
}

// ---------------------------------------------------------------------------
// Element grammar: terms separated by `+`, optional scalar factors (integer,
// rational a/b, q, q^k), letters `x<i>` (m = 1) or `x<a>_<i>`, joined by `*`.
// `1` is the empty word. Whitespace is insignificant.

fn parse_scalar_factor(f: &str, qspec: QSpec) -> Result<Scalar> {
    if f == "q" {
        return Ok(Scalar::q_power(1, qspec));
    }
    if let Some(exp) = f.strip_prefix("q^") {
        let e: i64 = exp
            .parse()
            .map_err(|_| Error::Parse(format!("bad q exponent '{exp}'")))?;
        return Ok(Scalar::q_power(e, qspec));
    }
    if let Some((num, den)) = f.split_once('/') {
        let n: BigInt = num
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator '{num}'")))?;
        let d: BigInt = den
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator '{den}'")))?;
        if d == BigInt::from(0) {
            return Err(Error::Parse("zero denominator".into()));
        }
        return Ok(Scalar::from_rational(BigRational::new(n, d), qspec));
    }
    let n: i64 = f
        .parse()
        .map_err(|_| Error::Parse(format!("unrecognized factor '{f}'")))?;
    Ok(Scalar::from_integer(n, qspec))
}

fn parse_letter(f: &str, spec: &AlgebraSpec) -> Result<Letter> {
    let body = f
        .strip_prefix('x')
        .ok_or_else(|| Error::Parse(format!("expected generator, got '{f}'")))?;
    let letter = if let Some((a, i)) = body.split_once('_') {
        let base: usize = a
            .parse()
            .map_err(|_| Error::Parse(format!("bad base index in '{f}'")))?;
        let slot: usize = i
            .parse()
            .map_err(|_| Error::Parse(format!("bad slot index in '{f}'")))?;
        Letter::new(slot, base)
    } else {
        if spec.base.generators > 1 {
            return Err(Error::Parse(format!(
                "'{f}': use x<a>_<i> when the base has more than one generator"
            )));
        }
        let slot: usize = body
            .parse()
            .map_err(|_| Error::Parse(format!("bad slot index in '{f}'")))?;
        Letter::new(slot, 1)
    };
    if letter.slot < 1 || letter.slot > spec.rank() {
        return Err(Error::Parse(format!(
            "'{f}': slot out of range 1..={}",
            spec.rank()
        )));
    }
    if letter.base < 1 || letter.base > spec.base.generators {
        return Err(Error::Parse(format!(
            "'{f}': base index out of range 1..={}",
            spec.base.generators
        )));
    }
    Ok(letter)
}

/// Parse one raw term into (coefficient, raw word), without normal forming.
fn parse_term(term: &str, spec: &AlgebraSpec) -> Result<(Scalar, Vec<Letter>)> {
    let mut term = term.trim();
    let mut coeff = Scalar::one(spec.qspec());
    if let Some(rest) = term.strip_prefix('-') {
        coeff = coeff.neg();
        term = rest.trim();
    }
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let mut word = Vec::new();
    for factor in term.split('*') {
        let f: String = factor.chars().filter(|c| !c.is_whitespace()).collect();
        if f.is_empty() {
            return Err(Error::Parse("empty factor".into()));
        }
        if f.starts_with('x') {
            word.push(parse_letter(&f, spec)?);
        } else if f == "1" {
            // the empty word
        } else {
            coeff = coeff.checked_mul(&parse_scalar_factor(&f, spec.qspec())?)?;
        }
    }
    Ok((coeff, word))
}

/// Parse an element expression and bring every term to canonical form.
pub fn parse_element(input: &str, spec: &AlgebraSpec) -> Result<Element> {
    let mut out = Element::zero(spec.qspec());
    for term in input.split('+') {
        let (coeff, word) = parse_term(term, spec)?;
        out = out.add(&normal_form(spec, &word, coeff)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::format_element;

    fn flux_spec(n: usize) -> AlgebraSpec {
        AlgebraSpec::new(
            BaseAlgebraSpec::default(),
            CommutationFactor::from_flux(n).unwrap(),
        )
    }

    #[test]
    fn flux_preset_document() {
        let doc = SpecDocument::from_json(r#"{"preset": {"kind": "flux", "N": 3}}"#).unwrap();
        let spec = doc.to_algebra_spec().unwrap();
        assert_eq!(spec.rank(), 3);
        assert_eq!(spec.modulus(), 2);
        assert_eq!(doc.is_flux_preset(), Some(3));
    }

    #[test]
    fn explicit_document() {
        let doc = SpecDocument::from_json(
            r#"{
                "group": {"rank": 2, "modulus": 4},
                "q": {"kind": "root_of_unity", "order": 4},
                "sigma": [[0, 1], [1, 0]],
                "omega": [[0, 1], [-1, 0]]
            }"#,
        )
        .unwrap();
        assert!(doc.to_algebra_spec().is_ok());
    }

    #[test]
    fn asymmetric_omega_rejected_at_construction() {
        let doc = SpecDocument::from_json(
            r#"{
                "group": {"rank": 2, "modulus": 2},
                "q": {"kind": "root_of_unity", "order": 2},
                "sigma": [[0, 0], [0, 0]],
                "omega": [[0, 1], [1, 0]]
            }"#,
        )
        .unwrap();
        let err = doc.to_algebra_spec().unwrap_err();
        assert!(err.to_string().contains("antisymmetric"), "{err}");
    }

    #[test]
    fn strict_mode_rejects_unknown_keys() {
        let err = SpecDocument::from_json(
            r#"{"preset": {"kind": "flux", "N": 2}, "sgima": [[0]]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("sgima"), "{err}");
    }

    #[test]
    fn preset_and_explicit_are_exclusive() {
        let err = SpecDocument::from_json(
            r#"{"preset": {"kind": "flux", "N": 2}, "sigma": [[0]]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("mutually exclusive"));
    }

    #[test]
    fn round_trip_identity() {
        for doc in [
            SpecDocument::flux_preset(3),
            SpecDocument::from_json(
                r#"{
                    "group": {"rank": 2, "modulus": 0},
                    "q": {"kind": "formal"},
                    "sigma": [[1, 0], [0, 1]],
                    "omega": [[0, 2], [-2, 0]],
                    "base": {"kind": "grassmann", "generators": 2, "nilpotency": 2}
                }"#,
            )
            .unwrap(),
        ] {
            assert_eq!(SpecDocument::from_json(&doc.to_json()).unwrap(), doc);
        }
    }

    #[test]
    fn element_grammar() {
        let spec = flux_spec(3);
        let e = parse_element("x2*x1", &spec).unwrap();
        assert_eq!(format_element(&spec, &e), "-1 * x1*x2");
        let e = parse_element("2*x1 + -2*x1", &spec).unwrap();
        assert!(e.is_zero());
        let e = parse_element("1", &spec).unwrap();
        assert_eq!(format_element(&spec, &e), "1");
        let e = parse_element("q^1 * x1", &spec).unwrap();
        // q has order 2 here, so the coefficient reduces to -1
        assert_eq!(format_element(&spec, &e), "-1 * x1");
        assert!(parse_element("x9", &spec).is_err());
        assert!(parse_element("y1", &spec).is_err());
        assert!(parse_element("3/2 * x1", &spec).is_ok());
    }
}
