//! JSON forms of presentations, elements and group elements.
//!
//! A group element carries its presentation so a single document can be
//! read back without context:
//! `{"p":3,"k":2,"flavor":"base","presentation":{…},"coeffs":[[{"coeff":1,"exponents":[0,0]}],…]}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, Generator, Monomial, Presentation};
use crate::error::{Error, Result};
use crate::group::{Flavor, GroupElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub name: String,
    pub degree: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub p: u32,
    pub generators: Vec<GeneratorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: u32,
    pub exponents: Vec<u32>,
}

pub type ElementJson = Vec<TermJson>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupElementJson {
    pub p: u32,
    pub k: usize,
    pub flavor: String,
    pub presentation: PresentationJson,
    pub coeffs: Vec<ElementJson>,
}

pub fn presentation_to_json(alg: &Presentation) -> PresentationJson {
    PresentationJson {
        p: alg.p(),
        generators: alg
            .generators()
            .iter()
            .map(|g| GeneratorJson {
                name: g.name.clone(),
                degree: g.degree,
                cap: g.cap,
            })
            .collect(),
    }
}

pub fn presentation_from_json(j: &PresentationJson) -> Result<Arc<Presentation>> {
    Presentation::new(
        j.p,
        j.generators
            .iter()
            .map(|g| Generator::new(g.name.clone(), g.degree, g.cap))
            .collect(),
    )
}

pub fn element_to_json(x: &Element) -> ElementJson {
    x.terms()
        .map(|(m, c)| TermJson {
            coeff: c,
            exponents: m.exponents().to_vec(),
        })
        .collect()
}

pub fn element_from_json(alg: &Arc<Presentation>, j: &[TermJson]) -> Result<Element> {
    let mut terms = Vec::with_capacity(j.len());
    for t in j {
        if t.exponents.len() != alg.len() {
            return Err(Error::ExponentLength {
                expected: alg.len(),
                got: t.exponents.len(),
            });
        }
        terms.push((Monomial::from_exponents(&t.exponents), t.coeff as i64));
    }
    Element::from_terms(alg, terms)
}

pub fn group_element_to_json(g: &GroupElement) -> GroupElementJson {
    GroupElementJson {
        p: g.p(),
        k: g.k(),
        flavor: g.flavor().to_string(),
        presentation: presentation_to_json(g.presentation()),
        coeffs: g.coeffs().iter().map(element_to_json).collect(),
    }
}

pub fn group_element_from_json(j: &GroupElementJson) -> Result<GroupElement> {
    let alg = presentation_from_json(&j.presentation)?;
    if alg.p() != j.p {
        return Err(Error::Parse(format!(
            "p = {} but the presentation has p = {}",
            j.p,
            alg.p()
        )));
    }
    if j.coeffs.len() != j.k + 1 {
        return Err(Error::Truncation {
            requested: j.k,
            available: j.coeffs.len().saturating_sub(1),
        });
    }
    let flavor: Flavor = j.flavor.parse()?;
    let coeffs = j
        .coeffs
        .iter()
        .map(|c| element_from_json(&alg, c))
        .collect::<Result<Vec<_>>>()?;
    GroupElement::new(flavor, coeffs)
}

pub fn parse_group_element(text: &str) -> Result<GroupElement> {
    let j: GroupElementJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    group_element_from_json(&j)
}

/// One element, or an array of them.
pub fn parse_group_elements(text: &str) -> Result<Vec<GroupElement>> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let items = match v {
        serde_json::Value::Array(items) => items,
        other => vec![other],
    };
    items
        .into_iter()
        .map(|item| {
            let j: GroupElementJson =
                serde_json::from_value(item).map_err(|e| Error::Parse(e.to_string()))?;
            group_element_from_json(&j)
        })
        .collect()
}

pub fn parse_presentation(text: &str) -> Result<Arc<Presentation>> {
    let j: PresentationJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    presentation_from_json(&j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_schema() {
        let text = r#"{"p": 2, "generators": [{"name": "z1", "degree": 1, "cap": 4}, {"name": "z2", "degree": 3}]}"#;
        let alg = parse_presentation(text).unwrap();
        assert_eq!(alg.len(), 2);
        assert_eq!(alg.generators()[0].cap, Some(4));
        assert_eq!(alg.generators()[1].cap, None);
        let back = serde_json::to_string(&presentation_to_json(&alg)).unwrap();
        assert_eq!(
            back,
            r#"{"p":2,"generators":[{"name":"z1","degree":1,"cap":4},{"name":"z2","degree":3}]}"#
        );
    }

    #[test]
    fn group_element_round_trip() {
        let alg = parse_presentation(
            r#"{"p":3,"generators":[{"name":"t0","degree":1},{"name":"x1","degree":4}]}"#,
        )
        .unwrap()
        .adjoin_epsilon()
        .unwrap();
        let t0 = Element::generator(&alg, 0);
        let x1 = Element::generator(&alg, 1);
        let eps = Element::epsilon(&alg).unwrap();
        let lead = &Element::one(&alg) + &(&t0 * &eps);
        let g = GroupElement::new(Flavor::Base, vec![lead, x1.scaled(2)]).unwrap();
        let text = serde_json::to_string(&group_element_to_json(&g)).unwrap();
        let back = parse_group_element(&text).unwrap();
        assert_eq!(back.to_string(), g.to_string());
        assert_eq!(parse_group_elements(&format!("[{text},{text}]")).unwrap().len(), 2);
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_presentation("{").is_err());
        let alg = parse_presentation(r#"{"p":2,"generators":[{"name":"z","degree":1}]}"#).unwrap();
        let bad = vec![TermJson {
            coeff: 1,
            exponents: vec![1, 0],
        }];
        assert!(matches!(
            element_from_json(&alg, &bad),
            Err(Error::ExponentLength { expected: 1, got: 2 })
        ));
    }
}
