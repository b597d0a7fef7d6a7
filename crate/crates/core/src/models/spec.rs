//! JSON model files and exported basis listings.
//!
//! A model file looks like
//! `{"kind": "plane", "params": {"d": 5}, "field": 32003, "seed": 1}`;
//! explicit equations replace the seed with
//! `"equations": [[{"exp": [5,0,0], "coeff": 1}, ...]]`.

use serde::{Deserialize, Serialize};

use super::{
    ci33_model, plane_curve_model, rational_normal_model, CurveModel, Equations, ModelKind, Monomial, Polynomial,
};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindName {
    Plane,
    Ci33,
    Rnc,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub exp: Vec<u16>,
    pub coeff: i64,
}

pub type EquationSpec = Vec<TermSpec>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub kind: KindName,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equations: Option<Vec<EquationSpec>>,
}

impl ModelSpec {
    pub fn from_kind(kind: ModelKind, field: FieldSpec, seed: Option<u64>) -> Self {
        let (name, params) = match kind {
            ModelKind::Plane { d } => (KindName::Plane, Params { d: Some(d), n: None }),
            ModelKind::Ci33 => (KindName::Ci33, Params::default()),
            ModelKind::Rnc { n } => (KindName::Rnc, Params { d: None, n: Some(n) }),
        };
        let seed = if kind.equation_degrees().is_empty() { None } else { seed };
        Self {
            kind: name,
            params,
            field,
            seed,
            equations: None,
        }
    }

    pub fn model_kind(&self) -> Result<ModelKind> {
        let need =
            |v: Option<usize>, name: &str| v.ok_or_else(|| Error::InvalidModel(format!("missing parameter {name}")));
        Ok(match self.kind {
            KindName::Plane => ModelKind::Plane {
                d: need(self.params.d, "d")?,
            },
            KindName::Ci33 => ModelKind::Ci33,
            KindName::Rnc => ModelKind::Rnc {
                n: need(self.params.n, "n")?,
            },
        })
    }

    /// Builds the model over `field`, which must match `self.field`.
    pub fn build<F: Field>(&self, field: F) -> Result<CurveModel<F>> {
        if field.spec() != self.field {
            return Err(Error::InvalidModel(format!(
                "model file asks for {}, built over {}",
                self.field,
                field.spec()
            )));
        }
        let kind = self.model_kind()?;
        let equations = match (&self.equations, self.seed) {
            (Some(eqs), _) => Equations::Explicit(
                eqs.iter()
                    .map(|e| {
                        let terms = e
                            .iter()
                            .map(|t| (Monomial(t.exp.clone()), field.from_i64(t.coeff)))
                            .collect();
                        Polynomial::new(&field, kind.nvars(), terms)
                    })
                    .collect(),
            ),
            (None, Some(seed)) => Equations::Seeded(seed),
            (None, None) if kind.equation_degrees().is_empty() => Equations::Seeded(0),
            (None, None) => return Err(Error::InvalidModel("a seed or explicit equations are required".into())),
        };
        match kind {
            ModelKind::Plane { d } => plane_curve_model(d, equations, field),
            ModelKind::Ci33 => ci33_model(equations, field),
            ModelKind::Rnc { n } => rational_normal_model(n, field),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListedTerm {
    pub exp: Vec<u16>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListedPiece {
    pub q: usize,
    pub degree: usize,
    pub dim: usize,
    pub basis: Vec<Monomial>,
}

/// Everything needed to rebuild and audit a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelListing {
    pub schema: u32,
    pub model: ModelKind,
    pub field: FieldSpec,
    pub seed: Option<u64>,
    pub genus: usize,
    pub monomial_order: String,
    pub equations: Vec<Vec<ListedTerm>>,
    pub pieces: Vec<ListedPiece>,
}

impl<F: Field> CurveModel<F> {
    pub fn listing(&self) -> ModelListing {
        let f = self.field();
        ModelListing {
            schema: 1,
            model: self.kind(),
            field: f.spec(),
            seed: self.seed(),
            genus: self.genus(),
            monomial_order: "grlex, x0 > x1 > ..., bases listed largest first".into(),
            equations: self
                .equations()
                .iter()
                .map(|e| {
                    e.terms
                        .iter()
                        .map(|(m, c)| ListedTerm {
                            exp: m.0.clone(),
                            coeff: f.format(c),
                        })
                        .collect()
                })
                .collect(),
            pieces: self
                .pieces()
                .iter()
                .map(|p| ListedPiece {
                    q: p.q,
                    degree: p.degree,
                    dim: p.dim(),
                    basis: p.basis().to_vec(),
                })
                .collect(),
        }
    }
}
