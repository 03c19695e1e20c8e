//! Catalog variety descriptions and their JSON form.

use super::model::{ChowModel, LinearForm};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum VarietySpec {
    /// `ℙ^{n_1} × ⋯ × ℙ^{n_k}`; an empty list is the point.
    #[serde(rename = "multiproj")]
    MultiProj { dims: Vec<u32> },
    /// `ℙ(⊕ L_i)` over a connected base. Each line is a coefficient vector
    /// over the base generators (`h`'s first, then the `ζ = c₁(O(-1))` of
    /// any bundle layers).
    #[serde(rename = "projbundle")]
    ProjBundle { base: Box<VarietySpec>, lines: Vec<LinearForm> },
    Product { factors: Vec<VarietySpec> },
    Disjoint { components: Vec<VarietySpec> },
}

/// A variety as a list of connected models.
#[derive(Clone, Debug)]
pub struct Variety {
    pub components: Vec<ChowModel>,
}

impl Variety {
    /// The common dimension, if all components have one.
    pub fn pure_dim(&self) -> Option<u32> {
        let d = self.components.first()?.dim;
        self.components.iter().all(|c| c.dim == d).then_some(d)
    }

    pub fn connected(&self) -> Option<&ChowModel> {
        match self.components.as_slice() {
            [m] => Some(m),
            _ => None,
        }
    }
}

impl VarietySpec {
    pub fn point() -> Self {
        VarietySpec::MultiProj { dims: vec![] }
    }

    /// `ℙⁿ`, with `ℙ⁰` the point.
    pub fn projective(n: u32) -> Self {
        if n == 0 {
            Self::point()
        } else {
            VarietySpec::MultiProj { dims: vec![n] }
        }
    }

    pub fn build(&self) -> Result<Variety> {
        Ok(Variety { components: self.build_components()? })
    }

    /// The model of a connected spec.
    pub fn build_connected(&self) -> Result<ChowModel> {
        let mut c = self.build_components()?;
        if c.len() != 1 {
            return Err(Error::InvalidSpec(format!("expected a connected variety, got {} components", c.len())));
        }
        Ok(c.pop().unwrap())
    }

    fn build_components(&self) -> Result<Vec<ChowModel>> {
        match self {
            VarietySpec::MultiProj { dims } => {
                let dims: Vec<u32> = dims.iter().copied().filter(|&d| d > 0).collect();
                Ok(vec![ChowModel::multiproj(&dims)])
            }
            VarietySpec::ProjBundle { base, lines } => {
                let b = base.build_connected()?;
                Ok(vec![b.proj_bundle(lines)?])
            }
            VarietySpec::Product { factors } => {
                let mut acc = vec![ChowModel::multiproj(&[])];
                for f in factors {
                    let parts = f.build_components()?;
                    let mut next = Vec::new();
                    for a in &acc {
                        for b in &parts {
                            next.push(a.product(b)?);
                        }
                    }
                    acc = next;
                }
                Ok(acc)
            }
            VarietySpec::Disjoint { components } => {
                let mut out = Vec::new();
                for c in components {
                    out.extend(c.build_components()?);
                }
                Ok(out)
            }
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("specs serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let s = r#"{"type":"projbundle","base":{"type":"multiproj","dims":[1]},"lines":[[0],[1]]}"#;
        let spec = VarietySpec::from_json(s).unwrap();
        assert_eq!(spec, VarietySpec::ProjBundle { base: Box::new(VarietySpec::projective(1)), lines: vec![vec![0], vec![1]] });
        assert_eq!(VarietySpec::from_json(&spec.to_json()).unwrap(), spec);
        assert!(VarietySpec::from_json(r#"{"type":"cube"}"#).is_err());
    }

    #[test]
    fn products_distribute_over_unions() {
        let two_points = VarietySpec::Disjoint { components: vec![VarietySpec::point(), VarietySpec::point()] };
        let spec = VarietySpec::Product { factors: vec![two_points, VarietySpec::projective(1)] };
        let v = spec.build().unwrap();
        assert_eq!(v.components.len(), 2);
        assert_eq!(v.pure_dim(), Some(1));
        assert!(spec.build_connected().is_err());
    }

    #[test]
    fn malformed_bundle() {
        let spec = VarietySpec::ProjBundle { base: Box::new(VarietySpec::projective(1)), lines: vec![vec![0, 1]] };
        assert!(spec.build().is_err());
        let spec = VarietySpec::ProjBundle { base: Box::new(VarietySpec::projective(1)), lines: vec![] };
        assert!(spec.build().is_err());
    }
}
