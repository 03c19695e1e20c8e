//! Involution data: an ambient variety, its fixed components and their
//! normal bundles, with the JSON form and the builtin families.

use crate::chow::{ChowModel, LinearForm, VarietySpec};
use crate::error::{Error, Result};
use crate::symmfunc::{tangent_bundle, VirtualSplitBundle};
use serde::{Deserialize, Serialize};

/// One fixed component `F` of codimension `r`, with normal bundle `N`
/// given by its line roots and a signed trivial part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedComponent {
    pub spec: VarietySpec,
    pub codim: u32,
    #[serde(default)]
    pub normal_lines: Vec<LinearForm>,
    #[serde(default)]
    pub normal_trivial_rank: i64,
}

impl FixedComponent {
    pub fn normal(&self) -> VirtualSplitBundle {
        VirtualSplitBundle::with_trivial(self.normal_lines.clone(), self.normal_trivial_rank)
    }

    /// `N ⊕ 1`.
    pub fn normal_plus_one(&self) -> VirtualSplitBundle {
        VirtualSplitBundle::with_trivial(self.normal_lines.clone(), self.normal_trivial_rank + 1)
    }

    /// The roots of `N ⊕ 1` as a line list, trivial summands as zero forms.
    pub fn completion_lines(&self, ngens: usize) -> Vec<LinearForm> {
        let mut lines = self.normal_lines.clone();
        for _ in 0..(self.normal_trivial_rank + 1).max(0) {
            lines.push(vec![0; ngens]);
        }
        lines
    }

    /// `ℙ(N ⊕ 1)` as a catalog spec.
    pub fn completion_spec(&self, ngens: usize) -> VarietySpec {
        VarietySpec::ProjBundle { base: Box::new(self.spec.clone()), lines: self.completion_lines(ngens) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuTwoAction {
    pub ambient: VarietySpec,
    pub components: Vec<FixedComponent>,
}

/// A component with its model built.
#[derive(Clone, Debug)]
pub struct BuiltComponent {
    pub data: FixedComponent,
    pub model: ChowModel,
    /// The model of `ℙ(N ⊕ 1)`.
    pub completion: ChowModel,
}

impl BuiltComponent {
    pub fn normal(&self) -> VirtualSplitBundle {
        self.data.normal()
    }

    pub fn dim(&self) -> u32 {
        self.model.dim
    }
}

/// A validated action with all models built.
#[derive(Clone, Debug)]
pub struct BuiltAction {
    pub action: MuTwoAction,
    pub ambient: Vec<ChowModel>,
    pub dim: u32,
    pub components: Vec<BuiltComponent>,
}

impl BuiltAction {
    /// `dim X^{μ₂}`, or `None` for an empty fixed locus.
    pub fn fixed_dim(&self) -> Option<u32> {
        self.components.iter().map(|c| c.dim()).max()
    }

    /// `2·dim X^{μ₂} < n − 1`, with the empty locus counting as dimension −1.
    pub fn small_fixed_locus(&self) -> bool {
        let d = self.fixed_dim().map(|d| d as i64).unwrap_or(-1);
        2 * d < self.dim as i64 - 1
    }

    pub fn has_codim_zero(&self) -> bool {
        self.components.iter().any(|c| c.data.codim == 0)
    }
}

impl MuTwoAction {
    pub fn from_json(s: &str) -> Result<MuTwoAction> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if v.get("builtin").is_some() {
            let b: Builtin = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
            return b.action();
        }
        serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("actions serialize")
    }

    /// Checks dimensions, ranks and honesty of `N ⊕ 1`, and builds models.
    pub fn build(&self) -> Result<BuiltAction> {
        let amb = self.ambient.build()?;
        let dim = amb.pure_dim().ok_or_else(|| Error::InvalidAction("ambient is not pure-dimensional".into()))?;
        let mut components = Vec::new();
        for (k, c) in self.components.iter().enumerate() {
            let model = c.spec.build_connected().map_err(|e| Error::InvalidAction(format!("component {}: {}", k, e)))?;
            if model.dim + c.codim != dim {
                return Err(Error::InvalidAction(format!("component {} has dimension {} and codimension {} in a variety of dimension {}", k, model.dim, c.codim, dim)));
            }
            let n = c.normal();
            n.check(&model).map_err(|e| Error::InvalidAction(format!("component {}: {}", k, e)))?;
            if n.rank() != c.codim as i64 {
                return Err(Error::InvalidAction(format!("component {}: normal bundle has rank {}, codimension is {}", k, n.rank(), c.codim)));
            }
            if !c.normal_plus_one().is_honest() {
                return Err(Error::InvalidAction(format!("component {}: N ⊕ 1 must be an honest bundle", k)));
            }
            if c.codim == 0 && (self.components.len() != 1 || c.spec != self.ambient) {
                return Err(Error::InvalidAction("a component of codimension 0 must be the whole ambient variety".into()));
            }
            let completion = model.proj_bundle(&c.completion_lines(model.ngens()))?;
            components.push(BuiltComponent { data: c.clone(), model, completion });
        }
        Ok(BuiltAction { action: self.clone(), ambient: amb.components, dim, components })
    }
}

/// The builtin families, addressable from JSON as
/// `{"builtin": "linear_pn", "n": 3, "a": 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "builtin", rename_all = "snake_case")]
pub enum Builtin {
    /// `ℙⁿ` with `ℙᵃ ⊔ ℙ^{n−a−1}` fixed.
    LinearPn { n: u32, a: u32 },
    /// `(ℙ¹)ⁿ` acting factorwise, `2ⁿ` fixed points.
    FactorwiseP1n { n: u32 },
    /// `Y × Y` swapping the factors, diagonal fixed.
    SwapSquare { spec: VarietySpec },
}

impl Builtin {
    pub fn name(&self) -> String {
        match self {
            Builtin::LinearPn { n, a } => format!("linear_pn(n={}, a={})", n, a),
            Builtin::FactorwiseP1n { n } => format!("factorwise_p1n(n={})", n),
            Builtin::SwapSquare { spec } => format!("swap_square({})", spec.to_json()),
        }
    }

    pub fn action(&self) -> Result<MuTwoAction> {
        match self {
            Builtin::LinearPn { n, a } => linear_pn(*n, *a),
            Builtin::FactorwiseP1n { n } => factorwise_p1n(*n),
            Builtin::SwapSquare { spec } => swap_square(spec),
        }
    }
}

/// `ℙᵏ` with normal bundle `r·O(1)`; on a point the bundle is trivial.
fn linear_piece(k: u32, r: u32) -> FixedComponent {
    if k == 0 {
        FixedComponent { spec: VarietySpec::point(), codim: r, normal_lines: vec![], normal_trivial_rank: r as i64 }
    } else {
        FixedComponent { spec: VarietySpec::projective(k), codim: r, normal_lines: vec![vec![1]; r as usize], normal_trivial_rank: 0 }
    }
}

/// `[x₀ : ⋯ : x_n] ↦ [−x₀ : ⋯ : −x_a : x_{a+1} : ⋯ : x_n]`.
pub fn linear_pn(n: u32, a: u32) -> Result<MuTwoAction> {
    if a >= n {
        return Err(Error::InvalidAction(format!("linear_pn needs 0 ≤ a < n, got n = {}, a = {}", n, a)));
    }
    Ok(MuTwoAction { ambient: VarietySpec::projective(n), components: vec![linear_piece(a, n - a), linear_piece(n - a - 1, a + 1)] })
}

/// `z ↦ −z` on each factor of `(ℙ¹)ⁿ`.
pub fn factorwise_p1n(n: u32) -> Result<MuTwoAction> {
    if n == 0 || n > 12 {
        return Err(Error::InvalidAction(format!("factorwise_p1n needs 1 ≤ n ≤ 12, got {}", n)));
    }
    let pt = FixedComponent { spec: VarietySpec::point(), codim: n, normal_lines: vec![], normal_trivial_rank: n as i64 };
    Ok(MuTwoAction { ambient: VarietySpec::MultiProj { dims: vec![1; n as usize] }, components: vec![pt; 1 << n] })
}

/// `(y, y') ↦ (y', y)` on `Y × Y`; the diagonal has normal bundle `T_Y`.
/// On `ℙ¹` factors the tangent bundle is written as the line `O(2)`.
pub fn swap_square(spec: &VarietySpec) -> Result<MuTwoAction> {
    let model = spec.build_connected()?;
    let t = tangent_bundle(&model);
    let k = model.ngens();
    let mut lines = Vec::new();
    let mut trivial = t.trivial_rank();
    let mut p1 = vec![false; k];
    for (i, &d) in model.proj_dims.iter().enumerate() {
        if d == 1 {
            p1[i] = true;
            let mut l = vec![0; k];
            l[i] = 2;
            lines.push(l);
            trivial += 1;
        }
    }
    for l in &t.plus_lines {
        let single_p1 = (0..k).any(|i| p1[i] && l[i] == 1 && l.iter().enumerate().all(|(j, &c)| j == i || c == 0));
        if !single_p1 {
            lines.push(l.clone());
        }
    }
    let comp = FixedComponent { spec: spec.clone(), codim: model.dim, normal_lines: lines, normal_trivial_rank: trivial };
    let action = MuTwoAction { ambient: VarietySpec::Product { factors: vec![spec.clone(), spec.clone()] }, components: vec![comp] };
    action.build()?;
    Ok(action)
}

/// The actions exercised by `verify --all`.
pub fn catalog() -> Vec<Builtin> {
    let mut out = Vec::new();
    for n in 1..=6 {
        for a in 0..n {
            out.push(Builtin::LinearPn { n, a });
        }
    }
    for n in 1..=5 {
        out.push(Builtin::FactorwiseP1n { n });
    }
    for n in 1..=3 {
        out.push(Builtin::SwapSquare { spec: VarietySpec::projective(n) });
    }
    out.push(Builtin::SwapSquare { spec: VarietySpec::MultiProj { dims: vec![1, 1] } });
    out
}
