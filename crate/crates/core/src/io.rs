//! Input files: `.vf` field files and JSON setup/problem files.
//!
//! A `.vf` file is line based; `#` starts a comment.
//!
//! ```text
//! vars x y          # chart variables; `t` is always the time variable
//! vanish x          # optional: coordinates cut out Y
//! field (x*y, -t)   # one field per line
//! poly x*y + y^2    # scalar polynomials, e.g. Hamiltonians
//! ```
//!
//! A setup file names the chart, `Y`, the sheaf `F` and the obstruction
//! sheaf `G`:
//!
//! ```json
//! {"vars": ["x", "y"], "vanishing": ["y"],
//!  "sheaf": {"kind": "foliation", "generators": ["(1, x)"]},
//!  "obstruction": {"kind": "tangency-twist"}}
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{TimeDepVectorField, VectorField};
use crate::geometry::{Ideal, ObstructionSpec, Setup, SheafSpec, SubspaceY};
use crate::jet::TangentFieldOnY;
use crate::lifting::DeformationProblem;
use crate::parse::{parse_field, parse_poly};
use crate::poly::{Poly, Vars};
use crate::symplectic::DarbouxSpace;

#[derive(Clone, Debug)]
pub struct VfFile {
    pub vars: Arc<Vars>,
    pub y: SubspaceY,
    pub fields: Vec<TimeDepVectorField>,
    pub polys: Vec<Poly>,
}

fn at_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Invalid(format!("line {line}: {e}")))
}

pub fn parse_vf(text: &str) -> Result<VfFile> {
    let mut vars: Option<Arc<Vars>> = None;
    let mut vanish: Vec<String> = Vec::new();
    let mut fields = Vec::new();
    let mut polys = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match head {
            "vars" => {
                if vars.is_some() {
                    return at_line(line_no, Err(Error::Invalid("duplicate `vars` line".into())));
                }
                vars = Some(at_line(line_no, Vars::chart_named(rest.split_whitespace()))?);
            }
            "vanish" => vanish.extend(rest.split_whitespace().map(String::from)),
            "field" | "poly" => {
                let v = vars.as_ref().ok_or_else(|| Error::Invalid(format!("line {line_no}: `{head}` before `vars`")))?;
                if head == "field" {
                    fields.push(at_line(line_no, parse_field(rest, v))?);
                } else {
                    polys.push(at_line(line_no, parse_poly(rest, v))?);
                }
            }
            other => return at_line(line_no, Err(Error::Invalid(format!("unknown directive `{other}`")))),
        }
    }
    let vars = vars.ok_or_else(|| Error::Invalid("missing `vars` line".into()))?;
    let y = SubspaceY::from_names(&vars, &vanish)?;
    Ok(VfFile { vars, y, fields, polys })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SheafJson {
    FullTangent,
    /// The chart is Darboux: the first half of `vars` pairs with the second.
    Hamiltonian,
    Foliation { generators: Vec<String> },
    ConstantSpan { generators: Vec<String> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ObstructionJson {
    FullRestriction,
    Perp,
    /// Defaults to the foliation's own generators.
    TangencyTwist {
        #[serde(default)]
        generators: Option<Vec<String>>,
    },
    ExplicitModule {
        generators: Vec<String>,
        #[serde(default)]
        ideal: Vec<String>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetupJson {
    pub vars: Vec<String>,
    #[serde(default)]
    pub vanishing: Vec<String>,
    pub sheaf: SheafJson,
    pub obstruction: ObstructionJson,
    #[serde(default)]
    pub degree_bound: Option<u32>,
}

fn constant_fields(texts: &[String], vars: &Arc<Vars>) -> Result<Vec<VectorField>> {
    texts.iter().map(|s| parse_static_field(s, vars)).collect()
}

/// A field that must not depend on `t`.
pub fn parse_static_field(text: &str, vars: &Arc<Vars>) -> Result<VectorField> {
    parse_field(text, vars)?.as_time_independent().ok_or_else(|| Error::TimeDependent(text.to_string()))
}

impl SetupJson {
    pub fn build(&self) -> Result<Setup> {
        let vars = Vars::chart_named(self.vars.iter().cloned())?;
        let y = SubspaceY::from_names(&vars, &self.vanishing)?;
        let sheaf = match &self.sheaf {
            SheafJson::FullTangent => SheafSpec::FullTangent,
            SheafJson::Hamiltonian => SheafSpec::Hamiltonian(DarbouxSpace::with_vars(&vars)?),
            SheafJson::Foliation { generators } => SheafSpec::FoliationSpan(constant_fields(generators, &vars)?),
            SheafJson::ConstantSpan { generators } => SheafSpec::ConstantSpan(constant_fields(generators, &vars)?),
        };
        let obstruction = match &self.obstruction {
            ObstructionJson::FullRestriction => ObstructionSpec::FullRestriction,
            ObstructionJson::Perp => ObstructionSpec::Perp(DarbouxSpace::with_vars(&vars)?),
            ObstructionJson::TangencyTwist { generators: Some(g) } => ObstructionSpec::TangencyTwist(constant_fields(g, &vars)?),
            ObstructionJson::TangencyTwist { generators: None } => match &sheaf {
                SheafSpec::FoliationSpan(g) | SheafSpec::ConstantSpan(g) => ObstructionSpec::TangencyTwist(g.clone()),
                _ => return Err(Error::Invalid("tangency-twist needs generators unless the sheaf is a span".into())),
            },
            ObstructionJson::ExplicitModule { generators, ideal } => ObstructionSpec::ExplicitModule {
                generators: constant_fields(generators, &vars)?.into_iter().map(|g| g.components().to_vec()).collect(),
                ideal: Ideal::new(ideal.iter().map(|s| parse_poly(s, &vars)).collect::<Result<_>>()?),
            },
        };
        let mut setup = Setup::new(&vars, y, sheaf, obstruction);
        setup.degree_bound = self.degree_bound;
        Ok(setup)
    }
}

pub fn load_setup(text: &str) -> Result<Setup> {
    let json: SetupJson = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("setup: {e}")))?;
    json.build()
}

/// Input for `lift` and `cech`.
///
/// ```json
/// {"setup": {...}, "seed": "(x, -y)", "corrections": ["(0, -1)"], "order": 4}
/// {"setup": {...}, "charts": ["(x, -y)", "(x, -y - t)"], "order": 1}
/// ```
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemJson {
    pub setup: SetupJson,
    #[serde(default)]
    pub seed: Option<String>,
    #[serde(default)]
    pub corrections: Vec<String>,
    pub order: usize,
    #[serde(default)]
    pub charts: Vec<String>,
    /// Components of each `C_j` on `Y`; defaults to `C_0 = 0, C_k = C_0k`.
    #[serde(default)]
    pub splitting: Option<Vec<String>>,
}

pub struct Problem {
    pub setup: Setup,
    pub json: ProblemJson,
}

impl Problem {
    pub fn load(text: &str) -> Result<Self> {
        let json: ProblemJson = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("problem: {e}")))?;
        Ok(Problem { setup: json.setup.build()?, json })
    }

    pub fn deformation(&self) -> Result<DeformationProblem> {
        let vars = &self.setup.vars;
        let seed = self.json.seed.as_deref().ok_or_else(|| Error::Invalid("problem has no `seed`".into()))?;
        Ok(DeformationProblem {
            setup: self.setup.clone(),
            seed: parse_static_field(seed, vars)?,
            corrections: constant_fields(&self.json.corrections, vars)?,
            order: self.json.order,
        })
    }

    pub fn charts(&self) -> Result<Vec<TimeDepVectorField>> {
        self.json.charts.iter().map(|c| parse_field(c, &self.setup.vars)).collect()
    }

    pub fn splitting(&self) -> Result<Option<Vec<TangentFieldOnY>>> {
        let Some(parts) = &self.json.splitting else { return Ok(None) };
        let fields = constant_fields(parts, &self.setup.vars)?;
        fields.iter().map(|f| TangentFieldOnY::new(&self.setup.y, f.components().to_vec())).collect::<Result<Vec<_>>>().map(Some)
    }
}

/// Canonical strings of a field's components.
pub fn field_strings(components: &[Poly]) -> Vec<String> {
    components.iter().map(Poly::to_string).collect()
}
