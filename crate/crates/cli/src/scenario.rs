//! Scenario files: groups, prime, field, identification, tasks and expected values.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::failure::{Failure, FailureClass};

pub const SCENARIO_SCHEMA_VERSION: u32 = 1;

/// The bundled scenario for `SL2(11)` and `SL2(3)` in characteristic 2.
pub const SL2_EXAMPLE: &str = include_str!("../scenarios/sl2_example.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// A named group (`SL2(11)`, `C4`, `S4`, `Q8`, ..) or generators in 1-based cycle
    /// notation separated by `;` or newlines.
    pub first: String,
    /// The second group for two-sided tasks; defaults to the first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second: Option<String>,
    pub prime: u32,
    #[serde(default = "default_degree")]
    pub field_degree: u32,
    #[serde(default)]
    pub identification: Identification,
    #[serde(default)]
    pub central: Central,
    #[serde(default)]
    pub tasks: Vec<Task>,
    #[serde(default)]
    pub expect: Expectations,
    /// Where to write the JSON report unless the command line says otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

fn default_degree() -> u32 {
    1
}

/// How the Sylow subgroups of the two groups are identified.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Identification {
    /// Sylow subgroups and an isomorphism found by search.
    #[default]
    Search,
    /// `P` generated by `first_sylow` in the first group and the isomorphism sending those
    /// generators to `images` in the second group.
    GeneratorImages { first_sylow: Vec<String>, images: Vec<String> },
}

/// The central subgroup `Z` of the common Sylow subgroup.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Central {
    /// `P` intersected with the center of the first group.
    #[default]
    SylowCenter,
    Trivial,
    /// Generated by the given elements of the first group.
    Generators { generators: Vec<String> },
}

/// Tasks run in the order of this declaration, whatever order the scenario lists them in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Group,
    Identification,
    Fusion,
    FusionClasses,
    Centralizers,
    Blocks,
    Scott,
    BrauerIndec,
    BrauerCriterion,
    Gluing,
    StableEquivalence,
    RestrictionShapes,
    MoritaLift,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Group => "group",
            Task::Identification => "identification",
            Task::Fusion => "fusion",
            Task::FusionClasses => "fusion-classes",
            Task::Centralizers => "centralizers",
            Task::Blocks => "blocks",
            Task::Scott => "scott",
            Task::BrauerIndec => "brauer-indec",
            Task::BrauerCriterion => "brauer-criterion",
            Task::Gluing => "gluing",
            Task::StableEquivalence => "stable-equivalence",
            Task::RestrictionShapes => "restriction-shapes",
            Task::MoritaLift => "morita-lift",
        }
    }
}

/// Expected values. Subgroups are named `P`, `Z`, `G` (the whole group), `1`, or by a
/// structure label such as `C12`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Expectations {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_order: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_order: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sylow_structure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub central_order: Option<u128>,
    /// Orders of representatives of the classes of nontrivial subgroups of `P`, descending.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_orders: Option<Vec<u128>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centralizers: Option<Vec<CentralizerRow>>,
    /// Dimensions of the simple modules of the principal blocks, ascending.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_simple_dims: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_simple_dims: Option<Vec<usize>>,
    /// Summand dimensions of the permutation module on the cosets of `P` in the second group.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_sylow_permutation_dims: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scott_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restrictions: Option<Vec<RestrictionRow>>,
    /// Expected truth value of the criteria: Brauer indecomposability, both clauses of the
    /// Brauer and gluing criteria, and the relative stable equivalence.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criteria_hold: Option<bool>,
    /// `morita`, `relative-stable` or `none`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
}

/// `C_G(Q)` and `C_G'(Q)` for a class representative `Q` of the given order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CentralizerRow {
    pub subgroup_order: u128,
    pub first: String,
    pub second: String,
}

/// A simple module of the first principal block restricted to `P`: summand dimensions with
/// their vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionRow {
    pub simple_dim: usize,
    pub summands: Vec<SummandRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandRow {
    pub dim: usize,
    pub vertex: String,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario, Failure> {
        let s: Scenario = serde_json::from_str(text)
            .map_err(|e| Failure::new(FailureClass::Schema, format!("scenario: {e}")))?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Scenario, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::new(FailureClass::Internal, format!("{}: {e}", path.display())))?;
        Scenario::parse(&text)
    }

    pub fn sl2_example() -> Scenario {
        Scenario::parse(SL2_EXAMPLE).expect("bundled scenario is valid")
    }

    /// A scenario with the given groups and tasks and no expectations.
    pub fn adhoc(first: &str, second: Option<&str>, prime: u32, field_degree: u32, tasks: Vec<Task>) -> Scenario {
        Scenario {
            schema_version: SCENARIO_SCHEMA_VERSION,
            name: None,
            first: first.to_string(),
            second: second.map(str::to_string),
            prime,
            field_degree,
            identification: Identification::Search,
            central: Central::SylowCenter,
            tasks,
            expect: Expectations::default(),
            output: None,
        }
    }

    pub fn validate(&self) -> Result<(), Failure> {
        let bad = |m: String| Err(Failure::new(FailureClass::Schema, m));
        if self.schema_version != SCENARIO_SCHEMA_VERSION {
            return bad(format!(
                "schema_version {} is not supported (expected {SCENARIO_SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        if !modrep::field::is_prime(self.prime as u64) {
            return bad(format!("prime {} is not prime", self.prime));
        }
        if self.field_degree == 0 {
            return bad("field_degree must be positive".into());
        }
        if self.first.trim().is_empty() {
            return bad("first group is empty".into());
        }
        Ok(())
    }

    /// Tasks deduplicated and in execution order.
    pub fn ordered_tasks(&self) -> Vec<Task> {
        let mut t = self.tasks.clone();
        t.sort();
        t.dedup();
        t
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let canon = serde_json::to_string(self).expect("scenario serializes");
        hex::encode(Sha256::digest(canon.as_bytes()))
    }
}
