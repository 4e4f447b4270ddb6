//! JSON scenario files: one command, an optional output format and
//! assumption overrides.

use std::path::Path;

use horikawa_core::catalog::{Assumptions, BuildOptions, Perturbation};
use serde::{Deserialize, Serialize};

use crate::args::Format;

/// Largest chi span `enumerate` accepts from a scenario file.
pub const MAX_SCENARIO_SPAN: i64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CommandSpec {
    Classify {
        #[serde(with = "int")]
        k_squared: i64,
        #[serde(with = "int")]
        chi: i64,
    },
    ConstructComponentOne {
        #[serde(with = "int")]
        chi: i64,
    },
    ConstructComponentTwo {
        #[serde(with = "int")]
        k: i64,
    },
    ConstructStable {
        #[serde(with = "int")]
        chi: i64,
        #[serde(default, with = "opt_int", skip_serializing_if = "Option::is_none")]
        epsilon: Option<i64>,
    },
    Enumerate {
        #[serde(with = "int")]
        chi: i64,
        #[serde(with = "int")]
        chi_max: i64,
    },
    VerifyPaper {
        #[serde(with = "int")]
        chi_max: i64,
        #[serde(with = "int")]
        k_max: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        inject_fault: Option<Perturbation>,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssumptionOverrides {
    pub general_position: Option<bool>,
    pub smoothness_assumed: Option<bool>,
}

impl AssumptionOverrides {
    pub fn apply(&self, base: Assumptions) -> Assumptions {
        Assumptions {
            general_position: self.general_position.unwrap_or(base.general_position),
            smoothness_assumed: self.smoothness_assumed.unwrap_or(base.smoothness_assumed),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub command: Option<CommandSpec>,
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub assumptions: AssumptionOverrides,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read scenario {}: {e}", path.display()))?;
        let scenario: Scenario = serde_json::from_str(&text).map_err(|e| format!("invalid scenario {}: {e}", path.display()))?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<(), String> {
        if let Some(CommandSpec::Enumerate { chi, chi_max }) = &self.command {
            if chi > chi_max {
                return Err(format!("scenario range {chi}..={chi_max} is empty"));
            }
            if i128::from(*chi_max) - i128::from(*chi) >= i128::from(MAX_SCENARIO_SPAN) {
                return Err(format!("scenario range {chi}..={chi_max} is wider than {MAX_SCENARIO_SPAN}"));
            }
        }
        Ok(())
    }

    pub fn build_options(&self) -> BuildOptions {
        BuildOptions { assumptions: self.assumptions.apply(Assumptions::default()), perturbation: None }
    }
}

/// Integers as JSON numbers or decimal strings; values beyond 64 bits are rejected.
mod int {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &i64, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_i64(*value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<i64, D::Error> {
        #[derive(Deserialize)]
        struct Wrapped(#[serde(with = "horikawa_core::num::bigint")] BigInt);
        let Wrapped(v) = Wrapped::deserialize(deserializer)?;
        v.to_i64().ok_or_else(|| de::Error::custom(format!("{v} does not fit in 64 bits")))
    }
}

mod opt_int {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Option<i64>, serializer: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => serializer.serialize_some(v),
            None => serializer.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Option<i64>, D::Error> {
        #[derive(Deserialize)]
        struct Wrapped(#[serde(with = "super::int")] i64);
        Ok(Option::<Wrapped>::deserialize(deserializer)?.map(|Wrapped(v)| v))
    }
}
