//! Failure classes of a run and their process exit codes.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureClass {
    /// A computed result contradicts an assertion.
    Assertion,
    /// Malformed scenario, unknown field, bad group text or unusable field.
    Schema,
    /// A hypothesis gate refused the input.
    Hypothesis,
    /// No identification of the Sylow subgroups.
    Identification,
    /// A size cap was exceeded.
    Cap,
    /// A stage ran past its time budget.
    Budget,
    /// I/O or an unexpected internal error.
    Internal,
}

impl FailureClass {
    pub fn exit_code(self) -> i32 {
        match self {
            FailureClass::Assertion => 1,
            FailureClass::Schema => 2,
            FailureClass::Hypothesis => 3,
            FailureClass::Identification => 4,
            FailureClass::Cap => 5,
            FailureClass::Budget => 6,
            FailureClass::Internal => 7,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub class: FailureClass,
    pub exit_code: i32,
    pub message: String,
    /// Field degree to retry with when the field does not split some module.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suggested_field_degree: Option<u32>,
}

impl Failure {
    pub fn new(class: FailureClass, message: impl Into<String>) -> Failure {
        Failure {
            class,
            exit_code: class.exit_code(),
            message: message.into(),
            suggested_field_degree: None,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} failure: {}", self.class, self.message)
    }
}

impl std::error::Error for Failure {}

impl From<modrep::Error> for Failure {
    fn from(e: modrep::Error) -> Failure {
        use modrep::Error as E;
        let class = match &e {
            E::Hypothesis(_) => FailureClass::Hypothesis,
            E::NoIsomorphism(_) => FailureClass::Identification,
            E::CapExceeded { .. } => FailureClass::Cap,
            E::Parse(_)
            | E::InvalidInput(_)
            | E::NotPrimePower(_)
            | E::FieldTooLarge(_)
            | E::NotSplittingField { .. }
            | E::NotSubgroup(_)
            | E::NotPGroup { .. } => FailureClass::Schema,
            E::TheoremViolation(_) => FailureClass::Assertion,
            E::Shape(_) | E::NotNormal | E::Decomposable => FailureClass::Internal,
        };
        let mut f = Failure::new(class, e.to_string());
        if let E::NotSplittingField { suggested, .. } = e {
            f.suggested_field_degree = Some(suggested);
        }
        f
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::new(FailureClass::Internal, e.to_string())
    }
}
