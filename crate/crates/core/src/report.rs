use std::fmt::Display;

/// One checked identity: both sides rendered in exact scalar syntax.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    /// The theorem or lemma the identity instantiates, e.g. "Thm 7.4 HRR".
    pub tag: String,
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(
        name: impl Into<String>,
        tag: impl Into<String>,
        inputs: impl Into<String>,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
        pass: bool,
    ) -> Self {
        CheckRecord {
            name: name.into(),
            tag: tag.into(),
            inputs: inputs.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            pass,
        }
    }

    /// Passes iff `lhs == rhs`.
    pub fn equal<T: PartialEq + Display>(
        name: impl Into<String>,
        tag: impl Into<String>,
        inputs: impl Into<String>,
        lhs: &T,
        rhs: &T,
    ) -> Self {
        Self::new(name, tag, inputs, lhs.to_string(), rhs.to_string(), lhs == rhs)
    }
}

pub fn all_pass(records: &[CheckRecord]) -> bool {
    records.iter().all(|r| r.pass)
}
