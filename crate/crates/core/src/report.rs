use serde::Serialize;

/// One named pass/fail line of a verification suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckItem {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckItem { name: name.into(), passed, detail: detail.into() }
    }
}

pub fn all_passed(items: &[CheckItem]) -> bool {
    items.iter().all(|i| i.passed)
}
