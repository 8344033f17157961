//! Machine-readable pass/fail reporting.
//!
//! Every harness check emits one line of the form
//! `check=<name> status=<pass|fail> key=value ...` so results can be
//! grepped and diffed across runs.

/// One named check with its outcome and free-form key/value details.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub details: Vec<(String, String)>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Check {
            name: name.into(),
            passed,
            details: Vec::new(),
        }
    }

    /// Attaches a detail pair; chainable.
    pub fn detail(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.details.push((key.into(), value.to_string()));
        self
    }

    pub fn line(&self) -> String {
        let mut out = format!(
            "check={} status={}",
            self.name,
            if self.passed { "pass" } else { "fail" }
        );
        for (key, value) in &self.details {
            out.push_str(&format!(" {key}={value}"));
        }
        out
    }
}

/// An ordered collection of checks.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn lines(&self) -> String {
        self.checks
            .iter()
            .map(Check::line)
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_render_key_values_in_order() {
        let check = Check::new("sample", true).detail("seed", 7).detail("jobs", 45);
        assert_eq!(check.line(), "check=sample status=pass seed=7 jobs=45");
        let fail = Check::new("other", false);
        assert_eq!(fail.line(), "check=other status=fail");
    }

    #[test]
    fn report_aggregates() {
        let mut report = Report::new();
        report.push(Check::new("a", true));
        assert!(report.all_passed());
        report.push(Check::new("b", false).detail("got", "x"));
        assert!(!report.all_passed());
        assert_eq!(report.lines(), "check=a status=pass\ncheck=b status=fail got=x");
    }
}
