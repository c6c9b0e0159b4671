use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// One failed check together with a human readable witness.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub axiom: String,
    pub witness: String,
}

/// Outcome of an exhaustive verification. `passed()` holds exactly when no
/// violation was recorded.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: impl Into<String>, witness: impl Into<String>) {
        self.violations.push(Violation { axiom: axiom.into(), witness: witness.into() });
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.violations.extend(other.violations);
    }

    /// True if some violation was recorded under the given axiom name.
    pub fn has(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "passed");
        }
        writeln!(f, "failed with {} violation(s)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {}: {}", v.axiom, v.witness)?;
        }
        Ok(())
    }
}
