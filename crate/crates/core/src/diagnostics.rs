//! Structured parse and lint findings.
//!
//! Frontends never fail hard: everything wrong with a source file is
//! collected here, split into errors (semantic damage) and warnings (noise).
//! The quality metric charges 0.2 per error and 0.05 per warning, so the
//! split is load-bearing.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DiagCode {
    // Errors.
    SyntaxError,
    UnknownGate,
    ArityMismatch,
    UndefinedName,
    IndexOutOfRange,
    UnsupportedConstruct,
    // Warnings.
    UnusedImport,
    UnusedVariable,
    SkippedStatement,
    BarrierNote,
}

impl DiagCode {
    pub fn is_error(self) -> bool {
        matches!(
            self,
            DiagCode::SyntaxError
                | DiagCode::UnknownGate
                | DiagCode::ArityMismatch
                | DiagCode::UndefinedName
                | DiagCode::IndexOutOfRange
                | DiagCode::UnsupportedConstruct
        )
    }

    /// Short human label used in explanations and reports.
    pub fn human(self) -> &'static str {
        match self {
            DiagCode::SyntaxError => "Syntax errors",
            DiagCode::UnknownGate => "Unknown gates",
            DiagCode::ArityMismatch => "Gate arity mismatches",
            DiagCode::UndefinedName => "Undefined names",
            DiagCode::IndexOutOfRange => "Out-of-range indices",
            DiagCode::UnsupportedConstruct => "Unsupported constructs",
            DiagCode::UnusedImport => "Unused imports",
            DiagCode::UnusedVariable => "Unused variables",
            DiagCode::SkippedStatement => "Unrecognized statements",
            DiagCode::BarrierNote => "Barriers",
        }
    }
}

impl fmt::Display for DiagCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// One finding, anchored to a 1-based source line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub code: DiagCode,
    pub message: String,
    pub line: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    pub errors: Vec<Diagnostic>,
    pub warnings: Vec<Diagnostic>,
}

impl Diagnostics {
    pub fn error(&mut self, code: DiagCode, line: usize, message: impl Into<String>) {
        debug_assert!(code.is_error());
        self.errors.push(Diagnostic {
            code,
            message: message.into(),
            line,
        });
    }

    pub fn warning(&mut self, code: DiagCode, line: usize, message: impl Into<String>) {
        debug_assert!(!code.is_error());
        self.warnings.push(Diagnostic {
            code,
            message: message.into(),
            line,
        });
    }

    pub fn has_errors(&self) -> bool {
        !self.errors.is_empty()
    }

    pub fn error_count(&self) -> usize {
        self.errors.len()
    }

    pub fn warning_count(&self) -> usize {
        self.warnings.len()
    }

    /// Deterministic ordering by (line, code, message); frontends call this
    /// once parsing is finished.
    pub(crate) fn sort(&mut self) {
        let key = |d: &Diagnostic| (d.line, d.code, d.message.clone());
        self.errors.sort_by_key(key);
        self.warnings.sort_by_key(key);
    }

    /// Distinct codes across both lists, ranked by count (descending) and
    /// then by code order.
    pub fn code_counts(&self) -> Vec<(DiagCode, usize)> {
        let mut counts: Vec<(DiagCode, usize)> = Vec::new();
        for d in self.errors.iter().chain(&self.warnings) {
            match counts.iter_mut().find(|(c, _)| *c == d.code) {
                Some((_, n)) => *n += 1,
                None => counts.push((d.code, 1)),
            }
        }
        counts.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        counts
    }
}
