//! The code quality metric for Cirq-dialect text.
//!
//! Base score is the fraction of the five expected pattern categories
//! present; each lint warning costs 0.05 and each error 0.2; the result is
//! clamped to [0, 1]. Scoring never fails: unparseable input simply scores
//! through its error count.

use serde::Serialize;

use crate::cirq::{parse_cirq, DetectedPatterns};
use crate::diagnostics::DiagCode;

pub const EXPECTED_PATTERN_COUNT: usize = 5;
pub const WARNING_PENALTY: f64 = 0.05;
pub const ERROR_PENALTY: f64 = 0.2;

/// Full breakdown of one scored text. Serializes to a JSON object with
/// exactly these field names.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QualityScore {
    pub patterns_present: DetectedPatterns,
    pub patterns_expected: usize,
    pub warning_count: usize,
    pub error_count: usize,
    pub base: f64,
    pub penalty: f64,
    pub score: f64,
    /// Diagnostic codes ranked by frequency; feeds [`explain`] but is not
    /// part of the serialized breakdown.
    #[serde(skip)]
    pub code_counts: Vec<(DiagCode, usize)>,
}

/// Score a Cirq-dialect text.
pub fn score(source: &str) -> QualityScore {
    let parsed = parse_cirq(source);
    let warning_count = parsed.diagnostics.warning_count();
    let error_count = parsed.diagnostics.error_count();
    let base = parsed.patterns.count() as f64 / EXPECTED_PATTERN_COUNT as f64;
    let penalty = WARNING_PENALTY * warning_count as f64 + ERROR_PENALTY * error_count as f64;
    QualityScore {
        patterns_present: parsed.patterns,
        patterns_expected: EXPECTED_PATTERN_COUNT,
        warning_count,
        error_count,
        base,
        penalty,
        score: (base - penalty).clamp(0.0, 1.0),
        code_counts: parsed.diagnostics.code_counts(),
    }
}

/// How many distinct diagnostic codes an explanation names.
const EXPLAIN_CODE_LIMIT: usize = 3;

fn serial_join(items: &[String]) -> String {
    match items {
        [] => String::new(),
        [only] => only.clone(),
        [rest @ .., last] => format!("{} and {}", rest.join(", "), last),
    }
}

/// Human-readable account of why a score is below 1.0: the missing pattern
/// categories and the dominant diagnostic codes. Empty for a perfect score.
pub fn explain(score: &QualityScore) -> String {
    let missing = score.patterns_present.missing();
    let mut items: Vec<String> = missing.iter().map(|p| p.display().to_string()).collect();
    items.extend(
        score
            .code_counts
            .iter()
            .take(EXPLAIN_CODE_LIMIT)
            .map(|(code, _)| code.human().to_string()),
    );
    if items.is_empty() {
        return String::new();
    }
    if missing.is_empty() {
        serial_join(&items)
    } else {
        format!("Missing expected Cirq pattern: {}", serial_join(&items))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codegen::emit_cirq;
    use crate::corpus;
    use proptest::prelude::*;

    fn canonical_bell_text() -> String {
        emit_cirq(&corpus::bell_ir(), true, 1000).unwrap()
    }

    fn without_measurements(text: &str) -> String {
        text.lines()
            .filter(|l| !l.contains("measure("))
            .collect::<Vec<_>>()
            .join("\n")
    }

    #[test]
    fn canonical_bell_scores_perfect() {
        let q = score(&canonical_bell_text());
        assert_eq!(q.score, 1.0);
        assert_eq!(q.base, 1.0);
        assert_eq!(q.penalty, 0.0);
        assert_eq!(explain(&q), "");
    }

    #[test]
    fn missing_measurements_scores_point_eight() {
        let q = score(&without_measurements(&canonical_bell_text()));
        assert_eq!(q.base, 0.8);
        assert_eq!(q.score, 0.8);
        assert_eq!(q.warning_count, 0);
        assert_eq!(q.error_count, 0);
        assert_eq!(
            explain(&q),
            "Missing expected Cirq pattern: Measurement operations"
        );
    }

    #[test]
    fn warning_and_error_arithmetic() {
        // One unused import (0.05) and one undefined-name statement (0.2) on
        // top of the measurement-free Bell: 0.8 - 0.25 = 0.55.
        let text = format!(
            "import json\n{}\nother.append(cirq.X(q[0]))\n",
            without_measurements(&canonical_bell_text())
        );
        let q = score(&text);
        assert_eq!(q.warning_count, 1);
        assert_eq!(q.error_count, 1);
        assert_eq!(q.base, 0.8);
        assert_eq!(q.penalty, 0.05 + 0.2);
        assert_eq!(q.score, 0.8 - (0.05 + 0.2));
        let text = explain(&q);
        assert!(text.contains("Measurement operations"));
        assert!(text.contains("Unused imports"));
        assert!(text.contains("Undefined names"));
    }

    #[test]
    fn explanation_mixes_patterns_and_codes_like_the_report_format() {
        let gateless: String = canonical_bell_text()
            .lines()
            .filter(|l| {
                !l.contains("cirq.H") && !l.contains("cirq.CNOT") && !l.contains("measure(")
            })
            .collect::<Vec<_>>()
            .join("\n");
        let text = format!("import json\n{gateless}\n");
        let q = score(&text);
        let explanation = explain(&q);
        assert!(explanation.starts_with("Missing expected Cirq pattern: Basic gates"));
        assert!(explanation.contains("Measurement operations"));
        assert!(explanation.contains("and Unused imports"));
        // `q` is now an unused qubit declaration, which is structural and
        // deliberately not linted.
        assert_eq!(q.warning_count, 1);
    }

    #[test]
    fn scores_clamp_at_zero() {
        let q = score("foo(\nbar)))\nbaz(((\n");
        assert_eq!(q.score, 0.0);
        assert!(q.penalty > q.base);
    }

    #[test]
    fn empty_and_binary_inputs_stay_in_range() {
        for text in ["", "\u{0}\u{1}\u{2}", "===", "import cirq\n"] {
            let q = score(text);
            assert!(
                (0.0..=1.0).contains(&q.score),
                "score {} for {text:?}",
                q.score
            );
        }
    }

    #[test]
    fn adding_an_error_costs_exactly_point_two_preclamp() {
        let base_text = canonical_bell_text();
        let with_error = format!("{base_text}nope.append(cirq.X(q[0]))\n");
        let (q0, q1) = (score(&base_text), score(&with_error));
        assert_eq!(q1.error_count, q0.error_count + 1);
        assert_eq!(q1.penalty, q0.penalty + 0.2);
        assert_eq!(q1.base, q0.base);
    }

    #[test]
    fn score_is_deterministic() {
        let text = canonical_bell_text();
        assert_eq!(score(&text), score(&text));
    }

    #[test]
    fn perfect_score_requires_full_patterns_and_clean_diagnostics() {
        let q = score(&canonical_bell_text());
        assert_eq!(q.score, 1.0);
        assert_eq!(q.patterns_present.count(), 5);
        assert_eq!(q.warning_count + q.error_count, 0);
    }

    proptest! {
        #[test]
        fn score_bounded_for_arbitrary_text(text in ".{0,400}") {
            let q = score(&text);
            prop_assert!((0.0..=1.0).contains(&q.score));
            prop_assert!(q.base >= 0.0 && q.base <= 1.0);
            prop_assert!(q.penalty >= 0.0);
        }

        /// Appending an unused import never raises the score.
        #[test]
        fn extra_warning_is_monotone(extra in "[a-z]{3,8}") {
            let base_text = canonical_bell_text();
            let with_import = format!("import {extra}\n{base_text}");
            prop_assert!(score(&with_import).score <= score(&base_text).score);
        }
    }
}
