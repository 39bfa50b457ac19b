//! Statement splitting and micro-parsing helpers shared by the two dialect
//! frontends.
//!
//! Both dialects are line-oriented: a logical statement is one physical line,
//! except that lines with open brackets continue onto the next line (the host
//! language's implicit joining). Comments are stripped, blank lines skipped,
//! and `;` splits a line into several statements.

use std::f64::consts::PI;

/// One logical statement with the 1-based line it starts on and the
/// indentation of its first physical line.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Statement {
    pub line: usize,
    pub indent: usize,
    pub text: String,
}

/// Split source text into logical statements. Returns the statements plus
/// `(line, message)` pairs for lines that cannot be split at all (unbalanced
/// brackets).
pub(crate) fn split_statements(source: &str) -> (Vec<Statement>, Vec<(usize, String)>) {
    let mut statements = Vec::new();
    let mut errors = Vec::new();
    let mut pending: Option<(usize, usize, String)> = None;

    for (i, raw) in source.lines().enumerate() {
        let line_no = i + 1;
        let stripped = strip_comment(raw);
        let trimmed = stripped.trim();
        let (start, indent, text) = match pending.take() {
            Some((start, indent, mut text)) => {
                if !trimmed.is_empty() {
                    text.push(' ');
                    text.push_str(trimmed);
                }
                (start, indent, text)
            }
            None => {
                if trimmed.is_empty() {
                    continue;
                }
                let indent = stripped.len() - stripped.trim_start().len();
                (line_no, indent, trimmed.to_string())
            }
        };
        match bracket_depth(&text) {
            d if d > 0 => pending = Some((start, indent, text)),
            d if d < 0 => errors.push((start, "unbalanced brackets".to_string())),
            _ => {
                for part in split_top_level(&text, ';') {
                    let part = part.trim();
                    if !part.is_empty() {
                        statements.push(Statement {
                            line: start,
                            indent,
                            text: part.to_string(),
                        });
                    }
                }
            }
        }
    }
    if let Some((start, _, _)) = pending {
        errors.push((start, "statement is never closed".to_string()));
    }
    (statements, errors)
}

/// Cut a `#` comment, honoring string literals.
fn strip_comment(line: &str) -> &str {
    let mut in_string: Option<char> = None;
    let mut escaped = false;
    for (i, ch) in line.char_indices() {
        match in_string {
            Some(q) => {
                if escaped {
                    escaped = false;
                } else if ch == '\\' {
                    escaped = true;
                } else if ch == q {
                    in_string = None;
                }
            }
            None => match ch {
                '"' | '\'' => in_string = Some(ch),
                '#' => return &line[..i],
                _ => {}
            },
        }
    }
    line
}

/// Net bracket depth of `s`, counting `()[]{}` outside string literals.
fn bracket_depth(s: &str) -> i32 {
    let mut depth = 0;
    scan(s, |ch, _| {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ => {}
        }
        true
    });
    depth
}

/// Walk the characters of `s` that are outside string literals, invoking
/// `f(char, byte_index)`. The callback returns `false` to stop early.
fn scan(s: &str, mut f: impl FnMut(char, usize) -> bool) {
    let mut in_string: Option<char> = None;
    let mut escaped = false;
    for (i, ch) in s.char_indices() {
        match in_string {
            Some(q) => {
                if escaped {
                    escaped = false;
                } else if ch == '\\' {
                    escaped = true;
                } else if ch == q {
                    in_string = None;
                }
            }
            None => match ch {
                '"' | '\'' => in_string = Some(ch),
                _ => {
                    if !f(ch, i) {
                        return;
                    }
                }
            },
        }
    }
}

/// Split `s` on `sep` at bracket depth zero, outside string literals.
pub(crate) fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    scan(s, |ch, i| {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
        true
    });
    parts.push(&s[start..]);
    parts
}

/// Split a comma-separated argument list, dropping empty tails so that both
/// `f()` and `f(a, b)` come out right.
pub(crate) fn split_args(args: &str) -> Vec<&str> {
    if args.trim().is_empty() {
        return Vec::new();
    }
    split_top_level(args, ',')
        .into_iter()
        .map(str::trim)
        .collect()
}

/// Identifier tokens (outside string literals), in order of appearance.
pub(crate) fn identifiers(s: &str) -> Vec<&str> {
    let mut idents = Vec::new();
    let bytes = s.as_bytes();
    let mut token_start: Option<usize> = None;
    let mut positions = vec![false; bytes.len()];
    scan(s, |ch, i| {
        if ch.is_ascii_alphanumeric() || ch == '_' {
            positions[i] = true;
        }
        true
    });
    for i in 0..=bytes.len() {
        let is_word = i < bytes.len() && positions[i];
        match (token_start, is_word) {
            (None, true) => {
                if !bytes[i].is_ascii_digit() {
                    token_start = Some(i);
                }
            }
            (Some(start), false) => {
                idents.push(&s[start..i]);
                token_start = None;
            }
            _ => {}
        }
    }
    idents
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Statements that open an indented block; neither dialect supports them.
pub(crate) fn block_opener(text: &str) -> bool {
    let first = text
        .split(|c: char| !c.is_ascii_alphanumeric() && c != '_')
        .next()
        .unwrap_or("");
    matches!(
        first,
        "for"
            | "while"
            | "if"
            | "elif"
            | "else"
            | "def"
            | "class"
            | "with"
            | "try"
            | "except"
            | "finally"
    )
}

/// Well-formed enough to be skipped as noise rather than flagged as broken:
/// the statement starts with an identifier (brackets are already balanced by
/// the splitter).
pub(crate) fn statement_shaped(text: &str) -> bool {
    text.chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
}

/// Match a call expression `path.to.func(args)suffix`, where `path` is a
/// dotted identifier chain and `args` is everything inside the matching
/// parentheses. Returns `(path, args, suffix)` with `suffix` trimmed.
pub(crate) fn match_call(s: &str) -> Option<(&str, &str, &str)> {
    let s = s.trim();
    let bytes = s.as_bytes();
    let mut i = 0;
    loop {
        let start = i;
        while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
            i += 1;
        }
        if i == start || bytes[start].is_ascii_digit() {
            return None;
        }
        if i < bytes.len() && bytes[i] == b'.' {
            i += 1;
            continue;
        }
        break;
    }
    if i >= bytes.len() || bytes[i] != b'(' {
        return None;
    }
    let path = &s[..i];
    let open = i;
    let close = matching_paren(s, open)?;
    Some((path, &s[open + 1..close], s[close + 1..].trim()))
}

/// Byte index of the parenthesis matching the one at `open`.
fn matching_paren(s: &str, open: usize) -> Option<usize> {
    let mut depth = 0;
    let mut found = None;
    scan(s, |ch, i| {
        if i < open {
            return true;
        }
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => {
                depth -= 1;
                if depth == 0 {
                    found = Some(i);
                    return false;
                }
            }
            _ => {}
        }
        true
    });
    found
}

/// Match a simple assignment `NAME = rhs` with a bare identifier on the left
/// and a top-level `=` that is not part of a comparison or augmented
/// assignment. Keyword arguments are inside parentheses and never match.
pub(crate) fn match_assignment(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0;
    let mut split_at = None;
    let bytes = s.as_bytes();
    scan(s, |ch, i| {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            '=' if depth == 0 => {
                let prev = if i > 0 { bytes[i - 1] } else { b' ' };
                let next = if i + 1 < bytes.len() {
                    bytes[i + 1]
                } else {
                    b' '
                };
                if next != b'='
                    && !matches!(
                        prev,
                        b'=' | b'!' | b'<' | b'>' | b'+' | b'-' | b'*' | b'/' | b'%'
                    )
                {
                    split_at = Some(i);
                }
                return false;
            }
            _ => {}
        }
        true
    });
    let i = split_at?;
    let name = s[..i].trim();
    let rhs = s[i + 1..].trim();
    (is_identifier(name) && !rhs.is_empty()).then_some((name, rhs))
}

/// Match an index expression `NAME[expr]` with nothing trailing.
pub(crate) fn match_index(s: &str) -> Option<(&str, &str)> {
    let s = s.trim();
    let open = s.find('[')?;
    let name = &s[..open];
    if !is_identifier(name) || !s.ends_with(']') {
        return None;
    }
    Some((name, s[open + 1..s.len() - 1].trim()))
}

/// Parse a nonnegative integer literal.
pub(crate) fn parse_index(s: &str) -> Option<usize> {
    let s = s.trim();
    (!s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()))
        .then(|| s.parse().ok())
        .flatten()
}

/// The value of `k * pi / m`, shared between the angle parser and the angle
/// renderer so that symbolic angles round-trip bit-exactly.
pub(crate) fn pi_fraction_value(k: i64, m: u64) -> f64 {
    (k as f64) * PI / (m as f64)
}

/// Parse an angle expression: a signed decimal literal, or
/// `[-] [INT *] pi [/ INT]` where `pi` may be spelled `pi`, `math.pi`,
/// `np.pi`, or `numpy.pi`.
pub(crate) fn parse_angle(s: &str) -> Option<f64> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return None;
    }
    let (negative, body) = match compact.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, compact.as_str()),
    };

    let pi_at = ["math.pi", "numpy.pi", "np.pi", "pi"]
        .iter()
        .find_map(|tok| body.find(tok).map(|at| (at, tok.len())));
    if let Some((at, len)) = pi_at {
        let before = &body[..at];
        let after = &body[at + len..];
        let k: i64 = match before.strip_suffix('*') {
            Some(digits) if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) => {
                digits.parse().ok()?
            }
            None if before.is_empty() => 1,
            _ => return None,
        };
        let m: u64 = match after.strip_prefix('/') {
            Some(digits) if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) => {
                digits.parse().ok()?
            }
            None if after.is_empty() => 1,
            _ => return None,
        };
        if m == 0 {
            return None;
        }
        let signed_k = if negative { -k } else { k };
        return Some(pi_fraction_value(signed_k, m));
    }

    body.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .map(|v| if negative { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statements_strip_comments_and_blanks() {
        let src = "qc.h(0)  # hadamard\n\n# whole-line comment\nqc.cx(0, 1)\n";
        let (stmts, errs) = split_statements(src);
        assert!(errs.is_empty());
        assert_eq!(stmts.len(), 2);
        assert_eq!(stmts[0].text, "qc.h(0)");
        assert_eq!(stmts[0].line, 1);
        assert_eq!(stmts[1].text, "qc.cx(0, 1)");
        assert_eq!(stmts[1].line, 4);
    }

    #[test]
    fn statements_join_open_brackets() {
        let src = "circuit = cirq.Circuit([\n    cirq.H(q[0]),\n    cirq.CNOT(q[0], q[1]),\n])\n";
        let (stmts, errs) = split_statements(src);
        assert!(errs.is_empty());
        assert_eq!(stmts.len(), 1);
        assert_eq!(stmts[0].line, 1);
        assert!(stmts[0].text.contains("cirq.CNOT(q[0], q[1])"));
    }

    #[test]
    fn statements_split_on_semicolons() {
        let (stmts, _) = split_statements("qc.h(0); qc.x(1)\n");
        assert_eq!(stmts.len(), 2);
        assert_eq!(stmts[1].text, "qc.x(1)");
        assert_eq!(stmts[1].line, 1);
    }

    #[test]
    fn unterminated_bracket_reported() {
        let (stmts, errs) = split_statements("qc.h(0\n");
        assert!(stmts.is_empty());
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].0, 1);
    }

    #[test]
    fn hash_inside_string_is_not_a_comment() {
        let (stmts, _) = split_statements("cirq.measure(q[0], key=\"#0\")\n");
        assert_eq!(stmts[0].text, "cirq.measure(q[0], key=\"#0\")");
    }

    #[test]
    fn call_matching() {
        assert_eq!(match_call("qc.h(0)"), Some(("qc.h", "0", "")));
        assert_eq!(match_call("cirq.S(q)**-1"), Some(("cirq.S", "q", "**-1")));
        assert_eq!(
            match_call("cirq.rx(np.pi / 2)(q[0])"),
            Some(("cirq.rx", "np.pi / 2", "(q[0])"))
        );
        assert_eq!(
            match_call("cirq.measure(q[0], key=\"c0\")"),
            Some(("cirq.measure", "q[0], key=\"c0\"", ""))
        );
        assert_eq!(match_call("3 + 4"), None);
        assert_eq!(match_call("qc.h(0"), None);
    }

    #[test]
    fn assignment_matching() {
        assert_eq!(
            match_assignment("qc = QuantumCircuit(2, 2)"),
            Some(("qc", "QuantumCircuit(2, 2)"))
        );
        assert_eq!(match_assignment("x += 1"), None);
        assert_eq!(match_assignment("a == b"), None);
        // keyword arguments are not assignments
        assert_eq!(match_assignment("f(key=\"c0\")"), None);
    }

    #[test]
    fn args_split_at_top_level_only() {
        assert_eq!(split_args("q[0], key=\"a,b\""), vec!["q[0]", "key=\"a,b\""]);
        assert_eq!(split_args("  "), Vec::<&str>::new());
        assert_eq!(split_args("f(a, b), c"), vec!["f(a, b)", "c"]);
    }

    #[test]
    fn identifier_scan_skips_strings_and_numbers() {
        assert_eq!(
            identifiers("qc.rx(np.pi / 2, 0)"),
            vec!["qc", "rx", "np", "pi"]
        );
        assert_eq!(
            identifiers("measure(q, key=\"c0\")"),
            vec!["measure", "q", "key"]
        );
    }

    #[test]
    fn angle_grammar() {
        use std::f64::consts::PI;
        assert_eq!(parse_angle("pi"), Some(PI));
        assert_eq!(parse_angle("-pi"), Some(-PI));
        assert_eq!(parse_angle("pi / 2"), Some(PI / 2.0));
        assert_eq!(parse_angle("3 * pi / 4"), Some(3.0 * PI / 4.0));
        assert_eq!(parse_angle("np.pi/2"), Some(PI / 2.0));
        assert_eq!(parse_angle("math.pi"), Some(PI));
        assert_eq!(parse_angle("-2 * pi"), Some(-2.0 * PI));
        assert_eq!(parse_angle("0.5"), Some(0.5));
        assert_eq!(parse_angle("-1.25e-3"), Some(-1.25e-3));
        assert_eq!(parse_angle("2"), Some(2.0));
        assert_eq!(parse_angle("pi * 3"), None);
        assert_eq!(parse_angle("pi / 0"), None);
        assert_eq!(parse_angle("two"), None);
        assert_eq!(parse_angle("nan"), None);
    }
}
