use super::{DiagramCode, Passage, Sense, Sign, ValidationError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: bad token `{token}`: {reason}")]
    Syntax { line: usize, token: String, reason: &'static str },
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

fn token(text: &str, line: usize) -> Result<Passage, ParseError> {
    let syntax = |reason| ParseError::Syntax { line, token: text.to_string(), reason };
    let mut chars = text.chars();
    let kind = chars.next().ok_or_else(|| syntax("empty token"))?;
    let sign_char = chars.next_back().ok_or_else(|| syntax("missing id and sign"))?;
    let digits = chars.as_str();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax("id must be a decimal integer"));
    }
    let id: u32 = digits.parse().map_err(|_| syntax("id out of range"))?;
    let positive = match sign_char {
        '+' => true,
        '-' => false,
        _ => return Err(syntax("token must end in + or -")),
    };
    let sign = if positive { Sign::Positive } else { Sign::Negative };
    let sense = if positive { Sense::Increasing } else { Sense::Decreasing };
    match kind {
        'O' => Ok(Passage::Over { id, sign }),
        'U' => Ok(Passage::Under { id, sign }),
        'V' => Ok(Passage::Virtual { id, sense }),
        _ => Err(syntax("token must start with O, U or V")),
    }
}

/// Tokenizes without validating crossing multiplicities.
pub(crate) fn tokens_only(text: &str) -> Result<Vec<Vec<Passage>>, ParseError> {
    let mut components = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let passages = content
            .split_whitespace()
            .map(|t| token(t, i + 1))
            .collect::<Result<Vec<_>, _>>()?;
        if !passages.is_empty() {
            components.push(passages);
        }
    }
    Ok(components)
}

/// Parses the line-oriented diagram format: `#` starts a comment, each
/// nonblank line is one component.
pub fn parse_code(text: &str) -> Result<DiagramCode, ParseError> {
    Ok(DiagramCode::new(tokens_only(text)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_tokens() {
        let code = parse_code("# trefoil-ish\nO1+ V1+ U1+ V1-   # trailing\n\n").unwrap();
        assert_eq!(
            code.components()[0],
            vec![
                Passage::Over { id: 1, sign: Sign::Positive },
                Passage::Virtual { id: 1, sense: Sense::Increasing },
                Passage::Under { id: 1, sign: Sign::Positive },
                Passage::Virtual { id: 1, sense: Sense::Decreasing },
            ]
        );
    }

    #[test]
    fn syntax_errors() {
        for bad in ["X1+", "O+", "O1", "O1*", "Oa+", "V-1+", "O99999999999+ U99999999999+"] {
            assert!(
                matches!(parse_code(bad), Err(ParseError::Syntax { line: 1, .. })),
                "{bad} should be a syntax error"
            );
        }
        assert!(matches!(parse_code("O1+ U1+\nQ2+"), Err(ParseError::Syntax { line: 2, .. })));
    }

    #[test]
    fn validation_is_applied() {
        assert_eq!(
            parse_code("O1+ U1+ O1+"),
            Err(ParseError::Validation(ValidationError::ClassicalMultiplicity { id: 1, count: 3 }))
        );
        assert_eq!(parse_code("# nothing\n"), Err(ParseError::Validation(ValidationError::EmptyDiagram)));
    }
}
