//! Tokenization.
//!
//! Documents are lowercased, split on Unicode whitespace, and stripped of
//! leading and trailing punctuation. Apostrophes are kept, so the elided
//! form `i'` stays distinct from the pronoun `i`.

fn is_strippable(c: char) -> bool {
    c != '\'' && !c.is_alphanumeric()
}

/// Splits `text` into normalized tokens. Tokens that are pure punctuation
/// are dropped.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace()
        .map(|raw| raw.trim_matches(is_strippable).to_lowercase())
        .filter(|tok| !tok.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strips_punctuation_but_keeps_apostrophes() {
        assert_eq!(
            tokenize("I did enact Julius Caesar: I was killed i' the Capitol"),
            vec!["i", "did", "enact", "julius", "caesar", "i", "was", "killed", "i'", "the", "capitol"]
        );
    }

    #[test]
    fn drops_pure_punctuation_and_handles_unicode_space() {
        assert_eq!(tokenize("  “Hello,\u{3000}World!” -- ... "), vec!["hello", "world"]);
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn inner_punctuation_is_kept() {
        assert_eq!(tokenize("e-mail, U.S."), vec!["e-mail", "u.s"]);
    }
}
