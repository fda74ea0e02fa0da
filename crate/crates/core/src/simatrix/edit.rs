/// Levenshtein distance over Unicode scalar values.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() {
        return b.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// `1 - lev(a, b) / max(|a|, |b|)`, in `[0, 1]`.
pub fn normalized_similarity(a: &str, b: &str) -> f64 {
    let longest = a.chars().count().max(b.chars().count());
    if longest == 0 {
        return 1.0;
    }
    1.0 - levenshtein(a, b) as f64 / longest as f64
}

/// `alpha · normalized_similarity(a, b)^beta`.
pub fn edit_similarity(a: &str, b: &str, alpha: f64, beta: f64) -> f64 {
    alpha * normalized_similarity(a, b).powf(beta)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Full-matrix textbook recurrence, kept separate from the two-row version.
    fn lev_table(a: &str, b: &str) -> usize {
        let a: Vec<char> = a.chars().collect();
        let b: Vec<char> = b.chars().collect();
        let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
        for (i, row) in d.iter_mut().enumerate() {
            row[0] = i;
        }
        for (j, cell) in d[0].iter_mut().enumerate() {
            *cell = j;
        }
        for i in 1..=a.len() {
            for j in 1..=b.len() {
                let cost = usize::from(a[i - 1] != b[j - 1]);
                d[i][j] = (d[i - 1][j] + 1).min(d[i][j - 1] + 1).min(d[i - 1][j - 1] + cost);
            }
        }
        d[a.len()][b.len()]
    }

    #[test]
    fn dead_killed() {
        assert_eq!(lev_table("dead", "killed"), 5);
        assert_eq!(levenshtein("dead", "killed"), 5);
        assert!((normalized_similarity("dead", "killed") - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn agrees_with_table_oracle() {
        let words = ["", "a", "kitten", "sitting", "flaw", "lawn", "i'", "ü", "über", "caesar", "capitol"];
        for a in words {
            for b in words {
                assert_eq!(levenshtein(a, b), lev_table(a, b), "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn identical_terms_are_fully_similar() {
        assert_eq!(normalized_similarity("julius", "julius"), 1.0);
        assert_eq!(edit_similarity("julius", "julius", 1.0, 5.0), 1.0);
    }
}
