use softvsm_wasm::*;

const EXACT: Params = Params { alpha: 0.8, beta: 5.0, threshold: 1.0, max_per_column: 0 };

#[test]
fn exact_matching_reduces_to_cosine() {
    let c = compare(
        "When Antony found Julius Caesar dead",
        "I did enact Julius Caesar: I was killed i' the Capitol",
        EXACT,
    )
    .unwrap();
    assert!((c.cosine - 2.0 / 78f64.sqrt()).abs() < 1e-12);
    assert_eq!(c.cosine, c.soft_cosine);
    assert_eq!(c.matrix.nnz, 14);
}

#[test]
fn misspelling_raises_soft_score() {
    let p = Params { threshold: 0.0, max_per_column: 3, ..EXACT };
    let c = compare("the colour red", "a color read", p).unwrap();
    assert_eq!(c.cosine, 0.0);
    assert!(c.soft_cosine > 0.0);
    let h = &c.matrix;
    let n = h.terms.len();
    assert_eq!(h.values.len(), n * n);
    assert!((0..n).all(|i| h.values[i * n + i] == 1.0));
}

#[test]
fn search_ranks_exact_line_first() {
    let corpus = "the cat sat\n\nthe dog ran\na cart sits";
    let hits = search(corpus, "the cat sat", 10, Params { threshold: 0.0, ..EXACT }).unwrap();
    assert_eq!(hits[0].line, 1);
    assert!((hits[0].score - 1.0).abs() < 1e-12);
    assert!(hits.iter().all(|h| h.line != 2));
}

#[test]
fn errors_are_reported_as_json() {
    let v: serde_json::Value = serde_json::from_str(&compare_texts("", "", 0.8, 5.0, 0.0, 0)).unwrap();
    assert!(v["error"].is_string());
    let v: serde_json::Value = serde_json::from_str(&similarity_heatmap("a b", 2.0, 5.0, 0.0, 0)).unwrap();
    assert!(v["error"].as_str().unwrap().contains("alpha"));
}

#[test]
fn unseen_query_terms_match_by_spelling() {
    let corpus = "the colour of the sky\na color chart for painters\nthe cat sat";
    let hits = search(corpus, "colors", 5, Params { threshold: 0.0, ..EXACT }).unwrap();
    let lines: Vec<usize> = hits.iter().map(|h| h.line).collect();
    assert_eq!(lines[..2], [2, 1]);
    assert!(search(corpus, "colors", 5, EXACT).unwrap().is_empty());
}
