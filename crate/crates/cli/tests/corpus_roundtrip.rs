//! Round-trip guarantees over the shipped corpus: every document parses,
//! re-emits, and re-parses to the same model, and emission is a fixed point.

use seqea::ModelExpr;
use seqea_cli::doc::{emit_document, parse_document};
use std::path::PathBuf;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// All top-level corpus documents (the `invalid/` subdirectory is excluded:
/// those files exist to exercise refusal paths).
fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory exists")
        .map(|entry| entry.expect("readable entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    assert!(files.len() >= 15, "corpus should cover the model families");
    files
}

#[test]
fn every_corpus_document_round_trips() {
    for path in corpus_files() {
        let text = std::fs::read_to_string(&path).expect("readable corpus file");
        let model = parse_document(&text)
            .unwrap_or_else(|e| panic!("{} should parse: {e}", path.display()));
        let emitted = emit_document(&model);
        let back = parse_document(&emitted)
            .unwrap_or_else(|e| panic!("{} re-emission should parse: {e}", path.display()));
        assert_eq!(back, model, "{}: parse ∘ emit is the identity", path.display());
        assert_eq!(
            emit_document(&back),
            emitted,
            "{}: emission is a fixed point",
            path.display()
        );
    }
}

#[test]
fn the_corpus_covers_every_model_kind() {
    let mut kinds = [false; 7];
    fn mark(m: &ModelExpr, kinds: &mut [bool; 7]) {
        let slot = match m {
            ModelExpr::Finite { .. } => 0,
            ModelExpr::Boolean { .. } => 1,
            ModelExpr::Interval => 2,
            ModelExpr::MatrixInterval => 3,
            ModelExpr::DirectSum { parts } | ModelExpr::HorizontalSum { parts } => {
                for p in parts {
                    mark(p, kinds);
                }
                if matches!(m, ModelExpr::DirectSum { .. }) {
                    4
                } else {
                    5
                }
            }
            ModelExpr::Corner { base, .. } => {
                mark(base, kinds);
                6
            }
        };
        kinds[slot] = true;
    }
    for path in corpus_files() {
        let text = std::fs::read_to_string(&path).expect("readable corpus file");
        let model = parse_document(&text).expect("corpus parses");
        mark(&model, &mut kinds);
    }
    assert_eq!(kinds, [true; 7], "finite/boolean/interval/matrix/ds/hs/corner all present");
}

#[test]
fn invalid_documents_are_rejected_with_a_path() {
    let path = corpus_dir().join("invalid/bad-rational.json");
    let text = std::fs::read_to_string(&path).expect("readable file");
    let err = parse_document(&text).expect_err("zero denominator must not parse");
    assert!(err.at.contains("idempotent"), "error location: {}", err.at);
    assert!(err.message.contains("2/0"), "error message: {}", err.message);
}

#[test]
fn products_survive_the_round_trip() {
    let path = corpus_dir().join("finite-boolean4-meet.json");
    let text = std::fs::read_to_string(&path).expect("readable file");
    let model = parse_document(&text).expect("parses");
    let ModelExpr::Finite { table, product } = &model else {
        panic!("expected a finite model");
    };
    let product = product.as_ref().expect("the meet product is attached");
    let n = table.size();
    for i in 0..n {
        for j in 0..n {
            assert_eq!(product[i * n + j], i & j, "meet of masks {i} and {j}");
        }
    }
    let back = parse_document(&emit_document(&model)).expect("re-parses");
    assert_eq!(back, model);
}
