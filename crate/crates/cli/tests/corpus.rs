mod common;

use std::sync::Arc;

use cathom_cli::format::{
    emit_ab_presheaf, emit_category, emit_functor, emit_presheaf, functor_paths, parse_ab_presheaf, parse_category,
    parse_functor, parse_presheaf, FormatError,
};
use common::{corpus_dir, entries, Entry};

fn read(name: &str) -> String {
    std::fs::read_to_string(corpus_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn load_cat(name: &str) -> Arc<cathom::fincat::FinCat> {
    Arc::new(parse_category(&read(name)).unwrap())
}

/// Set `CATHOM_BLESS=1` to rewrite the corpus from the builders.
#[test]
fn corpus_matches_builders() {
    let bless = std::env::var_os("CATHOM_BLESS").is_some();
    for (name, entry) in entries() {
        let text = entry.emit();
        if bless {
            std::fs::write(corpus_dir().join(name), &text).unwrap();
        }
        assert_eq!(read(name), text, "{name} is out of date");
    }
}

#[test]
fn corpus_parses_to_the_builders() {
    for (name, entry) in entries() {
        let text = read(name);
        match entry {
            Entry::Cat(c) => {
                let parsed = parse_category(&text).unwrap();
                assert_eq!(parsed, c, "{name}");
                assert_eq!(emit_category(&parsed).unwrap(), text, "{name}");
            }
            Entry::Psh { base, x } => {
                let parsed = parse_presheaf(&text, &load_cat(base)).unwrap();
                assert_eq!(parsed, x, "{name}");
                assert_eq!(emit_presheaf(&parsed).unwrap(), text, "{name}");
            }
            Entry::Apsh { base, x } => {
                let parsed = parse_ab_presheaf(&text, &load_cat(base)).unwrap();
                assert_eq!(parsed, x, "{name}");
                assert_eq!(emit_ab_presheaf(&parsed), text, "{name}");
            }
            Entry::Fun { source, target, u } => {
                assert_eq!(functor_paths(&text).unwrap(), (source.to_string(), target.to_string()));
                let parsed = parse_functor(&text, &load_cat(source), &load_cat(target)).unwrap();
                assert_eq!(parsed, u, "{name}");
                assert_eq!(emit_functor(&parsed, source, target), text, "{name}");
            }
        }
    }
}

#[test]
fn bundled_terminal_and_bz2() {
    let e = parse_category(&read("terminal.cat")).unwrap();
    assert_eq!((e.object_count(), e.morphism_count()), (1, 1));
    let bz2 = parse_category(&read("bz2.cat")).unwrap();
    assert_eq!((bz2.object_count(), bz2.morphism_count()), (1, 2));
    let g = bz2.find_morphism("g").unwrap();
    assert!(bz2.is_identity(bz2.compose(g, g)));
}

#[test]
fn malformed_composite_names_the_triple() {
    let text = read("bz3.cat").replace("g * g = g2", "g * g = g");
    assert_ne!(text, read("bz3.cat"));
    match parse_category(&text) {
        Err(FormatError::Validation { message, .. }) => {
            assert!(message.contains("associativity fails for the triple ("), "{message}");
        }
        other => panic!("expected a validation error, got {other:?}"),
    }
}

#[test]
fn ill_typed_composite_has_a_line() {
    let mut text = read("delta1.cat");
    // two arrows Δ_0 → Δ_1 do not compose
    text.push_str("D0D1_0 * D0D1_1 = D0D1_0\n");
    let line = text.lines().count();
    match parse_category(&text) {
        Err(FormatError::Validation { line: Some(l), .. }) => assert_eq!(l, line),
        other => panic!("expected a validation error with a line, got {other:?}"),
    }
}

#[test]
fn missing_action_and_bad_matrix() {
    let d2 = load_cat("delta2.cat");
    let text = read("rep_d1.psh");
    let first_action = text.lines().skip_while(|l| *l != "[action]").nth(1).unwrap().to_string();
    let cut = text.replace(&format!("{first_action}\n"), "");
    assert!(matches!(parse_presheaf(&cut, &d2), Err(FormatError::Validation { .. })));
    let bz2 = load_cat("bz2.cat");
    let wrong = read("sign.apsh").replace("[-1]", "[1 0]");
    assert!(matches!(parse_ab_presheaf(&wrong, &bz2), Err(FormatError::Validation { line: Some(_), .. })));
}
