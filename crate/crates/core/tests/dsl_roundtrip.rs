mod common;

use isbrauer::dsl::{builtin, builtin_source, emit, parse, BUILTIN_NAMES};
use isbrauer::model::validate;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn valid_from_seed(seed: u64) -> isbrauer::Configuration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let cfg = common::random_config(&mut rng);
        if validate(&cfg).is_ok() {
            return cfg;
        }
    }
}

#[test]
fn canonical_sources_are_fixed_points() {
    for name in BUILTIN_NAMES {
        let src = builtin_source(name).unwrap();
        assert_eq!(emit(&parse(src).unwrap()), src);
        assert_eq!(builtin(name).unwrap(), parse(src).unwrap());
    }
}

#[test]
fn hpt_shape() {
    let cfg = builtin("hpt").unwrap();
    assert_eq!(cfg.curves.len(), 7);
    assert_eq!(cfg.points.len(), 3);
    assert_eq!(cfg.symbols, vec!["a", "b", "c"]);
}

#[test]
fn crlf_input() {
    let src = builtin_source("hpt").unwrap().replace('\n', "\r\n");
    assert_eq!(parse(&src).unwrap(), builtin("hpt").unwrap());
}

#[test]
fn empty_curves_emit_header_only() {
    let cfg = parse("cover: split\nsymbols: a\n").unwrap();
    assert_eq!(emit(&cfg), "cover: split\nsymbols: a\n");
}

#[test]
fn residue_cancellation() {
    let cfg = parse("cover: irreducible\nsymbols: a b\n\ncurve c:\n  type: III\n  cover: ramified\n  ext e: a+b+a\n").unwrap();
    assert_eq!(
        cfg.curves[0].extensions[0].residue.render(&cfg.symbols),
        "b"
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn parse_emit_round_trip(seed in any::<u64>()) {
        let cfg = valid_from_seed(seed);
        let text = emit(&cfg);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &cfg);
        prop_assert_eq!(emit(&back), text);
    }

    #[test]
    fn diagnostics_point_inside_input(seed in any::<u64>(), cut in 0usize..2000, junk in "[a-z:=+#, 0-9]{0,4}") {
        let text = emit(&valid_from_seed(seed));
        let chars: Vec<char> = text.chars().collect();
        let at = cut % (chars.len() + 1);
        let mutated: String = chars[..at].iter().chain(junk.chars().collect::<Vec<_>>().iter()).chain(chars[(at + 1).min(chars.len())..].iter()).collect();
        if let Err(errors) = parse(&mutated) {
            let lines: Vec<&str> = mutated.split('\n').collect();
            prop_assert!(!errors.diagnostics.is_empty());
            for d in &errors.diagnostics {
                prop_assert!(d.span.line >= 1 && d.span.line <= lines.len().max(1), "{} in {:?}", d, mutated);
                let width = lines.get(d.span.line - 1).map_or(0, |l| l.chars().count());
                prop_assert!(d.span.column >= 1 && d.span.column <= width + 1, "{} in {:?}", d, mutated);
            }
        }
    }
}
