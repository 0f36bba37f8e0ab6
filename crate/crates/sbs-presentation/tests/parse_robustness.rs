use proptest::prelude::*;
use sbs_presentation::{example_source, SbAlgebraSpec, SpecError};

proptest! {
    #[test]
    fn parser_never_panics(input in "\\PC{0,200}") {
        let _ = SbAlgebraSpec::parse(&input);
    }

    #[test]
    fn near_grammar_inputs_never_panic(
        names in prop::collection::vec("[uvw]", 1..3),
        body in "[abd*^();0-9 -]{0,60}",
    ) {
        let text = format!(
            "quiver {{ vertices: {}; arrows: a: {} -> {}; }}\nrelations {{ {} }}",
            names.join(" "),
            names[0],
            names[names.len() - 1],
            body
        );
        let _ = SbAlgebraSpec::parse(&text);
    }
}

#[test]
fn example_survives_comment_and_whitespace_mangling() {
    let src = example_source(1).unwrap();
    let spec = SbAlgebraSpec::parse(src).unwrap();
    let mangled: String = src
        .lines()
        .map(|l| format!("  {l}   # trailing note\n"))
        .collect();
    assert_eq!(SbAlgebraSpec::parse(&mangled).unwrap(), spec);
}

#[test]
fn truncations_of_example_fail_cleanly() {
    let src = example_source(1).unwrap();
    for cut in 0..src.len() {
        if !src.is_char_boundary(cut) {
            continue;
        }
        match SbAlgebraSpec::parse(&src[..cut]) {
            Ok(_) | Err(SpecError::Syntax { .. }) | Err(SpecError::Semantic { .. }) => {}
            Err(other) => {
                // Truncation can only produce broken syntax or dangling
                // names, never a deeper structural verdict.
                let tail_ok = matches!(other, SpecError::SbAxiom { .. });
                assert!(tail_ok, "unexpected error class {other:?} at cut {cut}");
            }
        }
    }
}
