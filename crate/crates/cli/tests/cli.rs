use std::process::Command;

use proptest::prelude::*;
use qcone_cli::{parse, parse_element, run, EXIT_OK, EXIT_UNEXPECTED, EXIT_USAGE};
use qcone_core::ncalg::{Element, GenId, Word};
use qcone_core::presets::{named_element, preset};
use qcone_core::{build_preset, GaussRat, PresetName, QLaurent};
use serde_json::Value;

fn qcone(args: &[&str]) -> qcone_cli::Outcome {
    run(std::iter::once("qcone").chain(args.iter().copied()))
}

#[test]
fn normalize_twistor_commutator() {
    let out = qcone(&["normalize", "--preset", "twistor", "xb x - x xb"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "0\n");
}

#[test]
fn normalize_qdet_is_already_normal() {
    let out = qcone(&[
        "normalize",
        "--preset",
        "nullvector",
        "X11 X22 - q^2 X12 X21",
    ]);
    assert_eq!(out.stdout, "X11 X22 - q^2 X12 X21\n");
}

#[test]
fn verify_all_is_deterministic_json() {
    let a = qcone(&["--format", "json", "verify", "--all"]);
    let b = qcone(&["--format", "json", "verify", "--all"]);
    assert_eq!(a.code, EXIT_OK, "{}", a.stdout);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["all_as_expected"], true);
    let reports = v["reports"].as_array().unwrap();
    assert!(reports.len() > 40);
    for r in reports {
        assert!(r["check"].is_string());
        assert!(r["status"] == "pass" || r["status"] == "fail");
        let witnesses = r["witnesses"].as_array().unwrap();
        assert_eq!(r["status"] == "fail", !witnesses.is_empty());
        for w in witnesses {
            assert!(w["input"].is_string() && w["difference"].is_string());
        }
    }
    let coord = reports
        .iter()
        .find(|r| r["check"] == "confluence:coord-deriv")
        .unwrap();
    assert_eq!(coord["status"], "fail");
    assert_eq!(coord["expected"], "fail");
}

#[test]
fn limit_box_json() {
    let out = qcone(&["--format", "json", "limit", "--order", "1", "box"]);
    assert_eq!(out.code, EXIT_OK);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["parts"]["h^0"], "D11 D22 - D12 D21");
    assert_eq!(v["parts"]["h^1"], "-2*i D12 D21");
}

#[test]
fn limit_of_momenta() {
    let out = qcone(&["limit", "--order", "0", "P11 P22 - q^2 P12 P21"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(
        out.stdout.contains("h^0: -D11 D22 + D12 D21"),
        "{}",
        out.stdout
    );
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["list-presets"], EXIT_OK),
        (&["--format", "json", "list-presets"], EXIT_OK),
        (&["verify", "--preset", "twistor"], EXIT_OK),
        (
            &["verify", "--printed-typo", "--category", "relations"],
            EXIT_OK,
        ),
        (&["verify", "--category", "epsilon"], EXIT_OK),
        (&["confluence", "--preset", "nullvector"], EXIT_OK),
        (&["confluence", "--preset", "coord-deriv"], EXIT_OK),
        (
            &["confluence", "--preset", "twistor", "--max-degree", "4"],
            EXIT_OK,
        ),
        (&["solve-exponents"], EXIT_OK),
        (&["solve-exponents", "--with-reality"], EXIT_OK),
        (&["solve-exponents", "--with-star-closure"], EXIT_OK),
        (
            &["normalize", "--preset", "twistor", "q^(1/2) z"],
            EXIT_USAGE,
        ),
        (&["normalize", "--preset", "twistor", "x $"], EXIT_USAGE),
        (&["normalize", "--preset", "twistor", "q^1/3 x"], EXIT_USAGE),
        (&["normalize", "--preset", "nowhere", "x"], EXIT_USAGE),
        (&["limit", "--order", "1", "X11"], EXIT_USAGE),
        (&["verify", "--all", "--preset", "twistor"], EXIT_USAGE),
        (&["frobnicate"], EXIT_USAGE),
        (&[], EXIT_USAGE),
    ];
    for (args, code) in cases {
        assert_eq!(qcone(args).code, *code, "{args:?}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qcone");
    let status = Command::new(bin)
        .args(["verify", "--all"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_OK));
    let status = Command::new(bin)
        .args(["normalize", "--preset", "twistor", "z"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&status.stderr).contains("unknown token `z`"));
    let _ = EXIT_UNEXPECTED;
}

#[test]
fn json_reports_carry_context() {
    let out = qcone(&[
        "--format",
        "json",
        "confluence",
        "--preset",
        "coord-deriv",
        "--printed-typo",
    ]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["context"]["preset"], "coord-deriv");
    assert_eq!(v["context"]["max_degree"], 3);
    assert_eq!(v["context"]["printed_typo"], true);
}

fn round_trip(e: &Element<QLaurent>, name: PresetName) {
    let p = build_preset(name);
    let nf = p.normalize(e);
    let s = p.render(&nf);
    let ast = parse(&s, &p).unwrap_or_else(|err| panic!("{s}: {err}"));
    assert_eq!(ast.to_element(&p), nf, "{s}");
    let again = parse(&p.render(&ast.to_element(&p)), &p).unwrap();
    assert_eq!(again, ast, "{s}");
}

/// Rendered normal forms of every word up to degree 3, every relation line
/// and the named elements.
#[test]
fn round_trip_corpus() {
    for name in PresetName::ALL {
        let pr = preset(name);
        let p = &pr.presentation;
        for len in 0..=3 {
            for w in p.words_of_length(len) {
                round_trip(&Element::word(w), name);
            }
        }
        for r in pr.all_relations() {
            round_trip(&r.lhs, name);
            round_trip(&r.rhs, name);
        }
    }
    for n in ["qdet", "qdalembertian", "qdet-twistor"] {
        let ne = named_element(n).unwrap();
        round_trip(&ne.element, ne.preset);
    }
}

#[test]
fn documented_parse_examples() {
    let tw = build_preset(PresetName::Twistor);
    let e = parse_element("yb*x", &tw).unwrap();
    assert_eq!(e, Element::word(Word(vec![tw.g("yb"), tw.g("x")])));
    assert!(parse_element("q^(1/2) z", &tw).is_err());
}

fn coeff_strategy() -> impl Strategy<Value = QLaurent> {
    prop::collection::vec((-3i32..=3, -4i64..=4, -4i64..=4, 1i64..=3), 1..3).prop_map(|atoms| {
        let mut c = QLaurent::zero();
        for (e, re, im, den) in atoms {
            let g = GaussRat::new(
                num_rational::BigRational::new(re.into(), den.into()),
                num_rational::BigRational::new(im.into(), den.into()),
            );
            c = &c + &QLaurent::q_half_pow(e).scale(&g);
        }
        c
    })
}

proptest! {
    #[test]
    fn random_round_trip(
        preset_idx in 0usize..9,
        terms in prop::collection::vec((prop::collection::vec(0u16..16, 0..4), coeff_strategy()), 0..4),
    ) {
        let name = PresetName::ALL[preset_idx];
        let p = build_preset(name);
        let n = p.alphabet().len() as u16;
        let mut e = Element::zero();
        for (letters, c) in terms {
            let w = Word(letters.into_iter().map(|g| GenId(g % n)).collect());
            e.add_term(w, &c);
        }
        round_trip(&e, name);
    }
}
