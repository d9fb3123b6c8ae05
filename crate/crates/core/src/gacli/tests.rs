use proptest::prelude::*;

use super::*;
use crate::conformal::{
    e0, einf, embed_point, extract_point, make_line, sphere_ipns, EuclideanVector,
};
use crate::mvcore::{BasisBlade, Multivector, Signature, Tolerance};
use crate::versor::{reflector_sphere, translator};

fn ev(src: &str) -> Result<Multivector, ExprError> {
    eval_str(src, &Scene::default(), &Tolerance::DEFAULT)
}

fn blade(bits: u32) -> Multivector {
    Multivector::blade(Signature::CGA, BasisBlade::new(bits), 1.0)
}

#[test]
fn parses_product_of_blades() {
    let e = parse("e1*e2").unwrap();
    let ExprKind::Binary(BinOp::Geometric, a, b) = &e.kind else {
        panic!("{e:?}")
    };
    assert!(matches!(a.kind, ExprKind::Blade(x) if x.bits == 1));
    assert!(matches!(b.kind, ExprKind::Blade(x) if x.bits == 2));
    assert_eq!(e.span, Span::new(0, 5));
}

#[test]
fn parses_line_construction() {
    let e = parse("point(1,0,0) ^ point(0,1,0) ^ einf").unwrap();
    let ExprKind::Binary(BinOp::Outer, lhs, rhs) = &e.kind else {
        panic!()
    };
    assert!(matches!(rhs.kind, ExprKind::Constant(Constant::Einf)));
    assert!(matches!(&lhs.kind, ExprKind::Binary(BinOp::Outer, ..)));
    let got = eval(&e, "", &Scene::default(), &Tolerance::DEFAULT).unwrap();
    let p = embed_point(EuclideanVector::new(1.0, 0.0, 0.0));
    let q = embed_point(EuclideanVector::new(0.0, 1.0, 0.0));
    assert_eq!(got, make_line(&p, &q).unwrap().mv);
}

#[test]
fn precedence_and_associativity() {
    assert_eq!(parse("a + b * c ^ d").unwrap().to_string(), "a + b * c ^ d");
    assert_eq!(parse("(a + b) * c").unwrap().to_string(), "(a + b) * c");
    assert_eq!(parse("a - (b - c)").unwrap().to_string(), "a - (b - c)");
    assert_eq!(parse("(a - b) - c").unwrap().to_string(), "a - b - c");
    assert_eq!(parse("-a ^ b").unwrap().to_string(), "-a ^ b");
    assert_eq!(parse("-(a ^ b)").unwrap().to_string(), "-(a ^ b)");
    assert_eq!(parse("~~!x").unwrap().to_string(), "~~!x");
    assert_eq!(parse("f(a,b;c)").unwrap().to_string(), "f(a, b; c)");
    // `^` binds tighter than `*`.
    assert_eq!(ev("e1 * e2 ^ e3").unwrap(), blade(0b111));
    assert_eq!(
        ev("2 * 3 - 4").unwrap(),
        Multivector::scalar(Signature::CGA, 2.0)
    );
}

#[test]
fn syntax_errors_carry_positions() {
    let err = parse("e1 *").unwrap_err();
    assert!(
        matches!(
            err,
            ExprError::Syntax {
                line: 1,
                col: 5,
                ..
            }
        ),
        "{err}"
    );
    assert!(err.to_string().contains("expected"));
    let err = parse("point(1,\n  2 3)").unwrap_err();
    assert!(
        matches!(
            err,
            ExprError::Syntax {
                line: 2,
                col: 5,
                ..
            }
        ),
        "{err}"
    );
    for bad in [
        "", "(e1", "e1)", "e21", "e6", "e1 # e2", "f(1,", "2 ^", "1..2",
    ] {
        assert!(matches!(parse(bad), Err(ExprError::Syntax { .. })), "{bad}");
    }
}

#[test]
fn eval_examples() {
    assert_eq!(ev("(e1+e2)*(e1-e2)").unwrap(), blade(0b11).scale(-2.0));
    assert_eq!(ev("~ (e1*e2)").unwrap(), -blade(0b11));
    let p = ev("apply(translator(1,0,0), point(0,0,0), motion)").unwrap();
    assert_eq!(p, embed_point(EuclideanVector::new(1.0, 0.0, 0.0)));
    assert_eq!(
        ev("point(1,0,0) | point(0,0,0)").unwrap(),
        Multivector::scalar(Signature::CGA, -0.5)
    );
    assert_eq!(ev("!(1 + e1 + e12)").unwrap(), ev("1 - e1 + e12").unwrap());
    assert_eq!(ev("e0").unwrap(), e0());
    assert_eq!(ev("einf ^ e0").unwrap(), ev("E").unwrap());
    assert_eq!(ev("I").unwrap(), blade(0b11111));
    assert_eq!(ev("grade(1 + e1 + e12, 2)").unwrap(), blade(0b11));
    assert_eq!(ev("dual(1)").unwrap(), -blade(0b11111));
    assert_eq!(ev("undual(dual(e13))").unwrap(), blade(0b101));
}

#[test]
fn constructors_match_library() {
    let tol = Tolerance::DEFAULT;
    assert_eq!(
        ev("sphere(1,2,3; 0.5)").unwrap(),
        sphere_ipns(EuclideanVector::new(1.0, 2.0, 3.0), 0.5).unwrap()
    );
    assert_eq!(
        ev("mirror_sphere(0,0,0; 1)").unwrap(),
        reflector_sphere(EuclideanVector::ZERO, 1.0)
            .unwrap()
            .into_mv()
    );
    assert_eq!(
        ev("translator(1, -2, 0.5)").unwrap(),
        translator(EuclideanVector::new(1.0, -2.0, 0.5))
            .unwrap()
            .into_mv()
    );
    let inverted = ev("apply(mirror_sphere(0,0,0; 1), point(2,0,0))").unwrap();
    let x = extract_point(&inverted).unwrap();
    assert!(x.max_abs_diff(EuclideanVector::new(0.5, 0.0, 0.0)) <= 1e-15);
    for src in [
        "pair(point(0,0,0), point(1,0,0))",
        "circle(point(1,0,0), point(0,1,0), point(-1,0,0))",
        "sphere(point(1,0,0), point(0,1,0), point(-1,0,0), point(0,0,1))",
        "line(point(0,0,0), point(1,1,1))",
        "plane(point(1,0,0), point(0,1,0), point(0,0,1))",
        "plane(0,0,1; 2)",
        "flat(point(1,2,3))",
        "space()",
        "rotor(e12; pi / 3)",
        "motor(1,0,0; e12; 0.5)",
        "scalor(1,0,0; 2)",
        "mirror_plane(0,0,2; 1)",
        "mirror_line(0,0,1; 1,0,0)",
        "mirror_point(1,2,3)",
        "exp(0.5 * e12)",
        "inv(translator(1,2,3))",
    ] {
        let mv = ev(src).unwrap_or_else(|e| panic!("{src}: {e}"));
        assert!(!mv.is_zero(&tol), "{src}");
    }
}

#[test]
fn apply_mode_defaults_to_natural() {
    let a = ev("apply(mirror_plane(1,0,0; 0), point(1,2,3))").unwrap();
    let b = ev("apply(mirror_plane(1,0,0; 0), point(1,2,3), reflection)").unwrap();
    assert_eq!(a, b);
    assert!(matches!(
        ev("apply(mirror_plane(1,0,0; 0), e1, motion)"),
        Err(ExprError::Eval {
            source: crate::Error::ParityMode(_),
            ..
        })
    ));
    assert!(matches!(
        ev("apply(mirror_plane(1,0,0; 0), e1, sideways)"),
        Err(ExprError::Call { .. })
    ));
}

#[test]
fn eval_errors() {
    assert!(matches!(ev("x + 1"), Err(ExprError::UnboundName { ref name, .. }) if name == "x"));
    assert!(matches!(ev("nope(1)"), Err(ExprError::Call { .. })));
    assert!(matches!(ev("point(1,2)"), Err(ExprError::Call { .. })));
    assert!(matches!(
        ev("translator(e1, 0, 0)"),
        Err(ExprError::Eval { .. })
    ));
    let err = ev("1 + inv(einf)").unwrap_err();
    assert!(
        matches!(
            err,
            ExprError::Eval {
                line: 1,
                col: 5,
                source: crate::Error::SingularVersor
            }
        ),
        "{err}"
    );
    assert!(matches!(ev("grade(e1, 1.5)"), Err(ExprError::Eval { .. })));
    assert!(matches!(ev("grade(e1, 6)"), Err(ExprError::Eval { .. })));
    assert!(matches!(
        ev("mirror_sphere(0,0,0; 0)"),
        Err(ExprError::Eval { .. })
    ));
    assert!(!ev("x").unwrap_err().to_string().is_empty());
    assert!(ev("x").unwrap_err().is_usage());
    assert!(!ev("inv(einf)").unwrap_err().is_usage());
}

#[test]
fn text_form_of_results_evaluates_back() {
    for src in [
        "rotor(e12; 0.3) * translator(1,2,3)",
        "point(0.1, -2, 3e-7)",
        "1 + E + I",
    ] {
        let mv = ev(src).unwrap();
        assert_eq!(ev(&mv.to_string()).unwrap(), mv, "{mv}");
    }
}

#[test]
fn names_resolve_from_scene() {
    let json = r#"{"objects": {"p": "point(1,0,0)"}, "versors": {"t": "translator(0,1,0)"}}"#;
    let scene = Scene::from_json(json, None).unwrap();
    let got = eval_str("apply(t, p)", &scene, &Tolerance::DEFAULT).unwrap();
    assert_eq!(got, embed_point(EuclideanVector::new(1.0, 1.0, 0.0)));
}

#[test]
fn blade_keys() {
    assert_eq!(parse_key("1").unwrap(), Multivector::one(Signature::CGA));
    assert_eq!(parse_key("e0").unwrap(), e0());
    assert_eq!(parse_key("e1^einf").unwrap(), blade(1) ^ einf());
    assert_eq!(parse_key("e0 ^ einf").unwrap(), -blade(0b11000));
    assert_eq!(parse_key("e45").unwrap(), blade(0b11000));
    for bad in ["", "e6", "e21", "x", "e1^"] {
        assert!(parse_key(bad).is_none(), "{bad}");
    }
}

const SCENE: &str = r#"{
  "objects": {
    "origin": {"e0": 1.0},
    "p": {"e1": 1.0, "e0": 1.0, "einf": 0.5},
    "unit": "sphere(0,0,0; 1)",
    "axis": "line(point(0,0,0), point(0,0,1))"
  },
  "versors": {"flip": "mirror_plane(1,0,0; 0)"},
  "tolerance": {"abs": 1e-12, "rel": 1e-9}
}"#;

#[test]
fn scene_round_trip_is_byte_exact() {
    let scene = Scene::from_json(SCENE, None).unwrap();
    assert_eq!(scene.objects.len(), 4);
    let first = scene.to_json();
    let again = Scene::from_json(&first, None).unwrap().to_json();
    assert_eq!(first, again);
    assert!(first.contains("\"e5\": 1.0"));
    assert!(first.contains("\"tolerance\""));
}

#[test]
fn scene_rejects_bad_entries() {
    let bad = [
        r#"{"objects": {"x": {"e7": 1.0}}}"#,
        r#"{"objects": {"x": "1 + e1"}}"#,
        r#"{"objects": {"x": "e1 +"}}"#,
        r#"{"versors": {"v": "1 + e1"}}"#,
        r#"{"objects": {"a": "e1"}, "versors": {"a": "e1"}}"#,
        r#"{"things": {}}"#,
        r#"{"tolerance": {"rel": -1}}"#,
        r#"[1, 2]"#,
    ];
    for src in bad {
        assert!(Scene::from_json(src, None).is_err(), "{src}");
    }
}

#[test]
fn tolerance_override_replaces_rel() {
    let scene = Scene::from_json(SCENE, Some(1e-6)).unwrap();
    let tol = scene.effective_tolerance(Some(1e-6));
    assert_eq!(tol.rel, 1e-6);
    assert_eq!(tol.abs, 1e-12);
    assert_eq!(scene.tolerance.unwrap().rel, 1e-9);
}

#[test]
fn line_col_counts_characters() {
    assert_eq!(line_col("ab\ncd", 0), (1, 1));
    assert_eq!(line_col("ab\ncd", 4), (2, 2));
    assert_eq!(line_col("ab", 2), (1, 3));
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0.0f64..1e3).prop_map(Expr::number),
        (1u32..32).prop_map(|b| Expr::new(ExprKind::Blade(BasisBlade::new(b)))),
        prop_oneof![
            Just(Constant::E0),
            Just(Constant::Einf),
            Just(Constant::Minkowski),
            Just(Constant::Pseudoscalar),
            Just(Constant::Pi),
        ]
        .prop_map(|c| Expr::new(ExprKind::Constant(c))),
        "[a-d][a-z_0-9]{0,3}".prop_map(|n| Expr::new(ExprKind::Name(n))),
    ]
}

fn tree() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 48, 4, |inner| {
        prop_oneof![
            (
                prop_oneof![
                    Just(UnaryOp::Neg),
                    Just(UnaryOp::Reverse),
                    Just(UnaryOp::Involute)
                ],
                inner.clone()
            )
                .prop_map(|(op, a)| Expr::unary(op, a)),
            (
                prop_oneof![
                    Just(BinOp::Add),
                    Just(BinOp::Sub),
                    Just(BinOp::Geometric),
                    Just(BinOp::Divide),
                    Just(BinOp::Outer),
                    Just(BinOp::Contract)
                ],
                inner.clone(),
                inner.clone()
            )
                .prop_map(|(op, a, b)| Expr::binary(op, a, b)),
            prop::collection::vec(prop::collection::vec(inner, 1..3), 0..3)
                .prop_map(|g| Expr::call("f", g)),
        ]
    })
}

proptest! {
    #[test]
    fn render_parse_round_trip(e in tree()) {
        let text = e.to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn negative_literals_render_stably(x in -1e3f64..0.0, b in 1u32..32) {
        let e = Expr::binary(
            BinOp::Geometric,
            Expr::new(ExprKind::Blade(BasisBlade::new(b))),
            Expr::number(x),
        );
        let once = e.to_string();
        prop_assert_eq!(parse(&once).unwrap().to_string(), once);
    }
}
