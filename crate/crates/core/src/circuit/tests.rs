use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::matrix::{approx_eq, CMatrix, Dim};
use crate::param::{EquivConfig, EquivStatus, ParamPoint};

fn point(coords: &[f64]) -> ParamPoint {
    ParamPoint::new(coords.to_vec()).unwrap()
}

fn eval(text: &str, coords: &[f64]) -> CMatrix {
    let c = load(text).unwrap();
    c.param.eval_at(&c.mor, &point(coords)).unwrap()
}

fn ix() -> CMatrix {
    CMatrix::from_rows(&[&[(0.0, 0.0), (0.0, 1.0)], &[(0.0, 1.0), (0.0, 0.0)]])
}

fn parse_err(text: &str) -> ParseError {
    parse(text).expect_err("should not parse")
}

#[test]
fn sequence_of_rotations_parses() {
    let p = parse("params 2\nrx(t0) ; rx(2*t1)").unwrap();
    assert_eq!(p.params, 2);
    let want = Node::seq(vec![
        Node::gate("rx", Some(AffineExpr::param(0)), None),
        Node::gate("rx", Some(AffineExpr::new(0.0, [(1, 2.0)]).unwrap()), None),
    ]);
    assert!(p.body.same_structure(&want));
    assert_eq!(
        p.body.span,
        SourceSpan {
            line: 2,
            column: 1,
            length: 17
        }
    );
}

#[test]
fn swap_conjugation_parses_as_three_terms() {
    let p = parse("params 1\nswap(2,2) ; rz(t0)|id(2) ; swap(2,2)").unwrap();
    let NodeKind::Seq(items) = &p.body.kind else {
        panic!("expected a sequence")
    };
    assert_eq!(items.len(), 3);
    assert!(matches!(&items[1].kind, NodeKind::Par(fs) if fs.len() == 2));
    let NodeKind::Gate(g) = &items[0].kind else { panic!() };
    assert_eq!(g.dims, Some(vec![2, 2]));
}

#[test]
fn out_of_range_parameter() {
    let e = parse_err("params 1\nrx(t1)");
    assert_eq!(e.message, "parameter t1 out of range (params 1)");
    assert_eq!(
        e.span,
        SourceSpan {
            line: 2,
            column: 4,
            length: 2
        }
    );
}

#[test]
fn syntax_errors_carry_spans() {
    let cases: &[(&str, &str, (usize, usize))] = &[
        ("rx(t0)", "expected `params N` header", (1, 1)),
        ("params x\nh", "expected parameter count", (1, 8)),
        ("params 1 h\nh", "expected end of line after header", (1, 10)),
        ("params 1\n", "empty circuit", (2, 1)),
        (
            "params 1\nrx(t0) ;",
            "expected a gate or `(`, found end of input",
            (2, 9),
        ),
        ("params 1\n(h ; x", "expected `)`", (2, 7)),
        ("params 1\nh ! x", "unexpected character `!`", (2, 3)),
        ("params 1\nid ; h", "`id` needs dimensions (n)", (2, 4)),
        ("params 1\nswap(2)", "`swap` takes dimensions (n, m), got 1", (2, 1)),
        ("params 1\nid(0)", "dimensions must be positive", (2, 4)),
        ("params 1\nid(1.5)", "dimension must be a non-negative integer", (2, 4)),
        ("params 1\nrx(t0 +)", "expected a number, `pi` or a parameter", (2, 8)),
        ("params 1\nrx(1/0)", "must be finite", (2, 4)),
        ("params 1\nh x", "expected `;`, `|` or end of input, found `x`", (2, 3)),
    ];
    for &(text, needle, (line, column)) in cases {
        let e = parse_err(text);
        assert!(e.message.contains(needle), "{text:?}: {e}");
        assert_eq!((e.span.line, e.span.column), (line, column), "{text:?}: {e}");
    }
}

#[test]
fn unknown_names_parse_as_gates() {
    // rejected later, during elaboration
    let p = parse("# lead\n\nparams 1\nh\n  ; t3").unwrap();
    let NodeKind::Seq(items) = &p.body.kind else { panic!() };
    assert!(matches!(&items[1].kind, NodeKind::Gate(g) if g.name == "t3"));
}

#[test]
fn comments_blank_lines_and_pi() {
    let text = "# leading comment\n\nparams 2   # two angles\nrz(pi/2 - t0) ;  # first\n  rz(2*pi*t1 + 0.5)\n";
    let p = parse(text).unwrap();
    let NodeKind::Seq(items) = &p.body.kind else { panic!() };
    let NodeKind::Gate(second) = &items[1].kind else {
        panic!()
    };
    let angle = second.angle.as_ref().unwrap();
    assert_eq!(angle.constant_term(), 0.5);
    assert_eq!(angle.terms(), &[(1, 2.0 * PI)]);
    assert_eq!(items[1].span.line, 5);
}

#[test]
fn parameter_and_rotation_example_evaluates() {
    let m = eval("params 2\nrx(t0);rx(2*t1)", &[FRAC_PI_2, 0.0]);
    assert!(approx_eq(&m, &ix(), 1e-12).is_within());
}

#[test]
fn rotations_add_under_sequencing() {
    let a = load("params 2\nrx(t0) ; rx(2*t1)").unwrap();
    let b = load("params 2\nrx(t0 + 2*t1)").unwrap();
    let v = a.param.check_equiv(&a.mor, &b.mor, &EquivConfig::default()).unwrap();
    assert_eq!(v.status, EquivStatus::Equivalent);
    assert_eq!(v.samples_used, 101);
}

#[test]
fn parallel_example_evaluates() {
    let m = eval("params 2\nrx(t0) | rx(2*t1)", &[FRAC_PI_2, 0.0]);
    let i = Complex64::i();
    let z = Complex64::new(0.0, 0.0);
    let want = CMatrix::new(4, 4, vec![z, z, i, z, z, z, z, i, i, z, z, z, z, i, z, z]).unwrap();
    assert!(approx_eq(&m, &want, 1e-12).is_within());
}

#[test]
fn conjugating_by_x_flips_rz() {
    let a = load("params 1\nx ; rz(t0) ; x").unwrap();
    let b = load("params 1\nrz(0 - t0)").unwrap();
    let v = a.param.check_equiv(&a.mor, &b.mor, &EquivConfig::default()).unwrap();
    assert!(v.is_equivalent());

    let c = load("params 1\nrz(t0)").unwrap();
    let v = a.param.check_equiv(&c.mor, &b.mor, &EquivConfig::default()).unwrap();
    assert_eq!(v.status, EquivStatus::Inequivalent);
}

#[test]
fn swap_conjugation_moves_rotation_to_second_wire() {
    let a = load("params 1\nswap(2,2) ; rz(t0)|id(2) ; swap(2,2)").unwrap();
    let b = load("params 1\nid(2) | rz(t0)").unwrap();
    assert!(a
        .param
        .check_equiv(&a.mor, &b.mor, &EquivConfig::default())
        .unwrap()
        .is_equivalent());
}

#[test]
fn sequencing_reads_left_to_right() {
    // h ; z applies h first: Z·H, not H·Z
    let zh = eval("params 0\nh ; z", &[]);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let want = CMatrix::from_real_rows(&[&[h, h], &[-h, h]]);
    assert!(approx_eq(&zh, &want, 1e-15).is_within());
}

#[test]
fn dimension_mismatch_reports_both_sides() {
    let e = load("params 0\ncnot ;\n  x").unwrap_err();
    assert!(e.is_dimension());
    let CircuitError::Elab(ElabError::Dimension {
        left,
        left_span,
        right,
        right_span,
    }) = e
    else {
        panic!()
    };
    assert_eq!((left, right), (d(4), d(2)));
    assert_eq!((left_span.line, left_span.column, left_span.length), (2, 1, 4));
    assert_eq!((right_span.line, right_span.column, right_span.length), (3, 3, 1));
    assert_eq!(
        e_string("params 0\ncnot ;\n  x"),
        "dimension mismatch at `;`: left side at 2:1 has output dimension 4, right side at 3:3 has input dimension 2"
    );
}

fn e_string(text: &str) -> String {
    load(text).unwrap_err().to_string()
}

#[test]
fn swap_with_unequal_dims_changes_shape() {
    let c = load("params 0\nswap(2,3) ; swap(3,2)").unwrap();
    assert_eq!((c.mor.dom(), c.mor.cod()), (&d(6), &d(6)));
    let m = c.param.eval_at(&c.mor, &ParamPoint::zeros(0)).unwrap();
    assert!(approx_eq(&m, &CMatrix::identity(d(6)), 0.0).is_within());
    // objects are bare dimensions, so 2⊗3 and 3⊗2 are the same object
    assert!(load("params 0\nswap(2,3) ; swap(2,3)").is_ok());
    assert!(load("params 0\nswap(2,3) ; cnot").unwrap_err().is_dimension());
}

#[test]
fn gate_errors() {
    assert_eq!(e_string("params 0\nh ; foo"), "2:5: unknown gate `foo`");
    assert_eq!(e_string("params 1\nrx"), "2:1: `rx`: gate `rx` needs an angle");
    assert_eq!(e_string("params 1\nx(t0)"), "2:1: `x`: gate `x` takes no angle");
    let hand = Program {
        params: 0,
        body: Node::gate("id", None, Some(vec![2, 2])),
    };
    assert!(matches!(elaborate(&hand), Err(ElabError::Arguments { .. })));
    assert!(matches!(
        elaborate(&Program {
            params: 0,
            body: Node::seq(vec![])
        }),
        Err(ElabError::Empty { .. })
    ));
}

#[test]
fn printer_output() {
    let p = parse("params 2\n(h ; (x ; z)) | cnot ; rz(pi - 2*t1) ; swap(2, 4)").unwrap();
    assert_eq!(
        p.to_string(),
        format!("params 2\n(h ; (x ; z)) | cnot ; rz({PI} - 2*t1) ; swap(2, 4)\n")
    );
    let p = parse("params 1\n(h | x) | (z ; y)").unwrap();
    assert_eq!(p.body.to_string(), "(h | x) | (z ; y)");
}

// Independent evaluator over plain nested vectors.
type Dense = Vec<Vec<Complex64>>;

fn d_mul(a: &Dense, b: &Dense) -> Dense {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect())
        .collect()
}

fn d_kron(a: &Dense, b: &Dense) -> Dense {
    let (p, q) = (b.len(), b[0].len());
    (0..a.len() * p)
        .map(|r| (0..a[0].len() * q).map(|c| a[r / p][c / q] * b[r % p][c % q]).collect())
        .collect()
}

fn d_eye(n: usize) -> Dense {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect()
}

fn d_gate(call: &GateCall, theta: &[f64]) -> Dense {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let a = call
        .angle
        .as_ref()
        .map(|e| e.constant_term() + e.terms().iter().map(|&(i, k)| k * theta[i]).sum::<f64>());
    let r = std::f64::consts::FRAC_1_SQRT_2;
    match call.name.as_str() {
        "rx" => {
            let a = a.unwrap();
            vec![
                vec![c(a.cos(), 0.0), c(0.0, a.sin())],
                vec![c(0.0, a.sin()), c(a.cos(), 0.0)],
            ]
        }
        "ry" => {
            let a = a.unwrap();
            vec![
                vec![c(a.cos(), 0.0), c(a.sin(), 0.0)],
                vec![c(-a.sin(), 0.0), c(a.cos(), 0.0)],
            ]
        }
        "rz" => {
            let a = a.unwrap();
            vec![
                vec![c(a.cos(), a.sin()), c(0.0, 0.0)],
                vec![c(0.0, 0.0), c(a.cos(), -a.sin())],
            ]
        }
        "h" => vec![vec![c(r, 0.0), c(r, 0.0)], vec![c(r, 0.0), c(-r, 0.0)]],
        "x" => vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]],
        "y" => vec![vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]],
        "z" => vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]],
        "cnot" => {
            let mut m = d_eye(4);
            m.swap(2, 3);
            m
        }
        "id" => d_eye(call.dims.as_ref().unwrap()[0]),
        "swap" | "swap2" => {
            let (n, k) = match call.dims.as_deref() {
                Some(&[n, k]) => (n, k),
                _ => (2, 2),
            };
            // |i>|j> -> |j>|i>
            let mut m = vec![vec![c(0.0, 0.0); n * k]; n * k];
            for i in 0..n {
                for j in 0..k {
                    m[j * n + i][i * k + j] = c(1.0, 0.0);
                }
            }
            m
        }
        other => panic!("no oracle for {other}"),
    }
}

fn d_eval(node: &Node, theta: &[f64]) -> Dense {
    match &node.kind {
        NodeKind::Gate(g) => d_gate(g, theta),
        NodeKind::Seq(ns) => ns
            .iter()
            .skip(1)
            .fold(d_eval(&ns[0], theta), |acc, n| d_mul(&d_eval(n, theta), &acc)),
        NodeKind::Par(ns) => ns
            .iter()
            .skip(1)
            .fold(d_eval(&ns[0], theta), |acc, n| d_kron(&acc, &d_eval(n, theta))),
    }
}

fn d_distance(a: &Dense, b: &CMatrix) -> f64 {
    assert_eq!((a.len(), a[0].len()), (b.rows(), b.cols()));
    let mut worst: f64 = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            worst = worst.max((v - b.get(i, j)).norm());
        }
    }
    worst
}

fn random_angle(rng: &mut ChaCha8Rng, params: usize) -> AffineExpr {
    let constant = if rng.gen_bool(0.5) {
        0.0
    } else {
        rng.gen_range(-4.0..4.0)
    };
    let terms: Vec<(usize, f64)> = (0..rng.gen_range(0..=params))
        .map(|_| {
            let coeff = [1.0, -1.0, 2.0, 0.5, rng.gen_range(-3.0..3.0)][rng.gen_range(0..5)];
            (rng.gen_range(0..params), coeff)
        })
        .collect();
    AffineExpr::new(constant, terms).unwrap()
}

/// A random well-typed circuit on dimension 2 or 4.
fn random_node(rng: &mut ChaCha8Rng, dim: usize, depth: usize, params: usize) -> Node {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return if dim == 2 {
            match rng.gen_range(0..8) {
                0 => Node::gate("rx", Some(random_angle(rng, params)), None),
                1 => Node::gate("ry", Some(random_angle(rng, params)), None),
                2 => Node::gate("rz", Some(random_angle(rng, params)), None),
                3 => Node::gate("h", None, None),
                4 => Node::gate("x", None, None),
                5 => Node::gate("y", None, None),
                6 => Node::gate("z", None, None),
                _ => Node::gate("id", None, Some(vec![2])),
            }
        } else {
            match rng.gen_range(0..4) {
                0 => Node::gate("cnot", None, None),
                1 => Node::gate("swap2", None, None),
                2 => Node::gate("swap", None, Some(vec![2, 2])),
                _ => Node::gate("id", None, Some(vec![4])),
            }
        };
    }
    if dim == 4 && rng.gen_bool(0.5) {
        return Node::par(vec![
            random_node(rng, 2, depth - 1, params),
            random_node(rng, 2, depth - 1, params),
        ]);
    }
    let n = rng.gen_range(2..=3);
    Node::seq((0..n).map(|_| random_node(rng, dim, depth - 1, params)).collect())
}

proptest! {
    #[test]
    fn printing_then_parsing_is_identity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = rng.gen_range(1..4);
        let dim = if rng.gen_bool(0.5) { 2 } else { 4 };
        let program = Program { params, body: random_node(&mut rng, dim, 4, params) };
        let text = program.to_string();
        let back = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert!(back.same_structure(&program), "{}", text);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn elaboration_matches_direct_evaluation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = 3;
        let dim = if rng.gen_bool(0.5) { 2 } else { 4 };
        let program = Program { params, body: random_node(&mut rng, dim, 3, params) };
        let circuit = elaborate(&program).unwrap();
        for _ in 0..5 {
            let theta: Vec<f64> = (0..params).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
            let got = circuit.param.eval_at(&circuit.mor, &point(&theta)).unwrap();
            prop_assert!(d_distance(&d_eval(&program.body, &theta), &got) < 1e-12);
        }
    }

    #[test]
    fn interchange_of_sequencing_and_parallel(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = 2;
        let dim_ab = if rng.gen_bool(0.5) { 2 } else { 4 };
        let dim_cd = if rng.gen_bool(0.5) { 2 } else { 4 };
        let a = random_node(&mut rng, dim_ab, 2, params);
        let b = random_node(&mut rng, dim_ab, 2, params);
        let c = random_node(&mut rng, dim_cd, 2, params);
        let d = random_node(&mut rng, dim_cd, 2, params);
        let text_l = format!("params 2\n(({a}) ; ({b})) | (({c}) ; ({d}))");
        let text_r = format!("params 2\n(({a}) | ({c})) ; (({b}) | ({d}))");
        let l = load(&text_l).unwrap();
        let r = load(&text_r).unwrap();
        let verdict = l.param.check_equiv(&l.mor, &r.mor, &EquivConfig { samples: 20, seed, tol: 1e-10 }).unwrap();
        prop_assert!(verdict.is_equivalent(), "{} vs {}", text_l, text_r);
    }
}

fn d(n: usize) -> Dim {
    Dim::new(n).unwrap()
}
