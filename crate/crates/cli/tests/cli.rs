use std::fs;

use proptest::prelude::*;
use qweb::combinat::{enumerate_compositions, Composition, CompositionMode};
use qweb::psi::{eval_combination, eval_expr};
use qweb::web::{Layer, WebExpr};
use qweb_cli::json::{BasisJson, MatrixJson};
use qweb_cli::script::combination_script;
use qweb_cli::{parse_webscript, run};

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["qweb"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("qweb-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

#[test]
fn dim_with_oracle() {
    let (code, out, _) = cli(&["dim", "--lambda", "1,1", "--mu", "1,1", "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(out, "8\nbasis 8, oracle (4,4)\n");
}

#[test]
fn dim_with_rank() {
    let (code, out, _) = cli(&["dim", "--lambda", "2,1", "--mu", "1,2", "--rank"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[1], format!("rank {}", lines[0]));
}

#[test]
fn sergeev_product() {
    let (code, out, _) = cli(&["sergeev-mul", "s1", "c1"]);
    assert_eq!((code, out.as_str()), (0, "+ c2 s1\n"));
    let (code, out, _) = cli(&["sergeev-mul", "c1", "c1"]);
    assert_eq!((code, out.as_str()), (0, "+ 1\n"));
    let (code, _, _) = cli(&["sergeev-mul", "s3", "c1", "--r", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["frobnicate"]).0, 2);
    assert_eq!(cli(&["dim", "--lambda", "2,x", "--mu", "2"]).0, 2);
    assert_eq!(cli(&["dim", "--lambda", "2", "--mu", "3"]).0, 2);
    assert_eq!(cli(&["eval", "/nonexistent/web.txt"]).0, 2);
    let bad = temp("bad.web", "object 2\nsplit@1(1,1)\nmerge@3\n");
    let (code, _, err) = cli(&["render", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains(":3:") || err.contains("3: `merge@3`"), "{err}");
    assert_eq!(cli(&["verify-webs", "--r", "2", "--template", "nope"]).0, 2);
    assert_eq!(cli(&["verify-webs", "--r", "3"]).0, 0);
    assert_eq!(cli(&["verify-schur", "--n", "2", "--r", "2"]).0, 0);
    assert_eq!(cli(&["--help"]).0, 0);
}

#[test]
fn eval_digon_is_twice_identity() {
    let f = temp("digon.web", "object 2\nsplit@1(1,1)\nmerge@1\n");
    let j = f.with_extension("json");
    let (code, _, err) = cli(&["eval", f.to_str().unwrap(), "--json", j.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let doc: MatrixJson = serde_json::from_str(&fs::read_to_string(&j).unwrap()).unwrap();
    assert_eq!(doc.domain_basis.len(), 4);
    let expected: Vec<_> = (0..4).map(|k| (k, k, "2".to_string())).collect();
    assert_eq!(doc.entries, expected);
    assert_eq!(doc.parity.as_deref(), Some("even"));
}

#[test]
fn basis_json_round_trip() {
    let j = temp("basis.json", "");
    let (code, _, err) = cli(&["basis", "--lambda", "2,1", "--mu", "1,2", "--json", j.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let doc: BasisJson = serde_json::from_str(&fs::read_to_string(&j).unwrap()).unwrap();
    let basis = qweb::homspace::hom_basis(&Composition::new(vec![2, 1]), &Composition::new(vec![1, 2])).unwrap();
    assert_eq!(doc.size, basis.len());
    for (item, it) in doc.items.iter().zip(&basis.items) {
        assert_eq!(item.matrix.to_matrix().unwrap(), it.matrix);
        // the emitted script evaluates to the same map
        let s = parse_webscript(&item.script).unwrap();
        assert_eq!(eval_combination(&s.combination()).unwrap(), it.matrix, "{}", item.script);
        assert_eq!(item.tabloid, it.tabloid.signed_rows());
    }
}

#[test]
fn render_is_deterministic() {
    let f = temp("mixed.web", "object 1,1,2\ncross@1\nmerge@2\ndot@1\n");
    let (code, a, _) = cli(&["render", f.to_str().unwrap()]);
    let (_, b, _) = cli(&["render", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    assert!(a.contains("cross@1") && a.contains("(1,1,2) -> (1,1,2)") && a.contains("(1,1,2) -> (1,3)"), "{a}");
}

fn layers_on(start: Composition, choices: Vec<(u8, u8, u8)>) -> WebExpr {
    let mut w = WebExpr::identity(start).unwrap();
    for (kind, pos, size) in choices {
        let level = w.codomain().clone();
        let n = level.len();
        let p = pos as usize % n + 1;
        let layer = match kind % 3 {
            0 if n > 1 => Layer::Merge(p.min(n - 1)),
            1 if level.parts[p - 1] > 1 => {
                let a = level.parts[p - 1];
                let k = size as usize % (a - 1) + 1;
                Layer::Split(p, k, a - k)
            }
            2 => Layer::Dot(p),
            _ => continue,
        };
        w.push(layer).unwrap();
    }
    w
}

fn random_web() -> impl Strategy<Value = WebExpr> {
    let starts: Vec<Composition> =
        (1..=4).flat_map(|r| enumerate_compositions(0, r, CompositionMode::Strict)).collect();
    (proptest::sample::select(starts), proptest::collection::vec((0u8..3, 0u8..8, 0u8..8), 0..8))
        .prop_map(|(s, c)| layers_on(s, c))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn parse_inverts_script(w in random_web()) {
        let s = parse_webscript(&w.to_script()).unwrap();
        let c = s.combination();
        prop_assert_eq!(c.terms().len(), 1);
        prop_assert_eq!(&c.terms()[0].1, &w);
        prop_assert!(c.terms()[0].0.is_one());
    }

    #[test]
    fn matrix_json_round_trip(w in random_web()) {
        let m = eval_expr(&w).unwrap();
        let doc = MatrixJson::from_matrix(&m);
        let text = serde_json::to_string(&doc).unwrap();
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_matrix().unwrap(), m);
    }

    #[test]
    fn combination_script_round_trip(a in random_web(), k in -3i64..4) {
        let mut c = qweb::web::WebCombination::from_expr(a.clone());
        let id = WebExpr::identity(a.domain().clone()).unwrap();
        if a.codomain() == a.domain() && k != 0 {
            c.push(qweb::GaussianRational::from_int(k), id).unwrap();
        }
        let s = parse_webscript(&combination_script(&c)).unwrap();
        prop_assert_eq!(s.combination(), c);
    }
}
