use proptest::prelude::*;
use qweb::combinat::{all_permutations, enumerate_compositions, multinomial, Composition, CompositionMode};
use qweb::psi::{check_equivariance, eval_expr};
use qweb::sergeev::{clifford_normalize, standard_basis, SergeevBasisWord, SergeevElement};
use qweb::tabloid::omega_basis;
use qweb::web::{Layer, WebExpr};
use qweb::{GaussianRational, Parity};

fn scalar() -> impl Strategy<Value = GaussianRational> {
    (-20i64..20, 1i64..9, -20i64..20, 1i64..9).prop_map(|(a, b, c, d)| {
        GaussianRational::new(GaussianRational::ratio(a, b).re, GaussianRational::ratio(c, d).re)
    })
}

fn basis_word(r: usize) -> impl Strategy<Value = SergeevBasisWord> {
    let perms = all_permutations(r);
    let n = perms.len();
    (0u32..(1 << r), 0..n).prop_map(move |(m, p)| SergeevBasisWord::new(m, perms[p].clone()))
}

fn web_on(start: Composition, choices: &[(u8, u8, u8)]) -> WebExpr {
    let mut w = WebExpr::identity(start).unwrap();
    for &(kind, pos, size) in choices {
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
    let starts: Vec<Composition> = (1..=4).flat_map(|r| enumerate_compositions(0, r, CompositionMode::Strict)).collect();
    (proptest::sample::select(starts), proptest::collection::vec((0u8..3, 0u8..8, 0u8..8), 0..8))
        .prop_map(|(s, c)| web_on(s, &c))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(a.to_string().parse::<GaussianRational>().unwrap(), a);
    }

    #[test]
    fn clifford_normal_form(word in proptest::collection::vec(1usize..6, 0..10)) {
        let (sign, mask) = clifford_normalize(&word);
        let xor = word.iter().fold(0u32, |m, &j| m ^ (1 << (j - 1)));
        prop_assert_eq!(mask, xor);
        prop_assert!(sign == 1 || sign == -1);
        // appending the reverse cancels everything; squares of c_j are 1
        let mut w = word.clone();
        w.extend(word.iter().rev());
        prop_assert_eq!(clifford_normalize(&w), (1, 0));
    }

    #[test]
    fn basis_products_are_signed_words(x in basis_word(4), y in basis_word(4), z in basis_word(4)) {
        let (s1, xy) = x.multiply(&y).unwrap();
        prop_assert!(s1 == 1 || s1 == -1);
        prop_assert_eq!(xy.parity(), x.parity() + y.parity());
        let (s2, left) = xy.multiply(&z).unwrap();
        let (s3, yz) = y.multiply(&z).unwrap();
        let (s4, right) = x.multiply(&yz).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(s1 * s2, s3 * s4);
    }

    #[test]
    fn embedding_is_multiplicative(x in basis_word(3), y in basis_word(3)) {
        let (s, xy) = x.multiply(&y).unwrap();
        let (t, exy) = x.embed(5).multiply(&y.embed(5)).unwrap();
        prop_assert_eq!(s, t);
        prop_assert_eq!(xy.embed(5), exy);
    }

    #[test]
    fn web_maps_are_homogeneous_and_equivariant(w in random_web()) {
        let m = eval_expr(&w).unwrap();
        if !m.is_zero() {
            prop_assert_eq!(m.parity(), Some(w.parity()));
        }
        prop_assert!(check_equivariance(&m).is_ok(), "{}", w);
        prop_assert!(m.is_integral());
    }

    #[test]
    fn mirror_preserves_vanishing(w in random_web()) {
        let a = eval_expr(&w).unwrap();
        prop_assert_eq!(&w.mirror().mirror(), &w);
        let b = eval_expr(&w.mirror()).unwrap();
        prop_assert_eq!(a.nnz() == 0, b.nnz() == 0);
    }
}

#[test]
fn sergeev_dimension_and_identity() {
    for r in 1..=4 {
        let basis = standard_basis(r);
        assert_eq!(basis.len(), (1 << r) * (1..=r).product::<usize>());
        let one = SergeevElement::identity(r);
        for w in basis.iter().step_by(7) {
            let x = SergeevElement::from_word(w.clone());
            assert_eq!(one.multiply(&x).unwrap(), x);
            assert_eq!(x.multiply(&one).unwrap(), x);
        }
    }
}

#[test]
fn omega_basis_sizes() {
    for r in 1..=4 {
        for l in enumerate_compositions(0, r, CompositionMode::Strict) {
            let n = omega_basis(&l).unwrap().len() as u64;
            assert_eq!(n, multinomial(&l.parts) << r, "{l:?}");
        }
    }
}

#[test]
fn two_dots_anticommute_across_strands() {
    let obj = Composition::new(vec![1, 2]);
    let a = eval_expr(&WebExpr::new(obj.clone(), vec![Layer::Dot(1), Layer::Dot(2)]).unwrap()).unwrap();
    let b = eval_expr(&WebExpr::new(obj, vec![Layer::Dot(2), Layer::Dot(1)]).unwrap()).unwrap();
    assert!(!a.is_zero());
    assert_eq!(a, b.scale(&GaussianRational::from_int(-1)));
    assert_eq!(a.parity(), Some(Parity::Even));
}

#[test]
fn factored_evaluation_matches_expansion() {
    use qweb::psi::{eval_combination, eval_stack};
    use qweb::web::{build_theta_t, crossing_stack};
    for (t, mu) in [("[2,3'],[1']", vec![1, 1, 1]), ("[1,2],[2']", vec![1, 2]), ("[2'],[1,1]", vec![2, 1])] {
        let t: qweb::Supertabloid = t.parse().unwrap();
        let th = build_theta_t(&t, &Composition::new(mu)).unwrap();
        assert_eq!(eval_stack(&th.web).unwrap(), eval_combination(&th.web.expand()).unwrap(), "{t}");
    }
    let x = crossing_stack(&Composition::new(vec![2, 1]), 1).unwrap();
    assert_eq!(eval_stack(&x).unwrap(), eval_combination(&x.expand()).unwrap());
}
