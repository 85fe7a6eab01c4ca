use qweb::relcheck::verify_all;

#[test]
fn all_relations_hold_at_thickness_four() {
    let rep = verify_all(4).unwrap();
    let bad: Vec<_> = rep.failures().take(10).collect();
    assert!(bad.is_empty(), "{bad:?}");
    for t in &rep.results {
        assert!(t.instances > 0, "{} has no instances", t.template);
    }
}
