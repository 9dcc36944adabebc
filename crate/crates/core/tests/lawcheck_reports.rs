use qkbonacci::lawcheck::{self, Grid, LawId, LawReport, Verdict};

#[test]
fn reports_roundtrip_through_json() {
    let grid = Grid::new(vec![3, 4], 2..=4, 20);
    let reports = lawcheck::check_all(&grid, 128).unwrap();
    assert_eq!(reports.len(), 11);
    let json = serde_json::to_string(&reports).unwrap();
    let back: Vec<LawReport> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, reports);
    assert!(reports.iter().all(LawReport::passed));
}

#[test]
fn reports_are_deterministic() {
    let grid = Grid::new(vec![5, 3], 2..=6, 80);
    let a = lawcheck::check_term_bounds(&grid, 96).unwrap();
    let b = lawcheck::check_term_bounds(&grid, 96).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn witnesses_are_sorted() {
    let grid = Grid::new(vec![4, 3], 5..=8, 0);
    let r = lawcheck::check_error_decay(&grid, 128, Default::default()).unwrap();
    assert_eq!(r.law_id, LawId::ErrorDecay);
    assert_eq!(r.verdict, Verdict::Fail);
    let keys: Vec<_> = r.witnesses.iter().map(|w| (w.q, w.k, w.n)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn inconclusive_at_tiny_cap() {
    let grid = Grid::new(vec![5], 8..=8, 300).with_n_min(300);
    let reports = lawcheck::check_term_bounds(&grid, 4).unwrap();
    let r = &reports[0];
    assert_eq!(r.law_id, LawId::ErrorBound);
    assert_eq!(r.verdict, Verdict::Inconclusive);
    assert_eq!(r.bits_used.keys().copied().collect::<Vec<_>>(), [64]);
}
