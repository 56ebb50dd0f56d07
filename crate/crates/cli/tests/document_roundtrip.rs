use fusionlab_cli::document::{CyclotomicRecord, Kind, ModularDataDocument};
use fusionlab_core::{affine_category, sin_pi, Cyclotomic, MinimalModel};

fn roundtrip(doc: &ModularDataDocument) {
    let text = doc.to_json().unwrap();
    let back = ModularDataDocument::from_json(&text).unwrap();
    assert_eq!(&back, doc);
    assert_eq!(back.to_json().unwrap(), text);
}

#[test]
fn documents_roundtrip_losslessly() {
    for (a, b) in [(3, 4), (2, 5), (5, 7), (4, 9)] {
        let m = MinimalModel::new(a, b).unwrap();
        let full = m.modular_datum().unwrap();
        let doc = ModularDataDocument::from_datum(Kind::Virasoro, a, b, &full);
        roundtrip(&doc);
        assert_eq!(doc.sratio_matrix().unwrap(), full.sratio());
        assert_eq!(doc.qdim_values().unwrap(), full.qdim());
        assert_eq!(doc.twist_exponent_values().unwrap(), full.twist_exponents());
        assert_eq!(doc.n, full.ring().to_nested());

        let ca = m.subcategory_ca().unwrap();
        roundtrip(&ModularDataDocument::from_datum(Kind::Ca, a, b, &ca));
    }
    let aff = affine_category(5, 3).unwrap();
    let doc = ModularDataDocument::from_datum(Kind::Affine, 5, 3, &aff);
    roundtrip(&doc);
    assert!(doc.to_json().unwrap().contains("\"kind\": \"affine\""));
}

#[test]
fn cyclotomic_records_are_exact() {
    let x = &sin_pi(1, 7).unwrap() * &sin_pi(2, 9).unwrap().inverse().unwrap();
    let rec = CyclotomicRecord::new(&x);
    assert_eq!(rec.to_cyclotomic().unwrap(), x);
    assert!(rec.coeffs.values().all(|c| c.contains('/')));
    assert_eq!(
        CyclotomicRecord::new(&Cyclotomic::one())
            .coeffs
            .get(&0)
            .map(String::as_str),
        Some("1/1")
    );
}

#[test]
fn malformed_rationals_are_rejected() {
    let m = MinimalModel::new(3, 4).unwrap().modular_datum().unwrap();
    let mut doc = ModularDataDocument::from_datum(Kind::Virasoro, 3, 4, &m);
    doc.h[1] = "0.0625".into();
    assert!(doc.weights().is_err());
    let text = doc.to_json().unwrap().replace("\"virasoro\"", "\"e8\"");
    assert!(ModularDataDocument::from_json(&text).is_err());
}
