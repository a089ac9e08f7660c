use kk_core::algebra::truncated_poly;
use kk_core::corpus;
use kk_core::exact::{Field, Mat};
use kk_core::signature::{
    compare, compute, gram_fingerprint, Dim, InvariantSignature, SignatureConfig, Verdict,
};
use kk_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sig(name: &str) -> InvariantSignature {
    let a = corpus::by_name(name).unwrap().unwrap();
    compute(&a, &SignatureConfig::default_for(a.field().p())).unwrap()
}

fn value(s: &InvariantSignature, key: &str) -> Option<Dim> {
    s.entries().into_iter().find(|e| e.key == key).map(|e| e.value)
}

#[test]
fn field_signature_is_trivial() {
    let s = sig("gf2/k");
    assert_eq!((s.dim_a, s.dim_center, s.dim_a_mod_ka), (1, 1, 1));
    assert_eq!(s.stabilization_index, 1);
    for l in &s.kulshammer {
        assert_eq!((l.dim_t, l.dim_t_perp, l.dim_p), (0, 1, 1));
    }
    for h in &s.hochschild {
        let expect = Dim::Value((h.m == 0) as usize);
        assert_eq!((h.dim_homology, h.dim_cohomology), (expect, expect), "m={}", h.m);
    }
    assert_eq!(s.gerstenhaber.bracket_sign, -1);
    assert_eq!(s.gerstenhaber.derived_dim, Dim::Value(0));
}

#[test]
fn cyclic_and_klein_groups_are_distinguished() {
    let c4 = sig("gf2/C4");
    let v4 = sig("gf2/C2xC2");
    let perps = |s: &InvariantSignature| s.kulshammer.iter().map(|l| l.dim_t_perp).collect::<Vec<_>>();
    assert_eq!(perps(&c4), vec![2, 1, 1]);
    assert_eq!(perps(&v4), vec![1, 1, 1]);
    assert_eq!(value(&c4, "stabilization_index"), Some(Dim::Value(2)));
    let cmp = compare(&c4, &v4).unwrap();
    assert_eq!(cmp.verdict, Verdict::Distinguished);
    let d = cmp.differences.iter().find(|d| d.key == "kulshammer[1].dim_t_perp").unwrap();
    assert_eq!((d.a, d.b), (2, 1));
}

#[test]
fn self_comparison_and_symmetry() {
    let names = ["gf2/C4", "gf2/C2xC2", "gf2/k[y]/y^4", "gf2/S3", "gf2/T(k[x]/x^2)"];
    let sigs: Vec<_> = names.iter().map(|n| sig(n)).collect();
    for (i, a) in sigs.iter().enumerate() {
        let same = compare(a, a).unwrap();
        assert_eq!(same.verdict, Verdict::Inconclusive, "{}", names[i]);
        assert!(same.differences.is_empty());
        assert!(same.not_compared.is_empty());
        for b in &sigs {
            let ab = compare(a, b).unwrap();
            let ba = compare(b, a).unwrap();
            assert_eq!(ab.verdict, ba.verdict);
            let flipped: Vec<_> = ba.differences.iter().map(|d| (d.key.clone(), d.b, d.a)).collect();
            let direct: Vec<_> = ab.differences.iter().map(|d| (d.key.clone(), d.a, d.b)).collect();
            assert_eq!(direct, flipped);
        }
    }
}

#[test]
fn different_fields_are_incomparable() {
    assert!(matches!(compare(&sig("gf2/C2"), &sig("gf4/C2")), Err(Error::Incomparable(_))));
    assert!(matches!(compare(&sig("gf3/C3"), &sig("gf2/C4")), Err(Error::Incomparable(_))));
}

#[test]
fn json_round_trip_and_strict_parsing() {
    let s = sig("gf2/C4");
    let text = s.to_json();
    assert_eq!(InvariantSignature::from_json(&text).unwrap(), s);
    assert_eq!(InvariantSignature::from_json(&text).unwrap().to_json(), text);
    let extra = text.replacen('{', "{\"bonus\": 3,", 1);
    assert!(matches!(InvariantSignature::from_json(&extra), Err(Error::MalformedDocument(_))));
    let bumped = text.replacen("\"schema_version\": 1", "\"schema_version\": 2", 1);
    assert_eq!(
        InvariantSignature::from_json(&bumped).unwrap_err(),
        Error::SchemaVersionMismatch { found: 2, expected: 1 }
    );
    let text_form = s.to_text();
    assert!(text_form.contains("kulshammer[1].dim_t_perp: 2\n"));
    assert!(text_form.contains("gerstenhaber.derived_dim: "));
}

#[test]
fn capped_entries_are_skipped_and_not_compared() {
    let a = corpus::by_name("gf2/C4").unwrap().unwrap();
    let mut config = SignatureConfig::default_for(2);
    config.cap = 2000;
    let capped = compute(&a, &config).unwrap();
    assert_eq!(capped.hochschild[3].dim_cohomology, Dim::Skipped(kk_core::signature::Skip::Cap));
    assert_eq!(capped.hochschild[0].dim_cohomology, Dim::Value(4));
    let text = capped.to_json();
    assert!(text.contains("\"skipped: cap\""));
    assert_eq!(InvariantSignature::from_json(&text).unwrap(), capped);
    let full = sig("gf2/C4");
    let cmp = compare(&capped, &full).unwrap();
    assert_eq!(cmp.verdict, Verdict::Inconclusive);
    assert!(cmp.not_compared.contains(&"hochschild[3].dim_cohomology".to_string()));
}

#[test]
fn basis_changes_move_the_fingerprint_but_not_the_verdict() {
    let a = corpus::by_name("gf2/k[y]/y^4").unwrap().unwrap();
    let config = SignatureConfig::default_for(2);
    let s = compute(&a, &config).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut moved_fingerprint = false;
    for _ in 0..5 {
        let g = loop {
            let f = a.field();
            let m = Mat::from_data(f, 4, 4, (0..16).map(|_| f.random(&mut rng)).collect());
            if m.is_invertible() {
                break m;
            }
        };
        let b = a.change_basis(&g).unwrap();
        let t = compute(&b, &config).unwrap();
        moved_fingerprint |= t.gram_fingerprint != s.gram_fingerprint;
        let cmp = compare(&s, &t).unwrap();
        assert_eq!(cmp.verdict, Verdict::Inconclusive);
        assert!(cmp.differences.is_empty());
    }
    assert!(moved_fingerprint);
    assert_eq!(gram_fingerprint(&a).unwrap(), s.gram_fingerprint);
    assert_eq!(s.gram_fingerprint.len(), 64);
}

#[test]
fn non_invariant_entries_are_excluded() {
    let s = sig("gf2/C4");
    let entries = s.entries();
    let find = |k: &str| entries.iter().find(|e| e.key == k).unwrap();
    assert!(!find("dim_a").invariant);
    assert!(!find("kulshammer[1].dim_t").invariant);
    assert!(find("kulshammer[1].dim_t_perp").invariant);
    assert!(find("gerstenhaber.derived_dim").invariant);
    let f = Field::new(2, 1).unwrap();
    let plain = truncated_poly(&f, 2).unwrap().without_form();
    assert_eq!(compute(&plain, &SignatureConfig::default_for(2)).unwrap_err(), Error::FormRequired);
}
