use std::collections::{BTreeSet, HashSet};

use super::*;
use crate::ball::bits_for_digits;
use crate::series::{TailKind, TermStream};

/// Number of node replacements turning `a` into `b`.
fn node_changes(a: &ClosedForm, b: &ClosedForm) -> usize {
    use ClosedForm as C;
    if a == b {
        return 0;
    }
    let kids = |e: &ClosedForm| -> Vec<ClosedForm> {
        match e {
            C::Add(x, y) | C::Sub(x, y) | C::Mul(x, y) | C::Div(x, y) => vec![(**x).clone(), (**y).clone()],
            C::Neg(x) | C::Sqrt(x) | C::Ln(x) | C::Asin(x) | C::PowInt(x, _) => vec![(**x).clone()],
            _ => Vec::new(),
        }
    };
    let (ka, kb) = (kids(a), kids(b));
    if ka.is_empty() || ka.len() != kb.len() {
        return 1;
    }
    let same_kind = std::mem::discriminant(a) == std::mem::discriminant(b);
    let below: usize = ka.iter().zip(&kb).map(|(x, y)| node_changes(x, y)).sum();
    below + usize::from(!same_kind)
}

#[test]
fn ids_are_unique_and_ordered() {
    let entries = registry().entries();
    let ids: HashSet<_> = entries.iter().map(|e| e.id.to_ascii_uppercase()).collect();
    assert_eq!(ids.len(), entries.len());
    assert!(entries
        .windows(2)
        .all(|w| w[0].paper_eq.order() <= w[1].paper_eq.order()));
    assert!(entries.len() >= 44);
}

#[test]
fn catalog_covers_every_equation_and_theorem() {
    let covered: BTreeSet<String> = registry().entries().iter().map(|e| e.paper_eq.to_string()).collect();
    let expected: BTreeSet<String> = PaperEq::all().iter().map(|p| p.to_string()).collect();
    assert_eq!(covered, expected);
}

#[test]
fn discrepant_entries_are_paired() {
    let bad = list_identities(&Filter {
        status: Some(Status::AsPrintedDiscrepant),
        ..Filter::default()
    });
    let ids: Vec<&str> = bad.iter().map(|e| e.id.as_str()).collect();
    assert_eq!(ids, ["EQ17_AS_PRINTED", "EQ37_AS_PRINTED", "EQ38_AS_PRINTED"]);
    let expected_changes = [1, 1, 2];
    for (e, changes) in bad.iter().zip(expected_changes) {
        let partner = registry().get(e.pair.as_deref().unwrap()).unwrap();
        assert_eq!(partner.status, Status::Corrected);
        assert_eq!(partner.pair.as_deref(), Some(e.id.as_str()));
        assert_eq!(node_changes(&partner.rhs, &e.rhs), changes, "{}", e.id);
    }
}

#[test]
fn family_filter_lists_the_worked_examples() {
    let fib = list_identities(&Filter {
        family: Some(Family::Fib),
        ..Filter::default()
    });
    let got: Vec<(&str, i64)> = fib.iter().map(|e| (e.id.as_str(), e.family.unwrap().r)).collect();
    assert_eq!(got, [("EQ6", 1), ("EQ7", 2), ("EQ8", 3)]);
    assert_eq!(list_identities(&Filter::default()).len(), registry().entries().len());
}

#[test]
fn families_reproduce_the_displayed_examples() {
    let prec = bits_for_digits(50, 64);
    for eq in (6..=8).chain(11..=13).chain(18..=23) {
        let (family, r) = family::transcribed_member(eq).unwrap();
        let generic = instantiate_family(family, r).unwrap().rhs.eval(prec).unwrap();
        let shown = hand_transcribed(eq).unwrap().eval(prec).unwrap();
        assert!(generic.overlaps(&shown), "({eq})");
        assert!(generic.agreed_digits(&shown) >= 50, "({eq})");
    }
    assert!(matches!(instantiate_family(Family::Lucas, 0), Err(Error::Usage(_))));
    assert!(family_alias(Family::HdFib, 1).is_err());
}

#[test]
fn family_displays_mention_the_substituted_quantities() {
    let e12 = hand_transcribed(12).unwrap().to_string();
    assert!(e12.contains("α·√(3)") && e12.contains("√(3·α^2 − 1)"), "{e12}");
    let e22 = hand_transcribed(22).unwrap().to_string();
    assert!(e22.contains("α·√(√5)") && e22.contains("√(α^2·√5 − 1)"), "{e22}");
}

#[test]
fn even_parameter_aliases_match_the_family() {
    for (family, eq) in [(Family::Fib, "EQ9"), (Family::Lucas, "EQ14")] {
        let alias = registry().get(eq).unwrap();
        let direct = instantiate_family(family, 4).unwrap();
        let mut a = TermStream::with_exact(&alias.lhs, 64).unwrap();
        let mut d = TermStream::with_exact(&direct.lhs, 64).unwrap();
        for _ in 0..20 {
            assert_eq!(a.next_term().unwrap().exact, d.next_term().unwrap().exact);
        }
        let prec = bits_for_digits(40, 64);
        assert!(alias.rhs.eval(prec).unwrap().overlaps(&direct.rhs.eval(prec).unwrap()));
    }
}

#[test]
fn r0_member_equals_corrected_eq37() {
    let r0 = registry().get("EQ15_R0").unwrap();
    let e37 = registry().get("EQ37").unwrap();
    let prec = 200;
    assert!(r0.rhs.eval(prec).unwrap().overlaps(&e37.rhs.eval(prec).unwrap()));
    assert!(r0.rhs.eval(prec).unwrap().agreed_digits(&e37.rhs.eval(prec).unwrap()) >= 40);
}

#[test]
fn closed_form_reference_values() {
    let near = |p: i64, q: i64, bits: i64| Ball::from_ratio(p, q, 128).add_error(crate::ball::Mag::pow2(-bits));
    let psi = closed_form_eval(&ClosedForm::Psi, 64).unwrap();
    assert!(psi.overlaps(&near(10279057108, 100_000_000_000, 36)));
    let e36 = closed_form_eval(&registry().get("EQ36").unwrap().rhs, 128).unwrap();
    assert!(e36.overlaps(&near(2945243112740431, 10_000_000_000_000_000, 50)));
}

#[test]
fn tail_kinds_follow_the_convergence_class() {
    let kind = |id: &str| registry().get(id).unwrap().tail_kind();
    assert_eq!(kind("EQ11"), TailKind::GeometricRatio);
    assert_eq!(kind("EQ33"), TailKind::GeometricRatio);
    assert_eq!(kind("EQ36"), TailKind::Telescoped);
    assert_eq!(kind("THM26"), TailKind::PSeries);
    assert_eq!(kind("THM27"), TailKind::PSeries);
}

#[test]
fn catalog_json_is_stable() {
    let records: Vec<CatalogRecord> = registry().entries().iter().map(IdentityEntry::catalog_record).collect();
    let a = serde_json::to_string(&records).unwrap();
    let b = serde_json::to_string(&records).unwrap();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let first = &v[0];
    assert_eq!(first["id"], "EQ1");
    assert_eq!(first["paper_eq"], "(1)");
    assert_eq!(first["status"], "PRIOR_WORK");
    assert_eq!(first["tail_kind"], "Telescoped");
    let fam = v.as_array().unwrap().iter().find(|r| r["id"] == "EQ19").unwrap();
    assert_eq!(fam["family"]["family"], "HD_LUCAS");
    assert_eq!(fam["family"]["r"], 2);
}

#[test]
fn unknown_ids_are_reported() {
    assert!(matches!(registry().get("EQ99"), Err(Error::UnknownIdentity(_))));
    assert_eq!(registry().get("eq36").unwrap().id, "EQ36");
}
