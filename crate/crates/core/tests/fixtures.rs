//! Invariants over every built-in fixture.

use syzal::equivariant::{self, Fixture};
use syzal::homalg;
use syzal::{Execution, ModulePresentation, RingSpec};

fn all() -> Vec<Fixture> {
    equivariant::fixtures().unwrap()
}

#[test]
fn ext_is_shift_compatible() {
    let cases: Vec<(Fixture, i64)> = all().into_iter().flat_map(|f| [(f.clone(), 7), (f, 2)]).collect();
    let failures: Vec<String> = Execution::Parallel
        .map(cases, |(f, n)| {
            let plain = homalg::ext_all(&f.ht).unwrap();
            let shifted = homalg::ext_all(&f.ht.shift(-n)).unwrap();
            plain
                .iter()
                .zip(&shifted)
                .enumerate()
                .filter(|(_, (e, s))| homalg::fingerprint(s).unwrap() != homalg::fingerprint(e).unwrap().shift(n))
                .map(|(j, _)| format!("{} Ext^{j} shift {n}", f.name))
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect();
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn torsion_free_iff_first_syzygy() {
    for f in all() {
        let b = homalg::biduality(&f.ht).unwrap();
        let order = homalg::syzygy_order(&f.ht).unwrap();
        assert_eq!(b.is_injective, order >= 1, "{}", f.name);
        // the order is capped at r, so for r = 1 torsion-free already means free
        let reflexive = order >= 2 || order == f.ht.ring().r();
        assert_eq!(b.is_isomorphism, reflexive, "{}", f.name);
        assert_eq!(homalg::is_zero_module(&homalg::torsion(&f.ht).unwrap()).unwrap(), order >= 1, "{}", f.name);
    }
}

#[test]
fn free_fixtures_are_exact() {
    for f in all().into_iter().filter(|f| f.free) {
        let rep = equivariant::ab_report(&f.hht, Some(&f.ht)).unwrap();
        let r = rep.r as i64;
        assert_eq!(rep.exact_through(), Some(r), "{}", f.name);
        assert_eq!(rep.nonzero_positions(), Some(vec![]), "{}", f.name);
    }
}

#[test]
fn point_is_exact() {
    let ring = RingSpec::equivariant(2);
    let r = ModulePresentation::free(&ring, vec![0]);
    let rep = equivariant::ab_report(&r, Some(&r)).unwrap();
    assert_eq!(rep.positions[0], homalg::fingerprint(&r).unwrap());
    assert!(rep.positions[1..].iter().all(|p| p.is_zero()));
    assert!(rep.coherence_failures().is_empty());
}

#[test]
fn report_without_ht_has_no_augmented_positions() {
    let rep = equivariant::ab_report(&equivariant::mutant_hht(), None).unwrap();
    assert!(rep.augmented.is_none());
    assert_eq!(rep.exact_through(), None);
    assert_eq!(rep.augmented_series(0), None);
    assert!(rep.augmented_series(2).is_some_and(|s| !s.is_zero()));
}
