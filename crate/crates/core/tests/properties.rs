//! Property-based invariants over random homogeneous presentations.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use syzal::groebner::{self, ModuleOrder};
use syzal::homalg::{self, HilbertSeries};
use syzal::io;
use syzal::oracle::{self, OracleConfig};
use syzal::resolution::{self, ResolveOptions, Strategy};
use syzal::ring::{rat, Monomial};
use syzal::{GradedFreeModule, GradedMatrix, ModuleElement, ModulePresentation, MonomialOrder, Polynomial, RingSpec};

fn random_poly(rng: &mut ChaCha8Rng, ring: &RingSpec, total: u32) -> Polynomial {
    let monos = ring.monomials_of_total(total);
    let mut p = ring.zero();
    for m in monos {
        if rng.gen_bool(0.35) {
            p.add_term(m, rat(rng.gen_range(-3..=3)));
        }
    }
    p
}

/// Sparse homogeneous relations with small integer coefficients; `r <= 3`,
/// rank at most 2.
fn random_presentation(seed: u64) -> ModulePresentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = rng.gen_range(1..=3usize);
    let ring = RingSpec::new(r, 2).unwrap();
    let rank = rng.gen_range(1..=2usize);
    let gens: Vec<i64> = (0..rank).map(|_| 2 * rng.gen_range(0..=1i64)).collect();
    let top = *gens.iter().max().unwrap();
    let ncols = rng.gen_range(0..=3usize);
    let mut cols = Vec::new();
    for _ in 0..ncols {
        let deg = top + 2 * rng.gen_range(1..=2i64);
        let coords =
            gens.iter().map(|&g| random_poly(&mut rng, &ring, ((deg - g) / 2) as u32)).collect();
        let v = ModuleElement::new(coords);
        if !v.is_zero() {
            cols.push(v);
        }
    }
    let rel = GradedMatrix::from_homogeneous_columns(&ring, GradedFreeModule::new(gens), &cols).unwrap();
    ModulePresentation::new(ring, rel).unwrap()
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 96, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn division_invariant(seed in any::<u64>(), fseed in any::<u64>()) {
        let m = random_presentation(seed);
        let ring = m.ring();
        for order in [MonomialOrder::GRevLex, MonomialOrder::GLex] {
            let gb = groebner::buchberger(ring, m.generators(), &m.relations().columns(), &ModuleOrder::pot(order)).unwrap();
            prop_assert!(gb.verify_s_pairs());
            let mut rng = ChaCha8Rng::seed_from_u64(fseed);
            let deg = 2 * rng.gen_range(0..=4i64);
            let coords: Vec<Polynomial> = m
                .generators()
                .degrees()
                .iter()
                .map(|&g| if deg >= g { random_poly(&mut rng, ring, ((deg - g) / 2) as u32) } else { ring.zero() })
                .collect();
            let f = ModuleElement::new(coords);
            let (q, rem) = gb.divide(&f).unwrap();
            let mut sum = rem.clone();
            for (qk, gk) in q.iter().zip(gb.elements()) {
                sum = sum.add(&gk.scale(qk));
            }
            prop_assert_eq!(sum, f);
            let leads = gb.leading_terms();
            for (pos, p) in rem.coords.iter().enumerate() {
                for (mono, _) in p.terms() {
                    prop_assert!(!leads.iter().any(|(lp, lm)| *lp == pos && lm.divides(mono)));
                }
            }
        }
    }

    #[test]
    fn hilbert_function_is_order_independent(seed in any::<u64>()) {
        let m = random_presentation(seed);
        let r = m.ring().r();
        let base = resolution::resolve(&m, r).unwrap();
        base.verify().unwrap();
        let hs = base.euler_characteristic();
        for opts in [
            ResolveOptions { order: MonomialOrder::GLex, ..Default::default() },
            ResolveOptions { strategy: Strategy::SchreyerFrame, ..Default::default() },
            ResolveOptions { strategy: Strategy::SchreyerFrame, order: MonomialOrder::GLex, minimize: true },
        ] {
            let other = resolution::resolve_with(&m, r, opts).unwrap();
            prop_assert_eq!(other.euler_characteristic(), hs.clone());
            prop_assert_eq!(other.betti(), base.betti());
        }
        let cfg = OracleConfig::default_for(&m);
        for (q, n) in oracle::oracle_dims(&m, &cfg) {
            prop_assert_eq!(hs.coefficient(q), n as i64, "degree {}", q);
        }
    }

    #[test]
    fn unminimized_resolution_is_exact(seed in any::<u64>()) {
        let m = random_presentation(seed);
        // one spare level keeps the partners of units at level r
        let raw = resolution::resolve_with(&m, m.ring().r() + 1, ResolveOptions { minimize: false, ..Default::default() }).unwrap();
        prop_assert!(!raw.is_truncated());
        raw.verify().unwrap();
        let min = raw.minimize();
        prop_assert!(min.is_minimal());
        prop_assert_eq!(min.euler_characteristic(), raw.euler_characteristic());
        prop_assert_eq!(min.betti(), homalg::fingerprint(&m).unwrap().betti);
    }

    #[test]
    fn shifts_compose(seed in any::<u64>(), a in -6i64..6, b in -6i64..6) {
        let m = random_presentation(seed);
        prop_assert_eq!(m.shift(a).shift(b), m.shift(a + b));
        let f = homalg::fingerprint(&m).unwrap();
        prop_assert_eq!(homalg::fingerprint(&m.shift(a)).unwrap(), f.shift(a));
    }

    #[test]
    fn ext_commutes_with_shift(seed in any::<u64>(), n in 0i64..8) {
        let m = random_presentation(seed);
        let plain = homalg::ext_all(&m).unwrap();
        let shifted = homalg::ext_all(&m.shift(-n)).unwrap();
        for (e, s) in plain.iter().zip(&shifted) {
            let fe = homalg::fingerprint(e).unwrap();
            prop_assert_eq!(homalg::fingerprint(s).unwrap(), fe.shift(n));
        }
    }

    #[test]
    fn hilbert_series_is_additive(s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = random_presentation(s1);
        let b = random_presentation(s2);
        prop_assume!(a.ring() == b.ring());
        let sum = ModulePresentation::direct_sum(&[a.clone(), b.clone()]).unwrap();
        let expected = homalg::hilbert_series(&a).unwrap().add(&homalg::hilbert_series(&b).unwrap());
        prop_assert_eq!(homalg::hilbert_series(&sum).unwrap(), expected);
    }

    #[test]
    fn depth_and_projective_dimension(seed in any::<u64>()) {
        let m = random_presentation(seed);
        prop_assume!(!homalg::is_zero_module(&m).unwrap());
        let (depth, dim) = homalg::depth_dim(&m).unwrap();
        let pd = homalg::projective_dimension(&m).unwrap();
        prop_assert_eq!(depth + pd, m.ring().r());
        prop_assert!(depth <= dim);
        let s = homalg::syzygy_order(&m).unwrap();
        prop_assert_eq!(s == m.ring().r(), pd == 0);
    }

    #[test]
    fn presentation_file_round_trip(seed in any::<u64>()) {
        let m = random_presentation(seed);
        prop_assert_eq!(io::read_presentation(&io::write_presentation(&m)).unwrap(), m);
    }

    #[test]
    fn polynomial_display_round_trip(seed in any::<u64>(), total in 0u32..5) {
        let ring = RingSpec::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p = random_poly(&mut rng, &ring, total);
        p.add_term(Monomial::one(3), rat(rng.gen_range(-2..=2)) / rat(rng.gen_range(1..=3)));
        let text = p.display(&ring).to_string();
        prop_assert_eq!(ring.parse(&text).unwrap(), p);
    }
}

#[test]
fn hilbert_series_of_free_modules() {
    let ring = RingSpec::new(2, 2).unwrap();
    let f = ModulePresentation::free(&ring, vec![0, 2, 2]);
    let hs = homalg::hilbert_series(&f).unwrap();
    assert_eq!(hs, HilbertSeries::from_numerator(2, 2, [(0, 1), (2, 2)]));
    // dims of R ⊕ R[2]^2 in degrees 0, 2, 4: 1, 2 + 2, 3 + 4
    assert_eq!(hs.coefficients(0, 4).into_values().collect::<Vec<_>>(), vec![1, 0, 4, 0, 7]);
}
