use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use relserre::garside::{BraidGroup, BraidLetter, BraidWord};
use relserre::{
    CostandardExpansion, CoxeterSystem, ElemId, GenSet, HeckeAlgebra, HeckeElt, LaurentPoly, ParabolicContext,
};

struct Fixture {
    alg: Arc<HeckeAlgebra>,
    braid: BraidGroup,
}

fn fixture(name: &'static str) -> &'static Fixture {
    static A3: OnceLock<Fixture> = OnceLock::new();
    static B3: OnceLock<Fixture> = OnceLock::new();
    static G2: OnceLock<Fixture> = OnceLock::new();
    let cell = match name {
        "A3" => &A3,
        "B3" => &B3,
        "G2" => &G2,
        _ => unreachable!(),
    };
    cell.get_or_init(|| {
        let sys = Arc::new(CoxeterSystem::named(name).unwrap());
        Fixture {
            alg: Arc::new(HeckeAlgebra::new(sys.clone()).unwrap()),
            braid: BraidGroup::new(sys).unwrap(),
        }
    })
}

fn system_name() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("A3"), Just("B3"), Just("G2")]
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i32..=3, -3i64..=3), 1..3).prop_map(LaurentPoly::from_terms)
}

/// Raw material for an element: (index mod |W|, coefficient) pairs.
fn raw_element() -> impl Strategy<Value = Vec<(usize, LaurentPoly)>> {
    prop::collection::vec((any::<usize>(), poly()), 0..4)
}

fn element(alg: &HeckeAlgebra, raw: &[(usize, LaurentPoly)], pool: &[ElemId]) -> HeckeElt {
    alg.from_terms(raw.iter().map(|(i, p)| (pool[i % pool.len()], p.clone())))
}

fn all_ids(alg: &HeckeAlgebra) -> Vec<ElemId> {
    alg.table().ids().collect()
}

fn raw_word() -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..3, any::<bool>()), 0..10)
}

fn word(raw: &[(usize, bool)], rank: usize) -> BraidWord {
    BraidWord(
        raw.iter()
            .map(|&(g, inverse)| BraidLetter {
                generator: g % rank,
                inverse,
            })
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative_and_unital(name in system_name(), a in raw_element(), b in raw_element(), c in raw_element()) {
        let f = fixture(name);
        let ids = all_ids(&f.alg);
        let (a, b, c) = (element(&f.alg, &a, &ids), element(&f.alg, &b, &ids), element(&f.alg, &c, &ids));
        let alg = &f.alg;
        prop_assert_eq!(
            alg.mul(&alg.mul(&a, &b).unwrap(), &c).unwrap(),
            alg.mul(&a, &alg.mul(&b, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(alg.mul(&alg.one(), &a).unwrap(), a.clone());
        prop_assert_eq!(alg.mul(&a, &alg.one()).unwrap(), a);
    }

    #[test]
    fn bar_is_a_ring_involution(name in system_name(), a in raw_element(), b in raw_element()) {
        let f = fixture(name);
        let ids = all_ids(&f.alg);
        let (a, b) = (element(&f.alg, &a, &ids), element(&f.alg, &b, &ids));
        let alg = &f.alg;
        let bar = |h: &HeckeElt| alg.bar(h).unwrap();
        prop_assert_eq!(bar(&bar(&a)), a.clone());
        prop_assert_eq!(bar(&alg.mul(&a, &b).unwrap()), alg.mul(&bar(&a), &bar(&b)).unwrap());
    }

    #[test]
    fn costandard_expansion_round_trips(name in system_name(), a in raw_element()) {
        let f = fixture(name);
        let a = element(&f.alg, &a, &all_ids(&f.alg));
        let e = f.alg.expand_costandard(&a).unwrap();
        prop_assert_eq!(f.alg.from_costandard(&e).unwrap(), a.clone());
        // Linear in the fast per-element expansions.
        let mut combined = f.alg.zero();
        for (w, p) in a.terms() {
            combined = &combined + &f.alg.standard_expansion(w).0.scale(p);
        }
        prop_assert_eq!(CostandardExpansion(combined), e);
    }

    #[test]
    fn normal_forms_respect_the_group_laws(name in system_name(), a in raw_word(), b in raw_word()) {
        let f = fixture(name);
        let rank = f.alg.system().rank();
        let (a, b) = (word(&a, rank), word(&b, rank));
        let g = &f.braid;
        let (na, nb) = (g.normal_form(&a).unwrap(), g.normal_form(&b).unwrap());
        prop_assert_eq!(g.normal_form(&a.concat(&b)).unwrap(), g.multiply(&na, &nb).unwrap());
        prop_assert!(g.multiply(&na, &g.inverse(&na).unwrap()).unwrap().is_identity());
        prop_assert!(g.is_left_weighted(&na));
        prop_assert_eq!(g.normal_form(&g.word_of(&na)).unwrap(), na.clone());
        prop_assert_eq!(na.exponent_sum(g.table()), a.exponent_sum());
    }

    #[test]
    fn hecke_class_factors_through_normal_form(name in system_name(), a in raw_word()) {
        let f = fixture(name);
        let a = word(&a, f.alg.system().rank());
        let nf = f.braid.normal_form(&a).unwrap();
        prop_assert_eq!(f.alg.eval_braid(&a).unwrap(), f.alg.eval_braid(&f.braid.word_of(&nf)).unwrap());
    }

    #[test]
    fn adjoints_split_induction(name in system_name(), bits in any::<u64>(), a in raw_element(), h in raw_element()) {
        let f = fixture(name);
        let rank = f.alg.system().rank();
        let subset = GenSet::from_bits(bits & GenSet::full(rank).bits());
        let ctx = ParabolicContext::new(f.alg.clone(), subset).unwrap();
        let x = element(&f.alg, &a, ctx.parabolic().elements());
        let h = element(&f.alg, &h, &all_ids(&f.alg));
        let i = ctx.incl(&x).unwrap();
        prop_assert_eq!(ctx.proj_std(&i), x.clone());
        prop_assert_eq!(ctx.proj_cos(&i).unwrap(), x.clone());
        prop_assert!(ctx.duality_holds_for(&h).unwrap());
        prop_assert!(ctx.recollement_check(&h).unwrap());
        prop_assert!(ctx.levi_linearity_holds(&x, &h).unwrap());
    }
}
