//! Cross-checks against implementations that share no code with the library:
//! the geometric representation in floating point, the subword criterion for
//! Bruhat order, and letter-by-letter Hecke multiplication on a BTreeMap.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::f64::consts::PI;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relserre::{CoxeterSystem, ElemId, ElementTable, HeckeAlgebra, LaurentPoly};

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn classification_order(name: &str) -> usize {
    name.split('x')
        .map(|part| {
            let (family, n) = part.split_at(1);
            let n: usize = n.parse().unwrap();
            match family {
                "A" => factorial(n + 1),
                "B" => (1 << n) * factorial(n),
                "D" => (1 << (n - 1)) * factorial(n),
                "G" => 12,
                "F" => 1152,
                _ => unreachable!(),
            }
        })
        .product()
}

const SYSTEMS: [&str; 12] = [
    "A1", "A2", "A3", "A4", "A1xA1", "A2xA1", "B2", "B3", "B4", "G2", "D4", "D5",
];

/// Orbit of a generic vector under `s_i(v) = v − 2 B(α_i, v) α_i` with
/// `B(α_i, α_j) = −cos(π / m_ij)`; returns rounded coordinates → BFS depth.
type Orbit = HashMap<Vec<i64>, usize>;

fn tits_orbit(bonds: &[Vec<u32>]) -> (Orbit, impl Fn(&[f64], usize) -> Vec<f64>) {
    let r = bonds.len();
    let form: Vec<Vec<f64>> = (0..r)
        .map(|i| (0..r).map(|j| -(PI / bonds[i][j] as f64).cos()).collect())
        .collect();
    let reflect = move |v: &[f64], i: usize| {
        let c: f64 = (0..r).map(|j| form[i][j] * v[j]).sum();
        let mut out = v.to_vec();
        out[i] -= 2.0 * c;
        out
    };
    let start: Vec<f64> = (0..r).map(|i| 1.0 + 0.173 * ((i + 2) as f64).sqrt()).collect();
    let key = |v: &[f64]| v.iter().map(|x| (x * 1e6).round() as i64).collect::<Vec<_>>();
    let mut depth = HashMap::from([(key(&start), 0usize)]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let d = depth[&key(&v)];
        for i in 0..r {
            let w = reflect(&v, i);
            let k = key(&w);
            if let std::collections::hash_map::Entry::Vacant(e) = depth.entry(k) {
                e.insert(d + 1);
                queue.push_back(w);
            }
        }
    }
    (depth, reflect)
}

#[test]
fn orders_and_lengths_match_geometric_representation() {
    for name in SYSTEMS {
        let sys = CoxeterSystem::named(name).unwrap();
        let t = sys.table().unwrap();
        assert_eq!(t.len(), classification_order(name), "{name}");
        let (orbit, reflect) = tits_orbit(sys.bond_matrix());
        assert_eq!(orbit.len(), t.len(), "{name}");
        let r = sys.rank();
        let start: Vec<f64> = (0..r).map(|i| 1.0 + 0.173 * ((i + 2) as f64).sqrt()).collect();
        let mut images = HashSet::new();
        for w in t.ids() {
            // Apply the word right to left so the image is w · start.
            let v = t.word(w).iter().rev().fold(start.clone(), |v, &s| reflect(&v, s));
            let k: Vec<i64> = v.iter().map(|x| (x * 1e6).round() as i64).collect();
            assert_eq!(orbit[&k], t.length(w), "{name} {:?}", t.word(w));
            assert!(images.insert(k));
        }
        assert_eq!(sys.num_positive_roots(), t.length(t.longest()), "{name}");
    }
}

fn subword_lower_set(t: &ElementTable, w: ElemId) -> HashSet<ElemId> {
    let word = t.word(w);
    (0u32..1 << word.len())
        .map(|mask| {
            let sub: Vec<usize> = word
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &s)| s)
                .collect();
            t.from_word(&sub)
        })
        .collect()
}

#[test]
fn bruhat_order_matches_subword_criterion() {
    for name in ["A3", "B3", "G2", "A2xA1"] {
        let sys = CoxeterSystem::named(name).unwrap();
        let t = sys.table().unwrap();
        for w in t.ids() {
            let below = subword_lower_set(t, w);
            for u in t.ids() {
                assert_eq!(
                    t.bruhat_leq(u, w),
                    below.contains(&u),
                    "{name}: {:?} <= {:?}",
                    t.word(u),
                    t.word(w)
                );
            }
            let mut lower: Vec<ElemId> = below.into_iter().collect();
            lower.sort();
            assert_eq!(t.lower_set(w), lower);
        }
    }
}

#[test]
fn canonical_words_are_lex_least_reduced() {
    let sys = CoxeterSystem::named("B3").unwrap();
    let t = sys.table().unwrap();
    // Every reduced word of every element, by extending reduced words.
    let mut least: HashMap<ElemId, Vec<usize>> = HashMap::from([(ElemId::IDENTITY, vec![])]);
    let mut frontier: Vec<(ElemId, Vec<usize>)> = vec![(ElemId::IDENTITY, vec![])];
    while let Some((w, word)) = frontier.pop() {
        for s in 0..sys.rank() {
            let ws = t.rmul(w, s);
            if t.length(ws) == word.len() + 1 {
                let mut next = word.clone();
                next.push(s);
                let e = least.entry(ws).or_insert_with(|| next.clone());
                if next < *e {
                    *e = next.clone();
                }
                frontier.push((ws, next));
            }
        }
    }
    for w in t.ids() {
        assert_eq!(t.word(w), least[&w].as_slice());
    }
}

type Naive = BTreeMap<ElemId, LaurentPoly>;

/// `h · H_s` using only lengths from the multiplication table.
fn naive_right(t: &ElementTable, h: &Naive, s: usize) -> Naive {
    let q = LaurentPoly::from_terms([(-1, 1), (1, -1)]);
    let mut out = Naive::new();
    for (&w, p) in h {
        let ws = t.rmul(w, s);
        *out.entry(ws).or_default() += p;
        if t.length(ws) < t.length(w) {
            *out.entry(w).or_default() += &(p * &q);
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

fn naive_mul(t: &ElementTable, a: &Naive, b: &Naive) -> Naive {
    let mut out = Naive::new();
    for (&y, c) in b {
        let prod = t.word(y).iter().fold(a.clone(), |h, &s| naive_right(t, &h, s));
        for (w, p) in prod {
            *out.entry(w).or_default() += &(&p * c);
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

#[test]
fn hecke_products_match_naive_multiplication() {
    for name in ["A3", "B2", "G2"] {
        let alg = HeckeAlgebra::new(Arc::new(CoxeterSystem::named(name).unwrap())).unwrap();
        let t = alg.table();
        let n = t.len();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let mut make = || -> Naive {
                let mut m = Naive::new();
                for _ in 0..3 {
                    let id = t.ids().nth(rng.gen_range(0..n)).unwrap();
                    *m.entry(id).or_default() +=
                        &LaurentPoly::monomial(rng.gen_range(-2i64..=2), rng.gen_range(-2..=2));
                }
                m.retain(|_, p| !p.is_zero());
                m
            };
            let (a, b) = (make(), make());
            let lib = alg.mul(&alg.from_terms(a.clone()), &alg.from_terms(b.clone())).unwrap();
            let expected = naive_mul(t, &a, &b);
            assert_eq!(lib, alg.from_terms(expected), "{name}");
        }
    }
}

#[test]
fn costandard_classes_invert_standard_classes() {
    let alg = HeckeAlgebra::new(Arc::new(CoxeterSystem::named("B3").unwrap())).unwrap();
    let t = alg.table();
    for w in t.ids() {
        // N_w = (H_{w⁻¹})⁻¹, so H_{w⁻¹} N_w = 1.
        let naive = naive_mul(
            t,
            &Naive::from([(t.inverse(w), LaurentPoly::one())]),
            &alg.costandard(w).terms().map(|(x, p)| (x, p.clone())).collect(),
        );
        assert_eq!(naive, Naive::from([(ElemId::IDENTITY, LaurentPoly::one())]));
    }
}

#[test]
fn longest_element_identity_on_b3() {
    // H_{w₀} N_u = H_{w₀u}, checked with the naive product.
    let alg = HeckeAlgebra::new(Arc::new(CoxeterSystem::named("B3").unwrap())).unwrap();
    let t = alg.table();
    let w0 = Naive::from([(t.longest(), LaurentPoly::one())]);
    for u in t.ids() {
        let nu: Naive = alg.costandard(u).terms().map(|(x, p)| (x, p.clone())).collect();
        assert_eq!(
            naive_mul(t, &w0, &nu),
            Naive::from([(t.mul(t.longest(), u), LaurentPoly::one())])
        );
    }
}
