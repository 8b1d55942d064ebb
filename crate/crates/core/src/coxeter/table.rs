use std::collections::{HashMap, VecDeque};

use super::element::{GenSet, WeylElement};
use super::{CoxeterError, CoxeterSystem, SystemId};

/// Index of an element in the enumerated group.
///
/// Indices follow the linear extension (length, canonical word), so
/// `a < b` whenever `a` is strictly below `b` in Bruhat order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemId(pub(crate) u32);

impl ElemId {
    pub const IDENTITY: ElemId = ElemId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The fully enumerated group with multiplication tables by generators.
#[derive(Debug)]
pub struct ElementTable {
    system: SystemId,
    rank: usize,
    elements: Vec<WeylElement>,
    index: HashMap<Box<[i32]>, ElemId>,
    lmul: Vec<u32>,
    rmul: Vec<u32>,
    inverse: Vec<u32>,
    support: Vec<GenSet>,
    longest: ElemId,
}

impl ElementTable {
    pub(super) fn build(sys: &CoxeterSystem) -> Result<Self, CoxeterError> {
        let rank = sys.rank();
        let cap = sys.options.max_group_order;

        // Breadth-first closure under right multiplication by generators.
        let mut mats: Vec<Box<[i32]>> = vec![sys.identity_matrix()];
        let mut seen: HashMap<Box<[i32]>, u32> = HashMap::from([(mats[0].clone(), 0)]);
        let mut queue = VecDeque::from([0u32]);
        let mut raw_rmul: Vec<u32> = Vec::new();
        while let Some(i) = queue.pop_front() {
            for s in 0..rank {
                let prod = sys.right_mul_matrix(&mats[i as usize], s);
                let j = match seen.get(&prod) {
                    Some(&j) => j,
                    None => {
                        let j = mats.len() as u32;
                        if mats.len() >= cap {
                            return Err(CoxeterError::GroupTooLarge { cap });
                        }
                        seen.insert(prod.clone(), j);
                        mats.push(prod);
                        queue.push_back(j);
                        j
                    }
                };
                let slot = i as usize * rank + s;
                if raw_rmul.len() <= slot {
                    raw_rmul.resize(slot + 1, u32::MAX);
                }
                raw_rmul[slot] = j;
            }
        }
        let n = mats.len();
        raw_rmul.resize(n * rank, u32::MAX);

        let mut raw_lmul = vec![0u32; n * rank];
        for (i, m) in mats.iter().enumerate() {
            for s in 0..rank {
                raw_lmul[i * rank + s] = seen[&sys.left_mul_matrix(m, s)];
            }
        }

        // Length and descents from root signs; BFS order is by length already.
        let stats: Vec<_> = mats.iter().map(|m| sys.root_statistics(m)).collect();
        let mut words: Vec<Box<[usize]>> = vec![Box::default(); n];
        for i in 0..n {
            let (length, left, _) = stats[i];
            if length == 0 {
                continue;
            }
            let s = left.first().expect("non-identity element has a left descent");
            let rest = raw_lmul[i * rank + s] as usize;
            debug_assert_eq!(stats[rest].0 + 1, length);
            let mut w = Vec::with_capacity(length);
            w.push(s);
            w.extend_from_slice(&words[rest]);
            words[i] = w.into_boxed_slice();
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| stats[a].0.cmp(&stats[b].0).then_with(|| words[a].cmp(&words[b])));
        let mut new_id = vec![0u32; n];
        for (new, &old) in order.iter().enumerate() {
            new_id[old] = new as u32;
        }

        let mut elements = Vec::with_capacity(n);
        let mut lmul = vec![0u32; n * rank];
        let mut rmul = vec![0u32; n * rank];
        for (new, &old) in order.iter().enumerate() {
            let (length, left, right) = stats[old];
            elements.push(WeylElement {
                system: sys.id(),
                action: mats[old].clone(),
                length,
                word: words[old].clone(),
                left_descents: left,
                right_descents: right,
            });
            for s in 0..rank {
                lmul[new * rank + s] = new_id[raw_lmul[old * rank + s] as usize];
                rmul[new * rank + s] = new_id[raw_rmul[old * rank + s] as usize];
            }
        }
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.action.clone(), ElemId(i as u32)))
            .collect();

        let mut table = ElementTable {
            system: sys.id(),
            rank,
            support: elements.iter().map(WeylElement::support).collect(),
            elements,
            index,
            lmul,
            rmul,
            inverse: Vec::new(),
            longest: ElemId((n - 1) as u32),
        };
        table.inverse = (0..n)
            .map(|i| {
                let word = table.elements[i].word.clone();
                word.iter().rev().fold(ElemId::IDENTITY, |acc, &s| table.rmul(acc, s)).0
            })
            .collect();
        debug_assert_eq!(table.elements[n - 1].length, sys.num_positive_roots());
        Ok(table)
    }

    pub fn system(&self) -> SystemId {
        self.system
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Group order.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn ids(&self) -> impl DoubleEndedIterator<Item = ElemId> + ExactSizeIterator {
        (0..self.elements.len() as u32).map(ElemId)
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn elem(&self, id: ElemId) -> &WeylElement {
        &self.elements[id.index()]
    }

    pub fn id_of(&self, w: &WeylElement) -> Result<ElemId, CoxeterError> {
        if w.system != self.system {
            return Err(CoxeterError::MixedSystems);
        }
        Ok(self.index[&w.action])
    }

    pub fn lookup_action(&self, action: &[i32]) -> Option<ElemId> {
        self.index.get(action).copied()
    }

    pub fn longest(&self) -> ElemId {
        self.longest
    }

    pub fn generator(&self, s: usize) -> ElemId {
        self.lmul(s, ElemId::IDENTITY)
    }

    /// `s · w`
    pub fn lmul(&self, s: usize, w: ElemId) -> ElemId {
        ElemId(self.lmul[w.index() * self.rank + s])
    }

    /// `w · s`
    pub fn rmul(&self, w: ElemId, s: usize) -> ElemId {
        ElemId(self.rmul[w.index() * self.rank + s])
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.word(b).iter().fold(a, |acc, &s| self.rmul(acc, s))
    }

    pub fn inverse(&self, w: ElemId) -> ElemId {
        ElemId(self.inverse[w.index()])
    }

    pub fn from_word(&self, word: &[usize]) -> ElemId {
        word.iter().fold(ElemId::IDENTITY, |acc, &s| self.rmul(acc, s))
    }

    pub fn length(&self, w: ElemId) -> usize {
        self.elements[w.index()].length
    }

    pub fn word(&self, w: ElemId) -> &[usize] {
        &self.elements[w.index()].word
    }

    pub fn left_descents(&self, w: ElemId) -> GenSet {
        self.elements[w.index()].left_descents
    }

    pub fn right_descents(&self, w: ElemId) -> GenSet {
        self.elements[w.index()].right_descents
    }

    pub fn support(&self, w: ElemId) -> GenSet {
        self.support[w.index()]
    }

    /// Bruhat order `u ≤ w` by the lifting property: for a left descent `s`
    /// of `w`, `u ≤ w` iff `su ≤ sw` (when `su < u`) or `u ≤ sw` (otherwise).
    /// Each step removes one letter from `w`, so a query costs `O(ℓ(w))`.
    pub fn bruhat_leq(&self, mut u: ElemId, mut w: ElemId) -> bool {
        loop {
            let (lu, lw) = (self.length(u), self.length(w));
            if lu > lw {
                return false;
            }
            if lu == lw {
                return u == w;
            }
            let s = self.left_descents(w).first().expect("w is not the identity");
            if self.left_descents(u).contains(s) {
                u = self.lmul(s, u);
            }
            w = self.lmul(s, w);
        }
    }

    /// All `x ≤ w`, in increasing id order.
    pub fn lower_set(&self, w: ElemId) -> Vec<ElemId> {
        self.ids()
            .take(w.index() + 1)
            .filter(|&x| self.bruhat_leq(x, w))
            .collect()
    }

    /// Longest element of the parabolic subgroup generated by `subset`.
    pub fn longest_in(&self, subset: GenSet) -> ElemId {
        let mut w = ElemId::IDENTITY;
        while let Some(s) = subset.iter().find(|&s| !self.right_descents(w).contains(s)) {
            w = self.rmul(w, s);
        }
        w
    }

    pub fn is_downward_closed(&self, set: &[ElemId]) -> bool {
        let mut member = vec![false; self.len()];
        for &x in set {
            member[x.index()] = true;
        }
        // Closure under covers suffices: every y < x lies on a chain of
        // Bruhat covers, and each cover removes one letter of a reduced word.
        set.iter().all(|&x| {
            let word = self.word(x);
            (0..word.len()).all(|k| {
                let mut y = ElemId::IDENTITY;
                for (j, &s) in word.iter().enumerate() {
                    if j != k {
                        y = self.rmul(y, s);
                    }
                }
                self.length(y) + 1 != self.length(x) || member[y.index()]
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b2_lower_set_of_longest_is_everything() {
        let sys = CoxeterSystem::named("B2").unwrap();
        let t = sys.table().unwrap();
        assert_eq!(t.lower_set(t.longest()).len(), 8);
        assert_eq!(t.lower_set(ElemId::IDENTITY), vec![ElemId::IDENTITY]);
    }

    #[test]
    fn inverse_and_generators() {
        let sys = CoxeterSystem::named("G2").unwrap();
        let t = sys.table().unwrap();
        for w in t.ids() {
            assert_eq!(t.mul(w, t.inverse(w)), ElemId::IDENTITY);
            assert_eq!(t.length(t.inverse(w)), t.length(w));
        }
        assert_eq!(t.word(t.generator(1)), &[1]);
    }

    #[test]
    fn downward_closed_detects_missing_cover() {
        let sys = CoxeterSystem::named("A2").unwrap();
        let t = sys.table().unwrap();
        let s1s2 = t.from_word(&[0, 1]);
        assert!(!t.is_downward_closed(&[s1s2]));
        let closed = t.lower_set(s1s2);
        assert!(t.is_downward_closed(&closed));
        assert!(t.is_downward_closed(&[ElemId::IDENTITY]));
    }
}
