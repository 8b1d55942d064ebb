use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::SystemId;

/// A subset of the simple generators, as a bitmask over indices `0..rank`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSet(u64);

impl GenSet {
    pub const MAX_RANK: usize = 64;

    pub const fn empty() -> Self {
        GenSet(0)
    }

    pub fn full(rank: usize) -> Self {
        assert!(rank <= Self::MAX_RANK);
        if rank == 64 {
            GenSet(u64::MAX)
        } else {
            GenSet((1u64 << rank) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        GenSet(bits)
    }

    pub fn single(i: usize) -> Self {
        GenSet(1 << i)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: GenSet) -> GenSet {
        GenSet(self.0 | other.0)
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// All subsets of `{0..rank}` in increasing bitmask order.
    pub fn all_subsets(rank: usize) -> impl Iterator<Item = GenSet> {
        assert!(rank < 32, "too many subsets to enumerate");
        (0..1u64 << rank).map(GenSet)
    }
}

impl FromIterator<usize> for GenSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = GenSet::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

/// Renders 1-based, e.g. `{1,3}`; the empty set is `{}`.
impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// An element of a finite Weyl group.
///
/// Identity is the integer matrix of the action on the root lattice (columns
/// are the images of the simple roots); everything else is derived from it.
#[derive(Clone, Debug)]
pub struct WeylElement {
    pub(super) system: SystemId,
    pub(super) action: Box<[i32]>,
    pub(super) length: usize,
    pub(super) word: Box<[usize]>,
    pub(super) left_descents: GenSet,
    pub(super) right_descents: GenSet,
}

impl WeylElement {
    pub fn system(&self) -> SystemId {
        self.system
    }

    /// Column-major `rank × rank` integer matrix in the simple-root basis.
    pub fn action(&self) -> &[i32] {
        &self.action
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Lexicographically least reduced word (0-based generator indices).
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn left_descents(&self) -> GenSet {
        self.left_descents
    }

    pub fn right_descents(&self) -> GenSet {
        self.right_descents
    }

    pub fn descents(&self, side: Side) -> GenSet {
        match side {
            Side::Left => self.left_descents,
            Side::Right => self.right_descents,
        }
    }

    /// Generators occurring in the reduced word (the same for every reduced word).
    pub fn support(&self) -> GenSet {
        self.word.iter().copied().collect()
    }
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.system == other.system && self.action == other.action
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.system.hash(state);
        self.action.hash(state);
    }
}

/// Length first, then canonical word; a linear extension of Bruhat order.
impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.system
            .cmp(&other.system)
            .then(self.length.cmp(&other.length))
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// 1-based word in brackets, e.g. `[1 2 1]`; the identity is `[]`.
impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", word_string(&self.word))
    }
}

pub(crate) fn word_string(word: &[usize]) -> String {
    word.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")
}
