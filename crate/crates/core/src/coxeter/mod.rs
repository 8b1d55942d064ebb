//! Finite crystallographic Coxeter systems (Weyl groups).
//!
//! A system is built from its Coxeter bond matrix. Elements act on the root
//! lattice by exact integer matrices; length and descents are read off from
//! the signs of the images of the positive roots.

mod element;
mod table;

use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub(crate) use element::word_string;
pub use element::{GenSet, Side, WeylElement};
pub use table::{ElemId, ElementTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("malformed bond matrix: {0}")]
    MalformedMatrix(String),
    #[error("bond matrix is not of finite type (root closure exceeded {bound} positive roots)")]
    NonSpherical { bound: usize },
    #[error("group order exceeds the configured cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("elements belong to different Coxeter systems")]
    MixedSystems,
    #[error("unknown Coxeter type {0:?}")]
    UnknownType(String),
    #[error("generator index {index} out of range for rank {rank}")]
    InvalidGenerator { index: usize, rank: usize },
}

/// Process-unique identity of a built system; elements carry it so that
/// mixing elements of different systems is detected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SystemId(u64);

static NEXT_SYSTEM_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    /// Positive-root count beyond which the input is declared non-spherical.
    pub max_roots: usize,
    /// Refuse to enumerate groups larger than this.
    pub max_group_order: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_roots: 10_000,
            max_group_order: 1_200_000,
        }
    }
}

/// A Coxeter datum file: `name` plus a symmetric `bond_matrix`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterDatum {
    pub name: String,
    pub bond_matrix: Vec<Vec<u32>>,
}

#[derive(Debug)]
pub struct CoxeterSystem {
    id: SystemId,
    name: String,
    bond_matrix: Vec<Vec<u32>>,
    /// `cartan[i][j] = ⟨α_j, α_i^∨⟩`
    cartan: Vec<Vec<i32>>,
    positive_roots: Vec<Vec<i32>>,
    options: BuildOptions,
    table: OnceLock<Result<ElementTable, CoxeterError>>,
}

impl CoxeterSystem {
    pub fn from_bond_matrix(name: impl Into<String>, bond_matrix: Vec<Vec<u32>>) -> Result<Self, CoxeterError> {
        Self::with_options(name, bond_matrix, BuildOptions::default())
    }

    pub fn with_options(
        name: impl Into<String>,
        bond_matrix: Vec<Vec<u32>>,
        options: BuildOptions,
    ) -> Result<Self, CoxeterError> {
        let cartan = cartan_from_bonds(&bond_matrix)?;
        let positive_roots = root_closure(&cartan, options.max_roots)?;
        Ok(CoxeterSystem {
            id: SystemId(NEXT_SYSTEM_ID.fetch_add(1, Ordering::Relaxed)),
            name: name.into(),
            bond_matrix,
            cartan,
            positive_roots,
            options,
            table: OnceLock::new(),
        })
    }

    pub fn from_datum(datum: &CoxeterDatum) -> Result<Self, CoxeterError> {
        Self::from_bond_matrix(datum.name.clone(), datum.bond_matrix.clone())
    }

    /// Built-in types `A<n>`, `B<n>`, `D<n>`, `G2`, `F4` and products
    /// joined by `x`, e.g. `A2xA1`.
    pub fn named(name: &str) -> Result<Self, CoxeterError> {
        Self::named_with_options(name, BuildOptions::default())
    }

    pub fn named_with_options(name: &str, options: BuildOptions) -> Result<Self, CoxeterError> {
        Self::with_options(name, named_bond_matrix(name)?, options)
    }

    pub fn id(&self) -> SystemId {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.bond_matrix.len()
    }

    pub fn bond_matrix(&self) -> &[Vec<u32>] {
        &self.bond_matrix
    }

    pub fn bond(&self, i: usize, j: usize) -> u32 {
        self.bond_matrix[i][j]
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Positive roots in the simple-root basis.
    pub fn positive_roots(&self) -> &[Vec<i32>] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn generators(&self) -> GenSet {
        GenSet::full(self.rank())
    }

    pub fn check_subset(&self, subset: GenSet) -> Result<(), CoxeterError> {
        match subset.iter().find(|&i| i >= self.rank()) {
            Some(index) => Err(CoxeterError::InvalidGenerator {
                index,
                rank: self.rank(),
            }),
            None => Ok(()),
        }
    }

    /// The enumerated group, built on first use.
    pub fn table(&self) -> Result<&ElementTable, CoxeterError> {
        self.table
            .get_or_init(|| ElementTable::build(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn order(&self) -> Result<usize, CoxeterError> {
        Ok(self.table()?.len())
    }

    pub fn enumerate_elements(&self) -> Result<&[WeylElement], CoxeterError> {
        Ok(self.table()?.elements())
    }

    pub(crate) fn identity_matrix(&self) -> Box<[i32]> {
        let r = self.rank();
        let mut m = vec![0; r * r];
        for i in 0..r {
            m[i * r + i] = 1;
        }
        m.into_boxed_slice()
    }

    /// `s_i(x) = x − ⟨x, α_i^∨⟩ α_i`; only coordinate `i` changes.
    fn reflect(&self, i: usize, x: &mut [i32]) {
        let pairing: i32 = self.cartan[i].iter().zip(x.iter()).map(|(a, b)| a * b).sum();
        x[i] -= pairing;
    }

    pub(crate) fn left_mul_matrix(&self, m: &[i32], s: usize) -> Box<[i32]> {
        let r = self.rank();
        let mut out = m.to_vec();
        for col in out.chunks_mut(r) {
            self.reflect(s, col);
        }
        out.into_boxed_slice()
    }

    pub(crate) fn right_mul_matrix(&self, m: &[i32], s: usize) -> Box<[i32]> {
        // column j of M·S_s is M(α_j − a_{sj} α_s)
        let r = self.rank();
        let mut out = m.to_vec();
        for j in 0..r {
            let a = self.cartan[s][j];
            if a != 0 {
                for k in 0..r {
                    out[j * r + k] -= a * m[s * r + k];
                }
            }
        }
        out.into_boxed_slice()
    }

    fn apply(&self, m: &[i32], x: &[i32]) -> Vec<i32> {
        let r = self.rank();
        let mut y = vec![0; r];
        for (j, &xj) in x.iter().enumerate() {
            if xj != 0 {
                for k in 0..r {
                    y[k] += xj * m[j * r + k];
                }
            }
        }
        y
    }

    /// (length, left descents, right descents) from root-sign data.
    pub(crate) fn root_statistics(&self, m: &[i32]) -> (usize, GenSet, GenSet) {
        let r = self.rank();
        let mut length = 0;
        let mut left = GenSet::empty();
        for root in &self.positive_roots {
            let img = self.apply(m, root);
            if is_negative(&img) {
                length += 1;
                // w(β) = −α_s means w⁻¹(α_s) < 0, i.e. ℓ(sw) < ℓ(w)
                if let Some(s) = simple_index(&img) {
                    left.insert(s);
                }
            }
        }
        let right = (0..r).filter(|&s| is_negative(&m[s * r..(s + 1) * r])).collect();
        (length, left, right)
    }

    fn element_from_action(&self, action: Box<[i32]>) -> WeylElement {
        if let Some(Ok(table)) = self.table.get() {
            if let Some(id) = table.lookup_action(&action) {
                return table.elem(id).clone();
            }
        }
        let (length, left_descents, right_descents) = self.root_statistics(&action);
        let mut word = Vec::with_capacity(length);
        let mut rest = action.clone();
        loop {
            let (_, left, _) = self.root_statistics(&rest);
            match left.first() {
                Some(s) => {
                    word.push(s);
                    rest = self.left_mul_matrix(&rest, s);
                }
                None => break,
            }
        }
        debug_assert_eq!(word.len(), length);
        WeylElement {
            system: self.id,
            action,
            length,
            word: word.into_boxed_slice(),
            left_descents,
            right_descents,
        }
    }

    fn check_same(&self, w: &WeylElement) -> Result<(), CoxeterError> {
        if w.system == self.id {
            Ok(())
        } else {
            Err(CoxeterError::MixedSystems)
        }
    }

    pub fn identity(&self) -> WeylElement {
        self.element_from_action(self.identity_matrix())
    }

    pub fn generator(&self, s: usize) -> Result<WeylElement, CoxeterError> {
        self.element_from_word(&[s])
    }

    /// Product of the generators in `word` (0-based, not necessarily reduced).
    pub fn element_from_word(&self, word: &[usize]) -> Result<WeylElement, CoxeterError> {
        let mut m = self.identity_matrix();
        for &s in word {
            if s >= self.rank() {
                return Err(CoxeterError::InvalidGenerator {
                    index: s,
                    rank: self.rank(),
                });
            }
            m = self.right_mul_matrix(&m, s);
        }
        Ok(self.element_from_action(m))
    }

    pub fn multiply(&self, a: &WeylElement, b: &WeylElement) -> Result<WeylElement, CoxeterError> {
        self.check_same(a)?;
        self.check_same(b)?;
        let r = self.rank();
        let mut m = vec![0; r * r];
        for j in 0..r {
            let col = self.apply(&a.action, &b.action[j * r..(j + 1) * r]);
            m[j * r..(j + 1) * r].copy_from_slice(&col);
        }
        Ok(self.element_from_action(m.into_boxed_slice()))
    }

    pub fn inverse(&self, w: &WeylElement) -> Result<WeylElement, CoxeterError> {
        self.check_same(w)?;
        let rev: Vec<usize> = w.word.iter().rev().copied().collect();
        self.element_from_word(&rev)
    }

    pub fn canonical_reduced_word<'w>(&self, w: &'w WeylElement) -> Result<&'w [usize], CoxeterError> {
        self.check_same(w)?;
        Ok(w.word())
    }

    pub fn descents(&self, w: &WeylElement, side: Side) -> Result<GenSet, CoxeterError> {
        self.check_same(w)?;
        Ok(w.descents(side))
    }

    /// Longest element of the parabolic subgroup `W_I`.
    pub fn longest_element(&self, subset: GenSet) -> Result<WeylElement, CoxeterError> {
        self.check_subset(subset)?;
        let mut w = self.identity();
        while let Some(s) = subset.iter().find(|&s| !w.right_descents.contains(s)) {
            w = self.multiply(&w, &self.generator(s)?)?;
        }
        Ok(w)
    }

    pub fn bruhat_leq(&self, u: &WeylElement, w: &WeylElement) -> Result<bool, CoxeterError> {
        let t = self.table()?;
        Ok(t.bruhat_leq(t.id_of(u)?, t.id_of(w)?))
    }

    pub fn bruhat_lower_set(&self, w: &WeylElement) -> Result<Vec<WeylElement>, CoxeterError> {
        let t = self.table()?;
        Ok(t.lower_set(t.id_of(w)?)
            .into_iter()
            .map(|x| t.elem(x).clone())
            .collect())
    }

    pub fn elements_of_parabolic(&self, subset: GenSet) -> Result<Vec<WeylElement>, CoxeterError> {
        let p = self.parabolic(subset)?;
        let t = self.table()?;
        Ok(p.elements().iter().map(|&x| t.elem(x).clone()).collect())
    }

    pub fn parabolic(&self, subset: GenSet) -> Result<ParabolicSubset, CoxeterError> {
        self.check_subset(subset)?;
        ParabolicSubset::new(self.table()?, subset)
    }

    /// `w₀ · w_{0,I}⁻¹`, the longest minimal-length coset representative
    /// of `W / W_I`.
    pub fn longest_coset_representative(&self, subset: GenSet) -> Result<WeylElement, CoxeterError> {
        let p = self.parabolic(subset)?;
        Ok(self.table()?.elem(p.coset_rep()).clone())
    }

    /// `{w₀u : u ∉ W_I}`
    pub fn flipped_complement(&self, subset: GenSet) -> Result<Vec<WeylElement>, CoxeterError> {
        let p = self.parabolic(subset)?;
        let t = self.table()?;
        let mut out: Vec<WeylElement> = p.flipped_complement(t).into_iter().map(|x| t.elem(x).clone()).collect();
        out.sort();
        Ok(out)
    }

    pub fn is_downward_closed(&self, set: &[WeylElement]) -> Result<bool, CoxeterError> {
        let t = self.table()?;
        let ids = set.iter().map(|w| t.id_of(w)).collect::<Result<Vec<_>, _>>()?;
        Ok(t.is_downward_closed(&ids))
    }
}

fn is_negative(v: &[i32]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0)
}

fn simple_index(v: &[i32]) -> Option<usize> {
    let mut found = None;
    for (i, &x) in v.iter().enumerate() {
        match x {
            0 => {}
            -1 if found.is_none() => found = Some(i),
            _ => return None,
        }
    }
    found
}

fn cartan_from_bonds(bonds: &[Vec<u32>]) -> Result<Vec<Vec<i32>>, CoxeterError> {
    let r = bonds.len();
    let bad = |msg: String| Err(CoxeterError::MalformedMatrix(msg));
    if r == 0 {
        return bad("empty matrix".into());
    }
    if r > GenSet::MAX_RANK {
        return bad(format!("rank {r} exceeds {}", GenSet::MAX_RANK));
    }
    let mut cartan = vec![vec![0; r]; r];
    for i in 0..r {
        if bonds[i].len() != r {
            return bad(format!("row {} has {} entries, expected {r}", i + 1, bonds[i].len()));
        }
        if bonds[i][i] != 1 {
            return bad(format!("diagonal entry ({0},{0}) must be 1", i + 1));
        }
        cartan[i][i] = 2;
    }
    for i in 0..r {
        for j in i + 1..r {
            let m = bonds[i][j];
            if bonds[j][i] != m {
                return bad(format!("not symmetric at ({},{})", i + 1, j + 1));
            }
            // a_ij · a_ji = 4cos²(π/m); the long root is put on the lower index.
            let (aij, aji) = match m {
                2 => (0, 0),
                3 => (-1, -1),
                4 => (-2, -1),
                6 => (-3, -1),
                0 | 1 => return bad(format!("invalid bond {m} at ({},{})", i + 1, j + 1)),
                _ => return bad(format!("non-crystallographic bond {m} at ({},{})", i + 1, j + 1)),
            };
            cartan[i][j] = aij;
            cartan[j][i] = aji;
        }
    }
    Ok(cartan)
}

fn root_closure(cartan: &[Vec<i32>], bound: usize) -> Result<Vec<Vec<i32>>, CoxeterError> {
    let r = cartan.len();
    let mut roots: Vec<Vec<i32>> = (0..r)
        .map(|i| {
            let mut e = vec![0; r];
            e[i] = 1;
            e
        })
        .collect();
    let mut seen: HashSet<Vec<i32>> = roots.iter().cloned().collect();
    let mut k = 0;
    while k < roots.len() {
        for i in 0..r {
            let mut x = roots[k].clone();
            let pairing: i32 = cartan[i].iter().zip(x.iter()).map(|(a, b)| a * b).sum();
            if pairing == 0 {
                continue;
            }
            x[i] -= pairing;
            if x.iter().all(|&c| c >= 0) && seen.insert(x.clone()) {
                roots.push(x);
                if roots.len() > bound {
                    return Err(CoxeterError::NonSpherical { bound });
                }
            }
        }
        k += 1;
    }
    roots.sort_by(|a, b| a.iter().sum::<i32>().cmp(&b.iter().sum::<i32>()).then_with(|| b.cmp(a)));
    Ok(roots)
}

fn irreducible_bonds(name: &str) -> Result<Vec<Vec<u32>>, CoxeterError> {
    let unknown = || CoxeterError::UnknownType(name.to_string());
    let mut chars = name.chars();
    let family = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
    let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
    let chain = |n: usize| {
        let mut m = vec![vec![2; n]; n];
        for i in 0..n {
            m[i][i] = 1;
            if i + 1 < n {
                m[i][i + 1] = 3;
                m[i + 1][i] = 3;
            }
        }
        m
    };
    let m = match (family, n) {
        ('A', n) if n >= 1 => chain(n),
        ('B', n) if n >= 2 => {
            let mut m = chain(n);
            m[n - 2][n - 1] = 4;
            m[n - 1][n - 2] = 4;
            m
        }
        ('D', n) if n >= 4 => {
            let mut m = chain(n);
            m[n - 2][n - 1] = 2;
            m[n - 1][n - 2] = 2;
            m[n - 3][n - 1] = 3;
            m[n - 1][n - 3] = 3;
            m
        }
        ('G', 2) => vec![vec![1, 6], vec![6, 1]],
        ('F', 4) => {
            let mut m = chain(4);
            m[1][2] = 4;
            m[2][1] = 4;
            m
        }
        _ => return Err(unknown()),
    };
    Ok(m)
}

/// Block-diagonal bond matrix of a product of named irreducible types.
pub fn named_bond_matrix(name: &str) -> Result<Vec<Vec<u32>>, CoxeterError> {
    let blocks = name
        .split(['x', 'X', '×'])
        .map(|part| irreducible_bonds(part.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let r: usize = blocks.iter().map(Vec::len).sum();
    let mut m = vec![vec![2; r]; r];
    let mut off = 0;
    for b in &blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m[off + i][off + j] = x;
            }
        }
        off += b.len();
    }
    Ok(m)
}

/// A standard parabolic subgroup `W_I` together with the derived elements
/// used throughout the duality checks.
#[derive(Clone, Debug)]
pub struct ParabolicSubset {
    subset: GenSet,
    elements: Vec<ElemId>,
    member: Vec<bool>,
    longest: ElemId,
    coset_rep: ElemId,
}

impl ParabolicSubset {
    pub fn new(table: &ElementTable, subset: GenSet) -> Result<Self, CoxeterError> {
        if let Some(index) = subset.iter().find(|&i| i >= table.rank()) {
            return Err(CoxeterError::InvalidGenerator {
                index,
                rank: table.rank(),
            });
        }
        let elements: Vec<ElemId> = table.ids().filter(|&w| table.support(w).is_subset(subset)).collect();
        let mut member = vec![false; table.len()];
        for &w in &elements {
            member[w.index()] = true;
        }
        let longest = table.longest_in(subset);
        let coset_rep = table.mul(table.longest(), table.inverse(longest));
        assert_eq!(
            table.length(table.longest()),
            table.length(coset_rep) + table.length(longest),
            "length additivity of w0 = u · w0_I failed"
        );
        Ok(ParabolicSubset {
            subset,
            elements,
            member,
            longest,
            coset_rep,
        })
    }

    pub fn subset(&self) -> GenSet {
        self.subset
    }

    /// Elements of `W_I` in increasing id order.
    pub fn elements(&self) -> &[ElemId] {
        &self.elements
    }

    pub fn contains(&self, w: ElemId) -> bool {
        self.member[w.index()]
    }

    /// `w_{0,I}`
    pub fn longest(&self) -> ElemId {
        self.longest
    }

    /// `u = w₀ · w_{0,I}⁻¹`
    pub fn coset_rep(&self) -> ElemId {
        self.coset_rep
    }

    pub fn complement<'a>(&'a self, table: &'a ElementTable) -> impl Iterator<Item = ElemId> + 'a {
        table.ids().filter(move |&w| !self.contains(w))
    }

    /// `{w₀u : u ∉ W_I}`, sorted by id.
    pub fn flipped_complement(&self, table: &ElementTable) -> Vec<ElemId> {
        let mut out: Vec<ElemId> = self.complement(table).map(|u| table.mul(table.longest(), u)).collect();
        out.sort();
        out
    }
}
