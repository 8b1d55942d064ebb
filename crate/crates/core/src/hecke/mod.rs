//! The Iwahori–Hecke algebra of a finite Weyl group over `ℤ[v, v⁻¹]`.
//!
//! Normalization: `H_s² = 1 + (v⁻¹ − v) H_s`, so `H_s⁻¹ = H_s + (v − v⁻¹)`.
//! The standard class `H_w` stands for `Δ_w`; the costandard class
//! `N_w = (H_{w⁻¹})⁻¹` stands for `∇_w`.

mod render;

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::coxeter::{CoxeterError, CoxeterSystem, ElemId, ElementTable, GenSet, SystemId, WeylElement};
use crate::garside::BraidWord;
use crate::laurent::LaurentPoly;

pub use render::ParseHeckeError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Parse(#[from] ParseHeckeError),
}

/// Finite combination `Σ p_w · b_w` over some basis `{b_w}` of the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coefficients {
    system: SystemId,
    terms: BTreeMap<ElemId, LaurentPoly>,
}

impl Coefficients {
    fn new(system: SystemId) -> Self {
        Coefficients {
            system,
            terms: BTreeMap::new(),
        }
    }

    fn from_dense(system: SystemId, dense: Vec<LaurentPoly>) -> Self {
        let terms = dense
            .into_iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| (ElemId(i as u32), p))
            .collect();
        Coefficients { system, terms }
    }

    fn to_dense(&self, n: usize) -> Vec<LaurentPoly> {
        let mut v = vec![LaurentPoly::zero(); n];
        for (w, p) in &self.terms {
            v[w.index()] = p.clone();
        }
        v
    }

    pub fn system(&self) -> SystemId {
        self.system
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: ElemId) -> LaurentPoly {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    /// Elements with non-zero coefficient, in increasing id order.
    pub fn support(&self) -> impl Iterator<Item = ElemId> + '_ {
        self.terms.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (ElemId, &LaurentPoly)> {
        self.terms.iter().map(|(w, p)| (*w, p))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: ElemId, p: &LaurentPoly) {
        let entry = self.terms.entry(w).or_default();
        *entry += p;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    /// Keeps only the terms for which `keep` holds.
    pub fn restricted(&self, keep: impl Fn(ElemId) -> bool) -> Self {
        Coefficients {
            system: self.system,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(**w))
                .map(|(w, p)| (*w, p.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Coefficients::new(self.system);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(w, p)| (*w, p * c)).collect();
        }
        out
    }

    pub fn bar_coefficients(&self) -> Self {
        Coefficients {
            system: self.system,
            terms: self.terms.iter().map(|(w, p)| (*w, p.bar())).collect(),
        }
    }
}

impl Add<&Coefficients> for &Coefficients {
    type Output = Coefficients;
    fn add(self, rhs: &Coefficients) -> Coefficients {
        assert_eq!(self.system, rhs.system, "adding elements of different systems");
        let mut out = self.clone();
        for (w, p) in &rhs.terms {
            out.add_term(*w, p);
        }
        out
    }
}

impl Neg for &Coefficients {
    type Output = Coefficients;
    fn neg(self) -> Coefficients {
        Coefficients {
            system: self.system,
            terms: self.terms.iter().map(|(w, p)| (*w, -p)).collect(),
        }
    }
}

impl Sub<&Coefficients> for &Coefficients {
    type Output = Coefficients;
    fn sub(self, rhs: &Coefficients) -> Coefficients {
        self + &(-rhs)
    }
}

/// An element of the Hecke algebra in the standard basis `{H_w}`.
pub type HeckeElt = Coefficients;

/// Coefficients `d_w` of an element written as `Σ d_w · N_w` in the
/// costandard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostandardExpansion(pub Coefficients);

/// Arithmetic in the Hecke algebra of one system, with per-element caches
/// of the costandard classes.
#[derive(Debug)]
pub struct HeckeAlgebra {
    sys: Arc<CoxeterSystem>,
    costandard: Vec<OnceLock<HeckeElt>>,
    standard_expansions: OnceLock<Vec<CostandardExpansion>>,
}

impl HeckeAlgebra {
    pub fn new(sys: Arc<CoxeterSystem>) -> Result<Self, HeckeError> {
        let n = sys.table()?.len();
        Ok(HeckeAlgebra {
            sys,
            costandard: (0..n).map(|_| OnceLock::new()).collect(),
            standard_expansions: OnceLock::new(),
        })
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.sys
    }

    pub fn table(&self) -> &ElementTable {
        self.sys.table().expect("table built in HeckeAlgebra::new")
    }

    fn id(&self) -> SystemId {
        self.sys.id()
    }

    fn check(&self, h: &Coefficients) -> Result<(), CoxeterError> {
        if h.system == self.id() {
            Ok(())
        } else {
            Err(CoxeterError::MixedSystems)
        }
    }

    pub fn zero(&self) -> HeckeElt {
        Coefficients::new(self.id())
    }

    pub fn one(&self) -> HeckeElt {
        self.scalar(LaurentPoly::one())
    }

    pub fn scalar(&self, p: LaurentPoly) -> HeckeElt {
        self.monomial(ElemId::IDENTITY, p)
    }

    /// `p · H_w`
    pub fn monomial(&self, w: ElemId, p: LaurentPoly) -> HeckeElt {
        let mut h = self.zero();
        h.add_term(w, &p);
        h
    }

    /// `H_w`
    pub fn standard(&self, w: ElemId) -> HeckeElt {
        self.monomial(w, LaurentPoly::one())
    }

    pub fn standard_of(&self, w: &WeylElement) -> Result<HeckeElt, HeckeError> {
        Ok(self.standard(self.table().id_of(w)?))
    }

    pub fn from_dense(&self, dense: &[LaurentPoly]) -> HeckeElt {
        Coefficients::from_dense(self.id(), dense.to_vec())
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (ElemId, LaurentPoly)>) -> HeckeElt {
        let mut h = self.zero();
        for (w, p) in terms {
            h.add_term(w, &p);
        }
        h
    }

    fn right_gen_dense(&self, h: &[LaurentPoly], s: usize) -> Vec<LaurentPoly> {
        let t = self.table();
        let mut out = vec![LaurentPoly::zero(); h.len()];
        for (i, p) in h.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let w = ElemId(i as u32);
            let ws = t.rmul(w, s);
            out[ws.index()] += p;
            if t.right_descents(w).contains(s) {
                out[i].add_quadratic_multiple(p);
            }
        }
        out
    }

    fn left_gen_dense(&self, s: usize, h: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let t = self.table();
        let mut out = vec![LaurentPoly::zero(); h.len()];
        for (i, p) in h.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let w = ElemId(i as u32);
            let sw = t.lmul(s, w);
            out[sw.index()] += p;
            if t.left_descents(w).contains(s) {
                out[i].add_quadratic_multiple(p);
            }
        }
        out
    }

    /// `h · H_s`
    pub fn mul_gen_right(&self, h: &HeckeElt, s: usize) -> HeckeElt {
        let n = self.table().len();
        Coefficients::from_dense(self.id(), self.right_gen_dense(&h.to_dense(n), s))
    }

    /// `H_s · h`
    pub fn mul_gen_left(&self, s: usize, h: &HeckeElt) -> HeckeElt {
        let n = self.table().len();
        Coefficients::from_dense(self.id(), self.left_gen_dense(s, &h.to_dense(n)))
    }

    /// `h · H_s^{±1}`
    fn right_gen_signed_dense(&self, h: &[LaurentPoly], s: usize, inverse: bool) -> Vec<LaurentPoly> {
        let mut out = self.right_gen_dense(h, s);
        if inverse {
            // H_s⁻¹ = H_s + (v − v⁻¹)
            for (o, p) in out.iter_mut().zip(h) {
                o.add_scaled_shift(p, 1, 1);
                o.add_scaled_shift(p, -1, -1);
            }
        }
        out
    }

    /// `(Σ d_x N_x) · H_s` in costandard coordinates.
    fn costandard_right_gen_dense(&self, d: &[LaurentPoly], s: usize) -> Vec<LaurentPoly> {
        let t = self.table();
        let mut out = vec![LaurentPoly::zero(); d.len()];
        for (i, p) in d.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let x = ElemId(i as u32);
            out[t.rmul(x, s).index()] += p;
            if !t.right_descents(x).contains(s) {
                out[i].add_quadratic_multiple(p);
            }
        }
        out
    }

    /// Walks the tree of canonical-word prefixes covering `targets`, so each
    /// visited element costs one `step` from its parent.
    fn sweep(
        &self,
        start: Vec<LaurentPoly>,
        targets: impl IntoIterator<Item = ElemId>,
        step: impl Fn(&[LaurentPoly], usize) -> Vec<LaurentPoly>,
        mut visit: impl FnMut(ElemId, &[LaurentPoly]),
    ) {
        let t = self.table();
        let n = t.len();
        let mut needed = vec![false; n];
        for w in targets {
            let mut x = w;
            while !needed[x.index()] {
                needed[x.index()] = true;
                match t.word(x).last() {
                    Some(&s) => x = t.rmul(x, s),
                    None => break,
                }
            }
        }
        let mut children: Vec<Vec<(ElemId, usize)>> = vec![Vec::new(); n];
        for x in t.ids().filter(|x| needed[x.index()] && *x != ElemId::IDENTITY) {
            let s = *t.word(x).last().unwrap();
            children[t.rmul(x, s).index()].push((x, s));
        }
        let mut stack: Vec<(ElemId, Vec<LaurentPoly>)> = vec![(ElemId::IDENTITY, start)];
        while let Some((x, cur)) = stack.pop() {
            visit(x, &cur);
            for &(child, s) in &children[x.index()] {
                stack.push((child, step(&cur, s)));
            }
        }
    }

    /// Calls `visit(w, a · H_w)` (dense, standard basis) for every `w` in
    /// `targets`, and possibly for some of their prefixes.
    pub fn for_each_right_product(
        &self,
        a: &HeckeElt,
        targets: impl IntoIterator<Item = ElemId>,
        visit: impl FnMut(ElemId, &[LaurentPoly]),
    ) {
        let start = a.to_dense(self.table().len());
        self.sweep(start, targets, |h, s| self.right_gen_dense(h, s), visit);
    }

    /// Calls `visit(w, a · N_w)` (dense, standard basis), using
    /// `N_w = N_{ws} H_s⁻¹`.
    pub fn for_each_costandard_product(
        &self,
        a: &HeckeElt,
        targets: impl IntoIterator<Item = ElemId>,
        visit: impl FnMut(ElemId, &[LaurentPoly]),
    ) {
        let start = a.to_dense(self.table().len());
        self.sweep(start, targets, |h, s| self.right_gen_signed_dense(h, s, true), visit);
    }

    /// Calls `visit(w, ·)` with the dense costandard coordinates of `a · H_w`,
    /// where `e` holds the costandard coordinates of `a`.
    pub fn for_each_expanded_product(
        &self,
        e: &CostandardExpansion,
        targets: impl IntoIterator<Item = ElemId>,
        visit: impl FnMut(ElemId, &[LaurentPoly]),
    ) {
        let start = e.0.to_dense(self.table().len());
        self.sweep(start, targets, |d, s| self.costandard_right_gen_dense(d, s), visit);
    }

    pub fn mul(&self, a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt, HeckeError> {
        self.check(a)?;
        self.check(b)?;
        let n = self.table().len();
        let mut acc = vec![LaurentPoly::zero(); n];
        self.for_each_right_product(a, b.support(), |w, prod| {
            let c = b.coeff(w);
            if c.is_zero() {
                return;
            }
            for (slot, p) in acc.iter_mut().zip(prod) {
                if p.is_zero() {
                    continue;
                }
                if c.is_one() {
                    *slot += p;
                } else {
                    *slot += &(p * &c);
                }
            }
        });
        Ok(Coefficients::from_dense(self.id(), acc))
    }

    /// `H_w⁻¹ = H_{s_k}⁻¹ ⋯ H_{s_1}⁻¹` for a reduced word `s_1⋯s_k` of `w`.
    pub fn inverse_standard(&self, w: ElemId) -> HeckeElt {
        let t = self.table();
        let mut h = self.one().to_dense(t.len());
        for &s in t.word(w).iter().rev() {
            h = self.right_gen_signed_dense(&h, s, true);
        }
        Coefficients::from_dense(self.id(), h)
    }

    pub fn inverse_standard_of(&self, w: &WeylElement) -> Result<HeckeElt, HeckeError> {
        Ok(self.inverse_standard(self.table().id_of(w)?))
    }

    /// `N_w = (H_{w⁻¹})⁻¹`, cached. Uses `N_w = N_{ws} · H_s⁻¹` for the last
    /// letter `s` of the canonical word.
    pub fn costandard(&self, w: ElemId) -> &HeckeElt {
        if let Some(h) = self.costandard[w.index()].get() {
            return h;
        }
        let t = self.table();
        let value = match t.word(w).last() {
            None => self.one(),
            Some(&s) => {
                let prev = self.costandard(t.rmul(w, s));
                let n = t.len();
                Coefficients::from_dense(self.id(), self.right_gen_signed_dense(&prev.to_dense(n), s, true))
            }
        };
        self.costandard[w.index()].get_or_init(|| value)
    }

    pub fn costandard_of(&self, w: &WeylElement) -> Result<HeckeElt, HeckeError> {
        Ok(self.costandard(self.table().id_of(w)?).clone())
    }

    /// Solves `h = Σ d_w N_w` by back-substitution: the costandard basis is
    /// unitriangular with respect to Bruhat order, so processing the support
    /// from the top of the linear extension down peels off one coefficient at
    /// a time.
    pub fn expand_costandard(&self, h: &HeckeElt) -> Result<CostandardExpansion, HeckeError> {
        self.check(h)?;
        let n = self.table().len();
        let mut work = h.to_dense(n);
        let mut out = Coefficients::new(self.id());
        for i in (0..n).rev() {
            if work[i].is_zero() {
                continue;
            }
            let w = ElemId(i as u32);
            let d = std::mem::take(&mut work[i]);
            for (x, c) in self.costandard(w).terms() {
                if x != w {
                    work[x.index()] -= &(&d * c);
                }
            }
            out.terms.insert(w, d);
        }
        Ok(CostandardExpansion(out))
    }

    /// Costandard-basis coefficients of `H_w`, for all `w` at once (cached).
    ///
    /// Built letter by letter from `N_x H_s = N_{xs}` when `xs < x` and
    /// `N_x H_s = N_{xs} + (v⁻¹ − v) N_x` when `xs > x`, which avoids a
    /// triangular solve per element.
    pub fn standard_expansion(&self, w: ElemId) -> &CostandardExpansion {
        let all = self.standard_expansions.get_or_init(|| {
            let t = self.table();
            let mut out = vec![None; t.len()];
            self.for_each_expanded_product(&CostandardExpansion(self.one()), t.ids(), |w, d| {
                out[w.index()] = Some(CostandardExpansion(Coefficients::from_dense(self.id(), d.to_vec())));
            });
            out.into_iter()
                .map(|e| e.expect("every element visited"))
                .collect::<Vec<_>>()
        });
        &all[w.index()]
    }

    /// `Σ d_w N_w` back in the standard basis.
    pub fn from_costandard(&self, e: &CostandardExpansion) -> Result<HeckeElt, HeckeError> {
        self.check(&e.0)?;
        let n = self.table().len();
        let mut acc = vec![LaurentPoly::zero(); n];
        for (w, d) in e.0.terms() {
            for (x, c) in self.costandard(w).terms() {
                acc[x.index()] += &(d * c);
            }
        }
        Ok(Coefficients::from_dense(self.id(), acc))
    }

    /// The bar involution: `v ↦ v⁻¹`, `H_w ↦ (H_{w⁻¹})⁻¹ = N_w`.
    pub fn bar(&self, h: &HeckeElt) -> Result<HeckeElt, HeckeError> {
        let e = CostandardExpansion(h.bar_coefficients());
        self.from_costandard(&e)
    }

    /// Image of a braid word under `σ_i ↦ H_{s_i}`, `σ_i⁻¹ ↦ H_{s_i}⁻¹`.
    pub fn eval_braid(&self, word: &BraidWord) -> Result<HeckeElt, HeckeError> {
        word.check_rank(self.sys.rank())?;
        let mut h = self.one().to_dense(self.table().len());
        for l in word.letters() {
            h = self.right_gen_signed_dense(&h, l.generator, l.inverse);
        }
        Ok(Coefficients::from_dense(self.id(), h))
    }

    /// `H_{w_{0,I}}²`, the class of the full twist of `W_I`.
    pub fn full_twist_class(&self, subset: GenSet) -> Result<HeckeElt, HeckeError> {
        self.sys.check_subset(subset)?;
        let w = self.table().longest_in(subset);
        let h = self.standard(w);
        self.mul(&h, &h)
    }
}
