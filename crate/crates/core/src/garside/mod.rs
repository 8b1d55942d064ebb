//! The spherical Artin–Tits braid group `Br_W` with Garside normal forms.
//!
//! Simple elements are the positive lifts of all of `W`; the Garside element
//! `Δ` is the lift of `w₀`. Every braid has a unique form `Δ^k x₁⋯x_m` with
//! each `x_i ∉ {e, w₀}` and every adjacent pair left-weighted
//! (`D_L(x_{i+1}) ⊆ D_R(x_i)`), which solves the word problem.

mod word;

use std::fmt::Write as _;
use std::sync::Arc;

use crate::coxeter::{CoxeterError, CoxeterSystem, ElemId, ElementTable, GenSet, SystemId, WeylElement};

pub use word::{BraidLetter, BraidWord, ParseBraidError};

/// `Δ^delta_power · factors[0] ⋯ factors[m-1]`, left-weighted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GarsideNF {
    system: SystemId,
    delta_power: i64,
    factors: Vec<ElemId>,
}

impl GarsideNF {
    pub fn system(&self) -> SystemId {
        self.system
    }

    pub fn delta_power(&self) -> i64 {
        self.delta_power
    }

    pub fn factors(&self) -> &[ElemId] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.delta_power == 0 && self.factors.is_empty()
    }

    /// Length of the positive part plus `k·ℓ(w₀)`, i.e. the exponent sum.
    pub fn exponent_sum(&self, table: &ElementTable) -> i64 {
        self.delta_power * table.length(table.longest()) as i64
            + self.factors.iter().map(|&x| table.length(x) as i64).sum::<i64>()
    }
}

/// Outcome of checking `FT = Δ_u · FT_I · Δ_{u⁻¹}` and
/// `FT_I = FT · ∇_{u⁻¹} · ∇_u` for `u = w₀ w_{0,I}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjugationCheck {
    pub conjugation: bool,
    pub costandard_factorization: bool,
}

impl ConjugationCheck {
    pub fn holds(&self) -> bool {
        self.conjugation && self.costandard_factorization
    }
}

/// Normal-form arithmetic for the braid group of one Coxeter system.
#[derive(Debug, Clone)]
pub struct BraidGroup {
    sys: Arc<CoxeterSystem>,
    /// `x ↦ w₀ x w₀`, conjugation by `Δ` on simple elements.
    flip: Vec<ElemId>,
}

struct Accumulator<'t> {
    table: &'t ElementTable,
    flip: &'t [ElemId],
    delta_power: i64,
    factors: Vec<ElemId>,
}

impl<'t> Accumulator<'t> {
    /// Right-multiplies by `Δ^j`, moving it to the front through the factors.
    fn push_delta(&mut self, j: i64) {
        self.delta_power += j;
        if j % 2 != 0 {
            for x in &mut self.factors {
                *x = self.flip[x.index()];
            }
        }
    }

    /// Right-multiplies by the simple braid lifting `x`.
    fn push_simple(&mut self, x: ElemId) {
        let t = self.table;
        if x == ElemId::IDENTITY {
            return;
        }
        if x == t.longest() {
            self.push_delta(1);
            return;
        }
        self.factors.push(x);
        // Local sliding until every adjacent pair is left-weighted. Each move
        // shifts a letter leftwards, so this terminates.
        loop {
            let mut changed = false;
            for i in (0..self.factors.len().saturating_sub(1)).rev() {
                changed |= self.left_weight_pair(i);
            }
            if !changed {
                break;
            }
        }
        let leading = self.factors.iter().take_while(|&&x| x == t.longest()).count();
        self.delta_power += leading as i64;
        self.factors.drain(..leading);
        while self.factors.last() == Some(&ElemId::IDENTITY) {
            self.factors.pop();
        }
    }

    fn left_weight_pair(&mut self, i: usize) -> bool {
        let t = self.table;
        let (mut a, mut b) = (self.factors[i], self.factors[i + 1]);
        let mut changed = false;
        loop {
            let movable = GenSet::from_bits(t.left_descents(b).bits() & !t.right_descents(a).bits());
            match movable.first() {
                Some(s) => {
                    a = t.rmul(a, s);
                    b = t.lmul(s, b);
                    changed = true;
                }
                None => break,
            }
        }
        self.factors[i] = a;
        self.factors[i + 1] = b;
        changed
    }
}

impl BraidGroup {
    pub fn new(sys: Arc<CoxeterSystem>) -> Result<Self, CoxeterError> {
        let table = sys.table()?;
        let w0 = table.longest();
        let flip = table.ids().map(|x| table.mul(table.mul(w0, x), w0)).collect();
        Ok(BraidGroup { sys, flip })
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.sys
    }

    pub fn table(&self) -> &ElementTable {
        self.sys.table().expect("table built in BraidGroup::new")
    }

    fn accumulator(&self, start: Option<&GarsideNF>) -> Accumulator<'_> {
        Accumulator {
            table: self.table(),
            flip: &self.flip,
            delta_power: start.map_or(0, |nf| nf.delta_power),
            factors: start.map_or_else(Vec::new, |nf| nf.factors.clone()),
        }
    }

    fn finish(&self, acc: Accumulator<'_>) -> GarsideNF {
        GarsideNF {
            system: self.sys.id(),
            delta_power: acc.delta_power,
            factors: acc.factors,
        }
    }

    fn check(&self, nf: &GarsideNF) -> Result<(), CoxeterError> {
        if nf.system == self.sys.id() {
            Ok(())
        } else {
            Err(CoxeterError::MixedSystems)
        }
    }

    pub fn identity(&self) -> GarsideNF {
        self.finish(self.accumulator(None))
    }

    /// The Garside element `Δ`, lift of `w₀`.
    pub fn delta(&self) -> GarsideNF {
        self.lift(self.table().longest())
    }

    /// Positive lift of a group element given by id.
    pub fn lift(&self, w: ElemId) -> GarsideNF {
        let mut acc = self.accumulator(None);
        acc.push_simple(w);
        self.finish(acc)
    }

    /// The simple braid `Δ_w`.
    pub fn positive_lift(&self, w: &WeylElement) -> Result<GarsideNF, CoxeterError> {
        Ok(self.lift(self.table().id_of(w)?))
    }

    /// `∇_w = (Δ_{w⁻¹})⁻¹`.
    pub fn negative_lift(&self, w: &WeylElement) -> Result<GarsideNF, CoxeterError> {
        let t = self.table();
        Ok(self.negative_lift_id(t.id_of(w)?))
    }

    pub fn negative_lift_id(&self, w: ElemId) -> GarsideNF {
        let t = self.table();
        self.inverse_unchecked(&self.lift(t.inverse(w)))
    }

    pub fn normal_form(&self, word: &BraidWord) -> Result<GarsideNF, CoxeterError> {
        word.check_rank(self.sys.rank())?;
        let t = self.table();
        let mut acc = self.accumulator(None);
        for l in word.letters() {
            if l.inverse {
                // σ⁻¹ = Δ⁻¹ · lift(w₀ s)
                acc.push_delta(-1);
                acc.push_simple(t.rmul(t.longest(), l.generator));
            } else {
                acc.push_simple(t.generator(l.generator));
            }
        }
        Ok(self.finish(acc))
    }

    pub fn multiply(&self, a: &GarsideNF, b: &GarsideNF) -> Result<GarsideNF, CoxeterError> {
        self.check(a)?;
        self.check(b)?;
        let mut acc = self.accumulator(Some(a));
        acc.push_delta(b.delta_power);
        for &x in &b.factors {
            acc.push_simple(x);
        }
        Ok(self.finish(acc))
    }

    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a GarsideNF>) -> Result<GarsideNF, CoxeterError> {
        items
            .into_iter()
            .try_fold(self.identity(), |acc, x| self.multiply(&acc, x))
    }

    pub fn inverse(&self, a: &GarsideNF) -> Result<GarsideNF, CoxeterError> {
        self.check(a)?;
        Ok(self.inverse_unchecked(a))
    }

    fn inverse_unchecked(&self, a: &GarsideNF) -> GarsideNF {
        let t = self.table();
        let mut acc = self.accumulator(None);
        for &x in a.factors.iter().rev() {
            // x⁻¹ = Δ⁻¹ · lift(w₀ x⁻¹)
            acc.push_delta(-1);
            acc.push_simple(t.mul(t.longest(), t.inverse(x)));
        }
        acc.push_delta(-a.delta_power);
        self.finish(acc)
    }

    /// Normal forms are canonical, so equality is componentwise.
    pub fn equal(&self, a: &GarsideNF, b: &GarsideNF) -> Result<bool, CoxeterError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a == b)
    }

    /// `Δ_{w_{0,I}}²`; for `I = S` this is the full twist of `W`.
    pub fn full_twist(&self, subset: GenSet) -> Result<GarsideNF, CoxeterError> {
        self.sys.check_subset(subset)?;
        let d = self.lift(self.table().longest_in(subset));
        self.multiply(&d, &d)
    }

    /// The full twist commutes with every Artin generator.
    pub fn is_full_twist_central(&self) -> bool {
        let ft = self.full_twist(self.sys.generators()).expect("full generating set");
        let t = self.table();
        (0..self.sys.rank()).all(|s| {
            let g = self.lift(t.generator(s));
            let g_inv = self.inverse_unchecked(&g);
            let a = self.multiply(&ft, &g).unwrap();
            let b = self.multiply(&g, &ft).unwrap();
            let c = self.multiply(&ft, &g_inv).unwrap();
            let d = self.multiply(&g_inv, &ft).unwrap();
            a == b && c == d
        })
    }

    pub fn check_conjugation_identity(&self, subset: GenSet) -> Result<ConjugationCheck, CoxeterError> {
        let p = self.sys.parabolic(subset)?;
        let t = self.table();
        let u = p.coset_rep();
        let ft = self.full_twist(self.sys.generators())?;
        let ft_levi = self.full_twist(subset)?;
        let conj = self.product([&self.lift(u), &ft_levi, &self.lift(t.inverse(u))])?;
        let fact = self.product([&ft, &self.negative_lift_id(t.inverse(u)), &self.negative_lift_id(u)])?;
        Ok(ConjugationCheck {
            conjugation: conj == ft,
            costandard_factorization: fact == ft_levi,
        })
    }

    /// A word representing `nf`: `k` copies of a reduced word for `Δ^{±1}`
    /// followed by the canonical words of the factors.
    pub fn word_of(&self, nf: &GarsideNF) -> BraidWord {
        let t = self.table();
        let delta = BraidWord::positive(t.word(t.longest()));
        let delta_part = if nf.delta_power >= 0 { delta } else { delta.inverse() };
        let mut letters = Vec::new();
        for _ in 0..nf.delta_power.unsigned_abs() {
            letters.extend_from_slice(delta_part.letters());
        }
        for &x in &nf.factors {
            letters.extend(t.word(x).iter().map(|&s| BraidLetter::pos(s)));
        }
        BraidWord(letters)
    }

    pub fn is_left_weighted(&self, nf: &GarsideNF) -> bool {
        let t = self.table();
        nf.factors.iter().all(|&x| x != ElemId::IDENTITY && x != t.longest())
            && nf
                .factors
                .windows(2)
                .all(|p| t.left_descents(p[1]).is_subset(t.right_descents(p[0])))
    }

    /// `Δ^k · [w₁ | w₂ | …]` with 1-based canonical words.
    pub fn render(&self, nf: &GarsideNF) -> String {
        let t = self.table();
        let mut s = format!("\u{394}^{} \u{b7} [", nf.delta_power);
        for (i, &x) in nf.factors.iter().enumerate() {
            if i > 0 {
                s.push_str(" | ");
            }
            let _ = write!(s, "{}", crate::coxeter::word_string(t.word(x)));
        }
        s.push(']');
        s
    }
}
