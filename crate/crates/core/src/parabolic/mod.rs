//! Parabolic induction at the level of Hecke algebras.
//!
//! `H_L` (the Hecke algebra of `W_I`) is realized inside `H_G` as the span
//! of `H_w`, `w ∈ W_I`. Induction is that inclusion. Its left adjoint keeps
//! the standard-basis coefficients on `W_I`; its right adjoint keeps the
//! costandard-basis coefficients on `W_I`. The duality being checked is
//!
//! ```text
//! right_adjoint(h) = left_adjoint(FT_rel · h),   FT_rel = FT_L⁻¹ · FT_G.
//! ```

use std::sync::Arc;

use thiserror::Error;

use crate::coxeter::{word_string, CoxeterError, ElemId, ElementTable, GenSet, ParabolicSubset};
use crate::garside::BraidWord;
use crate::hecke::{CostandardExpansion, HeckeAlgebra, HeckeElt, HeckeError};
use crate::laurent::LaurentPoly;
use crate::report::{mismatch, CheckResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParabolicError {
    #[error("support element {element} lies outside the parabolic subgroup {subset}")]
    SupportOutsideParabolic { element: String, subset: GenSet },
    #[error(transparent)]
    Hecke(#[from] HeckeError),
}

impl From<CoxeterError> for ParabolicError {
    fn from(e: CoxeterError) -> Self {
        ParabolicError::Hecke(e.into())
    }
}

/// Renders an element as its 1-based canonical word in brackets.
pub fn element_label(table: &ElementTable, w: ElemId) -> String {
    format!("[{}]", word_string(table.word(w)))
}

/// Everything attached to one parabolic subset `I`: the subgroup, the full
/// twists and the relative full twist with its inverse.
#[derive(Debug)]
pub struct ParabolicContext {
    alg: Arc<HeckeAlgebra>,
    parabolic: ParabolicSubset,
    ft_g: HeckeElt,
    ft_l: HeckeElt,
    ft_rel: HeckeElt,
    ft_rel_inv: HeckeElt,
}

impl ParabolicContext {
    pub fn new(alg: Arc<HeckeAlgebra>, subset: GenSet) -> Result<Self, ParabolicError> {
        let t = alg.table();
        let parabolic = ParabolicSubset::new(t, subset)?;
        let twist = |w: ElemId| {
            let half = BraidWord::positive(t.word(w));
            half.concat(&half)
        };
        let ft_g_word = twist(t.longest());
        let ft_l_word = twist(parabolic.longest());
        let rel_word = ft_l_word.inverse().concat(&ft_g_word);
        Ok(ParabolicContext {
            ft_g: alg.eval_braid(&ft_g_word)?,
            ft_l: alg.eval_braid(&ft_l_word)?,
            ft_rel: alg.eval_braid(&rel_word)?,
            ft_rel_inv: alg.eval_braid(&rel_word.inverse())?,
            alg,
            parabolic,
        })
    }

    pub fn algebra(&self) -> &Arc<HeckeAlgebra> {
        &self.alg
    }

    pub fn table(&self) -> &ElementTable {
        self.alg.table()
    }

    pub fn parabolic(&self) -> &ParabolicSubset {
        &self.parabolic
    }

    pub fn subset(&self) -> GenSet {
        self.parabolic.subset()
    }

    /// Minimal-length `u` with `w₀ = u · w_{0,I}`.
    pub fn coset_rep(&self) -> ElemId {
        self.parabolic.coset_rep()
    }

    pub fn ft_g(&self) -> &HeckeElt {
        &self.ft_g
    }

    pub fn ft_l(&self) -> &HeckeElt {
        &self.ft_l
    }

    pub fn ft_rel(&self) -> &HeckeElt {
        &self.ft_rel
    }

    pub fn ft_rel_inv(&self) -> &HeckeElt {
        &self.ft_rel_inv
    }

    fn in_levi(&self, w: ElemId) -> bool {
        self.parabolic.contains(w)
    }

    fn label(&self, w: ElemId) -> String {
        element_label(self.table(), w)
    }

    /// Induction: the identity on coefficients, after checking the support.
    pub fn incl(&self, h: &HeckeElt) -> Result<HeckeElt, ParabolicError> {
        match h.support().find(|&w| !self.in_levi(w)) {
            Some(w) => Err(ParabolicError::SupportOutsideParabolic {
                element: self.label(w),
                subset: self.subset(),
            }),
            None => Ok(h.clone()),
        }
    }

    /// Left adjoint of induction: standard-basis truncation to `W_I`.
    pub fn proj_std(&self, h: &HeckeElt) -> HeckeElt {
        h.restricted(|w| self.in_levi(w))
    }

    /// Right adjoint of induction: costandard-basis truncation to `W_I`.
    pub fn proj_cos(&self, h: &HeckeElt) -> Result<HeckeElt, ParabolicError> {
        let e = self.alg.expand_costandard(h)?;
        Ok(self.reassemble(&e))
    }

    /// `Σ_{w ∈ W_I} d_w N_w`; costandard classes of `W_I` coincide with those
    /// of `W` for `w ∈ W_I`.
    fn reassemble(&self, e: &CostandardExpansion) -> HeckeElt {
        let kept = CostandardExpansion(e.0.restricted(|w| self.in_levi(w)));
        self.alg.from_costandard(&kept).expect("same system")
    }

    /// The duality identity on a single element.
    pub fn duality_holds_for(&self, h: &HeckeElt) -> Result<bool, ParabolicError> {
        let lhs = self.proj_cos(h)?;
        let rhs = self.proj_std(&self.alg.mul(&self.ft_rel, h)?);
        Ok(lhs == rhs)
    }

    /// The duality identity on every standard basis element `H_w`.
    pub fn serre_duality_check(&self) -> Vec<CheckResult> {
        let t = self.table();
        let n = t.len();
        let mut rhs_by_w: Vec<Option<HeckeElt>> = vec![None; n];
        self.alg.for_each_right_product(&self.ft_rel, t.ids(), |w, prod| {
            let mut h = self.alg.zero();
            for &x in self.parabolic.elements() {
                h.add_term(x, &prod[x.index()]);
            }
            rhs_by_w[w.index()] = Some(h);
        });
        t.ids()
            .map(|w| {
                let lhs = self.reassemble(self.alg.standard_expansion(w));
                let rhs = rhs_by_w[w.index()].take().expect("every element visited");
                CheckResult::new("serre_duality", self.label(w), lhs == rhs, || {
                    mismatch(&self.alg.render(&lhs), &self.alg.render(&rhs))
                })
            })
            .collect()
    }

    /// `h − incl(proj_cos(h))` has no costandard coefficient on `W_I`.
    pub fn recollement_check(&self, h: &HeckeElt) -> Result<bool, ParabolicError> {
        let remainder = h - &self.incl(&self.proj_cos(h)?)?;
        let e = self.alg.expand_costandard(&remainder)?;
        let clean = e.0.support().all(|w| !self.in_levi(w));
        Ok(clean)
    }

    /// Multiplication by `H_{w₀}` and by the full twist carry the kernel of
    /// the right adjoint onto the kernel of the left adjoint, and the flipped
    /// complement `τ = w₀(W ∖ W_I)` spans the same space in both bases.
    pub fn kernel_transport_check(&self) -> Vec<CheckResult> {
        let t = self.table();
        let n = t.len();
        let complement: Vec<ElemId> = self.parabolic.complement(t).collect();
        let mut by_longest: Vec<Option<HeckeElt>> = vec![None; n];
        let mut by_twist: Vec<Option<HeckeElt>> = vec![None; n];
        let w0 = self.alg.standard(t.longest());
        self.alg
            .for_each_costandard_product(&w0, complement.iter().copied(), |u, d| {
                by_longest[u.index()] = Some(self.alg.from_dense(d));
            });
        self.alg
            .for_each_costandard_product(&self.ft_g, complement.iter().copied(), |u, d| {
                by_twist[u.index()] = Some(self.alg.from_dense(d));
            });
        let mut out = Vec::new();
        for &u in &complement {
            let lhs = by_longest[u.index()].take().expect("visited");
            let rhs = self.alg.standard(t.mul(t.longest(), u));
            out.push(CheckResult::new(
                "longest_times_costandard",
                self.label(u),
                lhs == rhs,
                || mismatch(&self.alg.render(&lhs), &self.alg.render(&rhs)),
            ));
            let twisted = by_twist[u.index()].take().expect("visited");
            let stray: Vec<String> = twisted
                .support()
                .filter(|&w| self.in_levi(w))
                .map(|w| self.label(w))
                .collect();
            out.push(CheckResult::new(
                "twist_kernel_support",
                self.label(u),
                stray.is_empty(),
                || format!("support meets W_I at {}", stray.join(", ")),
            ));
        }
        let tau = self.parabolic.flipped_complement(t);
        let mut member = vec![false; t.len()];
        for &w in &tau {
            member[w.index()] = true;
        }
        let closed = t.is_downward_closed(&tau);
        let escaping: Vec<String> = tau
            .iter()
            .filter(|&&w| self.alg.costandard(w).support().any(|x| !member[x.index()]))
            .map(|&w| self.label(w))
            .collect();
        out.push(CheckResult::new(
            "flipped_complement_spans",
            format!("|τ| = {}", tau.len()),
            closed && escaping.is_empty(),
            || {
                if closed {
                    format!("costandard classes leaving τ: {}", escaping.join(", "))
                } else {
                    "τ is not downward closed".to_string()
                }
            },
        ));
        out
    }

    /// The left adjoint sends `FT_G` to `FT_L`.
    pub fn restricted_twist_check(&self) -> CheckResult {
        let lhs = self.proj_std(&self.ft_g);
        CheckResult::new("restricted_full_twist", "FT_G", lhs == self.ft_l, || {
            mismatch(&self.alg.render(&lhs), &self.alg.render(&self.ft_l))
        })
    }

    /// For `c = H_u⁻¹ (N_u − H_u)`, the costandard support of `c` lies in
    /// `{u⁻¹v : v < u}`, and that set avoids `W_I`.
    pub fn cone_containment_check(&self) -> CheckResult {
        let t = self.table();
        let u = self.coset_rep();
        let diff = self.alg.costandard(u) - &self.alg.standard(u);
        let c = self.alg.mul(&self.alg.inverse_standard(u), &diff).expect("same system");
        let support = self.alg.expand_costandard(&c).expect("same system");
        let uinv = t.inverse(u);
        let mut allowed = vec![false; t.len()];
        for v in t.lower_set(u).into_iter().filter(|&v| v != u) {
            allowed[t.mul(uinv, v).index()] = true;
        }
        let outside: Vec<String> = support
            .0
            .support()
            .filter(|w| !allowed[w.index()])
            .map(|w| self.label(w))
            .collect();
        let meets: Vec<String> = self
            .parabolic
            .elements()
            .iter()
            .filter(|w| allowed[w.index()])
            .map(|&w| self.label(w))
            .collect();
        CheckResult::new(
            "cone_containment",
            self.label(u),
            outside.is_empty() && meets.is_empty(),
            || {
                format!(
                    "support outside bound: [{}]; bound meets W_I at: [{}]",
                    outside.join(", "),
                    meets.join(", ")
                )
            },
        )
    }

    /// `FT_rel` maps costandard classes off `W_I` into the standard span off
    /// `W_I`, and `FT_rel⁻¹` maps standard classes off `W_I` back into the
    /// costandard span off `W_I`. Together these make multiplication by
    /// `FT_rel` a bijection between the two spans.
    pub fn kernel_swap_check(&self) -> Vec<CheckResult> {
        let t = self.table();
        let n = t.len();
        let complement: Vec<ElemId> = self.parabolic.complement(t).collect();
        let levi_hits = |d: &[LaurentPoly]| -> Vec<String> {
            self.parabolic
                .elements()
                .iter()
                .filter(|w| !d[w.index()].is_zero())
                .map(|&w| self.label(w))
                .collect()
        };
        let mut fwd: Vec<Vec<String>> = vec![Vec::new(); n];
        self.alg
            .for_each_costandard_product(&self.ft_rel, complement.iter().copied(), |u, d| {
                fwd[u.index()] = levi_hits(d);
            });
        let mut back: Vec<Vec<String>> = vec![Vec::new(); n];
        let inv = self.alg.expand_costandard(&self.ft_rel_inv).expect("same system");
        self.alg
            .for_each_expanded_product(&inv, complement.iter().copied(), |u, d| {
                back[u.index()] = levi_hits(d);
            });
        complement
            .iter()
            .map(|&u| {
                let (f, b) = (&fwd[u.index()], &back[u.index()]);
                CheckResult::new("kernel_swap", self.label(u), f.is_empty() && b.is_empty(), || {
                    format!(
                        "forward meets W_I at [{}]; inverse meets W_I at [{}]",
                        f.join(", "),
                        b.join(", ")
                    )
                })
            })
            .collect()
    }

    /// Both adjoints are left inverse to induction on the standard and
    /// costandard bases of `H_L`.
    pub fn adjunction_unit_check(&self) -> Vec<CheckResult> {
        let mut out = Vec::new();
        for &w in self.parabolic.elements() {
            for x in [self.alg.standard(w), self.alg.costandard(w).clone()] {
                let i = self.incl(&x).expect("supported on W_I");
                let std = self.proj_std(&i);
                let cos = self.proj_cos(&i).expect("same system");
                out.push(CheckResult::new(
                    "adjunction_unit",
                    self.label(w),
                    std == x && cos == x,
                    || mismatch(&self.alg.render(&std), &self.alg.render(&cos)),
                ));
            }
        }
        out
    }

    /// `proj(incl(a) · h) = a · proj(h)` for both adjoints.
    pub fn levi_linearity_holds(&self, a: &HeckeElt, h: &HeckeElt) -> Result<bool, ParabolicError> {
        let ah = self.alg.mul(&self.incl(a)?, h)?;
        let std_ok = self.proj_std(&ah) == self.alg.mul(a, &self.proj_std(h))?;
        let cos_ok = self.proj_cos(&ah)? == self.alg.mul(a, &self.proj_cos(h)?)?;
        Ok(std_ok && cos_ok)
    }
}

/// Whether the parabolic `I = {s_1, …, s_{r−1}}` of type `A_{n−1}` is the
/// block `(r, 1, …, 1)`: the first `r − 1` generators.
pub fn is_leading_block(subset: GenSet) -> bool {
    subset.bits() & (subset.bits() + 1) == 0
}

/// Element of `H_L` with the given coefficients, erroring on support off `W_I`.
pub fn levi_element(
    ctx: &ParabolicContext,
    terms: impl IntoIterator<Item = (ElemId, LaurentPoly)>,
) -> Result<HeckeElt, ParabolicError> {
    ctx.incl(&ctx.alg.from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;
    use crate::report::Status;

    fn ctx(name: &str, subset: &[usize]) -> ParabolicContext {
        let alg = Arc::new(HeckeAlgebra::new(Arc::new(CoxeterSystem::named(name).unwrap())).unwrap());
        ParabolicContext::new(alg, subset.iter().copied().collect()).unwrap()
    }

    fn q() -> LaurentPoly {
        LaurentPoly::quadratic_coeff()
    }

    #[test]
    fn a1_projections() {
        let c = ctx("A1", &[]);
        let a = c.algebra();
        let s = c.table().generator(0);
        let hs = a.standard(s);
        let cube = a.mul(&a.mul(&hs, &hs).unwrap(), &hs).unwrap();
        assert_eq!(c.proj_std(&cube), a.scalar(q()));
        assert_eq!(c.proj_std(&hs), a.zero());
        assert_eq!(c.proj_cos(&hs).unwrap(), a.scalar(q()));
        assert_eq!(c.proj_cos(a.costandard(s)).unwrap(), a.zero());
        assert_eq!(c.proj_cos(&a.one()).unwrap(), a.one());
        assert_eq!(c.ft_rel(), &a.mul(&hs, &hs).unwrap());
        assert_eq!(c.proj_std(c.ft_rel()), a.one());
        assert!(c.serre_duality_check().iter().all(CheckResult::passed));
    }

    #[test]
    fn incl_rejects_outside_support() {
        let c = ctx("A2", &[0]);
        let a = c.algebra();
        let t = c.table();
        assert_eq!(c.incl(&a.one()).unwrap(), a.one());
        assert_eq!(c.incl(&a.standard(t.generator(0))).unwrap(), a.standard(t.generator(0)));
        assert!(matches!(
            c.incl(&a.standard(t.generator(1))),
            Err(ParabolicError::SupportOutsideParabolic { .. })
        ));
        assert_eq!(
            c.incl(c.ft_l()).unwrap(),
            a.full_twist_class(GenSet::single(0)).unwrap()
        );
    }

    #[test]
    fn relative_twist_factorizes() {
        for (name, subset) in [("A2", &[0][..]), ("B2", &[1][..]), ("A3", &[0, 2][..])] {
            let c = ctx(name, subset);
            let a = c.algebra();
            assert_eq!(&a.mul(c.ft_l(), c.ft_rel()).unwrap(), c.ft_g());
            assert_eq!(a.mul(c.ft_rel(), c.ft_rel_inv()).unwrap(), a.one());
        }
        let full = ctx("A2", &[0, 1]);
        assert_eq!(full.ft_rel(), &full.algebra().one());
    }

    #[test]
    fn a2_checks() {
        let c = ctx("A2", &[0]);
        assert_eq!(c.coset_rep(), c.table().from_word(&[0, 1]));
        let all: Vec<CheckResult> = [
            c.serre_duality_check(),
            c.kernel_transport_check(),
            c.kernel_swap_check(),
            c.adjunction_unit_check(),
            vec![c.restricted_twist_check(), c.cone_containment_check()],
        ]
        .concat();
        for r in &all {
            assert_eq!(r.status, Status::Pass, "{r:?}");
        }
        assert_eq!(all.iter().filter(|r| r.check == "longest_times_costandard").count(), 4);
    }

    #[test]
    fn recollement_and_linearity() {
        let c = ctx("B2", &[0]);
        let a = c.algebra();
        let t = c.table();
        let h = a.from_terms(
            t.ids()
                .map(|w| (w, LaurentPoly::monomial(w.index() as i64 - 3, w.index() as i32 % 3))),
        );
        assert!(c.recollement_check(&h).unwrap());
        assert!(c.duality_holds_for(&h).unwrap());
        let lev = levi_element(&c, [(t.generator(0), LaurentPoly::v()), (ElemId::IDENTITY, q())]).unwrap();
        assert!(c.levi_linearity_holds(&lev, &h).unwrap());
        assert!(levi_element(&c, [(t.generator(1), LaurentPoly::one())]).is_err());
    }

    #[test]
    fn full_subset_is_trivial() {
        let c = ctx("G2", &[0, 1]);
        assert_eq!(c.coset_rep(), ElemId::IDENTITY);
        assert!(c
            .kernel_transport_check()
            .iter()
            .all(|r| r.check == "flipped_complement_spans"));
        assert!(c.cone_containment_check().passed());
        assert!(c.serre_duality_check().iter().all(CheckResult::passed));
    }

    #[test]
    fn leading_blocks() {
        assert!(is_leading_block(GenSet::empty()));
        assert!(is_leading_block([0, 1].into_iter().collect()));
        assert!(!is_leading_block([1].into_iter().collect()));
        assert!(!is_leading_block([0, 2].into_iter().collect()));
    }
}
