//! The s-fold tensor power of the Orlik–Solomon algebra, the diagonal
//! restriction map, the degree-one diagonal-kernel generators, and products
//! of those generators over pairs of subsets.
//!
//! Products of pure tensors carry the Koszul sign
//! `(-1)^{sum_{i>j} deg(a_i) deg(b_j)}`, which is exactly the convention that
//! makes the diagonal restriction a ring map; the test suite checks that
//! identity rather than assuming it.

use crate::algebra::{merge_monomials, AlgebraError, Monomial, NbcContext, OSElement};
use crate::arrangement::Subset;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Upper cap on the number of binomial factors a product expansion may have;
/// a k-factor product expands into up to 2^k pure tensors.
pub const MAX_PRODUCT_FACTORS: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TensorError {
    #[error("elements belong to different contexts or tensor widths")]
    MixedContext,
    #[error("slot {slot} out of range 2..={width}")]
    SlotOutOfRange { slot: usize, width: usize },
    #[error("pair subsets must be disjoint")]
    OverlappingPair,
    #[error("product of {factors} factors exceeds the expansion cap of {cap}")]
    BudgetExceeded { factors: usize, cap: usize },
}

/// A sparse element of the s-fold tensor power, keyed by s-tuples of nbc
/// monomials of a shared context.
#[derive(Clone)]
pub struct TensorElement {
    ctx: Arc<NbcContext>,
    width: usize,
    terms: BTreeMap<Vec<Monomial>, BigRational>,
}

impl TensorElement {
    pub fn zero(ctx: &Arc<NbcContext>, width: usize) -> Self {
        assert!(width >= 2, "tensor width must be at least 2");
        TensorElement { ctx: ctx.clone(), width, terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Arc<NbcContext>, width: usize) -> Self {
        let mut t = TensorElement::zero(ctx, width);
        t.terms.insert(vec![Monomial::unit(); width], BigRational::one());
        t
    }

    /// A pure tensor of monomials (each slot straightened into the basis).
    pub fn pure(ctx: &Arc<NbcContext>, slots: &[Monomial]) -> Self {
        assert!(slots.len() >= 2, "tensor width must be at least 2");
        TensorElement {
            ctx: ctx.clone(),
            width: slots.len(),
            terms: expand_slots(ctx, slots, BigRational::one()),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn context(&self) -> &Arc<NbcContext> {
        &self.ctx
    }

    pub fn is_nonzero(&self) -> bool {
        !self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Monomial], &BigRational)> {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
    }

    pub fn coefficient(&self, key: &[Monomial]) -> BigRational {
        self.terms.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Slot-degree profile when the element is homogeneous, None otherwise.
    pub fn multidegree(&self) -> Option<Vec<usize>> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let profile: Vec<usize> = first.iter().map(|m| m.degree()).collect();
        for key in it {
            if key.iter().map(|m| m.degree()).collect::<Vec<_>>() != profile {
                return None;
            }
        }
        Some(profile)
    }

    /// All total degrees occurring among the keys.
    pub fn total_degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .terms
            .keys()
            .map(|k| k.iter().map(|m| m.degree()).sum())
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement, TensorError> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let entry = terms.entry(k.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(k);
            }
        }
        Ok(TensorElement { ctx: self.ctx.clone(), width: self.width, terms })
    }

    pub fn neg(&self) -> TensorElement {
        TensorElement {
            ctx: self.ctx.clone(),
            width: self.width,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement, TensorError> {
        self.add(&other.neg())
    }

    fn check_compatible(&self, other: &TensorElement) -> Result<(), TensorError> {
        if self.width != other.width || !self.ctx.same_context(&other.ctx) {
            return Err(TensorError::MixedContext);
        }
        Ok(())
    }

    /// Product in the tensor-power algebra: slotwise multiplication with the
    /// Koszul sign, each slot straightened into the nbc basis.
    pub fn multiply(&self, other: &TensorElement) -> Result<TensorElement, TensorError> {
        self.check_compatible(other)?;
        let mut terms: BTreeMap<Vec<Monomial>, BigRational> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                // koszul sign: b_j moves past a_i for i > j
                let mut exponent = 0usize;
                let mut suffix_deg = 0usize; // sum of deg(a_i) for i > j
                for j in (0..self.width).rev() {
                    exponent += suffix_deg * b[j].degree();
                    suffix_deg += a[j].degree();
                }
                let mut coef = ca * cb;
                if exponent % 2 == 1 {
                    coef = -coef;
                }
                // slotwise merge; zero when an index repeats in a slot
                let mut merged: Vec<Monomial> = Vec::with_capacity(self.width);
                let mut alive = true;
                for j in 0..self.width {
                    match merge_monomials(a[j].indices(), b[j].indices()) {
                        None => {
                            alive = false;
                            break;
                        }
                        Some((sign, m)) => {
                            if sign < 0 {
                                coef = -coef;
                            }
                            merged.push(m);
                        }
                    }
                }
                if !alive {
                    continue;
                }
                for (key, c) in expand_slots(&self.ctx, &merged, coef) {
                    let entry = terms.entry(key).or_insert_with(BigRational::zero);
                    *entry += c;
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(TensorElement { ctx: self.ctx.clone(), width: self.width, terms })
    }

    /// Image under the diagonal restriction: the ordered product of the
    /// slots in the algebra, extended linearly.
    pub fn diagonal_restriction(&self) -> OSElement {
        let mut acc = OSElement::zero(&self.ctx);
        for (key, coef) in &self.terms {
            let mut prod = OSElement::one(&self.ctx);
            for m in key {
                let factor = self.ctx.straighten(m);
                prod = prod.multiply(&factor).expect("same context");
                if prod.is_zero() {
                    break;
                }
            }
            acc = acc.add(&prod.scale(coef)).expect("same context");
        }
        acc
    }
}

/// Straighten every slot of a pure tensor and distribute, producing the
/// expansion of `coef * (slots_1 ⊗ ... ⊗ slots_s)` in the nbc tensor basis.
fn expand_slots(
    ctx: &Arc<NbcContext>,
    slots: &[Monomial],
    coef: BigRational,
) -> BTreeMap<Vec<Monomial>, BigRational> {
    let mut acc: Vec<(Vec<Monomial>, BigRational)> = vec![(Vec::new(), coef)];
    for m in slots {
        if ctx.is_nbc_monomial(m) {
            for (key, _) in acc.iter_mut() {
                key.push(m.clone());
            }
            continue;
        }
        let expansion = ctx.straighten(m);
        let mut next = Vec::with_capacity(acc.len() * expansion.terms().count().max(1));
        for (key, c) in &acc {
            for (mono, mc) in expansion.terms() {
                let mut k2 = key.clone();
                k2.push(mono.clone());
                next.push((k2, c * mc));
            }
        }
        acc = next;
        if acc.is_empty() {
            break;
        }
    }
    let mut out: BTreeMap<Vec<Monomial>, BigRational> = BTreeMap::new();
    for (key, c) in acc {
        if c.is_zero() {
            continue;
        }
        let entry = out.entry(key).or_insert_with(BigRational::zero);
        *entry += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The degree-one diagonal-kernel class
/// `e_i ⊗ 1 ⊗ ... ⊗ 1  -  1 ⊗ ... ⊗ e_i ⊗ ... ⊗ 1`
/// with the second factor in slot `slot` (slots are numbered 1..=width).
pub fn kernel_generator(
    ctx: &Arc<NbcContext>,
    i: usize,
    slot: usize,
    width: usize,
) -> Result<TensorElement, TensorError> {
    if slot < 2 || slot > width {
        return Err(TensorError::SlotOutOfRange { slot, width });
    }
    assert!(i < ctx.arrangement().n(), "hyperplane index out of range");
    let mut t = TensorElement::zero(ctx, width);
    let mut first = vec![Monomial::unit(); width];
    first[0] = Monomial::generator(i);
    let mut second = vec![Monomial::unit(); width];
    second[slot - 1] = Monomial::generator(i);
    t.terms.insert(first, BigRational::one());
    t.terms.insert(second, -BigRational::one());
    Ok(t)
}

/// The product over the pair (B, C):
/// all kernel generators of B over slots 2..=width, times the slot-2
/// generators of C. Factors are multiplied in a fixed order: B ascending with
/// the slot index ascending inside each element, then C ascending.
pub fn pair_product(
    ctx: &Arc<NbcContext>,
    b: &Subset,
    c: &Subset,
    width: usize,
) -> Result<TensorElement, TensorError> {
    if !b.is_disjoint(c) {
        return Err(TensorError::OverlappingPair);
    }
    let factors = b.len() * (width - 1) + c.len();
    if factors > MAX_PRODUCT_FACTORS {
        return Err(TensorError::BudgetExceeded { factors, cap: MAX_PRODUCT_FACTORS });
    }
    let mut out = TensorElement::one(ctx, width);
    for i in b.iter() {
        for slot in 2..=width {
            out = out.multiply(&kernel_generator(ctx, i, slot, width)?)?;
        }
    }
    for i in c.iter() {
        out = out.multiply(&kernel_generator(ctx, i, 2, width)?)?;
    }
    Ok(out)
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.width == other.width
            && self.ctx.same_context(&other.ctx)
            && self.terms == other.terms
    }
}

impl Eq for TensorElement {}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (key, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            for (j, m) in key.iter().enumerate() {
                if j > 0 {
                    write!(f, "⊗")?;
                }
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement({self})")
    }
}

impl From<AlgebraError> for TensorError {
    fn from(_: AlgebraError) -> Self {
        TensorError::MixedContext
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{Arrangement, LinearOrder};
    use crate::scalar::{FieldSpec, Scalar};

    fn from_int_rows(name: &str, rows: &[&[i64]]) -> Arc<Arrangement> {
        let matrix: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_int(FieldSpec::Rational, v)).collect())
            .collect();
        let labels = (0..rows.len()).map(|i| format!("H{i}")).collect();
        Arc::new(Arrangement::new(name, labels, matrix, FieldSpec::Rational).unwrap())
    }

    fn circle_ctx() -> Arc<NbcContext> {
        let arr = from_int_rows("circle", &[&[1]]);
        NbcContext::new(arr, LinearOrder::identity(1))
    }

    fn braid3_ctx() -> Arc<NbcContext> {
        let arr = from_int_rows("braid3", &[&[1, -1], &[1, 0], &[0, 1]]);
        NbcContext::new(arr, LinearOrder::identity(3))
    }

    fn key(slots: &[&[usize]]) -> Vec<Monomial> {
        slots.iter().map(|s| Monomial::new(s.to_vec())).collect()
    }

    #[test]
    fn kernel_generator_circle() {
        let ctx = circle_ctx();
        let u = kernel_generator(&ctx, 0, 2, 2).unwrap();
        assert_eq!(u.coefficient(&key(&[&[0], &[]])), BigRational::one());
        assert_eq!(u.coefficient(&key(&[&[], &[0]])), -BigRational::one());
        assert!(u.diagonal_restriction().is_zero());
    }

    #[test]
    fn kernel_generator_braid3_slot3() {
        let ctx = braid3_ctx();
        let g = kernel_generator(&ctx, 2, 3, 3).unwrap();
        assert_eq!(g.coefficient(&key(&[&[2], &[], &[]])), BigRational::one());
        assert_eq!(g.coefficient(&key(&[&[], &[], &[2]])), -BigRational::one());
        assert_eq!(g.term_count(), 2);
        assert!(g.diagonal_restriction().is_zero());
    }

    #[test]
    fn slot_bounds() {
        let ctx = circle_ctx();
        assert_eq!(
            kernel_generator(&ctx, 0, 1, 2).unwrap_err(),
            TensorError::SlotOutOfRange { slot: 1, width: 2 }
        );
        assert_eq!(
            kernel_generator(&ctx, 0, 4, 3).unwrap_err(),
            TensorError::SlotOutOfRange { slot: 4, width: 3 }
        );
    }

    #[test]
    fn koszul_sign_basics() {
        let ctx = circle_ctx();
        // (1⊗u)(u⊗1) = -(u⊗u)
        let mut left = TensorElement::zero(&ctx, 2);
        left.terms.insert(key(&[&[], &[0]]), BigRational::one());
        let mut right = TensorElement::zero(&ctx, 2);
        right.terms.insert(key(&[&[0], &[]]), BigRational::one());
        let p = left.multiply(&right).unwrap();
        assert_eq!(p.coefficient(&key(&[&[0], &[0]])), -BigRational::one());
        assert_eq!(p.term_count(), 1);
    }

    #[test]
    fn circle_triple_product() {
        let ctx = circle_ctx();
        let u2 = kernel_generator(&ctx, 0, 2, 3).unwrap();
        let u3 = kernel_generator(&ctx, 0, 3, 3).unwrap();
        let p = u2.multiply(&u3).unwrap();
        // -u⊗1⊗u + u⊗u⊗1 + 1⊗u⊗u
        assert_eq!(p.coefficient(&key(&[&[0], &[], &[0]])), -BigRational::one());
        assert_eq!(p.coefficient(&key(&[&[0], &[0], &[]])), BigRational::one());
        assert_eq!(p.coefficient(&key(&[&[], &[0], &[0]])), BigRational::one());
        assert_eq!(p.term_count(), 3);
    }

    #[test]
    fn unit_is_identity() {
        let ctx = braid3_ctx();
        let one = TensorElement::one(&ctx, 2);
        let g = kernel_generator(&ctx, 1, 2, 2).unwrap();
        assert_eq!(g.multiply(&one).unwrap(), g);
        assert_eq!(one.multiply(&g).unwrap(), g);
    }

    #[test]
    fn diagonal_restriction_on_pure_tensor() {
        let ctx = braid3_ctx();
        let mut t = TensorElement::zero(&ctx, 2);
        t.terms.insert(key(&[&[0], &[1]]), BigRational::one());
        let d = t.diagonal_restriction();
        assert_eq!(d.coefficient(&Monomial::new(vec![0, 1])), BigRational::one());
        // and the unit maps to 1
        let one = TensorElement::one(&ctx, 3);
        assert_eq!(
            one.diagonal_restriction().coefficient(&Monomial::unit()),
            BigRational::one()
        );
    }

    #[test]
    fn diagonal_restriction_is_multiplicative_small() {
        let ctx = braid3_ctx();
        let gens: Vec<TensorElement> = (0..3)
            .map(|i| kernel_generator(&ctx, i, 2, 2).unwrap())
            .collect();
        for x in &gens {
            for y in &gens {
                let lhs = x.multiply(y).unwrap().diagonal_restriction();
                let rhs = x
                    .diagonal_restriction()
                    .multiply(&y.diagonal_restriction())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn pair_product_circle() {
        let ctx = circle_ctx();
        for width in 2..=5 {
            let p = pair_product(&ctx, &Subset::new(vec![0]), &Subset::empty(), width).unwrap();
            assert!(p.is_nonzero());
            // coefficient of 1 ⊗ u ⊗ ... ⊗ u is ±1
            let mut mu = vec![Monomial::unit()];
            mu.extend(std::iter::repeat(Monomial::generator(0)).take(width - 1));
            let c = p.coefficient(&mu);
            assert!(c.abs().is_one(), "coefficient {c} not ±1");
        }
    }

    #[test]
    fn pair_product_braid3() {
        let ctx = braid3_ctx();
        let b = Subset::new(vec![0, 1]);
        let c = Subset::new(vec![2]);
        let p = pair_product(&ctx, &b, &c, 2).unwrap();
        assert!(p.is_nonzero());
        // homogeneous of total degree (s-1)|B| + |C| = 3
        assert_eq!(p.total_degrees(), vec![3]);
        let mu = key(&[&[2], &[0, 1]]);
        assert!(p.coefficient(&mu).abs().is_one());
    }

    #[test]
    fn pair_product_errors() {
        let ctx = braid3_ctx();
        let b = Subset::new(vec![0, 1]);
        assert_eq!(
            pair_product(&ctx, &b, &Subset::new(vec![1]), 2).unwrap_err(),
            TensorError::OverlappingPair
        );
        let big = Subset::new(vec![0, 1, 2]);
        assert_eq!(
            pair_product(&ctx, &big, &Subset::empty(), 10).unwrap_err(),
            TensorError::BudgetExceeded { factors: 27, cap: MAX_PRODUCT_FACTORS }
        );
    }

    #[test]
    fn products_of_kernel_generators_stay_in_kernel() {
        let ctx = braid3_ctx();
        let p = pair_product(&ctx, &Subset::new(vec![0, 1]), &Subset::new(vec![2]), 3).unwrap();
        assert!(p.diagonal_restriction().is_zero());
    }
}
