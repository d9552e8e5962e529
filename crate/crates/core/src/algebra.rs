//! The Orlik–Solomon algebra of an arrangement: graded by degree, generated
//! in degree one, with the no-broken-circuit monomials of a fixed linear
//! order as basis.
//!
//! Arbitrary square-free monomials are straightened into the nbc basis by
//! repeatedly rewriting the largest contained broken circuit through its
//! circuit relation; every replacement monomial is strictly smaller in the
//! deg-lex order of the context, so the rewriting terminates. Straightened
//! forms are memoized per context.

use crate::arrangement::{Arrangement, LinearOrder, Subset};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("elements belong to different arrangement or order contexts")]
    MixedContext,
}

/// A square-free monomial in the degree-one generators, stored with strictly
/// increasing indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]), "indices must be strictly increasing");
        Monomial(indices)
    }

    pub fn generator(i: usize) -> Self {
        Monomial(vec![i])
    }

    pub fn from_subset(s: &Subset) -> Self {
        Monomial(s.iter().collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn support(&self) -> Subset {
        Subset::new(self.0.clone())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    // degree first, then index-lexicographic; a deterministic storage order
    // (the order-sensitive deg-lex comparison lives on NbcContext)
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for i in &self.0 {
            write!(f, "e{i}")?;
        }
        Ok(())
    }
}

/// Merge two ascending index tuples into one monomial, tracking the sign of
/// the interleaving permutation. None when an index repeats.
pub(crate) fn merge_monomials(a: &[usize], b: &[usize]) -> Option<(i8, Monomial)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let mut i = 0;
    let mut j = 0;
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining a-elements
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Some((sign, Monomial(out)))
}

struct RewriteRule {
    broken: Vec<usize>, // numeric ascending
    missing: usize,     // the order-minimum of the parent circuit
}

/// Shared straightening context for one arrangement and one linear order.
pub struct NbcContext {
    arr: Arc<Arrangement>,
    order: LinearOrder,
    rules: Vec<RewriteRule>,
    memo: Mutex<HashMap<Monomial, Arc<Vec<(Monomial, BigInt)>>>>,
    basis_cache: Mutex<HashMap<usize, Arc<Vec<Monomial>>>>,
}

impl NbcContext {
    /// Build the context; this enumerates the circuits of the arrangement.
    pub fn new(arr: Arc<Arrangement>, order: LinearOrder) -> Arc<NbcContext> {
        assert_eq!(order.len(), arr.n(), "order length must match ground set");
        let circuits = arr.circuits();
        let mut by_broken: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for c in circuits.iter() {
            let min = order.min_of(c.iter()).expect("circuits are nonempty");
            let broken: Vec<usize> = c.iter().filter(|&i| i != min).collect();
            // several circuits may break to the same set; keep one rule
            by_broken.entry(broken).or_insert(min);
        }
        let rules = by_broken
            .into_iter()
            .map(|(broken, missing)| RewriteRule { broken, missing })
            .collect();
        Arc::new(NbcContext {
            arr,
            order,
            rules,
            memo: Mutex::new(HashMap::new()),
            basis_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn arrangement(&self) -> &Arc<Arrangement> {
        &self.arr
    }

    pub fn order(&self) -> &LinearOrder {
        &self.order
    }

    pub fn same_context(&self, other: &NbcContext) -> bool {
        Arc::ptr_eq(&self.arr, &other.arr) && self.order == other.order
    }

    /// Deg-lex comparison relative to the context order.
    pub fn deglex_cmp(&self, a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
        a.degree().cmp(&b.degree()).then_with(|| {
            let pa = self.position_profile(a);
            let pb = self.position_profile(b);
            pa.cmp(&pb)
        })
    }

    fn position_profile(&self, m: &Monomial) -> Vec<usize> {
        let mut p: Vec<usize> = m.indices().iter().map(|&i| self.order.position(i)).collect();
        p.sort_unstable();
        p
    }

    pub fn is_nbc_monomial(&self, m: &Monomial) -> bool {
        self.rules.iter().all(|r| !is_subslice(&r.broken, m.indices()))
    }

    /// All nbc monomials of degree `p`, in deg-lex order relative to the
    /// context order; cached.
    pub fn nbc_basis(&self, p: usize) -> Arc<Vec<Monomial>> {
        if let Some(b) = self.basis_cache.lock().unwrap().get(&p) {
            return b.clone();
        }
        let mut out: Vec<Monomial> = Vec::new();
        if p <= self.arr.rank_full() {
            // broken circuits indexed by their order-maximal element
            let n = self.arr.n();
            let mut by_max: Vec<Vec<usize>> = vec![Vec::new(); n];
            for (k, r) in self.rules.iter().enumerate() {
                let max = r
                    .broken
                    .iter()
                    .copied()
                    .max_by_key(|&i| self.order.position(i))
                    .expect("broken circuits are nonempty");
                by_max[max].push(k);
            }
            let mut current: Vec<usize> = Vec::new();
            self.enumerate_nbc(p, 0, &mut current, &by_max, &mut out);
        }
        let arc = Arc::new(out);
        self.basis_cache.lock().unwrap().insert(p, arc.clone());
        arc
    }

    fn enumerate_nbc(
        &self,
        p: usize,
        from_pos: usize,
        current: &mut Vec<usize>, // elements chosen so far (any order)
        by_max: &[Vec<usize>],
        out: &mut Vec<Monomial>,
    ) {
        if current.len() == p {
            let mut idx = current.clone();
            idx.sort_unstable();
            out.push(Monomial(idx));
            return;
        }
        let n = self.arr.n();
        let remaining = p - current.len();
        for pos in from_pos..n {
            if n - pos < remaining {
                break;
            }
            let e = self.order.as_permutation()[pos];
            // adding e completes a broken circuit only if that circuit's
            // order-max element is e
            let blocked = by_max[e].iter().any(|&k| {
                self.rules[k]
                    .broken
                    .iter()
                    .all(|&x| x == e || current.contains(&x))
            });
            if blocked {
                continue;
            }
            current.push(e);
            self.enumerate_nbc(p, pos + 1, current, by_max, out);
            current.pop();
        }
    }

    /// Number of nbc monomials in each degree `p` (zero above the rank).
    pub fn dimension(&self, p: usize) -> usize {
        if p > self.arr.rank_full() {
            return 0;
        }
        match p {
            0 => 1,
            1 => self.arr.n(),
            _ => self.nbc_basis(p).len(),
        }
    }

    /// Expand a monomial in the nbc basis. Monomials with dependent support
    /// vanish; nbc monomials are fixed; everything else rewrites downward.
    pub fn straighten(self: &Arc<Self>, m: &Monomial) -> OSElement {
        let expansion = self.straighten_monomial(m);
        let mut terms = BTreeMap::new();
        for (mono, coef) in expansion.iter() {
            terms.insert(mono.clone(), BigRational::from_integer(coef.clone()));
        }
        OSElement { ctx: self.clone(), terms }
    }

    fn straighten_monomial(&self, m: &Monomial) -> Arc<Vec<(Monomial, BigInt)>> {
        if let Some(hit) = self.memo.lock().unwrap().get(m) {
            return hit.clone();
        }
        let result = self.straighten_uncached(m);
        debug_assert!(result.iter().all(|(mono, coef)| {
            !coef.is_zero()
                && self.is_nbc_monomial(mono)
                && self.deglex_cmp(mono, m) != std::cmp::Ordering::Greater
        }));
        let arc = Arc::new(result);
        self.memo.lock().unwrap().insert(m.clone(), arc.clone());
        arc
    }

    fn straighten_uncached(&self, m: &Monomial) -> Vec<(Monomial, BigInt)> {
        if self.arr.rank_of_indices(m.indices()) < m.degree() {
            return Vec::new();
        }
        let contained: Vec<&RewriteRule> = self
            .rules
            .iter()
            .filter(|r| is_subslice(&r.broken, m.indices()))
            .collect();
        let Some(rule) = contained.into_iter().max_by(|a, b| {
            self.deglex_cmp(&Monomial(a.broken.clone()), &Monomial(b.broken.clone()))
        }) else {
            return vec![(m.clone(), BigInt::one())];
        };

        // m = broken ∪ rest; substitute the circuit relation for the broken
        // circuit and recurse on the strictly smaller replacement monomials.
        let rest: Vec<usize> =
            m.indices().iter().copied().filter(|i| !rule.broken.contains(i)).collect();
        let (outer_sign, _) = merge_monomials(&rule.broken, &rest)
            .expect("broken circuit and rest are disjoint parts of m");

        let mut circuit: Vec<usize> = rule.broken.clone();
        circuit.push(rule.missing);
        circuit.sort_unstable();
        let p = circuit.binary_search(&rule.missing).expect("missing element is in circuit");

        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (t, &dropped) in circuit.iter().enumerate() {
            if t == p {
                continue;
            }
            let sub: Vec<usize> = circuit.iter().copied().filter(|&x| x != dropped).collect();
            let (inner_sign, replacement) = merge_monomials(&sub, &rest)
                .expect("replacement monomial has no repeated index");
            let term_sign = if (t as i64 - p as i64 + 1).rem_euclid(2) == 0 { 1 } else { -1 };
            let sign = BigInt::from(i64::from(outer_sign) * i64::from(inner_sign) * term_sign);
            for (mono, coef) in self.straighten_monomial(&replacement).iter() {
                let entry = acc.entry(mono.clone()).or_insert_with(BigInt::zero);
                *entry += coef * &sign;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

fn is_subslice(sub: &[usize], sup: &[usize]) -> bool {
    // both strictly ascending
    let mut it = sup.iter();
    'outer: for x in sub {
        for y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

/// An element of the Orlik–Solomon algebra: a sparse rational combination of
/// nbc monomials of a fixed context.
#[derive(Clone)]
pub struct OSElement {
    ctx: Arc<NbcContext>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl OSElement {
    pub fn zero(ctx: &Arc<NbcContext>) -> Self {
        OSElement { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Arc<NbcContext>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::unit(), BigRational::one());
        OSElement { ctx: ctx.clone(), terms }
    }

    pub fn generator(ctx: &Arc<NbcContext>, i: usize) -> Self {
        assert!(i < ctx.arr.n(), "generator index out of range");
        ctx.straighten(&Monomial::generator(i))
    }

    /// e_S: the ascending product of the generators of `s`.
    pub fn from_subset(ctx: &Arc<NbcContext>, s: &Subset) -> Self {
        ctx.straighten(&Monomial::from_subset(s))
    }

    pub fn context(&self) -> &Arc<NbcContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Degrees that occur with nonzero coefficient.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|m| m.degree()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The part of the element in a single degree.
    pub fn homogeneous_component(&self, p: usize) -> OSElement {
        OSElement {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == p)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &OSElement) -> Result<OSElement, AlgebraError> {
        if !self.ctx.same_context(&other.ctx) {
            return Err(AlgebraError::MixedContext);
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        Ok(OSElement { ctx: self.ctx.clone(), terms })
    }

    pub fn neg(&self) -> OSElement {
        OSElement {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &OSElement) -> Result<OSElement, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> OSElement {
        if c.is_zero() {
            return OSElement::zero(&self.ctx);
        }
        OSElement {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Graded-commutative product: merge index tuples with the sign of the
    /// interleaving, zero on repeated indices, then straighten.
    pub fn multiply(&self, other: &OSElement) -> Result<OSElement, AlgebraError> {
        if !self.ctx.same_context(&other.ctx) {
            return Err(AlgebraError::MixedContext);
        }
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let Some((sign, merged)) = merge_monomials(m1.indices(), m2.indices()) else {
                    continue;
                };
                let coef = c1 * c2 * BigRational::from_integer(BigInt::from(sign));
                for (mono, icoef) in self.ctx.straighten_monomial(&merged).iter() {
                    let entry = terms.entry(mono.clone()).or_insert_with(BigRational::zero);
                    *entry += &coef * BigRational::from_integer(icoef.clone());
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(OSElement { ctx: self.ctx.clone(), terms })
    }
}

impl PartialEq for OSElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_context(&other.ctx) && self.terms == other.terms
    }
}

impl Eq for OSElement {}

impl fmt::Debug for OSElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OSElement({self})")
    }
}

impl fmt::Display for OSElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag.is_one() && m.degree() > 0 {
                write!(f, "{m}")?;
            } else if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{FieldSpec, Scalar};

    fn from_int_rows(name: &str, rows: &[&[i64]]) -> Arc<Arrangement> {
        let matrix: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_int(FieldSpec::Rational, v)).collect())
            .collect();
        let labels = (0..rows.len()).map(|i| format!("H{i}")).collect();
        Arc::new(Arrangement::new(name, labels, matrix, FieldSpec::Rational).unwrap())
    }

    fn braid3_ctx() -> Arc<NbcContext> {
        let arr = from_int_rows("braid3", &[&[1, -1], &[1, 0], &[0, 1]]);
        let order = LinearOrder::identity(3);
        NbcContext::new(arr, order)
    }

    fn u34_ctx() -> Arc<NbcContext> {
        let arr = from_int_rows("u34", &[&[1, 1, 1], &[1, 2, 4], &[1, 3, 9], &[1, 4, 16]]);
        NbcContext::new(arr, LinearOrder::identity(4))
    }

    #[test]
    fn nbc_basis_braid3() {
        let ctx = braid3_ctx();
        let b2 = ctx.nbc_basis(2);
        assert_eq!(b2.as_slice(), &[Monomial::new(vec![0, 1]), Monomial::new(vec![0, 2])]);
        let b0 = ctx.nbc_basis(0);
        assert_eq!(b0.as_slice(), &[Monomial::unit()]);
        assert_eq!(ctx.dimension(0), 1);
        assert_eq!(ctx.dimension(1), 3);
        assert_eq!(ctx.dimension(2), 2);
        assert_eq!(ctx.dimension(3), 0);
    }

    #[test]
    fn nbc_count_braid4() {
        // strands 4 essentialized: y_i = x_i - x_4
        let arr = from_int_rows(
            "braid4",
            &[
                &[1, -1, 0], // x1-x2
                &[1, 0, -1], // x1-x3
                &[1, 0, 0],  // x1-x4
                &[0, 1, -1], // x2-x3
                &[0, 1, 0],  // x2-x4
                &[0, 0, 1],  // x3-x4
            ],
        );
        let ctx = NbcContext::new(arr, LinearOrder::identity(6));
        let total: usize = (0..=3).map(|p| ctx.dimension(p)).sum();
        assert_eq!(total, 24);
        // graded dimensions match (1+t)(1+2t)(1+3t)
        assert_eq!(
            (0..=3).map(|p| ctx.dimension(p)).collect::<Vec<_>>(),
            vec![1, 6, 11, 6]
        );
    }

    #[test]
    fn straighten_braid3() {
        let ctx = braid3_ctx();
        let x = ctx.straighten(&Monomial::new(vec![1, 2]));
        // e1e2 = e0e2 - e0e1
        let expected: Vec<(Monomial, BigRational)> = vec![
            (Monomial::new(vec![0, 1]), BigRational::from_integer((-1).into())),
            (Monomial::new(vec![0, 2]), BigRational::from_integer(1.into())),
        ];
        assert_eq!(x.terms().map(|(m, c)| (m.clone(), c.clone())).collect::<Vec<_>>(), expected);
    }

    #[test]
    fn straighten_fixes_nbc_monomials() {
        let ctx = braid3_ctx();
        for p in 0..=2 {
            for m in ctx.nbc_basis(p).iter() {
                let x = ctx.straighten(m);
                assert_eq!(x.coefficient(m), BigRational::one());
                assert_eq!(x.terms().count(), 1);
            }
        }
    }

    #[test]
    fn straighten_u34() {
        let ctx = u34_ctx();
        let x = ctx.straighten(&Monomial::new(vec![1, 2, 3]));
        assert_eq!(x.coefficient(&Monomial::new(vec![0, 2, 3])), BigRational::one());
        assert_eq!(
            x.coefficient(&Monomial::new(vec![0, 1, 3])),
            BigRational::from_integer((-1).into())
        );
        assert_eq!(x.coefficient(&Monomial::new(vec![0, 1, 2])), BigRational::one());
        assert_eq!(x.terms().count(), 3);
    }

    #[test]
    fn dependent_support_vanishes() {
        let ctx = braid3_ctx();
        let x = ctx.straighten(&Monomial::new(vec![0, 1, 2]));
        assert!(x.is_zero());
    }

    #[test]
    fn multiply_examples() {
        let ctx = braid3_ctx();
        let e0 = OSElement::generator(&ctx, 0);
        let e1 = OSElement::generator(&ctx, 1);
        let e2 = OSElement::generator(&ctx, 2);
        assert!(e0.multiply(&e0).unwrap().is_zero());
        // e2*e0 = -(e0e2)
        let p = e2.multiply(&e0).unwrap();
        assert_eq!(p.coefficient(&Monomial::new(vec![0, 2])), BigRational::from_integer((-1).into()));
        // e1*e2 = e0e2 - e0e1
        let q = e1.multiply(&e2).unwrap();
        assert_eq!(q.coefficient(&Monomial::new(vec![0, 2])), BigRational::one());
        assert_eq!(q.coefficient(&Monomial::new(vec![0, 1])), BigRational::from_integer((-1).into()));
        // unit acts trivially
        let one = OSElement::one(&ctx);
        assert_eq!(one.multiply(&q).unwrap(), q);
    }

    #[test]
    fn graded_commutativity_small() {
        let ctx = braid3_ctx();
        for i in 0..3 {
            for j in 0..3 {
                let a = OSElement::generator(&ctx, i);
                let b = OSElement::generator(&ctx, j);
                let ab = a.multiply(&b).unwrap();
                let ba = b.multiply(&a).unwrap();
                // degree-1 classes anticommute
                assert_eq!(ab, ba.neg());
            }
        }
    }

    #[test]
    fn mixed_context_rejected() {
        let c1 = braid3_ctx();
        let c2 = braid3_ctx(); // different arrangement instance
        let a = OSElement::generator(&c1, 0);
        let b = OSElement::generator(&c2, 0);
        assert_eq!(a.multiply(&b).unwrap_err(), AlgebraError::MixedContext);
    }
}
