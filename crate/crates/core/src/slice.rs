//! Slice categories `C/A` over finite sets.

use std::fmt;

use crate::category::{Category, Functor, Sets};
use crate::error::{guard, Error, Result};
use crate::finset::{
    compose, coproduct, fiber_indices, fiber_sizes, identity, terminal, unique_to_terminal, FinMap, FinSet, MixedRadix,
};
use crate::limits::{mediator, pullback, Cospan, PullbackResult};

/// An object `proj : total → base` of `C/base`.
#[derive(Clone, PartialEq)]
pub struct SliceObj {
    proj: FinMap,
}

impl SliceObj {
    pub fn new(proj: FinMap) -> Self {
        SliceObj { proj }
    }

    pub fn base(&self) -> &FinSet {
        self.proj.cod()
    }

    pub fn total(&self) -> &FinSet {
        self.proj.dom()
    }

    pub fn proj(&self) -> &FinMap {
        &self.proj
    }

    /// Fiber sizes over the base, in base order.
    pub fn fiber_sizes(&self) -> Vec<usize> {
        fiber_sizes(&self.proj)
    }

    /// Total-element indices of each fiber, in base order.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        fiber_indices(&self.proj)
    }

    pub fn summary(&self) -> String {
        format!("{} → {}", self.total().summary(), self.base().name())
    }
}

impl fmt::Debug for SliceObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.proj)
    }
}

/// A commuting triangle `dst.proj ∘ mediating = src.proj`.
#[derive(Clone, PartialEq)]
pub struct SliceMor {
    src: SliceObj,
    dst: SliceObj,
    mediating: FinMap,
}

impl SliceMor {
    pub fn src(&self) -> &SliceObj {
        &self.src
    }

    pub fn dst(&self) -> &SliceObj {
        &self.dst
    }

    pub fn mediating(&self) -> &FinMap {
        &self.mediating
    }

    pub(crate) fn trusted(src: SliceObj, dst: SliceObj, mediating: FinMap) -> Self {
        debug_assert!(slice_mor(mediating.clone(), src.clone(), dst.clone()).is_ok());
        SliceMor { src, dst, mediating }
    }
}

impl fmt::Debug for SliceMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} over {}", self.mediating, self.src.base().name())
    }
}

fn check_base(expected: &FinSet, found: &FinSet) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::BaseMismatch {
            expected: expected.summary(),
            found: found.summary(),
        })
    }
}

/// Validates `u` as a morphism `src → dst` of `C/A`.
pub fn slice_mor(u: FinMap, src: SliceObj, dst: SliceObj) -> Result<SliceMor> {
    check_base(src.base(), dst.base())?;
    if u.dom() != src.total() {
        return Err(Error::DomainMismatch {
            expected: src.total().summary(),
            found: u.dom().summary(),
        });
    }
    if u.cod() != dst.total() {
        return Err(Error::CodomainMismatch {
            expected: dst.total().summary(),
            found: u.cod().summary(),
        });
    }
    let around = compose(dst.proj(), &u)?;
    if let Some(witness) = around.first_difference(src.proj()) {
        return Err(Error::TriangleDoesNotCommute {
            witness: witness.to_string(),
        });
    }
    Ok(SliceMor { src, dst, mediating: u })
}

/// `v ∘ u`, re-validated.
pub fn slice_compose(v: &SliceMor, u: &SliceMor) -> Result<SliceMor> {
    if u.dst != v.src {
        return Err(Error::ObjectMismatch {
            expected: v.src.summary(),
            found: u.dst.summary(),
        });
    }
    let mediating = compose(&v.mediating, &u.mediating)?;
    slice_mor(mediating, u.src.clone(), v.dst.clone())
}

pub fn slice_identity(x: &SliceObj) -> SliceMor {
    SliceMor {
        src: x.clone(),
        dst: x.clone(),
        mediating: identity(x.total()),
    }
}

/// `|Hom_{C/A}(x, y)|`, saturating.
pub fn slice_hom_count(x: &SliceObj, y: &SliceObj) -> Result<u128> {
    check_base(x.base(), y.base())?;
    let sizes = fiber_sizes(&y.proj);
    let mut count: u128 = 1;
    for i in 0..x.total().len() {
        let b = y.base().index_of(x.proj.image(i).as_str()).expect("same base");
        count = count.saturating_mul(sizes[b] as u128);
    }
    Ok(count)
}

/// All slice morphisms `x → y`, enumerated fiberwise: each element of `x`
/// chooses independently inside the `y`-fiber over its base point. The
/// order equals that of filtering the ambient mixed-radix `hom_set`.
pub fn slice_hom_set(x: &SliceObj, y: &SliceObj, limit: usize) -> Result<Vec<SliceMor>> {
    guard(slice_hom_count(x, y)?, limit)?;
    let fibers = y.fibers();
    let choices: Vec<&Vec<usize>> = (0..x.total().len())
        .map(|i| {
            let b = y.base().index_of(x.proj.image(i).as_str()).expect("same base");
            &fibers[b]
        })
        .collect();
    let radix = choices.iter().map(|c| c.len()).collect();
    Ok(MixedRadix::new(radix)
        .map(|digits| {
            let table = digits.iter().zip(&choices).map(|(&d, c)| c[d]).collect();
            SliceMor {
                src: x.clone(),
                dst: y.clone(),
                mediating: FinMap::unchecked(x.total().clone(), y.total().clone(), table),
            }
        })
        .collect())
}

/// `C/base` as an enumerable category.
#[derive(Debug, Clone, PartialEq)]
pub struct Slice {
    base: FinSet,
}

impl Slice {
    pub fn new(base: FinSet) -> Self {
        Slice { base }
    }

    pub fn base(&self) -> &FinSet {
        &self.base
    }
}

impl Category for Slice {
    type Obj = SliceObj;
    type Mor = SliceMor;

    fn name(&self) -> String {
        format!("C/{}", self.base.name())
    }

    fn source(&self, m: &SliceMor) -> SliceObj {
        m.src.clone()
    }

    fn target(&self, m: &SliceMor) -> SliceObj {
        m.dst.clone()
    }

    fn identity(&self, x: &SliceObj) -> SliceMor {
        slice_identity(x)
    }

    fn compose(&self, g: &SliceMor, f: &SliceMor) -> Result<SliceMor> {
        slice_compose(g, f)
    }

    fn hom(&self, x: &SliceObj, y: &SliceObj, limit: usize) -> Result<Vec<SliceMor>> {
        slice_hom_set(x, y, limit)
    }

    fn check_object(&self, x: &SliceObj) -> Result<()> {
        check_base(&self.base, x.base())
    }

    fn same_category(&self, other: &Self) -> bool {
        self.base == other.base
    }

    fn describe_obj(&self, x: &SliceObj) -> String {
        format!("{:?}", x.proj)
    }

    fn describe_mor(&self, m: &SliceMor) -> String {
        format!("{:?}", m.mediating)
    }

    fn is_iso(&self, m: &SliceMor) -> bool {
        m.mediating.is_bijective()
    }

    fn witness(&self, a: &SliceMor, b: &SliceMor) -> Option<String> {
        if a.src != b.src || a.dst != b.dst {
            return Some(format!(
                "{} → {} vs {} → {}",
                a.src.summary(),
                a.dst.summary(),
                b.src.summary(),
                b.dst.summary()
            ));
        }
        crate::category::map_witness(&a.mediating, &b.mediating)
    }
}

/// Computable functor between slice categories.
pub type SliceFunctor = Functor<Slice, Slice>;

/// `f_! : C/X → C/Y`, postcomposition with `f : X → Y`.
pub fn postcompose_functor(f: &FinMap) -> SliceFunctor {
    let (fo, fm) = (f.clone(), f.clone());
    Functor::new(
        format!("{}_!", f.name()),
        Slice::new(f.dom().clone()),
        Slice::new(f.cod().clone()),
        move |u: &SliceObj| Ok(SliceObj::new(compose(&fo, u.proj())?)),
        move |m: &SliceMor| {
            let src = SliceObj::new(compose(&fm, m.src.proj())?);
            let dst = SliceObj::new(compose(&fm, m.dst.proj())?);
            slice_mor(m.mediating.clone(), src, dst)
        },
    )
}

/// `id : A → A`, terminal in `C/A`.
pub fn slice_terminal(a: &FinSet) -> SliceObj {
    SliceObj::new(identity(a))
}

/// The binary product in `C/A`: a pullback of the two projections.
#[derive(Debug, Clone)]
pub struct SliceProduct {
    pub object: SliceObj,
    pub pi1: SliceMor,
    pub pi2: SliceMor,
    pub pullback: PullbackResult,
    cospan: Cospan,
}

pub fn slice_product(p: &SliceObj, q: &SliceObj) -> Result<SliceProduct> {
    check_base(p.base(), q.base())?;
    let cospan = Cospan::new(p.proj().clone(), q.proj().clone())?;
    let pb = pullback(&cospan);
    let h = compose(p.proj(), &pb.p)?;
    let object = SliceObj::new(h);
    let pi1 = SliceMor::trusted(object.clone(), p.clone(), pb.p.clone());
    let pi2 = SliceMor::trusted(object.clone(), q.clone(), pb.q.clone());
    Ok(SliceProduct {
        object,
        pi1,
        pi2,
        pullback: pb,
        cospan,
    })
}

impl SliceProduct {
    pub fn left(&self) -> &SliceObj {
        self.pi1.dst()
    }

    pub fn right(&self) -> &SliceObj {
        self.pi2.dst()
    }

    /// The mediator `⟨a, b⟩ : s → p ×_A q` of two slice morphisms out of `s`.
    pub fn pairing(&self, a: &SliceMor, b: &SliceMor) -> Result<SliceMor> {
        if a.src != b.src {
            return Err(Error::ObjectMismatch {
                expected: a.src.summary(),
                found: b.src.summary(),
            });
        }
        if a.dst != *self.left() || b.dst != *self.right() {
            return Err(Error::ObjectMismatch {
                expected: format!("{} and {}", self.left().summary(), self.right().summary()),
                found: format!("{} and {}", a.dst.summary(), b.dst.summary()),
            });
        }
        let u = mediator(&self.cospan, &self.pullback, &a.mediating, &b.mediating)?;
        slice_mor(u, a.src.clone(), self.object.clone())
    }

    /// `a ×_A b : self → target`.
    pub fn times(&self, a: &SliceMor, b: &SliceMor, target: &SliceProduct) -> Result<SliceMor> {
        let first = slice_compose(a, &self.pi1)?;
        let second = slice_compose(b, &self.pi2)?;
        target.pairing(&first, &second)
    }
}

/// The binary coproduct in `C/A`: disjoint union of totals.
#[derive(Debug, Clone)]
pub struct SliceCoproduct {
    pub object: SliceObj,
    pub inl: SliceMor,
    pub inr: SliceMor,
    coproduct: crate::finset::Coproduct,
}

pub fn slice_coproduct(p: &SliceObj, q: &SliceObj) -> Result<SliceCoproduct> {
    check_base(p.base(), q.base())?;
    let c = coproduct(p.total(), q.total());
    let proj = c.copairing(p.proj(), q.proj())?;
    let object = SliceObj::new(proj);
    let inl = SliceMor::trusted(p.clone(), object.clone(), c.inl.clone());
    let inr = SliceMor::trusted(q.clone(), object.clone(), c.inr.clone());
    Ok(SliceCoproduct {
        object,
        inl,
        inr,
        coproduct: c,
    })
}

impl SliceCoproduct {
    /// `[a, b] : p + q → s`.
    pub fn copairing(&self, a: &SliceMor, b: &SliceMor) -> Result<SliceMor> {
        if a.dst != b.dst {
            return Err(Error::ObjectMismatch {
                expected: a.dst.summary(),
                found: b.dst.summary(),
            });
        }
        let u = self.coproduct.copairing(&a.mediating, &b.mediating)?;
        slice_mor(u, self.object.clone(), a.dst.clone())
    }
}

/// The equivalence `C/1 ⇄ C`.
#[derive(Debug, Clone)]
pub struct OverTerminal {
    /// Forgets the projection.
    pub forget: Functor<Slice, Sets>,
    /// Attaches `! : X → 1`.
    pub attach: Functor<Sets, Slice>,
}

impl OverTerminal {
    /// Iso `x → attach(forget(x))` in `C/1`.
    pub fn unit_iso(&self, x: &SliceObj) -> Result<SliceMor> {
        let back = self.attach.obj(&self.forget.obj(x)?)?;
        slice_mor(identity(x.total()), x.clone(), back)
    }

    /// Iso `X → forget(attach(X))` in `C`.
    pub fn counit_iso(&self, x: &FinSet) -> Result<FinMap> {
        let back = self.forget.obj(&self.attach.obj(x)?)?;
        FinMap::new(x.clone(), back, (0..x.len()).collect())
    }
}

pub fn over_terminal_equivalence() -> OverTerminal {
    let one = Slice::new(terminal());
    let forget = Functor::new(
        "forget",
        one.clone(),
        Sets,
        |x: &SliceObj| Ok(x.total().clone()),
        |m: &SliceMor| Ok(m.mediating.clone()),
    );
    let attach = Functor::new(
        "attach",
        Sets,
        one,
        |x: &FinSet| Ok(SliceObj::new(unique_to_terminal(x))),
        |m: &FinMap| {
            slice_mor(
                m.clone(),
                SliceObj::new(unique_to_terminal(m.dom())),
                SliceObj::new(unique_to_terminal(m.cod())),
            )
        },
    );
    OverTerminal { forget, attach }
}

/// Whether `m` is an isomorphism of slice objects (a bijective triangle).
pub fn is_slice_iso(m: &SliceMor) -> bool {
    m.mediating.is_bijective()
}

/// Inverse of a slice isomorphism.
pub fn slice_inverse(m: &SliceMor) -> Option<SliceMor> {
    let inv = m.mediating.inverse()?;
    Some(SliceMor::trusted(m.dst.clone(), m.src.clone(), inv))
}

/// A slice object from a table of base labels, one per element of `total`.
pub fn slice_obj_from_pairs<S: AsRef<str>>(total: FinSet, base: FinSet, pairs: &[(S, S)]) -> Result<SliceObj> {
    Ok(SliceObj::new(FinMap::from_pairs(total, base, pairs)?))
}

/// Every slice object over `base` whose total is `{prefix0, …}` of size at most `max_total`.
pub fn all_slice_objects(base: &FinSet, max_total: usize, prefix: &str, limit: usize) -> Result<Vec<SliceObj>> {
    let mut out = Vec::new();
    for n in 0..=max_total {
        let total = FinSet::numbered(format!("{prefix}{n}"), prefix, n);
        for proj in crate::finset::hom_set(&total, base, limit)? {
            out.push(SliceObj::new(proj));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{hom_set, map_equal};

    fn two() -> FinSet {
        FinSet::from_labels("2", &["blue", "red"]).unwrap()
    }

    fn colored(name: &str, colors: &[(&str, &str)]) -> SliceObj {
        let labels: Vec<&str> = colors.iter().map(|(e, _)| *e).collect();
        let total = FinSet::from_labels(name, &labels).unwrap();
        slice_obj_from_pairs(total, two(), colors).unwrap()
    }

    #[test]
    fn identity_morphism_is_valid() {
        let x = colored("X", &[("x1", "blue"), ("x2", "red")]);
        let m = slice_mor(identity(x.total()), x.clone(), x.clone()).unwrap();
        assert_eq!(m, slice_identity(&x));
    }

    #[test]
    fn two_colored_sets() {
        let x = colored("X", &[("x1", "blue"), ("x2", "red")]);
        let y = colored("Y", &[("y1", "blue"), ("y2", "red"), ("y3", "red")]);
        let keep = FinMap::from_pairs(x.total().clone(), y.total().clone(), &[("x1", "y1"), ("x2", "y3")]).unwrap();
        assert!(slice_mor(keep, x.clone(), y.clone()).is_ok());
        let swap = FinMap::from_pairs(x.total().clone(), y.total().clone(), &[("x1", "y2"), ("x2", "y1")]).unwrap();
        let err = slice_mor(swap, x, y).unwrap_err();
        assert_eq!(err, Error::TriangleDoesNotCommute { witness: "x1".into() });
    }

    #[test]
    fn slice_over_empty_has_one_object_and_morphism() {
        let objs = all_slice_objects(&FinSet::empty(), 3, "e", 100).unwrap();
        assert_eq!(objs.len(), 1);
        let only = &objs[0];
        let homs = slice_hom_set(only, only, 10).unwrap();
        assert_eq!(homs.len(), 1);
        assert!(slice_mor(identity(&FinSet::empty()), only.clone(), only.clone()).is_ok());
        assert_eq!(slice_terminal(&FinSet::empty()), *only);
    }

    #[test]
    fn base_mismatch_detected() {
        let x = colored("X", &[("x1", "blue")]);
        let y = slice_terminal(&terminal());
        let u = FinMap::new(x.total().clone(), y.total().clone(), vec![0]).unwrap();
        assert!(matches!(slice_mor(u, x, y), Err(Error::BaseMismatch { .. })));
    }

    #[test]
    fn compose_preserves_colors() {
        let x = colored("X", &[("x1", "blue"), ("x2", "red")]);
        let y = colored("Y", &[("y1", "blue"), ("y2", "red")]);
        let z = colored("Z", &[("z1", "red"), ("z2", "blue")]);
        let u = slice_hom_set(&x, &y, 10).unwrap().remove(0);
        let v = slice_hom_set(&y, &z, 10).unwrap().remove(0);
        let vu = slice_compose(&v, &u).unwrap();
        assert_eq!(vu.mediating().apply("x1").unwrap().as_str(), "z2");
        assert_eq!(slice_compose(&slice_identity(&y), &u).unwrap(), u);
        assert_eq!(slice_compose(&u, &slice_identity(&x)).unwrap(), u);
        assert!(matches!(slice_compose(&u, &v), Err(Error::ObjectMismatch { .. })));
    }

    #[test]
    fn fiberwise_hom_matches_filtered_ambient() {
        let base = FinSet::from_labels("A", &["a", "b"]).unwrap();
        let objs = all_slice_objects(&base, 3, "t", 100).unwrap();
        for x in &objs {
            for y in &objs {
                let fast = slice_hom_set(x, y, 1000).unwrap();
                let filtered: Vec<FinMap> = hom_set(x.total(), y.total(), 1000)
                    .unwrap()
                    .into_iter()
                    .filter(|u| map_equal(&compose(y.proj(), u).unwrap(), x.proj()))
                    .collect();
                assert_eq!(fast.len(), filtered.len());
                for (a, b) in fast.iter().zip(&filtered) {
                    assert!(map_equal(a.mediating(), b));
                }
            }
        }
    }

    #[test]
    fn terminal_is_terminal() {
        let base = FinSet::from_labels("A", &["a", "b"]).unwrap();
        let t = slice_terminal(&base);
        for x in all_slice_objects(&base, 3, "t", 100).unwrap() {
            let homs = slice_hom_set(&x, &t, 100).unwrap();
            assert_eq!(homs.len(), 1);
            assert!(map_equal(homs[0].mediating(), x.proj()));
        }
    }

    #[test]
    fn terminal_over_one_is_terminal_of_sets() {
        let t = slice_terminal(&terminal());
        assert_eq!(t.total().len(), 1);
    }

    #[test]
    fn postcompose_identity_is_identity_functor() {
        let base = two();
        let f = postcompose_functor(&identity(&base));
        for x in all_slice_objects(&base, 2, "t", 100).unwrap() {
            assert_eq!(f.obj(&x).unwrap(), x);
            for m in slice_hom_set(&x, &x, 100).unwrap() {
                assert_eq!(f.mor(&m).unwrap(), m);
            }
        }
    }

    #[test]
    fn postcompose_to_terminal_merges_fibers() {
        let b = FinSet::from_labels("B", &["b1", "b2"]).unwrap();
        let e = FinSet::from_labels("E", &["e1", "e2", "e3"]).unwrap();
        let p = slice_obj_from_pairs(e, b.clone(), &[("e1", "b1"), ("e2", "b2"), ("e3", "b2")]).unwrap();
        let shriek = postcompose_functor(&unique_to_terminal(&b));
        let merged = shriek.obj(&p).unwrap();
        assert_eq!(merged.fiber_sizes(), [3]);
        assert!(matches!(
            shriek.obj(&slice_terminal(&two())),
            Err(Error::BaseMismatch { .. })
        ));
    }

    #[test]
    fn postcompose_keeps_mediating_maps() {
        let a = FinSet::from_labels("A", &["a1", "a2"]).unwrap();
        let c = FinSet::from_labels("C", &["c"]).unwrap();
        let f = FinMap::from_pairs(a.clone(), c, &[("a1", "c"), ("a2", "c")]).unwrap();
        let x = slice_obj_from_pairs(
            FinSet::from_labels("X", &["x1", "x2"]).unwrap(),
            a.clone(),
            &[("x1", "a1"), ("x2", "a2")],
        )
        .unwrap();
        let y = slice_obj_from_pairs(
            FinSet::from_labels("Y", &["y1", "y2", "y3"]).unwrap(),
            a,
            &[("y1", "a1"), ("y2", "a2"), ("y3", "a2")],
        )
        .unwrap();
        let shriek = postcompose_functor(&f);
        for m in slice_hom_set(&x, &y, 100).unwrap() {
            let image = shriek.mor(&m).unwrap();
            assert!(map_equal(image.mediating(), m.mediating()));
        }
    }

    #[test]
    fn product_with_terminal_is_iso() {
        let base = two();
        let p = colored("P", &[("p1", "blue"), ("p2", "blue"), ("p3", "red")]);
        let prod = slice_product(&p, &slice_terminal(&base)).unwrap();
        assert!(is_slice_iso(&prod.pi1));
    }

    #[test]
    fn product_fibers_multiply() {
        let p = colored("P", &[("p1", "blue"), ("p2", "blue"), ("p3", "red")]);
        let q = colored("Q", &[("q1", "blue"), ("q2", "blue"), ("q3", "blue"), ("q4", "red")]);
        let prod = slice_product(&p, &q).unwrap();
        assert_eq!(prod.object.fiber_sizes(), [6, 1]);
    }

    #[test]
    fn product_over_one_is_plain_product() {
        let one = terminal();
        let b = SliceObj::new(unique_to_terminal(&FinSet::numbered("B", "b", 2)));
        let c = SliceObj::new(unique_to_terminal(&FinSet::numbered("C", "c", 3)));
        let prod = slice_product(&b, &c).unwrap();
        let plain = crate::finset::product(b.total(), c.total());
        assert_eq!(prod.object.total(), &plain.object);
        assert_eq!(prod.object.base(), &one);
    }

    #[test]
    fn product_universal_property() {
        let base = FinSet::from_labels("A", &["a", "b"]).unwrap();
        let objs = all_slice_objects(&base, 2, "t", 100).unwrap();
        for p in &objs {
            for q in &objs {
                let prod = slice_product(p, q).unwrap();
                for s in &objs {
                    for a in slice_hom_set(s, p, 100).unwrap() {
                        for b in slice_hom_set(s, q, 100).unwrap() {
                            let m = prod.pairing(&a, &b).unwrap();
                            let competitors = slice_hom_set(s, &prod.object, 1000)
                                .unwrap()
                                .into_iter()
                                .filter(|c| {
                                    slice_compose(&prod.pi1, c).unwrap() == a
                                        && slice_compose(&prod.pi2, c).unwrap() == b
                                })
                                .count();
                            assert_eq!(competitors, 1);
                            assert_eq!(slice_compose(&prod.pi1, &m).unwrap(), a);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coproduct_fibers_add() {
        let p = colored("P", &[("p1", "blue"), ("p2", "blue"), ("p3", "red")]);
        let q = colored("Q", &[("q1", "blue"), ("q2", "blue"), ("q3", "blue"), ("q4", "red")]);
        let co = slice_coproduct(&p, &q).unwrap();
        assert_eq!(co.object.fiber_sizes(), [5, 2]);
        let back = co.copairing(&co.inl, &co.inr).unwrap();
        assert_eq!(back, slice_identity(&co.object));
    }

    #[test]
    fn coproduct_with_empty_is_iso() {
        let p = colored("P", &[("p1", "blue"), ("p3", "red")]);
        let empty = SliceObj::new(FinMap::new(FinSet::empty(), two(), vec![]).unwrap());
        let co = slice_coproduct(&p, &empty).unwrap();
        assert!(is_slice_iso(&co.inl));
    }

    #[test]
    fn coproduct_over_one_is_plain() {
        let b = SliceObj::new(unique_to_terminal(&FinSet::numbered("B", "b", 2)));
        let c = SliceObj::new(unique_to_terminal(&FinSet::numbered("C", "c", 3)));
        let co = slice_coproduct(&b, &c).unwrap();
        assert_eq!(co.object.total(), &coproduct(b.total(), c.total()).object);
    }

    #[test]
    fn over_terminal_round_trips() {
        let eq = over_terminal_equivalence();
        for n in 0..=3 {
            let x = FinSet::numbered("X", "x", n);
            let sx = eq.attach.obj(&x).unwrap();
            assert_eq!(eq.attach.obj(&eq.forget.obj(&sx).unwrap()).unwrap(), sx);
            assert!(is_slice_iso(&eq.unit_iso(&sx).unwrap()));
            assert!(eq.counit_iso(&x).unwrap().is_bijective());
            for m in hom_set(&x, &x, 100).unwrap() {
                let round = eq.forget.mor(&eq.attach.mor(&m).unwrap()).unwrap();
                assert!(map_equal(&round, &m));
            }
        }
    }
}
