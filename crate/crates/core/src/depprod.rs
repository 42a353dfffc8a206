//! Dependent sum, base change and dependent product along `f : B → A`.

use std::collections::HashMap;

use crate::category::Functor;
use crate::error::{guard, Error, Result};
use crate::exponentials::{slice_exp_fmap, SliceExpFmap};
use crate::finset::{compose, fiber_indices, Element, FinMap, FinSet, MixedRadix};
use crate::limits::{base_change, base_change_obj, mediator, pullback, Cospan, PullbackResult};
use crate::slice::{postcompose_functor, slice_mor, Slice, SliceFunctor, SliceMor, SliceObj};

/// `f_! : C/B → C/A`.
pub fn dependent_sum(f: &FinMap) -> SliceFunctor {
    postcompose_functor(f)
}

/// `f^* : C/A → C/B`.
pub fn pullback_functor(f: &FinMap) -> SliceFunctor {
    base_change(f)
}

fn check_family(f: &FinMap, p: &SliceObj) -> Result<()> {
    if p.base() != f.dom() {
        return Err(Error::BaseMismatch {
            expected: f.dom().summary(),
            found: p.base().summary(),
        });
    }
    Ok(())
}

/// A section over `a`: an element of `p⁻¹(b)` for each `b ∈ B_a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub over: Element,
    pub assignment: Vec<(Element, Element)>,
}

/// `f_* p`, the object of sections, together with the data needed to
/// evaluate and re-index them.
#[derive(Debug, Clone)]
pub struct DependentProduct {
    pub object: SliceObj,
    f: FinMap,
    family: SliceObj,
    family_over: Vec<usize>,
    preimages: Vec<Vec<usize>>,
    position_in_preimage: Vec<usize>,
    choices: Vec<Vec<usize>>,
    lookup: HashMap<(usize, Vec<usize>), usize>,
}

/// Number of sections, saturating.
pub fn section_count(f: &FinMap, p: &SliceObj) -> Result<u128> {
    check_family(f, p)?;
    let over = p.proj().table_over(p.total(), f.dom())?;
    let mut sizes = vec![0u128; f.dom().len()];
    for &b in &over {
        sizes[b] += 1;
    }
    Ok(fiber_indices(f)
        .iter()
        .map(|bs| bs.iter().fold(1u128, |acc, &b| acc.saturating_mul(sizes[b])))
        .fold(0u128, |acc, n| acc.saturating_add(n)))
}

/// `f_* p` by enumerating sections fiber by fiber.
pub fn dependent_product_fiberwise(f: &FinMap, p: &SliceObj, limit: usize) -> Result<DependentProduct> {
    guard(section_count(f, p)?, limit)?;
    let family_over = p.proj().table_over(p.total(), f.dom())?;
    let mut p_fibers = vec![Vec::new(); f.dom().len()];
    for (e, &b) in family_over.iter().enumerate() {
        p_fibers[b].push(e);
    }
    let preimages = fiber_indices(f);
    let mut position_in_preimage = vec![0; f.dom().len()];
    for bs in &preimages {
        for (r, &b) in bs.iter().enumerate() {
            position_in_preimage[b] = r;
        }
    }
    let (a_set, b_set, e_set) = (f.cod(), f.dom(), p.total());
    let mut elements = Vec::new();
    let mut proj = Vec::new();
    let mut choices = Vec::new();
    let mut lookup = HashMap::new();
    for (a, bs) in preimages.iter().enumerate() {
        let radix = bs.iter().map(|&b| p_fibers[b].len()).collect();
        for digits in MixedRadix::new(radix) {
            let chosen: Vec<usize> = bs.iter().zip(&digits).map(|(&b, &d)| p_fibers[b][d]).collect();
            elements.push(Element::section(
                a_set.element(a),
                bs.iter()
                    .zip(&chosen)
                    .map(|(&b, &e)| (b_set.element(b), e_set.element(e))),
            ));
            proj.push(a);
            lookup.insert((a, chosen.clone()), choices.len());
            choices.push(chosen);
        }
    }
    let total = FinSet::constructed(format!("{}_*({})", f.name(), p.total().name()), elements);
    Ok(DependentProduct {
        object: SliceObj::new(FinMap::unchecked(total, a_set.clone(), proj)),
        f: f.clone(),
        family: p.clone(),
        family_over,
        preimages,
        position_in_preimage,
        choices,
        lookup,
    })
}

impl DependentProduct {
    pub fn map(&self) -> &FinMap {
        &self.f
    }

    pub fn family(&self) -> &SliceObj {
        &self.family
    }

    /// Index in the base `A` that the `t`-th section lies over.
    pub fn over(&self, t: usize) -> usize {
        self.object.proj().at(t)
    }

    /// The `t`-th section as labels.
    pub fn section(&self, t: usize) -> Section {
        let a = self.over(t);
        Section {
            over: self.f.cod().element(a).clone(),
            assignment: self.preimages[a]
                .iter()
                .zip(&self.choices[t])
                .map(|(&b, &e)| (self.f.dom().element(b).clone(), self.family.total().element(e).clone()))
                .collect(),
        }
    }

    /// `s_t(b)` as a family index, where `b` is an index in `B`.
    /// `None` when `b` is not over the same point as `s_t`.
    pub fn evaluate(&self, t: usize, b: usize) -> Option<usize> {
        if self.f.at(b) != self.over(t) {
            return None;
        }
        Some(self.choices[t][self.position_in_preimage[b]])
    }

    /// Index of the section over `a` choosing `chosen[r]` at the `r`-th
    /// point of `B_a`.
    pub fn index_of(&self, a: usize, chosen: &[usize]) -> Option<usize> {
        self.lookup.get(&(a, chosen.to_vec())).copied()
    }

    fn check_section(&self, a: usize, chosen: &[usize]) -> Result<usize> {
        self.index_of(a, chosen).ok_or_else(|| {
            let witness = self.preimages[a]
                .iter()
                .zip(chosen)
                .find(|(&b, &e)| self.family_over.get(e) != Some(&b))
                .map(|(&b, &e)| format!("{} ↦ {}", self.f.dom().element(b), self.family.total().element(e)))
                .unwrap_or_else(|| self.f.cod().element(a).to_string());
            Error::TriangleDoesNotCommute { witness }
        })
    }
}

/// `f_* : C/B → C/A` on morphisms: `u : p → p′` sends `s` to `u ∘ s`.
pub fn dependent_product_mor(f: &FinMap, u: &SliceMor, limit: usize) -> Result<SliceMor> {
    let src = dependent_product_fiberwise(f, u.src(), limit)?;
    let dst = dependent_product_fiberwise(f, u.dst(), limit)?;
    dependent_product_mor_between(&src, &dst, u)
}

fn dependent_product_mor_between(src: &DependentProduct, dst: &DependentProduct, u: &SliceMor) -> Result<SliceMor> {
    let table = u.mediating().table_over(src.family.total(), dst.family.total())?;
    let mut out = Vec::with_capacity(src.choices.len());
    for (t, chosen) in src.choices.iter().enumerate() {
        let moved: Vec<usize> = chosen.iter().map(|&e| table[e]).collect();
        out.push(dst.check_section(src.over(t), &moved)?);
    }
    slice_mor(
        FinMap::unchecked(src.object.total().clone(), dst.object.total().clone(), out),
        src.object.clone(),
        dst.object.clone(),
    )
}

/// `f_* : C/B → C/A`.
pub fn f_star(f: &FinMap, limit: usize) -> SliceFunctor {
    let (fo, fm) = (f.clone(), f.clone());
    Functor::new(
        format!("{}_*", f.name()),
        Slice::new(f.dom().clone()),
        Slice::new(f.cod().clone()),
        move |p: &SliceObj| Ok(dependent_product_fiberwise(&fo, p, limit)?.object),
        move |u: &SliceMor| dependent_product_mor(&fm, u, limit),
    )
}

/// The object `Z → A` obtained as a pullback inside `C/A` of
/// `(f ∘ p)^f → f^f` along the identity point `id_A → f^f`.
#[derive(Debug, Clone)]
pub struct PullbackProduct {
    pub object: SliceObj,
    pub pullback: PullbackResult,
    pub fmap: SliceExpFmap,
    /// `f_! p`, the family seen over `A`.
    pub total_family: SliceObj,
    /// `f` seen as an object of `C/A`.
    pub fibration: SliceObj,
    cospan: Cospan,
    family: SliceObj,
}

pub fn dependent_product_pullback(f: &FinMap, p: &SliceObj, limit: usize) -> Result<PullbackProduct> {
    check_family(f, p)?;
    let total_family = SliceObj::new(compose(f, p.proj())?);
    let fibration = SliceObj::new(f.clone());
    let along = slice_mor(p.proj().clone(), total_family.clone(), fibration.clone())?;
    let fmap = slice_exp_fmap(&along, &fibration, limit)?;
    let point = fmap.to.identity_point()?;
    let cospan = Cospan::new(point.mediating().clone(), fmap.map.mediating().clone())?;
    let pb = pullback(&cospan);
    let object = SliceObj::new(pb.p.clone());
    Ok(PullbackProduct {
        object,
        pullback: pb,
        fmap,
        total_family,
        fibration,
        cospan,
        family: p.clone(),
    })
}

impl PullbackProduct {
    /// `Z → (f ∘ p)^f`.
    pub fn exp_leg(&self) -> Result<SliceMor> {
        slice_mor(
            self.pullback.q.clone(),
            self.object.clone(),
            self.fmap.from.object.clone(),
        )
    }

    pub fn family(&self) -> &SliceObj {
        &self.family
    }
}

/// The two constructions of `f_* p` and the isomorphisms between them.
#[derive(Debug, Clone)]
pub struct ProductComparison {
    pub fiberwise: DependentProduct,
    pub via_pullback: PullbackProduct,
    /// `f_* p → Z`.
    pub forward: SliceMor,
    /// `Z → f_* p`.
    pub backward: SliceMor,
}

impl ProductComparison {
    /// Whether both composites are identities.
    pub fn round_trips(&self) -> bool {
        let there = compose(self.backward.mediating(), self.forward.mediating());
        let back = compose(self.forward.mediating(), self.backward.mediating());
        matches!((there, back), (Ok(a), Ok(b))
            if a.table().iter().enumerate().all(|(i, &j)| i == j)
                && b.table().iter().enumerate().all(|(i, &j)| i == j))
    }
}

/// Builds both constructions and the canonical isomorphism between them.
///
/// Forward: the mediator into `Z` whose exponential leg curries the
/// evaluation `f_* p ×_A f → f_! p`. Backward: the `f^* ⊣ f_*` transpose
/// of the uncurried exponential leg of `Z`.
pub fn compare_dependent_products(f: &FinMap, p: &SliceObj, limit: usize) -> Result<ProductComparison> {
    let fiberwise = dependent_product_fiberwise(f, p, limit)?;
    let via = dependent_product_pullback(f, p, limit)?;
    let exp = &via.fmap.from;
    let s = &fiberwise.object;
    let sq = crate::slice::slice_product(s, &via.fibration)?;
    let b_set = f.dom();
    let mut ev = Vec::with_capacity(sq.object.total().len());
    for k in 0..sq.object.total().len() {
        let t = sq.pullback.p.at(k);
        let b = b_set
            .index_of(via.fibration.total().element(sq.pullback.q.at(k)).as_str())
            .expect("fibration total is B");
        ev.push(fiberwise.evaluate(t, b).expect("pair lies over one point"));
    }
    let ev = slice_mor(
        FinMap::unchecked(sq.object.total().clone(), p.total().clone(), ev),
        sq.object.clone(),
        via.total_family.clone(),
    )?;
    let curried = exp.curry(s, &ev)?;
    let forward = mediator(&via.cospan, &via.pullback, s.proj(), curried.mediating())?;
    let forward = slice_mor(forward, s.clone(), via.object.clone())?;

    let leg = via.exp_leg()?;
    let uncurried = exp.uncurry(&leg)?;
    let (star_z, _, _) = base_change_obj(f, &via.object)?;
    let w = slice_mor(uncurried.mediating().clone(), star_z, p.clone())?;
    let backward = transpose_star_pi(f, &via.object, &fiberwise, &w)?;
    Ok(ProductComparison {
        fiberwise,
        via_pullback: via,
        forward,
        backward,
    })
}

/// `η_x : x → f^* f_! x`, `m ↦ ⟨m|x(m)⟩`, for `x` over `B`.
pub fn unit_shriek_star(f: &FinMap, x: &SliceObj) -> Result<SliceMor> {
    check_family(f, x)?;
    let pushed = SliceObj::new(compose(f, x.proj())?);
    let (back, cospan, pb) = base_change_obj(f, &pushed)?;
    let u = mediator(&cospan, &pb, &crate::finset::identity(x.total()), x.proj())?;
    slice_mor(u, x.clone(), back)
}

/// `ε_y : f_! f^* y → y`, `⟨m|b⟩ ↦ m`, for `y` over `A`.
pub fn counit_shriek_star(f: &FinMap, y: &SliceObj) -> Result<SliceMor> {
    let (pulled, _, pb) = base_change_obj(f, y)?;
    let pushed = SliceObj::new(compose(f, pulled.proj())?);
    slice_mor(pb.p, pushed, y.clone())
}

/// `Hom_{C/B}(f^* y, p) → Hom_{C/A}(y, f_* p)`: `m ↦ (b ↦ w⟨m|b⟩)`.
pub fn transpose_star_pi(f: &FinMap, y: &SliceObj, fp: &DependentProduct, w: &SliceMor) -> Result<SliceMor> {
    let (pulled, _, pb) = base_change_obj(f, y)?;
    if w.src() != &pulled || w.dst() != &fp.family {
        return Err(Error::ShapeMismatch {
            reason: format!(
                "transpose expects f^*y → p, got {} → {}",
                w.src().summary(),
                w.dst().summary()
            ),
        });
    }
    let table = w.mediating().table_over(pulled.total(), fp.family.total())?;
    let y_over = y.proj().table_over(y.total(), f.cod())?;
    let mut out = Vec::with_capacity(y.total().len());
    for (m, &a) in y_over.iter().enumerate() {
        let chosen: Vec<usize> = fp.preimages[a]
            .iter()
            .map(|&b| {
                let k = pb
                    .index_of_pair(y.total().element(m), f.dom().element(b))
                    .expect("pair lies over a");
                table[k]
            })
            .collect();
        out.push(fp.check_section(a, &chosen)?);
    }
    slice_mor(
        FinMap::unchecked(y.total().clone(), fp.object.total().clone(), out),
        y.clone(),
        fp.object.clone(),
    )
}

/// `Hom_{C/A}(y, f_* p) → Hom_{C/B}(f^* y, p)`: `⟨m|b⟩ ↦ v(m)(b)`.
pub fn untranspose_star_pi(f: &FinMap, y: &SliceObj, fp: &DependentProduct, v: &SliceMor) -> Result<SliceMor> {
    let (pulled, _, pb) = base_change_obj(f, y)?;
    if v.src() != y || v.dst() != &fp.object {
        return Err(Error::ShapeMismatch {
            reason: format!(
                "untranspose expects y → f_*p, got {} → {}",
                v.src().summary(),
                v.dst().summary()
            ),
        });
    }
    let table = v.mediating().table_over(y.total(), fp.object.total())?;
    let b_of = pb.q.table_over(pulled.total(), f.dom())?;
    let out = (0..pulled.total().len())
        .map(|k| {
            fp.evaluate(table[pb.p.at(k)], b_of[k])
                .ok_or_else(|| Error::TriangleDoesNotCommute {
                    witness: pulled.total().element(k).to_string(),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    slice_mor(
        FinMap::unchecked(pulled.total().clone(), fp.family.total().clone(), out),
        pulled,
        fp.family.clone(),
    )
}

/// `η′_y : y → f_* f^* y`, `m ↦ (b ↦ ⟨m|b⟩)`.
pub fn unit_star_pi(f: &FinMap, y: &SliceObj, limit: usize) -> Result<SliceMor> {
    let (pulled, _, _) = base_change_obj(f, y)?;
    let fp = dependent_product_fiberwise(f, &pulled, limit)?;
    transpose_star_pi(f, y, &fp, &crate::slice::slice_identity(&pulled))
}

/// `ε′_p : f^* f_* p → p`, `⟨s|b⟩ ↦ s(b)`.
pub fn counit_star_pi(f: &FinMap, p: &SliceObj, limit: usize) -> Result<SliceMor> {
    let fp = dependent_product_fiberwise(f, p, limit)?;
    untranspose_star_pi(f, &fp.object.clone(), &fp, &crate::slice::slice_identity(&fp.object))
}

/// Unit and counit families of `f^* ⊣ f_*`, evaluated at `y` and `p`.
pub fn unit_counit_star_pi(f: &FinMap, y: &SliceObj, p: &SliceObj, limit: usize) -> Result<(SliceMor, SliceMor)> {
    Ok((unit_star_pi(f, y, limit)?, counit_star_pi(f, p, limit)?))
}
