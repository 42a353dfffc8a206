//! Canonical pullbacks, their mediators, and the base change functor.

use crate::category::Functor;
use crate::error::{Error, Result};
use crate::finset::{compose, fiber_sizes, Element, FinMap, FinSet};
use crate::slice::{slice_mor, Slice, SliceFunctor, SliceMor, SliceObj};

/// `B --f--> A <--g-- C`.
#[derive(Debug, Clone)]
pub struct Cospan {
    pub f: FinMap,
    pub g: FinMap,
}

impl Cospan {
    pub fn new(f: FinMap, g: FinMap) -> Result<Self> {
        if f.cod() != g.cod() {
            return Err(Error::CodomainMismatch {
                expected: f.cod().summary(),
                found: g.cod().summary(),
            });
        }
        Ok(Cospan { f, g })
    }

    pub fn apex(&self) -> &FinSet {
        self.f.cod()
    }
}

/// `B <-p- B ×_A C -q-> C`.
#[derive(Debug, Clone)]
pub struct PullbackResult {
    pub carrier: FinSet,
    pub p: FinMap,
    pub q: FinMap,
}

/// `{⟨b|c⟩ | f(b) = g(c)}` in `b`-major order.
pub fn pullback(c: &Cospan) -> PullbackResult {
    let (b, cc) = (c.f.dom(), c.g.dom());
    let gt = c.g.table_over(cc, c.f.cod()).expect("cospan shares its apex");
    let mut elements = Vec::new();
    let mut ptab = Vec::new();
    let mut qtab = Vec::new();
    for i in 0..b.len() {
        let fi = c.f.at(i);
        for (j, &gj) in gt.iter().enumerate() {
            if gj == fi {
                elements.push(Element::pair(b.element(i), cc.element(j)));
                ptab.push(i);
                qtab.push(j);
            }
        }
    }
    let carrier = FinSet::constructed(format!("{}×_{}{}", b.name(), c.apex().name(), cc.name()), elements);
    PullbackResult {
        p: FinMap::unchecked(carrier.clone(), b.clone(), ptab),
        q: FinMap::unchecked(carrier.clone(), cc.clone(), qtab),
        carrier,
    }
}

impl PullbackResult {
    /// Index of `⟨b|c⟩` in the carrier, if the pair lies over a common point.
    pub fn index_of_pair(&self, b: &Element, c: &Element) -> Option<usize> {
        self.carrier.index_of(Element::pair(b, c).as_str())
    }
}

/// The unique `u : Y → B ×_A C` with `p ∘ u = p′` and `q ∘ u = q′`.
pub fn mediator(c: &Cospan, pb: &PullbackResult, p2: &FinMap, q2: &FinMap) -> Result<FinMap> {
    if p2.dom() != q2.dom() {
        return Err(Error::DomainMismatch {
            expected: p2.dom().summary(),
            found: q2.dom().summary(),
        });
    }
    let y = p2.dom();
    let left = compose(&c.f, p2)?;
    let right = compose(&c.g, q2)?;
    if let Some(witness) = left.first_difference(&right) {
        return Err(Error::ConeDoesNotCommute {
            witness: witness.to_string(),
        });
    }
    let table = (0..y.len())
        .map(|i| {
            pb.index_of_pair(p2.image(i), q2.image(i))
                .ok_or_else(|| Error::ShapeMismatch {
                    reason: format!("{} is not the pullback of this cospan", pb.carrier.name()),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FinMap::unchecked(y.clone(), pb.carrier.clone(), table))
}

/// `g^* x`: the pullback leg `M ×_A C → C` of `x : M → A` along `g : C → A`.
pub fn base_change_obj(g: &FinMap, x: &SliceObj) -> Result<(SliceObj, Cospan, PullbackResult)> {
    let cospan = Cospan::new(x.proj().clone(), g.clone())?;
    let pb = pullback(&cospan);
    Ok((SliceObj::new(pb.q.clone()), cospan, pb))
}

fn base_change_mor(g: &FinMap, h: &SliceMor) -> Result<SliceMor> {
    let (src, _, pb_src) = base_change_obj(g, h.src())?;
    let (dst, cospan_dst, pb_dst) = base_change_obj(g, h.dst())?;
    let along = compose(h.mediating(), &pb_src.p)?;
    let u = mediator(&cospan_dst, &pb_dst, &along, &pb_src.q)?;
    slice_mor(u, src, dst)
}

/// `g^* : C/A → C/C` for `g : C → A`.
pub fn base_change(g: &FinMap) -> SliceFunctor {
    let (go, gm) = (g.clone(), g.clone());
    Functor::new(
        format!("{}^*", g.name()),
        Slice::new(g.cod().clone()),
        Slice::new(g.dom().clone()),
        move |x: &SliceObj| Ok(base_change_obj(&go, x)?.0),
        move |h: &SliceMor| base_change_mor(&gm, h),
    )
}

/// Two cospans over the same `B`, `A`, `C` and `f`, differing only in `g`,
/// whose pullbacks have different cardinalities.
#[derive(Debug, Clone)]
pub struct NonIsoWitness {
    pub first: Cospan,
    pub second: Cospan,
    pub first_size: usize,
    pub second_size: usize,
}

impl NonIsoWitness {
    pub fn report(&self) -> String {
        format!(
            "|B ×_A C| = {} along g1, {} along g2: not isomorphic",
            self.first_size, self.second_size
        )
    }
}

pub fn nonisomorphic_pullback_witness() -> NonIsoWitness {
    let b = FinSet::from_labels("B", &["b1", "b2"]).expect("valid labels");
    let a = FinSet::from_labels("A", &["a1", "a2"]).expect("valid labels");
    let c = FinSet::from_labels("C", &["c"]).expect("valid labels");
    let f = FinMap::from_pairs(b, a.clone(), &[("b1", "a1"), ("b2", "a1")]).expect("total");
    let g1 = FinMap::from_pairs(c.clone(), a.clone(), &[("c", "a1")])
        .expect("total")
        .with_name("g1");
    let g2 = FinMap::from_pairs(c, a, &[("c", "a2")]).expect("total").with_name("g2");
    let first = Cospan::new(f.clone(), g1).expect("shared apex");
    let second = Cospan::new(f, g2).expect("shared apex");
    let first_size = pullback(&first).carrier.len();
    let second_size = pullback(&second).carrier.len();
    NonIsoWitness {
        first,
        second,
        first_size,
        second_size,
    }
}

/// `Σ_a |f⁻¹(a)|·|g⁻¹(a)|`.
pub fn fibered_product_size(c: &Cospan) -> usize {
    let fs = fiber_sizes(&c.f);
    let gs = fiber_sizes(&c.g);
    let g_over = |j: usize| {
        let a = c.f.cod().element(j);
        c.g.cod().index_of(a.as_str()).map(|k| gs[k]).unwrap_or(0)
    };
    fs.iter().enumerate().map(|(j, &n)| n * g_over(j)).sum()
}
