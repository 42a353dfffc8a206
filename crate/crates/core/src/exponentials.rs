//! Exponential objects of finite sets and of slice categories.
//!
//! The carrier of `Y^X` lists the graphs of all functions `X → Y` in the
//! same mixed-radix order as [`hom_set`](crate::finset::hom_set), so a graph
//! and its position convert into each other arithmetically.

use crate::error::{guard, saturating_pow, Error, Result};
use crate::finset::{compose, hom_count, identity, product, terminal, Element, FinMap, FinSet, MixedRadix, Product};
use crate::limits::{pullback, Cospan, PullbackResult};
use crate::slice::{
    slice_compose, slice_identity, slice_mor, slice_product, slice_terminal, SliceMor, SliceObj, SliceProduct,
};

/// `Y^X` with its evaluation `ev : Y^X × X → Y`.
#[derive(Debug, Clone)]
pub struct ExpObj {
    source: FinSet,
    target: FinSet,
    pub carrier: FinSet,
    pub ev: FinMap,
    product: Product,
}

fn graphs_of(x: &FinSet, y: &FinSet) -> Vec<Element> {
    MixedRadix::uniform(x.len(), y.len())
        .map(|digits| Element::graph(x.elements().iter().zip(digits.iter().map(|&d| y.element(d)))))
        .collect()
}

/// The exponential `Y^X`.
pub fn exp(x: &FinSet, y: &FinSet, limit: usize) -> Result<ExpObj> {
    guard(hom_count(x, y), limit)?;
    let carrier = FinSet::constructed(format!("{}^{}", y.name(), x.name()), graphs_of(x, y));
    let prod = product(&carrier, x);
    let n = x.len();
    let mut table = Vec::with_capacity(prod.object.len());
    for digits in MixedRadix::uniform(n, y.len()) {
        table.extend(digits);
    }
    let ev = FinMap::unchecked(prod.object.clone(), y.clone(), table);
    Ok(ExpObj {
        source: x.clone(),
        target: y.clone(),
        carrier,
        ev,
        product: prod,
    })
}

impl ExpObj {
    /// The exponent `X`.
    pub fn source(&self) -> &FinSet {
        &self.source
    }

    /// The base `Y`.
    pub fn target(&self) -> &FinSet {
        &self.target
    }

    /// `Y^X × X`, the domain of `ev`.
    pub fn eval_domain(&self) -> &Product {
        &self.product
    }

    fn encode(&self, digits: impl IntoIterator<Item = usize>) -> usize {
        let radix = self.target.len();
        digits.into_iter().fold(0, |acc, d| acc * radix + d)
    }

    fn decode(&self, mut k: usize) -> Vec<usize> {
        let radix = self.target.len();
        let mut digits = vec![0; self.source.len()];
        for d in digits.iter_mut().rev() {
            *d = k % radix;
            k /= radix;
        }
        digits
    }

    /// The function named by the `k`-th carrier element.
    pub fn function(&self, k: usize) -> FinMap {
        FinMap::unchecked(self.source.clone(), self.target.clone(), self.decode(k))
    }

    /// Carrier index of the graph of `g : X → Y`.
    pub fn graph_index(&self, g: &FinMap) -> Result<usize> {
        Ok(self.encode(g.table_over(&self.source, &self.target)?))
    }

    /// `λx. u(⟨s|x⟩)` for `u : S × X → Y`: the unique `v` with
    /// `ev ∘ (v × id_X) = u`.
    pub fn curry(&self, s: &FinSet, u: &FinMap) -> Result<FinMap> {
        let sx = product(s, &self.source);
        if u.dom() != &sx.object || u.cod() != &self.target {
            return Err(Error::ShapeMismatch {
                reason: format!(
                    "curry expects a map {} → {}, got {} → {}",
                    sx.object.name(),
                    self.target.name(),
                    u.dom().name(),
                    u.cod().name()
                ),
            });
        }
        let table = u.table_over(&sx.object, &self.target)?;
        let n = self.source.len();
        let v = (0..s.len())
            .map(|i| self.encode((0..n).map(|j| table[sx.index(i, j)])))
            .collect();
        Ok(FinMap::unchecked(s.clone(), self.carrier.clone(), v))
    }

    /// `ev ∘ (v × id_X)`.
    pub fn uncurry(&self, v: &FinMap) -> Result<FinMap> {
        if v.cod() != &self.carrier {
            return Err(Error::ShapeMismatch {
                reason: format!(
                    "uncurry expects a map into {}, got one into {}",
                    self.carrier.name(),
                    v.cod().name()
                ),
            });
        }
        let sx = product(v.dom(), &self.source);
        let v_times_id = sx.times(v, &identity(&self.source), &self.product)?;
        compose(&self.ev, &v_times_id)
    }

    /// `𝔦𝔡 : 1 → X^X`, the curried second projection. Requires `X = Y`.
    pub fn identity_point(&self) -> Result<FinMap> {
        if self.source != self.target {
            return Err(Error::ShapeMismatch {
                reason: format!("{} is not an endo-exponential", self.carrier.name()),
            });
        }
        let one = terminal();
        let p = product(&one, &self.source);
        let pi2 = FinMap::unchecked(p.object.clone(), self.target.clone(), p.pi2.table().to_vec());
        self.curry(&one, &pi2)
    }
}

pub fn curry(e: &ExpObj, s: &FinSet, u: &FinMap) -> Result<FinMap> {
    e.curry(s, u)
}

pub fn uncurry(e: &ExpObj, v: &FinMap) -> Result<FinMap> {
    e.uncurry(v)
}

/// `f^X = (f ∘ −) : Y^X → Z^X`.
#[derive(Debug, Clone)]
pub struct ExpFmap {
    pub from: ExpObj,
    pub to: ExpObj,
    pub map: FinMap,
}

/// `exp_fmap(f, X)`, computed as `curry(f ∘ ev)`.
pub fn exp_fmap(f: &FinMap, x: &FinSet, limit: usize) -> Result<ExpFmap> {
    let from = exp(x, f.dom(), limit)?;
    let to = exp(x, f.cod(), limit)?;
    let map = to.curry(&from.carrier, &compose(f, &from.ev)?)?;
    Ok(ExpFmap { from, to, map })
}

/// `𝔦𝔡 : 1 → X^X`.
pub fn identity_point(x: &FinSet, limit: usize) -> Result<FinMap> {
    exp(x, x, limit)?.identity_point()
}

/// The pullback of `𝔦𝔡 : 1 → X^X` along `f^X : Y^X → X^X`.
#[derive(Debug, Clone)]
pub struct RightInverses {
    pub pullback: PullbackResult,
    pub functions: ExpObj,
}

impl RightInverses {
    pub fn object(&self) -> &FinSet {
        &self.pullback.carrier
    }

    /// The functions `g : X → Y` the carrier stands for, in carrier order.
    pub fn inverses(&self) -> Vec<FinMap> {
        self.pullback
            .q
            .table()
            .iter()
            .map(|&k| self.functions.function(k))
            .collect()
    }
}

/// Right inverses `{g : X → Y | f ∘ g = id_X}` of `f : Y → X` as one object.
pub fn right_inverse_object(f: &FinMap, limit: usize) -> Result<RightInverses> {
    let x = f.cod();
    let fm = exp_fmap(f, x, limit)?;
    let point = fm.to.identity_point()?;
    let cospan = Cospan::new(point, fm.map.clone())?;
    Ok(RightInverses {
        pullback: pullback(&cospan),
        functions: fm.from,
    })
}

/// Positions inside fibers: `fibers[a]` lists total indices over `base[a]`,
/// `position[t]` is the rank of `t` within its fiber.
#[derive(Debug, Clone)]
struct FiberIndex {
    fibers: Vec<Vec<usize>>,
    position: Vec<usize>,
    sets: Vec<FinSet>,
}

impl FiberIndex {
    fn new(x: &SliceObj, base: &FinSet) -> Result<Self> {
        let over = x.proj().table_over(x.total(), base)?;
        let mut fibers = vec![Vec::new(); base.len()];
        let mut position = vec![0; over.len()];
        for (t, &a) in over.iter().enumerate() {
            position[t] = fibers[a].len();
            fibers[a].push(t);
        }
        let sets = fibers
            .iter()
            .enumerate()
            .map(|(a, members)| {
                FinSet::constructed(
                    format!("fiber({},{})", x.total().name(), base.element(a)),
                    members.iter().map(|&t| x.total().element(t).clone()).collect(),
                )
            })
            .collect();
        Ok(FiberIndex { fibers, position, sets })
    }
}

/// The local exponential `p^q` in `C/A`, built fiberwise: the fiber over
/// `a` is `(p⁻¹(a))^(q⁻¹(a))`, labelled `⟨a|fn{…}⟩`.
#[derive(Debug, Clone)]
pub struct SliceExp {
    pub object: SliceObj,
    /// `p^q ×_A q`.
    pub product: SliceProduct,
    /// `ev : p^q ×_A q → p`.
    pub ev: SliceMor,
    target: SliceObj,
    exponent: SliceObj,
    fibers: Vec<ExpObj>,
    offsets: Vec<usize>,
    p_index: FiberIndex,
    q_index: FiberIndex,
}

/// Whole-object size of the fiberwise exponential `p^q`.
pub fn slice_exp_size(p: &SliceObj, q: &SliceObj) -> Result<u128> {
    let base = p.base();
    let pi = FiberIndex::new(p, base)?;
    let qi = FiberIndex::new(q, base)?;
    Ok((0..base.len())
        .map(|a| saturating_pow(pi.fibers[a].len(), qi.fibers[a].len()))
        .fold(0u128, |acc, n| acc.saturating_add(n)))
}

pub fn slice_exp(p: &SliceObj, q: &SliceObj, limit: usize) -> Result<SliceExp> {
    if p.base() != q.base() {
        return Err(Error::BaseMismatch {
            expected: p.base().summary(),
            found: q.base().summary(),
        });
    }
    let base = p.base().clone();
    guard(slice_exp_size(p, q)?, limit)?;
    let p_index = FiberIndex::new(p, &base)?;
    let q_index = FiberIndex::new(q, &base)?;
    let mut fibers = Vec::with_capacity(base.len());
    let mut offsets = Vec::with_capacity(base.len());
    let mut elements = Vec::new();
    let mut proj = Vec::new();
    for a in 0..base.len() {
        let e = exp(&q_index.sets[a], &p_index.sets[a], limit)?;
        offsets.push(elements.len());
        for g in e.carrier.elements() {
            elements.push(Element::pair(base.element(a), g));
            proj.push(a);
        }
        fibers.push(e);
    }
    let total = FinSet::constructed(format!("({})^({})", p.total().name(), q.total().name()), elements);
    let object = SliceObj::new(FinMap::unchecked(total, base.clone(), proj));
    let prod = slice_product(&object, q)?;
    let mut ev = Vec::with_capacity(prod.object.total().len());
    for k in 0..prod.object.total().len() {
        let t = prod.pullback.p.at(k);
        let x = prod.pullback.q.at(k);
        let a = object.proj().at(t);
        let digits = fibers[a].decode(t - offsets[a]);
        ev.push(p_index.fibers[a][digits[q_index.position[x]]]);
    }
    let ev = FinMap::unchecked(prod.object.total().clone(), p.total().clone(), ev);
    let ev = slice_mor(ev, prod.object.clone(), p.clone())?;
    Ok(SliceExp {
        object,
        product: prod,
        ev,
        target: p.clone(),
        exponent: q.clone(),
        fibers,
        offsets,
        p_index,
        q_index,
    })
}

impl SliceExp {
    /// The object `p` being exponentiated.
    pub fn target(&self) -> &SliceObj {
        &self.target
    }

    /// The exponent `q`.
    pub fn exponent(&self) -> &SliceObj {
        &self.exponent
    }

    /// The exponential of the fibers over the `a`-th base point.
    pub fn fiber(&self, a: usize) -> &ExpObj {
        &self.fibers[a]
    }

    /// Slice currying: `u : s ×_A q → p` gives the unique `v : s → p^q`
    /// with `ev ∘ (v ×_A id_q) = u`.
    pub fn curry(&self, s: &SliceObj, u: &SliceMor) -> Result<SliceMor> {
        let sq = slice_product(s, &self.exponent)?;
        if u.src() != &sq.object || u.dst() != &self.target {
            return Err(Error::ShapeMismatch {
                reason: format!(
                    "slice curry expects {} → {}, got {} → {}",
                    sq.object.summary(),
                    self.target.summary(),
                    u.src().summary(),
                    u.dst().summary()
                ),
            });
        }
        let table = u.mediating().table_over(sq.object.total(), self.target.total())?;
        let base = self.object.base();
        let s_over = s.proj().table_over(s.total(), base)?;
        let mut v = Vec::with_capacity(s.total().len());
        for (i, &a) in s_over.iter().enumerate() {
            let digits = self.q_index.fibers[a].iter().map(|&x| {
                let k = sq
                    .pullback
                    .index_of_pair(s.total().element(i), self.exponent.total().element(x))
                    .expect("pair lies over a");
                self.p_index.position[table[k]]
            });
            v.push(self.offsets[a] + self.fibers[a].encode(digits));
        }
        let v = FinMap::unchecked(s.total().clone(), self.object.total().clone(), v);
        slice_mor(v, s.clone(), self.object.clone())
    }

    /// `ev ∘ (v ×_A id_q)`.
    pub fn uncurry(&self, v: &SliceMor) -> Result<SliceMor> {
        if v.dst() != &self.object {
            return Err(Error::ShapeMismatch {
                reason: format!("slice uncurry expects a morphism into {}", self.object.summary()),
            });
        }
        let sq = slice_product(v.src(), &self.exponent)?;
        let v_times_id = sq.times(v, &slice_identity(&self.exponent), &self.product)?;
        slice_compose(&self.ev, &v_times_id)
    }

    /// The function `q⁻¹(a) → p⁻¹(a)` named by the `t`-th total element.
    pub fn function(&self, t: usize) -> FinMap {
        let a = self.object.proj().at(t);
        self.fibers[a].function(t - self.offsets[a])
    }

    /// `𝔦𝔡 : id_A → q^q`, the slice-curried second projection. Requires `p = q`.
    pub fn identity_point(&self) -> Result<SliceMor> {
        if self.target != self.exponent {
            return Err(Error::ShapeMismatch {
                reason: "identity point needs an endo-exponential".to_string(),
            });
        }
        let t = slice_terminal(self.object.base());
        let tq = slice_product(&t, &self.exponent)?;
        self.curry(&t, &tq.pi2)
    }
}

/// `h^q : p^q → p′^q` for `h : p → p′`, computed as `curry(h ∘ ev)`.
#[derive(Debug, Clone)]
pub struct SliceExpFmap {
    pub from: SliceExp,
    pub to: SliceExp,
    pub map: SliceMor,
}

pub fn slice_exp_fmap(h: &SliceMor, q: &SliceObj, limit: usize) -> Result<SliceExpFmap> {
    let from = slice_exp(h.src(), q, limit)?;
    let to = slice_exp(h.dst(), q, limit)?;
    let map = to.curry(&from.object, &slice_compose(h, &from.ev)?)?;
    Ok(SliceExpFmap { from, to, map })
}

/// `𝔦𝔡 : id_A → q^q`.
pub fn slice_identity_point(q: &SliceObj, limit: usize) -> Result<(SliceExp, SliceMor)> {
    let e = slice_exp(q, q, limit)?;
    let point = e.identity_point()?;
    Ok((e, point))
}
