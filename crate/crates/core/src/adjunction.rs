//! Certification of adjunctions by enumeration.
//!
//! An [`Adjunction`] packages two functors with a unit, a counit and a
//! hom-set transpose. The checks run both characterisations on finite
//! instance lists: the triangle identities with naturality of the unit and
//! counit, and a natural bijection `Hom(FX, Y) ≅ Hom(X, GY)`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::category::{Category, Functor, Pairs, Sets};
use crate::depprod::{
    counit_shriek_star, counit_star_pi, dependent_product_fiberwise, dependent_sum, f_star, pullback_functor,
    transpose_star_pi, unit_shriek_star, unit_star_pi, untranspose_star_pi,
};
use crate::error::{Error, Result};
use crate::exponentials::{exp, exp_fmap, slice_exp, slice_exp_fmap};
use crate::finset::{compose, identity, product, FinMap, FinSet, DEFAULT_LIMIT};
use crate::instances::{sample_morphisms_from, sample_morphisms_into, set_instances, slice_instances, Sampler};
use crate::limits::base_change_obj;
use crate::slice::{slice_compose, slice_identity, slice_mor, slice_product, Slice, SliceFunctor, SliceMor, SliceObj};

/// Largest total size used for instances of the slice-exponential checks.
pub const SLICE_EXP_MAX_TOTAL: usize = 2;

/// Stored failures per report; further ones are only counted.
pub const MAX_RECORDED_FAILURES: usize = 100;

/// Knobs shared by all checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    pub limit: usize,
    pub seed: u64,
    /// Largest total size of generated slice objects.
    pub max_total: usize,
    /// Morphisms sampled per object for naturality checks.
    pub samples: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            limit: DEFAULT_LIMIT,
            seed: 0,
            max_total: 3,
            samples: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawFailure {
    pub law: String,
    pub instance: String,
    pub witness: String,
}

/// Hom-set sizes seen while checking one adjunction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomCensus {
    pub adjunction: String,
    pub pairs: u64,
    pub left_morphisms: u64,
    pub right_morphisms: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub checked: u64,
    pub failures: Vec<LawFailure>,
    pub unrecorded_failures: u64,
    pub census: Vec<HomCensus>,
}

impl LawReport {
    pub fn new() -> Self {
        LawReport::default()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.unrecorded_failures == 0
    }

    pub fn failure_count(&self) -> u64 {
        self.failures.len() as u64 + self.unrecorded_failures
    }

    pub fn merge(&mut self, other: LawReport) {
        self.checked += other.checked;
        for failure in other.failures {
            self.push_failure(failure);
        }
        self.unrecorded_failures += other.unrecorded_failures;
        self.census.extend(other.census);
    }

    fn push_failure(&mut self, failure: LawFailure) {
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(failure);
        } else {
            self.unrecorded_failures += 1;
        }
    }

    /// Records one law instance. `Ok(None)` passes, `Ok(Some(w))` fails with
    /// witness `w`, and other errors fail with their message as witness.
    /// Enumeration-limit errors abort the whole check.
    pub fn record(
        &mut self,
        law: &str,
        instance: impl FnOnce() -> String,
        outcome: Result<Option<String>>,
    ) -> Result<()> {
        self.checked += 1;
        let witness = match outcome {
            Ok(None) => return Ok(()),
            Ok(Some(w)) => w,
            Err(e) if e.is_enumeration_limit() => return Err(e),
            Err(e) => e.to_string(),
        };
        self.push_failure(LawFailure {
            law: law.to_string(),
            instance: instance(),
            witness,
        });
        Ok(())
    }

    /// Names of the laws that failed at least once, in first-failure order.
    pub fn failed_laws(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for f in &self.failures {
            if !out.contains(&f.law.as_str()) {
                out.push(&f.law);
            }
        }
        out
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "checked {} law instances, {} failures",
            self.checked,
            self.failure_count()
        )?;
        for c in &self.census {
            writeln!(
                f,
                "  {}: {} hom pairs, {} = {} morphisms",
                c.adjunction, c.pairs, c.left_morphisms, c.right_morphisms
            )?;
        }
        for failure in &self.failures {
            writeln!(f, "  FAIL {} at {}: {}", failure.law, failure.instance, failure.witness)?;
        }
        if self.unrecorded_failures > 0 {
            writeln!(f, "  (+{} more failures)", self.unrecorded_failures)?;
        }
        Ok(())
    }
}

fn differs<C: Category>(cat: &C, a: &C::Mor, b: &C::Mor) -> Result<Option<String>> {
    Ok(cat.witness(a, b))
}

type UnitFn<C> = dyn Fn(&<C as Category>::Obj) -> Result<<C as Category>::Mor> + Send + Sync;
type TransposeFn<C, D> = dyn Fn(&<C as Category>::Obj, &<D as Category>::Obj, &<D as Category>::Mor) -> Result<<C as Category>::Mor>
    + Send
    + Sync;
type UntransposeFn<C, D> = dyn Fn(&<C as Category>::Obj, &<D as Category>::Obj, &<C as Category>::Mor) -> Result<<D as Category>::Mor>
    + Send
    + Sync;

/// `F ⊣ G` with `F : C → D`, unit `η : Id → GF`, counit `ε : FG → Id` and
/// optional explicit transposes.
pub struct Adjunction<C: Category, D: Category> {
    name: String,
    pub left: Functor<C, D>,
    pub right: Functor<D, C>,
    unit: Arc<UnitFn<C>>,
    counit: Arc<UnitFn<D>>,
    transpose: Option<Arc<TransposeFn<C, D>>>,
    untranspose: Option<Arc<UntransposeFn<C, D>>>,
}

impl<C: Category, D: Category> Clone for Adjunction<C, D> {
    fn clone(&self) -> Self {
        Adjunction {
            name: self.name.clone(),
            left: self.left.clone(),
            right: self.right.clone(),
            unit: Arc::clone(&self.unit),
            counit: Arc::clone(&self.counit),
            transpose: self.transpose.clone(),
            untranspose: self.untranspose.clone(),
        }
    }
}

impl<C: Category, D: Category> fmt::Debug for Adjunction<C, D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

impl<C: Category, D: Category> Adjunction<C, D> {
    pub fn new(
        left: Functor<C, D>,
        right: Functor<D, C>,
        unit: impl Fn(&C::Obj) -> Result<C::Mor> + Send + Sync + 'static,
        counit: impl Fn(&D::Obj) -> Result<D::Mor> + Send + Sync + 'static,
    ) -> Self {
        Adjunction {
            name: format!("{} ⊣ {}", left.name(), right.name()),
            left,
            right,
            unit: Arc::new(unit),
            counit: Arc::new(counit),
            transpose: None,
            untranspose: None,
        }
    }

    /// Replaces the transposes derived from the unit and counit.
    pub fn with_transposes(
        mut self,
        transpose: impl Fn(&C::Obj, &D::Obj, &D::Mor) -> Result<C::Mor> + Send + Sync + 'static,
        untranspose: impl Fn(&C::Obj, &D::Obj, &C::Mor) -> Result<D::Mor> + Send + Sync + 'static,
    ) -> Self {
        self.transpose = Some(Arc::new(transpose));
        self.untranspose = Some(Arc::new(untranspose));
        self
    }

    pub fn with_left(mut self, left: Functor<C, D>) -> Self {
        self.left = left;
        self
    }

    pub fn with_unit(mut self, unit: impl Fn(&C::Obj) -> Result<C::Mor> + Send + Sync + 'static) -> Self {
        self.unit = Arc::new(unit);
        self
    }

    pub fn with_counit(mut self, counit: impl Fn(&D::Obj) -> Result<D::Mor> + Send + Sync + 'static) -> Self {
        self.counit = Arc::new(counit);
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn has_explicit_transpose(&self) -> bool {
        self.transpose.is_some()
    }

    /// `η_X : X → GFX`.
    pub fn unit(&self, x: &C::Obj) -> Result<C::Mor> {
        (self.unit)(x)
    }

    /// `ε_Y : FGY → Y`.
    pub fn counit(&self, y: &D::Obj) -> Result<D::Mor> {
        (self.counit)(y)
    }

    /// `Hom(FX, Y) → Hom(X, GY)`, by default `g ↦ G(g) ∘ η_X`.
    pub fn transpose(&self, x: &C::Obj, y: &D::Obj, g: &D::Mor) -> Result<C::Mor> {
        match &self.transpose {
            Some(t) => t(x, y, g),
            None => self.left.src().compose(&self.right.mor(g)?, &self.unit(x)?),
        }
    }

    /// `Hom(X, GY) → Hom(FX, Y)`, by default `h ↦ ε_Y ∘ F(h)`.
    pub fn untranspose(&self, x: &C::Obj, y: &D::Obj, h: &C::Mor) -> Result<D::Mor> {
        match &self.untranspose {
            Some(u) => u(x, y, h),
            None => self.left.dst().compose(&self.counit(y)?, &self.left.mor(h)?),
        }
    }
}

/// `F₂F₁ ⊣ G₁G₂` from `F₁ ⊣ G₁` and `F₂ ⊣ G₂`.
pub fn compose_adjunctions<C: Category, D: Category, E: Category>(
    first: &Adjunction<C, D>,
    second: &Adjunction<D, E>,
) -> Result<Adjunction<C, E>> {
    let left = first.left.then(&second.left)?;
    let right = second.right.then(&first.right)?;
    let (a1, a2) = (first.clone(), second.clone());
    let unit = move |x: &C::Obj| {
        let inner = a2.unit(&a1.left.obj(x)?)?;
        a1.left.src().compose(&a1.right.mor(&inner)?, &a1.unit(x)?)
    };
    let (a1, a2) = (first.clone(), second.clone());
    let counit = move |y: &E::Obj| {
        let inner = a1.counit(&a2.right.obj(y)?)?;
        a2.left.dst().compose(&a2.counit(y)?, &a2.left.mor(&inner)?)
    };
    let (a1, a2) = (first.clone(), second.clone());
    let transpose = move |x: &C::Obj, y: &E::Obj, g: &E::Mor| {
        let middle = a2.transpose(&a1.left.obj(x)?, y, g)?;
        a1.transpose(x, &a2.right.obj(y)?, &middle)
    };
    let (a1, a2) = (first.clone(), second.clone());
    let untranspose = move |x: &C::Obj, y: &E::Obj, h: &C::Mor| {
        let middle = a1.untranspose(x, &a2.right.obj(y)?, h)?;
        a2.untranspose(&a1.left.obj(x)?, y, &middle)
    };
    let name = format!("({}) ∘ ({})", second.name, first.name);
    Ok(Adjunction::new(left, right, unit, counit)
        .with_transposes(transpose, untranspose)
        .renamed(name))
}

/// `Id ⊣ Id` with identity unit and counit.
pub fn identity_adjunction<C: Category>(cat: C) -> Adjunction<C, C> {
    let (c1, c2) = (cat.clone(), cat.clone());
    Adjunction::new(
        Functor::identity(cat.clone()),
        Functor::identity(cat),
        move |x| Ok(c1.identity(x)),
        move |y| Ok(c2.identity(y)),
    )
    .with_transposes(|_, _, g| Ok(g.clone()), |_, _, h| Ok(h.clone()))
}

/// `f_! ⊣ f^*` for `f : B → A`.
pub fn shriek_star_adjunction(f: &FinMap) -> Adjunction<Slice, Slice> {
    let (f1, f2) = (f.clone(), f.clone());
    Adjunction::new(
        dependent_sum(f),
        pullback_functor(f),
        move |x| unit_shriek_star(&f1, x),
        move |y| counit_shriek_star(&f2, y),
    )
}

/// `f^* ⊣ f_*` for `f : B → A`, with elementwise transposes.
pub fn star_pi_adjunction(f: &FinMap, limit: usize) -> Adjunction<Slice, Slice> {
    let (f1, f2, f3, f4) = (f.clone(), f.clone(), f.clone(), f.clone());
    Adjunction::new(
        pullback_functor(f),
        f_star(f, limit),
        move |y| unit_star_pi(&f1, y, limit),
        move |p| counit_star_pi(&f2, p, limit),
    )
    .with_transposes(
        move |y, p, w| transpose_star_pi(&f3, y, &dependent_product_fiberwise(&f3, p, limit)?, w),
        move |y, p, v| untranspose_star_pi(&f4, y, &dependent_product_fiberwise(&f4, p, limit)?, v),
    )
}

/// `(−) × Y ⊣ (−)^Y` on finite sets.
pub fn currying_adjunction(y: &FinSet, limit: usize) -> Adjunction<Sets, Sets> {
    let (y1, y2) = (y.clone(), y.clone());
    let times = Functor::new(
        format!("(−)×{}", y.name()),
        Sets,
        Sets,
        move |x: &FinSet| Ok(product(x, &y1).object),
        move |u: &FinMap| {
            let (src, dst) = (product(u.dom(), &y2), product(u.cod(), &y2));
            src.times(u, &identity(&y2), &dst)
        },
    );
    let (y3, y4) = (y.clone(), y.clone());
    let power = Functor::new(
        format!("(−)^{}", y.name()),
        Sets,
        Sets,
        move |z: &FinSet| Ok(exp(&y3, z, limit)?.carrier),
        move |g: &FinMap| Ok(exp_fmap(g, &y4, limit)?.map),
    );
    let (y5, y6, y7, y8) = (y.clone(), y.clone(), y.clone(), y.clone());
    Adjunction::new(
        times,
        power,
        move |x| {
            let target = product(x, &y5).object;
            exp(&y5, &target, limit)?.curry(x, &identity(&target))
        },
        move |z| Ok(exp(&y6, z, limit)?.ev),
    )
    .with_transposes(
        move |x, z, g| exp(&y7, z, limit)?.curry(x, g),
        move |_, z, h| exp(&y8, z, limit)?.uncurry(h),
    )
}

/// `(−) ×_A q ⊣ (−)^q` in `C/A`.
pub fn slice_currying_adjunction(q: &SliceObj, limit: usize) -> Adjunction<Slice, Slice> {
    let cat = Slice::new(q.base().clone());
    let (q1, q2) = (q.clone(), q.clone());
    let times = Functor::new(
        format!("(−)×_{}{}", q.base().name(), q.total().name()),
        cat.clone(),
        cat.clone(),
        move |x: &SliceObj| Ok(slice_product(x, &q1)?.object),
        move |u: &SliceMor| {
            let (src, dst) = (slice_product(u.src(), &q2)?, slice_product(u.dst(), &q2)?);
            src.times(u, &slice_identity(&q2), &dst)
        },
    );
    let (q3, q4) = (q.clone(), q.clone());
    let power = Functor::new(
        format!("(−)^{}", q.total().name()),
        cat.clone(),
        cat,
        move |p: &SliceObj| Ok(slice_exp(p, &q3, limit)?.object),
        move |h: &SliceMor| Ok(slice_exp_fmap(h, &q4, limit)?.map),
    );
    let (q5, q6, q7, q8) = (q.clone(), q.clone(), q.clone(), q.clone());
    Adjunction::new(
        times,
        power,
        move |x| {
            let prod = slice_product(x, &q5)?;
            slice_exp(&prod.object, &q5, limit)?.curry(x, &slice_identity(&prod.object))
        },
        move |p| Ok(slice_exp(p, &q6, limit)?.ev),
    )
    .with_transposes(
        move |x, p, g| slice_exp(p, &q7, limit)?.curry(x, g),
        move |_, p, h| slice_exp(p, &q8, limit)?.uncurry(h),
    )
}

/// `Δ ⊣ ×` between finite sets and pairs of finite sets.
pub fn diagonal_adjunction() -> Adjunction<Sets, Pairs> {
    let delta = Functor::new(
        "Δ",
        Sets,
        Pairs,
        |x: &FinSet| Ok((x.clone(), x.clone())),
        |u: &FinMap| Ok((u.clone(), u.clone())),
    );
    let times = Functor::new(
        "×",
        Pairs,
        Sets,
        |(y, z): &(FinSet, FinSet)| Ok(product(y, z).object),
        |(g, h): &(FinMap, FinMap)| {
            let (src, dst) = (product(g.dom(), h.dom()), product(g.cod(), h.cod()));
            src.times(g, h, &dst)
        },
    );
    Adjunction::new(
        delta,
        times,
        |x| product(x, x).pairing(&identity(x), &identity(x)),
        |(y, z)| {
            let p = product(y, z);
            Ok((p.pi1, p.pi2))
        },
    )
}

/// Functor laws `F(id) = id` and `F(v ∘ u) = F(v) ∘ F(u)` on `objects`.
pub fn check_functor_laws<C: Category, D: Category>(
    functor: &Functor<C, D>,
    objects: &[C::Obj],
    cfg: &CheckConfig,
) -> Result<LawReport> {
    let (c, d) = (functor.src(), functor.dst());
    let mut report = LawReport::new();
    let mut sampler = Sampler::new(cfg.seed);
    for x in objects {
        let instance = || format!("{} at {}", functor.name(), c.describe_obj(x));
        let outcome = (|| {
            let fx = functor.obj(x)?;
            differs(d, &functor.mor(&c.identity(x))?, &d.identity(&fx))
        })();
        report.record("functor preserves identities", instance, outcome)?;
        for u in sample_morphisms_from(c, x, objects, cfg.samples, &mut sampler, cfg.limit)? {
            let mid = c.target(&u);
            for v in sample_morphisms_from(c, &mid, objects, 1, &mut sampler, cfg.limit)? {
                let instance = || {
                    format!(
                        "{} at {} then {}",
                        functor.name(),
                        c.describe_mor(&u),
                        c.describe_mor(&v)
                    )
                };
                let outcome = (|| {
                    let whole = functor.mor(&c.compose(&v, &u)?)?;
                    let parts = d.compose(&functor.mor(&v)?, &functor.mor(&u)?)?;
                    differs(d, &whole, &parts)
                })();
                report.record("functor preserves composition", instance, outcome)?;
            }
        }
    }
    Ok(report)
}

/// Both triangle identities and naturality of the unit and counit.
pub fn check_triangle_identities<C: Category, D: Category>(
    adj: &Adjunction<C, D>,
    xs: &[C::Obj],
    ys: &[D::Obj],
    cfg: &CheckConfig,
) -> Result<LawReport> {
    let (c, d) = (adj.left.src(), adj.left.dst());
    let (fun_f, fun_g) = (&adj.left, &adj.right);
    let mut report = LawReport::new();
    let mut sampler = Sampler::new(cfg.seed);
    for x in xs {
        let instance = || format!("{}, X = {}", adj.name, c.describe_obj(x));
        let outcome = (|| {
            let fx = fun_f.obj(x)?;
            let lhs = d.compose(&adj.counit(&fx)?, &fun_f.mor(&adj.unit(x)?)?)?;
            differs(d, &lhs, &d.identity(&fx))
        })();
        report.record("triangle εF ∘ Fη = id", instance, outcome)?;
    }
    for y in ys {
        let instance = || format!("{}, Y = {}", adj.name, d.describe_obj(y));
        let outcome = (|| {
            let gy = fun_g.obj(y)?;
            let lhs = c.compose(&fun_g.mor(&adj.counit(y)?)?, &adj.unit(&gy)?)?;
            differs(c, &lhs, &c.identity(&gy))
        })();
        report.record("triangle Gε ∘ ηG = id", instance, outcome)?;
    }
    for x in xs {
        for u in sample_morphisms_from(c, x, xs, cfg.samples, &mut sampler, cfg.limit)? {
            let instance = || format!("{}, u = {}", adj.name, c.describe_mor(&u));
            let outcome = (|| {
                let top = c.compose(&adj.unit(&c.target(&u))?, &u)?;
                let bottom = c.compose(&fun_g.mor(&fun_f.mor(&u)?)?, &adj.unit(x)?)?;
                differs(c, &top, &bottom)
            })();
            report.record("unit naturality", instance, outcome)?;
        }
    }
    for y in ys {
        for v in sample_morphisms_from(d, y, ys, cfg.samples, &mut sampler, cfg.limit)? {
            let instance = || format!("{}, v = {}", adj.name, d.describe_mor(&v));
            let outcome = (|| {
                let top = d.compose(&adj.counit(&d.target(&v))?, &fun_f.mor(&fun_g.mor(&v)?)?)?;
                let bottom = d.compose(&v, &adj.counit(y)?)?;
                differs(d, &top, &bottom)
            })();
            report.record("counit naturality", instance, outcome)?;
        }
    }
    Ok(report)
}

struct Side<O, I, M, N> {
    obj: O,
    image: Result<I>,
    /// Sampled morphisms with their images under the functor.
    probes: Vec<(M, Result<N>)>,
}

/// The hom-set bijection `Hom(FX, Y) ≅ Hom(X, GY)` and its naturality.
pub fn check_hom_bijection<C: Category, D: Category>(
    adj: &Adjunction<C, D>,
    xs: &[C::Obj],
    ys: &[D::Obj],
    cfg: &CheckConfig,
) -> Result<LawReport> {
    let (c, d) = (adj.left.src(), adj.left.dst());
    let mut report = LawReport::new();
    let mut census = HomCensus {
        adjunction: adj.name.clone(),
        pairs: 0,
        left_morphisms: 0,
        right_morphisms: 0,
    };
    let mut sampler = Sampler::new(cfg.seed);
    let mut left_side = Vec::with_capacity(xs.len());
    for x in xs {
        let probes = sample_morphisms_into(c, x, xs, cfg.samples, &mut sampler, cfg.limit)?
            .into_iter()
            .map(|h| {
                let fh = adj.left.mor(&h);
                (h, fh)
            })
            .collect();
        left_side.push(Side {
            obj: x.clone(),
            image: adj.left.obj(x),
            probes,
        });
    }
    let mut right_side = Vec::with_capacity(ys.len());
    for y in ys {
        let probes = sample_morphisms_from(d, y, ys, cfg.samples, &mut sampler, cfg.limit)?
            .into_iter()
            .map(|k| {
                let gk = adj.right.mor(&k);
                (k, gk)
            })
            .collect();
        right_side.push(Side {
            obj: y.clone(),
            image: adj.right.obj(y),
            probes,
        });
    }
    for xside in &left_side {
        let x = &xside.obj;
        let unit = adj.has_explicit_transpose().then(|| adj.unit(x));
        for yside in &right_side {
            let y = &yside.obj;
            let instance = || format!("{}, X = {}, Y = {}", adj.name, c.describe_obj(x), d.describe_obj(y));
            let (fx, gy) = match (&xside.image, &yside.image) {
                (Ok(fx), Ok(gy)) => (fx, gy),
                (Err(e), _) | (_, Err(e)) => {
                    report.record("functor defined", instance, Err(e.clone()))?;
                    continue;
                }
            };
            let left = d.hom(fx, y, cfg.limit)?;
            let right = c.hom(x, gy, cfg.limit)?;
            census.pairs += 1;
            census.left_morphisms += left.len() as u64;
            census.right_morphisms += right.len() as u64;
            let sizes = (left.len() != right.len())
                .then(|| format!("|Hom(FX,Y)| = {} but |Hom(X,GY)| = {}", left.len(), right.len()));
            report.record("hom-set cardinality", instance, Ok(sizes))?;
            let mut transposed = Vec::with_capacity(left.len());
            for g in &left {
                let t = adj.transpose(x, y, g);
                let outcome = t.clone().and_then(|t| {
                    if c.source(&t) != *x || c.target(&t) != *gy {
                        return Ok(Some(format!(
                            "transpose of {} is {}",
                            d.describe_mor(g),
                            c.describe_mor(&t)
                        )));
                    }
                    differs(d, &adj.untranspose(x, y, &t)?, g)
                });
                report.record("untranspose ∘ transpose = id", instance, outcome)?;
                transposed.push(t);
            }
            for h in &right {
                let outcome = adj
                    .untranspose(x, y, h)
                    .and_then(|g| adj.transpose(x, y, &g))
                    .and_then(|back| differs(c, &back, h));
                report.record("transpose ∘ untranspose = id", instance, outcome)?;
            }
            for (g, t) in left.iter().zip(&transposed) {
                let Ok(t) = t else { continue };
                for (h, fh) in &xside.probes {
                    let outcome = (|| {
                        let fh = fh.clone()?;
                        let x2 = c.source(h);
                        let lhs = adj.transpose(&x2, y, &d.compose(g, &fh)?)?;
                        let rhs = c.compose(t, h)?;
                        differs(c, &lhs, &rhs)
                    })();
                    report.record("transpose natural in X", instance, outcome)?;
                }
                for (k, gk) in &yside.probes {
                    let outcome = (|| {
                        let gk = gk.clone()?;
                        let y2 = d.target(k);
                        let lhs = adj.transpose(x, &y2, &d.compose(k, g)?)?;
                        let rhs = c.compose(&gk, t)?;
                        differs(c, &lhs, &rhs)
                    })();
                    report.record("transpose natural in Y", instance, outcome)?;
                }
                if let Some(unit) = &unit {
                    let outcome = unit
                        .clone()
                        .and_then(|eta| c.compose(&adj.right.mor(g)?, &eta))
                        .and_then(|via_unit| differs(c, t, &via_unit));
                    report.record("transpose agrees with unit", instance, outcome)?;
                }
            }
        }
    }
    report.census.push(census);
    Ok(report)
}

/// Triangle identities and hom-bijection together, plus the requirement
/// that both characterisations give the same verdict.
pub fn certify<C: Category, D: Category>(
    adj: &Adjunction<C, D>,
    xs: &[C::Obj],
    ys: &[D::Obj],
    cfg: &CheckConfig,
) -> Result<LawReport> {
    let mut report = check_triangle_identities(adj, xs, ys, cfg)?;
    let hom = check_hom_bijection(adj, xs, ys, cfg)?;
    let (tri_ok, hom_ok) = (report.passed(), hom.passed());
    report.merge(hom);
    let verdict =
        (tri_ok != hom_ok).then(|| format!("triangle identities pass = {tri_ok}, hom-bijection passes = {hom_ok}"));
    report.record("both definitions agree", || adj.name.clone(), Ok(verdict))?;
    Ok(report)
}

/// Instances over `f`'s domain and codomain.
fn chain_instances(f: &FinMap, cfg: &CheckConfig) -> Result<(Vec<SliceObj>, Vec<SliceObj>)> {
    let over_b = slice_instances(f.dom(), cfg.max_total, cfg.seed, cfg.limit)?;
    let over_a = slice_instances(f.cod(), cfg.max_total, cfg.seed.wrapping_add(1), cfg.limit)?;
    Ok((over_b, over_a))
}

/// `f_! ⊣ f^* ⊣ f_*`: functor laws and both adjunctions.
pub fn check_chain(f: &FinMap, cfg: &CheckConfig) -> Result<LawReport> {
    let (over_b, over_a) = chain_instances(f, cfg)?;
    let mut report = LawReport::new();
    report.merge(check_functor_laws(&dependent_sum(f), &over_b, cfg)?);
    report.merge(check_functor_laws(&pullback_functor(f), &over_a, cfg)?);
    report.merge(check_functor_laws(&f_star(f, cfg.limit), &over_b, cfg)?);
    report.merge(certify(&shriek_star_adjunction(f), &over_b, &over_a, cfg)?);
    report.merge(certify(&star_pi_adjunction(f, cfg.limit), &over_a, &over_b, cfg)?);
    Ok(report)
}

/// Identity on labels `a → b` between slice objects with the same elements.
pub fn relabel_iso(a: &SliceObj, b: &SliceObj) -> Result<SliceMor> {
    let table = a
        .total()
        .elements()
        .iter()
        .map(|e| {
            b.total().index_of(e.as_str()).ok_or_else(|| Error::UnknownElement {
                set: b.total().name().to_string(),
                element: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let m = slice_mor(
        FinMap::new(a.total().clone(), b.total().clone(), table)?,
        a.clone(),
        b.clone(),
    )?;
    if !m.mediating().is_bijective() {
        return Err(Error::ShapeMismatch {
            reason: format!("{} and {} have different sizes", a.summary(), b.summary()),
        });
    }
    Ok(m)
}

/// Natural isomorphism `F ≅ G` given by identity on labels, checked on
/// objects and on sampled morphisms.
pub fn check_label_iso(
    law: &str,
    first: &SliceFunctor,
    second: &SliceFunctor,
    objects: &[SliceObj],
    cfg: &CheckConfig,
) -> Result<LawReport> {
    let cat = first.src().clone();
    let mut report = LawReport::new();
    let mut sampler = Sampler::new(cfg.seed);
    for x in objects {
        let instance = || format!("{} vs {} at {}", first.name(), second.name(), x.summary());
        let outcome = (|| {
            relabel_iso(&first.obj(x)?, &second.obj(x)?)?;
            Ok(None)
        })();
        report.record(&format!("{law} on objects"), instance, outcome)?;
        for u in sample_morphisms_from(&cat, x, objects, cfg.samples, &mut sampler, cfg.limit)? {
            let instance = || format!("{} vs {} at {:?}", first.name(), second.name(), u);
            let outcome = (|| {
                let (fu, gu) = (first.mor(&u)?, second.mor(&u)?);
                let src = relabel_iso(fu.src(), gu.src())?;
                let dst = relabel_iso(fu.dst(), gu.dst())?;
                let top = slice_compose(&dst, &fu)?;
                let bottom = slice_compose(&gu, &src)?;
                Ok(cat.witness(&top, &bottom))
            })();
            report.record(&format!("{law} naturality"), instance, outcome)?;
        }
    }
    Ok(report)
}

/// For `f : C → A`, treats `f` as an object of `C/A` and checks that
/// `(−) ×_A C ≅ f_! f^*`, that slice exponentiation by `f` is right adjoint
/// to it, that the composite `f_! f^* ⊣ f_* f^*` holds, and that
/// `f_* f^* y ≅ y^f`.
pub fn slice_exp_as_composite(f: &FinMap, cfg: &CheckConfig) -> Result<LawReport> {
    let q = SliceObj::new(f.clone());
    let max_total = cfg.max_total.min(SLICE_EXP_MAX_TOTAL);
    let ys = slice_instances(f.cod(), max_total, cfg.seed, cfg.limit)?;
    let currying = slice_currying_adjunction(&q, cfg.limit);
    let composite = compose_adjunctions(&star_pi_adjunction(f, cfg.limit), &shriek_star_adjunction(f))?;
    let mut report = LawReport::new();
    report.merge(check_label_iso(
        "(−)×_A C ≅ f_!f^*",
        &currying.left,
        &composite.left,
        &ys,
        cfg,
    )?);
    report.merge(certify(&currying, &ys, &ys, cfg)?);
    report.merge(certify(&composite, &ys, &ys, cfg)?);
    for y in &ys {
        let instance = || format!("(−)^C ≅ f_*f^* at {}", y.summary());
        let outcome = (|| {
            let e = slice_exp(y, &q, cfg.limit)?;
            let pushed = composite.left.obj(&e.object)?;
            let ev = slice_mor(e.ev.mediating().clone(), pushed, y.clone())?;
            let phi = composite.transpose(&e.object, y, &ev)?;
            Ok((!phi.mediating().is_bijective()).then(|| format!("comparison {:?} is not bijective", phi.mediating())))
        })();
        report.record("(−)^C ≅ f_*f^*", instance, outcome)?;
    }
    Ok(report)
}

/// The composite of `f_! ⊣ f^*` and `g_! ⊣ g^*`, certified, with its left
/// adjoint compared against `(g ∘ f)_!`.
pub fn check_composite_sum(f: &FinMap, g: &FinMap, cfg: &CheckConfig) -> Result<LawReport> {
    let composite = compose_adjunctions(&shriek_star_adjunction(f), &shriek_star_adjunction(g))?;
    let xs = slice_instances(f.dom(), cfg.max_total, cfg.seed, cfg.limit)?;
    let ys = slice_instances(g.cod(), cfg.max_total, cfg.seed.wrapping_add(1), cfg.limit)?;
    let mut report = check_hom_bijection(&composite, &xs, &ys, cfg)?;
    let direct = dependent_sum(&compose(g, f)?);
    report.merge(check_label_iso("g_!f_! ≅ (g∘f)_!", &composite.left, &direct, &xs, cfg)?);
    Ok(report)
}

/// `Δ ⊣ ×` at set sizes up to 2.
pub fn diagonal_product_adjunction(cfg: &CheckConfig) -> Result<LawReport> {
    let sets = set_instances(2, "X", "x");
    let pairs: Vec<(FinSet, FinSet)> = sets
        .iter()
        .flat_map(|y| {
            sets.iter()
                .map(move |z| (y.clone(), z.renamed(format!("Z{}", z.len()))))
        })
        .collect();
    certify(&diagonal_adjunction(), &sets, &pairs, cfg)
}

/// `(−) × Y ⊣ (−)^Y` for every `|Y| ≤ max_size`, on sets of size at most `max_size`.
pub fn check_currying(max_size: usize, cfg: &CheckConfig) -> Result<LawReport> {
    let xs = set_instances(max_size, "X", "x");
    let zs = set_instances(max_size, "Z", "z");
    let mut report = LawReport::new();
    for y in set_instances(max_size, "Y", "y") {
        report.merge(certify(&currying_adjunction(&y, cfg.limit), &xs, &zs, cfg)?);
    }
    Ok(report)
}

/// Injected defects used as negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// The left functor's morphism map is shifted within fibers.
    Functor,
    /// The unit is shifted within fibers.
    Unit,
    /// The counit is shifted within fibers.
    Counit,
    /// The transpose is shifted within fibers.
    Transpose,
}

impl Fault {
    pub const ALL: [Fault; 4] = [Fault::Functor, Fault::Unit, Fault::Counit, Fault::Transpose];

    pub fn name(self) -> &'static str {
        match self {
            Fault::Functor => "functor",
            Fault::Unit => "unit",
            Fault::Counit => "counit",
            Fault::Transpose => "transpose",
        }
    }
}

impl std::str::FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Fault::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown fault {s:?}; expected one of functor, unit, counit, transpose"))
    }
}

/// Sends every image to the next element of its fiber, cyclically. The
/// result is again a slice morphism; it differs from `m` whenever some
/// image lies in a fiber with at least two elements.
pub fn fiber_shift(m: &SliceMor) -> SliceMor {
    let dst = m.dst();
    let fibers = dst.fibers();
    let mut next = vec![0; dst.total().len()];
    for fiber in &fibers {
        for (r, &t) in fiber.iter().enumerate() {
            next[t] = fiber[(r + 1) % fiber.len()];
        }
    }
    let table = m.mediating().table().iter().map(|&t| next[t]).collect();
    let u = FinMap::new(m.src().total().clone(), dst.total().clone(), table).expect("indices in range");
    slice_mor(u, m.src().clone(), dst.clone()).expect("shifting within fibers keeps triangles")
}

/// `adj` with one defect injected.
pub fn corrupt(adj: &Adjunction<Slice, Slice>, fault: Fault) -> Adjunction<Slice, Slice> {
    let base = adj.clone();
    let name = format!("{} [{} fault]", adj.name, fault.name());
    match fault {
        Fault::Functor => {
            let inner = adj.left.clone();
            let inner2 = adj.left.clone();
            let left = Functor::new(
                inner.name().to_string(),
                inner.src().clone(),
                inner.dst().clone(),
                move |x| inner.obj(x),
                move |m| Ok(fiber_shift(&inner2.mor(m)?)),
            );
            base.with_left(left)
        }
        Fault::Unit => {
            let a = adj.clone();
            base.with_unit(move |x| Ok(fiber_shift(&a.unit(x)?)))
        }
        Fault::Counit => {
            let a = adj.clone();
            base.with_counit(move |y| Ok(fiber_shift(&a.counit(y)?)))
        }
        Fault::Transpose => {
            let (a, b) = (adj.clone(), adj.clone());
            base.with_transposes(
                move |x, y, g| Ok(fiber_shift(&a.transpose(x, y, g)?)),
                move |x, y, h| b.untranspose(x, y, h),
            )
        }
    }
    .renamed(name)
}

/// The chain check with `fault` injected into both adjunctions.
pub fn check_chain_with_fault(f: &FinMap, fault: Fault, cfg: &CheckConfig) -> Result<LawReport> {
    let (over_b, over_a) = chain_instances(f, cfg)?;
    let shriek = corrupt(&shriek_star_adjunction(f), fault);
    let pi = corrupt(&star_pi_adjunction(f, cfg.limit), fault);
    let mut report = LawReport::new();
    report.merge(check_functor_laws(&shriek.left, &over_b, cfg)?);
    report.merge(check_functor_laws(&pi.left, &over_a, cfg)?);
    report.merge(certify(&shriek, &over_b, &over_a, cfg)?);
    report.merge(certify(&pi, &over_a, &over_b, cfg)?);
    Ok(report)
}

/// `f^* y` for `y` over `A`, exposed for report listings.
pub fn pulled_back(f: &FinMap, y: &SliceObj) -> Result<SliceObj> {
    Ok(base_change_obj(f, y)?.0)
}
