//! Categories the harness can enumerate, and functors between them.
//!
//! Functors are extensional: a pair of computable maps on objects and
//! morphisms. Nothing about a functor is ever compared intensionally; laws
//! are checked by running the maps on instances.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finset::{compose, hom_set, identity, FinMap, FinSet};

/// A locally finite category whose hom-sets can be listed.
pub trait Category: Clone + Send + Sync + 'static {
    type Obj: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;
    type Mor: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn name(&self) -> String;

    fn source(&self, m: &Self::Mor) -> Self::Obj;

    fn target(&self, m: &Self::Mor) -> Self::Obj;

    fn identity(&self, x: &Self::Obj) -> Self::Mor;

    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;

    fn hom(&self, x: &Self::Obj, y: &Self::Obj, limit: usize) -> Result<Vec<Self::Mor>>;

    /// Whether `x` is an object of this category. Fails with a description of
    /// the mismatch otherwise.
    fn check_object(&self, x: &Self::Obj) -> Result<()>;

    /// Whether two category values denote the same category.
    fn same_category(&self, other: &Self) -> bool;

    fn describe_obj(&self, x: &Self::Obj) -> String;

    fn describe_mor(&self, m: &Self::Mor) -> String;

    /// Whether `m` is an isomorphism.
    fn is_iso(&self, m: &Self::Mor) -> bool;

    /// A description of where `a` and `b` differ, or `None` if they are equal.
    fn witness(&self, a: &Self::Mor, b: &Self::Mor) -> Option<String> {
        if a == b {
            None
        } else {
            Some(format!("{} ≠ {}", self.describe_mor(a), self.describe_mor(b)))
        }
    }
}

pub(crate) fn map_witness(a: &FinMap, b: &FinMap) -> Option<String> {
    if a.dom() != b.dom() || a.cod() != b.cod() {
        return Some(format!("{a:?} and {b:?} have different shapes"));
    }
    a.first_difference(b).map(|x| {
        let theirs = b.apply(x.as_str()).map(|e| e.to_string()).unwrap_or_default();
        let mine = a.apply(x.as_str()).map(|e| e.to_string()).unwrap_or_default();
        format!("{x} ↦ {mine} vs {theirs}")
    })
}

/// The ambient category of finite sets.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Sets;

impl Category for Sets {
    type Obj = FinSet;
    type Mor = FinMap;

    fn name(&self) -> String {
        "FinSet".to_string()
    }

    fn source(&self, m: &FinMap) -> FinSet {
        m.dom().clone()
    }

    fn target(&self, m: &FinMap) -> FinSet {
        m.cod().clone()
    }

    fn identity(&self, x: &FinSet) -> FinMap {
        identity(x)
    }

    fn compose(&self, g: &FinMap, f: &FinMap) -> Result<FinMap> {
        compose(g, f)
    }

    fn hom(&self, x: &FinSet, y: &FinSet, limit: usize) -> Result<Vec<FinMap>> {
        hom_set(x, y, limit)
    }

    fn check_object(&self, _x: &FinSet) -> Result<()> {
        Ok(())
    }

    fn same_category(&self, _other: &Self) -> bool {
        true
    }

    fn describe_obj(&self, x: &FinSet) -> String {
        x.summary()
    }

    fn describe_mor(&self, m: &FinMap) -> String {
        format!("{m:?}")
    }

    fn is_iso(&self, m: &FinMap) -> bool {
        m.is_bijective()
    }

    fn witness(&self, a: &FinMap, b: &FinMap) -> Option<String> {
        map_witness(a, b)
    }
}

/// The product category `FinSet × FinSet`, composed componentwise.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Pairs;

impl Category for Pairs {
    type Obj = (FinSet, FinSet);
    type Mor = (FinMap, FinMap);

    fn name(&self) -> String {
        "FinSet×FinSet".to_string()
    }

    fn source(&self, m: &Self::Mor) -> Self::Obj {
        (m.0.dom().clone(), m.1.dom().clone())
    }

    fn target(&self, m: &Self::Mor) -> Self::Obj {
        (m.0.cod().clone(), m.1.cod().clone())
    }

    fn identity(&self, x: &Self::Obj) -> Self::Mor {
        (identity(&x.0), identity(&x.1))
    }

    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor> {
        Ok((compose(&g.0, &f.0)?, compose(&g.1, &f.1)?))
    }

    fn hom(&self, x: &Self::Obj, y: &Self::Obj, limit: usize) -> Result<Vec<Self::Mor>> {
        let first = hom_set(&x.0, &y.0, limit)?;
        let second = hom_set(&x.1, &y.1, limit)?;
        crate::error::guard((first.len() as u128) * (second.len() as u128), limit)?;
        let mut out = Vec::with_capacity(first.len() * second.len());
        for a in &first {
            for b in &second {
                out.push((a.clone(), b.clone()));
            }
        }
        Ok(out)
    }

    fn check_object(&self, _x: &Self::Obj) -> Result<()> {
        Ok(())
    }

    fn same_category(&self, _other: &Self) -> bool {
        true
    }

    fn describe_obj(&self, x: &Self::Obj) -> String {
        format!("({}, {})", x.0.summary(), x.1.summary())
    }

    fn describe_mor(&self, m: &Self::Mor) -> String {
        format!("({:?}, {:?})", m.0, m.1)
    }

    fn is_iso(&self, m: &Self::Mor) -> bool {
        m.0.is_bijective() && m.1.is_bijective()
    }

    fn witness(&self, a: &Self::Mor, b: &Self::Mor) -> Option<String> {
        map_witness(&a.0, &b.0)
            .map(|w| format!("first component: {w}"))
            .or_else(|| map_witness(&a.1, &b.1).map(|w| format!("second component: {w}")))
    }
}

type ObjFn<C, D> = dyn Fn(&<C as Category>::Obj) -> Result<<D as Category>::Obj> + Send + Sync;
type MorFn<C, D> = dyn Fn(&<C as Category>::Mor) -> Result<<D as Category>::Mor> + Send + Sync;

/// A computable functor `C → D`.
pub struct Functor<C: Category, D: Category> {
    name: String,
    src: C,
    dst: D,
    on_obj: Arc<ObjFn<C, D>>,
    on_mor: Arc<MorFn<C, D>>,
}

impl<C: Category, D: Category> Clone for Functor<C, D> {
    fn clone(&self) -> Self {
        Functor {
            name: self.name.clone(),
            src: self.src.clone(),
            dst: self.dst.clone(),
            on_obj: Arc::clone(&self.on_obj),
            on_mor: Arc::clone(&self.on_mor),
        }
    }
}

impl<C: Category, D: Category> fmt::Debug for Functor<C, D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} → {}", self.name, self.src.name(), self.dst.name())
    }
}

impl<C: Category, D: Category> Functor<C, D> {
    pub fn new(
        name: impl Into<String>,
        src: C,
        dst: D,
        on_obj: impl Fn(&C::Obj) -> Result<D::Obj> + Send + Sync + 'static,
        on_mor: impl Fn(&C::Mor) -> Result<D::Mor> + Send + Sync + 'static,
    ) -> Self {
        Functor {
            name: name.into(),
            src,
            dst,
            on_obj: Arc::new(on_obj),
            on_mor: Arc::new(on_mor),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn src(&self) -> &C {
        &self.src
    }

    pub fn dst(&self) -> &D {
        &self.dst
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn obj(&self, x: &C::Obj) -> Result<D::Obj> {
        self.src.check_object(x)?;
        (self.on_obj)(x)
    }

    pub fn mor(&self, m: &C::Mor) -> Result<D::Mor> {
        self.src.check_object(&self.src.source(m))?;
        (self.on_mor)(m)
    }

    /// `next ∘ self`.
    pub fn then<E: Category>(&self, next: &Functor<D, E>) -> Result<Functor<C, E>> {
        if !self.dst.same_category(&next.src) {
            return Err(Error::BaseMismatch {
                expected: next.src.name(),
                found: self.dst.name(),
            });
        }
        let (f1, g1) = (self.clone(), next.clone());
        let (f2, g2) = (self.clone(), next.clone());
        Ok(Functor::new(
            format!("{}∘{}", next.name, self.name),
            self.src.clone(),
            next.dst.clone(),
            move |x| g1.obj(&f1.obj(x)?),
            move |m| g2.mor(&f2.mor(m)?),
        ))
    }
}

impl<C: Category> Functor<C, C> {
    pub fn identity(cat: C) -> Self {
        Functor::new(
            "Id",
            cat.clone(),
            cat,
            |x: &C::Obj| Ok(x.clone()),
            |m: &C::Mor| Ok(m.clone()),
        )
    }
}
