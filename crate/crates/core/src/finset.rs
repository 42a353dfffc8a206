//! The ambient category of finite sets and total functions.
//!
//! A [`FinSet`] is an ordered list of distinct [`Element`] labels. The order
//! drives enumeration and never changes a mathematical answer: equality of
//! sets is extensional (same labels, names ignored), and a [`FinMap`] is equal
//! to another exactly when domains and codomains agree as sets and the two
//! tables agree pointwise.
//!
//! Constructed objects use fixed label encodings:
//!
//! | construction | label            |
//! |--------------|------------------|
//! | pair         | `⟨x|y⟩`          |
//! | coproduct    | `inl⟨x⟩`, `inr⟨y⟩` |
//! | graph        | `fn{x1↦y1;x2↦y2}` |
//! | section      | `sec(a){b1↦e,b2↦e}` |
//!
//! User labels may not contain the characters in [`RESERVED`], so every
//! encoding decodes uniquely even when nested.

use std::borrow::Borrow;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{guard, saturating_pow, Error, Result};

/// Characters used by the canonical encodings of constructed elements.
pub const RESERVED: &[char] = &['⟨', '⟩', '|', '{', '}', '↦', ';', ','];

/// Default bound on the size of any enumeration.
pub const DEFAULT_LIMIT: usize = 10_000;

/// An element label.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(Arc<str>);

impl Element {
    /// A user-supplied label: nonempty, no newline, no reserved character.
    pub fn new(label: impl AsRef<str>) -> Result<Self> {
        let label = label.as_ref();
        let reason = if label.is_empty() {
            Some("empty label")
        } else if label.contains(['\n', '\r']) {
            Some("embedded newline")
        } else if label.contains(RESERVED) {
            Some("contains a reserved character")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::InvalidLabel {
                label: label.to_string(),
                reason,
            }),
            None => Ok(Element(label.into())),
        }
    }

    pub(crate) fn composite(label: String) -> Self {
        Element(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// `⟨x|y⟩`
    pub fn pair(x: &Element, y: &Element) -> Element {
        Element::composite(format!("⟨{x}|{y}⟩"))
    }

    /// `inl⟨x⟩`
    pub fn inl(x: &Element) -> Element {
        Element::composite(format!("inl⟨{x}⟩"))
    }

    /// `inr⟨y⟩`
    pub fn inr(y: &Element) -> Element {
        Element::composite(format!("inr⟨{y}⟩"))
    }

    /// `fn{x1↦y1;…}` for the graph given in domain order.
    pub fn graph<'a>(entries: impl IntoIterator<Item = (&'a Element, &'a Element)>) -> Element {
        let body: Vec<String> = entries.into_iter().map(|(x, y)| format!("{x}↦{y}")).collect();
        Element::composite(format!("fn{{{}}}", body.join(";")))
    }

    /// `sec(a){b1↦e1,…}` for a section over `a` given in fiber order.
    pub fn section<'a>(over: &Element, entries: impl IntoIterator<Item = (&'a Element, &'a Element)>) -> Element {
        let body: Vec<String> = entries.into_iter().map(|(b, e)| format!("{b}↦{e}")).collect();
        Element::composite(format!("sec({over}){{{}}}", body.join(",")))
    }
}

impl Borrow<str> for Element {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

struct SetInner {
    name: String,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
}

/// A named finite set. Cloning is cheap.
#[derive(Clone)]
pub struct FinSet(Arc<SetInner>);

impl FinSet {
    pub fn new(name: impl Into<String>, elements: impl IntoIterator<Item = Element>) -> Result<Self> {
        let name = name.into();
        let elements: Vec<Element> = elements.into_iter().collect();
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::DuplicateElement {
                    set: name,
                    element: e.to_string(),
                });
            }
        }
        Ok(FinSet(Arc::new(SetInner { name, elements, index })))
    }

    /// Builds a set from user labels.
    pub fn from_labels<S: AsRef<str>>(name: impl Into<String>, labels: &[S]) -> Result<Self> {
        let elements = labels.iter().map(Element::new).collect::<Result<Vec<_>>>()?;
        FinSet::new(name, elements)
    }

    /// A set `{prefix0, prefix1, …}` of the given size.
    pub fn numbered(name: impl Into<String>, prefix: &str, size: usize) -> Self {
        let elements = (0..size).map(|i| Element::composite(format!("{prefix}{i}")));
        FinSet::new(name, elements).expect("numbered labels are distinct")
    }

    /// Constructions whose labels are distinct by the injectivity of the encodings.
    pub(crate) fn constructed(name: impl Into<String>, elements: Vec<Element>) -> Self {
        FinSet::new(name, elements).expect("canonical encodings are injective")
    }

    pub fn empty() -> Self {
        FinSet::constructed("∅", Vec::new())
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn renamed(&self, name: impl Into<String>) -> FinSet {
        FinSet::constructed(name, self.0.elements.clone())
    }

    pub fn len(&self) -> usize {
        self.0.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.0.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.0.elements[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.index.get(label).copied()
    }

    pub(crate) fn require_index(&self, label: &str) -> Result<usize> {
        self.index_of(label).ok_or_else(|| Error::UnknownElement {
            set: self.summary(),
            element: label.to_string(),
        })
    }

    pub fn contains(&self, label: &str) -> bool {
        self.0.index.contains_key(label)
    }

    /// Same elements in the same stored order (or literally the same value).
    pub fn same_order(&self, other: &FinSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.elements == other.0.elements
    }

    /// Short rendering for error messages and listings.
    pub fn summary(&self) -> String {
        const SHOWN: usize = 6;
        let shown: Vec<&str> = self.elements().iter().take(SHOWN).map(Element::as_str).collect();
        let more = if self.len() > SHOWN {
            format!(", …(+{})", self.len() - SHOWN)
        } else {
            String::new()
        };
        format!("{}{{{}{}}}", self.name(), shown.join(","), more)
    }
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        if self.same_order(other) {
            return true;
        }
        self.len() == other.len() && self.elements().iter().all(|e| other.contains(e.as_str()))
    }
}

impl Eq for FinSet {}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {:?}", self.name(), self.elements())
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}

/// A total function between finite sets, stored as a table of codomain
/// indices in domain order.
#[derive(Clone)]
pub struct FinMap {
    name: Option<Arc<str>>,
    dom: FinSet,
    cod: FinSet,
    table: Arc<[usize]>,
}

impl FinMap {
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.len() {
            return Err(Error::NotTotal {
                set: dom.summary(),
                problem: format!("table has {} entries for {} elements", table.len(), dom.len()),
            });
        }
        if let Some((i, _)) = table.iter().enumerate().find(|(_, &j)| j >= cod.len()) {
            return Err(Error::UnknownElement {
                set: cod.summary(),
                element: format!("value #{} for {}", table[i], dom.element(i)),
            });
        }
        Ok(FinMap::unchecked(dom, cod, table))
    }

    pub(crate) fn unchecked(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), dom.len());
        debug_assert!(table.iter().all(|&j| j < cod.len()));
        FinMap {
            name: None,
            dom,
            cod,
            table: table.into(),
        }
    }

    /// Tabulates `f` over the domain indices.
    pub fn from_fn(dom: FinSet, cod: FinSet, f: impl FnMut(usize) -> usize) -> Result<Self> {
        let table = (0..dom.len()).map(f).collect();
        FinMap::new(dom, cod, table)
    }

    /// Builds a map from `(x, f(x))` label pairs. Every domain element must
    /// appear exactly once.
    pub fn from_pairs<S: AsRef<str>>(dom: FinSet, cod: FinSet, pairs: &[(S, S)]) -> Result<Self> {
        let mut table = vec![None; dom.len()];
        for (x, y) in pairs {
            let i = dom.require_index(x.as_ref())?;
            let j = cod.require_index(y.as_ref())?;
            if table[i].replace(j).is_some() {
                return Err(Error::NotTotal {
                    set: dom.summary(),
                    problem: format!("{} is assigned twice", x.as_ref()),
                });
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, j)| {
                j.ok_or_else(|| Error::NotTotal {
                    set: dom.summary(),
                    problem: format!("{} has no value", dom.element(i)),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FinMap::unchecked(dom, cod, table))
    }

    pub fn with_name(mut self, name: impl AsRef<str>) -> Self {
        self.name = Some(name.as_ref().into());
        self
    }

    /// The declared name, or `f` for anonymous maps.
    pub fn name(&self) -> &str {
        self.name.as_deref().unwrap_or("f")
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Index of the image of the `i`-th domain element.
    pub fn at(&self, i: usize) -> usize {
        self.table[i]
    }

    /// Image of the `i`-th domain element.
    pub fn image(&self, i: usize) -> &Element {
        self.cod.element(self.table[i])
    }

    pub fn apply(&self, x: &str) -> Result<&Element> {
        let i = self.dom.require_index(x)?;
        Ok(self.image(i))
    }

    /// The table re-expressed over extensionally equal domain and codomain
    /// orderings: entry `i` is the index in `cod` of the image of `dom[i]`.
    pub fn table_over(&self, dom: &FinSet, cod: &FinSet) -> Result<Vec<usize>> {
        if self.dom != *dom {
            return Err(Error::DomainMismatch {
                expected: dom.summary(),
                found: self.dom.summary(),
            });
        }
        if self.cod != *cod {
            return Err(Error::CodomainMismatch {
                expected: cod.summary(),
                found: self.cod.summary(),
            });
        }
        let same_dom = self.dom.same_order(dom);
        let same_cod = self.cod.same_order(cod);
        Ok((0..dom.len())
            .map(|i| {
                let own = if same_dom {
                    i
                } else {
                    self.dom.index_of(dom.element(i).as_str()).expect("equal sets")
                };
                let j = self.table[own];
                if same_cod {
                    j
                } else {
                    cod.index_of(self.cod.element(j).as_str()).expect("equal sets")
                }
            })
            .collect())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        self.table.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        for &j in self.table.iter() {
            seen[j] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.len() == self.cod.len() && self.is_injective()
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Option<FinMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut table = vec![0; self.cod.len()];
        for (i, &j) in self.table.iter().enumerate() {
            table[j] = i;
        }
        Some(FinMap::unchecked(self.cod.clone(), self.dom.clone(), table))
    }

    /// `x↦y` entries in domain order.
    pub fn entries(&self) -> impl Iterator<Item = (&Element, &Element)> + '_ {
        self.dom
            .elements()
            .iter()
            .zip(self.table.iter().map(|&j| self.cod.element(j)))
    }

    /// The first domain element where `self` and `other` (same domain) differ.
    pub(crate) fn first_difference(&self, other: &FinMap) -> Option<Element> {
        self.dom.elements().iter().enumerate().find_map(|(i, x)| {
            let mine = self.image(i);
            match other.apply(x.as_str()) {
                Ok(theirs) if theirs == mine => None,
                _ => Some(x.clone()),
            }
        })
    }
}

impl PartialEq for FinMap {
    fn eq(&self, other: &Self) -> bool {
        map_equal(self, other)
    }
}

impl fmt::Debug for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} → {} [", self.name(), self.dom.name(), self.cod.name())?;
        for (k, (x, y)) in self.entries().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}↦{y}")?;
        }
        f.write_str("]")
    }
}

/// `g ∘ f`.
pub fn compose(g: &FinMap, f: &FinMap) -> Result<FinMap> {
    if f.cod != g.dom {
        return Err(Error::DomainMismatch {
            expected: g.dom.summary(),
            found: f.cod.summary(),
        });
    }
    let table = if f.cod.same_order(&g.dom) {
        f.table.iter().map(|&j| g.table[j]).collect()
    } else {
        f.table
            .iter()
            .map(|&j| {
                let k = g.dom.index_of(f.cod.element(j).as_str()).expect("equal sets");
                g.table[k]
            })
            .collect()
    };
    Ok(FinMap::unchecked(f.dom.clone(), g.cod.clone(), table))
}

pub fn identity(x: &FinSet) -> FinMap {
    FinMap::unchecked(x.clone(), x.clone(), (0..x.len()).collect())
}

/// Extensional equality of morphisms; the codomain is part of the identity.
pub fn map_equal(f: &FinMap, g: &FinMap) -> bool {
    if f.dom != g.dom || f.cod != g.cod {
        return false;
    }
    if f.dom.same_order(&g.dom) && f.cod.same_order(&g.cod) {
        return f.table == g.table;
    }
    f.first_difference(g).is_none()
}

/// `|Y|^|X|`, saturating.
pub fn hom_count(x: &FinSet, y: &FinSet) -> u128 {
    saturating_pow(y.len(), x.len())
}

/// All total functions `X → Y` in mixed-radix order: the last domain element
/// varies fastest, values follow the codomain's stored order.
pub fn hom_set(x: &FinSet, y: &FinSet, limit: usize) -> Result<Vec<FinMap>> {
    let required = hom_count(x, y);
    guard(required, limit)?;
    Ok(MixedRadix::uniform(x.len(), y.len())
        .map(|table| FinMap::unchecked(x.clone(), y.clone(), table))
        .collect())
}

/// Odometer over `digits[i] ∈ 0..radix[i]`, last position fastest.
#[derive(Debug, Clone)]
pub(crate) struct MixedRadix {
    radix: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl MixedRadix {
    pub(crate) fn new(radix: Vec<usize>) -> Self {
        let next = if radix.contains(&0) {
            None
        } else {
            Some(vec![0; radix.len()])
        };
        MixedRadix { radix, next }
    }

    pub(crate) fn uniform(len: usize, radix: usize) -> Self {
        MixedRadix::new(vec![radix; len])
    }
}

impl Iterator for MixedRadix {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut pos = succ.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < self.radix[pos] {
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(current)
    }
}

/// The terminal object `1 = {*}`.
pub fn terminal() -> FinSet {
    FinSet::constructed("1", vec![Element::composite("*".to_string())])
}

/// `! : X → 1`.
pub fn unique_to_terminal(x: &FinSet) -> FinMap {
    FinMap::unchecked(x.clone(), terminal(), vec![0; x.len()]).with_name("!")
}

/// A binary product with its projections.
#[derive(Debug, Clone)]
pub struct Product {
    pub object: FinSet,
    pub pi1: FinMap,
    pub pi2: FinMap,
    left: FinSet,
    right: FinSet,
}

/// `X × Y`, elements `⟨x|y⟩` in `x`-major order.
pub fn product(x: &FinSet, y: &FinSet) -> Product {
    let mut elements = Vec::with_capacity(x.len() * y.len());
    for a in x.elements() {
        for b in y.elements() {
            elements.push(Element::pair(a, b));
        }
    }
    let object = FinSet::constructed(format!("{}×{}", x.name(), y.name()), elements);
    let n = y.len();
    let pi1 = FinMap::unchecked(object.clone(), x.clone(), (0..object.len()).map(|k| k / n).collect());
    let pi2 = FinMap::unchecked(object.clone(), y.clone(), (0..object.len()).map(|k| k % n).collect());
    Product {
        object,
        pi1,
        pi2,
        left: x.clone(),
        right: y.clone(),
    }
}

impl Product {
    pub fn left(&self) -> &FinSet {
        &self.left
    }

    pub fn right(&self) -> &FinSet {
        &self.right
    }

    /// Index of `⟨x|y⟩` from component indices.
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.right.len() + j
    }

    /// `⟨f, g⟩ : S → X × Y`.
    pub fn pairing(&self, f: &FinMap, g: &FinMap) -> Result<FinMap> {
        if f.dom != g.dom {
            return Err(Error::DomainMismatch {
                expected: f.dom.summary(),
                found: g.dom.summary(),
            });
        }
        let ft = f.table_over(&f.dom, &self.left)?;
        let gt = g.table_over(&f.dom, &self.right)?;
        let table = ft.iter().zip(&gt).map(|(&i, &j)| self.index(i, j)).collect();
        Ok(FinMap::unchecked(f.dom.clone(), self.object.clone(), table))
    }

    /// `u × v` from `self = S × T` into `target = S' × T'`.
    pub fn times(&self, u: &FinMap, v: &FinMap, target: &Product) -> Result<FinMap> {
        let first = compose(u, &self.pi1)?;
        let second = compose(v, &self.pi2)?;
        target.pairing(&first, &second)
    }
}

/// A binary coproduct with its injections.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub object: FinSet,
    pub inl: FinMap,
    pub inr: FinMap,
    left: FinSet,
    right: FinSet,
}

/// `X + Y`, the `inl` block first.
pub fn coproduct(x: &FinSet, y: &FinSet) -> Coproduct {
    let elements = x
        .elements()
        .iter()
        .map(Element::inl)
        .chain(y.elements().iter().map(Element::inr))
        .collect();
    let object = FinSet::constructed(format!("{}+{}", x.name(), y.name()), elements);
    let inl = FinMap::unchecked(x.clone(), object.clone(), (0..x.len()).collect());
    let inr = FinMap::unchecked(y.clone(), object.clone(), (0..y.len()).map(|j| x.len() + j).collect());
    Coproduct {
        object,
        inl,
        inr,
        left: x.clone(),
        right: y.clone(),
    }
}

impl Coproduct {
    pub fn left(&self) -> &FinSet {
        &self.left
    }

    pub fn right(&self) -> &FinSet {
        &self.right
    }

    /// `[f, g] : X + Y → Z`.
    pub fn copairing(&self, f: &FinMap, g: &FinMap) -> Result<FinMap> {
        if f.cod != g.cod {
            return Err(Error::CodomainMismatch {
                expected: f.cod.summary(),
                found: g.cod.summary(),
            });
        }
        let mut table = f.table_over(&self.left, &f.cod)?;
        table.extend(g.table_over(&self.right, &f.cod)?);
        Ok(FinMap::unchecked(self.object.clone(), f.cod.clone(), table))
    }
}

/// Indices of the domain elements in each fiber, in codomain order.
pub fn fiber_indices(f: &FinMap) -> Vec<Vec<usize>> {
    let mut fibers = vec![Vec::new(); f.cod.len()];
    for (i, &j) in f.table.iter().enumerate() {
        fibers[j].push(i);
    }
    fibers
}

/// Fiber sizes in codomain order.
pub fn fiber_sizes(f: &FinMap) -> Vec<usize> {
    let mut sizes = vec![0; f.cod.len()];
    for &j in f.table.iter() {
        sizes[j] += 1;
    }
    sizes
}

fn fiber_object(f: &FinMap, a: &Element, members: &[usize]) -> FinSet {
    FinSet::constructed(
        format!("fiber({},{})", f.name(), a),
        members.iter().map(|&i| f.dom.element(i).clone()).collect(),
    )
}

/// `f⁻¹(a)`, in domain order.
pub fn preimage(f: &FinMap, a: &str) -> Result<FinSet> {
    let j = f.cod.require_index(a)?;
    let members: Vec<usize> = (0..f.dom.len()).filter(|&i| f.table[i] == j).collect();
    Ok(fiber_object(f, f.cod.element(j), &members))
}

/// Every fiber of `f`, keyed by codomain element in codomain order.
pub fn fiber_decomposition(f: &FinMap) -> Vec<(Element, FinSet)> {
    fiber_indices(f)
        .iter()
        .enumerate()
        .map(|(j, members)| {
            let a = f.cod.element(j);
            (a.clone(), fiber_object(f, a, members))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(name: &str, labels: &[&str]) -> FinSet {
        FinSet::from_labels(name, labels).unwrap()
    }

    fn running_f() -> FinMap {
        let b = set("B", &["b1", "b2", "b3"]);
        let a = set("A", &["a1", "a2"]);
        FinMap::from_pairs(b, a, &[("b1", "a1"), ("b2", "a1"), ("b3", "a2")]).unwrap()
    }

    #[test]
    fn labels_reject_reserved_characters() {
        assert!(Element::new("x|y").is_err());
        assert!(Element::new("").is_err());
        assert!(Element::new("a\nb").is_err());
        assert!(Element::new("a_1").is_ok());
    }

    #[test]
    fn duplicate_elements_rejected() {
        let err = FinSet::from_labels("X", &["x", "x"]).unwrap_err();
        assert!(matches!(err, Error::DuplicateElement { .. }));
    }

    #[test]
    fn compose_one_element_chain() {
        let x = set("X", &["x"]);
        let y = set("Y", &["y"]);
        let z = set("Z", &["z"]);
        let f = FinMap::from_pairs(x.clone(), y.clone(), &[("x", "y")]).unwrap();
        let g = FinMap::from_pairs(y, z, &[("y", "z")]).unwrap();
        let gf = compose(&g, &f).unwrap();
        assert_eq!(gf.apply("x").unwrap().as_str(), "z");
        assert_eq!(gf.dom(), &x);
    }

    #[test]
    fn compose_rejects_mismatch() {
        let f = running_f();
        let err = compose(&f, &f).unwrap_err();
        assert!(matches!(err, Error::DomainMismatch { .. }));
    }

    #[test]
    fn compose_collapses_to_point() {
        let f = running_f();
        let c = set("C", &["c"]);
        let g = FinMap::from_pairs(f.cod().clone(), c, &[("a1", "c"), ("a2", "c")]).unwrap();
        let gf = compose(&g, &f).unwrap();
        assert!(gf.entries().all(|(_, y)| y.as_str() == "c"));
        assert_eq!(gf.dom().len(), 3);
    }

    #[test]
    fn compose_across_orderings() {
        let f = running_f();
        let reordered = set("A'", &["a2", "a1"]);
        let g = FinMap::from_pairs(reordered, set("C", &["p", "q"]), &[("a1", "p"), ("a2", "q")]).unwrap();
        let gf = compose(&g, &f).unwrap();
        assert_eq!(gf.apply("b3").unwrap().as_str(), "q");
        assert_eq!(gf.apply("b1").unwrap().as_str(), "p");
    }

    #[test]
    fn identity_laws() {
        let f = running_f();
        assert!(map_equal(&compose(&identity(f.cod()), &f).unwrap(), &f));
        assert!(map_equal(&compose(&f, &identity(f.dom())).unwrap(), &f));
        let e = identity(&FinSet::empty());
        assert_eq!(e.dom().len(), 0);
        let xy = identity(&set("X", &["x", "y"]));
        assert_eq!(xy.apply("y").unwrap().as_str(), "y");
    }

    #[test]
    fn map_equal_cases() {
        let x = set("X", &["x", "y"]);
        assert!(map_equal(&identity(&x), &identity(&set("X2", &["x", "y"]))));
        let one = set("X", &["x"]);
        let uv = set("U", &["u", "v"]);
        let f = FinMap::from_pairs(one.clone(), uv.clone(), &[("x", "u")]).unwrap();
        let g = FinMap::from_pairs(one.clone(), uv, &[("x", "v")]).unwrap();
        assert!(!map_equal(&f, &g));
        let h = FinMap::from_pairs(one, set("U", &["u"]), &[("x", "u")]).unwrap();
        assert!(!map_equal(&f, &h), "codomain is part of the morphism");
    }

    #[test]
    fn from_pairs_reports_missing_and_extra() {
        let b = set("B", &["b1", "b2"]);
        let a = set("A", &["a"]);
        let missing = FinMap::from_pairs(b.clone(), a.clone(), &[("b1", "a")]).unwrap_err();
        assert!(matches!(&missing, Error::NotTotal { problem, .. } if problem.contains("b2")));
        let extra = FinMap::from_pairs(b.clone(), a.clone(), &[("b1", "a"), ("b2", "a"), ("b9", "a")]);
        assert!(matches!(extra, Err(Error::UnknownElement { .. })));
        let twice = FinMap::from_pairs(b, a, &[("b1", "a"), ("b1", "a"), ("b2", "a")]);
        assert!(matches!(twice, Err(Error::NotTotal { .. })));
    }

    #[test]
    fn hom_set_sizes_and_guard() {
        let x = set("X", &["x", "y"]);
        let y = set("Y", &["u", "v", "w"]);
        assert_eq!(hom_set(&x, &y, DEFAULT_LIMIT).unwrap().len(), 9);
        assert_eq!(hom_set(&FinSet::empty(), &y, DEFAULT_LIMIT).unwrap().len(), 1);
        assert_eq!(
            hom_set(&set("X", &["x"]), &FinSet::empty(), DEFAULT_LIMIT)
                .unwrap()
                .len(),
            0
        );
        let err = hom_set(&x, &y, 8).unwrap_err();
        assert_eq!(err, Error::EnumerationTooLarge { required: 9, limit: 8 });
    }

    #[test]
    fn hom_set_order_is_mixed_radix() {
        let x = set("X", &["x", "y"]);
        let y = set("Y", &["u", "v"]);
        let tables: Vec<Vec<usize>> = hom_set(&x, &y, 10)
            .unwrap()
            .iter()
            .map(|f| f.table().to_vec())
            .collect();
        assert_eq!(tables, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn terminal_maps() {
        let one = terminal();
        assert_eq!(one.name(), "1");
        assert_eq!(one.elements()[0].as_str(), "*");
        assert_eq!(unique_to_terminal(&FinSet::empty()).dom().len(), 0);
        let t = unique_to_terminal(&set("X", &["x", "y"]));
        assert!(t.entries().all(|(_, y)| y.as_str() == "*"));
        for n in 0..4 {
            let x = FinSet::numbered("X", "x", n);
            assert_eq!(hom_set(&x, &one, 100).unwrap().len(), 1);
        }
    }

    #[test]
    fn product_and_pairing() {
        let x = set("X", &["x1", "x2"]);
        let y = set("Y", &["y1", "y2", "y3"]);
        let p = product(&x, &y);
        assert_eq!(p.object.len(), 6);
        assert_eq!(p.object.element(1).as_str(), "⟨x1|y2⟩");
        assert!(product(&x, &FinSet::empty()).object.is_empty());
        let f = FinMap::from_pairs(x.clone(), x.clone(), &[("x1", "x2"), ("x2", "x2")]).unwrap();
        let pxx = product(&x, &x);
        let ff = pxx.pairing(&f, &f).unwrap();
        assert!(map_equal(&compose(&pxx.pi1, &ff).unwrap(), &f));
        assert!(map_equal(&compose(&pxx.pi2, &ff).unwrap(), &f));
        let g = identity(&y);
        assert!(matches!(p.pairing(&f, &g), Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn coproduct_and_copairing() {
        let x = set("X", &["x1", "x2"]);
        let y = set("Y", &["y1", "y2", "y3"]);
        let c = coproduct(&x, &y);
        assert_eq!(c.object.len(), 5);
        assert_eq!(c.object.element(2).as_str(), "inr⟨y1⟩");
        let id = c.copairing(&c.inl, &c.inr).unwrap();
        assert!(map_equal(&id, &identity(&c.object)));
        let e = coproduct(&FinSet::empty(), &y);
        let back = e.copairing(&identity(&FinSet::empty()).clone(), &identity(&y));
        assert!(matches!(back, Err(Error::CodomainMismatch { .. })));
        let empty_to_y = FinMap::new(FinSet::empty(), y.clone(), vec![]).unwrap();
        let iso = e.copairing(&empty_to_y, &identity(&y)).unwrap();
        assert!(iso.is_bijective());
    }

    #[test]
    fn preimages() {
        let f = running_f();
        let fib = preimage(&f, "a1").unwrap();
        assert_eq!(fib.name(), "fiber(f,a1)");
        assert_eq!(
            fib.elements().iter().map(Element::as_str).collect::<Vec<_>>(),
            ["b1", "b2"]
        );
        let g = FinMap::from_pairs(
            f.dom().clone(),
            set("A", &["a1", "a2", "m1"]),
            &[("b1", "a1"), ("b2", "a1"), ("b3", "a2")],
        )
        .unwrap();
        assert!(preimage(&g, "m1").unwrap().is_empty());
        assert!(matches!(preimage(&f, "zz"), Err(Error::UnknownElement { .. })));
        let x = set("X", &["x", "y"]);
        assert_eq!(preimage(&identity(&x), "x").unwrap().elements()[0].as_str(), "x");
    }

    #[test]
    fn fiber_decomposition_running_example() {
        let f = running_f();
        let fibers = fiber_decomposition(&f);
        let sizes: Vec<usize> = fibers.iter().map(|(_, s)| s.len()).collect();
        assert_eq!(sizes, [2, 1]);
        let b = f.dom().clone();
        let whole = fiber_decomposition(&unique_to_terminal(&b));
        assert_eq!(whole.len(), 1);
        assert_eq!(whole[0].1, b);
    }

    #[test]
    fn modular_circles_fiber_sizes() {
        let z5: Vec<String> = (0..5).map(|i| format!("{i}")).collect();
        let z5 = FinSet::from_labels("Z5", &z5).unwrap();
        let plane = product(&z5, &z5);
        let f = FinMap::from_fn(plane.object.clone(), z5.clone(), |k| {
            let (x, y) = (k / 5, k % 5);
            (x * x + y * y) % 5
        })
        .unwrap();
        // Brute-force count of x²+y² mod 5 over all 25 pairs.
        let mut expected = [0usize; 5];
        for x in 0..5 {
            for y in 0..5 {
                expected[(x * x + y * y) % 5] += 1;
            }
        }
        assert_eq!(fiber_sizes(&f), expected);
        assert_eq!(fiber_sizes(&f).iter().sum::<usize>(), 25);
    }
}
