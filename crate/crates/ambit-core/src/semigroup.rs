//! Discrete semigroups: finite multiplication tables and enumerable
//! built-in families, with canonical enumeration and the cancellation
//! evidence checkers used by the ambit construction.
//!
//! A [`Semigroup`] owns the multiplication law; an [`Element`] is an
//! opaque canonical encoding (table index, generator word, or natural
//! number) that is only meaningful together with its semigroup. A
//! [`Window`] is a finite ordered slice of the carrier, the stand-in
//! for "all of X" that every desk-scale check runs over.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Law {
    Cayley {
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
    },
    Free {
        alphabet: Vec<char>,
    },
    NatPlus,
    NatTimes,
    /// Product is the left factor. `size: None` means countable.
    LeftZero { size: Option<u64> },
    /// Product is the right factor. `size: None` means countable.
    RightZero { size: Option<u64> },
}

/// A discrete semigroup with decidable products and a canonical
/// enumeration of its carrier.
///
/// Handles are immutable and cheap to clone; two handles compare equal
/// when they describe the same law, so measures loaded from different
/// files over identical semigroups interoperate.
#[derive(Clone)]
pub struct Semigroup {
    law: Arc<Law>,
}

impl PartialEq for Semigroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.law, &other.law) || self.law == other.law
    }
}

impl Eq for Semigroup {}

impl fmt::Debug for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.law {
            Law::Cayley { labels, .. } => write!(f, "Semigroup(cayley, order {})", labels.len()),
            Law::Free { alphabet } => write!(f, "Semigroup(free on {alphabet:?})"),
            Law::NatPlus => write!(f, "Semigroup(nat-plus)"),
            Law::NatTimes => write!(f, "Semigroup(nat-times)"),
            Law::LeftZero { size } => write!(f, "Semigroup(left-zero, size {size:?})"),
            Law::RightZero { size } => write!(f, "Semigroup(right-zero, size {size:?})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Encoding {
    /// Index into a finite carrier (tables, left/right zero semigroups).
    Index(usize),
    /// Non-empty word over the generator alphabet, stored as generator
    /// indices so that ordering is shortlex in the declared order.
    Word(Vec<u8>),
    /// Natural number.
    Nat(u64),
}

/// An element of a [`Semigroup`], in canonical encoding.
///
/// Equality and ordering are canonical: the order agrees with the
/// owning semigroup's enumeration (index order, shortlex, numeric), so
/// sorting by `Element` is the one canonical order used everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element(Encoding);

impl Element {
    fn rank(&self) -> u8 {
        match self.0 {
            Encoding::Index(_) => 0,
            Encoding::Word(_) => 1,
            Encoding::Nat(_) => 2,
        }
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Encoding::Index(a), Encoding::Index(b)) => a.cmp(b),
            (Encoding::Nat(a), Encoding::Nat(b)) => a.cmp(b),
            (Encoding::Word(a), Encoding::Word(b)) => {
                a.len().cmp(&b.len()).then_with(|| a.cmp(b))
            }
            // Mixed encodings never occur inside one semigroup; fall back
            // to a stable order so collections stay well behaved.
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Verdict of an associativity scan over a raw multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Associativity {
    Holds,
    /// Lexicographically first triple with `(xy)z != x(yz)`.
    Counterexample { x: usize, y: usize, z: usize },
}

/// Scan all `n^3` triples of a square table for associativity.
///
/// Returns the lexicographically first failing triple, or
/// [`Associativity::Holds`]. Rejects non-square tables and out-of-range
/// entries before scanning.
pub fn check_associativity(table: &[Vec<usize>]) -> Result<Associativity> {
    let n = table.len();
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedTable {
                reason: format!("row {i} has length {} in a table of order {n}", row.len()),
            });
        }
        for (j, &entry) in row.iter().enumerate() {
            if entry >= n {
                return Err(Error::MalformedTable {
                    reason: format!("entry ({i}, {j}) = {entry} is out of range"),
                });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if table[table[x][y]][z] != table[x][table[y][z]] {
                    return Ok(Associativity::Counterexample { x, y, z });
                }
            }
        }
    }
    Ok(Associativity::Holds)
}

impl Semigroup {
    /// Finite semigroup from labels and a multiplication table;
    /// associativity is checked over all triples at construction.
    pub fn cayley(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        if labels.len() != table.len() {
            return Err(Error::MalformedTable {
                reason: format!(
                    "{} labels for a table of order {}",
                    labels.len(),
                    table.len()
                ),
            });
        }
        if labels.is_empty() {
            return Err(Error::MalformedTable {
                reason: "empty carrier".to_string(),
            });
        }
        {
            let mut seen = BTreeSet::new();
            for label in &labels {
                if !seen.insert(label.as_str()) {
                    return Err(Error::MalformedTable {
                        reason: format!("duplicate label {label:?}"),
                    });
                }
            }
        }
        if let Associativity::Counterexample { x, y, z } = check_associativity(&table)? {
            return Err(Error::NotAssociative { x, y, z });
        }
        Ok(Self {
            law: Arc::new(Law::Cayley { labels, table }),
        })
    }

    /// Free semigroup (no empty word) on a non-empty alphabet of
    /// distinct single-character generators; enumeration is shortlex in
    /// the declared generator order.
    pub fn free(alphabet: &[char]) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::Invalid("free semigroup needs at least one generator".into()));
        }
        if alphabet.len() > u8::MAX as usize {
            return Err(Error::Invalid("at most 255 generators are supported".into()));
        }
        let mut seen = BTreeSet::new();
        for &g in alphabet {
            if !seen.insert(g) {
                return Err(Error::Invalid(format!("duplicate generator {g:?}")));
            }
        }
        Ok(Self {
            law: Arc::new(Law::Free {
                alphabet: alphabet.to_vec(),
            }),
        })
    }

    /// Naturals (including 0) under addition.
    pub fn nat_plus() -> Self {
        Self {
            law: Arc::new(Law::NatPlus),
        }
    }

    /// Naturals (including 0) under multiplication.
    pub fn nat_times() -> Self {
        Self {
            law: Arc::new(Law::NatTimes),
        }
    }

    /// Semigroup with `x * y = x`. `size: None` is the countable carrier.
    pub fn left_zero(size: Option<u64>) -> Result<Self> {
        if size == Some(0) {
            return Err(Error::Invalid("carrier must be non-empty".into()));
        }
        Ok(Self {
            law: Arc::new(Law::LeftZero { size }),
        })
    }

    /// Semigroup with `x * y = y`. `size: None` is the countable carrier.
    pub fn right_zero(size: Option<u64>) -> Result<Self> {
        if size == Some(0) {
            return Err(Error::Invalid("carrier must be non-empty".into()));
        }
        Ok(Self {
            law: Arc::new(Law::RightZero { size }),
        })
    }

    /// Carrier size, or `None` for countable carriers.
    pub fn carrier_size(&self) -> Option<u64> {
        match &*self.law {
            Law::Cayley { labels, .. } => Some(labels.len() as u64),
            Law::Free { .. } | Law::NatPlus | Law::NatTimes => None,
            Law::LeftZero { size } | Law::RightZero { size } => *size,
        }
    }

    /// Whether the law is known to be commutative. Tables are scanned;
    /// built-in families answer from their law.
    pub fn is_commutative(&self) -> bool {
        match &*self.law {
            Law::Cayley { table, .. } => {
                let n = table.len();
                (0..n).all(|x| (0..n).all(|y| table[x][y] == table[y][x]))
            }
            Law::Free { alphabet } => alphabet.len() == 1,
            Law::NatPlus | Law::NatTimes => true,
            Law::LeftZero { size } | Law::RightZero { size } => *size == Some(1),
        }
    }

    /// True when `e` is a valid element of this semigroup.
    pub fn contains(&self, e: &Element) -> bool {
        match (&*self.law, &e.0) {
            (Law::Cayley { labels, .. }, Encoding::Index(i)) => *i < labels.len(),
            (Law::Free { alphabet }, Encoding::Word(w)) => {
                !w.is_empty() && w.iter().all(|&g| (g as usize) < alphabet.len())
            }
            (Law::NatPlus | Law::NatTimes, Encoding::Nat(_)) => true,
            (Law::LeftZero { size } | Law::RightZero { size }, Encoding::Index(i)) => match size {
                Some(n) => (*i as u64) < *n,
                None => true,
            },
            _ => false,
        }
    }

    fn require(&self, e: &Element) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::InvalidElement {
                element: format!("{e:?}"),
            })
        }
    }

    /// The semigroup product `x * y`.
    pub fn product(&self, x: &Element, y: &Element) -> Result<Element> {
        self.require(x)?;
        self.require(y)?;
        let enc = match (&*self.law, &x.0, &y.0) {
            (Law::Cayley { table, .. }, Encoding::Index(i), Encoding::Index(j)) => {
                Encoding::Index(table[*i][*j])
            }
            (Law::Free { .. }, Encoding::Word(a), Encoding::Word(b)) => {
                let mut w = Vec::with_capacity(a.len() + b.len());
                w.extend_from_slice(a);
                w.extend_from_slice(b);
                Encoding::Word(w)
            }
            (Law::NatPlus, Encoding::Nat(a), Encoding::Nat(b)) => {
                Encoding::Nat(a.checked_add(*b).ok_or(Error::NatOverflow)?)
            }
            (Law::NatTimes, Encoding::Nat(a), Encoding::Nat(b)) => {
                Encoding::Nat(a.checked_mul(*b).ok_or(Error::NatOverflow)?)
            }
            (Law::LeftZero { .. }, _, _) => return Ok(x.clone()),
            (Law::RightZero { .. }, _, _) => return Ok(y.clone()),
            _ => unreachable!("require() already matched encodings to the law"),
        };
        Ok(Element(enc))
    }

    /// The `i`-th element of the canonical enumeration, or `None` past
    /// the end of a finite carrier.
    pub fn element_at(&self, i: u64) -> Option<Element> {
        match &*self.law {
            Law::Cayley { labels, .. } => {
                if (i as usize) < labels.len() {
                    Some(Element(Encoding::Index(i as usize)))
                } else {
                    None
                }
            }
            Law::Free { alphabet } => {
                // Bijective base-g numbering: 0 -> first generator,
                // g -> first two-letter word, and so on (shortlex).
                let g = alphabet.len() as u64;
                let mut n = i + 1;
                let mut word = Vec::new();
                while n > 0 {
                    n -= 1;
                    word.push((n % g) as u8);
                    n /= g;
                }
                word.reverse();
                Some(Element(Encoding::Word(word)))
            }
            Law::NatPlus | Law::NatTimes => Some(Element(Encoding::Nat(i))),
            Law::LeftZero { size } | Law::RightZero { size } => match size {
                Some(n) if i >= *n => None,
                _ => Some(Element(Encoding::Index(i as usize))),
            },
        }
    }

    /// First `k` elements of the canonical enumeration as a window.
    pub fn enumerate(&self, k: usize) -> Result<Window> {
        if let Some(n) = self.carrier_size() {
            if k as u64 > n {
                return Err(Error::WindowTooLarge {
                    requested: k,
                    carrier: n,
                });
            }
        }
        let elements = (0..k as u64)
            .map(|i| self.element_at(i).expect("index below carrier size"))
            .collect();
        Ok(Window {
            semigroup: self.clone(),
            elements,
            set: None,
            prefix: true,
        }
        .finish())
    }

    /// Natural-number element for the additive/multiplicative families.
    pub fn nat(&self, n: u64) -> Result<Element> {
        let e = Element(Encoding::Nat(n));
        self.require(&e)?;
        Ok(e)
    }

    /// Index element for tables and left/right zero semigroups.
    pub fn index(&self, i: usize) -> Result<Element> {
        let e = Element(Encoding::Index(i));
        self.require(&e)?;
        Ok(e)
    }

    /// Word element of a free semigroup from its textual form.
    pub fn word(&self, text: &str) -> Result<Element> {
        match &*self.law {
            Law::Free { alphabet } => {
                let mut w = Vec::with_capacity(text.len());
                for c in text.chars() {
                    match alphabet.iter().position(|&g| g == c) {
                        Some(i) => w.push(i as u8),
                        None => {
                            return Err(Error::InvalidElement {
                                element: format!("{text:?} (unknown generator {c:?})"),
                            })
                        }
                    }
                }
                let e = Element(Encoding::Word(w));
                self.require(&e)?;
                Ok(e)
            }
            _ => Err(Error::InvalidElement {
                element: format!("{text:?} (not a free semigroup)"),
            }),
        }
    }

    /// Parse the textual form of an element: a decimal index or a label
    /// for tables, a word for free semigroups, a decimal natural for the
    /// additive/multiplicative families.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let invalid = || Error::InvalidElement {
            element: text.to_string(),
        };
        match &*self.law {
            Law::Cayley { labels, .. } => {
                if let Some(i) = labels.iter().position(|l| l == text) {
                    return Ok(Element(Encoding::Index(i)));
                }
                let i: usize = text.parse().map_err(|_| invalid())?;
                self.index(i)
            }
            Law::Free { .. } => self.word(text),
            Law::NatPlus | Law::NatTimes => {
                let n: u64 = text.parse().map_err(|_| invalid())?;
                self.nat(n)
            }
            Law::LeftZero { .. } | Law::RightZero { .. } => {
                let i: usize = text.parse().map_err(|_| invalid())?;
                self.index(i)
            }
        }
    }

    /// Canonical textual form of an element: decimal index, word, or
    /// decimal natural. Inverse of [`Self::parse_element`].
    pub fn display_element(&self, e: &Element) -> String {
        match (&*self.law, &e.0) {
            (Law::Free { alphabet }, Encoding::Word(w)) => {
                w.iter().map(|&g| alphabet[g as usize]).collect()
            }
            (_, Encoding::Index(i)) => i.to_string(),
            (_, Encoding::Nat(n)) => n.to_string(),
            _ => format!("{e:?}"),
        }
    }

    /// Human-oriented form: the label for table elements, otherwise the
    /// canonical textual form.
    pub fn label(&self, e: &Element) -> String {
        match (&*self.law, &e.0) {
            (Law::Cayley { labels, .. }, Encoding::Index(i)) => labels[*i].clone(),
            _ => self.display_element(e),
        }
    }

    /// Cayley labels, when this is a finite table semigroup.
    pub fn cayley_labels(&self) -> Option<&[String]> {
        match &*self.law {
            Law::Cayley { labels, .. } => Some(labels),
            _ => None,
        }
    }

    /// Raw multiplication table, when this is a finite table semigroup.
    pub fn cayley_table(&self) -> Option<&[Vec<usize>]> {
        match &*self.law {
            Law::Cayley { table, .. } => Some(table),
            _ => None,
        }
    }

    /// Generator alphabet, when this is a free semigroup.
    pub fn free_alphabet(&self) -> Option<&[char]> {
        match &*self.law {
            Law::Free { alphabet } => Some(alphabet),
            _ => None,
        }
    }

    /// Which built-in family this handle belongs to.
    pub fn family(&self) -> Family {
        match &*self.law {
            Law::Cayley { .. } => Family::Cayley,
            Law::Free { .. } => Family::Free,
            Law::NatPlus => Family::NatPlus,
            Law::NatTimes => Family::NatTimes,
            Law::LeftZero { .. } => Family::LeftZero,
            Law::RightZero { .. } => Family::RightZero,
        }
    }
}

/// The built-in semigroup families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cayley,
    Free,
    NatPlus,
    NatTimes,
    LeftZero,
    RightZero,
}

/// A finite ordered set of distinct elements of one semigroup.
///
/// Windows stand in for the carrier in every desk-scale check; results
/// that scan a window always do so in the window's order, so reports
/// are deterministic.
#[derive(Debug, Clone)]
pub struct Window {
    semigroup: Semigroup,
    elements: Vec<Element>,
    set: Option<BTreeSet<Element>>,
    prefix: bool,
}

impl PartialEq for Window {
    fn eq(&self, other: &Self) -> bool {
        self.semigroup == other.semigroup && self.elements == other.elements
    }
}

impl Eq for Window {}

impl Window {
    /// Build a window, rejecting duplicates and foreign elements, and
    /// detect whether it is a prefix of the canonical enumeration.
    pub fn new(semigroup: &Semigroup, elements: Vec<Element>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for e in &elements {
            semigroup.require(e)?;
            if !set.insert(e.clone()) {
                return Err(Error::DuplicateInWindow {
                    element: semigroup.display_element(e),
                });
            }
        }
        let prefix = elements
            .iter()
            .enumerate()
            .all(|(i, e)| semigroup.element_at(i as u64).as_ref() == Some(e));
        Ok(Self {
            semigroup: semigroup.clone(),
            elements,
            set: Some(set),
            prefix,
        })
    }

    fn finish(mut self) -> Self {
        self.set = Some(self.elements.iter().cloned().collect());
        self
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &Element) -> bool {
        match &self.set {
            Some(set) => set.contains(e),
            None => self.elements.contains(e),
        }
    }

    /// True when this window equals the first `len()` elements of the
    /// canonical enumeration.
    pub fn is_enumeration_prefix(&self) -> bool {
        self.prefix
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Element> {
        self.elements.iter()
    }
}

/// A closed-form verdict for a cancellation property, available only
/// for built-in families where the answer is a theorem rather than
/// window evidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormVerdict {
    Holds(&'static str),
    Fails(&'static str),
}

impl ClosedFormVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ClosedFormVerdict::Holds(_))
    }

    pub fn reason(&self) -> &'static str {
        match self {
            ClosedFormVerdict::Holds(r) | ClosedFormVerdict::Fails(r) => r,
        }
    }
}

/// `R^{-1}P` restricted to a search window: the elements `x` of
/// `search` with `r * x` in `P` for some `r` in `R`, in search order.
pub fn preimage_set(r: &Window, p: &Window, search: &Window) -> Result<Window> {
    let s = r.semigroup();
    if p.semigroup() != s || search.semigroup() != s {
        return Err(Error::HandleMismatch);
    }
    let mut hits = Vec::new();
    for x in search.iter() {
        for rr in r.iter() {
            if p.contains(&s.product(rr, x)?) {
                hits.push(x.clone());
                break;
            }
        }
    }
    Window::new(s, hits)
}

/// Evidence report for the separation property: how many window
/// elements `z` make `x -> x * z` injective on a finite set.
#[derive(Debug, Clone)]
pub struct SeparationReport {
    /// Elements `z` of the search window such that `x*z != y*z` for all
    /// distinct `x`, `y` in the probe set, in search order.
    pub qualifying: Window,
    /// Size of the search window.
    pub searched: usize,
    /// Theorem-backed verdict for built-in families, when known.
    pub verdict: Option<ClosedFormVerdict>,
}

/// Check how richly right translations separate a finite set.
///
/// The ambit construction needs, for every finite `points`, a large
/// supply of `z` whose right translation is injective on `points`; the
/// report counts that supply inside `search` and adds a closed-form
/// verdict where one is known (free semigroups and additive naturals
/// are right cancellative, so every `z` qualifies; right-zero
/// semigroups fail as soon as `points` has two elements).
pub fn check_separating_translations(points: &Window, search: &Window) -> Result<SeparationReport> {
    let s = points.semigroup();
    if search.semigroup() != s {
        return Err(Error::HandleMismatch);
    }
    if points.is_empty() {
        return Err(Error::Invalid("probe set must be non-empty".into()));
    }
    let mut qualifying = Vec::new();
    'candidates: for z in search.iter() {
        let mut images = BTreeSet::new();
        for x in points.iter() {
            if !images.insert(s.product(x, z)?) {
                continue 'candidates;
            }
        }
        qualifying.push(z.clone());
    }
    let verdict = match s.family() {
        Family::Free => Some(ClosedFormVerdict::Holds(
            "free semigroups are right cancellative",
        )),
        Family::NatPlus => Some(ClosedFormVerdict::Holds(
            "addition on the naturals is right cancellative",
        )),
        Family::RightZero if s.carrier_size() != Some(1) => Some(ClosedFormVerdict::Fails(
            "every right translation is constant, so no z separates two points",
        )),
        _ => None,
    };
    Ok(SeparationReport {
        qualifying: Window::new(s, qualifying)?,
        searched: search.len(),
        verdict,
    })
}

/// Evidence report for weak left cancellation: sizes of `{x}^{-1}P`
/// inside a growing schedule of windows.
#[derive(Debug, Clone)]
pub struct PreimageReport {
    /// `(window size, preimage count)` per schedule entry, in order.
    pub counts: Vec<(usize, usize)>,
    /// Theorem-backed verdict for built-in families, when known.
    pub verdict: Option<ClosedFormVerdict>,
}

impl PreimageReport {
    /// True when the preimage fills every scheduled window, the window
    /// evidence for a failing property.
    pub fn fills_every_window(&self) -> bool {
        !self.counts.is_empty() && self.counts.iter().all(|(w, c)| c == w)
    }
}

/// Check how the left-translation preimage `{x}^{-1}P` grows along a
/// schedule of windows.
///
/// Weak left cancellation asks that preimages of small sets stay small;
/// on a window schedule that shows up as counts that stabilize instead
/// of tracking the window size. Free semigroups and additive naturals
/// carry a closed-form `holds`; a left-zero semigroup with `x` in `P`
/// has `{x}^{-1}P` equal to the whole carrier and fails.
pub fn check_weak_left_cancellation(
    x: &Element,
    p: &Window,
    schedule: &[Window],
) -> Result<PreimageReport> {
    let s = p.semigroup();
    s.require(x)?;
    let mut counts = Vec::with_capacity(schedule.len());
    for window in schedule {
        if window.semigroup() != s {
            return Err(Error::HandleMismatch);
        }
        let mut count = 0;
        for z in window.iter() {
            if p.contains(&s.product(x, z)?) {
                count += 1;
            }
        }
        counts.push((window.len(), count));
    }
    let verdict = match s.family() {
        Family::Free => Some(ClosedFormVerdict::Holds(
            "free semigroups are weakly left cancellative",
        )),
        Family::NatPlus => Some(ClosedFormVerdict::Holds(
            "addition on the naturals is weakly left cancellative",
        )),
        Family::LeftZero if p.contains(x) => Some(ClosedFormVerdict::Fails(
            "every product x*z equals x, so the preimage of a set containing x is the whole carrier",
        )),
        _ => None,
    };
    Ok(PreimageReport { counts, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn z2() -> Semigroup {
        Semigroup::cayley(
            vec!["0".into(), "1".into()],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap()
    }

    fn free2() -> Semigroup {
        Semigroup::free(&['a', 'b']).unwrap()
    }

    #[test]
    fn cayley_product_reads_table() {
        let s = z2();
        let one = s.index(1).unwrap();
        assert_eq!(s.product(&one, &one).unwrap(), s.index(0).unwrap());
    }

    #[test]
    fn free_product_concatenates() {
        let s = free2();
        let ab = s.word("ab").unwrap();
        let b = s.word("b").unwrap();
        assert_eq!(s.product(&ab, &b).unwrap(), s.word("abb").unwrap());
    }

    #[test]
    fn left_zero_product_is_left_factor() {
        let s = Semigroup::left_zero(Some(4)).unwrap();
        let x = s.index(2).unwrap();
        let y = s.index(3).unwrap();
        assert_eq!(s.product(&x, &y).unwrap(), x);
    }

    #[test]
    fn right_zero_product_is_right_factor() {
        let s = Semigroup::right_zero(Some(4)).unwrap();
        let x = s.index(2).unwrap();
        let y = s.index(3).unwrap();
        assert_eq!(s.product(&x, &y).unwrap(), y);
    }

    #[test]
    fn invalid_element_is_rejected() {
        let s = z2();
        let outside = s.index(1).unwrap();
        let t = Semigroup::cayley(vec!["e".into()], vec![vec![0]]).unwrap();
        assert!(matches!(
            t.product(&outside, &outside),
            Err(Error::InvalidElement { .. })
        ));
    }

    #[test]
    fn shortlex_enumeration_of_free_words() {
        let s = free2();
        let w = s.enumerate(4).unwrap();
        let words: Vec<String> = w.iter().map(|e| s.display_element(e)).collect();
        assert_eq!(words, ["a", "b", "aa", "ab"]);
        assert!(w.is_enumeration_prefix());
    }

    #[test]
    fn nat_enumeration_is_numeric() {
        let s = Semigroup::nat_plus();
        let w = s.enumerate(3).unwrap();
        let nats: Vec<String> = w.iter().map(|e| s.display_element(e)).collect();
        assert_eq!(nats, ["0", "1", "2"]);
    }

    #[test]
    fn cayley_enumeration_is_index_order() {
        let s = z2();
        let w = s.enumerate(2).unwrap();
        assert_eq!(w.elements(), &[s.index(0).unwrap(), s.index(1).unwrap()]);
    }

    #[test]
    fn enumeration_rejects_oversized_windows() {
        let s = z2();
        assert!(matches!(
            s.enumerate(3),
            Err(Error::WindowTooLarge { requested: 3, carrier: 2 })
        ));
    }

    #[test]
    fn associativity_counterexample_is_lexicographically_first() {
        let table = vec![vec![1, 0], vec![0, 0]];
        assert_eq!(
            check_associativity(&table).unwrap(),
            Associativity::Counterexample { x: 0, y: 0, z: 1 }
        );
        assert!(matches!(
            Semigroup::cayley(vec!["0".into(), "1".into()], table),
            Err(Error::NotAssociative { x: 0, y: 0, z: 1 })
        ));
    }

    #[test]
    fn singleton_table_is_associative() {
        assert_eq!(
            check_associativity(&[vec![0]]).unwrap(),
            Associativity::Holds
        );
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(matches!(
            check_associativity(&[vec![0, 1], vec![0]]),
            Err(Error::MalformedTable { .. })
        ));
        assert!(matches!(
            check_associativity(&[vec![2]]),
            Err(Error::MalformedTable { .. })
        ));
    }

    #[test]
    fn preimage_set_on_naturals() {
        let s = Semigroup::nat_plus();
        let r = Window::new(&s, vec![s.nat(2).unwrap()]).unwrap();
        let p = Window::new(&s, vec![s.nat(5).unwrap(), s.nat(7).unwrap()]).unwrap();
        let search = s.enumerate(11).unwrap();
        let result = preimage_set(&r, &p, &search).unwrap();
        assert_eq!(result.elements(), &[s.nat(3).unwrap(), s.nat(5).unwrap()]);
    }

    #[test]
    fn preimage_set_on_free_words() {
        let s = free2();
        let r = Window::new(&s, vec![s.word("a").unwrap()]).unwrap();
        let p = Window::new(&s, vec![s.word("ab").unwrap()]).unwrap();
        let search = s.enumerate(10).unwrap();
        let result = preimage_set(&r, &p, &search).unwrap();
        assert_eq!(result.elements(), &[s.word("b").unwrap()]);
    }

    #[test]
    fn preimage_set_on_left_zero_is_everything() {
        let s = Semigroup::left_zero(Some(5)).unwrap();
        let x = s.index(3).unwrap();
        let r = Window::new(&s, vec![x.clone()]).unwrap();
        let p = Window::new(&s, vec![x]).unwrap();
        let search = s.enumerate(5).unwrap();
        let result = preimage_set(&r, &p, &search).unwrap();
        assert_eq!(result.elements(), search.elements());
    }

    #[test]
    fn separation_on_naturals_qualifies_everything() {
        let s = Semigroup::nat_plus();
        let f = Window::new(&s, vec![s.nat(0).unwrap(), s.nat(1).unwrap()]).unwrap();
        let search = s.enumerate(10).unwrap();
        let report = check_separating_translations(&f, &search).unwrap();
        assert_eq!(report.qualifying.len(), 10);
        assert!(report.verdict.unwrap().holds());
    }

    #[test]
    fn separation_fails_on_right_zero() {
        let s = Semigroup::right_zero(Some(5)).unwrap();
        let f = Window::new(&s, vec![s.index(0).unwrap(), s.index(1).unwrap()]).unwrap();
        let search = s.enumerate(5).unwrap();
        let report = check_separating_translations(&f, &search).unwrap();
        assert!(report.qualifying.is_empty());
        assert!(!report.verdict.unwrap().holds());
    }

    #[test]
    fn separation_on_left_zero_qualifies_everything() {
        let s = Semigroup::left_zero(Some(5)).unwrap();
        let f = Window::new(&s, vec![s.index(0).unwrap(), s.index(1).unwrap()]).unwrap();
        let search = s.enumerate(5).unwrap();
        let report = check_separating_translations(&f, &search).unwrap();
        assert_eq!(report.qualifying.len(), 5);
        assert!(report.verdict.is_none());
    }

    #[test]
    fn weak_left_cancellation_stabilizes_on_naturals() {
        let s = Semigroup::nat_plus();
        let p = Window::new(&s, vec![s.nat(5).unwrap(), s.nat(7).unwrap()]).unwrap();
        let schedule: Vec<Window> = [6, 10, 14].iter().map(|&k| s.enumerate(k).unwrap()).collect();
        let report = check_weak_left_cancellation(&s.nat(2).unwrap(), &p, &schedule).unwrap();
        assert_eq!(report.counts, vec![(6, 2), (10, 2), (14, 2)]);
        assert!(report.verdict.unwrap().holds());
        assert!(!report.fills_every_window());
    }

    #[test]
    fn weak_left_cancellation_fails_on_left_zero() {
        let s = Semigroup::left_zero(Some(8)).unwrap();
        let x = s.index(1).unwrap();
        let p = Window::new(&s, vec![x.clone(), s.index(2).unwrap()]).unwrap();
        let schedule: Vec<Window> = [2, 5, 8].iter().map(|&k| s.enumerate(k).unwrap()).collect();
        let report = check_weak_left_cancellation(&x, &p, &schedule).unwrap();
        assert_eq!(report.counts, vec![(2, 2), (5, 5), (8, 8)]);
        assert!(report.fills_every_window());
        assert!(!report.verdict.unwrap().holds());
    }

    #[test]
    fn weak_left_cancellation_stabilizes_on_free_words() {
        let s = free2();
        let p = Window::new(&s, vec![s.word("ab").unwrap()]).unwrap();
        let schedule: Vec<Window> = [4, 8, 14].iter().map(|&k| s.enumerate(k).unwrap()).collect();
        let report = check_weak_left_cancellation(&s.word("a").unwrap(), &p, &schedule).unwrap();
        assert_eq!(report.counts, vec![(4, 1), (8, 1), (14, 1)]);
    }

    #[test]
    fn windows_reject_duplicates() {
        let s = z2();
        let e = s.index(0).unwrap();
        assert!(matches!(
            Window::new(&s, vec![e.clone(), e]),
            Err(Error::DuplicateInWindow { .. })
        ));
    }

    #[test]
    fn word_ordering_is_shortlex() {
        let s = free2();
        let b = s.word("b").unwrap();
        let aa = s.word("aa").unwrap();
        assert!(b < aa);
        let ab = s.word("ab").unwrap();
        let ba = s.word("ba").unwrap();
        assert!(ab < ba);
    }

    #[test]
    fn parse_and_display_element_round_trip() {
        let s = free2();
        let e = s.parse_element("abb").unwrap();
        assert_eq!(s.display_element(&e), "abb");
        let t = z2();
        assert_eq!(t.parse_element("1").unwrap(), t.index(1).unwrap());
        assert_eq!(t.parse_element("0").unwrap(), t.index(0).unwrap());
    }

    #[test]
    fn cayley_labels_parse_as_elements() {
        let s = Semigroup::cayley(
            vec!["e".into(), "a".into()],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        assert_eq!(s.parse_element("a").unwrap(), s.index(1).unwrap());
        assert_eq!(s.label(&s.index(1).unwrap()), "a");
    }

    #[test]
    fn commutativity_detection() {
        assert!(z2().is_commutative());
        assert!(Semigroup::nat_plus().is_commutative());
        assert!(!free2().is_commutative());
        assert!(!Semigroup::left_zero(Some(3)).unwrap().is_commutative());
        assert!(Semigroup::free(&['a']).unwrap().is_commutative());
    }
}
