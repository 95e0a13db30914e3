use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{
    build_catalog_group, canonical_key, canonical_name, CanonicalKey, FiniteGroup,
};
use crate::limits::Limits;
use crate::rational::{parse_rat, ratio, Rat};

/// A free generator of K₀: the point, or `BG` for a nontrivial p-group `G`
/// up to isomorphism.
///
/// Elements are ordered by group order and then by canonical key, with the
/// point first. Isomorphic groups give equal elements.
#[derive(Clone)]
pub enum BasisElement {
    Star,
    PGroup {
        prime: u64,
        group: Arc<FiniteGroup>,
        key: CanonicalKey,
    },
}

impl BasisElement {
    /// `Star` for the trivial group, `PGroup` for a nontrivial p-group.
    pub fn from_group(group: impl Into<Arc<FiniteGroup>>) -> Result<Self> {
        let group = group.into();
        if group.is_trivial() {
            return Ok(BasisElement::Star);
        }
        let prime = group
            .p_group_prime()
            .ok_or_else(|| Error::NotPGroup(group.name().to_string()))?;
        let key = canonical_key(&group);
        Ok(BasisElement::PGroup { prime, group, key })
    }

    pub fn order(&self) -> usize {
        match self {
            BasisElement::Star => 1,
            BasisElement::PGroup { group, .. } => group.order(),
        }
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            BasisElement::Star => None,
            BasisElement::PGroup { prime, .. } => Some(*prime),
        }
    }

    /// The group whose classifying space this element is; trivial for `Star`.
    pub fn group(&self) -> Arc<FiniteGroup> {
        match self {
            BasisElement::Star => Arc::new(FiniteGroup::trivial()),
            BasisElement::PGroup { group, .. } => group.clone(),
        }
    }

    /// `*` or the canonical group spec.
    pub fn spec(&self) -> String {
        match self {
            BasisElement::Star => "*".to_string(),
            BasisElement::PGroup { group, .. } => canonical_name(group),
        }
    }

    fn sort_key(&self) -> (usize, &[usize]) {
        match self {
            BasisElement::Star => (1, &[]),
            BasisElement::PGroup { group, key, .. } => (group.order(), key),
        }
    }
}

impl PartialEq for BasisElement {
    fn eq(&self, other: &Self) -> bool {
        self.sort_key() == other.sort_key()
    }
}

impl Eq for BasisElement {}

impl PartialOrd for BasisElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BasisElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl Hash for BasisElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.sort_key().hash(state);
    }
}

/// `[*]` or `[B G]`.
impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::Star => f.write_str("[*]"),
            BasisElement::PGroup { .. } => write!(f, "[B {}]", self.spec()),
        }
    }
}

impl fmt::Debug for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Values of a characteristic function on basis elements. `None` means the
/// value was not supplied.
pub trait BasisValues {
    fn value(&self, element: &BasisElement) -> Option<Rat>;

    fn require(&self, element: &BasisElement) -> Result<Rat> {
        self.value(element)
            .ok_or_else(|| Error::MissingValue(element.to_string()))
    }
}

/// Homotopy cardinality on the basis: `1/|G|` on `BG` and 1 on the point.
#[derive(Debug, Clone, Copy, Default)]
pub struct BaezDolan;

impl BasisValues for BaezDolan {
    fn value(&self, element: &BasisElement) -> Option<Rat> {
        Some(ratio(1, element.order() as i64))
    }
}

/// Explicitly prescribed basis values.
#[derive(Debug, Clone, Default)]
pub struct BasisTable {
    values: BTreeMap<BasisElement, Rat>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisValueEntry {
    pub basis: String,
    pub value: String,
}

impl BasisTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, element: BasisElement, value: Rat) -> Option<Rat> {
        self.values.insert(element, value)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisElement, &Rat)> {
        self.values.iter()
    }

    /// Entries are `{"basis": spec or "*", "value": "num/den"}`. A basis
    /// element listed twice (possibly under isomorphic specs) is an error.
    pub fn from_entries(entries: &[BasisValueEntry], limits: &Limits) -> Result<Self> {
        let mut table = BasisTable::new();
        for entry in entries {
            let element = if entry.basis.trim() == "*" {
                BasisElement::Star
            } else {
                BasisElement::from_group(build_catalog_group(&entry.basis, limits)?)?
            };
            let value = parse_rat(&entry.value)?;
            if table.insert(element.clone(), value).is_some() {
                return Err(Error::Value(format!(
                    "{element} is given more than one value"
                )));
            }
        }
        Ok(table)
    }

    pub fn from_json(text: &str, limits: &Limits) -> Result<Self> {
        let entries: Vec<BasisValueEntry> = serde_json::from_str(text)?;
        Self::from_entries(&entries, limits)
    }

    pub fn from_file(path: &Path, limits: &Limits) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text, limits)
    }

    pub fn to_entries(&self) -> Vec<BasisValueEntry> {
        self.values
            .iter()
            .map(|(e, v)| BasisValueEntry {
                basis: e.spec(),
                value: v.to_string(),
            })
            .collect()
    }
}

impl BasisValues for BasisTable {
    fn value(&self, element: &BasisElement) -> Option<Rat> {
        self.values.get(element).cloned()
    }
}

/// Prescribed values on an increasing run of basis elements: the input to the
/// coefficient solver.
#[derive(Debug, Clone)]
pub struct BasisFunction {
    entries: Vec<(BasisElement, Rat)>,
}

impl BasisFunction {
    /// Entries must be strictly increasing in the basis order.
    pub fn new(entries: Vec<(BasisElement, Rat)>) -> Result<Self> {
        for pair in entries.windows(2) {
            let (a, b) = (&pair[0].0, &pair[1].0);
            match a.cmp(b) {
                Ordering::Less => {}
                Ordering::Equal => {
                    return Err(Error::OrderViolation(format!("{a} appears twice")));
                }
                Ordering::Greater => {
                    return Err(Error::OrderViolation(format!("{a} is listed before {b}")));
                }
            }
        }
        Ok(BasisFunction { entries })
    }

    /// Looks up `elements` (in any order, duplicates merged) in `values`.
    pub fn from_values(
        mut elements: Vec<BasisElement>,
        values: &(impl BasisValues + ?Sized),
    ) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let entries = elements
            .into_iter()
            .map(|e| {
                let v = values.require(&e)?;
                Ok((e, v))
            })
            .collect::<Result<Vec<_>>>()?;
        BasisFunction::new(entries)
    }

    pub fn entries(&self) -> &[(BasisElement, Rat)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn elem(spec: &str) -> BasisElement {
        BasisElement::from_group(build_catalog_group(spec, &Limits::default()).unwrap()).unwrap()
    }

    #[test]
    fn elements_merge_isomorphic_groups() {
        assert_eq!(elem("C2xC2"), elem("D2"));
        assert_ne!(elem("D4"), elem("Q8"));
        assert_eq!(elem("C1"), BasisElement::Star);
        assert_eq!(elem("C2xC4").to_string(), "[B C4xC2]");
        assert!(matches!(
            BasisElement::from_group(build_catalog_group("C6", &Limits::default()).unwrap()),
            Err(Error::NotPGroup(_))
        ));
    }

    #[test]
    fn ordering_puts_star_first_then_by_order() {
        let mut xs = [elem("C4"),
            elem("C3"),
            BasisElement::Star,
            elem("C2"),
            elem("Q8")];
        xs.sort();
        assert_eq!(xs[0], BasisElement::Star);
        let orders: Vec<usize> = xs.iter().map(BasisElement::order).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 8]);
    }

    #[test]
    fn basis_function_rejects_misordering() {
        let ok = BasisFunction::new(vec![(BasisElement::Star, int(1)), (elem("C2"), int(0))]);
        assert!(ok.is_ok());
        let swapped = BasisFunction::new(vec![(elem("C2"), int(0)), (BasisElement::Star, int(1))]);
        assert!(matches!(swapped, Err(Error::OrderViolation(_))));
        let dup = BasisFunction::new(vec![(elem("C2"), int(0)), (elem("C2"), int(1))]);
        assert!(matches!(dup, Err(Error::OrderViolation(_))));
    }

    #[test]
    fn baez_dolan_values() {
        assert_eq!(BaezDolan.value(&BasisElement::Star), Some(int(1)));
        assert_eq!(BaezDolan.value(&elem("Q8")), Some(ratio(1, 8)));
    }

    #[test]
    fn table_from_json() {
        let limits = Limits::default();
        let t = BasisTable::from_json(
            r#"[{"basis": "*", "value": "1"}, {"basis": "C2", "value": "-3/4"}]"#,
            &limits,
        )
        .unwrap();
        assert_eq!(t.value(&BasisElement::Star), Some(int(1)));
        assert_eq!(t.value(&elem("C2")), Some(ratio(-3, 4)));
        assert!(matches!(
            t.require(&elem("C4")),
            Err(Error::MissingValue(_))
        ));

        let dup = r#"[{"basis": "C2xC2", "value": "1"}, {"basis": "D2", "value": "1"}]"#;
        assert!(BasisTable::from_json(dup, &limits).is_err());
        assert!(BasisTable::from_json(r#"[{"basis": "C6", "value": "1"}]"#, &limits).is_err());
        assert!(BasisTable::from_json(r#"[{"basis": "C2", "value": "x"}]"#, &limits).is_err());
        assert!(BasisTable::from_json("{", &limits).is_err());

        let back = BasisTable::from_entries(&t.to_entries(), &limits).unwrap();
        assert_eq!(back.to_entries().len(), 2);
    }
}
