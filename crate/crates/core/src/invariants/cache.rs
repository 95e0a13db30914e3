//! Process-wide memo tables keyed by canonical keys, so isomorphic groups
//! share entries. Each entry is written once; readers never see a partial value.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::Result;
use crate::groups::{canonical_key, rep_count, CanonicalKey, FiniteGroup};
use crate::limits::Limits;

pub(crate) struct Memo<K, V> {
    cells: OnceLock<Mutex<HashMap<K, Arc<OnceLock<V>>>>>,
}

impl<K: Eq + Hash, V: Clone> Memo<K, V> {
    pub(crate) const fn new() -> Self {
        Memo {
            cells: OnceLock::new(),
        }
    }

    /// Failed computations are not stored, since failures depend on limits.
    pub(crate) fn get_or_try(&self, key: K, compute: impl FnOnce() -> Result<V>) -> Result<V> {
        let cell = {
            let mut map = self
                .cells
                .get_or_init(Default::default)
                .lock()
                .unwrap_or_else(|e| e.into_inner());
            map.entry(key).or_default().clone()
        };
        if let Some(v) = cell.get() {
            return Ok(v.clone());
        }
        let v = compute()?;
        Ok(cell.get_or_init(|| v).clone())
    }
}

pub(crate) type PairKey = (CanonicalKey, CanonicalKey);

static REP_COUNTS: Memo<PairKey, u64> = Memo::new();

/// [`rep_count`] up to isomorphism of both groups. Limits are checked before
/// the lookup, so a cached answer never bypasses them.
pub(crate) fn cached_rep_count(k: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<u64> {
    limits.check_hom_pair(k.order(), h.order())?;
    REP_COUNTS.get_or_try((canonical_key(k), canonical_key(h)), || {
        rep_count(k, h, limits)
    })
}
