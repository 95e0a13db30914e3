use crate::error::{Error, Result};

/// Environment variable that overrides the default construction cap.
pub const MAX_ORDER_ENV: &str = "EULERK_MAX_ORDER";

/// Size caps for group construction and homomorphism searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order that may be constructed.
    pub max_order: usize,
    /// Largest value of `|G| * |H|` for which `Hom(G, H)` is enumerated.
    pub max_hom_pair: usize,
    /// Largest projected number of generator-image tuples in a hom search.
    pub max_search: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 36,
            max_hom_pair: 24 * 24,
            max_search: 50_000_000,
        }
    }
}

impl Limits {
    pub fn with_max_order(mut self, max_order: usize) -> Self {
        self.max_order = max_order;
        self
    }

    /// Defaults, with `max_order` taken from `EULERK_MAX_ORDER` when set.
    pub fn from_env() -> Result<Self> {
        let limits = Limits::default();
        match std::env::var(MAX_ORDER_ENV) {
            Ok(raw) => {
                let n: usize = raw.trim().parse().map_err(|_| {
                    Error::Value(format!("{MAX_ORDER_ENV}={raw:?} is not a positive integer"))
                })?;
                if n == 0 {
                    return Err(Error::Value(format!("{MAX_ORDER_ENV} must be at least 1")));
                }
                Ok(limits.with_max_order(n))
            }
            Err(_) => Ok(limits),
        }
    }

    pub(crate) fn check_order(&self, order: usize, what: &str) -> Result<()> {
        if order > self.max_order {
            return Err(Error::Limit(format!(
                "{what} has order {order}, above the maximum {}",
                self.max_order
            )));
        }
        Ok(())
    }

    pub(crate) fn check_hom_pair(&self, source: usize, target: usize) -> Result<()> {
        if source.saturating_mul(target) > self.max_hom_pair {
            return Err(Error::Limit(format!(
                "hom search between groups of orders {source} and {target} exceeds the pair budget {}",
                self.max_hom_pair
            )));
        }
        Ok(())
    }
}
