use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Caps on the work one computation may do. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_configs: Option<u64>,
    pub max_states: Option<u64>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_configs: None,
        max_states: None,
    };

    pub fn new(max_configs: Option<u64>, max_states: Option<u64>) -> Self {
        Self {
            max_configs,
            max_states,
        }
    }
}

/// Shared, thread-safe consumption counters for a [`Budget`].
#[derive(Debug, Default)]
pub struct Meter {
    budget: Budget,
    configs: AtomicU64,
    states: AtomicU64,
}

impl Meter {
    pub fn new(budget: Budget) -> Self {
        Self {
            budget,
            configs: AtomicU64::new(0),
            states: AtomicU64::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Self::new(Budget::UNLIMITED)
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn charge_config(&self) -> Result<()> {
        let used = self.configs.fetch_add(1, Ordering::Relaxed) + 1;
        match self.budget.max_configs {
            Some(cap) if used > cap => Err(Error::ResourceLimit(format!(
                "more than {cap} configurations examined"
            ))),
            _ => Ok(()),
        }
    }

    pub fn charge_state(&self) -> Result<()> {
        let used = self.states.fetch_add(1, Ordering::Relaxed) + 1;
        match self.budget.max_states {
            Some(cap) if used > cap => Err(Error::ResourceLimit(format!(
                "more than {cap} solver states expanded"
            ))),
            _ => Ok(()),
        }
    }

    pub fn configs_examined(&self) -> u64 {
        self.configs.load(Ordering::Relaxed)
    }

    pub fn states_expanded(&self) -> u64 {
        self.states.load(Ordering::Relaxed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps_trip_after_limit() {
        let meter = Meter::new(Budget::new(Some(2), Some(1)));
        assert!(meter.charge_config().is_ok());
        assert!(meter.charge_config().is_ok());
        assert!(matches!(
            meter.charge_config(),
            Err(Error::ResourceLimit(_))
        ));
        assert!(meter.charge_state().is_ok());
        assert!(meter.charge_state().is_err());
        assert_eq!(meter.configs_examined(), 3);
    }

    #[test]
    fn unlimited_never_trips() {
        let meter = Meter::unlimited();
        for _ in 0..1000 {
            meter.charge_state().unwrap();
        }
        assert_eq!(meter.states_expanded(), 1000);
    }
}
