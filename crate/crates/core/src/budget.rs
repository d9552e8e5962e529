//! Work budgets for the potentially expensive enumerations.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("work budget exhausted")]
pub struct BudgetExhausted;

/// A decrementing counter of abstract work units (rank computations,
/// closures, balance checks). Exhaustion is reported as an error so callers
/// can degrade gracefully instead of running away.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    remaining: u64,
}

impl Budget {
    pub fn new(units: u64) -> Self {
        Budget { remaining: units }
    }

    pub fn unlimited() -> Self {
        Budget { remaining: u64::MAX }
    }

    pub fn consume(&mut self, units: u64) -> Result<(), BudgetExhausted> {
        if self.remaining < units {
            self.remaining = 0;
            return Err(BudgetExhausted);
        }
        self.remaining -= units;
        Ok(())
    }

    pub fn remaining(&self) -> u64 {
        self.remaining
    }
}
