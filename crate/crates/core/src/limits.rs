/// Work caps shared by every enumeration in the crate.
///
/// Defaults keep every call interactive; [`Limits::long_running`] lifts the
/// caps for the extended table rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of column subsets visited by one enumeration.
    pub subset_cap: u64,
    /// Maximum size `q^m` of a point space enumerated by the oracle.
    pub point_cap: u64,
    /// Maximum number of hyperplanes for full `2^n` subset tables
    /// (inclusion-exclusion and intersection posets).
    pub max_table_columns: usize,
    /// Maximum total number of points over one modulus sweep.
    pub sweep_budget: u64,
}

impl Limits {
    pub const DEFAULT_SUBSET_CAP: u64 = 100_000_000;
    pub const DEFAULT_POINT_CAP: u64 = 1_000_000_000;
    pub const DEFAULT_TABLE_COLUMNS: usize = 20;
    pub const DEFAULT_SWEEP_BUDGET: u64 = 100_000_000;

    pub fn long_running() -> Self {
        Limits {
            subset_cap: u64::MAX,
            sweep_budget: u64::MAX,
            ..Limits::default()
        }
    }

    pub(crate) fn check_table(&self, n: usize) -> crate::Result<()> {
        if n > self.max_table_columns || n >= 40 || (1u64 << n) > self.subset_cap {
            return Err(crate::Error::resource(
                "subset table",
                format!("2^{n} subsets"),
                self.subset_cap.min(1u64 << self.max_table_columns.min(63)),
            ));
        }
        Ok(())
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            subset_cap: Self::DEFAULT_SUBSET_CAP,
            point_cap: Self::DEFAULT_POINT_CAP,
            max_table_columns: Self::DEFAULT_TABLE_COLUMNS,
            sweep_budget: Self::DEFAULT_SWEEP_BUDGET,
        }
    }
}
