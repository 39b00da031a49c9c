/// How the shared-atom test of sequential addition and multiplication reads
/// for three or more operands.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IntersectionRule {
    /// Void as soon as any two operands share an atom.
    #[default]
    Pairwise,
    /// Void only when one atom is common to every operand.
    Aggregate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest Cartesian product enumerated before giving up.
    pub max_product: u128,
    /// Largest operand count for orbit enumeration (`n!` evaluations).
    pub orbit_cap: usize,
    /// Largest atom count for Cayley tables (`2^n` rows).
    pub cayley_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_product: 100_000,
            orbit_cap: 6,
            cayley_cap: 12,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Config {
    pub limits: Limits,
    pub intersection: IntersectionRule,
}
