//! Optional intervals events (OIEs): every feasible way to run a set of
//! events, kept as exact interval data before anything runs.
//!
//! An atomic OIE lists the intervals one indivisible event may occupy.
//! Sequential addition ([`csa`]) plans events side by side inside a shared
//! window; sequential multiplication ([`csm`]) chains them one after another.
//! An infeasible plan yields the absorbing [`void_oie`] value, not an error.
//!
//! ```
//! use oie::{csa, make_atomic, Config, ConstraintSet, DomainWindow, IndexTuple, Interval};
//!
//! let a = make_atomic("Dr_A".into(), [Interval::of(0, 1), Interval::of(21, 22)]).unwrap();
//! let b = make_atomic("Dr_B".into(), [Interval::of(0, 1), Interval::of(13, 14), Interval::of(20, 22)]).unwrap();
//! let window = DomainWindow::new(0, 22).unwrap();
//! let both = csa(&[b, a], &IndexTuple::ascending(2), &window, &ConstraintSet::new(), &Config::default()).unwrap();
//! assert_eq!(both.details().len(), 6);
//! assert_eq!(both.intervals().len(), 5);
//! ```

pub mod analysis;
pub mod cli;
pub mod combo;
pub mod config;
pub mod constraints;
pub mod error;
pub mod feasibility;
pub mod model;
pub mod ops;
pub mod semigroup;
pub mod time;

pub use analysis::{
    fold_projection, implement_first, implement_second, oie_perm_equivalent, orbit_space,
    project_end_ts, OperandOrdering, Operation, OrbitClass, OrbitSpace, Reducer,
    ScheduleAssignment,
};
pub use combo::{
    apply_permutation, bound_combo, combo_perm_equivalent, max_second, min_first, ComboSet,
    IntervalCombo, PermutationMap,
};
pub use config::{Config, IntersectionRule, Limits};
pub use constraints::{ConstraintSet, Rule};
pub use error::{Error, Result};
pub use feasibility::{
    cartesian_by_index, feasible_combos, infeasible_combos, is_mutually_independent, IndexTuple,
};
pub use model::{
    derive_intervals, intervals_family, make_atomic, oie_equal, validate_oie, void_oie,
    EventStarId, Oie, Shape, ValidationReport,
};
pub use ops::{
    asc_order_filtered_subset, csa, csm, domain_filtered_subset, natural_csa, DomainWindow,
};
pub use semigroup::{
    cayley_table, emit_full_csa_diagram, enumerate_elements, semigroup_op, CayleyTable, Layout,
    SemigroupElement,
};
pub use time::{Interval, Rational, Timestamp};
