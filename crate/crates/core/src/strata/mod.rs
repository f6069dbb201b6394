//! Section spaces, their linear stratification by saturated elements, and the
//! curve counters.

pub mod count;
pub mod surface;
pub mod system;
pub mod verify;
pub mod virtual_term;

pub use surface::Surface;
pub use system::{incidence_system, stratum_dim, ImageCache, IncidenceSystem, LocalOrders, RowBuilder, SplitRows, StratumDim};
pub use count::{
    count, count_fibered, count_fibered_on, count_naive, count_naive_on, count_on, count_sieve_exact, count_sieve_exact_on, satisfies_upper_bound, sieve_fiber, Caps, CountMethod,
    CountReport,
};
pub use virtual_term::{
    main_term_virtual, main_term_virtual_enumerated, main_term_virtual_matched, main_term_virtual_report, MainTermReport,
};
pub use verify::{coverage_report, satisfies_by_orders, section_orders, verify_unobstructedness, CoverageReport, Obstruction, UnobstructednessReport};
