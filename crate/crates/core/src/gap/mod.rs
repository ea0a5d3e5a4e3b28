//! Gap principles and the constants of the counting argument.

pub mod cover;
pub mod gap1;
pub mod matrix;
pub mod params;

pub use cover::{gap2_cover_check, greedy_cover, Gap2Report, IntervalCover};
pub use gap1::{
    big_solution_threshold, corrected_gap1_threshold, gap1_check, gap1_check_heights, gap1_sweep, gap1_sweep_corrected,
    gap1_threshold, BigThreshold, Gap1Check, Gap1Pair, Gap1Sweep,
};
pub use matrix::{
    column_bounding_check, default_partition, dyson_certificate, h_gap_check, CertificateStatus, ColumnBoundingReport,
    DysonCertificate, GapMatrix, HGapReport, LocalSource,
};
pub use params::{count_bound, count_bound_for, dyson_bound, gap2_params, ratio_gap_capacity, CountBound, Gap2Params};
