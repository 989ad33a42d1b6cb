//! Ultrafilter semantics for finitely described families and the transfer principles.

mod family;
mod transfer;
mod verdict;

pub use family::{ElementFamily, ElementRule, LengthEnumeration};
pub use transfer::{
    factorial_uniqueness_check, finite_index_ultraproduct_lengths, realize_multiset_transfer, up_in_ha, up_is_atom,
    up_is_unit, up_length_contains, up_length_multiplicity, FactorialReport, HaOutcome, IndexCheck, RealizedIndex,
    RealizerReport, RealizerRequest, TransferReport, TransferRow,
};
pub use verdict::{filter_contains, ultralimit, BoolFamily, ExtNatFamily, Periodic, UltrafilterSpec, Verdict};
