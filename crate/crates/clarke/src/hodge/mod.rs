//! Hodge diamonds and the numeric calculators behind them: toric varieties,
//! curves and local cohomology, coinvariant parts of branched covers, LG
//! assembly, and the Newton spectrum with its brute-force oracle.

mod classical;
mod cover;
mod diamond;
mod koszul;
mod spectrum;

pub use classical::{
    curve_diamond, local_cohomology_diamond, stratum_diamond, toric_curve_data, toric_diamond,
    CurveData, Support, ToricSurface,
};
pub(crate) use cover::curve_term;
pub use cover::{
    ev_coinvariant_curve, ev_coinvariant_diamond, ev_surface_chi, lg_diamond, lg_diamond_curve,
    lg_terms_curve, subsets, EvData, SurfaceChi,
};
pub use diamond::{half, DiamondDoc, HodgeDiamond};
pub use koszul::{koszul_oracle, KoszulReport, OracleOptions};
pub use spectrum::{classify, newton_spectrum, Spectrum, SpectrumMode, SpectrumRequest};

/// Filtered tensor product.
pub fn kunneth(a: &HodgeDiamond, b: &HodgeDiamond) -> HodgeDiamond {
    a.kunneth(b)
}

/// Shift by (α, α), with `alpha2` = 2α.
pub fn shift(d: &HodgeDiamond, alpha2: i64) -> HodgeDiamond {
    d.shift(alpha2)
}
