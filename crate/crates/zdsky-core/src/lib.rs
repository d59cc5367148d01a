//! Zero-divisor algebra of the Cayley-Dickson 2^N-ions.
//!
//! The crate builds everything from one exact primitive: XOR-indexed basis
//! products whose signs come from a two-rule recursion over associative
//! triples. On top of that sit assessors and DMZ testing ([`zd`]), box-kite
//! candidates and their classification ([`boxkite`]), emanation tables with
//! both a brute-force generator and the O(1)-per-cell bitstring recipe
//! ([`emanation`], [`recipe`]), cellwise verifiers for the nesting laws
//! ([`verify`]), and CSV/JSON/PPM/SVG emitters ([`export`], [`render`]).
//!
//! Every computation is exact integer arithmetic; no floating point is used
//! anywhere.

pub mod algebra;
pub mod boxkite;
pub mod emanation;
pub mod error;
pub mod export;
pub mod multivector;
pub mod recipe;
pub mod render;
pub mod verify;
pub mod zd;

pub use algebra::{
    basis_product, enumerate_trips, is_cpo, trip_count, trip_cpo, AlgebraContext, Sign,
    SignedBasis, Trip,
};
pub use boxkite::{
    classify_boxkite, enumerate_candidates, hidefill_probe, sails, viziers_check, BoxKite, Kind,
    SailSet, ViziersReport,
};
pub use emanation::{
    band_of, label_order, max_boxkite_count, nsl_labels, sand_mandala_count,
    viable_boxkite_count, Band, Cell, EmanationTable, Mark, Method, SkyboxLevel,
};
pub use error::{Error, Result};
pub use multivector::{doubling_product, doubling_sign, Multivector};
pub use recipe::{et_recipe, recipe_applicable, RecipeSpec};
pub use render::{
    balloon_ride, flipbook, render_ppm, render_svg, write_atomic, FrameSequence, ImageFormat,
    Palette,
};
pub use verify::{
    four_corners_check, french_windows_check, number_hub_check, recipe_vs_bruteforce,
    skybox_embed_check, CheckReport,
};
pub use zd::{dmz_test, Assessor, DmzWitness, EdgeSign, Slope, StrutContext};
