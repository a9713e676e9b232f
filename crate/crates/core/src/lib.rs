//! Exact verification engine for the rank-one tamely ramified Langlands
//! correspondence on P¹ with three marked points.

pub mod algkernel;
pub mod dictcli;
pub mod fqbun;
pub mod heckewaki;
pub mod marked;
pub mod report;
pub mod sl2rep;
pub mod spectral;
