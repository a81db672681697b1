#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` style checks also reject NaN

pub mod bounds;
pub mod fode;
pub mod gamma;
pub mod ml;
pub mod optimize;
pub mod par;
pub mod registry;
pub mod reproduce;
pub mod zeros;
