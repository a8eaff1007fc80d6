//! A small reverse-mode engine for dense networks.
//!
//! Networks are stateless descriptions ([`DenseSpec`]) applied to borrowed
//! parameter slices, so one flat parameter vector can hold a torso, many heads
//! and a mixer while a single [`Adam`] state updates all of them.

mod adam;
pub mod checkpoint;
mod dense;
mod gradcheck;
mod init;
mod params;

pub use adam::{Adam, AdamConfig};
pub use dense::{Activation, BackwardScratch, DenseSpec, ForwardCache};
pub use gradcheck::{check_gradient, grad_check, relative_error, GradCheckReport};
pub use init::{init_dense, uniform_init, xavier_uniform_init, InitScheme};
pub use params::{ParamSlice, ParamStore};
