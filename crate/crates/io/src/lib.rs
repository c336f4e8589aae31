//! File formats and command-line front end for `riemann-core`.
//!
//! * [`rsm`]: the `.rsm.json` surface mesh document read by the viewer.
//! * [`export`]: OBJ and PLY export with baked vertex colours.
//! * [`image`]: PNG encoding of rendered images.
//! * [`cli`]: the `riemann` command.

pub mod cli;
pub mod export;
pub mod image;
pub mod rsm;
