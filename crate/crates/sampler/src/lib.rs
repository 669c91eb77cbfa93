//! Perfect sampling of five-vertex configurations at weights
//! `w1 = w3 = w4 = 1`, `w5 = w6 = 1/√x` by coupling from the past on the
//! plane-partition heights, plus density maps and rendering.

pub mod archive;
pub mod cftp;
pub mod density;
pub mod dynamics;
pub mod probe;
pub mod render;
pub mod state;

pub use cftp::{cftp_sample, CftpOptions, CftpSample};
pub use density::{disordered_regions, measure_vertex_densities, VertexDensities};
pub use dynamics::{heat_bath_step, Dynamics, TurnWeights};
pub use render::{render, Format, Style};
pub use state::HeightState;
