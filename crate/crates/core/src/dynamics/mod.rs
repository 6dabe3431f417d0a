//! Laser-driven dynamics: pulses and their classical integrals, gauge
//! identities, first-order transition probabilities, Crank-Nicolson and
//! Gordon-Volkov propagation.

mod crank_nicolson;
mod gauge;
mod pulse;
mod transition;
mod volkov;

pub use crank_nicolson::{crank_nicolson_observe, crank_nicolson_propagate, grid_norm, grid_overlap};
pub use gauge::{gauge_residual, kramers_henneberger_gauge, velocity_gauge};
pub use pulse::{field_integrals, field_value, oscillatory_field_integral, Carrier, Envelope, FieldIntegrals, Pulse};
pub use transition::{
    first_order_transition, linspace, run_parallel, transition_sweep, Coupling, CurveMeta, SweepSpec,
    TransitionCurve,
};
pub use volkov::{first_order_strong_field, gordon_volkov_propagate, FreeBasis, VolkovPropagator};
