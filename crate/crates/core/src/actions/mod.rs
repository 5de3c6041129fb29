//! Group actions on the digit spaces.

mod lemma;
mod normal;
mod product;
mod window;

pub use lemma::{
    claim_eq_digits, coinduced_exponent, coinduced_sym_diff, in_tail_set, tail_set_estimate, tau_digits,
    theta_stabilization, LemmaCylinder, ZCylinder,
};
pub use normal::{ShiftData, YPoint};
pub use product::{act_w, act_w1, act_x, act_y_a, act_y_t, act_y_t_inv, act_z, W1Point, WPoint};
pub use window::{apply_steps, Shape, YStep, YWindow, YWord};
