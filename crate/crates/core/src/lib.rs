pub mod charts;
pub mod constel;
pub mod exactnum;
pub mod hilb;
pub mod intersect;
pub mod linalg;
pub mod polyring;
pub mod repr;
pub mod taut;
pub mod verify;

pub use exactnum::{CycloElt, Int, Rat};

pub type QMatrix = linalg::Matrix<Rat>;
