pub mod asymptotics;
pub mod cli;
pub mod constant;
pub mod dense;
pub mod error;
pub mod gegenbauer;
pub mod matrices;
pub mod quadrature;
pub mod report;
pub mod special;
pub mod spectral;
pub mod verify;
