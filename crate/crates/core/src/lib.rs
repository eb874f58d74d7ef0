pub mod cli;
pub mod criteria;
pub mod families;
pub mod genus;
pub mod group;
pub mod hyper;
