pub mod cli;
pub mod definition;
pub mod duality;
pub mod finalg;
pub mod fixtures;
pub mod haar;
pub mod mhopf;
pub mod presentations;
pub mod scalars;
