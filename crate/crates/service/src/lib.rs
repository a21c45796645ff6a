//! The rdfshift web service and command-line converter on top of
//! `rdfshift-core`.

pub mod api;
pub mod cli;
pub mod config;
pub mod fetch;
pub mod links;
pub mod lookup;
