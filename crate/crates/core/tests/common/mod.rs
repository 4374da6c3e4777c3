pub mod hiprec;
pub mod interval_checks;
pub mod orbit_checks;
