pub mod compose;
pub mod diagram;
pub mod invariants;
pub mod minimality;
pub mod moves;
pub mod ring;
