pub mod catalog;
pub mod covers;
pub mod lattice;
pub mod num;
pub mod scroll;
pub mod stable;
pub mod verify;
