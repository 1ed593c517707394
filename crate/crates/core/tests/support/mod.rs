pub mod nielsen;
pub mod random;
