//! Batch front end (placeholder while modules land).
pub fn main() -> i32 { 0 }
