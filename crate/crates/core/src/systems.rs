//! The bundled example systems.

use crate::words::Substitution;

pub const TRIBONACCI: &str = include_str!("../../../systems/tribonacci.sub");
pub const FIBONACCI: &str = include_str!("../../../systems/fibonacci.sub");
pub const THUE_MORSE: &str = include_str!("../../../systems/thuemorse.sub");

pub fn tribonacci() -> Substitution {
    Substitution::parse("tribonacci", TRIBONACCI).expect("bundled system parses")
}

pub fn fibonacci() -> Substitution {
    Substitution::parse("fibonacci", FIBONACCI).expect("bundled system parses")
}

pub fn thue_morse() -> Substitution {
    Substitution::parse("thuemorse", THUE_MORSE).expect("bundled system parses")
}

/// Looks a bundled system up by name (`tribonacci`, `fibonacci`, `thuemorse`).
pub fn by_name(name: &str) -> Option<Substitution> {
    match name {
        "tribonacci" => Some(tribonacci()),
        "fibonacci" => Some(fibonacci()),
        "thuemorse" | "thue-morse" => Some(thue_morse()),
        _ => None,
    }
}
