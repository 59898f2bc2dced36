//! Command-line front end for flatspin: build surfaces, analyze them, run
//! the verification suite, compare surfaces and draw them.

pub mod args;
pub mod commands;
pub mod error;
pub mod report;
pub mod svg;
pub mod verify;

use flatspin_core::CycloNum;

pub use args::{Cli, Command};
pub use commands::{run, Outcome};
pub use error::CliError;
pub use report::{Check, VerificationReport};

/// Environment variable overriding the default embedding precision.
pub const PRECISION_ENV: &str = "FLATSPIN_PRECISION";
pub const DEFAULT_PRECISION: u32 = 53;

/// Bits used for numeric output: the flag, else the environment, else 53.
pub fn precision(flag: Option<u32>) -> Result<u32, CliError> {
    if let Some(bits) = flag {
        return Ok(bits);
    }
    match std::env::var(PRECISION_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{PRECISION_ENV}={v:?} is not a number of bits"))),
        Err(_) => Ok(DEFAULT_PRECISION),
    }
}

fn trim_float(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_owned()
    } else {
        s
    }
}

/// Exact value followed by a decimal approximation.
pub fn numeric(c: &CycloNum, bits: u32) -> String {
    let (re, im) = c.to_f64_pair(bits);
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{c} ≈ {} {sign} {}i", trim_float(re), trim_float(im.abs()))
}

/// Parses `1`, `-1`, `zM`, `zM^j` or `-zM^j` into a root of unity.
pub fn parse_root(text: &str) -> Result<CycloNum, CliError> {
    let bad = || CliError::Usage(format!("cannot read {text:?} as a root of unity (use 1, -1, zM or zM^j)"));
    let (negative, body) = match text.trim().strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.trim()),
    };
    let value = if body == "1" {
        CycloNum::one(1)
    } else {
        let rest = body.strip_prefix('z').ok_or_else(bad)?;
        let (m, j) = match rest.split_once('^') {
            Some((m, j)) => (m, j.parse::<i64>().map_err(|_| bad())?),
            None => (rest, 1),
        };
        let m: u32 = m.parse().map_err(|_| bad())?;
        if m == 0 {
            return Err(bad());
        }
        CycloNum::root_of_unity(m, j)
    };
    Ok(if negative { -value } else { value })
}
