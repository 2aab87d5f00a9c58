use std::io::Write;
use std::path::Path;

use num_traits::{One, Zero};
use serde_json::Value;
use whurwitz::{format_rational, Error, Rational, Result};

/// A rectangular table of already formatted cells.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

pub struct Output {
    pub json: Value,
    pub table: Table,
}

/// Decimal expansion when the denominator only has the primes 2 and 5,
/// otherwise "p/q".
pub fn csv_rational(x: &Rational) -> String {
    let den = x.denom().clone();
    let mut rest = den.clone();
    let two = num_bigint::BigInt::from(2);
    let five = num_bigint::BigInt::from(5);
    let ten = num_bigint::BigInt::from(10);
    let mut k2 = 0u32;
    let mut k5 = 0u32;
    while (&rest % &two).is_zero() {
        rest /= &two;
        k2 += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        k5 += 1;
    }
    if !rest.is_one() {
        return format_rational(x);
    }
    let digits = k2.max(k5);
    if digits == 0 {
        return x.numer().to_string();
    }
    let scaled = x * Rational::from_integer(num_traits::pow(ten.clone(), digits as usize));
    let n = scaled.to_integer();
    let neg = n < num_bigint::BigInt::zero();
    let s = if neg { (-&n).to_string() } else { n.to_string() };
    let s = format!("{:0>width$}", s, width = digits as usize + 1);
    let (int_part, frac) = s.split_at(s.len() - digits as usize);
    format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac)
}

pub fn write_csv(table: &Table, sink: &mut dyn Write) -> Result<()> {
    let width = table.header.len();
    if table.rows.iter().any(|r| r.len() != width) {
        return Err(Error::InvariantViolation("table is not rectangular".into()));
    }
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(sink);
    let io = |e: csv::Error| Error::IoFailure(e.to_string());
    w.write_record(&table.header).map_err(io)?;
    for r in &table.rows {
        w.write_record(r).map_err(io)?;
    }
    w.flush().map_err(|e| Error::IoFailure(e.to_string()))
}

pub fn emit(out: &Output, csv: bool, path: Option<&Path>) -> Result<()> {
    let mut buf: Vec<u8> = Vec::new();
    if csv {
        write_csv(&out.table, &mut buf)?;
    } else {
        let s = serde_json::to_string_pretty(&out.json).map_err(|e| Error::IoFailure(e.to_string()))?;
        buf.extend_from_slice(s.as_bytes());
        buf.push(b'\n');
    }
    let io = |e: std::io::Error| Error::IoFailure(e.to_string());
    match path {
        Some(p) => std::fs::write(p, &buf).map_err(io),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(&buf).map_err(io)?;
            so.flush().map_err(io)
        }
    }
}
