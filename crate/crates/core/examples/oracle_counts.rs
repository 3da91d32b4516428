//! Prints the brute-force level sizes, one `genus,count` line per genus.
//!
//! Used to regenerate `tests/fixtures/oracle_counts.csv`:
//!
//! ```text
//! cargo run --release -p rgd-core --example oracle_counts -- 20
//! ```

use rgd_core::oracle::naive_count;

fn main() {
    let gamma = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("genus must be an integer"))
        .unwrap_or(12);
    let table = naive_count(gamma).expect("genus within oracle range");
    println!("genus,count");
    for (g, n) in table.iter() {
        println!("{g},{n}");
    }
}
