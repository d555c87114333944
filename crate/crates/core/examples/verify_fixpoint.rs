// Build the self-confirming closure of a process read from a file and
// print the verification table. Mirrors the README walkthrough:
//
//     cargo run -p causal-core --example verify_fixpoint -- demos/ignore-model.term

use causal_core::rat::int;
use causal_core::{build_self_confirming, verify_self_confirming, Code, Fuel};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "demos/ignore-model.term".into());
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {path}: {e}"));
    let fx = build_self_confirming(&Code::new(text)).unwrap();
    let report = verify_self_confirming(&fx, Fuel(8), &int(0)).unwrap();
    print!("{}", report.table());
    println!(
        "verification: {}",
        if report.pass { "PASS" } else { "FAIL" }
    );
    std::process::exit(if report.pass { 0 } else { 1 });
}
