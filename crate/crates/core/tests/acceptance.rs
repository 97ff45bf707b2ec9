//! One line per acceptance criterion; exits non-zero if any fails.

use hpgforge::acceptance::run;
use hpgforge::batch::Execution;

fn main() {
    let mut failed = Vec::new();
    println!("acceptance criteria");
    for id in 1..=10 {
        let o = run(id, Execution::Parallel);
        println!("{o}");
        if !o.pass {
            failed.push(id);
        }
    }
    println!("{} passed, {} failed {:?}", 10 - failed.len(), failed.len(), failed);
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
