//! Replays the worked examples against the committed golden values.

use bbmstab::cli::run_example;

fn main() -> bbmstab::Result<()> {
    for n in 1..=4 {
        let rep = run_example(n)?;
        println!("example {n}: {}  [{}]", rep.title, if rep.all_pass { "ok" } else { "MISMATCH" });
        for c in &rep.checks {
            println!("  {:<4} {:<70} {}", if c.pass { "ok" } else { "FAIL" }, c.label, c.computed);
        }
        for (label, v) in &rep.notes {
            println!("  note {label:<70} {v}");
        }
    }
    Ok(())
}
