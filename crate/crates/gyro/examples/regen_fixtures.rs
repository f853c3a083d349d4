//! Regenerates the frozen tables under `tests/fixtures/`.
//!
//! Run from the workspace root with
//! `cargo run --release -p gyro --example regen_fixtures`.
//! The integration tests treat the committed files as ground truth; rerun
//! this only when the fixture set itself is meant to change, and review the
//! resulting diff.

use std::fs;
use std::ops::ControlFlow;
use std::path::Path;

use gyro::search::{enumerate_loops, first_nongroup_gyrogroup, search_l_not_sl, SearchConfig};
use gyro::{axioms, fixtures, GyroTable};

fn write(dir: &Path, name: &str, contents: &str) {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    println!("wrote {}", path.display());
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    fs::create_dir_all(&dir).unwrap();

    write(&dir, "z4.json", &fixtures::z4().to_json());
    write(&dir, "k4.json", &fixtures::k4().to_json());
    write(&dir, "s3.json", &fixtures::s3().to_json());
    write(&dir, "s3.txt", &fixtures::s3().to_text());

    // A structurally broken table: row 1 repeats an entry.
    write(
        &dir,
        "bad_row.json",
        "{\"order\":3,\"table\":[[0,1,2],[1,1,0],[2,0,1]]}\n",
    );

    // The first order-5 loop in lexicographic order that passes structural
    // validation (two-sided inverses) but fails the gyrogroup axioms,
    // together with the violation it exhibits.
    let mut reject: Option<GyroTable> = None;
    enumerate_loops(5, false, &mut |rows| {
        // Loops without two-sided inverses are rejected structurally; skip.
        let Ok(g) = GyroTable::from_rows(rows.to_vec()) else {
            return ControlFlow::Continue(());
        };
        if !axioms::verify_axioms(&g).all_ok() {
            reject = Some(g);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .unwrap();
    let reject = reject.expect("some order-5 loop fails the gyrogroup axioms");
    let report = axioms::verify_axioms(&reject);
    println!("loop5 violations: {:?}", report.violations);
    write(&dir, "loop5_reject.json", &reject.to_json());

    // The lexicographically first gyrogroup of order 8 that is not a group:
    // the smallest order at which the two notions separate.
    let g8 = first_nongroup_gyrogroup(8)
        .unwrap()
        .expect("a non-group gyrogroup of order 8 exists");
    assert!(axioms::verify_axioms(&g8).all_ok());
    assert!(!axioms::is_group(&g8));
    write(&dir, "g8.json", &g8.to_json());

    // Frozen summary of the default exhaustive search, used to pin
    // determinism across runs and worker counts.
    let summary = search_l_not_sl(&SearchConfig::default()).unwrap();
    let mut json = serde_json::to_string_pretty(&summary).unwrap();
    json.push('\n');
    write(&dir, "search6_summary.json", &json);
}
