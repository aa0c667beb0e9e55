//! Run the bundled corpus in every domain and print the CSV table.

use std::path::Path;

use numinv::bench::{bench_dir, summary, write_csv};
use numinv::domains::Domain;
use numinv::driver::RunConfig;

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let cfgs: Vec<RunConfig> = Domain::ALL.iter().map(|&domain| RunConfig { domain, ..RunConfig::default() }).collect();
    let rows = bench_dir(&dir, &cfgs, 4).expect("corpus directory");
    write_csv(&rows, std::io::stdout()).unwrap();
    println!("{}", summary(&rows));
}
