//! Dense oracle against the Smith pipeline; same CSV columns as `tcs bench`.
//!
//! cargo run --release --example bench_oracle_vs_pipeline -- [n,n,...] [seeds]

use tcongruence::bench::{run_bench, speedups};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n_list: Vec<usize> = match args.first() {
        Some(s) => s.split(',').map(str::parse).collect::<Result<_, _>>()?,
        None => vec![4, 8, 16, 32],
    };
    let seeds = args.get(1).map_or(Ok(3), |s| s.parse())?;

    let rows = run_bench(&n_list, seeds, 0.8)?;
    let mut w = csv::Writer::from_writer(std::io::stdout());
    w.write_record(["n", "seed", "method", "wall_time_ms", "residual"])?;
    for r in &rows {
        w.write_record([r.n.to_string(), r.seed.to_string(), r.method.into(), format!("{:.6}", r.wall_time_ms), format!("{:e}", r.residual)])?;
    }
    w.flush()?;
    for (n, ratio) in speedups(&rows) {
        eprintln!("n = {n}: oracle / pipeline = {ratio:.1}x");
    }
    Ok(())
}
