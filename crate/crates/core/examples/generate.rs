//! Sample H(n, k, p), print its file form and read it back.
//!
//!     cargo run --example generate -- 12 3 0.2 7

use hyperalpha::hypergraph::{format_hypergraph, parse_hypergraph, sample_hnkp, ModelParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, d: &str| args.get(i).cloned().unwrap_or_else(|| d.to_string());
    let params = ModelParams::new(arg(0, "12").parse()?, arg(1, "3").parse()?, arg(2, "0.2").parse()?, arg(3, "7").parse()?)?;

    let h = sample_hnkp(&params)?;
    let text = format_hypergraph(&h);
    print!("{text}");

    let back = parse_hypergraph(&text)?;
    assert_eq!(back, h);
    eprintln!("{} edges, mean degree {:.2}", h.edge_count(), (0..h.n()).map(|v| h.degree(v)).sum::<usize>() as f64 / h.n() as f64);
    Ok(())
}
