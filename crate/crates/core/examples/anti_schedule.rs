//! The step p -> p + n^(-k/2) sqrt(p), the chain length to 2p and the window lengths.

use hyperalpha::analytics::{anti_schedule, DEFAULT_SCHEDULE_EPSILON};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, k, p) in [(100, 3, 0.01), (1000, 3, 1e-3), (10_000, 3, 1e-4), (200, 4, 1e-3)] {
        let s = anti_schedule(n, k, k - 1, p, DEFAULT_SCHEDULE_EPSILON)?;
        println!(
            "n={n:<6} k={k} p={p:<7} p'={:.6e} z<={:<8.1} z={:<6} ell={:.3e} in band: {}",
            s.p_prime,
            s.z_bound,
            s.chain_length.map_or("-".into(), |z| z.to_string()),
            s.ell,
            s.in_admissible_band
        );
    }
    Ok(())
}
