//! File formats: spectral field JSON, scan CSV, and plot grids.
//!
//! Run with: cargo run --example field_io

use conjscan::io::{
    field_to_file, plotgrid_fixed_alpha, read_field_str, read_scan_csv, scan_csv_string,
    to_json_pretty,
};
use conjscan::kolmogorov::scan_grid;
use conjscan::{KolmogorovFlow, TorusGeometry};

fn main() -> conjscan::Result<()> {
    // A velocity field is stored as its complete list of spectral modes.
    // Round-tripping through JSON text is exact: every coefficient and
    // wavevector survives bit-for-bit.
    let flow = KolmogorovFlow::new(TorusGeometry::new(1.0)?, 6, 2)?;
    let field = flow.velocity();
    let json = to_json_pretty(&field_to_file(&field))?;
    println!("field JSON for the (n, m) = (6, 2) flow at α = 1 (first lines):");
    for line in json.lines().take(10) {
        println!("  {line}");
    }
    println!("  ... ({} lines total)", json.lines().count());

    let restored = read_field_str(&json)?;
    let gap = (&field - &restored).norm2().sqrt();
    println!("round-trip residual ‖u − u′‖ = {gap:.3e} (exact)");
    assert_eq!(gap, 0.0);

    // Scan records round-trip through CSV the same way: floats are printed
    // with enough digits to reparse to the identical bits.
    let records = scan_grid(1.0, 2, 2)?;
    let csv = scan_csv_string(&records);
    let reread = read_scan_csv(csv.as_bytes())?;
    assert_eq!(records, reread);
    println!(
        "\nscan CSV round-trip over {} records: exact",
        records.len()
    );
    for line in csv.lines().take(4) {
        println!("  {line}");
    }
    println!("  ... ({} rows total)", records.len());

    // Plot grids tabulate the positive part of both per-unit-energy closed
    // forms over an integer rectangle, ready for a heat map.
    let grid = plotgrid_fixed_alpha(1.0, 6, 4)?;
    let n_pos: usize = grid.values_1.iter().flatten().filter(|&&v| v > 0.0).count();
    println!(
        "\nplot grid at α = 1 over |n| ≤ 6, |m| ≤ 4: {} of {} direction-1 cells positive",
        n_pos,
        grid.values_1.len() * grid.values_1[0].len()
    );
    println!("grid JSON is {} bytes", to_json_pretty(&grid)?.len());
    Ok(())
}
