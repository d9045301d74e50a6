//! Scratch probe: dump the full four-period table as Rust literals.

use rccf::classfield::{build_table, format_disc_factorization, DetermineOpts};

fn main() {
    let t0 = std::time::Instant::now();
    let rows = build_table(4, Some(std::path::Path::new("/tmp/rccf-cache")), &DetermineOpts::default())
        .expect("table build");
    println!("// {} rows", rows.len());
    for row in &rows {
        let coeffs: Vec<String> = (0..=row.factor.degree().unwrap())
            .map(|i| row.factor.coeff(i).to_string())
            .collect();
        let annot: Vec<String> = row.cofactor_periods.iter().map(|p| p.to_string()).collect();
        println!(
            "({}, &[{}], {}, \"{}\", \"{}\", &[{}]),",
            row.n,
            coeffs.join(", "),
            row.d.unwrap_or(0),
            row.disc,
            format_disc_factorization(&row.disc, &row.disc_factors),
            annot.join(", "),
        );
    }
    println!("// total {:?}", t0.elapsed());
}
