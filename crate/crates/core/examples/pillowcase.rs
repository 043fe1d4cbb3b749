//! Exact pillowcase predictions against lattice numerics, end to end.
//!
//! Run: cargo run --release -p orbihall --example pillowcase

use orbihall::numerics::validate_pillowcase;
use orbihall::{
    build_cover, spectral_bundle_invariants, spectral_ladder, OrbifoldLineBundle, OrbifoldSurface,
};

fn main() {
    let pillow = OrbifoldSurface::pillowcase();
    let cover = build_cover(pillow.clone(), 2, 64.0 * 64.0, true).unwrap();
    let bundle = OrbifoldLineBundle::new(pillow, 4, vec![0, 0, 0, 0]).unwrap();

    println!("# exact side: |G| = 2 cover of the pillowcase, deg_orb = 4");
    let ladder = spectral_ladder(&bundle, &cover).unwrap();
    for level in ladder.levels().iter().take(4) {
        println!(
            "level {}: energy = {} * 2pi/vol = {:.6e}, multiplicity {:?}",
            level.level, level.energy_coeff, level.energy, level.multiplicity
        );
    }
    let inv = spectral_bundle_invariants(&bundle, &cover).unwrap();
    println!(
        "spectral bundle: rank {}, c1 coefficient {}",
        inv.rank, inv.c1_coefficient
    );

    println!("\n# lattice side: 64 x 64 torus, 8 flux quanta");
    let report = validate_pillowcase(64, 8).unwrap();
    for (i, c) in report.clusters.iter().enumerate() {
        println!(
            "cluster {i}: E = {:.6e} (predicted {:.6e}), degeneracy {}, parity ({}, {})",
            c.mean_energy, report.predicted.energies[i], c.degeneracy, c.even, c.odd
        );
    }
    println!(
        "relative errors {:?}, pass = {}",
        report.relative_errors, report.pass
    );
}
