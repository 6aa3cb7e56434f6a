// The disk's ζ(−1) from its four pieces, from closed forms and from the
// published constants, with the table of differences.

use polycasimir::regularization::{circle_casimir_energy, circle_zeta_parts, reconcile, EnergySource};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for source in [EnergySource::Formula, EnergySource::PaperConstants] {
        let p = circle_zeta_parts(source)?;
        let z = p.assembled();
        let e = circle_casimir_energy(1.0, source)?;
        println!("{}:", source.as_str());
        println!(
            "  Z0 = {:.10}  Z1 = {:.10}  Z2 = {:.10} + {:.10}/s  Z3 = {:.10}",
            p.z0, p.z1, p.z2.finite, p.z2.pole_residue, p.z3
        );
        println!("  ζ(−1) = {:.8} + {:.8}/s", z.finite, z.pole_residue);
        println!("  E_C  = {:.8} + {:.8}/s", e.finite, e.pole_residue);
    }

    println!("\n{:<30} {:>14} {:>14} {:>10}", "part", "formula", "published", "rel gap");
    for r in reconcile()?.rows {
        println!("{:<30} {:>14.8} {:>14.8} {:>10.2e}", r.part, r.formula, r.paper, r.rel_gap);
    }
    Ok(())
}
