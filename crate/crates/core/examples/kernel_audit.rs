//! Supremum of the bilinear kernel integrals over a lattice, with the
//! running supremum as the frequency range grows.

use skdv::audit::{admissible, kdv5_kernel_sup, schrodinger_kernel_sup, two_route, KernelKind, KernelQuery};
use skdv::norms::RegularityBudget;

fn main() -> skdv::Result<()> {
    let budget = RegularityBudget::new(1.35, 0.49, 0.55, 0.05, 0.5)?;
    println!("budget admissible: {}", admissible(&budget).admissible);

    let q = KernelQuery {
        xi_max: 20.0,
        ..KernelQuery::new(0.58, 0.55, 0.49)
    };
    let s = schrodinger_kernel_sup(&q)?;
    println!(
        "schrodinger sup {:.5} at {:?} over {} points",
        s.sup_value, s.argmax, s.lattice_points
    );
    for (cut, sup) in &s.running {
        println!("  |xi| <= {cut:8.3}: {sup:.5}");
    }

    let q = KernelQuery {
        xi_max: 20.0,
        ..KernelQuery::new(1.0, 0.7, 0.49)
    };
    let k = kdv5_kernel_sup(&q)?;
    println!(
        "kdv5 sup {:.5}, last range growth {:.2e}",
        k.sup_value, k.last_range_growth
    );

    let r = two_route(KernelKind::Kdv5, &q, 1.5, -7.0)?;
    println!(
        "two-route at (1.5, -7): full {:.4e}, reduced {:.4e}, ratio {:.3}",
        r.full, r.reduced, r.ratio
    );
    Ok(())
}
