//! Local search for families with few k-chains; never beats m_k(a).

use kchains::lattices::boolean_lattice;
use kchains::verify::{probe_minimize, Strategy};

fn main() -> kchains::Result<()> {
    let b6 = boolean_lattice(6)?;
    for strategy in [Strategy::default(), Strategy::Annealing { t0: 2.0, cooling: 0.9999 }] {
        let p = probe_minimize(&b6, 3, 40, strategy, 50_000, 42)?;
        println!(
            "{:?}: best c_3 = {} against m_3(40) = {} after {} restarts; counterexample: {}",
            p.strategy,
            p.best_ck,
            p.mk,
            p.restarts,
            p.counterexample.is_some()
        );
    }
    Ok(())
}
