//! Exhaustive minimisation of c_k over every family of every size.

use kchains::lattices::{boolean_lattice, enumerate_subspaces};
use kchains::verify::{erdos_katona_check, exhaustive_minimize, verify_kleitman_suite};

fn main() -> kchains::Result<()> {
    let b4 = boolean_lattice(4)?;
    let r = exhaustive_minimize(&b4, 2, 7)?;
    println!(
        "boolean:4, k=2, a=7: min {} over {} families, m_k = {}, {} minimizers all centred: {}",
        r.min_ck, r.families, r.mk, r.minimizers, r.all_minimizers_centred
    );

    let f23 = enumerate_subspaces(2, 3)?.into_poset();
    let suite = verify_kleitman_suite(&f23, &[2, 3, 4])?;
    println!("subspace:2,3 k=2..4: passed = {}", suite.passed);
    print!("{}", suite.to_csv());

    for n in 1..=6 {
        println!("comparable pairs bound, n = {n}: {}", erdos_katona_check(n)?.holds);
    }
    Ok(())
}
