//! Level sizes and structural checks for a few boolean and subspace lattices.

use kchains::lattices::{boolean_lattice, enumerate_subspaces, gaussian_binomial, subspace_profile};
use kchains::poset::{check_descending, check_homogeneity_consequence, check_symmetry, RankProfile};

fn main() -> kchains::Result<()> {
    let b4 = boolean_lattice(4)?;
    let f23 = enumerate_subspaces(2, 3)?.into_poset();
    for (name, poset) in [("boolean:4", &b4), ("subspace:2,3", &f23)] {
        let profile = RankProfile::from_poset(poset);
        let levels: Vec<String> = profile.levels().iter().map(ToString::to_string).collect();
        println!("{name}: levels [{}]", levels.join(", "));
        println!("  descent: {:?}", check_descending(poset)?.class);
        println!("  symmetric: {}", check_symmetry(poset, 3, None)?.passed);
        println!("  chain counts depend only on ranks: {}", check_homogeneity_consequence(poset, 3, None)?.passed);
    }

    // Closed forms scale far past what can be enumerated.
    let big = subspace_profile(3, 30)?;
    println!("subspace:3,30 middle level has {} elements", big.level_size(15));
    assert_eq!(big.level_size(15), &gaussian_binomial(30, 15, 3));
    Ok(())
}
