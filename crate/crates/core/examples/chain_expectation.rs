//! Averages over uniformly random maximal chains, exactly and by sampling.

use kchains::centred::{build_x, CentredOrdering, TieOrder};
use kchains::expectation::{expectation_report, membership_identity, monte_carlo_report};
use kchains::lattices::boolean_lattice;
use kchains::poset::{Family, RankSet};
use kchains::report::rational_string;

fn main() -> kchains::Result<()> {
    let b4 = boolean_lattice(4)?;
    assert!(membership_identity(&b4).is_none());

    let odd = Family::from_levels(&b4, &RankSet::new([0, 1, 4]));
    let r = expectation_report(&odd, 2)?;
    println!(
        "levels {{0,1,4}}: c_2 = {}, m_2 = {}, E[f] = {}, checks pass: {}",
        r.ck,
        r.mk,
        rational_string(&r.e_f),
        r.checks.all()
    );

    let x = build_x(&b4, 9, &CentredOrdering::minus(4), TieOrder::Index)?;
    let r = expectation_report(&x.family, 2)?;
    println!("centred 9-set: c_2 = {} = m_2, equality propagation {:?}", r.ck, r.equality.map(|e| e.holds));

    let b8 = boolean_lattice(8)?;
    let mc = monte_carlo_report(&Family::from_levels(&b8, &RankSet::new([3, 4, 5])), 3, 20_000, 7)?;
    println!("boolean:8 sampled: consistent with exact counts: {}", mc.consistent);
    Ok(())
}
