//! The minimum number of k-chains m_k(a), its breakpoints and convexity.

use num_bigint::BigUint;

use kchains::centred::{a_ell, convexity_certificate, CentredOrdering, MkCurve, MkTable};
use kchains::lattices::{boolean_profile, subspace_profile};

fn main() -> kchains::Result<()> {
    let b3 = boolean_profile(3);
    let ordering = CentredOrdering::minus(3);
    println!("centred ordering for n = 3: {:?}", ordering.as_slice());

    let table = MkTable::new(&b3, 2)?;
    print!("{}", table.to_csv());
    let cert = convexity_certificate(&table);
    println!("convex: {}, strict at breakpoints: {}", cert.convex, cert.jumps_strict);

    // Past the third breakpoint every new element closes many 3-chains.
    let profile = subspace_profile(2, 12)?;
    let a = a_ell(&profile, 3)? + BigUint::from(10u32).pow(9);
    println!("subspace:2,12: m_3({a}) = {}", MkCurve::new(&profile, 3)?.eval(&a)?);
    Ok(())
}
