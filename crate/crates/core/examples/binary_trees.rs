//! Numbers every full binary tree: 0 is a leaf and `R(x, y) + 1` is the node
//! with subtrees `x` and `y`.

use cfgrank::numerics::{phi_decode, phi_encode, rs_unpair};
use cfgrank::Natural;

fn main() {
    for i in 0..12u32 {
        let t = phi_decode(&Natural::from(i));
        println!("{i:>3}  {t}");
    }

    // Unfold 147 by hand.
    let mut pending = vec![Natural::from(147u32)];
    while let Some(n) = pending.pop() {
        if n == Natural::from(0u32) {
            continue;
        }
        let (x, y) = rs_unpair(&(&n - 1u32));
        println!("{n} = R({x}, {y}) + 1");
        pending.push(y);
        pending.push(x);
    }
    let t = phi_decode(&Natural::from(147u32));
    println!("147 -> {t} -> {}", phi_encode(&t));
}
