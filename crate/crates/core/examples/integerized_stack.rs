//! A stack of naturals packed into one natural.

use cfgrank::{IntegerizedStack, Natural};

fn main() {
    let mut s = IntegerizedStack::default();
    for v in [5u32, 0, 12, 3] {
        s.push(&Natural::from(v));
        println!("push {v:>2} -> {}", s.value());
    }
    while !s.is_empty() {
        let v = s.pop();
        println!("pop  {v:>2} -> {}", s.value());
    }

    let mut s = IntegerizedStack::new(Natural::from(146u32));
    let rule = s.modpop(&Natural::from(3u32)).unwrap();
    let parts = s.split(3).unwrap();
    println!("146: rule {rule}, children {parts:?}");
    let joined = IntegerizedStack::join(&parts).unwrap();
    let mut back = IntegerizedStack::new(joined);
    back.modpush(&Natural::from(3u32), &rule).unwrap();
    println!("rebuilt: {}", back.value());
}
