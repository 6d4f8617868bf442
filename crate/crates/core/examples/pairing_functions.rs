//! Compares Cantor and Rosenberg-Strong pairing on a small grid, then shows
//! that both invert exactly on a 200-digit pair.

use cfgrank::numerics::{cantor_pair, cantor_unpair, mod_pair, mod_unpair, rs_pair, rs_unpair};
use cfgrank::Natural;

fn main() {
    println!("Cantor C(x, y):");
    print_grid(cantor_pair);
    println!("\nRosenberg-Strong R(x, y):");
    print_grid(rs_pair);

    let x: Natural = "9".repeat(200).parse().unwrap();
    let y: Natural = "7".repeat(150).parse().unwrap();
    let z = rs_pair(&x, &y);
    assert_eq!(rs_unpair(&z), (x.clone(), y.clone()));
    assert_eq!(cantor_unpair(&cantor_pair(&x, &y)), (x, y));
    println!("\n200-digit pair -> {} digits and back", z.to_string().len());

    let k = Natural::from(3u32);
    let (digit, rest) = mod_unpair(&k, &Natural::from(17u32)).unwrap();
    println!("M_3^-1(17) = ({digit}, {rest}), M_3({digit}, {rest}) = {}", mod_pair(&k, &digit, &rest).unwrap());
}

fn print_grid(pair: fn(&Natural, &Natural) -> Natural) {
    for y in 0..5u32 {
        let row: Vec<String> =
            (0..5u32).map(|x| format!("{:>3}", pair(&Natural::from(x), &Natural::from(y)))).collect();
        println!("  y={y}: {}", row.join(" "));
    }
}
