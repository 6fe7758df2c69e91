use tdent_core::coherent::Cs1Family;
use tdent_core::quantize::{egorov_defect_weyl, egorov_defect_diagonal, TestFunction};
use tdent_core::torus::MapParam;
use tdent_core::weyl::RepPhases;

fn main() {
    let f = TestFunction::sin_x1();
    for &n in &[32usize, 64] {
        let fam = Cs1Family::new(n, RepPhases::zero());
        for k in 1..=3usize {
            let d = egorov_defect_weyl(1, &fam, &f, k, 8).unwrap();
            println!("weyl  N={n:3} k={k}: {d:.6}");
        }
    }
    for &n in &[32usize, 64, 128] {
        let p = MapParam::new(0.5, n).unwrap();
        let d = egorov_defect_diagonal(&p, &f, 2).unwrap();
        println!("diag  N={n:3} k=2: {d:.6}");
    }
}
