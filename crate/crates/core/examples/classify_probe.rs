use mvdyn_core::dynamics::QuadDynamics;
use mvdyn_core::monodromy::{classify_splitting, obstruction_verdict, LoopPath};
use num_complex::Complex64;

fn main() {
    let t = QuadDynamics::parse("0,1", "0,-1,1").unwrap();
    for (name, center, radius) in [
        ("z1=1", Complex64::new(1.0, 0.0), 0.1),
        ("z1=1 half", Complex64::new(1.0, 0.0), 0.05),
        ("zero", Complex64::new(0.0, 0.0), 0.1),
        ("zero half", Complex64::new(0.0, 0.0), 0.05),
        ("far", Complex64::new(5.0, 3.0), 0.2),
    ] {
        let path = LoopPath::circle(center, radius, 256);
        match classify_splitting(&t, &path, 0) {
            Ok(rep) => println!(
                "{name}: {:?} perm {} preserved {:?}",
                rep.classification, rep.permutation_cycles, rep.preserved_partitions
            ),
            Err(e) => println!("{name}: ERROR {e}"),
        }
    }
    println!("--- obstruction verdict ---");
    match obstruction_verdict(&t, 0) {
        Ok(rep) => {
            println!("verdict: {:?}", rep.verdict);
            println!("z1 = {}, shift = {}", rep.z1, rep.shift);
            println!("loop_z1 = {:?}", rep.loop_z1);
            println!("loop_zero = {:?}", rep.loop_zero);
            println!("class z1: {:?} {}", rep.class_at_z1.classification, rep.class_at_z1.permutation_cycles);
            println!("class 0:  {:?} {}", rep.class_at_zero.classification, rep.class_at_zero.permutation_cycles);
            println!("notes: {:?}", rep.notes);
        }
        Err(e) => println!("ERROR {e}"),
    }
}
