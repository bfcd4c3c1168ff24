use charblocks::rootdata::*;
use charblocks::num::*;
fn main() {
    let a3 = preset("A3 sc").unwrap();
    let s0 = a3.simple[0];
    let s2 = a3.simple[2];
    println!("simples: {:?}", a3.simple);
    println!("root s0 = {:?}, s2 = {:?}", a3.roots[s0], a3.roots[s2]);
    let span: Vec<QVec> = vec![ivec_to_q(&a3.roots[s0]), ivec_to_q(&a3.roots[s2])];
    let m = QMat::from_cols(&span);
    let roots: Vec<usize> = (0..a3.num_roots())
        .filter(|&i| m.solve(&ivec_to_q(&a3.roots[i])).is_some())
        .collect();
    println!("roots in span: {:?} -> {:?}", roots, roots.iter().map(|&i| a3.roots[i].clone()).collect::<Vec<_>>());
    let dec = simple_type_decomposition(&a3, &roots).unwrap();
    for f in &dec.factors {
        println!("factor {:?} rank {} escape {} simples {:?} coweights {:?}", f.cartan, f.rank, f.escape_order, f.simple_roots, f.coweights);
    }
}
