use mediandim::*;
use mediandim::project::*;
use std::collections::BTreeMap;
fn main() {
    // star with three legs from center 0; base vertex 0
    let cx = Complex::from_raw(&RawGraph::new(4, vec![(0,1),(0,2),(0,3)])).unwrap();
    let dist = CarrierDistances::compute(&cx);
    let pr = Projector::new(&cx, &dist);
    let p = FinSupportPoint::new(0, BTreeMap::from([
        (0usize, rat(1,2)), (1, rat(3,10)), (2, rat(1,5)),
    ])).unwrap();
    let support = pr.op_support(&p);
    println!("op support: {support:?}");
    let a = pr.project_op_in_order(&p, &[(0,1),(0,2),(1,2)]).unwrap();
    let b = pr.project_op_in_order(&p, &[(1,2),(0,1),(0,2)]).unwrap();
    println!("order A: {:?}", a.support().collect::<Vec<_>>());
    println!("order B: {:?}", b.support().collect::<Vec<_>>());
}
