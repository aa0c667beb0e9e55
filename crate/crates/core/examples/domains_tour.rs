//! Joins of a few points in each abstract domain, printed as constraints.

use numinv::domains::{AbstractElement, Domain};
use numinv::model::State;

fn main() {
    let names = ["x".to_string(), "y".to_string()];
    let points: Vec<State> = [[1, 1], [1, 4], [3, 1], [2, 3]].iter().map(|p| State::from_i64(p)).collect();
    let probe = State::from_i64(&[3, 3]);
    for d in Domain::ALL {
        let mut e = AbstractElement::singleton(&points[0], d);
        for p in &points[1..] {
            e = e.join(&AbstractElement::singleton(p, d)).unwrap();
        }
        let cs: Vec<String> = e.constraints().iter().map(|c| c.display_with(&names).to_string()).collect();
        println!("{d:>4}: {}", cs.join(", "));
        println!("      contains {probe}: {}", e.member(&probe).unwrap());
    }
}
