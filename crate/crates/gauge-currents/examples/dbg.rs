use gauge_currents::cocycle::*;
use gauge_currents::forms::*;
use gauge_currents::lie::*;
use gauge_currents::mode::*;
use gauge_currents::scalar::*;

fn main() {
    let (spec, rep) = build_su_n(3).unwrap();
    let dtable = DSymbolTable::build(&rep, spec.dim);
    let window = TruncationWindow::new(3, 1, 1);
    let a_form = symbolic_potential(&window, &rep, spec.dim);
    let mono = |a: usize, mode: [i16; 3]| -> Current {
        vec![(CurrentMonomial { lie_index: a, mode: Mode(mode) }, ExactScalar::one())]
    };
    let n = Mode([1, 0, 0]);
    let m = Mode([0, 1, 0]);
    for (a, b) in [(0usize, 0usize), (0, 1), (2, 5)] {
        let closed = cocycle_3d_modes(&dtable, a, &n, b, &m);
        let integral = cocycle_3d(&a_form, &mono(a, n.0), &mono(b, m.0), &rep);
        println!("a={a} b={b}\n  closed   = {closed:?}\n  integral = {integral:?}\n");
    }
}
