use proptest::prelude::*;

use mvgate::algebra::{translate, AxiomSet, Direction, FiniteStructure, Signature, Slot};
use mvgate::synthesis::{synthesize, verify_expr, NormalForm, TruthFunction};
use mvgate::thermo::entropy_report;
use mvgate::transforms::{conservativize, imbalance_plan, realize_original, reversibilize};
use mvgate::{BinaryConnective, Gate, UnaryConnective};

fn levels(d: u8) -> impl Strategy<Value = (u8, u8, u8)> {
    (0..d, 0..d, 0..d)
}

fn arity_and_levels() -> impl Strategy<Value = (u8, (u8, u8, u8))> {
    (2u8..=12).prop_flat_map(|d| (Just(d), levels(d)))
}

/// A random total gate with small shape.
fn any_gate(max_d: u32, max_n: usize) -> impl Strategy<Value = Gate> {
    (2..=max_d, 1..=max_n, 1..=max_n).prop_flat_map(|(d, n, m)| {
        let rows = (d as usize).pow(n as u32);
        prop::collection::vec(0..d as u8, rows * m)
            .prop_map(move |t| Gate::from_table(d, n, m, t).unwrap())
    })
}

/// A random permutation gate.
fn any_permutation(max_d: u32, max_n: usize) -> impl Strategy<Value = Gate> {
    (2..=max_d, 1..=max_n).prop_flat_map(|(d, n)| {
        let rows = (d as usize).pow(n as u32);
        Just((0..rows).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(move |perm| {
                let id = Gate::identity(d, n).unwrap();
                Gate::from_fn(d, n, n, |x, y| {
                    let i = mvgate::gates::pattern_index(x, d as u8);
                    y.copy_from_slice(id.row(perm[i]));
                })
                .unwrap()
            })
    })
}

proptest! {
    #[test]
    fn negation_is_an_involution_and_de_morgan((d, (x, y, _)) in arity_and_levels()) {
        let t = d - 1;
        let not = |v| UnaryConnective::Not.eval_level(v, t);
        let b = |c: BinaryConnective, p, q| c.eval_level(p, q, t);
        prop_assert_eq!(not(not(x)), x);
        prop_assert_eq!(not(b(BinaryConnective::Or, x, y)), b(BinaryConnective::And, not(x), not(y)));
        prop_assert_eq!(not(b(BinaryConnective::Oplus, x, y)), b(BinaryConnective::Odot, not(x), not(y)));
        prop_assert_eq!(b(BinaryConnective::ToL, x, y), b(BinaryConnective::Oplus, not(x), y));
    }

    #[test]
    fn lattice_laws((d, (x, y, z)) in arity_and_levels()) {
        let t = d - 1;
        let or = |p, q| BinaryConnective::Or.eval_level(p, q, t);
        let and = |p, q| BinaryConnective::And.eval_level(p, q, t);
        prop_assert_eq!(and(x, or(y, z)), or(and(x, y), and(x, z)));
        prop_assert_eq!(or(x, and(x, y)), x);
        // residuation: x ⊙ y ≤ z iff x ≤ y →L z
        let odot = BinaryConnective::Odot.eval_level(x, y, t);
        prop_assert_eq!(odot <= z, x <= BinaryConnective::ToL.eval_level(y, z, t));
    }

    #[test]
    fn modal_chain((d, (x, _, _)) in arity_and_levels()) {
        let t = d - 1;
        let nec = UnaryConnective::Nec.eval_level(x, t);
        let poss = UnaryConnective::Poss.eval_level(x, t);
        prop_assert!(nec <= x && x <= poss);
    }

    #[test]
    fn mvgate_format_round_trips(g in any_gate(5, 3)) {
        prop_assert_eq!(g.to_mvgate().parse::<Gate>().unwrap(), g);
    }

    #[test]
    fn permutations_invert_and_do_not_dissipate(g in any_permutation(4, 3)) {
        let inv = g.invert().unwrap();
        prop_assert_eq!(g.then(&inv).unwrap(), Gate::identity(g.d() as u32, g.n()).unwrap());
        prop_assert!(entropy_report(&g).dissipation.abs() < 1e-12);
        let twice = g.then(&g).unwrap();
        prop_assert_eq!(g.is_self_reversible(), twice == Gate::identity(g.d() as u32, g.n()).unwrap());
    }

    #[test]
    fn weak_follows_from_strict(g in any_gate(3, 3)) {
        if g.n() == g.m() && g.is_strictly_conservative().unwrap() {
            prop_assert!(g.is_weakly_conservative());
        }
    }

    #[test]
    fn dissipation_bounds(g in any_gate(2, 4)) {
        let r = entropy_report(&g);
        let max = g.n() as f64 * std::f64::consts::LN_2;
        prop_assert!(r.dissipation >= -1e-12 && r.dissipation <= max + 1e-12);
        prop_assert_eq!(r.dissipation.abs() < 1e-12, g.is_reversible());
        let constant = g.iter_rows().all(|(_, y)| y == g.row(0));
        prop_assert_eq!((r.dissipation - max).abs() < 1e-12, constant);
    }

    #[test]
    fn boolean_pipeline(g in any_gate(2, 3)) {
        let gr = reversibilize(&g).unwrap();
        let plan = imbalance_plan(&gr).unwrap();
        let grc = conservativize(&gr, &plan).unwrap();
        prop_assert!(grc.is_reversible());
        prop_assert!(grc.is_strictly_conservative().unwrap());
        for (x, y) in g.iter_rows() {
            prop_assert_eq!(realize_original(&grc, &plan, g.n(), &x).unwrap(), y.to_vec());
        }
    }

    #[test]
    fn normal_forms_verify(
        (d, n, table) in (2u32..=4, 1usize..=2).prop_flat_map(|(d, n)| {
            (Just(d), Just(n), prop::collection::vec(0..d as u8, (d as usize).pow(n as u32)))
        }),
        simplify in any::<bool>(),
    ) {
        let f = TruthFunction::new(d, n, table).unwrap();
        for form in [NormalForm::Gdnf, NormalForm::Gcnf, NormalForm::Clay] {
            prop_assert!(verify_expr(&synthesize(form, &f, simplify), &f), "{:?}", form);
        }
    }

    #[test]
    fn mvalg_round_trips_arbitrary_tables(
        table in prop::collection::vec(0u8..3, 9),
        neg in prop::collection::vec(0u8..3, 3),
        zero in 0u8..3,
    ) {
        let labels = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let s = FiniteStructure::new(
            Signature::Mv,
            labels,
            vec![
                (Slot::Binary(mvgate::algebra::Op2::Oplus), table),
                (Slot::Unary(mvgate::algebra::Op1::Neg), neg),
                (Slot::Constant(mvgate::algebra::Constant::Zero), vec![zero]),
            ],
        ).unwrap();
        prop_assert_eq!(s.to_mvalg().parse::<FiniteStructure>().unwrap(), s.clone());
        // an MV algebra on three elements translates and comes back unchanged
        if s.check_axioms(AxiomSet::Mv).unwrap().holds() {
            let w = translate(&s, Direction::ChangToWajsberg).unwrap();
            prop_assert_eq!(translate(&w, Direction::WajsbergToChang).unwrap(), s);
        }
    }
}

#[test]
fn standard_models_are_algebras() {
    for d in 2..=6 {
        for sig in [
            Signature::Bzw,
            Signature::Bzmv,
            Signature::Mv,
            Signature::Wajsberg,
            Signature::Chang,
        ] {
            let s = FiniteStructure::standard_model(d, sig).unwrap();
            assert!(
                s.check_axioms(sig.defining_set()).unwrap().holds(),
                "{sig} d={d}"
            );
        }
    }
}
