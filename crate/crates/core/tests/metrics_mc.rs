use commgraph::dense::{pauli_matrix, trace};
use commgraph::dla::{model_preset, pauli_linear_symmetries, Model};
use commgraph::graph::CommutatorGraph;
use commgraph::metrics::{four_point_avg, frame_potential_2, spread_expectation};
use commgraph::rational::{rational, to_f64};
use commgraph::sampler::{
    monte_carlo_four_point, monte_carlo_frame_potential, monte_carlo_many, SamplerConfig, SamplerMode,
};
use commgraph::PauliString;

fn ps(s: &str) -> PauliString {
    s.parse().unwrap()
}

fn circuit(gens: &commgraph::GeneratorSet, trials: usize, seed: u64) -> SamplerConfig {
    SamplerConfig {
        mode: SamplerMode::default_circuit(gens),
        trials,
        seed,
    }
}

#[test]
fn four_point_matches_sampling() {
    let cases = [
        (Model::Universal, ["XI", "XI", "XI", "XI"]),
        (Model::Universal, ["XI", "ZY", "XI", "ZY"]),
        (Model::Matchgate, ["XI", "XI", "XI", "XI"]),
        (Model::Matchgate, ["ZI", "XX", "ZI", "XX"]),
        (Model::XyBx, ["ZI", "ZI", "ZI", "ZI"]),
    ];
    for (model, [p, q, r, s]) in cases {
        let gens = model_preset(model, 2).unwrap();
        let g = CommutatorGraph::build_full(&gens, None).unwrap();
        let syms = pauli_linear_symmetries(&gens).all.unwrap();
        let (p, q, r, s) = (ps(p), ps(q), ps(r), ps(s));
        let exact = four_point_avg(&p, &q, &r, &s, &g, &syms).unwrap().to_complex();
        let (re, im) = monte_carlo_four_point(&p, &q, &r, &s, &gens, &circuit(&gens, 3000, 17)).unwrap();
        assert!(re.agrees_with(exact.re, 4.0, 1e-9), "{} {p}{q}{r}{s}: {re:?} vs {exact}", model.name());
        assert!(im.agrees_with(exact.im, 4.0, 1e-9), "{} {p}{q}{r}{s}: {im:?} vs {exact}", model.name());
    }
}

#[test]
fn frame_potential_matches_sampling() {
    for model in Model::ALL {
        let gens = model_preset(model, 2).unwrap();
        let exact = frame_potential_2(&CommutatorGraph::build_full(&gens, None).unwrap()).unwrap();
        let est = monte_carlo_frame_potential(&gens, &circuit(&gens, 4000, 3)).unwrap();
        assert!(est.agrees_with(exact.value as f64, 5.0, 0.0), "{}: {est:?} vs {}", model.name(), exact.value);
    }
}

#[test]
fn four_point_variance_shrinks_with_n() {
    // Single-shot (1/d) tr[X1 U X1 U^dag X1 U X1 U^dag] on the matchgate preset.
    let mut variances = Vec::new();
    for n in 2..=4 {
        let gens = model_preset(Model::Matchgate, n).unwrap();
        let x = pauli_matrix(&PauliString::single(n, 1, 'X'));
        let d = (1u64 << n) as f64;
        let est = monte_carlo_many(&gens, &circuit(&gens, 1500, 5), 1, |u| {
            let ud = u.adjoint();
            vec![trace(&(&x * u * &x * &ud * &x * u * &x * &ud)).re / d]
        })
        .unwrap();
        variances.push(est[0].std.powi(2));
    }
    assert!(variances.windows(2).all(|w| w[1] < w[0]), "{variances:?}");
}

#[test]
fn spread_sums_to_d_squared() {
    for model in Model::ALL {
        let n = 3;
        let g = CommutatorGraph::build_full(&model_preset(model, n).unwrap(), None).unwrap();
        for v in g.representatives() {
            let total = PauliString::all(n)
                .map(|w| spread_expectation(v, &w, &g).unwrap())
                .fold(rational(0, 1), |a, b| a + b);
            assert_eq!(total, rational(64, 1), "{} {v}", model.name());
        }
    }
}

#[test]
fn identity_otoc_is_one() {
    let gens = model_preset(Model::IsingB, 3).unwrap();
    let g = CommutatorGraph::build_full(&gens, None).unwrap();
    for v in g.representatives() {
        let r = commgraph::metrics::avg_otoc(v, &PauliString::identity(3), &g).unwrap();
        assert_eq!(to_f64(&r.value), 1.0);
    }
}
