use gcfp::graph::Direction;
use gcfp::oracles::admissible_starts;
use gcfp::scenarios::builtin;
use gcfp::solver::{solve, verify_uniqueness, SolverConfig, Status};
use gcfp::{Execution, Point};

#[test]
fn runs_from_admissible_starts_keep_every_invariant() {
    for name in ["halving", "strip-space", "affine-monotone"] {
        let s = builtin(name).unwrap();
        let config = SolverConfig {
            assert_edges: true,
            ..s.solver
        };
        let starts = admissible_starts(&s.graph, &s.map, 20, 5, Execution::default());
        assert_eq!(starts.len(), 20, "{name}");
        let mut omegas = Vec::new();
        for x0 in &starts {
            let cert = solve(&s.graph, &s.map, &s.params, x0, &config).unwrap();
            if name == "strip-space" {
                // every (x, 1) is fixed; the fiber through x0 picks one
                let fixed = Point::new(vec![x0.coords()[0], 1.0]).unwrap();
                assert!(cert.converged());
                assert!(s.space().distance(&cert.omega, &fixed).unwrap() <= 1e-8);
            } else {
                assert!(s.matches(&cert), "{name} from {x0}: {:?}", cert.status);
            }
            assert!(cert.start_omega_edge, "{name} from {x0}");
            assert!(cert.diagnostics.is_empty());
            let k = cert.schedule.k;
            for step in &cert.steps {
                assert_eq!(
                    step.edge_attestations,
                    [true, true],
                    "{name} step {}",
                    step.index
                );
                assert!(
                    step.ratio <= k + 1e-12,
                    "{name} step {} ratio {}",
                    step.index,
                    step.ratio
                );
            }
            if let Some(bound) = cert.a_priori_bound {
                assert!(cert.steps.len() <= bound);
            }

            let mut seq = vec![x0.clone()];
            seq.extend(cert.steps.iter().map(|s| s.z.clone()));
            if seq.len() > 1 {
                assert_eq!(
                    s.graph.monotone_direction(&seq).unwrap(),
                    cert.direction,
                    "{name}"
                );
                let star = s
                    .graph
                    .check_property_star(&seq, &cert.omega, 1e-6)
                    .unwrap();
                assert!(star.holds_at_every_index, "{name} from {x0}");
            }
            omegas.push(cert);
        }
        let first = &omegas[0];
        let same_fiber = |c: &&gcfp::solver::Certificate| {
            name != "strip-space" || c.start.coords()[0] == first.start.coords()[0]
        };
        for other in omegas[1..].iter().filter(same_fiber) {
            let u = verify_uniqueness(&s.graph, &s.map, &s.params, first, &other.omega).unwrap();
            assert!(u.holds, "{name}: {u:?}");
        }
    }
}

#[test]
fn directions_follow_the_start() {
    let s = builtin("halving").unwrap();
    let cert = solve(&s.graph, &s.map, &s.params, &Point::scalar(0.9), &s.solver).unwrap();
    assert_eq!(cert.direction, Direction::Decreasing);

    let am = builtin("affine-monotone").unwrap();
    let cert = solve(&am.graph, &am.map, &am.params, &am.start, &am.solver).unwrap();
    assert_eq!(cert.direction, Direction::Increasing);
    let top = Point::new(vec![1.0, 1.0]).unwrap();
    let cert = solve(&am.graph, &am.map, &am.params, &top, &am.solver).unwrap();
    assert_eq!(cert.direction, Direction::Decreasing);
    assert_eq!(cert.status, Status::Converged);
}

#[test]
fn already_fixed_start_needs_no_steps() {
    let s = builtin("halving").unwrap();
    let cert = solve(&s.graph, &s.map, &s.params, &Point::scalar(0.0), &s.solver).unwrap();
    assert_eq!(cert.status, Status::Converged);
    assert!(cert.steps.is_empty());
    assert_eq!(cert.a_priori_bound, Some(0));
}

#[test]
fn fewer_iterations_than_needed_is_reported() {
    let s = builtin("affine-monotone").unwrap();
    let config = SolverConfig {
        max_outer_iterations: 2,
        tolerance: 1e-15,
        ..s.solver
    };
    let cert = solve(&s.graph, &s.map, &s.params, &s.start, &config).unwrap();
    assert_eq!(cert.status, Status::MaxIterations);
    assert_eq!(cert.steps.len(), 2);
    assert!(!s.matches(&cert));
}
