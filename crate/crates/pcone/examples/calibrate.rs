// Calibration sweep for search floors; not part of the deliverable surface.
use pcone::cone::ConeSpec;
use pcone::duality::{iso_search, selfdual_search};
use pcone::pnorm::Exponent;
use std::time::Instant;

fn spec(p: &str, dim: usize) -> ConeSpec {
    ConeSpec::new(Exponent::parse(p).unwrap(), dim).unwrap()
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let mode = args.get(1).map(|s| s.as_str()).unwrap_or("selfdual");
    match mode {
        "selfdual" => {
            for seed in [42u64, 7, 123] {
                for p in ["1", "1.5", "3", "inf"] {
                    for n in [2usize, 3] {
                        let s = spec(p, n + 1);
                        let t0 = Instant::now();
                        let r = selfdual_search(&s, 50, 1000, seed, 20000).unwrap();
                        println!(
                            "selfdual p={p} n={n} seed={seed} violation={:.6e} verdict={:?} evals={} secs={:.1}",
                            r.best_violation, r.verdict, r.evals_used, t0.elapsed().as_secs_f64()
                        );
                    }
                }
            }
        }
        "selfdual2" => {
            for seed in [42u64, 7] {
                for n in [2usize, 3] {
                    let s = spec("2", n + 1);
                    let t0 = Instant::now();
                    let r = selfdual_search(&s, 10, 1000, seed, 20000).unwrap();
                    println!(
                        "selfdual p=2 n={n} seed={seed} violation={:.6e} verdict={:?} evals={} secs={:.1}",
                        r.best_violation, r.verdict, r.evals_used, t0.elapsed().as_secs_f64()
                    );
                }
            }
        }
        "iso" => {
            let restarts: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(50);
            let budget: usize = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(20000);
            for seed in [42u64, 7, 123] {
                let t0 = Instant::now();
                let r = iso_search(&spec("1", 3), &spec("inf", 3), restarts, 1000, seed, budget)
                    .unwrap();
                println!(
                    "iso 1->inf n=2 seed={seed} restarts={restarts} budget={budget} violation={:.6e} verdict={:?} evals={} secs={:.1}",
                    r.best_violation, r.verdict, r.evals_used, t0.elapsed().as_secs_f64()
                );
            }
        }
        "isono" => {
            for seed in [42u64, 7] {
                for (p, q, n) in [("1.5", "3", 2usize), ("1.5", "3", 3), ("1", "inf", 3)] {
                    let t0 = Instant::now();
                    let r = iso_search(&spec(p, n + 1), &spec(q, n + 1), 50, 1000, seed, 20000)
                        .unwrap();
                    println!(
                        "iso {p}->{q} n={n} seed={seed} violation={:.6e} verdict={:?} evals={} secs={:.1}",
                        r.best_violation, r.verdict, r.evals_used, t0.elapsed().as_secs_f64()
                    );
                }
            }
        }
        _ => eprintln!("unknown mode"),
    }
}
