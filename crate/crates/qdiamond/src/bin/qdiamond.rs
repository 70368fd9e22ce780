//! Command-line interface: series expansion, identity verification,
//! congruence verification (single claims, families, the full catalog),
//! the 3-adic d_2 check, candidate scanning, and kernel benchmarks.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use qdiamond::{
    eta_quotient_series, family_p_minus_1, family_p_minus_2, family_ramanujan, lift, paper_catalog,
    scan, smoot_check, verify_batch, CoeffRing, Congruence, EtaQuotient, LemmaId, Report,
    ScanParams, Series, Source,
};

#[derive(Parser)]
#[command(
    name = "qdiamond",
    version,
    about = "q-series engine for elongated partition diamonds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    /// d_{p-2}(pn+r) mod p, 24r+1 a nonresidue (plus the special t).
    Pm2,
    /// d_{p-1}(pn+r) mod p, r a nonresidue.
    Pm1,
    /// d_l(ln+r) mod l from the classical partition congruences.
    Ramanujan,
}

#[derive(Subcommand)]
enum Command {
    /// Expand an eta quotient; one `n<TAB>coefficient` line per term.
    Expand {
        /// Whitespace-separated r^e tokens, e.g. "2^2 1^-7".
        #[arg(long)]
        eta: String,
        #[arg(long)]
        order: usize,
        /// Reduce coefficients modulo M (omit for exact integers).
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Check classical identities (LHS = RHS as truncated series).
    VerifyLemma {
        /// Identity name, or `all`.
        #[arg(long)]
        id: String,
        #[arg(long)]
        order: usize,
    },
    /// Verify d_k(An+B) ≡ 0 (mod M) for all An+B below the bound.
    Verify {
        #[arg(long)]
        k: u64,
        #[arg(long = "A")]
        a: u64,
        #[arg(long = "B")]
        b: u64,
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        bound: usize,
    },
    /// Verify every congruence in the stated catalog.
    Catalog {
        #[arg(long, default_value_t = 20_000)]
        bound: usize,
        /// Families are expanded for j = 0..=j_max.
        #[arg(long = "j-max", default_value_t = 2)]
        j_max: u64,
    },
    /// Emit and verify one congruence family.
    Families {
        /// The prime p (for `ramanujan`: l in {5, 7, 11}).
        #[arg(long)]
        p: u64,
        #[arg(long)]
        kind: FamilyKind,
        /// Lift each member from d_k to d_{pj+k}.
        #[arg(long, default_value_t = 0)]
        j: u64,
        #[arg(long, default_value_t = 20_000)]
        bound: usize,
    },
    /// Check d_2(n) ≡ 0 (mod 3^{2⌊α/2⌋+1}) whenever 8n ≡ 1 (mod 3^α).
    Smoot {
        #[arg(long = "alpha-max")]
        alpha_max: u32,
        #[arg(long)]
        bound: usize,
    },
    /// Scan for vanishing progressions; emits JSON lines.
    Scan {
        /// k values, comma separated.
        #[arg(long = "k", value_delimiter = ',', required = true)]
        k: Vec<u64>,
        #[arg(long = "A-max")]
        a_max: u64,
        /// Moduli, comma separated.
        #[arg(long = "mods", value_delimiter = ',', required = true)]
        mods: Vec<u64>,
        #[arg(long)]
        bound: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "min-samples", default_value_t = 10)]
        min_samples: usize,
    },
    /// Time the multiplication kernels and a d_k expansion.
    Bench {
        #[arg(long)]
        order: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(all_hold) => {
            if all_hold {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means the command ran but a verification failed.
fn run(command: Command) -> Result<bool, Box<dyn std::error::Error>> {
    match command {
        Command::Expand {
            eta,
            order,
            modulus,
        } => {
            if order < 1 {
                return Err("order must be at least 1".into());
            }
            let ring = match modulus {
                Some(m) => CoeffRing::modular(m)?,
                None => CoeffRing::Int,
            };
            let quotient = EtaQuotient::parse(&eta)?;
            let series = eta_quotient_series(&quotient, order, ring);
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            for n in 0..order {
                writeln!(out, "{n}\t{}", series.coeff(n)?)?;
            }
            Ok(true)
        }

        Command::VerifyLemma { id, order } => {
            if order < 1 {
                return Err("order must be at least 1".into());
            }
            let ids: Vec<LemmaId> = if id == "all" {
                LemmaId::ALL.to_vec()
            } else {
                vec![LemmaId::from_name(&id)?]
            };
            let mut all_pass = true;
            for lemma in ids {
                let outcome = qdiamond::verify_lemma(lemma, order);
                match outcome.report.mismatch {
                    None => println!("lemma {lemma}: PASS (order {order})"),
                    Some(mm) => {
                        all_pass = false;
                        println!(
                            "lemma {lemma}: FAIL at index {}: lhs={} rhs={}",
                            mm.index, mm.lhs, mm.rhs
                        );
                    }
                }
            }
            Ok(all_pass)
        }

        Command::Verify {
            k,
            a,
            b,
            modulus,
            bound,
        } => {
            if k < 1 || a < 1 || b >= a {
                return Err("need k >= 1, A >= 1 and 0 <= B < A".into());
            }
            CoeffRing::modular(modulus)?;
            let claim = Congruence::new(k, a, b, modulus, "cli", Source::Generated);
            let report = qdiamond::verify(&claim, bound)?;
            print_report(&report);
            Ok(report.holds())
        }

        Command::Catalog { bound, j_max } => {
            let catalog = paper_catalog(j_max);
            let reports = verify_batch(&catalog, bound)?;
            let mut holds = 0usize;
            for report in &reports {
                println!(
                    "{}  [{}]  {}",
                    report.claim,
                    report.claim.family,
                    report.status()
                );
                if report.holds() {
                    holds += 1;
                } else if let Some(ce) = report.counterexample {
                    println!(
                        "  counterexample: n={} index={} value≡{} (mod {})",
                        ce.n, ce.index, ce.residue, report.claim.m
                    );
                }
            }
            println!(
                "catalog: {holds}/{} congruences hold up to bound {bound} (j ≤ {j_max})",
                reports.len()
            );
            Ok(holds == reports.len())
        }

        Command::Families { p, kind, j, bound } => {
            let base = match kind {
                FamilyKind::Pm2 => family_p_minus_2(p)?,
                FamilyKind::Pm1 => family_p_minus_1(p)?,
                FamilyKind::Ramanujan => vec![family_ramanujan(p)?],
            };
            let claims: Vec<Congruence> = base
                .iter()
                .map(|c| lift(c, j))
                .collect::<qdiamond::Result<_>>()?;
            let reports = verify_batch(&claims, bound)?;
            let mut all = true;
            for report in &reports {
                println!(
                    "{}  [{}]  {}",
                    report.claim,
                    report.claim.family,
                    report.status()
                );
                all &= report.holds();
            }
            Ok(all)
        }

        Command::Smoot { alpha_max, bound } => {
            let reports = smoot_check(alpha_max, bound)?;
            let mut all = true;
            for r in &reports {
                let c = &r.report.claim;
                let status = if r.report.holds() { "PASS" } else { "FAIL" };
                println!(
                    "alpha {}: n ≡ {} (mod {}) ⇒ d_2(n) ≡ 0 (mod {}): {status} (bound {bound})",
                    r.alpha, c.b, c.a, c.m
                );
                if let Some(ce) = r.report.counterexample {
                    println!(
                        "  counterexample: n={} value≡{} (mod {})",
                        ce.index, ce.residue, c.m
                    );
                }
                all &= r.report.holds();
            }
            Ok(all)
        }

        Command::Scan {
            k,
            a_max,
            mods,
            bound,
            out,
            min_samples,
        } => {
            let mut params = ScanParams::new(k, a_max, mods, bound);
            params.min_samples = min_samples;
            let found = scan(&params)?;
            let jsonl = qdiamond::congruence::scan_to_jsonl(&found, bound);
            match out {
                Some(path) => {
                    std::fs::write(&path, jsonl)?;
                    eprintln!(
                        "scan: {} congruences written to {}",
                        found.len(),
                        path.display()
                    );
                }
                None => {
                    print!("{jsonl}");
                    eprintln!("scan: {} congruences (bound {bound})", found.len());
                }
            }
            Ok(true)
        }

        Command::Bench { order } => {
            if order < 8 {
                return Err("bench order must be at least 8".into());
            }
            run_bench(order);
            Ok(true)
        }
    }
}

fn print_report(report: &Report) {
    println!("claim: {}", report.claim);
    println!("bound: {}", report.bound);
    println!("status: {}", report.status());
    if let Some(ce) = report.counterexample {
        println!(
            "counterexample: n={} index={} value≡{} (mod {})",
            ce.n, ce.index, ce.residue, report.claim.m
        );
    }
}

/// Pseudo-random test series (fixed LCG seed, so runs are comparable).
fn bench_series(ring: CoeffRing, order: usize) -> Series {
    let mut state: u64 = 0x9e3779b97f4a7c15;
    let coeffs: Vec<i64> = (0..order)
        .map(|_| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 33) as i64 % 19) - 9
        })
        .collect();
    Series::from_i64(ring, &coeffs)
}

fn run_bench(order: usize) {
    println!("op\tring\torder\tmillis");
    let mod_ring = CoeffRing::modular(2187).expect("valid modulus");

    for ring in [CoeffRing::Int, mod_ring] {
        let a = bench_series(ring, order);
        let b = bench_series(ring, order);

        let t = Instant::now();
        let schoolbook = a.mul(&b).expect("same ring");
        println!(
            "mul-schoolbook\t{ring}\t{order}\t{:.3}",
            t.elapsed().as_secs_f64() * 1e3
        );

        let t = Instant::now();
        let fast = a.mul_karatsuba(&b).expect("same ring");
        println!(
            "mul-karatsuba\t{ring}\t{order}\t{:.3}",
            t.elapsed().as_secs_f64() * 1e3
        );

        assert_eq!(schoolbook, fast, "karatsuba must be bit-identical");
    }

    let t = Instant::now();
    let d2 = qdiamond::dk_series(2, order, mod_ring).values;
    println!(
        "dk-expand(k=2)\tZ/2187\t{order}\t{:.3}",
        t.elapsed().as_secs_f64() * 1e3
    );
    std::hint::black_box(d2);
}
