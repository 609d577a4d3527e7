// Command-line front end: one subcommand per computation, one JSON (or CSV)
// document on stdout. Exit status 0 ok, 2 bad input, 3 budget exhausted,
// 1 anything else.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sievelab/reports.hpp"

using namespace sievelab;

namespace {

struct Globals {
    unsigned threads = 1;
    u64 seed = 0;
    std::optional<u64> budget;
    std::string format = "json";

    RunOptions run() const {
        RunOptions r;
        r.threads = threads;
        r.seed = seed;
        if (budget) r.budget = Budget{*budget};
        return r;
    }
};

void emit(const Json& j) { std::cout << to_text(j); }

u64 parse_field_d(const std::string& s) {
    // accepts "sqrt:2", "2" or "Q(sqrt:2)"
    std::string body = s;
    if (body.rfind("Q(", 0) == 0 && body.back() == ')') body = body.substr(2, body.size() - 3);
    if (body.rfind("sqrt:", 0) == 0) body = body.substr(5);
    const i64 d = parse_int(body);
    require(d > 1, "field must be sqrt:d with d in {2, 3, 5, 13}");
    return static_cast<u64>(d);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sievelab: multidimensional Selberg sieve experiments over Z, Fq[t] and real quadratic rings"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand
    Globals g;
    app.add_option("--threads", g.threads, "worker threads (results do not depend on this)")
        ->check(CLI::Range(1u, 1024u));
    app.add_option("--seed", g.seed, "seed for randomized checks");
    app.add_option("--budget", g.budget, "maximum elements any enumeration may visit (default $SIEVELAB_BUDGET or 1e8)");
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv"}));

    std::function<void()> action;

    // tuples ---------------------------------------------------------------
    auto* tuples = app.add_subcommand("tuples", "admissible k-tuples");
    tuples->require_subcommand(1);
    {
        auto* c = tuples->add_subcommand("check", "admissibility of a tuple, with a covering prime when it fails");
        static std::string ring = "Z", tuple;
        c->add_option("--ring", ring, "Z, Fq[t]:q=<p> or Q(sqrt:<d>)");
        c->add_option("tuple", tuple, "0,2,6 | polys 1,1;0 | quadratic x,y;x,y | @file.json")->required();
        c->callback([&] { action = [&] { emit(tuples_check_report(RingDescriptor::parse(ring), tuple)); }; });
    }
    {
        auto* c = tuples->add_subcommand("find", "greedy residue-sieve search for a narrow admissible tuple");
        static std::string ring = "Z";
        static std::size_t k = 2;
        static NarrowSearchOptions opts;
        c->add_option("--ring", ring, "Z or Fq[t]:q=<p>");
        c->add_option("--k", k, "tuple size")->required();
        c->add_option("--attempts", opts.budget, "Z: sieve attempts; Fq[t]: maximum degree");
        c->add_option("--offsets", opts.offsets_per_width, "offsets tried per interval width (Z)");
        c->callback([&] {
            action = [&] { emit(tuples_find_report(RingDescriptor::parse(ring), k, opts, g.run())); };
        });
    }
    {
        auto* c = tuples->add_subcommand("lift", "re-check a Z-admissible tuple inside a real quadratic ring");
        static std::string field = "sqrt:2", tuple;
        c->add_option("--field", field, "sqrt:<d>, d in {2, 3, 5, 13}");
        c->add_option("tuple", tuple, "integer tuple or @file.json")->required();
        c->callback([&] {
            action = [&] { emit(tuples_lift_report(tuple, static_cast<i64>(parse_field_d(field)))); };
        });
    }
    {
        auto* c = tuples->add_subcommand("verify-engelsma", "verify the shipped admissible 105-tuple or another file");
        static std::string path = default_engelsma_path().string();
        c->add_option("--file", path, "JSON array of strictly increasing integers");
        c->callback([&] { action = [&] { emit(tuple_record_json(load_and_verify(path))); }; });
    }

    // irr ------------------------------------------------------------------
    auto* irr = app.add_subcommand("irr", "monic irreducible polynomials over F_q");
    irr->require_subcommand(1);
    static u64 q = 3;
    static unsigned n = 2;
    {
        auto* c = irr->add_subcommand("count", "necklace formula against exhaustive enumeration");
        c->add_option("--q", q, "prime field size")->required();
        c->add_option("--n", n, "degree")->required();
        c->callback([&] { action = [&] { emit(irr_count_report(q, n, g.run())); }; });
    }
    {
        auto* c = irr->add_subcommand("list", "monic irreducibles of degree n in lexicographic order");
        static u64 limit = 1000;
        c->add_option("--q", q, "prime field size")->required();
        c->add_option("--n", n, "degree")->required();
        c->add_option("--limit", limit, "maximum number listed");
        c->callback([&] { action = [&] { emit(irr_list_report(q, n, limit, g.run())); }; });
    }
    {
        auto* c = irr->add_subcommand("test", "irreducibility of one polynomial");
        static std::string poly;
        c->add_option("--q", q, "prime field size")->required();
        c->add_option("poly", poly, "coefficients ascending by degree, e.g. 1,0,1 for t^2+1")->required();
        c->callback([&] { action = [&] { emit(irr_test_report(q, poly)); }; });
    }

    // sieve-demo, ggpy-check, lod-measure ----------------------------------
    {
        auto* c = app.add_subcommand("sieve-demo", "brute-force S1, S2 against their predicted main terms");
        static std::string ring = "Z";
        static SieveDemoConfig cfg;
        static double R = 0.0;
        c->add_option("--ring", ring, "Z or Fq[t]:q=<p>");
        c->add_option("--tuple", cfg.tuple, "admissible tuple");
        c->add_option("--N", cfg.N, "box parameter (Fq[t]: N = q^n)");
        c->add_option("--theta", cfg.theta, "level of distribution");
        c->add_option("--delta", cfg.delta, "R = |A(N)|^(theta/2 - delta)");
        c->add_option("--D0", cfg.D0, "w is the product of primes of norm < D0");
        c->add_option("--R", R, "override the support bound R");
        c->add_option("--F-power", cfg.F_power, "F = (1 - P1)^power");
        c->callback([&] {
            action = [&] {
                if (R > 0) cfg.R = R;
                emit(sieve_demo_report(RingDescriptor::parse(ring), cfg, g.run()));
            };
        });
    }
    {
        auto* c = app.add_subcommand("ggpy-check", "summation asymptotic for g(p) = 1/(|p| - 1), kappa = 1");
        static std::string ring = "Z", G = "one";
        static double z = 1e5;
        c->add_option("--ring", ring, "Z or Fq[t]:q=<p>");
        c->add_option("--z", z, "sum over squarefree d with |d| < z");
        c->add_option("--G", G, "test function: one, zero, x, one-minus-x");
        c->callback([&] { action = [&] { emit(ggpy_report(RingDescriptor::parse(ring), z, G, g.run())); }; });
    }
    {
        auto* c = app.add_subcommand("lod-measure", "prime counts in residue classes over Fq[t] against |P(N)|/phi");
        static u64 lq = 3;
        static unsigned ln = 10, deg = 3;
        c->add_option("--q", lq, "prime field size");
        c->add_option("--n", ln, "degree of the primes");
        c->add_option("--max-degree", deg, "moduli of degree <= this");
        c->callback([&] { action = [&] { emit(lod_report(lq, ln, deg, g.run())); }; });
    }

    // mk -------------------------------------------------------------------
    {
        auto* c = app.add_subcommand("mk", "rigorous lower bound for M_k over symmetric polynomials");
        static MkConfig cfg;
        static unsigned degree = 0;
        auto* dopt = c->add_option("--degree", degree, "degree bound D of the basis (default 7 for k <= 20, else 11)");
        c->add_option("--k", cfg.k, "dimension")->required()->check(CLI::Range(1u, 1000u));
        c->add_option("--mc-samples", cfg.mc_samples, "Monte Carlo re-estimate of the quotient (0 = off)");
        c->callback([&, dopt] {
            action = [&, dopt] {
                if (dopt->count()) cfg.degree_bound = degree;
                emit(mk_report(cfg, g.run()));
            };
        });
    }

    // ff-gaps --------------------------------------------------------------
    auto* ff = app.add_subcommand("ff-gaps", "gaps between monic irreducibles of degree n");
    ff->require_subcommand(1);
    static unsigned d = 0;
    {
        auto* c = ff->add_subcommand("census", "ordered-pair counts of every degree-d gap (CSV with --format csv)");
        c->add_option("--q", q, "prime field size")->required();
        c->add_option("--n", n, "degree of the irreducibles")->required();
        c->add_option("--d", d, "gap degree, 0 <= d < n")->required();
        c->callback([&] {
            action = [&] {
                const auto census = gap_census(q, n, d, g.threads, g.run().budget);
                if (g.format == "csv") std::cout << census_csv(census);
                else emit(census_json(census));
            };
        });
    }
    {
        auto* c = ff->add_subcommand("monomials", "census restricted to gaps a t^d, with orbit closure");
        c->add_option("--q", q, "prime field size")->required();
        c->add_option("--n", n, "degree of the irreducibles")->required();
        c->add_option("--d", d, "gap degree, 0 <= d < n")->required();
        c->callback([&] {
            action = [&] {
                const auto m = monomial_census(q, n, d, g.threads, g.run().budget);
                if (g.format == "csv") std::cout << census_csv(m.census);
                else emit(monomial_census_json(m));
            };
        });
    }
    {
        auto* c = ff->add_subcommand("twist", "move a monomial gap c t^d to a t^d by t -> omega t");
        static std::string f1, f2;
        static u64 a = 1;
        c->add_option("--q", q, "prime field size")->required();
        c->add_option("--f1", f1, "first irreducible, coefficients ascending")->required();
        c->add_option("--f2", f2, "second irreducible")->required();
        c->add_option("--a", a, "target leading coefficient");
        c->callback([&] { action = [&] { emit(twist_report(q, f1, f2, a)); }; });
    }
    {
        auto* c = ff->add_subcommand("zcheck", "brute-force Z(k, d, n): two irreducible translates for every tuple");
        static unsigned k = 2;
        c->add_option("--q", q, "prime field size")->required();
        c->add_option("--k", k, "tuple size")->required();
        c->add_option("--d", d, "degree of tuple entries and differences")->required();
        c->add_option("--n", n, "degree of the translates")->required();
        c->callback([&] {
            action = [&] {
                const auto z = check_Z(q, k, d, n, g.threads, g.run().budget);
                emit(zcheck_json(z));
                if (z.status == ZStatus::inconclusive) throw budget_exceeded("Z check inconclusive within budget");
            };
        });
    }
    {
        auto* c = ff->add_subcommand("bound", "exact proportion bound 1/(k0-1) - 1/(q-1)");
        static u64 k0 = 105;
        c->add_option("--k0", k0, "tuple size for which two-prime translates are guaranteed");
        c->add_option("--q", q, "prime field size")->required();
        c->callback([&] { action = [&] { emit(bound_report(k0, q)); }; });
    }

    // nf -------------------------------------------------------------------
    auto* nf = app.add_subcommand("nf", "prime elements of real quadratic rings of class number one");
    nf->require_subcommand(1);
    static std::string field = "sqrt:2";
    {
        auto* c = nf->add_subcommand("pairs", "pairs of prime elements whose difference is small at both embeddings");
        static i64 bound = 600, box = 1000;
        static std::size_t cap = 1000;
        c->add_option("--field", field, "sqrt:<d>, d in {2, 3, 5, 13}");
        c->add_option("--bound", bound, "embedding bound B on the difference");
        c->add_option("--box", box, "search elements with both embeddings in (0, box]");
        c->add_option("--cap", cap, "maximum pairs reported");
        c->callback([&] {
            action = [&] { emit(nf_pairs_report(static_cast<i64>(parse_field_d(field)), bound, box, cap, g.run())); };
        });
    }
    {
        auto* c = nf->add_subcommand("prime-test", "is x + y w a prime element");
        static std::string element;
        c->add_option("--field", field, "sqrt:<d>, d in {2, 3, 5, 13}");
        c->add_option("element", element, "coordinates x,y over the integral basis")->required();
        c->callback([&] {
            action = [&] { emit(nf_prime_test_report(static_cast<i64>(parse_field_d(field)), element)); };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (action) action();
        return 0;
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const budget_exceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
