#pragma once

/// @file reports.hpp
/// @brief JSON reports for every computation, shared by the command-line tool
/// and the acceptance harness, plus parsing of tuple and polynomial arguments.

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sievelab/engelsma.hpp"
#include "sievelab/ffgaps.hpp"
#include "sievelab/ffpoly.hpp"
#include "sievelab/json_out.hpp"
#include "sievelab/mk.hpp"
#include "sievelab/monte_carlo.hpp"
#include "sievelab/quadratic.hpp"
#include "sievelab/rings.hpp"
#include "sievelab/sieve.hpp"
#include "sievelab/tuples.hpp"

namespace sievelab {

struct RunOptions {
    unsigned threads = 1;
    u64 seed = 0;
    Budget budget = default_budget();
};

// ---------------------------------------------------------------------------
// Argument parsing

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

inline i64 parse_int(const std::string& text) {
    const auto b = text.find_first_not_of(" \t");
    const auto e = text.find_last_not_of(" \t");
    require(b != std::string::npos, "empty integer");
    const std::string t = text.substr(b, e - b + 1);
    try {
        std::size_t used = 0;
        const i64 v = std::stoll(t, &used);
        require(used == t.size(), "bad integer '" + t + "'");
        return v;
    } catch (const std::logic_error&) {
        throw precondition_error("bad integer '" + t + "'");
    }
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot read " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw precondition_error(path + ": not valid JSON (" + e.what() + ")");
    }
}

inline Poly poly_from_json(PrimeField F, const Json& j) {
    require(j.is_array(), "a polynomial in JSON is an array of coefficients");
    std::vector<i64> c;
    for (const auto& v : j) {
        require(v.is_number_integer(), "polynomial coefficients must be integers");
        c.push_back(v.get<i64>());
    }
    return Poly::from_signed(F, c);
}

inline QuadInt quad_from_text(const std::string& s) {
    const auto parts = split(s, ',');
    require(parts.size() == 2, "quadratic integer expected as 'x,y', got '" + s + "'");
    return {parse_int(parts[0]), parse_int(parts[1])};
}

/// "0,2,6" or "@file.json" (array of integers).
inline std::vector<i64> parse_int_tuple(const std::string& text) {
    std::vector<i64> out;
    if (!text.empty() && text[0] == '@') {
        const Json j = read_json_file(text.substr(1));
        require(j.is_array(), "tuple file must hold a JSON array");
        for (const auto& v : j) {
            require(v.is_number_integer(), "tuple entries must be integers");
            out.push_back(v.get<i64>());
        }
        return out;
    }
    for (const auto& s : split(text, ',')) out.push_back(parse_int(s));
    return out;
}

/// "1,0,1;2" (';' separates elements) or "@file.json" (array of coefficient arrays).
inline std::vector<Poly> parse_poly_tuple(PrimeField F, const std::string& text) {
    std::vector<Poly> out;
    if (!text.empty() && text[0] == '@') {
        const Json j = read_json_file(text.substr(1));
        require(j.is_array(), "tuple file must hold a JSON array");
        for (const auto& v : j) out.push_back(poly_from_json(F, v));
        return out;
    }
    for (const auto& s : split(text, ';')) out.push_back(parse_poly(F, s));
    return out;
}

/// "x,y;x,y" or "@file.json" (array of [x, y]).
inline std::vector<QuadInt> parse_quad_tuple(const std::string& text) {
    std::vector<QuadInt> out;
    if (!text.empty() && text[0] == '@') {
        const Json j = read_json_file(text.substr(1));
        require(j.is_array(), "tuple file must hold a JSON array");
        for (const auto& v : j) {
            require(v.is_array() && v.size() == 2 && v[0].is_number_integer() && v[1].is_number_integer(),
                    "quadratic integers in JSON are [x, y]");
            out.push_back({v[0].get<i64>(), v[1].get<i64>()});
        }
        return out;
    }
    for (const auto& s : split(text, ';')) out.push_back(quad_from_text(s));
    return out;
}

// ---------------------------------------------------------------------------
// JSON forms of ring objects

inline Json to_json(i64 v) { return v; }
inline Json to_json(const Poly& f) {
    Json a = Json::array();
    for (u64 c : f.coeffs()) a.push_back(c);
    return a;
}
inline Json to_json(const QuadInt& a) { return Json::array({a.x, a.y}); }

inline Json prime_json(const IntegerRing&, u64 p) { return p; }
inline Json prime_json(const PolyRing&, const Poly& P) { return to_json(P); }
inline Json prime_json(const QuadraticRing& ring, const QuadPrimeIdeal& P) { return ring.prime_string(P); }

template <class T>
Json array_of(const std::vector<T>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline std::string rational_string(const boost::multiprecision::mpq_rational& r) { return r.str(); }

// ---------------------------------------------------------------------------
// tuples

template <class Ring>
Json admissibility_json(const Ring& ring, const std::vector<typename Ring::element_type>& tuple) {
    const auto report = is_admissible(ring, tuple);
    Json j;
    j["admissible"] = report.admissible;
    j["ring"] = ring.descriptor().to_string();
    j["k"] = tuple.size();
    j["tuple"] = array_of(tuple);
    if constexpr (std::is_same_v<Ring, IntegerRing>) j["diameter"] = diameter(tuple);
    if (report.witness) {
        j["witness"] = {{"prime", prime_json(ring, report.witness->prime)},
                        {"covered_residues", report.witness->covered_residues.size()}};
    } else {
        j["witness"] = nullptr;
    }
    j["primes_checked"] = report.primes_checked.size();
    return j;
}

inline Json tuples_check_report(const RingDescriptor& desc, const std::string& tuple_text) {
    switch (desc.kind) {
        case RingKind::integers: return admissibility_json(IntegerRing{}, parse_int_tuple(tuple_text));
        case RingKind::poly: {
            PolyRing ring(desc.q);
            return admissibility_json(ring, parse_poly_tuple(ring.field(), tuple_text));
        }
        default: {
            QuadraticRing ring(desc.d);
            return admissibility_json(ring, parse_quad_tuple(tuple_text));
        }
    }
}

inline Json tuples_find_report(const RingDescriptor& desc, std::size_t k, NarrowSearchOptions opts,
                               const RunOptions& run) {
    Json j;
    j["ring"] = desc.to_string();
    j["k"] = k;
    opts.threads = run.threads;
    if (desc.kind == RingKind::integers) {
        const auto t = find_narrow_tuple(IntegerRing{}, k, opts);
        j["tuple"] = array_of(t);
        j["diameter"] = diameter(t);
    } else if (desc.kind == RingKind::poly) {
        PolyRing ring(desc.q);
        const auto t = find_narrow_tuple(ring, k, opts, run.budget);
        int deg = 0;
        for (const auto& h : t) deg = std::max(deg, h.degree());
        j["tuple"] = array_of(t);
        j["max_degree"] = deg;
    } else {
        throw precondition_error("narrow tuple search is implemented for Z and Fq[t] only");
    }
    return j;
}

inline Json tuples_lift_report(const std::string& tuple_text, i64 d) {
    const auto t = parse_int_tuple(tuple_text);
    QuadraticRing target(d);
    const auto report = lift_admissible_check(t, target);
    Json j;
    j["field"] = target.descriptor().to_string();
    j["tuple"] = array_of(t);
    j["admissible_over_Z"] = true;
    j["admissible_over_OK"] = report.admissible;
    j["witness"] = report.witness ? Json(target.prime_string(report.witness->prime)) : Json(nullptr);
    j["primes_checked"] = report.primes_checked.size();
    return j;
}

inline Json tuple_record_json(const TupleRecord& rec) {
    Json j;
    j["status"] = rec.verified ? "verified" : "inadmissible";
    j["source"] = std::filesystem::path(rec.source).filename().string();
    j["k"] = rec.elements.size();
    j["diameter"] = rec.diameter;
    j["verified"] = rec.verified;
    j["witness"] = rec.witness ? Json(rec.witness->prime) : Json(nullptr);
    return j;
}

// ---------------------------------------------------------------------------
// irr

inline Json irr_count_report(u64 q, unsigned n, const RunOptions& run) {
    Json j;
    j["q"] = q;
    j["n"] = n;
    j["necklace"] = count_irreducibles(q, n);
    u64 enumerated = 0;
    MonicEnumerator e(q, n, true, run.budget);
    while (e.next()) ++enumerated;
    j["enumerated"] = enumerated;
    j["agree"] = enumerated == j["necklace"].get<u64>();
    return j;
}

inline Json irr_list_report(u64 q, unsigned n, u64 limit, const RunOptions& run) {
    Json j;
    j["q"] = q;
    j["n"] = n;
    Json list = Json::array();
    MonicEnumerator e(q, n, true, run.budget);
    bool truncated = false;
    while (auto f = e.next()) {
        if (list.size() == limit) {
            truncated = true;
            break;
        }
        list.push_back(to_json(*f));
    }
    j["listed"] = list.size();
    j["truncated"] = truncated;
    j["polynomials"] = std::move(list);
    return j;
}

inline Json irr_test_report(u64 q, const std::string& poly_text) {
    PrimeField F(q);
    const Poly f = parse_poly(F, poly_text);
    Json j;
    j["q"] = q;
    j["polynomial"] = to_json(f);
    j["degree"] = f.degree();
    j["irreducible"] = is_irreducible(f);
    return j;
}

// ---------------------------------------------------------------------------
// sieve-demo, ggpy-check, lod-measure

struct SieveDemoConfig {
    std::string tuple = "0,2";
    u64 N = 1'000'000;
    double theta = 0.5;
    double delta = 0.05;
    u64 D0 = 7;
    std::optional<double> R;
    unsigned F_power = 1;  ///< F = (1 - P1)^F_power
};

template <class Ring>
Json sieve_demo_json(const Ring& ring, std::vector<typename Ring::element_type> tuple, const SieveDemoConfig& cfg,
                     const RunOptions& run) {
    auto params = make_sieve_params(ring, std::move(tuple), cfg.N, cfg.theta, cfg.delta, cfg.D0, cfg.R);
    auto ws = make_weight_system(params);
    const auto F = TestFunction::simplex_power(static_cast<unsigned>(ws.k()), cfg.F_power);
    compute_y_from_F(ws, F);
    compute_lambda_from_y(ws);
    const auto sums = brute_force_sums(ws, run.threads, run.budget);
    const auto pred = predicted_main_terms(ws, F);
    Json p;
    p["ring"] = ring.descriptor().to_string();
    p["tuple"] = array_of(ws.params.tuple);
    p["N"] = cfg.N;
    p["theta"] = cfg.theta;
    p["delta"] = cfg.delta;
    p["D0"] = cfg.D0;
    p["R"] = ws.params.R;
    p["w_norm"] = ws.params.w.norm;
    p["v0"] = to_json(ws.params.v0);
    p["F"] = "(1-P1)^" + std::to_string(cfg.F_power);
    p["support"] = ws.support.size();
    p["alphas"] = sums.alphas;
    Json j;
    j["params"] = std::move(p);
    j["S1_emp"] = sums.S1;
    j["S1_pred"] = pred.S1_pred;
    j["S2_emp"] = sums.S2;
    j["S2_pred"] = pred.S2_pred;
    j["ratios"] = {{"S1", sums.S1 / pred.S1_pred}, {"S2", sums.S2 / pred.S2_pred}};
    j["ymax"] = ws.y_max;
    j["lambdamax"] = ws.lambda_max;
    return j;
}

inline Json sieve_demo_report(const RingDescriptor& desc, const SieveDemoConfig& cfg, const RunOptions& run) {
    if (desc.kind == RingKind::integers) return sieve_demo_json(IntegerRing{}, parse_int_tuple(cfg.tuple), cfg, run);
    if (desc.kind == RingKind::poly) {
        PolyRing ring(desc.q);
        return sieve_demo_json(ring, parse_poly_tuple(ring.field(), cfg.tuple), cfg, run);
    }
    throw precondition_error("sieve-demo runs over Z and Fq[t] only");
}

/// Named test functions G on [0, 1].
inline std::function<double(double)> ggpy_function(const std::string& name) {
    if (name == "one") return [](double) { return 1.0; };
    if (name == "zero") return [](double) { return 0.0; };
    if (name == "x") return [](double x) { return x; };
    if (name == "one-minus-x") return [](double x) { return 1.0 - x; };
    throw precondition_error("unknown G '" + name + "' (one, zero, x, one-minus-x)");
}

inline Json ggpy_report(const RingDescriptor& desc, double z, const std::string& G, const RunOptions& run) {
    GgpyResult r;
    const auto g = ggpy_function(G);
    if (desc.kind == RingKind::integers) r = ggpy_sum_check(IntegerRing{}, g, z, run.budget);
    else if (desc.kind == RingKind::poly) r = ggpy_sum_check(PolyRing(desc.q), g, z, run.budget);
    else throw precondition_error("ggpy-check runs over Z and Fq[t] only");
    Json j;
    j["ring"] = desc.to_string();
    j["z"] = z;
    j["G"] = G;
    j["moduli"] = r.moduli;
    j["singular_series"] = r.singular_series;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["ratio"] = r.ratio;
    return j;
}

inline Json lod_report(u64 q, unsigned n, unsigned max_degree, const RunOptions& run) {
    const auto r = lod_measure(q, n, max_degree, run.threads, run.budget);
    Json j;
    j["q"] = q;
    j["n"] = n;
    j["max_degree"] = max_degree;
    j["primes"] = r.primes;
    j["constant"] = r.constant;
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"modulus", to_json(row.modulus)},
                        {"phi", row.phi},
                        {"max_error", row.max_error},
                        {"normalized", row.normalized}});
    j["rows"] = std::move(rows);
    return j;
}

// ---------------------------------------------------------------------------
// mk

struct ThetaPreset {
    const char* label;
    u64 num, den;
};

/// 1/2 for Z, F_q[t] and totally real fields; 1/(r2 + 5/2) for r2 = 1, 2, 3.
inline constexpr ThetaPreset kThetaPresets[] = {{"1/2", 1, 2}, {"2/7", 2, 7}, {"2/9", 2, 9}, {"2/11", 2, 11}};

struct MkConfig {
    unsigned k = 1;
    std::optional<unsigned> degree_bound;
    u64 mc_samples = 0;  ///< 0 disables the Monte Carlo check
};

inline Json mk_report(const MkConfig& cfg, const RunOptions& run) {
    require(cfg.k >= 1, "k must be at least 1");
    const unsigned D = cfg.degree_bound.value_or(default_degree_bound(cfg.k));
    const auto r = mk_lower_bound(cfg.k, D, run.threads);
    Json j;
    j["k"] = cfg.k;
    j["degree_bound"] = D;
    j["lower_bound"] = r.lower_bound;
    j["eigenvalue"] = r.eigenvalue;
    j["exact_check"] = Rational(r.lower_bound) <= r.rayleigh_exact;
    j["residual"] = r.residual;
    j["basis_size"] = r.basis_size;
    j["dropped"] = r.dropped.size();
    Json rk = Json::array();
    for (const auto& t : kThetaPresets)
        rk.push_back({{"theta", t.label},
                      {"r_k", r_k(static_cast<double>(t.num) / static_cast<double>(t.den), r.lower_bound)}});
    j["r_k"] = std::move(rk);
    Json coeffs = Json::array();
    for (std::size_t i = 0; i < r.generators.size(); ++i)
        coeffs.push_back({{"a", r.generators[i].a}, {"b", r.generators[i].b}, {"c", r.coefficients[i]}});
    j["coefficients"] = std::move(coeffs);
    if (cfg.mc_samples > 0) {
        const auto mc = monte_carlo_rayleigh(cfg.k, r.generators, r.coefficients, cfg.mc_samples, run.seed, run.threads);
        j["monte_carlo"] = {{"samples", mc.samples},
                            {"seed", run.seed},
                            {"ratio", mc.ratio},
                            {"relative_difference", std::fabs(mc.ratio - r.eigenvalue) / r.eigenvalue}};
    }
    return j;
}

// ---------------------------------------------------------------------------
// ff-gaps

inline Json census_json(const GapCensus& c) {
    Json j;
    j["q"] = c.q;
    j["n"] = c.n;
    j["d"] = c.d;
    j["irreducibles"] = c.irreducibles;
    j["total"] = c.total_degree_d;
    j["occurring"] = c.occurring();
    j["proportion"] = rational_string(c.proportion());
    Json occ = Json::array();
    for (const auto& [g, n] : c.occurrences) occ.push_back({{"gap", to_json(g)}, {"count", n}});
    j["occurrences"] = std::move(occ);
    return j;
}

/// CSV with columns gap_poly,count; gap_poly is the coefficient text form.
inline std::string census_csv(const GapCensus& c) {
    std::string out = "gap_poly,count\n";
    for (const auto& [g, n] : c.occurrences) out += "\"" + format_poly(g) + "\"," + std::to_string(n) + "\n";
    return out;
}

inline Json monomial_census_json(const MonomialCensus& m) {
    Json j = census_json(m.census);
    j["gcd_condition"] = m.gcd_condition;
    j["all_occur"] = m.all_occur;
    j["orbit_closed"] = m.orbit_closed;
    return j;
}

inline Json twist_report(u64 q, const std::string& f1_text, const std::string& f2_text, u64 a) {
    PrimeField F(q);
    const Poly f1 = parse_poly(F, f1_text), f2 = parse_poly(F, f2_text);
    const auto r = twist_gap(f1, f2, a);
    Json j;
    j["q"] = q;
    j["omega"] = r.omega;
    j["g1"] = to_json(r.g1);
    j["g2"] = to_json(r.g2);
    j["difference"] = to_json(r.g1 - r.g2);
    j["irreducible"] = is_irreducible(r.g1) && is_irreducible(r.g2);
    return j;
}

inline Json zcheck_json(const ZAssertionResult& z) {
    Json j;
    j["q"] = z.q;
    j["k"] = z.k;
    j["d"] = z.d;
    j["n"] = z.n;
    j["status"] = to_string(z.status);
    j["holds"] = z.status == ZStatus::inconclusive ? Json(nullptr) : Json(z.holds());
    j["counterexample"] = z.counterexample ? array_of(*z.counterexample) : Json(nullptr);
    j["tuples_examined"] = z.tuples_examined;
    return j;
}

inline Json bound_report(u64 k0, u64 q) {
    const auto b = proportion_bound(k0, q);
    Json j;
    j["k0"] = k0;
    j["q"] = q;
    j["bound"] = rational_string(b);
    j["value"] = b.convert_to<double>();
    return j;
}

// ---------------------------------------------------------------------------
// nf

inline Json nf_pairs_report(i64 d, i64 bound, i64 box, std::size_t cap, const RunOptions& run) {
    QuadraticField K(d);
    const auto r = prime_pair_search(K, bound, box, cap, run.budget);
    Json j;
    j["field"] = RingDescriptor::real_quadratic(d).to_string();
    j["bound"] = bound;
    j["box"] = box;
    j["primes_in_box"] = r.primes_in_box;
    j["truncated"] = r.truncated;
    Json pairs = Json::array();
    for (const auto& p : r.pairs)
        pairs.push_back({{"first", to_json(p.first)},
                         {"second", to_json(p.second)},
                         {"norms", Json::array({K.norm(p.first), K.norm(p.second)})}});
    j["pairs"] = std::move(pairs);
    return j;
}

inline Json nf_prime_test_report(i64 d, const std::string& element) {
    QuadraticField K(d);
    const QuadInt a = quad_from_text(element);
    Json j;
    j["field"] = RingDescriptor::real_quadratic(d).to_string();
    j["element"] = to_json(a);
    j["norm"] = K.norm(a);
    j["prime"] = K.is_prime_element(a);
    return j;
}

}  // namespace sievelab
