// Command-line front end: exact verification suites, Monte Carlo identity
// checks, report merging, and dual-method registration of the planar
// reference constants.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "efron_dual/duality.hpp"
#include "efron_dual/exactsym.hpp"
#include "efron_dual/montecarlo.hpp"
#include "efron_dual/oracle.hpp"
#include "efron_dual/planar_quadrature.hpp"
#include "efron_dual/report.hpp"

using namespace efron_dual;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

/// Flat "key = value" config file; '#' starts a comment. Values act as
/// defaults: explicit command-line flags win.
std::map<std::string, std::string> load_flat_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ContractViolation("cannot read config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = trim(line.substr(0, eq));
        if (!key.empty()) kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

geom::ConvexBody parse_body(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string params =
        colon == std::string::npos ? "" : spec.substr(colon + 1);

    auto split_doubles = [](const std::string& s, char sep) {
        std::vector<double> out;
        std::istringstream in(s);
        std::string tok;
        while (std::getline(in, tok, sep)) out.push_back(std::stod(tok));
        return out;
    };

    geom::ConvexBody body = [&]() {
        if (name == "interval") {
            if (params.empty()) return geom::ConvexBody::interval(0.0, 1.0);
            const auto p = split_doubles(params, ',');
            if (p.size() != 2)
                throw ContractViolation("interval takes two endpoints");
            return geom::ConvexBody::interval(p[0], p[1]);
        }
        if (name == "square") return geom::ConvexBody::cube(2, 1.0);
        if (name == "cube2") return geom::ConvexBody::cube(2, 1.0);
        if (name == "cube3") return geom::ConvexBody::cube(3, 1.0);
        if (name == "cube") {
            const auto p = split_doubles(params, ',');
            if (p.size() != 2)
                throw ContractViolation("cube takes dimension,side");
            return geom::ConvexBody::cube(static_cast<int>(p[0]), p[1]);
        }
        if (name == "triangle") return geom::ConvexBody::standard_simplex(2);
        if (name == "tetra3") return geom::ConvexBody::standard_simplex(3);
        if (name == "ball2") return geom::ConvexBody::ball(2, 1.0);
        if (name == "ball3") return geom::ConvexBody::ball(3, 1.0);
        if (name == "ball") {
            const auto p = split_doubles(params, ',');
            if (p.size() != 2)
                throw ContractViolation("ball takes dimension,radius");
            return geom::ConvexBody::ball(static_cast<int>(p[0]), p[1]);
        }
        if (name == "polygon") {
            std::vector<geom::Point> verts;
            std::istringstream in(params);
            std::string pair;
            while (std::getline(in, pair, ';')) {
                const auto xy = split_doubles(pair, ',');
                if (xy.size() != 2)
                    throw ContractViolation("polygon vertices are x,y pairs");
                verts.push_back({xy[0], xy[1], 0.0});
            }
            return geom::ConvexBody::polygon(std::move(verts));
        }
        throw ContractViolation("unknown body: " + name);
    }();
    body.set_label(spec);
    return body;
}

int cmd_verify_sym(long k_max, const std::string& out_path) {
    bool all_pass = true;

    const auto prop_cases = exactsym::verify_proposition(k_max);
    long checked = 0, failed = 0;
    for (const auto& c : prop_cases) {
        ++checked;
        if (!c.pass) {
            ++failed;
            all_pass = false;
            std::cout << "  FAIL proposition k=" << c.k << " j=" << c.j << "\n";
        }
    }
    std::cout << "proposition      " << (failed == 0 ? "pass" : "FAIL") << "  ("
              << checked << " (k,j) pairs, k <= " << k_max << ")\n";

    // recurrence and generating-function suites over deterministic
    // pseudo-random rational inputs
    std::uint64_t state = 0xD1CEBA5Eull;
    auto next = [&state]() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    };
    auto next_rat = [&]() {
        return rat(static_cast<long>(next() % 21) - 10,
                   static_cast<long>(next() % 6) + 1);
    };

    bool rec_pass = true;
    bool gen_pass = true;
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t len = 1 + rep % 10;
        std::vector<BigRat> values(len);
        for (auto& v : values) v = next_rat();
        const std::vector<BigRat> prefix(values.begin(), values.end() - 1);
        for (long j = 0; j <= static_cast<long>(len); ++j) {
            if (exactsym::elem_sym(values, j) !=
                values.back() * exactsym::elem_sym(prefix, j - 1) +
                    exactsym::elem_sym(prefix, j))
                rec_pass = false;
        }
        const Polynomial gp = exactsym::gen_poly(values);
        for (long j = 0; j <= static_cast<long>(len); ++j) {
            const BigRat expect = (j % 2 == 0 ? BigRat(1) : BigRat(-1)) *
                                  exactsym::elem_sym(values, j);
            if (gp.coeff(len - static_cast<std::size_t>(j)) != expect)
                gen_pass = false;
        }
    }
    std::cout << "recurrence       " << (rec_pass ? "pass" : "FAIL")
              << "  (200 random sequences)\n";
    std::cout << "generating-fn    " << (gen_pass ? "pass" : "FAIL")
              << "  (200 random sequences)\n";
    all_pass = all_pass && rec_pass && gen_pass;

    if (!out_path.empty()) {
        report::json doc;
        doc["suite"] = "verify-sym";
        doc["k_max"] = k_max;
        report::json cases = report::json::array();
        for (const auto& c : prop_cases)
            cases.push_back({{"k", c.k}, {"j", c.j}, {"pass", c.pass}});
        doc["proposition"] = std::move(cases);
        doc["recurrence_pass"] = rec_pass;
        doc["generating_fn_pass"] = gen_pass;
        doc["all_pass"] = all_pass;
        doc["artifact_version"] = artifact_version;
        report::write_file(out_path, doc.dump(2) + "\n");
    }

    std::cout << (all_pass ? "all checks passed" : "FAILURES present") << "\n";
    return all_pass ? kExitPass : kExitFail;
}

int cmd_verify_dual(long k_max, const std::string& out_path) {
    bool all_pass = true;

    bool inv_pass = true;
    for (long k = 0; k <= k_max; ++k)
        if (!duality::verify_involution(k)) {
            inv_pass = false;
            std::cout << "  FAIL involution k=" << k << "\n";
        }
    std::cout << "involution       " << (inv_pass ? "pass" : "FAIL")
              << "  (A_k^2 = I for k <= " << k_max << ")\n";
    all_pass = all_pass && inv_pass;

    bool pw_pass = true;
    long cases = 0;
    for (long N = 0; N <= 40; ++N)
        for (long n = 1; n <= 20; ++n)
            for (long k = 1; k <= 10; ++k) {
                ++cases;
                const auto [lhs, rhs] = duality::eq2_eq3_pointwise(N, n, k);
                if (lhs != rhs) pw_pass = false;
            }
    std::cout << "pointwise eq2=eq3 " << (pw_pass ? "pass" : "FAIL") << " ("
              << cases << " cases)\n";
    all_pass = all_pass && pw_pass;

    std::uint64_t state = 0xABCDEFull;
    auto next = [&state]() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        return z ^ (z >> 31);
    };
    bool rt_pass = true;
    for (int rep = 0; rep < 100; ++rep) {
        const long k = static_cast<long>(next() % 13);
        duality::MomentVector<BigRat> v{duality::MomentKind::vertex_side, 2, k, {}};
        v.entries.push_back(rat(1));
        for (long i = 1; i <= k; ++i)
            v.entries.push_back(rat(static_cast<long>(next() % 19) - 9,
                                    static_cast<long>(next() % 7) + 1));
        const auto back = duality::transform(duality::transform(v));
        if (back.entries != v.entries || back.kind != v.kind) rt_pass = false;
    }
    std::cout << "round trip       " << (rt_pass ? "pass" : "FAIL")
              << "  (100 random exact vectors)\n";
    all_pass = all_pass && rt_pass;

    if (!out_path.empty()) {
        report::json doc;
        doc["suite"] = "verify-dual";
        doc["k_max"] = k_max;
        doc["involution_pass"] = inv_pass;
        doc["pointwise_cases"] = cases;
        doc["pointwise_pass"] = pw_pass;
        doc["round_trip_pass"] = rt_pass;
        doc["all_pass"] = all_pass;
        doc["artifact_version"] = artifact_version;
        report::write_file(out_path, doc.dump(2) + "\n");
    }

    std::cout << (all_pass ? "all checks passed" : "FAILURES present") << "\n";
    return all_pass ? kExitPass : kExitFail;
}

void emit_report(const mc::IdentityReport& rep, const std::string& format,
                 const std::string& out_path) {
    std::string payload;
    if (format == "json") {
        payload = report::serialize(rep);
    } else {
        payload = std::string(report::csv_header) + "\n" + report::csv_row(rep) + "\n";
    }
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        report::write_file(out_path, payload);
        std::cout << "report written to " << out_path << "\n";
    }
}

struct CheckOptions {
    std::string identity;
    std::string body = "interval";
    long n = 0, k = 0, m = 0, j = 0;
    std::size_t reps = 100000;
    std::uint64_t seed = 0;
    std::string mode = "coupled";
    double tolerance_sigma = 4.0;
    std::string format = "json";
    std::string out;
    int threads = 1;
    std::string config;
};

void merge_check_config(const CLI::App& cmd, CheckOptions& opt) {
    const auto kv = load_flat_config(opt.config);
    auto from_config = [&](const char* flag, const char* key, auto apply) {
        const auto it = kv.find(key);
        if (it != kv.end() && cmd.count(flag) == 0) apply(it->second);
    };
    from_config("--identity", "identity", [&](const std::string& v) { opt.identity = v; });
    from_config("--body", "body", [&](const std::string& v) { opt.body = v; });
    from_config("--n", "n", [&](const std::string& v) { opt.n = std::stol(v); });
    from_config("--k", "k", [&](const std::string& v) { opt.k = std::stol(v); });
    from_config("--m", "m", [&](const std::string& v) { opt.m = std::stol(v); });
    from_config("--j", "j", [&](const std::string& v) { opt.j = std::stol(v); });
    from_config("--reps", "reps", [&](const std::string& v) { opt.reps = std::stoull(v); });
    from_config("--seed", "seed", [&](const std::string& v) { opt.seed = std::stoull(v); });
    from_config("--mode", "mode", [&](const std::string& v) { opt.mode = v; });
    from_config("--tolerance-sigma", "tolerance-sigma",
                [&](const std::string& v) { opt.tolerance_sigma = std::stod(v); });
    from_config("--format", "format", [&](const std::string& v) { opt.format = v; });
    from_config("--out", "out", [&](const std::string& v) { opt.out = v; });
    from_config("--threads", "threads",
                [&](const std::string& v) { opt.threads = std::stoi(v); });
}

int cmd_check(const CheckOptions& opt) {
    if (opt.identity.empty())
        throw ContractViolation("--identity is required (flag or config file)");
    const std::set<std::string> identities{"efron-eq1", "product-eq2",
                                           "factorial-eq3", "dual-eq4",
                                           "thm2-direct-vs-ratio"};
    if (!identities.count(opt.identity))
        throw ContractViolation("unknown identity: " + opt.identity);
    if (opt.format != "json" && opt.format != "csv")
        throw ContractViolation("format must be json or csv");
    const auto body = parse_body(opt.body);
    const auto mode = mc::mode_from_string(opt.mode);
    mc::IdentityReport rep;
    if (opt.identity == "thm2-direct-vs-ratio") {
        rep = mc::check_theorem2(body, opt.m, opt.j, opt.reps, opt.seed, mode,
                                 opt.tolerance_sigma, opt.threads);
    } else {
        const long k = opt.identity == "efron-eq1" && opt.k == 0 ? 1 : opt.k;
        rep = mc::check_identity(body, opt.identity, opt.n, k, opt.reps, opt.seed,
                                 mode, opt.tolerance_sigma, opt.threads);
    }
    std::cout << rep.identity << " body=" << rep.body << " lhs=" << rep.lhs.mean
              << " (" << rep.lhs.estimand << ")"
              << " rhs=" << rep.rhs.mean << " (" << rep.rhs.estimand << ")"
              << " z=" << rep.z_score << " -> "
              << (rep.pass ? "pass" : "FAIL") << "\n";
    emit_report(rep, opt.format, opt.out);
    return rep.pass ? kExitPass : kExitFail;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& format,
               const std::string& out_path) {
    std::vector<mc::IdentityReport> reports;
    try {
        reports = report::load_reports(inputs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    const std::string payload = format == "json" ? report::merge_to_json(reports)
                                                 : report::merge_to_csv(reports);
    if (out_path.empty())
        std::cout << payload;
    else
        report::write_file(out_path, payload);
    return kExitPass;
}

int cmd_register_planar(const std::string& body_name, std::size_t reps,
                        std::uint64_t seed, int quad_order,
                        const std::string& registry_path, int threads) {
    if (body_name != "triangle" && body_name != "square")
        throw ContractViolation("register-planar supports triangle and square");
    const auto body = body_name == "triangle"
                          ? geom::ConvexBody::standard_simplex(2)
                          : geom::ConvexBody::cube(2, 1.0);

    std::cout << "quadrature (order " << quad_order << ") ... " << std::flush;
    const double quad = oracle::expected_triangle_area_ratio(body, quad_order);
    const double quad_lo =
        oracle::expected_triangle_area_ratio(body, quad_order * 3 / 4);
    std::cout << quad << " (convergence gap " << std::scientific
              << std::setprecision(2) << std::fabs(quad - quad_lo)
              << std::defaultfloat << std::setprecision(9) << ")\n";

    std::cout << "simulation (" << reps << " reps) ... " << std::flush;
    const auto sim = mc::estimate_volume_moment(body, 3, 1, reps, seed, threads);
    std::cout << sim.mean << " +- " << sim.std_error << "\n";

    const double rel = std::fabs(quad - sim.mean) / quad;
    const bool agree = rel <= 5e-4;
    std::cout << "relative difference " << std::scientific << std::setprecision(2)
              << rel << std::defaultfloat
              << (agree ? "  -> agree to 3 significant figures"
                        : "  -> DISAGREE, not registering")
              << "\n";
    if (!agree) return kExitFail;

    oracle::Registry reg;
    try {
        reg = oracle::Registry::load(registry_path);
    } catch (const std::exception&) {
        // start a fresh registry
    }
    std::ostringstream value;
    value << std::setprecision(6) << quad;
    std::ostringstream detail;
    detail << "clipping quadrature order " << quad_order << " = " << std::setprecision(8)
           << quad << "; simulation " << reps << " reps seed " << seed << " = "
           << sim.mean << " +- " << sim.std_error;
    reg.put({body_name + ":EV3/vol", value.str(), quad,
             oracle::Provenance::brute_force, detail.str()});
    reg.put({"interval:EV2/vol", "1/3", 1.0 / 3.0,
             oracle::Provenance::closed_form,
             "Beta(1,2) mean; interval_volume_moment(2,1)"});
    reg.save(registry_path);
    std::cout << "registered " << body_name << ":EV3/vol in " << registry_path
              << "\n";
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and statistical checks of the volume/vertex-count "
                 "duality for random polytopes"};
    app.require_subcommand(1);

    // verify-sym
    auto* sym = app.add_subcommand(
        "verify-sym", "Exact elementary-symmetric-polynomial suites");
    long sym_kmax = 12;
    std::string sym_config;
    std::string sym_out;
    sym->add_option("--k-max", sym_kmax, "Largest variable count")
        ->check(CLI::Range(1L, 64L))
        ->capture_default_str();
    sym->add_option("--out", sym_out, "Write the suite report as JSON");
    sym->add_option("--config", sym_config, "Flat key = value config file");

    // verify-dual
    auto* dual = app.add_subcommand(
        "verify-dual", "Exact involution, pointwise and round-trip suites");
    long dual_kmax = 64;
    std::string dual_config;
    std::string dual_out;
    dual->add_option("--k-max", dual_kmax, "Largest matrix order minus one")
        ->check(CLI::Range(0L, 512L))
        ->capture_default_str();
    dual->add_option("--out", dual_out, "Write the suite report as JSON");
    dual->add_option("--config", dual_config, "Flat key = value config file");

    // check
    auto* check = app.add_subcommand(
        "check", "Monte Carlo check of one identity instance");
    CheckOptions opt;
    check->add_option("--identity", opt.identity, "Identity label")
        ->check(CLI::IsMember({"efron-eq1", "product-eq2", "factorial-eq3",
                               "dual-eq4", "thm2-direct-vs-ratio"}));
    check->add_option("--body", opt.body,
                      "Body: interval[:a,b], triangle, square, cube3, "
                      "cube:d,s, ball2, ball3, ball:d,r, tetra3, "
                      "polygon:x,y;x,y;...")
        ->capture_default_str();
    check->add_option("--n", opt.n, "Base point count n");
    check->add_option("--k", opt.k, "Moment order k");
    check->add_option("--m", opt.m, "Theorem 2 extra point count m");
    check->add_option("--j", opt.j, "Theorem 2 specified point count j");
    check->add_option("--reps", opt.reps, "Replications per stream")
        ->capture_default_str();
    check->add_option("--seed", opt.seed, "Master seed")
        ->envname("EFRON_DUAL_SEED");
    check->add_option("--mode", opt.mode, "coupled | independent")
        ->check(CLI::IsMember({"coupled", "independent"}))
        ->capture_default_str();
    check->add_option("--tolerance-sigma", opt.tolerance_sigma,
                      "Pass threshold in combined sigmas")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    check->add_option("--format", opt.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    check->add_option("--out", opt.out, "Report output path (default stdout)");
    check->add_option("--threads", opt.threads, "Worker threads")
        ->check(CLI::Range(1, 256))
        ->capture_default_str();
    check->add_option("--config", opt.config, "Flat key = value config file");

    // report
    auto* rep = app.add_subcommand("report", "Merge report files");
    std::vector<std::string> rep_inputs;
    std::string rep_format = "json";
    std::string rep_out;
    rep->add_option("inputs", rep_inputs, "Previously emitted report files");
    rep->add_option("--format", rep_format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    rep->add_option("--out", rep_out, "Merged output path (default stdout)");

    // register-planar
    auto* reg = app.add_subcommand(
        "register-planar",
        "Dual-method registration of a planar reference constant");
    std::string reg_body = "triangle";
    std::size_t reg_reps = 20000000;
    std::uint64_t reg_seed = 20260810;
    int reg_order = 32;
    std::string reg_path = "data/oracle_registry.tsv";
    int reg_threads = 1;
    reg->add_option("--body", reg_body, "triangle | square")
        ->check(CLI::IsMember({"triangle", "square"}))
        ->capture_default_str();
    reg->add_option("--reps", reg_reps, "Simulation replications")
        ->capture_default_str();
    reg->add_option("--seed", reg_seed, "Simulation master seed")
        ->capture_default_str();
    reg->add_option("--quad-order", reg_order, "Gauss-Legendre points per axis")
        ->check(CLI::Range(8, 64))
        ->capture_default_str();
    reg->add_option("--registry", reg_path, "Registry file path")
        ->capture_default_str();
    reg->add_option("--threads", reg_threads, "Worker threads")
        ->check(CLI::Range(1, 256));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sym->parsed()) {
            if (!sym_config.empty()) {
                const auto kv = load_flat_config(sym_config);
                if (const auto it = kv.find("k-max");
                    it != kv.end() && sym->count("--k-max") == 0)
                    sym_kmax = std::stol(it->second);
            }
            if (sym_kmax < 1) throw ContractViolation("verify-sym: k-max >= 1");
            return cmd_verify_sym(sym_kmax, sym_out);
        }
        if (dual->parsed()) {
            if (!dual_config.empty()) {
                const auto kv = load_flat_config(dual_config);
                if (const auto it = kv.find("k-max");
                    it != kv.end() && dual->count("--k-max") == 0)
                    dual_kmax = std::stol(it->second);
            }
            if (dual_kmax < 0) throw ContractViolation("verify-dual: k-max >= 0");
            return cmd_verify_dual(dual_kmax, dual_out);
        }
        if (check->parsed()) {
            if (!opt.config.empty()) merge_check_config(*check, opt);
            return cmd_check(opt);
        }
        if (rep->parsed()) return cmd_report(rep_inputs, rep_format, rep_out);
        if (reg->parsed())
            return cmd_register_planar(reg_body, reg_reps, reg_seed, reg_order,
                                       reg_path, reg_threads);
    } catch (const ContractViolation& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
