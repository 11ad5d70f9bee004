// Command-line front end: cohomology computations on algebra/bimodule files
// and the invariant verification suites.

#include <CLI11.hpp>
#include <json.hpp>

#include "cohom/bicomplex.hpp"
#include "cohom/catalog.hpp"
#include "cohom/io.hpp"
#include "cohom/qconstruction.hpp"
#include "cohom/verify.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace cohom;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

json divisors_json(const ElementaryDivisors& e) {
    json a = json::array();
    for (const auto& d : e.divisors) a.push_back(d.get_str());
    return a;
}

struct Timings {
    using clock = std::chrono::steady_clock;
    clock::time_point start = clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(clock::now() - start).count();
    }
};

int run_cohomology(const std::string& theory, const std::string& ground_s,
                   const std::string& algebra_path, const std::string& module_path,
                   const std::string& kalgebra_path, const std::string& phi_path,
                   const std::string& lift_path, const std::string& strategy_s, int max_degree,
                   long budget_cols, const std::string& cache_dir, bool as_json) {
    Timings t;
    BaseRing ground = parse_base_ring(ground_s);
    StructureAlgebra R = parse_algebra(slurp(algebra_path));
    Bimodule M = module_path.empty() ? regular_bimodule(R, ground)
                                     : parse_bimodule(slurp(module_path), R);
    Budget budget = Budget::global();
    budget.max_degree = std::max(budget.max_degree, max_degree);
    if (budget_cols > 0) budget.max_columns = budget_cols;

    CohomologyResult coh;
    std::string strategy_used = theory;
    if (theory == "hochschild") {
        auto h = hochschild_cohomology(ground, R, M, max_degree, budget);
        coh = h.coh;
    } else if (theory == "shukla") {
        ShuklaQuery q{ground, R, M, max_degree, ShuklaStrategy::Auto, {}, nullptr, budget};
        if (strategy_s == "builtin") q.strategy = ShuklaStrategy::Builtin;
        if (strategy_s == "killing") q.strategy = ShuklaStrategy::KillingCycles;
        if (!lift_path.empty()) q.lift = parse_algebra(slurp(lift_path));
        if (!cache_dir.empty() && R.dim() == 1 && !(R.base() == ground)) {
            // resolution cache keyed by (algebra fingerprint, bound)
            std::string fp = fingerprint(print_algebra(R) + "|" + ground.str());
            int bound = max_degree + 2;
            auto cached = cache_load_resolution(cache_dir, fp, bound);
            if (!cached) {
                auto res = killing_cycles_resolution(Ground::plain(ground), R.base(), {Int(1)},
                                                     bound);
                cache_store_resolution(cache_dir, fp, bound, res, R.base());
                cached = std::move(res.resolution);
            }
            q.user_resolution = std::make_shared<ChainAlgebra>(std::move(*cached));
            q.strategy = ShuklaStrategy::User;
        }
        auto s = shukla_cohomology(q);
        coh = s.coh;
        strategy_used = "shukla / " + s.strategy_used;
    } else if (theory == "bicomplex") {
        if (kalgebra_path.empty()) throw Error("--theory bicomplex needs --kalgebra");
        StructureAlgebra K = parse_algebra(slurp(kalgebra_path));
        SparseMat phi(R.dim(), K.dim());
        if (phi_path.empty()) {
            // default structure map: unit of K to unit of R (rank-1 K only)
            if (K.dim() != 1) throw Error("--structure-map required when dim K > 1");
            for (long i = 0; i < R.dim(); ++i)
                if (R.unit()[i] != 0) phi.add(i, 0, R.unit()[i]);
        } else {
            // file with lines "row col value"
            std::istringstream is(slurp(phi_path));
            long r, c;
            std::string v;
            while (is >> r >> c >> v) phi.add(r, c, Int(v));
        }
        BicomplexSpec spec{K.base(), K, R, phi, M, max_degree, 1 << 16};
        coh = total_cohomology(spec);
        strategy_used = "bicomplex";
    } else {
        throw Error("unknown theory '" + theory + "'");
    }

    if (as_json) {
        json out;
        out["schema"] = "cohom.v1";
        out["command"] = "cohomology";
        out["theory"] = theory;
        out["ground"] = ground.str();
        out["strategy"] = strategy_used;
        out["max_degree"] = max_degree;
        json groups = json::array();
        for (const auto& [deg, ed] : coh.groups) {
            json g;
            g["degree"] = deg;
            g["divisors"] = divisors_json(ed);
            g["pretty"] = ed.str();
            groups.push_back(g);
        }
        out["groups"] = groups;
        out["timings"] = {{"total_ms", t.ms()}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "theory:   " << strategy_used << "\n";
        std::cout << "ground:   " << ground.str() << "\n";
        std::cout << "degree  group\n";
        for (const auto& [deg, ed] : coh.groups)
            std::cout << "  " << deg << "     " << ed.str() << "\n";
        std::cout << "elapsed: " << t.ms() << " ms\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Hochschild/Shukla cohomology and extension dictionaries"};
    app.require_subcommand(1);

    auto* coh = app.add_subcommand("cohomology", "compute cohomology groups from input files");
    std::string theory = "hochschild", ground = "Z", algebra, module, kalgebra, phimap, lift,
                strategy = "auto", cache_dir;
    int max_degree = 4;
    long budget_cols = 0;
    bool as_json = false;
    coh->add_option("--theory", theory, "hochschild | shukla | bicomplex");
    coh->add_option("--ground", ground, "ground ring: Z, Z/m, Fp");
    coh->add_option("--algebra", algebra, "algebra file (.alg)")->required();
    coh->add_option("--module", module, "bimodule file (.bim); defaults to the regular bimodule");
    coh->add_option("--kalgebra", kalgebra, "ground algebra K file for the bicomplex theory");
    coh->add_option("--structure-map", phimap, "structure map K -> R ('row col value' lines)");
    coh->add_option("--lift", lift, "lifting of the algebra to the ground (builtin resolutions)");
    coh->add_option("--strategy", strategy, "auto | builtin | killing");
    coh->add_option("--max-degree", max_degree, "top cohomological degree");
    coh->add_option("--budget", budget_cols, "column budget override (also COCHAIN_BUDGET)");
    coh->add_option("--cache-dir", cache_dir, "resolution cache directory");
    coh->add_flag("--json", as_json, "schema-stable JSON output (v1)");

    auto* ver = app.add_subcommand("verify", "run the invariant suites");
    std::string suite = "all";
    uint64_t seed = 7;
    bool vjson = false;
    ver->add_option("suite", suite, "complexes|extensions|kunneth|sigma|qlow|bicomplex|all");
    ver->add_option("--seed", seed, "RNG seed (runs are deterministic given the seed)");
    ver->add_flag("--json", vjson, "JSON output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (coh->parsed())
            return run_cohomology(theory, ground, algebra, module, kalgebra, phimap, lift,
                                  strategy, max_degree, budget_cols, cache_dir, as_json);
        if (ver->parsed()) {
            VerifyOptions opts;
            opts.seed = seed;
            auto res = run_verify(suite, opts);
            if (vjson) {
                json out;
                out["schema"] = "cohom.v1";
                out["command"] = "verify";
                out["suite"] = suite;
                out["seed"] = seed;
                out["ok"] = res.ok;
                out["lines"] = res.lines;
                if (!res.ok) {
                    out["failure"] = res.failure_detail;
                    out["repro"] = res.repro_path;
                }
                std::cout << out.dump(2) << "\n";
            } else {
                for (const auto& l : res.lines) std::cout << l << "\n";
                if (!res.ok)
                    std::cout << "FAILED: " << res.failure_detail << "\nrepro: " << res.repro_path
                              << "\n";
                else
                    std::cout << "all checks passed (seed " << seed << ")\n";
            }
            return res.ok ? 0 : 1;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NoSplitting& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const NotACocycle& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
