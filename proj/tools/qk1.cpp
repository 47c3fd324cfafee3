// qk1 — exact Euler characteristics of cotangent-line and Hodge bundle
// powers on the moduli of one-pointed-to-n-pointed stable genus-one curves.
//
// Subcommands: chi, table, series, genfun, verify, cache.
// Exit codes: 0 success, 2 invalid input, 3 internal-consistency failure,
// 4 verification-suite failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "qk1/engine.hpp"
#include "qk1/formulas.hpp"
#include "qk1/io.hpp"
#include "qk1/oracles.hpp"
#include "qk1/version.hpp"

namespace {

using nlohmann::ordered_json;
using namespace qk1;

struct GlobalOpts {
    std::string cache_path;
    bool no_cache = false;
    int jobs = 1;
    int exact_ceiling = 4;
    std::string format = "text";
};

std::string resolved_cache_path(const GlobalOpts& g) {
    if (g.no_cache) return "";
    if (!g.cache_path.empty()) return g.cache_path;
    if (const char* env = std::getenv("QK1_CACHE")) return env;
    return "";
}

Engine make_engine(const GlobalOpts& g) {
    Engine::Options opt;
    opt.exact_ceiling = g.exact_ceiling;
    opt.cache_path = resolved_cache_path(g);
    return Engine(opt);
}

void report_cache_stats(const Engine& engine) {
    if (engine.cache_path().empty()) return;
    const CacheStats& s = engine.cache_stats();
    std::cerr << "cache: " << s.disk_hits << " hits, " << s.computed << " computed, "
              << s.loaded_records << " records loaded, " << s.dropped_records
              << " discarded (" << engine.cache_path() << ")\n";
}

Mode parse_mode(const std::string& s) {
    if (s == "exact") return Mode::Exact;
    if (s == "series") return Mode::Series;
    if (s == "auto") return Mode::Auto;
    throw input_error("unknown mode '" + s + "' (expected exact|series|auto)");
}

std::vector<int64_t> parse_int_list(const std::string& s, int expect_n, const char* what) {
    std::vector<int64_t> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, ',')) {
        try {
            out.push_back(std::stoll(cur));
        } catch (const std::exception&) {
            throw input_error(std::string("cannot parse ") + what + " entry '" + cur + "'");
        }
    }
    if (expect_n >= 0 && static_cast<int>(out.size()) != expect_n)
        throw input_error(std::string(what) + " must have exactly " + std::to_string(expect_n) +
                          " comma-separated entries");
    return out;
}

// "a..b" or a single value "a".
std::pair<int64_t, int64_t> parse_range(const std::string& s, const char* what) {
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            int64_t v = std::stoll(s);
            return {v, v};
        }
        return {std::stoll(s.substr(0, dots)), std::stoll(s.substr(dots + 2))};
    } catch (const std::exception&) {
        throw input_error(std::string("cannot parse ") + what + " range '" + s + "'");
    }
}

std::vector<std::pair<int64_t, int64_t>> parse_range_list(const std::string& s, int expect_n,
                                                          const char* what) {
    std::vector<std::pair<int64_t, int64_t>> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, ',')) out.push_back(parse_range(cur, what));
    if (static_cast<int>(out.size()) != expect_n)
        throw input_error(std::string(what) + " must have exactly " + std::to_string(expect_n) +
                          " comma-separated ranges");
    return out;
}

std::string csv_table(int n, const std::vector<TableRow>& rows) {
    std::string out = "n,hodge";
    for (int i = 1; i <= n; ++i) out += ",d" + std::to_string(i);
    out += ",chi\n";
    for (const auto& r : rows) {
        out += std::to_string(n) + "," + std::to_string(r.hodge);
        for (int64_t d : r.exps) out += "," + std::to_string(d);
        out += "," + r.value.get_str() + "\n";
    }
    return out;
}

ordered_json row_record(int n, const TableRow& r, const std::string& mode) {
    ordered_json rec;
    rec["request"] = {{"n", n}, {"hodge", r.hodge}, {"exps", r.exps}};
    rec["chi"] = r.value.get_str();
    rec["engine"] = {{"version", kEngineVersion}, {"mode", mode}};
    return rec;
}

int run(int argc, char** argv) {
    CLI::App app{"exact orbifold Euler characteristics of cotangent-line bundles in genus one"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--cache", g.cache_path, "on-disk cache file (default: $QK1_CACHE)");
    app.add_flag("--no-cache", g.no_cache, "disable the on-disk cache");
    app.add_option("--jobs", g.jobs, "worker threads for tables and sweeps")
        ->check(CLI::PositiveNumber);
    app.add_option("--exact-ceiling", g.exact_ceiling,
                   "largest n computed in exact mode (default 4)")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", g.format, "output format: text|csv|json")
        ->check(CLI::IsMember({"text", "csv", "json"}));

    // chi
    auto* chi_cmd = app.add_subcommand("chi", "one Euler characteristic");
    int chi_n = 0;
    int64_t chi_hodge = 0;
    std::string chi_exps, chi_mode = "auto";
    chi_cmd->add_option("--n", chi_n, "number of marked points")->required();
    chi_cmd->add_option("--hodge", chi_hodge, "exponent of the Hodge bundle (any sign)");
    chi_cmd->add_option("--exps", chi_exps, "comma-separated exponents d1..dn")->required();
    chi_cmd->add_option("--mode", chi_mode, "exact|series|auto");

    // table
    auto* table_cmd = app.add_subcommand("table", "a table of Euler characteristics");
    int table_n = 0;
    std::string table_hodge = "0", table_exps, table_mode = "auto";
    table_cmd->add_option("--n", table_n, "number of marked points")->required();
    table_cmd->add_option("--hodge", table_hodge, "Hodge exponent or range a..b");
    table_cmd->add_option("--exps", table_exps, "per-insertion ranges, e.g. 0..3,0..3")
        ->required();
    table_cmd->add_option("--mode", table_mode, "exact|series|auto");

    // series
    auto* series_cmd = app.add_subcommand("series", "truncated generating-function expansion");
    int series_n = 0;
    uint32_t series_order = 4;
    int64_t series_total = TruncatedSeries::kNoCap;
    int64_t series_hodge_order = -1;
    series_cmd->add_option("--n", series_n, "number of marked points")->required();
    series_cmd->add_option("--order", series_order, "per-variable truncation order");
    series_cmd->add_option("--hodge-order", series_hodge_order,
                           "truncation order for q (default: --order)");
    series_cmd->add_option("--total-degree", series_total, "optional total-degree cap");

    // genfun
    auto* genfun_cmd = app.add_subcommand("genfun", "closed-form generating function (exact)");
    int genfun_n = 0;
    int genfun_partial = -1;
    genfun_cmd->add_option("--n", genfun_n, "number of marked points")->required();
    genfun_cmd->add_option("--partial", genfun_partial,
                           "print the partial function with m active insertions");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the verification oracles");
    std::string suite = "fast";
    verify_cmd->add_option("--suite", suite, "fast|all")->check(CLI::IsMember({"fast", "all"}));

    // cache
    auto* cache_cmd = app.add_subcommand("cache", "cache management");
    std::string cache_action;
    cache_cmd->add_option("action", cache_action, "info|clear")
        ->required()
        ->check(CLI::IsMember({"info", "clear"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (chi_cmd->parsed()) {
        ChiRequest req;
        req.n = chi_n;
        req.hodge_exp = chi_hodge;
        if (chi_n < 1) throw input_error("chi: --n must be >= 1");
        req.exps = parse_int_list(chi_exps, chi_n, "--exps");
        req.mode = parse_mode(chi_mode);
        Engine engine = make_engine(g);
        Integer value = engine.chi(req);
        if (g.format == "json") {
            TableRow row{req.hodge_exp, req.exps, value};
            std::cout << row_record(req.n, row,
                                    engine.resolved_mode(req) == Mode::Series ? "series" : "exact")
                             .dump()
                      << "\n";
        } else if (g.format == "csv") {
            std::cout << csv_table(req.n, {{req.hodge_exp, req.exps, value}});
        } else {
            std::cout << value.get_str() << "\n";
        }
        engine.save_cache();
        report_cache_stats(engine);
        return 0;
    }

    if (table_cmd->parsed()) {
        if (table_n < 1) throw input_error("table: --n must be >= 1");
        auto hodge_range = parse_range(table_hodge, "--hodge");
        auto exp_ranges = parse_range_list(table_exps, table_n, "--exps");
        Mode mode = parse_mode(table_mode);
        Engine engine = make_engine(g);
        std::vector<TableRow> rows = engine.chi_table(table_n, hodge_range, exp_ranges, mode, g.jobs);
        if (g.format == "json") {
            ordered_json arr = ordered_json::array();
            for (const auto& r : rows) {
                ChiRequest req{table_n, r.hodge, r.exps, mode};
                arr.push_back(row_record(
                    table_n, r, engine.resolved_mode(req) == Mode::Series ? "series" : "exact"));
            }
            std::cout << arr.dump(2) << "\n";
        } else {
            std::cout << csv_table(table_n, rows);
        }
        engine.save_cache();
        report_cache_stats(engine);
        return 0;
    }

    if (series_cmd->parsed()) {
        if (series_n < 1) throw input_error("series: --n must be >= 1");
        std::vector<uint32_t> orders(series_n + 1, series_order);
        if (series_hodge_order >= 0) orders[0] = static_cast<uint32_t>(series_hodge_order);
        Engine engine = make_engine(g);
        TruncatedSeries s = engine.full_genfun_series(series_n, orders, series_total);
        if (g.format == "json") {
            ordered_json out;
            out["n"] = series_n;
            out["orders"] = s.orders();
            if (s.total_cap() != TruncatedSeries::kNoCap) out["total_degree"] = s.total_cap();
            ordered_json terms = ordered_json::array();
            for (const auto& [e, c] : s.coefficients())
                terms.push_back({{"exps", e}, {"chi", c.str()}});
            out["terms"] = terms;
            out["engine"] = {{"version", kEngineVersion}, {"mode", "series"}};
            std::cout << out.dump(2) << "\n";
        } else if (g.format == "csv") {
            // Coefficient of q^d prod q_i^{d_i} is chi at hodge = -d.
            std::string out = "n,hodge";
            for (int i = 1; i <= series_n; ++i) out += ",d" + std::to_string(i);
            out += ",chi\n";
            for (const auto& [e, c] : s.coefficients()) {
                out += std::to_string(series_n) + "," + std::to_string(-static_cast<int64_t>(e[0]));
                for (int i = 1; i <= series_n; ++i) out += "," + std::to_string(e[i]);
                out += "," + c.str() + "\n";
            }
            std::cout << out;
        } else {
            std::cout << to_string(s) << "\n";
        }
        engine.save_cache();
        report_cache_stats(engine);
        return 0;
    }

    if (genfun_cmd->parsed()) {
        if (genfun_n < 1) throw input_error("genfun: --n must be >= 1");
        Engine engine = make_engine(g);
        int m = genfun_partial >= 0 ? genfun_partial : genfun_n;
        if (m > genfun_n) throw input_error("genfun: --partial must be <= n");
        if (genfun_n > engine.exact_ceiling())
            throw input_error("genfun: n exceeds the exact-mode ceiling; use the series command");
        RationalFunction f = engine.partial_genfun({genfun_n, m}).p;
        if (g.format == "json") {
            ordered_json out;
            out["n"] = genfun_n;
            out["m"] = m;
            out["genfun"] = to_string(f);
            out["engine"] = {{"version", kEngineVersion}, {"mode", "exact"}};
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << to_string(f) << "\n";
        }
        engine.save_cache();
        report_cache_stats(engine);
        return 0;
    }

    if (verify_cmd->parsed()) {
        Engine engine = make_engine(g);
        oracles::Report report = oracles::run_verify(engine, suite == "all");
        if (g.format == "json") {
            ordered_json arr = ordered_json::array();
            for (const auto& c : report.checks)
                arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
            std::cout << arr.dump(2) << "\n";
        } else {
            for (const auto& c : report.checks) {
                std::cout << (c.pass ? "ok   " : "FAIL ") << c.name;
                if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
                std::cout << "\n";
            }
            std::cout << (report.all_pass() ? "all checks passed" : "CHECKS FAILED") << "\n";
        }
        return report.all_pass() ? 0 : 4;
    }

    if (cache_cmd->parsed()) {
        std::string path = resolved_cache_path(g);
        if (path.empty()) throw input_error("cache: no cache path (--cache or $QK1_CACHE)");
        if (cache_action == "clear") {
            std::remove(path.c_str());
            std::cout << "cleared " << path << "\n";
        } else {
            Engine engine = make_engine(g);
            const CacheStats& s = engine.cache_stats();
            std::cout << "path: " << path << "\n"
                      << "records: " << s.loaded_records << "\n"
                      << "discarded: " << s.dropped_records << "\n"
                      << "engine: " << kEngineVersion << "\n";
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const qk1::internal_error& e) {
        std::cerr << "internal-consistency error: " << e.what() << "\n";
        return 3;
    } catch (const qk1::verification_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 4;
    } catch (const qk1::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qk1::unsupported_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
