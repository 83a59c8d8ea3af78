// Command-line front end: every library operation behind one binary, with
// exact-text, JSON, and CSV output.
//
// Exit codes: 0 success; 1 usage, parse, or domain error; 2 any verify
// sub-check failed; 3 verify sub-checks inconclusive only; 4 budget exceeded.
//
// Results go to the output stream (or --out), diagnostics and the trailing
// cost line to the error stream, so pipelines see values only.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fusible/checks.hpp"
#include "fusible/engine.hpp"
#include "fusible/error.hpp"
#include "fusible/levels.hpp"
#include "fusible/ordinal.hpp"
#include "fusible/ordmap.hpp"
#include "fusible/rational.hpp"

namespace {

using fusible::Budgets;
using fusible::CheckReport;
using fusible::CheckStatus;
using fusible::CnfOrdinal;
using fusible::Engine;
using fusible::GStrategy;
using fusible::LevelEntry;
using fusible::Method;
using fusible::OrdContext;
using fusible::Rational;
using fusible::ValueLevels;
using ojson = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kCheckFail = 2;
constexpr int kInconclusive = 3;
constexpr int kBudget = 4;

std::string annotate(const Rational& r) {
    std::string s = fusible::format_rational(r);
    if (auto k = r.as_pow2()) s += " (2^" + std::to_string(*k) + ")";
    return s;
}

ojson pow2_or_null(const Rational& r) {
    if (auto k = r.as_pow2()) return ojson(*k);
    return ojson(nullptr);
}

// Configured limits, not consumption: identical invocations must print
// identical results whether or not a cache file was loaded, and loaded
// entries shift every consumption counter.  Consumption goes to stderr.
ojson budgets_json(const Budgets& b) {
    return ojson{{"memo_entries", b.memo_entries},
                 {"loop_iterations", b.loop_iterations},
                 {"stack_frames", b.stack_frames},
                 {"enumeration_cap", b.enumeration_cap}};
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

void emit_cost(const Engine& engine) {
    std::uint64_t peak = 0, loops = 0;
    for (Method m : {Method::Erickson, Method::Conjecture, Method::Zigzag}) {
        peak = std::max(peak, engine.stats(m).peak_stack_depth);
        loops += engine.stats(m).loop_iterations;
    }
    std::cerr << "cost: memo=" << engine.total_memo_entries() << " peak_stack=" << peak
              << " loops=" << loops << "\n";
}

// ---- scalar-result emission -------------------------------------------------

struct ScalarRow {
    std::string csv_header;
    std::string csv_row;
    std::string text;
    ojson json;
};

void emit_scalar(const ScalarRow& row, const std::string& format, std::ostream& os) {
    if (format == "json")
        os << row.json.dump(2) << "\n";
    else if (format == "csv")
        os << row.csv_header << "\n" << row.csv_row << "\n";
    else
        os << row.text << "\n";
}

// ---- check-report emission --------------------------------------------------

ojson report_json(const CheckReport& r) {
    return ojson{{"name", r.name},
                 {"status", fusible::status_name(r.status)},
                 {"conjecture_assumed", r.conjecture_assumed},
                 {"witnesses", r.witnesses},
                 {"notes", r.notes},
                 {"consumed",
                  ojson{{"memo_entries", r.memo_entries},
                        {"peak_stack", r.peak_stack},
                        {"loop_iterations", r.loop_iterations}}}};
}

void report_text(const CheckReport& r, std::ostream& os) {
    os << r.name << ": " << fusible::status_name(r.status);
    if (r.conjecture_assumed) os << " (conjecture assumed)";
    os << "\n";
    for (const auto& w : r.witnesses) os << "  witness: " << w << "\n";
    for (const auto& n : r.notes) os << "  note: " << n << "\n";
}

int emit_reports(const std::string& sub, const std::vector<CheckReport>& reports,
                 const std::string& format, std::ostream& os) {
    if (format == "json") {
        ojson arr = ojson::array();
        for (const auto& r : reports) arr.push_back(report_json(r));
        os << ojson{{"command", "verify"}, {"check", sub}, {"reports", arr}}.dump(2) << "\n";
    } else if (format == "csv") {
        os << "name,status,conjecture_assumed,witnesses,notes\n";
        for (const auto& r : reports)
            os << csv_field(r.name) << ',' << fusible::status_name(r.status) << ','
               << (r.conjecture_assumed ? "true" : "false") << ','
               << csv_field(join(r.witnesses, "; ")) << ',' << csv_field(join(r.notes, "; "))
               << "\n";
    } else {
        for (const auto& r : reports) report_text(r, os);
    }
    bool any_fail = false, any_inconclusive = false;
    for (const auto& r : reports) {
        any_fail |= r.status == CheckStatus::Fail;
        any_inconclusive |= r.status == CheckStatus::Inconclusive;
    }
    if (any_fail) return kCheckFail;
    if (any_inconclusive) return kInconclusive;
    return kOk;
}

void levels_csv(const ValueLevels& lv, const std::optional<Rational>& lo,
                const std::optional<Rational>& hi, std::ostream& os) {
    os << "value,min_depth,max_depth_observed\n";
    for (const LevelEntry& e : lv.entries()) {
        if (lo && e.value < *lo) continue;
        if (hi && *hi < e.value) continue;
        os << fusible::format_rational(e.value) << ',' << e.min_depth() << ','
           << e.max_depth_observed() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact fusible-number arithmetic, enumeration, ordinal maps, and verification"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may trail the subcommand; set before add_subcommand

    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    Budgets budgets;
    app.add_option("--memo-entries", budgets.memo_entries, "memo entry budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--loop-iterations", budgets.loop_iterations, "zigzag scan step budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--stack-frames", budgets.stack_frames, "abstract recursion depth budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--enumeration-cap", budgets.enumeration_cap, "level-table value budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    std::string cache_path;
    app.add_option("--cache", cache_path, "memo cache file (also via FUSIBLE_CACHE)")
        ->envname("FUSIBLE_CACHE");

    const std::vector<std::string> method_names{"erickson", "conjecture", "zigzag"};

    auto* cmd_m = app.add_subcommand("m", "gap m(x) between x and the next fusible number");
    std::string m_x, m_method = "zigzag";
    cmd_m->add_option("x", m_x, "evaluation point (p/q, integer, or exact decimal)")->required();
    cmd_m->add_option("--method", m_method, "evaluator")
        ->check(CLI::IsMember(method_names))
        ->capture_default_str();

    auto* cmd_succ = app.add_subcommand("successor", "k-fold successor s^k(x)");
    std::string succ_x, succ_method = "zigzag";
    int succ_n = 1;
    cmd_succ->add_option("x", succ_x, "starting point")->required();
    cmd_succ->add_option("--n", succ_n, "iteration count")
        ->check(CLI::Range(0, 1 << 20))
        ->capture_default_str();
    cmd_succ->add_option("--method", succ_method, "evaluator")
        ->check(CLI::IsMember(method_names))
        ->capture_default_str();

    auto* cmd_table1 = app.add_subcommand("table1", "rows (n, -log2 m(3 - 2^-n))");
    int table1_nmax = 0;
    std::string table1_method = "zigzag";
    cmd_table1->add_option("--n-max", table1_nmax, "last row")
        ->required()
        ->check(CLI::Range(1, 64));
    cmd_table1->add_option("--method", table1_method, "evaluator")
        ->check(CLI::IsMember(method_names))
        ->capture_default_str();

    auto* cmd_enum = app.add_subcommand("enumerate", "fusible numbers by presentation depth");
    int enum_depth = 0;
    std::string enum_min, enum_max, enum_out;
    cmd_enum->add_option("--depth", enum_depth, "presentation depth bound")
        ->required()
        ->check(CLI::Range(0, 64));
    cmd_enum->add_option("--min", enum_min, "keep values >= this");
    cmd_enum->add_option("--max", enum_max, "keep values <= this");
    cmd_enum->add_option("--out", enum_out, "write to this file instead of the output stream");

    auto* cmd_g = app.add_subcommand("g", "largest fusible number of depth n-1");
    int g_n = 0;
    std::string g_strategy = "bruteforce";
    cmd_g->add_option("n", g_n, "index (g(1) = 0)")->required()->check(CLI::Range(1, 1 << 20));
    cmd_g->add_option("--strategy", g_strategy, "search strategy")
        ->check(CLI::IsMember({"bruteforce", "conjecture"}))
        ->capture_default_str();

    auto* cmd_dup = app.add_subcommand("dup", "fusible pairs b <= c with b ~ c = a");
    std::string dup_a;
    int dup_depth = -1;
    cmd_dup->add_option("a", dup_a, "target value")->required();
    cmd_dup->add_option("--depth", dup_depth,
                        "completeness depth (default: certified depth of a, minus 1)")
        ->check(CLI::Range(0, 64));

    auto* cmd_ord = app.add_subcommand("ordinal", "order-isomorphism with ordinals below e_0");
    cmd_ord->require_subcommand(1);
    auto* cmd_ord_of = cmd_ord->add_subcommand("of", "position of a fusible number");
    std::string ord_of_x;
    cmd_ord_of->add_option("x", ord_of_x, "fusible number")->required();
    auto* cmd_ord_num = cmd_ord->add_subcommand("num", "fusible number at a position");
    std::string ord_num_cnf;
    cmd_ord_num->add_option("cnf", ord_num_cnf, "position, e.g. w^(w)*2+3")->required();
    auto* cmd_ord_fs = cmd_ord->add_subcommand("fs", "fundamental-sequence position below x");
    std::string ord_fs_x;
    std::uint64_t ord_fs_n = 1;
    cmd_ord_fs->add_option("x", ord_fs_x, "fusible number with limit position")->required();
    cmd_ord_fs->add_option("--n", ord_fs_n, "sequence index (>= 1)")
        ->required()
        ->check(CLI::PositiveNumber);
    auto* cmd_ord_exc = cmd_ord->add_subcommand("exc", "offset between the two fs conventions");
    std::string ord_exc_cnf;
    cmd_ord_exc->add_option("cnf", ord_exc_cnf, "limit ordinal")->required();

    auto* cmd_hier = app.add_subcommand("hierarchy", "growth hierarchy value f_alpha(n)");
    std::string hier_cnf, hier_mode = "recurrence";
    std::uint64_t hier_n = 0;
    cmd_hier->add_option("cnf", hier_cnf, "ordinal index")->required();
    cmd_hier->add_option("n", hier_n, "argument")->required();
    cmd_hier->add_option("--mode", hier_mode, "evaluation mode")
        ->check(CLI::IsMember({"recurrence", "definition"}))
        ->capture_default_str();

    auto* cmd_verify = app.add_subcommand("verify", "mechanical checks with witness reports");
    cmd_verify->require_subcommand(1);
    auto* cmd_v_cx = cmd_verify->add_subcommand(
        "counterexample", "simple recursion overstates the gap at 33/16");
    std::string v_cx_gap = "1/2048";
    cmd_v_cx->add_option("--claimed-gap", v_cx_gap, "gap the simple recursion is expected to give")
        ->capture_default_str();
    auto* cmd_v_ss = cmd_verify->add_subcommand(
        "self-similarity", "band decomposition x = s^n(a) ~ c with window bookkeeping");
    std::string v_ss_a;
    int v_ss_n = 0, v_ss_depth = 6;
    cmd_v_ss->add_option("--a", v_ss_a, "segment base (default: 0, 1/2, 3/4, 1)");
    cmd_v_ss->add_option("--n", v_ss_n, "band index (default: 1, 2, 3)")->check(CLI::Range(1, 64));
    cmd_v_ss->add_option("--depth", v_ss_depth, "table depth")
        ->check(CLI::Range(2, 64))
        ->capture_default_str();
    auto* cmd_v_st = cmd_verify->add_subcommand("statements", "structural-law sweeps over the level tables");
    int v_st_depth = 6;
    cmd_v_st->add_option("--depth", v_st_depth, "table depth")
        ->check(CLI::Range(4, 64))
        ->capture_default_str();
    auto* cmd_v_cross = cmd_verify->add_subcommand(
        "cross", "three-method agreement sweep against the level table");
    std::string v_cross_xmax = "17/8";
    int v_cross_depth = 5;
    cmd_v_cross->add_option("--x-max", v_cross_xmax, "sweep bound")->capture_default_str();
    cmd_v_cross->add_option("--depth", v_cross_depth, "table depth")
        ->check(CLI::Range(2, 64))
        ->capture_default_str();
    auto* cmd_v_cl = cmd_verify->add_subcommand(
        "closure", "a+b and 2a-1 stay fusible, searched to a depth cap");
    int v_cl_pairs_depth = 2, v_cl_cap = 8;
    cmd_v_cl->add_option("--pairs-depth", v_cl_pairs_depth, "sample pairs from this table")
        ->check(CLI::Range(0, 8))
        ->capture_default_str();
    cmd_v_cl->add_option("--cap", v_cl_cap, "search depth cap")
        ->check(CLI::Range(0, 64))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        Engine engine(budgets);
        if (!cache_path.empty() && std::filesystem::exists(cache_path))
            engine.load_cache(cache_path);

        int code = kOk;
        std::ostream& os = std::cout;

        if (cmd_m->parsed()) {
            Rational x = fusible::parse_rational(m_x);
            Method meth = *fusible::method_from_name(m_method);
            Rational mv = engine.m_eval(x, meth);
            emit_scalar({"x,method,m",
                         fusible::format_rational(x) + "," + m_method + "," +
                             fusible::format_rational(mv),
                         annotate(mv),
                         ojson{{"command", "m"},
                               {"x", fusible::format_rational(x)},
                               {"method", m_method},
                               {"conjecture_assumed", meth == Method::Conjecture},
                               {"result", fusible::format_rational(mv)},
                               {"pow2", pow2_or_null(mv)},
                               {"budgets", budgets_json(engine.budgets())}}},
                        format, os);
        } else if (cmd_succ->parsed()) {
            Rational x = fusible::parse_rational(succ_x);
            Method meth = *fusible::method_from_name(succ_method);
            Rational s = engine.successor_pow(x, succ_n, meth);
            emit_scalar({"x,n,method,successor",
                         fusible::format_rational(x) + "," + std::to_string(succ_n) + "," +
                             succ_method + "," + fusible::format_rational(s),
                         annotate(s),
                         ojson{{"command", "successor"},
                               {"x", fusible::format_rational(x)},
                               {"n", succ_n},
                               {"method", succ_method},
                               {"conjecture_assumed", meth == Method::Conjecture},
                               {"result", fusible::format_rational(s)},
                               {"pow2", pow2_or_null(s)},
                               {"budgets", budgets_json(engine.budgets())}}},
                        format, os);
        } else if (cmd_table1->parsed()) {
            Method meth = *fusible::method_from_name(table1_method);
            auto rows = engine.table1(table1_nmax, meth);
            if (format == "json") {
                ojson arr = ojson::array();
                for (auto [n, e] : rows) arr.push_back(ojson{{"n", n}, {"exponent", e}});
                os << ojson{{"command", "table1"},
                            {"method", table1_method},
                            {"conjecture_assumed", meth == Method::Conjecture},
                            {"rows", arr},
                            {"budgets", budgets_json(engine.budgets())}}
                          .dump(2)
                   << "\n";
            } else {
                os << "n,exponent\n";
                for (auto [n, e] : rows) os << n << ',' << e << "\n";
            }
        } else if (cmd_enum->parsed()) {
            std::optional<Rational> lo, hi;
            if (cmd_enum->count("--min")) lo = fusible::parse_rational(enum_min);
            if (cmd_enum->count("--max")) hi = fusible::parse_rational(enum_max);
            ValueLevels lv = fusible::enumerate_levels(enum_depth, budgets.enumeration_cap);
            std::ofstream file;
            std::ostream* sink = &os;
            if (!enum_out.empty()) {
                file.open(enum_out);
                if (!file) throw fusible::Error("cannot open " + enum_out + " for writing");
                sink = &file;
            }
            if (format == "json") {
                ojson arr = ojson::array();
                for (const LevelEntry& e : lv.entries()) {
                    if (lo && e.value < *lo) continue;
                    if (hi && *hi < e.value) continue;
                    arr.push_back(ojson{{"value", fusible::format_rational(e.value)},
                                        {"min_depth", e.min_depth()},
                                        {"max_depth_observed", e.max_depth_observed()}});
                }
                *sink << ojson{{"command", "enumerate"},
                               {"depth", enum_depth},
                               {"count", arr.size()},
                               {"entries", arr},
                               {"budgets", budgets_json(engine.budgets())}}
                             .dump(2)
                      << "\n";
            } else {
                levels_csv(lv, lo, hi, *sink);
            }
        } else if (cmd_g->parsed()) {
            GStrategy strat =
                g_strategy == "conjecture" ? GStrategy::ConjectureBased : GStrategy::BruteForce;
            Rational v = fusible::g_compute(g_n, strat, engine);
            emit_scalar({"n,strategy,g",
                         std::to_string(g_n) + "," + g_strategy + "," +
                             fusible::format_rational(v),
                         annotate(v) + (strat == GStrategy::ConjectureBased
                                            ? " (conjecture assumed)"
                                            : ""),
                         ojson{{"command", "g"},
                               {"n", g_n},
                               {"strategy", g_strategy},
                               {"conjecture_assumed", strat == GStrategy::ConjectureBased},
                               {"result", fusible::format_rational(v)},
                               {"budgets", budgets_json(engine.budgets())}}},
                        format, os);
        } else if (cmd_dup->parsed()) {
            Rational a = fusible::parse_rational(dup_a);
            int depth = dup_depth;
            if (!cmd_dup->count("--depth"))
                depth = static_cast<int>(std::max<long>(engine.depth_of_fusible(a) - 1, 0));
            ValueLevels lv = fusible::enumerate_levels(depth, budgets.enumeration_cap);
            Engine::DupResult res = engine.dup_count(a, lv);
            if (format == "json") {
                ojson arr = ojson::array();
                for (const auto& [b, c] : res.witnesses)
                    arr.push_back(ojson::array(
                        {fusible::format_rational(b), fusible::format_rational(c)}));
                os << ojson{{"command", "dup"},
                            {"a", fusible::format_rational(a)},
                            {"depth", depth},
                            {"count", res.count},
                            {"witnesses", arr},
                            {"budgets", budgets_json(engine.budgets())}}
                          .dump(2)
                   << "\n";
            } else if (format == "csv") {
                os << "b,c\n";
                for (const auto& [b, c] : res.witnesses)
                    os << fusible::format_rational(b) << ',' << fusible::format_rational(c)
                       << "\n";
            } else {
                os << res.count << "\n";
                for (const auto& [b, c] : res.witnesses)
                    os << fusible::format_rational(b) << " ~ " << fusible::format_rational(c)
                       << "\n";
            }
        } else if (cmd_ord->parsed()) {
            OrdContext ctx(engine);
            if (cmd_ord_of->parsed()) {
                Rational x = fusible::parse_rational(ord_of_x);
                CnfOrdinal alpha = ctx.ord_of(x);
                std::string text = fusible::format_ordinal(alpha);
                emit_scalar({"x,ordinal,conjecture_assumed",
                             fusible::format_rational(x) + "," + csv_field(text) + ",true",
                             text + " (conjecture assumed)",
                             ojson{{"command", "ordinal of"},
                                   {"x", fusible::format_rational(x)},
                                   {"result", text},
                                   {"conjecture_assumed", true},
                                   {"budgets", budgets_json(engine.budgets())}}},
                            format, os);
            } else if (cmd_ord_num->parsed()) {
                CnfOrdinal alpha = fusible::parse_ordinal(ord_num_cnf);
                Rational x = ctx.num_of(alpha);
                emit_scalar({"ordinal,value,conjecture_assumed",
                             csv_field(fusible::format_ordinal(alpha)) + "," +
                                 fusible::format_rational(x) + ",true",
                             annotate(x) + " (conjecture assumed)",
                             ojson{{"command", "ordinal num"},
                                   {"ordinal", fusible::format_ordinal(alpha)},
                                   {"result", fusible::format_rational(x)},
                                   {"pow2", pow2_or_null(x)},
                                   {"conjecture_assumed", true},
                                   {"budgets", budgets_json(engine.budgets())}}},
                            format, os);
            } else if (cmd_ord_fs->parsed()) {
                Rational x = fusible::parse_rational(ord_fs_x);
                CnfOrdinal alpha = ctx.fs_paper(x, ord_fs_n);
                std::string text = fusible::format_ordinal(alpha);
                emit_scalar({"x,n,ordinal,conjecture_assumed",
                             fusible::format_rational(x) + "," + std::to_string(ord_fs_n) + "," +
                                 csv_field(text) + ",true",
                             text + " (conjecture assumed)",
                             ojson{{"command", "ordinal fs"},
                                   {"x", fusible::format_rational(x)},
                                   {"n", ord_fs_n},
                                   {"result", text},
                                   {"conjecture_assumed", true},
                                   {"budgets", budgets_json(engine.budgets())}}},
                            format, os);
            } else {
                CnfOrdinal alpha = fusible::parse_ordinal(ord_exc_cnf);
                std::uint64_t k = ctx.exc_of(alpha);
                emit_scalar({"ordinal,exc,conjecture_assumed",
                             csv_field(fusible::format_ordinal(alpha)) + "," +
                                 std::to_string(k) + ",true",
                             std::to_string(k) + " (conjecture assumed)",
                             ojson{{"command", "ordinal exc"},
                                   {"ordinal", fusible::format_ordinal(alpha)},
                                   {"result", k},
                                   {"conjecture_assumed", true},
                                   {"budgets", budgets_json(engine.budgets())}}},
                            format, os);
            }
        } else if (cmd_hier->parsed()) {
            OrdContext ctx(engine);
            CnfOrdinal alpha = fusible::parse_ordinal(hier_cnf);
            OrdContext::FMode mode = hier_mode == "definition" ? OrdContext::FMode::Definition
                                                               : OrdContext::FMode::Recurrence;
            std::uint64_t v = ctx.f_hier(alpha, hier_n, mode);
            emit_scalar({"ordinal,n,mode,value,conjecture_assumed",
                         csv_field(fusible::format_ordinal(alpha)) + "," +
                             std::to_string(hier_n) + "," + hier_mode + "," +
                             std::to_string(v) + ",true",
                         std::to_string(v) + " (conjecture assumed)",
                         ojson{{"command", "hierarchy"},
                               {"ordinal", fusible::format_ordinal(alpha)},
                               {"n", hier_n},
                               {"mode", hier_mode},
                               {"result", v},
                               {"conjecture_assumed", true},
                               {"budgets", budgets_json(engine.budgets())}}},
                        format, os);
        } else if (cmd_verify->parsed()) {
            std::vector<CheckReport> reports;
            std::string sub;
            if (cmd_v_cx->parsed()) {
                sub = "counterexample";
                reports.push_back(
                    fusible::verify_counterexample(engine, fusible::parse_rational(v_cx_gap)));
            } else if (cmd_v_ss->parsed()) {
                sub = "self-similarity";
                ValueLevels lv = fusible::enumerate_levels(v_ss_depth, budgets.enumeration_cap);
                std::vector<Rational> bases;
                if (cmd_v_ss->count("--a"))
                    bases.push_back(fusible::parse_rational(v_ss_a));
                else
                    bases = {Rational(0), Rational(1, 2), Rational(3, 4), Rational(1)};
                std::vector<int> bands;
                if (cmd_v_ss->count("--n"))
                    bands.push_back(v_ss_n);
                else
                    bands = {1, 2, 3};
                for (int n : bands)
                    for (const Rational& a : bases)
                        reports.push_back(fusible::verify_self_similarity(a, n, lv, engine));
            } else if (cmd_v_st->parsed()) {
                sub = "statements";
                ValueLevels lv = fusible::enumerate_levels(v_st_depth, budgets.enumeration_cap);
                reports = fusible::verify_statements(lv, engine);
            } else if (cmd_v_cross->parsed()) {
                sub = "cross";
                ValueLevels lv = fusible::enumerate_levels(v_cross_depth, budgets.enumeration_cap);
                reports.push_back(
                    fusible::cross_validate(lv, fusible::parse_rational(v_cross_xmax), engine));
            } else {
                sub = "closure";
                ValueLevels lv =
                    fusible::enumerate_levels(v_cl_pairs_depth, budgets.enumeration_cap);
                std::vector<std::pair<Rational, Rational>> sample;
                const auto& entries = lv.entries();
                for (std::size_t i = 0; i < entries.size(); ++i)
                    for (std::size_t j = i; j < entries.size(); ++j)
                        sample.emplace_back(entries[i].value, entries[j].value);
                reports.push_back(fusible::closure_scan(lv, sample, v_cl_cap, engine));
            }
            code = emit_reports(sub, reports, format, os);
        }

        if (!cache_path.empty()) engine.save_cache(cache_path);
        emit_cost(engine);
        return code;
    } catch (const fusible::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBudget;
    } catch (const fusible::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
