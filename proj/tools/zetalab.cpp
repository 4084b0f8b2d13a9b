// zetalab: command-line front door for the critical-line laboratory.
//
// Subcommands: gram z theta t1 t2 hl ladder limit fermat-scan ortho-gram mr report
// Exit codes: 0 ok, 2 domain error, 3 convergence error, 64 usage error.

#include "CLI11.hpp"
#include "json.hpp"

#include "zetalab/fermat.hpp"
#include "zetalab/ortho.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace zetalab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// All floating output carries 12 significant digits so regression diffs mean
// something.
std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct RunConfig {
    std::string cache_dir;
    std::string format = "csv"; // csv | json
    std::string out;            // empty = stdout
    double tol = 1e-10;
    int correction_order = 4;
    unsigned quad_order = 8;
    std::string backend = "smooth"; // smooth | cumulative
    double c0 = 0.0;

    fs::path resolved_cache_dir() const {
        if (!cache_dir.empty()) return cache_dir; // flag wins over environment
        if (const char* env = std::getenv("ZETALAB_CACHE_DIR")) return env;
        return fs::path(".") / "zetalab-cache";
    }
};

// One simple table: named columns, rows of preformatted cells.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void emit(std::ostream& os, const std::string& format) const {
        if (format == "json") {
            json arr = json::array();
            for (const auto& r : rows) {
                json obj;
                for (std::size_t i = 0; i < columns.size(); ++i) {
                    // JSON mirrors CSV fields exactly; numbers stay numbers.
                    try {
                        std::size_t pos = 0;
                        double v = std::stod(r[i], &pos);
                        if (pos == r[i].size()) {
                            obj[columns[i]] = v;
                            continue;
                        }
                    } catch (...) {
                    }
                    obj[columns[i]] = r[i];
                }
                arr.push_back(obj);
            }
            os << arr.dump(2) << "\n";
        } else {
            for (std::size_t i = 0; i < columns.size(); ++i)
                os << columns[i] << (i + 1 < columns.size() ? "," : "\n");
            for (const auto& r : rows) {
                for (std::size_t i = 0; i < r.size(); ++i)
                    os << r[i] << (i + 1 < r.size() ? "," : "\n");
            }
        }
    }
};

void write_table(const Table& t, const RunConfig& rc) {
    if (rc.out.empty()) {
        t.emit(std::cout, rc.format);
    } else {
        std::ofstream os(rc.out, std::ios::trunc);
        if (!os) throw DomainError("cannot open output file: " + rc.out);
        t.emit(os, rc.format);
    }
}

// Shared lab state with disk-backed caches.
struct Lab {
    RunConfig rc;
    GramTable gram;
    std::optional<HLIntegral> hl;
    std::optional<TitchmarshSums> sums;
    LadderContext ctx;
    fs::path gram_cache, hl_cache;

    explicit Lab(const RunConfig& cfg)
        : rc(cfg), gram([&] {
              ZetaEvalConfig zc;
              zc.correction_order = cfg.correction_order;
              return zc;
          }()) {
        fs::path dir = rc.resolved_cache_dir();
        fs::create_directories(dir);
        gram_cache = dir / "gram.bin";
        hl_cache = dir / "hl.bin"; // checkpoints, informational
        if (fs::exists(gram_cache)) gram.load(gram_cache.string());
        hl.emplace(gram, rc.quad_order);
        sums.emplace(gram);
        ctx.c0 = rc.c0;
        ctx.backend =
            rc.backend == "cumulative" ? LadderBackend::Cumulative : LadderBackend::Smooth;
        ctx.tol_rel = rc.tol;
        ctx.gram = &gram;
        ctx.hl = &*hl;
    }

    ~Lab() {
        // Persist whatever the run extended.
        try {
            if (gram.size() > 0) gram.save(gram_cache.string());
            hl->save_checkpoints(hl_cache.string());
        } catch (...) {
        }
    }
};

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw CLI::ValidationError("empty numeric list");
    return out;
}

Table convergence_table(const std::vector<ConvergenceRow>& rows) {
    Table t;
    t.columns = {"tau", "ratio", "target", "gap"};
    for (const auto& r : rows)
        t.rows.push_back({num(r.tau), num(r.ratio), num(r.target), num(r.gap)});
    return t;
}

ConditionKind parse_kind(const std::string& kind) {
    if (kind == "zeta") return ConditionKind::Zeta;
    if (kind == "t1") return ConditionKind::T1;
    if (kind == "t2") return ConditionKind::T2;
    throw CLI::ValidationError("unknown kind: " + kind);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"zetalab: Gram points, Titchmarsh sums, the Hardy-Littlewood "
                 "integral, ladder iterations and generated orthogonal systems"};
    app.require_subcommand(1);

    RunConfig rc;
    app.add_option("--cache-dir", rc.cache_dir,
                   "cache directory (overrides ZETALAB_CACHE_DIR)");
    app.add_option("--format", rc.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", rc.out, "write the table to this file instead of stdout");
    app.add_option("--tol", rc.tol, "relative tolerance for ladder inversions");
    app.add_option("--correction-order", rc.correction_order,
                   "number of Riemann-Siegel correction terms (0..7)");
    app.add_option("--quad-order", rc.quad_order, "Gauss-Legendre nodes per panel");
    app.add_option("--backend", rc.backend, "ladder backend")
        ->check(CLI::IsMember({"smooth", "cumulative"}));
    app.add_option("--c0", rc.c0, "additive constant of the ladder main value");

    // gram
    auto* cmd_gram = app.add_subcommand("gram", "Gram points t_nu with Z(t_nu)");
    std::uint64_t g_nu = 0;
    double g_X = 0.0;
    bool g_count = false;
    cmd_gram->add_option("--nu", g_nu, "highest index to emit");
    cmd_gram->add_option("--X", g_X, "emit all Gram points with t <= X");
    cmd_gram->add_flag("--count", g_count, "with --X: emit only the count N(X)");

    // z / theta
    auto* cmd_z = app.add_subcommand("z", "Riemann-Siegel Z(t)");
    auto* cmd_theta = app.add_subcommand("theta", "Riemann-Siegel theta(t)");
    std::string zt_list;
    cmd_z->add_option("--t", zt_list, "t value or comma-separated list")->required();
    std::string th_list;
    cmd_theta->add_option("--t", th_list, "t value or comma-separated list")->required();

    // t1 / t2
    auto* cmd_t1 = app.add_subcommand("t1", "first Titchmarsh sum vs its main term");
    auto* cmd_t2 = app.add_subcommand("t2", "second Titchmarsh sum vs its main term");
    std::string t1_xs, t2_xs;
    cmd_t1->add_option("--X", t1_xs, "height or comma-separated list")->required();
    cmd_t2->add_option("--X", t2_xs, "height or comma-separated list")->required();

    // hl
    auto* cmd_hl = app.add_subcommand("hl", "Hardy-Littlewood integral I(T)");
    std::string hl_ts;
    cmd_hl->add_option("--T", hl_ts, "height or comma-separated list")->required();

    // ladder
    auto* cmd_ladder = app.add_subcommand("ladder", "phi1 iteration chain as r,T_r");
    double l_T = 0.0;
    unsigned l_r = 1;
    std::string l_dir = "reverse";
    cmd_ladder->add_option("--T", l_T, "base height")->required();
    cmd_ladder->add_option("--r", l_r, "number of iterations");
    cmd_ladder->add_option("--direction", l_dir, "forward or reverse")
        ->check(CLI::IsMember({"forward", "reverse"}));

    // limit
    auto* cmd_limit = app.add_subcommand("limit", "increment-ratio limit experiment");
    std::string li_kind = "zeta", li_taus = "1e3,1e4,1e5";
    double li_x = 1.0;
    cmd_limit->add_option("--kind", li_kind, "zeta, t1 or t2")
        ->check(CLI::IsMember({"zeta", "t1", "t2"}));
    cmd_limit->add_option("--x", li_x, "target parameter x > 0");
    cmd_limit->add_option("--tau", li_taus, "ascending comma-separated tau list");

    // fermat-scan
    auto* cmd_scan = app.add_subcommand("fermat-scan", "exhaustive unit-value scan");
    unsigned fs_xyz = 20, fs_n = 7;
    cmd_scan->add_option("--max-xyz", fs_xyz, "bound on x, y, z");
    cmd_scan->add_option("--max-n", fs_n, "bound on the exponent (>= 3)");

    // ortho-gram
    auto* cmd_ortho = app.add_subcommand("ortho-gram", "Gram matrix of a generated system");
    double og_T = 1e4;
    std::vector<unsigned> og_p = {1};
    unsigned og_nmax = 6, og_quad = 512;
    std::string og_norm = "empirical";
    cmd_ortho->add_option("--T", og_T, "base height");
    cmd_ortho->add_option("--p", og_p, "generation depths p_1 .. p_s");
    cmd_ortho->add_option("--nmax", og_nmax, "highest polynomial degree");
    cmd_ortho->add_option("--quad-order", og_quad, "quadrature order (>= 64)");
    cmd_ortho->add_option("--normalization", og_norm, "interval or empirical")
        ->check(CLI::IsMember({"interval", "empirical"}));

    // mr
    auto* cmd_mr = app.add_subcommand("mr", "Menshov-Rademacher partial-sum demo");
    double mr_decay = 1.1, mr_T = 1e4;
    unsigned mr_M = 64, mr_points = 10;
    cmd_mr->add_option("--decay", mr_decay, "power-law exponent of a_n = (n+1)^-decay");
    cmd_mr->add_option("--M", mr_M, "largest partial-sum index (<= 64)");
    cmd_mr->add_option("--points", mr_points, "number of sampled t points");
    cmd_mr->add_option("--T", mr_T, "base height of the generated system");

    // report
    auto* cmd_report = app.add_subcommand("report", "bundled experiment tables");
    std::string rp_suite;
    cmd_report->add_option("--suite", rp_suite, "asymptotics or limits")->required();

    // Global options may appear after the subcommand name.
    for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        Lab lab(rc);
        Table table;

        if (cmd_gram->parsed()) {
            if (g_count) {
                if (g_X <= 0.0) throw DomainError("gram --count requires --X");
                table.columns = {"X", "N"};
                table.rows.push_back({num(g_X), std::to_string(lab.gram.count_below(g_X))});
            } else {
                table.columns = {"nu", "t", "z"};
                std::uint64_t top;
                if (g_X > 0.0)
                    top = lab.gram.count_below(g_X) - 1;
                else
                    top = g_nu;
                for (std::uint64_t nu = 0; nu <= top; ++nu)
                    table.rows.push_back(
                        {std::to_string(nu), num(lab.gram.t(nu)), num(lab.gram.z(nu))});
            }
        } else if (cmd_z->parsed() || cmd_theta->parsed()) {
            bool want_z = cmd_z->parsed();
            table.columns = want_z ? std::vector<std::string>{"t", "Z"}
                                   : std::vector<std::string>{"t", "theta"};
            for (double t : parse_list(want_z ? zt_list : th_list)) {
                double v = want_z ? riemann_siegel_Z(t, lab.gram.config()) : theta(t);
                table.rows.push_back({num(t), num(v)});
            }
        } else if (cmd_t1->parsed() || cmd_t2->parsed()) {
            auto rows = lab.sums->asymptotic_report(parse_list(cmd_t1->parsed() ? t1_xs : t2_xs));
            const char* keep = cmd_t1->parsed() ? "t1" : "t2";
            table.columns = {"X", "N", "kind", "sum", "main", "residual", "normalized"};
            for (const auto& r : rows) {
                if (r.kind != keep) continue;
                table.rows.push_back({num(r.X), std::to_string(r.N), r.kind, num(r.sum),
                                      num(r.main), num(r.residual), num(r.normalized)});
            }
        } else if (cmd_hl->parsed()) {
            table.columns = {"T", "I", "main", "residual"};
            for (double T : parse_list(hl_ts)) {
                double I = lab.hl->integral(T);
                double main = T * std::log(T / kTwoPi) + (2.0 * kEulerGamma - 1.0) * T;
                table.rows.push_back({num(T), num(I), num(main), num(I - main)});
            }
        } else if (cmd_ladder->parsed()) {
            ChainDirection dir =
                l_dir == "forward" ? ChainDirection::Forward : ChainDirection::Reverse;
            IterationChain chain = iterate(l_T, l_r, dir, lab.ctx);
            table.columns = {"r", "T_r"};
            for (std::size_t r = 0; r < chain.points.size(); ++r)
                table.rows.push_back({std::to_string(r), num(chain.points[r])});
            if (chain.truncated)
                std::cerr << "note: forward chain truncated at the domain floor\n";
        } else if (cmd_limit->parsed()) {
            std::vector<double> taus = parse_list(li_taus);
            if (!(li_x > 0.0)) throw DomainError("limit: x must be positive");
            ConditionKind kind = parse_kind(li_kind);
            double target = condition_target(kind, li_x, lab.ctx);
            std::vector<ConvergenceRow> rows;
            for (double tau : taus) {
                double ratio;
                switch (kind) {
                case ConditionKind::Zeta:
                    ratio = hl_increment_ratio(li_x, tau, lab.ctx);
                    break;
                case ConditionKind::T1:
                    ratio = t1_increment_ratio(li_x, tau, lab.ctx, *lab.sums);
                    break;
                default:
                    ratio = t2_increment_ratio(li_x, tau, lab.ctx, *lab.sums);
                    break;
                }
                rows.push_back({tau, ratio, target, std::abs(ratio - target)});
            }
            table = convergence_table(rows);
        } else if (cmd_scan->parsed()) {
            auto hits = fermat_scan(fs_xyz, fs_n);
            table.columns = {"x", "y", "z", "n", "value"};
            for (const auto& fr : hits)
                table.rows.push_back({fr.x().get_str(), fr.y().get_str(), fr.z().get_str(),
                                      std::to_string(fr.n()), fr.value().get_str()});
            std::cerr << "scanned x,y,z <= " << fs_xyz << ", 3 <= n <= " << fs_n << ": "
                      << hits.size() << " unit values\n";
        } else if (cmd_ortho->parsed()) {
            GenerationSpec spec;
            spec.depths = og_p;
            spec.T = og_T;
            spec.n_max = og_nmax;
            LadderContext octx = lab.ctx;
            octx.backend = LadderBackend::Cumulative; // orthogonality needs phi1' = Z~^2
            GeneratedSystem sys(spec, octx);
            auto res = sys.gram_matrix(og_quad, og_norm == "interval"
                                                    ? NormalizationMode::IntervalLength
                                                    : NormalizationMode::Empirical);
            table.columns = {"i", "j", "value"};
            for (unsigned i = 0; i <= og_nmax; ++i)
                for (unsigned j = 0; j <= og_nmax; ++j)
                    table.rows.push_back(
                        {std::to_string(i), std::to_string(j), num(res.m[i][j])});
            if (res.quadrature_warning)
                std::cerr << "warning: Gram entries moved > 1e-4 under quadrature doubling\n";
        } else if (cmd_mr->parsed()) {
            if (mr_M > 64) throw DomainError("mr: practical cap is M <= 64");
            GenerationSpec spec;
            spec.depths = {1};
            spec.T = mr_T;
            LadderContext octx = lab.ctx;
            octx.backend = LadderBackend::Cumulative;
            GeneratedSystem sys(spec, octx);
            std::vector<double> coeffs(std::size_t(mr_M) + 1);
            for (std::size_t n = 0; n < coeffs.size(); ++n)
                coeffs[n] = std::pow(double(n + 1), -mr_decay);
            std::cerr << "mr condition (decay " << mr_decay
                      << "): " << (mr_condition(coeffs, mr_decay) ? "holds" : "fails") << "\n";
            table.columns = {"t", "M", "S_M"};
            for (unsigned i = 0; i < mr_points; ++i) {
                double t = mr_points == 1 ? 0.0 : -0.95 + 1.9 * i / (mr_points - 1);
                for (unsigned M = 8; M <= mr_M; M *= 2)
                    table.rows.push_back(
                        {num(t), std::to_string(M), num(sys.mr_partial_sum(coeffs, t, M))});
            }
        } else if (cmd_report->parsed()) {
            if (rp_suite == "asymptotics") {
                table.columns = {"X", "kind", "value", "main", "residual", "normalized", "pass"};
                for (double X : {1e3, 1e4, 1e5}) {
                    auto rows = lab.sums->asymptotic_report({X});
                    for (const auto& r : rows) {
                        bool pass = std::abs(r.normalized) <= 5.0;
                        table.rows.push_back({num(r.X), r.kind, num(r.sum), num(r.main),
                                              num(r.residual), num(r.normalized),
                                              pass ? "1" : "0"});
                    }
                    double I = lab.hl->integral(X);
                    double main = X * std::log(X / kTwoPi) + (2.0 * kEulerGamma - 1.0) * X;
                    double normalized = (I - main) / std::pow(X, 0.44);
                    bool pass = std::abs(normalized) <= 5.0;
                    table.rows.push_back({num(X), "hl", num(I), num(main), num(I - main),
                                          num(normalized), pass ? "1" : "0"});
                }
            } else if (rp_suite == "limits") {
                table.columns = {"kind", "x", "tau", "ratio", "target", "gap", "pass"};
                for (const char* kind_name : {"zeta", "t1", "t2"}) {
                    ConditionKind kind = parse_kind(kind_name);
                    for (double x : {1.0, 2.0}) {
                        double target = condition_target(kind, x, lab.ctx);
                        for (double tau : {1e3, 1e4}) {
                            double ratio;
                            switch (kind) {
                            case ConditionKind::Zeta:
                                ratio = hl_increment_ratio(x, tau, lab.ctx);
                                break;
                            case ConditionKind::T1:
                                ratio = t1_increment_ratio(x, tau, lab.ctx, *lab.sums);
                                break;
                            default:
                                ratio = t2_increment_ratio(x, tau, lab.ctx, *lab.sums);
                                break;
                            }
                            double gap = std::abs(ratio - target);
                            bool pass = gap <= 0.25 * target;
                            table.rows.push_back({kind_name, num(x), num(tau), num(ratio),
                                                  num(target), num(gap), pass ? "1" : "0"});
                        }
                    }
                }
            } else {
                std::cerr << "unknown suite: '" << rp_suite << "' (use asymptotics or limits)\n";
                return 64;
            }
        }

        write_table(table, rc);
        return 0;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return 3;
    }
}
