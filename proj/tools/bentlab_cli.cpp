// Command-line front end: region scans, f scans, epsilon thresholds,
// 2-positivity verdicts, the reduction pipeline and separability
// certificates. CSV output uses '.' decimals, ',' separators and 17
// significant digits; every file ends with a metadata comment carrying the
// version and seed. Progress goes to stderr, data to files, exit codes:
// 0 success, 2 negative verdict, 1 error.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "bentlab/distill.hpp"
#include "bentlab/json_io.hpp"
#include "bentlab/posmaps.hpp"
#include "bentlab/reduction.hpp"
#include "bentlab/sepcert.hpp"

namespace {

constexpr const char* kBuildId = "bentlab-0.1.0";

using bentlab::BipartiteState;
using bentlab::CanonicalParams;
using bentlab::EpsParams;
using bentlab::Mat;
using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw bentlab::Error("cannot open output file: " + path);
    out << body;
    if (!out) throw bentlab::Error("write failed: " + path);
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bentlab::Error("cannot open input file: " + path);
    json j;
    in >> j;
    return j;
}

std::string csv_meta(std::uint64_t seed) {
    return "# version=" + std::string(kBuildId) + " seed=" + std::to_string(seed) +
           "\n";
}

json run_meta(std::uint64_t seed, const Stopwatch& sw) {
    return json{{"seed", seed}, {"build", kBuildId}, {"wallTimeSec", sw.seconds()}};
}

struct GridSpec {
    int nb = 0;
    int nc = 0;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    const auto x = s.find('x');
    if (x == std::string::npos) throw bentlab::InvalidInput("grid must be NxM");
    g.nb = std::stoi(s.substr(0, x));
    g.nc = std::stoi(s.substr(x + 1));
    if (g.nb < 0 || g.nc < 0) throw bentlab::InvalidInput("grid sizes must be >= 0");
    return g;
}

struct EpsGrid {
    double lo = 0.0, hi = 0.0, step = 0.0;
};

EpsGrid parse_eps_grid(const std::string& s) {
    EpsGrid g;
    const auto a = s.find(':');
    const auto b = s.find(':', a + 1);
    if (a == std::string::npos || b == std::string::npos)
        throw bentlab::InvalidInput("eps-grid must be lo:hi:step");
    g.lo = std::stod(s.substr(0, a));
    g.hi = std::stod(s.substr(a + 1, b - a - 1));
    g.step = std::stod(s.substr(b + 1));
    if (g.step <= 0.0 || g.hi < g.lo)
        throw bentlab::InvalidInput("eps-grid: need step > 0 and hi >= lo");
    return g;
}

int cmd_region_map(int d, const GridSpec& grid, bool with_f1, int restarts,
                   std::uint64_t seed, const std::string& out,
                   const std::string& points_out) {
    std::string csv = "b,c,label,lambda0,lambda1,lambda2,TrHrho";
    if (with_f1) csv += ",f1min";
    csv += "\n";
    const double bmax = 2.0 / (double(d) * double(d - 1));
    const double cmax = 2.0 / (double(d) * double(d));
    for (int ib = 0; ib < grid.nb; ++ib) {
        const double b = grid.nb == 1 ? 0.0 : bmax * double(ib) / double(grid.nb - 1);
        for (int ic = 0; ic < grid.nc; ++ic) {
            const double c =
                grid.nc == 1 ? 0.0 : cmax * double(ic) / double(grid.nc - 1);
            const CanonicalParams p{d, b, c};
            const auto s = bentlab::pt_spectrum(p);
            csv += fmt(b) + "," + fmt(c) + "," +
                   bentlab::to_string(bentlab::classify_region(p)) + "," +
                   fmt(s.lambda0) + "," + fmt(s.lambda1) + "," + fmt(s.lambda2) +
                   "," + fmt(s.lambda0);
            if (with_f1) {
                double f1 = std::numeric_limits<double>::quiet_NaN();
                if (p.physical()) {
                    bentlab::SeesawOptions opts;
                    opts.restarts = restarts;
                    opts.seed = seed;
                    opts.warm_starts = bentlab::witness_planes(d);
                    f1 = bentlab::min_rank2(
                             bentlab::partial_transpose(bentlab::build_rho_bc(p))
                                 .mat(),
                             d, d, opts)
                             .min_value;
                }
                csv += "," + fmt(f1);
            }
            csv += "\n";
        }
        std::cerr << "region-map: row " << (ib + 1) << "/" << grid.nb << "\r";
    }
    std::cerr << "\n";
    csv += csv_meta(seed);
    write_file(out, csv);
    if (!points_out.empty()) {
        std::string pts = "label,b,c\n";
        for (const auto& rp : bentlab::region_points(d))
            pts += std::string(1, rp.label) + "," + fmt(rp.b) + "," + fmt(rp.c) + "\n";
        pts += csv_meta(seed);
        write_file(points_out, pts);
    }
    return 0;
}

int cmd_fscan(int d, double c, int n, const EpsGrid& grid, int restarts,
              std::uint64_t seed, bool stress, const std::string& out) {
    const auto caps = bentlab::SizeCaps::resolve(stress);
    bentlab::SeesawOptions opts;
    opts.restarts = restarts;
    opts.seed = seed;
    std::string csv = "eps,minValue,converged\n";
    int row = 0;
    for (double eps = grid.lo; eps <= grid.hi + 1e-15; eps += grid.step) {
        const auto rep = bentlab::f_value(EpsParams{d, c, eps}, n, opts, caps);
        csv += fmt(eps) + "," + fmt(rep.min_value) + "," +
               (rep.converged ? "1" : "0") + "\n";
        std::cerr << "fscan: eps " << eps << " done (" << ++row << ")\r";
    }
    std::cerr << "\n";
    csv += csv_meta(seed);
    write_file(out, csv);
    return 0;
}

int cmd_threshold(int d, double c, int n, int restarts, std::uint64_t seed,
                  bool stress, const std::string& out, const Stopwatch& sw) {
    const auto caps = bentlab::SizeCaps::resolve(stress);
    bentlab::SeesawOptions opts;
    opts.restarts = restarts;
    opts.seed = seed;
    const auto r = bentlab::eps_threshold(d, c, n, opts, 1e-5, -1.0, caps);
    json j = run_meta(seed, sw);
    j["d"] = d;
    j["c"] = c;
    j["n"] = n;
    j["eps0"] = r.eps0;
    j["bracketLo"] = r.lo;
    j["bracketHi"] = r.hi;
    j["evaluations"] = r.evaluations;
    write_file(out, j.dump(2) + "\n");
    return 0;
}

int cmd_two_pos(const std::string& map_path, int k, int restarts,
                std::uint64_t seed, const std::string& out, const Stopwatch& sw) {
    const json jin = read_json(map_path);
    const Mat choi = bentlab::mat_from_json(jin);
    const int dIn = jin.at("dIn").get<int>();
    const int dOut = jin.at("dOut").get<int>();
    const bentlab::ChoiMap map(choi, dIn, dOut);
    bentlab::SeesawOptions opts;
    opts.restarts = restarts;
    opts.seed = seed;
    const auto verdict = k == 2 ? bentlab::is_2_positive_maxent(map, opts)
                                : bentlab::is_k_positive(map, k, opts);
    json j = run_meta(seed, sw);
    j["k"] = k;
    j["margin"] = verdict.margin;
    j["verdict"] = verdict.violated() ? "ViolationFound" : "NoViolationFound";
    // A no-violation answer from a nonconvex search is evidence, not proof.
    j["certified"] = verdict.violated();
    if (verdict.witness) j["witness"] = bentlab::vec_to_json(*verdict.witness);
    write_file(out, j.dump(2) + "\n");
    return 0;
}

int cmd_reduce(const std::string& in, const std::string& out,
               const std::string& trace_path, const Stopwatch& sw) {
    const BipartiteState rho = bentlab::state_from_json(read_json(in));
    const auto result = bentlab::reduce_to_canonical(rho);
    json j = run_meta(0, sw);
    j["params"] = bentlab::params_to_json(result.params);
    j["lambda0"] = bentlab::pt_spectrum(result.params).lambda0;
    write_file(out, j.dump(2) + "\n");
    if (!trace_path.empty()) {
        std::string csv = "stage,TrHrho,trace,minEig\n";
        for (const auto& st : result.trace.stages)
            csv += st.name + "," + fmt(st.tr_H_rho) + "," + fmt(st.trace) + "," +
                   fmt(st.min_eig) + "\n";
        csv += csv_meta(0);
        write_file(trace_path, csv);
    }
    return 0;
}

int cmd_verify(int d, const std::string& point, double b, double c, double tol,
               const std::string& out, const std::string& ensemble_out,
               const Stopwatch& sw) {
    CanonicalParams p{d, b, c};
    bentlab::ProductEnsemble ensemble;
    if (!point.empty()) {
        const auto rp = bentlab::region_point(d, point[0]);
        p = CanonicalParams{d, rp.b, rp.c};
        switch (point[0]) {
            case 'A': ensemble = bentlab::decomposition_A(d); break;
            case 'B': ensemble = bentlab::decomposition_B(d); break;
            case 'J': ensemble = bentlab::decomposition_J(d); break;
            case 'K': ensemble = bentlab::decomposition_K(d); break;
            default:
                throw bentlab::InvalidInput("verify: no certificate for point " +
                                            point);
        }
    } else {
        ensemble = bentlab::decompose_ppt_point(p);
    }
    const auto report =
        bentlab::verify_separable(ensemble, bentlab::build_rho_bc(p), tol);
    if (!ensemble_out.empty())
        write_file(ensemble_out, bentlab::ensemble_to_json(ensemble).dump() + "\n");
    json j = run_meta(0, sw);
    j["point"] = point.empty() ? json(nullptr) : json(point);
    j["b"] = p.b;
    j["c"] = p.c;
    j["members"] = ensemble.members.size();
    j["maxEntryError"] = report.max_entry_error;
    j["pass"] = report.pass;
    if (!out.empty()) write_file(out, j.dump(2) + "\n");
    std::cout << j.dump(2) << "\n";
    return report.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"canonical NPT state family: scans, reductions, certificates"};
    app.require_subcommand(1);

    int d = 3, n = 1, k = 2, restarts = 64;
    double c = 0.0, b = 0.0, tol = 1e-11;
    std::uint64_t seed = 0;
    bool stress = false, with_f1 = false;
    std::string out, points_out, trace_path, in_path, map_path, point, grid_s,
        eps_grid_s;

    auto* region = app.add_subcommand("region-map", "classified (b,c) grid as CSV");
    region->add_option("--d", d)->default_val(3);
    region->add_option("--grid", grid_s, "bN x cN, e.g. 100x100")->required();
    region->add_flag("--with-f1", with_f1, "add one-copy rank-two minimum");
    region->add_option("--restarts", restarts)->default_val(64);
    region->add_option("--seed", seed);
    region->add_option("--out", out)->required();
    region->add_option("--points-out", points_out, "corner catalog CSV");

    double eps_single = -1.0;
    auto* fscan = app.add_subcommand("fscan", "rank-two minimum over an eps grid");
    fscan->add_option("--d", d)->default_val(3);
    fscan->add_option("--c", c)->default_val(0.0);
    fscan->add_option("--n", n)->default_val(1);
    auto* grid_opt = fscan->add_option("--eps-grid", eps_grid_s, "lo:hi:step");
    fscan->add_option("--eps", eps_single, "single eps value")->excludes(grid_opt);
    fscan->add_option("--restarts", restarts)->default_val(64);
    fscan->add_option("--seed", seed)->required();
    fscan->add_flag("--stress", stress);
    fscan->add_option("--out", out)->required();

    auto* thresh = app.add_subcommand("threshold", "bisection for eps0(c,n)");
    thresh->add_option("--d", d)->default_val(3);
    thresh->add_option("--c", c)->default_val(0.0);
    thresh->add_option("--n", n)->default_val(1);
    thresh->add_option("--restarts", restarts)->default_val(64);
    thresh->add_option("--seed", seed)->required();
    thresh->add_flag("--stress", stress);
    thresh->add_option("--out", out)->required();

    auto* twopos = app.add_subcommand("two-pos", "k-positivity search on a Choi map");
    twopos->add_option("--map", map_path, "Choi JSON")->required();
    twopos->add_option("--k", k)->default_val(2);
    twopos->add_option("--restarts", restarts)->default_val(64);
    twopos->add_option("--seed", seed)->required();
    twopos->add_option("--out", out)->required();

    auto* reduce = app.add_subcommand("reduce", "NPT state -> canonical parameters");
    reduce->add_option("--in", in_path)->required();
    reduce->add_option("--out", out)->required();
    reduce->add_option("--trace", trace_path, "per-stage CSV");

    std::string ensemble_out;
    auto* verify = app.add_subcommand("verify", "separability certificate check");
    verify->add_option("--d", d)->default_val(3);
    verify->add_option("--point", point, "one of A,B,J,K");
    verify->add_option("--b", b);
    verify->add_option("--c", c);
    verify->add_option("--tol", tol)->default_val(1e-11);
    verify->add_option("--out", out);
    verify->add_option("--ensemble-out", ensemble_out, "certificate JSON");

    CLI11_PARSE(app, argc, argv);
    Stopwatch sw;
    try {
        if (region->parsed())
            return cmd_region_map(d, parse_grid(grid_s), with_f1, restarts, seed,
                                  out, points_out);
        if (fscan->parsed()) {
            EpsGrid grid;
            if (!eps_grid_s.empty()) {
                grid = parse_eps_grid(eps_grid_s);
            } else if (eps_single >= 0.0) {
                grid = EpsGrid{eps_single, eps_single, 1.0};
            } else {
                throw bentlab::InvalidInput("fscan: need --eps-grid or --eps");
            }
            return cmd_fscan(d, c, n, grid, restarts, seed, stress, out);
        }
        if (thresh->parsed())
            return cmd_threshold(d, c, n, restarts, seed, stress, out, sw);
        if (twopos->parsed())
            return cmd_two_pos(map_path, k, restarts, seed, out, sw);
        if (reduce->parsed()) return cmd_reduce(in_path, out, trace_path, sw);
        if (verify->parsed())
            return cmd_verify(d, point, b, c, tol, out, ensemble_out, sw);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
