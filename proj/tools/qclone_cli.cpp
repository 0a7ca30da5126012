// Command-line interface: boundary emission (CSV/SVG), verification battery,
// optimal-cloner reports and Monte Carlo twirl diagnostics.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "qclone/channel.hpp"
#include "qclone/cloner.hpp"
#include "qclone/optimizer.hpp"
#include "qclone/report.hpp"
#include "qclone/symmetry.hpp"
#include "qclone/tradeoff.hpp"
#include "qclone/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

using namespace qclone;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open output file: " + path);
    out << content;
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

std::string f17(double v) { return format_double17(v); }

int cmd_boundary(int d, const std::string& merit_str, int n, const std::string& out_prefix,
                 const std::string& format, std::uint64_t seed, std::string timestamp) {
    const auto kind = parse_merit(merit_str);
    if (!kind) {
        std::cerr << "error: unknown merit '" << merit_str
                  << "' (expected one of: F, one, two, inf, diamond)\n";
        return kExitUsage;
    }
    if (d < 2) {
        std::cerr << "error: d must be in [2,8], got " << d << "\n";
        return kExitUsage;
    }
    if (d > 8) {
        std::cerr << "warning: d=" << d << " exceeds the supported envelope, capping at 8\n";
        d = 8;
    }
    if (n < 2) {
        std::cerr << "error: n must be >= 2, got " << n << "\n";
        return kExitUsage;
    }
    if (format != "csv" && format != "svg" && format != "both") {
        std::cerr << "error: format must be csv|svg|both, got '" << format << "'\n";
        return kExitUsage;
    }

    RunManifest manifest;
    manifest.command = "boundary";
    manifest.d = d;
    manifest.merit = merit_name(*kind);
    manifest.samples = n;
    manifest.seed = seed;
    manifest.timestamp = timestamp.empty() ? RunManifest::now_utc_iso8601() : timestamp;

    const auto pts = sample_boundary(*kind, d, n);
    std::vector<CsvRow> rows;
    for (const auto& p : pts)
        rows.push_back({p.x1, p.x2, merit_name(*kind), p.corner ? "corner" : "boundary"});
    rows.push_back({0.0, 0.0, merit_name(*kind), "origin"});

    const std::string prefix =
        out_prefix.empty() ? ("boundary_d" + std::to_string(d) + "_" + merit_name(*kind))
                           : out_prefix;
    if (format == "csv" || format == "both") {
        write_file(prefix + ".csv", render_csv(manifest, rows));
        std::cout << "wrote " << prefix << ".csv\n";
    }
    if (format == "svg" || format == "both") {
        write_file(prefix + ".svg", render_boundary_svg(manifest, *kind, d, pts));
        std::cout << "wrote " << prefix << ".svg\n";
    }
    return kExitOk;
}

int cmd_verify(const std::vector<int>& dims, const std::string& level, std::uint64_t seed,
               double tolerance_override, bool has_override, const std::string& out_path) {
    VerifyOptions opt;
    if (!dims.empty()) opt.dims = dims;
    for (int d : opt.dims)
        if (d < 2 || d > 8) {
            std::cerr << "error: verify dimensions must be in [2,8]\n";
            return kExitUsage;
        }
    if (level != "default" && level != "deep") {
        std::cerr << "error: level must be default|deep\n";
        return kExitUsage;
    }
    opt.deep = (level == "deep");
    opt.seed = seed;
    if (has_override) opt.tolerance_override = tolerance_override;

    const auto results = run_verification(opt);
    std::ostringstream report;
    int failures = 0;
    for (const auto& r : results) {
        report << "check=" << r.name << " residual=" << f17(r.residual)
               << " tolerance=" << f17(r.tolerance) << " pass=" << (r.pass ? 1 : 0) << "\n";
        if (!r.pass) ++failures;
    }
    report << "checks_total=" << results.size() << " checks_failed=" << failures << "\n";
    std::cout << report.str();
    if (failures == 0) {
        std::cout << "all " << results.size() << " checks passed\n";
    } else {
        std::cout << failures << " of " << results.size() << " checks FAILED:\n";
        for (const auto& r : results)
            if (!r.pass)
                std::cout << "  " << r.name << ": residual " << f17(r.residual)
                          << " exceeds tolerance " << f17(r.tolerance) << "\n";
    }
    if (!out_path.empty()) write_file(out_path, report.str());
    return failures == 0 ? kExitOk : kExitVerifyFailure;
}

int cmd_optimal(int d, double alpha1, bool has_alpha1, double target_f1, bool has_target,
                const std::string& out_path) {
    if (d < 2 || d > 8) {
        std::cerr << "error: d must be in [2,8], got " << d << "\n";
        return kExitUsage;
    }
    if (has_alpha1 == has_target) {
        std::cerr << "error: give exactly one of --alpha1 or --target-f1\n";
        return kExitUsage;
    }
    const double dd = d;
    if (has_target) {
        const double lo = 1.0 / (dd * dd);
        if (target_f1 < lo || target_f1 > 1.0) {
            std::cerr << "error: target-f1 must lie in [" << f17(lo) << ", 1], got "
                      << f17(target_f1) << "\n";
            return kExitUsage;
        }
        alpha1 = std::sqrt((1.0 - target_f1) * dd * dd / (dd * dd - 1.0));
    }
    if (alpha1 < 0.0 || alpha1 > 1.0) {
        std::cerr << "error: alpha1 must lie in [0, 1] on the canonical branch, got "
                  << f17(alpha1) << "\n";
        return kExitUsage;
    }

    const CloneChannel cc = from_alpha1(alpha1, d);
    const PermCoeffs a = cloner_coeffs(cc.alpha1, cc.alpha2, d);
    const SBasisCoords s = a_to_s(a);
    const auto [ff1, ff2] = marginal_fidelities(cc);
    const FeasibilityReport rep = feasibility(a, d);
    const BlockReport block =
        verify_sdp_block(a, {cc.alpha1 * cc.alpha1, cc.alpha2 * cc.alpha2}, d);

    std::ostringstream out;
    out << "d=" << d << "\n";
    out << "alpha1=" << f17(cc.alpha1) << " alpha2=" << f17(cc.alpha2) << "\n";
    out << "a1=" << f17(a.a1) << " a2=" << f17(a.a2) << " a3=" << f17(a.a3) << " a4=" << f17(a.a4)
        << " a5=" << f17(a.a5.real()) << " a6=" << f17(a.a6.real()) << "\n";
    out << "s_plus=" << f17(s.s_plus) << " s_minus=" << f17(s.s_minus) << " s0=" << f17(s.s0)
        << " s1=" << f17(s.s1) << " s2=" << f17(s.s2) << " s3=" << f17(s.s3) << "\n";
    out << "F1=" << f17(ff1) << " F2=" << f17(ff2) << "\n";
    for (MeritKind k : {MeritKind::F, MeritKind::One, MeritKind::Two, MeritKind::Inf,
                        MeritKind::Diamond})
        out << "merit_" << merit_name(k) << "_1="
            << f17(merit_of_depolarizing(k, cc.alpha1 * cc.alpha1, d)) << " merit_"
            << merit_name(k) << "_2=" << f17(merit_of_depolarizing(k, cc.alpha2 * cc.alpha2, d))
            << "\n";
    out << "slack_sector_plus=" << f17(rep.sector_plus)
        << " slack_sector_minus=" << f17(rep.sector_minus)
        << (rep.sector_minus_vacuous ? " (vacuous at d=2)" : "")
        << " slack_block_trace=" << f17(rep.block_trace)
        << " residual_normalization=" << f17(rep.normalization)
        << " slack_block_det=" << f17(rep.block_det) << "\n";
    for (const auto& e : block.entries) out << "sdp_" << e.name << "=" << f17(e.slack) << "\n";
    out << "feasible=" << (rep.feasible(1e-9) ? 1 : 0) << "\n";

    std::cout << out.str();
    if (!out_path.empty()) write_file(out_path, out.str());
    return kExitOk;
}

int cmd_twirl(int d, int samples, std::uint64_t seed, const std::string& out_path,
              std::string timestamp) {
    if (d < 2 || d > 8) {
        std::cerr << "error: d must be in [2,8], got " << d << "\n";
        return kExitUsage;
    }
    if (samples < 1) {
        std::cerr << "error: samples must be >= 1, got " << samples << "\n";
        return kExitUsage;
    }

    RunManifest manifest;
    manifest.command = "twirl";
    manifest.d = d;
    manifest.merit = "F";
    manifest.samples = samples;
    manifest.seed = seed;
    manifest.timestamp = timestamp.empty() ? RunManifest::now_utc_iso8601() : timestamp;

    Rng rng(seed);
    const ChoiChannel ch = random_choi_channel(d, {d, d}, rng);
    const DenseOperator exact = project_to_commutant(ch.choi, d);

    // log-spaced checkpoints 1, 2, 5, 10, ... plus the final sample count
    std::vector<int> checkpoints;
    for (int base = 1; base <= samples; base *= 10)
        for (int m : {1, 2, 5})
            if (base * m <= samples) checkpoints.push_back(base * m);
    if (checkpoints.empty() || checkpoints.back() != samples) checkpoints.push_back(samples);

    std::ostringstream out;
    for (const auto& [k, v] : manifest.fields()) out << "# " << k << "=" << v << "\n";
    out << "samples,frobenius_distance\n";
    Matrix acc = Matrix::Zero(exact.dim(), exact.dim());
    size_t next = 0;
    for (int n = 1; n <= samples; ++n) {
        const Matrix u = haar_unitary(d, rng).mat;
        const DenseOperator ub{HilbertSpec::single(d), u.conjugate()};
        const DenseOperator uu{HilbertSpec::single(d), u};
        const Matrix w = tensor(tensor(ub, uu), uu).mat;
        acc += w * ch.choi.mat * w.adjoint();
        if (next < checkpoints.size() && n == checkpoints[next]) {
            const double dist = frobenius_norm(acc / static_cast<double>(n) - exact.mat);
            out << n << "," << f17(dist) << "\n";
            ++next;
        }
    }
    std::cout << out.str();
    if (!out_path.empty()) write_file(out_path, out.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"universal asymmetric 1->2 quantum cloning: optimal channels, "
                 "feasibility criteria and quality tradeoff sets"};
    app.require_subcommand(1);

    std::uint64_t seed = 12345;
    std::string timestamp;

    // boundary
    auto* boundary = app.add_subcommand("boundary", "emit the achievable-set boundary as CSV/SVG");
    int b_d = 2, b_n = 200;
    std::string b_merit = "F", b_out, b_format = "both";
    boundary->add_option("--d", b_d, "Hilbert space dimension (2..8; larger values cap at 8)");
    boundary->add_option("--merit", b_merit, "figure of merit: F|one|two|inf|diamond");
    boundary->add_option("--n", b_n, "number of boundary points (>= 2)");
    boundary->add_option("--out", b_out, "output path prefix");
    boundary->add_option("--format", b_format, "csv|svg|both");
    boundary->add_option("--seed", seed, "rng seed (recorded in the manifest)");
    boundary->add_option("--timestamp", timestamp, "fixed ISO-8601 timestamp for reproducible output");

    // verify
    auto* verify = app.add_subcommand("verify", "run the module invariant battery");
    std::vector<int> v_dims;
    std::string v_level = "default", v_out;
    double v_tol = 0.0;
    verify->add_option("--d", v_dims, "dimensions to test (default 2 3)");
    verify->add_option("--level", v_level, "default|deep (deep adds d=4,5 and 5000-sample runs)");
    verify->add_option("--seed", seed, "rng seed");
    auto* tol_opt = verify->add_option("--tolerance-override", v_tol,
                                       "force this tolerance on every check (testing hook)");
    verify->add_option("--out", v_out, "also write the machine-readable report to this file");

    // optimal
    auto* optimal = app.add_subcommand("optimal", "print the optimal cloner for a given point");
    int o_d = 2;
    double o_alpha1 = 0.0, o_target = 0.0;
    optimal->add_option("--d", o_d, "Hilbert space dimension (2..8)");
    auto* a1_opt = optimal->add_option("--alpha1", o_alpha1, "alpha1 in [0,1]");
    auto* tf_opt = optimal->add_option("--target-f1", o_target, "clone-1 fidelity in [1/d^2, 1]");
    std::string o_out;
    optimal->add_option("--out", o_out, "also write the report to this file");

    // twirl
    auto* twirl = app.add_subcommand("twirl", "Monte Carlo twirl vs exact commutant projection");
    int t_d = 2, t_samples = 5000;
    std::string t_out;
    twirl->add_option("--d", t_d, "Hilbert space dimension (2..8)");
    twirl->add_option("--samples", t_samples, "number of Haar samples (>= 1)");
    twirl->add_option("--seed", seed, "rng seed");
    twirl->add_option("--out", t_out, "also write the table to this file");
    twirl->add_option("--timestamp", timestamp, "fixed ISO-8601 timestamp for reproducible output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (boundary->parsed())
            return cmd_boundary(b_d, b_merit, b_n, b_out, b_format, seed, timestamp);
        if (verify->parsed())
            return cmd_verify(v_dims, v_level, seed, v_tol, tol_opt->count() > 0, v_out);
        if (optimal->parsed())
            return cmd_optimal(o_d, o_alpha1, a1_opt->count() > 0, o_target,
                               tf_opt->count() > 0, o_out);
        if (twirl->parsed()) return cmd_twirl(t_d, t_samples, seed, t_out, timestamp);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailure;
    }
    return kExitUsage;
}
