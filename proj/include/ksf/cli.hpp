#pragma once

// Command-line front end: eval, verify, furdui, alpha0 and scan. run_cli is the
// whole program minus process plumbing, so tests can drive it in-process.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ksf/errors.hpp"
#include "ksf/furdui.hpp"
#include "ksf/hadamard.hpp"
#include "ksf/k_core.hpp"
#include "ksf/nielsen_beta.hpp"
#include "ksf/registry.hpp"
#include "ksf/scalar_core.hpp"

namespace ksf {

namespace cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_unexpected_fail = 1;
inline constexpr int exit_usage = 2;

/// 10 significant digits for text output.
inline std::string fmt10(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// Writes via a sibling temp file and a rename, so a failed run leaves no partial file.
inline void write_atomically(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os << content;
        os.flush();
        if (!os) {
            std::filesystem::remove(tmp);
            throw std::runtime_error("write to " + tmp.string() + " failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename to " + path + ": " + ec.message());
    }
}

struct EvalArgs {
    std::string fn;
    double k = 1.0;
    double x = 0.0;
    int m = 1;
    double a = 0.0, b = 0.0, c = 1.0, z = 0.0;
};

inline double eval_function(const EvalArgs& e) {
    const KScale k(e.k);
    if (e.fn == "gamma_k") return gamma_k(k, e.x);
    if (e.fn == "psi_k") return psi_k(k, e.x);
    if (e.fn == "psi_k_m") return psi_k_m(k, e.m, e.x);
    if (e.fn == "beta_k") return beta_k(k, e.x);
    if (e.fn == "hadamard_k") return hadamard_k(k, e.x);
    if (e.fn == "zeta") {
        if (e.x != std::nearbyint(e.x) || e.x < 2.0 || e.x > 1e6) {
            throw DomainError("zeta: x must be an integer >= 2");
        }
        return zeta_int(static_cast<int>(e.x));
    }
    return gauss_2f1(e.a, e.b, e.c, e.z).value;
}

inline void print_verify_text(std::ostream& os, const RunSummary& run, bool with_reports) {
    if (with_reports) {
        for (const auto& r : run.reports) {
            os << std::left << std::setw(20) << r.identity_id << " ";
            std::string ps;
            for (const auto& [name, value] : r.params) ps += name + "=" + fmt10(value) + " ";
            os << std::setw(34) << ps << " lhs=" << std::setw(17) << fmt10(r.lhs) << " rhs=" << std::setw(17)
               << fmt10(r.rhs) << " rel=" << std::setw(16) << fmt10(r.rel_diff) << " " << to_string(r.verdict);
            if (!r.note.empty()) os << "  (" << r.note << ")";
            os << "\n";
        }
        os << "\n";
    }
    os << std::left << std::setw(20) << "id" << " " << std::setw(8) << "expect" << std::right << std::setw(6) << "pass"
       << std::setw(6) << "fail" << std::setw(6) << "skip" << std::setw(18) << "worst_rel" << "  met\n";
    for (const auto& e : run.entries) {
        os << std::left << std::setw(20) << e.id << " " << std::setw(8) << to_string(e.expectation) << std::right
           << std::setw(6) << e.pass << std::setw(6) << e.fail << std::setw(6) << e.skip << std::setw(18)
           << fmt10(e.worst_rel_diff) << "  " << (e.expectation_met ? "yes" : "NO") << "\n";
        for (const auto& f : e.fits) {
            os << "    fit " << to_string(f.fit.mode) << (f.group.empty() ? "" : " [" + f.group + "]")
               << " c=" << fmt10(f.fit.constant) << " rms=" << fmt10(f.fit.residual_rms) << " n=" << f.fit.n_points
               << "\n";
        }
    }
    os << "unexpected failures: " << run.unexpected_failures() << "\n";
}

}  // namespace cli

/// Runs the tool with args[0] as the program name. Returns 0 on success, 1 when
/// an identity expected to pass failed, 2 on usage or domain errors.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"k-gamma family special functions and identity verification", "ksf"};
    app.require_subcommand(1);

    cli::EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "Evaluate one function at a point");
    eval->add_option("--fn", ev.fn, "Function")
        ->required()
        ->check(CLI::IsMember({"gamma_k", "psi_k", "psi_k_m", "beta_k", "hadamard_k", "zeta", "2f1"}));
    eval->add_option("--k", ev.k, "Deformation parameter k > 0")->capture_default_str();
    eval->add_option("--x", ev.x, "Argument (zeta: integer order)");
    eval->add_option("--m", ev.m, "Derivative order for psi_k_m")->capture_default_str();
    eval->add_option("--a", ev.a, "2f1 parameter a");
    eval->add_option("--b", ev.b, "2f1 parameter b");
    eval->add_option("--c", ev.c, "2f1 parameter c");
    eval->add_option("--z", ev.z, "2f1 argument z in [-1, 0]");

    std::string verify_id;
    std::vector<double> k_list;
    std::vector<double> x_list;
    double verify_tol = 0.0;
    std::string format = "text";
    std::string out_path;
    auto* verify = app.add_subcommand("verify", "Run registered identities over a grid");
    verify->add_option("--id", verify_id, "Identity id or ALL")->required();
    verify->add_option("--k-list", k_list, "Comma-separated k values")->delimiter(',');
    verify->add_option("--x-list", x_list, "Comma-separated x values")->delimiter(',');
    auto* tol_opt = verify->add_option("--tol", verify_tol, "Tolerance override")->check(CLI::PositiveNumber);
    verify->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    verify->add_option("--out", out_path, "Write the report to this file");

    double fk = 1.0;
    int fm = 1;
    int fn = 1;
    double ftol = 1e-10;
    std::vector<std::string> methods;
    auto* furdui = app.add_subcommand("furdui", "Compare evaluators of int_0^k x^m psi_k(x) dx");
    furdui->add_option("--k", fk, "Deformation parameter k > 0")->required();
    furdui->add_option("--m", fm, "Moment order m >= 1")->required();
    furdui->add_option("--n", fn, "Recursion depth for thm34 (1..8)")->capture_default_str();
    furdui->add_option("--methods", methods, "Comma-separated methods")->required()->delimiter(',');
    furdui->add_option("--tol", ftol, "Target accuracy")->check(CLI::PositiveNumber)->capture_default_str();

    double ak = 1.0;
    double atol = 1e-12;
    auto* alpha0 = app.add_subcommand("alpha0", "Solve H_k(2t) = 2 k^(t/k) H_k(t) on [1.5k, inf)");
    alpha0->add_option("--k", ak, "Deformation parameter k > 0")->required();
    alpha0->add_option("--tol", atol, "Residual tolerance")->check(CLI::PositiveNumber)->capture_default_str();

    double sk = 1.0;
    int sn = 0;
    double x_lo = 0.5;
    double x_hi = 5.0;
    int points = 19;
    auto* scan = app.add_subcommand("scan", "Tabulate the open-problem ratio g_n for n = 0..N");
    scan->add_option("--k", sk, "Deformation parameter k > 0")->required();
    scan->add_option("--n", sn, "Largest n (0..4)")->required();
    scan->add_option("--x-lo", x_lo, "First x")->capture_default_str();
    scan->add_option("--x-hi", x_hi, "Last x")->capture_default_str();
    scan->add_option("--points", points, "Number of x points (>= 2)")->capture_default_str();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    if (argv.empty()) argv.push_back("ksf");
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return cli::exit_usage;
    }

    try {
        if (*eval) {
            if (ev.fn == "2f1" && (eval->count("--a") == 0 || eval->count("--b") == 0 || eval->count("--c") == 0 ||
                                   eval->count("--z") == 0)) {
                throw ParameterError("2f1 needs --a, --b, --c and --z");
            }
            if (ev.fn != "2f1" && eval->count("--x") == 0) throw ParameterError(ev.fn + " needs --x");
            out << cli::fmt10(cli::eval_function(ev)) << "\n";
            return cli::exit_ok;
        }

        if (*verify) {
            if (verify_id != "ALL") find_identity(verify_id);
            GridSpec grid;
            if (!k_list.empty()) grid.k_values = k_list;
            if (!x_list.empty()) grid.x_values = x_list;
            grid.validate();
            std::optional<double> tol;
            if (tol_opt->count() > 0) tol = verify_tol;
            std::vector<std::string> ids;
            if (verify_id != "ALL") ids.push_back(verify_id);
            const auto run = run_all(grid, tol, ids);
            std::ostringstream report;
            if (format == "json") {
                write_json(report, run);
            } else if (format == "csv") {
                write_csv(report, run);
            } else {
                cli::print_verify_text(report, run, verify_id != "ALL");
            }
            if (out_path.empty()) {
                out << report.str();
            } else {
                cli::write_atomically(out_path, report.str());
            }
            return run.unexpected_failures() > 0 ? cli::exit_unexpected_fail : cli::exit_ok;
        }

        if (*furdui) {
            std::vector<FurduiMethod> selected;
            for (const auto& name : methods) {
                const auto m = parse_furdui_method(name);
                if (!m) throw ParameterError("unknown method: " + name);
                selected.push_back(*m);
            }
            if (fn < 1 || fn > 8) throw ParameterError("--n must lie in [1, 8]");
            const KScale k(fk);
            out << std::left << std::setw(15) << "method" << std::setw(20) << "value" << std::setw(20) << "error"
                << "terms\n";
            for (auto m : selected) {
                const auto r = furdui_method(m, k, fm, fn, ftol);
                out << std::left << std::setw(15) << to_string(r.method) << std::setw(20) << cli::fmt10(r.value)
                    << std::setw(20) << cli::fmt10(r.error_estimate) << r.terms_or_subdivisions << "\n";
            }
            return cli::exit_ok;
        }

        if (*alpha0) {
            const auto r = alpha0_solve(KScale(ak), atol);
            out << "alpha0       " << cli::fmt10(r.root) << "\n"
                << "residual     " << cli::fmt10(r.residual) << "\n"
                << "bracket      [" << cli::fmt10(r.bracket_lo) << ", " << cli::fmt10(r.bracket_hi) << "]\n"
                << "iterations   " << r.iterations << "\n"
                << "sign changes " << r.sign_changes << "\n";
            return cli::exit_ok;
        }

        if (*scan) {
            if (points < 2) throw ParameterError("--points must be >= 2");
            if (!(x_lo > 0.0 && x_hi > x_lo)) throw DomainError("scan needs 0 < x-lo < x-hi");
            GridSpec grid;
            grid.x_values.clear();
            for (int i = 0; i < points; ++i) grid.x_values.push_back(x_lo + (x_hi - x_lo) * i / (points - 1));
            for (const auto& t : openproblem_scan(KScale(sk), sn, grid)) {
                out << "n = " << t.n << "  verdict: " << to_string(t.verdict);
                if (t.first_violation) out << " (first reversal at x = " << cli::fmt10(*t.first_violation) << ")";
                out << "\n"
                    << std::right << std::setw(12) << "x" << std::setw(20) << "f^(n)" << std::setw(20) << "f^(n+1)"
                    << std::setw(20) << "f^(n+2)" << std::setw(20) << "g_n" << "\n";
                for (const auto& row : t.rows) {
                    out << std::setw(12) << cli::fmt10(row.x) << std::setw(20) << cli::fmt10(row.f_n) << std::setw(20)
                        << cli::fmt10(row.f_n1) << std::setw(20) << cli::fmt10(row.f_n2) << std::setw(20)
                        << (row.skipped ? std::string("SKIP") : cli::fmt10(row.g)) << "\n";
                }
                out << "\n";
            }
            return cli::exit_ok;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return cli::exit_usage;
    }
    return cli::exit_usage;
}

}  // namespace ksf
