// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ksf/furdui.hpp"
#include "ksf/hadamard.hpp"
#include "ksf/k_core.hpp"
#include "ksf/nielsen_beta.hpp"
#include "ksf/registry.hpp"

namespace {

using ksf::GridSpec;
using ksf::KScale;
using ksf::Verdict;

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Tracks the worst deviation and the first offending case.
struct Tally {
    bool ok = true;
    double worst = 0.0;
    std::string first_bad;
    int cases = 0;

    void check(bool pass, double deviation, const std::string& label) {
        ++cases;
        if (std::isfinite(deviation)) worst = std::max(worst, deviation);
        if (!pass) {
            if (ok) first_bad = label;
            ok = false;
        }
    }
    void near(double a, double b, double tol, const std::string& label) {
        const double d = std::fabs(a - b);
        check(d < tol, d, label);
    }
    Outcome outcome() const {
        std::ostringstream os;
        os << cases << " cases, worst " << worst;
        if (!ok) os << ", first failure " << first_bad;
        return {ok, os.str()};
    }
};

std::string label(std::initializer_list<std::pair<const char*, double>> kv) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, v] : kv) {
        os << (first ? "" : ",") << n << "=" << v;
        first = false;
    }
    return os.str();
}

// Runs a registry entry and requires every non-skipped point to pass.
void require_identity(Tally& t, const std::string& id, const GridSpec& g, std::optional<double> tol = std::nullopt) {
    const bool inequality = ksf::find_identity(id).comparison == ksf::Comparison::inequality;
    const auto reports = ksf::run_identity(id, g, tol);
    if (reports.empty()) t.check(false, NAN, id + " produced no points");
    for (const auto& r : reports) {
        if (r.verdict == Verdict::skip) continue;
        std::string where = id;
        for (const auto& [n, v] : r.params) where += " " + n + "=" + ksf::format_number(v);
        // Inequalities report how far lhs exceeds rhs; identities their relative gap.
        const double dev = inequality ? std::max(0.0, r.lhs - r.rhs) : r.rel_diff;
        t.check(r.verdict == Verdict::pass, dev, where);
    }
}

Outcome criterion1() {
    const double target = std::log(ksf::constants::glaisher_A / std::sqrt(2 * ksf::constants::pi));
    const KScale k(1);
    Tally t;
    t.near(ksf::furdui_oracle(k, 2, 1e-12).value, target, 1e-7, "oracle");
    t.near(ksf::thm31_series(k, 2, 1e-12).value, target, 1e-7, "thm31");
    t.near(ksf::thm34_recursion(k, 2, 1, 1e-10).value, target, 1e-7, "thm34");
    auto o = t.outcome();
    const double glaisher_sq = 2 * std::log(ksf::constants::glaisher_A) - 0.5 * std::log(2 * ksf::constants::pi);
    std::ostringstream os;
    os.precision(17);
    os << "; target ln(A/sqrt(2 pi)) = " << target << ", all three routes give "
       << ksf::furdui_oracle(k, 2, 1e-12).value << " = ln(A^2/sqrt(2 pi)) = " << glaisher_sq;
    o.detail += os.str();
    return o;
}

Outcome criterion2() {
    Tally t;
    for (double kv : {0.5, 1.0, 2.0, 3.0}) {
        for (int m = 1; m <= 6; ++m) {
            const KScale k(kv);
            t.near(ksf::thm31_series(k, m, 1e-12).value, ksf::furdui_oracle(k, m, 1e-12).value, 1e-8,
                   label({{"k", kv}, {"m", m}}));
        }
    }
    return t.outcome();
}

Outcome criterion3() {
    Tally t;
    for (double kv : {1.0, 2.0}) {
        for (int m = 1; m <= 3; ++m) {
            for (int n = 1; n <= 3; ++n) {
                const KScale k(kv);
                t.near(ksf::thm34_recursion(k, m, n, 1e-8).value, ksf::furdui_oracle(k, m, 1e-12).value, 1e-6,
                       label({{"k", kv}, {"m", m}, {"n", n}}));
            }
        }
    }
    return t.outcome();
}

Outcome criterion4() {
    Tally t;
    for (const char* id : {"EQ1.1", "LEM2.4", "EQ5.11"}) require_identity(t, id, GridSpec{}, 1e-11);
    return t.outcome();
}

Outcome criterion5() {
    Tally t;
    const GridSpec g;
    for (double kv : g.k_values) {
        const KScale k(kv);
        for (double s : g.x_values) {
            const double x = s * kv;
            const double psi_route = ksf::beta_k(k, x);
            const double series = ksf::beta_k_series(k, x, 1e-11).value;
            const double integral = ksf::beta_k_integral(k, x, 1e-11).value;
            const double scale = std::max(1.0, std::fabs(psi_route));
            t.near(series / scale, psi_route / scale, 1e-8, label({{"series k", kv}, {"x", x}}));
            t.near(integral / scale, psi_route / scale, 1e-8, label({{"integral k", kv}, {"x", x}}));
        }
    }
    // Shifted points x > -k, so that (x+k)/2 covers small and large arguments.
    int shifted = 0;
    for (double kv : {0.5, 2.0}) {
        for (double s : {-0.9, -0.5, 0.0, 1.0, 4.0}) {
            const KScale k(kv);
            const double x = s * kv;
            const double lhs = ksf::beta_k(k, (x + kv) / 2.0);
            t.near(ksf::beta_k_cosh_form(k, x, 1e-12).value / std::max(1.0, std::fabs(lhs)),
                   lhs / std::max(1.0, std::fabs(lhs)), 1e-8, label({{"cosh k", kv}, {"x", x}}));
            ++shifted;
        }
    }
    t.check(shifted == 10, 0.0, "shifted point count");
    return t.outcome();
}

Outcome criterion6() {
    Tally t;
    for (double kv : {0.5, 1.0, 2.0}) {
        const KScale k(kv);
        for (double s : {0.1, 0.5, 0.9}) {
            const double x = s * kv;
            const double ref = ksf::beta_k(k, x);
            const double scale = std::max(1.0, std::fabs(ref));
            // Expansion about k: beta_k(x) with offset x - k.
            const double taylor = ksf::beta_taylor_54(k, x - kv, 200, 1e-12).value;
            const double double_sum = ksf::beta_expansion_55(k, x, 4000, 1e-12).value;
            t.near(taylor / scale, ref / scale, 1e-8, label({{"taylor k", kv}, {"x/k", s}}));
            t.near(double_sum / scale, ref / scale, 1e-8, label({{"double sum k", kv}, {"x/k", s}}));
        }
    }
    return t.outcome();
}

Outcome criterion7() {
    Tally t;
    for (const char* id : {"REM5-LOWER", "REM5-UPPER", "REM5-REFINED", "LEM2.6", "LEM2.7", "LEM2.5"}) {
        require_identity(t, id, GridSpec{});
    }
    return t.outcome();
}

Outcome criterion8() {
    Tally t;
    require_identity(t, "THM5.6", GridSpec{});
    for (double kv : GridSpec{}.k_values) {
        const KScale k(kv);
        t.near(ksf::harmonic_mean_56(k, kv), ksf::constants::ln2 / kv, 1e-12, label({{"equality k", kv}}));
    }
    return t.outcome();
}

Outcome criterion9() {
    Tally t;
    for (double kv : {0.5, 1.0, 2.0, 3.0, ksf::constants::pi}) {
        t.near(ksf::hadamard_k(KScale(kv), kv), 1.0, 1e-12, label({{"H_k(k) k", kv}}));
    }
    GridSpec g;
    g.k_values = {0.5, 1.0, 2.0, 3.0, ksf::constants::pi};
    g.x_values = {0.1, 0.35, 0.7, 1.5, 2.5};
    const auto reports = ksf::run_identity("THM4.1", g, 1e-10);
    t.check(reports.size() == 50, 0.0, "THM4.1 point count " + std::to_string(reports.size()));
    for (const auto& r : reports) {
        t.check(r.verdict == Verdict::pass, r.rel_diff,
                "THM4.1 k=" + ksf::format_number(ksf::param(r.params, "k")) +
                    " x=" + ksf::format_number(ksf::param(r.params, "x")));
    }
    require_identity(t, "HAD-SCALING", GridSpec{}, 1e-10);
    for (int n = 1; n <= 5; ++n) {
        t.near(ksf::hadamard_k(KScale(1), n), std::tgamma(n), 1e-12 * std::tgamma(n),
               label({{"H(n) n", n}}));
    }
    return t.outcome();
}

Outcome criterion10() {
    Tally t;
    const auto r1 = ksf::alpha0_solve(KScale(1), 1e-12);
    t.check(r1.root > 1.5 && r1.root < 3.0, 0.0, "root in (1.5, 3)");
    t.check(std::fabs(r1.residual) < 1e-10, std::fabs(r1.residual), "residual");
    int pairs = 0;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double x = r1.root + 0.01 + 0.5 * i;
            const double y = r1.root + 0.01 + 0.7 * j;
            const auto rep = ksf::superadditivity_check_43(KScale(1), x, y);
            t.check(rep.verdict == Verdict::pass, 0.0, label({{"pair x", x}, {"y", y}}));
            ++pairs;
        }
    }
    t.check(pairs == 20, 0.0, "pair count");
    int below_fails = 0;
    for (double x : {0.5, 1.0, 1.4}) {
        if (ksf::superadditivity_check_43(KScale(1), x, x).verdict == Verdict::fail) ++below_fails;
    }
    t.check(below_fails >= 1, 0.0, "no FAIL below the root");
    const auto r2 = ksf::alpha0_solve(KScale(2), 1e-12);
    t.near(r2.root, 2.0 * r1.root, 1e-8, "alpha0(2) vs 2 alpha0(1)");
    auto o = t.outcome();
    std::ostringstream os;
    os.precision(12);
    os << "; alpha0(1) = " << r1.root << ", FAILs below root: " << below_fails << "/3";
    o.detail += os.str();
    return o;
}

Outcome criterion11() {
    Tally t;
    std::vector<std::string> ids;
    for (const char* base : {"EQ2.2", "EQ5.5", "THM3.2", "THM3.3", "THM4.4", "THM5.1", "EQ4.8"}) {
        ids.push_back(std::string(base) + "-printed");
        ids.push_back(std::string(base) + "-corrected");
    }
    const auto run = ksf::run_all(GridSpec{}, std::nullopt, ids);
    t.check(run.entries.size() == ids.size(), 0.0, "entry count");
    for (const auto& e : run.entries) {
        const bool printed = e.expectation == Verdict::fail;
        double worst_fit = 0.0;
        for (const auto& f : e.fits) worst_fit = std::max(worst_fit, f.fit.residual_rms);
        const bool ok = printed ? (e.fail > 0 && worst_fit < ksf::fit_residual_limit) : (e.fail == 0 && e.pass > 0);
        t.check(ok, printed ? worst_fit : e.worst_rel_diff, e.id);
    }
    return t.outcome();
}

struct Captured {
    int code = -1;
    std::string out;
};

Captured capture(const std::string& cmd) {
    Captured c;
    FILE* p = popen(cmd.c_str(), "r");
    if (p == nullptr) return c;
    char buf[8192];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) c.out.append(buf, n);
    const int status = pclose(p);
    c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return c;
}

Outcome criterion12() {
    const std::string cmd = std::string(KSF_CLI_PATH) + " verify --id ALL --format json";
    const auto a = capture(cmd);
    const auto b = capture(cmd);
    std::ostringstream os;
    os << "exit codes " << a.code << "/" << b.code << ", " << a.out.size() << " bytes";
    const bool ok = a.code == 0 && b.code == 0 && !a.out.empty() && a.out == b.out;
    if (a.out != b.out) os << ", outputs differ";
    return {ok, os.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"Furdui m=2, k=1 against ln(A/sqrt(2 pi))", criterion1},
        {"Zeta-series Furdui grid", criterion2},
        {"Polygamma recursion grid", criterion3},
        {"Recurrences at 1e-11", criterion4},
        {"beta_k route agreement", criterion5},
        {"beta_k expansions", criterion6},
        {"Inequality suite", criterion7},
        {"Harmonic-mean bound", criterion8},
        {"Hadamard suite", criterion9},
        {"alpha0 threshold", criterion10},
        {"Printed vs corrected formulas", criterion11},
        {"Deterministic verify output", criterion12},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.ok) ++failures;
        std::cout << "Criterion " << (i + 1) << ": " << (o.ok ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
                  << o.detail << ")\n";
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
