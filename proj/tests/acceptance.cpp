// Acceptance suite: one pass/fail line per criterion, exact tolerances.
// Runs the full pipeline for every twist parameter in the desk-scale range
// and checks the results against the stored recursion and A-polynomial
// tables, the direct double-summation oracle, and the generating-function
// identities. Criterion 9 is budget-bound and reports search exhaustion
// without failing.

#include "qtel/genfun.hpp"
#include "qtel/twistknot.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>

using namespace qtel;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail = "") {
    std::cout << (pass ? "[pass] " : "[FAIL] ") << "criterion " << criterion << ": " << what;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!pass) ++failures;
}

double run_seconds(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

} // namespace

int main() {
    const std::string fixtures = fixture_dir_or_default("");
    const std::uint64_t seed = 20240405;
    const std::vector<int> range = {1, -1, 2, -2, 3, -3};

    std::map<int, TelescopeResult> computed;
    for (int p : range) {
        auto t0 = clock_type::now();
        computed[p] = noncomm_A(p);
        std::cout << "# computed recursion for p=" << p << " in " << run_seconds(t0) << "s"
                  << std::endl;
    }

    // 1. exact fixture match for |p| <= 2, up to a unit of Q(q) times a
    //    power of q^n
    for (int p : {1, -1, 2, -2}) {
        FixtureRec fix = load_fixture_rec(p, fixtures);
        bool ok = rec_equal_up_to_unit(computed[p].rec, fix.rec);
        report(1, ok, "stored recursion match p=" + std::to_string(p), "structural");
    }

    // 2. p = +-3 against the stored recursions: exact equality of the
    //    canonical forms at 5 seeded rational points, identical order
    for (int p : {3, -3}) {
        FixtureRec fix = load_fixture_rec(p, fixtures);
        bool order_ok = computed[p].rec.op.order() == fix.rec.op.order();
        bool pts = rec_equal_at_points(computed[p].rec, fix.rec, seed, 5);
        report(2, order_ok && pts, "stored recursion match p=" + std::to_string(p),
               "order " + std::to_string(computed[p].rec.op.order()) + ", 5 points");
    }

    // 3. order law
    {
        std::map<int, int> want = {{1, 1}, {2, 3}, {3, 5}, {-1, 2}, {-2, 4}, {-3, 6}};
        bool ok = true;
        std::ostringstream got;
        for (auto& [p, expect] : want) {
            int o = computed[p].rec.op.order();
            got << "p=" << p << ":" << o << " ";
            ok = ok && o == expect;
        }
        report(3, ok, "orders are 2p-1 and 2|p|", got.str());
    }

    // 4. exact annihilation against independent double summation
    for (int p : range) {
        AnnihilationReport ann = annihilation_check(computed[p].rec, p, 10, false);
        report(4, ann.pass, "annihilation n=0..10 p=" + std::to_string(p),
               ann.pass ? "exact" : "first failure n=" + std::to_string(ann.first_failure));
    }

    // 5. AJ factorization at q = 1
    for (int p : range) {
        AJReport aj = check_AJ(p, computed[p], fixtures);
        bool ok = aj.pass && !aj.degree_drop;
        std::string detail = aj.pass ? "L-free quotient" : aj.detail;
        if (p == 1 && ok) {
            auto lq = ExprSymbols::comm_lq();
            ok = aj.quotient == parse_ratfun("Q-1", lq);
            detail = "quotient Q-1";
        }
        report(5, ok, "AJ factorization p=" + std::to_string(p), detail);
    }

    // 6. sanity values
    {
        bool ok = true;
        for (int p : range) ok = ok && colored_jones(p, 1) == RatFun(1);
        report(6, ok, "J_p(1) = 1 for all p in range");
        auto sym = ExprSymbols::operator_e();
        report(6, colored_jones(1, 2) == parse_ratfun("q + q^3 - q^4", sym),
               "J_1(2) = q + q^3 - q^4");
        bool jh = jhat(1, 0) == RatFun(1) &&
                  jhat(1, 1) == -RatFun(Poly::variable(Var::Q, 2)) &&
                  jhat(1, 2) == RatFun(Poly::variable(Var::Q, 5));
        report(6, jh, "cyclotomic values (1, -q^2, q^5)");
    }

    // 7. telescoping residuals exactly zero
    for (int p : range) {
        ResidualReport rep =
            verify_telescope(computed[p], cyclotomic_kernel(), jhat_recursion(p));
        report(7, rep.ok, "certificate residuals p=" + std::to_string(p),
               rep.ok ? "exact zero" : rep.detail);
    }

    // 8. generating-function checks
    {
        WzReport wz = verify_h(6, 20);
        report(8, wz.identity_ok, "contiguous identity for the column series",
               wz.printed_ok ? "printed certificate" : "re-derived certificate");
        report(8, wz.delta == 0 || wz.delta == 1, "uniform series shift for k <= 6",
               "delta = " + std::to_string(wz.delta));
        for (int p : {1, -1}) {
            FSeriesReport fr = f_series(p, 10, wz.delta);
            report(8, fr.match, "f-series agreement to z^10, p=" + std::to_string(p));
        }
    }

    // 9. p = +-4 annihilation within a configurable budget; search
    //    exhaustion is reported, not failed
    {
        double budget = 900;
        if (const char* env = std::getenv("QTEL_P4_BUDGET")) budget = std::atof(env);
        for (int p : {4, -4}) {
            if (budget <= 0) {
                std::cout << "[pass] criterion 9: p=" << p << " skipped (budget 0)" << std::endl;
                continue;
            }
            try {
                PipelineOptions opt;
                opt.find.budget_seconds = budget;
                auto t0 = clock_type::now();
                TelescopeResult res = noncomm_A(p, opt);
                AnnihilationReport ann = annihilation_check(res.rec, p, 10, false);
                report(9, ann.pass,
                       "annihilation-only mode p=" + std::to_string(p),
                       "order " + std::to_string(res.rec.op.order()) + ", " +
                           std::to_string(run_seconds(t0)) + "s");
            } catch (const SearchExhausted&) {
                std::cout << "[pass] criterion 9: p=" << p
                          << " search-exhausted within budget, not failing" << std::endl;
            }
        }
    }

    std::cout << (failures == 0 ? "acceptance: all criteria pass"
                                : "acceptance: " + std::to_string(failures) + " failure(s)")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
