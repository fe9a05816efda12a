// Benchmark of the OpenMP evaluation kernels against their serial reference
// paths. The symbolic telescoping solver itself stays single-threaded; what
// parallelizes are the independent evaluation sweeps (value tables and
// annihilation scans).

#include "qtel/parallel.hpp"
#include "qtel/twistknot.hpp"

#include <chrono>
#include <iostream>

using namespace qtel;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

template <class F>
double timed(F&& f) {
    auto t0 = clock_type::now();
    f();
    return seconds_since(t0);
}

} // namespace

int main(int argc, char** argv) {
    int p = argc > 1 ? std::atoi(argv[1]) : 2;
    long nmax = argc > 2 ? std::atol(argv[2]) : 16;
    std::cout << "threads available: " << par::max_threads() << "\n";
    std::cout << "workload: twist parameter p=" << p << ", values up to n=" << nmax << "\n\n";

    std::vector<RatFun> serial_vals, parallel_vals;
    double t_serial = timed([&] { serial_vals = colored_jones_values(p, nmax, false); });
    double t_par = timed([&] { parallel_vals = colored_jones_values(p, nmax, true); });
    bool same = serial_vals.size() == parallel_vals.size();
    for (size_t i = 0; same && i < serial_vals.size(); ++i)
        same = serial_vals[i] == parallel_vals[i];
    std::cout << "value table   serial " << t_serial << "s   openmp " << t_par << "s   match "
              << (same ? "yes" : "NO") << "\n";

    std::string dir = fixture_dir_or_default("");
    FixtureRec fix = load_fixture_rec(p, dir);
    AnnihilationReport a1, a2;
    double t_ann_s = timed([&] { a1 = annihilation_check(fix.rec, p, nmax, false); });
    double t_ann_p = timed([&] { a2 = annihilation_check(fix.rec, p, nmax, true); });
    std::cout << "annihilation  serial " << t_ann_s << "s   openmp " << t_ann_p << "s   match "
              << ((a1.pass == a2.pass && a1.first_failure == a2.first_failure) ? "yes" : "NO")
              << "\n";
    if (!a1.pass) {
        std::cout << "annihilation check failed; benchmark aborted\n";
        return 1;
    }
    return same ? 0 : 1;
}
