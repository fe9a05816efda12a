#pragma once

#include "qtel/ratfun.hpp"

#include <optional>
#include <vector>
#include <cstdint>

namespace qtel {

// Dense matrix over Q(q)[x] with denominators pre-cleared; the solvers work
// over the fraction field Q(q)(x).
class FFMatrix {
public:
    FFMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Poly& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Poly& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    // drop all-zero rows (cheap sanity before elimination)
    void compress();

private:
    int rows_, cols_;
    std::vector<Poly> a_;
};

// Basis of the right nullspace over Q(q)(x); every vector has its first
// nonzero entry normalized to 1. Empty when the kernel is trivial.
std::vector<std::vector<RatFun>> nullspace(const FFMatrix& m);

// One exact solution of M v = b, or nullopt when inconsistent.
std::optional<std::vector<RatFun>> solve(const FFMatrix& m, const std::vector<RatFun>& b);

// Rank of the matrix evaluated at a random rational point (q, x); evaluation
// rank never exceeds the symbolic rank.
int rank_at_random_point(const FFMatrix& m, std::uint64_t seed);

// Cooperative budget for long-running eliminations. While a deadline is
// armed on this thread, the solvers throw SearchExhausted when they pass it
// between pivot rounds. Used by the escalating searches; cleared on scope
// exit.
class SolverDeadline {
public:
    explicit SolverDeadline(double seconds_from_now);
    ~SolverDeadline();
    SolverDeadline(const SolverDeadline&) = delete;
    SolverDeadline& operator=(const SolverDeadline&) = delete;

    static bool expired();
};

} // namespace qtel
