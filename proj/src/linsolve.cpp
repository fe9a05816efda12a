#include "qtel/linsolve.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

namespace qtel {

namespace {
thread_local std::chrono::steady_clock::time_point g_deadline{};
thread_local bool g_deadline_armed = false;

void deadline_checkpoint() {
    if (g_deadline_armed && std::chrono::steady_clock::now() > g_deadline)
        throw SearchExhausted("solver budget exhausted");
}
} // namespace

SolverDeadline::SolverDeadline(double seconds_from_now) {
    if (seconds_from_now > 0) {
        g_deadline = std::chrono::steady_clock::now() +
                     std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                         std::chrono::duration<double>(seconds_from_now));
        g_deadline_armed = true;
    }
}

SolverDeadline::~SolverDeadline() { g_deadline_armed = false; }

bool SolverDeadline::expired() {
    return g_deadline_armed && std::chrono::steady_clock::now() > g_deadline;
}

void FFMatrix::compress() {
    std::vector<Poly> out;
    out.reserve(a_.size());
    int r2 = 0;
    for (int r = 0; r < rows_; ++r) {
        bool zero = true;
        for (int c = 0; c < cols_; ++c)
            if (!at(r, c).is_zero()) {
                zero = false;
                break;
            }
        if (zero) continue;
        for (int c = 0; c < cols_; ++c) out.push_back(std::move(at(r, c)));
        ++r2;
    }
    rows_ = r2;
    a_ = std::move(out);
}

namespace {

// Row echelon form by primitive fraction-free elimination: the cross
// update row_i <- pivot * row_i - m_i * pivot_row stays polynomial, and
// every updated row is divided by the gcd of its entries. On the matrices
// produced by coefficient matching the entries factor richly and the
// primitive normalization keeps them small; plain Bareiss division by the
// previous pivot leaves much larger cofactors here.
struct Echelon {
    std::vector<std::vector<Poly>> m;        // pivot rows, elimination order
    std::vector<int> pivot_col;              // per pivot row
    std::vector<int> col_of_pivot;           // per column: pivot row or -1
    std::vector<std::vector<Poly>> leftover; // fully reduced non-pivot rows
    int rank = 0;
};

void primitive_strip(std::vector<Poly>& row) {
    // rational and monomial content first, then the full polynomial gcd
    // with early exit once it collapses to a unit
    Rat g(0);
    for (auto& e : row) {
        if (e.is_zero()) continue;
        g = rat_gcd(g, e.content_rat());
        if (g == 1) break;
    }
    if (g != 0 && g != 1) {
        Rat inv = Rat(1) / g;
        for (auto& e : row) e *= inv;
    }
    Poly pg;
    for (auto& e : row) {
        if (e.is_zero()) continue;
        pg = poly_gcd(pg, e);
        if (pg.is_one()) return;
    }
    if (pg.is_zero() || pg.is_one()) return;
    for (auto& e : row) {
        if (e.is_zero()) continue;
        e = divexact(e, pg);
    }
}

// `stop_col` excludes trailing columns (a right-hand side) from pivoting.
// Leftover rows, nonzero only beyond stop_col, are kept for consistency
// checks.
Echelon eliminate(const FFMatrix& in, int stop_col) {
    // rows kept in a working pool; pivots chosen Markowitz-style over the
    // whole remaining block: cheapest pivot entry by term count, then least
    // expected fill, then lowest indices. Monomial entries make free pivots.
    std::vector<std::vector<Poly>> pool;
    pool.reserve(static_cast<size_t>(in.rows()));
    for (int r = 0; r < in.rows(); ++r) {
        std::vector<Poly> row(static_cast<size_t>(in.cols()));
        for (int c = 0; c < in.cols(); ++c) row[static_cast<size_t>(c)] = in.at(r, c);
        primitive_strip(row);
        pool.push_back(std::move(row));
    }

    Echelon e;
    e.col_of_pivot.assign(static_cast<size_t>(in.cols()), -1);
    std::vector<char> row_used(pool.size(), 0);
    std::vector<char> col_used(static_cast<size_t>(in.cols()), 0);

    for (;;) {
        deadline_checkpoint();
        std::vector<int> col_nnz(static_cast<size_t>(stop_col), 0);
        std::vector<long> row_nnz(pool.size(), 0);
        for (size_t r = 0; r < pool.size(); ++r) {
            if (row_used[r]) continue;
            for (int c = 0; c < stop_col; ++c)
                if (!col_used[static_cast<size_t>(c)] &&
                    !pool[r][static_cast<size_t>(c)].is_zero()) {
                    ++col_nnz[static_cast<size_t>(c)];
                    ++row_nnz[r];
                }
        }
        long best_r = -1, best_c = -1;
        size_t best_terms = 0;
        long best_fill = 0;
        for (size_t r = 0; r < pool.size(); ++r) {
            if (row_used[r] || row_nnz[r] == 0) continue;
            for (int c = 0; c < stop_col; ++c) {
                if (col_used[static_cast<size_t>(c)]) continue;
                const Poly& cand = pool[r][static_cast<size_t>(c)];
                if (cand.is_zero()) continue;
                size_t terms = cand.nterms();
                long fill = (row_nnz[r] - 1) * (col_nnz[static_cast<size_t>(c)] - 1);
                if (best_r < 0 || terms < best_terms ||
                    (terms == best_terms && fill < best_fill)) {
                    best_r = static_cast<long>(r);
                    best_c = c;
                    best_terms = terms;
                    best_fill = fill;
                }
            }
        }
        if (best_r < 0) break;

        auto& prow = pool[static_cast<size_t>(best_r)];
        const Poly pivot = prow[static_cast<size_t>(best_c)];
        for (size_t r = 0; r < pool.size(); ++r) {
            if (row_used[r] || static_cast<long>(r) == best_r) continue;
            auto& row = pool[r];
            const Poly mi = row[static_cast<size_t>(best_c)];
            if (mi.is_zero()) continue;
            for (int c = 0; c < in.cols(); ++c) {
                if (c == best_c) continue;
                row[static_cast<size_t>(c)] =
                    pivot * row[static_cast<size_t>(c)] - mi * prow[static_cast<size_t>(c)];
            }
            row[static_cast<size_t>(best_c)] = Poly();
            primitive_strip(row);
        }
        row_used[static_cast<size_t>(best_r)] = 1;
        col_used[static_cast<size_t>(best_c)] = 1;
        e.m.push_back(std::move(prow));
        e.pivot_col.push_back(static_cast<int>(best_c));
        e.col_of_pivot[static_cast<size_t>(best_c)] = static_cast<int>(e.m.size()) - 1;
    }
    e.rank = static_cast<int>(e.m.size());
    for (size_t r = 0; r < pool.size(); ++r)
        if (!row_used[r]) e.leftover.push_back(std::move(pool[r]));
    return e;
}

// canonical kernel basis: one vector per free column f with v[f] = 1 and
// zero at the other free columns; unique given the free set, so it does not
// depend on the pivot order
std::vector<std::vector<RatFun>> kernel_basis(const Echelon& e, int cols) {
    std::vector<std::vector<RatFun>> basis;
    for (int f = 0; f < cols; ++f) {
        if (e.col_of_pivot[static_cast<size_t>(f)] >= 0) continue;
        std::vector<RatFun> v(static_cast<size_t>(cols));
        v[static_cast<size_t>(f)] = RatFun(1);
        // pivot row j has zeros exactly at the pivot columns of rows < j, so
        // back-substitution runs in reverse elimination order over all
        // non-pivot-column entries
        for (int pr = e.rank - 1; pr >= 0; --pr) {
            int pc = e.pivot_col[static_cast<size_t>(pr)];
            const auto& row = e.m[static_cast<size_t>(pr)];
            RatFun acc;
            for (int c = 0; c < cols; ++c) {
                if (c == pc) continue;
                if (row[static_cast<size_t>(c)].is_zero() || v[static_cast<size_t>(c)].is_zero())
                    continue;
                acc += RatFun(row[static_cast<size_t>(c)]) * v[static_cast<size_t>(c)];
            }
            if (!acc.is_zero())
                v[static_cast<size_t>(pc)] = -(acc / RatFun(row[static_cast<size_t>(pc)]));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

void normalize_first_nonzero(std::vector<std::vector<RatFun>>& basis) {
    for (auto& v : basis) {
        for (auto& x : v) {
            if (!x.is_zero()) {
                if (!(x == RatFun(1))) {
                    RatFun inv = x.inverse();
                    for (auto& y : v) y = inv * y;
                }
                break;
            }
        }
    }
}

// ---- evaluation / reconstruction fast path ------------------------------

// dense univariate polynomial over Q, index = degree
struct UQ {
    std::vector<Rat> c;
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    Rat eval(const Rat& z) const {
        Rat acc(0);
        for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
        return acc;
    }
};

UQ uq_sub_scaled(const UQ& a, const UQ& b, const Rat& f, int shift) {
    // a - f * z^shift * b
    UQ r = a;
    if (r.c.size() < b.c.size() + static_cast<size_t>(shift))
        r.c.resize(b.c.size() + static_cast<size_t>(shift), Rat(0));
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i + static_cast<size_t>(shift)] -= f * b.c[i];
    r.trim();
    return r;
}

// remainder sequence step: a mod b (monic-normalized quotient division)
void uq_divmod(const UQ& a, const UQ& b, UQ& quot, UQ& rem) {
    quot = UQ{};
    rem = a;
    quot.c.assign(a.c.size(), Rat(0));
    while (!rem.is_zero() && rem.deg() >= b.deg()) {
        int sh = rem.deg() - b.deg();
        Rat f = rem.c.back() / b.c.back();
        quot.c[static_cast<size_t>(sh)] += f;
        rem = uq_sub_scaled(rem, b, f, sh);
    }
    quot.trim();
}

// rational function of q through (z_i, v_i) via Lagrange interpolation and
// the extended Euclidean scheme; requires a 2-point uniqueness margin
std::optional<std::pair<UQ, UQ>> rational_reconstruct(const std::vector<Rat>& z,
                                                      const std::vector<Rat>& v) {
    size_t K = z.size();
    if (K < 4) return std::nullopt;
    // G = prod (Z - z_i), F = interpolant (Newton form, expanded)
    UQ G{{Rat(1)}};
    for (auto& zi : z) {
        UQ next;
        next.c.assign(G.c.size() + 1, Rat(0));
        for (size_t i = 0; i < G.c.size(); ++i) {
            next.c[i + 1] += G.c[i];
            next.c[i] -= zi * G.c[i];
        }
        next.trim();
        G = std::move(next);
    }
    UQ F;
    {
        // Newton coefficients by divided differences
        std::vector<Rat> dd = v;
        for (size_t lvl = 1; lvl < K; ++lvl)
            for (size_t i = K - 1; i >= lvl; --i)
                dd[i] = (dd[i] - dd[i - 1]) / (z[i] - z[i - lvl]);
        // expand sum dd[i] * prod_{j<i} (Z - z_j)
        UQ basis{{Rat(1)}};
        F = UQ{};
        for (size_t i = 0; i < K; ++i) {
            if (dd[i] != 0) {
                if (F.c.size() < basis.c.size()) F.c.resize(basis.c.size(), Rat(0));
                for (size_t j = 0; j < basis.c.size(); ++j) F.c[j] += dd[i] * basis.c[j];
            }
            if (i + 1 < K) {
                UQ next;
                next.c.assign(basis.c.size() + 1, Rat(0));
                for (size_t j = 0; j < basis.c.size(); ++j) {
                    next.c[j + 1] += basis.c[j];
                    next.c[j] -= z[i] * basis.c[j];
                }
                basis = std::move(next);
            }
        }
        F.trim();
    }
    if (F.is_zero()) return std::make_pair(UQ{}, UQ{{Rat(1)}});

    // extended Euclid on (G, F); every step gives a candidate num/den with
    // num = den * F mod G, i.e. matching all sample points where den != 0
    UQ r0 = G, r1 = F;
    UQ t0{}, t1{{Rat(1)}};
    std::optional<std::pair<UQ, UQ>> best;
    long best_sum = 0;
    auto consider = [&](const UQ& r, const UQ& t) {
        if (t.is_zero()) return;
        long sum = r.deg() + t.deg();
        if (sum + 4 > static_cast<long>(K)) return; // uniqueness margin
        for (auto& zi : z)
            if (t.eval(zi) == 0) return;
        if (!best || sum < best_sum) {
            best = std::make_pair(r, t);
            best_sum = sum;
        }
    };
    consider(r1, t1);
    while (!r1.is_zero()) {
        UQ quot, rem;
        uq_divmod(r0, r1, quot, rem);
        // t2 = t0 - quot * t1
        UQ t2 = t0;
        if (!quot.is_zero()) {
            size_t need = quot.c.size() + t1.c.size();
            if (t2.c.size() < need) t2.c.resize(need, Rat(0));
            for (size_t i = 0; i < quot.c.size(); ++i) {
                if (quot.c[i] == 0) continue;
                for (size_t j = 0; j < t1.c.size(); ++j) t2.c[i + j] -= quot.c[i] * t1.c[j];
            }
            t2.trim();
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(t2);
        // monic normalization keeps the rational coefficients small
        if (!r1.is_zero()) {
            Rat lead = r1.c.back();
            if (lead != 1) {
                for (auto& x : r1.c) x /= lead;
                for (auto& x : t1.c) x /= lead;
            }
            consider(r1, t1);
        }
    }
    return best;
}

std::optional<std::vector<std::vector<RatFun>>> nullspace_by_reconstruction(const FFMatrix& m) {
    const bool trace = std::getenv("QTEL_TRACE") != nullptr;
    auto tick = std::chrono::steady_clock::now();
    auto lap = [&](const char* what) {
        if (!trace) return;
        auto now = std::chrono::steady_clock::now();
        fprintf(stderr, "[rec] %s %.2fs\n", what, std::chrono::duration<double>(now - tick).count());
        tick = now;
    };
    // evaluation points q = eta, deterministic and pole-light
    auto eta_at = [](int s) {
        Rat r(2 * s + 5, 2 + (s % 3));
        r.canonicalize();
        return r;
    };

    struct PointData {
        Rat eta;
        std::vector<int> free_cols;
        std::vector<std::vector<RatFun>> basis; // in x only
    };
    std::vector<PointData> pts;
    std::vector<int> generic_free;
    int failures = 0;

    auto solve_point = [&](int s) -> std::optional<PointData> {
        PointData pd;
        pd.eta = eta_at(s);
        FFMatrix ms(m.rows(), m.cols());
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) ms.at(r, c) = m.at(r, c).subst(Var::Q, pd.eta);
        Echelon e = eliminate(ms, ms.cols());
        for (int c = 0; c < ms.cols(); ++c)
            if (e.col_of_pivot[static_cast<size_t>(c)] < 0) pd.free_cols.push_back(c);
        pd.basis = kernel_basis(e, ms.cols());
        return pd;
    };

    // establish the generic free-column structure on a handful of points
    int s = 0;
    while (static_cast<int>(pts.size()) < 3 && failures < 30) {
        auto pd = solve_point(s++);
        if (!pd) {
            ++failures;
            continue;
        }
        if (pts.empty()) {
            pts.push_back(std::move(*pd));
            continue;
        }
        // smaller kernels win: rank can only drop at special points
        if (pd->free_cols.size() < pts[0].free_cols.size()) {
            pts.clear();
            pts.push_back(std::move(*pd));
        } else if (pd->free_cols == pts[0].free_cols) {
            pts.push_back(std::move(*pd));
        } else {
            ++failures;
        }
    }
    if (pts.empty() || pts[0].free_cols.empty()) return std::nullopt;
    generic_free = pts[0].free_cols;
    lap("structure");

    // grow the sample set in chunks; reconstruction retries are expensive,
    // single extra points are not worth it
    auto grow = [&]() -> bool {
        size_t target = pts.size() + std::max<size_t>(8, pts.size() / 2);
        while (pts.size() < target && failures < 200) {
            deadline_checkpoint();
            auto pd = solve_point(s++);
            if (pd && pd->free_cols == generic_free) pts.push_back(std::move(*pd));
            else ++failures;
        }
        return pts.size() >= target;
    };
    grow(); // a reasonable batch up front
    lap("first batch");

    size_t nb = generic_free.size();
    std::vector<std::vector<RatFun>> out(nb, std::vector<RatFun>(static_cast<size_t>(m.cols())));
    for (size_t b = 0; b < nb; ++b) {
        for (int c = 0; c < m.cols(); ++c) {
            // x-degree structure of entry (b, c) must agree across points
            for (;;) {
                bool shape_ok = true;
                int dnum = -2, dden = -2;
                for (auto& pd : pts) {
                    const RatFun& w = pd.basis[b][static_cast<size_t>(c)];
                    int dn = w.is_zero() ? -1 : w.num().deg(Var::X);
                    int dd = w.den().deg(Var::X);
                    if (dnum == -2) {
                        dnum = dn;
                        dden = dd;
                    } else if (dn != dnum || dd != dden) {
                        shape_ok = false;
                        break;
                    }
                }
                if (shape_ok) break;
                // drop the minority shape by majority vote on dnum
                std::map<std::pair<int, int>, int> votes;
                for (auto& pd : pts) {
                    const RatFun& w = pd.basis[b][static_cast<size_t>(c)];
                    int dn = w.is_zero() ? -1 : w.num().deg(Var::X);
                    votes[{dn, w.den().deg(Var::X)}]++;
                }
                auto best = std::max_element(votes.begin(), votes.end(),
                                             [](auto& l, auto& r) { return l.second < r.second; });
                for (size_t i = pts.size(); i-- > 0;) {
                    const RatFun& w = pts[i].basis[b][static_cast<size_t>(c)];
                    int dn = w.is_zero() ? -1 : w.num().deg(Var::X);
                    if (std::make_pair(dn, w.den().deg(Var::X)) != best->first)
                        pts.erase(pts.begin() + static_cast<long>(i));
                }
                if (pts.size() < 3 && !grow()) return std::nullopt;
            }

            const RatFun& w0 = pts[0].basis[b][static_cast<size_t>(c)];
            if (w0.is_zero()) {
                bool all_zero = true;
                for (auto& pd : pts)
                    if (!pd.basis[b][static_cast<size_t>(c)].is_zero()) all_zero = false;
                if (all_zero) continue; // entry is zero
            }
            int dnum = w0.is_zero() ? -1 : w0.num().deg(Var::X);
            int dden = w0.den().deg(Var::X);

            // reconstruct every x-coefficient of num and den as a rational
            // function of q, then assemble the entry
            bool done = false;
            RatFun entry;
            while (!done) {
                done = true;
                std::vector<Rat> zs;
                for (auto& pd : pts) zs.push_back(pd.eta);
                RatFun N, D;
                for (int part = 0; part < 2 && done; ++part) {
                    int dmax = part == 0 ? dnum : dden;
                    for (int e = 0; e <= dmax && done; ++e) {
                        std::vector<Rat> vals;
                        for (auto& pd : pts) {
                            const RatFun& w = pd.basis[b][static_cast<size_t>(c)];
                            const Poly& pp = part == 0 ? w.num() : w.den();
                            vals.push_back(pp.coeff_of(Var::X, e).rational_value());
                        }
                        auto fit = rational_reconstruct(zs, vals);
                        if (!fit) {
                            done = false;
                            break;
                        }
                        Poly cn, cd;
                        for (size_t j = 0; j < fit->first.c.size(); ++j)
                            cn.add_term(Mono{static_cast<int32_t>(j), 0, 0, 0}, fit->first.c[j]);
                        for (size_t j = 0; j < fit->second.c.size(); ++j)
                            cd.add_term(Mono{static_cast<int32_t>(j), 0, 0, 0}, fit->second.c[j]);
                        if (cd.is_zero()) {
                            done = false;
                            break;
                        }
                        RatFun coef(cn, cd);
                        if (!coef.is_zero()) {
                            RatFun term = coef * RatFun(Poly::variable(Var::X, e));
                            if (part == 0) N += term;
                            else D += term;
                        }
                    }
                }
                if (done) {
                    if (D.is_zero()) return std::nullopt;
                    entry = N / D;
                } else if (!grow()) {
                    return std::nullopt;
                }
            }
            out[b][static_cast<size_t>(c)] = entry;
        }
        lap("vector reconstructed");
    }

    // certify at fresh q-points with x symbolic: a reconstruction from too
    // few sample points disagrees at unseen points. (The telescoping callers
    // additionally verify their results by exact symbolic residuals.)
    for (int extra = 0; extra < 3; ++extra) {
        Rat eta = eta_at(s + extra);
        for (auto& v : out) {
            for (int r = 0; r < m.rows(); ++r) {
                RatFun acc;
                for (int c = 0; c < m.cols(); ++c) {
                    if (m.at(r, c).is_zero() || v[static_cast<size_t>(c)].is_zero()) continue;
                    try {
                        acc += RatFun(m.at(r, c).subst(Var::Q, eta)) *
                               v[static_cast<size_t>(c)].subst(Var::Q, eta);
                    } catch (const PoleError&) {
                        return std::nullopt;
                    }
                }
                if (!acc.is_zero()) return std::nullopt;
            }
        }
    }
    lap("certified");
    return out;
}

} // namespace

std::vector<std::vector<RatFun>> nullspace(const FFMatrix& m) {
    // Wide systems with bivariate entries are solved by evaluating q at
    // rational points, solving the univariate systems and reconstructing the
    // q-dependence; the result is verified exactly against the matrix, so
    // the fast path cannot produce a wrong answer, only fall back.
    bool biv = false;
    for (int r = 0; r < m.rows() && !biv; ++r)
        for (int c = 0; c < m.cols() && !biv; ++c)
            biv = m.at(r, c).depends_on(Var::Q) && m.at(r, c).depends_on(Var::X);
    if (biv && m.cols() >= 12) {
        if (auto fast = nullspace_by_reconstruction(m)) {
            normalize_first_nonzero(*fast);
            return std::move(*fast);
        }
    }
    Echelon e = eliminate(m, m.cols());
    auto basis = kernel_basis(e, m.cols());
    normalize_first_nonzero(basis);
    return basis;
}

std::optional<std::vector<RatFun>> solve(const FFMatrix& m, const std::vector<RatFun>& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw DomainError("solve: size mismatch");
    // augmented matrix with denominators cleared per row
    FFMatrix aug(m.rows(), m.cols() + 1);
    for (int r = 0; r < m.rows(); ++r) {
        Poly den = b[static_cast<size_t>(r)].den();
        for (int c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c) * den;
        aug.at(r, m.cols()) = b[static_cast<size_t>(r)].num();
    }
    Echelon e = eliminate(aug, m.cols());
    // inconsistent iff a fully reduced row still carries a right-hand side
    for (auto& row : e.leftover)
        if (!row[static_cast<size_t>(m.cols())].is_zero()) return std::nullopt;

    std::vector<RatFun> v(static_cast<size_t>(m.cols()));
    for (int pr = e.rank - 1; pr >= 0; --pr) {
        int pc = e.pivot_col[static_cast<size_t>(pr)];
        const auto& row = e.m[static_cast<size_t>(pr)];
        RatFun acc = RatFun(row[static_cast<size_t>(m.cols())]);
        for (int c = 0; c < m.cols(); ++c) {
            if (c == pc) continue;
            if (row[static_cast<size_t>(c)].is_zero() || v[static_cast<size_t>(c)].is_zero())
                continue;
            acc -= RatFun(row[static_cast<size_t>(c)]) * v[static_cast<size_t>(c)];
        }
        v[static_cast<size_t>(pc)] = acc / RatFun(row[static_cast<size_t>(pc)]);
    }
    return v;
}

int rank_at_random_point(const FFMatrix& m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(2, 97), den(2, 23);
    Rat q(num(rng), den(rng)), x(num(rng), den(rng));
    q.canonicalize();
    x.canonicalize();

    std::vector<std::vector<Rat>> a(static_cast<size_t>(m.rows()),
                                    std::vector<Rat>(static_cast<size_t>(m.cols())));
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            a[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                m.at(r, c).eval(q, x, Rat(0), Rat(0));

    int rank = 0;
    int rows = m.rows(), cols = m.cols();
    for (int col = 0; col < cols && rank < rows; ++col) {
        int p = -1;
        for (int r = rank; r < rows; ++r)
            if (a[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(a[static_cast<size_t>(p)], a[static_cast<size_t>(rank)]);
        for (int r = rank + 1; r < rows; ++r) {
            Rat f = a[static_cast<size_t>(r)][static_cast<size_t>(col)] /
                    a[static_cast<size_t>(rank)][static_cast<size_t>(col)];
            if (f == 0) continue;
            for (int c = col; c < cols; ++c)
                a[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
                    f * a[static_cast<size_t>(rank)][static_cast<size_t>(c)];
        }
        ++rank;
    }
    return rank;
}

} // namespace qtel
