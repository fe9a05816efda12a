#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtel/telescope.hpp"
#include "qtel/twistknot.hpp"

using namespace qtel;

namespace {
const auto SYM = ExprSymbols::operator_e();

RatFun rf(const std::string& s) { return parse_ratfun(s, SYM); }

// is a/b a unit c(q) x^j y^l?
bool equal_up_to_monomial_unit(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    RatFun r = a / b;
    return r.num().is_monomial() && r.den().is_monomial();
}
} // namespace

TEST_CASE("default denominator matches the displayed products up to units") {
    CHECK(equal_up_to_monomial_unit(RatFun(default_denominator(1)),
                                    rf("q^(k)*(1 - q^(k-n))")));
    CHECK(equal_up_to_monomial_unit(RatFun(default_denominator(-1)),
                                    rf("(1 - q^(k-n))*(1 - q^(k-n-1))")));
    CHECK(equal_up_to_monomial_unit(
        RatFun(default_denominator(2)),
        rf("q^(2*k)*(1 - q^(k-n+1))*(1 - q^(k-n))*(1 - q^(k-n-1))")));
    CHECK_THROWS_AS(default_denominator(0), DomainError);
}

TEST_CASE("build_R") {
    HyperTerm kernel = cyclotomic_kernel();
    SUBCASE("leading entry is 1 and p = 1 has a single factor") {
        BiOreOp rec = jhat_recursion(1);
        auto R = build_R(rec, kernel.t);
        REQUIRE(R.size() == 2);
        CHECK(R[1] == RatFun(1));
        CHECK(R[0] == rec.coeff(0) * kernel.t);
    }
    SUBCASE("requires leading coefficient 1") {
        BiOreOp bad({RatFun(1), RatFun(2)});
        CHECK_THROWS_AS(build_R(bad, kernel.t), DomainError);
    }
    SUBCASE("R_i(n,k) = r_i(k) c(n,k+p)/c(n,k+i) at lattice points") {
        int p = 2;
        BiOreOp rec = jhat_recursion(p);
        auto R = build_R(rec, kernel.t);
        int checked = 0;
        for (long n = 5; n <= 9; ++n) {
            long k = n - 4;
            for (size_t i = 0; i < R.size(); ++i) {
                RatFun ck_i = cyclo_kernel_value(n, k + static_cast<long>(i));
                if (ck_i.is_zero()) continue;
                RatFun lhs, rhs;
                try {
                    lhs = R[i].subst_qpow(Var::X, n).subst_qpow(Var::Y, k);
                    rhs = rec.coeff(static_cast<int>(i)).subst_qpow(Var::Y, k) *
                          cyclo_kernel_value(n, k + p) / ck_i;
                } catch (const PoleError&) {
                    continue;
                }
                CHECK(lhs == rhs);
            }
            ++checked;
        }
        CHECK(checked == 5);
    }
}

TEST_CASE("chain_certs") {
    HyperTerm kernel = cyclotomic_kernel();
    SUBCASE("p = 1 is just the top certificate") {
        std::vector<RatFun> R = {kernel.t, RatFun(1)};
        RatFun c = rf("x*y + 1");
        auto certs = chain_certs(c, R);
        REQUIRE(certs.size() == 1);
        CHECK(certs[0] == c);
    }
    SUBCASE("zero top certificate chains to zeros") {
        BiOreOp rec = jhat_recursion(2);
        auto R = build_R(rec, kernel.t);
        auto certs = chain_certs(RatFun(), R);
        for (auto& c : certs) CHECK(c.is_zero());
    }
    SUBCASE("back-substitution satisfies the chain equation") {
        BiOreOp rec = jhat_recursion(2);
        auto R = build_R(rec, kernel.t);
        RatFun c_top = rf("(x + y)/(q^(k)*(1 - q^(k-n)))");
        auto certs = chain_certs(c_top, R);
        REQUIRE(certs.size() == 2);
        RatFun residual =
            certs[0].shift(Var::Y, 1) - certs[1] - c_top.shift(Var::Y, 1) * R[1];
        CHECK(residual.is_zero());
    }
}

TEST_CASE("qzeilberger on the cyclotomic-function summands") {
    SUBCASE("p = 1 gives the first-order homogeneous recursion") {
        auto zb = qzeilberger(jhat_summand(1), 1);
        REQUIRE(zb.has_value());
        const auto& [rec, cert] = *zb;
        CHECK(rec.op.order() == 1);
        CHECK(rec.rhs.is_zero());
        CHECK(rec.op.coeff(0) * rf("1") == rec.op.coeff(1) * rf("q^(n+2)"));
        CHECK(!cert.is_zero());
    }
    SUBCASE("p = 2 gives order 2, p = -1 order 1") {
        auto z2 = qzeilberger(jhat_summand(2), 2);
        REQUIRE(z2.has_value());
        CHECK(z2->first.op.order() == 2);
        CHECK(z2->first.rhs.is_zero());
        auto zm1 = qzeilberger(jhat_summand(-1), 1);
        REQUIRE(zm1.has_value());
        CHECK(zm1->first.op.order() == 1);
        // the figure-eight cyclotomic coefficients are constant
        CHECK(zm1->first.op.coeff(0) == -zm1->first.op.coeff(1));
    }
    SUBCASE("found recursions annihilate directly summed values") {
        for (int p : {1, -1, 2}) {
            BiOreOp rec = jhat_recursion(p);
            auto vals = jhat_values(p, 12);
            for (long k = 0; k + rec.order() <= 12; ++k)
                CHECK(rec.apply(vals, 0, k).is_zero());
        }
    }
}

TEST_CASE("celine_q") {
    HyperTerm term = jhat_summand(1);
    SUBCASE("order zero only has the trivial solution") {
        CHECK(!celine_q(term, 0, 0).has_value());
    }
    SUBCASE("termwise relation exists at (3, 2) and annihilates the sum") {
        auto op = celine_q(term, 3, 2);
        REQUIRE(op.has_value());
        CHECK(op->order() >= 1);
        auto vals = jhat_values(1, 12);
        for (long n = 0; n + op->order() <= 12; ++n) CHECK(op->apply(vals, 0, n).is_zero());
    }
    SUBCASE("celine and qzeilberger annihilate the same summed sequence") {
        auto cel = celine_q(term, 3, 2);
        auto zb = qzeilberger(term, 1);
        REQUIRE(cel.has_value());
        REQUIRE(zb.has_value());
        auto vals = jhat_values(1, 13);
        for (long n = 0; n <= 10; ++n) {
            if (n + cel->order() <= 13) CHECK(cel->apply(vals, 0, n).is_zero());
            if (n + zb->first.op.order() <= 13) CHECK(zb->first.op.apply(vals, 0, n).is_zero());
        }
    }
}

TEST_CASE("multicert solves p = 1 and the residuals vanish") {
    HyperTerm kernel = cyclotomic_kernel();
    BiOreOp rec = jhat_recursion(1);
    Poly D = default_denominator(1);
    auto res = multicert_telescope(kernel, rec, 1, 1, D.deg(Var::Y) + 2, D);
    REQUIRE(res.has_value());
    CHECK(res->rec.op.order() == 1);
    CHECK(res->certs.size() == 1);
    CHECK(res->denominator == D);

    ResidualReport rep = verify_telescope(*res, kernel, rec);
    CHECK(rep.ok);

    CHECK(res->rec.op.coeff(0) * rf("q^(n+1)-1") ==
          res->rec.op.coeff(1) * rf("q^(3*n+2)*(q^n-1)"));

    SUBCASE("boundary orientation is fixed by the oracle") {
        BoundaryOracle oracle;
        oracle.jhat_value = [](long j) { return jhat(1, j); };
        oracle.sum_value = [](long n) { return colored_jones(1, n); };
        RatFun b = boundary_rhs(*res, kernel, oracle);
        CHECK(!b.is_zero());
        CHECK(res->boundary_sign != 0);
        FixtureRec fix = load_fixture_rec(1, fixture_dir_or_default(""));
        CHECK(rec_equal_up_to_unit(res->rec, fix.rec));
    }
}

TEST_CASE("find_recursion respects its budget") {
    HyperTerm kernel = cyclotomic_kernel();
    BiOreOp rec = jhat_recursion(2);
    BoundaryOracle oracle;
    oracle.jhat_value = [](long j) { return jhat(2, j); };
    oracle.sum_value = [](long n) { return colored_jones(2, n); };
    FindOptions opt;
    opt.budget_seconds = 1e-9;
    CHECK_THROWS_AS(find_recursion(kernel, rec, 2, oracle, opt), SearchExhausted);
}

TEST_CASE("homogenized telescope output annihilates the sum") {
    TelescopeResult res = noncomm_A(1);
    OreOp h = homogenize(res.rec);
    CHECK(h.order() == res.rec.op.order() + 1);
    auto values = colored_jones_values(1, 9, false);
    for (long n = 0; n + h.order() <= 9; ++n) CHECK(h.apply(values, 0, n).is_zero());
}
