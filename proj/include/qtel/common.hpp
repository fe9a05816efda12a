#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <cstdint>

namespace qtel {

using Rat = mpq_class;
using Int = mpz_class;

// Error hierarchy. Everything thrown by the library derives from Error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
    explicit DivisionByZero(const std::string& what) : Error(what) {}
};

struct PoleError : Error {
    explicit PoleError(const std::string& what = "evaluation at a pole") : Error(what) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

struct IndexError : Error {
    explicit IndexError(const std::string& what) : Error(what) {}
};

struct SearchExhausted : Error {
    explicit SearchExhausted(const std::string& what) : Error(what) {}
};

struct FixtureError : Error {
    explicit FixtureError(const std::string& what) : Error(what) {}
};

// Internal invariant violations (exact division failed, ...). Seeing one is a bug.
struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error(what) {}
};

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0) {
        if (e < 0) throw DivisionByZero("0 raised to a negative power");
        return Rat(0);
    }
    Rat b = e < 0 ? Rat(1) / base : base;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    Rat acc(1);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

inline Rat rat_gcd(const Rat& a, const Rat& b) {
    // gcd on Q normalized as gcd(numerators)/lcm(denominators), always >= 0
    Int gn, dl;
    mpz_gcd(gn.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
    mpz_lcm(dl.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
    Rat r(gn, dl);
    r.canonicalize();
    return r;
}

} // namespace qtel
