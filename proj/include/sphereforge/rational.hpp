#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sphereforge {

/// Errors raised by library operations on invalid input.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input/parse errors (CLI maps these to exit code 2).
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// Internal certification failures (a bug, not a user error).
struct CertificationError : Error {
    explicit CertificationError(const std::string& msg) : Error(msg) {}
};

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar. Always kept in lowest terms with positive
/// denominator; arithmetic never rounds. This alias is the field seam:
/// the linear algebra below is templated on the scalar type, so a finite
/// prime field could be dropped in without touching the callers.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Parses "p", "-p" or "p/q". Throws ParseError on malformed input or q = 0.
inline Rational parse_rational(std::string_view s) {
    auto bad = [&] { throw ParseError("malformed rational: '" + std::string(s) + "'"); };
    if (s.empty()) bad();
    std::string num, den = "1";
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        num = std::string(s);
    } else {
        num = std::string(s.substr(0, slash));
        den = std::string(s.substr(slash + 1));
        if (num.empty() || den.empty()) bad();
    }
    auto digits_ok = [](const std::string& t) {
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    if (!digits_ok(num) || !digits_ok(den)) bad();
    BigInt q(den);
    if (q == 0) throw ParseError("zero denominator in rational: '" + std::string(s) + "'");
    return Rational(BigInt(num), q);
}

/// Renders in lowest terms: "p" when integral, else "p/q".
inline std::string rational_str(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Deterministic source of small rationals for randomized checks.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform integer in [lo, hi].
    long integer(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(gen_);
    }

    /// Small rational with numerator in [-4,4] and denominator in {1,2,3}.
    Rational rational() {
        return Rational(integer(-4, 4), integer(1, 3));
    }

    /// Small rational that is never zero.
    Rational nonzero_rational() {
        Rational r = rational();
        while (r == 0) r = rational();
        return r;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace sphereforge
