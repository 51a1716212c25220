#ifndef HPACK_RATIONAL_HH
#define HPACK_RATIONAL_HH

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace hpack
{
    using BigInt = boost::multiprecision::cpp_int;
    using Rational = boost::multiprecision::cpp_rational;

    auto make_rational(long long numerator, long long denominator) -> Rational;

    /// Always "p/q", including for integers ("3/1").
    auto to_string(const Rational & value) -> std::string;

    /// Accepts "p/q" or a bare integer "p".
    auto parse_rational(const std::string & text) -> Rational;

    auto ceil(const Rational & value) -> BigInt;
    auto floor(const Rational & value) -> BigInt;

    /// Sign of count - tau^(exp_num/exp_den) * total, computed exactly by raising both
    /// sides to the exp_den-th power. Requires count, total >= 0 and 0 <= tau.
    auto compare_with_power(long long count, const Rational & tau, int exp_num, int exp_den, long long total) -> int;
}

#endif
