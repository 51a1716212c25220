#include <hpack/rational.hh>
#include <hpack/error.hh>

#include <boost/multiprecision/cpp_int.hpp>

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;
using boost::multiprecision::pow;
using std::string;

namespace hpack
{
    auto make_rational(long long num, long long den) -> Rational
    {
        if (den == 0)
            throw Error{ ErrorKind::BadParameter, "zero denominator" };
        return Rational{ BigInt{ num }, BigInt{ den } };
    }

    auto to_string(const Rational & value) -> string
    {
        return numerator(value).str() + "/" + denominator(value).str();
    }

    auto parse_rational(const string & text) -> Rational
    {
        try {
            auto slash = text.find('/');
            if (slash == string::npos)
                return Rational{ BigInt{ text } };
            BigInt num{ text.substr(0, slash) };
            BigInt den{ text.substr(slash + 1) };
            if (den == 0)
                throw Error{ ErrorKind::Parse, "zero denominator in '" + text + "'" };
            return Rational{ num, den };
        }
        catch (const std::runtime_error & e) {
            if (dynamic_cast<const Error *>(&e))
                throw;
            throw Error{ ErrorKind::Parse, "not a rational: '" + text + "'" };
        }
    }

    auto floor(const Rational & value) -> BigInt
    {
        BigInt num = numerator(value), den = denominator(value);
        BigInt q = num / den;
        if (num < 0 && q * den != num)
            --q;
        return q;
    }

    auto ceil(const Rational & value) -> BigInt
    {
        BigInt num = numerator(value), den = denominator(value);
        BigInt q = num / den;
        if (num > 0 && q * den != num)
            ++q;
        return q;
    }

    auto compare_with_power(long long count, const Rational & tau, int exp_num, int exp_den, long long total) -> int
    {
        if (count < 0 || total < 0 || tau < 0 || exp_num < 0 || exp_den <= 0)
            throw Error{ ErrorKind::BadParameter, "compare_with_power expects nonnegative arguments" };

        // count >= tau^(a/b) T  <=>  count^b den^a >= num^a T^b
        BigInt lhs = pow(BigInt{ count }, unsigned(exp_den)) * pow(BigInt{ denominator(tau) }, unsigned(exp_num));
        BigInt rhs = pow(BigInt{ numerator(tau) }, unsigned(exp_num)) * pow(BigInt{ total }, unsigned(exp_den));
        return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
    }
}
