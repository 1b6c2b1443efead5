/**
 * Exact integer and rational scalars, plus a few vector helpers shared by
 * every module.  All arithmetic is GMP-backed; nothing in the library ever
 * touches floating point except for report-only ratios.
 */
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace normalpoly {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

template <class T>
using Matrix = std::vector<std::vector<T>>;

/** Thrown when an operation is called outside its documented domain. */
class PreconditionError : public std::invalid_argument
{
    public:
        explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/** Canonical "p/q" text for a rational; integers print without a denominator. */
inline std::string toString(const Rational& q)
{
    return q.str();
}

inline Rational parseRational(std::string_view text)
{
    try
    {
        return Rational(std::string(text));
    }
    catch (const std::exception&)
    {
        throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    }
}

inline Integer gcdOf(const IntVector& v)
{
    Integer g = 0;
    for (const auto& x : v)
    {
        if (x != 0)
            g = boost::multiprecision::gcd(g, boost::multiprecision::abs(x));
        if (g == 1)
            break;
    }
    return g;
}

/** Divides out the content of v in place (no-op on the zero vector). */
inline void makePrimitive(IntVector& v)
{
    Integer g = gcdOf(v);
    if (g > 1)
        for (auto& x : v)
            x /= g;
}

/** Scales a rational vector by the lcm of its denominators. */
inline IntVector clearDenominators(const RatVector& v)
{
    Integer l = 1;
    for (const auto& x : v)
        l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
    IntVector out;
    out.reserve(v.size());
    for (const auto& x : v)
        out.push_back(boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x)));
    return out;
}

inline RatVector toRational(const IntVector& v)
{
    return RatVector(v.begin(), v.end());
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b)
{
    T s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0)
            s += a[i] * b[i];
    return s;
}

}   // namespace normalpoly
