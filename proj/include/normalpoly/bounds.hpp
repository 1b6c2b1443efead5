/**
 * Exact evaluation of McMullen's upper bound M_{d,k} and the vertex-count
 * bounds assembled from it.  Binomials follow the convention C(a,b) = 0
 * unless 0 <= b <= a.  Floating point appears only in growth-ratio
 * reporting.
 */
#pragma once

#include "normalpoly/admfaces.hpp"
#include "normalpoly/exact.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace normalpoly {

using BigCount = Integer;

inline BigCount binomial(long a, long b)
{
    if (b < 0 || b > a)
        return 0;
    b = std::min(b, a - b);
    BigCount r = 1;
    for (long i = 1; i <= b; ++i)
        r = r * (a - b + i) / i;
    return r;
}

/** Maximum number of vertices of a d-polytope with k facets. */
inline BigCount mcmullen(long d, long k)
{
    if (d < 2 || d >= k)
        throw PreconditionError("M_{d,k} requires 2 <= d < k (got d = " + std::to_string(d) +
                                ", k = " + std::to_string(k) + ")");
    if (d % 2 == 0)
        return binomial(k - d / 2, d / 2) + binomial(k - d / 2 - 1, d / 2 - 1);
    return 2 * binomial(k - (d + 1) / 2, (d + 1) / 2 - 1);
}

/** sum_{i=0}^{floor(m/2)} alpha^i C(m-i, i) */
inline Rational sAlpha(const Rational& alpha, long m)
{
    if (m < 0)
        throw PreconditionError("sAlpha requires m >= 0");
    if (alpha <= 0)
        throw PreconditionError("sAlpha requires alpha > 0");
    Rational s = 0;
    Rational power = 1;
    for (long i = 0; 2 * i <= m; ++i)
    {
        s += power * Rational(binomial(m - i, i));
        power *= alpha;
    }
    return s;
}

inline BigCount pow3(long e)
{
    return e < 0 ? BigCount(0) : pow(BigCount(3), static_cast<unsigned>(e));
}

inline BigCount naiveQuadBound(long n)
{
    if (n < 1)
        throw PreconditionError("naiveQuadBound requires n >= 1");
    return pow(BigCount(4), static_cast<unsigned>(n));
}

namespace detail {

inline void requireAtLeastThree(long n, const char* what)
{
    if (n < 3)
        throw PreconditionError(std::string(what) + " requires n >= 3 (got n = " + std::to_string(n) + ")");
}

}   // namespace detail

/** 3^(n-1) + 2 * 3^(n-2) + sum_{d=2}^{n-1} 3^(n-1-d) M_{d,n} */
inline BigCount quadTheoremBound(long n)
{
    detail::requireAtLeastThree(n, "quadTheoremBound");
    BigCount s = pow3(n - 1) + 2 * pow3(n - 2);
    for (long d = 2; d <= n - 1; ++d)
        s += pow3(n - 1 - d) * mcmullen(d, n);
    return s;
}

/** sum_{e=n+1}^{2n} 3^(2n-e) M_{e,5n} */
inline BigCount stdTheoremBound(long n)
{
    detail::requireAtLeastThree(n, "stdTheoremBound");
    BigCount s = 0;
    for (long e = n + 1; e <= 2 * n; ++e)
        s += pow3(2 * n - e) * mcmullen(e, 5 * n);
    return s;
}

/** 2 * 3^(n-1) + sum_{d=1}^{n-1} 3^(n-1-d) M_{d+1,5n} */
inline BigCount oneVertexBound(long n)
{
    detail::requireAtLeastThree(n, "oneVertexBound");
    BigCount s = 2 * pow3(n - 1);
    for (long d = 1; d <= n - 1; ++d)
        s += pow3(n - 1 - d) * mcmullen(d + 1, 5 * n);
    return s;
}

/**
 * Vertex bound from an observed quad face profile: a maximal d-face
 * contributes 1 vertex for d = 0, 2 for d = 1 and M_{d,n} otherwise.
 */
inline BigCount profileBound(const FaceProfile& p, long n)
{
    BigCount s = 0;
    for (const auto& [d, c] : p.countsByDim)
    {
        if (d < -1 || d > n - 1)
            throw PreconditionError("profile dimension " + std::to_string(d) + " out of range for n = " +
                                    std::to_string(n));
        if (d == 0)
            s += c;
        else if (d == 1)
            s += 2 * BigCount(c);
        else if (d >= 2)
            s += BigCount(c) * mcmullen(d, n);
    }
    return s;
}

/**
 * Strict growth in k (M_{d,k} < M_{d,k'} for 2 <= d < k < k' <= kMax) and
 * growth in d below k/2 (M_{d,k} <= M_{d+1,k} for 2 <= d <= k/2), both
 * restricted to d <= dMax.
 */
inline CheckResult checkMonotonicity(long dMax, long kMax)
{
    for (long d = 2; d <= dMax; ++d)
        for (long k = d + 1; k <= kMax; ++k)
        {
            BigCount here = mcmullen(d, k);
            for (long k2 = k + 1; k2 <= kMax; ++k2)
                if (!(here < mcmullen(d, k2)))
                    return CheckResult::fail("M_{" + std::to_string(d) + "," + std::to_string(k) + "} >= M_{" +
                                             std::to_string(d) + "," + std::to_string(k2) + "}");
        }
    for (long k = 3; k <= kMax; ++k)
        for (long d = 2; 2 * d <= k && d <= dMax && d + 1 < k; ++d)
            if (mcmullen(d, k) > mcmullen(d + 1, k))
                return CheckResult::fail("M_{" + std::to_string(d) + "," + std::to_string(k) + "} > M_{" +
                                         std::to_string(d + 1) + "," + std::to_string(k) + "}");
    return CheckResult::ok();
}

/** Smallest d > k/2 with M_{d,k} > M_{d+1,k}, if any. */
inline std::optional<long> firstDescentAboveHalf(long k)
{
    for (long d = k / 2 + 1; d + 1 < k; ++d)
        if (mcmullen(d, k) > mcmullen(d + 1, k))
            return d;
    return std::nullopt;
}

struct Extrema
{
    std::vector<long> maxima;
    std::vector<long> minima;
};

/** Strict interior local extrema of d -> M_{d,k} over 2 <= d <= k-1. */
inline Extrema mcmullenExtrema(long k)
{
    Extrema e;
    for (long d = 3; d + 1 <= k - 1; ++d)
    {
        BigCount prev = mcmullen(d - 1, k), here = mcmullen(d, k), next = mcmullen(d + 1, k);
        if (here > prev && here > next)
            e.maxima.push_back(d);
        if (here < prev && here < next)
            e.minima.push_back(d);
    }
    return e;
}

/** CSV rows "d,k,M" for 2 <= d <= k-1. */
inline std::string mcmullenCsv(long k)
{
    std::ostringstream out;
    out << "d,k,M\n";
    for (long d = 2; d < k; ++d)
        out << d << ',' << k << ',' << mcmullen(d, k) << '\n';
    return out.str();
}

inline double ratio(const BigCount& num, const BigCount& den)
{
    return Rational(num, den).convert_to<double>();
}

/** Growth constants of the three asymptotic bounds. */
inline double quadGrowthConstant()
{
    return (3.0 + std::sqrt(13.0)) / 2.0;
}

inline double stdGrowthConstant()
{
    return 9.0 * std::pow((1.0 + std::sqrt(13.0 / 9.0)) / 2.0, 5);
}

inline double oneVertexGrowthConstant()
{
    return 3.0 * std::pow((1.0 + std::sqrt(13.0 / 9.0)) / 2.0, 5);
}

}   // namespace normalpoly
