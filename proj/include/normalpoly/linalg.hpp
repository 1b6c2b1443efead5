/**
 * Exact linear algebra over the integers and rationals: fraction-free
 * reduced row echelon form, rank, and canonical null-space bases.
 */
#pragma once

#include "normalpoly/exact.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace normalpoly {

/**
 * Reduced row echelon form of an integer matrix, kept integral.  Each row
 * is primitive with a positive pivot, and every pivot column is zero
 * outside its pivot row.  Zero rows are dropped.
 */
struct Echelon
{
    Matrix<Integer> rows;
    std::vector<std::size_t> pivots;   // pivot column of rows[i]
    std::size_t cols = 0;

    std::size_t rank() const { return rows.size(); }
};

/**
 * Integer-preserving Gauss-Jordan elimination.  Rows are combined as
 * `p * row - c * pivotRow` and then divided by their content, so no
 * fractions ever appear and entries stay small.
 */
inline Echelon integerRref(Matrix<Integer> a, std::size_t cols)
{
    Echelon out;
    out.cols = cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c)
    {
        std::size_t best = a.size();
        for (std::size_t i = r; i < a.size(); ++i)
        {
            if (a[i][c] != 0 && (best == a.size() || abs(a[i][c]) < abs(a[best][c])))
                best = i;
        }
        if (best == a.size())
            continue;
        std::swap(a[r], a[best]);
        if (a[r][c] < 0)
            for (auto& x : a[r])
                x = -x;
        makePrimitive(a[r]);

        const Integer& p = a[r][c];
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            if (i == r || a[i][c] == 0)
                continue;
            Integer g = gcd(p, abs(a[i][c]));
            Integer mi = p / g;
            Integer mr = a[i][c] / g;
            for (std::size_t j = 0; j < cols; ++j)
                a[i][j] = mi * a[i][j] - mr * a[r][j];
            makePrimitive(a[i]);
        }
        out.pivots.push_back(c);
        ++r;
    }
    a.resize(r);
    out.rows = std::move(a);
    return out;
}

inline std::size_t rank(const Matrix<Integer>& a, std::size_t cols)
{
    return integerRref(a, cols).rank();
}

inline Matrix<Integer> toIntegerRows(const Matrix<Rational>& a)
{
    Matrix<Integer> out;
    out.reserve(a.size());
    for (const auto& row : a)
        out.push_back(clearDenominators(row));
    return out;
}

inline std::size_t rank(const Matrix<Rational>& a, std::size_t cols)
{
    return integerRref(toIntegerRows(a), cols).rank();
}

/** Primitive integer basis of {x : a x = 0}, one vector per free column. */
inline Matrix<Integer> integerNullSpace(const Echelon& e)
{
    std::vector<bool> isPivot(e.cols, false);
    for (auto p : e.pivots)
        isPivot[p] = true;

    Matrix<Integer> basis;
    for (std::size_t j = 0; j < e.cols; ++j)
    {
        if (isPivot[j])
            continue;
        Integer l = 1;
        for (std::size_t r = 0; r < e.rows.size(); ++r)
            if (e.rows[r][j] != 0)
                l = lcm(l, e.rows[r][e.pivots[r]]);
        IntVector x(e.cols, 0);
        x[j] = l;
        for (std::size_t r = 0; r < e.rows.size(); ++r)
            if (e.rows[r][j] != 0)
                x[e.pivots[r]] = -e.rows[r][j] * l / e.rows[r][e.pivots[r]];
        makePrimitive(x);
        basis.push_back(std::move(x));
    }
    return basis;
}

inline Matrix<Integer> integerNullSpace(const Matrix<Integer>& a, std::size_t cols)
{
    return integerNullSpace(integerRref(a, cols));
}

/**
 * The unique reduced row echelon basis of the row space of `rows`, with
 * pivots scaled to 1.  Two spanning sets of the same subspace always give
 * identical output.
 */
inline Matrix<Rational> canonicalBasis(const Matrix<Integer>& rows, std::size_t cols)
{
    Echelon e = integerRref(rows, cols);
    Matrix<Rational> out;
    out.reserve(e.rank());
    for (std::size_t r = 0; r < e.rank(); ++r)
    {
        Rational p(e.rows[r][e.pivots[r]]);
        RatVector row;
        row.reserve(cols);
        for (const auto& x : e.rows[r])
            row.push_back(Rational(x) / p);
        out.push_back(std::move(row));
    }
    return out;
}

inline Matrix<Rational> canonicalBasis(const Matrix<Rational>& rows, std::size_t cols)
{
    return canonicalBasis(toIntegerRows(rows), cols);
}

template <class T>
std::vector<T> multiply(const Matrix<T>& a, const std::vector<T>& x)
{
    std::vector<T> out;
    out.reserve(a.size());
    for (const auto& row : a)
        out.push_back(dot(row, x));
    return out;
}

template <class T>
bool isZero(const std::vector<T>& v)
{
    return std::all_of(v.begin(), v.end(), [](const T& x) { return x == 0; });
}

}   // namespace normalpoly
