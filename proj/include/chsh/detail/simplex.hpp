#pragma once

#include <cstddef>
#include <vector>

#include "chsh/error.hpp"

namespace chsh::detail {

/// Result of a phase-1 feasibility solve for {x >= 0 : Ax = b}.
/// When infeasible, `farkas` is a separating functional: farkas.b > 0 while
/// farkas.A_j <= 0 for every column j (up to the tolerance).
template <class T>
struct Phase1Result {
    bool feasible = false;
    std::vector<T> x;       // witness, size n, meaningful when feasible
    std::vector<T> farkas;  // dual certificate, size m, meaningful when infeasible
    T infeasibility{};      // optimal sum of artificials (0 when feasible)
};

/// Phase-1 simplex with Bland's rule over a dense tableau. Small fixed-size
/// problems only; T is either an exact rational (tol must be 0) or double.
template <class T>
Phase1Result<T> phase1_feasible(std::vector<std::vector<T>> a, std::vector<T> b, const T& tol) {
    const std::size_t m = a.size();
    const std::size_t n = m == 0 ? 0 : a[0].size();
    if (b.size() != m) fail(ErrorCode::Internal, "simplex: |b| != row count");

    // Flip rows so b >= 0, then tableau columns: n structurals, m artificials,
    // rhs. Row m is the phase-1 objective written as -(sum of artificial
    // rows), so entries are negated column sums and obj[rhs] = -sum(b).
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] < T(0)) {
            b[i] = -b[i];
            for (auto& v : a[i]) v = -v;
        }
    }

    const std::size_t cols = n + m + 1;
    const std::size_t rhs = n + m;
    std::vector<std::vector<T>> t(m + 1, std::vector<T>(cols, T(0)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = T(1);
        t[i][rhs] = b[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
        T s(0);
        for (std::size_t i = 0; i < m; ++i) s += a[i][j];
        t[m][j] = -s;
    }
    {
        T s(0);
        for (std::size_t i = 0; i < m; ++i) s += b[i];
        t[m][rhs] = -s;
    }

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    auto pivot = [&](std::size_t prow, std::size_t pcol) {
        T inv = t[prow][pcol];
        for (std::size_t j = 0; j < cols; ++j) t[prow][j] = t[prow][j] / inv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == prow) continue;
            T factor = t[i][pcol];
            if (factor == T(0)) continue;
            for (std::size_t j = 0; j < cols; ++j) t[i][j] -= factor * t[prow][j];
        }
        basis[prow] = pcol;
    };

    for (std::size_t iter = 0;; ++iter) {
        if (iter > 100000) fail(ErrorCode::Internal, "simplex: pivot limit exceeded");
        // Bland: lowest-index column with a negative reduced cost.
        std::size_t enter = cols;
        for (std::size_t j = 0; j < n + m; ++j) {
            if (t[m][j] < -tol) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;

        std::size_t leave = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= tol) continue;
            if (leave == m) {
                leave = i;
                continue;
            }
            T lhs = t[i][rhs] * t[leave][enter];
            T rhs_v = t[leave][rhs] * t[i][enter];
            if (lhs < rhs_v || (lhs == rhs_v && basis[i] < basis[leave])) leave = i;
        }
        if (leave == m)
            fail(ErrorCode::Internal, "simplex: phase-1 objective unbounded (cannot happen)");
        pivot(leave, enter);
    }

    Phase1Result<T> result;
    result.infeasibility = -t[m][rhs];
    result.feasible = !(result.infeasibility > tol);
    if (result.feasible) {
        result.x.assign(n, T(0));
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) result.x[basis[i]] = t[i][rhs] < T(0) ? T(0) : t[i][rhs];
    } else {
        // Reduced cost of artificial j is 1 - y_j, so y_j = 1 - obj[n+j].
        result.farkas.assign(m, T(0));
        for (std::size_t i = 0; i < m; ++i) result.farkas[i] = T(1) - t[m][n + i];
    }
    return result;
}

} // namespace chsh::detail
