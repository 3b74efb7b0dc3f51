#include "phiv/conelp.hpp"

#include <cmath>
#include <stdexcept>

namespace phiv::conelp {

namespace {

bool all_zero(const ZVec& v) {
    for (auto& x : v)
        if (x != 0) return false;
    return true;
}

// continued-fraction rational approximation with bounded denominator
mpq_class rationalize(double x, long max_den = 1000000) {
    if (!std::isfinite(x)) return 0;
    bool neg = x < 0;
    x = std::fabs(x);
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(r);
        if (fl > 1e15) break;
        long a = static_cast<long>(fl);
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double frac = r - fl;
        if (frac < 1e-12) break;
        r = 1.0 / frac;
    }
    mpq_class out(p1, q1);
    out.canonicalize();
    return neg ? mpq_class(-out) : out;
}

bool verify_feasible(const std::vector<ZVec>& gens, const ZVec& target,
                     const std::vector<size_t>& cols, QVec& lambda_out) {
    size_t m = target.size();
    QMat a(m, QVec(cols.size()));
    QVec b(m);
    for (size_t i = 0; i < m; ++i) {
        b[i] = mpq_class(target[i]);
        for (size_t j = 0; j < cols.size(); ++j)
            a[i][j] = mpq_class(gens[cols[j]][i]);
    }
    auto x = intmat::solve(a, b);
    if (!x) return false;
    for (auto& v : *x)
        if (v < 0) return false;
    lambda_out.assign(gens.size(), 0);
    for (size_t j = 0; j < cols.size(); ++j) lambda_out[cols[j]] = (*x)[j];
    return true;
}

bool verify_farkas(const std::vector<ZVec>& gens, const ZVec& target,
                   const QVec& y) {
    mpq_class s = 0;
    for (size_t i = 0; i < target.size(); ++i) s += y[i] * target[i];
    if (s <= 0) return false;
    for (auto& g : gens) {
        mpq_class t = 0;
        for (size_t i = 0; i < g.size(); ++i) t += y[i] * g[i];
        if (t > 0) return false;
    }
    return true;
}

// floating phase-1; returns 1 feasible-candidate, 0 infeasible-candidate,
// -1 inconclusive
int float_phase1(const std::vector<ZVec>& gens, const ZVec& target,
                 std::vector<size_t>& basis_cols, std::vector<double>& dual) {
    size_t m = target.size(), n = gens.size();
    std::vector<std::vector<double>> t(m, std::vector<double>(n + m + 1, 0.0));
    std::vector<double> sign(m, 1.0);
    for (size_t i = 0; i < m; ++i) {
        double b = target[i].get_d();
        if (b < 0) sign[i] = -1.0;
        for (size_t j = 0; j < n; ++j) t[i][j] = sign[i] * gens[j][i].get_d();
        t[i][n + i] = 1.0;
        t[i][n + m] = sign[i] * b;
    }
    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) basis[i] = n + i;
    // reduced-cost row for min(sum of artificials): z_j = -sum_i t[i][j] for
    // non-artificial structure handled implicitly below
    std::vector<double> z(n + m + 1, 0.0);
    for (size_t j = 0; j <= n + m; ++j) {
        double s = 0;
        for (size_t i = 0; i < m; ++i) s += t[i][j];
        z[j] = (j < n ? 0.0 : (j < n + m ? 1.0 : 0.0)) - s;
    }
    const double eps = 1e-9;
    size_t iter_cap = 50 * (n + m) + 200;
    for (size_t it = 0; it < iter_cap; ++it) {
        size_t enter = n + m;
        double best = -eps;
        for (size_t j = 0; j < n + m; ++j)
            if (z[j] < best) { best = z[j]; enter = j; }
        if (enter == n + m) break;
        size_t leave = m;
        double ratio = 0;
        for (size_t i = 0; i < m; ++i) {
            if (t[i][enter] > eps) {
                double r = t[i][n + m] / t[i][enter];
                if (leave == m || r < ratio - 1e-12) { leave = i; ratio = r; }
            }
        }
        if (leave == m) return -1; // unbounded should not happen in phase 1
        double piv = t[leave][enter];
        for (size_t j = 0; j <= n + m; ++j) t[leave][j] /= piv;
        for (size_t i = 0; i < m; ++i) {
            if (i == leave || std::fabs(t[i][enter]) < 1e-14) continue;
            double f = t[i][enter];
            for (size_t j = 0; j <= n + m; ++j) t[i][j] -= f * t[leave][j];
        }
        double f = z[enter];
        for (size_t j = 0; j <= n + m; ++j) z[j] -= f * t[leave][j];
        basis[leave] = enter;
    }
    double obj = 0;
    for (size_t i = 0; i < m; ++i)
        if (basis[i] >= n) obj += t[i][n + m];
    if (obj < 1e-7) {
        basis_cols.clear();
        for (size_t i = 0; i < m; ++i)
            if (basis[i] < n) basis_cols.push_back(basis[i]);
        return 1;
    }
    if (obj > 1e-6) {
        // y_k = c_k - redcost(artificial k) = 1 - z[n+k], mapped back through
        // the row signs
        dual.assign(m, 0.0);
        for (size_t i = 0; i < m; ++i) dual[i] = sign[i] * (1.0 - z[n + i]);
        return 0;
    }
    return -1;
}

} // namespace

Result solve_exact(const std::vector<ZVec>& gens, const ZVec& target) {
    size_t m = target.size(), n = gens.size();
    if (all_zero(target)) return {true, QVec(n, 0), {}};
    QMat t(m, QVec(n + m + 1, 0));
    std::vector<int> sign(m, 1);
    for (size_t i = 0; i < m; ++i) {
        if (target[i] < 0) sign[i] = -1;
        for (size_t j = 0; j < n; ++j) t[i][j] = mpq_class(sign[i] * gens[j][i]);
        t[i][n + i] = 1;
        t[i][n + m] = mpq_class(sign[i] * target[i]);
    }
    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) basis[i] = n + i;
    QVec z(n + m + 1, 0);
    for (size_t j = 0; j <= n + m; ++j) {
        mpq_class s = 0;
        for (size_t i = 0; i < m; ++i) s += t[i][j];
        z[j] = (j >= n && j < n + m ? mpq_class(1) : mpq_class(0)) - s;
    }
    while (true) {
        size_t enter = n + m;
        for (size_t j = 0; j < n + m; ++j)
            if (z[j] < 0) { enter = j; break; } // Bland: smallest index
        if (enter == n + m) break;
        size_t leave = m;
        mpq_class ratio = 0;
        for (size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            mpq_class r = t[i][n + m] / t[i][enter];
            if (leave == m || r < ratio ||
                (r == ratio && basis[i] < basis[leave])) {
                leave = i;
                ratio = r;
            }
        }
        if (leave == m) throw std::runtime_error("phase-1 unbounded");
        mpq_class piv = t[leave][enter];
        for (size_t j = 0; j <= n + m; ++j) t[leave][j] /= piv;
        for (size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            mpq_class f = t[i][enter];
            for (size_t j = 0; j <= n + m; ++j) t[i][j] -= f * t[leave][j];
        }
        mpq_class f = z[enter];
        if (f != 0)
            for (size_t j = 0; j <= n + m; ++j) z[j] -= f * t[leave][j];
        basis[leave] = enter;
    }
    mpq_class obj = 0;
    for (size_t i = 0; i < m; ++i)
        if (basis[i] >= n) obj += t[i][n + m];
    Result res;
    if (obj == 0) {
        res.feasible = true;
        res.lambda.assign(n, 0);
        for (size_t i = 0; i < m; ++i)
            if (basis[i] < n) res.lambda[basis[i]] = t[i][n + m];
    } else {
        res.feasible = false;
        res.farkas.assign(m, 0);
        for (size_t i = 0; i < m; ++i)
            res.farkas[i] = mpq_class(sign[i]) * (mpq_class(1) - z[n + i]);
        if (!verify_farkas(gens, target, res.farkas))
            throw std::runtime_error("farkas certificate failed");
    }
    return res;
}

Result solve(const std::vector<ZVec>& gens, const ZVec& target) {
    size_t n = gens.size();
    if (all_zero(target)) return {true, QVec(n, 0), {}};
    std::vector<size_t> cols;
    std::vector<double> dual;
    int st = float_phase1(gens, target, cols, dual);
    if (st == 1) {
        Result r;
        if (verify_feasible(gens, target, cols, r.lambda)) {
            r.feasible = true;
            return r;
        }
    } else if (st == 0) {
        QVec y(dual.size());
        for (size_t i = 0; i < dual.size(); ++i) y[i] = rationalize(dual[i]);
        if (verify_farkas(gens, target, y)) {
            Result r;
            r.feasible = false;
            r.farkas = y;
            return r;
        }
    }
    return solve_exact(gens, target);
}

bool ConeCache::contains(const ZVec& v) {
    auto it = memo.find(v);
    if (it != memo.end()) return it->second;
    bool ans = solve(gens, v).feasible;
    memo.emplace(v, ans);
    return ans;
}

} // namespace phiv::conelp
