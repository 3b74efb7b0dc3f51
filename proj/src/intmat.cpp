#include "phiv/intmat.hpp"

#include <stdexcept>

namespace phiv::intmat {

ZMat zmat(size_t r, size_t c) { return ZMat(r, ZVec(c, 0)); }

ZMat identity(size_t n) {
    ZMat a = zmat(n, n);
    for (size_t i = 0; i < n; ++i) a[i][i] = 1;
    return a;
}

ZMat transpose(const ZMat& a) {
    if (a.empty()) return {};
    ZMat t = zmat(a[0].size(), a.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

ZMat mul(const ZMat& a, const ZMat& b) {
    size_t m = a.size(), k = b.size(), n = b.empty() ? 0 : b[0].size();
    ZMat r = zmat(m, n);
    for (size_t i = 0; i < m; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < n; ++j)
                if (b[l][j] != 0) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

ZVec mul(const ZMat& a, const ZVec& v) {
    ZVec r(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j)
            if (a[i][j] != 0 && v[j] != 0) r[i] += a[i][j] * v[j];
    return r;
}

mpz_class bilinear(const ZMat& a, const ZVec& v, const ZVec& w) {
    mpz_class s = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        mpz_class row = 0;
        for (size_t j = 0; j < w.size(); ++j)
            if (a[i][j] != 0 && w[j] != 0) row += a[i][j] * w[j];
        s += v[i] * row;
    }
    return s;
}

mpz_class det(const ZMat& a0) {
    ZMat a = a0;
    size_t n = a.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

std::pair<int, int> signature(const ZMat& gram) {
    size_t n = gram.size();
    QMat a(n, QVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = mpq_class(gram[i][j]);
    int pos = 0, neg = 0;
    for (size_t i = 0; i < n; ++i) {
        if (a[i][i] == 0) {
            // try a diagonal swap, else fold in a row with a nonzero pairing
            size_t jd = i;
            for (size_t j = i + 1; j < n; ++j)
                if (a[j][j] != 0) { jd = j; break; }
            if (jd != i) {
                std::swap(a[i], a[jd]);
                for (size_t r = 0; r < n; ++r) std::swap(a[r][i], a[r][jd]);
            } else {
                size_t jo = i;
                for (size_t j = i + 1; j < n; ++j)
                    if (a[i][j] != 0) { jo = j; break; }
                if (jo == i) throw std::runtime_error("degenerate form");
                for (size_t r = 0; r < n; ++r) a[i][r] += a[jo][r];
                for (size_t r = 0; r < n; ++r) a[r][i] += a[r][jo];
            }
        }
        mpq_class p = a[i][i];
        (p > 0 ? pos : neg)++;
        for (size_t r = i + 1; r < n; ++r) {
            if (a[r][i] == 0) continue;
            mpq_class f = a[r][i] / p;
            for (size_t c = i; c < n; ++c) a[r][c] -= f * a[i][c];
        }
        for (size_t c = i + 1; c < n; ++c) {
            if (a[i][c] == 0) continue;
            mpq_class f = a[i][c] / p;
            for (size_t r = i; r < n; ++r) a[r][c] -= f * a[r][i];
        }
    }
    return {pos, neg};
}

ZMat kernel(const ZMat& a0) {
    size_t m = a0.size(), n = a0.empty() ? 0 : a0[0].size();
    // column reduction of A while tracking the unimodular U with A U = H
    ZMat h = a0;
    ZMat u = identity(n);
    size_t col = 0;
    for (size_t row = 0; row < m && col < n; ++row) {
        // reduce entries h[row][col..] by repeated gcd column ops
        while (true) {
            size_t piv = n;
            for (size_t j = col; j < n; ++j)
                if (h[row][j] != 0 &&
                    (piv == n || cmp(abs(h[row][j]), abs(h[row][piv])) < 0))
                    piv = j;
            if (piv == n) break; // row already zero past col
            // move pivot into place
            if (piv != col) {
                for (size_t r = 0; r < m; ++r) std::swap(h[r][piv], h[r][col]);
                for (size_t r = 0; r < n; ++r) std::swap(u[r][piv], u[r][col]);
            }
            bool clean = true;
            for (size_t j = col + 1; j < n; ++j) {
                if (h[row][j] == 0) continue;
                mpz_class q = h[row][j] / h[row][col]; // truncated division
                if (q != 0) {
                    for (size_t r = 0; r < m; ++r) h[r][j] -= q * h[r][col];
                    for (size_t r = 0; r < n; ++r) u[r][j] -= q * u[r][col];
                }
                if (h[row][j] != 0) clean = false;
            }
            if (clean) { ++col; break; }
        }
    }
    // kernel = columns of U whose H column is entirely zero
    ZMat basis;
    for (size_t j = 0; j < n; ++j) {
        bool zero = true;
        for (size_t r = 0; r < m && zero; ++r) zero = (h[r][j] == 0);
        if (!zero) continue;
        ZVec v(n);
        for (size_t r = 0; r < n; ++r) v[r] = u[r][j];
        basis.push_back(std::move(v));
    }
    // return as columns: basis currently holds rows; transpose so that each
    // column of the result is one kernel vector
    return transpose(basis);
}

std::optional<QVec> solve(const QMat& a0, const QVec& b0) {
    QMat a = a0;
    QVec b = b0;
    size_t m = a.size(), n = m ? a[0].size() : 0;
    std::vector<size_t> where(n, m);
    size_t row = 0;
    for (size_t c = 0; c < n && row < m; ++c) {
        size_t p = row;
        while (p < m && a[p][c] == 0) ++p;
        if (p == m) continue;
        std::swap(a[p], a[row]);
        std::swap(b[p], b[row]);
        mpq_class inv = 1 / a[row][c];
        for (size_t j = c; j < n; ++j) a[row][j] *= inv;
        b[row] *= inv;
        for (size_t r = 0; r < m; ++r) {
            if (r == row || a[r][c] == 0) continue;
            mpq_class f = a[r][c];
            for (size_t j = c; j < n; ++j) a[r][j] -= f * a[row][j];
            b[r] -= f * b[row];
        }
        where[c] = row++;
    }
    for (size_t r = row; r < m; ++r)
        if (b[r] != 0) return std::nullopt;
    QVec x(n, 0);
    for (size_t c = 0; c < n; ++c)
        if (where[c] < m) x[c] = b[where[c]];
    return x;
}

std::pair<QMat, QVec> ldl(const QMat& a) {
    size_t n = a.size();
    QMat l(n, QVec(n, 0));
    QVec d(n, 0);
    for (size_t i = 0; i < n; ++i) l[i][i] = 1;
    for (size_t j = 0; j < n; ++j) {
        mpq_class dj = a[j][j];
        for (size_t k = 0; k < j; ++k) dj -= l[j][k] * l[j][k] * d[k];
        if (dj <= 0) throw std::runtime_error("form not positive definite");
        d[j] = dj;
        for (size_t i = j + 1; i < n; ++i) {
            mpq_class s = a[i][j];
            for (size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k] * d[k];
            l[i][j] = s / dj;
        }
    }
    return {l, d};
}

std::pair<mpz_class, ZVec> solve_gcd(const ZVec& w) {
    mpz_class g = 0;
    ZVec x(w.size(), 0);
    for (size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0) continue;
        if (g == 0) {
            g = abs(w[i]);
            x[i] = (w[i] > 0) ? 1 : -1;
            continue;
        }
        mpz_class g2, s, t;
        mpz_gcdext(g2.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(),
                   w[i].get_mpz_t());
        for (size_t j = 0; j < i; ++j) x[j] *= s;
        x[i] = t;
        g = g2;
    }
    return {g, x};
}

} // namespace phiv::intmat
