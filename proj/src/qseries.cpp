#include "phiv/qseries.hpp"

#include <vector>
#include <algorithm>
#include <mutex>

namespace phiv::qseries {

namespace {

// dense coefficient window [base24, base24 + size) on the 1/24 grid
struct Dense {
    exp24_t base = 0;
    std::vector<mpz_class> c;
};

Dense to_dense(const QSeries& a, exp24_t upto24) {
    Dense d;
    d.base = a.lead24();
    exp24_t hi = std::min(a.trunc24, upto24);
    if (hi < d.base) hi = d.base;
    d.c.assign(static_cast<size_t>(hi - d.base), mpz_class(0));
    for (auto& [e, v] : a.terms)
        if (e < hi) d.c[static_cast<size_t>(e - d.base)] = v;
    return d;
}

QSeries from_dense(const Dense& d, exp24_t trunc24) {
    QSeries r;
    r.trunc24 = trunc24;
    for (size_t i = 0; i < d.c.size(); ++i) {
        exp24_t e = d.base + static_cast<exp24_t>(i);
        if (e >= trunc24) break;
        if (d.c[i] != 0) r.terms.emplace(e, d.c[i]);
    }
    return r;
}

} // namespace

QSeries make_one(exp24_t trunc24) {
    QSeries r;
    r.trunc24 = trunc24;
    if (trunc24 > 0) r.terms.emplace(0, 1);
    return r;
}

QSeries make_monomial(exp24_t e24, const mpz_class& c, exp24_t trunc24) {
    QSeries r;
    r.trunc24 = trunc24;
    if (c != 0 && e24 < trunc24) r.terms.emplace(e24, c);
    return r;
}

QSeries add(const QSeries& a, const QSeries& b) {
    QSeries r;
    r.trunc24 = std::min(a.trunc24, b.trunc24);
    for (auto& [e, v] : a.terms)
        if (e < r.trunc24) r.terms[e] += v;
    for (auto& [e, v] : b.terms)
        if (e < r.trunc24) r.terms[e] += v;
    for (auto it = r.terms.begin(); it != r.terms.end();)
        it = (it->second == 0) ? r.terms.erase(it) : std::next(it);
    return r;
}

QSeries mul(const QSeries& a, const QSeries& b) {
    // product valid where every contributing pair is known
    exp24_t rtrunc = std::min(a.trunc24 + b.lead24(), b.trunc24 + a.lead24());
    QSeries r;
    r.trunc24 = rtrunc;
    if (a.is_zero() || b.is_zero()) return r;
    Dense da = to_dense(a, a.trunc24), db = to_dense(b, b.trunc24);
    exp24_t rbase = da.base + db.base;
    if (rtrunc <= rbase) return r;
    size_t limit = static_cast<size_t>(rtrunc - rbase);
    std::vector<mpz_class> out(limit);
    for (size_t i = 0; i < da.c.size() && i < limit; ++i) {
        if (da.c[i] == 0) continue;
        size_t jmax = std::min(db.c.size(), limit - i);
        for (size_t j = 0; j < jmax; ++j)
            if (db.c[j] != 0) out[i + j] += da.c[i] * db.c[j];
    }
    Dense dr{rbase, std::move(out)};
    return from_dense(dr, rtrunc);
}

QSeries invert(const QSeries& a) {
    if (a.is_zero()) throw std::runtime_error("non-unit leading coefficient");
    exp24_t L = a.lead24();
    const mpz_class& u = a.terms.begin()->second;
    if (u != 1 && u != -1) throw std::runtime_error("non-unit leading coefficient");
    exp24_t T = a.trunc24 - L; // relative precision
    Dense da = to_dense(a, a.trunc24);
    // long division: b with a*b = 1, b known on [-L, -L+T)
    std::vector<mpz_class> b(static_cast<size_t>(T));
    b[0] = u; // 1/u = u for u = +-1
    for (exp24_t e = 1; e < T; ++e) {
        mpz_class s = 0;
        for (exp24_t d = 1; d <= e; ++d) {
            const mpz_class& ad = da.c[static_cast<size_t>(d)];
            if (ad != 0 && b[static_cast<size_t>(e - d)] != 0)
                s += ad * b[static_cast<size_t>(e - d)];
        }
        b[static_cast<size_t>(e)] = -u * s; // u^{-1} = u
    }
    Dense dr{-L, std::move(b)};
    return from_dense(dr, -L + T);
}

QSeries pow(const QSeries& a, long n) {
    if (n == 0) {
        // relative precision of a, anchored at exponent 0
        return make_one(a.trunc24 - a.lead24());
    }
    QSeries base = (n < 0) ? invert(a) : a;
    unsigned long m = static_cast<unsigned long>(n < 0 ? -n : n);
    QSeries acc = make_one(base.trunc24 - base.lead24());
    QSeries p = base;
    while (m) {
        if (m & 1) acc = mul(acc, p);
        m >>= 1;
        if (m) p = mul(p, p);
    }
    return acc;
}

QSeries truncate(const QSeries& a, exp24_t order24) {
    QSeries r;
    r.trunc24 = std::min(order24, a.trunc24);
    for (auto& [e, v] : a.terms)
        if (e < r.trunc24) r.terms.emplace(e, v);
    return r;
}

QSeries shift(const QSeries& a, exp24_t by24) {
    QSeries r;
    r.trunc24 = a.trunc24 + by24;
    for (auto& [e, v] : a.terms) r.terms.emplace(e + by24, v);
    return r;
}

QSeries eta_series(long m, long p, exp24_t order24) {
    // final leading exponent is m*p/24; compute the factor product to the
    // needed relative precision, power, then shift by q^{mp/24}
    exp24_t T = order24 - m * p;
    if (T < 1) T = 1;
    QSeries base;
    base.trunc24 = T;
    {
        std::vector<mpz_class> v(static_cast<size_t>(T));
        v[0] = 1;
        for (exp24_t n = 1; 24 * m * n < T; ++n) {
            exp24_t j = 24 * m * n;
            for (exp24_t i = T - 1; i >= j; --i)
                if (v[static_cast<size_t>(i - j)] != 0)
                    v[static_cast<size_t>(i)] -= v[static_cast<size_t>(i - j)];
        }
        Dense d{0, std::move(v)};
        base = from_dense(d, T);
    }
    QSeries powed = pow(base, p);
    return truncate(shift(powed, m * p), order24);
}

QSeries theta_series(int sh, exp24_t order24) {
    QSeries r;
    r.trunc24 = order24;
    for (long long n = 0;; ++n) {
        // (n + sh/2)^2 * 24 = 24n^2 + 24 sh n + 6 sh^2
        exp24_t e = 24 * n * n + 24 * sh * n + 6 * sh * sh;
        exp24_t eneg = 24 * n * n - 24 * sh * n + 6 * sh * sh; // n -> -n
        bool any = false;
        if (e < order24) { r.terms[e] += 1; any = true; }
        if (n > 0 || sh == 1) {
            // the -n (resp. -n-1 for the shifted case) branch
            exp24_t e2 = (sh == 0) ? eneg : 24 * (n + 1) * (n + 1) - 24 * (n + 1) + 6;
            if (e2 < order24) { r.terms[e2] += 1; any = true; }
        }
        if (!any && e >= order24) break;
    }
    for (auto it = r.terms.begin(); it != r.terms.end();)
        it = (it->second == 0) ? r.terms.erase(it) : std::next(it);
    return r;
}

QSeries c0_series(int k, exp24_t order24) {
    exp24_t R = order24 + 48; // result lead is -24; margin for safety
    QSeries num = mul(eta_series(2, 8, R), pow(theta_series(0, R), k));
    QSeries den = mul(eta_series(1, 8, R), eta_series(4, 8, R));
    return truncate(mul(num, invert(den)), order24);
}

QSeries c1_series(int k, exp24_t order24) {
    exp24_t R = order24 + 48;
    QSeries num = mul(eta_series(4, 8, R), pow(theta_series(1, R), k));
    QSeries q = mul(num, invert(eta_series(2, 16, R)));
    QSeries r = truncate(q, order24);
    QSeries out;
    out.trunc24 = r.trunc24;
    for (auto& [e, v] : r.terms) out.terms.emplace(e, mpz_class(-8 * v));
    return out;
}

namespace {

// independent oracle machinery: per-factor prefix-sum multiplications on a
// dense window, no long division anywhere
void mul_factor(std::vector<mpz_class>& v, exp24_t j) { // times (1 - q^{j/24})
    for (exp24_t i = static_cast<exp24_t>(v.size()) - 1; i >= j; --i)
        if (v[static_cast<size_t>(i - j)] != 0)
            v[static_cast<size_t>(i)] -= v[static_cast<size_t>(i - j)];
}
void div_factor(std::vector<mpz_class>& v, exp24_t j) { // times 1/(1 - q^{j/24})
    for (exp24_t i = j; i < static_cast<exp24_t>(v.size()); ++i)
        if (v[static_cast<size_t>(i - j)] != 0)
            v[static_cast<size_t>(i)] += v[static_cast<size_t>(i - j)];
}
void apply_eta_power(std::vector<mpz_class>& v, long m, long p) {
    exp24_t T = static_cast<exp24_t>(v.size());
    for (exp24_t n = 1; 24 * m * n < T; ++n)
        for (long r = 0; r < std::abs(p); ++r)
            (p > 0 ? mul_factor : div_factor)(v, 24 * m * n);
}
std::vector<mpz_class> theta_pow_dense(int sh, int k, exp24_t T) {
    std::vector<mpz_class> acc(static_cast<size_t>(T));
    acc[0] = 1;
    QSeries th = theta_series(sh, T);
    for (int r = 0; r < k; ++r) {
        std::vector<mpz_class> nxt(static_cast<size_t>(T));
        for (auto& [e, c] : th.terms)
            for (exp24_t i = 0; i + e < T; ++i)
                if (acc[static_cast<size_t>(i)] != 0)
                    nxt[static_cast<size_t>(i + e)] += c * acc[static_cast<size_t>(i)];
        acc = std::move(nxt);
    }
    return acc;
}

} // namespace

QSeries c0_series_oracle(int k, exp24_t order24) {
    const exp24_t guard = 24 * 50;
    exp24_t T = order24 + 24 + guard;
    std::vector<mpz_class> v = theta_pow_dense(0, k, T);
    apply_eta_power(v, 4, -8);
    apply_eta_power(v, 2, 8);
    apply_eta_power(v, 1, -8);
    Dense d{-24, std::move(v)}; // net eta exponent shift (16 - 8 - 32)/24 = -1
    return truncate(from_dense(d, -24 + T), order24);
}

QSeries c1_series_oracle(int k, exp24_t order24) {
    const exp24_t guard = 24 * 50;
    exp24_t T = order24 + guard;
    std::vector<mpz_class> v = theta_pow_dense(1, k, T);
    apply_eta_power(v, 2, -16);
    apply_eta_power(v, 4, 8);
    for (auto& c : v) c *= -8;
    Dense d{0, std::move(v)}; // net eta exponent shift (32 - 32)/24 = 0
    return truncate(from_dense(d, T), order24);
}

namespace {

std::mutex memo_mx;
QSeries memo_c0[10], memo_c1[10];

const QSeries& memo_get(int k, bool is_c0, exp24_t need24) {
    QSeries* slot = is_c0 ? &memo_c0[k] : &memo_c1[k];
    // trunc24 == 0 marks a never-built slot; negative exponents would
    // otherwise read the empty table as if it were a valid prefix
    if (slot->trunc24 <= need24 || slot->trunc24 <= 0) {
        exp24_t ord = std::max<exp24_t>(need24 + 24, 2 * slot->trunc24);
        ord = std::max<exp24_t>(ord, 24 * 16);
        *slot = is_c0 ? c0_series(k, ord) : c1_series(k, ord);
    }
    return *slot;
}

} // namespace

mpz_class coeff_c0(int k, const mpq_class& l) {
    if (k < 0 || k > 9) throw std::runtime_error("k out of range");
    if (l.get_den() != 1) return 0;
    if (l < -1) return 0;
    mpq_class e24q = l * 24;
    exp24_t e24 = static_cast<exp24_t>(e24q.get_num().get_si());
    std::lock_guard<std::mutex> lk(memo_mx);
    return memo_get(k, true, e24).coeff(e24);
}

mpz_class coeff_c1(int k, const mpq_class& l) {
    if (k < 0 || k > 9) throw std::runtime_error("k out of range");
    mpq_class l4 = l * 4;
    if (l4.get_den() != 1) return 0;
    // support lives on k/4 + Z
    mpz_class rem = l4.get_num() % 4;
    if (((rem - k) % 4) != 0) return 0;
    if (l4.get_num() < k) return 0;
    mpq_class e24q = l * 24;
    exp24_t e24 = static_cast<exp24_t>(e24q.get_num().get_si());
    std::lock_guard<std::mutex> lk(memo_mx);
    return memo_get(k, false, e24).coeff(e24);
}

} // namespace phiv::qseries
