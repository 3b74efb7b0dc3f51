// Exact Laurent q-series on the (1/24)Z exponent grid, and the two
// Borcherds-exponent generating functions c^(0), c^(1).
//
// Truncation semantics: coefficients at exponents >= trunc24/24 are UNKNOWN,
// not zero.  Products conservatively shrink the valid range.  All arithmetic
// is exact (GMP integers); no floating point in this module.
#pragma once

#include <gmpxx.h>
#include <map>
#include <stdexcept>
#include <string>

namespace phiv::qseries {

// Exponents are stored as numerator over the fixed denominator 24.
using exp24_t = long long;

struct QSeries {
    // exponent*24 -> nonzero coefficient
    std::map<exp24_t, mpz_class> terms;
    // exponent*24 of the truncation order; everything >= this is unknown
    exp24_t trunc24 = 0;

    bool is_zero() const { return terms.empty(); }
    // lowest known exponent (times 24); trunc24 if no terms
    exp24_t lead24() const { return terms.empty() ? trunc24 : terms.begin()->first; }
    mpz_class coeff(exp24_t e24) const {
        if (e24 >= trunc24) throw std::runtime_error("beyond truncation");
        auto it = terms.find(e24);
        return it == terms.end() ? mpz_class(0) : it->second;
    }
};

QSeries make_one(exp24_t trunc24);
QSeries make_monomial(exp24_t e24, const mpz_class& c, exp24_t trunc24);

QSeries add(const QSeries& a, const QSeries& b);
QSeries mul(const QSeries& a, const QSeries& b);
// requires leading coefficient +-1 ("non-unit leading coefficient" otherwise)
QSeries invert(const QSeries& a);
QSeries pow(const QSeries& a, long n);
QSeries truncate(const QSeries& a, exp24_t order24);
QSeries shift(const QSeries& a, exp24_t by24);

// eta(m tau)^p truncated at order24/24; leading exponent m*p/24, coefficient +-1
QSeries eta_series(long m, long p, exp24_t order24);
// theta_{A1 + shift/2}(tau) = sum_n q^{(n+shift/2)^2}, shift in {0,1}
QSeries theta_series(int shift, exp24_t order24);

// sum_l c_k^(0)(l) q^l = eta(2t)^8 theta_{A1}(t)^k / (eta(t)^8 eta(4t)^8)
QSeries c0_series(int k, exp24_t order24);
// sum_l c_k^(1)(l) q^l = -8 eta(4t)^8 theta_{A1+1/2}(t)^k / eta(2t)^16
QSeries c1_series(int k, exp24_t order24);

// Memoized single-coefficient access; l is an exact rational exponent.
// Below-support arguments return 0; "beyond truncation" only if the internal
// tables cannot be extended (they can, so these are total for finite l).
mpz_class coeff_c0(int k, const mpq_class& l);
mpz_class coeff_c1(int k, const mpq_class& l);

// Independent oracle used by tests and the acceptance suite: expands the same
// products with per-factor prefix-sum multiplications (no long division) in a
// different association order, with guard terms.
QSeries c0_series_oracle(int k, exp24_t order24);
QSeries c1_series_oracle(int k, exp24_t order24);

} // namespace phiv::qseries
