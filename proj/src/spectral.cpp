#include "phiv/spectral.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace phiv::spectral {

namespace {

Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
Dual operator/(Dual a, Dual b) {
    return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}
Dual operator+(Dual a, double b) { return {a.v + b, a.d}; }
Dual operator-(Dual a, double b) { return {a.v - b, a.d}; }
Dual operator*(Dual a, double b) { return {a.v * b, a.d * b}; }
Dual operator-(double a, Dual b) { return {a - b.v, -b.d}; }
// x^s for real x > 0 and dual s
Dual pow_base(double x, Dual s) {
    double lx = std::log(x);
    double p = std::exp(s.v * lx);
    return {p, p * lx * s.d};
}

// B_2 .. B_16
constexpr double kBernoulli[] = {1.0 / 6,    -1.0 / 30,     1.0 / 42,
                                 -1.0 / 30,  5.0 / 66,      -691.0 / 2730,
                                 7.0 / 6,    -3617.0 / 510};

template <class T>
T hurwitz_impl(T s, double a) {
    const int M = 30;
    T sum{};
    for (int n = 0; n < M; ++n) sum = sum + pow_base(n + a, s * -1.0);
    double x = M + a;
    sum = sum + pow_base(x, (1.0 - s)) / (s - 1.0);
    sum = sum + pow_base(x, s * -1.0) * 0.5;
    // Euler-Maclaurin tail: B_{2r}/(2r)! * s(s+1)...(s+2r-2) * x^{-s-2r+1}
    T rising = s;
    double fact = 2.0; // (2r)!
    for (int r = 1; r <= 8; ++r) {
        sum = sum + rising * (kBernoulli[r - 1] / fact) *
                        pow_base(x, (1.0 - 2 * r) - s);
        if (r < 8) {
            rising = rising * (s + (2.0 * r - 1)) * (s + 2.0 * r);
            fact *= (2.0 * r + 1) * (2.0 * r + 2);
        }
    }
    return sum;
}

template <>
double hurwitz_impl<double>(double s, double a) {
    Dual r = hurwitz_impl(Dual{s, 0.0}, a);
    return r.v;
}

// digamma at 3/2: psi(3/2) = 2 - gamma - 2 log 2
double psi_three_halves() {
    return 2.0 - euler_gamma() - 2.0 * std::log(2.0);
}

// adaptive Simpson
double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
    if (depth > 60) throw std::runtime_error("quadrature non-convergence");
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
    if (std::abs(left + right - whole) <= 15 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth + 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth + 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 0);
}

double surface_volume(int n) {
    // vol(S^{n-1}) = 2 pi^{n/2} / Gamma(n/2)
    return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

} // namespace

double hurwitz_zeta(double s, double a) {
    if (s == 1.0) throw std::runtime_error("pole at s = 1");
    return hurwitz_impl(s, a);
}

Dual hurwitz_zeta_dual(Dual s, double a) {
    if (s.v == 1.0) throw std::runtime_error("pole at s = 1");
    return hurwitz_impl(s, a);
}

double euler_gamma() {
    // H_n - log n - 1/(2n) + B-series corrections, n = 100: error < 1e-15
    static const double g = [] {
        const int n = 100;
        double h = 0;
        for (int i = 1; i <= n; ++i) h += 1.0 / i;
        double x = n;
        return h - std::log(x) - 1.0 / (2 * x) + 1.0 / (12 * x * x) -
               1.0 / (120 * x * x * x * x);
    }();
    return g;
}

std::vector<mpq_class> td_prime_series(int order) {
    if (order > 8) throw std::runtime_error("order too large");
    size_t n = static_cast<size_t>(order) + 1;
    // With g = (1-e^{-x})/x and N2 = (1 - e^{-x} - x e^{-x})/x^2:
    //   1/x - e^{-x}/(1-e^{-x}) = (1 - e^{-x} - x e^{-x})/(x^2 g) = N2/g,
    // so Td'(x) = (1/g)(N2/g) = N2/g^2, all series with g(0) = 1.
    std::vector<mpq_class> g(n), n2(n);
    mpq_class fact = 1; // m!
    for (size_t m = 0; m < n; ++m) {
        // g_m = (-1)^m / (m+1)!
        // n2_m: coefficient of x^{m+2} in 1 - e^{-x} - x e^{-x}:
        //   (-1)^{m+3}(1/(m+2)! - 1/(m+1)!) = (-1)^m (1/(m+1)! - 1/(m+2)!)
        mpq_class f1 = fact * mpq_class(static_cast<long>(m) + 1); // (m+1)!
        mpq_class f2 = f1 * mpq_class(static_cast<long>(m) + 2);   // (m+2)!
        int sgn = (m % 2 == 0) ? 1 : -1;
        g[m] = mpq_class(sgn) / f1;
        n2[m] = mpq_class(sgn) * (1 / f1 - 1 / f2);
        fact *= mpq_class(static_cast<long>(m) + 1);
    }
    // divide n2 by g twice
    auto divide = [&](std::vector<mpq_class> num,
                      const std::vector<mpq_class>& den) {
        std::vector<mpq_class> q(n);
        for (size_t m = 0; m < n; ++m) {
            mpq_class c = num[m];
            for (size_t j = 1; j <= m; ++j) c -= den[j] * q[m - j];
            q[m] = c / den[0];
        }
        return q;
    };
    return divide(divide(n2, g), g);
}

mpq_class bost_scaling_exponent(int d, const std::vector<long>& h0i,
                                const mpq_class& td_prime_integral) {
    if (h0i.size() != static_cast<size_t>(d) + 1)
        throw std::runtime_error("hodge numbers length mismatch");
    mpq_class s = 0;
    for (int i = 0; i <= d; ++i) {
        mpq_class t = mpq_class(d - i) * h0i[static_cast<size_t>(i)];
        s += (i % 2 == 0) ? t : -t;
    }
    return -s + td_prime_integral;
}

P1Zeta p1_torsion_zeta(double c, int j_max) {
    if (c <= 0) throw std::runtime_error("nonpositive normalization");
    // j = 0 term and j >= 2 terms by dual arithmetic at s = 0; the j = 1 term
    // hits the Hurwitz pole at argument 1 and is expanded by hand:
    //   c^{-s} (s/2) zeta_H(2s+1,3/2) = 1/4 + s(-psi(3/2)/2 - log(c)/4) + ...
    Dual s{0.0, 1.0};
    Dual cs = pow_base(c, s * -1.0);
    Dual total = cs * hurwitz_impl(s * 2.0 - 1.0, 1.5) * 2.0;
    total = total + Dual{0.25, -0.5 * psi_three_halves() - 0.25 * std::log(c)};
    // binom(-s, j) = (-1)^j s(s+1)...(s+j-1)/j!
    Dual rising = s; // s(s+1)...(s+j-1)
    double jfact = 1;
    double pow4 = 1; // (-1)^j (-1/4)^j = 4^{-j}
    double last = 1;
    for (int j = 2; j <= j_max; ++j) {
        rising = rising * (s + (j - 1.0));
        jfact *= j;
        pow4 *= 0.25;
        Dual term = cs * (rising * (pow4 / jfact)) *
                    hurwitz_impl(s * 2.0 + (2.0 * j - 1), 1.5) * 2.0;
        total = total + term;
        last = std::max(std::abs(term.v), std::abs(term.d));
    }
    if (last > 1e-12) throw std::runtime_error("j_max too small");
    P1Zeta r;
    r.zeta0 = total.v;
    r.zeta_prime0 = total.d;
    r.tau = std::exp(total.d);
    return r;
}

double cone_zeta_prime0(int n, double delta, double quad_tol) {
    if (n < 2 || delta <= 0 || delta > 1)
        throw std::runtime_error("bad cone parameters");
    double omega = surface_volume(n);
    double dn = omega / std::pow(4.0 * M_PI, 0.5 * n);
    double dnp = dn * 0.5 * std::tgamma(0.5 * n); // d_n int_0^inf xi^{n-1}e^{-xi^2}
    double R = 3.0 * delta;
    // I1 = int_R^inf 2 log(R/xi) xi^{n-1} e^{-xi^2} dxi
    auto f1 = [&](double xi) {
        return 2.0 * std::log(R / xi) * std::pow(xi, n - 1) *
               std::exp(-xi * xi);
    };
    double i1 = integrate(f1, R, R + 12.0, quad_tol);
    // I2 = int_0^R 2 log(R/xi) xi^{n-1} e^{-xi^2} dxi, xi = R e^{-v}
    auto f2 = [&](double v) {
        double xi = R * std::exp(-v);
        return 2.0 * v * std::pow(xi, n) * std::exp(-xi * xi);
    };
    double i2 = integrate(f2, 0.0, 60.0 / n, quad_tol);
    // Gamma'(1) = -EulerGamma
    return dnp * euler_gamma() - dn * i1 + dn * i2;
}

ConeZetaResult cone_zeta_derivative(const ConeZetaParams& params) {
    ConeZetaResult res;
    res.zeta_prime_delta_0 =
        cone_zeta_prime0(params.n, params.delta, params.quad_tol);
    // fit zeta'_delta(0) = a x + b + (3 delta)^2 (c x + d), x = log(1/(3 delta)),
    // over the standard delta ladder; a is the divergence coefficient
    {
        const double deltas[4] = {1e-1, 1e-2, 1e-3, 1e-4};
        double A[4][4], y[4];
        for (int i = 0; i < 4; ++i) {
            double R = 3.0 * deltas[i];
            double x = std::log(1.0 / R);
            A[i][0] = x;
            A[i][1] = 1.0;
            A[i][2] = R * R * x;
            A[i][3] = R * R;
            y[i] = cone_zeta_prime0(params.n, deltas[i], params.quad_tol);
        }
        // 4x4 Gaussian elimination
        for (int col = 0; col < 4; ++col) {
            int piv = col;
            for (int r = col + 1; r < 4; ++r)
                if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
            std::swap(A[col], A[piv]);
            std::swap(y[col], y[piv]);
            for (int r = col + 1; r < 4; ++r) {
                double m = A[r][col] / A[col][col];
                for (int cc = col; cc < 4; ++cc) A[r][cc] -= m * A[col][cc];
                y[r] -= m * y[col];
            }
        }
        double sol[4];
        for (int r = 3; r >= 0; --r) {
            double v = y[r];
            for (int cc = r + 1; cc < 4; ++cc) v -= A[r][cc] * sol[cc];
            sol[r] = v / A[r][r];
        }
        res.divergence_coefficient = sol[0];
    }
    // sum_q (-1)^q q binom(n, q) is exactly 0 for n >= 2
    mpz_class comb = 0, binom = 1;
    for (int q = 0; q <= params.n; ++q) {
        mpz_class t = binom * q;
        comb += (q % 2 == 0) ? t : -t;
        binom = binom * (params.n - q) / (q + 1);
    }
    if (comb == 0)
        res.partial_torsion = 0.0;
    else
        res.partial_torsion =
            -res.zeta_prime_delta_0 * comb.get_d();
    return res;
}

bool hodge_constraints_ok(const HodgeSpectrum& s) {
    auto check = [](const std::array<std::array<mpq_class, 3>, 3>& z) {
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) {
                if (z[p][q] != z[q][p]) return false;
                if (z[p][q] != z[2 - q][2 - p]) return false;
            }
        for (int p = 0; p < 3; ++p)
            if (z[p][0] - z[p][1] + z[p][2] != 0) return false;
        return true;
    };
    return check(s.zeta0) && check(s.zeta_prime0);
}

HodgeSpectrum random_constrained_spectrum(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-50, 50), den(1, 20);
    auto draw = [&] { return mpq_class(num(rng), den(rng)); };
    auto fill = [&](std::array<std::array<mpq_class, 3>, 3>& z) {
        mpq_class b = draw(), c = draw(); // free transversal (z01, z02)
        mpq_class a = b - c;              // z00 from exactness
        mpq_class d = b * 2;              // z11
        z[0][0] = z[2][2] = a;
        z[0][1] = z[1][0] = z[1][2] = z[2][1] = b;
        z[0][2] = z[2][0] = c;
        z[1][1] = d;
        for (auto& row : z)
            for (auto& q : row) q.canonicalize();
    };
    HodgeSpectrum s;
    fill(s.zeta0);
    fill(s.zeta_prime0);
    return s;
}

SurfaceIdentity bcov_surface_identity(const HodgeSpectrum& s) {
    if (!hodge_constraints_ok(s)) throw std::runtime_error("constraints violated");
    SurfaceIdentity out;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
            mpq_class t = mpq_class(p * q) * s.zeta_prime0[p][q];
            out.lhs += ((p + q) % 2 == 0) ? -t : t;
        }
    for (int q = 0; q < 3; ++q) {
        mpq_class t = mpq_class(2 * q) * s.zeta_prime0[0][q];
        out.rhs += (q % 2 == 0) ? t : -t;
    }
    out.equal = (out.lhs == out.rhs);
    return out;
}

} // namespace phiv::spectral
