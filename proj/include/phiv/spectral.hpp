// Zeta-regularized quantities with closed forms: the Td' series and the
// associated scaling exponent, the P^1 torsion zeta by Hurwitz-zeta
// continuation, the flat-cone partial zeta, and the BCOV surface identity on
// synthetic Hodge spectra.
#pragma once

#include <gmpxx.h>

#include <array>
#include <random>
#include <vector>

namespace phiv::spectral {

// Euler-Maclaurin Hurwitz zeta, valid away from s = 1; |error| ~ 1e-14 for
// moderate |s|
double hurwitz_zeta(double s, double a);
// value and d/ds together (dual-number evaluation)
struct Dual {
    double v = 0;
    double d = 0;
};
Dual hurwitz_zeta_dual(Dual s, double a);

double euler_gamma();

// exact rational Taylor coefficients of
// Td'(x) = x/(1-e^{-x}) * (1/x - e^{-x}/(1-e^{-x})) = 1/2 + x/6 + O(x^2)
std::vector<mpq_class> td_prime_series(int order);

// coefficient of log(lambda) in log(tau(lambda g)/tau(g)):
// -sum_i (-1)^i (d-i) h^{0,i} + integral of Td'
mpq_class bost_scaling_exponent(int d, const std::vector<long>& h0i,
                                const mpq_class& td_prime_integral);

struct P1Zeta {
    double zeta0 = 0;
    double zeta_prime0 = 0;
    double tau = 0; // exp(zeta'(0))
};
// spectrum c*k(k+1) with multiplicity 2k+1, k >= 1;
// zeta(s) = c^{-s} sum_j binom(-s,j)(-1/4)^j 2 zeta_H(2s+2j-1, 3/2)
P1Zeta p1_torsion_zeta(double c, int j_max);

struct ConeZetaParams {
    int n = 2;
    double delta = 0.1;
    double quad_tol = 1e-11;
};
struct ConeZetaResult {
    double zeta_prime_delta_0 = 0;
    // fitted coefficient of log(1/(3 delta)) as delta -> 0; expected 2 d_n'
    double divergence_coefficient = 0;
    double partial_torsion = 0; // exactly 0 for n >= 2
};
ConeZetaResult cone_zeta_derivative(const ConeZetaParams& params);
// the bare zeta'_delta(0) for one delta (used by the divergence fit)
double cone_zeta_prime0(int n, double delta, double quad_tol);

// synthetic surface Hodge spectrum: zeta_{p,q}(0) and zeta'_{p,q}(0) as exact
// rationals subject to zeta_{p,q} = zeta_{q,p} = zeta_{2-q,2-p} and
// zeta_{p,0} - zeta_{p,1} + zeta_{p,2} = 0
struct HodgeSpectrum {
    std::array<std::array<mpq_class, 3>, 3> zeta0;
    std::array<std::array<mpq_class, 3>, 3> zeta_prime0;
};
bool hodge_constraints_ok(const HodgeSpectrum& s);
// free transversal (zeta_{0,1}, zeta_{0,2}) drawn at random, then completed
HodgeSpectrum random_constrained_spectrum(std::mt19937_64& rng);

struct SurfaceIdentity {
    mpq_class lhs; // -sum (-1)^{p+q} p q zeta'_{p,q}(0), i.e. log T_BCOV
    mpq_class rhs; // 2 sum (-1)^q q zeta'_{0,q}(0), i.e. -2 log tau
    bool equal = false;
};
SurfaceIdentity bcov_surface_identity(const HodgeSpectrum& s);

} // namespace phiv::spectral
