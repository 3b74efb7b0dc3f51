// Numerical evaluation of the automorphic product attached to a Del Pezzo
// model on its tube domain: truncated product evaluation with a certified
// tail bound, Petersson norms, translation/Weyl symmetry checks, the scan of
// norm (-1) walls, and the algebraic quasi-pullback along a blow-down.
#pragma once

#include "phiv/delpezzo.hpp"

#include <complex>
#include <random>
#include <vector>

namespace phiv::borcherds {

using cplx = std::complex<double>;
using intmat::QVec;
using intmat::ZMat;
using intmat::ZVec;

struct TubePoint {
    QVec x; // real part, rational coordinates in the Picard basis
    QVec y; // imaginary part, must lie in the Kaehler cone
};

struct EvalResult {
    cplx log_value = 0;          // principal-branch sum of factor logs
    cplx value = 0;              // exp(log_value)
    double truncation_bound = 0; // bound on |log Phi_true - log_value|
    mpq_class cap_used = 0;
    long terms_used = 0;
    bool factor_vanished = false; // z lies on (numerically) a product wall
};

// log Phi = pi*i<c1,z> + sum over effective alpha with <alpha,y> <= cap of
// c0(alpha^2) log(1-e^{2 pi i<alpha,z>}) + the half-characteristic beta part
EvalResult phi_eval(delpezzo::Model& m, const TubePoint& z, const mpq_class& cap);

// <y,y>^{4+degree} |Phi|^2
double petersson_norm(delpezzo::Model& m, const TubePoint& z, const mpq_class& cap);

struct CheckReport {
    double discrepancy = 0; // relative mismatch of the asserted identity
    double bound = 0;       // combined truncation bounds of both evaluations
    bool pass = false;      // discrepancy <= 10 * bound
};

// Phi(z + lambda) = e^{pi i<c1,lambda>} Phi(z); exact for even <c1,lambda>
CheckReport translation_check(delpezzo::Model& m, const TubePoint& z,
                              const ZVec& lambda, const mpq_class& cap);

// ||Phi(sigma z)|| = ||Phi(z)|| for a Picard isometry sigma fixing c1 and
// permuting the effective generators
CheckReport weyl_symmetry_check(delpezzo::Model& m, const TubePoint& z,
                                const ZMat& sigma, const mpq_class& cap);

// a canonical nontrivial isometry for the symmetry check: the Cremona
// involution on three exceptional classes where the rank allows, an
// exceptional-class swap otherwise, identity for the rank <= 1 cases
ZMat standard_weyl_element(const delpezzo::Model& m);

// random integer vector with coefficients in [-2, 2] and <c1, lambda> even,
// the regime where the translation identity is phase-exact
ZVec random_even_translation(const delpezzo::Model& m, std::mt19937_64& rng);

struct HeegnerRow {
    ZVec ell;          // ell^2 = -1
    mpz_class height;  // <ell, c1>
    long exponent;     // [ell effective] + [-ell effective]
};
// all walls (0, ell, n)^perp with ell^2 = -1, 0 < <ell,c1> <= height_cap
std::vector<HeegnerRow> heegner_exponent_scan(delpezzo::Model& m,
                                              const mpq_class& height_cap);

// (-2 pi i) e^{pi i<c1(big),z>} times the product over projected classes on
// the contracted wall, with grouped exponents; z is given in small-model
// coordinates and lifted through the blow-down embedding
EvalResult quasi_pullback(delpezzo::BlowDown& bd, const TubePoint& z,
                          const mpq_class& cap);

struct QPComparison {
    std::vector<cplx> ratios; // Phi_small(z) / quasi_pullback(big, z)
    double max_rel_spread = 0;
    double max_bound = 0;
};
QPComparison compare_quasi_pullback(delpezzo::BlowDown& bd,
                                    const std::vector<TubePoint>& pts,
                                    const mpq_class& cap);

} // namespace phiv::borcherds
