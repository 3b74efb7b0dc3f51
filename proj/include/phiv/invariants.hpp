// Scalar assemblers for the torsion invariants tau_k, tau_BCOV, tau_M, the
// rescaling/anomaly invariance checks, and the lattice/BCOV comparison
// bookkeeping.  Geometric integrals that would need an actual metric are
// typed inputs; unknown universal constants are carried as opaque symbols.
#pragma once

#include <gmpxx.h>

#include <random>
#include <string>
#include <vector>

namespace phiv::invariants {

struct C2Integrals {
    mpq_class int_c2_Y_over_24; // (1/24) integral of c2 over Y = (16-k)/32
    mpq_class int_c2_X;         // integral of c2 over X = 24 - (3/2)k
};
C2Integrals c2_integrals(int k);

struct InvariantInputs {
    int k = 1;
    double tau_Y_gamma = 1;
    double vol_Y_gamma = 1;
    double xi_l1_norm = 1;                // L^1 norm of the 2-form Xi
    std::vector<double> singular_ratios;  // (gamma^2/2!)/|Xi| at each point
    double bott_chern_integral = 0;       // int_Y log(|Xi|/(gamma^2/2!)) c2
};

// tau * Vol * ||Xi||^{-(4+k)/8} * (prod ratios)^{-5/32} * exp(integral/24);
// the ratio-product exponent -5/32 is pinned down by requiring invariance
// under Xi -> c Xi given (1/24) int_Y c2 = (16-k)/32:
//   -(4+k)/8 - k e + (16-k)/32 = 0  =>  e = -5/32
double tau_k_assemble(const InvariantInputs& inp);

// the Xi-rescaling Xi -> c Xi with its induced changes; tau_k is unchanged
InvariantInputs rescale_xi(const InvariantInputs& inp, double c);

// a second input bundle related by the anomaly transformation: per-point
// ratio factors u_p, a shift v of the Bott-Chern integral, a new volume;
// tau_Y is compensated so tau_k is preserved
InvariantInputs anomaly_transform(const InvariantInputs& inp,
                                  const std::vector<double>& ratio_factors,
                                  double integral_shift, double new_vol);

double tau_bcov_from_tau_k(double tau_k); // tau_k^{-2}

struct TauM {
    double value = 0;
};
// volume^{(14-r_M)/4} * equivariant torsion * torsion * fixed-curve factor * A_M
TauM tau_M_assemble(double volume, double equivariant_torsion, double torsion,
                    double fixed_curve_volume_torsion, double A_M_term,
                    int r_M);
struct TauKFromTauM {
    double value = 0;        // tau_M^{1/2}; true tau_k = symbol * value
    std::string symbol;      // "C(k)^-1"
};
TauKFromTauM tau_k_from_tau_M(double tau_M, int k);

struct BcovComparison {
    mpq_class numeric;  // 2^{-k-4} (coker ratio)^{-2} (disc ratio)^{-1}
    std::string symbol; // "C(k)^8"
    int r = 10;
    int r_tilde = 0; // 10 + k
};
BcovComparison bcov_comparison_ratio(int k, const mpz_class& disc_plus_X,
                                     const mpz_class& disc_plus_Xtilde,
                                     const mpz_class& coker_q,
                                     const mpz_class& coker_qtilde);

// Vol_{L2}(H^2(V,Z),gamma) = 2^{-(r+1)} |Coker q*|^2 |disc| * Vol(X)
double covolume(int r, const mpz_class& coker, const mpz_class& disc,
                double vol_X);

long chi_orb(int k); // 12k

} // namespace phiv::invariants
