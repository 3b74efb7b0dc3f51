#include "phiv/invariants.hpp"

#include <cmath>
#include <stdexcept>

namespace phiv::invariants {

C2Integrals c2_integrals(int k) {
    if (k < 0 || k > 10) throw std::runtime_error("k out of range");
    C2Integrals r;
    r.int_c2_Y_over_24 = mpq_class(16 - k, 32);
    r.int_c2_X = mpq_class(24) - mpq_class(3 * k, 2);
    r.int_c2_Y_over_24.canonicalize();
    r.int_c2_X.canonicalize();
    return r;
}

double tau_k_assemble(const InvariantInputs& inp) {
    if (inp.k < 1 || inp.k > 10) throw std::runtime_error("k out of range");
    if (inp.tau_Y_gamma <= 0 || inp.vol_Y_gamma <= 0 || inp.xi_l1_norm <= 0)
        throw std::runtime_error("nonpositive input");
    if (inp.singular_ratios.size() != static_cast<size_t>(inp.k))
        throw std::runtime_error("ratio count mismatch");
    double prod = 1;
    for (double r : inp.singular_ratios) {
        if (r <= 0) throw std::runtime_error("nonpositive input");
        prod *= r;
    }
    return inp.tau_Y_gamma * inp.vol_Y_gamma *
           std::pow(inp.xi_l1_norm, -(4.0 + inp.k) / 8.0) *
           std::pow(prod, -5.0 / 32.0) *
           std::exp(inp.bott_chern_integral / 24.0);
}

InvariantInputs rescale_xi(const InvariantInputs& inp, double c) {
    if (c <= 0) throw std::runtime_error("nonpositive input");
    InvariantInputs out = inp;
    out.xi_l1_norm *= c;
    for (double& r : out.singular_ratios) r /= c;
    // log(|Xi|/(gamma^2/2!)) shifts by log c pointwise
    double int_c2_Y = 24.0 * c2_integrals(inp.k).int_c2_Y_over_24.get_d();
    out.bott_chern_integral += std::log(c) * int_c2_Y;
    return out;
}

InvariantInputs anomaly_transform(const InvariantInputs& inp,
                                  const std::vector<double>& ratio_factors,
                                  double integral_shift, double new_vol) {
    if (ratio_factors.size() != inp.singular_ratios.size())
        throw std::runtime_error("ratio count mismatch");
    if (new_vol <= 0) throw std::runtime_error("nonpositive input");
    InvariantInputs out = inp;
    double prod_u = 1;
    for (size_t i = 0; i < ratio_factors.size(); ++i) {
        if (ratio_factors[i] <= 0) throw std::runtime_error("nonpositive input");
        out.singular_ratios[i] *= ratio_factors[i];
        prod_u *= ratio_factors[i];
    }
    out.bott_chern_integral += integral_shift;
    out.vol_Y_gamma = new_vol;
    // tau transforms by the anomaly factor so that tau_k is preserved
    out.tau_Y_gamma = inp.tau_Y_gamma * (inp.vol_Y_gamma / new_vol) *
                      std::pow(prod_u, 5.0 / 32.0) *
                      std::exp(-integral_shift / 24.0);
    return out;
}

double tau_bcov_from_tau_k(double tau_k) {
    if (tau_k <= 0) throw std::runtime_error("nonpositive input");
    return 1.0 / (tau_k * tau_k);
}

TauM tau_M_assemble(double volume, double equivariant_torsion, double torsion,
                    double fixed_curve_volume_torsion, double A_M_term,
                    int r_M) {
    if (volume <= 0 || equivariant_torsion <= 0 || torsion <= 0 ||
        fixed_curve_volume_torsion <= 0 || A_M_term <= 0)
        throw std::runtime_error("nonpositive input");
    TauM t;
    t.value = std::pow(volume, (14.0 - r_M) / 4.0) * equivariant_torsion *
              torsion * fixed_curve_volume_torsion * A_M_term;
    return t;
}

TauKFromTauM tau_k_from_tau_M(double tau_M, int k) {
    if (tau_M <= 0) throw std::runtime_error("nonpositive input");
    TauKFromTauM r;
    r.value = std::sqrt(tau_M);
    r.symbol = "C(" + std::to_string(k) + ")^-1";
    return r;
}

BcovComparison bcov_comparison_ratio(int k, const mpz_class& disc_plus_X,
                                     const mpz_class& disc_plus_Xtilde,
                                     const mpz_class& coker_q,
                                     const mpz_class& coker_qtilde) {
    if (k < 1 || k > 10) throw std::runtime_error("k out of range");
    if (disc_plus_X == 0 || disc_plus_Xtilde == 0 || coker_q == 0 ||
        coker_qtilde == 0)
        throw std::runtime_error("zero denominator");
    BcovComparison b;
    mpq_class coker_ratio(coker_q, coker_qtilde);
    mpq_class disc_ratio(disc_plus_X, disc_plus_Xtilde);
    coker_ratio.canonicalize();
    disc_ratio.canonicalize();
    mpz_class two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(k + 4));
    b.numeric = mpq_class(1, two_pow) / (coker_ratio * coker_ratio) / disc_ratio;
    b.numeric.canonicalize();
    b.symbol = "C(" + std::to_string(k) + ")^8";
    b.r = 10;
    b.r_tilde = 10 + k;
    return b;
}

double covolume(int r, const mpz_class& coker, const mpz_class& disc,
                double vol_X) {
    if (vol_X <= 0) throw std::runtime_error("nonpositive input");
    mpz_class two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(r + 1));
    mpq_class pre = mpq_class(coker * coker * abs(disc), two_pow);
    pre.canonicalize();
    return pre.get_d() * vol_X;
}

long chi_orb(int k) {
    if (k < 1 || k > 10) throw std::runtime_error("k out of range");
    return 12L * k;
}

} // namespace phiv::invariants
