// The Eguchi-Hanson Kaehler potential and metric on the resolution of C^2/±1:
// closed forms, the error term and its scaling split, the glued two-parameter
// potential family with a polynomial cutoff, a positivity probe, the radial
// second-Chern integral, and the exceptional-divisor restriction check.
#pragma once

#include <array>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace phiv::ehgeometry {

using cplx = std::complex<double>;
using Z2 = std::array<cplx, 2>;
using Herm2 = std::array<std::array<cplx, 2>, 2>;

// F_eps(z) = sqrt(|z|^4 + eps^2) + eps log(|z|^2 / (sqrt(|z|^4+eps^2) + eps))
double eh_potential(const Z2& z, double eps);

// closed-form complex Hessian of F_eps: f' delta_{jk} + f'' conj(z_j) z_k
// with f' = s/u, f'' = -eps^2/(s u^2), u = |z|^2, s = sqrt(u^2 + eps^2);
// det == 1 identically
Herm2 eh_metric(const Z2& z, double eps);

double det_herm(const Herm2& h);
double min_eigenvalue(const Herm2& h);

struct ErrorSplit {
    double e;  // F_eps - |z|^2
    double e1; // eps * (sqrt(|w|^4+1) - |w|^2), w = z/sqrt(eps)
    double e2; // eps * log(|w|^2 / (sqrt(|w|^4+1) + 1))
};
ErrorSplit error_term(const Z2& z, double eps);

// degree-7 smoothstep profile: 1 on t <= 1, 0 on t >= 2, C^3 junctions
double cutoff(double t);
// a second profile (smoothstep composed with itself) for cutoff sensitivity
double cutoff_alt(double t);
using CutoffFn = double (*)(double);

// phi_{eps,delta}(z) = |z|^2 + rho(|z|/delta) * (F_eps(z) - |z|^2)
double glued_potential(const Z2& z, double eps, double delta, CutoffFn rho);
// finite-difference complex Hessian of the glued potential
Herm2 glued_metric(const Z2& z, double eps, double delta, CutoffFn rho);

// generic FD complex Hessian used for cross-validation in tests
Herm2 fd_hessian(const std::function<double(const Z2&)>& f, const Z2& z,
                 double h);

struct ProbeResult {
    double eps_best = 0; // largest grid eps with positive metric on the grid
    // (eps, min eigenvalue over the radial grid) per probed eps
    std::vector<std::pair<double, double>> margins;
};
ProbeResult positivity_probe(CutoffFn rho, double delta,
                             const std::vector<double>& eps_grid);

struct Chern2Result {
    double integral = 0;      // includes the extrapolated tail, halved for +-1
    double tail_exponent = 0; // fitted power of the radial density
    double tail = 0;
    bool grid_ok = false;     // Simpson vs half-grid agreement
};
Chern2Result chern2_radial_integral(double eps, double r_max, int grid);

struct RestrictionReport {
    double max_rel_dev = 0; // vs eps/(1+|t|^2)^2 at the smaller s
    double linear_ratio = 0; // dev(2s)/dev(s) ~ 2^p; >= ~2 means the
                             // deviation vanishes at least linearly in s
};
RestrictionReport exceptional_restriction_check(double eps,
                                                const std::vector<double>& ts);

} // namespace phiv::ehgeometry
