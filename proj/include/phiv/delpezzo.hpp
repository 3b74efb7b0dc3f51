// Concrete Del Pezzo surface models of degree 1..9 (plus the two degree-8
// quadric/Hirzebruch variants): Picard and Mukai lattices, (-1)-classes,
// effective/Kaehler cones with exact membership, bounded effective-class
// enumeration, and the blow-down data used by the quasi-pullback chain.
#pragma once

#include "phiv/conelp.hpp"
#include "phiv/lattice.hpp"

#include <string>
#include <utility>
#include <vector>

namespace phiv::delpezzo {

using intmat::QVec;
using intmat::ZMat;
using intmat::ZVec;

enum class Variant { Generic, Sigma0, Sigma1, P2 };

std::string variant_name(Variant v);

struct Model {
    int degree = 0;
    Variant variant = Variant::Generic;
    lattice::Lattice picard; // diag(+1, -1^{9-degree}) or U for Sigma0
    ZVec c1;                 // 3H - sum E_i, or 2e + 2f on Sigma0
    std::vector<ZVec> minus_one_classes; // alpha^2 = -1, <alpha, c1> = 1
    std::vector<ZVec> eff_generators;
    conelp::ConeCache eff_cone; // memoized exact membership over eff_generators
    size_t rank() const { return picard.rank(); }
};

// valid combinations: Generic at degree 1..7, Sigma0/Sigma1 at degree 8,
// P2 at degree 9; otherwise throws "inconsistent variant"
Model model(int degree, Variant variant);

// the two independent (-1)-class enumerators (Lorentzian fibers vs box scan)
std::vector<ZVec> enumerate_minus_one(const Model& m);
std::vector<ZVec> enumerate_minus_one_box(const Model& m, long box);

// y^2 > 0 and <y, g> > 0 for every effective generator g
bool kaehler_cone_contains(const Model& m, const QVec& y);
bool in_effective_cone(Model& m, const ZVec& a);

// all nonzero lattice points a of Eff(V) with 0 < <a, y> <= cap
std::vector<ZVec> enumerate_effective(Model& m, const QVec& y,
                                      const mpq_class& cap);

// same but restricted to a single value of a^2 (used by the product code)
std::vector<ZVec> effective_points_of_norm(Model& m, const mpz_class& nrm,
                                           const QVec& y, const mpq_class& cap);

// U(-1) + picard; coordinates ordered (a, c, b_1..b_rank) with Mukai pairing
// <(a,b,c),(a',b',c')> = b.b' - a c' - a' c
lattice::Lattice mukai_lattice(const Model& m);

// [exp(b)] = (1, <b,b>/2, b) for complex b = b_re + i b_im; returns the real
// and imaginary parts; isotropic by construction
std::pair<QVec, QVec> mukai_point(const Model& m, const QVec& b_re,
                                  const QVec& b_im);
mpq_class mukai_pairing(const lattice::Lattice& mukai, const QVec& v,
                        const QVec& w);

// blow-down step of the degree chain: picard(small) embeds into [E]^perp of
// picard(big = degree-1 model), and c1(big) + [E] restricts to iota(c1(small))
struct BlowDown {
    Model small;
    Model big;
    ZMat iota;   // rank(big) x rank(small), columns are images
    ZVec e_class; // the contracted (-1)-class [E] in picard(big)
};
BlowDown blow_down(int degree_small, Variant variant_small);

} // namespace phiv::delpezzo
