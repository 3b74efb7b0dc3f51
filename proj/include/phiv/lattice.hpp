// Integral lattices: constructors (U, E8(-1), diagonal, rescale, direct sum,
// the K3 lattice, Lambda_k), pairings, signatures, discriminants, orthogonal
// complements via exact integer kernels, bounded Lorentzian vector
// enumeration, and a small bounded embedding search.
#pragma once

#include "phiv/intmat.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace phiv::lattice {

using intmat::ZMat;
using intmat::ZVec;

struct Lattice {
    ZMat gram;
    std::string name;
    size_t rank() const { return gram.size(); }
};

struct Embedding {
    Lattice source;
    Lattice target;
    ZMat matrix; // rank(target) x rank(source), columns are images

    // matrix^T gram_target matrix == gram_source
    bool verify() const;
};

Lattice make_U();
Lattice make_U_minus();
Lattice make_E8_minus();
Lattice make_diag(const std::vector<int>& entries);
Lattice rescale(const Lattice& l, const mpz_class& n);
Lattice direct_sum(const Lattice& a, const Lattice& b);
Lattice make_LK3(); // U^3 + E8(-1)^2

enum class Parity { Odd, Even };
// Unimodular lattice of signature (2, 10-k).  Parity::Even exists only at
// k = 8 (U + U); see the repository notes on the rank-4 case.
Lattice Lambda_k(int k, Parity parity = Parity::Odd);

mpz_class inner(const Lattice& l, const ZVec& v, const ZVec& w);
mpz_class norm(const Lattice& l, const ZVec& v);
std::pair<int, int> signature(const Lattice& l);
mpz_class discriminant(const Lattice& l);

// complement of the image of emb inside its target (image saturated first);
// returns the complement lattice and its embedding into the target
std::pair<Lattice, Embedding> orthogonal_complement(const Embedding& emb);

// All v with norm(v) = target_norm and 0 < <v,f> <= height_cap, in a
// Lorentzian lattice (signature (1, r-1)) with f strictly positive (f^2 > 0).
// Canonically sorted (by height, then coordinates).
std::vector<ZVec> enumerate_norm_vectors(const Lattice& l,
                                         const mpz_class& target_norm,
                                         const ZVec& positive_functional,
                                         const mpq_class& height_cap);

// Brute-force cross-check: same set, scanned over an explicit coordinate box
// |x_i| <= box.  Used by tests as the independent oracle.
std::vector<ZVec> enumerate_norm_vectors_box(const Lattice& l,
                                             const mpz_class& target_norm,
                                             const ZVec& positive_functional,
                                             const mpq_class& height_cap,
                                             long box);

// Gram-pruned backtracking over candidate image vectors of bounded support
// and bounded coordinates; a returned embedding verifies exactly.  With
// require_primitive the partial image span must stay primitive in the target
// at every level (a saturation defect can never be repaired by adding more
// independent columns, so this prunes monotonically).
std::optional<Embedding> embedding_search(const Lattice& s, const Lattice& t,
                                          long coefficient_bound = 3,
                                          bool require_primitive = false);

} // namespace phiv::lattice
