// Small exact linear algebra over GMP integers/rationals: products, exact
// determinant, signature of a symmetric form, column-style Hermite reduction
// and integer kernels, rational solving, and LDL^T for positive definite
// rational forms.  Everything is dense and meant for ranks <= ~22.
#pragma once

#include <gmpxx.h>
#include <optional>
#include <utility>
#include <vector>

namespace phiv::intmat {

using ZVec = std::vector<mpz_class>;
using ZMat = std::vector<ZVec>; // row-major
using QVec = std::vector<mpq_class>;
using QMat = std::vector<QVec>;

ZMat zmat(size_t r, size_t c);
ZMat identity(size_t n);
ZMat transpose(const ZMat& a);
ZMat mul(const ZMat& a, const ZMat& b);
ZVec mul(const ZMat& a, const ZVec& v);
// v^T a w
mpz_class bilinear(const ZMat& a, const ZVec& v, const ZVec& w);

// exact determinant (fraction-free Bareiss)
mpz_class det(const ZMat& a);

// (positives, negatives) of a nondegenerate symmetric form; throws on a
// degenerate form
std::pair<int, int> signature(const ZMat& gram);

// integer kernel of a (possibly non-square) integer matrix: columns form a
// basis of {x : a x = 0}; the basis is automatically saturated
ZMat kernel(const ZMat& a);

// solve a x = b over the rationals; nullopt if inconsistent
std::optional<QVec> solve(const QMat& a, const QVec& b);

// LDL^T of a symmetric positive definite rational matrix: returns (L, D) with
// L unit lower triangular; throws if a pivot is <= 0
std::pair<QMat, QVec> ldl(const QMat& a);

// integer solution of w . x = g where g = gcd(w); returns (g, x)
std::pair<mpz_class, ZVec> solve_gcd(const ZVec& w);

} // namespace phiv::intmat
