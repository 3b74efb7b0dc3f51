// Exact membership test for finitely generated rational cones.  A fast
// floating-point phase-1 simplex proposes either a feasible basis or a Farkas
// dual; the proposal is verified exactly over mpq, and on any mismatch a full
// exact simplex with Bland's rule decides the instance from scratch.
#pragma once

#include "phiv/intmat.hpp"

#include <map>
#include <vector>

namespace phiv::conelp {

using intmat::QMat;
using intmat::QVec;
using intmat::ZVec;

struct Result {
    bool feasible;
    // feasible: target = sum lambda_i * gens_i with lambda_i >= 0
    QVec lambda;
    // infeasible: y with <y, g_i> <= 0 for all generators and <y, target> > 0
    QVec farkas;
};

// is `target` a nonnegative rational combination of `gens`?
Result solve(const std::vector<ZVec>& gens, const ZVec& target);

// exact phase-1 simplex (Bland); used directly by tests as the slow oracle
Result solve_exact(const std::vector<ZVec>& gens, const ZVec& target);

// memoized membership for a fixed generator list
struct ConeCache {
    std::vector<ZVec> gens;
    std::map<ZVec, bool> memo;
    bool contains(const ZVec& v);
};

} // namespace phiv::conelp
