#pragma once

#include <cstdint>
#include <vector>

namespace solenoid_lab {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Invariant factors d1 | d2 | ... of an integer matrix (Smith normal form
/// diagonal, non-negative, zeros last). Throws Overflow if an intermediate
/// entry leaves the int64 range.
std::vector<std::int64_t> smith_invariants(IntMatrix a);

/// Order of the abelian group presented by the relation matrix `relations`
/// (one row per relation, one column per generator); 0 when infinite.
std::int64_t presented_group_order(const IntMatrix& relations);

}  // namespace solenoid_lab
