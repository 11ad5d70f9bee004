#pragma once

#include "cohom/algebra.hpp"

namespace cohom::catalog {

// base itself as a rank-1 algebra
StructureAlgebra scalar_algebra(const BaseRing& base);
// base[x] / x^k, basis 1, x, .., x^{k-1}
StructureAlgebra truncated_polynomial(const BaseRing& base, long k);
inline StructureAlgebra dual_numbers(const BaseRing& base) { return truncated_polynomial(base, 2); }
// base x base with componentwise multiplication (unit (1,1))
StructureAlgebra product_ring(const BaseRing& base);
// 2x2 matrix algebra via matrix units e11, e12, e21, e22
StructureAlgebra matrix2(const BaseRing& base);
// upper triangular 2x2 matrices: e11, e22, e12
StructureAlgebra upper_triangular2(const BaseRing& base);
// group algebra of C2: base[t]/(t^2 - 1)
StructureAlgebra group_algebra_c2(const BaseRing& base);
// base[t]/(t^2 - t): split idempotent algebra (isomorphic to base x base)
StructureAlgebra idempotent_algebra(const BaseRing& base);

}  // namespace cohom::catalog
