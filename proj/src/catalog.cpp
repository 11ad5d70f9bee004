#include "cohom/catalog.hpp"

namespace cohom::catalog {

namespace {
std::vector<std::vector<std::vector<Int>>> table(long d) {
    return std::vector<std::vector<std::vector<Int>>>(
        d, std::vector<std::vector<Int>>(d, std::vector<Int>(d, 0)));
}
}  // namespace

StructureAlgebra scalar_algebra(const BaseRing& base) {
    auto t = table(1);
    t[0][0][0] = 1;
    return StructureAlgebra(base, {"1"}, t, {Int(1)});
}

StructureAlgebra truncated_polynomial(const BaseRing& base, long k) {
    auto t = table(k);
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j)
            if (i + j < k) t[i][j][i + j] = 1;
    std::vector<std::string> names{"1"};
    for (long i = 1; i < k; ++i) names.push_back(i == 1 ? "x" : "x^" + std::to_string(i));
    std::vector<Int> unit(k, 0);
    unit[0] = 1;
    return StructureAlgebra(base, names, t, unit);
}

StructureAlgebra product_ring(const BaseRing& base) {
    auto t = table(2);
    t[0][0][0] = 1;
    t[1][1][1] = 1;
    return StructureAlgebra(base, {"e1", "e2"}, t, {Int(1), Int(1)});
}

StructureAlgebra matrix2(const BaseRing& base) {
    // basis order e11, e12, e21, e22; e_ij e_kl = delta_jk e_il
    auto t = table(4);
    auto idx = [](long i, long j) { return i * 2 + j; };
    for (long i = 0; i < 2; ++i)
        for (long j = 0; j < 2; ++j)
            for (long k = 0; k < 2; ++k)
                for (long l = 0; l < 2; ++l)
                    if (j == k) t[idx(i, j)][idx(k, l)][idx(i, l)] = 1;
    return StructureAlgebra(base, {"e11", "e12", "e21", "e22"}, t,
                            {Int(1), Int(0), Int(0), Int(1)});
}

StructureAlgebra upper_triangular2(const BaseRing& base) {
    // basis e11, e22, e12
    auto t = table(3);
    t[0][0][0] = 1;  // e11 e11
    t[1][1][1] = 1;  // e22 e22
    t[0][2][2] = 1;  // e11 e12 = e12
    t[2][1][2] = 1;  // e12 e22 = e12
    return StructureAlgebra(base, {"e11", "e22", "e12"}, t, {Int(1), Int(1), Int(0)});
}

StructureAlgebra group_algebra_c2(const BaseRing& base) {
    auto t = table(2);
    t[0][0][0] = 1;
    t[0][1][1] = 1;
    t[1][0][1] = 1;
    t[1][1][0] = 1;  // t^2 = 1
    return StructureAlgebra(base, {"1", "t"}, t, {Int(1), Int(0)});
}

StructureAlgebra idempotent_algebra(const BaseRing& base) {
    auto t = table(2);
    t[0][0][0] = 1;
    t[0][1][1] = 1;
    t[1][0][1] = 1;
    t[1][1][1] = 1;  // t^2 = t
    return StructureAlgebra(base, {"1", "t"}, t, {Int(1), Int(0)});
}

}  // namespace cohom::catalog
