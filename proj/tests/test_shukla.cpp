#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cohom/catalog.hpp"
#include "cohom/shukla.hpp"

using namespace cohom;

namespace {

ShuklaQuery make_query(const BaseRing& ground, const StructureAlgebra& R, const Bimodule& M,
                       int n_max) {
    ShuklaQuery q{ground, R, M, n_max, ShuklaStrategy::Auto, {}, nullptr,
                  Budget::global().with_degree(std::max(Budget::global().max_degree, n_max))};
    return q;
}

}  // namespace

TEST_CASE("Shukla of Z/n over Z: the R[xi] pattern, both strategies") {
    for (long n : {2L, 3L, 4L}) {
        auto R = catalog::scalar_algebra(BaseRing::mod(n));
        auto M = regular_bimodule(R, BaseRing::integers());
        auto q = make_query(BaseRing::integers(), R, M, 8);
        auto builtin = shukla_cohomology(q);
        CHECK(builtin.strategy_used == "builtin resolution");
        q.strategy = ShuklaStrategy::KillingCycles;
        q.n_max = 6;
        auto killing = shukla_cohomology(q);
        for (int i = 0; i <= 8; ++i) {
            if (i % 2 == 0)
                CHECK(builtin.coh.at(i).divisors == std::vector<Int>{n});
            else
                CHECK(builtin.coh.at(i).is_zero());
            if (i <= 6) CHECK(builtin.coh.at(i) == killing.coh.at(i));
        }
    }
}

TEST_CASE("Shukla of F_p over Z/p^2: computed dimension sequences") {
    // i <= 6: p = 2 gives 1,0,1,1,1,2,2; p = 3 gives 1,0,1,1,1,1,1 (the
    // degree-2 class of each divided-power factor lives in degree 2+2p^{i+1})
    std::vector<long> d2{1, 0, 1, 1, 1, 2, 2};
    std::vector<long> d3{1, 0, 1, 1, 1, 1, 1};
    for (long p : {2L, 3L}) {
        auto R = catalog::scalar_algebra(BaseRing::prime_field(p));
        auto M = regular_bimodule(R, BaseRing::mod(p * p));
        auto q = make_query(BaseRing::mod(p * p), R, M, 6);
        auto res = shukla_cohomology(q);
        const auto& expect = p == 2 ? d2 : d3;
        for (int i = 0; i <= 6; ++i) CHECK((long)res.coh.at(i).dimension() == expect[i]);
    }
}

TEST_CASE("Shukla equals Hochschild for ground-projective algebras") {
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::dual_numbers(F2);
    auto M = regular_bimodule(R);
    auto q = make_query(F2, R, M, 4);
    auto res = shukla_cohomology(q);
    auto h = hochschild_cohomology(R, M, 4);
    for (int i = 0; i <= 4; ++i) CHECK(res.coh.at(i) == h.coh.at(i));
}

TEST_CASE("lifted algebra: Shukla^*(A/Z, A) = H^*(A/R, A)[xi]") {
    // A = F_2 x F_2 = (Z[t]/(t^2-t)) mod 2: separable over R = Z/2, so
    // H^*(A/R, A) is A in degree 0; the xi-pattern doubles every even degree.
    auto Rbase = BaseRing::mod(2);
    std::vector<std::string> names{"e", "f"};
    auto A = catalog::product_ring(Rbase);
    auto lift = catalog::idempotent_algebra(BaseRing::integers());
    // transport A's basis to the idempotent presentation 1, t: product ring
    // basis e1 = 1 - t, e2 = t; use the lifted tables directly instead.
    auto Ared = catalog::idempotent_algebra(Rbase);
    auto M = regular_bimodule(Ared, BaseRing::integers());
    ShuklaQuery q = make_query(BaseRing::integers(), Ared, M, 6);
    q.lift = lift;
    auto res = shukla_cohomology(q);
    CHECK(res.strategy_used == "builtin resolution");
    for (int i = 0; i <= 6; ++i) {
        if (i % 2 == 0)
            CHECK(res.coh.at(i).divisors == std::vector<Int>({2, 2}));
        else
            CHECK(res.coh.at(i).is_zero());
    }
    (void)A;
    (void)names;
}

TEST_CASE("two-level Shukla over F2[eps]: killing cycles with Der") {
    auto K = std::make_shared<StructureAlgebra>(catalog::dual_numbers(BaseRing::prime_field(2)));
    auto ground = Ground::over_algebra(K);
    DerCoefficients M{FPModule::free_module(BaseRing::prime_field(2), 1),
                      {SparseMat::identity(1), SparseMat(1, 1)}};
    auto res = shukla_two_level(ground, {Int(1), Int(0)}, M, 4);
    // degree 0 and 1: H^0 = F_2, H^1 = Der(F_2, F_2) = 0
    CHECK(res.at(0).dimension() == 1);
    CHECK(res.at(1).is_zero());
    // H^2 classifies abelian K-algebra extensions of F_2 by F_2: both the
    // dual-number-style and the K-module-twisted one: expect dimension >= 1
    CHECK(res.at(2).dimension() >= 1);
}

TEST_CASE("comparison map: iso in degrees 0 and 1; zero into Shukla^2 for F_2/Z") {
    auto F2 = BaseRing::prime_field(2);
    auto Z = BaseRing::integers();
    // five inputs; rank-1 torsion cases plus projective ones
    {
        auto R = catalog::scalar_algebra(BaseRing::mod(2));
        auto M = regular_bimodule(R, Z);
        auto cm = comparison_map(Z, R, M, 2);
        CHECK(cm.iso.at(0));
        CHECK(cm.iso.at(1));
        CHECK(cm.hochschild.at(2).is_zero());
        CHECK(cm.shukla.at(2).divisors == std::vector<Int>{2});
        CHECK(!cm.iso.at(2));
    }
    for (long n : {3L, 4L}) {
        auto R = catalog::scalar_algebra(BaseRing::mod(n));
        auto M = regular_bimodule(R, Z);
        auto cm = comparison_map(Z, R, M, 2);
        CHECK(cm.iso.at(0));
        CHECK(cm.iso.at(1));
    }
    {
        auto R = catalog::dual_numbers(F2);
        auto M = regular_bimodule(R);
        auto cm = comparison_map(F2, R, M, 4);
        for (int i = 0; i <= 4; ++i) CHECK(cm.iso.at(i));
    }
    {
        auto Ared = catalog::idempotent_algebra(BaseRing::mod(2));
        auto M = regular_bimodule(Ared, Z);
        auto cm = comparison_map(Z, Ared, M, 1, catalog::idempotent_algebra(Z));
        CHECK(cm.iso.at(0));
        CHECK(cm.iso.at(1));
    }
}

TEST_CASE("e invariant: canonical class has e = 1, p-torsion C1 gives e = 0") {
    for (long p : {2L, 3L}) {
        auto A = catalog::scalar_algebra(BaseRing::prime_field(p));
        auto cc = canonical_class_sigma(A);
        auto e = e_invariant(cc.extension);
        REQUIRE(e.size() == 1);
        CHECK(e[0] == 1);
    }
}

TEST_CASE("e vanishes on extensions with p C_1 = 0 (the d^3 image fixture)") {
    // 0 -> F_p -> Z/p (+) Z/p -> Z/p^2 -> F_p -> 0 built by reducing the
    // integral crossed extension 0 -> F_p -> Z (+) Z/p -> Z -> F_p -> 0.
    for (long pl : {2L, 3L}) {
        Int p = pl;
        BaseRing K = BaseRing::mod(p * p);
        auto A = catalog::scalar_algebra(BaseRing::prime_field(p));
        auto C0 = catalog::scalar_algebra(K);
        // C1 = Z/p (+) Z/p with delta(a, b) = p a
        SparseMat rel(2, 2);
        rel.add(0, 0, p);
        rel.add(1, 1, p);
        FPModule c1(K, 2, rel);
        std::vector<SparseMat> act{SparseMat::identity(2)};
        Bimodule C1(C0, K, c1, act, act);
        SparseMat delta(1, 2);
        delta.add(0, 0, p);
        auto xb = validate_crossed(K, C0, C1, delta);
        auto M = regular_bimodule(A, K);
        SparseMat incl(2, 1);
        incl.add(1, 0, 1);
        SparseMat proj = SparseMat::identity(1);
        CrossedExtension X{K, A, M, xb, incl, proj};
        validate_crossed_extension(X);
        auto e = e_invariant(X);
        REQUIRE(e.size() == 1);
        CHECK(e[0] == 0);
    }
}

TEST_CASE("splitting: dim Shukla^3(F_p / Z/p^2) = dim Shukla^3(F_p/Z) + dim H^0") {
    for (long p : {2L, 3L}) {
        auto R = catalog::scalar_algebra(BaseRing::prime_field(p));
        auto MK = regular_bimodule(R, BaseRing::mod(p * p));
        auto MZ = regular_bimodule(R, BaseRing::integers());
        auto qK = make_query(BaseRing::mod(p * p), R, MK, 3);
        auto qZ = make_query(BaseRing::integers(), R, MZ, 3);
        auto sK = shukla_cohomology(qK);
        auto sZ = shukla_cohomology(qZ);
        long h0 = (long)h0_direct(R, MK).dimension();
        CHECK((long)sK.coh.at(3).dimension() ==
              (long)sZ.coh.at(3).dimension() + h0);
        CHECK((long)sK.coh.at(3).dimension() == 1);
    }
}

TEST_CASE("Shukla^2 detects the nonsplit extension Z/n^2") {
    // the class xi of 0 -> Z/n -> Z/n^2 -> Z/n -> 0 is nonzero in
    // Shukla^2(Z/n / Z, Z/n) = Z/n while H^2 vanishes
    for (long n : {2L, 3L}) {
        auto R = catalog::scalar_algebra(BaseRing::mod(n));
        auto M = regular_bimodule(R, BaseRing::integers());
        auto q = make_query(BaseRing::integers(), R, M, 2);
        auto s = shukla_cohomology(q);
        CHECK(s.coh.at(2).divisors == std::vector<Int>{n});
        auto h = hochschild_cohomology(BaseRing::integers(), R, M, 2);
        CHECK(h.coh.at(2).is_zero());
    }
}

TEST_CASE("base change b^n for F_p: iso in degree 2, epi in degree 3") {
    for (long p : {2L, 3L}) {
        FPModule M = FPModule::cyclic(BaseRing::integers(), p);
        auto bc = base_change_fp(p, M, 3);
        // degree 2: both sides F_p and the matrix is a unit
        CHECK(bc.source.at(2).divisors == std::vector<Int>{p});
        CHECK(bc.target.at(2).divisors == std::vector<Int>{p});
        REQUIRE(bc.matrix.at(2).entries().size() == 1);
        Int v = bc.matrix.at(2).entries()[0].v % p;
        if (v < 0) v += p;
        CHECK(v != 0);
        // degree 3: source F_p, target 0 (epi onto zero)
        CHECK(bc.source.at(3).divisors == std::vector<Int>{p});
        CHECK(bc.target.at(3).is_zero());
    }
}

TEST_CASE("canonical class: integral witness validates (b(sigma_A) = 0 over Z)") {
    for (long p : {2L, 3L}) {
        auto A = catalog::scalar_algebra(BaseRing::prime_field(p));
        auto cc = canonical_class_sigma(A);
        // exactness of the four-term sequence is part of validation; check
        // i is injective and lands in ker(delta)
        FPModule m0 = cc.extension.xb.C0.carrier_over(cc.extension.ground);
        SparseMat comp = cc.extension.xb.delta.mul(cc.extension.incl);
        CHECK(matrix_zero_mod(comp, m0));
        // the witness S is a Z-delta-extension but not a Z/p^2-algebra:
        // p^2 * 1_S != 0
        const auto& S = cc.integral_witness.S;
        std::vector<Int> u = S.unit();
        for (auto& x : u) x *= p * p;
        CHECK(!is_zero_element(S.carrier(), u));
    }
}

TEST_CASE("canonical class for a two-dimensional algebra (F_4-sized cap)") {
    auto F2 = BaseRing::prime_field(2);
    auto A = catalog::product_ring(F2);  // |A| = 4 <= 9
    auto cc = canonical_class_sigma(A);
    auto e = e_invariant(cc.extension);
    CHECK(same_element(cc.extension.M.carrier(), e, A.unit()));
}
