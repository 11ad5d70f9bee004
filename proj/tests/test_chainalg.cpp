#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cohom/catalog.hpp"
#include "cohom/chainalg.hpp"

using namespace cohom;

namespace {

// count basis monomials per degree of a graded-commutative algebra on the
// given generators (kind: true = polynomial, false = exterior); the oracle
// for the Z/p^2 Shukla dimension sequences.
std::vector<long> monomial_counts(const std::vector<std::pair<int, bool>>& gens, int top) {
    std::vector<long> dims(top + 1, 0);
    dims[0] = 1;
    for (auto [deg, poly] : gens) {
        std::vector<long> next = dims;
        if (poly) {
            for (int d = deg; d <= top; ++d) next[d] += next[d - deg];
        } else {
            for (int d = top; d >= deg; --d) next[d] += dims[d - deg];
        }
        dims = next;
    }
    return dims;
}

Bimodule cyclic_bimodule(const BaseRing& ground, const StructureAlgebra& R, const Int& torsion) {
    return trivial_bimodule(R, ground, torsion);
}

}  // namespace

TEST_CASE("exterior algebra Lambda(x), dx = n: validation and homology") {
    for (long n : {2L, 3L, 4L}) {
        StandardParams p;
        p.n = n;
        auto A = standard_chain_algebra(StandardKind::Exterior, p, 4);
        A.validate();
        CHECK(A.homology(0).divisors == std::vector<Int>{n});
        CHECK(A.homology(1).is_zero());
    }
}

TEST_CASE("Lambda(x) (x) Gamma(y) over Z/p^2: ranks and weak equivalence to F_p") {
    for (long pr : {2L, 3L}) {
        StandardParams p;
        p.n = pr;
        auto A = standard_chain_algebra(StandardKind::ExteriorTensorDividedPower, p, 4);
        A.validate();
        for (int d = 0; d <= 4; ++d) CHECK(A.word_count(d) == 1);
        CHECK(A.homology(0).divisors == std::vector<Int>{pr});
        CHECK(A.homology(1).is_zero());
        CHECK(A.homology(2).is_zero());
        CHECK(A.homology(3).is_zero());
    }
}

TEST_CASE("disc algebras are contractible, spheres are not") {
    StandardParams p;
    p.n = 2;
    auto D2 = standard_chain_algebra(StandardKind::Disc, p, 4);
    D2.validate();
    CHECK(D2.homology(0).free_rank() == 1);  // H_0 = Z
    for (int d = 1; d <= 3; ++d) CHECK(D2.homology(d).is_zero());

    p.n = 1;
    p.word_cap = 4;
    auto D1 = standard_chain_algebra(StandardKind::Disc, p, 3);
    D1.validate();
    CHECK(D1.homology(1).is_zero());
    CHECK(D1.homology(2).is_zero());

    p.n = 2;
    auto S2 = standard_chain_algebra(StandardKind::Sphere, p, 4);
    S2.validate();
    CHECK(!S2.homology(2).is_zero());
}

TEST_CASE("lifted algebra A0 (x) Lambda(x)") {
    auto A0 = catalog::idempotent_algebra(BaseRing::integers());  // Z[t]/(t^2 - t)
    StandardParams p;
    p.n = 2;
    p.lift = A0;
    auto A = standard_chain_algebra(StandardKind::LiftedAlgebra, p, 4);
    A.validate();
    // H_0 = A0/2A0 = F_2 x F_2, H_1 = 0
    auto h0 = A.homology(0);
    CHECK(h0.divisors == std::vector<Int>{2, 2});
    CHECK(A.homology(1).is_zero());
}

TEST_CASE("tensor of chain algebras: A (x) K == A and sign bookkeeping") {
    StandardParams p;
    p.n = 2;
    auto L = standard_chain_algebra(StandardKind::Exterior, p, 3);
    auto K = from_structure_algebra(catalog::scalar_algebra(BaseRing::integers()),
                                    BaseRing::integers(), 3);
    auto T = tensor_chain_algebras(L, K, 3);
    T.validate();
    for (int d = 0; d <= 3; ++d) CHECK(T.word_count(d) == L.word_count(d));

    // Lambda(x) (x) Lambda(x'): degree-2 rank 1 with x x' = -x' x
    auto T2 = tensor_chain_algebras(L, L, 3);
    T2.validate();  // Leibniz + d o d == 0 includes the sign bookkeeping
    CHECK(T2.word_count(0) == 1);
    CHECK(T2.word_count(1) == 2);
    CHECK(T2.word_count(2) == 1);
    // x (x) x' vs x' (x) x: product of (deg1,w0)*(deg1,w... explicit:
    std::vector<Int> e1{1, 0}, e2{0, 1};
    auto xy = T2.product(1, e1, 1, e2);
    auto yx = T2.product(1, e2, 1, e1);
    REQUIRE(xy.size() == 1);
    CHECK(xy[0] == -yx[0]);
    CHECK(xy[0] != 0);
    // H_0(T2) = Z/2 (x) Z/2 = Z/2, Kunneth over Z with torsion: H_1 = Tor = Z/2
    CHECK(T2.homology(0).divisors == std::vector<Int>{2});
    CHECK(T2.homology(1).divisors == std::vector<Int>{2});
}

TEST_CASE("killing cycles resolution of Z/n over Z") {
    for (long n : {2L, 3L}) {
        auto res = killing_cycles_resolution(Ground::plain(BaseRing::integers()),
                                             BaseRing::mod(n), {Int(1)}, 5);
        res.resolution.validate();
        CHECK(res.resolution.homology(0).divisors == std::vector<Int>{n});
        for (int d = 1; d <= 3; ++d) CHECK(res.resolution.homology(d).is_zero());
        // generators appear in odd degrees for cyclic targets
        for (const auto& g : res.resolution.generators()) CHECK(g.degree % 2 == 1);
    }
}

TEST_CASE("killing cycles over the dual numbers F2[eps]") {
    auto K = std::make_shared<StructureAlgebra>(catalog::dual_numbers(BaseRing::prime_field(2)));
    auto ground = Ground::over_algebra(K);
    // augmentation K -> F2, eps -> 0
    auto res = killing_cycles_resolution(ground, BaseRing::prime_field(2), {Int(1), Int(0)}, 5);
    res.resolution.validate();
    CHECK(res.resolution.homology(0).divisors == std::vector<Int>{2});
    for (int d = 1; d <= 3; ++d) CHECK(res.resolution.homology(d).is_zero());
}

TEST_CASE("Der complex of the killing-cycles resolution: Shukla of Z/n over Z") {
    // Shukla^i(Z/n / Z, Z/n) = Z/n for even i, 0 for odd (paper section 5.1);
    // Der computes the shifted groups H^{i-1}(Der) for i >= 1.
    for (long n : {2L, 3L, 4L}) {
        auto res = killing_cycles_resolution(Ground::plain(BaseRing::integers()),
                                             BaseRing::mod(n), {Int(1)}, 7);
        DerCoefficients M{FPModule::cyclic(BaseRing::integers(), n), {}};
        auto der = der_complex(res.resolution, M, 6);
        for (int i = 1; i <= 6; ++i) {
            auto h = der.cx.homology_at(i - 1);
            if (i % 2 == 0)
                CHECK(h.divisors.divisors == std::vector<Int>{n});
            else
                CHECK(h.divisors.is_zero());
        }
    }
}

TEST_CASE("free algebra concentrated in degree 0 has vanishing higher cohomology") {
    // T(V), V free of rank 2: Der is concentrated in degree 0, so
    // H^n = H^{n-1}(Der) = 0 for all n >= 2, with no truncation involved.
    Ground g = Ground::plain(BaseRing::prime_field(2));
    std::vector<ChainAlgebra::Generator> gens{{"u", 0}, {"v", 0}};
    ChainAlgebra TV(g, 3, gens, {{}, {}}, 3);
    DerCoefficients M{FPModule::free_module(BaseRing::prime_field(2), 1), {}};
    auto der = der_complex(TV, M, 3);
    CHECK(der.cx.homology_at(0).divisors.dimension() == 2);  // Der(T(V), M) = M^2
    for (int n = 1; n <= 2; ++n) CHECK(der.cx.homology_at(n).divisors.is_zero());
}

TEST_CASE("naive total complex: degree-0 concentration reduces to the bar complex") {
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::dual_numbers(F2);
    auto A = from_structure_algebra(R, F2, 4);
    auto M = regular_bimodule(R);
    auto total = chain_hochschild_total(A, M, 3);
    auto bar = hochschild_cohomology(R, M, 3);
    for (int n = 0; n <= 3; ++n) CHECK(total.at(n) == bar.coh.at(n));
}

TEST_CASE("naive total complex of Lambda(x): the R[xi] pattern") {
    // H^i(Lambda(x), Z/n) = Z/n for even i, 0 for odd i <= bound.
    for (long n : {2L, 3L, 4L}) {
        StandardParams p;
        p.n = n;
        auto A = standard_chain_algebra(StandardKind::Exterior, p, 7);
        auto R0 = catalog::scalar_algebra(BaseRing::integers());
        auto M = cyclic_bimodule(BaseRing::integers(), R0, n);
        auto total = chain_hochschild_total(A, M, 6);
        for (int i = 0; i <= 6; ++i) {
            if (i % 2 == 0)
                CHECK(total.at(i).divisors == std::vector<Int>{n});
            else
                CHECK(total.at(i).is_zero());
        }
    }
}

TEST_CASE("weak equivalence invariance: Lambda(x) vs killing-cycles resolution") {
    for (long n : {2L, 3L}) {
        StandardParams p;
        p.n = n;
        auto A = standard_chain_algebra(StandardKind::Exterior, p, 6);
        auto res = killing_cycles_resolution(Ground::plain(BaseRing::integers()),
                                             BaseRing::mod(n), {Int(1)}, 6);
        auto R0 = catalog::scalar_algebra(BaseRing::integers());
        auto M = cyclic_bimodule(BaseRing::integers(), R0, n);
        auto tA = chain_hochschild_total(A, M, 5);
        auto tB = chain_hochschild_total(res.resolution, M, 5);
        for (int i = 0; i <= 5; ++i) CHECK(tA.at(i) == tB.at(i));
    }
}

TEST_CASE("quasi-free comparison: H^n(total) == H^{n-1}(Der) for n >= 1") {
    for (long n : {2L, 4L}) {
        auto res = killing_cycles_resolution(Ground::plain(BaseRing::integers()),
                                             BaseRing::mod(n), {Int(1)}, 6);
        auto R0 = catalog::scalar_algebra(BaseRing::integers());
        auto M = cyclic_bimodule(BaseRing::integers(), R0, n);
        auto total = chain_hochschild_total(res.resolution, M, 5);
        DerCoefficients DM{FPModule::cyclic(BaseRing::integers(), n), {}};
        auto der = der_complex(res.resolution, DM, 5);
        for (int i = 1; i <= 5; ++i) CHECK(total.at(i) == der.cx.homology_at(i - 1).divisors);
    }
}

TEST_CASE("Kunneth over F_p for total degree <= 4") {
    // A = B = dual numbers over F2 concentrated in degree 0; M = N = trivial.
    // H^n(A (x) B, M (x) N) = sum H^i (x) H^j; with all dims 1 the expected
    // dimension in degree n is n + 1.
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::dual_numbers(F2);
    auto A = from_structure_algebra(R, F2, 5);
    auto T = tensor_chain_algebras(A, A, 5);
    auto R2 = catalog::scalar_algebra(F2);  // placeholder; M built over T's degree-0 algebra
    (void)R2;
    auto M = trivial_bimodule(T.degree0(), F2, 2);
    auto total = chain_hochschild_total(T, M, 4);
    for (int nn = 0; nn <= 4; ++nn) CHECK((long)total.at(nn).dimension() == nn + 1);
}

TEST_CASE("truncation: identity beyond top degree, crossed bimodule at 1") {
    StandardParams p;
    p.n = 2;
    auto A = standard_chain_algebra(StandardKind::Exterior, p, 4);
    auto t = truncate(A, 3);
    t.validate();
    for (int i = 0; i <= 3; ++i)
        CHECK(t.homology(i).divisors == A.homology(i).divisors);

    auto res = killing_cycles_resolution(Ground::plain(BaseRing::integers()), BaseRing::mod(2),
                                         {Int(1)}, 4);
    // H_1 preserved under truncation at 1
    auto t1 = truncate(res.resolution, 1);
    CHECK(t1.homology(1).divisors == res.resolution.homology(1).divisors);
    CHECK(t1.homology(0).divisors == res.resolution.homology(0).divisors);
    auto xb = truncate_to_crossed(res.resolution);
    // the crossed bimodule presents Z/2 as coker(delta)
    FPModule m0 = xb.C0.carrier_over(BaseRing::integers());
    auto coker = cokernel_of_map(xb.C1.carrier(), m0, xb.delta);
    CHECK(coker.invariants().divisors == std::vector<Int>{2});
}

TEST_CASE("lifting along an acyclic fibration: identity and extension targets") {
    // the 4.4 proof-i configuration: E_* = (abelian extension) over A = Z/4,
    // A_* = killing-cycles resolution; the lift's degree-1 component is a
    // 1-cocycle of Der.
    auto Z = BaseRing::integers();
    auto R = catalog::scalar_algebra(BaseRing::mod(4));
    auto M = regular_bimodule(catalog::scalar_algebra(BaseRing::mod(2)), Z);
    // E = Z/8: 0 -> Z/2 --x4--> Z/8 -> Z/4 -> 0
    SparseMat rel(1, 1);
    rel.add(0, 0, 8);
    FPAlgebra E(Z, FPModule(Z, 1, rel), {{{Int(1)}}}, {Int(1)});
    SparseMat incl(1, 1);
    incl.add(0, 0, 4);
    AbelianExtension ext{Z, R, M, E, incl, SparseMat::identity(1)};
    validate_abelian_extension(ext);

    auto res = killing_cycles_resolution(Ground::plain(Z), BaseRing::mod(4), {Int(1)}, 4);
    auto X = fp_from_abelian_extension(ext);
    auto Y = fp_from_structure(R, Z, 4);
    while ((int)X.comp.size() <= 4) {
        X.diff.push_back(SparseMat(X.comp.back().gens, 0));
        X.comp.push_back(FPModule::zero(Z));
        X.top++;
    }
    // p : E_* -> A (proj in degree 0), g : A_* -> A (augmentation)
    FPChainMap p;
    p.comp.push_back(ext.proj);
    for (int n = 1; n <= 4; ++n) p.comp.push_back(SparseMat(Y.comp[n].gens, X.comp[n].gens));
    FPChainMap g;
    g.comp.push_back(res.augmentation);
    for (int n = 1; n <= 4; ++n)
        g.comp.push_back(SparseMat(Y.comp[n].gens, res.resolution.srank(n)));
    auto f = lift_quasi_free(res.resolution, X, Y, p, g, 3);
    // f_1 : A_1 -> M is a 1-cocycle of Der: f_1(d(gen_2)) == 0 -- Der degree 1
    // component has no degree-2 generators here (gens at odd degrees), so the
    // cocycle condition is vacuous; instead verify the chain map equations
    // held (done inside lift in debug mode) and f_1 is nonzero on x_1.
    CHECK(f.comp.size() >= 2);
    // d(x1) = 4, f_0(1) = 1 in Z/8, so f_1(x1) must satisfy 4 = d f_1(x1) =
    // 4 f_1(x1):  f_1(x1) odd in Z/2 -- i.e. f_1(x1) = 1.
    auto v = f.comp[1].column(0);
    REQUIRE(v.size() == 1);
    CHECK(BaseRing::mod(2).reduce(v[0]) == 1);
}

// Generator degrees of the Z/p^2 answer: the exterior factor Lambda(x)
// contributes the polynomial class sigma x in degree 2; each divided-power
// factor k[y^[p^i]]/(pth power) contributes sigma(y^[p^i]) in degree
// 1 + 2 p^i and (p odd) the degree-2 Hochschild class in degree 2 + 2 p^{i+1}.
// In characteristic 2 the latter is the square of the former, so the p = 2
// answer is the polynomial algebra on degrees 2, 3, 5, 9, ...
std::vector<std::pair<int, bool>> shukla_p2_generators(long p, int top) {
    std::vector<std::pair<int, bool>> gens{{2, true}};  // sigma x
    for (long q = 1; 1 + 2 * q <= top || 2 + 2 * p * q <= top; q *= p) {
        if (p == 2) {
            if (1 + 2 * q <= top) gens.push_back({int(1 + 2 * q), true});
        } else {
            if (1 + 2 * q <= top) gens.push_back({int(1 + 2 * q), false});
            if (2 + 2 * p * q <= top) gens.push_back({int(2 + 2 * p * q), true});
        }
    }
    return gens;
}

TEST_CASE("monomial-count oracle sanity") {
    auto d2 = monomial_counts(shukla_p2_generators(2, 8), 8);
    CHECK(d2 == std::vector<long>{1, 0, 1, 1, 1, 2, 2, 2, 3});
    auto d3 = monomial_counts(shukla_p2_generators(3, 8), 8);
    CHECK(d3 == std::vector<long>{1, 0, 1, 1, 1, 1, 1, 2, 2});
}

TEST_CASE("total complex of Lambda (x) Gamma: the Z/p^2 dimension sequences") {
    for (long pr : {2L, 3L}) {
        StandardParams sp;
        sp.n = pr;
        auto A = standard_chain_algebra(StandardKind::ExteriorTensorDividedPower, sp, 7);
        auto R0 = catalog::scalar_algebra(BaseRing::mod(pr * pr));
        auto M = trivial_bimodule(R0, BaseRing::mod(pr * pr), pr);
        auto total = chain_hochschild_total(A, M, 6);
        std::vector<long> expect = monomial_counts(shukla_p2_generators(pr, 6), 6);
        for (int i = 0; i <= 6; ++i) {
            INFO("p = ", pr, " degree ", i);
            CHECK((long)total.at(i).dimension() == expect[i]);
        }
    }
}
