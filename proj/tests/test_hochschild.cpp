#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cohom/catalog.hpp"
#include "cohom/hochschild.hpp"

#include <random>

using namespace cohom;

namespace {

Cochain random_cochain(std::mt19937_64& rng, int degree, long d, long gM, long mod) {
    Cochain f;
    f.degree = degree;
    f.r_dim = d;
    f.m_gens = gM;
    long total = 1;
    for (int i = 0; i < degree; ++i) total *= d;
    for (long wi = 0; wi < total; ++wi) {
        std::vector<long> w(degree);
        long x = wi;
        for (int k = degree - 1; k >= 0; --k) {
            w[k] = x % d;
            x /= d;
        }
        std::vector<Int> v(gM);
        for (long g = 0; g < gM; ++g) v[g] = (long)(rng() % mod);
        f.set(w, v);
    }
    return f;
}

// Independent oracle: cohomology of the dual numbers via the 2-periodic
// bimodule resolution ... -> R^e --u--> R^e -> R with u = x(x)1 - 1(x)x.
// Hom_{R^e}(R^e, M) = M and the induced map is m -> x m - m x.
std::vector<long> dual_numbers_periodic_dims(const Bimodule& M, const StructureAlgebra& R,
                                             int n_max) {
    // x is basis element 1 of catalog::dual_numbers
    SparseMat u = M.left(1) - M.right(1);
    // complex M --u--> M --u--> M ... (char 2 makes both differentials u);
    // over other bases the signs alternate but u = xm - mx covers it.
    SubquotientComplex C(M.ground(), 0, n_max + 1);
    for (int n = 0; n <= n_max + 1; ++n) {
        C.set_ambient(n, M.carrier().gens);
        if (M.carrier().relations.cols()) C.set_rel(n, M.carrier().relations);
    }
    for (int n = 0; n < n_max + 1; ++n) C.set_diff(n, u);
    C.check_complex();
    std::vector<long> dims;
    for (int n = 0; n <= n_max; ++n) dims.push_back((long)C.homology_at(n).divisors.divisors.size());
    return dims;
}

}  // namespace

TEST_CASE("d o d == 0 on random cochains (several algebras)") {
    std::mt19937_64 rng(3);
    auto F2 = BaseRing::prime_field(2);
    auto Z4 = BaseRing::mod(4);
    std::vector<StructureAlgebra> algs{catalog::dual_numbers(F2), catalog::product_ring(F2),
                                       catalog::upper_triangular2(F2),
                                       catalog::dual_numbers(Z4)};
    for (const auto& R : algs) {
        auto M = regular_bimodule(R);
        for (int deg = 0; deg <= 2; ++deg) {
            auto f = random_cochain(rng, deg, R.dim(), M.carrier().gens, 4);
            auto df = bar_coboundary(R, M, f);
            auto ddf = bar_coboundary(R, M, df);
            CHECK(ddf.is_zero_mod(M.carrier()));
        }
    }
}

TEST_CASE("H^0 of M2(F2) is the center (direct kernel oracle)") {
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::matrix2(F2);
    auto M = regular_bimodule(R);
    CHECK(h0_direct(R, M).dimension() == 1);
    auto h = hochschild_cohomology(R, M, 2);
    CHECK(h.coh.at(0).dimension() == 1);
    // separable algebra: higher cohomology vanishes
    CHECK(h.coh.at(1).is_zero());
    CHECK(h.coh.at(2).is_zero());
}

TEST_CASE("dual numbers, trivial coefficients: dim H^n == 1 for n <= 5") {
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::dual_numbers(F2);
    auto M = trivial_bimodule(R, F2, 2);
    auto h = hochschild_cohomology(R, M, 5, Budget::global().with_degree(6));
    auto oracle = dual_numbers_periodic_dims(M, R, 5);
    for (int n = 0; n <= 5; ++n) {
        CHECK(h.coh.at(n).dimension() == oracle[n]);
        CHECK(h.coh.at(n).dimension() == 1);
    }
}

TEST_CASE("dual numbers, regular coefficients, char 2: dim H^n == 2") {
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::dual_numbers(F2);
    auto M = regular_bimodule(R);
    auto h = hochschild_cohomology(R, M, 4);
    auto oracle = dual_numbers_periodic_dims(M, R, 4);
    for (int n = 0; n <= 4; ++n) CHECK(h.coh.at(n).dimension() == oracle[n]);
    CHECK(h.coh.at(0).dimension() == 2);
    CHECK(h.coh.at(3).dimension() == 2);
}

TEST_CASE("H^i(F_p / K, F_p) = 0 for i >= 1 over K = Z and K = Z/4") {
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::scalar_algebra(F2);
    for (auto ground : {BaseRing::integers(), BaseRing::mod(4)}) {
        auto M = regular_bimodule(R, ground);
        auto h = hochschild_cohomology(ground, R, M, 4);
        CHECK(h.coh.at(0).divisors == std::vector<Int>{2});
        for (int i = 1; i <= 4; ++i) CHECK(h.coh.at(i).is_zero());
    }
}

TEST_CASE("normalized complex agrees with unnormalized at small dims") {
    auto F2 = BaseRing::prime_field(2);
    auto Z = BaseRing::integers();
    std::vector<std::pair<BaseRing, StructureAlgebra>> cases{
        {F2, catalog::dual_numbers(F2)},
        {F2, catalog::product_ring(F2)},
        {Z, catalog::dual_numbers(BaseRing::integers())},
        {Z, catalog::group_algebra_c2(BaseRing::mod(2))}};
    for (const auto& [ground, R] : cases) {
        auto M = regular_bimodule(R, ground);
        BarComplex norm(ground, R, M, 3, true);
        BarComplex full(ground, R, M, 3, false);
        for (int n = 0; n <= 2; ++n) {
            auto a = norm.cx().homology_at(n);
            auto b = full.cx().homology_at(n);
            CHECK(a.divisors == b.divisors);
        }
    }
}

TEST_CASE("derivations: dual numbers and scalar") {
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::dual_numbers(F2);
    auto M = regular_bimodule(R);
    auto rep = derivations(R, M);
    // f(x) in {0, 1, x, 1+x} all give derivations in char 2: f(x^2)=2xf(x)=0
    CHECK(rep.der_divisors.dimension() == 2);
    CHECK(rep.inner_divisors.is_zero());
    CHECK(rep.four_term_exact);

    auto S = catalog::scalar_algebra(F2);
    auto MS = regular_bimodule(S);
    auto rep2 = derivations(S, MS);
    CHECK(rep2.der_divisors.is_zero());

    // cross-method: dim H^1 from derivations == dim H^1 from the bar complex
    std::vector<StructureAlgebra> algs{catalog::dual_numbers(F2), catalog::product_ring(F2),
                                       catalog::upper_triangular2(F2), catalog::matrix2(F2),
                                       catalog::group_algebra_c2(F2),
                                       catalog::truncated_polynomial(BaseRing::prime_field(3), 3)};
    for (const auto& A : algs) {
        auto MA = regular_bimodule(A);
        auto r = derivations(A, MA);
        auto h = hochschild_cohomology(A, MA, 1);
        CHECK(r.h1 == h.coh.at(1));
        CHECK(r.h0 == h.coh.at(0));
    }
}

TEST_CASE("cup product: unit, cocycles, Leibniz") {
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::dual_numbers(F2);
    auto M = regular_bimodule(R);
    std::mt19937_64 rng(17);

    // unit cochain of degree 0 is the identity for cup
    Cochain one;
    one.degree = 0;
    one.r_dim = R.dim();
    one.m_gens = R.dim();
    one.set({}, R.unit());
    auto g = random_cochain(rng, 2, R.dim(), R.dim(), 2);
    auto cup = cup_product(R, one, g);
    CHECK((cup - g).is_zero_mod(M.carrier()));

    // Leibniz: d(f cup g) = df cup g + (-1)^n f cup dg
    for (int n = 1; n <= 2; ++n) {
        auto f = random_cochain(rng, n, R.dim(), R.dim(), 2);
        auto h = random_cochain(rng, 1, R.dim(), R.dim(), 2);
        auto lhs = bar_coboundary(R, M, cup_product(R, f, h));
        auto dfg = cup_product(R, bar_coboundary(R, M, f), h);
        auto fdg = cup_product(R, f, bar_coboundary(R, M, h));
        Cochain rhs = dfg;
        // (-1)^n in characteristic 2 is +1; keep the general sign anyway
        for (const auto& [t, v] : fdg.coeffs) {
            auto cur = rhs.value(t);
            for (long i = 0; i < rhs.m_gens; ++i) cur[i] += (n % 2 == 0 ? v[i] : -v[i]);
            rhs.coeffs[t] = cur;
        }
        CHECK((lhs - rhs).is_zero_mod(M.carrier()));
    }

    // cocycle cup cocycle is a cocycle; degree-1 class squared lands in H^2
    auto h1 = hochschild_cohomology(R, M, 2);
    REQUIRE(h1.coh.representatives.at(1).size() >= 1);
    auto rep = h1.complex->to_cochain(1, h1.coh.representatives.at(1)[0]);
    auto sq = cup_product(R, rep, rep);
    auto dsq = bar_coboundary(R, M, sq);
    CHECK(dsq.is_zero_mod(M.carrier()));
    // the square must be a cocycle whose class lies in H^2 (possibly zero);
    // verify it is cohomologous to an F2-combination of H^2 representatives
    bool found = false;
    for (int c0 = 0; c0 < 2 && !found; ++c0)
        for (int c1 = 0; c1 < 2 && !found; ++c1) {
            Cochain cand = sq;
            auto reps2 = h1.coh.representatives.at(2);
            Cochain comb;
            comb.degree = 2;
            comb.r_dim = R.dim();
            comb.m_gens = R.dim();
            if (reps2.size() >= 1 && c0) comb = comb - h1.complex->to_cochain(2, reps2[0]);
            if (reps2.size() >= 2 && c1) comb = comb - h1.complex->to_cochain(2, reps2[1]);
            Cochain diff = cand - comb;
            if (is_coboundary(F2, R, M, diff)) found = true;
        }
    CHECK(found);
}

TEST_CASE("graded commutativity on classes of total degree <= 4") {
    auto F3 = BaseRing::prime_field(3);
    auto R = catalog::dual_numbers(F3);
    auto M = regular_bimodule(R);
    auto h = hochschild_cohomology(R, M, 3);
    auto reps1 = h.coh.representatives.at(1);
    auto reps2 = h.coh.representatives.at(2);
    if (!reps1.empty() && !reps2.empty()) {
        auto a = h.complex->to_cochain(1, reps1[0]);
        auto b = h.complex->to_cochain(2, reps2[0]);
        auto ab = cup_product(R, a, b);
        auto ba = cup_product(R, b, a);
        // a cup b - (-1)^{1*2} b cup a must be a coboundary
        Cochain diff = ab - ba;
        CHECK(is_coboundary(F3, R, M, diff));
    }
}

TEST_CASE("dimension shift: trivial and dual-number cases") {
    auto F2 = BaseRing::prime_field(2);
    auto S = catalog::scalar_algebra(F2);
    auto MS = regular_bimodule(S);
    auto res = dimension_shift(F2, S, MS, 3);
    CHECK(res.mu_split);
    CHECK(res.shifted.carrier().is_zero_module());
    CHECK(res.agree);

    auto R = catalog::dual_numbers(F2);
    auto M = trivial_bimodule(R, F2, 2);
    auto res2 = dimension_shift(F2, R, M, 3);
    CHECK(res2.mu_split);
    CHECK(res2.agree);

    // three catalog (R, M) pairs at dim <= 3, degrees i = 1, 2
    std::vector<StructureAlgebra> algs{catalog::product_ring(F2), catalog::upper_triangular2(F2),
                                       catalog::group_algebra_c2(F2)};
    for (const auto& A : algs) {
        auto MA = regular_bimodule(A);
        auto r = dimension_shift(F2, A, MA, 3);
        CHECK(r.mu_split);
        CHECK(r.agree);
    }
}

TEST_CASE("long exact sequence for a K-split coefficient sequence") {
    // 0 -> F2 --i--> F2[x]/x^2 --p--> F2 -> 0 (i = multiplication by x,
    // K = F2 so the sequence is split as vector spaces).
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::dual_numbers(F2);
    auto M = regular_bimodule(R);
    auto Msub = trivial_bimodule(R, F2, 2);   // socle x*R as a bimodule
    auto Mquot = trivial_bimodule(R, F2, 2);  // R / x*R
    int N = 3;
    auto hM = hochschild_cohomology(R, M, N);
    auto hS = hochschild_cohomology(R, Msub, N);
    auto hQ = hochschild_cohomology(R, Mquot, N);
    // rank bookkeeping: sum of dims over the exact triangle must balance:
    // dim H^n(S) - dim H^n(M) + dim H^n(Q) - (connecting ranks) == 0.
    // The Euler-characteristic form of exactness over a field:
    long euler = 0;
    for (int n = 0; n <= N; ++n)
        euler += (long)hS.coh.at(n).dimension() - (long)hM.coh.at(n).dimension() +
                 (long)hQ.coh.at(n).dimension();
    // For the 2-periodic pattern (1,1,1,..) vs (2,2,2,..): 1-2+1 = 0 each degree.
    CHECK(euler == 0);
}
