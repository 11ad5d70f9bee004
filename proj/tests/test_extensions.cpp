#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cohom/catalog.hpp"
#include "cohom/extensions.hpp"

#include <random>

using namespace cohom;

namespace {

Cochain zero_cochain(int degree, long d, long gM) {
    Cochain f;
    f.degree = degree;
    f.r_dim = d;
    f.m_gens = gM;
    return f;
}

Cochain random_cocycle(std::mt19937_64& rng, const BaseRing& ground, const StructureAlgebra& R,
                       const Bimodule& M, int degree) {
    // sample from the kernel of the unnormalized coboundary matrix
    Budget b = Budget::global().with_degree(degree + 1);
    BarComplex bc(ground, R, M, degree + 1, false, b);
    // cocycle lattice: restrict to vectors v with d v in the relation span
    auto h = bc.cx();
    SparseMat D = h.diff(degree);
    SparseMat B = h.rel_gens(degree + 1);
    SparseMat K = kernel_lattice(B.cols() ? D.hcat(B) : D);
    SparseMat Ktop(D.cols(), K.cols());
    for (const auto& e : K.entries())
        if (e.r < D.cols()) Ktop.add(e.r, e.c, e.v);
    Ktop.compress();
    std::vector<Int> v(D.cols(), 0);
    for (long c = 0; c < Ktop.cols(); ++c) {
        long coef = (long)(rng() % 3);
        if (!coef) continue;
        auto col = Ktop.column(c);
        for (long i = 0; i < D.cols(); ++i) v[i] += coef * col[i];
    }
    for (auto& x : v) x = ground.reduce(x);
    return bc.to_cochain(degree, v);
}

}  // namespace

TEST_CASE("minimize: presentations collapse to invariant form") {
    auto Z = BaseRing::integers();
    SparseMat rel(3, 2);
    rel.add(0, 0, 2);
    rel.add(1, 1, 1);  // kills generator 1
    FPModule m(Z, 3, rel);
    auto mini = minimize(m);
    CHECK(mini.module.gens == 2);
    CHECK(mini.module.invariants() == m.invariants());
    // round trip: from_min o to_min == id mod relations
    SparseMat rt = mini.from_min.mul(mini.to_min);
    CHECK(matrices_congruent(rt, SparseMat::identity(3), m));

    auto F2 = BaseRing::prime_field(2);
    SparseMat rel2(2, 1);
    rel2.add(0, 0, 1);
    rel2.add(1, 0, 1);
    FPModule v(F2, 2, rel2);  // one relation e0 + e1 = 0
    auto mini2 = minimize(v);
    CHECK(mini2.module.gens == 1);
    CHECK(mini2.module.relations.cols() == 0);
}

TEST_CASE("semidirect product with f = 0 is the trivial extension") {
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::dual_numbers(F2);
    auto M = trivial_bimodule(R, F2, 2);
    auto X = semidirect_from_2cocycle(F2, R, M, zero_cochain(2, R.dim(), 1));
    validate_abelian_extension(X);
    // trivial extension splits multiplicatively: section r -> (0, r)
    auto f = extension_to_2cocycle(X);
    CHECK(is_coboundary(F2, R, M, f));
}

TEST_CASE("rank-1 algebra over Z/4: the unnormalized 2-cochain is a coboundary") {
    // R = M = F_2 over ground Z/4.  The only unnormalized candidate cocycle
    // f(1,1) = 1 is d(g) for g(1) = 1, so H^2 = 0 and the semidirect product
    // is isomorphic to the trivial extension (additively (Z/2)^2; in
    // particular no extension here has additive group Z/4).
    auto Z4 = BaseRing::mod(4);
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::scalar_algebra(F2);
    auto M = regular_bimodule(R, Z4);
    Cochain f = zero_cochain(2, 1, 1);
    f.set({0, 0}, {Int(1)});
    std::vector<long> w;
    CHECK(is_2cocycle(R, M, f, &w));
    CHECK(is_coboundary(Z4, R, M, f));
    auto X = semidirect_from_2cocycle(Z4, R, M, f);
    validate_abelian_extension(X);
    // additive structure of E: Z/2 (+) Z/2
    auto ed = X.E.carrier().invariants();
    CHECK(ed.divisors == std::vector<Int>{2, 2});
}

TEST_CASE("coboundary cocycle gives an extension isomorphic to the trivial one") {
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::dual_numbers(F2);
    auto M = regular_bimodule(R);
    std::mt19937_64 rng(23);
    // g random 1-cochain, f = d g
    Cochain g = zero_cochain(1, R.dim(), M.carrier().gens);
    for (long i = 0; i < R.dim(); ++i) {
        std::vector<Int> v(M.carrier().gens);
        for (auto& x : v) x = (long)(rng() % 2);
        g.set({i}, v);
    }
    Cochain f = bar_coboundary(R, M, g);
    auto Xf = semidirect_from_2cocycle(F2, R, M, f);
    auto X0 = semidirect_from_2cocycle(F2, R, M, zero_cochain(2, R.dim(), M.carrier().gens));
    // phi(m, r) = (m + g'(r), r) for the change of section; the normalization
    // inside semidirect may shift g, so verify instead that both classes are
    // zero and the extracted cocycles are cohomologous.
    auto ff = extension_to_2cocycle(Xf);
    auto f0 = extension_to_2cocycle(X0);
    CHECK(is_coboundary(F2, R, M, ff - f0));
    CHECK(is_coboundary(F2, R, M, ff));
}

TEST_CASE("Z/4 as an extension of Z/2 by Z/2 is not split over Z (nor over Z/4)") {
    auto Z = BaseRing::integers();
    auto R = catalog::scalar_algebra(BaseRing::mod(2));
    for (auto ground : {BaseRing::integers(), BaseRing::mod(4)}) {
        (void)Z;
        auto M = regular_bimodule(R, ground);
        // E = Z/4 as an FPAlgebra over the ground
        SparseMat rel(1, 1);
        rel.add(0, 0, ground.is_integers() ? 4 : 0);
        FPModule carrier = ground.is_integers() ? FPModule(ground, 1, rel)
                                                : FPModule::free_module(ground, 1);
        std::vector<std::vector<std::vector<Int>>> mult{{{Int(1)}}};
        FPAlgebra E(ground, carrier, mult, {Int(1)});
        SparseMat incl(1, 1);
        incl.add(0, 0, 2);  // Z/2 -> Z/4, x -> 2x
        SparseMat proj = SparseMat::identity(1);
        AbelianExtension X{ground, R, M, E, incl, proj};
        validate_abelian_extension(X);
        CHECK_THROWS_AS(extension_to_2cocycle(X), NoSplitting);
    }
}

TEST_CASE("2-cocycle round trips preserve the class (random, several grounds)") {
    std::mt19937_64 rng(101);
    auto F2 = BaseRing::prime_field(2);
    auto F3 = BaseRing::prime_field(3);
    struct CasePair {
        BaseRing ground;
        StructureAlgebra R;
    };
    std::vector<CasePair> cases{{F2, catalog::dual_numbers(F2)},
                                {F2, catalog::product_ring(F2)},
                                {F3, catalog::truncated_polynomial(F3, 3)},
                                {BaseRing::integers(), catalog::dual_numbers(BaseRing::integers())}};
    int done = 0;
    for (const auto& cp : cases) {
        auto M = regular_bimodule(cp.R, cp.ground);
        for (int trial = 0; trial < 5; ++trial) {
            Cochain f = random_cocycle(rng, cp.ground, cp.R, M, 2);
            auto X = semidirect_from_2cocycle(cp.ground, cp.R, M, f);
            auto f2 = extension_to_2cocycle(X);
            CHECK(is_coboundary(cp.ground, cp.R, M, f2 - f));
            ++done;
        }
    }
    CHECK(done == 20);
}

TEST_CASE("validate_crossed: zero map, Z/4 times 2, Peiffer violation") {
    // delta = 0 with any bimodule
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::dual_numbers(F2);
    auto M = regular_bimodule(R);
    auto xb = validate_crossed(F2, R, M, SparseMat(R.dim(), M.carrier().gens));
    for (const auto& row : xb.star)
        for (const auto& v : row)
            for (const auto& x : v) CHECK(x == 0);

    // Z/p^2 --p--> Z/p^2 over ground Z/4
    auto Z4 = BaseRing::mod(4);
    auto C0 = catalog::scalar_algebra(Z4);
    auto C1 = regular_bimodule(C0, Z4);
    SparseMat two(1, 1);
    two.add(0, 0, 2);
    auto xb2 = validate_crossed(Z4, C0, C1, two);
    CHECK(xb2.star[0][0][0] == 2);

    // corrupted: C1 = F2^2 over the scalar algebra with delta = [1 1]
    auto S = catalog::scalar_algebra(F2);
    FPModule c2 = FPModule::free_module(F2, 2);
    std::vector<SparseMat> acts{SparseMat::identity(2)};
    Bimodule B(S, F2, c2, acts, acts);
    SparseMat d11(1, 2);
    d11.add(0, 0, 1);
    d11.add(0, 1, 1);
    CHECK_THROWS_AS(validate_crossed(F2, S, B, d11), PeifferViolation);
}

TEST_CASE("split crossed extension has class zero; sections do not matter") {
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::dual_numbers(F2);
    auto M = trivial_bimodule(R, F2, 2);
    auto X = split_crossed_extension(F2, R, M);
    auto f = crossed_to_3cocycle(X);
    CHECK(is_coboundary(F2, R, M, f));
    // independent sections give cohomologous cocycles
    auto fa = crossed_to_3cocycle(X, 11);
    auto fb = crossed_to_3cocycle(X, 222);
    CHECK(is_coboundary(F2, R, M, fa - fb));
}

TEST_CASE("crossed_from_3cocycle represents the intended class") {
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::dual_numbers(F2);
    auto M = trivial_bimodule(R, F2, 2);
    auto h = hochschild_cohomology(R, M, 3);
    REQUIRE(h.coh.at(3).dimension() == 1);
    auto f = h.complex->to_cochain(3, h.coh.representatives.at(3)[0]);
    CHECK(!is_coboundary(F2, R, M, f));

    auto X = crossed_from_3cocycle(F2, R, M, f);
    auto fx = crossed_to_3cocycle(X);
    // the class of X equals [f] (up to the connecting sign, trivial over F2)
    CHECK(!is_coboundary(F2, R, M, fx));
    CHECK(is_coboundary(F2, R, M, fx - f));

    // a cocycle cohomologous to zero gives a class-zero crossed extension
    auto X0 = crossed_from_3cocycle(F2, R, M, zero_cochain(3, R.dim(), 1));
    auto f0 = crossed_to_3cocycle(X0);
    CHECK(is_coboundary(F2, R, M, f0));
}

TEST_CASE("pullback along the identity and along a free cover") {
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::dual_numbers(F2);
    auto M = trivial_bimodule(R, F2, 2);
    auto h = hochschild_cohomology(R, M, 3);
    auto f = h.complex->to_cochain(3, h.coh.representatives.at(3)[0]);
    auto X = crossed_from_3cocycle(F2, R, M, f);

    auto Xid = pullback_crossed(X, X.xb.C0, SparseMat::identity(X.xb.C0.dim()));
    auto fid = crossed_to_3cocycle(Xid);
    CHECK(is_coboundary(F2, R, M, fid - crossed_to_3cocycle(X)));

    // free cover: truncated free algebra on the generators of C0 (length 2)
    long d0 = X.xb.C0.dim();
    auto P0 = truncated_free_algebra(F2, d0 - 1, 2);
    // map sending the length-1 word x_i to the (i+1)-st adapted basis vector
    const auto& ab = X.xb.C0.adapted_basis();
    SparseMat fm(d0, P0.dim());
    {
        // word basis: index 0 = unit, 1..(d0-1) = letters, rest = length-2 words
        for (long c = 0; c < P0.dim(); ++c) {
            std::vector<Int> img(d0, 0);
            if (c == 0) {
                img = X.xb.C0.unit();
            } else if (c <= d0 - 1) {
                img = ab.P.column(c);
            } else {
                // length-2 word (a, b): image = image(a) * image(b)
                long code = c - d0;
                long a = code / (d0 - 1), b = code % (d0 - 1);
                img = X.xb.C0.product(ab.P.column(a + 1), ab.P.column(b + 1));
            }
            for (long r = 0; r < d0; ++r)
                if (img[r] != 0) fm.add(r, c, img[r]);
        }
        fm.compress();
    }
    auto Xp = pullback_crossed(X, P0, fm);
    auto fp = crossed_to_3cocycle(Xp);
    CHECK(is_coboundary(F2, R, M, fp - crossed_to_3cocycle(X)));
    CHECK(!is_coboundary(F2, R, M, fp));
}

TEST_CASE("obstruction: delta extension exists iff the class vanishes") {
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::dual_numbers(F2);
    auto M = trivial_bimodule(R, F2, 2);

    auto Xsplit = split_crossed_extension(F2, R, M);
    auto res = delta_extension(Xsplit);
    CHECK(std::holds_alternative<DeltaExtension>(res));

    auto h = hochschild_cohomology(R, M, 3);
    auto f = h.complex->to_cochain(3, h.coh.representatives.at(3)[0]);
    auto Xbad = crossed_from_3cocycle(F2, R, M, f);
    auto res2 = delta_extension(Xbad);
    REQUIRE(std::holds_alternative<NoSolution>(res2));
    CHECK(!is_coboundary(F2, R, M, std::get<NoSolution>(res2).obstruction));
}

TEST_CASE("H^2 twisting: S_g iso S_g' iff g - g' is a coboundary") {
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::dual_numbers(F2);
    auto M = trivial_bimodule(R, F2, 2);
    auto X = split_crossed_extension(F2, R, M);
    auto h2 = hochschild_cohomology(R, M, 2);
    REQUIRE(h2.coh.at(2).dimension() == 1);
    Cochain rep = h2.complex->to_cochain(2, h2.coh.representatives.at(2)[0]);
    rep = normalize_2cocycle(F2, R, M, rep);

    auto S0 = std::get<DeltaExtension>(delta_extension(X));
    auto S1 = std::get<DeltaExtension>(delta_extension(X, rep));
    CHECK(!delta_extensions_isomorphic(X, S0, S1));
    // twist by a coboundary: isomorphic to S0
    std::mt19937_64 rng(5);
    Cochain g1c = zero_cochain(1, R.dim(), 1);
    g1c.set({1}, {Int(1)});
    Cochain db = bar_coboundary(R, M, g1c);
    db = normalize_2cocycle(F2, R, M, db);
    auto S2 = std::get<DeltaExtension>(delta_extension(X, db));
    CHECK(delta_extensions_isomorphic(X, S0, S2));
    (void)rng;
}

TEST_CASE("free crossed bimodule: trivial cases and rank count") {
    auto F2 = BaseRing::prime_field(2);
    // V = 0
    auto C = catalog::scalar_algebra(F2);
    auto xb0 = free_crossed_bimodule(F2, C, 0, SparseMat(1, 0));
    CHECK(xb0.C1.carrier().gens == 0);
    // C = K, V = K: C1 = K, delta determined by the image of 1
    SparseMat v1(1, 1);
    v1.add(0, 0, 1);
    auto xb1 = free_crossed_bimodule(F2, C, 1, v1);
    CHECK(xb1.C1.carrier().invariants().dimension() == 1);

    // truncated free algebra on one generator, L = 2; V rank 1 mapping to x.
    auto T = truncated_free_algebra(F2, 1, 2);  // basis 1, x, xx
    SparseMat vx(T.dim(), 1);
    vx.add(1, 0, 1);
    auto xb2 = free_crossed_bimodule(F2, T, 1, vx);
    // Peiffer quotient rank via the SNF oracle: raw C (x) V (x) C has dim 9;
    // relations from x d(y) - d(x) y: count by independent elimination.
    long raw = T.dim() * T.dim();
    CHECK(xb2.C1.carrier().invariants().dimension() < raw);
    // the crossed bimodule validates (Peiffer holds in the quotient)
    CHECK(xb2.C1.carrier().invariants().dimension() >= 1);
}

TEST_CASE("crossed extension validation rejects broken exactness") {
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::dual_numbers(F2);
    auto M = trivial_bimodule(R, F2, 2);
    auto X = split_crossed_extension(F2, R, M);
    // corrupt incl: zero map is not injective
    CrossedExtension bad = X;
    bad.incl = SparseMat(M.carrier().gens, M.carrier().gens);
    CHECK_THROWS(validate_crossed_extension(bad));
}
