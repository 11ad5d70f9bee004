#include "cohom/verify.hpp"

#include "cohom/bicomplex.hpp"
#include "cohom/catalog.hpp"
#include "cohom/io.hpp"
#include "cohom/qconstruction.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <set>

namespace cohom {

namespace {

struct Harness {
    VerifyResult* out;
    const VerifyOptions* opts;
    std::string suite;

    void pass(const std::string& what) { out->lines.push_back("ok   " + what); }
    void fail(const std::string& what, const std::string& repro_content) {
        out->ok = false;
        out->lines.push_back("FAIL " + what);
        out->failure_detail = what;
        std::filesystem::path p =
            std::filesystem::path(opts->emit_dir) / ("verify_failure_" + suite + ".txt");
        std::ofstream f(p);
        f << "suite: " << suite << "\nseed: " << opts->seed << "\nfailure: " << what << "\n\n"
          << repro_content;
        out->repro_path = p.string();
    }
    void check(bool cond, const std::string& what, const std::string& repro) {
        if (cond)
            pass(what);
        else
            fail(what, repro);
    }
};

SparseMat random_sparse(std::mt19937_64& rng, long r, long c, long bound) {
    SparseMat m(r, c);
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j)
            if (rng() % 3) m.add(i, j, (long)(rng() % (2 * bound + 1)) - bound);
    m.compress();
    return m;
}

void suite_complexes(Harness& h, std::mt19937_64& rng) {
    // SNF round trips (U A V == D is asserted inside when debug checks are on)
    bool ok = true;
    std::string witness;
    for (int t = 0; t < 25 && ok; ++t) {
        SparseMat A = random_sparse(rng, 1 + (long)(rng() % 6), 1 + (long)(rng() % 6), 9);
        auto s = smith_normal_form(A);
        for (long i = 0; i + 1 < s.rank; ++i)
            if (s.divisors[i + 1] % s.divisors[i] != 0) ok = false;
        SparseMat K = kernel_lattice(A);
        if (!A.mul(K).is_zero()) ok = false;
        if (!ok) {
            std::ostringstream os;
            os << "matrix " << A.rows() << " x " << A.cols() << "\n";
            for (const auto& e : A.entries())
                os << e.r << " " << e.c << " " << e.v.get_str() << "\n";
            witness = os.str();
        }
    }
    h.check(ok, "smith normal form round trips and kernels", witness);

    // homology invariance under unimodular conjugation
    ok = true;
    for (int t = 0; t < 8 && ok; ++t) {
        SparseMat d0 = random_sparse(rng, 3, 2, 2);
        SparseMat d1 = kernel_lattice(d0.transpose()).transpose();
        SubquotientComplex C(BaseRing::integers(), 0, 2);
        C.set_ambient(0, 2);
        C.set_ambient(1, 3);
        C.set_ambient(2, d1.rows());
        C.set_diff(0, d0);
        C.set_diff(1, d1);
        auto h1 = C.homology_at(1);
        Dense P = Dense::identity(3);
        for (int k = 0; k < 5; ++k) {
            long i = (long)(rng() % 3), j = (long)(rng() % 3);
            if (i == j) continue;
            for (long col = 0; col < 3; ++col) P(i, col) += Int((long)(rng() % 3) - 1) * P(j, col);
        }
        SparseMat Ps = P.to_sparse();
        auto Pinv = solve_mat(Ps, SparseMat::identity(3));
        SubquotientComplex C2(BaseRing::integers(), 0, 2);
        C2.set_ambient(0, 2);
        C2.set_ambient(1, 3);
        C2.set_ambient(2, d1.rows());
        C2.set_diff(0, Ps.mul(d0));
        C2.set_diff(1, d1.mul(*Pinv));
        if (!(C2.homology_at(1).divisors == h1.divisors)) ok = false;
    }
    h.check(ok, "homology invariant under unimodular change of basis", "");

    // tensor/hom versus brute-force orders over Z/4
    ok = true;
    auto base = BaseRing::mod(4);
    for (int t = 0; t < 6 && ok; ++t) {
        long g = 1 + (long)(rng() % 2);
        SparseMat rel = random_sparse(rng, g, 1 + (long)(rng() % 2), 3);
        FPModule A(base, g, rel);
        auto ordA = A.order();
        if (!ordA || *ordA > 64) continue;
        auto edA = A.invariants();
        Int expect = 1;
        for (const auto& d1 : edA.divisors)
            for (const auto& d2 : edA.divisors) expect *= gcd(d1, d2);
        auto T = tensor_modules(A, A).order();
        auto H = hom_modules(A, A).module.order();
        if (!T || !H || *T != expect || *H != expect) ok = false;
    }
    h.check(ok, "tensor and hom agree with brute-force module orders", "");
}

void suite_extensions(Harness& h, std::mt19937_64& rng) {
    auto F2 = BaseRing::prime_field(2);
    std::vector<StructureAlgebra> algs{catalog::dual_numbers(F2), catalog::product_ring(F2),
                                       catalog::upper_triangular2(F2)};
    bool ok = true;
    std::string repro;
    for (const auto& R : algs) {
        auto M = regular_bimodule(R, F2);
        Budget b = Budget::global().with_degree(4);
        BarComplex bc(F2, R, M, 3, false, b);
        SparseMat D = bc.cx().diff(2);
        SparseMat Bn = bc.cx().rel_gens(3);
        SparseMat K = kernel_lattice(Bn.cols() ? D.hcat(Bn) : D);
        for (int trial = 0; trial < 5 && ok; ++trial) {
            std::vector<Int> v(D.cols(), 0);
            for (long c = 0; c < K.cols(); ++c) {
                if (rng() % 2) continue;
                auto col = K.column(c);
                for (long i = 0; i < D.cols(); ++i) v[i] += col[i];
            }
            for (auto& x : v) x = F2.reduce(x);
            Cochain f = bc.to_cochain(2, v);
            auto X = semidirect_from_2cocycle(F2, R, M, f);
            auto f2 = extension_to_2cocycle(X);
            if (!is_coboundary(F2, R, M, f2 - f)) {
                ok = false;
                repro = print_algebra(R) + "\n" + print_bimodule(M);
            }
        }
    }
    h.check(ok, "2-cocycle round trips preserve classes", repro);

    // crossed round trip with section independence and the obstruction pair
    auto R = catalog::dual_numbers(F2);
    auto M = trivial_bimodule(R, F2, 2);
    auto hres = hochschild_cohomology(R, M, 3);
    auto f3 = hres.complex->to_cochain(3, hres.coh.representatives.at(3)[0]);
    auto X = crossed_from_3cocycle(F2, R, M, f3);
    auto fa = crossed_to_3cocycle(X, rng());
    auto fb = crossed_to_3cocycle(X, rng());
    h.check(is_coboundary(F2, R, M, fa - fb), "3-cocycle class is section independent",
            print_crossed_extension(X));
    h.check(!is_coboundary(F2, R, M, fa), "nonzero class detected", print_crossed_extension(X));
    auto obstructed = delta_extension(X);
    h.check(std::holds_alternative<NoSolution>(obstructed),
            "delta extension refuses the nonzero class", print_crossed_extension(X));
    auto Xs = split_crossed_extension(F2, R, M);
    auto solved = delta_extension(Xs);
    h.check(std::holds_alternative<DeltaExtension>(solved),
            "delta extension solves the zero class", print_crossed_extension(Xs));
}

void suite_kunneth(Harness& h, std::mt19937_64&) {
    auto F2 = BaseRing::prime_field(2);
    auto R = catalog::dual_numbers(F2);
    auto A = from_structure_algebra(R, F2, 5);
    auto T = tensor_chain_algebras(A, A, 5);
    auto M = trivial_bimodule(T.degree0(), F2, 2);
    auto total = chain_hochschild_total(T, M, 4);
    bool ok = true;
    for (int n = 0; n <= 4; ++n)
        if ((long)total.at(n).dimension() != n + 1) ok = false;
    h.check(ok, "Kunneth dimensions for the tensor square of the dual numbers",
            print_algebra(R));

    StandardParams p;
    p.n = 2;
    auto L = standard_chain_algebra(StandardKind::Exterior, p, 3);
    auto T2 = tensor_chain_algebras(L, L, 3);
    bool signs = true;
    try {
        T2.validate();
    } catch (const Error&) {
        signs = false;
    }
    h.check(signs, "Koszul signs in tensor products (d o d == 0, Leibniz)", "");
}

void suite_sigma(Harness& h, std::mt19937_64&) {
    for (long p : {2L, 3L}) {
        auto A = catalog::scalar_algebra(BaseRing::prime_field(p));
        auto cc = canonical_class_sigma(A);
        auto e = e_invariant(cc.extension);
        h.check(e.size() == 1 && e[0] == 1, "e((sigma)_A) = 1 for p = " + std::to_string(p),
                print_crossed_extension(cc.extension));
    }
    // e vanishes when p C_1 = 0 (image of the integral d^3 construction)
    Int p = 2;
    BaseRing K = BaseRing::mod(p * p);
    auto A = catalog::scalar_algebra(BaseRing::prime_field(p));
    auto C0 = catalog::scalar_algebra(K);
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
    CrossedExtension X{K, A, M, xb, incl, SparseMat::identity(1)};
    validate_crossed_extension(X);
    auto e = e_invariant(X);
    h.check(e.size() == 1 && e[0] == 0, "e vanishes on d^3 images (p C_1 = 0)",
            print_crossed_extension(X));
}

void suite_qlow(Harness& h, std::mt19937_64&) {
    for (long n : {2L, 3L, 4L}) {
        auto Q = build_q(FiniteRing::cyclic(n));
        auto low = q_low_homology(Q);
        h.check(low.h0.divisors == std::vector<Int>{n} && low.h1.is_zero(),
                "H_0(Q(Z/" + std::to_string(n) + ")) = Z/" + std::to_string(n) + ", H_1 = 0", "");
        bool cycles = true;
        for (long a = 0; a < n; ++a) {
            try {
                gamma(Q, a);
            } catch (const Error&) {
                cycles = false;
            }
        }
        h.check(cycles, "gamma(a) is a d2-cycle for Z/" + std::to_string(n), "");
        h.check(!q_leibniz_failure(Q).has_value(),
                "ring Q Leibniz on degree <= 2 pairs, Z/" + std::to_string(n), "");
    }
}

void suite_bicomplex(Harness& h, std::mt19937_64&) {
    auto F2 = BaseRing::prime_field(2);
    {
        auto R = catalog::dual_numbers(F2);
        auto M = regular_bimodule(R, F2);
        BicomplexSpec spec{F2, catalog::scalar_algebra(F2), R,
                           SparseMat::from_columns(R.dim(), {R.unit()}), M, 4, 1 << 16};
        auto total = total_cohomology(spec);  // D o D == 0 is asserted inside
        auto bar = hochschild_cohomology(F2, R, M, 4);
        bool agree = true;
        for (int n = 0; n <= 4; ++n)
            if (!(total.at(n) == bar.coh.at(n))) agree = false;
        h.check(agree, "K = k bicomplex equals the bar complex", print_algebra(R));
    }
    {
        auto K = catalog::dual_numbers(F2);
        auto R = catalog::scalar_algebra(F2);
        SparseMat phi(1, 2);
        phi.add(0, 0, 1);
        auto M = regular_bimodule(R, F2);
        BicomplexSpec spec{F2, K, R, phi, M, 3, 1 << 16};
        auto a = alpha_map(spec);
        h.check(a.isomorphism.at(0) && a.isomorphism.at(1),
                "alpha is an isomorphism in degrees 0 and 1", print_algebra(K));
        h.check(a.injective.at(2) && !a.isomorphism.at(2),
                "alpha^2 strictly injective over the dual numbers", print_algebra(K));
    }
}

}  // namespace

VerifyResult run_verify(const std::string& suite, const VerifyOptions& opts) {
    VerifyResult out;
    Harness h{&out, &opts, suite};
    std::mt19937_64 rng(opts.seed);
    auto run = [&](const std::string& name, void (*fn)(Harness&, std::mt19937_64&)) {
        if (suite != "all" && suite != name) return;
        Harness hh{&out, &opts, name};
        try {
            fn(hh, rng);
        } catch (const Error& e) {
            hh.fail(name + std::string(": exception: ") + e.what(), "");
        }
    };
    std::set<std::string> known{"complexes", "extensions", "kunneth", "sigma",
                                "qlow",      "bicomplex",  "all"};
    if (!known.count(suite)) throw Error("unknown verify suite '" + suite + "'");
    run("complexes", suite_complexes);
    run("extensions", suite_extensions);
    run("kunneth", suite_kunneth);
    run("sigma", suite_sigma);
    run("qlow", suite_qlow);
    run("bicomplex", suite_bicomplex);
    (void)h;
    return out;
}

}  // namespace cohom
