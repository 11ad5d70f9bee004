#include "cohom/shukla.hpp"

#include "cohom/catalog.hpp"

namespace cohom {

namespace {

// Bimodule over the degree-0 algebra of a resolution, from a bimodule over R
// when the degree-0 algebra surjects onto R coordinate-wise (rank-1 targets
// and mod-n liftings).
Bimodule restrict_to_degree0(const StructureAlgebra& A0, const BaseRing& ground,
                             const Bimodule& M) {
    std::vector<SparseMat> left, right;
    for (long i = 0; i < A0.dim(); ++i) {
        left.push_back(M.left(i));
        right.push_back(M.right(i));
    }
    return bimodule_over(A0, ground, M.carrier(), std::move(left), std::move(right));
}

bool tables_reduce_to(const StructureAlgebra& lift, const StructureAlgebra& R) {
    if (lift.dim() != R.dim()) return false;
    for (long i = 0; i < R.dim(); ++i)
        for (long j = 0; j < R.dim(); ++j)
            for (long k = 0; k < R.dim(); ++k)
                if (R.base().reduce(lift.mult(i, j)[k]) != R.mult(i, j)[k]) return false;
    std::vector<Int> u = lift.unit();
    for (long k = 0; k < R.dim(); ++k)
        if (R.base().reduce(u[k]) != R.unit()[k]) return false;
    return true;
}

std::optional<ChainAlgebra> builtin_resolution(const ShuklaQuery& q, int bound) {
    const BaseRing& base = q.R.base();
    if (q.ground.is_integers() && !base.is_integers()) {
        Int n = base.modulus();
        if (q.R.dim() == 1) {
            StandardParams p;
            p.n = n;
            return standard_chain_algebra(StandardKind::Exterior, p, bound);
        }
        if (q.lift && q.lift->base().is_integers() && tables_reduce_to(*q.lift, q.R)) {
            StandardParams p;
            p.n = n;
            p.lift = q.lift;
            return standard_chain_algebra(StandardKind::LiftedAlgebra, p, bound);
        }
        return std::nullopt;
    }
    // ground Z/p^2 with an F_p-algebra R
    if (!q.ground.is_integers() && base.is_field()) {
        Int p = base.modulus();
        if (q.ground.modulus() != p * p) return std::nullopt;
        StandardParams sp;
        sp.n = p;
        auto lg = standard_chain_algebra(StandardKind::ExteriorTensorDividedPower, sp, bound);
        if (q.R.dim() == 1) return lg;
        if (q.lift && q.lift->base() == q.ground && tables_reduce_to(*q.lift, q.R)) {
            auto a0 = from_structure_algebra(*q.lift, q.ground, bound);
            return tensor_chain_algebras(a0, lg, bound);
        }
        return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace

ShuklaResult shukla_cohomology(const ShuklaQuery& q) {
    if (!q.R.base().quotient_of(q.ground)) throw BaseMismatch("shukla: R base vs ground");
    const int bound = q.n_max + 1;
    if (q.n_max > q.budget.max_degree)
        throw BudgetExceeded("shukla degree " + std::to_string(q.n_max));

    auto via_total = [&](const ChainAlgebra& X, const char* name) {
        Bimodule M0 = X.degree0().dim() == q.R.dim() ? restrict_to_degree0(X.degree0(), q.ground, q.M)
                                                     : q.M;
        auto coh = chain_hochschild_total(X, M0, q.n_max, q.budget);
        return ShuklaResult{std::move(coh), name};
    };

    // projective over the ground: plain Hochschild
    if (q.R.base() == q.ground &&
        (q.strategy == ShuklaStrategy::Auto || q.strategy == ShuklaStrategy::Builtin)) {
        auto h = hochschild_cohomology(q.ground, q.R, q.M, q.n_max, q.budget);
        return ShuklaResult{std::move(h.coh), "hochschild (R projective over ground)"};
    }

    if (q.strategy == ShuklaStrategy::User) {
        if (!q.user_resolution) throw StrategyUnavailable("user strategy without a resolution");
        return via_total(*q.user_resolution, "user resolution");
    }

    if (q.strategy == ShuklaStrategy::Auto || q.strategy == ShuklaStrategy::Builtin) {
        auto X = builtin_resolution(q, bound);
        if (X) return via_total(*X, "builtin resolution");
        if (q.strategy == ShuklaStrategy::Builtin)
            throw StrategyUnavailable("no builtin resolution for this (ground, R)");
    }

    // killing cycles: rank-1 targets only
    if (q.R.dim() != 1)
        throw StrategyUnavailable("killing-cycles strategy needs a rank-1 algebra");
    auto res = killing_cycles_resolution(Ground::plain(q.ground), q.R.base(), {Int(1)},
                                         bound + 1);
    DerCoefficients DM{q.M.carrier(), {}};
    auto der = der_complex(res.resolution, DM, q.n_max);
    ShuklaResult out;
    out.strategy_used = "killing cycles";
    out.coh.groups[0] = h0_direct(q.R, q.M);
    for (int i = 1; i <= q.n_max; ++i) {
        auto h = der.cx.homology_at(i - 1);
        out.coh.groups[i] = h.divisors;
        out.coh.representatives[i] = h.representatives;
    }
    return out;
}

CohomologyResult shukla_two_level(const Ground& ground, const std::vector<Int>& aug,
                                  const DerCoefficients& M, int n_max) {
    auto res = killing_cycles_resolution(ground, ground.scalar, aug, n_max + 2);
    auto der = der_complex(res.resolution, M, n_max);
    CohomologyResult out;
    // rank-1 quotient with a symmetric two-sided action: H^0(R, M) = M
    out.groups[0] = M.carrier.invariants();
    for (int i = 1; i <= n_max; ++i) {
        auto h = der.cx.homology_at(i - 1);
        out.groups[i] = h.divisors;
        out.representatives[i] = h.representatives;
    }
    return out;
}

ComparisonMap comparison_map(const BaseRing& ground, const StructureAlgebra& R, const Bimodule& M,
                             int n_max, const std::optional<StructureAlgebra>& lift) {
    ComparisonMap out;
    Budget budget = Budget::global().with_degree(std::max(Budget::global().max_degree, n_max));
    auto bar = hochschild_cohomology(ground, R, M, n_max, budget);
    if (R.base() == ground) {
        // identity comparison
        for (int n = 0; n <= n_max; ++n) {
            out.hochschild[n] = bar.coh.at(n);
            out.shukla[n] = bar.coh.at(n);
            long k = (long)bar.coh.at(n).divisors.size();
            out.matrix[n] = SparseMat::identity(k);
            out.iso[n] = true;
        }
        return out;
    }
    ShuklaQuery q{ground, R, M, n_max, ShuklaStrategy::Auto, lift, nullptr, budget};
    auto X = builtin_resolution(q, n_max + 1);
    std::optional<KillingCyclesResult> kc;
    if (!X) {
        if (R.dim() != 1) throw StrategyUnavailable("comparison_map: no resolution available");
        kc = killing_cycles_resolution(Ground::plain(ground), R.base(), {Int(1)}, n_max + 2);
        X = kc->resolution;
    }
    Bimodule M0 = X->degree0().dim() == R.dim() ? restrict_to_degree0(X->degree0(), ground, M) : M;
    ChainTotalComplex T(*X, M0, n_max + 1, budget);

    // augmentation X_0 -> R in adapted coordinates on unit complements
    const StructureAlgebra& X0 = X->degree0();
    SparseMat eps(R.dim(), X0.dim());
    if (X0.dim() == R.dim()) {
        for (long i = 0; i < R.dim(); ++i) eps.add(i, i, 1);
    } else {
        for (long k = 0; k < X0.dim(); ++k) eps.add(0, k, 1);  // rank-1 target
    }
    SparseMat ebar = R.adapted_basis().Pinv.mul(eps).mul(X0.adapted_basis().P).reduced(ground);

    const long gM = M.carrier().gens;
    BarComplex BC(ground, R, M, n_max + 1, true, budget);
    for (int n = 0; n <= n_max; ++n) {
        out.hochschild[n] = bar.coh.at(n);
        auto hT = T.cx().homology_at(n);
        out.shukla[n] = hT.divisors;
        // pull each bar representative into the total complex
        std::vector<std::vector<Int>> images;
        for (const auto& rep : bar.coh.representatives.at(n)) {
            std::vector<Int> img(T.ambient(n), 0);
            const auto& tw = T.slot_words(n);
            for (size_t wi = 0; wi < tw.size(); ++wi) {
                const auto& W = tw[wi];
                if ((int)W.size() != n) continue;
                bool all0 = true;
                for (const auto& s : W)
                    if (s.q != 0) all0 = false;
                if (!all0) continue;
                // psi(W) = sum over bar words v of prod ebar[v_i+1][w_i+1] rep(v)
                std::vector<long> v(n, 0);
                std::function<void(int, Int)> recw = [&](int pos, Int coeff) {
                    if (coeff == 0) return;
                    if (pos == n) {
                        long vi = 0;
                        for (long t : v) vi = vi * BC.ebasis() + t;
                        for (long g = 0; g < gM; ++g) {
                            Int add = coeff * rep[vi * gM + g];
                            if (add != 0) img[wi * gM + g] += add;
                        }
                        return;
                    }
                    auto col = ebar.column(W[pos].word + 1);
                    for (long vv = 1; vv < R.dim(); ++vv) {
                        if (col[vv] == 0) continue;
                        v[pos] = vv - 1;
                        recw(pos + 1, coeff * col[vv]);
                    }
                };
                recw(0, Int(1));
            }
            for (auto& x : img) x = ground.reduce(x);
            images.push_back(std::move(img));
        }
        SparseMat Mx((long)hT.representatives.size(), (long)images.size());
        bool ok = true;
        for (size_t c = 0; c < images.size(); ++c) {
            auto coords = T.cx().class_in_basis(n, images[c], hT.representatives);
            if (!coords) {
                ok = false;
                break;
            }
            for (size_t r = 0; r < coords->size(); ++r)
                if ((*coords)[r] != 0) Mx.add((long)r, (long)c, (*coords)[r]);
        }
        Mx.compress();
        out.matrix[n] = Mx;
        // iso decision: same divisors and mutually reachable classes
        bool same = out.hochschild[n] == out.shukla[n];
        if (same && ok) {
            // surjectivity: every Shukla representative is in the image span
            // modulo boundaries
            for (size_t r = 0; r < hT.representatives.size() && same; ++r) {
                auto back = T.cx().class_in_basis(n, hT.representatives[r], images);
                if (!back) same = false;
            }
        } else {
            same = false;
        }
        out.iso[n] = same;
    }
    return out;
}

std::vector<Int> e_invariant(const CrossedExtension& X) {
    const BaseRing& K = X.ground;
    if (K.is_integers()) throw Error("e_invariant: ground must be Z/p^2");
    Int p2 = K.modulus();
    Int p = 0;
    mpz_sqrt(p.get_mpz_t(), p2.get_mpz_t());
    if (p * p != p2 || !BaseRing::is_prime(p)) throw Error("e_invariant: ground must be Z/p^2");
    if (!(X.R.base() == BaseRing::prime_field(p)))
        throw Error("e_invariant: A must be an F_p-algebra");

    FPModule m0 = X.xb.C0.carrier_over(K);
    const FPModule& m1 = X.xb.C1.carrier();
    std::vector<Int> target(X.xb.C0.dim());
    for (long i = 0; i < X.xb.C0.dim(); ++i) target[i] = K.reduce(p * X.xb.C0.unit()[i]);
    auto P = preimage(m1, m0, X.xb.delta, target);
    if (!P) throw Error("e_invariant: p*1 has no preimage (exactness violated)");
    std::vector<Int> e(m1.gens);
    for (long i = 0; i < m1.gens; ++i) e[i] = K.reduce(p * (*P)[i]);
    auto m = preimage(X.M.carrier(), m1, X.incl, e);
    if (!m) throw Error("e_invariant: p[P] does not lie in M");
    for (auto& x : *m) x = K.reduce(x);
    if (debug_checks()) {
        // well-definedness across preimage choices: perturb by a kernel element
        SparseMat ker = kernel_of_map(m1, m0, X.xb.delta);
        if (ker.cols() > 0) {
            auto P2 = *P;
            auto kcol = ker.column(0);
            for (long i = 0; i < m1.gens; ++i) P2[i] += kcol[i];
            std::vector<Int> e2(m1.gens);
            for (long i = 0; i < m1.gens; ++i) e2[i] = K.reduce(p * P2[i]);
            auto m2 = preimage(X.M.carrier(), m1, X.incl, e2);
            if (!m2 || !same_element(X.M.carrier(), *m, *m2))
                throw Error("e_invariant: value depends on the preimage choice");
        }
        // e lies in H^0(A, M)
        SparseMat adE(X.M.carrier().gens, 1);
        for (long r = 0; r < X.R.dim(); ++r) {
            auto lm = X.M.left(r).apply(*m);
            auto rm = X.M.right(r).apply(*m);
            std::vector<Int> diff(lm.size());
            for (size_t i = 0; i < lm.size(); ++i) diff[i] = lm[i] - rm[i];
            if (!is_zero_element(X.M.carrier(), diff))
                throw Error("e_invariant: value is not an invariant");
        }
        (void)adE;
    }
    return *m;
}

CanonicalClass canonical_class_sigma(const StructureAlgebra& A, long cap) {
    if (!A.base().is_field()) throw Error("canonical_class_sigma: A must be an F_p-algebra");
    Int p = A.base().modulus();
    long d = A.dim();
    Int sizeI = 1;
    for (long i = 0; i < d; ++i) sizeI *= p;
    if (sizeI > cap) throw BudgetExceeded("canonical_class_sigma: |A| exceeds the cap");
    long pl = (long)p.get_ui();
    long size = (long)sizeI.get_ui();
    BaseRing K = BaseRing::mod(p * p);

    // element enumeration: code 1..size-1 <-> nonzero vectors over F_p
    auto decode = [&](long code) {
        std::vector<Int> v(d);
        for (long i = 0; i < d; ++i) {
            v[i] = code % pl;
            code /= pl;
        }
        return v;
    };
    auto encode = [&](const std::vector<Int>& v) {
        long code = 0;
        for (long i = d - 1; i >= 0; --i) {
            Int r = A.base().reduce(v[i]);
            code = code * pl + (long)r.get_ui();
        }
        return code;
    };
    const long N = size - 1;  // generators [x], x != 0

    // C0 = Z/p^2[A]
    std::vector<std::string> names;
    for (long c = 1; c <= N; ++c) names.push_back("[" + std::to_string(c) + "]");
    std::vector<std::vector<std::vector<Int>>> mult(
        N, std::vector<std::vector<Int>>(N, std::vector<Int>(N, 0)));
    for (long a = 1; a <= N; ++a)
        for (long b = 1; b <= N; ++b) {
            long ab = encode(A.product(decode(a), decode(b)));
            if (ab != 0) mult[a - 1][b - 1][ab - 1] = 1;
        }
    std::vector<Int> unitC0(N, 0);
    unitC0[encode(A.unit()) - 1] = 1;
    StructureAlgebra C0(K, names, mult, unitC0);

    // eta : Z[A] -> A and R(A) = ker
    SparseMat eta(d, N);
    for (long c = 1; c <= N; ++c) {
        auto v = decode(c);
        for (long i = 0; i < d; ++i)
            if (v[i] != 0) eta.add(i, c - 1, v[i]);
    }
    SparseMat pI(d, d);
    for (long i = 0; i < d; ++i) pI.add(i, i, p);
    SparseMat Kk = kernel_lattice(eta.hcat(pI.scaled(Int(-1))));
    SparseMat Ktop(N, Kk.cols());
    for (const auto& e : Kk.entries())
        if (e.r < N) Ktop.add(e.r, e.c, e.v);
    Ktop.compress();
    SparseMat Vb = lattice_basis(Ktop);
    if (Vb.cols() != N) throw Error("canonical_class_sigma: R(A) rank mismatch");

    // Z[A] multiplication matrices and the C1 actions in the R(A) basis
    auto Lmat = [&](long c) {
        SparseMat L(N, N);
        for (long w = 1; w <= N; ++w) {
            long cw = encode(A.product(decode(c), decode(w)));
            if (cw != 0) L.add(cw - 1, w - 1, 1);
        }
        return L;
    };
    auto Rmat = [&](long c) {
        SparseMat R(N, N);
        for (long w = 1; w <= N; ++w) {
            long wc = encode(A.product(decode(w), decode(c)));
            if (wc != 0) R.add(wc - 1, w - 1, 1);
        }
        return R;
    };
    std::vector<SparseMat> leftC1, rightC1;
    for (long c = 1; c <= N; ++c) {
        auto co = solve_mat(Vb, Lmat(c).mul(Vb));
        auto co2 = solve_mat(Vb, Rmat(c).mul(Vb));
        if (!co || !co2) throw Error("canonical_class_sigma: R(A) is not an ideal");
        leftC1.push_back(co->reduced(K));
        rightC1.push_back(co2->reduced(K));
    }
    FPModule c1carrier = FPModule::free_module(K, N);
    Bimodule C1 = bimodule_over(C0, K, c1carrier, leftC1, rightC1);
    SparseMat delta = Vb.reduced(K);
    CrossedBimodule xb = validate_crossed(K, C0, C1, delta);

    // i(x) = sum_j p <j x, x> in R(A) coordinates
    auto bracket = [&](const std::vector<Int>& u, const std::vector<Int>& v) {
        std::vector<Int> out(N, 0);
        long cu = encode(u), cv = encode(v);
        std::vector<Int> w(d);
        for (long i = 0; i < d; ++i) w[i] = u[i] + v[i];
        long cw = encode(w);
        if (cu != 0) out[cu - 1] += 1;
        if (cv != 0) out[cv - 1] += 1;
        if (cw != 0) out[cw - 1] -= 1;
        return out;
    };
    SparseMat incl(N, d);
    for (long k = 0; k < d; ++k) {
        std::vector<Int> ek(d, 0);
        ek[k] = 1;
        std::vector<Int> s(N, 0);
        for (long j = 0; j < pl; ++j) {
            std::vector<Int> jek(d);
            for (long i = 0; i < d; ++i) jek[i] = A.base().reduce(Int(j) * ek[i]);
            auto br = bracket(jek, ek);
            for (long i = 0; i < N; ++i) s[i] += br[i];
        }
        auto coords = solve(Vb, s);
        if (!coords) throw Error("canonical_class_sigma: bracket sum escapes R(A)");
        for (long i = 0; i < N; ++i)
            if ((*coords)[i] != 0) incl.add(i, k, K.reduce(p * (*coords)[i]));
    }
    incl.compress();

    Bimodule M = regular_bimodule(A, K);
    SparseMat proj = eta.reduced(A.base());
    CrossedExtension X{K, A, M, xb, incl, proj};
    validate_crossed_extension(X);

    // integral view and the delta-extension witness S = Z[A]/p^2 R(A)
    BaseRing Z = BaseRing::integers();
    Bimodule Mz = regular_bimodule(A, Z);
    SparseMat p2rel(N, N);
    // relations p^2 * identity in the R(A) basis
    for (long i = 0; i < N; ++i) p2rel.add(i, i, p * p);
    FPModule c1z(Z, N, p2rel);
    std::vector<SparseMat> leftZ = leftC1, rightZ = rightC1;
    Bimodule C1z = bimodule_over(C0, Z, c1z, leftZ, rightZ);
    CrossedBimodule xbz = validate_crossed(Z, C0, C1z, delta);
    CrossedExtension Xz{Z, A, Mz, xbz, incl, proj};
    validate_crossed_extension(Xz);

    // S = Z[A] / p^2 R(A)
    SparseMat srel = Vb.scaled(p * p);
    FPModule scarrier(Z, N, srel);
    std::vector<std::vector<std::vector<Int>>> smult(
        N, std::vector<std::vector<Int>>(N, std::vector<Int>(N, 0)));
    for (long a = 1; a <= N; ++a)
        for (long b = 1; b <= N; ++b) {
            long ab = encode(A.product(decode(a), decode(b)));
            if (ab != 0) smult[a - 1][b - 1][ab - 1] = 1;
        }
    std::vector<Int> sunit(N, 0);
    sunit[encode(A.unit()) - 1] = 1;
    FPAlgebra S(Z, scarrier, smult, sunit);
    DeltaExtension witness{S, Vb, proj, SparseMat::identity(N)};
    validate_delta_extension(Xz, witness);

    return CanonicalClass{std::move(X), std::move(witness), std::move(Xz)};
}

BaseChange base_change_fp(long p, const FPModule& Mz, int n_max) {
    BaseRing Z = BaseRing::integers();
    BaseRing K = BaseRing::mod(Int(p) * Int(p));
    BaseRing Fp = BaseRing::prime_field(p);
    int bound = n_max + 1;

    auto kc = killing_cycles_resolution(Ground::plain(Z), Fp, {Int(1)}, bound + 1);
    StandardParams sp;
    sp.n = p;
    auto LG = standard_chain_algebra(StandardKind::ExteriorTensorDividedPower, sp, bound + 1);
    auto X = fp_view(LG, Z);
    auto Yalg = catalog::scalar_algebra(Fp);
    auto Y = fp_from_structure(Yalg, Z, bound + 1);
    FPChainMap pmap, gmap;
    pmap.comp.push_back(SparseMat::from_columns(1, {{Int(1)}}));
    gmap.comp.push_back(kc.augmentation);
    for (int n = 1; n <= bound + 1; ++n) {
        pmap.comp.push_back(SparseMat(0, X.comp[n].gens));
        gmap.comp.push_back(SparseMat(0, kc.resolution.srank(n)));
    }
    auto f = lift_quasi_free(kc.resolution, X, Y, pmap, gmap, bound);

    // totals on both sides
    auto R0K = catalog::scalar_algebra(K);
    FPModule MK(K, Mz.gens, Mz.relations.reduced(K));
    auto MbimK = trivial_bimodule(R0K, K, 0);  // placeholder actions; rebuilt below
    // rank-1 scalar bimodules with the given carrier
    std::vector<SparseMat> idm{SparseMat::identity(Mz.gens)};
    Bimodule Mside(R0K, K, MK, idm, idm);
    auto R0Z = catalog::scalar_algebra(Z);
    Bimodule MsideZ(R0Z, Z, Mz, idm, idm);
    (void)MbimK;

    Budget budget = Budget::global().with_degree(std::max(Budget::global().max_degree, bound));
    ChainTotalComplex TK(LG, Mside, bound, budget);
    ChainTotalComplex TZ(kc.resolution, MsideZ, bound, budget);

    BaseChange out;
    const long gM = Mz.gens;
    for (int n = 0; n <= n_max; ++n) {
        auto hK = TK.cx().homology_at(n);
        auto hZ = TZ.cx().homology_at(n);
        out.source[n] = hK.divisors;
        out.target[n] = hZ.divisors;
        // pull back each source representative along f
        std::vector<std::vector<Int>> images;
        for (const auto& rep : hK.representatives) {
            std::vector<Int> img(TZ.ambient(n), 0);
            const auto& tw = TZ.slot_words(n);
            for (size_t wi = 0; wi < tw.size(); ++wi) {
                const auto& W = tw[wi];
                // f per slot: column W[s].word of f.comp[q]; target side LG has
                // one word per degree, so the X-slot word index is 0
                Int coeff = 1;
                bool nonzero = true;
                std::vector<ChainTotalComplex::Slot> xw;
                for (const auto& s : W) {
                    auto col = f.comp[s.q].column(s.word);
                    // LG srank(q) == 1
                    Int c = col.empty() ? Int(0) : col[0];
                    c = K.reduce(c);
                    if (c == 0) {
                        nonzero = false;
                        break;
                    }
                    coeff *= c;
                    xw.push_back({s.q, 0});
                }
                if (!nonzero) continue;
                long xi = TK.word_index(n, xw);
                if (xi < 0) continue;
                for (long g = 0; g < gM; ++g) {
                    Int add = coeff * rep[xi * gM + g];
                    if (add != 0) img[wi * gM + g] += add;
                }
            }
            for (auto& x : img) x = Z.reduce(x);
            images.push_back(std::move(img));
        }
        SparseMat Mx((long)hZ.representatives.size(), (long)images.size());
        for (size_t c = 0; c < images.size(); ++c) {
            auto coords = TZ.cx().class_in_basis(n, images[c], hZ.representatives);
            if (!coords) throw Error("base_change_fp: image class not expressible");
            for (size_t r = 0; r < coords->size(); ++r)
                if ((*coords)[r] != 0) Mx.add((long)r, (long)c, (*coords)[r]);
        }
        Mx.compress();
        out.matrix[n] = Mx;
    }
    return out;
}

}  // namespace cohom
