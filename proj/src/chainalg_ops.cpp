#include "cohom/chainalg.hpp"

#include <functional>

namespace cohom {

// ---- FPChainAlgebra ------------------------------------------------------------

std::vector<Int> FPChainAlgebra::product(int d1, const std::vector<Int>& x, int d2,
                                         const std::vector<Int>& y) const {
    long out_g = d1 + d2 <= top ? comp[d1 + d2].gens : 0;
    std::vector<Int> out(out_g, 0);
    if (d1 + d2 > top) return out;
    auto it = mult.find({d1, d2});
    if (it == mult.end()) return out;
    for (long i = 0; i < (long)x.size(); ++i) {
        if (x[i] == 0) continue;
        for (long j = 0; j < (long)y.size(); ++j) {
            if (y[j] == 0) continue;
            const auto& v = it->second[i][j];
            for (long k = 0; k < out_g; ++k)
                if (v[k] != 0) out[k] += x[i] * y[j] * v[k];
        }
    }
    for (auto& t : out) t = ground.reduce(t);
    return out;
}

ElementaryDivisors FPChainAlgebra::homology(int n) const {
    if (n < 0 || n > top) return {};
    int lo = std::max(0, n - 1), hi = std::min(top, n + 1);
    SubquotientComplex C(ground, -hi, -lo);
    for (int k = lo; k <= hi; ++k) {
        C.set_ambient(-k, comp[k].gens);
        if (comp[k].relations.cols()) C.set_rel(-k, comp[k].relations);
    }
    for (int k = lo + 1; k <= hi; ++k)
        if (comp[k].gens > 0 && comp[k - 1].gens > 0) C.set_diff(-k, diff[k]);
    return C.homology_at(-n).divisors;
}

void FPChainAlgebra::validate() const {
    for (int n = 2; n <= top; ++n) {
        if (comp[n].gens == 0 || comp[n - 2].gens == 0) continue;
        SparseMat dd = diff[n - 1].mul(diff[n]);
        if (!matrix_zero_mod(dd, comp[n - 2])) throw NotAComplex("FP chain algebra d o d != 0");
    }
    // Leibniz on generators
    for (int d1 = 0; d1 <= top; ++d1)
        for (int d2 = 0; d1 + d2 <= top; ++d2) {
            if (comp[d1].gens == 0 || comp[d2].gens == 0) continue;
            for (long i = 0; i < comp[d1].gens; ++i)
                for (long j = 0; j < comp[d2].gens; ++j) {
                    std::vector<Int> ei(comp[d1].gens, 0), ej(comp[d2].gens, 0);
                    ei[i] = 1;
                    ej[j] = 1;
                    auto prod = product(d1, ei, d2, ej);
                    std::vector<Int> lhs(d1 + d2 >= 1 && d1 + d2 <= top
                                             ? comp[d1 + d2 - 1].gens
                                             : 0,
                                         0);
                    if (d1 + d2 >= 1 && d1 + d2 <= top) lhs = diff[d1 + d2].apply(prod);
                    std::vector<Int> rhs(lhs.size(), 0);
                    if (d1 >= 1) {
                        auto t = product(d1 - 1, diff[d1].column(i), d2, ej);
                        for (size_t k = 0; k < t.size(); ++k) rhs[k] += t[k];
                    }
                    if (d2 >= 1) {
                        auto t = product(d1, ei, d2 - 1, diff[d2].column(j));
                        Int sign = (d1 % 2 == 0) ? 1 : -1;
                        for (size_t k = 0; k < t.size(); ++k) rhs[k] += sign * t[k];
                    }
                    if (d1 + d2 >= 1 && d1 + d2 <= top) {
                        if (!same_element(comp[d1 + d2 - 1], lhs, rhs))
                            throw Error("FP chain algebra: Leibniz fails");
                    }
                }
        }
}

FPChainAlgebra fp_from_structure(const StructureAlgebra& A, const BaseRing& ground, int top) {
    FPChainAlgebra out;
    out.ground = ground;
    out.top = top;
    out.comp.push_back(A.carrier_over(ground));
    for (int n = 1; n <= top; ++n) out.comp.push_back(FPModule::zero(ground));
    std::vector<std::vector<std::vector<Int>>> t(A.dim(), std::vector<std::vector<Int>>(A.dim()));
    for (long i = 0; i < A.dim(); ++i)
        for (long j = 0; j < A.dim(); ++j) t[i][j] = A.mult(i, j);
    out.mult[{0, 0}] = std::move(t);
    out.diff.assign(top + 1, SparseMat(0, 0));
    for (int n = 1; n <= top; ++n) out.diff[n] = SparseMat(out.comp[n - 1].gens, 0);
    out.unit = A.unit();
    return out;
}

FPChainAlgebra fp_view(const ChainAlgebra& A, const BaseRing& ground) {
    if (A.ground().two_level()) throw StrategyUnavailable("fp_view: plain grounds only");
    const BaseRing& inner = A.ground().scalar;
    if (!inner.quotient_of(ground)) throw BaseMismatch("fp_view: incompatible grounds");
    FPChainAlgebra out;
    out.ground = ground;
    out.top = A.bound();
    for (int n = 0; n <= A.bound(); ++n) {
        long g = A.srank(n);
        if (inner == ground) {
            out.comp.push_back(FPModule::free_module(ground, g));
        } else {
            SparseMat rel(g, g);
            for (long i = 0; i < g; ++i) rel.add(i, i, inner.modulus());
            out.comp.push_back(FPModule(ground, g, rel));
        }
    }
    for (int d1 = 0; d1 <= A.bound(); ++d1)
        for (int d2 = 0; d1 + d2 <= A.bound(); ++d2) {
            if (A.srank(d1) == 0 || A.srank(d2) == 0) continue;
            std::vector<std::vector<std::vector<Int>>> t(
                A.srank(d1), std::vector<std::vector<Int>>(A.srank(d2)));
            for (long i = 0; i < A.srank(d1); ++i)
                for (long j = 0; j < A.srank(d2); ++j) t[i][j] = A.basis_product(d1, i, d2, j);
            out.mult[{d1, d2}] = std::move(t);
        }
    out.diff.assign(A.bound() + 1, SparseMat(0, 0));
    for (int n = 1; n <= A.bound(); ++n) out.diff[n] = A.diff(n);
    out.unit = A.unit();
    return out;
}

FPChainAlgebra fp_from_abelian_extension(const AbelianExtension& X) {
    FPChainAlgebra out;
    out.ground = X.ground;
    out.top = 1;
    out.comp.push_back(X.E.carrier());
    out.comp.push_back(X.M.carrier());
    const long gE = X.E.gens(), gM = X.M.carrier().gens;
    std::vector<std::vector<std::vector<Int>>> t00(gE, std::vector<std::vector<Int>>(gE));
    for (long i = 0; i < gE; ++i)
        for (long j = 0; j < gE; ++j) t00[i][j] = X.E.mult(i, j);
    out.mult[{0, 0}] = std::move(t00);
    // E acting on M = incl^{-1}(e * incl(m))
    std::vector<std::vector<std::vector<Int>>> t01(gE, std::vector<std::vector<Int>>(gM)),
        t10(gM, std::vector<std::vector<Int>>(gE));
    for (long i = 0; i < gE; ++i)
        for (long m = 0; m < gM; ++m) {
            std::vector<Int> ei(gE, 0);
            ei[i] = 1;
            auto lm = preimage(X.M.carrier(), X.E.carrier(), X.incl,
                               X.E.product(ei, X.incl.column(m)));
            auto rm = preimage(X.M.carrier(), X.E.carrier(), X.incl,
                               X.E.product(X.incl.column(m), ei));
            if (!lm || !rm) throw Error("fp_from_abelian_extension: action escapes M");
            t01[i][m] = *lm;
            t10[m][i] = *rm;
        }
    out.mult[{0, 1}] = std::move(t01);
    out.mult[{1, 0}] = std::move(t10);
    out.diff.assign(2, SparseMat(0, 0));
    out.diff[1] = X.incl;
    out.unit = X.E.unit();
    return out;
}

FPChainAlgebra fp_from_crossed_extension(const CrossedExtension& X) {
    FPChainAlgebra out;
    out.ground = X.ground;
    out.top = 2;
    FPModule m0 = X.xb.C0.carrier_over(X.ground);
    out.comp.push_back(m0);
    out.comp.push_back(X.xb.C1.carrier());
    out.comp.push_back(X.M.carrier());
    const long g0 = X.xb.C0.dim(), g1 = X.xb.C1.carrier().gens, gM = X.M.carrier().gens;
    std::vector<std::vector<std::vector<Int>>> t00(g0, std::vector<std::vector<Int>>(g0));
    for (long i = 0; i < g0; ++i)
        for (long j = 0; j < g0; ++j) t00[i][j] = X.xb.C0.mult(i, j);
    out.mult[{0, 0}] = std::move(t00);
    std::vector<std::vector<std::vector<Int>>> t01(g0, std::vector<std::vector<Int>>(g1)),
        t10(g1, std::vector<std::vector<Int>>(g0));
    for (long i = 0; i < g0; ++i)
        for (long c = 0; c < g1; ++c) {
            t01[i][c] = X.xb.C1.left(i).column(c);
            t10[c][i] = X.xb.C1.right(i).column(c);
        }
    out.mult[{0, 1}] = std::move(t01);
    out.mult[{1, 0}] = std::move(t10);
    // C0 acts on M = C2 through proj
    FPModule mR = X.R.carrier_over(X.ground);
    std::vector<std::vector<std::vector<Int>>> t02(g0, std::vector<std::vector<Int>>(gM)),
        t20(gM, std::vector<std::vector<Int>>(g0));
    for (long i = 0; i < g0; ++i) {
        std::vector<Int> ei(g0, 0);
        ei[i] = 1;
        auto r = X.proj.apply(ei);
        SparseMat L = X.M.left_by(r), Rrt = X.M.right_by(r);
        for (long m = 0; m < gM; ++m) {
            t02[i][m] = L.column(m);
            t20[m][i] = Rrt.column(m);
        }
    }
    out.mult[{0, 2}] = std::move(t02);
    out.mult[{2, 0}] = std::move(t20);
    // C1 (x) C1 -> C2 is the zero pairing
    out.mult[{1, 1}] = std::vector<std::vector<std::vector<Int>>>(
        g1, std::vector<std::vector<Int>>(g1, std::vector<Int>(gM, 0)));
    out.diff.assign(3, SparseMat(0, 0));
    out.diff[1] = X.xb.delta;
    out.diff[2] = X.incl;
    std::vector<Int> unit(g0, 0);
    for (long i = 0; i < g0; ++i) unit[i] = X.xb.C0.unit()[i];
    out.unit = unit;
    return out;
}

// ---- acyclic fibrations and lifting ----------------------------------------------

void check_acyclic_fibration(const FPChainAlgebra& X, const FPChainAlgebra& Y,
                             const FPChainMap& p, int through_degree) {
    for (int n = 0; n <= through_degree && n <= std::min(X.top, Y.top); ++n) {
        if (Y.comp[n].gens == 0) continue;
        if (!is_surjective_map(X.comp[n], Y.comp[n], p.comp[n]))
            throw NotAcyclicFibration("p not surjective in degree " + std::to_string(n));
    }
    // kernel complex is acyclic through the requested degree
    int top = std::min(X.top, Y.top);
    std::vector<SparseMat> kb;  // kernel lattice bases per degree
    for (int n = 0; n <= top; ++n)
        kb.push_back(kernel_of_map(X.comp[n], Y.comp[n], p.comp[n]));
    for (int n = 0; n + 1 <= std::min(top, through_degree); ++n) {
        int klo = std::max(0, n - 1), khi = n + 1;
        SubquotientComplex C(X.ground, -khi, -klo);
        for (int k = klo; k <= khi; ++k) {
            C.set_ambient(-k, X.comp[k].gens);
            if (X.comp[k].relations.cols()) C.set_rel(-k, X.comp[k].relations);
            if (k >= n) C.set_sub(-k, kb[k]);
        }
        for (int k = klo + 1; k <= khi; ++k) C.set_diff(-k, X.diff[k]);
        auto h = C.homology_at(-n);
        if (!h.divisors.is_zero())
            throw NotAcyclicFibration("kernel homology nonzero in degree " + std::to_string(n));
    }
}

FPChainMap lift_quasi_free(const ChainAlgebra& A, const FPChainAlgebra& X,
                           const FPChainAlgebra& Y, const FPChainMap& p, const FPChainMap& g,
                           int through_degree) {
    if (!A.quasi_free()) throw NotQuasiFree();
    if (A.ground().two_level()) throw StrategyUnavailable("lift_quasi_free: plain grounds only");
    check_acyclic_fibration(X, Y, p, through_degree);

    const auto& gens = A.generators();
    // generator order: ascending degree, stable
    std::vector<size_t> order(gens.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return gens[a].degree < gens[b].degree; });

    std::vector<std::vector<Int>> fgen(gens.size());
    std::vector<char> lifted(gens.size(), 0);
    // evaluate f on a word via products in X
    std::function<std::vector<Int>(int, const std::vector<long>&)> feval =
        [&](int degree, const std::vector<long>& w) -> std::vector<Int> {
        if (w.empty()) return X.unit;
        std::vector<Int> acc = fgen[w[0]];
        int accdeg = gens[w[0]].degree;
        for (size_t t = 1; t < w.size(); ++t) {
            acc = X.product(accdeg, acc, gens[w[t]].degree, fgen[w[t]]);
            accdeg += gens[w[t]].degree;
        }
        if (accdeg != degree) throw Error("lift: degree bookkeeping failed");
        return acc;
    };

    for (size_t oi : order) {
        int k = gens[oi].degree;
        if (k > through_degree) continue;
        // g(gen): the generator is a single-letter word of degree k
        const auto& wk = A.words(k);
        long widx = -1;
        for (size_t i = 0; i < wk.size(); ++i)
            if (wk[i] == std::vector<long>{(long)oi}) widx = (long)i;
        if (widx < 0) throw Error("lift: generator word missing");
        std::vector<Int> gval = g.comp[k].column(widx);
        if (k == 0) {
            auto v = preimage(X.comp[0], Y.comp[0], p.comp[0], gval);
            if (!v) throw LiftFailure("no preimage in degree 0");
            fgen[oi] = *v;
            lifted[oi] = 1;
            continue;
        }
        // z = f(d gen)
        const auto& dg = A.generator_diff()[oi];
        std::vector<Int> z(X.comp[k - 1].gens, 0);
        const auto& wlow = A.words(k - 1);
        for (size_t wi = 0; wi < wlow.size(); ++wi) {
            if (dg.empty()) break;
            const Int& c = dg[wi];
            if (c == 0) continue;
            auto fv = feval(k - 1, wlow[wi]);
            for (size_t t = 0; t < fv.size(); ++t) z[t] += c * fv[t];
        }
        // solve d v == z (mod rel X_{k-1}) and p v == gval (mod rel Y_k)
        SparseMat lhs = X.diff[k].vcat(p.comp[k]);
        SparseMat slack = X.comp[k - 1].lifted_relations().dsum(Y.comp[k].lifted_relations());
        SparseMat sys = lhs.hcat(slack.scaled(Int(-1)));
        std::vector<Int> rhs = z;
        rhs.insert(rhs.end(), gval.begin(), gval.end());
        auto sol = solve(sys, rhs);
        if (!sol) throw LiftFailure("no lift value for generator of degree " + std::to_string(k));
        sol->resize(X.comp[k].gens);
        fgen[oi] = *sol;
        lifted[oi] = 1;
    }

    FPChainMap f;
    for (int n = 0; n <= std::min<int>(through_degree, A.bound()); ++n) {
        const auto& wn = A.words(n);
        SparseMat F(X.comp[n].gens, (long)wn.size());
        for (size_t wi = 0; wi < wn.size(); ++wi) {
            for (long gi : wn[wi])
                if (!lifted[gi]) throw LiftFailure("word uses an unlifted generator");
            auto v = feval(n, wn[wi]);
            for (long r = 0; r < (long)v.size(); ++r)
                if (v[r] != 0) F.add(r, (long)wi, v[r]);
        }
        F.compress();
        f.comp.push_back(F.reduced(X.ground));
    }
    if (debug_checks()) {
        // chain map and p o f == g
        for (int n = 1; n < (int)f.comp.size(); ++n) {
            SparseMat lhs = X.diff[n].mul(f.comp[n]);
            SparseMat rhs = f.comp[n - 1].mul(A.diff(n));
            if (!matrices_congruent(lhs, rhs, X.comp[n - 1]))
                throw LiftFailure("lift is not a chain map");
        }
        for (int n = 0; n < (int)f.comp.size(); ++n) {
            if (!matrices_congruent(p.comp[n].mul(f.comp[n]), g.comp[n], Y.comp[n]))
                throw LiftFailure("p o f != g");
        }
    }
    return f;
}

// ---- Der complex ------------------------------------------------------------------

DerComplex der_complex(const ChainAlgebra& A, const DerCoefficients& M, int top) {
    if (!A.quasi_free()) throw NotQuasiFree();
    const auto& gens = A.generators();
    bool has0 = false, haspos = false;
    for (const auto& g : gens) (g.degree == 0 ? has0 : haspos) = true;
    if (has0 && haspos)
        throw StrategyUnavailable(
            "der_complex: mixed degree-0 and positive generators not supported");
    const long e = A.ground().kdim();
    const long gM = M.carrier.gens;
    if (e > 1 && (long)M.kaction.size() != e)
        throw Error("der_complex: K-action matrices required for two-level grounds");

    // generators per degree, in generator order
    std::map<int, std::vector<long>> by_degree;
    for (size_t i = 0; i < gens.size(); ++i) by_degree[gens[i].degree].push_back((long)i);
    DerComplex out{SubquotientComplex(A.ground().scalar, 0, top), {}};
    for (int n = 0; n <= top; ++n) {
        long cnt = by_degree.count(n) ? (long)by_degree[n].size() : 0;
        out.gens_per_degree.push_back(cnt);
        out.cx.set_ambient(n, cnt * gM);
        if (cnt > 0 && M.carrier.relations.cols() > 0) {
            SparseMat B(cnt * gM, cnt * M.carrier.relations.cols());
            for (long w = 0; w < cnt; ++w)
                for (const auto& en : M.carrier.relations.entries())
                    B.add(w * gM + en.r, w * M.carrier.relations.cols() + en.c, en.v);
            B.compress();
            out.cx.set_rel(n, B);
        }
    }
    // differential: (delta f)(g) = f(d g), single-letter words only (checked)
    for (int n = 0; n < top; ++n) {
        long cn = out.gens_per_degree[n], cn1 = out.gens_per_degree[n + 1];
        SparseMat D(cn1 * gM, cn * gM);
        if (cn > 0 && cn1 > 0) {
            const auto& up = by_degree[n + 1];
            const auto& here = by_degree[n];
            const auto& wlow = A.words(n);
            for (size_t ui = 0; ui < up.size(); ++ui) {
                const auto& dg = A.generator_diff()[up[ui]];
                if (dg.empty()) continue;
                for (size_t wi = 0; wi < wlow.size(); ++wi) {
                    const auto& w = wlow[wi];
                    bool single = (w.size() == 1);
                    if (!single) {
                        // f(uv) = 0 when both factors have positive degree; a
                        // degree-0 letter would need the H_0-action instead.
                        bool has_zero_letter = false;
                        for (long gi : w)
                            if (gens[gi].degree == 0) has_zero_letter = true;
                        if (!has_zero_letter) continue;
                    }
                    for (long k = 0; k < e; ++k) {
                        const Int& c = dg[(long)wi * e + k];
                        if (c == 0) continue;
                        if (!single)
                            throw StrategyUnavailable(
                                "der_complex: differential hits a degree-0 letter");
                        long hi = -1;
                        for (size_t h = 0; h < here.size(); ++h)
                            if (here[h] == w[0]) hi = (long)h;
                        if (hi < 0) throw Error("der_complex: generator bookkeeping");
                        if (e == 1) {
                            for (long q = 0; q < gM; ++q)
                                D.add((long)ui * gM + q, hi * gM + q, c);
                        } else {
                            for (const auto& en : M.kaction[k].entries())
                                D.add((long)ui * gM + en.r, hi * gM + en.c, c * en.v);
                        }
                    }
                }
            }
        }
        D.compress();
        out.cx.set_diff(n, D);
    }
    if (debug_checks()) out.cx.check_complex();
    return out;
}

// ---- truncation ---------------------------------------------------------------------

FPChainAlgebra truncate(const ChainAlgebra& X, int m) {
    if (X.ground().two_level()) throw StrategyUnavailable("truncate: plain grounds only");
    if (X.bound() < m + 1)
        throw InsufficientDegreeBound("truncate needs the chain algebra through degree m+1");
    FPChainAlgebra out;
    out.ground = X.ground().scalar;
    out.top = m;
    for (int n = 0; n < m; ++n) out.comp.push_back(FPModule::free_module(out.ground, X.srank(n)));
    out.comp.push_back(FPModule(out.ground, X.srank(m), X.diff(m + 1)));
    for (int d1 = 0; d1 <= m; ++d1)
        for (int d2 = 0; d1 + d2 <= m; ++d2) {
            if (X.srank(d1) == 0 || X.srank(d2) == 0) continue;
            std::vector<std::vector<std::vector<Int>>> t(
                X.srank(d1), std::vector<std::vector<Int>>(X.srank(d2)));
            for (long i = 0; i < X.srank(d1); ++i)
                for (long j = 0; j < X.srank(d2); ++j) t[i][j] = X.basis_product(d1, i, d2, j);
            out.mult[{d1, d2}] = std::move(t);
        }
    out.diff.assign(m + 1, SparseMat(0, 0));
    for (int n = 1; n <= m; ++n) out.diff[n] = X.diff(n);
    out.unit = X.unit();
    return out;
}

CrossedBimodule truncate_to_crossed(const ChainAlgebra& X) {
    FPChainAlgebra t = truncate(X, 1);
    const StructureAlgebra& C0 = X.degree0();
    MinimizedModule mini = minimize(t.comp[1]);
    std::vector<SparseMat> left, right;
    for (long i = 0; i < C0.dim(); ++i) {
        SparseMat L(t.comp[1].gens, t.comp[1].gens), R(t.comp[1].gens, t.comp[1].gens);
        const auto& t01 = t.mult.at({0, 1});
        const auto& t10 = t.mult.at({1, 0});
        for (long c = 0; c < t.comp[1].gens; ++c) {
            const auto& lv = t01[i][c];
            const auto& rv = t10[c][i];
            for (long k = 0; k < t.comp[1].gens; ++k) {
                if (lv[k] != 0) L.add(k, c, lv[k]);
                if (rv[k] != 0) R.add(k, c, rv[k]);
            }
        }
        left.push_back(mini.to_min.mul(L).mul(mini.from_min).reduced(t.ground));
        right.push_back(mini.to_min.mul(R).mul(mini.from_min).reduced(t.ground));
    }
    Bimodule C1 = bimodule_over(C0, t.ground, mini.module, std::move(left), std::move(right));
    SparseMat delta = t.diff[1].mul(mini.from_min).reduced(t.ground);
    return validate_crossed(t.ground, C0, std::move(C1), delta);
}

// ---- killing cycles ------------------------------------------------------------------

KillingCyclesResult killing_cycles_resolution(const Ground& ground, const BaseRing& target,
                                              const std::vector<Int>& aug, int degree_bound) {
    const long e = ground.kdim();
    if ((long)aug.size() != e) throw Error("killing_cycles: augmentation length != kdim");

    // K-module span helper at the scalar level: multiples of v by K-basis
    auto kspan = [&](const std::vector<Int>& v, int degree, const ChainAlgebra& A) {
        std::vector<std::vector<Int>> cols;
        if (e == 1) {
            cols.push_back(v);
            return cols;
        }
        const auto& K = *ground.kalg;
        long wc = (long)v.size() / e;
        for (long kk = 0; kk < e; ++kk) {
            std::vector<Int> w((size_t)v.size(), 0);
            for (long word = 0; word < wc; ++word)
                for (long k = 0; k < e; ++k) {
                    if (v[word * e + k] == 0) continue;
                    const auto& prod = K.mult(kk, k);
                    for (long t = 0; t < e; ++t)
                        if (prod[t] != 0) w[word * e + t] += v[word * e + k] * prod[t];
                }
            for (auto& x : w) x = ground.scalar.reduce(x);
            cols.push_back(std::move(w));
        }
        (void)degree;
        (void)A;
        return cols;
    };

    std::vector<ChainAlgebra::Generator> gens;
    std::vector<std::vector<Int>> dgen;
    long fresh = 0;

    // degree-1 generators: K-module generators of ker(aug)
    {
        SparseMat augm(1, e);
        for (long k = 0; k < e; ++k) augm.add(0, k, aug[k]);
        // kernel of K -> target at the scalar level
        SparseMat lift = augm;
        if (!target.is_integers()) {
            SparseMat mod(1, 1);
            mod.add(0, 0, target.modulus());
            lift = augm.hcat(mod);
        }
        SparseMat K = kernel_lattice(lift);
        SparseMat Ktop(e, K.cols());
        for (const auto& en : K.entries())
            if (en.r < e) Ktop.add(en.r, en.c, en.v);
        Ktop.compress();
        SparseMat basis = lattice_basis(Ktop);
        // greedy K-generating set
        ChainAlgebra stub(ground, 0, gens, dgen);
        SparseMat span(e, 0);
        if (!ground.scalar.is_integers()) {
            SparseMat mI(e, e);
            for (long i = 0; i < e; ++i) mI.add(i, i, ground.scalar.modulus());
            span = mI;
        }
        for (long c = 0; c < basis.cols(); ++c) {
            auto v = basis.column(c);
            if (span.cols() > 0 && in_span(span, v)) continue;
            if (span.cols() == 0 && std::all_of(v.begin(), v.end(),
                                                [](const Int& x) { return x == 0; }))
                continue;
            gens.push_back({"x" + std::to_string(fresh++), 1});
            dgen.push_back(v);
            for (const auto& col : kspan(v, 0, stub))
                span = span.hcat(SparseMat::from_columns(e, {col}));
        }
    }

    // kill homology degree by degree
    for (int n = 1; n + 1 <= degree_bound; ++n) {
        ChainAlgebra A(ground, degree_bound, gens, dgen);
        long N = A.srank(n);
        if (N == 0) continue;
        // cycle lattice and boundary lattice at the scalar level
        SparseMat D = A.diff(n);
        SparseMat Z = D.cols() == 0 || D.rows() == 0
                          ? SparseMat::identity(N)
                          : kernel_lattice(!ground.scalar.is_integers()
                                               ? D.hcat([&] {
                                                     long r = A.srank(n - 1);
                                                     SparseMat mI(r, r);
                                                     for (long i = 0; i < r; ++i)
                                                         mI.add(i, i, ground.scalar.modulus());
                                                     return mI;
                                                 }())
                                           : D);
        if (!ground.scalar.is_integers() && D.cols() > 0 && D.rows() > 0) {
            // restore: kernel columns include slack; project to the first N rows
            SparseMat Ztop(N, Z.cols());
            for (const auto& en : Z.entries())
                if (en.r < N) Ztop.add(en.r, en.c, en.v);
            Ztop.compress();
            Z = lattice_basis(Ztop);
        }
        SparseMat B = A.srank(n + 1) > 0 ? A.diff(n + 1) : SparseMat(N, 0);
        SparseMat span = B;
        if (!ground.scalar.is_integers()) {
            SparseMat mI(N, N);
            for (long i = 0; i < N; ++i) mI.add(i, i, ground.scalar.modulus());
            span = span.cols() ? span.hcat(mI) : mI;
        }
        ChainAlgebra stub(ground, 0, {}, {});
        for (long c = 0; c < Z.cols(); ++c) {
            auto v = Z.column(c);
            if (span.cols() > 0 && in_span(span, v)) continue;
            gens.push_back({"x" + std::to_string(fresh++), n + 1});
            dgen.push_back(v);
            for (const auto& col : kspan(v, n, stub))
                span = span.hcat(SparseMat::from_columns(N, {col}));
        }
    }

    ChainAlgebra A(ground, degree_bound, gens, dgen);
    SparseMat augm(1, e);
    for (long k = 0; k < e; ++k) augm.add(0, k, aug[k]);
    return KillingCyclesResult{std::move(A), augm};
}

// ---- naive Hochschild total complex ----------------------------------------------

long ChainTotalComplex::ambient(int n) const {
    if (n < 0 || n > top_) return 0;
    return (long)words_[n].size() * gM_;
}

ChainTotalComplex::ChainTotalComplex(const ChainAlgebra& A, const Bimodule& M, int top,
                                     const Budget& budget)
    : top_(top), gM_(M.carrier().gens), cx_(A.ground().scalar, 0, top) {
    if (A.ground().two_level())
        throw StrategyUnavailable("chain total complex: plain grounds only");
    if (top > budget.max_degree + 1) throw BudgetExceeded("total complex degree budget");
    build(A, M);
    for (int n = 0; n <= top_; ++n)
        if (ambient(n) > budget.max_columns) throw BudgetExceeded("total complex width");
}

void ChainTotalComplex::build(const ChainAlgebra& A, const Bimodule& M) {
    const StructureAlgebra& A0 = A.degree0();
    const long d0 = A0.dim();
    // effective bases: degree 0 = adapted unit complement; degree q = words
    ebasis_.assign(top_ + 1, 0);
    ebasis_[0] = d0 - 1;
    for (int q = 1; q <= top_; ++q) ebasis_[q] = A.word_count(q);
    // M must kill im(d_1) so that it is an H_0-bimodule
    if (A.bound() >= 1 && A.srank(1) > 0 && debug_checks()) {
        SparseMat d1 = A.diff(1);
        for (long c = 0; c < d1.cols(); ++c) {
            auto v = d1.column(c);
            if (!matrix_zero_mod(M.left_by(v), M.carrier()) ||
                !matrix_zero_mod(M.right_by(v), M.carrier()))
                throw Error("chain total complex: M does not factor through H_0");
        }
    }

    // adapted actions and degree-0 effective products
    std::vector<SparseMat> actL, actR;
    for (long i = 1; i < d0; ++i) {
        actL.push_back(M.left_adapted(A0, i));
        actR.push_back(M.right_adapted(A0, i));
    }
    const auto& am = A0.adapted_mult();
    const auto& P = A0.adapted_basis().P;
    const auto& Pinv = A0.adapted_basis().Pinv;

    // enumerate slot words per total degree
    words_.assign(top_ + 1, {});
    for (int n = 0; n <= top_; ++n) {
        // p slots, internal degree q, p + q = n
        std::vector<Slot> cur;
        std::function<void(int, int)> rec = [&](int slots_left, int q_left) {
            if (slots_left == 0) {
                if (q_left == 0) words_[n].push_back(cur);
                return;
            }
            for (int q = 0; q <= q_left; ++q) {
                if (ebasis_[q] == 0) continue;
                for (long w = 0; w < ebasis_[q]; ++w) {
                    cur.push_back({q, w});
                    rec(slots_left - 1, q_left - q);
                    cur.pop_back();
                }
            }
        };
        for (int p = 0; p <= n; ++p) {
            cur.clear();
            rec(p, n - p);
        }
    }
    std::vector<std::map<std::vector<long>, long>> index(top_ + 1);
    auto key = [](const std::vector<Slot>& w) {
        std::vector<long> k;
        for (const auto& s : w) {
            k.push_back(s.q);
            k.push_back(s.word);
        }
        return k;
    };
    for (int n = 0; n <= top_; ++n)
        for (size_t i = 0; i < words_[n].size(); ++i) index[n][key(words_[n][i])] = (long)i;

    for (int n = 0; n <= top_; ++n) {
        cx_.set_ambient(n, ambient(n));
        const SparseMat& relM = M.carrier().relations;
        if (relM.cols() > 0 && ambient(n) > 0) {
            SparseMat B(ambient(n), (long)words_[n].size() * relM.cols());
            for (long w = 0; w < (long)words_[n].size(); ++w)
                for (const auto& en : relM.entries())
                    B.add(w * gM_ + en.r, w * relM.cols() + en.c, en.v);
            B.compress();
            cx_.set_rel(n, B);
        }
    }

    // expand a degree-0 product (adapted indices, unit dropped) or a general
    // word product into effective coordinates of the target degree
    auto slot_product = [&](const Slot& s1, const Slot& s2) {
        // returns list of (Slot, coefficient) for s1 * s2
        std::vector<std::pair<Slot, Int>> out;
        int q = s1.q + s2.q;
        if (q == 0) {
            const auto& prod = am[s1.word + 1][s2.word + 1];
            for (long k = 1; k < d0; ++k)
                if (prod[k] != 0) out.push_back({{0, k - 1}, prod[k]});
            return out;
        }
        std::vector<Int> x, y;
        if (s1.q == 0) {
            x = P.column(s1.word + 1);
        } else {
            x.assign(A.srank(s1.q), 0);
            x[s1.word] = 1;
        }
        if (s2.q == 0) {
            y = P.column(s2.word + 1);
        } else {
            y.assign(A.srank(s2.q), 0);
            y[s2.word] = 1;
        }
        auto v = A.product(s1.q, x, s2.q, y);
        for (long k = 0; k < (long)v.size(); ++k)
            if (v[k] != 0) out.push_back({{q, k}, v[k]});
        return out;
    };

    for (int n = 0; n < top_; ++n) {
        SparseMat D(ambient(n + 1), ambient(n));
        for (long Wi = 0; Wi < (long)words_[n + 1].size(); ++Wi) {
            const auto& W = words_[n + 1][Wi];
            const int p = (int)W.size();
            // horizontal: cofaces from (p-1)-slot words
            if (p >= 1) {
                // d^0: first slot degree 0 acts on the value
                if (W[0].q == 0) {
                    std::vector<Slot> tail(W.begin() + 1, W.end());
                    auto it = index[n].find(key(tail));
                    if (it != index[n].end()) {
                        for (const auto& en : actL[W[0].word].entries())
                            D.add(Wi * gM_ + en.r, it->second * gM_ + en.c, en.v);
                    }
                }
                // interior faces
                for (int i = 1; i <= p - 1; ++i) {
                    Int sign = (i % 2 == 0) ? 1 : -1;
                    for (const auto& [slot, coeff] : slot_product(W[i - 1], W[i])) {
                        std::vector<Slot> t;
                        t.reserve(p - 1);
                        t.insert(t.end(), W.begin(), W.begin() + (i - 1));
                        t.push_back(slot);
                        t.insert(t.end(), W.begin() + i + 1, W.end());
                        auto it = index[n].find(key(t));
                        if (it == index[n].end()) continue;
                        for (long q = 0; q < gM_; ++q)
                            D.add(Wi * gM_ + q, it->second * gM_ + q, sign * coeff);
                    }
                }
                // d^p: last slot degree 0 acts on the right
                if (W[p - 1].q == 0) {
                    std::vector<Slot> head(W.begin(), W.end() - 1);
                    auto it = index[n].find(key(head));
                    if (it != index[n].end()) {
                        Int sign = (p % 2 == 0) ? 1 : -1;
                        for (const auto& en : actR[W[p - 1].word].entries())
                            D.add(Wi * gM_ + en.r, it->second * gM_ + en.c, sign * en.v);
                    }
                }
            }
            // vertical: (delta phi)(W) = eps(p) sum_i (-1)^{deg prefix}
            // phi(W with slot i replaced by the expansion of d(slot_i))
            {
                Int eps = (p % 2 == 0) ? 1 : -1;
                int deg_prefix = 0;
                for (int i = 0; i < p; ++i) {
                    int qi = W[i].q;
                    if (qi >= 1 && A.srank(qi) > 0 && A.srank(qi - 1) >= 0) {
                        auto col = A.diff(qi).column(W[i].word);  // degree qi-1 element
                        Int sign = eps * ((deg_prefix % 2 == 0) ? 1 : -1);
                        auto emit = [&](long eff_word, const Int& coeff) {
                            if (coeff == 0) return;
                            std::vector<Slot> src = W;
                            src[i] = {qi - 1, eff_word};
                            auto it = index[n].find(key(src));
                            if (it == index[n].end()) return;
                            for (long q = 0; q < gM_; ++q)
                                D.add(Wi * gM_ + q, it->second * gM_ + q, sign * coeff);
                        };
                        if (qi - 1 == 0) {
                            // project onto the adapted unit complement
                            auto ad = Pinv.apply(col);
                            for (long k = 1; k < d0; ++k) emit(k - 1, ad[k]);
                        } else {
                            for (long w = 0; w < (long)col.size(); ++w) emit(w, col[w]);
                        }
                    }
                    deg_prefix += W[i].q;
                }
            }
        }
        D.compress();
        cx_.set_diff(n, D);
    }
    if (debug_checks()) cx_.check_complex();
}

CohomologyResult chain_hochschild_total(const ChainAlgebra& A, const Bimodule& M, int n_max,
                                        const Budget& budget) {
    ChainTotalComplex T(A, M, n_max + 1, budget);
    CohomologyResult out;
    for (int n = 0; n <= n_max; ++n) {
        auto h = T.cx().homology_at(n);
        out.groups[n] = h.divisors;
        out.representatives[n] = h.representatives;
    }
    return out;
}

}  // namespace cohom
