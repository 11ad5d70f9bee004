#include "cohom/hochschild.hpp"

#include <cstdlib>

namespace cohom {

Budget Budget::global() {
    Budget b;
    if (const char* env = std::getenv("COCHAIN_BUDGET")) {
        long v = std::atol(env);
        if (v > 0) b.max_columns = v;
    }
    return b;
}

Cochain Cochain::operator-(const Cochain& o) const {
    if (degree != o.degree || r_dim != o.r_dim || m_gens != o.m_gens)
        throw Error("Cochain subtraction: shape mismatch");
    Cochain out = *this;
    for (const auto& [t, v] : o.coeffs) {
        auto cur = out.value(t);
        for (long i = 0; i < m_gens; ++i) cur[i] -= v[i];
        out.coeffs[t] = cur;
    }
    return out;
}

bool Cochain::is_zero_mod(const FPModule& carrier) const {
    for (const auto& [t, v] : coeffs)
        if (!is_zero_element(carrier, v)) return false;
    return true;
}

namespace {

std::vector<long> word_at(long idx, int len, long base) {
    std::vector<long> w(len);
    for (int k = len - 1; k >= 0; --k) {
        w[k] = idx % base;
        idx /= base;
    }
    return w;
}

long pow_l(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

Cochain bar_coboundary(const StructureAlgebra& R, const Bimodule& M, const Cochain& f) {
    const long d = R.dim();
    const long gM = M.carrier().gens;
    if (f.r_dim != d || f.m_gens != gM) throw Error("bar_coboundary: shape mismatch");
    Cochain out;
    out.degree = f.degree + 1;
    out.r_dim = d;
    out.m_gens = gM;
    const int n = f.degree;
    long total = pow_l(d, n + 1);
    for (long wi = 0; wi < total; ++wi) {
        auto w = word_at(wi, n + 1, d);
        std::vector<Int> acc(gM, 0);
        // r_1 f(r_2, ..)
        {
            std::vector<long> tail(w.begin() + 1, w.end());
            auto v = M.left(w[0]).apply(f.value(tail));
            for (long i = 0; i < gM; ++i) acc[i] += v[i];
        }
        // interior multiplications
        for (int i = 1; i <= n; ++i) {
            const auto& prod = R.mult(w[i - 1], w[i]);
            std::vector<long> t;
            t.reserve(n);
            for (int k = 0; k < i - 1; ++k) t.push_back(w[k]);
            t.push_back(0);  // placeholder
            for (int k = i + 1; k <= n; ++k) t.push_back(w[k]);
            for (long k = 0; k < d; ++k) {
                if (prod[k] == 0) continue;
                t[i - 1] = k;
                auto v = f.value(t);
                Int sign = (i % 2 == 0) ? 1 : -1;
                for (long q = 0; q < gM; ++q) acc[q] += sign * prod[k] * v[q];
            }
        }
        // f(r_1, .., r_n) r_{n+1}
        {
            std::vector<long> head(w.begin(), w.end() - 1);
            auto v = M.right(w[n]).apply(f.value(head));
            Int sign = ((n + 1) % 2 == 0) ? 1 : -1;
            for (long i = 0; i < gM; ++i) acc[i] += sign * v[i];
        }
        for (auto& x : acc) x = M.ground().reduce(x);
        out.set(w, std::move(acc));
    }
    return out;
}

Cochain cup_product(const StructureAlgebra& R, const Cochain& f, const Cochain& g) {
    if (f.m_gens != R.dim() || g.m_gens != R.dim()) throw CoefficientsNotAlgebra();
    if (f.r_dim != R.dim() || g.r_dim != R.dim()) throw Error("cup_product: shape mismatch");
    Cochain out;
    out.degree = f.degree + g.degree;
    out.r_dim = R.dim();
    out.m_gens = R.dim();
    for (const auto& [tf, vf] : f.coeffs)
        for (const auto& [tg, vg] : g.coeffs) {
            std::vector<long> t = tf;
            t.insert(t.end(), tg.begin(), tg.end());
            auto prod = R.product(vf, vg);
            auto cur = out.value(t);
            for (long i = 0; i < R.dim(); ++i) cur[i] = R.base().reduce(cur[i] + prod[i]);
            out.set(std::move(t), std::move(cur));
        }
    return out;
}

// ---- BarComplex -------------------------------------------------------------

BarComplex::BarComplex(BaseRing ground, const StructureAlgebra& R, const Bimodule& M, int top,
                       bool normalized, const Budget& budget)
    : ground_(ground), R_(R), M_(M), top_(top), normalized_(normalized),
      eb_(normalized ? R.dim() - 1 : R.dim()), gM_(M.carrier().gens),
      cx_(ground, 0, top) {
    if (!R.base().quotient_of(ground)) throw BaseMismatch("BarComplex: R base vs ground");
    if (M.ground() != ground) throw BaseMismatch("BarComplex: M ground mismatch");
    if (top > budget.max_degree + 1)
        throw BudgetExceeded("degree " + std::to_string(top) + " beyond budget " +
                             std::to_string(budget.max_degree));
    for (int n = 0; n <= top; ++n)
        if (ambient(n) > budget.max_columns)
            throw BudgetExceeded("cochain space of rank " + std::to_string(ambient(n)));
    build();
}

long BarComplex::words(int n) const { return n == 0 ? 1 : pow_l(eb_, n); }

long BarComplex::index(const std::vector<long>& word, long mgen) const {
    long wi = 0;
    for (long t : word) wi = wi * eb_ + t;
    return wi * gM_ + mgen;
}

void BarComplex::build() {
    const long d = R_.dim();
    // Effective basis data.
    if (normalized_) {
        const auto& am = R_.adapted_mult();
        emult_.assign(eb_, std::vector<std::vector<Int>>(eb_));
        for (long a = 0; a < eb_; ++a)
            for (long b = 0; b < eb_; ++b) emult_[a][b] = am[a + 1][b + 1];
        for (long a = 0; a < eb_; ++a) {
            act_left_.push_back(M_.left_adapted(R_, a + 1));
            act_right_.push_back(M_.right_adapted(R_, a + 1));
        }
    } else {
        emult_.assign(eb_, std::vector<std::vector<Int>>(eb_));
        for (long a = 0; a < eb_; ++a)
            for (long b = 0; b < eb_; ++b) emult_[a][b] = R_.mult(a, b);
        for (long a = 0; a < eb_; ++a) {
            act_left_.push_back(M_.left(a));
            act_right_.push_back(M_.right(a));
        }
    }

    // The cochain module in degree n is M^(number of words): the torsion of R
    // over the ground imposes no condition because c * M == 0 for any valid
    // bimodule (c * m = (c 1_R) m = 0).
    const FPModule& C = M_.carrier();
    for (int n = 0; n <= top_; ++n) {
        long N = ambient(n);
        cx_.set_ambient(n, N);
        const SparseMat& relM = C.relations;
        if (relM.cols() > 0) {
            SparseMat B(N, words(n) * relM.cols());
            for (long w = 0; w < words(n); ++w)
                for (const auto& e : relM.entries())
                    B.add(w * gM_ + e.r, w * relM.cols() + e.c, e.v);
            B.compress();
            cx_.set_rel(n, B);
        }
    }

    // Differentials.
    for (int n = 0; n < top_; ++n) {
        SparseMat D(ambient(n + 1), ambient(n));
        if (n == 0) {
            for (long j = 0; j < eb_; ++j) {
                SparseMat ad = act_left_[j] - act_right_[j];
                for (const auto& e : ad.entries()) D.add(j * gM_ + e.r, e.c, e.v);
            }
        } else {
            long outw = words(n + 1);
            for (long wi = 0; wi < outw; ++wi) {
                auto w = word_at(wi, n + 1, eb_);
                // first face: action of w[0] on the value of the tail
                {
                    std::vector<long> tail(w.begin() + 1, w.end());
                    long col0 = index(tail, 0);
                    for (const auto& e : act_left_[w[0]].entries())
                        D.add(wi * gM_ + e.r, col0 + e.c, e.v);
                }
                // interior faces
                for (int i = 1; i <= n; ++i) {
                    const auto& prod = emult_[w[i - 1]][w[i]];
                    std::vector<long> t;
                    t.reserve(n);
                    for (int k = 0; k < i - 1; ++k) t.push_back(w[k]);
                    t.push_back(0);
                    for (int k = i + 1; k <= n; ++k) t.push_back(w[k]);
                    Int sign = (i % 2 == 0) ? 1 : -1;
                    // normalized: coefficient on the adapted unit (index 0) is dropped
                    for (long k = 0; k < d; ++k) {
                        long ek = normalized_ ? k - 1 : k;
                        if (k >= (long)prod.size() || prod[k] == 0) continue;
                        if (normalized_ && k == 0) continue;
                        if (ek >= eb_) continue;
                        t[i - 1] = ek;
                        long colk = index(t, 0);
                        for (long q = 0; q < gM_; ++q)
                            D.add(wi * gM_ + q, colk + q, sign * prod[k]);
                    }
                }
                // last face
                {
                    std::vector<long> head(w.begin(), w.end() - 1);
                    long colh = index(head, 0);
                    Int sign = ((n + 1) % 2 == 0) ? 1 : -1;
                    for (const auto& e : act_right_[w[n]].entries())
                        D.add(wi * gM_ + e.r, colh + e.c, sign * e.v);
                }
            }
        }
        D.compress();
        cx_.set_diff(n, D);
    }
    if (debug_checks()) cx_.check_complex();
}

std::vector<Int> BarComplex::to_ambient(const Cochain& f) const {
    if (f.degree > top_) throw Error("to_ambient: degree beyond complex");
    const long d = R_.dim();
    std::vector<Int> v(ambient(f.degree), 0);
    if (!normalized_) {
        for (const auto& [t, val] : f.coeffs) {
            for (long g = 0; g < gM_; ++g) v[index(t, g)] = val[g];
        }
        return v;
    }
    // evaluate f on adapted basis words (unit-complement only)
    const auto& P = R_.adapted_basis().P;
    const int n = f.degree;
    for (long wi = 0; wi < words(n); ++wi) {
        auto w = word_at(wi, n, eb_);
        // expand the adapted tensor b'_{w0+1} (x) ... in original coordinates
        std::vector<Int> acc(gM_, 0);
        std::vector<long> orig(n, 0);
        std::function<void(int, Int)> rec = [&](int pos, Int coeff) {
            if (coeff == 0) return;
            if (pos == n) {
                auto val = f.value(orig);
                for (long g = 0; g < gM_; ++g) acc[g] += coeff * val[g];
                return;
            }
            auto col = P.column(w[pos] + 1);
            for (long j = 0; j < d; ++j) {
                if (col[j] == 0) continue;
                orig[pos] = j;
                rec(pos + 1, coeff * col[j]);
            }
        };
        rec(0, Int(1));
        for (long g = 0; g < gM_; ++g) v[wi * gM_ + g] = ground_.reduce(acc[g]);
    }
    return v;
}

Cochain BarComplex::to_cochain(int degree, const std::vector<Int>& v) const {
    const long d = R_.dim();
    Cochain f;
    f.degree = degree;
    f.r_dim = d;
    f.m_gens = gM_;
    if (!normalized_) {
        long total = pow_l(d, degree);
        for (long wi = 0; wi < total; ++wi) {
            auto w = word_at(wi, degree, d);
            std::vector<Int> val(gM_);
            for (long g = 0; g < gM_; ++g) val[g] = v[wi * gM_ + g];
            f.set(w, std::move(val));
        }
        return f;
    }
    // f(e_{j1}, .., e_{jn}) via the adapted expansion e_j = sum Pinv(i, j) b'_i,
    // where the unit component (i = 0) evaluates to zero.
    const auto& Pinv = R_.adapted_basis().Pinv;
    long total = pow_l(d, degree);
    for (long oi = 0; oi < total; ++oi) {
        auto orig = word_at(oi, degree, d);
        std::vector<Int> acc(gM_, 0);
        std::vector<long> w(degree, 0);
        std::function<void(int, Int)> rec = [&](int pos, Int coeff) {
            if (coeff == 0) return;
            if (pos == degree) {
                long wi = 0;
                for (long t : w) wi = wi * eb_ + t;
                for (long g = 0; g < gM_; ++g) acc[g] += coeff * v[wi * gM_ + g];
                return;
            }
            auto col = Pinv.column(orig[pos]);
            for (long i = 1; i < d; ++i) {
                if (col[i] == 0) continue;
                w[pos] = i - 1;
                rec(pos + 1, coeff * col[i]);
            }
        };
        rec(0, Int(1));
        for (auto& x : acc) x = ground_.reduce(x);
        f.set(orig, std::move(acc));
    }
    return f;
}

// ---- cohomology front ends --------------------------------------------------

HochschildResult hochschild_cohomology(const BaseRing& ground, const StructureAlgebra& R,
                                       const Bimodule& M, int n_max, const Budget& budget) {
    auto bc = std::make_shared<BarComplex>(ground, R, M, n_max + 1, true, budget);
    HochschildResult out;
    out.complex = bc;
    for (int n = 0; n <= n_max; ++n) {
        auto h = bc->cx().homology_at(n);
        out.coh.groups[n] = h.divisors;
        out.coh.representatives[n] = h.representatives;
    }
    return out;
}

ElementaryDivisors h0_direct(const StructureAlgebra& R, const Bimodule& M) {
    const long gM = M.carrier().gens;
    SparseMat sys(gM * R.dim(), gM);
    for (long i = 0; i < R.dim(); ++i) {
        SparseMat ad = M.left(i) - M.right(i);
        for (const auto& e : ad.entries()) sys.add(i * gM + e.r, e.c, e.v);
    }
    sys.compress();
    // kernel of sys as a subobject of M: {x : ad x == 0 mod relations}
    SparseMat rel = M.carrier().lifted_relations();
    SparseMat relBlocks(gM * R.dim(), rel.cols() * R.dim());
    for (long i = 0; i < R.dim(); ++i)
        for (const auto& e : rel.entries()) relBlocks.add(i * gM + e.r, i * rel.cols() + e.c, e.v);
    relBlocks.compress();
    SparseMat K = kernel_lattice(sys.hcat(relBlocks.scaled(Int(-1))));
    SparseMat Ktop(gM, K.cols());
    for (const auto& e : K.entries())
        if (e.r < gM) Ktop.add(e.r, e.c, e.v);
    Ktop.compress();
    SparseMat Z = lattice_basis(Ktop.hcat(rel));
    auto Cm = solve_mat(Z, rel);
    if (!Cm) throw Error("h0_direct: relations escape the kernel");
    SmithResult s = smith_normal_form(*Cm);
    return ElementaryDivisors::from_diagonal(s.divisors, Z.cols() - s.rank);
}

DerivationsReport derivations(const StructureAlgebra& R, const Bimodule& M) {
    const long d = R.dim();
    const long gM = M.carrier().gens;
    const long amb = d * gM;  // D(:, i) stacked by basis element
    SparseMat rel = M.carrier().lifted_relations();
    const long kM = rel.cols();

    // Equations: for all (i, j):
    //   sum_k mult[i][j][k] D_k - actL(i) D_j - actR(j) D_i == 0 mod rel
    SparseMat sys(d * d * gM, amb + d * d * kM);
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) {
            long row0 = (i * d + j) * gM;
            const auto& prod = R.mult(i, j);
            for (long k = 0; k < d; ++k)
                if (prod[k] != 0)
                    for (long q = 0; q < gM; ++q) sys.add(row0 + q, k * gM + q, prod[k]);
            for (const auto& e : M.left(i).entries()) sys.add(row0 + e.r, j * gM + e.c, -e.v);
            for (const auto& e : M.right(j).entries()) sys.add(row0 + e.r, i * gM + e.c, -e.v);
            for (const auto& e : rel.entries())
                sys.add(row0 + e.r, amb + (i * d + j) * kM + e.c, -e.v);
        }
    sys.compress();
    // Value constraint for torsion algebras over the ground: c * D_i == 0.
    SparseMat K = kernel_lattice(sys);
    SparseMat Ktop(amb, K.cols());
    for (const auto& e : K.entries())
        if (e.r < amb) Ktop.add(e.r, e.c, e.v);
    Ktop.compress();
    // relation-noise maps (always derivations mod rel)
    SparseMat noise(amb, d * kM);
    for (long i = 0; i < d; ++i)
        for (const auto& e : rel.entries()) noise.add(i * gM + e.r, i * kM + e.c, e.v);
    noise.compress();
    SparseMat L = lattice_basis(Ktop.hcat(noise));
    auto relC = solve_mat(L, noise);
    if (!relC) throw Error("derivations: relation maps escape the solution lattice");

    DerivationsReport rep;
    rep.der = FPModule(M.ground(), L.cols(), relC->reduced(M.ground()));
    rep.der_basis = L;
    rep.der_divisors = rep.der.invariants();

    // ad : M -> Der, ad_m(e_i) = e_i m - m e_i
    SparseMat ad(amb, gM);
    for (long i = 0; i < d; ++i) {
        SparseMat a = M.left(i) - M.right(i);
        for (const auto& e : a.entries()) ad.add(i * gM + e.r, e.c, e.v);
    }
    ad.compress();
    auto adC = solve_mat(L, ad);
    if (!adC) throw Error("derivations: inner derivations escape the lattice");
    FPModule inner_img = FPModule(M.ground(), L.cols(), relC->hcat(*adC).reduced(M.ground()));
    // divisors of the image of ad: span(adC) / span(relC) inside Der
    SparseMat img = lattice_basis(adC->hcat(rep.der.lifted_relations()));
    auto imgRel = solve_mat(img, rep.der.lifted_relations());
    if (!imgRel) throw Error("derivations: image presentation failed");
    {
        SmithResult s = smith_normal_form(*imgRel);
        rep.inner_divisors = ElementaryDivisors::from_diagonal(s.divisors, img.cols() - s.rank);
    }
    // H1 = Der / (inner + relations) = cokernel of adC in rep.der
    rep.h1 = inner_img.invariants();
    // H0 = kernel of ad in M
    rep.h0 = h0_direct(R, M);

    // exactness bookkeeping for 0 -> H0 -> M -> Der -> H1 -> 0:
    // |M| factors as |H0| * |im ad| and |Der| as |im ad| * |H1| when finite;
    // with free parts, compare ranks and torsion orders piecewise.
    auto counts = [](const ElementaryDivisors& e) {
        Int torsion = 1;
        long free_rank = 0;
        for (const auto& v : e.divisors) {
            if (v == 0)
                ++free_rank;
            else
                torsion *= v;
        }
        return std::pair<Int, long>(torsion, free_rank);
    };
    auto m_inv = M.carrier().invariants();
    auto [tM, fM] = counts(m_inv);
    auto [tH0, fH0] = counts(rep.h0);
    auto [tIm, fIm] = counts(rep.inner_divisors);
    auto [tDer, fDer] = counts(rep.der_divisors);
    auto [tH1, fH1] = counts(rep.h1);
    rep.four_term_exact = (tM == tH0 * tIm) && (fM == fH0 + fIm) && (tDer == tIm * tH1) &&
                          (fDer == fIm + fH1);
    return rep;
}

DimensionShiftResult dimension_shift(const BaseRing& ground, const StructureAlgebra& R,
                                     const Bimodule& M, int n_max, const Budget& budget) {
    InducedBimodule ind = induced_bimodule(R, M);
    const FPModule& H = ind.hom_carrier;
    if (!is_injective_map(M.carrier(), H, ind.embedding))
        throw Error("dimension_shift: mu is not injective");
    auto retr = retraction_of(M.carrier(), H, ind.embedding);

    // N = coker(mu) with the induced actions.
    FPModule ncarrier(ground, H.gens, H.relations.hcat(ind.embedding).reduced(ground));
    std::vector<SparseMat> left, right;
    for (long i = 0; i < R.dim(); ++i) {
        left.push_back(ind.module.left(i));
        right.push_back(ind.module.right(i));
    }
    Bimodule N = bimodule_over(R, ground, ncarrier, std::move(left), std::move(right));

    DimensionShiftResult out{std::move(N), ind.embedding, retr.has_value(), {}, {}, true};
    auto hm = hochschild_cohomology(ground, R, M, n_max, budget);
    auto hn = hochschild_cohomology(ground, R, out.shifted, n_max > 0 ? n_max - 1 : 0, budget);
    for (int i = 1; i + 1 <= n_max; ++i) {
        out.lhs[i] = hm.coh.at(i + 1);
        out.rhs[i] = hn.coh.at(i);
        if (out.lhs[i] != out.rhs[i]) out.agree = false;
    }
    return out;
}

bool is_coboundary(const BaseRing& ground, const StructureAlgebra& R, const Bimodule& M,
                   const Cochain& f) {
    return coboundary_witness(ground, R, M, f).has_value();
}

std::optional<Cochain> coboundary_witness(const BaseRing& ground, const StructureAlgebra& R,
                                          const Bimodule& M, const Cochain& f) {
    Budget b = Budget::global();
    b.max_degree = std::max(b.max_degree, f.degree + 1);
    BarComplex bc(ground, R, M, f.degree + 1, false, b);
    auto v = bc.to_ambient(f);
    auto u = bc.cx().coboundary_preimage(f.degree, v);
    if (!u) return std::nullopt;
    return bc.to_cochain(f.degree - 1, *u);
}

}  // namespace cohom
