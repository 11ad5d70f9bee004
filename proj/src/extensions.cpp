#include "cohom/extensions.hpp"

#include <random>

namespace cohom {

namespace {

std::vector<Int> add_vec(std::vector<Int> a, const std::vector<Int>& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}
std::vector<Int> sub_vec(std::vector<Int> a, const std::vector<Int>& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

// Linear congruence systems A X B == C (mod span Mod) in a matrix unknown X.
// vec(X) is column-major: X(i, j) at index j * rows(X) + i.
class CongruenceSystem {
public:
    CongruenceSystem(long rx, long cx) : rx_(rx), cx_(cx) {}

    void add_equation(const SparseMat& A, const SparseMat& B, const SparseMat& C,
                      const SparseMat& Mod) {
        eqs_.push_back({A, B, C, Mod});
    }

    struct Solution {
        SparseMat particular;       // rx x cx
        std::vector<SparseMat> homogeneous;  // basis of the X-block kernel
    };

    std::optional<Solution> solve_system() const {
        long nx = rx_ * cx_;
        long rows = 0, slack = 0;
        for (const auto& e : eqs_) {
            rows += e.A.rows() * e.B.cols();
            slack += e.Mod.cols() * e.B.cols();
        }
        SparseMat S(rows, nx + slack);
        std::vector<Int> rhs(rows, 0);
        long row0 = 0, slack0 = nx;
        for (const auto& e : eqs_) {
            long m = e.A.rows(), n = e.B.cols();
            // (A X B)(r, c) = sum_{i,j} A(r, i) X(i, j) B(j, c)
            for (const auto& a : e.A.entries())
                for (const auto& b : e.B.entries())
                    S.add(row0 + b.c * m + a.r, b.r * rx_ + a.c, a.v * b.v);
            // - Mod * Y_c per output column c
            for (long c = 0; c < n; ++c)
                for (const auto& mo : e.Mod.entries())
                    S.add(row0 + c * m + mo.r, slack0 + c * e.Mod.cols() + mo.c, -mo.v);
            for (const auto& ce : e.C.entries()) rhs[row0 + ce.c * m + ce.r] = ce.v;
            row0 += m * n;
            slack0 += e.Mod.cols() * n;
        }
        S.compress();
        auto sol = solve(S, rhs);
        if (!sol) return std::nullopt;
        Solution out;
        SparseMat X(rx_, cx_);
        for (long j = 0; j < cx_; ++j)
            for (long i = 0; i < rx_; ++i)
                if ((*sol)[j * rx_ + i] != 0) X.add(i, j, (*sol)[j * rx_ + i]);
        X.compress();
        out.particular = X;
        SparseMat K = kernel_lattice(S);
        for (long c = 0; c < K.cols(); ++c) {
            auto v = K.column(c);
            SparseMat H(rx_, cx_);
            bool nonzero = false;
            for (long j = 0; j < cx_; ++j)
                for (long i = 0; i < rx_; ++i)
                    if (v[j * rx_ + i] != 0) {
                        H.add(i, j, v[j * rx_ + i]);
                        nonzero = true;
                    }
            if (nonzero) {
                H.compress();
                out.homogeneous.push_back(std::move(H));
            }
        }
        return out;
    }

private:
    long rx_, cx_;
    struct Eq {
        SparseMat A, B, C, Mod;
    };
    std::vector<Eq> eqs_;
};

SparseMat zero_mat(long r, long c) { return SparseMat(r, c); }

}  // namespace

MinimizedModule minimize(const FPModule& M) {
    SmithResult s = smith_normal_form(M.lifted_relations());
    // New coordinates y = U x.  A generator survives unless its divisor is a
    // unit; a divisor equal to the base modulus is a vacuous relation (the
    // generator is free over Z/m).
    std::vector<long> keep;
    for (long i = 0; i < M.gens; ++i) {
        Int d = i < s.rank ? s.divisors[i] : Int(0);
        if (d != 1) keep.push_back(i);
    }
    long g = (long)keep.size();
    std::vector<std::vector<Int>> relcols;
    for (long k = 0; k < g; ++k) {
        long i = keep[k];
        Int d = i < s.rank ? s.divisors[i] : Int(0);
        if (d == 0) continue;
        if (!M.base.is_integers() && d == M.base.modulus()) continue;
        std::vector<Int> col(g, 0);
        col[k] = d;
        relcols.push_back(std::move(col));
    }
    SparseMat rel = SparseMat::from_columns(g, relcols);
    MinimizedModule out;
    out.module = FPModule(M.base, g, rel);
    // to_min: keep-rows of U; from_min: keep-columns of U^-1.
    auto Uinv = solve_mat(s.U, SparseMat::identity(M.gens));
    if (!Uinv) throw Error("minimize: transform not invertible");
    SparseMat to(g, M.gens), from(M.gens, g);
    for (const auto& e : s.U.entries()) {
        for (long k = 0; k < g; ++k)
            if (keep[k] == e.r) to.add(k, e.c, e.v);
    }
    for (const auto& e : Uinv->entries()) {
        for (long k = 0; k < g; ++k)
            if (keep[k] == e.c) from.add(e.r, k, e.v);
    }
    to.compress();
    from.compress();
    out.to_min = to.reduced(M.base);
    out.from_min = from.reduced(M.base);
    return out;
}

// ---- abelian extensions ------------------------------------------------------

void validate_abelian_extension(const AbelianExtension& X) {
    const FPModule& mE = X.E.carrier();
    const FPModule mM = X.M.carrier();
    FPModule mR = X.R.carrier_over(X.ground);
    if (!is_module_map(mM, mE, X.incl)) throw Error("abelian extension: incl not a module map");
    if (!is_module_map(mE, mR, X.proj)) throw Error("abelian extension: proj not a module map");
    if (!is_injective_map(mM, mE, X.incl)) throw Error("abelian extension: incl not injective");
    if (!is_surjective_map(mE, mR, X.proj)) throw Error("abelian extension: proj not surjective");
    // exactness at E: ker(proj) == im(incl)
    SparseMat K = kernel_of_map(mE, mR, X.proj);
    SparseMat I = lattice_basis(X.incl.hcat(mE.lifted_relations()));
    if (!solve_mat(I, K) || !solve_mat(K, I))
        throw Error("abelian extension: sequence not exact at E");
    // proj is a unital algebra map
    if (!same_element(mR, X.proj.apply(X.E.unit()), X.R.unit()))
        throw Error("abelian extension: proj not unital");
    for (long i = 0; i < mE.gens; ++i)
        for (long j = 0; j < mE.gens; ++j) {
            std::vector<Int> ei(mE.gens, 0), ej(mE.gens, 0);
            ei[i] = 1;
            ej[j] = 1;
            auto lhs = X.proj.apply(X.E.product(ei, ej));
            auto rhs = X.R.product(X.proj.apply(ei), X.proj.apply(ej));
            if (!same_element(mR, lhs, rhs))
                throw Error("abelian extension: proj not multiplicative");
        }
    // M * M == 0 in E
    for (long i = 0; i < mM.gens; ++i)
        for (long j = 0; j < mM.gens; ++j) {
            auto a = X.incl.column(i), b = X.incl.column(j);
            if (!is_zero_element(mE, X.E.product(a, b)))
                throw Error("abelian extension: M * M != 0 in E");
        }
    // induced bimodule structure matches the given one
    for (long r = 0; r < X.R.dim(); ++r) {
        std::vector<Int> er(X.R.dim(), 0);
        er[r] = 1;
        auto pre = preimage(mE, mR, X.proj, er);
        if (!pre) throw Error("abelian extension: missing preimage");
        for (long m = 0; m < mM.gens; ++m) {
            auto im = X.incl.column(m);
            auto lhs = X.E.product(*pre, im);
            auto rhs = X.incl.apply(X.M.left(r).column(m));
            if (!same_element(mE, lhs, rhs))
                throw Error("abelian extension: induced left action mismatch");
            auto lhs2 = X.E.product(im, *pre);
            auto rhs2 = X.incl.apply(X.M.right(r).column(m));
            if (!same_element(mE, lhs2, rhs2))
                throw Error("abelian extension: induced right action mismatch");
        }
    }
}

bool is_2cocycle(const StructureAlgebra& R, const Bimodule& M, const Cochain& f,
                 std::vector<long>* witness) {
    Cochain df = bar_coboundary(R, M, f);
    for (const auto& [t, v] : df.coeffs) {
        if (!is_zero_element(M.carrier(), v)) {
            if (witness) *witness = t;
            return false;
        }
    }
    return true;
}

Cochain normalize_2cocycle(const BaseRing& ground, const StructureAlgebra& R, const Bimodule& M,
                           const Cochain& f) {
    (void)ground;
    // h(r) := f(1, r); f - d(h) is normalized for any 2-cocycle f.
    const long d = R.dim();
    const long gM = M.carrier().gens;
    const auto& u = R.unit();
    Cochain h;
    h.degree = 1;
    h.r_dim = d;
    h.m_gens = gM;
    for (long r = 0; r < d; ++r) {
        std::vector<Int> acc(gM, 0);
        for (long i = 0; i < d; ++i) {
            if (u[i] == 0) continue;
            auto v = f.value({i, r});
            for (long g = 0; g < gM; ++g) acc[g] += u[i] * v[g];
        }
        h.set({r}, acc);
    }
    Cochain out = f - bar_coboundary(R, M, h);
    for (auto& [t, v] : out.coeffs)
        for (auto& x : v) x = M.ground().reduce(x);
    return out;
}

AbelianExtension semidirect_from_2cocycle(const BaseRing& ground, const StructureAlgebra& R,
                                          const Bimodule& M, const Cochain& fin) {
    std::vector<long> w;
    if (!is_2cocycle(R, M, fin, &w)) throw NotACocycle(w);
    Cochain f = normalize_2cocycle(ground, R, M, fin);

    const long gM = M.carrier().gens;
    const long dR = R.dim();
    FPModule mR = R.carrier_over(ground);
    const long g = gM + dR;
    SparseMat rel = M.carrier().relations.dsum(mR.relations);
    FPModule carrier(ground, g, rel);

    std::vector<std::vector<std::vector<Int>>> mult(
        g, std::vector<std::vector<Int>>(g, std::vector<Int>(g, 0)));
    for (long i = 0; i < g; ++i)
        for (long j = 0; j < g; ++j) {
            std::vector<Int> out(g, 0);
            bool iM = i < gM, jM = j < gM;
            if (iM && jM) {
                // m * n = 0
            } else if (iM && !jM) {
                auto v = M.right(j - gM).column(i);  // m e_s
                for (long k = 0; k < gM; ++k) out[k] = v[k];
            } else if (!iM && jM) {
                auto v = M.left(i - gM).column(j);
                for (long k = 0; k < gM; ++k) out[k] = v[k];
            } else {
                auto fv = f.value({i - gM, j - gM});
                for (long k = 0; k < gM; ++k) out[k] = fv[k];
                const auto& prod = R.mult(i - gM, j - gM);
                for (long k = 0; k < dR; ++k) out[gM + k] = prod[k];
            }
            for (auto& x : out) x = ground.reduce(x);
            mult[i][j] = out;
        }
    std::vector<Int> unit(g, 0);
    for (long k = 0; k < dR; ++k) unit[gM + k] = R.unit()[k];
    FPAlgebra E(ground, carrier, mult, unit);
    E.validate();

    SparseMat incl(g, gM);
    for (long i = 0; i < gM; ++i) incl.add(i, i, 1);
    SparseMat proj(dR, g);
    for (long k = 0; k < dR; ++k) proj.add(k, gM + k, 1);

    AbelianExtension X{ground, R, M, std::move(E), incl, proj};
    validate_abelian_extension(X);
    return X;
}

Cochain extension_to_2cocycle(const AbelianExtension& X) {
    const FPModule& mE = X.E.carrier();
    FPModule mR = X.R.carrier_over(X.ground);
    auto split = is_split_surjection(mE, mR, X.proj);
    if (!split.split) throw NoSplitting("extension admits no ground-linear section");
    const SparseMat& h = split.section;  // R -> E
    Cochain f;
    f.degree = 2;
    f.r_dim = X.R.dim();
    f.m_gens = X.M.carrier().gens;
    for (long r = 0; r < X.R.dim(); ++r)
        for (long s = 0; s < X.R.dim(); ++s) {
            auto hr = h.column(r), hs = h.column(s);
            auto prod = X.E.product(hr, hs);
            std::vector<Int> rs(X.R.dim(), 0);
            for (long k = 0; k < X.R.dim(); ++k) rs[k] = X.R.mult(r, s)[k];
            auto hrs = h.apply(rs);
            auto diff = sub_vec(prod, hrs);
            auto m = preimage(X.M.carrier(), mE, X.incl, diff);
            if (!m) throw Error("extension_to_2cocycle: f value escapes M");
            for (auto& x : *m) x = X.ground.reduce(x);
            f.set({r, s}, *m);
        }
    if (debug_checks()) {
        std::vector<long> w;
        if (!is_2cocycle(X.R, X.M, f, &w)) throw Error("extension_to_2cocycle: not a cocycle");
    }
    return f;
}

// ---- crossed bimodules -------------------------------------------------------

CrossedBimodule validate_crossed(const BaseRing& ground, StructureAlgebra C0, Bimodule C1,
                                 SparseMat delta) {
    const long g1 = C1.carrier().gens;
    FPModule m0 = C0.carrier_over(ground);
    if (delta.rows() != C0.dim() || delta.cols() != g1)
        throw Error("validate_crossed: delta shape mismatch");
    if (!is_module_map(C1.carrier(), m0, delta))
        throw Error("validate_crossed: delta not a module map");
    // bimodule map: delta(r c) = r delta(c), delta(c r) = delta(c) r
    for (long i = 0; i < C0.dim(); ++i) {
        if (!matrices_congruent(delta.mul(C1.left(i)), C0.left_mul(i).mul(delta), m0))
            throw Error("validate_crossed: delta does not commute with the left action");
        if (!matrices_congruent(delta.mul(C1.right(i)), C0.right_mul(i).mul(delta), m0))
            throw Error("validate_crossed: delta does not commute with the right action");
    }
    // Peiffer identity and the star table
    std::vector<std::vector<std::vector<Int>>> star(
        g1, std::vector<std::vector<Int>>(g1, std::vector<Int>(g1, 0)));
    for (long a = 0; a < g1; ++a) {
        auto da = delta.column(a);
        SparseMat La = C1.left_by(da);
        for (long b = 0; b < g1; ++b) {
            auto db = delta.column(b);
            auto lhs = La.column(b);                  // d(e_a) e_b
            auto rhs = C1.right_by(db).column(a);     // e_a d(e_b)
            if (!same_element(C1.carrier(), lhs, rhs)) throw PeifferViolation(a, b);
            for (long k = 0; k < g1; ++k) star[a][b][k] = ground.reduce(lhs[k]);
        }
    }
    // star associativity (a consequence; still asserted)
    auto star_mul = [&](const std::vector<Int>& x, const std::vector<Int>& y) {
        std::vector<Int> out(g1, 0);
        for (long a = 0; a < g1; ++a) {
            if (x[a] == 0) continue;
            for (long b = 0; b < g1; ++b) {
                if (y[b] == 0) continue;
                for (long k = 0; k < g1; ++k) out[k] += x[a] * y[b] * star[a][b][k];
            }
        }
        for (auto& v : out) v = ground.reduce(v);
        return out;
    };
    for (long a = 0; a < g1; ++a)
        for (long b = 0; b < g1; ++b)
            for (long c = 0; c < g1; ++c) {
                std::vector<Int> ea(g1, 0), eb(g1, 0), ec(g1, 0);
                ea[a] = 1;
                eb[b] = 1;
                ec[c] = 1;
                auto lhs = star_mul(star_mul(ea, eb), ec);
                auto rhs = star_mul(ea, star_mul(eb, ec));
                if (!same_element(C1.carrier(), lhs, rhs))
                    throw Error("validate_crossed: star product not associative");
            }
    return CrossedBimodule{ground, std::move(C0), std::move(C1), std::move(delta),
                           std::move(star)};
}

void validate_crossed_extension(const CrossedExtension& X) {
    const FPModule& m1 = X.xb.C1.carrier();
    const FPModule mM = X.M.carrier();
    FPModule m0 = X.xb.C0.carrier_over(X.ground);
    FPModule mR = X.R.carrier_over(X.ground);
    if (!is_module_map(mM, m1, X.incl)) throw Error("crossed extension: incl not a module map");
    if (!is_injective_map(mM, m1, X.incl)) throw Error("crossed extension: incl not injective");
    if (!is_surjective_map(m0, mR, X.proj)) throw Error("crossed extension: proj not surjective");
    // exactness at C1: ker delta == im incl
    SparseMat K1 = kernel_of_map(m1, m0, X.xb.delta);
    SparseMat I1 = lattice_basis(X.incl.hcat(m1.lifted_relations()));
    if (!solve_mat(I1, K1) || !solve_mat(K1, I1))
        throw Error("crossed extension: not exact at C1");
    // exactness at C0: ker proj == im delta
    SparseMat K0 = kernel_of_map(m0, mR, X.proj);
    SparseMat I0 = lattice_basis(X.xb.delta.hcat(m0.lifted_relations()));
    if (!solve_mat(I0, K0) || !solve_mat(K0, I0))
        throw Error("crossed extension: not exact at C0");
    // proj is a unital algebra map
    if (!same_element(mR, X.proj.apply(X.xb.C0.unit()), X.R.unit()))
        throw Error("crossed extension: proj not unital");
    for (long i = 0; i < X.xb.C0.dim(); ++i)
        for (long j = 0; j < X.xb.C0.dim(); ++j) {
            std::vector<Int> ei(X.xb.C0.dim(), 0), ej(X.xb.C0.dim(), 0);
            ei[i] = 1;
            ej[j] = 1;
            auto lhs = X.proj.apply(X.xb.C0.product(ei, ej));
            auto rhs = X.R.product(X.proj.apply(ei), X.proj.apply(ej));
            if (!same_element(mR, lhs, rhs)) throw Error("crossed extension: proj not an algebra map");
        }
    // induced R-actions on M == prescribed ones
    for (long r = 0; r < X.R.dim(); ++r) {
        std::vector<Int> er(X.R.dim(), 0);
        er[r] = 1;
        auto pre = preimage(m0, mR, X.proj, er);
        if (!pre) throw Error("crossed extension: missing preimage");
        SparseMat act = X.xb.C1.left_by(*pre);
        for (long m = 0; m < mM.gens; ++m) {
            auto lhs = act.apply(X.incl.column(m));
            auto rhs = X.incl.apply(X.M.left(r).column(m));
            if (!same_element(m1, lhs, rhs))
                throw Error("crossed extension: induced left action mismatch");
        }
        SparseMat actR = X.xb.C1.right_by(*pre);
        for (long m = 0; m < mM.gens; ++m) {
            auto lhs = actR.apply(X.incl.column(m));
            auto rhs = X.incl.apply(X.M.right(r).column(m));
            if (!same_element(m1, lhs, rhs))
                throw Error("crossed extension: induced right action mismatch");
        }
    }
}

CrossedSections crossed_sections(const CrossedExtension& X, uint64_t perturb_seed) {
    FPModule m0 = X.xb.C0.carrier_over(X.ground);
    FPModule mR = X.R.carrier_over(X.ground);
    const FPModule& m1 = X.xb.C1.carrier();
    const long g0 = X.xb.C0.dim(), dR = X.R.dim(), g1 = m1.gens;

    // section p of proj with p(1) = 1 and p a module map
    CongruenceSystem sys(g0, dR);
    sys.add_equation(SparseMat::identity(g0), mR.lifted_relations(),
                     zero_mat(g0, mR.lifted_relations().cols()), m0.lifted_relations());
    sys.add_equation(X.proj, SparseMat::identity(dR), SparseMat::identity(dR),
                     mR.lifted_relations());
    sys.add_equation(SparseMat::identity(g0), SparseMat::from_columns(dR, {X.R.unit()}),
                     SparseMat::from_columns(g0, {X.xb.C0.unit()}), m0.lifted_relations());
    auto psol = sys.solve_system();
    if (!psol) throw NoSplitting("no ground-linear section of proj with p(1) = 1");
    SparseMat p = psol->particular;
    if (perturb_seed != 0 && !psol->homogeneous.empty()) {
        std::mt19937_64 rng(perturb_seed);
        for (const auto& H : psol->homogeneous)
            if (rng() % 2) p = p + H;
        p = p.reduced(X.ground);
    }

    // V = im(delta) as an abstract module
    SparseMat Vb = lattice_basis(X.xb.delta.hcat(m0.lifted_relations()));
    long nv = Vb.cols();
    // relations of V: Vb-coordinates of span(Vb) cap span(rel C0)
    SparseMat relV(nv, 0);
    {
        SparseMat rel0 = m0.lifted_relations();
        SparseMat K = kernel_lattice(Vb.hcat(rel0.scaled(Int(-1))));
        SparseMat coords(nv, K.cols());
        for (const auto& e : K.entries())
            if (e.r < nv) coords.add(e.r, e.c, e.v);
        coords.compress();
        relV = lattice_basis(coords);
    }
    FPModule V(X.ground, nv, relV.reduced(X.ground));
    // delta expressed with values in V
    auto dV = solve_mat(Vb.hcat(m0.lifted_relations()), X.xb.delta);
    if (!dV) throw Error("crossed_sections: delta does not land in V");
    SparseMat dVm(nv, g1);
    for (const auto& e : dV->entries())
        if (e.r < nv) dVm.add(e.r, e.c, e.v);
    dVm.compress();

    // section q of delta : C1 ->> V
    CongruenceSystem qsys(g1, nv);
    qsys.add_equation(SparseMat::identity(g1), V.lifted_relations(),
                      zero_mat(g1, V.lifted_relations().cols()), m1.lifted_relations());
    qsys.add_equation(dVm, SparseMat::identity(nv), SparseMat::identity(nv),
                      V.lifted_relations());
    auto qsol = qsys.solve_system();
    if (!qsol) throw NoSplitting("no ground-linear section of delta onto its image");
    SparseMat q = qsol->particular;
    if (perturb_seed != 0 && !qsol->homogeneous.empty()) {
        std::mt19937_64 rng(perturb_seed * 77 + 13);
        for (const auto& H : qsol->homogeneous)
            if (rng() % 2) q = q + H;
        q = q.reduced(X.ground);
    }
    return CrossedSections{p.reduced(X.ground), std::move(V), std::move(Vb), q};
}

namespace {

// m(r, s) = q(p(r)p(s) - p(rs)) as C1 coordinates, for basis pairs.
std::vector<Int> pair_defect(const CrossedExtension& X, const CrossedSections& S, long r, long s) {
    auto pr = S.p.column(r), ps = S.p.column(s);
    auto prod = X.xb.C0.product(pr, ps);
    std::vector<Int> rs(X.R.dim(), 0);
    for (long k = 0; k < X.R.dim(); ++k) rs[k] = X.R.mult(r, s)[k];
    auto prs = S.p.apply(rs);
    auto defect = sub_vec(prod, prs);
    // express in V, then map through q
    FPModule m0 = X.xb.C0.carrier_over(X.ground);
    auto coords = solve(S.Vbasis.hcat(m0.lifted_relations()), defect);
    if (!coords) throw Error("crossed cocycle: defect escapes im(delta)");
    std::vector<Int> vc(coords->begin(), coords->begin() + S.Vbasis.cols());
    return S.q.apply(vc);
}

}  // namespace

Cochain crossed_to_3cocycle(const CrossedExtension& X, uint64_t perturb_seed) {
    CrossedSections S = crossed_sections(X, perturb_seed);
    const long dR = X.R.dim();
    const long g1 = X.xb.C1.carrier().gens;
    // m table
    std::vector<std::vector<std::vector<Int>>> m(dR, std::vector<std::vector<Int>>(dR));
    for (long r = 0; r < dR; ++r)
        for (long s = 0; s < dR; ++s) m[r][s] = pair_defect(X, S, r, s);
    auto m_of = [&](const std::vector<Int>& rv, long s) {
        std::vector<Int> out(g1, 0);
        for (long r = 0; r < dR; ++r)
            if (rv[r] != 0) out = add_vec(out, [&] {
                auto v = m[r][s];
                for (auto& x : v) x *= rv[r];
                return v;
            }());
        return out;
    };
    Cochain f;
    f.degree = 3;
    f.r_dim = dR;
    f.m_gens = X.M.carrier().gens;
    const FPModule& m1 = X.xb.C1.carrier();
    for (long r = 0; r < dR; ++r)
        for (long s = 0; s < dR; ++s)
            for (long t = 0; t < dR; ++t) {
                // p(r) m(s,t) - m(rs,t) + m(r,st) - m(r,s) p(t)
                auto v = X.xb.C1.left_by(S.p.column(r)).apply(m[s][t]);
                std::vector<Int> rs(dR), st(dR);
                for (long k = 0; k < dR; ++k) {
                    rs[k] = X.R.mult(r, s)[k];
                    st[k] = X.R.mult(s, t)[k];
                }
                v = sub_vec(v, m_of(rs, t));
                // m(r, st): expand st linearly in the second slot
                std::vector<Int> mrst(g1, 0);
                for (long k = 0; k < dR; ++k)
                    if (st[k] != 0)
                        mrst = add_vec(mrst, [&] {
                            auto w = m[r][k];
                            for (auto& x : w) x *= st[k];
                            return w;
                        }());
                v = add_vec(v, mrst);
                v = sub_vec(v, X.xb.C1.right_by(S.p.column(t)).apply(m[r][s]));
                auto mm = preimage(X.M.carrier(), m1, X.incl, v);
                if (!mm) throw Error("crossed_to_3cocycle: value escapes M");
                for (auto& x : *mm) x = X.ground.reduce(x);
                f.set({r, s, t}, *mm);
            }
    if (debug_checks()) {
        Cochain df = bar_coboundary(X.R, X.M, f);
        if (!df.is_zero_mod(X.M.carrier())) throw Error("crossed_to_3cocycle: d f != 0");
    }
    return f;
}

// ---- pullback ----------------------------------------------------------------

CrossedExtension pullback_crossed(const CrossedExtension& X, const StructureAlgebra& P0,
                                  const SparseMat& fmap) {
    FPModule m0 = X.xb.C0.carrier_over(X.ground);
    FPModule mP = P0.carrier_over(X.ground);
    const FPModule& m1 = X.xb.C1.carrier();
    const long g1 = m1.gens, gP = P0.dim();
    // unital algebra map check
    if (!same_element(m0, fmap.apply(P0.unit()), X.xb.C0.unit()))
        throw Error("pullback_crossed: map not unital");
    for (long i = 0; i < gP; ++i)
        for (long j = 0; j < gP; ++j) {
            std::vector<Int> ei(gP, 0), ej(gP, 0);
            ei[i] = 1;
            ej[j] = 1;
            if (!same_element(m0, fmap.apply(P0.product(ei, ej)),
                              X.xb.C0.product(fmap.apply(ei), fmap.apply(ej))))
                throw Error("pullback_crossed: map not multiplicative");
        }

    // P1 = {(c, x) : delta c == f x in C0}
    SparseMat big = X.xb.delta.hcat(fmap.scaled(Int(-1))).hcat(m0.lifted_relations());
    SparseMat K = kernel_lattice(big);
    SparseMat KL(g1 + gP, K.cols());
    for (const auto& e : K.entries())
        if (e.r < g1 + gP) KL.add(e.r, e.c, e.v);
    KL.compress();
    SparseMat L = lattice_basis(KL);
    // relation columns of C1 (+) P0 embedded in the pullback
    SparseMat relEmb = m1.lifted_relations().dsum(mP.lifted_relations());
    auto relC = solve_mat(L, relEmb);
    if (!relC) throw Error("pullback_crossed: relations escape the pullback lattice");
    FPModule rawP1(X.ground, L.cols(), relC->reduced(X.ground));
    MinimizedModule mini = minimize(rawP1);

    auto to_raw = [&](const SparseMat& amb) {  // ambient (g1+gP) cols -> raw coords
        auto sol = solve_mat(L.hcat(relEmb), amb);
        if (!sol) throw Error("pullback_crossed: vector not in the pullback");
        SparseMat top(L.cols(), amb.cols());
        for (const auto& e : sol->entries())
            if (e.r < L.cols()) top.add(e.r, e.c, e.v);
        top.compress();
        return top;
    };

    // actions of P0: e_k . (c, x) = (f(e_k) c, e_k x)
    std::vector<SparseMat> left, right;
    SparseMat Lmin = L.mul(mini.from_min);  // min coords -> ambient
    for (long k = 0; k < gP; ++k) {
        auto fk = fmap.column(k);
        SparseMat actL = X.xb.C1.left_by(fk).dsum(P0.left_mul(k));
        left.push_back(mini.to_min.mul(to_raw(actL.mul(Lmin))).reduced(X.ground));
        SparseMat actR = X.xb.C1.right_by(fk).dsum(P0.right_mul(k));
        right.push_back(mini.to_min.mul(to_raw(actR.mul(Lmin))).reduced(X.ground));
    }
    Bimodule P1 = bimodule_over(P0, X.ground, mini.module, std::move(left), std::move(right));

    // delta' = projection to the P0 block
    SparseMat projP(gP, g1 + gP);
    for (long k = 0; k < gP; ++k) projP.add(k, g1 + k, 1);
    SparseMat deltaP = projP.mul(Lmin).reduced(X.ground);
    CrossedBimodule xb = validate_crossed(X.ground, P0, std::move(P1), deltaP);

    // M -> P1: m -> (incl m, 0)
    SparseMat inclP =
        mini.to_min.mul(to_raw(X.incl.vcat(SparseMat(gP, X.incl.cols())))).reduced(X.ground);
    // proj' = proj o f
    SparseMat projR = X.proj.mul(fmap).reduced(X.ground);
    CrossedExtension out{X.ground, X.R, X.M, std::move(xb), inclP, projR};
    validate_crossed_extension(out);
    return out;
}

// ---- obstruction theory --------------------------------------------------------

std::variant<DeltaExtension, NoSolution> delta_extension(const CrossedExtension& X,
                                                         const std::optional<Cochain>& twist) {
    CrossedSections S = [&] {
        try {
            return crossed_sections(X);
        } catch (const NoSplitting& e) {
            throw NotSplit(e.what());
        }
    }();
    Cochain f = crossed_to_3cocycle(X);
    // solve f = d g in the normalized complex so that g is normalized
    Budget b = Budget::global();
    b.max_degree = std::max(b.max_degree, 4);
    BarComplex bc(X.ground, X.R, X.M, 4, true, b);
    auto fv = bc.to_ambient(f);
    auto gv = bc.cx().coboundary_preimage(3, fv);
    if (!gv) return NoSolution{f};
    Cochain g = bc.to_cochain(2, *gv);

    const long dR = X.R.dim();
    const long g1 = X.xb.C1.carrier().gens;
    // n(r, s) = m(r, s) - incl(g(r, s)) and the twisted product table
    std::vector<std::vector<std::vector<Int>>> n(dR, std::vector<std::vector<Int>>(dR));
    for (long r = 0; r < dR; ++r)
        for (long s = 0; s < dR; ++s) {
            auto mv = pair_defect(X, S, r, s);
            auto gval = g.value({r, s});
            // n = m - incl(g); the twist h enters the product as +incl(h),
            // folded in as n_h = m - incl(g - h).
            if (twist) gval = sub_vec(gval, twist->value({r, s}));
            n[r][s] = sub_vec(mv, X.incl.apply(gval));
        }

    // S = C1 (+) R with (x, r)(y, s) = (x*y + p(r)y + x p(s) + n(r, s), rs)
    FPModule mR = X.R.carrier_over(X.ground);
    const long gS = g1 + dR;
    SparseMat rel = X.xb.C1.carrier().relations.dsum(mR.relations);
    FPModule carrier(X.ground, gS, rel);
    std::vector<std::vector<std::vector<Int>>> mult(
        gS, std::vector<std::vector<Int>>(gS, std::vector<Int>(gS, 0)));
    for (long i = 0; i < gS; ++i)
        for (long j = 0; j < gS; ++j) {
            std::vector<Int> out(gS, 0);
            bool iC = i < g1, jC = j < g1;
            if (iC && jC) {
                for (long k = 0; k < g1; ++k) out[k] = X.xb.star[i][j][k];
            } else if (iC && !jC) {
                auto v = X.xb.C1.right_by(S.p.column(j - g1)).column(i);
                for (long k = 0; k < g1; ++k) out[k] = v[k];
            } else if (!iC && jC) {
                auto v = X.xb.C1.left_by(S.p.column(i - g1)).column(j);
                for (long k = 0; k < g1; ++k) out[k] = v[k];
            } else {
                const auto& nv = n[i - g1][j - g1];
                for (long k = 0; k < g1; ++k) out[k] = nv[k];
                const auto& prod = X.R.mult(i - g1, j - g1);
                for (long k = 0; k < dR; ++k) out[g1 + k] = prod[k];
            }
            for (auto& x : out) x = X.ground.reduce(x);
            mult[i][j] = out;
        }
    std::vector<Int> unit(gS, 0);
    for (long k = 0; k < dR; ++k) unit[g1 + k] = X.R.unit()[k];
    FPAlgebra Salg(X.ground, carrier, mult, unit);
    Salg.validate();

    SparseMat mu(gS, g1);
    for (long i = 0; i < g1; ++i) mu.add(i, i, 1);
    SparseMat sigma(dR, gS);
    for (long k = 0; k < dR; ++k) sigma.add(k, g1 + k, 1);
    // xi(x, r) = delta x + p(r)
    SparseMat xi(X.xb.C0.dim(), gS);
    for (const auto& e : X.xb.delta.entries()) xi.add(e.r, e.c, e.v);
    for (const auto& e : S.p.entries()) xi.add(e.r, g1 + e.c, e.v);
    xi.compress();

    DeltaExtension out{std::move(Salg), mu, sigma, xi.reduced(X.ground)};
    validate_delta_extension(X, out);
    return out;
}

void validate_delta_extension(const CrossedExtension& X, const DeltaExtension& D) {
    const FPModule& mS = D.S.carrier();
    const FPModule& m1 = X.xb.C1.carrier();
    FPModule mR = X.R.carrier_over(X.ground);
    FPModule m0 = X.xb.C0.carrier_over(X.ground);
    D.S.validate();
    if (!is_module_map(m1, mS, D.mu)) throw Error("delta extension: mu not a module map");
    if (!is_injective_map(m1, mS, D.mu)) throw Error("delta extension: mu not injective");
    if (!is_surjective_map(mS, mR, D.sigma)) throw Error("delta extension: sigma not surjective");
    // exact at S
    SparseMat K = kernel_of_map(mS, mR, D.sigma);
    SparseMat I = lattice_basis(D.mu.hcat(mS.lifted_relations()));
    if (!solve_mat(I, K) || !solve_mat(K, I)) throw Error("delta extension: not exact at S");
    // sigma is a unital algebra map
    if (!same_element(mR, D.sigma.apply(D.S.unit()), X.R.unit()))
        throw Error("delta extension: sigma not unital");
    for (long i = 0; i < mS.gens; ++i)
        for (long j = 0; j < mS.gens; ++j) {
            std::vector<Int> ei(mS.gens, 0), ej(mS.gens, 0);
            ei[i] = 1;
            ej[j] = 1;
            if (!same_element(mR, D.sigma.apply(D.S.product(ei, ej)),
                              X.R.product(D.sigma.apply(ei), D.sigma.apply(ej))))
                throw Error("delta extension: sigma not an algebra map");
        }
    // ladder: xi mu == delta, proj xi == sigma
    if (!matrices_congruent(D.xi.mul(D.mu), X.xb.delta, m0))
        throw Error("delta extension: xi o mu != delta");
    if (!matrices_congruent(X.proj.mul(D.xi), D.sigma, mR))
        throw Error("delta extension: proj o xi != sigma");
    // mu(x) s == mu(x xi(s)) and s mu(x) == mu(xi(s) x)
    for (long x = 0; x < m1.gens; ++x)
        for (long s = 0; s < mS.gens; ++s) {
            std::vector<Int> es(mS.gens, 0);
            es[s] = 1;
            auto lhs = D.S.product(D.mu.column(x), es);
            auto rhs = D.mu.apply(X.xb.C1.right_by(D.xi.column(s)).column(x));
            if (!same_element(mS, lhs, rhs)) throw Error("delta extension: mu(x)s != mu(x xi(s))");
            auto lhs2 = D.S.product(es, D.mu.column(x));
            auto rhs2 = D.mu.apply(X.xb.C1.left_by(D.xi.column(s)).column(x));
            if (!same_element(mS, lhs2, rhs2)) throw Error("delta extension: s mu(x) != mu(xi(s)x)");
        }
}

bool delta_extensions_isomorphic(const CrossedExtension& X, const DeltaExtension& A,
                                 const DeltaExtension& B) {
    // phi(x, r) = (x + t(r), r) for a linear t : R -> C1 (forced by the
    // identity ladder); enumerate t over the prime field.
    const long dR = X.R.dim();
    const long g1 = X.xb.C1.carrier().gens;
    if (!X.ground.is_field()) throw Error("delta_extensions_isomorphic: field grounds only");
    const uint32_t p = (uint32_t)X.ground.modulus().get_ui();
    const long gS = g1 + dR;
    const long cells = dR * g1;
    double total_d = 1;
    for (long i = 0; i < cells; ++i) total_d *= p;
    if (total_d > 1e6) throw BudgetExceeded("delta extension isomorphism search too large");
    const long total = (long)total_d;

    // dense mod-p product tables (the carriers are free over the field here;
    // residual relation columns vanish mod p after reduction)
    auto tab = [&](const FPAlgebra& S) {
        std::vector<uint32_t> t(size_t(gS) * gS * gS, 0);
        for (long i = 0; i < gS; ++i)
            for (long j = 0; j < gS; ++j) {
                const auto& v = S.mult(i, j);
                for (long k = 0; k < gS; ++k) {
                    Int r = v[k] % Int(p);
                    if (r < 0) r += p;
                    t[(size_t(i) * gS + j) * gS + k] = (uint32_t)r.get_ui();
                }
            }
        return t;
    };
    auto tA = tab(A.S), tB = tab(B.S);
    std::vector<uint32_t> t(cells, 0);
    for (long code = 0; code < total; ++code) {
        long c = code;
        for (long k = 0; k < cells; ++k) {
            t[k] = (uint32_t)(c % p);
            c /= p;
        }
        // phi(e_j) for basis vectors: identity plus t on the R block
        auto phi = [&](long j, std::vector<uint32_t>& out) {
            std::fill(out.begin(), out.end(), 0);
            out[j] = 1;
            if (j >= g1)
                for (long i = 0; i < g1; ++i) out[i] = t[(j - g1) * g1 + i];
        };
        std::vector<uint32_t> pi(gS), pj(gS), lhs(gS), rhs(gS), prod(gS);
        bool ok = true;
        for (long i = 0; i < gS && ok; ++i) {
            phi(i, pi);
            for (long j = 0; j < gS && ok; ++j) {
                phi(j, pj);
                // lhs = phi(e_i *_A e_j)
                std::fill(lhs.begin(), lhs.end(), 0);
                for (long k = 0; k < gS; ++k) {
                    uint32_t c0 = tA[(size_t(i) * gS + j) * gS + k];
                    if (!c0) continue;
                    if (k >= g1) {
                        lhs[k] = (lhs[k] + c0) % p;
                        for (long q = 0; q < g1; ++q)
                            lhs[q] = (lhs[q] + c0 * t[(k - g1) * g1 + q]) % p;
                    } else {
                        lhs[k] = (lhs[k] + c0) % p;
                    }
                }
                // rhs = phi(e_i) *_B phi(e_j)
                std::fill(rhs.begin(), rhs.end(), 0);
                for (long a = 0; a < gS; ++a) {
                    if (!pi[a]) continue;
                    for (long b = 0; b < gS; ++b) {
                        if (!pj[b]) continue;
                        uint64_t c0 = (uint64_t)pi[a] * pj[b] % p;
                        if (!c0) continue;
                        for (long k = 0; k < gS; ++k) {
                            uint32_t m = tB[(size_t(a) * gS + b) * gS + k];
                            if (m) rhs[k] = (uint32_t)((rhs[k] + c0 * m) % p);
                        }
                    }
                }
                if (lhs != rhs) ok = false;
            }
        }
        if (ok) return true;
    }
    return false;
}

// ---- constructions -------------------------------------------------------------

StructureAlgebra truncated_free_algebra(const BaseRing& base, long gens, long L) {
    // basis: words over `gens` letters of length <= L, ordered by length then lex
    std::vector<std::vector<long>> words{{}};
    for (long len = 1; len <= L; ++len) {
        std::vector<std::vector<long>> next;
        long count = 1;
        for (long i = 0; i < len; ++i) count *= gens;
        for (long code = 0; code < count; ++code) {
            std::vector<long> w(len);
            long c = code;
            for (long k = len - 1; k >= 0; --k) {
                w[k] = c % gens;
                c /= gens;
            }
            next.push_back(w);
        }
        for (auto& w : next) words.push_back(std::move(w));
    }
    auto find = [&](const std::vector<long>& w) -> long {
        for (size_t i = 0; i < words.size(); ++i)
            if (words[i] == w) return (long)i;
        return -1;
    };
    long d = (long)words.size();
    std::vector<std::vector<std::vector<Int>>> mult(
        d, std::vector<std::vector<Int>>(d, std::vector<Int>(d, 0)));
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) {
            std::vector<long> w = words[i];
            w.insert(w.end(), words[j].begin(), words[j].end());
            if ((long)w.size() <= L) mult[i][j][find(w)] = 1;
        }
    std::vector<std::string> names;
    for (const auto& w : words) {
        if (w.empty()) {
            names.push_back("1");
            continue;
        }
        std::string s;
        for (long g : w) s += (char)('x' + (char)g);
        names.push_back(s);
    }
    std::vector<Int> unit(d, 0);
    unit[0] = 1;
    return StructureAlgebra(base, names, mult, unit);
}

CrossedBimodule free_crossed_bimodule(const BaseRing& ground, const StructureAlgebra& C,
                                      long vrank, const SparseMat& vmap) {
    const long dC = C.dim();
    if (vmap.rows() != dC || vmap.cols() != vrank)
        throw Error("free_crossed_bimodule: vmap shape mismatch");
    // M0 = C (x) V (x) C, basis (w1, v, w2) -> (w1 * vrank + v) * dC + w2
    const long g = dC * vrank * dC;
    auto idx = [&](long w1, long v, long w2) { return (w1 * vrank + v) * dC + w2; };
    FPModule m0 = C.carrier_over(ground);
    SparseMat rel(g, 0);
    if (m0.relations.cols() > 0) {
        // torsion of C spreads to every tensor slot; the carrier relations are
        // c * basis which the FPModule base handles only for base == ground,
        // so materialize them here.
        Int c = C.base().modulus();
        SparseMat r(g, g);
        for (long i = 0; i < g; ++i) r.add(i, i, c);
        rel = r;
    }
    FPModule carrier(ground, g, rel);

    // d(w1 (x) v (x) w2) = w1 * vmap(v) * w2 in C
    SparseMat delta(dC, g);
    for (long w1 = 0; w1 < dC; ++w1)
        for (long v = 0; v < vrank; ++v)
            for (long w2 = 0; w2 < dC; ++w2) {
                std::vector<Int> e1(dC, 0), e2(dC, 0);
                e1[w1] = 1;
                e2[w2] = 1;
                auto val = C.product(C.product(e1, vmap.column(v)), e2);
                for (long k = 0; k < dC; ++k)
                    if (val[k] != 0) delta.add(k, idx(w1, v, w2), val[k]);
            }
    delta.compress();

    // bimodule actions: a (w1 (x) v (x) w2) b = (a w1) (x) v (x) (w2 b)
    std::vector<SparseMat> left(dC, SparseMat(g, g)), right(dC, SparseMat(g, g));
    for (long a = 0; a < dC; ++a) {
        SparseMat L(g, g), R(g, g);
        for (long w1 = 0; w1 < dC; ++w1)
            for (long v = 0; v < vrank; ++v)
                for (long w2 = 0; w2 < dC; ++w2) {
                    const auto& aw1 = C.mult(a, w1);
                    for (long k = 0; k < dC; ++k)
                        if (aw1[k] != 0) L.add(idx(k, v, w2), idx(w1, v, w2), aw1[k]);
                    const auto& w2b = C.mult(w2, a);
                    for (long k = 0; k < dC; ++k)
                        if (w2b[k] != 0) R.add(idx(w1, v, k), idx(w1, v, w2), w2b[k]);
                }
        L.compress();
        R.compress();
        left[a] = L;
        right[a] = R;
    }

    // Peiffer quotient: x d(y) - d(x) y ~ 0 over basis pairs
    SparseMat peiffer(g, g * g);
    {
        Bimodule M0raw(C, ground, carrier, left, right);
        long col = 0;
        for (long x = 0; x < g; ++x) {
            auto dx = delta.column(x);
            SparseMat Ldx = M0raw.left_by(dx);
            for (long y = 0; y < g; ++y, ++col) {
                auto dy = delta.column(y);
                auto v1 = M0raw.right_by(dy).column(x);  // x d(y)
                auto v2 = Ldx.column(y);                 // d(x) y
                auto diff = sub_vec(v1, v2);
                for (long k = 0; k < g; ++k)
                    if (diff[k] != 0) peiffer.add(k, col, diff[k]);
            }
        }
        peiffer.compress();
    }
    FPModule quot(ground, g, carrier.relations.hcat(peiffer).reduced(ground));
    MinimizedModule mini = minimize(quot);
    std::vector<SparseMat> leftQ, rightQ;
    for (long a = 0; a < dC; ++a) {
        leftQ.push_back(mini.to_min.mul(left[a]).mul(mini.from_min).reduced(ground));
        rightQ.push_back(mini.to_min.mul(right[a]).mul(mini.from_min).reduced(ground));
    }
    SparseMat deltaQ = delta.mul(mini.from_min).reduced(ground);
    Bimodule C1 = bimodule_over(C, ground, mini.module, std::move(leftQ), std::move(rightQ));
    return validate_crossed(ground, C, std::move(C1), deltaQ);
}

CrossedExtension split_crossed_extension(const BaseRing& ground, const StructureAlgebra& R,
                                         const Bimodule& M) {
    // 0 -> M --id--> M --0--> R --id--> R -> 0
    const long gM = M.carrier().gens;
    std::vector<SparseMat> left, right;
    for (long i = 0; i < R.dim(); ++i) {
        left.push_back(M.left(i));
        right.push_back(M.right(i));
    }
    Bimodule C1 = bimodule_over(R, ground, M.carrier(), std::move(left), std::move(right));
    CrossedBimodule xb =
        validate_crossed(ground, R, std::move(C1), SparseMat(R.dim(), gM));
    CrossedExtension X{ground, R, M, std::move(xb), SparseMat::identity(gM),
                       SparseMat::identity(R.dim())};
    validate_crossed_extension(X);
    return X;
}

CrossedExtension crossed_from_3cocycle(const BaseRing& ground, const StructureAlgebra& R,
                                       const Bimodule& M, const Cochain& f) {
    if (!ground.is_field()) throw Error("crossed_from_3cocycle: field grounds only");
    {
        Cochain df = bar_coboundary(R, M, f);
        if (!df.is_zero_mod(M.carrier())) throw NotACocycle({});
    }
    InducedBimodule ind = induced_bimodule(R, M);
    const FPModule& H = ind.hom_carrier;
    // Solve d G = mu o f with G a 2-cochain valued in Hom(R, M); solvable
    // because the induced bimodule has vanishing higher cohomology.
    Cochain muf;
    muf.degree = 3;
    muf.r_dim = R.dim();
    muf.m_gens = H.gens;
    for (const auto& [t, v] : f.coeffs) muf.set(t, ind.embedding.apply(v));
    auto G = coboundary_witness(ground, R, ind.module, muf);
    if (!G) throw Error("crossed_from_3cocycle: induced-module solve failed");

    // N = coker(mu), minimized to a free module over the field.
    FPModule rawN(ground, H.gens, H.relations.hcat(ind.embedding).reduced(ground));
    MinimizedModule mini = minimize(rawN);
    const long gN = mini.module.gens;
    std::vector<SparseMat> leftN, rightN;
    for (long i = 0; i < R.dim(); ++i) {
        leftN.push_back(mini.to_min.mul(ind.module.left(i)).mul(mini.from_min).reduced(ground));
        rightN.push_back(mini.to_min.mul(ind.module.right(i)).mul(mini.from_min).reduced(ground));
    }
    Bimodule N = bimodule_over(R, ground, mini.module, std::move(leftN), std::move(rightN));

    // F = nu o G, the shifted 2-cocycle with values in N
    Cochain F;
    F.degree = 2;
    F.r_dim = R.dim();
    F.m_gens = gN;
    for (const auto& [t, v] : G->coeffs) F.set(t, mini.to_min.apply(v));
    AbelianExtension E = semidirect_from_2cocycle(ground, R, N, F);

    // S = N x_F R as a StructureAlgebra (carrier is free over the field)
    const long gS = E.E.gens();
    std::vector<std::string> names;
    for (long i = 0; i < gN; ++i) names.push_back("n" + std::to_string(i));
    for (long i = 0; i < R.dim(); ++i) names.push_back("r:" + R.names()[i]);
    std::vector<std::vector<std::vector<Int>>> mult(gS);
    for (long i = 0; i < gS; ++i) {
        mult[i].resize(gS);
        for (long j = 0; j < gS; ++j) mult[i][j] = E.E.mult(i, j);
    }
    StructureAlgebra S(ground, names, mult, E.E.unit());

    // C1 = Hom(R, M) as a bimodule over S via sigma : S -> R
    std::vector<SparseMat> leftC(gS, SparseMat(H.gens, H.gens)),
        rightC(gS, SparseMat(H.gens, H.gens));
    for (long k = 0; k < R.dim(); ++k) {
        leftC[gN + k] = ind.module.left(k);
        rightC[gN + k] = ind.module.right(k);
    }
    Bimodule C1 = bimodule_over(S, ground, H, std::move(leftC), std::move(rightC));
    // delta : Hom(R, M) ->> N c S
    SparseMat delta(gS, H.gens);
    for (const auto& e : mini.to_min.entries()) delta.add(e.r, e.c, e.v);
    delta.compress();
    CrossedBimodule xb = validate_crossed(ground, std::move(S), std::move(C1), delta);
    CrossedExtension X{ground, R, M, std::move(xb), ind.embedding, E.proj};
    validate_crossed_extension(X);
    return X;
}

}  // namespace cohom
