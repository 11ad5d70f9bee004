#include "cohom/subquotient.hpp"

#include <sstream>

namespace cohom {

SubquotientComplex::SubquotientComplex(BaseRing base, int lo, int hi)
    : base_(base), lo_(lo), hi_(hi) {
    if (hi < lo) throw Error("SubquotientComplex: empty range");
    size_t n = size_t(hi - lo + 1);
    ambient_.assign(n, 0);
    sub_.resize(n);
    rel_.resize(n);
    diff_.assign(n, SparseMat(0, 0));
}

void SubquotientComplex::set_ambient(int n, long rank) {
    if (!in_range(n)) throw Error("set_ambient: degree out of range");
    ambient_[idx(n)] = rank;
}
void SubquotientComplex::set_sub(int n, SparseMat gens) {
    if (!in_range(n)) throw Error("set_sub: degree out of range");
    if (gens.rows() != ambient_[idx(n)]) throw Error("set_sub: wrong ambient rank");
    sub_[idx(n)] = std::move(gens);
}
void SubquotientComplex::set_rel(int n, SparseMat gens) {
    if (!in_range(n)) throw Error("set_rel: degree out of range");
    if (gens.rows() != ambient_[idx(n)]) throw Error("set_rel: wrong ambient rank");
    rel_[idx(n)] = std::move(gens);
}
void SubquotientComplex::set_diff(int n, SparseMat d) {
    if (!in_range(n) || !in_range(n + 1)) throw Error("set_diff: degree out of range");
    if (d.cols() != ambient_[idx(n)] || d.rows() != ambient_[idx(n + 1)])
        throw Error("set_diff: shape mismatch");
    diff_[idx(n)] = std::move(d);
}

const SparseMat& SubquotientComplex::diff(int n) const {
    static const SparseMat empty(0, 0);
    if (!in_range(n) || !in_range(n + 1)) return empty;
    return diff_[idx(n)];
}

SparseMat SubquotientComplex::sub_gens(int n) const {
    if (!in_range(n)) return SparseMat(0, 0);
    if (sub_[idx(n)]) return *sub_[idx(n)];
    return SparseMat::identity(ambient_[idx(n)]);
}

SparseMat SubquotientComplex::rel_gens(int n) const {
    if (!in_range(n)) return SparseMat(0, 0);
    long N = ambient_[idx(n)];
    SparseMat rel = rel_[idx(n)] ? *rel_[idx(n)] : SparseMat(N, 0);
    if (!base_.is_integers() && N > 0) {
        SparseMat mI(N, N);
        for (long i = 0; i < N; ++i) mI.add(i, i, base_.modulus());
        rel = rel.hcat(mI);
    }
    return rel;
}

void SubquotientComplex::check_complex() const {
    for (int n = lo_; n + 2 <= hi_; ++n) {
        const SparseMat& d0 = diff_[idx(n)];
        const SparseMat& d1 = diff_[idx(n + 1)];
        if (d0.cols() == 0 || d1.cols() == 0) continue;
        SparseMat dd = d1.mul(d0).mul(sub_gens(n));
        if (dd.is_zero()) continue;
        if (!solve_mat(rel_gens(n + 2), dd))
            throw NotAComplex("d o d != 0 at degree " + std::to_string(n));
    }
}

namespace {

struct FpWork {
    uint32_t p;
    // Returns basis (columns) of {x : D S x in span B} expressed in ambient
    // coordinates, i.e. S * basis-of-solutions.
};

}  // namespace

SubquotientComplex::Homology SubquotientComplex::homology_at(int n) const {
    Homology out;
    if (!in_range(n)) return out;
    const long N = ambient_[idx(n)];
    if (N == 0) return out;

    if (base_.is_field()) {
        const uint32_t p = (uint32_t)base_.modulus().get_ui();
        FpMat S = FpMat::from_sparse(sub_gens(n), p);
        FpMat Bn = FpMat::from_sparse(rel_gens(n), p);
        FpMat D = in_range(n + 1) && diff_[idx(n)].cols() ? FpMat::from_sparse(diff_[idx(n)], p)
                                                          : FpMat(0, N, p);
        FpMat Bnext = in_range(n + 1) ? FpMat::from_sparse(rel_gens(n + 1), p)
                                      : FpMat(D.rows(), 0, p);
        // Z = {S c : D S c in span Bnext}: kernel of [D*S | Bnext] projected.
        long s = S.cols();
        FpMat DS(D.rows(), s + Bnext.cols(), p);
        for (long r = 0; r < D.rows(); ++r) {
            for (long c = 0; c < s; ++c) {
                uint64_t acc = 0;
                for (long k = 0; k < N; ++k) acc += (uint64_t)D(r, k) * S(k, c) % p;
                DS(r, c) = (uint32_t)(acc % p);
            }
            for (long c = 0; c < Bnext.cols(); ++c) DS(r, s + c) = Bnext(r, c);
        }
        FpMat K = fp_kernel(DS);
        // Z generators in ambient coordinates: S * K_top.
        FpMat Zg(N, K.cols(), p);
        for (long r = 0; r < N; ++r)
            for (long c = 0; c < K.cols(); ++c) {
                uint64_t acc = 0;
                for (long k = 0; k < s; ++k) acc += (uint64_t)S(r, k) * K(k, c) % p;
                Zg(r, c) = (uint32_t)(acc % p);
            }
        FpMat Z = fp_column_basis(Zg);
        // Boundaries: d applied to L_{n-1} plus B_n.
        FpMat Dprev = in_range(n - 1) && diff(n - 1).cols() ? FpMat::from_sparse(diff(n - 1), p)
                                                            : FpMat(N, 0, p);
        FpMat Sprev = in_range(n - 1) ? FpMat::from_sparse(sub_gens(n - 1), p) : FpMat(0, 0, p);
        long bcols = (Dprev.cols() ? Sprev.cols() : 0) + Bn.cols();
        FpMat Bd(N, bcols, p);
        long col = 0;
        if (Dprev.cols()) {
            for (long c = 0; c < Sprev.cols(); ++c, ++col)
                for (long r = 0; r < N; ++r) {
                    uint64_t acc = 0;
                    for (long k = 0; k < Dprev.cols(); ++k)
                        acc += (uint64_t)Dprev(r, k) * Sprev(k, c) % p;
                    Bd(r, col) = (uint32_t)(acc % p);
                }
        }
        for (long c = 0; c < Bn.cols(); ++c, ++col)
            for (long r = 0; r < N; ++r) Bd(r, col) = Bn(r, c);

        // dim H = dim Z - rank(Bd)   (Bd is contained in Z).
        long zdim = Z.cols();
        long bdim = fp_rank(Bd);
        long h = zdim - bdim;
        if (h < 0) throw Error("homology_at(Fp): boundaries exceed cocycles");
        for (long i = 0; i < h; ++i) out.divisors.divisors.push_back(base_.modulus());
        // Representatives: extend a basis of Bd inside Z greedily.
        if (h > 0) {
            FpMat acc = Bd;
            for (long c = 0; c < Z.cols() && (long)out.representatives.size() < h; ++c) {
                FpMat trial(N, acc.cols() + 1, p);
                for (long r = 0; r < N; ++r) {
                    for (long k = 0; k < acc.cols(); ++k) trial(r, k) = acc(r, k);
                    trial(r, acc.cols()) = Z(r, c);
                }
                if (fp_rank(trial) > fp_rank(acc)) {
                    acc = trial;
                    std::vector<Int> rep(N);
                    for (long r = 0; r < N; ++r) rep[r] = Z(r, c);
                    out.representatives.push_back(std::move(rep));
                }
            }
        }
        return out;
    }

    // Integer lattice path (Z and Z/m via lift).
    SparseMat S = sub_gens(n);
    SparseMat D = diff(n);
    SparseMat Bnext = in_range(n + 1) ? rel_gens(n + 1) : SparseMat(0, 0);
    SparseMat Zb;  // ambient basis of the cocycle lattice
    if (D.cols() == 0 || D.rows() == 0) {
        Zb = lattice_basis(S);
    } else {
        SparseMat DS = D.mul(S);
        SparseMat M = Bnext.cols() > 0 ? DS.hcat(Bnext) : DS;
        SparseMat K = kernel_lattice(M);
        SparseMat Ktop((long)S.cols(), K.cols());
        for (const auto& e : K.entries())
            if (e.r < S.cols()) Ktop.add(e.r, e.c, e.v);
        Ktop.compress();
        Zb = lattice_basis(S.mul(Ktop));
    }

    SparseMat Bd(N, 0);
    if (in_range(n - 1) && diff(n - 1).cols() > 0) Bd = Bd.hcat(diff(n - 1).mul(sub_gens(n - 1)));
    Bd = Bd.hcat(rel_gens(n));

    if (Zb.cols() == 0) return out;
    auto C = solve_mat(Zb, Bd);
    if (!C) throw Error("homology_at: boundary lattice not inside cocycle lattice");
    SmithResult s = smith_normal_form(*C);
    out.divisors = ElementaryDivisors::from_diagonal(s.divisors, Zb.cols() - s.rank);

    // Representatives: basis change by U^-1 aligns generators with divisors.
    auto Uinv = solve_mat(s.U, SparseMat::identity(Zb.cols()));
    if (!Uinv) throw Error("homology_at: U not invertible");
    SparseMat gens = Zb.mul(*Uinv);
    std::vector<long> kept;
    for (long i = 0; i < s.rank; ++i) {
        Int d = abs(s.divisors[i]);
        if (d != 1) kept.push_back(i);
    }
    for (long i = s.rank; i < Zb.cols(); ++i) kept.push_back(i);
    // Order representatives to match from_diagonal: torsion divisors first
    // (skipping units), then free generators.
    for (long i : kept) out.representatives.push_back(gens.column(i));
    return out;
}

bool SubquotientComplex::is_cocycle(int n, const std::vector<Int>& v) const {
    if (!in_range(n)) return true;
    const SparseMat& D = diff(n);
    if (D.cols() == 0) return true;
    auto dv = D.apply(v);
    SparseMat B = in_range(n + 1) ? rel_gens(n + 1) : SparseMat((long)dv.size(), 0);
    if (base_.is_field()) {
        uint32_t p = (uint32_t)base_.modulus().get_ui();
        FpMat Bf = FpMat::from_sparse(B, p);
        std::vector<uint32_t> rhs(dv.size());
        for (size_t i = 0; i < dv.size(); ++i) {
            Int r = dv[i] % Int(p);
            if (r < 0) r += p;
            rhs[i] = (uint32_t)r.get_ui();
        }
        return fp_solve(Bf, rhs).has_value();
    }
    return in_span(B, dv);
}

std::optional<std::vector<Int>> SubquotientComplex::coboundary_preimage(
    int n, const std::vector<Int>& v) const {
    if (!in_range(n)) return std::nullopt;
    const long N = ambient_[idx(n)];
    if ((long)v.size() != N) throw Error("coboundary_preimage: length mismatch");
    SparseMat Dprev = in_range(n - 1) ? diff(n - 1) : SparseMat(0, 0);
    SparseMat Sprev = in_range(n - 1) ? sub_gens(n - 1) : SparseMat(0, 0);
    SparseMat B = rel_gens(n);
    SparseMat lhs(N, 0);
    long ucols = 0;
    if (Dprev.cols() > 0 && Sprev.cols() > 0) {
        lhs = lhs.hcat(Dprev.mul(Sprev));
        ucols = Sprev.cols();
    }
    lhs = lhs.hcat(B);
    if (lhs.cols() == 0) return std::nullopt;
    std::optional<std::vector<Int>> sol;
    if (base_.is_field()) {
        uint32_t p = (uint32_t)base_.modulus().get_ui();
        FpMat L = FpMat::from_sparse(lhs, p);
        std::vector<uint32_t> rhs(v.size());
        for (size_t i = 0; i < v.size(); ++i) {
            Int r = v[i] % Int(p);
            if (r < 0) r += p;
            rhs[i] = (uint32_t)r.get_ui();
        }
        auto x = fp_solve(L, rhs);
        if (!x) return std::nullopt;
        sol = std::vector<Int>(x->size());
        for (size_t i = 0; i < x->size(); ++i) (*sol)[i] = (*x)[i];
    } else {
        sol = solve(lhs, v);
        if (!sol) return std::nullopt;
    }
    if (ucols == 0) {
        // v lies in the relation lattice: coboundary of zero.
        long prev_rank = in_range(n - 1) ? ambient_[idx(n - 1)] : 0;
        return std::vector<Int>(prev_rank, 0);
    }
    std::vector<Int> coeff(sol->begin(), sol->begin() + ucols);
    return Sprev.apply(coeff);
}

std::optional<std::vector<Int>> SubquotientComplex::class_in_basis(
    int n, const std::vector<Int>& v, const std::vector<std::vector<Int>>& reps) const {
    if (!in_range(n)) return std::nullopt;
    const long N = ambient_[idx(n)];
    SparseMat R = SparseMat::from_columns(N, reps);
    SparseMat lhs = R;
    if (in_range(n - 1) && diff(n - 1).cols() > 0 && sub_gens(n - 1).cols() > 0)
        lhs = lhs.hcat(diff(n - 1).mul(sub_gens(n - 1)));
    lhs = lhs.hcat(rel_gens(n));
    std::optional<std::vector<Int>> sol;
    if (base_.is_field()) {
        uint32_t p = (uint32_t)base_.modulus().get_ui();
        FpMat L = FpMat::from_sparse(lhs, p);
        std::vector<uint32_t> rhs(v.size());
        for (size_t i = 0; i < v.size(); ++i) {
            Int r = v[i] % Int(p);
            if (r < 0) r += p;
            rhs[i] = (uint32_t)r.get_ui();
        }
        auto x = fp_solve(L, rhs);
        if (!x) return std::nullopt;
        sol = std::vector<Int>(x->begin(), x->end());
    } else {
        sol = solve(lhs, v);
        if (!sol) return std::nullopt;
    }
    sol->resize(reps.size());
    return sol;
}

std::string CohomologyResult::str() const {
    std::ostringstream os;
    for (const auto& [deg, ed] : groups) os << "H^" << deg << " = " << ed.str() << "\n";
    return os.str();
}

}  // namespace cohom
