#include "cohom/chainalg.hpp"

#include "cohom/catalog.hpp"

#include <functional>

namespace cohom {

namespace {

Int binom(long n, long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
    return r;
}

}  // namespace

// ---- ChainAlgebra -------------------------------------------------------------

ChainAlgebra::ChainAlgebra(
    Ground g, int bound, std::vector<long> word_counts,
    std::map<std::pair<int, int>, std::vector<std::vector<std::vector<Int>>>> mult,
    std::vector<SparseMat> diff, StructureAlgebra degree0)
    : ground_(std::move(g)), bound_(bound), qf_(false), word_counts_(std::move(word_counts)),
      mult_(std::move(mult)), diff_(std::move(diff)), degree0_(std::move(degree0)) {
    if ((long)word_counts_.size() != bound_ + 1) throw Error("ChainAlgebra: word count size");
    if ((long)diff_.size() != bound_ + 1) throw Error("ChainAlgebra: diff size");
}

ChainAlgebra::ChainAlgebra(Ground g, int bound, std::vector<Generator> gens,
                           std::vector<std::vector<Int>> dgen, long word_cap)
    : ground_(std::move(g)), bound_(bound), qf_(true), gens_(std::move(gens)),
      dgen_(std::move(dgen)), word_cap_(word_cap) {
    bool has_deg0 = false;
    for (const auto& gen : gens_) {
        if (gen.degree < 0) throw Error("ChainAlgebra: negative generator degree");
        if (gen.degree == 0) has_deg0 = true;
    }
    if (has_deg0 && word_cap_ < 0)
        throw Error("ChainAlgebra: degree-0 generators require a word cap");
    if (dgen_.size() != gens_.size()) throw Error("ChainAlgebra: one d-value per generator");
}

void ChainAlgebra::ensure_words(int n) const {
    if (!qf_) return;
    std::lock_guard<std::mutex> lock(memo_->mu);
    if (memo_->words.count(n)) return;
    std::vector<std::vector<long>> out;
    std::vector<long> cur;
    std::function<void(int, long)> rec = [&](int remaining, long len) {
        if (remaining == 0) out.push_back(cur);
        if (word_cap_ >= 0 && len >= word_cap_) return;
        for (size_t gi = 0; gi < gens_.size(); ++gi) {
            int d = gens_[gi].degree;
            if (d > remaining) continue;
            if (d == 0 && word_cap_ < 0) continue;
            cur.push_back((long)gi);
            rec(remaining - d, len + 1);
            cur.pop_back();
        }
    };
    if (n >= 0) rec(n, 0);
    memo_->words[n] = std::move(out);
}

const std::vector<std::vector<long>>& ChainAlgebra::words(int n) const {
    static const std::vector<std::vector<long>> empty;
    if (!qf_) throw NotQuasiFree();
    if (n < 0 || n > bound_) return empty;
    ensure_words(n);
    std::lock_guard<std::mutex> lock(memo_->mu);
    return memo_->words[n];
}

long ChainAlgebra::word_count(int n) const {
    if (n < 0 || n > bound_) return 0;
    if (!qf_) return word_counts_[n];
    return (long)words(n).size();
}

const StructureAlgebra& ChainAlgebra::degree0() const {
    if (degree0_) return *degree0_;
    if (qf_) {
        bool has0 = false;
        for (const auto& g : gens_)
            if (g.degree == 0) has0 = true;
        if (!has0) {
            // degree-0 part is the ground itself
            if (ground_.two_level()) return *ground_.kalg;
            const_cast<ChainAlgebra*>(this)->degree0_ = catalog::scalar_algebra(ground_.scalar);
            return *degree0_;
        }
    }
    throw Error("ChainAlgebra: degree-0 algebra not available");
}

std::vector<Int> ChainAlgebra::unit() const {
    long e = ground_.kdim();
    std::vector<Int> u(srank(0), 0);
    if (qf_) {
        // the empty word is first in the enumeration
        const auto& ws = words(0);
        long idx = -1;
        for (size_t i = 0; i < ws.size(); ++i)
            if (ws[i].empty()) idx = (long)i;
        if (idx < 0) throw Error("ChainAlgebra: no unit word");
        if (ground_.two_level()) {
            const auto& ku = ground_.kalg->unit();
            for (long k = 0; k < e; ++k) u[idx * e + k] = ku[k];
        } else {
            u[idx] = 1;
        }
        return u;
    }
    const auto& un = degree0().unit();
    for (long i = 0; i < (long)un.size(); ++i) u[i] = un[i];
    return u;
}

const SparseMat& ChainAlgebra::diff(int n) const {
    static const SparseMat empty(0, 0);
    if (n <= 0 || n > bound_) return empty;
    if (!qf_) return diff_[n];
    {
        std::lock_guard<std::mutex> lock(memo_->mu);
        auto it = memo_->diffs.find(n);
        if (it != memo_->diffs.end()) return it->second;
    }
    // d(g1 .. gk) = sum_i (-1)^{deg(prefix)} g1 .. d(g_i) .. gk
    const long e = ground_.kdim();
    const auto& wn = words(n);
    const auto& wlow = words(n - 1);
    std::map<std::vector<long>, long> low_index;
    for (size_t i = 0; i < wlow.size(); ++i) low_index[wlow[i]] = (long)i;
    SparseMat D((long)wlow.size() * e, (long)wn.size() * e);
    for (size_t wi = 0; wi < wn.size(); ++wi) {
        const auto& w = wn[wi];
        int prefix_deg = 0;
        for (size_t pos = 0; pos < w.size(); ++pos) {
            long gi = w[pos];
            int gd = gens_[gi].degree;
            const auto& dg = dgen_[gi];  // scalar coords in degree gd-1
            if (!dg.empty()) {
                Int sign = (prefix_deg % 2 == 0) ? 1 : -1;
                const auto& wmid = words(gd - 1);
                for (size_t mw = 0; mw < wmid.size(); ++mw) {
                    for (long k = 0; k < e; ++k) {
                        const Int& c = dg[(long)mw * e + k];
                        if (c == 0) continue;
                        std::vector<long> nw;
                        nw.reserve(w.size() - 1 + wmid[mw].size());
                        nw.insert(nw.end(), w.begin(), w.begin() + pos);
                        nw.insert(nw.end(), wmid[mw].begin(), wmid[mw].end());
                        nw.insert(nw.end(), w.begin() + pos + 1, w.end());
                        if (word_cap_ >= 0 && (long)nw.size() > word_cap_)
                            throw Error("ChainAlgebra: differential overflows the word cap");
                        auto it = low_index.find(nw);
                        if (it == low_index.end()) throw Error("ChainAlgebra: word not found");
                        D.add(it->second * e + k, (long)wi * e + 0, sign * c);
                    }
                }
            }
            prefix_deg += gd;
        }
    }
    D.compress();
    // For two-level grounds the differential is K-linear: expand columns for
    // kappa != unit by multiplying through the K-table.
    if (e > 1) {
        SparseMat Dk((long)wlow.size() * e, (long)wn.size() * e);
        const auto& K = *ground_.kalg;
        for (const auto& entry : D.entries()) {
            long col_word = entry.c / e;
            long row_word = entry.r / e;
            long row_k = entry.r % e;
            // entry corresponds to kappa-slot row_k produced from the unit
            // column; for input slot kk, coefficient multiplies in K.
            for (long kk = 0; kk < e; ++kk) {
                const auto& prod = K.mult(row_k, kk);
                for (long t = 0; t < e; ++t)
                    if (prod[t] != 0)
                        Dk.add(row_word * e + t, col_word * e + kk, entry.v * prod[t]);
            }
        }
        Dk.compress();
        std::lock_guard<std::mutex> lock(memo_->mu);
        return memo_->diffs.emplace(n, std::move(Dk)).first->second;
    }
    std::lock_guard<std::mutex> lock(memo_->mu);
    return memo_->diffs.emplace(n, std::move(D)).first->second;
}

std::vector<Int> ChainAlgebra::basis_product(int d1, long i, int d2, long j) const {
    const long e = ground_.kdim();
    std::vector<Int> out(srank(d1 + d2), 0);
    if (d1 + d2 > bound_) return out;
    if (qf_) {
        const auto& w1 = words(d1)[i / e];
        const auto& w2 = words(d2)[j / e];
        long k1 = i % e, k2 = j % e;
        std::vector<long> w = w1;
        w.insert(w.end(), w2.begin(), w2.end());
        if (word_cap_ >= 0 && (long)w.size() > word_cap_) return out;
        const auto& target = words(d1 + d2);
        long idx = -1;
        for (size_t t = 0; t < target.size(); ++t)
            if (target[t] == w) idx = (long)t;
        if (idx < 0) throw Error("ChainAlgebra: product word missing");
        if (e == 1) {
            out[idx] = 1;
        } else {
            const auto& prod = ground_.kalg->mult(k1, k2);
            for (long t = 0; t < e; ++t) out[idx * e + t] = prod[t];
        }
        return out;
    }
    auto it = mult_.find({d1, d2});
    if (it == mult_.end()) return out;  // zero pairing beyond stored range
    const auto& v = it->second[i][j];
    for (size_t t = 0; t < v.size(); ++t) out[t] = v[t];
    return out;
}

std::vector<Int> ChainAlgebra::product(int d1, const std::vector<Int>& x, int d2,
                                       const std::vector<Int>& y) const {
    std::vector<Int> out(srank(d1 + d2), 0);
    for (long i = 0; i < (long)x.size(); ++i) {
        if (x[i] == 0) continue;
        for (long j = 0; j < (long)y.size(); ++j) {
            if (y[j] == 0) continue;
            auto bp = basis_product(d1, i, d2, j);
            for (long t = 0; t < (long)out.size(); ++t)
                if (bp[t] != 0) out[t] += x[i] * y[j] * bp[t];
        }
    }
    for (auto& v : out) v = ground_.scalar.reduce(v);
    return out;
}

ElementaryDivisors ChainAlgebra::homology(int n) const {
    if (n < 0 || n > bound_) return {};
    int lo = std::max(0, n - 1), hi = std::min(bound_, n + 1);
    SubquotientComplex C(ground_.scalar, -hi, -lo);  // flip: chain -> cochain indexing
    for (int k = lo; k <= hi; ++k) C.set_ambient(-k, srank(k));
    for (int k = lo + 1; k <= hi; ++k)
        if (srank(k) > 0 && srank(k - 1) > 0) C.set_diff(-k, diff(k));
    return C.homology_at(-n).divisors;
}

void ChainAlgebra::validate() const {
    // d o d == 0
    for (int n = 2; n <= bound_; ++n) {
        if (srank(n) == 0 || srank(n - 1) == 0) continue;
        SparseMat dd = diff(n - 1).mul(diff(n));
        if (!dd.reduced(ground_.scalar).is_zero()) throw NotAComplex("chain algebra d o d != 0");
    }
    // Leibniz on basis pairs within the bound
    for (int d1 = 0; d1 <= bound_; ++d1)
        for (int d2 = 0; d1 + d2 <= bound_; ++d2) {
            if (srank(d1) == 0 || srank(d2) == 0 || srank(d1 + d2) == 0) continue;
            for (long i = 0; i < srank(d1); ++i)
                for (long j = 0; j < srank(d2); ++j) {
                    auto prod = basis_product(d1, i, d2, j);
                    std::vector<Int> lhs(srank(d1 + d2 - 1), 0);
                    if (d1 + d2 >= 1) lhs = diff(d1 + d2).apply(prod);
                    std::vector<Int> rhs(std::max<long>(srank(d1 + d2 - 1), 0), 0);
                    if (d1 >= 1) {
                        auto dx = diff(d1).column(i);
                        auto t = product(d1 - 1, dx, d2, [&] {
                            std::vector<Int> ej(srank(d2), 0);
                            ej[j] = 1;
                            return ej;
                        }());
                        for (size_t t2 = 0; t2 < t.size(); ++t2) rhs[t2] += t[t2];
                    }
                    if (d2 >= 1) {
                        auto dy = diff(d2).column(j);
                        std::vector<Int> ei(srank(d1), 0);
                        ei[i] = 1;
                        auto t = product(d1, ei, d2 - 1, dy);
                        Int sign = (d1 % 2 == 0) ? 1 : -1;
                        for (size_t t2 = 0; t2 < t.size(); ++t2) rhs[t2] += sign * t[t2];
                    }
                    for (size_t t2 = 0; t2 < lhs.size(); ++t2) {
                        if (ground_.scalar.reduce(lhs[t2] - rhs[t2]) != 0)
                            throw Error("chain algebra: Leibniz fails at degrees (" +
                                        std::to_string(d1) + "," + std::to_string(d2) + ")");
                    }
                }
        }
    // unit
    auto u = unit();
    for (int d = 0; d <= bound_; ++d) {
        for (long j = 0; j < srank(d); ++j) {
            std::vector<Int> ej(srank(d), 0);
            ej[j] = 1;
            auto left = product(0, u, d, ej);
            auto right = product(d, ej, 0, u);
            for (long t = 0; t < srank(d); ++t) {
                if (ground_.scalar.reduce(left[t] - ej[t]) != 0 ||
                    ground_.scalar.reduce(right[t] - ej[t]) != 0)
                    throw Error("chain algebra: unit fails in degree " + std::to_string(d));
            }
        }
    }
}

// ---- standard chain algebras ----------------------------------------------------

ChainAlgebra standard_chain_algebra(StandardKind kind, const StandardParams& params,
                                    int degree_bound) {
    switch (kind) {
        case StandardKind::Exterior: {
            Ground g = Ground::plain(BaseRing::integers());
            std::vector<long> wc(degree_bound + 1, 0);
            wc[0] = 1;
            if (degree_bound >= 1) wc[1] = 1;
            std::map<std::pair<int, int>, std::vector<std::vector<std::vector<Int>>>> mult;
            mult[{0, 0}] = {{{Int(1)}}};
            if (degree_bound >= 1) {
                mult[{0, 1}] = {{{Int(1)}}};
                mult[{1, 0}] = {{{Int(1)}}};
                if (degree_bound >= 2) mult[{1, 1}] = {{{}}};
            }
            std::vector<SparseMat> diff(degree_bound + 1, SparseMat(0, 0));
            if (degree_bound >= 1) {
                SparseMat d(1, 1);
                d.add(0, 0, params.n);
                diff[1] = d;
                for (int k = 2; k <= degree_bound; ++k) diff[k] = SparseMat(k == 2 ? 1 : 0, 0);
            }
            return ChainAlgebra(g, degree_bound, wc, std::move(mult), std::move(diff),
                                catalog::scalar_algebra(BaseRing::integers()));
        }
        case StandardKind::ExteriorTensorDividedPower: {
            if (!BaseRing::is_prime(params.n)) throw UnknownKind("divided power kind needs a prime");
            Int p = params.n;
            BaseRing base = BaseRing::mod(p * p);
            Ground g = Ground::plain(base);
            // degree d has the single basis word x^eps y^[j], eps + 2j = d
            std::vector<long> wc(degree_bound + 1, 1);
            std::map<std::pair<int, int>, std::vector<std::vector<std::vector<Int>>>> mult;
            auto split = [](int d) { return std::pair<int, long>(d % 2, d / 2); };
            for (int d1 = 0; d1 <= degree_bound; ++d1)
                for (int d2 = 0; d1 + d2 <= degree_bound; ++d2) {
                    auto [e1, j1] = split(d1);
                    auto [e2, j2] = split(d2);
                    std::vector<Int> val(1, 0);
                    if (!(e1 && e2)) val[0] = base.reduce(binom(j1 + j2, j1));
                    mult[{d1, d2}] = {{val}};
                }
            std::vector<SparseMat> diff(degree_bound + 1, SparseMat(0, 0));
            for (int d = 1; d <= degree_bound; ++d) {
                // d(x y^[j]) = p y^[j]; d(y^[j]) = p x y^[j-1]
                SparseMat m(1, 1);
                m.add(0, 0, p);
                diff[d] = m;
            }
            return ChainAlgebra(g, degree_bound, wc, std::move(mult), std::move(diff),
                                catalog::scalar_algebra(base));
        }
        case StandardKind::Disc: {
            long n = params.n.get_si();
            Ground g = Ground::plain(BaseRing::integers());
            if (n == 0) {
                std::vector<ChainAlgebra::Generator> gens{{"x", 0}};
                std::vector<std::vector<Int>> dg{{}};
                return ChainAlgebra(g, degree_bound, gens, dg, params.word_cap);
            }
            std::vector<ChainAlgebra::Generator> gens{{"x", (int)n}, {"dx", (int)n - 1}};
            // d(x) = dx: coordinates of the single-letter word (dx) in degree n-1
            ChainAlgebra probe(g, degree_bound, gens, {{}, {}},
                               n == 1 ? params.word_cap : -1);
            const auto& ws = probe.words((int)n - 1);
            std::vector<Int> dx(ws.size(), 0);
            for (size_t i = 0; i < ws.size(); ++i)
                if (ws[i] == std::vector<long>{1}) dx[i] = 1;
            return ChainAlgebra(g, degree_bound, gens, {dx, {}},
                                n == 1 ? params.word_cap : -1);
        }
        case StandardKind::Sphere: {
            long n = params.n.get_si();
            Ground g = Ground::plain(BaseRing::integers());
            std::vector<ChainAlgebra::Generator> gens{{"y", (int)n}};
            return ChainAlgebra(g, degree_bound, gens, {{}}, n == 0 ? params.word_cap : -1);
        }
        case StandardKind::LiftedAlgebra: {
            if (!params.lift) throw UnknownKind("LiftedAlgebra needs A0");
            const StructureAlgebra& A0 = *params.lift;
            if (!A0.base().is_integers())
                throw UnknownKind("LiftedAlgebra: A0 must be free over Z");
            Ground g = Ground::plain(BaseRing::integers());
            long d0 = A0.dim();
            std::vector<long> wc(degree_bound + 1, 0);
            wc[0] = d0;
            if (degree_bound >= 1) wc[1] = d0;
            std::map<std::pair<int, int>, std::vector<std::vector<std::vector<Int>>>> mult;
            auto tab = [&](long r1, long r2, bool to1) {
                std::vector<std::vector<std::vector<Int>>> t(
                    r1, std::vector<std::vector<Int>>(r2));
                for (long i = 0; i < r1; ++i)
                    for (long j = 0; j < r2; ++j) {
                        std::vector<Int> v(to1 ? d0 : 0, 0);
                        if (to1)
                            for (long k = 0; k < d0; ++k) v[k] = A0.mult(i % d0, j % d0)[k];
                        t[i][j] = v;
                    }
                return t;
            };
            mult[{0, 0}] = tab(d0, d0, true);
            if (degree_bound >= 1) {
                mult[{0, 1}] = tab(d0, d0, true);
                mult[{1, 0}] = tab(d0, d0, true);
                if (degree_bound >= 2) {
                    std::vector<std::vector<std::vector<Int>>> z(
                        d0, std::vector<std::vector<Int>>(d0, std::vector<Int>()));
                    mult[{1, 1}] = z;
                }
            }
            std::vector<SparseMat> diff(degree_bound + 1, SparseMat(0, 0));
            if (degree_bound >= 1) {
                SparseMat d(d0, d0);
                for (long i = 0; i < d0; ++i) d.add(i, i, params.n);
                diff[1] = d;
                if (degree_bound >= 2) diff[2] = SparseMat(d0, 0);
            }
            return ChainAlgebra(g, degree_bound, wc, std::move(mult), std::move(diff), A0);
        }
    }
    throw UnknownKind();
}

ChainAlgebra from_structure_algebra(const StructureAlgebra& A, const BaseRing& ground,
                                    int degree_bound) {
    if (A.base() != ground)
        throw BaseMismatch("from_structure_algebra: carrier must be free over the ground");
    Ground g = Ground::plain(ground);
    std::vector<long> wc(degree_bound + 1, 0);
    wc[0] = A.dim();
    std::map<std::pair<int, int>, std::vector<std::vector<std::vector<Int>>>> mult;
    std::vector<std::vector<std::vector<Int>>> t(A.dim(), std::vector<std::vector<Int>>(A.dim()));
    for (long i = 0; i < A.dim(); ++i)
        for (long j = 0; j < A.dim(); ++j) t[i][j] = A.mult(i, j);
    mult[{0, 0}] = std::move(t);
    std::vector<SparseMat> diff(degree_bound + 1, SparseMat(0, 0));
    return ChainAlgebra(g, degree_bound, wc, std::move(mult), std::move(diff), A);
}

ChainAlgebra tensor_chain_algebras(const ChainAlgebra& A, const ChainAlgebra& B,
                                   int degree_bound) {
    if (A.ground().two_level() || B.ground().two_level())
        throw StrategyUnavailable("tensor of two-level chain algebras is not supported");
    if (!(A.ground().scalar == B.ground().scalar)) throw BaseMismatch();
    int bound = std::min({degree_bound, A.bound() + B.bound()});
    Ground g = A.ground();

    // index bookkeeping: degree n words are (dA, ia, ib) blocks ordered by dA
    auto counts = [&](int n) {
        std::vector<std::pair<int, long>> blocks;  // (dA, count of that block)
        for (int dA = 0; dA <= std::min(n, A.bound()); ++dA) {
            int dB = n - dA;
            if (dB > B.bound()) continue;
            blocks.push_back({dA, A.word_count(dA) * B.word_count(dB)});
        }
        return blocks;
    };
    auto offset_of = [&](int n, int dA) {
        long off = 0;
        for (auto [d, c] : counts(n)) {
            if (d == dA) return off;
            off += c;
        }
        return off;
    };
    std::vector<long> wc(bound + 1, 0);
    for (int n = 0; n <= bound; ++n)
        for (auto [d, c] : counts(n)) wc[n] += c;

    std::map<std::pair<int, int>, std::vector<std::vector<std::vector<Int>>>> mult;
    for (int d1 = 0; d1 <= bound; ++d1)
        for (int d2 = 0; d1 + d2 <= bound; ++d2) {
            if (wc[d1] == 0 || wc[d2] == 0) continue;
            std::vector<std::vector<std::vector<Int>>> t(
                wc[d1], std::vector<std::vector<Int>>(wc[d2], std::vector<Int>(wc[d1 + d2], 0)));
            for (auto [dA1, c1] : counts(d1)) {
                int dB1 = d1 - dA1;
                long off1 = offset_of(d1, dA1);
                for (auto [dA2, c2] : counts(d2)) {
                    int dB2 = d2 - dA2;
                    long off2 = offset_of(d2, dA2);
                    if (dA1 + dA2 > A.bound() || dB1 + dB2 > B.bound()) continue;
                    long offT = offset_of(d1 + d2, dA1 + dA2);
                    Int sign = (dB1 % 2 == 1 && dA2 % 2 == 1) ? -1 : 1;
                    for (long a1 = 0; a1 < A.word_count(dA1); ++a1)
                        for (long b1 = 0; b1 < B.word_count(dB1); ++b1)
                            for (long a2 = 0; a2 < A.word_count(dA2); ++a2)
                                for (long b2 = 0; b2 < B.word_count(dB2); ++b2) {
                                    auto pa = A.basis_product(dA1, a1, dA2, a2);
                                    auto pb = B.basis_product(dB1, b1, dB2, b2);
                                    long i = off1 + a1 * B.word_count(dB1) + b1;
                                    long j = off2 + a2 * B.word_count(dB2) + b2;
                                    for (long ka = 0; ka < (long)pa.size(); ++ka) {
                                        if (pa[ka] == 0) continue;
                                        for (long kb = 0; kb < (long)pb.size(); ++kb) {
                                            if (pb[kb] == 0) continue;
                                            long kt =
                                                offT + ka * B.word_count(dB1 + dB2) + kb;
                                            t[i][j][kt] = g.scalar.reduce(
                                                t[i][j][kt] + sign * pa[ka] * pb[kb]);
                                        }
                                    }
                                }
                }
            }
            mult[{d1, d2}] = std::move(t);
        }

    std::vector<SparseMat> diff(bound + 1, SparseMat(0, 0));
    for (int n = 1; n <= bound; ++n) {
        SparseMat D(wc[n - 1], wc[n]);
        for (auto [dA, c] : counts(n)) {
            int dB = n - dA;
            long off = offset_of(n, dA);
            for (long a = 0; a < A.word_count(dA); ++a)
                for (long b = 0; b < B.word_count(dB); ++b) {
                    long col = off + a * B.word_count(dB) + b;
                    if (dA >= 1) {
                        auto da = A.diff(dA).column(a);
                        long offL = offset_of(n - 1, dA - 1);
                        for (long t = 0; t < (long)da.size(); ++t)
                            if (da[t] != 0)
                                D.add(offL + t * B.word_count(dB) + b, col, da[t]);
                    }
                    if (dB >= 1) {
                        auto db = B.diff(dB).column(b);
                        long offL = offset_of(n - 1, dA);
                        Int sign = (dA % 2 == 0) ? 1 : -1;
                        for (long t = 0; t < (long)db.size(); ++t)
                            if (db[t] != 0)
                                D.add(offL + a * B.word_count(dB - 1) + t, col, sign * db[t]);
                    }
                }
        }
        D.compress();
        diff[n] = D;
    }

    // degree-0 algebra: A0 (x) B0
    const auto& A0 = A.degree0();
    const auto& B0 = B.degree0();
    long d0 = A0.dim() * B0.dim();
    std::vector<std::string> names;
    for (long i = 0; i < A0.dim(); ++i)
        for (long j = 0; j < B0.dim(); ++j) names.push_back(A0.names()[i] + "*" + B0.names()[j]);
    std::vector<std::vector<std::vector<Int>>> t0(
        d0, std::vector<std::vector<Int>>(d0, std::vector<Int>(d0, 0)));
    for (long i1 = 0; i1 < A0.dim(); ++i1)
        for (long j1 = 0; j1 < B0.dim(); ++j1)
            for (long i2 = 0; i2 < A0.dim(); ++i2)
                for (long j2 = 0; j2 < B0.dim(); ++j2)
                    for (long ka = 0; ka < A0.dim(); ++ka)
                        for (long kb = 0; kb < B0.dim(); ++kb)
                            t0[i1 * B0.dim() + j1][i2 * B0.dim() + j2][ka * B0.dim() + kb] =
                                g.scalar.reduce(A0.mult(i1, i2)[ka] * B0.mult(j1, j2)[kb]);
    std::vector<Int> u0(d0, 0);
    for (long i = 0; i < A0.dim(); ++i)
        for (long j = 0; j < B0.dim(); ++j)
            u0[i * B0.dim() + j] = g.scalar.reduce(A0.unit()[i] * B0.unit()[j]);
    StructureAlgebra deg0(g.scalar, names, t0, u0);
    return ChainAlgebra(g, bound, wc, std::move(mult), std::move(diff), std::move(deg0));
}

}  // namespace cohom
