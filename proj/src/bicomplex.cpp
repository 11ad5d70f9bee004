#include "cohom/bicomplex.hpp"

#include <functional>

namespace cohom {

namespace {

// all index tuples of length len over [0, base)
void each_tuple(long base, int len, const std::function<void(const std::vector<long>&)>& fn) {
    std::vector<long> t(len, 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == len) {
            fn(t);
            return;
        }
        for (long v = 0; v < base; ++v) {
            t[pos] = v;
            rec(pos + 1);
        }
    };
    rec(0);
}

// expand a product of coordinate vectors into (index tuple, coefficient)
void expand_product(const std::vector<std::vector<Int>>& factors,
                    const std::function<void(const std::vector<long>&, const Int&)>& fn) {
    std::vector<long> idx(factors.size(), 0);
    std::function<void(size_t, Int)> rec = [&](size_t pos, Int coeff) {
        if (coeff == 0) return;
        if (pos == factors.size()) {
            fn(idx, coeff);
            return;
        }
        for (long v = 0; v < (long)factors[pos].size(); ++v) {
            if (factors[pos][v] == 0) continue;
            idx[pos] = v;
            rec(pos + 1, coeff * factors[pos][v]);
        }
    };
    rec(0, Int(1));
}

}  // namespace

void BicomplexSpec::validate() const {
    if (!k.is_field()) throw GroundNotOverField();
    if (!(K.base() == k) || !(R.base() == k)) throw GroundNotOverField();
    if (!K.is_commutative()) throw Error("bicomplex: K must be commutative");
    FPModule mR = R.carrier_over(k);
    if (!same_element(mR, phi.apply(K.unit()), R.unit())) throw Error("bicomplex: phi not unital");
    for (long i = 0; i < K.dim(); ++i)
        for (long j = 0; j < K.dim(); ++j) {
            std::vector<Int> ei(K.dim(), 0), ej(K.dim(), 0);
            ei[i] = 1;
            ej[j] = 1;
            if (!same_element(mR, phi.apply(K.product(ei, ej)),
                              R.product(phi.apply(ei), phi.apply(ej))))
                throw Error("bicomplex: phi not multiplicative");
        }
    // central image
    for (long i = 0; i < K.dim(); ++i) {
        auto pi = phi.column(i);
        for (long j = 0; j < R.dim(); ++j) {
            std::vector<Int> ej(R.dim(), 0);
            ej[j] = 1;
            if (!same_element(mR, R.product(pi, ej), R.product(ej, pi)))
                throw Error("bicomplex: phi image not central");
        }
    }
}

long BicomplexTotal::ambient(int n) const {
    if (n < 0 || n > top_) return 0;
    long total = 0;
    for (const auto& b : blocks_[n]) total += b.dim;
    return total;
}

long BicomplexTotal::index(int p, int q, const std::vector<long>& a, const std::vector<long>& r,
                           long m) const {
    int n = p + q;
    long off = -1;
    for (const auto& b : blocks_[n])
        if (b.p == p && b.q == q) off = b.offset;
    if (off < 0) throw Error("bicomplex: block not present");
    long ia = 0;
    for (long v : a) ia = ia * dK_ + v;
    long ir = 0;
    for (long v : r) ir = ir * dR_ + v;
    return off + (ia * [&] {
        long t = 1;
        for (int j = 0; j < q; ++j) t *= dR_;
        return t;
    }() + ir) * gM_ + m;
}

BicomplexTotal::BicomplexTotal(const BicomplexSpec& spec, int top)
    : spec_(spec), top_(top), dK_(spec.K.dim()), dR_(spec.R.dim()), gM_(spec.M.carrier().gens),
      cx_(spec.k, 0, top) {
    spec_.validate();
    blocks_.resize(top_ + 1);
    for (int n = 0; n <= top_; ++n) {
        long off = 0;
        if (n == 0) {
            blocks_[0].push_back({0, 0, 0, gM_});
            cx_.set_ambient(0, gM_);
            continue;
        }
        for (int q = n, p = 0; q >= 1; --q, ++p) {
            double dims = 1;
            for (int t = 0; t < p * q; ++t) dims *= (double)dK_;
            for (int t = 0; t < q; ++t) dims *= (double)dR_;
            dims *= (double)gM_;
            if (dims > (double)spec_.bidegree_cap)
                throw BudgetExceeded("bicomplex bidegree (" + std::to_string(p) + "," +
                                     std::to_string(q) + ")");
            long dim = (long)dims;
            blocks_[n].push_back({p, q, off, dim});
            off += dim;
        }
        cx_.set_ambient(n, off);
    }
    build();
}

void BicomplexTotal::build() {
    const StructureAlgebra& K = spec_.K;
    const StructureAlgebra& R = spec_.R;
    const Bimodule& M = spec_.M;
    const SparseMat& phi = spec_.phi;

    auto kprod = [&](const std::vector<long>& idx) {
        // product of K basis elements
        std::vector<Int> acc = K.unit();
        for (long i : idx) {
            std::vector<Int> ei(dK_, 0);
            ei[i] = 1;
            acc = K.product(acc, ei);
        }
        return acc;
    };

    for (int n = 0; n < top_; ++n) {
        SparseMat D(ambient(n + 1), ambient(n));
        // iterate over output blocks at degree n+1
        for (const auto& ob : blocks_[n + 1]) {
            const int p = ob.p, q = ob.q;
            if (p == 0 && q == 0) continue;
            // --- horizontal d : (p-1, q) -> (p, q); output a has p rows
            bool src_d = (p >= 1) && (p - 1 + q == n) && (q >= 1 || (p - 1 == 0 && q == 0));
            // source block (p-1, q) exists iff q >= 1 or (p-1, q) == (0, 0)
            if (src_d && (q >= 1 || (p - 1 == 0))) {
                each_tuple(dK_, p * q, [&](const std::vector<long>& a) {
                    each_tuple(dR_, q, [&](const std::vector<long>& r) {
                        // rows of a: 0..p-1
                        // term 0: (prod of row 0) . f(rows 1.., r)
                        {
                            std::vector<long> row0(a.begin(), a.begin() + q);
                            auto kappa = kprod(row0);
                            SparseMat act = M.left_by(phi.apply(kappa));
                            std::vector<long> rest(a.begin() + q, a.end());
                            for (const auto& e : act.entries()) {
                                long col = index(p - 1, q, rest, r, e.c);
                                long row = index(p, q, a, r, e.r);
                                D.add(row, col, e.v);
                            }
                        }
                        // interior: merge rows i and i+1 (0-based i = 0..p-2),
                        // sign (-1)^{i+1}
                        for (int i = 0; i + 1 < p; ++i) {
                            std::vector<std::vector<Int>> factors;
                            for (int j = 0; j < q; ++j) {
                                std::vector<Int> e1(dK_, 0), e2(dK_, 0);
                                e1[a[i * q + j]] = 1;
                                e2[a[(i + 1) * q + j]] = 1;
                                factors.push_back(K.product(e1, e2));
                            }
                            Int sign = ((i + 1) % 2 == 0) ? 1 : -1;
                            expand_product(factors, [&](const std::vector<long>& merged,
                                                        const Int& coeff) {
                                std::vector<long> src;
                                src.reserve((p - 1) * q);
                                for (int t = 0; t < i; ++t)
                                    for (int j = 0; j < q; ++j) src.push_back(a[t * q + j]);
                                for (int j = 0; j < q; ++j) src.push_back(merged[j]);
                                for (int t = i + 2; t < p; ++t)
                                    for (int j = 0; j < q; ++j) src.push_back(a[t * q + j]);
                                for (long m = 0; m < gM_; ++m)
                                    D.add(index(p, q, a, r, m), index(p - 1, q, src, r, m),
                                          sign * coeff);
                            });
                        }
                        // last: absorb row p-1 into the r's, sign (-1)^{p+1}...
                        // the paper indexes rows 0..p, so with p+1 output rows
                        // the displayed sign (-1)^{p+1} is for p = rows-1;
                        // here output has p rows, so the sign is (-1)^p... use
                        // the displayed convention with n+1 = p rows: sign
                        // exponent equals the number of preceding terms: p.
                        {
                            std::vector<std::vector<Int>> factors;
                            for (int j = 0; j < q; ++j) {
                                std::vector<Int> ek(dK_, 0);
                                ek[a[(p - 1) * q + j]] = 1;
                                std::vector<Int> er(dR_, 0);
                                er[r[j]] = 1;
                                factors.push_back(R.product(phi.apply(ek), er));
                            }
                            Int sign = (p % 2 == 0) ? 1 : -1;
                            std::vector<long> head(a.begin(), a.begin() + (p - 1) * q);
                            expand_product(factors, [&](const std::vector<long>& newr,
                                                        const Int& coeff) {
                                for (long m = 0; m < gM_; ++m)
                                    D.add(index(p, q, a, r, m), index(p - 1, q, head, newr, m),
                                          sign * coeff);
                            });
                        }
                    });
                });
            }
            // --- vertical delta : (p, q-1) -> (p, q); source has q-1 columns
            bool src_ok = (q - 1 >= 1) || (p == 0 && q - 1 == 0);
            if (src_ok) {
                each_tuple(dK_, p * q, [&](const std::vector<long>& a) {
                    each_tuple(dR_, q, [&](const std::vector<long>& r) {
                        // delta f evaluated at (a, r): the output argument has
                        // columns 0..q-1 and r_0..r_{q-1}
                        // term 0: (-1)^p (prod of column 0 and r_0) acting left
                        {
                            std::vector<long> col0(p);
                            for (int i = 0; i < p; ++i) col0[i] = a[i * q + 0];
                            auto kappa = kprod(col0);
                            std::vector<Int> er(dR_, 0);
                            er[r[0]] = 1;
                            auto relt = R.product(phi.apply(kappa), er);
                            SparseMat act = M.left_by(relt);
                            std::vector<long> resta;
                            for (int i = 0; i < p; ++i)
                                for (int j = 1; j < q; ++j) resta.push_back(a[i * q + j]);
                            std::vector<long> restr(r.begin() + 1, r.end());
                            Int sign = (p % 2 == 0) ? 1 : -1;
                            for (const auto& e : act.entries()) {
                                long col = index(p, q - 1, resta, restr, e.c);
                                long row = index(p, q, a, r, e.r);
                                D.add(row, col, sign * e.v);
                            }
                        }
                        // interior: merge columns i, i+1 (0-based i = 0..q-2)
                        // and r_i r_{i+1}; sign (-1)^{i+p+1}
                        for (int i = 0; i + 1 < q; ++i) {
                            std::vector<std::vector<Int>> factors;
                            for (int t = 0; t < p; ++t) {
                                std::vector<Int> e1(dK_, 0), e2(dK_, 0);
                                e1[a[t * q + i]] = 1;
                                e2[a[t * q + i + 1]] = 1;
                                factors.push_back(K.product(e1, e2));
                            }
                            std::vector<Int> r1(dR_, 0), r2(dR_, 0);
                            r1[r[i]] = 1;
                            r2[r[i + 1]] = 1;
                            factors.push_back(R.product(r1, r2));
                            Int sign = ((i + p + 1) % 2 == 0) ? 1 : -1;
                            expand_product(factors, [&](const std::vector<long>& merged,
                                                        const Int& coeff) {
                                std::vector<long> srca;
                                for (int t = 0; t < p; ++t)
                                    for (int j = 0; j < q; ++j) {
                                        if (j == i + 1) continue;
                                        srca.push_back(j == i ? merged[t] : a[t * q + j]);
                                    }
                                std::vector<long> srcr;
                                for (int j = 0; j < q; ++j) {
                                    if (j == i + 1) continue;
                                    srcr.push_back(j == i ? merged[p] : r[j]);
                                }
                                for (long m = 0; m < gM_; ++m)
                                    D.add(index(p, q, a, r, m), index(p, q - 1, srca, srcr, m),
                                          sign * coeff);
                            });
                        }
                        // last: (-1)^{q+p-1...}: displayed exponent q+p+1 with
                        // q+1 output columns; here the output has q columns so
                        // the exponent is (q-1)+p+1 = p+q
                        {
                            std::vector<long> lastcol(p);
                            for (int i = 0; i < p; ++i) lastcol[i] = a[i * q + (q - 1)];
                            auto kappa = kprod(lastcol);
                            std::vector<Int> er(dR_, 0);
                            er[r[q - 1]] = 1;
                            auto relt = R.product(phi.apply(kappa), er);
                            SparseMat act = M.right_by(relt);
                            std::vector<long> resta;
                            for (int i = 0; i < p; ++i)
                                for (int j = 0; j + 1 < q; ++j) resta.push_back(a[i * q + j]);
                            std::vector<long> restr(r.begin(), r.end() - 1);
                            Int sign = ((p + q) % 2 == 0) ? 1 : -1;
                            for (const auto& e : act.entries()) {
                                long col = index(p, q - 1, resta, restr, e.c);
                                long row = index(p, q, a, r, e.r);
                                D.add(row, col, sign * e.v);
                            }
                        }
                    });
                });
            }
        }
        D.compress();
        cx_.set_diff(n, D);
    }
    cx_.check_complex();
}

CohomologyResult total_cohomology(const BicomplexSpec& spec) {
    BicomplexTotal T(spec, spec.n_max + 1);
    CohomologyResult out;
    for (int n = 0; n <= spec.n_max; ++n) {
        auto h = T.cx().homology_at(n);
        out.groups[n] = h.divisors;
        out.representatives[n] = h.representatives;
    }
    return out;
}

AlphaMap alpha_map(const BicomplexSpec& spec) {
    AlphaMap out;
    BicomplexTotal T(spec, spec.n_max + 1);
    const long dK = spec.K.dim(), dR = spec.R.dim(), gM = spec.M.carrier().gens;

    // the relative complex: ker(d : K^{0q} -> K^{1q}) with differential delta
    // K^{0q} = Hom(R^{(x)q}, M); the kernel condition is K-multilinearity.
    SubquotientComplex rel(spec.k, 0, spec.n_max + 1);
    std::vector<SparseMat> embeddings(spec.n_max + 2);  // into the (0,q) blocks
    for (int q = 0; q <= spec.n_max + 1; ++q) {
        long dim = gM;
        for (int t = 0; t < q; ++t) dim *= dR;
        rel.set_ambient(q, dim);
    }
    for (int q = 0; q <= spec.n_max + 1; ++q) {
        if (q == 0) continue;
        // d restricted to the (0,q) block of degree q mapping into (1,q)
        // block of degree q+1; build it directly:
        long dim0 = gM;
        for (int t = 0; t < q; ++t) dim0 *= dR;
        long dim1 = dim0;
        for (int t = 0; t < q; ++t) dim1 *= dK;
        SparseMat Dh(dim1, dim0);
        each_tuple(dK, q, [&](const std::vector<long>& a) {
            each_tuple(dR, q, [&](const std::vector<long>& r) {
                long ia = 0;
                for (long v : a) ia = ia * dK + v;
                long ir = 0;
                for (long v : r) ir = ir * dR + v;
                long rowbase = (ia * [&] {
                    long t = 1;
                    for (int j = 0; j < q; ++j) t *= dR;
                    return t;
                }() + ir) * gM;
                // term 0: (prod a_j) f(r)
                std::vector<Int> kappa = spec.K.unit();
                for (long v : a) {
                    std::vector<Int> ev(dK, 0);
                    ev[v] = 1;
                    kappa = spec.K.product(kappa, ev);
                }
                SparseMat act = spec.M.left_by(spec.phi.apply(kappa));
                for (const auto& e : act.entries()) Dh.add(rowbase + e.r, ir * gM + e.c, e.v);
                // term 1: -f(a_1 r_1, .., a_q r_q)
                std::vector<std::vector<Int>> factors;
                for (int j = 0; j < q; ++j) {
                    std::vector<Int> ek(dK, 0), er(dR, 0);
                    ek[a[j]] = 1;
                    er[r[j]] = 1;
                    factors.push_back(spec.R.product(spec.phi.apply(ek), er));
                }
                expand_product(factors, [&](const std::vector<long>& nr, const Int& coeff) {
                    long inr = 0;
                    for (long v : nr) inr = inr * dR + v;
                    for (long m = 0; m < gM; ++m)
                        Dh.add(rowbase + m, inr * gM + m, -coeff);
                });
            });
        });
        Dh.compress();
        // kernel modulo relation noise in the target (carriers over a field
        // may carry relations that vanish mod p; fold them in regardless)
        SparseMat sys = Dh;
        const SparseMat& relM = spec.M.carrier().relations;
        if (relM.cols() > 0) {
            long blocks = dim1 / gM;
            SparseMat relT(dim1, blocks * relM.cols());
            for (long bI = 0; bI < blocks; ++bI)
                for (const auto& e : relM.entries())
                    relT.add(bI * gM + e.r, bI * relM.cols() + e.c, e.v);
            relT.compress();
            sys = sys.hcat(relT);
        }
        FpMat A = FpMat::from_sparse(sys, (uint32_t)spec.k.modulus().get_ui());
        FpMat Kf = fp_kernel(A);
        SparseMat ker(dim0, Kf.cols());
        for (long rr = 0; rr < dim0; ++rr)
            for (long cc = 0; cc < Kf.cols(); ++cc)
                if (Kf(rr, cc)) ker.add(rr, cc, Kf(rr, cc));
        rel.set_sub(q, ker);
    }
    // vertical differential of the p = 0 column: Hochschild coboundary of R
    // over k twisted by nothing (phi enters only through M's actions)
    for (int q = 0; q <= spec.n_max; ++q) {
        long dim0 = gM, dim1 = gM;
        for (int t = 0; t < q; ++t) dim0 *= dR;
        for (int t = 0; t < q + 1; ++t) dim1 *= dR;
        SparseMat Dv(dim1, dim0);
        each_tuple(dR, q + 1, [&](const std::vector<long>& r) {
            long ir = 0;
            for (long v : r) ir = ir * dR + v;
            long rowbase = ir * gM;
            Int eps = (q % 2 == 0) ? 1 : -1;  // the (-1)^p factor is +1 at p=0;
            (void)eps;
            // term 0: sign (-1)^0 * r_0 f(r_1..)
            {
                std::vector<long> rest(r.begin() + 1, r.end());
                long irr = 0;
                for (long v : rest) irr = irr * dR + v;
                for (const auto& e : spec.M.left(r[0]).entries())
                    Dv.add(rowbase + e.r, irr * gM + e.c, e.v);
            }
            for (int i = 0; i + 1 <= q; ++i) {
                const auto& prod = spec.R.mult(r[i], r[i + 1]);
                Int sign = ((i + 1) % 2 == 0) ? 1 : -1;
                for (long t = 0; t < dR; ++t) {
                    if (prod[t] == 0) continue;
                    std::vector<long> src;
                    for (int j = 0; j <= q; ++j) {
                        if (j == i + 1) continue;
                        src.push_back(j == i ? t : r[j]);
                    }
                    long isrc = 0;
                    for (long v : src) isrc = isrc * dR + v;
                    for (long m = 0; m < gM; ++m)
                        Dv.add(rowbase + m, isrc * gM + m, sign * prod[t]);
                }
            }
            {
                std::vector<long> head(r.begin(), r.end() - 1);
                long ih = 0;
                for (long v : head) ih = ih * dR + v;
                Int sign = ((q + 1) % 2 == 0) ? 1 : -1;
                for (const auto& e : spec.M.right(r[q]).entries())
                    Dv.add(rowbase + e.r, ih * gM + e.c, sign * e.v);
            }
        });
        Dv.compress();
        rel.set_diff(q, Dv);
    }
    rel.check_complex();

    for (int n = 0; n <= spec.n_max; ++n) {
        auto hrel = rel.homology_at(n);
        auto htot = T.cx().homology_at(n);
        out.relative[n] = hrel.divisors;
        out.total[n] = htot.divisors;
        std::vector<std::vector<Int>> images;
        for (const auto& r : hrel.representatives) {
            std::vector<Int> img(T.ambient(n), 0);
            if (n == 0) {
                img = r;
            } else {
                // embed into the (0, n) block
                long off = -1;
                for (const auto& b : T.blocks(n))
                    if (b.p == 0 && b.q == n) off = b.offset;
                if (off < 0) throw Error("alpha: missing block");
                for (size_t i = 0; i < r.size(); ++i) img[off + i] = r[i];
            }
            images.push_back(std::move(img));
        }
        SparseMat Mx((long)htot.representatives.size(), (long)images.size());
        bool inj = true;
        for (size_t c = 0; c < images.size(); ++c) {
            auto coords = T.cx().class_in_basis(n, images[c], htot.representatives);
            if (!coords) throw Error("alpha: image is not a cocycle class");
            for (size_t rr = 0; rr < coords->size(); ++rr)
                if ((*coords)[rr] != 0) Mx.add((long)rr, (long)c, (*coords)[rr]);
        }
        Mx.compress();
        // injective iff the matrix has full column rank over F_p
        if (images.size() > 0) {
            FpMat A = FpMat::from_sparse(Mx, (uint32_t)spec.k.modulus().get_ui());
            inj = fp_rank(A) == (long)images.size();
        }
        bool iso = inj && out.relative[n] == out.total[n];
        out.matrix[n] = Mx;
        out.injective[n] = inj;
        out.isomorphism[n] = iso;
    }
    return out;
}

// ---- pair dictionary ---------------------------------------------------------

std::vector<Int> pair_to_total(const BicomplexTotal& T, const CochainPair& pair) {
    const auto& spec = T.spec();
    const long dK = spec.K.dim(), dR = spec.R.dim(), gM = spec.M.carrier().gens;
    std::vector<Int> v(T.ambient(2), 0);
    for (long r = 0; r < dR; ++r)
        for (long s = 0; s < dR; ++s) {
            auto val = pair.f.value({r, s});
            for (long m = 0; m < gM; ++m)
                if (val[m] != 0) v[T.index(0, 2, {}, {r, s}, m)] = val[m];
        }
    for (long a = 0; a < dK; ++a)
        for (long r = 0; r < dR; ++r) {
            auto col = pair.g.column(a * dR + r);
            for (long m = 0; m < gM; ++m)
                if (col[m] != 0) v[T.index(1, 1, {a}, {r}, m)] = col[m];
        }
    return v;
}

KAlgebraExtension pair_to_extension(const BicomplexSpec& spec, const CochainPair& pairIn) {
    BicomplexTotal T(spec, 3);
    // normalize: subtract D(h0) with h0(r) = f(1, r); the semidirect product
    // below needs f(1, r) = f(r, 1) = 0 for (0, 1) to be the unit
    CochainPair pair = pairIn;
    {
        const long dR = spec.R.dim(), gM = spec.M.carrier().gens;
        std::vector<Int> h0(T.ambient(1), 0);
        for (long r = 0; r < dR; ++r) {
            std::vector<Int> acc(gM, 0);
            for (long i = 0; i < dR; ++i) {
                if (spec.R.unit()[i] == 0) continue;
                auto val = pairIn.f.value({i, r});
                for (long m = 0; m < gM; ++m) acc[m] += spec.R.unit()[i] * val[m];
            }
            for (long m = 0; m < gM; ++m) h0[T.index(0, 1, {}, {r}, m)] = acc[m];
        }
        auto dh = T.cx().diff(1).apply(h0);
        pair.f.coeffs.clear();
        for (long r = 0; r < dR; ++r)
            for (long s = 0; s < dR; ++s) {
                auto val = pairIn.f.value({r, s});
                for (long m = 0; m < gM; ++m)
                    val[m] = spec.k.reduce(val[m] - dh[T.index(0, 2, {}, {r, s}, m)]);
                pair.f.set({r, s}, val);
            }
        SparseMat g2(gM, spec.K.dim() * dR);
        for (long a = 0; a < spec.K.dim(); ++a)
            for (long r = 0; r < dR; ++r) {
                auto col = pairIn.g.column(a * dR + r);
                for (long m = 0; m < gM; ++m) {
                    Int v2 = spec.k.reduce(col[m] - dh[T.index(1, 1, {a}, {r}, m)]);
                    if (v2 != 0) g2.add(m, a * dR + r, v2);
                }
            }
        pair.g = g2;
    }
    auto v = pair_to_total(T, pair);
    if (!T.cx().is_cocycle(2, v)) {
        // identify which displayed relation fails for the witness
        auto dv = T.cx().diff(2).apply(v);
        // (2,1) block = relation 1 (dg), (1,2) = relation 2, (0,3) = relation 3
        int which = 0;
        for (const auto& b : T.blocks(3)) {
            bool nonzero = false;
            for (long i = 0; i < b.dim; ++i)
                if (spec.k.reduce(dv[b.offset + i]) != 0) nonzero = true;
            if (nonzero) which = b.p == 2 ? 1 : (b.p == 1 ? 2 : 3);
        }
        throw NotAPair(which);
    }
    const long dK = spec.K.dim(), dR = spec.R.dim(), gM = spec.M.carrier().gens;
    // S = M (+) R with (m,r)(n,s) = (ms + rn + f(r,s), rs),
    // a (m,r) = (a m + g(a,r), ar)
    long gS = gM + dR;
    std::vector<std::string> names;
    for (long i = 0; i < gM; ++i) names.push_back("m" + std::to_string(i));
    for (long i = 0; i < dR; ++i) names.push_back("r:" + spec.R.names()[i]);
    std::vector<std::vector<std::vector<Int>>> mult(
        gS, std::vector<std::vector<Int>>(gS, std::vector<Int>(gS, 0)));
    for (long i = 0; i < gS; ++i)
        for (long j = 0; j < gS; ++j) {
            std::vector<Int> out(gS, 0);
            bool iM = i < gM, jM = j < gM;
            if (iM && jM) {
            } else if (iM && !jM) {
                auto vv = spec.M.right(j - gM).column(i);
                for (long t = 0; t < gM; ++t) out[t] = vv[t];
            } else if (!iM && jM) {
                auto vv = spec.M.left(i - gM).column(j);
                for (long t = 0; t < gM; ++t) out[t] = vv[t];
            } else {
                auto fv = pair.f.value({i - gM, j - gM});
                for (long t = 0; t < gM; ++t) out[t] = fv[t];
                const auto& prod = spec.R.mult(i - gM, j - gM);
                for (long t = 0; t < dR; ++t) out[gM + t] = prod[t];
            }
            for (auto& x : out) x = spec.k.reduce(x);
            mult[i][j] = out;
        }
    std::vector<Int> unit(gS, 0);
    for (long t = 0; t < dR; ++t) unit[gM + t] = spec.R.unit()[t];
    StructureAlgebra S(spec.k, names, mult, unit);

    std::vector<SparseMat> kaction;
    for (long a = 0; a < dK; ++a) {
        SparseMat act(gS, gS);
        // a . (m, 0) = (a m, 0) with a acting through phi
        SparseMat am = spec.M.left_by(spec.phi.column(a));
        for (const auto& e : am.entries()) act.add(e.r, e.c, e.v);
        // a . (0, r) = (g(a, r), a r)
        for (long r = 0; r < dR; ++r) {
            auto g = pair.g.column(a * dR + r);
            for (long m = 0; m < gM; ++m)
                if (g[m] != 0) act.add(m, gM + r, g[m]);
            auto ar = spec.R.left_mul_by(spec.phi.column(a)).column(r);
            for (long t = 0; t < dR; ++t)
                if (ar[t] != 0) act.add(gM + t, gM + r, ar[t]);
        }
        act.compress();
        kaction.push_back(act.reduced(spec.k));
    }
    SparseMat incl(gS, gM);
    for (long i = 0; i < gM; ++i) incl.add(i, i, 1);
    SparseMat proj(dR, gS);
    for (long t = 0; t < dR; ++t) proj.add(t, gM + t, 1);
    KAlgebraExtension E{std::move(S), std::move(kaction), incl, proj};

    // validation: the K-action is unital, associative, and central
    FPModule mS = E.S.carrier_over(spec.k);
    SparseMat u = E.kaction[0].scaled(0);
    SparseMat unitAct(gS, gS);
    for (long a = 0; a < dK; ++a)
        if (spec.K.unit()[a] != 0) unitAct = unitAct + E.kaction[a].scaled(spec.K.unit()[a]);
    if (!matrices_congruent(unitAct, SparseMat::identity(gS), mS))
        throw Error("pair_to_extension: K-unit does not act as identity");
    for (long a = 0; a < dK; ++a)
        for (long b = 0; b < dK; ++b) {
            SparseMat lhs = E.kaction[a].mul(E.kaction[b]);
            SparseMat rhs(gS, gS);
            const auto& prod = spec.K.mult(a, b);
            for (long t = 0; t < dK; ++t)
                if (prod[t] != 0) rhs = rhs + E.kaction[t].scaled(prod[t]);
            if (!matrices_congruent(lhs, rhs, mS))
                throw Error("pair_to_extension: K-action not associative");
        }
    // centrality: a (x y) = (a x) y = x (a y)
    for (long a = 0; a < dK; ++a)
        for (long i = 0; i < gS; ++i)
            for (long j = 0; j < gS; ++j) {
                std::vector<Int> ei(gS, 0), ej(gS, 0);
                ei[i] = 1;
                ej[j] = 1;
                auto axy = E.kaction[a].apply(E.S.product(ei, ej));
                auto ax_y = E.S.product(E.kaction[a].apply(ei), ej);
                auto x_ay = E.S.product(ei, E.kaction[a].apply(ej));
                if (!same_element(mS, axy, ax_y) || !same_element(mS, axy, x_ay))
                    throw Error("pair_to_extension: K-action not central");
            }
    (void)u;
    return E;
}

CochainPair extension_to_pair(const BicomplexSpec& spec, const KAlgebraExtension& E) {
    const long dK = spec.K.dim(), dR = spec.R.dim(), gM = spec.M.carrier().gens;
    FPModule mS = E.S.carrier_over(spec.k);
    FPModule mR = spec.R.carrier_over(spec.k);
    auto split = is_split_surjection(mS, mR, E.proj);
    if (!split.split) throw NoSplitting("extension_to_pair: no k-linear section");
    const SparseMat& h = split.section;
    CochainPair out;
    out.f.degree = 2;
    out.f.r_dim = dR;
    out.f.m_gens = gM;
    for (long r = 0; r < dR; ++r)
        for (long s = 0; s < dR; ++s) {
            auto prod = E.S.product(h.column(r), h.column(s));
            std::vector<Int> rs(dR);
            for (long t = 0; t < dR; ++t) rs[t] = spec.R.mult(r, s)[t];
            auto hrs = h.apply(rs);
            for (size_t i = 0; i < prod.size(); ++i) prod[i] -= hrs[i];
            auto m = preimage(spec.M.carrier(), mS, E.incl, prod);
            if (!m) throw Error("extension_to_pair: f value escapes M");
            for (auto& x : *m) x = spec.k.reduce(x);
            out.f.set({r, s}, *m);
        }
    out.g = SparseMat(gM, dK * dR);
    for (long a = 0; a < dK; ++a)
        for (long r = 0; r < dR; ++r) {
            auto ahr = E.kaction[a].apply(h.column(r));
            auto ar = spec.R.left_mul_by(spec.phi.column(a)).column(r);
            auto har = h.apply(ar);
            for (size_t i = 0; i < ahr.size(); ++i) ahr[i] -= har[i];
            auto m = preimage(spec.M.carrier(), mS, E.incl, ahr);
            if (!m) throw Error("extension_to_pair: g value escapes M");
            for (long i = 0; i < gM; ++i)
                if ((*m)[i] != 0) out.g.add(i, a * dR + r, spec.k.reduce((*m)[i]));
        }
    out.g.compress();
    return out;
}

bool pairs_cohomologous(const BicomplexSpec& spec, const CochainPair& a, const CochainPair& b) {
    BicomplexTotal T(spec, 3);
    auto va = pair_to_total(T, a);
    auto vb = pair_to_total(T, b);
    for (size_t i = 0; i < va.size(); ++i) va[i] -= vb[i];
    return T.cx().coboundary_preimage(2, va).has_value();
}

// ---- triple dictionary -------------------------------------------------------

void validate_kcrossed(const BicomplexSpec& spec, const KCrossedExtension& X) {
    validate_crossed_extension(X.X);
    FPModule m0 = X.X.xb.C0.carrier_over(spec.k);
    FPModule mR = spec.R.carrier_over(spec.k);
    if (!same_element(m0, X.kappa.apply(spec.K.unit()), X.X.xb.C0.unit()))
        throw Error("kcrossed: kappa not unital");
    for (long a = 0; a < spec.K.dim(); ++a)
        for (long b = 0; b < spec.K.dim(); ++b) {
            std::vector<Int> ea(spec.K.dim(), 0), eb(spec.K.dim(), 0);
            ea[a] = 1;
            eb[b] = 1;
            auto lhs = X.kappa.apply(spec.K.product(ea, eb));
            auto rhs = X.X.xb.C0.product(X.kappa.apply(ea), X.kappa.apply(eb));
            if (!same_element(m0, lhs, rhs)) throw Error("kcrossed: kappa not multiplicative");
        }
    // pi kappa == phi
    if (!matrices_congruent(X.X.proj.mul(X.kappa), spec.phi, mR))
        throw Error("kcrossed: pi o kappa != phi");
}

CochainTriple crossed_to_triple(const BicomplexSpec& spec, const KCrossedExtension& X,
                                uint64_t perturb_seed) {
    validate_kcrossed(spec, X);
    CrossedSections S = crossed_sections(X.X, perturb_seed);
    const long dK = spec.K.dim(), dR = spec.R.dim(), gM = spec.M.carrier().gens;
    const long g1 = X.X.xb.C1.carrier().gens;
    FPModule m0 = X.X.xb.C0.carrier_over(spec.k);
    const FPModule& m1 = X.X.xb.C1.carrier();

    auto toV = [&](const std::vector<Int>& defect) {
        auto coords = solve(S.Vbasis.hcat(m0.lifted_relations()), defect);
        if (!coords) throw Error("crossed_to_triple: defect escapes im(delta)");
        std::vector<Int> vc(coords->begin(), coords->begin() + S.Vbasis.cols());
        return S.q.apply(vc);
    };
    // m(r, s) = q(p(r) p(s) - p(rs)), n(a, r) = q(kappa(a) p(r) - p(ar))
    std::vector<std::vector<std::vector<Int>>> mm(dR, std::vector<std::vector<Int>>(dR));
    for (long r = 0; r < dR; ++r)
        for (long s = 0; s < dR; ++s) {
            auto prod = X.X.xb.C0.product(S.p.column(r), S.p.column(s));
            std::vector<Int> rs(dR);
            for (long t = 0; t < dR; ++t) rs[t] = spec.R.mult(r, s)[t];
            auto prs = S.p.apply(rs);
            for (size_t i = 0; i < prod.size(); ++i) prod[i] -= prs[i];
            mm[r][s] = toV(prod);
        }
    std::vector<std::vector<std::vector<Int>>> nn(dK, std::vector<std::vector<Int>>(dR));
    for (long a = 0; a < dK; ++a)
        for (long r = 0; r < dR; ++r) {
            auto prod = X.X.xb.C0.product(X.kappa.column(a), S.p.column(r));
            auto ar = spec.R.left_mul_by(spec.phi.column(a)).column(r);
            auto par = S.p.apply(ar);
            for (size_t i = 0; i < prod.size(); ++i) prod[i] -= par[i];
            nn[a][r] = toV(prod);
        }
    auto lin_m = [&](const std::vector<Int>& rv, const std::vector<Int>& sv) {
        std::vector<Int> out(g1, 0);
        for (long r = 0; r < dR; ++r) {
            if (rv[r] == 0) continue;
            for (long s = 0; s < dR; ++s) {
                if (sv[s] == 0) continue;
                for (long t = 0; t < g1; ++t) out[t] += rv[r] * sv[s] * mm[r][s][t];
            }
        }
        return out;
    };
    auto lin_n = [&](const std::vector<Int>& av, const std::vector<Int>& rv) {
        std::vector<Int> out(g1, 0);
        for (long a = 0; a < dK; ++a) {
            if (av[a] == 0) continue;
            for (long r = 0; r < dR; ++r) {
                if (rv[r] == 0) continue;
                for (long t = 0; t < g1; ++t) out[t] += av[a] * rv[r] * nn[a][r][t];
            }
        }
        return out;
    };
    auto intoM = [&](std::vector<Int> v) {
        auto m = preimage(spec.M.carrier(), m1, X.X.incl, v);
        if (!m) throw Error("crossed_to_triple: value escapes M");
        for (auto& x : *m) x = spec.k.reduce(x);
        return *m;
    };
    auto basis = [](long d, long i) {
        std::vector<Int> v(d, 0);
        v[i] = 1;
        return v;
    };

    CochainTriple out;
    out.f.degree = 3;
    out.f.r_dim = dR;
    out.f.m_gens = gM;
    for (long r = 0; r < dR; ++r)
        for (long s = 0; s < dR; ++s)
            for (long t = 0; t < dR; ++t) {
                // p(r) m(s,t) - m(rs,t) + m(r,st) - m(s,t)... the 3.2 cocycle
                auto v = X.X.xb.C1.left_by(S.p.column(r)).apply(mm[s][t]);
                std::vector<Int> rs(dR), st(dR);
                for (long u = 0; u < dR; ++u) {
                    rs[u] = spec.R.mult(r, s)[u];
                    st[u] = spec.R.mult(s, t)[u];
                }
                auto t2 = lin_m(rs, basis(dR, t));
                auto t3 = lin_m(basis(dR, r), st);
                auto t4 = X.X.xb.C1.right_by(S.p.column(t)).apply(mm[r][s]);
                for (long u = 0; u < g1; ++u) v[u] = v[u] - t2[u] + t3[u] - t4[u];
                out.f.set({r, s, t}, intoM(v));
            }

    out.g = SparseMat(gM, dK * dK * dR * dR);
    for (long a = 0; a < dK; ++a)
        for (long b = 0; b < dK; ++b)
            for (long r = 0; r < dR; ++r)
                for (long s = 0; s < dR; ++s) {
                    // g(a,b,r,s) = p(ar) n(b,s) - n(ab, rs) + b n(a,r) p(s)
                    //              - ab m(r,s) + m(ar, bs)
                    auto ar = spec.R.left_mul_by(spec.phi.column(a)).column(r);
                    auto bs = spec.R.left_mul_by(spec.phi.column(b)).column(s);
                    std::vector<Int> ab(dK);
                    {
                        std::vector<Int> ea(dK, 0), eb(dK, 0);
                        ea[a] = 1;
                        eb[b] = 1;
                        ab = spec.K.product(ea, eb);
                    }
                    std::vector<Int> rs(dR);
                    for (long u = 0; u < dR; ++u) rs[u] = spec.R.mult(r, s)[u];
                    auto t1 = X.X.xb.C1.left_by(S.p.apply(ar)).apply(nn[b][s]);
                    auto t2 = lin_n(ab, rs);
                    auto t3 = X.X.xb.C1.right_by(S.p.column(s)).apply(
                        X.X.xb.C1.left_by(X.kappa.column(b)).apply(nn[a][r]));
                    auto t4 = [&] {
                        std::vector<Int> phiab(dR, 0);
                        auto pa = spec.phi.apply(ab);
                        auto v = X.X.xb.C1.left_by(X.kappa.apply(ab)).apply(mm[r][s]);
                        (void)phiab;
                        (void)pa;
                        return v;
                    }();
                    auto t5 = lin_m(ar, bs);
                    std::vector<Int> v(g1);
                    for (long u = 0; u < g1; ++u)
                        v[u] = t1[u] - t2[u] + t3[u] - t4[u] + t5[u];
                    auto m = intoM(v);
                    for (long u = 0; u < gM; ++u)
                        if (m[u] != 0) out.g.add(u, ((a * dK + b) * dR + r) * dR + s, m[u]);
                }
    out.g.compress();

    out.h = SparseMat(gM, dK * dK * dR);
    for (long a = 0; a < dK; ++a)
        for (long b = 0; b < dK; ++b)
            for (long r = 0; r < dR; ++r) {
                // h(a,b,r) = a n(b,r) - n(ab, r) + n(a, br)
                std::vector<Int> ab(dK);
                {
                    std::vector<Int> ea(dK, 0), eb(dK, 0);
                    ea[a] = 1;
                    eb[b] = 1;
                    ab = spec.K.product(ea, eb);
                }
                auto br = spec.R.left_mul_by(spec.phi.column(b)).column(r);
                auto t1 = X.X.xb.C1.left_by(X.kappa.column(a)).apply(nn[b][r]);
                auto t2 = lin_n(ab, basis(dR, r));
                auto t3 = lin_n(basis(dK, a), br);
                std::vector<Int> v(g1);
                for (long u = 0; u < g1; ++u) v[u] = t1[u] - t2[u] + t3[u];
                auto m = intoM(v);
                for (long u = 0; u < gM; ++u)
                    if (m[u] != 0) out.h.add(u, (a * dK + b) * dR + r, m[u]);
            }
    out.h.compress();

    if (debug_checks()) {
        BicomplexTotal T(spec, 4);
        auto v = triple_to_total(T, out);
        if (!T.cx().is_cocycle(3, v))
            throw Error("crossed_to_triple: assembled triple is not a total cocycle");
    }
    return out;
}

std::vector<Int> triple_to_total(const BicomplexTotal& T, const CochainTriple& t) {
    const auto& spec = T.spec();
    const long dK = spec.K.dim(), dR = spec.R.dim(), gM = spec.M.carrier().gens;
    std::vector<Int> v(T.ambient(3), 0);
    for (long r = 0; r < dR; ++r)
        for (long s = 0; s < dR; ++s)
            for (long u = 0; u < dR; ++u) {
                auto val = t.f.value({r, s, u});
                for (long m = 0; m < gM; ++m)
                    if (val[m] != 0) v[T.index(0, 3, {}, {r, s, u}, m)] = val[m];
            }
    for (long a = 0; a < dK; ++a)
        for (long b = 0; b < dK; ++b)
            for (long r = 0; r < dR; ++r) {
                for (long s = 0; s < dR; ++s) {
                    auto col = t.g.column(((a * dK + b) * dR + r) * dR + s);
                    for (long m = 0; m < gM; ++m)
                        if (col[m] != 0) v[T.index(1, 2, {a, b}, {r, s}, m)] = col[m];
                }
                auto ch = t.h.column((a * dK + b) * dR + r);
                for (long m = 0; m < gM; ++m)
                    if (ch[m] != 0) v[T.index(2, 1, {a, b}, {r}, m)] = ch[m];
            }
    return v;
}

bool triples_cohomologous(const BicomplexSpec& spec, const CochainTriple& a,
                          const CochainTriple& b) {
    BicomplexTotal T(spec, 4);
    auto va = triple_to_total(T, a);
    auto vb = triple_to_total(T, b);
    for (size_t i = 0; i < va.size(); ++i) va[i] -= vb[i];
    return T.cx().coboundary_preimage(3, va).has_value();
}

}  // namespace cohom
