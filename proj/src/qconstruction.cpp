#include "cohom/qconstruction.hpp"

#include "cohom/catalog.hpp"

namespace cohom {

FiniteRing FiniteRing::cyclic(long n, bool ring) {
    FiniteRing r;
    r.size = n;
    r.add.assign(n, std::vector<long>(n));
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) r.add[a][b] = (a + b) % n;
    if (ring) {
        r.mul.assign(n, std::vector<long>(n));
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b) r.mul[a][b] = (a * b) % n;
        r.one = n > 1 ? 1 : 0;
    }
    return r;
}

FiniteRing FiniteRing::product(const FiniteRing& a, const FiniteRing& b) {
    FiniteRing r;
    r.size = a.size * b.size;
    auto code = [&](long x, long y) { return x * b.size + y; };
    r.add.assign(r.size, std::vector<long>(r.size));
    for (long x1 = 0; x1 < a.size; ++x1)
        for (long y1 = 0; y1 < b.size; ++y1)
            for (long x2 = 0; x2 < a.size; ++x2)
                for (long y2 = 0; y2 < b.size; ++y2)
                    r.add[code(x1, y1)][code(x2, y2)] = code(a.add[x1][x2], b.add[y1][y2]);
    if (a.is_ring() && b.is_ring()) {
        r.mul.assign(r.size, std::vector<long>(r.size));
        for (long x1 = 0; x1 < a.size; ++x1)
            for (long y1 = 0; y1 < b.size; ++y1)
                for (long x2 = 0; x2 < a.size; ++x2)
                    for (long y2 = 0; y2 < b.size; ++y2)
                        r.mul[code(x1, y1)][code(x2, y2)] = code(a.mul[x1][x2], b.mul[y1][y2]);
        r.one = code(a.one, b.one);
    }
    return r;
}

namespace {

bool q2_reduced_to_zero(const std::array<long, 4>& t) {
    auto [a, b, c, d] = t;
    // [a,b,0,0] = [0,0,c,d] = [a,0,c,0] = [0,b,0,d] = [a,0,0,d] = 0
    if (c == 0 && d == 0) return true;
    if (a == 0 && b == 0) return true;
    if (b == 0 && d == 0) return true;
    if (a == 0 && c == 0) return true;
    if (b == 0 && c == 0) return true;
    return false;
}

}  // namespace

long QComplex::index0(long a) const {
    if (a == 0) return -1;
    for (size_t i = 0; i < q0.size(); ++i)
        if (q0[i] == a) return (long)i;
    throw Error("QComplex: element out of range");
}

long QComplex::index1(long a, long b) const {
    if (a == 0 || b == 0) return -1;
    for (size_t i = 0; i < q1.size(); ++i)
        if (q1[i][0] == a && q1[i][1] == b) return (long)i;
    throw Error("QComplex: pair out of range");
}

long QComplex::index2(const std::array<long, 4>& t) const {
    if (q2_reduced_to_zero(t)) return -1;
    for (size_t i = 0; i < q2.size(); ++i)
        if (q2[i] == t) return (long)i;
    throw Error("QComplex: tuple out of range");
}

std::vector<Int> QComplex::chain0(long a) const {
    std::vector<Int> v(q0.size(), 0);
    long i = index0(a);
    if (i >= 0) v[i] = 1;
    return v;
}
std::vector<Int> QComplex::chain1(long a, long b) const {
    std::vector<Int> v(q1.size(), 0);
    long i = index1(a, b);
    if (i >= 0) v[i] = 1;
    return v;
}
std::vector<Int> QComplex::chain2(const std::array<long, 4>& t) const {
    std::vector<Int> v(q2.size(), 0);
    long i = index2(t);
    if (i >= 0) v[i] = 1;
    return v;
}

std::vector<Int> QComplex::product(int deg1, long i, int deg2, long j) const {
    if (!A.is_ring()) throw Error("QComplex: products need a ring");
    const auto& mul = A.mul;
    if (deg1 == 0 && deg2 == 0) return chain0(mul[q0[i]][q0[j]]);
    if (deg1 == 0 && deg2 == 1) {
        long x = q0[i];
        return chain1(mul[x][q1[j][0]], mul[x][q1[j][1]]);
    }
    if (deg1 == 1 && deg2 == 0) {
        long z = q0[j];
        return chain1(mul[q1[i][0]][z], mul[q1[i][1]][z]);
    }
    if (deg1 == 0 && deg2 == 2) {
        long x = q0[i];
        const auto& t = q2[j];
        return chain2({mul[x][t[0]], mul[x][t[1]], mul[x][t[2]], mul[x][t[3]]});
    }
    if (deg1 == 2 && deg2 == 0) {
        long u = q0[j];
        const auto& t = q2[i];
        return chain2({mul[t[0]][u], mul[t[1]][u], mul[t[2]][u], mul[t[3]][u]});
    }
    if (deg1 == 1 && deg2 == 1) {
        auto [x, y] = q1[i];
        auto [u, v] = q1[j];
        return chain2({mul[x][u], mul[x][v], mul[y][u], mul[y][v]});
    }
    throw Error("QComplex: product beyond degree 2");
}

QComplex build_q(const FiniteRing& A, long cap) {
    if (A.size > cap) throw BudgetExceeded("Q construction cap");
    QComplex Q;
    Q.A = A;
    for (long a = 1; a < A.size; ++a) Q.q0.push_back(a);
    for (long a = 1; a < A.size; ++a)
        for (long b = 1; b < A.size; ++b) Q.q1.push_back({a, b});
    for (long a = 0; a < A.size; ++a)
        for (long b = 0; b < A.size; ++b)
            for (long c = 0; c < A.size; ++c)
                for (long d = 0; d < A.size; ++d)
                    if (!q2_reduced_to_zero({a, b, c, d})) Q.q2.push_back({a, b, c, d});

    // d1 [a,b] = [a] + [b] - [a+b]
    Q.d1 = SparseMat((long)Q.q0.size(), (long)Q.q1.size());
    for (size_t j = 0; j < Q.q1.size(); ++j) {
        auto [a, b] = Q.q1[j];
        auto add_to = [&](long elt, long coeff) {
            if (elt == 0) return;
            Q.d1.add(Q.index0(elt), (long)j, coeff);
        };
        add_to(a, 1);
        add_to(b, 1);
        add_to(A.add[a][b], -1);
    }
    Q.d1.compress();

    // d2 [a,b,c,d] = [a,b] + [c,d] - [a+c,b+d] - [a,c] - [b,d] + [a+b,c+d]
    Q.d2 = SparseMat((long)Q.q1.size(), (long)Q.q2.size());
    for (size_t j = 0; j < Q.q2.size(); ++j) {
        auto [a, b, c, d] = Q.q2[j];
        auto add_to = [&](long x, long y, long coeff) {
            if (x == 0 || y == 0) return;
            Q.d2.add(Q.index1(x, y), (long)j, coeff);
        };
        add_to(a, b, 1);
        add_to(c, d, 1);
        add_to(A.add[a][c], A.add[b][d], -1);
        add_to(a, c, -1);
        add_to(b, d, -1);
        add_to(A.add[a][b], A.add[c][d], 1);
    }
    Q.d2.compress();

    // d1 o d2 == 0
    if (!Q.d1.mul(Q.d2).is_zero()) throw NotAComplex("Q construction: d1 d2 != 0");
    return Q;
}

QLowHomology q_low_homology(const QComplex& Q) {
    SubquotientComplex C(BaseRing::integers(), -2, 0);
    C.set_ambient(0, (long)Q.q0.size());
    C.set_ambient(-1, (long)Q.q1.size());
    C.set_ambient(-2, (long)Q.q2.size());
    C.set_diff(-1, Q.d1);
    C.set_diff(-2, Q.d2);
    C.check_complex();
    QLowHomology out;
    out.h0 = C.homology_at(0).divisors;
    out.h1 = C.homology_at(-1).divisors;
    return out;
}

std::vector<Int> gamma(const QComplex& Q, long a) {
    auto v = Q.chain2({0, a, a, 0});
    auto dv = Q.d2.apply(v);
    for (const auto& x : dv)
        if (x != 0) throw Error("gamma: not a d2-cycle");
    return v;
}

std::optional<std::pair<std::pair<int, long>, std::pair<int, long>>> q_leibniz_failure(
    const QComplex& Q) {
    // boundary of a basis element per degree
    auto bdry = [&](int deg, long i) -> std::vector<Int> {
        if (deg == 1) return Q.d1.column(i);
        if (deg == 2) return Q.d2.column(i);
        return std::vector<Int>(deg == 0 ? 0 : 0);
    };
    auto counts = [&](int deg) {
        return deg == 0 ? (long)Q.q0.size() : deg == 1 ? (long)Q.q1.size() : (long)Q.q2.size();
    };
    for (int d1 = 0; d1 <= 2; ++d1)
        for (int d2 = 0; d1 + d2 <= 2; ++d2) {
            for (long i = 0; i < counts(d1); ++i)
                for (long j = 0; j < counts(d2); ++j) {
                    auto prod = Q.product(d1, i, d2, j);
                    std::vector<Int> lhs(d1 + d2 >= 1 ? counts(d1 + d2 - 1) : 0, 0);
                    if (d1 + d2 == 1)
                        lhs = Q.d1.apply(prod);
                    else if (d1 + d2 == 2)
                        lhs = Q.d2.apply(prod);
                    std::vector<Int> rhs(lhs.size(), 0);
                    if (d1 >= 1) {
                        auto db = bdry(d1, i);
                        for (long t = 0; t < (long)db.size(); ++t) {
                            if (db[t] == 0) continue;
                            auto pr = Q.product(d1 - 1, t, d2, j);
                            for (size_t u = 0; u < pr.size(); ++u) rhs[u] += db[t] * pr[u];
                        }
                    }
                    if (d2 >= 1) {
                        auto db = bdry(d2, j);
                        Int sign = (d1 % 2 == 0) ? 1 : -1;
                        for (long t = 0; t < (long)db.size(); ++t) {
                            if (db[t] == 0) continue;
                            auto pr = Q.product(d1, i, d2 - 1, t);
                            for (size_t u = 0; u < pr.size(); ++u) rhs[u] += sign * db[t] * pr[u];
                        }
                    }
                    if (lhs != rhs) return std::make_pair(std::make_pair(d1, i),
                                                          std::make_pair(d2, j));
                }
        }
    return std::nullopt;
}

VCompareReport v_complex_compare(long n, long cap) {
    if (n > cap) throw BudgetExceeded("v_complex_compare cap");
    FiniteRing R = FiniteRing::cyclic(n);
    QComplex Q = build_q(R, cap);
    const long N = (long)Q.q0.size();

    // V_0 = Q_0(R), V_1 = ker(eps) with eps[a] = a in Z/n
    SparseMat eps(1, N);
    for (long i = 0; i < N; ++i) eps.add(0, i, Q.q0[i]);
    SparseMat nI(1, 1);
    nI.add(0, 0, n);
    SparseMat K = kernel_lattice(eps.hcat(nI.scaled(Int(-1))));
    SparseMat Ktop(N, K.cols());
    for (const auto& e : K.entries())
        if (e.r < N) Ktop.add(e.r, e.c, e.v);
    Ktop.compress();
    SparseMat Vb = lattice_basis(Ktop);
    const long NV = Vb.cols();

    // degree-0 algebra: Z[R] on the nonzero elements
    std::vector<std::string> names;
    for (long i = 0; i < N; ++i) names.push_back("[" + std::to_string(Q.q0[i]) + "]");
    std::vector<std::vector<std::vector<Int>>> mult0(
        N, std::vector<std::vector<Int>>(N, std::vector<Int>(N, 0)));
    for (long i = 0; i < N; ++i)
        for (long j = 0; j < N; ++j) {
            long prod = R.mul[Q.q0[i]][Q.q0[j]];
            if (prod != 0) mult0[i][j][Q.index0(prod)] = 1;
        }
    std::vector<Int> unit0(N, 0);
    unit0[Q.index0(R.one)] = 1;
    StructureAlgebra Q0alg(BaseRing::integers(), names, mult0, unit0);

    // chain algebra V: table mode, bound 2 (degree-2 part is zero)
    std::vector<long> wc{N, NV, 0};
    std::map<std::pair<int, int>, std::vector<std::vector<std::vector<Int>>>> mult;
    mult[{0, 0}] = mult0;
    // x . v and v . x inside Q_0, expressed back in the V_1 basis
    auto expr = [&](const SparseMat& prod) {
        auto sol = solve_mat(Vb, prod);
        if (!sol) throw Error("v_complex_compare: product escapes ker(eps)");
        return *sol;
    };
    std::vector<std::vector<std::vector<Int>>> m01(N, std::vector<std::vector<Int>>(NV)),
        m10(NV, std::vector<std::vector<Int>>(N));
    for (long i = 0; i < N; ++i) {
        SparseMat L = Q0alg.left_mul(i).mul(Vb);
        SparseMat Rm = Q0alg.right_mul(i).mul(Vb);
        SparseMat Lc = expr(L), Rc = expr(Rm);
        for (long v = 0; v < NV; ++v) {
            m01[i][v] = Lc.column(v);
            m10[v][i] = Rc.column(v);
        }
    }
    mult[{0, 1}] = std::move(m01);
    mult[{1, 0}] = std::move(m10);
    mult[{1, 1}] = std::vector<std::vector<std::vector<Int>>>(
        NV, std::vector<std::vector<Int>>(NV, std::vector<Int>()));
    std::vector<SparseMat> diff(3, SparseMat(0, 0));
    diff[1] = Vb;
    diff[2] = SparseMat(NV, 0);
    ChainAlgebra V(Ground::plain(BaseRing::integers()), 2, wc, std::move(mult), std::move(diff),
                   Q0alg);
    if (debug_checks()) V.validate();

    // M = Z/n as a bimodule over Q_0 via eps
    FPModule mcar = FPModule::cyclic(BaseRing::integers(), n);
    std::vector<SparseMat> left, right;
    for (long i = 0; i < N; ++i) {
        SparseMat a(1, 1);
        a.add(0, 0, Q.q0[i]);
        left.push_back(a);
        right.push_back(a);
    }
    Bimodule M = bimodule_over(Q0alg, BaseRing::integers(), mcar, std::move(left),
                               std::move(right));

    Budget b = Budget::global();
    auto total = chain_hochschild_total(V, M, 2, b);

    auto Ralg = catalog::scalar_algebra(BaseRing::mod(n));
    auto MR = regular_bimodule(Ralg, BaseRing::integers());
    ShuklaQuery q{BaseRing::integers(), Ralg, MR, 2, ShuklaStrategy::Auto, {}, nullptr, b};
    auto sh = shukla_cohomology(q);

    VCompareReport out;
    out.out_of_scope_note =
        "H_2(Q) is not computed: Q_3 and its boundary are outside the implemented range";
    for (int i = 0; i <= 2; ++i) {
        out.v_side[i] = total.at(i);
        out.shukla_side[i] = sh.coh.at(i);
        if (out.v_side[i] != out.shukla_side[i]) out.agree = false;
    }
    return out;
}

}  // namespace cohom
