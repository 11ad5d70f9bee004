#include "cohom/fpmodule.hpp"

#include <sstream>

namespace cohom {

std::string ElementaryDivisors::str() const {
    if (divisors.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& d : divisors) {
        if (!first) os << " + ";
        first = false;
        if (d == 0)
            os << "Z";
        else
            os << "Z/" << d.get_str();
    }
    return os.str();
}

ElementaryDivisors ElementaryDivisors::from_diagonal(const std::vector<Int>& diag, long free_rank) {
    ElementaryDivisors e;
    for (const auto& d : diag) {
        Int a = abs(d);
        if (a == 1) continue;
        e.divisors.push_back(a);
    }
    for (long i = 0; i < free_rank; ++i) e.divisors.push_back(0);
    return e;
}

SparseMat FPModule::lifted_relations() const {
    if (base.is_integers()) return relations;
    SparseMat mI(gens, gens);
    for (long i = 0; i < gens; ++i) mI.add(i, i, base.modulus());
    return relations.hcat(mI);
}

ElementaryDivisors FPModule::invariants() const {
    SmithResult s = smith_normal_form(lifted_relations());
    return ElementaryDivisors::from_diagonal(s.divisors, gens - s.rank);
}

std::optional<Int> FPModule::order() const {
    ElementaryDivisors e = invariants();
    if (e.free_rank() > 0) return std::nullopt;
    Int n = 1;
    for (const auto& d : e.divisors) n *= d;
    return n;
}

bool is_module_map(const FPModule& A, const FPModule& B, const SparseMat& f) {
    if (f.rows() != B.gens || f.cols() != A.gens) return false;
    // f * rel_A must land in the relation lattice of B.
    SparseMat img = f.mul(A.lifted_relations());
    return solve_mat(B.lifted_relations(), img).has_value();
}

bool same_element(const FPModule& B, const std::vector<Int>& x, const std::vector<Int>& y) {
    std::vector<Int> d(x.size());
    for (size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
    return is_zero_element(B, d);
}

bool is_zero_element(const FPModule& B, const std::vector<Int>& x) {
    if ((long)x.size() != B.gens) throw Error("is_zero_element: length mismatch");
    return in_span(B.lifted_relations(), x);
}

FPModule tensor_modules(const FPModule& A, const FPModule& B) {
    if (A.base != B.base) throw BaseMismatch();
    long g = A.gens * B.gens;
    // relations: relA (x) e_j  and  e_i (x) relB
    SparseMat rel(g, A.relations.cols() * B.gens + A.gens * B.relations.cols());
    long col = 0;
    for (long rc = 0; rc < A.relations.cols(); ++rc) {
        auto v = A.relations.column(rc);
        for (long j = 0; j < B.gens; ++j, ++col)
            for (long i = 0; i < A.gens; ++i)
                if (v[i] != 0) rel.add(i * B.gens + j, col, v[i]);
    }
    for (long rc = 0; rc < B.relations.cols(); ++rc) {
        auto v = B.relations.column(rc);
        for (long i = 0; i < A.gens; ++i, ++col)
            for (long j = 0; j < B.gens; ++j)
                if (v[j] != 0) rel.add(i * B.gens + j, col, v[j]);
    }
    return FPModule(A.base, g, std::move(rel));
}

SparseMat tensor_maps(const SparseMat& f, const SparseMat& g) { return kron(f, g); }

HomModule hom_modules(const FPModule& A, const FPModule& B) {
    if (A.base != B.base) throw BaseMismatch();
    // An element is phi : Z^{gA} -> Z^{gB} with phi * relA == relB * psi for
    // some psi.  Work with vec(phi) stacked column-major by A-generator:
    // index (j, i) -> i * gB + j  (value row j of column i).
    const long gA = A.gens, gB = B.gens;
    SparseMat RA = A.lifted_relations();
    SparseMat RB = B.lifted_relations();
    const long kA = RA.cols(), kB = RB.cols();

    // Constraint matrix: for every relation column r of RA and output row j:
    //   sum_i RA(i, r) * phi(j, i) - (RB * psi_r)(j) == 0.
    SparseMat C(gB * kA, gA * gB + kB * kA);
    for (const auto& e : RA.entries()) {
        // e: RA(e.r, e.c) contributes to rows (j, rel=e.c) for each j.
        for (long j = 0; j < gB; ++j) C.add(e.c * gB + j, e.r * gB + j, e.v);
    }
    for (const auto& e : RB.entries()) {
        // -(RB * psi)(j) in relation column r: psi block r has kB unknowns.
        for (long r = 0; r < kA; ++r) C.add(r * gB + e.r, gA * gB + r * kB + e.c, -e.v);
    }
    C.compress();
    SparseMat K = kernel_lattice(C);
    // Project to the phi block and take a lattice basis.
    std::vector<long> phi_rows(gA * gB);
    for (long i = 0; i < gA * gB; ++i) phi_rows[i] = i;
    SparseMat Kphi(gA * gB, K.cols());
    for (const auto& e : K.entries())
        if (e.r < gA * gB) Kphi.add(e.r, e.c, e.v);
    Kphi.compress();
    SparseMat L = lattice_basis(Kphi);

    // The zero maps: phi = RB * chi, i.e. span of columns (RB e_t) placed in
    // every A-generator slot.
    SparseMat Z(gA * gB, gA * kB);
    for (long i = 0; i < gA; ++i)
        for (const auto& e : RB.entries()) Z.add(i * gB + e.r, i * kB + e.c, e.v);
    Z.compress();

    // Relations of Hom: express Z in terms of the basis L.
    auto rel = solve_mat(L, Z);
    if (!rel) throw Error("hom_modules: zero maps not inside the hom lattice");

    HomModule out;
    out.module = FPModule(A.base, L.cols(), rel->reduced(A.base));
    out.hom_basis.reserve(L.cols());
    for (long c = 0; c < L.cols(); ++c) {
        auto v = L.column(c);
        SparseMat phi(gB, gA);
        for (long i = 0; i < gA; ++i)
            for (long j = 0; j < gB; ++j)
                if (v[i * gB + j] != 0) phi.add(j, i, v[i * gB + j]);
        out.hom_basis.push_back(std::move(phi));
    }
    return out;
}

bool is_surjective_map(const FPModule& A, const FPModule& B, const SparseMat& f) {
    return cokernel_of_map(A, B, f).is_zero_module();
}

bool is_injective_map(const FPModule& A, const FPModule& B, const SparseMat& f) {
    // ker f = preimage of B-relations intersected with A mod A-relations.
    SparseMat K = kernel_of_map(A, B, f);
    // injective iff K subset of A's relation lattice
    return solve_mat(A.lifted_relations(), K).has_value();
}

FPModule cokernel_of_map(const FPModule& A, const FPModule& B, const SparseMat& f) {
    return FPModule(B.base, B.gens, B.relations.hcat(f.reduced(B.base)));
}

SparseMat kernel_of_map(const FPModule& A, const FPModule& B, const SparseMat& f) {
    SparseMat RB = B.lifted_relations();
    // Solve f x = RB y: kernel of [f | -RB], project to x block.
    SparseMat M = f.hcat(RB.scaled(Int(-1)));
    SparseMat K = kernel_lattice(M);
    SparseMat Kx(A.gens, K.cols());
    for (const auto& e : K.entries())
        if (e.r < A.gens) Kx.add(e.r, e.c, e.v);
    Kx.compress();
    return lattice_basis(Kx.hcat(A.lifted_relations()));
}

std::optional<std::vector<Int>> preimage(const FPModule& A, const FPModule& B, const SparseMat& f,
                                         const std::vector<Int>& b) {
    SparseMat RB = B.lifted_relations();
    SparseMat M = f.hcat(RB);
    auto x = solve(M, b);
    if (!x) return std::nullopt;
    x->resize(A.gens);
    return x;
}

SplitSurjection is_split_surjection(const FPModule& A, const FPModule& B, const SparseMat& f) {
    if (!is_surjective_map(A, B, f)) throw NotSurjective();
    // Unknown u : B -> A with u*RB == RA*psi (module map) and f*u == id mod RB.
    const long gA = A.gens, gB = B.gens;
    SparseMat RA = A.lifted_relations(), RB = B.lifted_relations();
    const long kA = RA.cols(), kB = RB.cols();
    // Unknowns: vec(u) (gB*gA, column-major by B-generator), psi (kB*kA),
    // chi (gB*kB) for the f*u == id + RB*chi congruence.
    long nu = gB * gA, npsi = kB * kA, nchi = gB * kB;
    long rows1 = gA * kB;  // u*RB - RA*psi == 0
    long rows2 = gB * gB;  // f*u - RB*chi == id
    SparseMat C(rows1 + rows2, nu + npsi + nchi);
    std::vector<Int> rhs(rows1 + rows2, 0);
    for (const auto& e : RB.entries())  // u(i, e.r) * RB(e.r, e.c) at row (e.c, i)
        for (long i = 0; i < gA; ++i) C.add(e.c * gA + i, e.r * gA + i, e.v);
    for (const auto& e : RA.entries())
        for (long r = 0; r < kB; ++r) C.add(r * gA + e.r, nu + r * kA + e.c, -e.v);
    for (const auto& e : f.entries())  // f(e.r, e.c): row block 2 index (col j of B, out row e.r)
        for (long j = 0; j < gB; ++j) C.add(rows1 + j * gB + e.r, j * gA + e.c, e.v);
    for (const auto& e : RB.entries())
        for (long j = 0; j < gB; ++j) C.add(rows1 + j * gB + e.r, nu + npsi + j * kB + e.c, -e.v);
    for (long j = 0; j < gB; ++j) rhs[rows1 + j * gB + j] = 1;
    C.compress();
    auto sol = solve(C, rhs);
    SplitSurjection out;
    if (!sol) return out;
    out.split = true;
    SparseMat u(gA, gB);
    for (long j = 0; j < gB; ++j)
        for (long i = 0; i < gA; ++i)
            if ((*sol)[j * gA + i] != 0) u.add(i, j, (*sol)[j * gA + i]);
    u.compress();
    out.section = u.reduced(A.base);
    if (debug_checks()) {
        SparseMat comp = f.mul(out.section);
        SparseMat id = SparseMat::identity(gB);
        if (!solve_mat(RB, comp - id)) throw Error("is_split_surjection: section verification failed");
        if (!is_module_map(B, A, out.section)) throw Error("is_split_surjection: section not a module map");
    }
    return out;
}

std::optional<SparseMat> retraction_of(const FPModule& A, const FPModule& B, const SparseMat& f) {
    // g : B -> A module map with g*f == id_A mod RA.
    const long gA = A.gens, gB = B.gens;
    SparseMat RA = A.lifted_relations(), RB = B.lifted_relations();
    const long kA = RA.cols(), kB = RB.cols();
    long ng = gA * gB, npsi = kA * kB, nchi = gA * kA;
    long rows1 = gA * kB;  // g*RB == RA*psi
    long rows2 = gA * gA;  // g*f == id + RA*chi
    SparseMat C(rows1 + rows2, ng + npsi + nchi);
    std::vector<Int> rhs(rows1 + rows2, 0);
    for (const auto& e : RB.entries())
        for (long i = 0; i < gA; ++i) C.add(e.c * gA + i, e.r * gA + i, e.v);
    for (const auto& e : RA.entries())
        for (long r = 0; r < kB; ++r) C.add(r * gA + e.r, ng + r * kA + e.c, -e.v);
    for (const auto& e : f.entries())
        for (long i = 0; i < gA; ++i) C.add(rows1 + e.c * gA + i, e.r * gA + i, e.v);
    for (const auto& e : RA.entries())
        for (long j = 0; j < gA; ++j) C.add(rows1 + j * gA + e.r, ng + npsi + j * kA + e.c, -e.v);
    for (long j = 0; j < gA; ++j) rhs[rows1 + j * gA + j] = 1;
    C.compress();
    auto sol = solve(C, rhs);
    if (!sol) return std::nullopt;
    SparseMat g(gA, gB);
    for (long j = 0; j < gB; ++j)
        for (long i = 0; i < gA; ++i)
            if ((*sol)[j * gA + i] != 0) g.add(i, j, (*sol)[j * gA + i]);
    g.compress();
    return g.reduced(A.base);
}

}  // namespace cohom
