#include "cohom/algebra.hpp"

namespace cohom {

namespace {

std::vector<Int> reduce_vec(const BaseRing& b, std::vector<Int> v) {
    for (auto& x : v) x = b.reduce(x);
    return v;
}

}  // namespace

bool matrices_congruent(const SparseMat& A, const SparseMat& B, const FPModule& M) {
    return solve_mat(M.lifted_relations(), A - B).has_value();
}

bool matrix_zero_mod(const SparseMat& A, const FPModule& M) {
    return solve_mat(M.lifted_relations(), A).has_value();
}

StructureAlgebra::StructureAlgebra(BaseRing base, std::vector<std::string> names,
                                   std::vector<std::vector<std::vector<Int>>> mult,
                                   std::vector<Int> unit)
    : base_(base), dim_((long)names.size()), names_(std::move(names)), mult_(std::move(mult)),
      unit_(std::move(unit)) {
    if ((long)mult_.size() != dim_) throw Error("StructureAlgebra: mult table shape");
    for (auto& row : mult_) {
        if ((long)row.size() != dim_) throw Error("StructureAlgebra: mult table shape");
        for (auto& v : row) {
            if ((long)v.size() != dim_) throw Error("StructureAlgebra: mult vector length");
            v = reduce_vec(base_, std::move(v));
        }
    }
    if ((long)unit_.size() != dim_) throw Error("StructureAlgebra: unit length");
    unit_ = reduce_vec(base_, std::move(unit_));
    validate();
}

void StructureAlgebra::validate() const {
    // associativity on all basis triples
    for (long i = 0; i < dim_; ++i)
        for (long j = 0; j < dim_; ++j)
            for (long k = 0; k < dim_; ++k) {
                std::vector<Int> ek(dim_, 0);
                ek[k] = 1;
                std::vector<Int> lhs = product(mult_[i][j], ek);
                std::vector<Int> ei(dim_, 0);
                ei[i] = 1;
                std::vector<Int> rhs = product(ei, mult_[j][k]);
                if (lhs != rhs) throw NotAssociative(i, j, k);
            }
    for (long i = 0; i < dim_; ++i) {
        std::vector<Int> ei(dim_, 0);
        ei[i] = 1;
        if (product(unit_, ei) != ei || product(ei, unit_) != ei) throw NoUnit();
    }
}

std::vector<Int> StructureAlgebra::product(const std::vector<Int>& x,
                                           const std::vector<Int>& y) const {
    std::vector<Int> out(dim_, 0);
    for (long i = 0; i < dim_; ++i) {
        if (x[i] == 0) continue;
        for (long j = 0; j < dim_; ++j) {
            if (y[j] == 0) continue;
            Int c = x[i] * y[j];
            const auto& m = mult_[i][j];
            for (long k = 0; k < dim_; ++k)
                if (m[k] != 0) out[k] += c * m[k];
        }
    }
    return reduce_vec(base_, std::move(out));
}

SparseMat StructureAlgebra::left_mul(long i) const {
    SparseMat m(dim_, dim_);
    for (long j = 0; j < dim_; ++j)
        for (long k = 0; k < dim_; ++k)
            if (mult_[i][j][k] != 0) m.add(k, j, mult_[i][j][k]);
    return m;
}

SparseMat StructureAlgebra::right_mul(long i) const {
    SparseMat m(dim_, dim_);
    for (long j = 0; j < dim_; ++j)
        for (long k = 0; k < dim_; ++k)
            if (mult_[j][i][k] != 0) m.add(k, j, mult_[j][i][k]);
    return m;
}

SparseMat StructureAlgebra::left_mul_by(const std::vector<Int>& x) const {
    SparseMat m(dim_, dim_);
    for (long i = 0; i < dim_; ++i)
        if (x[i] != 0) m = m + left_mul(i).scaled(x[i]);
    return m.reduced(base_);
}

SparseMat StructureAlgebra::right_mul_by(const std::vector<Int>& x) const {
    SparseMat m(dim_, dim_);
    for (long i = 0; i < dim_; ++i)
        if (x[i] != 0) m = m + right_mul(i).scaled(x[i]);
    return m.reduced(base_);
}

bool StructureAlgebra::is_commutative() const {
    for (long i = 0; i < dim_; ++i)
        for (long j = i + 1; j < dim_; ++j)
            if (mult_[i][j] != mult_[j][i]) return false;
    return true;
}

FPModule StructureAlgebra::carrier_over(const BaseRing& ground) const {
    if (!base_.quotient_of(ground)) throw BaseMismatch("algebra base is not a quotient of ground");
    if (base_ == ground) return FPModule::free_module(ground, dim_);
    // base = ground/(c): each basis vector is c-torsion over the ground.
    Int c = base_.modulus();
    SparseMat rel(dim_, dim_);
    for (long i = 0; i < dim_; ++i) rel.add(i, i, c);
    return FPModule(ground, dim_, rel);
}

const StructureAlgebra::AdaptedBasis& StructureAlgebra::adapted_basis() const {
    if (adapted_) return *adapted_;
    // Build P with first column the unit and P invertible over the base.
    // SNF of the unit column: U * u = (g, 0, ..)^T with g a unit in the base.
    SparseMat ucol = SparseMat::from_columns(dim_, {unit_});
    SmithResult s = smith_normal_form(ucol);
    if (s.rank != 1) throw Error("adapted_basis: zero unit");
    if (!base_.is_unit(s.divisors[0]))
        throw Error("adapted_basis: unit coordinates do not extend to a basis");
    auto Uinv = solve_mat(s.U, SparseMat::identity(dim_));
    if (!Uinv) throw Error("adapted_basis: transform not invertible");
    // P = U^-1 * diag(g, 1, .., 1): first column g * (U^-1 e_0) == unit.
    SparseMat P(dim_, dim_);
    for (const auto& e : Uinv->entries()) P.add(e.r, e.c, e.c == 0 ? e.v * s.divisors[0] : e.v);
    P.compress();
    P = P.reduced(base_);
    // Inverse mod base: solve P X == I (mod modulus).
    std::optional<SparseMat> Pinv;
    if (base_.is_integers()) {
        Pinv = solve_mat(P, SparseMat::identity(dim_));
    } else {
        SparseMat mI(dim_, dim_);
        for (long i = 0; i < dim_; ++i) mI.add(i, i, base_.modulus());
        auto sol = solve_mat(P.hcat(mI), SparseMat::identity(dim_));
        if (sol) {
            SparseMat top(dim_, dim_);
            for (const auto& e : sol->entries())
                if (e.r < dim_) top.add(e.r, e.c, e.v);
            top.compress();
            Pinv = top.reduced(base_);
        }
    }
    if (!Pinv) throw Error("adapted_basis: P not invertible over base");
    adapted_ = AdaptedBasis{P, Pinv->reduced(base_)};
    if (debug_checks()) {
        SparseMat prod = adapted_->Pinv.mul(adapted_->P).reduced(base_);
        if (!prod.equal(SparseMat::identity(dim_)) &&
            !matrix_zero_mod(prod - SparseMat::identity(dim_), carrier_over(base_)))
            throw Error("adapted_basis: inverse check failed");
    }
    return *adapted_;
}

const std::vector<std::vector<std::vector<Int>>>& StructureAlgebra::adapted_mult() const {
    if (adapted_mult_) return *adapted_mult_;
    const auto& ab = adapted_basis();
    std::vector<std::vector<std::vector<Int>>> table(
        dim_, std::vector<std::vector<Int>>(dim_, std::vector<Int>(dim_)));
    for (long i = 0; i < dim_; ++i) {
        auto bi = ab.P.column(i);
        for (long j = 0; j < dim_; ++j) {
            auto bj = ab.P.column(j);
            auto prod = product(bi, bj);
            auto coords = ab.Pinv.apply(prod);
            table[i][j] = reduce_vec(base_, std::move(coords));
        }
    }
    adapted_mult_ = std::move(table);
    return *adapted_mult_;
}

StructureAlgebra algebra_from_table(BaseRing base, std::vector<std::string> names,
                                    std::vector<std::vector<std::vector<Int>>> mult,
                                    std::vector<Int> unit) {
    return StructureAlgebra(std::move(base), std::move(names), std::move(mult), std::move(unit));
}

// ---- Bimodule ---------------------------------------------------------------

Bimodule::Bimodule(const StructureAlgebra& R, BaseRing ground, FPModule carrier,
                   std::vector<SparseMat> left, std::vector<SparseMat> right)
    : ground_(ground), carrier_(std::move(carrier)), left_(std::move(left)),
      right_(std::move(right)) {
    if ((long)left_.size() != R.dim() || (long)right_.size() != R.dim())
        throw Error("Bimodule: one action matrix per basis element required");
    if (carrier_.base != ground_) throw BaseMismatch("Bimodule: carrier base != ground");
}

SparseMat Bimodule::left_by(const std::vector<Int>& r) const {
    SparseMat m(carrier_.gens, carrier_.gens);
    for (size_t i = 0; i < left_.size(); ++i)
        if (r[i] != 0) m = m + left_[i].scaled(r[i]);
    return m.reduced(ground_);
}

SparseMat Bimodule::right_by(const std::vector<Int>& r) const {
    SparseMat m(carrier_.gens, carrier_.gens);
    for (size_t i = 0; i < right_.size(); ++i)
        if (r[i] != 0) m = m + right_[i].scaled(r[i]);
    return m.reduced(ground_);
}

SparseMat Bimodule::left_adapted(const StructureAlgebra& R, long i) const {
    return left_by(R.adapted_basis().P.column(i));
}
SparseMat Bimodule::right_adapted(const StructureAlgebra& R, long i) const {
    return right_by(R.adapted_basis().P.column(i));
}

Bimodule bimodule_over(const StructureAlgebra& R, BaseRing ground, FPModule carrier,
                       std::vector<SparseMat> left, std::vector<SparseMat> right) {
    Bimodule M(R, ground, std::move(carrier), std::move(left), std::move(right));
    const FPModule& C = M.carrier();
    const long d = R.dim();
    for (long i = 0; i < d; ++i) {
        if (!is_module_map(C, C, M.left(i)) || !is_module_map(C, C, M.right(i)))
            throw Error("bimodule_over: action does not preserve relations");
    }
    // unit acts as identity
    SparseMat I = SparseMat::identity(C.gens);
    if (!matrices_congruent(M.left_by(R.unit()), I, C) ||
        !matrices_congruent(M.right_by(R.unit()), I, C))
        throw Error("bimodule_over: unit does not act as identity");
    // associativity of actions and commuting of the two actions
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) {
            SparseMat lhsL = M.left(i).mul(M.left(j));
            SparseMat rhsL(C.gens, C.gens);
            for (long k = 0; k < d; ++k)
                if (R.mult(i, j)[k] != 0) rhsL = rhsL + M.left(k).scaled(R.mult(i, j)[k]);
            if (!matrices_congruent(lhsL, rhsL, C))
                throw Error("bimodule_over: left action not associative");
            SparseMat lhsR = M.right(j).mul(M.right(i));
            SparseMat rhsR(C.gens, C.gens);
            for (long k = 0; k < d; ++k)
                if (R.mult(i, j)[k] != 0) rhsR = rhsR + M.right(k).scaled(R.mult(i, j)[k]);
            if (!matrices_congruent(lhsR, rhsR, C))
                throw Error("bimodule_over: right action not associative");
            if (!matrices_congruent(M.left(i).mul(M.right(j)), M.right(j).mul(M.left(i)), C))
                throw Error("bimodule_over: left and right actions do not commute");
        }
    // base-of-R torsion must kill the carrier action
    if (R.base() != ground) {
        Int c = R.base().modulus();
        for (long i = 0; i < d; ++i)
            if (!matrix_zero_mod(M.left(i).scaled(c), C))
                throw Error("bimodule_over: carrier is not killed by the algebra torsion");
    }
    return M;
}

Bimodule regular_bimodule(const StructureAlgebra& R, const BaseRing& ground) {
    FPModule carrier = R.carrier_over(ground);
    std::vector<SparseMat> left, right;
    for (long i = 0; i < R.dim(); ++i) {
        left.push_back(R.left_mul(i));
        right.push_back(R.right_mul(i));
    }
    return bimodule_over(R, ground, carrier, std::move(left), std::move(right));
}

Bimodule regular_bimodule(const StructureAlgebra& R) { return regular_bimodule(R, R.base()); }

Bimodule trivial_bimodule(const StructureAlgebra& R, const BaseRing& ground, const Int& torsion) {
    FPModule carrier = torsion == 0 ? FPModule::free_module(ground, 1)
                                    : FPModule(ground, 1, [&] {
                                          SparseMat r(1, 1);
                                          r.add(0, 0, torsion);
                                          return r;
                                      }());
    // Basis element acts by the coefficient of the unit in its adapted
    // expansion: e_i = c_i * unit + (non-unit part), non-unit part acts as 0.
    const auto& ab = R.adapted_basis();
    std::vector<SparseMat> left, right;
    for (long i = 0; i < R.dim(); ++i) {
        std::vector<Int> ei(R.dim(), 0);
        ei[i] = 1;
        auto coords = ab.Pinv.apply(ei);
        SparseMat m(1, 1);
        m.add(0, 0, R.base().reduce(coords[0]));
        left.push_back(m);
        right.push_back(m);
    }
    return bimodule_over(R, ground, carrier, std::move(left), std::move(right));
}

// ---- FPAlgebra --------------------------------------------------------------

FPAlgebra::FPAlgebra(BaseRing ground, FPModule carrier,
                     std::vector<std::vector<std::vector<Int>>> mult, std::vector<Int> unit)
    : ground_(ground), carrier_(std::move(carrier)), mult_(std::move(mult)),
      unit_(std::move(unit)) {
    const long g = carrier_.gens;
    if ((long)mult_.size() != g || (long)unit_.size() != g) throw Error("FPAlgebra: table shape");
    for (auto& row : mult_) {
        if ((long)row.size() != g) throw Error("FPAlgebra: table shape");
        for (auto& v : row) {
            if ((long)v.size() != g) throw Error("FPAlgebra: vector length");
            v = reduce_vec(ground_, std::move(v));
        }
    }
    unit_ = reduce_vec(ground_, std::move(unit_));
}

std::vector<Int> FPAlgebra::product(const std::vector<Int>& x, const std::vector<Int>& y) const {
    const long g = carrier_.gens;
    std::vector<Int> out(g, 0);
    for (long i = 0; i < g; ++i) {
        if (x[i] == 0) continue;
        for (long j = 0; j < g; ++j) {
            if (y[j] == 0) continue;
            Int c = x[i] * y[j];
            for (long k = 0; k < g; ++k)
                if (mult_[i][j][k] != 0) out[k] += c * mult_[i][j][k];
        }
    }
    return reduce_vec(ground_, std::move(out));
}

SparseMat FPAlgebra::left_mul_by(const std::vector<Int>& x) const {
    const long g = carrier_.gens;
    SparseMat m(g, g);
    for (long j = 0; j < g; ++j) {
        std::vector<Int> ej(g, 0);
        ej[j] = 1;
        auto col = product(x, ej);
        for (long k = 0; k < g; ++k)
            if (col[k] != 0) m.add(k, j, col[k]);
    }
    return m;
}

SparseMat FPAlgebra::right_mul_by(const std::vector<Int>& x) const {
    const long g = carrier_.gens;
    SparseMat m(g, g);
    for (long j = 0; j < g; ++j) {
        std::vector<Int> ej(g, 0);
        ej[j] = 1;
        auto col = product(ej, x);
        for (long k = 0; k < g; ++k)
            if (col[k] != 0) m.add(k, j, col[k]);
    }
    return m;
}

void FPAlgebra::validate() const {
    const long g = carrier_.gens;
    // multiplication descends: rel * e_j == 0 and e_i * rel == 0 in the quotient
    for (long c = 0; c < carrier_.relations.cols(); ++c) {
        auto r = carrier_.relations.column(c);
        for (long j = 0; j < g; ++j) {
            std::vector<Int> ej(g, 0);
            ej[j] = 1;
            if (!is_zero_element(carrier_, product(r, ej)) ||
                !is_zero_element(carrier_, product(ej, r)))
                throw Error("FPAlgebra: multiplication does not descend to the quotient");
        }
    }
    for (long i = 0; i < g; ++i)
        for (long j = 0; j < g; ++j)
            for (long k = 0; k < g; ++k) {
                std::vector<Int> ei(g, 0), ek(g, 0);
                ei[i] = 1;
                ek[k] = 1;
                auto lhs = product(mult_[i][j], ek);
                auto rhs = product(ei, mult_[j][k]);
                if (!same_element(carrier_, lhs, rhs)) throw NotAssociative(i, j, k);
            }
    for (long i = 0; i < g; ++i) {
        std::vector<Int> ei(g, 0);
        ei[i] = 1;
        if (!same_element(carrier_, product(unit_, ei), ei) ||
            !same_element(carrier_, product(ei, unit_), ei))
            throw NoUnit();
    }
}

FPAlgebra FPAlgebra::from_structure(const StructureAlgebra& A, const BaseRing& ground) {
    std::vector<std::vector<std::vector<Int>>> mult(A.dim());
    for (long i = 0; i < A.dim(); ++i) {
        mult[i].resize(A.dim());
        for (long j = 0; j < A.dim(); ++j) mult[i][j] = A.mult(i, j);
    }
    return FPAlgebra(ground, A.carrier_over(ground), std::move(mult), A.unit());
}

// ---- induced bimodules ------------------------------------------------------

InducedBimodule induced_bimodule(const StructureAlgebra& R, const Bimodule& M) {
    const long d = R.dim();
    const FPModule& C = M.carrier();
    const long gM = C.gens;
    // Hom(R, M) on the free carrier R: generators (r-index, M-gen) -> i*gM + j.
    long g = d * gM;
    // relations: per r-slot a copy of M's relations
    SparseMat rel(g, d * C.relations.cols());
    for (long i = 0; i < d; ++i)
        for (const auto& e : C.relations.entries())
            rel.add(i * gM + e.r, i * C.relations.cols() + e.c, e.v);
    rel.compress();
    FPModule carrier(M.ground(), g, rel);

    // (e_k f)(e_i) = e_k * f(e_i): left action acts on values.
    // (f e_k)(e_i) = f(e_k e_i): right action inserts on the argument side.
    std::vector<SparseMat> left, right;
    for (long k = 0; k < d; ++k) {
        SparseMat L(g, g);
        for (long i = 0; i < d; ++i)
            for (const auto& e : M.left(k).entries()) L.add(i * gM + e.r, i * gM + e.c, e.v);
        L.compress();
        left.push_back(L);
        SparseMat Rm(g, g);
        for (long i = 0; i < d; ++i) {
            const auto& prod = R.mult(k, i);  // e_k e_i
            for (long t = 0; t < d; ++t)
                if (prod[t] != 0)
                    for (long j = 0; j < gM; ++j) Rm.add(i * gM + j, t * gM + j, prod[t]);
        }
        Rm.compress();
        right.push_back(Rm);
    }
    Bimodule H = bimodule_over(R, M.ground(), carrier, std::move(left), std::move(right));

    // mu(m)(e_i) = m * e_i: stack the right-action matrices.
    SparseMat mu(g, gM);
    for (long i = 0; i < d; ++i)
        for (const auto& e : M.right(i).entries()) mu.add(i * gM + e.r, e.c, e.v);
    mu.compress();
    return InducedBimodule{std::move(H), mu, carrier};
}

OppositeEnveloping opposite_enveloping(const StructureAlgebra& R) {
    const long d = R.dim();
    std::vector<std::vector<std::vector<Int>>> op(d, std::vector<std::vector<Int>>(d));
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) op[i][j] = R.mult(j, i);
    std::vector<std::string> opnames;
    for (const auto& n : R.names()) opnames.push_back(n + "^op");
    StructureAlgebra Rop(R.base(), opnames, op, R.unit());

    // R^e = R (x) R^op, basis pairs (i, i') -> i*d + i'.
    std::vector<std::string> enames;
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) enames.push_back(R.names()[i] + "(x)" + opnames[j]);
    std::vector<std::vector<std::vector<Int>>> emult(
        d * d, std::vector<std::vector<Int>>(d * d, std::vector<Int>(d * d, 0)));
    for (long i = 0; i < d; ++i)
        for (long ip = 0; ip < d; ++ip)
            for (long j = 0; j < d; ++j)
                for (long jp = 0; jp < d; ++jp) {
                    const auto& a = R.mult(i, j);        // e_i e_j in R
                    const auto& b = Rop.mult(ip, jp);    // opposite factor
                    for (long k = 0; k < d; ++k) {
                        if (a[k] == 0) continue;
                        for (long kp = 0; kp < d; ++kp)
                            if (b[kp] != 0)
                                emult[i * d + ip][j * d + jp][k * d + kp] =
                                    R.base().reduce(a[k] * b[kp]);
                    }
                }
    std::vector<Int> eunit(d * d, 0);
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) eunit[i * d + j] = R.base().reduce(R.unit()[i] * R.unit()[j]);
    StructureAlgebra Re(R.base(), enames, emult, eunit);

    std::vector<SparseMat> action;
    for (long i = 0; i < d; ++i)
        for (long ip = 0; ip < d; ++ip) action.push_back(R.left_mul(i).mul(R.right_mul(ip)));
    return OppositeEnveloping{std::move(Rop), std::move(Re), std::move(action)};
}

}  // namespace cohom
