#pragma once

#include "cohom/hochschild.hpp"

#include <variant>

namespace cohom {

struct NotACocycle : Error {
    std::vector<long> witness;
    explicit NotACocycle(std::vector<long> w)
        : Error("cochain fails the cocycle identity"), witness(std::move(w)) {}
};
struct PeifferViolation : Error {
    long a, b;
    PeifferViolation(long a_, long b_)
        : Error("Peiffer identity d(c)c' == c d(c') fails at generator pair (" +
                std::to_string(a_) + "," + std::to_string(b_) + ")"),
          a(a_), b(b_) {}
};

// Minimal presentation of a finitely presented module: diag(d_i) relations
// with unit divisors dropped (over a field: no relations at all), together
// with the coordinate changes in both directions.
struct MinimizedModule {
    FPModule module;
    SparseMat to_min;    // module.gens x original.gens
    SparseMat from_min;  // original.gens x module.gens
};
MinimizedModule minimize(const FPModule& M);

// ---- abelian extensions ------------------------------------------------------

// 0 -> M --incl--> E --proj--> R -> 0 with M^2 == 0 in E.
struct AbelianExtension {
    BaseRing ground = BaseRing::integers();
    StructureAlgebra R;
    Bimodule M;
    FPAlgebra E;
    SparseMat incl;  // M gens -> E gens
    SparseMat proj;  // E gens -> dim R
};

// Full validation of the extension axioms; throws on failure.
void validate_abelian_extension(const AbelianExtension& X);

// Checks the 2-cocycle identity for f given as a Cochain of degree 2.
bool is_2cocycle(const StructureAlgebra& R, const Bimodule& M, const Cochain& f,
                 std::vector<long>* witness = nullptr);

// M x_f R with (m, r)(n, s) = (ms + rn + f(r, s), rs); f is normalized first
// (replaced by a cohomologous normalized cocycle).
AbelianExtension semidirect_from_2cocycle(const BaseRing& ground, const StructureAlgebra& R,
                                          const Bimodule& M, const Cochain& f);

// f(r, s) = h(r)h(s) - h(rs) for a linear section h of proj; throws
// NoSplitting when no ground-linear section exists.
Cochain extension_to_2cocycle(const AbelianExtension& X);

// Replace a cocycle by a cohomologous normalized one (vanishing when any
// argument is the unit).
Cochain normalize_2cocycle(const BaseRing& ground, const StructureAlgebra& R, const Bimodule& M,
                           const Cochain& f);

// ---- crossed bimodules and crossed extensions -------------------------------

struct CrossedBimodule {
    BaseRing ground = BaseRing::integers();
    StructureAlgebra C0;
    Bimodule C1;      // over C0
    SparseMat delta;  // C1 gens -> dim C0
    // star product table: star[a][b] = coords of e_a * e_b = d(e_a) e_b
    std::vector<std::vector<std::vector<Int>>> star;
};

// Checks the bimodule-map and Peiffer identities and fills in the star table.
CrossedBimodule validate_crossed(const BaseRing& ground, StructureAlgebra C0, Bimodule C1,
                                 SparseMat delta);

// 0 -> M --incl--> C1 --delta--> C0 --proj--> R -> 0
struct CrossedExtension {
    BaseRing ground = BaseRing::integers();
    StructureAlgebra R;
    Bimodule M;  // over R
    CrossedBimodule xb;
    SparseMat incl;  // M gens -> C1 gens
    SparseMat proj;  // dim C0 -> dim R
};

void validate_crossed_extension(const CrossedExtension& X);

// Ground-linear sections used by the cocycle dictionaries.
struct CrossedSections {
    SparseMat p;       // R -> C0 with proj p == id and p(1) == 1
    FPModule V;        // im(delta) as an abstract module
    SparseMat Vbasis;  // ambient C0 coordinates of V's generators
    SparseMat q;       // V -> C1 with delta q == id_V
};
// Throws NoSplitting if either section fails to exist.  `perturb` mixes a
// seeded random kernel-valued map into both sections (used by the
// section-independence checks).
CrossedSections crossed_sections(const CrossedExtension& X, uint64_t perturb_seed = 0);

// f(r,s,t) = p(r) m(s,t) - m(rs,t) + m(r,st) - m(r,s) p(t),
// m(r,s) = q(p(r)p(s) - p(rs)).  Class independent of the section choice.
Cochain crossed_to_3cocycle(const CrossedExtension& X, uint64_t perturb_seed = 0);

// Pullback along a unital algebra map f : P0 -> C0 (matrix on free carriers).
CrossedExtension pullback_crossed(const CrossedExtension& X, const StructureAlgebra& P0,
                                  const SparseMat& f);

// ---- obstruction theory ------------------------------------------------------

// A delta-extension: 0 -> C1 --mu--> S --sigma--> R -> 0 with xi : S -> C0.
struct DeltaExtension {
    FPAlgebra S;
    SparseMat mu;     // C1 gens -> S gens
    SparseMat sigma;  // S gens -> dim R
    SparseMat xi;     // S gens -> dim C0
};

struct NoSolution {
    Cochain obstruction;  // the 3-cocycle witnessing the nonzero class
};

// Decides vanishing of the class of X by solving f = d g; on success builds
// S with multiplication (x,r)(y,s) = (x*y + p(r)y + x p(s) + n(r,s) + h(r,s), rs)
// where n = m - g and h is the optional H^2 twist.  Throws NotSplit when the
// needed sections do not exist.
std::variant<DeltaExtension, NoSolution> delta_extension(const CrossedExtension& X,
                                                         const std::optional<Cochain>& twist = {});

// Verifies the delta-extension axioms of a candidate S against X (used both
// internally and for externally constructed witnesses).
void validate_delta_extension(const CrossedExtension& X, const DeltaExtension& S);

// Are two delta-extensions of the same X isomorphic in the groupoid (ladder
// with identities on C1 and R)?  Decided by solving for the connecting map
// phi(x, r) = (x + t(r), r); over small prime fields the solver enumerates.
bool delta_extensions_isomorphic(const CrossedExtension& X, const DeltaExtension& A,
                                 const DeltaExtension& B);

// ---- constructions -----------------------------------------------------------

// Free associative algebra on `gens` generators, truncated at word length L.
StructureAlgebra truncated_free_algebra(const BaseRing& base, long gens, long L);

// Free crossed bimodule on a linear map V -> C (C a truncated free algebra):
// C (x) V (x) C modulo the Peiffer relation x d(y) - d(x) y ~ 0.
CrossedBimodule free_crossed_bimodule(const BaseRing& ground, const StructureAlgebra& C,
                                      long vrank, const SparseMat& vmap);

// Builds a crossed extension with prescribed class [f] in H^3(R, M) via the
// dimension shift H^3(R,M) = H^2(R,N), N = coker(M -> Hom(R,M)): the middle
// algebra is N x_F R for the shifted 2-cocycle F.  Ground must be a field.
CrossedExtension crossed_from_3cocycle(const BaseRing& ground, const StructureAlgebra& R,
                                       const Bimodule& M, const Cochain& f);

// The class-zero crossed extension 0 -> M -> M -> R -> R -> 0 (delta = 0).
CrossedExtension split_crossed_extension(const BaseRing& ground, const StructureAlgebra& R,
                                         const Bimodule& M);

}  // namespace cohom
