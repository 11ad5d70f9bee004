#pragma once

#include "cohom/fpmodule.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cohom {

// A cochain complex whose degree-n term is the subquotient L_n / B_n of a
// free ambient lattice, with the differential given by an ambient matrix.
// This covers complexes of finitely presented modules (L = full lattice,
// B = relations) and Hom-of-modules complexes (L = compatibility lattice,
// B = maps through the relations) in one shape.
//
// Over Z/m the ambient relation m*I is folded into B at construction.
// Over F_p the elimination fast path is used throughout.
class SubquotientComplex {
public:
    SubquotientComplex(BaseRing base, int lo, int hi);

    void set_ambient(int n, long rank);
    // L_n generators; if never set, the full lattice is used.
    void set_sub(int n, SparseMat gens);
    // B_n generators (the part treated as zero).  m*I is appended for Z/m.
    void set_rel(int n, SparseMat gens);
    void set_diff(int n, SparseMat d);  // d_n : ambient_n -> ambient_{n+1}

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    const BaseRing& base() const { return base_; }
    long ambient_rank(int n) const { return in_range(n) ? ambient_[idx(n)] : 0; }
    const SparseMat& diff(int n) const;
    SparseMat sub_gens(int n) const;   // materialized (identity if full)
    SparseMat rel_gens(int n) const;   // with modulus columns when base is Z/m

    // Verifies d_{n} o d_{n-1} maps L into B for all degrees with both set.
    void check_complex() const;

    struct Homology {
        ElementaryDivisors divisors;
        // Ambient representatives of the surviving generators, one per
        // retained divisor (same order).
        std::vector<std::vector<Int>> representatives;
    };
    // Homology at n = (L_n cap d^{-1} B_{n+1}) / (d L_{n-1} + B_n).
    // Degrees outside [lo, hi] are zero; boundary degrees treat the missing
    // side as the zero module.
    Homology homology_at(int n) const;

    // Is the ambient vector v in L_n a cocycle, i.e. d v in B_{n+1}?
    bool is_cocycle(int n, const std::vector<Int>& v) const;
    // Coordinates of the class of v in terms of the given representative
    // cocycles: solve v = sum c_i rep_i + d u + b.  Returns c if solvable.
    std::optional<std::vector<Int>> class_in_basis(
        int n, const std::vector<Int>& v,
        const std::vector<std::vector<Int>>& reps) const;
    // Solve v = d u + b with u in L_{n-1}, b in B_n; returns u if possible.
    std::optional<std::vector<Int>> coboundary_preimage(int n, const std::vector<Int>& v) const;

private:
    bool in_range(int n) const { return n >= lo_ && n <= hi_; }
    size_t idx(int n) const { return size_t(n - lo_); }

    BaseRing base_;
    int lo_, hi_;
    std::vector<long> ambient_;
    std::vector<std::optional<SparseMat>> sub_;
    std::vector<std::optional<SparseMat>> rel_;
    std::vector<SparseMat> diff_;
};

// Per-degree answer table used by the cohomology front ends.
struct CohomologyResult {
    std::map<int, ElementaryDivisors> groups;
    std::map<int, std::vector<std::vector<Int>>> representatives;  // ambient coords

    const ElementaryDivisors& at(int n) const {
        static const ElementaryDivisors zero{};
        auto it = groups.find(n);
        return it == groups.end() ? zero : it->second;
    }
    std::string str() const;
};

}  // namespace cohom
