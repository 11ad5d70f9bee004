#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cohom {

using Int = mpz_class;

// Base exception for all mathematical/precondition failures in the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct BaseMismatch : Error {
    explicit BaseMismatch(const std::string& w = "base ring mismatch") : Error(w) {}
};
struct NotAComplex : Error {
    explicit NotAComplex(const std::string& w = "d o d != 0") : Error(w) {}
};
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& w = "budget exceeded") : Error(w) {}
};
struct NotSurjective : Error {
    explicit NotSurjective(const std::string& w = "map is not surjective") : Error(w) {}
};
struct NoSplitting : Error {
    explicit NoSplitting(const std::string& w = "no linear section exists") : Error(w) {}
};
struct NotSplit : NoSplitting {
    explicit NotSplit(const std::string& w = "input is not split over the ground ring") : NoSplitting(w) {}
};
struct StrategyUnavailable : Error {
    explicit StrategyUnavailable(const std::string& w = "no applicable strategy") : Error(w) {}
};
struct UnknownKind : Error {
    explicit UnknownKind(const std::string& w = "unknown kind") : Error(w) {}
};

// Ground rings supported by the exact linear algebra layer.
//
// IntegersMod(m) covers Z/m for any m >= 2; PrimeField(p) is the same
// underlying arithmetic but promises p prime, which enables the
// elimination fast path and dimension-style reporting.
class BaseRing {
public:
    enum class Kind : uint8_t { Integers, IntegersMod, PrimeField };

    static BaseRing integers() { return BaseRing(Kind::Integers, 0); }
    static BaseRing mod(const Int& m) {
        if (m < 2) throw Error("IntegersMod requires m >= 2");
        return BaseRing(Kind::IntegersMod, m);
    }
    static BaseRing prime_field(const Int& p) {
        if (p < 2 || !is_prime(p)) throw Error("PrimeField requires a prime p");
        return BaseRing(Kind::PrimeField, p);
    }

    Kind kind() const { return kind_; }
    // Characteristic viewed inside Z: 0 for Z, m for Z/m, p for F_p.
    const Int& modulus() const { return mod_; }

    bool is_integers() const { return kind_ == Kind::Integers; }
    bool is_field() const { return kind_ == Kind::PrimeField; }

    bool operator==(const BaseRing& o) const { return kind_ == o.kind_ && mod_ == o.mod_; }
    bool operator!=(const BaseRing& o) const { return !(*this == o); }

    // Reduce a representative into canonical range: [0, m) for Z/m and F_p.
    Int reduce(const Int& x) const {
        if (kind_ == Kind::Integers) return x;
        Int r = x % mod_;
        if (r < 0) r += mod_;
        return r;
    }

    bool is_unit(const Int& x) const {
        if (kind_ == Kind::Integers) return x == 1 || x == -1;
        Int g;
        mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), mod_.get_mpz_t());
        return g == 1;
    }

    // True iff "base" surjects onto this ring through the canonical quotient
    // Z -> Z/m -> Z/d (d | m).  Equal rings also qualify.
    bool quotient_of(const BaseRing& ground) const {
        if (*this == ground) return true;
        if (ground.is_integers()) return !is_integers();
        if (is_integers()) return false;
        return mod_ != 0 && ground.mod_ % mod_ == 0;
    }

    std::string str() const {
        switch (kind_) {
            case Kind::Integers: return "Z";
            case Kind::IntegersMod: return "Z/" + mod_.get_str();
            case Kind::PrimeField: return "F" + mod_.get_str();
        }
        return "?";
    }

    static bool is_prime(const Int& p) {
        return mpz_probab_prime_p(p.get_mpz_t(), 30) != 0;
    }

private:
    BaseRing(Kind k, Int m) : kind_(k), mod_(std::move(m)) {}
    Kind kind_;
    Int mod_;
};

// Expensive consistency checks (SNF round trips, d o d on full complexes,
// Leibniz on all pairs) are gated through this flag so the acceptance suite
// can run them selectively.  Defaults to on; set COHOM_DEBUG_CHECKS=0 to skip.
bool debug_checks();
void set_debug_checks(bool on);

}  // namespace cohom
